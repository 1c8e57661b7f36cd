use num_complex::Complex64;

/// `sum_{k=1}^{terms} (k-1)^{k-1} u^k / k!`, with `0^0 = 1`.
pub fn egf_partial_sum(u: Complex64, terms: usize) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = Complex64::new(1.0, 0.0);
    for k in 1..=terms {
        power *= u;
        let m = (k - 1) as f64;
        let log_coef = if k == 1 { 0.0 } else { m * m.ln() } - libm::lgamma(k as f64 + 1.0);
        sum += power * log_coef.exp();
    }
    sum
}
