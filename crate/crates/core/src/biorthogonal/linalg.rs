//! Small dense real LU with compensated (twice-working-precision) dot products.

use crate::error::{Error, Result};

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let z = s - a;
    (s, (a - (s - z)) + (b - z))
}

/// `init + sum a_i b_i` evaluated as if in twice the working precision.
pub fn dot2(init: f64, a: impl IntoIterator<Item = f64>, b: impl IntoIterator<Item = f64>) -> f64 {
    let mut s = init;
    let mut c = 0.0;
    for (x, y) in a.into_iter().zip(b) {
        let p = x * y;
        let pe = x.mul_add(y, -p);
        let (t, se) = two_sum(s, p);
        s = t;
        c += pe + se;
    }
    s + c
}

/// `P A = L U` of a square row-major matrix; `L` has unit diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct LuFactors {
    n: usize,
    /// L below the diagonal, U on and above, row-major.
    lu: Vec<f64>,
    perm: Vec<usize>,
    sign: f64,
}

impl LuFactors {
    /// Crout-Doolittle elimination with partial pivoting.
    pub fn new(n: usize, a: &[f64]) -> Result<Self> {
        if a.len() != n * n {
            return Err(Error::Input(format!("expected {} entries, got {}", n * n, a.len())));
        }
        let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut lu = a.to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for j in 0..n {
            for i in 0..j {
                let s = dot2(lu[i * n + j], (0..i).map(|k| -lu[i * n + k]), (0..i).map(|k| lu[k * n + j]));
                lu[i * n + j] = s;
            }
            let mut best = j;
            let mut best_abs = -1.0;
            for i in j..n {
                let s = dot2(lu[i * n + j], (0..j).map(|k| -lu[i * n + k]), (0..j).map(|k| lu[k * n + j]));
                lu[i * n + j] = s;
                if s.abs() > best_abs {
                    best_abs = s.abs();
                    best = i;
                }
            }
            if best != j {
                for k in 0..n {
                    lu.swap(best * n + k, j * n + k);
                }
                perm.swap(best, j);
                sign = -sign;
            }
            let pivot = lu[j * n + j];
            if pivot.abs() <= f64::EPSILON * scale * n as f64 {
                return Err(Error::Degeneracy(format!("pivot {pivot:e} in column {j}")));
            }
            for i in j + 1..n {
                lu[i * n + j] /= pivot;
            }
        }
        Ok(Self { n, lu, perm, sign })
    }

    pub fn determinant(&self) -> f64 {
        (0..self.n).fold(self.sign, |d, i| d * self.lu[i * self.n + i])
    }

    /// Solves `A x = rhs`.
    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y: Vec<f64> = self.perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            y[i] = dot2(y[i], (0..i).map(|k| -self.lu[i * n + k]), (0..i).map(|k| y[k]));
        }
        for i in (0..n).rev() {
            let s = dot2(y[i], (i + 1..n).map(|k| -self.lu[i * n + k]), (i + 1..n).map(|k| y[k]));
            y[i] = s / self.lu[i * n + i];
        }
        y
    }

    /// Row-major inverse.
    pub fn inverse(&self) -> Vec<f64> {
        let n = self.n;
        let mut inv = vec![0.0; n * n];
        let mut e = vec![0.0; n];
        for j in 0..n {
            e.iter_mut().for_each(|v| *v = 0.0);
            e[j] = 1.0;
            for (i, v) in self.solve(&e).into_iter().enumerate() {
                inv[i * n + j] = v;
            }
        }
        inv
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot2_recovers_cancelled_bits() {
        let a = [1e16, 1.0, -1e16];
        let b = [1.0, 1.0, 1.0];
        assert_eq!(dot2(0.0, a, b), 1.0);
    }

    #[test]
    fn determinant_and_inverse() {
        let a = [0.0, 2.0, 1.0, 1.0, 1.0, 0.0, 3.0, 0.0, 1.0];
        let lu = LuFactors::new(3, &a).unwrap();
        // expand along the first row: -2 (1 - 0) + 1 (0 - 3) = -5
        assert!((lu.determinant() + 5.0).abs() < 1e-14);
        let inv = lu.inverse();
        for i in 0..3 {
            for j in 0..3 {
                let s: f64 = (0..3).map(|k| a[i * 3 + k] * inv[k * 3 + j]).sum();
                assert!((s - if i == j { 1.0 } else { 0.0 }).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn singular_is_degenerate() {
        assert!(matches!(LuFactors::new(2, &[1.0, 2.0, 2.0, 4.0]), Err(Error::Degeneracy(_))));
    }
}
