use std::f64::consts::{E, PI};

use proptest::prelude::*;
use trimat::limits::*;
use trimat::numerics::{integrate, Complex64, Domain, QuadratureRule};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn finite(abs: f64, rel: f64) -> QuadratureRule {
    QuadratureRule::finite(abs, rel)
}

/// `int_0^1 g(x) f0(x) dx` in the variable `t = -ln x = e^u`. Near `x = 0`
/// the density behaves like `1/(x log^2 x)`, so a fixed share `~1/745` of
/// the mass sits below the smallest double and the plain `x` variable is no good.
fn f0_weighted_below_one(g: impl Fn(f64) -> f64) -> f64 {
    let h = |u: f64| {
        let t = u.exp();
        g((-t).exp()) * f0_log_density(t) * t
    };
    integrate(h, Domain::Finite(-40.0, 80.0), &finite(1e-14, 1e-12)).unwrap()
}

fn f0_mass_below_one() -> f64 {
    f0_weighted_below_one(|_| 1.0)
}

#[test]
fn lambert_real_residual_on_log_grid() {
    let lo = BRANCH_POINT;
    let mut xs = vec![lo];
    for i in 0..=2000 {
        // symmetric log grid through zero
        let s = -16.0 + 22.0 * i as f64 / 2000.0;
        xs.push(10f64.powf(s));
        if 10f64.powf(s) < -lo {
            xs.push(-(10f64.powf(s)));
        }
    }
    xs.push(1e6);
    for x in xs {
        let w = lambert_w_real(x).unwrap();
        assert!(w >= -1.0);
        let r = (w * w.exp() - x).abs();
        assert!(r <= 1e-14 * x.abs().max(1.0), "x={x} w={w} r={r:e}");
    }
    assert_eq!(lambert_w_real(0.0).unwrap(), 0.0);
    assert!((lambert_w_real(E).unwrap() - 1.0).abs() < 1e-15);
    assert_eq!(lambert_w_real(-1.0 / E).unwrap(), -1.0);
    assert!(lambert_w_real(-0.37).is_err());
}

#[test]
fn cut_map_is_increasing() {
    let n = 10_000;
    let mut prev = f64::NEG_INFINITY;
    for i in 1..n {
        let b = PI * i as f64 / n as f64;
        // e^{-b cot b} overflows a double before b reaches pi; compare logs.
        let v = cut_log_map(b);
        if cut_map(b).is_finite() {
            assert!((v.exp() - cut_map(b)).abs() <= 1e-12 * cut_map(b));
        }
        assert!(v > prev, "b={b}");
        prev = v;
    }
}

#[test]
fn cut_residuals_and_limits() {
    for i in 0..2000 {
        let z = BRANCH_POINT - 10f64.powf(-12.0 + 18.0 * i as f64 / 1999.0);
        let v = lambert_w_cut(z).unwrap();
        let w = v.w();
        assert!(v.b > 0.0 && v.b < PI);
        let r = (w * w.exp() - z).norm();
        assert!(r <= 1e-12 * z.abs(), "z={z} r={r:e}");
        assert!((v.a + v.b / v.b.tan()).abs() <= 1e-12 * v.a.abs().max(1.0));
    }
    let ten = lambert_w_cut(-10.0).unwrap().w();
    assert!((ten * ten.exp() + 10.0).norm() <= 1e-11);
    // b approaches pi slowly, like pi - pi / ln|z|.
    let mid = lambert_w_cut(-1e3).unwrap();
    let far = lambert_w_cut(-1e6).unwrap();
    let farther = lambert_w_cut(-1e300).unwrap();
    assert!(mid.b < far.b && far.b < farther.b && farther.b < PI);
    assert!(PI - far.b < 0.25 && PI - farther.b < 5e-3);
    let near = lambert_w_cut(BRANCH_POINT - 1e-14).unwrap();
    assert!((near.a + 1.0).abs() < 1e-6 && near.b < 1e-6);
    assert!(lambert_w_cut(-0.3).is_err());
}

#[test]
fn cut_agrees_with_complex_halley_from_above() {
    for z in [-0.5, -1.0, -3.0, -10.0, -1e3] {
        let cut = lambert_w_cut(z).unwrap().w();
        let above = lambert_w0(c(z, 1e-12 * z.abs())).unwrap();
        assert!((cut - above).norm() < 1e-9, "{z}: {cut} vs {above}");
    }
}

#[test]
fn f0_has_unit_mass() {
    let below = f0_mass_below_one();
    let above = integrate(f0_density, Domain::Finite(1.0, E), &finite(1e-14, 1e-12)).unwrap();
    assert!((below + above - 1.0).abs() <= 1e-8, "{}", below + above);
}

#[test]
fn f0_cdf_matches_quadrature_at_one() {
    assert!((f0_cdf(1.0) - f0_mass_below_one()).abs() <= 1e-8);
    for x in [1.5, 2.0, 2.5] {
        let q = f0_mass_below_one() + integrate(f0_density, Domain::Finite(1.0, x), &finite(1e-14, 1e-12)).unwrap();
        assert!((f0_cdf(x) - q).abs() <= 1e-8, "x={x}");
    }
}

#[test]
fn f0_cdf_is_monotone_and_differentiates_to_density() {
    let mut prev = 0.0;
    for i in 1..1000 {
        let x = E * i as f64 / 1000.0;
        let f = f0_cdf(x);
        assert!(f >= prev);
        prev = f;
        if i % 10 == 0 && x > 2e-5 && x < E - 2e-5 {
            let h = 1e-5;
            let d = (f0_cdf(x + h) - f0_cdf(x - h)) / (2.0 * h);
            assert!((d - f0_density(x)).abs() <= 1e-5, "x={x}");
        }
    }
    assert_eq!(f0_cdf(E), 1.0);
}

#[test]
fn f0_edge_behaviour() {
    let x = E - 1e-4;
    let ratio = f0_density(x) / (E - x).sqrt();
    let target = 2f64.sqrt() / (PI * E.powf(1.5));
    assert!((ratio / target - 1.0).abs() <= 0.02, "{ratio} vs {target}");
    // x log^2 x f0(x) -> 1 only like 1 + 2 ln t / t with t = -ln x; the
    // value at 1e-6 is 1.27990 (independent 30-digit evaluation).
    let x = 1e-6f64;
    let v = x * x.ln().powi(2) * f0_density(x);
    assert!((v - 1.279_895_75).abs() <= 1e-7, "{v}");
    let mut prev = v;
    for t in [50.0, 200.0, 1e3, 1e5, 1e8] {
        let w = t * t * f0_log_density(t);
        assert!(w > 1.0 && w < prev, "t={t}: {w}");
        prev = w;
    }
    assert!(prev < 1.0 + 1e-6);
    assert_eq!(f0_density(3.0), 0.0);
}

#[test]
fn f0_moments() {
    for k in 0..=6 {
        let below = f0_weighted_below_one(|x| x.powi(k));
        let above = integrate(|x| x.powi(k) * f0_density(x), Domain::Finite(1.0, E), &finite(1e-14, 1e-12)).unwrap();
        let m = mu0_moment(k as u32);
        assert!((below + above - m).abs() <= 1e-6, "k={k}: {} vs {m}", below + above);
    }
}

#[test]
fn stieltjes_at_ten_matches_moment_series() {
    let s = stieltjes_s(c(10.0, 0.0)).unwrap();
    let series: f64 = (0..=40).map(|k| mu0_moment(k) / 10f64.powi(k as i32 + 1)).sum();
    assert!((s.re + series).abs() <= 1e-12 && s.im == 0.0, "{s}");
}

#[test]
fn stieltjes_matches_integral() {
    for z in [c(1.0, 0.5), c(-2.0, 0.1), c(3.0, 2.0)] {
        let re = |x: f64| (1.0 / (c(x, 0.0) - z)).re;
        let im = |x: f64| (1.0 / (c(x, 0.0) - z)).im;
        let rule = finite(1e-13, 1e-11);
        let r = f0_weighted_below_one(re) + integrate(|x| re(x) * f0_density(x), Domain::Finite(1.0, E), &rule).unwrap();
        let i = f0_weighted_below_one(im) + integrate(|x| im(x) * f0_density(x), Domain::Finite(1.0, E), &rule).unwrap();
        let s = stieltjes_s(z).unwrap();
        assert!((s - c(r, i)).norm() < 1e-8, "{z}: {s} vs {r}+{i}i");
    }
}

#[test]
fn stieltjes_decays_like_minus_one_over_z() {
    let z = c(0.0, 1e9);
    assert!((z * stieltjes_s(z).unwrap() + 1.0).norm() < 1e-8);
    assert!(stieltjes_s(c(1.0, 0.0)).is_err());
    assert!(stieltjes_s(c(0.0, 0.0)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn stieltjes_is_herglotz(re in -20.0f64..20.0, log_im in -4.0f64..2.0) {
        let z = c(re, 10f64.powf(log_im));
        prop_assert!(stieltjes_s(z).unwrap().im > 0.0);
    }

    #[test]
    fn ftheta_roots_come_in_conjugate_pairs(x in 0.01f64..5.1) {
        let z = ftheta_root(x, 2.0).unwrap();
        let lower = ftheta_root_from(x, 2.0, z.conj() + c(1e-3, -1e-3)).unwrap();
        prop_assert!((lower - z.conj()).norm() <= 1e-10);
    }
}

#[test]
fn r_transform_values() {
    assert_eq!(r_transform(c(0.0, 0.0)).unwrap(), c(0.5, 0.0));
    let direct = -1.0 / (0.5 * 0.5f64.ln()) - 2.0;
    assert!((r_transform(c(0.5, 0.0)).unwrap().re - direct).abs() < 1e-14);
    assert!((direct - 0.885_390).abs() < 1e-6);
    assert!(r_transform(c(1.0, 0.0)).is_err());
    assert!(r_transform(c(0.0, -1.2)).is_err());
}

#[test]
fn r_transform_inverts_stieltjes() {
    for z in [c(0.1, 0.0), c(0.0, 0.2), c(0.3, 0.1)] {
        let k = r_transform(z).unwrap() + 1.0 / z;
        let s = stieltjes_s(k).unwrap();
        assert!((s + z).norm() <= 1e-10, "{z}: {s}");
    }
}

#[test]
fn marchenko_pastur_mass() {
    for ratio in [0.5, 1.0, 2.0] {
        let (a, b) = mp_support(ratio);
        let cont = integrate(|x| mp_density(x, ratio), Domain::Finite(a, b), &finite(1e-10, 1e-9)).unwrap();
        assert!((cont + mp_atom(ratio) - 1.0).abs() <= 1e-8, "c={ratio}");
    }
    assert!((mp_density(2.0, 1.0) - 1.0 / (2.0 * PI)).abs() < 1e-15);
}

#[test]
fn ftheta_residual_on_grid() {
    let edge = ftheta_edge(2.0).unwrap();
    let xs: Vec<f64> = (1..=100).map(|i| edge * i as f64 / 101.0).collect();
    for &x in &xs {
        let z = ftheta_root(x, 2.0).unwrap();
        assert!((ftheta_j(z, 2.0) - x).norm() <= 1e-10, "x={x}");
    }
    let mut desc = xs.clone();
    desc.reverse();
    for (x, z) in desc.iter().zip(ftheta_roots_descending(&desc, 2.0).unwrap()) {
        assert!((ftheta_root(*x, 2.0).unwrap() - z).norm() < 1e-10);
    }
}

#[test]
fn ftheta_mass_and_mean() {
    for theta in [2.0, 3.5] {
        let edge = ftheta_edge(theta).unwrap();
        let rule = finite(1e-12, 1e-10);
        let f = |x: f64| ftheta_density(x, theta).unwrap();
        let mass = integrate(f, Domain::Finite(0.0, edge), &rule).unwrap();
        assert!((mass - 1.0).abs() <= 1e-6, "theta={theta}: {mass}");
        // E tr(X X*)/n^2 -> (1 + theta) / 2 for b = 1.
        let mean = integrate(|x| x * f(x), Domain::Finite(0.0, edge), &rule).unwrap();
        assert!((mean - (1.0 + theta) / 2.0).abs() <= 1e-6, "theta={theta}: {mean}");
    }
    assert_eq!(ftheta_density(5.19616, 2.0).unwrap(), 0.0);
}

#[test]
fn ftheta_cdf_matches_quadrature() {
    let rule = finite(1e-12, 1e-10);
    for x in [0.05, 1.0, 3.0, 5.0] {
        let q = integrate(|t| ftheta_density(t, 2.0).unwrap(), Domain::Finite(0.0, x), &rule).unwrap();
        assert!((ftheta_cdf(x, 2.0).unwrap() - q).abs() <= 1e-8, "x={x}");
    }
}

#[test]
fn density_grids_carry_unit_mass() {
    let laws = [
        (LawId::F0, 0.0, E),
        (LawId::Ftheta { theta: 2.0 }, 0.0, 27f64.sqrt()),
        (LawId::Mp { c: 1.0 }, 0.0, 4.0),
        (LawId::Mp { c: 2.0 }, 0.0, 6.0),
        (LawId::Mp { c: 0.5 }, 0.0, 3.0),
    ];
    for (law, lo, hi) in laws {
        let g = DensityGrid::evaluate(law, lo, hi, 1000).unwrap();
        let m = g.mass().unwrap();
        assert!((m - 1.0).abs() <= 1e-3, "{law:?}: {m}");
        assert!(g.values.iter().all(|&v| v >= 0.0));
    }
}
