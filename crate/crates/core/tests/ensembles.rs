use trimat::ensembles::*;
use trimat::numerics::{Complex64, ComplexMatrix};

const MILLION: usize = 1_000_000;

#[test]
fn complex_gaussian_moments() {
    let mut g = RngState::new(11, 0).generator();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut sq = Complex64::new(0.0, 0.0);
    let mut abs2 = 0.0;
    for _ in 0..MILLION {
        let z = sample_standard_complex_gaussian(&mut g);
        sum += z;
        sq += z * z;
        abs2 += z.norm_sqr();
    }
    let n = MILLION as f64;
    assert!((abs2 / n - 1.0).abs() < 0.005);
    assert!((sum / n).re.abs() < 0.005 && (sum / n).im.abs() < 0.005);
    assert!((sq / n).norm() < 0.005);
}

#[test]
fn gamma_two_mean_and_variance() {
    let mut g = RngState::new(12, 0).generator();
    let xs: Vec<f64> = (0..MILLION).map(|_| sample_gamma(2.0, &mut g)).collect();
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    assert!((mean - 2.0).abs() < 0.01, "{mean}");
    assert!((var - 2.0).abs() < 0.05, "{var}");
}

#[test]
fn gamma_one_is_exponential() {
    let mut g = RngState::new(13, 0).generator();
    let xs: Vec<f64> = (0..MILLION).map(|_| sample_gamma(1.0, &mut g)).collect();
    let emp = EmpiricalDistribution::new(xs).unwrap();
    let d = ks_statistic(&emp, |x| if x <= 0.0 { 0.0 } else { -(-x).exp_m1() }).unwrap();
    assert!(d <= 0.002, "{d}");
}

#[test]
fn entry_laws_have_unit_variance() {
    for law in [EntryLaw::StandardComplexGaussian, EntryLaw::UniformPhaseUnitModulus] {
        let mut g = RngState::new(14, 0).generator();
        let mut sum = Complex64::new(0.0, 0.0);
        let mut m2 = 0.0;
        let mut m4 = 0.0;
        for _ in 0..MILLION {
            let z = sample_entry(law, &mut g);
            sum += z;
            m2 += z.norm_sqr();
            m4 += z.norm_sqr() * z.norm_sqr();
        }
        let n = MILLION as f64;
        assert!((sum / n).norm() < 0.01, "{law:?}");
        assert!((m2 / n - 1.0).abs() < 0.01, "{law:?}");
        if law == EntryLaw::UniformPhaseUnitModulus {
            assert_eq!(m4, n);
        }
    }
}

#[test]
fn one_by_one_theta_b_is_exponential() {
    let p = EnsembleParams::theta_b(1, 0.0, 1.0);
    let mut g = RngState::new(15, 0).generator();
    let mean = (0..100_000).map(|_| sample_matrix(&p, &mut g).unwrap()[(0, 0)].norm_sqr()).sum::<f64>() / 1e5;
    assert!((mean - 1.0).abs() < 0.02, "{mean}");
}

#[test]
fn uniform_phase_matrix_entries_have_unit_modulus() {
    let p = EnsembleParams::wigner(4, EntryLaw::UniformPhaseUnitModulus);
    let m = sample_matrix(&p, &mut RngState::new(16, 0).generator()).unwrap();
    for j in 0..4 {
        for i in j..4 {
            assert_eq!(m[(i, j)].norm(), 1.0);
        }
    }
}

#[test]
fn spectrum_is_deterministic_and_nonnegative() {
    let p = EnsembleParams::theta_b(40, 1.5, 0.7);
    let a = spectrum(&p, RngState::new(17, 2)).unwrap();
    let b = spectrum(&p, RngState::new(17, 2)).unwrap();
    assert_eq!(a, b);
    assert!(*a.values.last().unwrap() >= -1e-12);
}

#[test]
fn moments_do_not_depend_on_thread_count() {
    let p = EnsembleParams::wigner(24, EntryLaw::StandardComplexGaussian);
    let state = RngState::new(18, 100);
    let serial = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let wide = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = serial.install(|| mc_moments(&p, &[1, 2, 3], 16, state)).unwrap();
    let b = wide.install(|| mc_moments(&p, &[1, 2, 3], 16, state)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn wigner_moments_at_n_512() {
    let p = EnsembleParams::wigner(512, EntryLaw::StandardComplexGaussian);
    let m = mc_moments(&p, &[1, 2, 3], 50, RngState::new(19, 0)).unwrap();
    assert!((m[0] - 0.5).abs() < 0.02, "{m:?}");
    assert!((m[1] - 2.0 / 3.0).abs() < 0.03, "{m:?}");
    assert!((m[2] - 9.0 / 8.0).abs() < 0.06, "{m:?}");
}

#[test]
fn largest_eigenvalue_near_e_at_n_1024() {
    let p = EnsembleParams::wigner(1024, EntryLaw::StandardComplexGaussian);
    let inside = (0..20)
        .filter(|&s| {
            let top = spectrum(&p, RngState::new(1000 + s, 0)).unwrap().values[0];
            (2.2..=2.9).contains(&top)
        })
        .count();
    assert!(inside >= 19, "{inside} of 20");
}

#[test]
fn haar_one_by_one_is_uniform_phase() {
    let mut g = RngState::new(20, 0).generator();
    let mut sum = Complex64::new(0.0, 0.0);
    for _ in 0..100_000 {
        sum += sample_haar_unitary(1, &mut g).unwrap()[(0, 0)];
    }
    assert!((sum / 1e5).norm() < 0.01);
}

#[test]
fn haar_two_by_two_corner() {
    let mut g = RngState::new(21, 0).generator();
    let mean = (0..100_000).map(|_| sample_haar_unitary(2, &mut g).unwrap()[(0, 0)].norm_sqr()).sum::<f64>() / 1e5;
    assert!((mean - 0.5).abs() < 0.01, "{mean}");
}

#[test]
fn haar_three_by_three_is_unitary() {
    let q = sample_haar_unitary(3, &mut RngState::new(22, 0).generator()).unwrap();
    assert!((&q.adjoint() * &q).max_abs_diff(&ComplexMatrix::identity(3)) <= 1e-11);
}

#[test]
fn uniform_sample_ks() {
    use rand::Rng;
    let mut g = RngState::new(23, 0).generator();
    let xs: Vec<f64> = (0..10_000).map(|_| g.gen::<f64>()).collect();
    let d = ks_statistic(&EmpiricalDistribution::new(xs).unwrap(), |x| x.clamp(0.0, 1.0)).unwrap();
    assert!(d <= 0.025, "{d}");
}
