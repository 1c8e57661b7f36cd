use std::f64::consts::{E, PI};
use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;

use super::{Check, Criterion};
use crate::biorthogonal::{
    bari_haar_mc, bari_k, complex_wishart_density, correlation, det_g, gt_volume, gt_volume_mc, joint_density,
    kernel_eval, lu_identity_residual, KernelCoeffs,
};
use crate::combinatorics::{count_alternating_trees, count_delta_hat};
use crate::ensembles::{ks_statistic, mc_moments, spectrum, EmpiricalDistribution, EnsembleParams, EntryLaw, RngState};
use crate::error::Result;
use crate::limits::{
    cut_log_map, f0_cdf, f0_density, ftheta_cdf, ftheta_density, ftheta_density_and_cdf, ftheta_edge, lambert_w_cut,
    lambert_w_real, mu0_moment, r_transform, stieltjes_s, BRANCH_POINT, F0_EDGE,
};
use crate::numerics::{integrate, Domain, QuadratureRule};

macro_rules! criterion {
    ($id:literal, $group:literal, $title:literal, $run:ident) => {
        Criterion { id: $id, group: $group, title: $title, supplementary: false, run: $run }
    };
    ($id:literal, $group:literal, $title:literal, $run:ident, supplementary) => {
        Criterion { id: $id, group: $group, title: $title, supplementary: true, run: $run }
    };
}

pub static CRITERIA: &[Criterion] = &[
    criterion!("1", "moments", "Monte Carlo moments of the triangular Wigner ESD at n=512", moments),
    criterion!("2", "esd", "KS distance of one n=2048 spectrum to F0", esd),
    criterion!("3", "largest", "mean largest eigenvalue over 10 seeds at n=2048", largest),
    criterion!("4", "edge", "edge asymptotics of f0 at e and at 0", edge),
    criterion!("4b", "edge", "hard-edge ratio deeper in the edge, x = 1e-30", edge_deep, supplementary),
    criterion!("5", "transforms", "Stieltjes moment series and R-transform inverse", transforms),
    criterion!("6", "moment-matrix", "det G equals the superfactorial", det_superfactorial),
    criterion!("7", "moment-matrix", "Stirling LU identity of G", stirling_lu),
    criterion!("8", "kernel", "kernel trace, reproduction and correlations", kernel),
    criterion!("9", "wishart", "joint density at theta=1, b=m-n equals the complex Wishart density", wishart_as_stated),
    criterion!("9b", "wishart", "joint density at theta=1, b=m-n+1 equals the complex Wishart density", wishart_shifted, supplementary),
    criterion!("10", "density", "n=2 joint density has unit mass", density_mass),
    criterion!("11", "trees", "alternating tree and delta-hat counts", trees),
    criterion!("12", "bari", "unitary integral closed form vs Haar Monte Carlo", bari),
    criterion!("13", "gt", "Gelfand-Tsetlin volume vs rejection Monte Carlo", gt),
    criterion!("14", "ftheta", "theta=2 ESD against f_2 at n=1024", ftheta),
    criterion!("15", "lambert", "Lambert W residuals and cut-map monotonicity", lambert),
];

fn stream(seed: u64, id: u64) -> RngState {
    RngState::new(seed, id << 32)
}

fn moments(seed: u64) -> Result<Vec<Check>> {
    let start = Instant::now();
    let mut checks = Vec::new();
    let ks = [1, 2, 3, 4];
    for (idx, (law, name)) in [
        (EntryLaw::StandardComplexGaussian, "gaussian"),
        (EntryLaw::UniformPhaseUnitModulus, "uniform-phase"),
    ]
    .into_iter()
    .enumerate()
    {
        let p = EnsembleParams::wigner(512, law);
        let m = mc_moments(&p, &ks, 50, stream(seed, 1).replica(idx as u64 * 1000))?;
        for (k, v) in ks.iter().zip(m) {
            checks.push(Check::rel(format!("{name} m{k}"), mu0_moment(*k), v, 0.05));
        }
    }
    checks.push(Check::at_most("runtime seconds", start.elapsed().as_secs_f64(), 120.0));
    Ok(checks)
}

fn esd(seed: u64) -> Result<Vec<Check>> {
    let start = Instant::now();
    let p = EnsembleParams::wigner(2048, EntryLaw::StandardComplexGaussian);
    let s = spectrum(&p, stream(seed, 2))?;
    let d = ks_statistic(&EmpiricalDistribution::new(s.values)?, f0_cdf)?;
    Ok(vec![
        Check::at_most("KS distance", d, 0.05),
        Check::at_most("runtime seconds", start.elapsed().as_secs_f64(), 120.0),
    ])
}

fn largest(seed: u64) -> Result<Vec<Check>> {
    let p = EnsembleParams::wigner(2048, EntryLaw::StandardComplexGaussian);
    let base = stream(seed, 3);
    let mut sum = 0.0;
    for s in 0..10 {
        sum += spectrum(&p, base.replica(s))?.values[0];
    }
    Ok(vec![Check::interval("mean largest eigenvalue", E, sum / 10.0, E - 0.15, E + 0.05)])
}

fn edge(_seed: u64) -> Result<Vec<Check>> {
    let c = 2f64.sqrt() / (PI * E.powf(1.5));
    let h = 1e-4;
    let x = 1e-6f64;
    Ok(vec![
        Check::rel("f0(e-h)/sqrt(h), h=1e-4", c, f0_density(F0_EDGE - h) / h.sqrt(), 0.02),
        Check::rel("x log^2 x f0(x), x=1e-6", 1.0, x * x.ln().powi(2) * f0_density(x), 0.15),
    ])
}

fn edge_deep(_seed: u64) -> Result<Vec<Check>> {
    let x = 1e-30f64;
    Ok(vec![Check::rel("x log^2 x f0(x), x=1e-30", 1.0, x * x.ln().powi(2) * f0_density(x), 0.15)])
}

fn transforms(_seed: u64) -> Result<Vec<Check>> {
    let s10 = stieltjes_s(Complex64::new(10.0, 0.0))?;
    let series: f64 = (0..=40).map(|k| mu0_moment(k) * 10f64.powi(-(k as i32) - 1)).sum();
    let mut checks = vec![Check::at_most("|S(10) + sum m_k 10^(-k-1)|", (s10 + series).norm(), 1e-12)];
    for z in [Complex64::new(0.1, 0.0), Complex64::new(0.0, 0.2), Complex64::new(0.3, 0.1)] {
        let k = r_transform(z)? + 1.0 / z;
        let r = (stieltjes_s(k)? + z).norm();
        checks.push(Check::at_most(format!("|S(R(z)+1/z) + z|, z={z}"), r, 1e-10));
    }
    Ok(checks)
}

fn superfactorial(n: usize) -> f64 {
    (1..n).map(|j| (1..=j).map(|i| i as f64).product::<f64>()).product()
}

fn det_superfactorial(_seed: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for n in 1..=6 {
        checks.push(Check::rel(format!("det G, n={n}"), superfactorial(n), det_g(n, 1.0)?, 1e-6));
    }
    checks.push(Check::rel("det G, n=8", superfactorial(8), det_g(8, 1.0)?, 1e-4));
    Ok(checks)
}

fn stirling_lu(_seed: u64) -> Result<Vec<Check>> {
    let mut worst: f64 = 0.0;
    for j in 0..=6 {
        for k in 0..=6 {
            worst = worst.max(lu_identity_residual(j, k)?);
        }
    }
    Ok(vec![Check::at_most("max residual, j,k <= 6", worst, 1e-7)])
}

fn ordered_mass(f: impl Fn(f64, f64) -> f64 + Copy) -> Result<f64> {
    let inner = move |x1: f64| {
        integrate(|x2| f(x1, x2), Domain::Finite(0.0, x1), &QuadratureRule::finite(1e-13, 1e-11)).unwrap_or(f64::NAN)
    };
    integrate(inner, Domain::HalfLine, &QuadratureRule::half_line(1e-11, 1e-9))
}

fn kernel(_seed: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let rule = QuadratureRule::half_line(1e-12, 1e-11);
    for n in 1..=5 {
        let c = KernelCoeffs::new(n, 1.0)?;
        let tr = integrate(|x| kernel_eval(x, x, &c), Domain::HalfLine, &rule)?;
        checks.push(Check::abs(format!("trace, n={n}"), n as f64, tr, 1e-6));
    }
    let c3 = KernelCoeffs::new(3, 1.0)?;
    let composed = integrate(|y| kernel_eval(1.0, y, &c3) * kernel_eval(y, 2.0, &c3), Domain::HalfLine, &rule)?;
    checks.push(Check::abs("reproducing, n=3, (x,z)=(1,2)", kernel_eval(1.0, 2.0, &c3), composed, 1e-6));
    let c2 = KernelCoeffs::new(2, 1.0)?;
    for (a, b) in [(2.0, 1.0), (0.5, 0.1), (4.0, 3.9), (7.5, 0.2), (1.1, 0.9)] {
        // Two points of a two-point process: rho_2 = 2! * (p / 2!) with p the ordered density.
        let p = joint_density(&[a, b], 0.0, 1.0)?;
        checks.push(Check::abs(format!("rho_2({a},{b})"), p, correlation(&[a, b], &c2)?, 1e-8));
    }
    Ok(checks)
}

fn random_pairs(seed: u64) -> Vec<[f64; 2]> {
    let mut rng = stream(seed, 9).generator();
    (0..5)
        .map(|_| {
            let (u, v): (f64, f64) = (rng.gen_range(0.05..8.0), rng.gen_range(0.05..8.0));
            [u.max(v), u.min(v)]
        })
        .collect()
}

fn wishart_checks(seed: u64, b: f64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for x in random_pairs(seed) {
        let w = complex_wishart_density(&x, 4)?;
        let j = joint_density(&x, 1.0, b)?;
        checks.push(Check::rel(format!("({:.4},{:.4})", x[0], x[1]), w, j, 1e-10));
    }
    Ok(checks)
}

fn wishart_as_stated(seed: u64) -> Result<Vec<Check>> {
    wishart_checks(seed, 2.0)
}

fn wishart_shifted(seed: u64) -> Result<Vec<Check>> {
    wishart_checks(seed, 3.0)
}

fn density_mass(_seed: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for theta in [0.0, 1.0] {
        let m = ordered_mass(|a, b| joint_density(&[a, b], theta, 1.0).unwrap_or(0.0))?;
        checks.push(Check::abs(format!("mass, theta={theta}"), 1.0, m, 1e-4));
    }
    Ok(checks)
}

fn trees(_seed: u64) -> Result<Vec<Check>> {
    let start = Instant::now();
    let mut checks = Vec::new();
    for k in 1..=6usize {
        let c = count_alternating_trees(k)?;
        checks.push(Check::exact(format!("alternating trees, k={k}"), (k as f64).powi(k as i32), c as f64));
    }
    for (n, k) in [(3, 1), (4, 2), (5, 2), (5, 3)] {
        let c = count_delta_hat(n, k)?;
        checks.push(Check::exact(format!("delta-hat({n},{k})"), c.closed_form as f64, c.delta_hat as f64));
    }
    checks.push(Check::at_most("runtime seconds", start.elapsed().as_secs_f64(), 60.0));
    Ok(checks)
}

fn bari(seed: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (i, theta) in [0.0, 1.0].into_iter().enumerate() {
        let exact = bari_k(&[2.0, 1.0], theta)?;
        let est = bari_haar_mc(&[2.0, 1.0], theta, 100_000, stream(seed, 12).replica(i as u64))?;
        checks.push(Check::abs(format!("theta={theta}, tolerance 3 SE"), exact, est.mean, 3.0 * est.std_error));
    }
    Ok(checks)
}

fn gt(seed: u64) -> Result<Vec<Check>> {
    let x = [3.0, 1.0, 0.0];
    let exact = gt_volume(&x)?;
    let est = gt_volume_mc(&x, 1_000_000, &mut stream(seed, 13).generator())?;
    Ok(vec![Check::abs("x=(3,1,0), tolerance 3 SE", exact, est.mean, 3.0 * est.std_error)])
}

fn ftheta(seed: u64) -> Result<Vec<Check>> {
    let theta = 2.0;
    let edge = ftheta_edge(theta)?;
    let s = spectrum(&EnsembleParams::theta_b(1024, theta, 1.0), stream(seed, 14))?;
    let emp = EmpiricalDistribution::new(s.values)?;
    let table = ftheta_density_and_cdf(emp.values(), theta)?;
    let lookup = |x: f64| {
        let i = emp.values().partition_point(|v| *v < x);
        if emp.values().get(i) == Some(&x) {
            table[i].1
        } else {
            ftheta_cdf(x, theta).unwrap_or(f64::NAN)
        }
    };
    let d = ks_statistic(&emp, lookup)?;
    let mass = integrate(
        |x| ftheta_density(x, theta).unwrap_or(f64::NAN),
        Domain::Finite(0.0, edge),
        &QuadratureRule::finite(1e-12, 1e-10),
    )?;
    let beyond = [1.0 + 1e-12, 1.01, 1.5, 3.0]
        .iter()
        .map(|s| ftheta_density(edge * s, theta))
        .collect::<Result<Vec<_>>>()?;
    Ok(vec![
        Check::at_most("KS distance", d, 0.07),
        Check::abs("mass", 1.0, mass, 1e-6),
        Check::abs("edge", 3f64.powf(1.5), edge, 1e-12),
        Check::exact("CDF at the edge", 1.0, ftheta_cdf(edge, theta)?),
        Check::exact("max density beyond the edge", 0.0, beyond.into_iter().fold(0.0, f64::max)),
    ])
}

fn lambert(_seed: u64) -> Result<Vec<Check>> {
    let mut real_worst: f64 = 0.0;
    let mut xs = vec![BRANCH_POINT, 1e6];
    for i in 0..=2000 {
        let x = 10f64.powf(-16.0 + 22.0 * i as f64 / 2000.0);
        xs.push(x);
        if x < -BRANCH_POINT {
            xs.push(-x);
        }
    }
    for x in xs {
        let w = lambert_w_real(x)?;
        real_worst = real_worst.max((w * w.exp() - x).abs() / x.abs());
    }
    let mut cut_worst: f64 = 0.0;
    for i in 0..2000 {
        let z = BRANCH_POINT - 10f64.powf(-12.0 + 18.0 * i as f64 / 1999.0);
        let w = lambert_w_cut(z)?.w();
        cut_worst = cut_worst.max((w * w.exp() - z).norm() / z.abs());
    }
    let n = 10_000;
    let increasing = (1..n)
        .map(|i| cut_log_map(PI * i as f64 / n as f64))
        .collect::<Vec<_>>()
        .windows(2)
        .all(|w| w[1] > w[0]);
    Ok(vec![
        Check::at_most("real branch, max relative residual", real_worst, 1e-14),
        Check::at_most("cut, max relative residual", cut_worst, 1e-12),
        Check::flag("cut map increasing on 1e4 points", increasing),
    ])
}
