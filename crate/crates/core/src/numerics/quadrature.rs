//! Adaptive quadrature on finite intervals and on the half line `[0, inf)`.
//!
//! Finite intervals use globally adaptive 7/15-point Gauss-Kronrod
//! bisection. The half line is split at `x = 1`:
//!
//! * on `(0, 1)` the substitution `x = e^{-t}` turns `(log x)^k` end-point
//!   singularities into polynomial growth in `t` against an `e^{-t}` factor;
//! * on `(1, inf)` the variable `s = x - 1` is integrated over panels of
//!   doubling width `[0,1], [1,2], [2,4], ...`, refined adaptively, with a
//!   Gauss-Laguerre rule closing the tail beyond the last panel.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Upper end of the `t` panels on `(0, 1)`; `e^{-512}` is still a normal double.
const LOG_PANEL_END: f64 = 512.0;
/// Upper end of the `s` panels on `(1, inf)`.
const SHIFT_PANEL_END: f64 = 1024.0;
const LAGUERRE_NODES: usize = 32;
const MAX_INTERVALS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    FiniteAdaptive,
    SemiInfiniteExpWeighted,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Finite(f64, f64),
    /// The half line `[0, inf)`.
    HalfLine,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureRule {
    pub kind: RuleKind,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: usize,
}

impl QuadratureRule {
    pub fn finite(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            kind: RuleKind::FiniteAdaptive,
            abs_tol,
            rel_tol,
            max_depth: 60,
        }
    }

    pub fn half_line(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            kind: RuleKind::SemiInfiniteExpWeighted,
            abs_tol,
            rel_tol,
            max_depth: 60,
        }
    }

    pub fn with_max_depth(mut self, max_depth: usize) -> Self {
        self.max_depth = max_depth;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::Input("quadrature tolerances must be positive".into()));
        }
        if self.max_depth == 0 {
            return Err(Error::Input("quadrature max_depth must be at least 1".into()));
        }
        Ok(())
    }
}

/// Integral estimate together with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// Integrates `f` over `domain`, failing if the tolerance cannot be met.
pub fn integrate<F>(f: F, domain: Domain, rule: &QuadratureRule) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    integrate_with_error(f, domain, rule).map(|e| e.value)
}

pub fn integrate_with_error<F>(f: F, domain: Domain, rule: &QuadratureRule) -> Result<Estimate>
where
    F: Fn(f64) -> f64,
{
    rule.validate()?;
    match (domain, rule.kind) {
        (Domain::Finite(a, b), RuleKind::FiniteAdaptive) => {
            if !(a.is_finite() && b.is_finite()) {
                return Err(Error::Input("finite domain needs finite end points".into()));
            }
            if a == b {
                return Ok(Estimate { value: 0.0, error: 0.0 });
            }
            let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
            let funcs: [&dyn Fn(f64) -> f64; 1] = [&f];
            let est = adaptive(&funcs, &[(0, lo, hi)], rule, 0.0)?;
            Ok(Estimate {
                value: sign * est.value,
                error: est.error,
            })
        }
        (Domain::HalfLine, RuleKind::SemiInfiniteExpWeighted) => half_line(&f, rule),
        _ => Err(Error::Input("quadrature rule kind does not match the domain".into())),
    }
}

fn half_line(f: &dyn Fn(f64) -> f64, rule: &QuadratureRule) -> Result<Estimate> {
    let below = |t: f64| {
        let x = (-t).exp();
        f(x) * x
    };
    let above = |s: f64| f(1.0 + s);

    let (tail_below, tail_below_err) = laguerre_tail(&below, LOG_PANEL_END)?;
    let (tail_above, tail_above_err) = laguerre_tail(&above, SHIFT_PANEL_END)?;
    let tail = tail_below + tail_above;
    let tail_err = tail_below_err + tail_above_err;

    let mut panels = doubling_panels(0, LOG_PANEL_END);
    panels.extend(doubling_panels(1, SHIFT_PANEL_END));
    let funcs: [&dyn Fn(f64) -> f64; 2] = [&below, &above];
    let est = adaptive(&funcs, &panels, rule, tail)?;
    let value = est.value + tail;
    let error = est.error + tail_err;
    if error > rule.abs_tol.max(rule.rel_tol * value.abs()) {
        return Err(Error::Accuracy {
            estimate: value,
            error_bound: error,
        });
    }
    Ok(Estimate { value, error })
}

fn doubling_panels(tag: usize, end: f64) -> Vec<(usize, f64, f64)> {
    let mut panels = vec![(tag, 0.0, 1.0)];
    let mut lo = 1.0;
    while lo < end {
        panels.push((tag, lo, 2.0 * lo));
        lo *= 2.0;
    }
    panels
}

/// `int_start^inf g(s) ds` by Gauss-Laguerre after `s = start + u`, with the
/// difference from the half-order rule as error estimate.
fn laguerre_tail(g: &dyn Fn(f64) -> f64, start: f64) -> Result<(f64, f64)> {
    let eval = |rule: &[(f64, f64)]| -> Result<f64> {
        let mut sum = 0.0;
        for &(u, w) in rule {
            let v = g(start + u);
            if !v.is_finite() {
                return Err(Error::Input(format!("integrand not finite at {}", start + u)));
            }
            sum += w * v * u.exp();
        }
        Ok(sum)
    };
    let full = eval(laguerre_rule(LAGUERRE_NODES))?;
    let half = eval(laguerre_rule(LAGUERRE_NODES / 2))?;
    Ok((full, (full - half).abs()))
}

/// Gauss-Laguerre nodes and weights for weight `e^{-u}`, by Newton iteration
/// on the three-term recurrence.
fn laguerre_rule(n: usize) -> &'static [(f64, f64)] {
    static RULE_16: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    static RULE_32: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    let cell = match n {
        16 => &RULE_16,
        32 => &RULE_32,
        _ => unreachable!("only 16- and 32-point Laguerre rules are tabulated"),
    };
    cell.get_or_init(|| compute_laguerre(n))
}

fn compute_laguerre(n: usize) -> Vec<(f64, f64)> {
    let nf = n as f64;
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(n);
    let mut z = 0.0f64;
    for i in 0..n {
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => z + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + (1.0 + 2.55 * ai) / (1.9 * ai) * (z - out[i - 2].0)
            }
        };
        let mut pp = 0.0;
        let mut p2 = 0.0;
        for _ in 0..100 {
            let mut p1 = 1.0;
            p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = ((2.0 * jf + 1.0 - z) * p2 - jf * p3) / (jf + 1.0);
            }
            pp = nf * (p1 - p2) / z;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 3e-15 * z.abs() {
                break;
            }
        }
        // Standard weight formula for alpha = 0: w = -1 / (pp * n * L_{n-1}).
        out.push((z, -1.0 / (pp * nf * p2)));
    }
    out
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    tag: usize,
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    depth: usize,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive bisection over a set of tagged panels. `offset` is a
/// contribution computed elsewhere that counts towards the relative tolerance.
fn adaptive(
    funcs: &[&dyn Fn(f64) -> f64],
    panels: &[(usize, f64, f64)],
    rule: &QuadratureRule,
    offset: f64,
) -> Result<Estimate> {
    let mut heap = BinaryHeap::with_capacity(panels.len() * 4);
    for &(tag, lo, hi) in panels {
        let (value, error) = kronrod(funcs[tag], lo, hi)?;
        heap.push(Piece {
            tag,
            lo,
            hi,
            value,
            error,
            depth: 0,
        });
    }
    loop {
        let value: f64 = heap.iter().map(|p| p.value).sum();
        let error: f64 = heap.iter().map(|p| p.error).sum();
        let target = rule.abs_tol.max(rule.rel_tol * (value + offset).abs());
        if error <= target {
            return Ok(Estimate { value, error });
        }
        let worst = *heap.peek().expect("at least one panel");
        if worst.depth >= rule.max_depth || heap.len() >= MAX_INTERVALS {
            return Err(Error::Accuracy {
                estimate: value + offset,
                error_bound: error,
            });
        }
        heap.pop();
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(mid > worst.lo && mid < worst.hi) {
            return Err(Error::Accuracy {
                estimate: value + offset,
                error_bound: error,
            });
        }
        for (lo, hi) in [(worst.lo, mid), (mid, worst.hi)] {
            let (v, e) = kronrod(funcs[worst.tag], lo, hi)?;
            heap.push(Piece {
                tag: worst.tag,
                lo,
                hi,
                value: v,
                error: e,
                depth: worst.depth + 1,
            });
        }
    }
}

/// 15-point Kronrod estimate with the 7-point Gauss error indicator,
/// rescaled as in QUADPACK.
fn kronrod(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> Result<(f64, f64)> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Input(format!("integrand not finite at {x}")))
        }
    };
    let fc = eval(center)?;
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let value = resk * half;
    resabs *= half.abs();
    resasc *= half.abs();
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Ok((value, err))
}
