//! Command-line front end: seeded sampling, density tables, kernel and
//! combinatorics reports, and the acceptance-suite runner.

pub mod table;

use std::io;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use trimat::biorthogonal::{bari_haar_mc, bari_k, correlation, KernelCoeffs, MAX_KERNEL_N};
use trimat::combinatorics::{count_alternating_trees, count_delta_hat, MAX_TREE_K};
use trimat::ensembles::{mc_moments, spectrum, EnsembleParams, EntryLaw, RngState};
use trimat::limits::{mu0_moment, DensityGrid, LawId};
use trimat::verify::{self, CriterionResult, DEFAULT_SEED};

use table::{emit, Cell, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug)]
pub enum Failure {
    Config(String),
    Io(io::Error),
    Verification(usize),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Config(_) => EXIT_CONFIG,
            Failure::Io(_) => EXIT_IO,
            Failure::Verification(_) => EXIT_VERIFY,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Config(m) => write!(f, "invalid configuration: {m}"),
            Failure::Io(e) => write!(f, "I/O error: {e}"),
            Failure::Verification(n) => write!(f, "{n} criteria failed"),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<trimat::Error> for Failure {
    fn from(e: trimat::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Config(msg()))
    }
}

#[derive(Debug, Parser)]
#[command(name = "trimat", version, about = "Triangular random matrices: sampling, limit laws, kernels and trees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample spectra of X X*/n, one row per eigenvalue per replica
    Sample(SampleArgs),
    /// Tabulate a limit density and its distribution function
    Density(DensityArgs),
    /// Monte Carlo moments of the spectrum against the limit
    Moments(MomentsArgs),
    /// One-point intensity K_n(x, x) of the theta = 0 kernel
    Kernel(KernelArgs),
    /// Alternating tree and index-pair counts
    Trees(TreesArgs),
    /// Unitary integral: closed form and Haar Monte Carlo
    Bari(BariArgs),
    /// Run the acceptance suite and write a JSON report
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output file; stdout when omitted or `-`
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

impl Output {
    fn write(&self, t: &Table) -> Result<(), Failure> {
        let text = match self.format {
            Format::Csv => t.to_csv(),
            Format::Json => t.to_json(),
        };
        emit(self.output.as_deref(), &text)?;
        Ok(())
    }
}

#[derive(Debug, Args)]
pub struct Seed {
    /// Random seed; falls back to TRIMAT_SEED, then to a fixed default
    #[arg(long, env = "TRIMAT_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Wigner,
    ThetaB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Law {
    Gaussian,
    UniformPhase,
}

#[derive(Debug, Args)]
pub struct EnsembleArgs {
    #[arg(long, value_enum, default_value_t = Kind::Wigner)]
    pub kind: Kind,
    /// Entry law of the triangular Wigner matrix
    #[arg(long, value_enum, default_value_t = Law::Gaussian)]
    pub entry_law: Law,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
}

impl EnsembleArgs {
    fn params(&self) -> Result<EnsembleParams, Failure> {
        require(self.n >= 1, || format!("n must be at least 1, got {}", self.n))?;
        let p = match self.kind {
            Kind::Wigner => EnsembleParams::wigner(
                self.n,
                match self.entry_law {
                    Law::Gaussian => EntryLaw::StandardComplexGaussian,
                    Law::UniformPhase => EntryLaw::UniformPhaseUnitModulus,
                },
            ),
            Kind::ThetaB => {
                require(self.theta.is_finite() && self.theta >= 0.0, || format!("theta must be >= 0, got {}", self.theta))?;
                require(self.b.is_finite() && self.b > 0.0, || format!("b must be > 0, got {}", self.b))?;
                EnsembleParams::theta_b(self.n, self.theta, self.b)
            }
        };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    #[command(flatten)]
    pub seed: Seed,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LawName {
    F0,
    Ftheta,
    Mp,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[arg(long, value_enum)]
    pub law: LawName,
    /// Parameter of ftheta; must exceed 1
    #[arg(long, default_value_t = 2.0)]
    pub theta: f64,
    /// Aspect ratio of the Marchenko-Pastur law
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, default_value_t = 0.0)]
    pub lo: f64,
    /// Upper end of the grid; the right edge of the support by default
    #[arg(long)]
    pub hi: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    pub points: usize,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[command(flatten)]
    pub ensemble: EnsembleArgs,
    #[arg(long, default_value_t = 10)]
    pub reps: usize,
    /// Highest moment order
    #[arg(long, default_value_t = 4)]
    pub k: u32,
    #[command(flatten)]
    pub seed: Seed,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    #[arg(long, default_value_t = 0.01)]
    pub lo: f64,
    #[arg(long, default_value_t = 10.0)]
    pub hi: f64,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct TreesArgs {
    /// Largest k; trees have k+1 vertices
    #[arg(long, default_value_t = 6)]
    pub k: usize,
    /// Also count index pairs over labels 1..=n
    #[arg(long)]
    pub n: Option<u32>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct BariArgs {
    /// Decreasing positive values, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    pub lambda: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,
    /// Haar replicas; 0 skips the Monte Carlo estimate
    #[arg(long, default_value_t = 100_000)]
    pub reps: usize,
    #[command(flatten)]
    pub seed: Seed,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Restrict to criterion ids or groups, comma separated
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    /// List the criteria and exit
    #[arg(long)]
    pub list: bool,
    #[command(flatten)]
    pub seed: Seed,
    /// Report file; stdout when omitted or `-`
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Sample(a) => cmd_sample(a),
        Command::Density(a) => cmd_density(a),
        Command::Moments(a) => cmd_moments(a),
        Command::Kernel(a) => cmd_kernel(a),
        Command::Trees(a) => cmd_trees(a),
        Command::Bari(a) => cmd_bari(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

pub fn cmd_sample(a: SampleArgs) -> Result<(), Failure> {
    let params = a.ensemble.params()?;
    require(a.reps >= 1, || "reps must be at least 1".into())?;
    let base = RngState::new(a.seed.seed, 0);
    let mut t = Table::new(&["replica", "rank", "value"]);
    for r in 0..a.reps {
        let s = spectrum(&params, base.replica(r as u64))?;
        for (rank, v) in s.values.iter().enumerate() {
            t.push(vec![r.into(), (rank + 1).into(), (*v).into()]);
        }
    }
    a.out.write(&t)
}

pub fn cmd_density(a: DensityArgs) -> Result<(), Failure> {
    let law = match a.law {
        LawName::F0 => LawId::F0,
        LawName::Ftheta => {
            require(a.theta.is_finite() && a.theta > 1.0, || {
                format!("ftheta is only defined for theta > 1 (the density formula needs theta > 1), got {}", a.theta)
            })?;
            LawId::Ftheta { theta: a.theta }
        }
        LawName::Mp => {
            require(a.c.is_finite() && a.c > 0.0, || format!("c must be > 0, got {}", a.c))?;
            LawId::Mp { c: a.c }
        }
    };
    let hi = a.hi.unwrap_or(law.support()?.1);
    require(a.lo.is_finite() && hi.is_finite() && a.lo < hi, || format!("grid needs lo < hi, got [{}, {hi}]", a.lo))?;
    require(a.points >= 2, || format!("points must be at least 2, got {}", a.points))?;
    let grid = DensityGrid::evaluate(law, a.lo, hi, a.points)?;
    // Plain trapezoid misses most of the mass next to the singularity at 0.
    eprintln!("mass {:.10} trapezoid {:.10}", grid.mass()?, grid.trapezoid());
    let mut t = Table::new(&["x", "density", "cdf"]);
    for (i, (x, y)) in grid.abscissae.iter().zip(&grid.values).enumerate() {
        let c = grid.cdf.as_ref().map(|c| c[i]);
        t.push(vec![(*x).into(), (*y).into(), c.into()]);
    }
    a.out.write(&t)
}

pub fn cmd_moments(a: MomentsArgs) -> Result<(), Failure> {
    let params = a.ensemble.params()?;
    require(a.reps >= 1, || "reps must be at least 1".into())?;
    require((1..=16).contains(&a.k), || format!("k must be in 1..=16, got {}", a.k))?;
    let ks: Vec<u32> = (1..=a.k).collect();
    let m = mc_moments(&params, &ks, a.reps, RngState::new(a.seed.seed, 0))?;
    let mut t = Table::new(&["k", "monte_carlo", "limit"]);
    for (k, v) in ks.iter().zip(m) {
        let limit = (a.ensemble.kind == Kind::Wigner).then(|| mu0_moment(*k));
        t.push(vec![(*k as usize).into(), v.into(), limit.into()]);
    }
    a.out.write(&t)
}

pub fn cmd_kernel(a: KernelArgs) -> Result<(), Failure> {
    require((1..=MAX_KERNEL_N).contains(&a.n), || format!("n must be in 1..={MAX_KERNEL_N}, got {}", a.n))?;
    require(a.b.is_finite() && a.b > 0.0, || format!("b must be > 0, got {}", a.b))?;
    require(a.lo > 0.0 && a.lo < a.hi && a.hi.is_finite(), || format!("grid needs 0 < lo < hi, got [{}, {}]", a.lo, a.hi))?;
    require(a.points >= 2, || format!("points must be at least 2, got {}", a.points))?;
    let c = KernelCoeffs::new(a.n, a.b)?;
    let mut t = Table::new(&["x", "intensity"]);
    let step = (a.hi - a.lo) / (a.points - 1) as f64;
    for i in 0..a.points {
        let x = if i + 1 == a.points { a.hi } else { a.lo + step * i as f64 };
        t.push(vec![x.into(), correlation(&[x], &c)?.into()]);
    }
    a.out.write(&t)
}

pub fn cmd_trees(a: TreesArgs) -> Result<(), Failure> {
    require((1..=MAX_TREE_K).contains(&a.k), || format!("k must be in 1..={MAX_TREE_K}, got {}", a.k))?;
    let mut cols = vec!["k", "alternating_trees", "k_pow_k"];
    if a.n.is_some() {
        cols.extend(["delta", "delta_hat", "closed_form"]);
    }
    let mut t = Table::new(&cols);
    for k in 1..=a.k {
        let mut row: Vec<Cell> = vec![k.into(), count_alternating_trees(k)?.into(), (k as u64).pow(k as u32).into()];
        if let Some(n) = a.n {
            let c = count_delta_hat(n, k)?;
            row.extend([Cell::from(c.delta), Cell::from(c.delta_hat), Cell::from(c.closed_form)]);
        }
        t.push(row);
    }
    a.out.write(&t)
}

pub fn cmd_bari(a: BariArgs) -> Result<(), Failure> {
    require(!a.lambda.is_empty(), || "lambda must not be empty".into())?;
    require(a.lambda.iter().all(|l| l.is_finite() && *l > 0.0), || "lambda entries must be positive".into())?;
    require(a.lambda.windows(2).all(|w| w[0] > w[1]), || "lambda must be strictly decreasing".into())?;
    require(a.theta.is_finite() && a.theta >= 0.0, || format!("theta must be >= 0, got {}", a.theta))?;
    let n = a.lambda.len();
    let closed = bari_k(&a.lambda, a.theta)?;
    let mc = if a.reps > 0 {
        require((2..=3).contains(&n), || format!("Monte Carlo needs 2 or 3 values of lambda, got {n}; pass --reps 0"))?;
        require(a.reps >= 2, || "reps must be 0 or at least 2".into())?;
        Some(bari_haar_mc(&a.lambda, a.theta, a.reps, RngState::new(a.seed.seed, 0))?)
    } else {
        None
    };
    let mut t = Table::new(&["n", "theta", "closed_form", "mc_mean", "mc_std_error"]);
    t.push(vec![
        n.into(),
        a.theta.into(),
        closed.into(),
        mc.map(|m| m.mean).into(),
        mc.map(|m| m.std_error).into(),
    ]);
    a.out.write(&t)
}

fn summary_line(r: &CriterionResult) -> String {
    let status = if r.pass { "PASS" } else { "FAIL" };
    let tag = if r.supplementary { " (supplementary)" } else { "" };
    format!("[{status}] {:>3} {:<14} {}{tag} [{:.1}s]", r.id, r.group, r.title, r.seconds)
}

pub fn cmd_verify(a: VerifyArgs) -> Result<(), Failure> {
    if a.list {
        let mut out = String::new();
        for c in verify::select(&a.only)? {
            let tag = if c.supplementary { " (supplementary)" } else { "" };
            out.push_str(&format!("{}\t{}\t{}{tag}\n", c.id, c.group, c.title));
        }
        emit(None, &out)?;
        return Ok(());
    }
    let report = verify::run_suite(a.seed.seed, &a.only, |r| eprintln!("{}", summary_line(r)))?;
    let json = serde_json::to_string_pretty(&report).expect("reports always serialise") + "\n";
    emit(a.output.as_deref(), &json)?;
    let failed = report.criteria.iter().filter(|c| !c.pass).count();
    if failed > 0 {
        Err(Failure::Verification(failed))
    } else {
        Ok(())
    }
}
