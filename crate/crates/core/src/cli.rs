//! The `sc` command line.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors
//! (including malformed documents).

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::checks::{run_suite, Suite, SuiteResult};
use crate::complex::SimplicialComplex;
use crate::criteria::{
    ball_probe, boundedness_report, curvature_criterion, intrinsic_check, metric_weights, path_product_sums, ProbeMetric,
    DEFAULT_BALL_BUDGET,
};
use crate::error::{Error, Result};
use crate::generators::{clique_complex, cycle, fan, fan_truncation, normalizing_weights, random_complex, simplex_closure, FanFamily};
use crate::io::{curvature_csv, parse_document, parse_edges, read_input, to_canonical_string, ComplexDocument};
use crate::laplacian::{assemble, BoundaryCondition, LaplacianFlavor, LaplacianSpec, Truncation};
use crate::operators::random_function;
use crate::schrodinger::Flavor;
use crate::simplex::Simplex;
use crate::spectral::{betti_checked, hodge_decompose, normalizing_bound_check, operator_spectrum, verify_spectrum_identities, verify_truncation_identities};
use crate::weighted::WeightedComplex;
use crate::weights::WeightAssignment;

#[derive(Parser, Debug)]
#[command(name = "sc", version, about = "Laplacians, curvature and spectral checks on weighted simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a complex document for a built-in family.
    Generate(GenerateArgs),
    /// Assemble a Laplacian and print it as triplets or JSON.
    Laplacian(OperatorArgs),
    /// Eigenvalues of a Laplacian as JSON.
    Spectrum(OperatorArgs),
    /// Per-simplex Schrödinger data and Forman curvature as CSV.
    Curvature(InputArgs),
    /// Hodge decomposition of random functions at one level.
    Decompose(DecomposeArgs),
    /// Boundedness, curvature and metric diagnostics as JSON.
    Criteria(CriteriaArgs),
    /// Run invariant suites.
    Check(CheckArgs),
    /// Spectral, Hodge and normalizing-weight verifications.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Complex document; `-` reads standard input.
    #[arg(long, short, default_value = "-")]
    input: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Fan,
    Clique,
    Random,
    Simplex,
    Cycle,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WeightChoice {
    Combinatorial,
    Normalizing,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    family: Family,
    /// Fan size, vertex count (random) or cycle length.
    #[arg(long)]
    n: Option<usize>,
    /// Edge list for `clique`.
    #[arg(long)]
    edges: Option<String>,
    #[arg(long, default_value_t = 2)]
    max_dim: usize,
    /// Edge probability for `random`.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Dimension for `simplex`.
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long, value_enum, default_value = "exclude")]
    empty: EmptyArg,
    #[arg(long, value_enum, default_value = "combinatorial")]
    weights: WeightChoice,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EmptyArg {
    Include,
    Exclude,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq)]
enum Format {
    Triplet,
    Json,
}

#[derive(Args, Debug)]
struct OperatorArgs {
    #[command(flatten)]
    input: InputArgs,
    /// up, down, hodge, gb, sigma or sigma_prime.
    #[arg(long, default_value = "hodge")]
    flavor: LaplacianFlavor,
    #[arg(long, allow_negative_numbers = true)]
    dim: Option<isize>,
    /// intrinsic, dirichlet or neumann.
    #[arg(long)]
    bc: Option<BoundaryCondition>,
    /// Truncate to a ball of this radius around `--root`.
    #[arg(long)]
    radius: Option<usize>,
    #[arg(long)]
    root: Option<usize>,
    #[arg(long, value_enum, default_value = "triplet")]
    format: Format,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, allow_negative_numbers = true)]
    dim: isize,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct CriteriaArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    boundedness: bool,
    #[arg(long)]
    curvature: bool,
    /// Intrinsic metric weights and check for up, down or hodge.
    #[arg(long)]
    metric: Option<Flavor>,
    #[arg(long)]
    ball_radius: Option<f64>,
    #[arg(long, value_enum, default_value = "degree")]
    ball_metric: BallMetric,
    #[arg(long, default_value_t = DEFAULT_BALL_BUDGET)]
    budget: usize,
    #[arg(long)]
    root: Option<usize>,
    /// Path for the product-sum diagnostic, one simplex key per flag.
    #[arg(long)]
    path: Vec<Simplex>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha: f64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BallMetric {
    Hop,
    Degree,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    all: bool,
    #[arg(long)]
    dd: bool,
    #[arg(long)]
    stokes: bool,
    #[arg(long)]
    schrodinger: bool,
    #[arg(long)]
    factorization: bool,
    #[arg(long)]
    gauss_bonnet: bool,
    #[arg(long)]
    spectral: bool,
    #[arg(long)]
    betti: bool,
    #[arg(long)]
    intrinsic: bool,
    #[arg(long)]
    norm_bound: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print the results as JSON instead of one line per suite.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    all: bool,
    #[arg(long)]
    spectral: bool,
    #[arg(long)]
    hodge: bool,
    #[arg(long)]
    normalizing: bool,
    #[arg(long)]
    radius: Option<usize>,
    #[arg(long)]
    root: Option<usize>,
    /// Recorded in the report; truncations always check both conventions.
    #[arg(long)]
    bc: Option<BoundaryCondition>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

/// Output of one command.
struct Outcome {
    stdout: String,
    ok: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, ok: true }
    }
}

/// Runs `sc` with `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => {
            print!("{}", out.stdout);
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BettiMismatch { .. } => 1,
                _ => 2,
            }
        }
    }
}

fn dispatch(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Generate(a) => generate(a).map(Outcome::ok),
        Command::Laplacian(a) => laplacian_cmd(a, false).map(Outcome::ok),
        Command::Spectrum(a) => laplacian_cmd(a, true).map(Outcome::ok),
        Command::Curvature(a) => Ok(Outcome::ok(curvature_csv(&load(&a)?.complex))),
        Command::Decompose(a) => decompose(a),
        Command::Criteria(a) => criteria(a).map(Outcome::ok),
        Command::Check(a) => check(a),
        Command::Verify(a) => verify(a),
    }
}

fn load(a: &InputArgs) -> Result<ComplexDocument> {
    parse_document(&read_input(&a.input)?)
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Unsupported(msg.into())
}

fn generate(a: GenerateArgs) -> Result<String> {
    let include = matches!(a.empty, EmptyArg::Include);
    let need_n = || a.n.ok_or_else(|| usage("--n is required for this family"));
    let doc = match a.family {
        Family::Fan => {
            let n = need_n()?;
            ComplexDocument { complex: fan(n)?.complex, family: Some(json!({"name": "fan", "n": n})) }
        }
        _ => {
            let c: SimplicialComplex = match a.family {
                Family::Clique => {
                    let path = a.edges.as_deref().ok_or_else(|| usage("--edges is required for clique"))?;
                    let edges = parse_edges(&read_input(path)?)?;
                    let n = edges.iter().map(|&(x, y)| x.max(y) + 1).max().unwrap_or(0);
                    clique_complex(n, &edges, a.max_dim, include)?
                }
                Family::Random => random_complex(need_n()?, a.p, a.max_dim, a.seed, include)?,
                Family::Simplex => simplex_closure(a.dim.ok_or_else(|| usage("--dim is required for simplex"))?, include)?,
                Family::Cycle => cycle(need_n()?, include)?,
                Family::Fan => unreachable!(),
            };
            let wc = match a.weights {
                WeightChoice::Combinatorial => WeightedComplex::combinatorial(c),
                WeightChoice::Normalizing => {
                    let w = normalizing_weights(&c, None)?;
                    WeightedComplex::combinatorial(c).with_weights(w)?
                }
            };
            ComplexDocument::new(wc)
        }
    };
    Ok(to_canonical_string(&doc))
}

fn truncation(doc: &ComplexDocument, radius: Option<usize>, root: Option<usize>) -> Result<Truncation> {
    match radius {
        None => Ok(Truncation::whole(&doc.complex)),
        Some(r) if doc.fan_size().is_some() => fan_truncation(r),
        Some(r) => {
            let root = root.or_else(|| doc.complex.complex().vertices().first().copied()).ok_or(Error::EmptyComplex)?;
            Truncation::ball(&doc.complex, root, r)
        }
    }
}

fn laplacian_cmd(a: OperatorArgs, spectrum: bool) -> Result<String> {
    let doc = load(&a.input)?;
    let t = truncation(&doc, a.radius, a.root)?;
    let bc = a.bc.unwrap_or(if t.is_whole() { BoundaryCondition::Intrinsic } else { BoundaryCondition::Neumann });
    let op = assemble(&t, &LaplacianSpec::new(a.flavor, bc, a.dim))?;
    if !spectrum {
        return Ok(match a.format {
            Format::Triplet => op.to_triplet_text(),
            Format::Json => format!("{}\n", op.to_json()),
        });
    }
    let sp = operator_spectrum(&op, t.ambient(), a.flavor.to_string())?;
    let out = json!({
        "flavor": a.flavor.to_string(),
        "k": a.dim,
        "bc": bc.to_string(),
        "radius": a.radius,
        "eigenvalues": sp.eigenvalues,
        "zero_dim": sp.zero_dim(),
        "zero_threshold": sp.zero_threshold,
    });
    Ok(format!("{}\n", serde_json::to_string_pretty(&out)?))
}

fn decompose(a: DecomposeArgs) -> Result<Outcome> {
    let wc = load(&a.input)?.complex;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let (mut residual, mut cosine) = (0.0_f64, 0.0_f64);
    let mut first = None;
    for _ in 0..a.samples {
        let omega = random_function(&wc, &mut rng).level(a.dim);
        let s = hodge_decompose(&wc, &omega, a.dim)?;
        residual = residual.max(s.residual);
        cosine = cosine.max(s.max_cosine);
        if first.is_none() {
            let w = wc.weights();
            first = Some(json!({
                "norm": omega.norm_sq(w).sqrt(),
                "harmonic": s.harmonic.norm_sq(w).sqrt(),
                "exact": s.exact.norm_sq(w).sqrt(),
                "coexact": s.coexact.norm_sq(w).sqrt(),
            }));
        }
    }
    let betti = betti_checked(&wc, a.dim)?;
    let ok = residual <= 1e-9 && cosine <= 1e-9;
    let out = json!({
        "k": a.dim,
        "samples": a.samples,
        "seed": a.seed,
        "betti": betti,
        "max_residual": residual,
        "max_cosine": cosine,
        "first_sample": first,
        "passed": ok,
    });
    Ok(Outcome { stdout: format!("{}\n", serde_json::to_string_pretty(&out)?), ok })
}

fn criteria(a: CriteriaArgs) -> Result<String> {
    let doc = load(&a.input)?;
    let wc = &doc.complex;
    let default = !a.boundedness && !a.curvature && a.metric.is_none() && a.ball_radius.is_none() && a.path.is_empty();
    let mut out = serde_json::Map::new();
    if let Some(n) = doc.fan_size() {
        out.insert("family".into(), json!({"name": "fan", "n": n}));
    }
    if a.boundedness || default {
        out.insert("boundedness".into(), serde_json::to_value(boundedness_report(wc)?)?);
    }
    if a.curvature || default {
        out.insert("curvature".into(), serde_json::to_value(curvature_criterion(wc))?);
    }
    if let Some(f) = a.metric {
        let mw = metric_weights(wc, f);
        let weights: Vec<Value> = mw.edge_weights.iter().map(|(&(x, y), &w)| json!([x, y, finite_or_null(w)])).collect();
        out.insert("metric".into(), json!({"flavor": f, "edge_weights": weights, "intrinsic": intrinsic_check(wc, f)}));
    }
    if let Some(r) = a.ball_radius {
        let metric = match a.ball_metric {
            BallMetric::Hop => ProbeMetric::Hop,
            BallMetric::Degree => ProbeMetric::Degree,
        };
        let root = a.root.or_else(|| wc.complex().vertices().first().copied()).unwrap_or(0);
        // A fan document is probed in the infinite family, not the stored piece.
        let probe = if doc.fan_size().is_some() {
            ball_probe(&FanFamily, metric, root, r, a.budget)
        } else {
            ball_probe(wc, metric, root, r, a.budget)
        };
        out.insert("ball".into(), serde_json::to_value(probe)?);
    }
    if !a.path.is_empty() {
        let f = a.metric.unwrap_or(Flavor::Up);
        out.insert("path".into(), serde_json::to_value(path_product_sums(wc, f, &a.path, a.alpha)?)?);
    }
    Ok(format!("{}\n", serde_json::to_string_pretty(&Value::Object(out))?))
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn summary(results: &[SuiteResult], json_out: bool) -> Result<Outcome> {
    let ok = results.iter().all(|r| r.passed);
    let stdout = if json_out {
        format!("{}\n", serde_json::to_string_pretty(&json!({"passed": ok, "results": results}))?)
    } else {
        let mut s = String::new();
        for r in results {
            let tag = if r.passed { "PASS" } else { "FAIL" };
            let name = serde_json::to_value(r.suite)?;
            let _ = write!(s, "{tag} {} value={:e} tol={:e}", name.as_str().unwrap_or("?"), r.value, r.tolerance);
            if let Some(n) = &r.note {
                let _ = write!(s, " ({n})");
            }
            s.push('\n');
        }
        s
    };
    Ok(Outcome { stdout, ok })
}

fn check(a: CheckArgs) -> Result<Outcome> {
    let wc = load(&a.input)?.complex;
    let picked = [
        (a.dd, Suite::DdZero),
        (a.stokes, Suite::Stokes),
        (a.schrodinger, Suite::Schrodinger),
        (a.factorization, Suite::Factorization),
        (a.gauss_bonnet, Suite::GaussBonnet),
        (a.spectral, Suite::Spectral),
        (a.betti, Suite::Betti),
        (a.intrinsic, Suite::Intrinsic),
        (a.norm_bound, Suite::NormBound),
    ];
    let none = picked.iter().all(|(on, _)| !on);
    let suites: Vec<Suite> = picked.iter().filter(|(on, _)| *on || a.all || none).map(|&(_, s)| s).collect();
    let results = suites.into_iter().map(|s| run_suite(&wc, s, a.seed)).collect::<Result<Vec<_>>>()?;
    summary(&results, a.json)
}

fn verify(a: VerifyArgs) -> Result<Outcome> {
    let doc = load(&a.input)?;
    let wc = &doc.complex;
    let none = !a.spectral && !a.hodge && !a.normalizing;
    let mut report = serde_json::Map::new();
    let mut ok = true;
    let mut lines = String::new();
    if a.spectral || a.all || none {
        let t = truncation(&doc, a.radius, a.root)?;
        let r = if t.is_whole() {
            let ks: Vec<isize> = wc.complex().dims().collect();
            verify_spectrum_identities(wc, &ks)?
        } else {
            let ks: Vec<isize> = t.dims();
            verify_truncation_identities(&t, &ks)?
        };
        ok &= r.passed;
        let convention = if t.is_whole() {
            "intrinsic".to_string()
        } else {
            let asked = a.bc.map(|b| format!("; requested {b}")).unwrap_or_default();
            format!("truncation radius {}: dirichlet/neumann pairs and sigma = up_neumann + down_dirichlet{asked}", a.radius.unwrap_or(0))
        };
        let _ = writeln!(lines, "{} spectral max_gap={:e} [{convention}]", if r.passed { "PASS" } else { "FAIL" }, r.max_gap);
        for c in &r.checks {
            let _ = writeln!(
                lines,
                "  k={} identity_i={} identity_ii={} kernel={} ({})",
                c.k, c.up_vs_next_down.matched, c.hodge_vs_union.matched, c.kernel_implication, c.pairing
            );
        }
        report.insert("spectral".into(), json!({"convention": convention, "report": r}));
    }
    if a.hodge || a.all || none {
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        let (mut residual, mut cosine) = (0.0_f64, 0.0_f64);
        let mut bettis = Vec::new();
        for k in wc.complex().dims() {
            for _ in 0..20 {
                let s = hodge_decompose(wc, &random_function(wc, &mut rng).level(k), k)?;
                residual = residual.max(s.residual);
                cosine = cosine.max(s.max_cosine);
            }
            bettis.push(betti_checked(wc, k)?);
        }
        let pass = residual <= 1e-9 && cosine <= 1e-9;
        ok &= pass;
        let _ = writeln!(lines, "{} hodge residual={residual:e} cosine={cosine:e} betti={bettis:?}", if pass { "PASS" } else { "FAIL" });
        report.insert("hodge".into(), json!({"passed": pass, "max_residual": residual, "max_cosine": cosine, "betti": bettis}));
    }
    if a.normalizing || a.all {
        let w: WeightAssignment = normalizing_weights(wc.complex(), None)?;
        let r = normalizing_bound_check(&wc.with_weights(w)?)?;
        ok &= r.passed;
        let _ = writeln!(lines, "{} normalizing", if r.passed { "PASS" } else { "FAIL" });
        report.insert("normalizing".into(), serde_json::to_value(r)?);
    }
    let stdout = if a.json {
        report.insert("passed".into(), json!(ok));
        format!("{}\n", serde_json::to_string_pretty(&Value::Object(report))?)
    } else {
        lines
    };
    Ok(Outcome { stdout, ok })
}

