//! Command-line front end. `run` parses arguments, executes one subcommand
//! and renders the reports; the binary only prints and sets the exit code.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{classify, ModuleLabel, RealFormId, SymbolDomain};
use crate::error::{Error, Result};
use crate::multi_index::{Basis, MultiIndex};
use crate::realization::{change_of_basis_defect, ModuleParams, RealizationKind, TruncatedModule};
use crate::report::{Report, Status};
use crate::scalar::{parse_scalar, Field, GaussRational, Scalar};
use crate::unitarity::{
    adjoint_defect, boundedness_profile, global_vs_infinitesimal, perturbation_bound, sphere_gram, sphere_inner,
    SphereMethod, SubgroupId, UnitarityVerdict,
};
use crate::verify::{branch_levi, central_character, finite_type_check, gk_growth_degree, verify_relations, weight_decomposition};

pub const SCHEMA: &str = "wmod.report/1";

const CLAIM_DEGREE: &str = "if V is a weight g-module of degree 1, then all the non zero weight spaces are 1-dimensional";
const CLAIM_BRANCH: &str = "we have the following branching";
const CLAIM_UNITARY: &str = "The continuous representation H_a of G is unitary if and only if a in R_{<0}";
const CLAIM_BOUNDED: &str = "the above supremum is finite, thus proving that f(E_0) is bounded";
const CLAIM_GLOBAL: &str = "the representation H_a of g integrates into a continuous representation of G on the Hilbert space H";
const CLAIM_SPHERE: &str = "the family (P(k)) is an orthogonal basis, with ||P(k)||^2 = prod k_j! / prod_{j=1}^{|k|} (j+n-1)";
const CLAIM_DEFORM: &str = "x(k) = mu(|k|) e(k) intertwines the deformed action with the BBL action";
const CLAIM_GK: &str = "The Gelfand-Kirillov dimension of V equals the rank of g";
const CLAIM_FINITE: &str = "H_a is indeed a representation and is finite dimensional";
const CLAIM_FINITE_TYPE: &str = "a (g, l_j)-module of finite type restricts to l_j as a sum of finite dimensional modules";

#[derive(Debug, Parser)]
#[command(name = "wmod", version, about = "Degree-1 weight modules of sl(n+1): checks and classification queries")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SetArg {
    Chevalley,
    RealForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodArg {
    Closed,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainArg {
    Generic,
    Negative,
    Positive,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Output {
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// Rank; the algebra is sl(n+1).
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Parameter a, e.g. -1.5, -1/2 or -1+0.5i.
    #[arg(long, default_value = "-1/2", allow_hyphen_values = true)]
    pub a: String,
    /// Window |k| <= cutoff.
    #[arg(long, default_value_t = 12)]
    pub cutoff: usize,
    /// Realization: base, bbl, deformed or finite.
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Mode::Float)]
    pub mode: Mode,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BranchArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    /// Delete this node (0-based) to get the Levi subalgebra.
    #[arg(long, default_value_t = 0)]
    pub levi: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct JmArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    /// Highest tower level; levels 0..=level are reported.
    #[arg(long, default_value_t = 2)]
    pub level: usize,
    /// Comma-separated cutoffs K.
    #[arg(long, default_value = "50,100,200")]
    pub ladder: String,
    #[arg(long, value_enum, default_value_t = SetArg::Chevalley)]
    pub set: SetArg,
    /// Largest accepted relative spread across the ladder.
    #[arg(long, default_value_t = 0.1)]
    pub spread: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BoundArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value = "-1/2", allow_hyphen_values = true)]
    pub a: String,
    /// Profile length K.
    #[arg(long = "k", default_value_t = 10_000)]
    pub k_max: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// One subgroup (H0, X1, Y0, ...); all of them when omitted.
    #[arg(long)]
    pub sub: Option<String>,
    #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
    pub t: f64,
    #[arg(long, default_value_t = 10)]
    pub cutoff: usize,
    #[arg(long, default_value_t = 4)]
    pub buffer: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub threshold: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SphereArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Multi-index, e.g. 1,0.
    #[arg(long)]
    pub k: String,
    /// Second multi-index; defaults to k.
    #[arg(long)]
    pub l: Option<String>,
    #[arg(long, value_enum, default_value_t = MethodArg::MonteCarlo)]
    pub method: MethodArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ClassifyArgs {
    /// su, sl, spr or sppq.
    #[arg(long)]
    pub form: String,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    /// Matrix size for sl, rank for spr.
    #[arg(long)]
    pub n: Option<usize>,
    /// N(...), M(...) or "hw: c1*w1 + ...", optionally followed by ^*.
    #[arg(long, allow_hyphen_values = true)]
    pub label: String,
    /// Where the symbol `a` ranges.
    #[arg(long, value_enum, default_value_t = DomainArg::Generic)]
    pub domain: DomainArg,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: Output,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "command")]
pub enum Command {
    /// Chevalley-Serre relations and weight-space degree.
    Verify(Common),
    /// Weight decomposition of the window.
    Weights(Common),
    /// Branching under a maximal Levi subalgebra.
    Branch(BranchArgs),
    /// Adjointness relations of the unitarity criterion.
    Unitarity(Common),
    /// Norm tower and perturbation bounds.
    Jm(JmArgs),
    /// Boundedness-supremum profile.
    Bound(BoundArgs),
    /// Group action against the exponentiated infinitesimal action.
    GlobalCheck(GlobalArgs),
    /// Sphere integrals of monomials.
    Sphere(SphereArgs),
    /// Integrability and unitarity of a labeled module.
    Classify(ClassifyArgs),
    /// The full acceptance matrix.
    Suite(SuiteArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Verify(_) => "verify",
            Command::Weights(_) => "weights",
            Command::Branch(_) => "branch",
            Command::Unitarity(_) => "unitarity",
            Command::Jm(_) => "jm",
            Command::Bound(_) => "bound",
            Command::GlobalCheck(_) => "global-check",
            Command::Sphere(_) => "sphere",
            Command::Classify(_) => "classify",
            Command::Suite(_) => "suite",
        }
    }

    fn output(&self) -> &Output {
        match self {
            Command::Verify(c) | Command::Weights(c) | Command::Unitarity(c) => &c.out,
            Command::Branch(b) => &b.common.out,
            Command::Jm(j) => &j.common.out,
            Command::Bound(b) => &b.out,
            Command::GlobalCheck(g) => &g.out,
            Command::Sphere(s) => &s.out,
            Command::Classify(c) => &c.out,
            Command::Suite(s) => &s.out,
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub body: String,
    pub output: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { code: 0, body: e.to_string(), output: None };
            }
            return Outcome { code: 2, body: error_body("usage", &e.to_string()), output: None };
        }
    };
    execute(&cli.command)
}

fn error_body(kind: &str, message: &str) -> String {
    let v = json!({ "schema": SCHEMA, "error": { "kind": kind, "message": message.trim() } });
    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
}

/// Runs a parsed command.
pub fn execute(command: &Command) -> Outcome {
    let out = command.output().clone();
    match dispatch(command) {
        Ok(body) => {
            let passed = body.reports.iter().all(Report::passed);
            let text = render(command, &body, passed, out.format);
            Outcome { code: if passed { 0 } else { 1 }, body: text, output: out.output }
        }
        Err(e) => Outcome { code: 2, body: error_body(e.kind(), &e.to_string()), output: None },
    }
}

/// Reports plus an optional CSV table specific to the subcommand.
struct Body {
    reports: Vec<Report>,
    csv: Option<String>,
}

impl Body {
    fn reports(reports: Vec<Report>) -> Self {
        Self { reports, csv: None }
    }
}

fn render(command: &Command, body: &Body, passed: bool, format: Format) -> String {
    match format {
        Format::Json => {
            let v = json!({
                "schema": SCHEMA,
                "command": command.name(),
                "config": command,
                "status": Status::from_bool(passed),
                "reports": body.reports,
            });
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        Format::Csv => match &body.csv {
            Some(csv) => csv.clone(),
            None => {
                let mut s = String::from("check,status,max_defect\n");
                for r in &body.reports {
                    let d = r.max_defect.map(|d| format!("{d:e}")).unwrap_or_default();
                    let _ = writeln!(s, "{},{},{}", r.check, if r.passed() { "pass" } else { "fail" }, d);
                }
                s
            }
        },
        Format::Text => {
            let mut s = String::new();
            for r in &body.reports {
                let tag = if r.passed() { "PASS" } else { "FAIL" };
                let d = r.max_defect.map(|d| format!("  max_defect={d:.3e}")).unwrap_or_default();
                let _ = writeln!(s, "{tag} {}{d}", r.check);
                let _ = writeln!(s, "     claim: {}", r.claim);
                for e in &r.evidence {
                    let _ = writeln!(s, "     {e}");
                }
            }
            let _ = writeln!(s, "{}", if passed { "overall: pass" } else { "overall: fail" });
            s
        }
    }
}

fn dispatch(command: &Command) -> Result<Body> {
    match command {
        Command::Verify(c) => on_module(c, RealizationKind::BblX, |m| Ok(Body::reports(m.verify(c.tol)?))),
        Command::Weights(c) => on_module(c, RealizationKind::BblX, |m| Ok(Body::reports(vec![m.weights()]))),
        Command::Branch(b) => on_module(&b.common, RealizationKind::BblX, |m| Ok(Body::reports(vec![m.branch(b.levi)?]))),
        Command::Unitarity(c) => on_module(c, RealizationKind::DeformedE, |m| Ok(Body::reports(vec![m.unitarity(c.tol)]))),
        Command::Jm(j) => jm(j),
        Command::Bound(b) => bound(b),
        Command::GlobalCheck(g) => global(g),
        Command::Sphere(s) => sphere(s),
        Command::Classify(c) => Ok(Body::reports(vec![classify_cmd(c)?])),
        Command::Suite(s) => Ok(Body::reports(suite(s.seed, s.samples))),
    }
}

/// A built module of either scalar mode.
enum AnyModule {
    Exact(TruncatedModule<GaussRational>),
    Float(TruncatedModule<Complex64>),
}

macro_rules! each_mode {
    ($self:expr, $m:ident => $body:expr) => {
        match $self {
            AnyModule::Exact($m) => $body,
            AnyModule::Float($m) => $body,
        }
    };
}

fn module_params(m: &crate::realization::ModuleSummary) -> Value {
    json!({ "kind": m.kind, "n": m.n, "a": m.a, "cutoff": m.cutoff, "dimension": m.dimension })
}

impl AnyModule {
    fn build(c: &Common, default: RealizationKind) -> Result<Self> {
        let kind: RealizationKind = match &c.kind {
            Some(k) => k.parse()?,
            None => default,
        };
        let a = parse_scalar(&c.a)?;
        let cutoff = if kind == RealizationKind::Finite {
            a.as_exact()
                .and_then(|g| g.as_integer())
                .and_then(|v| usize::try_from(v).ok())
                .ok_or_else(|| Error::InvalidParameter(format!("the finite realization needs a = m in Z>=0, got {}", c.a)))?
        } else {
            c.cutoff
        };
        fn make<S: Field>(kind: RealizationKind, n: usize, a: &Scalar, cutoff: usize) -> Result<TruncatedModule<S>> {
            TruncatedModule::build(kind, ModuleParams::new(n, S::from_scalar(a)?, cutoff))
        }
        Ok(match c.mode {
            Mode::Exact => AnyModule::Exact(make(kind, c.n, &a, cutoff)?),
            Mode::Float => AnyModule::Float(make(kind, c.n, &a.to_float(), cutoff)?),
        })
    }

    fn params(&self) -> Value {
        each_mode!(self, m => module_params(&m.summary()))
    }

    fn verify(&self, tol: f64) -> Result<Vec<Report>> {
        let mut rel = each_mode!(self, m => verify_relations(m, tol))?;
        rel.params = self.params();
        Ok(vec![rel, self.weights()])
    }

    fn weights(&self) -> Report {
        let table = each_mode!(self, m => weight_decomposition(m));
        let mut r = Report::new("degree", CLAIM_DEGREE, self.params(), Status::from_bool(table.degree == 1));
        r.evidence.push(format!("{} weight spaces, largest dimension {}", table.len(), table.degree));
        r.details = json!({ "degree": table.degree, "weight_spaces": table.len(), "total": table.total() });
        r
    }

    fn branch(&self, j: usize) -> Result<Report> {
        let summands = each_mode!(self, m => branch_levi(m, j))?;
        let mut details = Vec::new();
        let mut chars = Vec::new();
        for s in &summands {
            let c = each_mode!(self, m => central_character(m, j, &s.seed).map(|v| v.to_scalar()))?;
            chars.push(c.to_c64());
            details.push(json!({
                "seed": s.seed, "hw_weight": s.hw_weight, "dimension": s.dimension,
                "status": s.status, "central_character": c,
            }));
        }
        let complete: Vec<usize> =
            (0..summands.len()).filter(|&i| summands[i].status == crate::verify::SummandStatus::Complete).collect();
        let distinct = complete.iter().all(|&i| complete.iter().all(|&k| i == k || (chars[i] - chars[k]).norm() > 1e-9));
        let mut r = Report::new("branch", CLAIM_BRANCH, self.params(), Status::from_bool(distinct));
        r.evidence.push(format!("{} summands, {} complete in the window", summands.len(), complete.len()));
        if !distinct {
            r.evidence.push("complete summands share a central character".into());
        }
        r.details = json!({ "levi": j, "summands": details });
        Ok(r)
    }

    fn unitarity(&self, tol: f64) -> Report {
        let rep = each_mode!(self, m => adjoint_defect(m, tol));
        let unitary = rep.verdict == UnitarityVerdict::Unitary;
        let mut r = Report::new("unitarity", CLAIM_UNITARY, self.params(), Status::from_bool(unitary));
        r.max_defect = Some(rep.max_defect);
        r.evidence.push(format!("verdict: {}", if unitary { "unitary" } else { "not unitary" }));
        for p in &rep.pairs {
            r.evidence.push(format!("{}: {:.3e}", p.relation, p.defect));
        }
        r.evidence.push(format!("max |Im H eigenvalue|: {:.3e}", rep.cartan_imaginary));
        r.details = serde_json::to_value(&rep).expect("serializable");
        r
    }
}

fn on_module(c: &Common, default: RealizationKind, f: impl FnOnce(&AnyModule) -> Result<Body>) -> Result<Body> {
    f(&AnyModule::build(c, default)?)
}

fn parse_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad integer list '{text}'"))))
        .collect()
}

fn parse_index(text: &str, n: usize) -> Result<MultiIndex> {
    let v: Vec<u32> = text
        .trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad multi-index '{text}'"))))
        .collect::<Result<_>>()?;
    if v.len() != n {
        return Err(Error::RankMismatch { expected: n, got: v.len() });
    }
    Ok(MultiIndex::new(v))
}

fn jm(args: &JmArgs) -> Result<Body> {
    let c = &args.common;
    let ladder = parse_list(&args.ladder)?;
    if args.set == SetArg::RealForm {
        return Err(Error::InvalidParameter(
            "perturbation bounds use the {H, E, F} tower; the real-form set is available for norms only".into(),
        ));
    }
    let module = AnyModule::build(&Common { kind: Some("deformed".into()), ..c.clone() }, RealizationKind::DeformedE)?;
    let mut reports = Vec::new();
    let mut csv = String::from("level,k_max,e0,f0\n");
    for l in 0..=args.level {
        let lad = each_mode!(&module, m => perturbation_bound(m, l, &ladder))?;
        let finite = lad.rows.iter().all(|r| r.e0.is_finite() && r.f0.is_finite());
        let ok = finite && lad.spread_e0 <= args.spread && lad.spread_f0 <= args.spread;
        let mut r = Report::new(&format!("perturbation_level_{l}"), CLAIM_BOUNDED, module.params(), Status::from_bool(ok));
        r.max_defect = Some(lad.spread_e0.max(lad.spread_f0));
        for row in &lad.rows {
            r.evidence.push(format!("K={}: |f(E0)|_{l} ~ {:.6}, |f(F0)|_{l} ~ {:.6}", row.k_max, row.e0, row.f0));
            let _ = writeln!(csv, "{l},{},{:e},{:e}", row.k_max, row.e0, row.f0);
        }
        r.details = serde_json::to_value(&lad).expect("serializable");
        reports.push(r);
    }
    Ok(Body { reports, csv: Some(csv) })
}

fn bound_report(n: usize, a: Complex64, a_text: &str, k_max: usize) -> Result<(Report, String)> {
    let p = boundedness_profile(n, a, k_max)?;
    let stable = p.last_half_max >= 0.95 * p.sup;
    let tail_ok = if p.predicted_limit > 0.0 {
        (p.tail_estimate / p.predicted_limit - 1.0).abs() <= 0.05
    } else {
        p.tail_estimate.abs() <= 0.05 * p.sup.max(1e-12)
    };
    let params = json!({ "n": n, "a": a_text, "K": k_max });
    let mut r = Report::new("boundedness_profile", CLAIM_BOUNDED, params, Status::from_bool(stable && tail_ok));
    r.evidence.push(format!("sup {:.6}, max over [K/2, K] {:.6}", p.sup, p.last_half_max));
    r.evidence.push(format!("tail estimate {:.6}, (Re a + n)^2/4 = {:.6}", p.tail_estimate, p.predicted_limit));
    r.details = serde_json::to_value(&p).expect("serializable");
    Ok((r, p.to_csv()))
}

fn bound(args: &BoundArgs) -> Result<Body> {
    let a = parse_scalar(&args.a)?.to_c64();
    let (r, csv) = bound_report(args.n, a, &args.a, args.k_max)?;
    Ok(Body { reports: vec![r], csv: Some(csv) })
}

fn global_report(n: usize, sub: SubgroupId, t: f64, cutoff: usize, buffer: usize, threshold: f64) -> Result<Report> {
    let c = global_vs_infinitesimal(n, sub, t, cutoff, buffer)?;
    let params = json!({ "n": n, "subgroup": sub, "t": t, "cutoff": cutoff, "buffer": buffer });
    let mut r = Report::new(&format!("global_{sub}"), CLAIM_GLOBAL, params, Status::from_bool(c.discrepancy <= threshold));
    r.max_defect = Some(c.discrepancy);
    if let Some((k, out)) = &c.at {
        r.evidence.push(format!("largest discrepancy in the z^{out} coefficient of rho(g)P{k}"));
    }
    Ok(r)
}

fn global(args: &GlobalArgs) -> Result<Body> {
    let subs = match &args.sub {
        Some(s) => vec![s.parse::<SubgroupId>()?],
        None => SubgroupId::all(args.n),
    };
    let reports = subs
        .into_iter()
        .map(|s| global_report(args.n, s, args.t, args.cutoff, args.buffer, args.threshold))
        .collect::<Result<_>>()?;
    Ok(Body::reports(reports))
}

fn sphere(args: &SphereArgs) -> Result<Body> {
    let k = parse_index(&args.k, args.n)?;
    let l = match &args.l {
        Some(l) => parse_index(l, args.n)?,
        None => k.clone(),
    };
    let closed = sphere_inner(args.n, &k, &l, SphereMethod::ClosedForm)?;
    let params = json!({ "n": args.n, "k": k, "l": l });
    let mut r = match args.method {
        MethodArg::Closed => {
            let mut r = Report::new("sphere_closed_form", CLAIM_SPHERE, params, Status::Pass);
            r.details = serde_json::to_value(&closed).expect("serializable");
            r
        }
        MethodArg::MonteCarlo => {
            let mc = sphere_inner(args.n, &k, &l, SphereMethod::MonteCarlo { seed: args.seed, samples: args.samples })?;
            let err = (mc.value() - closed.value()).norm();
            let mut r = Report::new("sphere_monte_carlo", CLAIM_SPHERE, params, Status::from_bool(err <= 3.0 * mc.stderr));
            r.max_defect = Some(err);
            r.evidence.push(format!("closed form {:.6}, deviation {:.2} standard errors", closed.estimate_re, err / mc.stderr));
            r.details = serde_json::to_value(&mc).expect("serializable");
            r
        }
    };
    r.evidence.insert(0, format!("closed form <P{k}, P{l}> = {}", closed.estimate_re));
    Ok(Body::reports(vec![r]))
}

fn classify_cmd(args: &ClassifyArgs) -> Result<Report> {
    let form = RealFormId::from_parts(&args.form, args.p, args.q, args.n)?;
    let domain = match args.domain {
        DomainArg::Generic => SymbolDomain::Generic,
        DomainArg::Negative => SymbolDomain::NegativeReal,
        DomainArg::Positive => SymbolDomain::PositiveReal,
    };
    let label: ModuleLabel = args.label.parse::<ModuleLabel>()?.with_domain(domain);
    let res = classify(form, &label)?;
    let params = json!({ "form": form.to_string(), "label": label.to_string(), "domain": args.domain });
    let mut r = Report::new("classify", &res.justification, params, Status::Pass);
    r.evidence.push(format!(
        "integrable: {}, unitary: {}",
        res.integrable,
        res.unitary.map_or("n/a".to_string(), |u| u.to_string())
    ));
    r.evidence.push(format!("matched: {}", res.matched_family));
    r.details = serde_json::to_value(&res).expect("serializable");
    Ok(r)
}

type Task = Box<dyn Fn() -> Result<Vec<Report>> + Send + Sync>;

fn failed(name: &str, e: &Error) -> Report {
    let mut r = Report::new(name, "check raised an error", Value::Null, Status::Fail);
    r.evidence.push(format!("{}: {e}", e.kind()));
    r
}

/// The `a` grid of the suite, with the realizations each value applies to.
pub const SUITE_A_GRID: [&str; 4] = ["-0.5", "-2", "1.7", "-1+0.5i"];
/// The unitarity grid: the first three are in `R<0`.
pub const SUITE_UNITARY_GRID: [&str; 7] = ["-3", "-1.5", "-0.25", "0.5", "1.7", "-1+0.5i", "i"];

fn common(n: usize, a: &str, cutoff: usize, kind: &str, mode: Mode) -> Common {
    Common {
        n,
        a: a.into(),
        cutoff,
        kind: Some(kind.into()),
        tol: 1e-9,
        mode,
        out: Output { output: None, format: Format::Json },
    }
}

/// Twelve classification queries with their expected `(integrable, unitary)`.
pub fn classification_battery() -> Vec<(RealFormId, &'static str, bool, Option<bool>)> {
    use RealFormId::*;
    vec![
        (SuPq { p: 1, q: 2 }, "N(-1/2,0)", true, Some(true)),
        (SuPq { p: 1, q: 2 }, "N(1/2,0)", true, Some(false)),
        (SuPq { p: 1, q: 2 }, "N(-1,3)", true, Some(true)),
        (SuPq { p: 3, q: 1 }, "N(-1,-1,5/2)", true, Some(true)),
        (SuPq { p: 3, q: 1 }, "N(-1,-1,-5/2)", true, Some(false)),
        (SuPq { p: 3, q: 1 }, "N(-1,-3,0)", true, Some(true)),
        (SuPq { p: 2, q: 2 }, "N(-1,-1,2)", true, Some(true)),
        (SuPq { p: 2, q: 2 }, "N(-1,-4,0)^*", true, Some(true)),
        (SlR { m: 3 }, "N(-1/2,0)", false, None),
        (SpPq { p: 1, q: 1 }, "M(-1,-1)", false, None),
        (SpR { n: 2 }, "M(-1,-1)", true, Some(true)),
        (SpR { n: 2 }, "M(-1,-2)", true, Some(true)),
    ]
}

/// Runs the acceptance matrix; independent checks run concurrently and
/// reports come back in a fixed order.
pub fn suite(seed: u64, samples: usize) -> Vec<Report> {
    let mut tasks: Vec<(String, Task)> = Vec::new();
    for kind in ["bbl", "deformed", "base"] {
        for n in 1..=3usize {
            let grid: Vec<String> =
                if kind == "base" { vec![format!("-{n}")] } else { SUITE_A_GRID.iter().map(|s| s.to_string()).collect() };
            for a in grid {
                let exact = kind != "deformed" && !a.contains('i');
                tasks.push((
                    format!("verify {kind} n={n} a={a}"),
                    Box::new(move || {
                        let mut out = AnyModule::build(&common(n, &a, 10, kind, Mode::Float), RealizationKind::BblX)?.verify(1e-9)?;
                        if exact {
                            out.extend(AnyModule::build(&common(n, &a, 10, kind, Mode::Exact), RealizationKind::BblX)?.verify(0.0)?);
                        }
                        Ok(out)
                    }),
                ));
            }
        }
    }
    for n in 1..=3usize {
        for a in SUITE_A_GRID {
            tasks.push((
                format!("deformation n={n} a={a}"),
                Box::new(move || {
                    let av = parse_scalar(a)?.to_c64();
                    let d = change_of_basis_defect(&ModuleParams::new(n, av, 10))?;
                    let mut r = Report::new("change_of_basis", CLAIM_DEFORM, json!({ "n": n, "a": a, "cutoff": 10 }), Status::from_bool(d <= 1e-10));
                    r.max_defect = Some(d);
                    Ok(vec![r])
                }),
            ));
        }
    }
    for n in 1..=2usize {
        for a in SUITE_UNITARY_GRID {
            tasks.push((
                format!("unitarity n={n} a={a}"),
                Box::new(move || {
                    let m = AnyModule::build(&common(n, a, 8, "deformed", Mode::Float), RealizationKind::DeformedE)?;
                    let r = m.unitarity(1e-10);
                    let expect = parse_scalar(a)?.to_c64();
                    let expect_unitary = expect.im == 0.0 && expect.re < 0.0;
                    let defect = r.max_defect.unwrap_or(0.0);
                    let ok = if expect_unitary { defect <= 1e-10 } else { defect >= 1e-3 };
                    let mut r = r;
                    r.check = "unitarity_dichotomy".into();
                    r.status = Status::from_bool(ok);
                    Ok(vec![r])
                }),
            ));
        }
    }
    tasks.push((
        "boundedness".into(),
        Box::new(|| Ok(vec![bound_report(2, Complex64::new(-0.5, 0.0), "-0.5", 10_000)?.0])),
    ));
    tasks.push((
        "perturbation".into(),
        Box::new(|| {
            let args = JmArgs { common: common(2, "-0.5", 4, "deformed", Mode::Float), level: 2, ladder: "50,100,200".into(), set: SetArg::Chevalley, spread: 0.1 };
            Ok(jm(&args)?.reports)
        }),
    ));
    for sub in SubgroupId::all(2) {
        tasks.push((format!("global {sub}"), Box::new(move || Ok(vec![global_report(2, sub, 0.1, 10, 4, 1e-6)?]))));
    }
    for n in 1..=3usize {
        tasks.push((
            format!("sphere n={n}"),
            Box::new(move || {
                let indices = Basis::new(n, 3).indices().to_vec();
                let gram = sphere_gram(n, &indices, seed, samples)?;
                let mut worst: f64 = 0.0;
                for (i, k) in indices.iter().enumerate() {
                    for (j, e) in gram[i].iter().enumerate() {
                        let exact = if i == j { crate::unitarity::closed_form_norm_sq(k) } else { 0.0 };
                        let z = (e.value() - Complex64::new(exact, 0.0)).norm() / e.stderr.max(f64::MIN_POSITIVE);
                        worst = worst.max(z);
                    }
                }
                let params = json!({ "n": n, "max_degree": 3, "samples": samples, "seed": seed });
                let mut r = Report::new("sphere_integrals", CLAIM_SPHERE, params, Status::from_bool(worst <= 3.0));
                r.evidence.push(format!("largest deviation {worst:.2} standard errors over {} pairs", indices.len().pow(2)));
                Ok(vec![r])
            }),
        ));
    }
    for n in 1..=2usize {
        for m in 0..=3usize {
            tasks.push((
                format!("finite n={n} m={m}"),
                Box::new(move || {
                    let module = TruncatedModule::<GaussRational>::build(RealizationKind::Finite, ModuleParams::finite(n, m))?;
                    let label: ModuleLabel = {
                        let mut e = vec!["0".to_string(); n];
                        e[0] = m.to_string();
                        format!("N({})", e.join(",")).parse()?
                    };
                    let fd = crate::classify::finite_dimensional_p(&label)?;
                    let want = crate::multi_index::binomial((m + n) as u64, n as u64) as usize;
                    let mass = crate::generator::chevalley_generators(n).iter().try_fold(0.0f64, |acc, g| {
                        (0..module.dimension()).try_fold(acc, |acc, p| {
                            let v = module.apply(*g, &crate::sparse::SparseVector::basis(module.basis().get(p).clone()))?;
                            Ok::<f64, Error>(acc.max(v.boundary_mass()))
                        })
                    })?;
                    let ok = module.dimension() == want && mass == 0.0 && fd;
                    let mut r = Report::new("finite_case", CLAIM_FINITE, json!({ "n": n, "m": m }), Status::from_bool(ok));
                    r.evidence.push(format!("dimension {} (binomial {want}), boundary mass {mass}, finite-dimensional label {fd}", module.dimension()));
                    Ok(vec![r])
                }),
            ));
        }
    }
    for n in 1..=3usize {
        tasks.push((
            format!("growth n={n}"),
            Box::new(move || {
                let m = TruncatedModule::build(RealizationKind::BblX, ModuleParams::new(n, Complex64::new(-0.5, 0.0), 40))?;
                let fit = gk_growth_degree(&m)?;
                let fin = TruncatedModule::<GaussRational>::build(RealizationKind::Finite, ModuleParams::finite(n, 2))?;
                let zero = gk_growth_degree(&fin)?.degree;
                let mut r = Report::new("gk_growth", CLAIM_GK, json!({ "n": n, "cutoff": 40 }), Status::from_bool(fit.degree == n && zero == 0));
                r.evidence.push(format!("fitted slope {:.4}, finite case degree {zero}", fit.slope.unwrap_or(0.0)));
                Ok(vec![r])
            }),
        ));
    }
    tasks.push((
        "classification".into(),
        Box::new(|| {
            let mut out = Vec::new();
            for (form, label, integrable, unitary) in classification_battery() {
                let res = classify(form, &label.parse()?)?;
                let ok = res.integrable == integrable && res.unitary == unitary;
                let mut r = Report::new("classification", &res.justification, json!({ "form": form.to_string(), "label": label }), Status::from_bool(ok));
                r.evidence.push(format!("integrable {}, unitary {:?}", res.integrable, res.unitary));
                out.push(r);
            }
            Ok(out)
        }),
    ));
    for n in 2..=3usize {
        tasks.push((
            format!("branch n={n}"),
            Box::new(move || Ok(vec![AnyModule::build(&common(n, "-0.5", 10, "bbl", Mode::Float), RealizationKind::BblX)?.branch(0)?])),
        ));
    }
    tasks.push((
        "finite type".into(),
        Box::new(|| {
            let m = TruncatedModule::build(RealizationKind::BblX, ModuleParams::new(3, Complex64::new(-0.5, 0.0), 8))?;
            let window = finite_type_check(&m, 0)?;
            let label = crate::verify::finite_type_check_label(&"N(-1,-1,1/2)".parse()?, 0)?;
            use crate::verify::FiniteTypeVerdict::*;
            let ok = window.verdict == FiniteType && label.verdict == NotFiniteType;
            let mut r = Report::new("finite_type", CLAIM_FINITE_TYPE, json!({ "n": 3, "levi": 0 }), Status::from_bool(ok));
            r.evidence.extend(label.evidence);
            Ok(vec![r])
        }),
    ));
    tasks
        .par_iter()
        .map(|(name, task)| task().unwrap_or_else(|e| vec![failed(name, &e)]))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("wmod").chain(args.iter().copied()))
    }

    #[test]
    fn verify_example() {
        let o = run_args(&["verify", "--n", "2", "--a", "-1.5", "--kind", "bbl", "--cutoff", "10", "--format", "json"]);
        assert_eq!(o.code, 0, "{}", o.body);
        let v: Value = serde_json::from_str(&o.body).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert!(v["reports"][0]["max_defect"].as_f64().unwrap() <= 1e-9);
    }

    #[test]
    fn classify_example() {
        let o = run_args(&["classify", "--form", "su", "--p", "1", "--q", "2", "--label", "N(-1/2,0)", "--format", "json"]);
        assert_eq!(o.code, 0, "{}", o.body);
        let v: Value = serde_json::from_str(&o.body).unwrap();
        assert_eq!(v["reports"][0]["details"]["integrable"], true);
        assert_eq!(v["reports"][0]["details"]["unitary"], true);
    }

    #[test]
    fn unitarity_example_fails() {
        let o = run_args(&["unitarity", "--n", "2", "--a", "0.5", "--cutoff", "8"]);
        assert_eq!(o.code, 1, "{}", o.body);
        assert!(o.body.contains("not unitary"));
    }

    #[test]
    fn guard_and_parse_errors_exit_2() {
        let o = run_args(&["verify", "--a", "3", "--kind", "bbl"]);
        assert_eq!(o.code, 2);
        let v: Value = serde_json::from_str(&o.body).unwrap();
        assert_eq!(v["error"]["kind"], "guarded_parameter");
        assert_eq!(run_args(&["verify", "--a", "zz"]).code, 2);
        assert_eq!(run_args(&["nonsense"]).code, 2);
    }

    #[test]
    fn reports_are_byte_stable() {
        let args = ["sphere", "--n", "2", "--k", "1,0", "--samples", "5000", "--seed", "3", "--format", "json"];
        assert_eq!(run_args(&args).body, run_args(&args).body);
    }

    #[test]
    fn bound_csv() {
        let o = run_args(&["bound", "--n", "2", "--a", "-0.5", "--k", "2000", "--format", "csv"]);
        assert_eq!(o.code, 0);
        assert!(o.body.starts_with("L,value,running_sup\n"));
    }
}
