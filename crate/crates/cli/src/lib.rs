//! Command-line front end: parse, present, enumerate, build, verify and
//! classify, plus a batch runner over a manifest of diagrams.
//!
//! Exit codes: 0 success, 1 computation limit, 2 input error, 3 a check
//! failed (axioms, oracle disagreement, or batch expectations).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nquandle::catalog::{parse_params, Catalog, CatalogError};
use nquandle::coset_enum::{enumerate, DEFAULT_MAX_COSETS};
use nquandle::diagram::parse_diagram;
use nquandle::presentation::{
    conj_n_group, fundamental_group, n_quandle_presentation, quotient_group_n, wirtinger_quandle,
};
use nquandle::quandle_build::{
    build_n_quandle_with, quandles_isomorphic, saturate_oracle, verify_axioms, A3Coverage, AxiomViolation,
    BuildError, NQuandleBuild, OracleError, DEFAULT_ORACLE_CAP,
};
use nquandle::{Diagram, EnumerateError, EnumerationLimit, NLabeling, Strategy};
use serde::Serialize;
use thiserror::Error;

mod batch;

pub use batch::{run_batch, BatchRow, BatchSummary, Expect, ManifestEntry};

pub const ENV_MAX_COSETS: &str = "QUANDLE_MAX_COSETS";

#[derive(Debug, Parser)]
#[command(name = "nquandle", version, about = "Fundamental N-quandles of links and spatial graphs")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    /// Report wall-clock time per phase.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the quandle and group presentations of a diagram.
    Present(PresentArgs),
    /// Coset enumeration of π₁ (or π₁^N with --N) over a subgroup.
    Enumerate(EnumerateArgs),
    /// Build the N-quandle and report its component sizes.
    Quandle(QuandleArgs),
    /// Build the N-quandle and check axioms, size identity and the oracle.
    Verify(VerifyArgs),
    /// Look up a family in the classification catalog.
    Classify(ClassifyArgs),
    /// Run a JSON manifest of [{path, N, expect?}] jobs.
    Batch(BatchArgs),
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    /// Coset cap per enumeration [default: $QUANDLE_MAX_COSETS or 1000000].
    #[arg(long)]
    pub max_cosets: Option<usize>,
    #[arg(long, value_enum, default_value_t = StrategyArg::Hlt)]
    pub strategy: StrategyArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Hlt,
    Felsch,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Hlt => Strategy::Hlt,
            StrategyArg::Felsch => Strategy::Felsch,
        }
    }
}

#[derive(Debug, Args)]
pub struct PresentArgs {
    pub file: PathBuf,
    /// N-labeling, comma separated in strand order.
    #[arg(long = "N")]
    pub n: Option<String>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    pub file: PathBuf,
    #[arg(long = "N")]
    pub n: Option<String>,
    /// Subgroup generator as a word in arc names, e.g. "a b^-1". Repeatable.
    #[arg(long)]
    pub subgroup: Vec<String>,
    #[command(flatten)]
    pub limit: LimitArgs,
}

#[derive(Debug, Args)]
pub struct QuandleArgs {
    pub file: PathBuf,
    #[arg(long = "N")]
    pub n: String,
    /// Print the ▷ and ▷⁻¹ tables as CSV instead of the summary.
    #[arg(long)]
    pub table: bool,
    /// Check the axioms and the size identity.
    #[arg(long)]
    pub verify: bool,
    /// Cross-check against the saturation oracle when small enough.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    pub oracle_cap: usize,
    #[command(flatten)]
    pub limit: LimitArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    #[arg(long = "N")]
    pub n: String,
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    pub oracle_cap: usize,
    #[command(flatten)]
    pub limit: LimitArgs,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, required_unless_present = "list")]
    pub family: Option<String>,
    /// Parameters as name=value pairs, e.g. "k=1,p1=-3/2".
    #[arg(long, default_value = "")]
    pub params: String,
    #[arg(long = "N", required_unless_present = "list")]
    pub n: Option<String>,
    #[arg(long)]
    pub expected_sizes: bool,
    /// List the catalog families.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Args)]
pub struct BatchArgs {
    pub manifest: PathBuf,
    /// Parallel jobs; 0 uses every core.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Also verify axioms for each successful build.
    #[arg(long)]
    pub verify: bool,
    #[arg(long)]
    pub max_cosets: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Failure {
    #[error("{0}")]
    Limit(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Check(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Limit(_) => 1,
            Failure::Input(_) => 2,
            Failure::Check(_) => 3,
        }
    }
}

/// What a command printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct Report {
    body: String,
    /// A check failed, but the report is still printed.
    failed: Option<String>,
}

impl Report {
    fn ok(body: String) -> Report {
        Report { body, failed: None }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Present(a) => present(cli, a),
        Command::Enumerate(a) => enumerate_cmd(cli, a),
        Command::Quandle(a) => quandle(cli, a),
        Command::Verify(a) => verify(cli, a),
        Command::Classify(a) => classify(cli, a),
        Command::Batch(a) => batch::batch_cmd(cli, a),
    };
    match result {
        Ok(r) => {
            let (stderr, code) = match r.failed {
                Some(msg) => (format!("error: {msg}\n"), 3),
                None => (String::new(), 0),
            };
            Outcome { stdout: r.body, stderr, code }
        }
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.code() },
    }
}

// ---------------------------------------------------------------------------
// shared plumbing

pub(crate) fn max_cosets(flag: Option<usize>) -> Result<EnumerationLimit, Failure> {
    let n = match flag {
        Some(n) => n,
        None => match std::env::var(ENV_MAX_COSETS) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Failure::Input(format!("{ENV_MAX_COSETS}: `{v}` is not a positive integer")))?,
            Err(_) => DEFAULT_MAX_COSETS,
        },
    };
    if n == 0 {
        return Err(Failure::Input("max cosets must be at least 1".into()));
    }
    Ok(EnumerationLimit::cosets(n))
}

pub(crate) fn load(path: &Path) -> Result<Diagram, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_diagram(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub(crate) fn labeling(path: &Path, d: &Diagram, text: &str) -> Result<NLabeling, Failure> {
    let n = NLabeling::parse(text).map_err(|e| Failure::Input(format!("--N: {e}")))?;
    d.check_labeling(&n).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(n)
}

fn enumerate_failure(path: &Path, e: EnumerateError) -> Failure {
    let msg = format!("{}: {e}", path.display());
    match e {
        e if e.is_limit() => Failure::Limit(msg),
        _ => Failure::Input(msg),
    }
}

pub(crate) fn build_failure(path: &Path, e: BuildError) -> Failure {
    let msg = format!("{}: {e}", path.display());
    match &e {
        e if e.is_limit() => Failure::Limit(msg),
        BuildError::Group(_) | BuildError::Strand { .. } | BuildError::Diagram(_) | BuildError::Presentation(_) => {
            Failure::Input(msg)
        }
        BuildError::SizeIdentity { .. } | BuildError::GraphPeripheral { .. } | BuildError::Quandle(_) => {
            Failure::Check(msg)
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Debug, Default, Clone, PartialEq, Serialize)]
pub struct Timings {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parse_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enumerate_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub build_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify_ms: Option<f64>,
}

pub(crate) fn ms(since: Instant) -> Option<f64> {
    Some((since.elapsed().as_secs_f64() * 1e6).round() / 1e3)
}

fn csv_unsupported(what: &str) -> Failure {
    Failure::Input(format!("--format csv is not available for {what}"))
}

// ---------------------------------------------------------------------------
// present

#[derive(Serialize)]
struct PresentReport {
    quandle: nquandle::presentation::QuandlePresentationJson,
    group: nquandle::presentation::GroupPresentationJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_quandle: Option<nquandle::presentation::QuandlePresentationJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    conj_n: Option<nquandle::presentation::GroupPresentationJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    group_n: Option<nquandle::presentation::GroupPresentationJson>,
}

fn present(cli: &Cli, a: &PresentArgs) -> Result<Report, Failure> {
    let d = load(&a.file)?;
    let input = |e: nquandle::presentation::PresentationError| Failure::Input(format!("{}: {e}", a.file.display()));
    let q = wirtinger_quandle(&d).map_err(input)?;
    let g = fundamental_group(&d).map_err(input)?;
    let n = a.n.as_deref().map(|t| labeling(&a.file, &d, t)).transpose()?;
    let labeled = match &n {
        Some(n) => {
            let qn = n_quandle_presentation(&q, n).map_err(input)?;
            let cn = conj_n_group(&qn).map_err(input)?;
            let gn = quotient_group_n(&d, n).map_err(input)?;
            Some((qn, cn, gn))
        }
        None => None,
    };
    let body = match cli.format {
        Format::Json => to_json(&PresentReport {
            quandle: q.to_json(),
            group: g.to_json(),
            n_quandle: labeled.as_ref().map(|l| l.0.to_json()),
            conj_n: labeled.as_ref().map(|l| l.1.to_json()),
            group_n: labeled.as_ref().map(|l| l.2.to_json()),
        }),
        Format::Text => {
            let mut s = format!("{q}\n{g}\n");
            if let Some((qn, cn, gn)) = &labeled {
                let _ = writeln!(s, "N-{qn}\nConj_N {cn}\nπ₁^N {gn}");
            }
            s
        }
        Format::Csv => return Err(csv_unsupported("present")),
    };
    Ok(Report::ok(body))
}

// ---------------------------------------------------------------------------
// enumerate

#[derive(Serialize)]
struct EnumerateReport {
    n_cosets: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings: Option<Timings>,
}

fn enumerate_cmd(cli: &Cli, a: &EnumerateArgs) -> Result<Report, Failure> {
    let limit = max_cosets(a.limit.max_cosets)?;
    let t0 = Instant::now();
    let d = load(&a.file)?;
    let parse_ms = ms(t0);
    let input = |e: nquandle::presentation::PresentationError| Failure::Input(format!("{}: {e}", a.file.display()));
    let g = match &a.n {
        Some(t) => quotient_group_n(&d, &labeling(&a.file, &d, t)?).map_err(input)?,
        None => fundamental_group(&d).map_err(input)?,
    };
    let subgroup = a
        .subgroup
        .iter()
        .map(|w| g.generators.parse_word(w).map_err(|e| Failure::Input(format!("--subgroup `{w}`: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let t1 = Instant::now();
    let table = enumerate(&g, &subgroup, limit, a.limit.strategy.into()).map_err(|e| enumerate_failure(&a.file, e))?;
    let enumerate_ms = ms(t1);
    let timings = cli.timings.then(|| Timings { parse_ms, enumerate_ms, ..Default::default() });
    let body = match cli.format {
        Format::Json => to_json(&EnumerateReport { n_cosets: table.n_cosets(), timings }),
        Format::Text => {
            let mut s = format!("cosets: {}\n", table.n_cosets());
            if let Some(t) = timings {
                let _ = writeln!(s, "timings: {}", serde_json::to_string(&t).unwrap());
            }
            s
        }
        Format::Csv => table.to_csv(&g.generators),
    };
    Ok(Report::ok(body))
}

// ---------------------------------------------------------------------------
// quandle / verify

#[derive(Debug, Clone, Serialize)]
pub struct AxiomSummary {
    pub ok: bool,
    pub a3: A3Coverage,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<AxiomViolation>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SizeIdentity {
    /// `[π₁^N : P_i]` per strand.
    pub indices: Vec<usize>,
    pub peripheral_orders: Vec<usize>,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleSummary {
    Isomorphic { elements: usize },
    NotIsomorphic { elements: usize },
    Skipped { reason: String },
    Failed { reason: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct QuandleReport {
    pub total: usize,
    pub components: Vec<usize>,
    pub group_order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axioms: Option<AxiomSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size_identity: Option<SizeIdentity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl QuandleReport {
    fn problems(&self) -> Option<String> {
        let mut out = Vec::new();
        if self.axioms.as_ref().is_some_and(|a| !a.ok) {
            out.push("quandle axioms fail");
        }
        if self.size_identity.as_ref().is_some_and(|s| !s.ok) {
            out.push("size identity fails");
        }
        if matches!(self.oracle, Some(OracleSummary::NotIsomorphic { .. } | OracleSummary::Failed { .. })) {
            out.push("saturation oracle disagrees");
        }
        (!out.is_empty()).then(|| out.join("; "))
    }

    fn text(&self) -> String {
        let mut s = format!(
            "group order: {}\ncomponents: {}\ntotal: {}\n",
            self.group_order,
            self.components.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
            self.total
        );
        if let Some(a) = &self.axioms {
            let _ = writeln!(s, "axioms: {}", if a.ok { "ok" } else { "FAILED" });
            for v in &a.violations {
                let _ = writeln!(s, "  {} at {:?}", v.axiom, v.witness);
            }
        }
        if let Some(si) = &self.size_identity {
            let _ = writeln!(s, "size identity: {}", if si.ok { "ok" } else { "FAILED" });
        }
        if let Some(o) = &self.oracle {
            let _ = writeln!(s, "oracle: {}", serde_json::to_string(o).unwrap());
        }
        if let Some(t) = &self.timings {
            let _ = writeln!(s, "timings: {}", serde_json::to_string(t).unwrap());
        }
        s
    }

    fn csv(&self) -> String {
        let mut s = String::from("component,size\n");
        for (i, c) in self.components.iter().enumerate() {
            let _ = writeln!(s, "{},{c}", i + 1);
        }
        s
    }
}

pub(crate) fn size_identity(d: &Diagram, n: &NLabeling, b: &NQuandleBuild) -> SizeIdentity {
    let graph = d.kind == nquandle::diagram::DiagramKind::Graph;
    let ok = (0..b.indices.len()).all(|i| {
        b.indices[i] * b.peripheral_orders[i] == b.group_order
            && b.indices[i] == b.quandle.component_sizes()[i]
            && (!graph || b.peripheral_orders[i] == n.get(i) as usize)
    });
    SizeIdentity { indices: b.indices.clone(), peripheral_orders: b.peripheral_orders.clone(), ok }
}

pub(crate) fn axiom_summary(b: &NQuandleBuild, n: &NLabeling) -> AxiomSummary {
    let r = verify_axioms(&b.quandle, n);
    AxiomSummary { ok: r.is_empty(), a3: r.a3, violations: r.violations }
}

fn oracle_summary(path: &Path, d: &Diagram, n: &NLabeling, b: &NQuandleBuild, cap: usize) -> Result<OracleSummary, Failure> {
    if b.quandle.len() > cap {
        return Ok(OracleSummary::Skipped { reason: format!("quandle has more than {cap} elements") });
    }
    let input = |e: nquandle::presentation::PresentationError| Failure::Input(format!("{}: {e}", path.display()));
    let qn = n_quandle_presentation(&wirtinger_quandle(d).map_err(input)?, n).map_err(input)?;
    match saturate_oracle(&qn, cap) {
        Ok(sat) => {
            let elements = sat.len();
            Ok(match quandles_isomorphic(&b.quandle, &sat) {
                Ok(true) => OracleSummary::Isomorphic { elements },
                Ok(false) => OracleSummary::NotIsomorphic { elements },
                Err(e) => OracleSummary::Skipped { reason: e.to_string() },
            })
        }
        Err(OracleError::CapExceeded { cap }) => {
            Ok(OracleSummary::Skipped { reason: format!("saturation exceeded {cap} elements") })
        }
        Err(e) => Ok(OracleSummary::Failed { reason: e.to_string() }),
    }
}

struct Built {
    d: Diagram,
    n: NLabeling,
    build: NQuandleBuild,
    timings: Timings,
}

fn build(path: &Path, n: &str, limit: &LimitArgs) -> Result<Built, Failure> {
    let cap = max_cosets(limit.max_cosets)?;
    let t0 = Instant::now();
    let d = load(path)?;
    let n = labeling(path, &d, n)?;
    let parse_ms = ms(t0);
    let t1 = Instant::now();
    let build = build_n_quandle_with(&d, &n, cap, limit.strategy.into()).map_err(|e| build_failure(path, e))?;
    let timings = Timings { parse_ms, build_ms: ms(t1), ..Default::default() };
    Ok(Built { d, n, build, timings })
}

fn report(cli: &Cli, path: &Path, built: Built, check: bool, oracle: bool, oracle_cap: usize) -> Result<QuandleReport, Failure> {
    let Built { d, n, build: b, mut timings } = built;
    let t = Instant::now();
    let axioms = check.then(|| axiom_summary(&b, &n));
    let size_identity = check.then(|| size_identity(&d, &n, &b));
    let oracle = if oracle { Some(oracle_summary(path, &d, &n, &b, oracle_cap)?) } else { None };
    if check || oracle.is_some() {
        timings.verify_ms = ms(t);
    }
    Ok(QuandleReport {
        total: b.quandle.len(),
        components: b.quandle.component_sizes(),
        group_order: b.group_order,
        axioms,
        size_identity,
        oracle,
        timings: cli.timings.then_some(timings),
    })
}

fn render(cli: &Cli, r: &QuandleReport) -> Report {
    let body = match cli.format {
        Format::Json => to_json(r),
        Format::Text => r.text(),
        Format::Csv => r.csv(),
    };
    Report { body, failed: r.problems() }
}

fn quandle(cli: &Cli, a: &QuandleArgs) -> Result<Report, Failure> {
    let built = build(&a.file, &a.n, &a.limit)?;
    if a.table {
        let q = &built.build.quandle;
        return Ok(Report::ok(format!("{}\n{}", q.op_csv(), q.op_inv_csv())));
    }
    let r = report(cli, &a.file, built, a.verify, a.oracle, a.oracle_cap)?;
    Ok(render(cli, &r))
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Result<Report, Failure> {
    let built = build(&a.file, &a.n, &a.limit)?;
    let r = report(cli, &a.file, built, true, true, a.oracle_cap)?;
    Ok(render(cli, &r))
}

// ---------------------------------------------------------------------------
// classify

#[derive(Serialize)]
struct ClassifyReport {
    #[serde(flatten)]
    verdict: nquandle::catalog::FinitenessVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected_sizes: Option<Option<nquandle::catalog::SizeRecord>>,
}

#[derive(Serialize)]
struct FamilyListing<'a> {
    id: &'a str,
    name: &'a str,
    source: &'a str,
    kind: nquandle::diagram::DiagramKind,
    params: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    diagram: Option<&'a str>,
}

fn classify(cli: &Cli, a: &ClassifyArgs) -> Result<Report, Failure> {
    let cat = Catalog::builtin();
    let input = |e: CatalogError| Failure::Input(e.to_string());
    if a.list {
        let rows: Vec<FamilyListing> = cat
            .families()
            .iter()
            .map(|f| FamilyListing {
                id: &f.id,
                name: &f.name,
                source: &f.source,
                kind: f.kind,
                params: &f.params,
                diagram: f.diagram.as_deref(),
            })
            .collect();
        let body = match cli.format {
            Format::Json => to_json(&rows),
            Format::Text | Format::Csv => {
                let mut s = String::from("id,source,kind,params\n");
                for r in rows {
                    let kind = serde_json::to_value(r.kind).unwrap();
                    let _ = writeln!(s, "\"{}\",{},{},{}", r.id, r.source, kind.as_str().unwrap_or(""), r.params.join(" "));
                }
                s
            }
        };
        return Ok(Report::ok(body));
    }
    let family = a.family.as_deref().expect("clap enforces --family");
    let n_text = a.n.as_deref().expect("clap enforces --N");
    let n = NLabeling::parse(n_text).map_err(|e| Failure::Input(format!("--N: {e}")))?;
    let params = parse_params(&a.params).map_err(input)?;
    let verdict = cat.lookup(family, &params, &n).map_err(input)?;
    let expected_sizes = if a.expected_sizes { Some(cat.expected_sizes(family, &params, &n).map_err(input)?) } else { None };
    let body = match cli.format {
        Format::Json => to_json(&ClassifyReport { verdict, expected_sizes }),
        Format::Text => {
            let mut s = format!("{}: {}\n{}\n", verdict.family, verdict.verdict, verdict.justification);
            for note in &verdict.notes {
                let _ = writeln!(s, "note: {note}");
            }
            match expected_sizes {
                Some(Some(r)) => {
                    let _ = writeln!(s, "expected: group order {}, components {:?}, total {}", r.group_order, r.components, r.total);
                }
                Some(None) => s.push_str("expected: not known\n"),
                None => {}
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("family,verdict,row,group_order,total\n");
            let (g, t) = match &expected_sizes {
                Some(Some(r)) => (r.group_order.to_string(), r.total.to_string()),
                _ => (String::new(), String::new()),
            };
            let row = verdict.row.map(|r| (r + 1).to_string()).unwrap_or_default();
            let _ = writeln!(s, "\"{}\",{},{row},{g},{t}", verdict.family, verdict.verdict);
            s
        }
    };
    Ok(Report::ok(body))
}
