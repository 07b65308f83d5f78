//! Command-line front end: read graph files, run the analyses, print text
//! or JSON reports.
//!
//! Exit codes: 0 on success, 1 when the input is well formed but the
//! requested quantity does not exist (an invalid or non-main graph, an
//! oracle mismatch), 2 on usage, I/O and parse errors.

mod report;
mod serial;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Serialize;

use logdeg::degeneration::{
    enumerate_main_graphs_with, expected_dim_closed, expected_dim_log, formula_terms, is_main, multiplicity_report,
    EnumerationBounds,
};
use logdeg::format::{graph_to_json, parse_graph};
use logdeg::gluing::{binomial_relations, component_count, projection_degree, GluingOptions};
use logdeg::graph::{canonical_form, validate, DecoratedGraph, Mode};
use logdeg::Error;

pub use report::{analyze, AnalysisReport, ModuleReport, OracleCheck, TropicalReport, WitnessReport};
use serial::{opt_string, string};

#[derive(Debug, Parser)]
#[command(name = "logdeg", version, about = "Decorated dual graphs of log degenerations")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    /// Cross-check against brute-force oracles; fail on any disagreement.
    #[arg(long, global = true)]
    oracle: bool,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the decorated-graph conditions.
    Validate(InputArgs),
    /// Ranks, cokernels, tropical feasibility and multiplicities.
    Analyze(InputArgs),
    /// Whether a degeneration-mode graph is main.
    Main(InputArgs),
    /// Multiplicity and coefficient of a main graph.
    Coeff(InputArgs),
    /// List main graphs up to isomorphism within bounds.
    Enumerate(EnumerateArgs),
    /// Binomial equations of the gluing space.
    Glue(GlueArgs),
    /// Expected dimension of a moduli space.
    Dim(DimArgs),
    /// Coefficients of a list of main graphs.
    Formula(FormulaArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Graph file (JSON).
    #[arg(long)]
    input: PathBuf,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    /// Comma-separated divisor labels.
    #[arg(long, value_delimiter = ',', required = true)]
    labels: Vec<String>,
    #[arg(long, default_value_t = 3)]
    max_vertices: usize,
    #[arg(long, default_value_t = 3)]
    max_edges: usize,
    /// Bound on the absolute value of contact entries.
    #[arg(long, default_value_t = 3)]
    max_entry: i64,
    #[arg(long, default_value_t = 0)]
    max_genus: u32,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Debug, Args)]
struct GlueArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Emit the product relation for every adjacent pair, not only a spanning tree.
    #[arg(long)]
    all_pairs: bool,
    /// Emit lattice-ideal generators from a Hermite basis instead.
    #[arg(long)]
    lattice_ideal: bool,
}

#[derive(Debug, Args)]
struct DimArgs {
    /// Absolute stable maps.
    #[arg(long, conflicts_with = "log", required_unless_present = "log")]
    closed: bool,
    /// Maps with contact along the divisor; needs --ad.
    #[arg(long)]
    log: bool,
    /// c1(T_X) . A.
    #[arg(long, allow_negative_numbers = true)]
    c1: i64,
    /// Dimension of the target.
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    #[arg(long)]
    g: u64,
    /// Number of marked points.
    #[arg(long)]
    k: u64,
    /// A . D, required with --log.
    #[arg(long, allow_negative_numbers = true, required_if_eq("log", "true"))]
    ad: Option<i64>,
}

#[derive(Debug, Args)]
struct FormulaArgs {
    /// Graph files; each file's path is used as its tag.
    inputs: Vec<PathBuf>,
}

enum Failure {
    /// Exit 2.
    Input(String),
    /// Exit 1.
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Structural(_) => Failure::Input(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

/// Output of one subcommand: a JSON document and its text rendering. An
/// exit code of 1 can accompany a successful report (an invalid graph).
struct Output {
    json: String,
    text: String,
    code: i32,
}

impl Output {
    fn new<T: Serialize>(value: &T, text: String) -> Self {
        Self { json: serde_json::to_string_pretty(value).expect("reports serialize"), text, code: 0 }
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T, O, E>(args: I, out: &mut O, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    O: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let body = match cli.format {
                OutputFormat::Json => o.json + "\n",
                OutputFormat::Text => o.text,
            };
            let _ = out.write_all(body.as_bytes());
            o.code
        }
        Err(Failure::Input(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Domain(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}

fn read_graph(path: &Path) -> Result<DecoratedGraph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Validate(a) => validate_cmd(&read_graph(&a.input)?),
        Command::Analyze(a) => {
            let r = analyze(&read_graph(&a.input)?, cli.oracle, cli.timing)?;
            let code = if r.valid { 0 } else { 1 };
            Ok(Output { code, ..Output::new(&r, r.to_text()) })
        }
        Command::Main(a) => {
            let main = is_main(&read_graph(&a.input)?)?;
            Ok(Output::new(&serde_json::json!({ "is_main": main }), format!("is_main: {main}\n")))
        }
        Command::Coeff(a) => coeff_cmd(&read_graph(&a.input)?),
        Command::Enumerate(a) => enumerate_cmd(a, cli.oracle, cli.timing),
        Command::Glue(a) => glue_cmd(a),
        Command::Dim(a) => dim_cmd(a),
        Command::Formula(a) => formula_cmd(a),
    }
}

#[derive(Serialize)]
struct ValidationOutput {
    valid: bool,
    violations: Vec<ViolationOutput>,
    warnings: Vec<ViolationOutput>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_string")]
    genus: Option<u64>,
}

#[derive(Serialize)]
struct ViolationOutput {
    code: &'static str,
    message: String,
}

fn validate_cmd(g: &DecoratedGraph) -> Result<Output, Failure> {
    let v = validate(g);
    let convert = |list: &[logdeg::graph::Violation]| {
        list.iter().map(|x| ViolationOutput { code: x.code(), message: x.to_string() }).collect::<Vec<_>>()
    };
    let out = ValidationOutput {
        valid: v.is_valid(),
        violations: convert(&v.violations),
        warnings: convert(&v.warnings),
        genus: g.arithmetic_genus().ok(),
    };
    let mut text = format!("valid: {}\n", out.valid);
    for x in &out.violations {
        let _ = writeln!(text, "violation [{}]: {}", x.code, x.message);
    }
    for x in &out.warnings {
        let _ = writeln!(text, "warning [{}]: {}", x.code, x.message);
    }
    if let Some(g) = out.genus {
        let _ = writeln!(text, "genus: {g}");
    }
    let code = if out.valid { 0 } else { 1 };
    Ok(Output { code, ..Output::new(&out, text) })
}

#[derive(Serialize)]
struct CoeffOutput {
    #[serde(serialize_with = "string")]
    m: BigInt,
    #[serde(serialize_with = "string")]
    m_red: BigInt,
    #[serde(serialize_with = "string")]
    extra_factor: BigInt,
    lemma51_ok: bool,
    #[serde(serialize_with = "string")]
    aut_order: BigUint,
    #[serde(serialize_with = "string")]
    coefficient: BigRational,
}

fn coeff_cmd(g: &DecoratedGraph) -> Result<Output, Failure> {
    let r = multiplicity_report(g)?;
    let out = CoeffOutput {
        m: r.m,
        m_red: r.m_red,
        extra_factor: r.extra_factor,
        lemma51_ok: r.lemma51_ok,
        aut_order: r.aut_order,
        coefficient: r.coefficient,
    };
    let text = format!(
        "m: {}\nm_red: {}\nextra_factor: {}\nlemma51_ok: {}\naut_order: {}\ncoefficient: {}\n",
        out.m, out.m_red, out.extra_factor, out.lemma51_ok, out.aut_order, out.coefficient
    );
    Ok(Output::new(&out, text))
}

#[derive(Serialize)]
struct EnumerationOutput {
    #[serde(serialize_with = "string")]
    count: usize,
    graphs: Vec<EnumeratedGraph>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_string")]
    timing_ms: Option<u128>,
}

#[derive(Serialize)]
struct EnumeratedGraph {
    canonical_form: String,
    graph: serde_json::Value,
}

fn enumerate_cmd(a: &EnumerateArgs, oracle: bool, timing: bool) -> Result<Output, Failure> {
    let start = Instant::now();
    let bounds = EnumerationBounds::new(a.labels.clone(), a.max_vertices, a.max_edges, a.max_entry, a.max_genus);
    let graphs = enumerate_main_graphs_with(&bounds, a.workers)?;
    if oracle {
        for (i, g) in graphs.iter().enumerate() {
            if !is_main(g)? {
                return Err(Failure::Domain(format!("enumerated graph {i} is not main")));
            }
            if g.vertices().len() <= 6 {
                for h in &graphs[i + 1..] {
                    if logdeg::oracle::brute_force_isomorphic(g, h) {
                        return Err(Failure::Domain(format!("enumerated graph {i} has an isomorphic duplicate")));
                    }
                }
            }
        }
    }
    let out = EnumerationOutput {
        count: graphs.len(),
        graphs: graphs
            .iter()
            .map(|g| EnumeratedGraph { canonical_form: canonical_form(g).to_string(), graph: graph_to_json(g) })
            .collect(),
        timing_ms: timing.then(|| start.elapsed().as_millis()),
    };
    let mut text = format!("{} main graphs\n", out.count);
    for g in &out.graphs {
        let _ = writeln!(text, "{}", g.graph);
    }
    if let Some(ms) = out.timing_ms {
        let _ = writeln!(text, "time (ms): {ms}");
    }
    Ok(Output::new(&out, text))
}

#[derive(Serialize)]
struct GlueOutput {
    relations: Vec<RelationOutput>,
    #[serde(serialize_with = "string")]
    component_count: BigInt,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_string")]
    projection_degree: Option<BigInt>,
}

#[derive(Serialize)]
struct RelationOutput {
    lhs: BTreeMap<String, String>,
    rhs: BTreeMap<String, String>,
}

fn glue_cmd(a: &GlueArgs) -> Result<Output, Failure> {
    let g = read_graph(&a.input.input)?;
    let options = GluingOptions { all_adjacent_pairs: a.all_pairs, lattice_ideal: a.lattice_ideal };
    let relations = binomial_relations(&g, options)?;
    let side = |m: &logdeg::gluing::Monomial| m.iter().map(|(v, e)| (v.name(&g), e.to_string())).collect();
    let degree = if g.mode() == Mode::Degeneration && is_main(&g)? { Some(projection_degree(&g)?) } else { None };
    let out = GlueOutput {
        relations: relations.iter().map(|b| RelationOutput { lhs: side(&b.lhs), rhs: side(&b.rhs) }).collect(),
        component_count: component_count(&g)?,
        projection_degree: degree,
    };
    let mut text = String::new();
    for b in &relations {
        let _ = writeln!(text, "{}", b.display(&g));
    }
    let _ = writeln!(text, "components: {}", out.component_count);
    if let Some(d) = &out.projection_degree {
        let _ = writeln!(text, "projection degree: {d}");
    }
    Ok(Output::new(&out, text))
}

#[derive(Serialize)]
struct DimOutput {
    kind: &'static str,
    #[serde(serialize_with = "string")]
    real_dimension: i128,
    #[serde(serialize_with = "string")]
    complex_dimension: i128,
}

fn dim_cmd(a: &DimArgs) -> Result<Output, Failure> {
    let (kind, real) = if a.closed {
        ("closed", expected_dim_closed(a.c1, a.n, a.g, a.k))
    } else {
        let ad = a.ad.ok_or_else(|| Failure::Input("--log needs --ad".into()))?;
        ("log", expected_dim_log(a.c1, a.n, a.g, a.k, ad))
    };
    let out = DimOutput { kind, real_dimension: real, complex_dimension: real / 2 };
    let text = format!("real dimension {} (complex {})\n", out.real_dimension, out.complex_dimension);
    Ok(Output::new(&out, text))
}

#[derive(Serialize)]
struct TermOutput {
    tag: String,
    canonical_form: String,
    #[serde(serialize_with = "string")]
    m: BigInt,
    #[serde(serialize_with = "string")]
    aut_order: BigUint,
    #[serde(serialize_with = "string")]
    coefficient: BigRational,
}

fn formula_cmd(a: &FormulaArgs) -> Result<Output, Failure> {
    let inputs = a
        .inputs
        .iter()
        .map(|p| Ok((read_graph(p)?, p.display().to_string())))
        .collect::<Result<Vec<_>, Failure>>()?;
    for (g, tag) in &inputs {
        is_main(g).map_err(|e| Failure::Domain(format!("{tag}: {e}")))?;
    }
    let terms: Vec<TermOutput> = formula_terms(&inputs)?
        .into_iter()
        .map(|t| TermOutput {
            tag: t.tag,
            canonical_form: t.graph.to_string(),
            m: t.m,
            aut_order: t.aut_order,
            coefficient: t.coefficient,
        })
        .collect();
    let mut text = String::new();
    for t in &terms {
        let _ = writeln!(text, "{}: m = {}, |Aut| = {}, coefficient = {}", t.tag, t.m, t.aut_order, t.coefficient);
    }
    Ok(Output::new(&serde_json::json!({ "terms": terms }), text))
}
