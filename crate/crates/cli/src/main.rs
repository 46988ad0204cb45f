use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use leeyang::graphs::bipartite_double;
use leeyang::graphs::family::{connected_graphs_up_to, graph_id, sampled_connected_graphs, MAX_CANONICAL_N};
use leeyang::graphs::io::{parse_graph, AnyGraph};
use leeyang::partition::{enumerate, observables, transfer, EnumCaps};
use leeyang::ratinterp::{interpolate, normalize, SampleSet, Side};
use leeyang::rational::{fmt_q, parse_q};
use leeyang::reductions::{direct_polynomial, recover, ExactOracle, Model, Params};
use leeyang::satgadgets::gadgets::{standard_templates, GadgetTemplate};
use leeyang::satgadgets::{
    compile, cycle_cover_weight, derive_gadget_weights, extract_sat_count, validate_certificate,
    verify_gadget_properties, Mode, MonotoneTwoCnf,
};
use leeyang::zeros::{
    certify_coprime_with_derivative, certify_imaginary_axis_and_simple, certify_strictly_inside_unit_disk,
    certify_unit_circle, find_roots, Certificate,
};
use leeyang::{Error, MultiGraph, UniPoly, Q};
use rayon::prelude::*;
use serde_json::{json, Value};

const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_FALSIFIED: u8 = 4;
const EXIT_INTERNAL: u8 = 1;

#[derive(Parser)]
#[command(
    name = "leeyang",
    version,
    about = "Exact partition functions, zero certificates and reductions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of Z(lambda), constant term first.
    Partition(PartitionArgs),
    /// Exact Gibbs averages at one activity.
    Observables(ObservablesArgs),
    /// Zero-location certificates over a graph corpus, as JSON lines.
    Certify(CertifyArgs),
    /// Recover a partition function from an exact average oracle.
    Recover(RecoverArgs),
    /// Compile a monotone 2-CNF into a weighted directed graph.
    #[command(name = "compile-2sat")]
    Compile2Sat(CompileArgs),
    /// Re-run the gadget weight derivation and check every closure.
    VerifyGadgets(VerifyArgs),
    /// Rational interpolation of samples read from JSON.
    Interp(InterpArgs),
}

fn rational(s: &str) -> Result<Q, String> {
    parse_q(s).map_err(|e| e.to_string())
}

#[derive(Clone, Copy, ValueEnum)]
enum PartitionModel {
    Ising,
    Matching,
    Twospin,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Transfer,
    Enumerate,
}

#[derive(Args)]
struct PartitionArgs {
    #[arg(long, value_enum)]
    model: PartitionModel,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_parser = rational)]
    beta: Option<Q>,
    #[arg(long, value_parser = rational)]
    alpha1: Option<Q>,
    #[arg(long, value_parser = rational)]
    alpha2: Option<Q>,
    #[arg(long, value_enum, default_value = "transfer")]
    method: Method,
    #[command(flatten)]
    caps: CapArgs,
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args)]
struct CapArgs {
    /// Vertex cap for spin enumeration.
    #[arg(long, default_value_t = EnumCaps::default().ising_max_n)]
    max_enum_vertices: usize,
    /// Edge cap for matching enumeration.
    #[arg(long, default_value_t = EnumCaps::default().matching_max_edges)]
    max_enum_edges: usize,
}

impl CapArgs {
    fn caps(&self) -> EnumCaps {
        EnumCaps {
            ising_max_n: self.max_enum_vertices,
            matching_max_edges: self.max_enum_edges,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AverageModel {
    Ising,
    Matching,
}

#[derive(Args)]
struct ObservablesArgs {
    #[arg(long, value_enum)]
    model: AverageModel,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_parser = rational)]
    beta: Option<Q>,
    #[arg(long, value_parser = rational)]
    lambda: Q,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Every connected graph with at most `--max-n` vertices.
    Connected,
    /// `--samples` seeded random connected graphs on exactly `--max-n` vertices.
    Sampled,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long, value_enum, default_value = "ising")]
    model: AverageModel,
    #[arg(long, value_enum, conflicts_with = "graph")]
    family: Option<Family>,
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, default_value_t = 6)]
    max_n: usize,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_parser = rational)]
    beta: Option<Q>,
    /// Working precision in bits for the numeric unit-circle check.
    #[arg(long, default_value_t = 256)]
    prec: u32,
    /// Unit-circle tolerance 2^-k.
    #[arg(long, default_value_t = 60)]
    tol_bits: i32,
    /// JSON-lines report (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Root approximations of every certified polynomial as CSV.
    #[arg(long)]
    emit_roots: Option<PathBuf>,
}

#[derive(Args)]
struct RecoverArgs {
    #[arg(long)]
    model: Model,
    /// Undirected graph, a directed graph (its bipartite double is used) or a
    /// `compile-2sat` output.
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_parser = rational, default_value = "1/2")]
    beta: Q,
    #[arg(long, value_parser = rational, default_value = "1")]
    lambda: Q,
    #[arg(long, value_parser = rational, default_value = "2")]
    alpha1: Q,
    #[arg(long, value_parser = rational, default_value = "2")]
    alpha2: Q,
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args)]
struct CompileArgs {
    #[arg(long)]
    formula: PathBuf,
    #[arg(long, value_enum, default_value = "keep")]
    mode: CompileMode,
    /// Full reduction output (graph, registry, pairings, chains, certificate).
    #[arg(long)]
    emit: Option<PathBuf>,
    /// The Hamiltonian alternating path alone.
    #[arg(long)]
    certificate: Option<PathBuf>,
    /// Also compute the cycle-cover weight and extract the count.
    #[arg(long)]
    count: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CompileMode {
    Keep,
    Chain,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args)]
struct InterpArgs {
    /// `{"degree": n, "points": [["x", "y"], ...]}`
    #[arg(long)]
    samples: PathBuf,
    /// Pin a coefficient, e.g. `q0=1` or `p2=3/4`.
    #[arg(long)]
    normalize: Option<String>,
}

/// A failure and the process exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_) | Error::Precondition(_) | Error::Io(_) | Error::Json(_) => EXIT_INPUT,
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::TemplateFalsified(_)
            | Error::CertificateFailure(_)
            | Error::RankDeficient { .. }
            | Error::Inconsistent(_)
            | Error::NormalizationImpossible => EXIT_FALSIFIED,
            Error::NonConvergence { .. } => EXIT_INTERNAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

type Outcome = Result<(), Failure>;

/// Write via a sibling temporary file and rename, so readers never see a
/// partial artifact.
fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

fn emit(path: Option<&Path>, contents: &str) -> std::io::Result<()> {
    match path {
        Some(p) => write_atomic(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn read_undirected(path: &Path) -> Result<MultiGraph, Failure> {
    match parse_graph(&fs::read_to_string(path)?)? {
        AnyGraph::Undirected(g) => Ok(g),
        AnyGraph::Directed(_) => Err(input_error("expected an undirected graph")),
    }
}

fn require<'a>(x: &'a Option<Q>, flag: &str) -> Result<&'a Q, Failure> {
    x.as_ref()
        .ok_or_else(|| input_error(format!("--{flag} is required for this model")))
}

fn poly_json(p: &UniPoly) -> Value {
    json!(p.to_strings())
}

fn run_partition(a: PartitionArgs) -> Outcome {
    let g = read_undirected(&a.graph)?;
    let caps = a.caps.caps();
    let z = match (a.model, a.method) {
        (PartitionModel::Ising, Method::Transfer) => transfer::ising_poly(&g, require(&a.beta, "beta")?),
        (PartitionModel::Ising, Method::Enumerate) => enumerate::ising_poly_with(&g, require(&a.beta, "beta")?, &caps)?,
        (PartitionModel::Matching, Method::Transfer) => transfer::matching_poly(&g),
        (PartitionModel::Matching, Method::Enumerate) => enumerate::matching_poly_with(&g, &caps)?,
        (PartitionModel::Twospin, m) => {
            let (a1, a2) = (require(&a.alpha1, "alpha1")?, require(&a.alpha2, "alpha2")?);
            match m {
                Method::Transfer => transfer::twospin_poly(&g, a1, a2),
                Method::Enumerate => enumerate::twospin_poly(&g, a1, a2, &caps)?,
            }
        }
    };
    let v = json!({ "n": g.n(), "edges": g.edge_count(), "coefficients": poly_json(&z) });
    emit(a.emit.as_deref(), &pretty(&v))?;
    Ok(())
}

fn run_observables(a: ObservablesArgs) -> Outcome {
    let g = read_undirected(&a.graph)?;
    let values = match a.model {
        AverageModel::Ising => {
            observables::ising_observables(&g, require(&a.beta, "beta")?, &a.lambda, &a.caps.caps())?
        }
        AverageModel::Matching => observables::matching_observables(&g, &a.lambda)?,
    };
    let mut obj = serde_json::Map::new();
    for v in values {
        let key = serde_json::to_value(v.kind)?;
        obj.insert(key.as_str().unwrap_or_default().to_string(), json!(fmt_q(&v.value)));
    }
    print!("{}", pretty(&Value::Object(obj)));
    Ok(())
}

/// Per-graph result of a certificate sweep.
struct Swept {
    id: String,
    certs: Vec<Certificate>,
    roots_csv: String,
}

fn certify_one(g: &MultiGraph, id: String, a: &CertifyArgs) -> Result<Swept, Error> {
    let tol = 2f64.powi(-a.tol_bits);
    let (z, certs) = match a.model {
        AverageModel::Ising => {
            let beta = a
                .beta
                .clone()
                .ok_or_else(|| Error::InvalidInput("--beta is required".into()))?;
            let z = transfer::ising_poly(g, &beta);
            // sum_k k a_k lambda^k = lambda Z'(lambda)
            let lz = z.derivative().shift(1);
            let certs = vec![
                certify_unit_circle(&z, tol, a.prec)?,
                certify_strictly_inside_unit_disk(&lz)?,
                certify_coprime_with_derivative(&z)?,
            ];
            (z, certs)
        }
        AverageModel::Matching => {
            let z = transfer::matching_poly(g);
            let (axis, simple) = certify_imaginary_axis_and_simple(&z)?;
            (z, vec![axis, simple])
        }
    };
    let mut roots_csv = String::new();
    if a.emit_roots.is_some() && z.degree().unwrap_or(0) > 0 {
        for line in find_roots(&z, a.prec)?.to_csv().lines().skip(1) {
            roots_csv.push_str(&id);
            roots_csv.push(',');
            roots_csv.push_str(line);
            roots_csv.push('\n');
        }
    }
    Ok(Swept { id, certs, roots_csv })
}

fn run_certify(a: CertifyArgs) -> Outcome {
    let graphs: Vec<(String, MultiGraph)> = match (&a.graph, a.family) {
        (Some(path), _) => {
            let g = read_undirected(path)?;
            let id = if g.n() <= MAX_CANONICAL_N && g.is_unit_weighted() && !g.has_loops() {
                graph_id(&g)
            } else {
                path.file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default()
            };
            vec![(id, g)]
        }
        (None, Some(family)) => {
            if a.max_n > MAX_CANONICAL_N {
                return Err(Error::CapExceeded {
                    what: "corpus vertices",
                    limit: MAX_CANONICAL_N,
                    actual: a.max_n,
                }
                .into());
            }
            let gs = match family {
                Family::Connected => connected_graphs_up_to(a.max_n),
                Family::Sampled if a.max_n >= 2 => sampled_connected_graphs(a.max_n, a.samples, a.seed),
                Family::Sampled => return Err(input_error("sampled corpora need --max-n >= 2")),
            };
            gs.into_iter().map(|g| (graph_id(&g), g)).collect()
        }
        (None, None) => return Err(input_error("give --family or --graph")),
    };
    let swept = graphs
        .par_iter()
        .map(|(id, g)| certify_one(g, id.clone(), &a))
        .collect::<Result<Vec<_>, Error>>()?;
    let mut report = String::new();
    let mut falsified = 0usize;
    for s in &swept {
        for c in &s.certs {
            falsified += usize::from(!c.verdict);
            report.push_str(&c.to_json_line(&s.id));
            report.push('\n');
        }
    }
    emit(a.out.as_deref(), &report)?;
    if let Some(path) = &a.emit_roots {
        let mut csv = String::from("graph_id,re,im,radius,multiplicity\n");
        swept.iter().for_each(|s| csv.push_str(&s.roots_csv));
        write_atomic(path, &csv)?;
    }
    eprintln!(
        "{} graphs, {} certificates, {} falsified",
        swept.len(),
        report.lines().count(),
        falsified
    );
    if falsified > 0 {
        return Err(Failure {
            code: EXIT_FALSIFIED,
            message: format!("{falsified} certificates falsified; witnesses are in the report"),
        });
    }
    Ok(())
}

/// What `recover --graph` was pointed at.
enum RecoverInput {
    Graph(MultiGraph),
    Reduction {
        double: MultiGraph,
        mu: usize,
        nu: usize,
        kappa: Option<usize>,
        stripped: usize,
    },
}

fn read_recover_input(path: &Path) -> Result<RecoverInput, Failure> {
    let text = fs::read_to_string(path)?;
    let v: Value = serde_json::from_str(&text)?;
    if let Some(gg) = v.get("gadget_graph") {
        let d = match parse_graph(&gg.to_string())? {
            AnyGraph::Directed(d) => d,
            AnyGraph::Undirected(_) => return Err(input_error("gadget_graph must be directed")),
        };
        let field = |k: &str| v.get(k).and_then(Value::as_u64).map(|x| x as usize);
        let (Some(mu), Some(nu), Some(stripped)) = (field("mu"), field("nu"), field("stripped")) else {
            return Err(input_error("reduction output lacks mu/nu/stripped"));
        };
        return Ok(RecoverInput::Reduction {
            double: bipartite_double(&d),
            mu,
            nu,
            kappa: field("kappa"),
            stripped,
        });
    }
    Ok(match parse_graph(&text)? {
        AnyGraph::Undirected(g) => RecoverInput::Graph(g),
        AnyGraph::Directed(d) => RecoverInput::Graph(bipartite_double(&d)),
    })
}

fn run_recover(a: RecoverArgs) -> Outcome {
    let input = read_recover_input(&a.graph)?;
    let g = match &input {
        RecoverInput::Graph(g) => g,
        RecoverInput::Reduction { double, .. } => double,
    };
    let params = Params {
        beta: a.beta,
        lambda: a.lambda,
        alpha1: a.alpha1,
        alpha2: a.alpha2,
    };
    let mut report = recover(a.model, g, &params, &ExactOracle)?;
    let verified = report.verify(&direct_polynomial(a.model, g, &params));
    let mut summary = json!({
        "model": a.model,
        "vertices": g.n(),
        "oracle_calls": report.transcript.len(),
        "value_at_one": fmt_q(&report.value_at_one),
        "verified": verified,
    });
    if let Some(pm) = &report.perfect_matchings {
        summary["perfect_matchings"] = json!(fmt_q(pm));
    }
    if let RecoverInput::Reduction {
        mu,
        nu,
        kappa,
        stripped,
        ..
    } = input
    {
        let Some(pm) = report.perfect_matchings.as_ref().filter(|q| q.is_integer()) else {
            return Err(input_error("extraction needs a matching model on a reduction output"));
        };
        let s = extract_sat_count(&pm.to_integer(), mu, nu, kappa, stripped)?;
        summary["sat_count"] = json!(s.to_string());
    }
    let full = serde_json::to_value(&report)?;
    if let Some(path) = &a.emit {
        write_atomic(path, &pretty(&full))?;
    }
    print!("{}", pretty(&summary));
    if !verified {
        if a.emit.is_none() {
            eprint!("{}", pretty(&full));
        }
        return Err(Failure {
            code: EXIT_FALSIFIED,
            message: "recovered polynomial differs from the direct computation".into(),
        });
    }
    Ok(())
}

fn run_compile(a: CompileArgs) -> Outcome {
    let phi = MonotoneTwoCnf::parse(&fs::read_to_string(&a.formula)?)?;
    let mode = match a.mode {
        CompileMode::Keep => Mode::KeepMinusOne,
        CompileMode::Chain => Mode::ChainReplaced,
    };
    let out = compile(&phi, mode)?;
    let audit = out.degree_audit();
    let valid = validate_certificate(&out.gadget_graph, &out.hamiltonian_certificate);
    let mut summary = json!({
        "mode": out.mode,
        "mu": out.mu,
        "nu": out.nu,
        "stripped": out.stripped,
        "kappa": out.kappa,
        "vertices": out.gadget_graph.n(),
        "arcs": out.gadget_graph.arc_count(),
        "degree_audit": audit,
        "certificate_valid": valid,
    });
    if a.count {
        let w = cycle_cover_weight(&out.gadget_graph)?;
        summary["cycle_cover_weight"] = json!(w.to_string());
        summary["sat_count"] = json!(out.extract(&w)?.to_string());
    }
    if let Some(p) = &a.emit {
        write_atomic(p, &pretty(&serde_json::to_value(&out)?))?;
    }
    if let Some(p) = &a.certificate {
        write_atomic(p, &pretty(&serde_json::to_value(&out.hamiltonian_certificate)?))?;
    }
    print!("{}", pretty(&summary));
    if !audit.passes() || !valid {
        return Err(Failure {
            code: EXIT_FALSIFIED,
            message: "degree audit or certificate check failed".into(),
        });
    }
    Ok(())
}

fn run_verify_gadgets(a: VerifyArgs) -> Outcome {
    let derived = derive_gadget_weights()?;
    let frozen = [GadgetTemplate::xor(), GadgetTemplate::clause()];
    let matches_frozen = derived.xor.template == frozen[0] && derived.clause.template == frozen[1];
    let report = verify_gadget_properties(&standard_templates(&[1, 2, 3, 4]));
    let v = json!({
        "derivation": derived,
        "matches_frozen": matches_frozen,
        "closures": report.as_ref().ok(),
        "error": report.as_ref().err().map(|e| e.to_string()),
    });
    emit(a.emit.as_deref(), &pretty(&v))?;
    if a.emit.is_some() {
        println!(
            "{}",
            json!({ "matches_frozen": matches_frozen, "passed": report.is_ok() })
        );
    }
    report?;
    if !matches_frozen {
        return Err(Failure {
            code: EXIT_FALSIFIED,
            message: "derived templates differ from the frozen ones".into(),
        });
    }
    Ok(())
}

fn run_interp(a: InterpArgs) -> Outcome {
    let v: Value = serde_json::from_str(&fs::read_to_string(&a.samples)?)?;
    let degree = v
        .get("degree")
        .and_then(Value::as_u64)
        .ok_or_else(|| input_error("missing \"degree\""))? as usize;
    let raw = v
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| input_error("missing \"points\""))?;
    let mut points = Vec::with_capacity(raw.len());
    for p in raw {
        let pair = p
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| input_error("points are [x, y] pairs"))?;
        let s = |x: &Value| {
            x.as_str()
                .map(str::to_string)
                .ok_or_else(|| input_error("sample values are \"p/q\" strings"))
        };
        points.push((parse_q(&s(&pair[0])?)?, parse_q(&s(&pair[1])?)?));
    }
    let mut rep = interpolate(&SampleSet::new(points, degree)?)?;
    if let Some(pin) = &a.normalize {
        let (lhs, value) = pin
            .split_once('=')
            .ok_or_else(|| input_error("--normalize expects p<i>=<q> or q<i>=<q>"))?;
        let side = match &lhs[..1] {
            "p" => Side::Numerator,
            "q" => Side::Denominator,
            _ => return Err(input_error("--normalize side must be p or q")),
        };
        let index = lhs[1..]
            .parse::<usize>()
            .map_err(|_| input_error("bad coefficient index"))?;
        rep = normalize(&rep, side, index, &parse_q(value)?)?;
    }
    print!("{}", pretty(&serde_json::to_value(&rep)?));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Partition(a) => run_partition(a),
        Command::Observables(a) => run_observables(a),
        Command::Certify(a) => run_certify(a),
        Command::Recover(a) => run_recover(a),
        Command::Compile2Sat(a) => run_compile(a),
        Command::VerifyGadgets(a) => run_verify_gadgets(a),
        Command::Interp(a) => run_interp(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_codes_are_distinct() {
        let input: Failure = Error::InvalidInput("x".into()).into();
        let cap: Failure = Error::CapExceeded {
            what: "x",
            limit: 1,
            actual: 2,
        }
        .into();
        let bad: Failure = Error::TemplateFalsified("x".into()).into();
        assert_eq!((input.code, cap.code, bad.code), (EXIT_INPUT, EXIT_CAP, EXIT_FALSIFIED));
    }

    #[test]
    fn rationals_only() {
        assert!(rational("3/4").is_ok());
        assert!(rational("0.75").is_err());
    }
}
