use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nesto::buildset::{BuildError, GraphError};
use nesto::families::{
    self, fa_fh_ft_series, fa_series, g_polynomial, narayana_series, parse_family, t_series, tree_gamma_survey,
    FamilyError, MarkedGraph,
};
use nesto::gamma::{gamma_chordal_with, GammaError};
use nesto::nestcplx::{
    count_b_trees, dimension, enumerate_b_trees_with, f_recurrence_contraction, h_via_descents_with,
    nested_complex_fvector_with, NestError,
};
use nesto::poly::{factorial, gamma_from_h, PolyError};
use nesto::preposet::{count_linear_extensions, PosetError};
use nesto::series::{PolySeries1, PolySeriesK, SeriesError, Truncation};
use nesto::{BuildingSet, Caps, FaceReport, Graph, IntPolynomial};

#[derive(Parser)]
#[command(name = "nesto", version, about = "Face numbers of nestohedra and graph-associahedra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Cap on every enumeration (overrides NESTO_CAP).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    cap: Option<u64>,
    /// Worker threads for parallel enumerations.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// f, h and γ polynomials, vertex count, chordality and flagness.
    Compute(Input),
    /// Cross-check the f-, h- and γ-computations against each other.
    Check(Input),
    /// γ-vectors of all unlabelled trees on N nodes.
    Survey {
        #[arg(long, default_value_t = 7)]
        nodes: usize,
    },
    /// Truncated generating functions and g-polynomials.
    Series(SeriesArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Named family, e.g. path:5, cycle:4, daisy:6,2, stanleyPitman:4.
    #[arg(long)]
    family: Option<String>,
    /// Graph file: JSON {"n", "edges"} or an edge list.
    #[arg(long)]
    graph: Option<String>,
    /// Building set file: JSON {"n", "members"}.
    #[arg(long)]
    building: Option<String>,
    /// Inline edge list such as 1-2,2-3,3-4.
    #[arg(long)]
    edges: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesKind {
    /// Narayana series C(t, x).
    Narayana,
    /// h-polynomials of branched trees.
    T,
    /// f̃-polynomials of paths.
    Fa,
    /// f̃-polynomials of branched trees.
    Ft,
    /// f̃-polynomials of hedgehogs.
    Fh,
    /// g-polynomial of a path-like family (needs --family).
    G,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(value_enum)]
    kind: SeriesKind,
    /// Truncation: total degree in x.
    #[arg(long, default_value_t = 10)]
    order: usize,
    /// Number of variables for t, ft and fh.
    #[arg(long, default_value_t = 1)]
    branches: usize,
    /// For g: path, dynkinD, affineD, kite:K or daisy:K.
    #[arg(long)]
    family: Option<String>,
}

/// Failure classes, each with its own exit status.
enum Failure {
    Input(String),
    Cap(String),
    Check(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Cap(_) => 2,
            Failure::Check(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Cap(m) | Failure::Check(m) => m,
        }
    }
}

impl From<NestError> for Failure {
    fn from(e: NestError) -> Self {
        match e {
            NestError::CapExceeded { .. } => Failure::Cap(e.to_string()),
            NestError::CrossCheck(_) => Failure::Check(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Nest(inner) => inner.into(),
            FamilyError::Series(inner) => inner.into(),
            FamilyError::SystemInconsistent(_) => Failure::Check(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<GammaError> for Failure {
    fn from(e: GammaError) -> Self {
        match e {
            GammaError::Nest(inner) => inner.into(),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<SeriesError> for Failure {
    fn from(e: SeriesError) -> Self {
        Failure::Check(e.to_string())
    }
}

impl From<PosetError> for Failure {
    fn from(e: PosetError) -> Self {
        match e {
            PosetError::CapExceeded(_) => Failure::Cap(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::MultisetTooLarge { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

impl From<BuildError> for Failure {
    fn from(e: BuildError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_file(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn inline_graph(text: &str) -> Result<Graph, Failure> {
    let mut edges = Vec::new();
    for tok in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
        let (a, b) = tok.split_once('-').ok_or_else(|| Failure::Input(format!("bad edge {tok:?}")))?;
        let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| Failure::Input(format!("bad edge {tok:?}")));
        edges.push((parse(a)?, parse(b)?));
    }
    let n = edges.iter().map(|&(a, b)| a.max(b)).max().ok_or_else(|| Failure::Input("no edges given".into()))?;
    Ok(Graph::from_edges(n, &edges)?)
}

fn load_building(input: &Input) -> Result<BuildingSet, Failure> {
    if let Some(f) = &input.family {
        Ok(parse_family(f)?.building()?)
    } else if let Some(path) = &input.graph {
        Ok(nesto::graphical_building(&Graph::parse(&read_file(path)?)?)?)
    } else if let Some(path) = &input.building {
        Ok(BuildingSet::from_json(&read_file(path)?)?)
    } else if let Some(e) = &input.edges {
        Ok(nesto::graphical_building(&inline_graph(e)?)?)
    } else {
        Err(Failure::Input("no input given".into()))
    }
}

fn poly_json(p: &IntPolynomial) -> Value {
    serde_json::to_value(p).expect("polynomials serialize")
}

fn render_json(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("reports serialize");
    s.push('\n');
    s
}

fn compute(input: &Input, format: Format) -> Result<String, Failure> {
    let b = load_building(input)?;
    let r = nesto::nestcplx::face_report(&b)?;
    Ok(match format {
        Format::Json => render_json(serde_json::to_value(&r).expect("reports serialize")),
        Format::Pretty => pretty_report(&r),
        Format::Csv => {
            let mut out = String::from("k,f_k,h_k,gamma_k\n");
            let d = r.f.degree().unwrap_or(0);
            for k in 0..=d {
                let g = r.gamma.as_ref().map(|g| g.coeff(k).to_string()).unwrap_or_default();
                writeln!(out, "{k},{},{},{g}", r.f.coeff(k), r.h.coeff(k)).unwrap();
            }
            out
        }
    })
}

fn pretty_report(r: &FaceReport) -> String {
    let gamma = r.gamma.as_ref().map(|g| g.to_string()).unwrap_or_else(|| "-".into());
    format!(
        "n: {}\nf: {}\nh: {}\ngamma: {}\nvertices: {}\nchordal: {}\nflag: {}\n",
        r.n, r.f, r.h, gamma, r.num_vertices, r.chordal, r.flag
    )
}

struct CheckLine {
    name: &'static str,
    /// `None` when the check does not apply.
    passed: Option<bool>,
    detail: String,
}

fn verdict<T: PartialEq + std::fmt::Display>(name: &'static str, got: T, want: T) -> CheckLine {
    let passed = got == want;
    let detail = if passed { got.to_string() } else { format!("got {got}, expected {want}") };
    CheckLine { name, passed: Some(passed), detail }
}

fn skipped(name: &'static str, why: impl Into<String>) -> CheckLine {
    CheckLine { name, passed: None, detail: why.into() }
}

/// Turn a computation error into a failed check, except cap overruns, which
/// abort the whole run.
fn attempt<T>(name: &'static str, r: Result<T, Failure>) -> Result<Result<T, CheckLine>, Failure> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(Failure::Cap(m)) => Err(Failure::Cap(m)),
        Err(Failure::Check(m)) => Ok(Err(CheckLine { name, passed: Some(false), detail: m })),
        Err(Failure::Input(m)) => Ok(Err(skipped(name, m))),
    }
}

fn check(input: &Input, caps: &Caps, format: Format) -> Result<(String, bool), Failure> {
    let b = load_building(input)?;
    let d = dimension(&b);
    let report = nesto::nestcplx::face_report(&b)?;
    let f = report.f.clone();
    let mut lines = Vec::new();

    lines.push(match attempt("f: enumeration = restriction recurrence", nested_complex_fvector_with(&b, caps).map_err(Failure::from))? {
        Ok(fv) => verdict("f: enumeration = restriction recurrence", fv.f, f.clone()),
        Err(l) => l,
    });
    lines.push(match attempt("f: contraction recurrence = restriction recurrence", f_recurrence_contraction(&b).map_err(Failure::from))? {
        Ok(fc) => verdict("f: contraction recurrence = restriction recurrence", fc, f.clone()),
        Err(l) => l,
    });
    lines.push(CheckLine {
        name: "h is palindromic",
        passed: Some(report.h.is_palindromic(d)),
        detail: report.h.to_string(),
    });
    lines.push(match attempt("h: B-tree descents = h from f", h_via_descents_with(&b, caps).map_err(Failure::from))? {
        Ok(h) => verdict("h: B-tree descents = h from f", h, report.h.clone()),
        Err(l) => l,
    });
    lines.push(match attempt("B-tree count = vertex count", count_b_trees(&b).map_err(Failure::from))? {
        Ok(c) => verdict("B-tree count = vertex count", c.to_string(), report.num_vertices.to_string()),
        Err(l) => l,
    });
    let name = "linear extensions of B-trees partition all permutations";
    lines.push(match attempt(name, enumerate_b_trees_with(&b, caps).map_err(Failure::from))? {
        Ok(trees) => {
            let total: u128 = trees.iter().map(|t| count_linear_extensions(&t.to_poset()) as u128).sum();
            verdict(name, total.to_string(), factorial(b.ground_size()).to_string())
        }
        Err(l) => l,
    });
    let name = "gamma: chordal peak count = gamma from h";
    lines.push(if !b.is_chordal() {
        skipped(name, "building set is not chordal")
    } else {
        match attempt(name, gamma_chordal_with(&b, caps).map_err(Failure::from))? {
            Ok(g) => verdict(name, g, gamma_from_h(&report.h, d)?.gamma),
            Err(l) => l,
        }
    });

    let ok = lines.iter().all(|l| l.passed != Some(false));
    let status = |l: &CheckLine| match l.passed {
        Some(true) => "pass",
        Some(false) => "fail",
        None => "skipped",
    };
    let out = match format {
        Format::Json => render_json(json!({
            "passed": ok,
            "checks": lines.iter().map(|l| json!({"name": l.name, "status": status(l), "detail": l.detail})).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("check,status,detail\n");
            for l in &lines {
                writeln!(s, "{},{},\"{}\"", l.name, status(l), l.detail.replace('"', "\"\"")).unwrap();
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            for l in &lines {
                writeln!(s, "[{}] {}: {}", status(l), l.name, l.detail).unwrap();
            }
            s
        }
    };
    Ok((out, ok))
}

fn survey(nodes: usize, format: Format) -> Result<String, Failure> {
    let s = tree_gamma_survey(nodes)?;
    Ok(match format {
        Format::Json => render_json(serde_json::to_value(&s).expect("reports serialize")),
        Format::Csv => s.to_csv(),
        Format::Pretty => {
            let mut out = String::new();
            writeln!(out, "{} trees on {} nodes", s.rows.len(), s.n).unwrap();
            for r in &s.rows {
                let g: Vec<String> = r.gamma.iter().map(|c| c.to_string()).collect();
                writeln!(out, "{:<24} degrees {:<10} wiener {:>4}  gamma ({})", r.code, r.degree_sequence, r.wiener, g.join(", "))
                    .unwrap();
            }
            writeln!(out, "path is the unique minimum: {}", s.path_is_unique_min).unwrap();
            writeln!(out, "star is the unique maximum: {}", s.star_is_unique_max).unwrap();
            writeln!(out, "incomparable pairs: {}", s.incomparable_pairs.len()).unwrap();
            out
        }
    })
}

fn marked_g_family(spec: &str) -> Result<(MarkedGraph, MarkedGraph), Failure> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let k = || rest.trim().parse::<usize>().map_err(|_| Failure::Input(format!("{name} needs a parameter, e.g. {name}:3")));
    let point = MarkedGraph::point();
    Ok(match name {
        "path" => (point.clone(), point),
        "dynkinD" => (MarkedGraph::new(families::path_graph(3), 2), point),
        "affineD" => {
            let a = MarkedGraph::new(families::path_graph(3), 2);
            (a.clone(), a)
        }
        "kite" => (MarkedGraph::new(families::complete_graph(k()?), 1), point),
        "daisy" => {
            let k = k()?;
            (MarkedGraph::new(families::star_graph(k), k + 1), point)
        }
        _ => return Err(Failure::Input(format!("no g-polynomial family {name:?}"))),
    })
}

fn univariate(name: &str, s: &PolySeries1, format: Format) -> String {
    match format {
        Format::Json => render_json(json!({
            "series": name,
            "order": s.order(),
            "coefficients": s.coeffs().iter().map(poly_json).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("exponent,coefficient\n");
            for (k, c) in s.coeffs().iter().enumerate() {
                writeln!(out, "{k},\"{c}\"").unwrap();
            }
            out
        }
        Format::Pretty => {
            let mut out = String::new();
            for (k, c) in s.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                writeln!(out, "x^{k}: {c}").unwrap();
            }
            out
        }
    }
}

fn multivariate(name: &str, s: &PolySeriesK, format: Format) -> String {
    let mut terms: Vec<(&Vec<u32>, &IntPolynomial)> = s.terms().filter(|(_, c)| !c.is_zero()).collect();
    terms.sort_by_key(|(e, _)| (e.iter().sum::<u32>(), (*e).clone()));
    let exp = |e: &[u32]| e.iter().map(|v| v.to_string()).collect::<Vec<_>>();
    match format {
        Format::Json => render_json(json!({
            "series": name,
            "truncation": s.truncation().total,
            "terms": terms.iter().map(|(e, c)| json!({"exponent": e, "coefficient": poly_json(c)})).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("exponent,coefficient\n");
            for (e, c) in &terms {
                writeln!(out, "{},\"{c}\"", exp(e).join(";")).unwrap();
            }
            out
        }
        Format::Pretty => {
            let mut out = String::new();
            for (e, c) in &terms {
                writeln!(out, "x^({}): {c}", exp(e).join(",")).unwrap();
            }
            out
        }
    }
}

fn series(args: &SeriesArgs, format: Format) -> Result<String, Failure> {
    if args.order == 0 || args.branches == 0 {
        return Err(Failure::Input("--order and --branches must be positive".into()));
    }
    let trunc = Truncation::total(args.branches, args.order as u32);
    Ok(match args.kind {
        SeriesKind::Narayana => univariate("narayana", &narayana_series(args.order)?, format),
        SeriesKind::Fa => univariate("fa", &fa_series(args.order)?, format),
        SeriesKind::T => multivariate("t", &t_series(args.branches, &trunc)?, format),
        SeriesKind::Ft => multivariate("ft", &fa_fh_ft_series(args.branches, &trunc)?.1, format),
        SeriesKind::Fh => multivariate("fh", &fa_fh_ft_series(args.branches, &trunc)?.2, format),
        SeriesKind::G => {
            let spec = args.family.as_deref().ok_or_else(|| Failure::Input("series g needs --family".into()))?;
            let (a, b) = marked_g_family(spec)?;
            let g = g_polynomial(&a, &b)?;
            match format {
                Format::Json => render_json(serde_json::to_value(&g).expect("reports serialize")),
                Format::Csv => {
                    let mut out = String::from("i,g_i\n");
                    for (i, gi) in g.g.iter().enumerate() {
                        writeln!(out, "{i},\"{gi}\"").unwrap();
                    }
                    out
                }
                Format::Pretty => format!("{g}\n"),
            }
        }
    })
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let caps = match cli.cap {
        Some(n) => Caps::uniform(n),
        None => Caps::from_env(),
    };
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
            .map_err(|e| Failure::Input(e.to_string()))?;
    }
    match &cli.command {
        Command::Compute(input) => Ok((compute(input, cli.format)?, true)),
        Command::Check(input) => check(input, &caps, cli.format),
        Command::Survey { nodes } => Ok((survey(*nodes, cli.format)?, true)),
        Command::Series(args) => Ok((series(args, cli.format)?, true)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
