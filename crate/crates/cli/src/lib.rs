//! Command-line front end: parses 4ti2 matrix files and curve specs,
//! dispatches to `toric_core`, and renders text, JSON or 4ti2 output.
//!
//! Exit codes: 0 success, 2 domain/parse/usage errors, 3 resource limits
//! (including fixed-width overflow), 4 verification mismatches.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use toric_core::curve::{self, Curve};
use toric_core::graver::{graver_basis_with, graver_complexity, CompletionLimits};
use toric_core::lawrence::{generalized_lift, graver_type_scan, lift, markov_complexity_scan};
use toric_core::markov::{
    find_semiconformal_witness, find_ssc_chain, in_indispensable, in_universal_markov, markov_bases, MarkovKind,
};
use toric_core::{Configuration, Error, IntMatrix, IntVec};

pub const SCHEMA: &str = "toric/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "toric", version, about = "Graver and Markov bases of integer configurations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub caps: Caps,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Caps {
    /// Maximum number of pair reductions in a completion.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub max_pairs: usize,
    /// Maximum number of stored elements in a completion.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub max_elements: usize,
}

impl Caps {
    fn limits(&self) -> CompletionLimits {
        CompletionLimits { max_pairs: self.max_pairs, max_elements: self.max_elements, ..Default::default() }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    #[value(name = "4ti2")]
    FourTiTwo,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Minimal,
    Universal,
    Indispensable,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitKind {
    Sc,
    Ssc,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplexityKind {
    Markov,
    Graver,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Integer kernel basis.
    Kernel {
        matrix: PathBuf,
        #[arg(long, value_enum, default_value = "4ti2")]
        format: Format,
    },
    /// Graver basis, one sign class per row.
    Graver {
        matrix: PathBuf,
        #[arg(long, value_enum, default_value = "4ti2")]
        format: Format,
    },
    /// Minimal, universal or indispensable Markov basis.
    Markov {
        matrix: PathBuf,
        #[arg(long, value_enum, default_value = "minimal")]
        kind: BasisKind,
        #[arg(long, value_enum, default_value = "4ti2")]
        format: Format,
    },
    /// Lattice points of a fiber.
    Fiber {
        matrix: PathBuf,
        /// Degree vector, entries separated by spaces or commas.
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
        #[arg(long, value_enum, default_value = "4ti2")]
        format: Format,
    },
    /// Semiconformal witness or shortest strongly semiconformal chain.
    Decompose {
        matrix: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[arg(long, value_enum, default_value = "ssc")]
        kind: SplitKind,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Lawrence lifting, or generalized lifting with a coupling matrix.
    Lift {
        matrix: PathBuf,
        #[arg(short = 'r')]
        r: usize,
        #[arg(long)]
        coupling: Option<PathBuf>,
    },
    /// Type scan over liftings `r = 2..=max-r`; input is a file or `curve:N1,N2,N3`.
    Complexity {
        input: String,
        #[arg(long, value_enum, default_value = "markov")]
        kind: ComplexityKind,
        #[arg(long, default_value_t = 3)]
        max_r: usize,
        #[arg(long)]
        coupling: Option<PathBuf>,
        /// Also compute the exact Graver complexity (Graver basis of the Graver matrix).
        #[arg(long)]
        exact: bool,
        /// For curves, check the scan against the closed-form Markov complexity.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Closed forms for the monomial curve `{N1, N2, N3}`.
    Curve {
        n1: i64,
        n2: i64,
        n3: i64,
        #[arg(long)]
        lawrence: Option<usize>,
        /// Cross-check every closed form against the brute-force engines.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Graver-complexity lower bounds for a curve.
    Bounds {
        n1: i64,
        n2: i64,
        n3: i64,
        #[arg(long)]
        coupling: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Why an invocation failed; [`CliError::code`] gives the exit code.
#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
    Verify(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub type Res<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Core(Error::ResourceLimit { .. } | Error::Overflow(_)) => EXIT_RESOURCE,
            CliError::Core(Error::Consistency(_)) | CliError::Verify(_) => EXIT_VERIFY,
            CliError::Core(_) | CliError::Io(_) => EXIT_INPUT,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Io(m) => m.clone(),
            CliError::Verify(m) => format!("verification failed: {m}"),
        }
    }
}

/// Parses a 4ti2 matrix file into a configuration.
pub fn parse_matrix_file(path: &Path) -> Res<Configuration> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(Configuration::new(IntMatrix::parse_4ti2(&text)?)?)
}

fn parse_vector(s: &str) -> Res<IntVec> {
    let entries = s
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| CliError::Core(Error::Domain(format!("invalid integer `{t}`")))))
        .collect::<Res<Vec<_>>>()?;
    Ok(IntVec::new(entries))
}

fn parse_curve_spec(s: &str) -> Option<Res<Curve>> {
    let rest = s.strip_prefix("curve:")?;
    let v = match parse_vector(rest) {
        Ok(v) => v,
        Err(e) => return Some(Err(e)),
    };
    if v.len() != 3 {
        return Some(Err(CliError::Core(Error::Domain(format!("curve needs 3 entries, got {}", v.len())))));
    }
    Some(Curve::new(v[0], v[1], v[2]).map_err(CliError::from))
}

fn vec_json(v: &IntVec) -> Value {
    json!(v.entries())
}

fn vecs_json(vs: &[IntVec]) -> Value {
    Value::Array(vs.iter().map(vec_json).collect())
}

fn rows_4ti2(width: usize, vs: &[IntVec]) -> Res<String> {
    Ok(IntMatrix::from_vectors(width, vs)?.to_4ti2())
}

fn rows_text(vs: &[IntVec]) -> String {
    vs.iter().map(|v| format!("{v}\n")).collect()
}

fn render(value: Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
    s.push('\n');
    s
}

fn basis_output(format: Format, command: &str, width: usize, elements: &[IntVec], extra: Value) -> Res<String> {
    Ok(match format {
        Format::FourTiTwo => rows_4ti2(width, elements)?,
        Format::Text => {
            let mut out = format!("{} elements\n", elements.len());
            out.push_str(&rows_text(elements));
            out
        }
        Format::Json => {
            let mut obj = json!({
                "schema": SCHEMA,
                "command": command,
                "elements": vecs_json(elements),
                "counts": { "elements": elements.len() },
            });
            if let (Value::Object(o), Value::Object(x)) = (&mut obj, extra) {
                o.extend(x);
            }
            render(obj)
        }
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => Outcome { code: EXIT_OK, stdout, stderr: String::new() },
        Err(f) => Outcome { code: f.code(), stdout: String::new(), stderr: format!("error: {}\n", f.message()) },
    }
}

fn execute(cli: &Cli) -> Res<String> {
    let limits = cli.caps.limits();
    match &cli.command {
        Command::Kernel { matrix, format } => {
            let a = parse_matrix_file(matrix)?;
            let basis = a.kernel_basis()?.to_vec();
            basis_output(*format, "kernel", a.n(), &basis, json!({ "rank": a.rank()? }))
        }
        Command::Graver { matrix, format } => {
            let a = parse_matrix_file(matrix)?;
            let g = graver_basis_with(&a, &limits)?;
            basis_output(*format, "graver", a.n(), &g.elements, json!({}))
        }
        Command::Markov { matrix, kind, format } => {
            let a = parse_matrix_file(matrix)?;
            let bases = markov_bases(&a, &limits)?;
            let (k, basis) = match kind {
                BasisKind::Minimal => (MarkovKind::Minimal, &bases.minimal),
                BasisKind::Universal => (MarkovKind::Universal, &bases.universal),
                BasisKind::Indispensable => (MarkovKind::Indispensable, &bases.indispensable),
            };
            let mut degrees = Vec::new();
            for u in &basis.elements {
                let d = a.a_degree(u)?;
                let size = a.fiber(&d)?.len();
                degrees.push(json!({ "degree": vec_json(&d), "fiber_size": size }));
            }
            basis_output(
                *format,
                "markov",
                a.n(),
                &basis.elements,
                json!({ "kind": k.name(), "degrees": degrees }),
            )
        }
        Command::Fiber { matrix, rhs, format } => {
            let a = parse_matrix_file(matrix)?;
            let b = parse_vector(rhs)?;
            let f = a.fiber(&b)?;
            basis_output(*format, "fiber", a.n(), &f.points, json!({ "degrees": [vec_json(&b)] }))
        }
        Command::Decompose { matrix, vector, kind, format } => {
            let a = parse_matrix_file(matrix)?;
            let u = parse_vector(vector)?;
            decompose(&a, &u, *kind, *format)
        }
        Command::Lift { matrix, r, coupling } => {
            let a = parse_matrix_file(matrix)?;
            let l = match coupling {
                Some(b) => generalized_lift(&a, &parse_matrix_file(b)?, *r)?,
                None => lift(&a, *r)?,
            };
            Ok(l.matrix().to_4ti2())
        }
        Command::Complexity { input, kind, max_r, coupling, exact, verify, format } => {
            let b = coupling.as_deref().map(parse_matrix_file).transpose()?;
            complexity(input, *kind, *max_r, b.as_ref(), *exact, *verify, *format, &limits)
        }
        Command::Curve { n1, n2, n3, lawrence, verify, format } => {
            curve_report(&Curve::new(*n1, *n2, *n3)?, *lawrence, *verify, *format, &limits)
        }
        Command::Bounds { n1, n2, n3, coupling, format } => {
            let b = coupling.as_deref().map(parse_matrix_file).transpose()?;
            bounds(&Curve::new(*n1, *n2, *n3)?, b.as_ref(), *format, &limits)
        }
    }
}

fn decompose(a: &Configuration, u: &IntVec, kind: SplitKind, format: Format) -> Res<String> {
    let universal = in_universal_markov(a, u)?;
    let indispensable = in_indispensable(a, u)?;
    match kind {
        SplitKind::Sc => {
            let w = find_semiconformal_witness(a, u)?;
            Ok(match format {
                Format::Json => render(json!({
                    "schema": SCHEMA,
                    "command": "decompose",
                    "kind": "sc",
                    "vector": vec_json(u),
                    "elements": w.as_ref().map_or(json!([]), |(v, w)| vecs_json(&[v.clone(), w.clone()])),
                    "counts": { "elements": if w.is_some() { 2 } else { 0 } },
                    "universal_markov": universal,
                    "indispensable": indispensable,
                })),
                _ => {
                    let mut out = String::new();
                    match &w {
                        Some((v, w)) => writeln!(out, "{u} = {v} +sc {w}").unwrap(),
                        None => writeln!(out, "{u}: no proper semiconformal split").unwrap(),
                    }
                    writeln!(out, "universal markov: {universal}").unwrap();
                    writeln!(out, "indispensable: {indispensable}").unwrap();
                    out
                }
            })
        }
        SplitKind::Ssc => {
            let chain = find_ssc_chain(a, u)?;
            let note = match &chain {
                None => "no chain",
                Some(c) if c.len() > 2 => "no 2-chain",
                Some(_) => "2-chain",
            };
            Ok(match format {
                Format::Json => render(json!({
                    "schema": SCHEMA,
                    "command": "decompose",
                    "kind": "ssc",
                    "vector": vec_json(u),
                    "elements": chain.as_ref().map_or(json!([]), |c| vecs_json(&c.parts)),
                    "path": chain.as_ref().map_or(json!([]), |c| vecs_json(&c.path)),
                    "counts": { "length": chain.as_ref().map_or(0, |c| c.len()) },
                    "note": note,
                    "universal_markov": universal,
                    "indispensable": indispensable,
                })),
                _ => {
                    let mut out = String::new();
                    match &chain {
                        Some(c) => {
                            writeln!(out, "chain length {}", c.len()).unwrap();
                            let parts: Vec<String> = c.parts.iter().map(|p| p.to_string()).collect();
                            writeln!(out, "{u} = {}", parts.join(" +ssc ")).unwrap();
                            let path: Vec<String> = c.path.iter().map(|p| p.to_string()).collect();
                            writeln!(out, "path {}", path.join(" -> ")).unwrap();
                        }
                        None => writeln!(out, "chain length 0").unwrap(),
                    }
                    writeln!(out, "note: {note}").unwrap();
                    writeln!(out, "universal markov: {universal}").unwrap();
                    writeln!(out, "indispensable: {indispensable}").unwrap();
                    out
                }
            })
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn complexity(
    input: &str,
    kind: ComplexityKind,
    max_r: usize,
    coupling: Option<&Configuration>,
    exact: bool,
    verify: bool,
    format: Format,
    limits: &CompletionLimits,
) -> Res<String> {
    let curve = parse_curve_spec(input).transpose()?;
    let a = match &curve {
        Some(c) => c.config(),
        None => parse_matrix_file(Path::new(input))?,
    };
    if verify && curve.is_none() {
        return Err(CliError::Core(Error::Domain("--verify needs a curve:N1,N2,N3 input".into())));
    }
    let mut rows = Vec::new();
    let mut text = String::new();
    let scan_max = match kind {
        ComplexityKind::Markov => {
            let scan = markov_complexity_scan(&a, coupling, max_r, limits)?;
            writeln!(text, "r max_type universal indispensable graver").unwrap();
            for s in &scan {
                writeln!(text, "{} {} {} {} {}", s.r, s.max_type, s.universal_size, s.indispensable_size, s.graver_size)
                    .unwrap();
                rows.push(json!({
                    "r": s.r, "max_type": s.max_type, "universal": s.universal_size,
                    "indispensable": s.indispensable_size, "graver": s.graver_size,
                }));
            }
            scan.iter().map(|s| s.max_type).max().unwrap_or(0)
        }
        ComplexityKind::Graver => {
            let scan = graver_type_scan(&a, coupling, max_r, limits)?;
            writeln!(text, "r max_type graver").unwrap();
            for s in &scan {
                writeln!(text, "{} {} {}", s.r, s.max_type, s.graver_size).unwrap();
                rows.push(json!({ "r": s.r, "max_type": s.max_type, "graver": s.graver_size }));
            }
            scan.iter().map(|s| s.max_type).max().unwrap_or(0)
        }
    };
    let mut bounds = serde_json::Map::new();
    bounds.insert("scan_max_type".into(), json!(scan_max));
    if let Some(c) = &curve {
        match kind {
            ComplexityKind::Markov => {
                let m = curve::markov_complexity(c)?;
                writeln!(text, "closed-form markov complexity {m}").unwrap();
                bounds.insert("markov_complexity".into(), json!(m));
                if verify && coupling.is_none() {
                    // The scan never exceeds the closed form and reaches it once r is large enough.
                    if scan_max > m || (max_r >= m && scan_max != m) {
                        return Err(CliError::Verify(format!("scan max type {scan_max} vs closed form {m}")));
                    }
                    writeln!(text, "verified").unwrap();
                }
            }
            ComplexityKind::Graver => {
                let lb = curve::graver_lower_bound(c);
                writeln!(text, "graver lower bound {lb}").unwrap();
                bounds.insert("graver_lower_bound".into(), json!(lb));
                if verify && scan_max as i64 > lb.max(max_r as i64) {
                    return Err(CliError::Verify(format!("scan max type {scan_max} above {lb}")));
                }
            }
        }
    }
    if exact && kind == ComplexityKind::Graver {
        let g = graver_complexity(&a, limits)?;
        writeln!(text, "graver complexity {}", g.value).unwrap();
        bounds.insert("graver_complexity".into(), json!(g.value));
        bounds.insert("graver_complexity_witness".into(), g.witness.as_ref().map_or(Value::Null, vec_json));
    }
    Ok(match format {
        Format::Json => render(json!({
            "schema": SCHEMA,
            "command": "complexity",
            "kind": match kind { ComplexityKind::Markov => "markov", ComplexityKind::Graver => "graver" },
            "types": rows,
            "bounds": Value::Object(bounds),
        })),
        _ => text,
    })
}

fn classification_name(h: &curve::HerzogData) -> &'static str {
    if h.classification.is_complete_intersection() {
        "complete_intersection"
    } else {
        "not_complete_intersection"
    }
}

fn curve_report(c: &Curve, lawrence: Option<usize>, verify: bool, format: Format, limits: &CompletionLimits) -> Res<String> {
    let h = curve::herzog_data(c)?;
    let cf = curve::closed_form_markov(c)?;
    let m = curve::markov_complexity(c)?;
    let lf = lawrence.map(|r| curve::closed_form_lawrence_markov(c, r)).transpose()?;
    let verified = if verify {
        let rs: Vec<usize> = match lawrence {
            Some(r) => vec![r],
            None => vec![2, 3],
        };
        curve::verify_curve(c, &rs, limits).map_err(|e| match e {
            Error::Consistency(m) => CliError::Verify(m),
            e => CliError::Core(e),
        })?;
        true
    } else {
        false
    };
    let critical = h.critical_vector();
    Ok(match format {
        Format::FourTiTwo => match &lf {
            Some(l) => rows_4ti2(3 * l.r, &l.elements)?,
            None => rows_4ti2(3, &cf.universal.elements)?,
        },
        Format::Json => {
            let mut counts = json!({ "universal": cf.universal.len(), "minimal_bases": cf.minimal_count });
            let mut obj = json!({
                "schema": SCHEMA,
                "command": "curve",
                "curve": c.entries(),
                "herzog": {
                    "c": h.c,
                    "reps": h.reps.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
                    "relations": vecs_json(&h.relations()),
                    "critical_vector": critical.as_ref().map_or(Value::Null, vec_json),
                },
                "classification": classification_name(&h),
                "elements": vecs_json(&cf.universal.elements),
                "indispensable": vecs_json(&cf.indispensable),
                "bounds": { "markov_complexity": m, "graver_lower_bound": c.graver_lower_bound() },
                "verified": verified,
            });
            if let Some(l) = &lf {
                let types: Vec<usize> = l.tableaux.iter().map(|t| t.type_()).collect();
                counts["lawrence"] = json!(l.elements.len());
                obj["lawrence"] = json!({
                    "r": l.r,
                    "k": l.k,
                    "elements": vecs_json(&l.elements),
                    "types": types,
                    "max_type": l.max_type,
                });
            }
            obj["counts"] = counts;
            render(obj)
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "curve {c}").unwrap();
            writeln!(out, "c = ({},{},{})", h.c[0], h.c[1], h.c[2]).unwrap();
            writeln!(out, "classification {}", classification_name(&h)).unwrap();
            if let Some(v) = &critical {
                writeln!(out, "critical vector {v}").unwrap();
            }
            writeln!(out, "universal markov basis ({} elements)", cf.universal.len()).unwrap();
            out.push_str(&rows_text(&cf.universal.elements));
            writeln!(out, "minimal markov bases {}", cf.minimal_count).unwrap();
            writeln!(out, "markov complexity {m}").unwrap();
            writeln!(out, "graver lower bound {}", c.graver_lower_bound()).unwrap();
            if let Some(l) = &lf {
                writeln!(out, "lawrence r={}: {} elements, max type {}, k={}", l.r, l.elements.len(), l.max_type, l.k)
                    .unwrap();
            }
            if verified {
                writeln!(out, "verified").unwrap();
            }
            out
        }
    })
}

fn bounds(c: &Curve, coupling: Option<&Configuration>, format: Format, limits: &CompletionLimits) -> Res<String> {
    let identity;
    let b = match coupling {
        Some(b) => b,
        None => {
            identity = Configuration::new(IntMatrix::identity(3))?;
            &identity
        }
    };
    let hs = curve::hs_lower_bound(c, b, limits)?;
    let red = c.reduce();
    let lb = c.graver_lower_bound();
    Ok(match format {
        Format::Json => render(json!({
            "schema": SCHEMA,
            "command": "bounds",
            "curve": c.entries(),
            "reduced": red.entries(),
            "elements": vecs_json(&hs.graver),
            "counts": { "elements": hs.graver.len() },
            "bounds": {
                "graver_lower_bound": lb,
                "hs_lower_bound": hs.bound,
                "hs_witness": hs.witness.as_ref().map_or(Value::Null, vec_json),
            },
        })),
        _ => {
            let mut out = String::new();
            writeln!(out, "curve {c}, reduced {red}").unwrap();
            writeln!(out, "graver lower bound {lb}").unwrap();
            write!(out, "coupling image\n{}", hs.matrix.to_4ti2()).unwrap();
            match &hs.witness {
                Some(w) => writeln!(out, "hs lower bound {} witness {w}", hs.bound).unwrap(),
                None => writeln!(out, "hs lower bound {}", hs.bound).unwrap(),
            }
            out
        }
    })
}
