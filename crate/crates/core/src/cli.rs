//! Batch front-end: `gpres <command> <problem.json> [flags]`.
//!
//! Every run prints one JSON report (sorted keys, exact numbers) to standard
//! output or `--out`. Exit code 0 is success, 1 an input or usage error, 2 a
//! failed internal verification.

use std::collections::HashMap;
use std::ffi::OsString;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{FiniteTable, GroupKind, VertexGroupSpec};
use crate::homology::{
    chiswell_euler, euler_summary, fp_report, homology, trivialize, vertex_euler, EulerSummary, HomologyGroup,
};
use crate::presentation::{
    canonical_presentation, compare_presentation_complex, parse_relator, Census, Presentation, PresentationComplex,
};
use crate::resolution::{check_induction, clique_sum_resolution, verify_complex, ChainComplex, InductionReport};
use crate::ring::CoefficientRing;
use crate::word::GraphProduct;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

const DEFAULT_MAX_DIM: usize = 4;

#[derive(Parser, Debug)]
#[command(name = "gpres", version, about = "Resolutions and homology of graph products of groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
enum Command {
    /// List the nonempty complete subgraphs.
    Cliques(Flags),
    /// Build the clique-sum resolution and print its bases and boundaries.
    Resolve(Flags),
    /// Homology with trivial coefficients.
    Homology(Flags),
    /// Euler characteristic by the clique formula and from the resolution.
    Euler(Flags),
    /// Compare the presentation complex with the resolution in dimensions 1 to 3.
    Present(Flags),
    /// Check d∘d = 0 and the augmentation, optionally the inductive rebuild.
    Verify(Flags),
    /// Finiteness report.
    Fp(Flags),
}

/// Flags shared by every command.
#[derive(clap::Args, Debug, Clone, PartialEq, Eq)]
struct Flags {
    /// Problem file (JSON).
    file: PathBuf,
    /// Top degree of the resolution.
    #[arg(long = "max-dim")]
    max_dim: Option<usize>,
    /// A single homology degree.
    #[arg(long)]
    dim: Option<usize>,
    /// Coefficients: z or z/m.
    #[arg(long)]
    coeff: Option<String>,
    /// Also rebuild the resolution by induction on vertices and compare.
    #[arg(long = "check-induction")]
    check_induction: bool,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Cliques(_) => "cliques",
            Command::Resolve(_) => "resolve",
            Command::Homology(_) => "homology",
            Command::Euler(_) => "euler",
            Command::Present(_) => "present",
            Command::Verify(_) => "verify",
            Command::Fp(_) => "fp",
        }
    }

    fn flags(&self) -> &Flags {
        match self {
            Command::Cliques(f)
            | Command::Resolve(f)
            | Command::Homology(f)
            | Command::Euler(f)
            | Command::Present(f)
            | Command::Verify(f)
            | Command::Fp(f) => f,
        }
    }
}

// ---------------------------------------------------------------- input file

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    vertices: Vec<VertexEntry>,
    #[serde(default)]
    edges: Vec<(String, String)>,
    max_dim: Option<usize>,
    coeff: Option<String>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct VertexEntry {
    name: String,
    group: GroupEntry,
    chi: Option<Fraction>,
}

#[derive(Deserialize, Debug)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum GroupEntry {
    Trivial,
    Cyclic {
        n: u64,
    },
    InfiniteCyclic,
    Free {
        rank: usize,
    },
    FiniteTable {
        table: Vec<Vec<usize>>,
        #[serde(default)]
        identity: usize,
        names: Option<Vec<String>>,
    },
    Presented {
        generators: Vec<String>,
        #[serde(default)]
        relators: Vec<String>,
    },
}

#[derive(Deserialize, Debug)]
#[serde(untagged)]
enum Fraction {
    Integer(i64),
    Ratio { num: i64, den: i64 },
}

impl Fraction {
    fn value(&self) -> Result<BigRational> {
        match *self {
            Fraction::Integer(n) => Ok(BigRational::from_integer(n.into())),
            Fraction::Ratio { den: 0, .. } => Err(Error::input("fraction with zero denominator")),
            Fraction::Ratio { num, den } => Ok(BigRational::new(num.into(), den.into())),
        }
    }
}

/// A fully validated problem.
struct Problem {
    graph: Graph,
    /// As written, presentations included.
    specs: Vec<VertexGroupSpec>,
    /// `Some` when every vertex is a catalog group (presentations recognized).
    product: Option<Arc<GraphProduct>>,
    presentations: Vec<Option<Presentation>>,
    chis: HashMap<String, BigRational>,
    max_dim: usize,
    coeff: CoefficientRing,
    diagnostics: Vec<String>,
}

fn load(bytes: &[u8], flags: &Flags) -> Result<Problem> {
    let file: ProblemFile = serde_json::from_slice(bytes).map_err(|e| {
        let text = e.to_string();
        let message = text.rsplit_once(" at line ").map_or(text.as_str(), |(m, _)| m).to_string();
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message,
        }
    })?;
    let names: Vec<&str> = file.vertices.iter().map(|v| v.name.as_str()).collect();
    let edges: Vec<(&str, &str)> = file.edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let graph = Graph::new(&names, &edges)?;

    let mut diagnostics = Vec::new();
    let mut specs = Vec::new();
    let mut catalog = Vec::new();
    let mut presentations = Vec::new();
    let mut chis = HashMap::new();
    for v in &file.vertices {
        let kind = match &v.group {
            GroupEntry::Trivial => GroupKind::Trivial,
            GroupEntry::Cyclic { n } => GroupKind::cyclic(*n)?,
            GroupEntry::InfiniteCyclic => GroupKind::InfiniteCyclic,
            GroupEntry::Free { rank } => GroupKind::free(*rank)?,
            GroupEntry::FiniteTable { table, identity, names } => {
                GroupKind::FiniteTable(Arc::new(FiniteTable::new(table.clone(), *identity, names.clone())?))
            }
            GroupEntry::Presented { generators, relators } => {
                let rels = relators
                    .iter()
                    .enumerate()
                    .map(|(i, r)| {
                        parse_relator(r, generators).map_err(|e| match e {
                            Error::Parse { line, column, message } => Error::Parse {
                                line,
                                column,
                                message: format!("vertex '{}', relator {i}: {message}", v.name),
                            },
                            other => other,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                GroupKind::Presented(Presentation::new(generators.clone(), rels)?)
            }
        };
        if let Some(chi) = &v.chi {
            chis.insert(v.name.clone(), chi.value()?);
        }
        let (resolved, presentation) = match &kind {
            GroupKind::Presented(p) => {
                let recognized = p.recognize();
                match &recognized {
                    Some(k) => diagnostics.push(format!("vertex '{}': presentation {p} recognized as {k}", v.name)),
                    None => diagnostics.push(format!(
                        "vertex '{}': presentation {p} is not a catalog group; only cliques, euler (with chi) and fp apply",
                        v.name
                    )),
                }
                (recognized, Some(p.clone()))
            }
            k => (Some(k.clone()), None),
        };
        presentations.push(presentation);
        catalog.push(resolved.map(|k| VertexGroupSpec::new(v.name.clone(), k)));
        specs.push(VertexGroupSpec::new(v.name.clone(), kind));
    }
    let product = match catalog.into_iter().collect::<Option<Vec<_>>>() {
        Some(cat) => Some(Arc::new(GraphProduct::new(graph.clone(), &cat)?)),
        None => None,
    };
    let coeff = match flags.coeff.as_deref().or(file.coeff.as_deref()) {
        Some(text) => text.parse()?,
        None => CoefficientRing::Integers,
    };
    Ok(Problem {
        graph,
        specs,
        product,
        presentations,
        chis,
        max_dim: flags.max_dim.or(file.max_dim).unwrap_or(DEFAULT_MAX_DIM),
        coeff,
        diagnostics,
    })
}

impl Problem {
    fn product(&self) -> Result<&Arc<GraphProduct>> {
        self.product.as_ref().ok_or_else(|| {
            Error::unsupported("this command needs every vertex group to be a catalog group or a recognized presentation")
        })
    }
}

// ---------------------------------------------------------------- output

fn integer(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(n) => json!(n),
        Err(_) => json!(x.to_string()),
    }
}

fn fraction(x: &BigRational) -> Value {
    json!({"num": integer(x.numer()), "den": integer(x.denom())})
}

fn homology_json(h: &HomologyGroup) -> Value {
    json!({
        "dim": h.dim,
        "betti": h.betti,
        "torsion": h.torsion.iter().map(integer).collect::<Vec<_>>(),
    })
}

fn euler_json(s: &EulerSummary) -> Value {
    json!({
        "per_clique_terms": s.per_clique_terms.iter()
            .map(|(k, x)| json!({"clique": k, "term": fraction(x)}))
            .collect::<Vec<_>>(),
        "clique_formula_value": fraction(&s.clique_formula_value),
        "convention_with_empty": fraction(&s.convention_with_empty),
        "resolution_value": s.resolution_value.as_ref().map(fraction),
    })
}

fn census_json(c: &Census) -> Value {
    json!({"vertex": c.vertex, "gen_rel": c.gen_rel, "rel_gen": c.rel_gen, "gen3": c.gen3, "total": c.total()})
}

fn complex_json(c: &ChainComplex, with_boundaries: bool) -> Value {
    let mut out = json!({
        "ring": c.ring().to_string(),
        "max_dim": c.max_dim(),
        "length": c.length(),
        "ranks": c.ranks(),
    });
    if with_boundaries {
        let bases: Vec<Vec<String>> = (0..=c.max_dim()).map(|k| c.basis(k).iter().map(ToString::to_string).collect()).collect();
        let boundaries: Vec<Value> = (1..=c.max_dim())
            .map(|k| {
                let d = c.boundary(k);
                let entries: Vec<Value> = d
                    .nonzero()
                    .map(|(r, col, x)| {
                        json!({"row": d.rows()[r].to_string(), "col": d.cols()[col].to_string(), "value": x.to_string()})
                    })
                    .collect();
                json!({"dim": k, "entries": entries})
            })
            .collect();
        out["bases"] = json!(bases);
        out["boundaries"] = json!(boundaries);
    }
    out
}

fn induction_json(r: &InductionReport) -> Value {
    json!({
        "passed": r.passed(),
        "single_step_mismatch": r.single_step.as_ref().map(ToString::to_string),
        "recursive_mismatch": r.recursive.as_ref().map(ToString::to_string),
    })
}

/// Result payload and whether every verification in it passed.
struct Outcome {
    payload: Value,
    verified: bool,
}

impl Outcome {
    fn ok(payload: Value) -> Self {
        Outcome { payload, verified: true }
    }
}

// ---------------------------------------------------------------- commands

fn cliques(p: &Problem) -> Outcome {
    let list: Vec<Vec<&str>> = p.graph.cliques(None).iter().map(|k| k.names(&p.graph)).collect();
    Outcome::ok(json!({
        "count": list.len(),
        "clique_number": p.graph.clique_number(),
        "cliques": list,
    }))
}

fn with_induction(mut out: Outcome, p: &Problem, flags: &Flags, ring: &CoefficientRing) -> Result<Outcome> {
    if flags.check_induction {
        let r = check_induction(p.product()?, ring, p.max_dim)?;
        out.verified &= r.passed();
        out.payload["induction"] = induction_json(&r);
    }
    Ok(out)
}

fn verify_json(c: &ChainComplex) -> (Value, bool) {
    let r = verify_complex(c);
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| json!({"dim": v.dim, "label": v.label.as_ref().map(ToString::to_string), "detail": v.detail}))
        .collect();
    (
        json!({"passed": r.passed(), "checked_compositions": r.checked_compositions, "violations": violations}),
        r.passed(),
    )
}

fn resolve(p: &Problem, flags: &Flags) -> Result<Outcome> {
    let c = clique_sum_resolution(p.product()?, &p.coeff, p.max_dim)?;
    let (verify, passed) = verify_json(&c);
    let mut payload = complex_json(&c, true);
    payload["verify"] = verify;
    with_induction(Outcome { payload, verified: passed }, p, flags, &p.coeff)
}

fn verify(p: &Problem, flags: &Flags) -> Result<Outcome> {
    let c = clique_sum_resolution(p.product()?, &p.coeff, p.max_dim)?;
    let (verify, passed) = verify_json(&c);
    let payload = json!({"complex": complex_json(&c, false), "verify": verify});
    with_induction(Outcome { payload, verified: passed }, p, flags, &p.coeff)
}

/// The complex is built over the integers; other coefficients go through
/// the universal coefficient theorem.
fn homology_cmd(p: &Problem, flags: &Flags) -> Result<Outcome> {
    let degrees: Vec<usize> = match flags.dim {
        Some(k) => vec![k],
        None => (0..=p.max_dim).collect(),
    };
    let top = degrees.iter().max().copied().unwrap_or(0) + 1;
    let c = clique_sum_resolution(p.product()?, &CoefficientRing::Integers, top.max(p.max_dim))?;
    let (verify, passed) = verify_json(&c);
    let h = trivialize(&c);
    let groups = degrees
        .iter()
        .map(|&k| homology(&h, k, &p.coeff).map(|g| homology_json(&g)))
        .collect::<Result<Vec<_>>>()?;
    let payload = json!({"coeff": p.coeff.to_string(), "groups": groups, "ranks": c.ranks(), "verify": verify});
    with_induction(Outcome { payload, verified: passed }, p, flags, &CoefficientRing::Integers)
}

fn euler(p: &Problem) -> Result<Outcome> {
    let summary = match &p.product {
        Some(gp) => euler_summary(gp, &p.chis)?,
        None => {
            let mut chis = p.chis.clone();
            for s in &p.specs {
                let kind = match &s.kind {
                    GroupKind::Presented(pr) => pr.recognize(),
                    k => Some(k.clone()),
                };
                if let Some(x) = kind.as_ref().and_then(vertex_euler) {
                    chis.insert(s.name.clone(), x);
                }
            }
            chiswell_euler(&p.graph, &chis)?
        }
    };
    let verified = summary.resolution_value.as_ref().is_none_or(|r| *r == summary.convention_with_empty);
    Ok(Outcome {
        payload: euler_json(&summary),
        verified,
    })
}

fn present(p: &Problem) -> Result<Outcome> {
    let gp = p.product()?;
    let vertex: Vec<Presentation> = p
        .presentations
        .iter()
        .enumerate()
        .map(|(v, given)| match given {
            Some(pr) => Ok(pr.clone()),
            None => canonical_presentation(gp.graph().name(v), gp.group(v)),
        })
        .collect::<Result<_>>()?;
    let pc = PresentationComplex::new(gp, Some(&vertex), &p.coeff)?;
    let theorem = clique_sum_resolution(gp, &p.coeff, 3)?;
    let r = compare_presentation_complex(&pc, &theorem)?;
    let payload = json!({
        "presentation": pc.presentation.presentation.to_string(),
        "generators": pc.presentation.presentation.generators().len(),
        "relators": pc.presentation.presentation.relators().len(),
        "census": census_json(&r.census),
        "expected_census": census_json(&r.expected_census),
        "squares_vanish": r.squares_vanish,
        "mismatch": r.mismatch.as_ref().map(ToString::to_string),
        "passed": r.passed(),
        "ring": p.coeff.to_string(),
    });
    Ok(Outcome {
        payload,
        verified: r.passed(),
    })
}

fn fp(p: &Problem) -> Result<Outcome> {
    let r = fp_report(&p.graph, &p.specs, p.max_dim)?;
    let vertices: Vec<Value> = r
        .vertices
        .iter()
        .map(|v| json!({"name": v.name, "kind": v.kind, "fp_through": v.fp_through, "length": v.length, "fp": v.fp}))
        .collect();
    let verdict = match r.fp {
        Some(true) => "FP",
        Some(false) => "not FP over the integers",
        None => "unknown",
    };
    Ok(Outcome::ok(json!({
        "probe_dim": r.probe_dim,
        "vertices": vertices,
        "fp_through": r.fp_through,
        "cd_bound": r.cd_bound,
        "fp": r.fp,
        "verdict": verdict,
        "ranks": r.ranks,
    })))
}

fn execute(command: &Command, problem: &Problem) -> Result<Outcome> {
    let flags = command.flags();
    match command {
        Command::Cliques(_) => Ok(cliques(problem)),
        Command::Resolve(_) => resolve(problem, flags),
        Command::Homology(_) => homology_cmd(problem, flags),
        Command::Euler(_) => euler(problem),
        Command::Present(_) => present(problem),
        Command::Verify(_) => verify(problem, flags),
        Command::Fp(_) => fp(problem),
    }
}

fn error_json(e: &Error) -> Value {
    let kind = match e {
        Error::Input(_) => "input",
        Error::Parse { .. } => "parse",
        Error::Usage(_) => "usage",
        Error::Unsupported(_) => "unsupported",
        Error::Consistency(_) => "consistency",
        Error::NotFp(_) => "not_fp",
    };
    let mut out = json!({"kind": kind, "message": e.to_string()});
    if let Error::Parse { line, column, .. } = e {
        out["line"] = json!(line);
        out["column"] = json!(column);
    }
    out
}

/// Runs one command and returns the report with its exit code.
fn report(file_bytes: &[u8], command: &str, flags_echo: Value, run: impl FnOnce() -> Result<(Outcome, Vec<String>)>) -> (Value, i32) {
    let digest = hex::encode(Sha256::digest(file_bytes));
    let mut out = Map::new();
    out.insert("command".into(), json!({"name": command, "flags": flags_echo}));
    out.insert("input_digest".into(), json!(digest));
    let code = match run() {
        Ok((outcome, diagnostics)) => {
            let code = if outcome.verified { EXIT_OK } else { EXIT_VERIFY };
            out.insert("status".into(), json!(if code == EXIT_OK { "ok" } else { "verification_failed" }));
            out.insert("result".into(), outcome.payload);
            out.insert("diagnostics".into(), json!(diagnostics));
            code
        }
        Err(e) => {
            let code = match e {
                Error::Consistency(_) => EXIT_VERIFY,
                _ => EXIT_INPUT,
            };
            out.insert("status".into(), json!("error"));
            out.insert("result".into(), Value::Null);
            out.insert("diagnostics".into(), json!([]));
            out.insert("error".into(), error_json(&e));
            code
        }
    };
    (Value::Object(out), code)
}

fn run_command(cmd: &Command) -> i32 {
    let flags = cmd.flags();
    let echo = json!({
        "max_dim": flags.max_dim,
        "dim": flags.dim,
        "coeff": flags.coeff,
        "check_induction": flags.check_induction,
    });
    let read = std::fs::read(&flags.file);
    let bytes = read.as_deref().unwrap_or_default().to_vec();
    let (value, code) = report(&bytes, cmd.name(), echo, || {
        let bytes = read.as_ref().map_err(|e| Error::Input(format!("cannot read {}: {e}", flags.file.display())))?;
        let problem = load(bytes, flags)?;
        let outcome = execute(cmd, &problem)?;
        Ok((outcome, problem.diagnostics))
    });
    if let Some(Value::Object(err)) = value.get("error") {
        eprintln!("gpres: {}", err["message"].as_str().unwrap_or_default());
    }
    let mut text = serde_json::to_string_pretty(&value).expect("JSON values always serialize");
    text.push('\n');
    match &flags.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("gpres: cannot write {}: {e}", path.display());
                return EXIT_INPUT;
            }
        }
        None => print!("{text}"),
    }
    code
}

/// Entry point for the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            let _ = e.print();
            return code;
        }
    };
    run_command(&cli.command)
}
