//! The `shexd` command line: `check-schema`, `validate` and `repair`.
//!
//! Exit codes: `check-schema` 0 well-defined, 2 not well-defined, 3 parse or
//! IO error; `validate` 0 valid, 1 invalid, 3 input error, 4 resource bound;
//! `repair` 0 found, 1 none within the edit budget, 3 input error, 4 budget.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as Json};

use crate::matching::{CompiledSchema, Sign, Typing, DEFAULT_BAG_BOUND};
use crate::rdf::{parse_data, DataFormat, Graph, PrefixMap, Term, Triple};
use crate::repair::{enumerate_repairs, RepairBudget, TermTyping};
use crate::schema::{parse_schema, schema_to_json, Schema};
use crate::validation::{witness_json, FailureReport, Options, ValidateError, Validator};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_NOT_WELL_DEFINED: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "shexd", version, about = "Shape Expressions validation with verifiable witnesses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a schema and check that it is well-defined.
    CheckSchema(CheckArgs),
    /// Validate nodes against shapes and emit a global typing witness.
    Validate(ValidateArgs),
    /// Search for minimal edits that make the typing hold.
    Repair(RepairArgs),
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long)]
    schema: PathBuf,
    /// Print the schema as JSON.
    #[arg(long)]
    json: bool,
    /// Print the negated shapes reachable from each label.
    #[arg(long)]
    verbose: bool,
}

#[derive(Debug, Args)]
struct InputArgs {
    #[arg(long)]
    schema: PathBuf,
    /// Data file; repeat to merge several.
    #[arg(long, required = true)]
    data: Vec<PathBuf>,
    /// nt or ttl-lite.
    #[arg(long, default_value = "ttl-lite")]
    format: DataFormat,
    /// Node of a typing entry: `<iri>`, `prefix:local` or `_:label`.
    #[arg(long)]
    node: Vec<String>,
    /// Shape of a typing entry, paired with `--node` in order.
    #[arg(long)]
    shape: Vec<String>,
    /// Make every `--node`/`--shape` entry negative.
    #[arg(long)]
    negate: bool,
    /// JSON typing: an array of {"node", "shape", "sign"} entries.
    #[arg(long)]
    typing_file: Option<PathBuf>,
    /// Emit JSON instead of the human report.
    #[arg(long)]
    json: bool,
    /// Prune candidates by depth-1 look-ahead.
    #[arg(long)]
    lookahead: bool,
    /// Largest bag the exhaustive matcher accepts.
    #[arg(long, default_value_t = DEFAULT_BAG_BOUND)]
    bag_bound: usize,
    #[arg(long)]
    verbose: bool,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Write the witness JSON to this file.
    #[arg(long)]
    witness_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RepairArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 2)]
    max_edits: usize,
}

/// A failure that ends the run with an exit code and a message.
struct Exit(i32, String);

fn input_err(msg: impl std::fmt::Display) -> Exit {
    Exit(EXIT_INPUT, format!("error: {msg}"))
}

fn read(path: &Path) -> Result<String, Exit> {
    std::fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::CheckSchema(a) => check_schema(&a, out, err),
        Command::Validate(a) => validate(&a, out, err),
        Command::Repair(a) => repair(&a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(Exit(code, msg)) => {
            let _ = writeln!(err, "{msg}");
            code
        }
    }
}

fn load_schema(path: &Path) -> Result<Schema, Exit> {
    parse_schema(&read(path)?).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn check_schema(a: &CheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Exit> {
    let schema = load_schema(&a.schema)?;
    for lint in schema.lints() {
        let _ = writeln!(err, "{lint}");
    }
    if let Err(e) = schema.check_well_defined() {
        let _ = writeln!(err, "error: {e}");
        return Ok(EXIT_NOT_WELL_DEFINED);
    }
    if a.json {
        let _ = writeln!(out, "{}", schema_to_json(&schema));
    } else {
        let _ = writeln!(out, "ok: {} shapes, well-defined", schema.shapes.len());
    }
    if a.verbose {
        for label in schema.labels() {
            let neg: Vec<String> = schema.negated_shapes(label).iter().map(|l| format!("<{l}>")).collect();
            let _ = writeln!(err, "<{label}> negates: {}", if neg.is_empty() { "-".into() } else { neg.join(" ") });
        }
    }
    Ok(EXIT_OK)
}

fn pretty(j: &Json) -> String {
    serde_json::to_string_pretty(j).expect("JSON values serialize")
}

struct Loaded {
    schema: CompiledSchema,
    triples: Vec<Triple>,
    graph: Graph,
    prefixes: PrefixMap,
}

fn load(a: &InputArgs) -> Result<Loaded, Exit> {
    let schema = load_schema(&a.schema)?;
    let mut prefixes = schema.prefixes.clone();
    let mut triples = Vec::new();
    let several = a.data.len() > 1;
    for (i, path) in a.data.iter().enumerate() {
        let ts = parse_data(&read(path)?, a.format).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
        prefixes.extend(ts.prefixes);
        // Blank node labels are local to a document.
        let relabel = |t: Term| match t {
            Term::Blank(b) if several => Term::Blank(format!("f{}_{b}", i + 1)),
            t => t,
        };
        triples.extend(ts.triples.into_iter().map(|t| Triple {
            subject: relabel(t.subject),
            predicate: t.predicate,
            object: relabel(t.object),
        }));
    }
    let graph = Graph::build(&triples);
    let schema = CompiledSchema::new(schema).with_bag_bound(a.bag_bound);
    Ok(Loaded {
        schema,
        triples,
        graph,
        prefixes,
    })
}

fn resolve_term(s: &str, prefixes: &PrefixMap) -> Result<Term, Exit> {
    let s = s.trim();
    if let Some(iri) = s.strip_prefix('<').and_then(|r| r.strip_suffix('>')) {
        return Ok(Term::iri(iri));
    }
    if let Some(b) = s.strip_prefix("_:") {
        return Ok(Term::blank(b));
    }
    if let Some((p, local)) = s.split_once(':') {
        if let Some(ns) = prefixes.get(p) {
            return Ok(Term::iri(format!("{ns}{local}")));
        }
        if local.starts_with("//") {
            return Ok(Term::iri(s));
        }
        return Err(input_err(format!("unknown prefix in node '{s}'")));
    }
    Err(input_err(format!("cannot read node '{s}': use <iri>, prefix:local or _:label")))
}

/// The typing given by `--node/--shape` pairs and `--typing-file`.
fn typing0(a: &InputArgs, l: &Loaded) -> Result<TermTyping, Exit> {
    if a.node.len() != a.shape.len() {
        return Err(input_err("--node and --shape must be given in pairs"));
    }
    let mut out = TermTyping::new();
    let sign = if a.negate { Sign::Neg } else { Sign::Pos };
    for (n, s) in a.node.iter().zip(&a.shape) {
        let term = resolve_term(n, &l.prefixes)?;
        let shape = l
            .schema
            .schema
            .resolve_label(s)
            .ok_or_else(|| input_err(format!("unknown shape '{s}'")))?;
        out.push((term, shape, sign));
    }
    if let Some(path) = &a.typing_file {
        let t = witness_json::typing_from_json(&read(path)?, &l.graph, &l.schema.schema)
            .map_err(|e| input_err(format!("{}: {e}", path.display())))?;
        out.extend(t.iter().map(|(n, s, sign)| (l.graph.term(*n).clone(), s.clone(), *sign)));
    }
    if out.is_empty() {
        return Err(input_err("nothing to check: give --node/--shape pairs or --typing-file"));
    }
    Ok(out)
}

fn to_typing(t: &TermTyping, graph: &Graph) -> Result<Typing, Exit> {
    t.iter()
        .map(|(term, s, sign)| {
            graph
                .node(term)
                .map(|n| (n, s.clone(), *sign))
                .ok_or_else(|| input_err(format!("node {term} does not occur in the data")))
        })
        .collect()
}

/// Shortest prefixed form of an N-Triples key, for human output.
fn compact(key: &str, prefixes: &PrefixMap) -> String {
    let Some(iri) = key.strip_prefix('<').and_then(|r| r.strip_suffix('>')) else {
        return key.to_string();
    };
    prefixes
        .iter()
        .filter(|(_, ns)| !ns.is_empty() && iri.starts_with(ns.as_str()))
        .max_by_key(|(_, ns)| ns.len())
        .map(|(p, ns)| format!("{p}:{}", &iri[ns.len()..]))
        .unwrap_or_else(|| key.to_string())
}

fn exit_for(e: &ValidateError) -> i32 {
    match e {
        ValidateError::Invalid(_) | ValidateError::IncompatibleInitialTyping { .. } => EXIT_INVALID,
        e if e.is_resource_bound() => EXIT_RESOURCE,
        _ => EXIT_INPUT,
    }
}

fn failure_json(report: &FailureReport, graph: &Graph) -> Json {
    let failed: Vec<Json> = report
        .failed
        .iter()
        .map(|f| {
            json!({
                "node": graph.node_key(f.node),
                "shape": f.shape.to_string(),
                "candidates": f.candidates.to_string(),
                "certain": f.certain,
                "causes": f.leaves.iter().map(|(n, s)| json!({"node": graph.node_key(*n), "shape": s.to_string()})).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({"valid": false, "failed": failed})
}

fn validate(a: &ValidateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Exit> {
    let l = load(&a.input)?;
    let t0 = to_typing(&typing0(&a.input, &l)?, &l.graph)?;
    let v = match Validator::with_negative_queries(&l.graph, &l.schema, &t0) {
        Ok(v) => v.with_options(Options {
            lookahead: a.input.lookahead,
        }),
        Err(e) => return Err(Exit(exit_for(&e), format!("error: {e}"))),
    };
    let outcome = match v.flooding(&t0) {
        Ok(o) => o,
        Err(ValidateError::Invalid(report)) => {
            if a.input.json {
                let _ = writeln!(out, "{}", pretty(&failure_json(&report, &l.graph)));
            } else {
                let _ = writeln!(out, "invalid");
                let text = report.render(&l.graph);
                for line in text.lines() {
                    let _ = writeln!(out, "  {line}");
                }
            }
            return Ok(EXIT_INVALID);
        }
        Err(e) => return Err(Exit(exit_for(&e), format!("error: {e}"))),
    };
    if let Err(e) = v.verify(&outcome.witness) {
        return Err(Exit(EXIT_INVALID, format!("error: witness failed verification: {e}")));
    }
    let json = pretty(&witness_json::to_json(&outcome.witness, &l.graph));
    if let Some(path) = &a.witness_out {
        std::fs::write(path, format!("{json}\n")).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    }
    if a.input.json {
        let _ = writeln!(out, "{json}");
    } else {
        let w = &outcome.witness;
        let _ = writeln!(out, "valid: {} positive typing entries", w.typing.positives().count());
        let mut rows: Vec<(String, String, String, String)> = Vec::new();
        for ((n, s), lw) in &w.lw {
            for (e, c) in lw.iter() {
                let edge = l.graph.edge(*e);
                let prop = format!(
                    "{}{}",
                    if edge.prop.inverse { "^" } else { "" },
                    compact(&format!("<{}>", edge.prop.iri), &l.prefixes)
                );
                let consumer = match c {
                    crate::schema::TripleConsumer::Extra(q) => format!(
                        "extra:{}{}",
                        if q.inverse { "^" } else { "" },
                        compact(&format!("<{}>", q.iri), &l.prefixes)
                    ),
                    c => c.to_string(),
                };
                rows.push((
                    compact(&l.graph.node_key(*n), &l.prefixes),
                    format!("<{s}>"),
                    format!("{prop} {}", compact(&l.graph.node_key(edge.target), &l.prefixes)),
                    consumer,
                ));
            }
        }
        rows.sort();
        for (n, s, e, c) in rows {
            let _ = writeln!(out, "  {n} {s}  {e}  -> {c}");
        }
    }
    if a.input.verbose {
        let s = outcome.stats;
        let _ = writeln!(
            err,
            "candidates checked: {}, certain skips: {}, failures: {}, invalidations: {}",
            s.candidates_checked, s.certain_skips, s.failures, s.invalidations
        );
    }
    Ok(EXIT_OK)
}

fn repair(a: &RepairArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Exit> {
    let l = load(&a.input)?;
    let t0 = typing0(&a.input, &l)?;
    let budget = RepairBudget {
        max_edits: a.max_edits,
        ..RepairBudget::default()
    };
    let report = match enumerate_repairs(&l.triples, &l.schema, &t0, budget) {
        Ok(r) => r,
        Err(e) if e.is_resource_bound() => return Err(Exit(EXIT_RESOURCE, format!("error: {e}"))),
        Err(e) => return Err(input_err(e)),
    };
    if a.input.json || report.found() {
        let _ = writeln!(out, "{}", pretty(&report.to_json()));
    }
    if a.input.verbose {
        let _ = writeln!(err, "edit sets checked: {}", report.checked);
    }
    if report.found() {
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(err, "no repair within {} edits", a.max_edits);
        Ok(EXIT_INVALID)
    }
}
