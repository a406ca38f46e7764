//! Command-line front end for `drgtriples`.
//!
//! [`run_command`] parses an argument vector, runs one subcommand and
//! returns the exit code with everything that would be printed. Exit code 0
//! means success, 2 a proved infeasibility and 1 an operational error.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use drgtriples::constraints::{apply_rules, load_rules, parse_cell, rules_for, ConstraintRule};
use drgtriples::drg::{
    eigenmatrices, intersection_numbers, krein_table, spectrum, DrgError, IntersectionArray, ParameterTable,
};
use drgtriples::exactmath::RatMatrix;
use drgtriples::oracle::{brute_force_p_table_with, build_graph, check_against_family, CheckOptions, GRAPH_NAMES};
use drgtriples::pipeline::{run_pipeline, PipelineOptions, Verdict};
use drgtriples::symmetry::{symmetrize_families, TriplePermutation};
use drgtriples::triples::{
    assemble_system, cell_index, enumerate_points, solve_family, EnumerationLimits, KreinInput, TripleConfig,
    TripleError, TripleFamily,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;

const ARRAY_HELP: &str = "Intersection array {b0,...,b_(d-1);c1,...,c_d}, whitespace allowed, e.g. \"{55,54,2;1,1,54}\"";

/// Most points listed in `triples` and `symmetrize` output.
const LISTED_POINTS: usize = 200;

#[derive(Debug, Parser)]
#[command(
    name = "drgtriples",
    version,
    about = "Exact parameters, triple intersection numbers and feasibility checks for distance-regular graphs",
    after_help = "Arrays are written {b0,...,b_(d-1);c1,...,c_d} with optional whitespace, \
                  for example \"{3,2;1,1}\" or \"{55,54,2;1,1,54}\".\n\
                  Exit codes: 0 success, 2 proved infeasible, 1 error."
)]
struct Cli {
    /// Emit a machine-readable JSON document.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Intersection numbers p^h_ij and valencies.
    Params(ArrayArg),
    /// Eigenvalues with multiplicities.
    Spectrum(ArrayArg),
    /// Eigenmatrices P, Q and Krein parameters q^h_ij.
    Krein(ArrayArg),
    /// Parametric solution and integer points for one configuration.
    Triples(FamilyArgs),
    /// The family closed under the relabellings fixing its configuration.
    Symmetrize(FamilyArgs),
    /// Full pipeline with verdict and certificate.
    ProveMoore(ProveArgs),
    /// Brute-force triple tables of a bundled graph against the solver.
    OracleCheck(OracleArgs),
}

#[derive(Debug, Args)]
struct ArrayArg {
    #[arg(help = ARRAY_HELP)]
    array: String,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(help = ARRAY_HELP)]
    array: String,
    /// Distances d(u,v),d(u,w),d(v,w).
    #[arg(long, value_name = "i,j,k")]
    config: String,
    /// Add the Krein-derived equations.
    #[arg(long)]
    use_krein: bool,
    /// Constraint rule file (TOML) applied to the configuration.
    #[arg(long, value_name = "FILE")]
    rules: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ProveArgs {
    #[arg(help = ARRAY_HELP)]
    array: String,
    /// Add the Krein-derived equations.
    #[arg(long)]
    use_krein: bool,
    /// Constraint rule file (TOML) replacing the bundled lattice rules.
    #[arg(long, value_name = "FILE")]
    rules: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    /// Graph name; one of the bundled constructions.
    #[arg(long, help = format!("Bundled graph: {}", GRAPH_NAMES.join(", ")))]
    graph: String,
    /// Distances d(u,v),d(u,w),d(v,w); every realizable configuration when omitted.
    #[arg(long, value_name = "i,j,k")]
    config: Option<String>,
    /// Seed for sampling on graphs too large for an exhaustive check.
    #[arg(long, value_name = "N")]
    sample_seed: Option<u64>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Drg(#[from] DrgError),
    #[error(transparent)]
    Triple(#[from] TripleError),
    #[error("{0}")]
    Other(String),
}

/// Output of one subcommand before rendering.
struct Outcome {
    json: Value,
    text: String,
    infeasible: bool,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Outcome { json, text, infeasible: false }
    }
}

/// Runs one command line; `argv[0]` is the program name.
pub fn run_command<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            return (code, e.to_string());
        }
    };
    let json_mode = cli.json;
    match dispatch(cli.command) {
        Ok(out) => {
            let code = if out.infeasible { EXIT_INFEASIBLE } else { EXIT_OK };
            let body = if json_mode { render_json(&out.json) } else { out.text };
            (code, body)
        }
        Err(Failure::Infeasible(message)) => {
            let body = if json_mode {
                render_json(&json!({ "verdict": "INFEASIBLE", "reason": message }))
            } else {
                format!("INFEASIBLE: {message}\n")
            };
            (EXIT_INFEASIBLE, body)
        }
        Err(Failure::Error(e)) => {
            let body = if json_mode { render_json(&json!({ "error": e.to_string() })) } else { format!("error: {e}\n") };
            (EXIT_ERROR, body)
        }
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

enum Failure {
    /// The parameters themselves are impossible.
    Infeasible(String),
    Error(CliError),
}

impl<E: Into<CliError>> From<E> for Failure {
    fn from(e: E) -> Self {
        match e.into() {
            CliError::Drg(
                e @ (DrgError::NonIntegralParameters { .. }
                | DrgError::NonIntegralMultiplicity { .. }
                | DrgError::NegativeKrein { .. }),
            ) => Failure::Infeasible(e.to_string()),
            CliError::Triple(e @ TripleError::Infeasible { .. }) => Failure::Infeasible(e.to_string()),
            other => Failure::Error(other),
        }
    }
}

fn other(message: impl Into<String>) -> Failure {
    Failure::Error(CliError::Other(message.into()))
}

fn dispatch(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Params(a) => params(&parse_array(&a.array)?),
        Command::Spectrum(a) => spectrum_cmd(&parse_array(&a.array)?),
        Command::Krein(a) => krein_cmd(&parse_array(&a.array)?),
        Command::Triples(a) => family_cmd(&a, false),
        Command::Symmetrize(a) => family_cmd(&a, true),
        Command::ProveMoore(a) => prove(&a),
        Command::OracleCheck(a) => oracle(&a),
    }
}

fn parse_array(text: &str) -> Result<IntersectionArray, Failure> {
    Ok(text.parse::<IntersectionArray>()?)
}

fn parse_config(text: &str) -> Result<TripleConfig, Failure> {
    text.parse().map_err(|_| other(format!("cannot parse config {text:?}; expected i,j,k")))
}

fn read_rules(path: &PathBuf) -> Result<Vec<ConstraintRule>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| other(format!("cannot read {}: {e}", path.display())))?;
    load_rules(&text).map_err(|e| other(format!("{}: {e}", path.display())))
}

fn params(arr: &IntersectionArray) -> Result<Outcome, Failure> {
    let pt = intersection_numbers(arr)?;
    let d = pt.diameter();
    let mut text = format!("array {arr}\nv = {}\nk = {:?}\n", pt.v, pt.k);
    for h in 0..=d {
        for i in 0..=d {
            let row: Vec<String> = (0..=d).map(|j| pt.p(h, i, j).to_string()).collect();
            text.push_str(&format!("p^{h}_{i}j: {}\n", row.join(" ")));
        }
    }
    let json = json!({ "array": arr.to_string(), "diameter": d, "v": pt.v, "k": pt.k, "p": pt.p });
    Ok(Outcome::ok(json, text))
}

fn spectrum_cmd(arr: &IntersectionArray) -> Result<Outcome, Failure> {
    let pt = intersection_numbers(arr)?;
    let spec = spectrum(arr)?;
    let mut text = format!("array {arr}\nv = {}\n", pt.v);
    let mut pairs = Vec::new();
    for (theta, m) in spec.pairs() {
        text.push_str(&format!("{theta}^{m}\n"));
        pairs.push(json!({ "eigenvalue": theta, "multiplicity": m }));
    }
    Ok(Outcome::ok(json!({ "array": arr.to_string(), "v": pt.v, "spectrum": pairs }), text))
}

fn matrix_text(name: &str, m: &RatMatrix) -> String {
    let mut s = format!("{name}:\n");
    for row in m.to_rows() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>10}")).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}

fn krein_cmd(arr: &IntersectionArray) -> Result<Outcome, Failure> {
    let em = eigenmatrices(arr)?;
    let kt = krein_table(arr)?;
    let d = arr.diameter();
    let mut text = format!("array {arr}\n{}{}", matrix_text("P", &em.p), matrix_text("Q", &em.q));
    for h in 0..=d {
        for i in 0..=d {
            let row: Vec<String> = (0..=d).map(|j| kt.get(h, i, j).to_string()).collect();
            text.push_str(&format!("q^{h}_{i}j: {}\n", row.join(" ")));
        }
    }
    let vanishing = kt.nontrivial_vanishing();
    text.push_str(&format!("vanishing with all indices non-zero: {vanishing:?}\n"));
    let json = json!({
        "array": arr.to_string(),
        "p_matrix": em.p.to_rows(),
        "q_matrix": em.q.to_rows(),
        "krein": kt.q,
        "nontrivial_vanishing": vanishing,
    });
    Ok(Outcome::ok(json, text))
}

struct Built {
    pt: ParameterTable,
    family: TripleFamily,
    notes: Vec<String>,
}

fn build_family(a: &FamilyArgs) -> Result<Built, Failure> {
    let arr = parse_array(&a.array)?;
    let pt = intersection_numbers(&arr)?;
    let cfg = parse_config(&a.config)?;
    let mut notes = Vec::new();
    let krein_parts = if a.use_krein {
        match (krein_table(&arr), eigenmatrices(&arr)) {
            (Ok(kt), Ok(em)) => Some((kt, em.q)),
            (Err(e), _) | (_, Err(e)) => {
                notes.push(format!("Krein equations unavailable: {e}"));
                None
            }
        }
    } else {
        None
    };
    let krein = krein_parts.as_ref().map(|(table, q)| KreinInput { table, q });
    let mut family = solve_family(&assemble_system(&pt, krein, cfg)?)?;
    if let Some(path) = &a.rules {
        let rules = rules_for(&read_rules(path)?, cfg);
        notes.push(format!("{} rule(s) apply to {cfg}", rules.len()));
        family = apply_rules(&family, &rules).map_err(|e| other(e.to_string()))?;
    }
    Ok(Built { pt, family, notes })
}

fn family_json(fam: &TripleFamily, points: &[Vec<i64>]) -> Value {
    let names = fam.parameter_names();
    let mut values = BTreeMap::new();
    for name in &names {
        if let Some((i, j, h)) = parse_cell(name) {
            let cell = cell_index(fam.d, i, j, h);
            let set: BTreeSet<i64> = points.iter().map(|p| p[cell]).collect();
            values.insert(name.to_string(), set.into_iter().collect::<Vec<_>>());
        }
    }
    let ranges: BTreeMap<String, (i64, i64)> = (0..fam.num_cells())
        .filter_map(|c| {
            TripleFamily::cell_range(points, c).map(|r| (drgtriples::triples::cell_name(fam.d, c), r))
        })
        .collect();
    let table: BTreeMap<String, String> = fam.table().into_iter().collect();
    json!({
        "config": fam.config,
        "dimension": fam.dimension(),
        "parameters": names,
        "parameter_values": values,
        "table": table,
        "point_count": points.len(),
        "ranges": ranges,
        "points": points.iter().take(LISTED_POINTS).collect::<Vec<_>>(),
    })
}

fn family_text(fam: &TripleFamily, points: &[Vec<i64>], json: &Value) -> String {
    let mut s = format!("config {}  dimension {}\n", fam.config, fam.dimension());
    for (cell, expr) in fam.table() {
        s.push_str(&format!("{cell} = {expr}\n"));
    }
    if let Some(values) = json["parameter_values"].as_object() {
        for (name, v) in values {
            s.push_str(&format!("{name} in {v}\n"));
        }
    }
    s.push_str(&format!("{} integer point(s)\n", points.len()));
    s
}

fn family_cmd(a: &FamilyArgs, symmetrize: bool) -> Result<Outcome, Failure> {
    let Built { pt, family, mut notes } = build_family(a)?;
    let mut relations = Vec::new();
    let family = if symmetrize {
        let stab = TriplePermutation::stabilizer(family.config);
        let sym = symmetrize_families(&family, &stab)?;
        relations = sym.relations.iter().map(|r| r.text.clone()).collect();
        if sym.projected.is_empty() {
            notes.push("relabelling adds no equation".into());
        }
        sym.family
    } else {
        family
    };
    let points = enumerate_points(&family, EnumerationLimits::default())?;
    let mut json = family_json(&family, &points);
    json["array"] = json!(format!("{{{}}}", array_body(&pt)));
    json["notes"] = json!(notes);
    if symmetrize {
        json["relations"] = json!(relations);
    }
    let mut text = family_text(&family, &points, &json);
    for r in &relations {
        text.push_str(&format!("relation: {r}\n"));
    }
    for n in &notes {
        text.push_str(&format!("note: {n}\n"));
    }
    let infeasible = points.is_empty();
    if infeasible {
        text.push_str("INFEASIBLE: no integer point\n");
        json["verdict"] = json!("INFEASIBLE");
    }
    Ok(Outcome { json, text, infeasible })
}

/// `b0,...;c1,...` recovered from the parameter table.
fn array_body(pt: &ParameterTable) -> String {
    let d = pt.diameter();
    let b: Vec<String> = (0..d).map(|i| pt.p(i, 1, i + 1).to_string()).collect();
    let c: Vec<String> = (1..=d).map(|i| pt.p(i, 1, i - 1).to_string()).collect();
    format!("{};{}", b.join(","), c.join(","))
}

fn prove(a: &ProveArgs) -> Result<Outcome, Failure> {
    let arr = parse_array(&a.array)?;
    let mut opts = PipelineOptions { use_krein: a.use_krein, ..PipelineOptions::default() };
    if let Some(path) = &a.rules {
        opts.rules = Some(read_rules(path)?);
    }
    let report = run_pipeline(&arr, &opts).map_err(|e| other(e.to_string()))?;
    let json: Value = serde_json::from_str(&report.to_json()).expect("report json");
    Ok(Outcome { json, text: report.render_text(), infeasible: report.verdict == Verdict::Infeasible })
}

fn oracle(a: &OracleArgs) -> Result<Outcome, Failure> {
    let g = build_graph(&a.graph).map_err(|e| other(e.to_string()))?;
    let dist = g.distances();
    let pt = brute_force_p_table_with(&g, &dist).map_err(|e| other(e.to_string()))?;
    let configs = match &a.config {
        Some(c) => vec![parse_config(c)?],
        None => TripleConfig::all_realizable(&pt),
    };
    let mut opts = CheckOptions::default();
    if let Some(seed) = a.sample_seed {
        opts.seed = seed;
    }
    let mut reports = Vec::new();
    let mut text = format!("graph {} ({} vertices, array {{{}}})\n", g.name(), g.order(), array_body(&pt));
    let mut violations = 0;
    for cfg in configs {
        let fam = solve_family(&assemble_system(&pt, None, cfg)?)?;
        let r = check_against_family(&g, &dist, &fam, &opts).map_err(|e| other(e.to_string()))?;
        text.push_str(&format!(
            "{cfg}: {} triple(s) {}, {} distinct table(s), {} violation(s)\n",
            r.triples_checked,
            if r.exhaustive { "exhaustive" } else { "sampled" },
            r.distinct_tables,
            r.violation_count
        ));
        violations += r.violation_count;
        reports.push(r);
    }
    let json = json!({
        "graph": g.name(),
        "order": g.order(),
        "array": format!("{{{}}}", array_body(&pt)),
        "p": pt.p,
        "reports": reports,
        "violation_count": violations,
    });
    if violations > 0 {
        return Err(other(format!("{violations} realized table(s) outside the solver's family")));
    }
    Ok(Outcome::ok(json, text))
}

#[cfg(test)]
mod tests;
