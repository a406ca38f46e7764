//! The end-to-end run: parameters, spectral data, triple families, lattice
//! rules, the pair count linking (2,2,1) with (2,2,3) and the final count.

mod checks;
pub mod reference;
mod report;

use std::collections::{BTreeMap, BTreeSet};

use serde_json::json;

pub use checks::{final_contradiction_check, lambda_average_bounds, CountingCertificate, LambdaBounds, NoContradiction};
pub use report::{
    anchor_text, sha256_hex, Certificate, ConditionalChain, FamilySummary, ProofReport, ProofStep, RelationCheck,
    StepStatus, Verdict, ANCHORS,
};

use crate::constraints::{
    apply_rules, builtin_rules, lattice_gate, link_pair_count, rules_for, ConstraintError, ConstraintRule, LinkOutcome,
    LinkResult, LinkSide, LinkSpec, PointSet,
};
use crate::drg::{
    distance_graph_srg_params, eigenmatrices, intersection_numbers, krein_table, spectrum, DrgError,
    IntersectionArray, ParameterTable,
};
use crate::exactmath::{RatMatrix, Rational};
use crate::symmetry::{coupled_system, symmetrize_families, CopyTerm, TriplePermutation};
use crate::triples::{
    assemble_system, cell_index, enumerate_points, solve_family, CellEquation, EnumerationLimits, KreinInput,
    TripleConfig, TripleError, TripleFamily, DEFAULT_POINT_CAP,
};

pub const TARGET_ARRAY: &str = "{55,54,2;1,1,54}";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Drg(#[from] DrgError),
    #[error(transparent)]
    Triple(#[from] TripleError),
    #[error(transparent)]
    Constraint(#[from] ConstraintError),
    #[error("reference tables: {0}")]
    Reference(String),
}

pub(crate) fn range(points: &[Vec<i64>], cell: usize) -> Option<(i64, i64)> {
    TripleFamily::cell_range(points, cell)
}

#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub use_krein: bool,
    /// Replaces the bundled lattice rules.
    pub rules: Option<Vec<ConstraintRule>>,
    pub point_cap: usize,
    /// Cap for the scan over every configuration.
    pub scan_cap: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { use_krein: false, rules: None, point_cap: DEFAULT_POINT_CAP, scan_cap: 100_000 }
    }
}

struct Recorder {
    steps: Vec<ProofStep>,
    digests: BTreeMap<String, String>,
}

impl Recorder {
    fn new(arr: &IntersectionArray) -> Self {
        let digests = BTreeMap::from([("array".to_string(), sha256_hex(arr.to_string().as_bytes()))]);
        Recorder { steps: Vec::new(), digests }
    }

    fn record(
        &mut self,
        name: &str,
        anchor: &str,
        inputs: &[&str],
        status: StepStatus,
        summary: String,
        data: serde_json::Value,
    ) {
        let joined: Vec<&str> = inputs.iter().map(|i| self.digests[*i].as_str()).collect();
        let input_digest = sha256_hex(joined.join("\n").as_bytes());
        let output_digest = sha256_hex(serde_json::to_string(&data).expect("json").as_bytes());
        self.digests.insert(name.to_string(), output_digest.clone());
        self.steps.push(ProofStep {
            name: name.to_string(),
            anchor: anchor.to_string(),
            input_digest,
            output_digest,
            status,
            summary,
            data,
        });
    }
}

fn empty_report(arr: &IntersectionArray) -> ProofReport {
    ProofReport {
        array: arr.to_string(),
        steps: Vec::new(),
        verdict: Verdict::FeasibleUnresolved,
        certificate: None,
        families: Vec::new(),
        relation_checks: Vec::new(),
        link: None,
        lambda_bounds: None,
        comparisons: Vec::new(),
        branch_membership: BTreeMap::new(),
        discrepancies: Vec::new(),
        assumptions: Vec::new(),
        conditional: None,
        notes: Vec::new(),
    }
}

fn finish(mut report: ProofReport, rec: Recorder, certificate: Option<Certificate>) -> ProofReport {
    report.steps = rec.steps;
    report.verdict = if certificate.is_some() { Verdict::Infeasible } else { Verdict::FeasibleUnresolved };
    report.certificate = certificate;
    report
}

fn unit_equation(n: usize, cell: usize, value: i64, label: String) -> CellEquation {
    let mut coeffs = vec![Rational::zero(); n];
    coeffs[cell] = Rational::one();
    CellEquation { coeffs, rhs: value.into(), label }
}

/// A configuration carried through rules and relabelling.
struct Staged {
    raw: TripleFamily,
    raw_points: Vec<Vec<i64>>,
    ruled: TripleFamily,
    ruled_points: Vec<Vec<i64>>,
    fin: TripleFamily,
    fin_points: Vec<Vec<i64>>,
    projected: Vec<String>,
    relations: usize,
}

fn stage_config(
    pt: &ParameterTable,
    krein: Option<KreinInput<'_>>,
    cfg: TripleConfig,
    rules: &[ConstraintRule],
    cap: usize,
) -> Result<Staged, PipelineError> {
    let limits = EnumerationLimits { max_points: cap };
    let raw = solve_family(&assemble_system(pt, krein, cfg)?)?;
    let raw_points = enumerate_points(&raw, limits)?;
    let ruled = apply_rules(&raw, &rules_for(rules, cfg))?;
    let ruled_points = enumerate_points(&ruled, limits)?;
    let sym = symmetrize_families(&ruled, &TriplePermutation::stabilizer(cfg))?;
    let fin_points = enumerate_points(&sym.family, limits)?;
    Ok(Staged {
        raw,
        raw_points,
        ruled,
        ruled_points,
        fin: sym.family,
        fin_points,
        projected: sym.projected.iter().map(|e| e.label.clone()).collect(),
        relations: sym.relations.len(),
    })
}

fn certificate_of(err: &PipelineError, cfg: TripleConfig) -> Option<Certificate> {
    match err {
        PipelineError::Triple(TripleError::Infeasible { equations, .. })
        | PipelineError::Constraint(ConstraintError::Triple(TripleError::Infeasible { equations, .. })) => {
            Some(Certificate::InconsistentSystem { config: cfg, equations: equations.clone() })
        }
        _ => None,
    }
}

fn values_of(points: &[Vec<i64>], cell: usize) -> Vec<i64> {
    points.iter().map(|p| p[cell]).collect::<BTreeSet<_>>().into_iter().collect()
}

/// Runs the pipeline with default options.
pub fn run_moore_proof(arr: &IntersectionArray) -> Result<ProofReport, PipelineError> {
    run_pipeline(arr, &PipelineOptions::default())
}

pub fn run_pipeline(arr: &IntersectionArray, opts: &PipelineOptions) -> Result<ProofReport, PipelineError> {
    let mut rec = Recorder::new(arr);
    let mut report = empty_report(arr);

    let pt = match intersection_numbers(arr) {
        Ok(pt) => pt,
        Err(e) => {
            let message = e.to_string();
            rec.record("intersection_numbers", "p-numbers", &["array"], StepStatus::Infeasible, message.clone(), json!({ "error": message }));
            return Ok(finish(report, rec, Some(Certificate::Parameters { message })));
        }
    };
    let d = pt.diameter();
    rec.record(
        "intersection_numbers",
        "p-numbers",
        &["array"],
        StepStatus::Ok,
        format!("v = {}, k = {:?}", pt.v, pt.k),
        json!({ "v": pt.v, "k": pt.k, "p": pt.p }),
    );

    // spectral data; irrational spectra skip the Krein steps
    let mut q_matrix: Option<RatMatrix> = None;
    let mut krein = None;
    match spectrum(arr) {
        Ok(spec) => {
            let pairs: Vec<String> = spec.pairs().map(|(t, m)| format!("{t}^{m}")).collect();
            rec.record("spectrum", "spectrum", &["array"], StepStatus::Ok, pairs.join(", "), json!(spec));
            let em = eigenmatrices(arr)?;
            rec.record(
                "eigenmatrices",
                "eigenmatrices",
                &["spectrum"],
                StepStatus::Ok,
                format!("Q row 1 = {:?}", em.q.row(1).iter().map(ToString::to_string).collect::<Vec<_>>()),
                json!({ "p": em.p.to_rows(), "q": em.q.to_rows() }),
            );
            match krein_table(arr) {
                Ok(kt) => {
                    let nontrivial = kt.nontrivial_vanishing();
                    rec.record(
                        "krein_table",
                        "krein",
                        &["eigenmatrices"],
                        StepStatus::Ok,
                        format!("{} vanishing parameters with all indices nonzero", nontrivial.len()),
                        json!({ "q": kt, "nontrivial_vanishing": nontrivial }),
                    );
                    krein = Some(kt);
                    q_matrix = Some(em.q);
                }
                Err(e) => {
                    let message = e.to_string();
                    rec.record("krein_table", "krein", &["eigenmatrices"], StepStatus::Infeasible, message.clone(), json!({ "error": message }));
                    return Ok(finish(report, rec, Some(Certificate::Parameters { message })));
                }
            }
        }
        Err(DrgError::Spectrum(e)) => {
            let message = e.to_string();
            rec.record("spectrum", "spectrum", &["array"], StepStatus::Skipped, message.clone(), json!({ "error": message }));
            report.notes.push(format!("spectrum not rational ({message}); Krein steps skipped"));
        }
        Err(e) => {
            let message = e.to_string();
            rec.record("spectrum", "spectrum", &["array"], StepStatus::Infeasible, message.clone(), json!({ "error": message }));
            return Ok(finish(report, rec, Some(Certificate::Parameters { message })));
        }
    }
    let krein_input = match (opts.use_krein, &krein, &q_matrix) {
        (true, Some(table), Some(q)) => Some(KreinInput { table, q }),
        (true, _, _) => {
            report.notes.push("Krein equations requested but unavailable".into());
            None
        }
        _ => None,
    };

    // distance-i graphs
    let mut srg = BTreeMap::new();
    for i in 1..=d {
        srg.insert(i.to_string(), distance_graph_srg_params(&pt, i).ok());
    }
    let gate = lattice_gate(&pt);
    let gate_summary = match &gate {
        Ok((p, n)) => format!("distance-3 graph has parameters {p} of the {n} x {n} lattice"),
        Err(e) => e.to_string(),
    };
    rec.record(
        "distance_graphs",
        "distance-3-graph",
        &["intersection_numbers"],
        StepStatus::Ok,
        gate_summary.clone(),
        json!({ "srg": srg, "lattice_order": gate.as_ref().ok().map(|g| g.1) }),
    );

    // every configuration, plain equations
    let configs: BTreeSet<TripleConfig> = TripleConfig::all_realizable(&pt).iter().map(|c| c.canonical()).collect();
    let mut scan = Vec::new();
    let mut scan_cert = None;
    for cfg in configs {
        let fam = match solve_family(&assemble_system(&pt, krein_input, cfg)?) {
            Ok(f) => f,
            Err(e) => {
                scan_cert = certificate_of(&PipelineError::Triple(e.clone()), cfg);
                scan.push(json!({ "config": cfg.to_string(), "error": e.to_string() }));
                break;
            }
        };
        match enumerate_points(&fam, EnumerationLimits { max_points: opts.scan_cap }) {
            Ok(points) if points.is_empty() => {
                scan.push(json!({ "config": cfg.to_string(), "dimension": fam.dimension(), "points": 0 }));
                scan_cert = Some(Certificate::EmptyFamily { config: cfg, stage: "raw".into() });
                break;
            }
            Ok(points) => {
                scan.push(json!({ "config": cfg.to_string(), "dimension": fam.dimension(), "points": points.len() }))
            }
            Err(TripleError::EnumerationTooLarge { cap }) => {
                scan.push(json!({ "config": cfg.to_string(), "dimension": fam.dimension(), "points": format!("> {cap}") }))
            }
            Err(e) => return Err(e.into()),
        }
    }
    rec.record(
        "triple_scan",
        "sum-equations",
        &["intersection_numbers", "krein_table"].iter().copied().filter(|s| rec.digests.contains_key(*s)).collect::<Vec<_>>(),
        if scan_cert.is_some() { StepStatus::Infeasible } else { StepStatus::Ok },
        format!("{} configurations up to relabelling", scan.len()),
        json!(scan),
    );
    if scan_cert.is_some() {
        return Ok(finish(report, rec, scan_cert));
    }

    if gate.is_err() {
        report.notes.push(format!("lattice rules not applicable: {gate_summary}"));
        return Ok(finish(report, rec, None));
    }
    let rules = match &opts.rules {
        Some(r) => r.clone(),
        None => builtin_rules(&pt)?,
    };
    report.assumptions.push("a graph with the parameters of the n x n lattice, n != 4, is that lattice".into());
    for r in rules.iter().filter(|r| r.assumption) {
        report.assumptions.push(format!("rule {} ({}) is taken as given", r.id, r.describe()));
    }

    let chain = run_lattice_chain(&pt, krein_input, &rules, opts, &mut rec, &mut report);
    let certificate = match chain {
        Ok(c) => c,
        Err((cfg, e)) => match certificate_of(&e, cfg) {
            Some(c) => Some(c),
            None => return Err(e),
        },
    };
    Ok(finish(report, rec, certificate))
}

const C211: TripleConfig = TripleConfig::new(2, 1, 1);
const C223: TripleConfig = TripleConfig::new(2, 2, 3);
const C221: TripleConfig = TripleConfig::new(2, 2, 1);
const C222: TripleConfig = TripleConfig::new(2, 2, 2);
const LINK: LinkSpec = LinkSpec { duv: 2, a: (2, 1), b: (2, 3), t: 3 };

fn record_stage(rec: &mut Recorder, report: &mut ProofReport, name: &str, anchor: &str, s: &Staged) {
    report.families.push(FamilySummary::new(&s.raw, "raw", Some(&s.raw_points)));
    report.families.push(FamilySummary::new(&s.ruled, "rules", Some(&s.ruled_points)));
    report.families.push(FamilySummary::new(&s.fin, "symmetrized", Some(&s.fin_points)));
    let cfg = s.raw.config;
    rec.record(
        name,
        anchor,
        &["intersection_numbers"],
        if s.fin_points.is_empty() { StepStatus::Infeasible } else { StepStatus::Ok },
        format!(
            "{cfg}: {} raw points, {} after rules, {} after relabelling ({} relations, {} new equations)",
            s.raw_points.len(),
            s.ruled_points.len(),
            s.fin_points.len(),
            s.relations,
            s.projected.len()
        ),
        json!({
            "config": cfg.to_string(),
            "raw_dimension": s.raw.dimension(),
            "raw_points": s.raw_points.len(),
            "rules_dimension": s.ruled.dimension(),
            "rules_points": s.ruled_points.len(),
            "final_dimension": s.fin.dimension(),
            "final_points": s.fin_points,
            "projected": s.projected,
        }),
    );
    if s.projected.is_empty() && s.relations > 0 {
        report.notes.push(format!("relabelling adds no equation on {cfg} beyond those already present"));
    }
}

type ChainResult = Result<Option<Certificate>, (TripleConfig, PipelineError)>;

fn run_lattice_chain(
    pt: &ParameterTable,
    krein: Option<KreinInput<'_>>,
    rules: &[ConstraintRule],
    opts: &PipelineOptions,
    rec: &mut Recorder,
    report: &mut ProofReport,
) -> ChainResult {
    let d = 3;
    let n = d * d * d;
    let cap = opts.point_cap;
    let stage = |cfg| stage_config(pt, krein, cfg, rules, cap).map_err(|e| (cfg, e));
    let s211 = stage(C211)?;
    record_stage(rec, report, "family_211", "triples-211", &s211);
    let s223 = stage(C223)?;
    record_stage(rec, report, "family_223", "triples-223", &s223);
    let s221 = stage(C221)?;
    record_stage(rec, report, "family_221", "triples-221", &s221);
    let s222 = stage(C222)?;
    record_stage(rec, report, "family_222", "triples-222", &s222);
    for s in [&s211, &s223, &s221, &s222] {
        if s.fin_points.is_empty() {
            return Ok(Some(Certificate::EmptyFamily { config: s.raw.config, stage: "symmetrized".into() }));
        }
    }

    report.relation_checks = relation_checks(pt, &s222.ruled).map_err(|e| (C222, e.into()))?;
    let implied = report.relation_checks.iter().filter(|r| r.implied).count();
    rec.record(
        "relabel_relations_222",
        "relabel-relations",
        &["family_222"],
        StepStatus::Ok,
        format!("{implied} of {} relations implied", report.relation_checks.len()),
        json!(report.relation_checks),
    );

    let link = link_pair_count(
        pt,
        PointSet { config: C221, d, points: &s221.fin_points },
        PointSet { config: C223, d, points: &s223.fin_points },
        LINK,
    )
    .map_err(|e| (C221, e.into()))?;
    let (resolved221, resolved223) = apply_link(&link, &s221, &s223, n, cap)?;
    rec.record(
        "link_221_223",
        "pair-count",
        &["family_221", "family_223"],
        if link.is_infeasible() { StepStatus::Infeasible } else { StepStatus::Ok },
        format!("{:?}", link.outcomes),
        json!({ "link": link, "resolved_221": resolved221, "resolved_223_points": resolved223.len() }),
    );
    report.link = Some(link.clone());
    if link.is_infeasible() {
        return Ok(Some(Certificate::LinkCount { link: Box::new(link) }));
    }
    if link.outcomes.contains(&LinkOutcome::Unresolved) {
        report.discrepancies.push(format!(
            "the pair count does not pin {}: {} ranges over {}..={} on (2,2,1) and {} over {}..={} on (2,2,3)",
            link.cell_a, link.cell_a, link.range_a.0, link.range_a.1, link.cell_b, link.range_b.0, link.range_b.1
        ));
    }

    let check = final_contradiction_check(pt, PointSet { config: C221, d, points: &resolved221 });
    let certificate = match &check {
        Ok(c) => {
            rec.record(
                "final_check",
                "final-count",
                &["link_221_223", "distance_graphs"],
                StepStatus::Infeasible,
                format!("demand {} > capacity {}", c.demand, c.capacity),
                json!(c),
            );
            Some(Certificate::Counting(c.clone()))
        }
        Err(nc) => {
            rec.record("final_check", "final-count", &["link_221_223", "distance_graphs"], StepStatus::Ok, nc.to_string(), json!(nc));
            report.discrepancies.push(format!("final count: {}", nc.reason));
            None
        }
    };

    let bounds = lambda_average_bounds(
        pt,
        PointSet { config: C221, d, points: &resolved221 },
        PointSet { config: C223, d, points: &resolved223 },
    );
    rec.record(
        "lambda_bounds",
        "lambda-average",
        &["link_221_223"],
        StepStatus::Ok,
        bounds
            .as_ref()
            .map(|b| format!("e in [{}, {}], lambda in [{}, {}]", b.e_min, b.e_max, b.lambda_min_3dp, b.lambda_max_3dp))
            .unwrap_or_default(),
        json!(bounds),
    );
    report.lambda_bounds = bounds;

    if pt_is_target(pt) {
        compare_references(pt, &s211, &s223, &s221, &s222, &resolved221, rec, report).map_err(|e| (C223, e))?;
        report.conditional = Some(conditional_chain(pt, &s223, &s221, cap).map_err(|e| (C223, e))?);
    }
    Ok(certificate)
}

fn pt_is_target(pt: &ParameterTable) -> bool {
    let arr: IntersectionArray = TARGET_ARRAY.parse().expect("target parses");
    intersection_numbers(&arr).map(|t| &t == pt).unwrap_or(false)
}

/// Applies forced values of the pair count to the two families.
fn apply_link(
    link: &LinkResult,
    s221: &Staged,
    s223: &Staged,
    n: usize,
    cap: usize,
) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>), (TripleConfig, PipelineError)> {
    let limits = EnumerationLimits { max_points: cap };
    let mut out221 = s221.fin_points.clone();
    let mut out223 = s223.fin_points.clone();
    for (side, cell, value) in link.forced() {
        let (s, cfg, out) = match side {
            LinkSide::A => (s221, C221, &mut out221),
            LinkSide::B => (s223, C223, &mut out223),
        };
        let (i, j, h) = crate::constraints::parse_cell(cell).expect("cell name");
        let eq = unit_equation(n, cell_index(3, i, j, h), value, format!("pair count: {cell} = {value}"));
        let fam = s.fin.with_equations([eq]).map_err(|e| (cfg, e.into()))?;
        *out = enumerate_points(&fam, limits).map_err(|e| (cfg, e.into()))?;
    }
    Ok((out221, out223))
}

/// Relations between relabelled copies of the (2,2,2) family, written with
/// the constants `p^2_13` and `p^2_12`.
fn relation_checks(pt: &ParameterTable, fam: &TripleFamily) -> Result<Vec<RelationCheck>, TripleError> {
    use TriplePermutation as T;
    let c = |i, j, h| cell_index(3, i, j, h);
    let perms = TriplePermutation::stabilizer(C222);
    let sys = coupled_system(fam, &perms);
    let (m13, m12) = (pt.p(2, 1, 3) as i64, pt.p(2, 1, 2) as i64);
    let claims: Vec<(String, Vec<CopyTerm>, i64)> = vec![
        (
            "[112] = [121]'".into(),
            vec![CopyTerm::new(None, c(1, 1, 2), 1), CopyTerm::new(Some(T::PRIME), c(1, 2, 1), -1)],
            0,
        ),
        (
            format!("[313] + [113] + [231]' = {m13}"),
            vec![
                CopyTerm::new(None, c(3, 1, 3), 1),
                CopyTerm::new(None, c(1, 1, 3), 1),
                CopyTerm::new(Some(T::PRIME), c(2, 3, 1), 1),
            ],
            m13,
        ),
        (
            format!("-[212] + {m12} = [123]* + [121]*"),
            vec![
                CopyTerm::new(None, c(2, 1, 2), 1),
                CopyTerm::new(Some(T::STAR), c(1, 2, 3), 1),
                CopyTerm::new(Some(T::STAR), c(1, 2, 1), 1),
            ],
            m12,
        ),
    ];
    claims
        .into_iter()
        .map(|(relation, terms, rhs)| {
            Ok(RelationCheck { implied: sys.implies(fam, &terms, &Rational::from(rhs))?, relation })
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn compare_references(
    pt: &ParameterTable,
    s211: &Staged,
    s223: &Staged,
    s221: &Staged,
    s222: &Staged,
    resolved221: &[Vec<i64>],
    rec: &mut Recorder,
    report: &mut ProofReport,
) -> Result<(), PipelineError> {
    let d = pt.diameter();
    let tables = reference::load_reference_tables(reference::REFERENCE_TABLES_TOML, d)?;
    for t in &tables {
        let s = match t.config {
            C211 => s211,
            C223 => s223,
            C221 => s221,
            C222 => s222,
            other => return Err(PipelineError::Reference(format!("no family for {other}"))),
        };
        let derived: &[Vec<i64>] = match t.stage.as_str() {
            "raw" => &s.raw_points,
            "linked" => resolved221,
            "branch" => {
                report.branch_membership.insert(t.id.clone(), reference::table_is_member(t, &s.fin_points));
                continue;
            }
            _ => &s.fin_points,
        };
        let cmp = reference::compare_table(t, d, &s.raw_points, derived);
        if !cmp.equal || !cmp.not_solutions.is_empty() {
            let mut msg = format!(
                "table {} ({}): {} claimed and {} derived points on its {} listed cells",
                cmp.table,
                cmp.config,
                cmp.reference_points,
                cmp.derived_points,
                cmp.cells.len()
            );
            if !cmp.not_solutions.is_empty() {
                msg.push_str(&format!("; {} claimed points match no integer solution of the equations", cmp.not_solutions.len()));
            }
            report.discrepancies.push(msg);
        }
        report.comparisons.push(cmp);
    }
    for (id, member) in &report.branch_membership {
        if !member {
            report.discrepancies.push(format!("table {id} is not a point of the derived (2,2,2) set"));
        }
    }
    let c222 = cell_index(d, 2, 2, 2);
    let v223 = values_of(&s223.fin_points, c222);
    report.notes.push(format!("(2,2,3) after rules and relabelling: [222] takes values {v223:?}"));
    rec.record(
        "reference_tables",
        "reference-tables",
        &["family_211", "family_223", "family_221", "family_222", "link_221_223"],
        StepStatus::Ok,
        format!(
            "{} of {} tables equal",
            report.comparisons.iter().filter(|c| c.equal).count(),
            report.comparisons.len()
        ),
        json!({ "comparisons": report.comparisons, "branch_membership": report.branch_membership }),
    );
    Ok(())
}

/// Re-runs the pair count and the final count with the corrected claimed
/// (2,2,3) table as the (2,2,3) point set.
fn conditional_chain(pt: &ParameterTable, s223: &Staged, s221: &Staged, cap: usize) -> Result<ConditionalChain, PipelineError> {
    let d = pt.diameter();
    let tables = reference::load_reference_tables(reference::REFERENCE_TABLES_TOML, d)?;
    let premise_id = "223-symmetrized-corrected";
    let table = tables
        .iter()
        .find(|t| t.id == premise_id)
        .ok_or_else(|| PipelineError::Reference(format!("missing table {premise_id}")))?;
    let (lifted, _) = reference::lift_points(table, &s223.raw_points);
    let premise: Vec<Vec<i64>> = lifted.into_iter().filter(|p| s223.ruled.contains_point(p)).collect();
    let c222 = cell_index(d, 2, 2, 2);
    let mut notes = Vec::new();
    let mut chain = ConditionalChain {
        premise: format!("(2,2,3) points are those of table {premise_id} that satisfy the (2,2,3) rules"),
        premise_points: premise.len(),
        premise_222_values: values_of(&premise, c222),
        link: None,
        resolved_221: None,
        verdict: Verdict::FeasibleUnresolved,
        certificate: None,
        lambda_bounds: None,
        notes: Vec::new(),
    };
    if premise.is_empty() {
        chain.notes.push("premise table has no points".into());
        return Ok(chain);
    }
    let link = link_pair_count(
        pt,
        PointSet { config: C221, d, points: &s221.fin_points },
        PointSet { config: C223, d, points: &premise },
        LINK,
    )?;
    let mut fam221 = s221.fin.clone();
    for (side, cell, value) in link.forced() {
        notes.push(format!("pair count forces {cell} = {value} on side {side:?}"));
        if side == LinkSide::A {
            let (i, j, h) = crate::constraints::parse_cell(cell).expect("cell name");
            fam221 = fam221.with_equations([unit_equation(d * d * d, cell_index(d, i, j, h), value, format!("pair count: {cell} = {value}"))])?;
        }
    }
    let points221 = enumerate_points(&fam221, EnumerationLimits { max_points: cap })?;
    notes.push(format!("(2,2,1) has {} point(s)", points221.len()));
    if let Ok(c) = final_contradiction_check(pt, PointSet { config: C221, d, points: &points221 }) {
        chain.verdict = Verdict::Infeasible;
        chain.certificate = Some(c);
    }
    chain.lambda_bounds = lambda_average_bounds(
        pt,
        PointSet { config: C221, d, points: &points221 },
        PointSet { config: C223, d, points: &premise },
    );
    chain.resolved_221 = Some(FamilySummary::new(&fam221, "conditional", Some(&points221)));
    chain.link = Some(link);
    chain.notes = notes;
    Ok(chain)
}
