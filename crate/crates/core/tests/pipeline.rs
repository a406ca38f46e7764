use std::sync::OnceLock;

use drgtriples::constraints::{builtin_rules, LinkOutcome};
use drgtriples::drg::{intersection_numbers, IntersectionArray};
use drgtriples::oracle::{brute_force_p_table, build_graph};
use drgtriples::pipeline::*;
use drgtriples::triples::TripleConfig;

fn target_report() -> &'static ProofReport {
    static R: OnceLock<ProofReport> = OnceLock::new();
    R.get_or_init(|| run_moore_proof(&TARGET_ARRAY.parse().unwrap()).unwrap())
}

#[test]
fn report_is_deterministic() {
    let again = run_moore_proof(&TARGET_ARRAY.parse().unwrap()).unwrap();
    assert_eq!(&again, target_report());
    assert_eq!(again.to_json(), target_report().to_json());
    let back: ProofReport = serde_json::from_str(&again.to_json()).unwrap();
    assert_eq!(back.to_json(), again.to_json());
}

#[test]
fn steps_in_order_with_anchors() {
    let r = target_report();
    let names: Vec<&str> = r.steps.iter().map(|s| s.name.as_str()).collect();
    assert_eq!(
        names,
        [
            "intersection_numbers",
            "spectrum",
            "eigenmatrices",
            "krein_table",
            "distance_graphs",
            "triple_scan",
            "family_211",
            "family_223",
            "family_221",
            "family_222",
            "relabel_relations_222",
            "link_221_223",
            "final_check",
            "lambda_bounds",
            "reference_tables",
        ]
    );
    for s in &r.steps {
        assert!(anchor_text(&s.anchor).is_some(), "{}", s.anchor);
        assert_eq!(s.output_digest, sha256_hex(serde_json::to_string(&s.data).unwrap().as_bytes()));
        assert_eq!(s.input_digest.len(), 64);
    }
}

#[test]
fn mechanical_verdict_is_unresolved() {
    let r = target_report();
    assert_eq!(r.verdict, Verdict::FeasibleUnresolved);
    assert!(r.certificate.is_none());
    let link = r.link.as_ref().unwrap();
    assert!(link.outcomes.iter().all(|o| matches!(o, LinkOutcome::Unresolved { .. })), "{:?}", link.outcomes);
    let b = r.lambda_bounds.as_ref().unwrap();
    assert_eq!((b.lambda_min_3dp.as_str(), b.lambda_max_3dp.as_str()), ("2658.713", "2658.864"));
    assert!(r.discrepancies.iter().any(|d| d.starts_with("final count")));
}

#[test]
fn relabel_relations_hold() {
    let r = target_report();
    assert!(!r.relation_checks.is_empty());
    for c in &r.relation_checks {
        assert!(c.implied, "{}", c.relation);
    }
}

#[test]
fn family_counts() {
    let r = target_report();
    let pts = |cfg: (usize, usize, usize), stage: &str| {
        r.family(TripleConfig::new(cfg.0, cfg.1, cfg.2), stage).unwrap().points
    };
    assert_eq!(pts((2, 1, 1), "raw"), Some(3));
    assert_eq!(pts((2, 2, 2), "raw"), Some(203));
    assert_eq!(pts((2, 2, 2), "rules"), Some(122));
    assert_eq!(pts((2, 2, 3), "rules"), Some(18));
    // relabelling never removes points here
    for cfg in [(2, 1, 1), (2, 2, 3), (2, 2, 1), (2, 2, 2)] {
        assert_eq!(pts(cfg, "rules"), pts(cfg, "symmetrized"), "{cfg:?}");
    }
}

#[test]
fn reference_comparisons() {
    let r = target_report();
    let cmp = |id: &str| r.comparisons.iter().find(|c| c.table == id).unwrap();
    assert!(cmp("211").equal);
    assert!(cmp("222-raw").equal);
    assert!(cmp("222-rules").equal);
    let printed = cmp("223-symmetrized");
    assert!(!printed.equal);
    assert_eq!(printed.not_solutions.len(), printed.reference_points);
    assert!(cmp("223-symmetrized-corrected").not_solutions.is_empty());
    assert!(!cmp("221-final").equal);
    assert_eq!(r.branch_membership.get("222-branch-a"), Some(&true));
    assert_eq!(r.branch_membership.get("222-branch-b"), Some(&true));
}

#[test]
fn conditional_chain_reaches_contradiction() {
    let c = target_report().conditional.as_ref().unwrap();
    assert_eq!(c.verdict, Verdict::Infeasible);
    let cert = c.certificate.as_ref().unwrap();
    assert_eq!((cert.demand, cert.capacity), (52, 1));
    assert!(c.link.as_ref().unwrap().forced().count() > 0);
    assert_eq!(c.resolved_221.as_ref().unwrap().points, Some(1));
    let b = c.lambda_bounds.as_ref().unwrap();
    assert_eq!((b.lambda_min_3dp.as_str(), b.lambda_max_3dp.as_str()), ("2658.826", "2658.864"));
}

#[test]
fn krein_option_changes_nothing_on_target() {
    let opts = PipelineOptions { use_krein: true, ..PipelineOptions::default() };
    let r = run_pipeline(&TARGET_ARRAY.parse().unwrap(), &opts).unwrap();
    assert_eq!(r.verdict, target_report().verdict);
    assert_eq!(r.families, target_report().families);
}

#[test]
fn empty_rule_set_keeps_raw_families() {
    let opts = PipelineOptions { rules: Some(Vec::new()), ..PipelineOptions::default() };
    let r = run_pipeline(&TARGET_ARRAY.parse().unwrap(), &opts).unwrap();
    let f = r.family(TripleConfig::new(2, 2, 2), "rules").unwrap();
    assert_eq!(f.points, Some(203));
    assert_eq!(r.verdict, Verdict::FeasibleUnresolved);
}

#[test]
fn lattice_oracle_graph_is_not_refuted() {
    let g = build_graph("hoffman_singleton_edge_deleted").unwrap();
    let pt = brute_force_p_table(&g).unwrap();
    let arr: IntersectionArray = "{5,4,2;1,1,4}".parse().unwrap();
    assert_eq!(intersection_numbers(&arr).unwrap(), pt);
    assert_eq!(builtin_rules(&pt).unwrap().len(), 4);
    let r = run_moore_proof(&arr).unwrap();
    assert_eq!(r.verdict, Verdict::FeasibleUnresolved, "{}", r.render_text());
    assert!(r.certificate.is_none());
    assert!(r.conditional.is_none());
    assert!(r.steps.iter().any(|s| s.name == "final_check"));
}

#[test]
fn text_rendering_mentions_verdict() {
    let text = target_report().render_text();
    assert!(text.contains("verdict: FEASIBLE_UNRESOLVED"));
    assert!(text.contains("2658.713"));
}
