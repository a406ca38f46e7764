use std::collections::BTreeSet;

use drgtriples::drg::{distance_graph_srg_params, intersection_numbers, spectrum, IntersectionArray, SrgParams};
use drgtriples::exactmath::{char_poly_roots, RatMatrix, Rational};
use drgtriples::oracle::*;
use drgtriples::symmetry::TriplePermutation;
use drgtriples::triples::{assemble_system, solve_family, TripleConfig};

const DRGS: &[(&str, &str)] = &[
    ("pentagon", "{2,1;1,1}"),
    ("petersen", "{3,2;1,1}"),
    ("cube3", "{3,2,1;1,2,3}"),
    ("odd4", "{4,3,3;1,1,2}"),
    ("hoffman_singleton", "{7,6;1,1}"),
    ("hoffman_singleton_edge_deleted", "{5,4,2;1,1,4}"),
    ("rook(8)", "{14,7;1,2}"),
];

#[test]
fn brute_force_p_tables_match_recurrence() {
    for (name, array) in DRGS {
        let g = build_graph(name).unwrap();
        let brute = brute_force_p_table(&g).unwrap();
        let arr: IntersectionArray = array.parse().unwrap();
        assert_eq!(intersection_numbers(&arr).unwrap(), brute, "{name}");
        assert_eq!(intersection_array_of(&brute).unwrap(), arr, "{name}");
    }
}

#[test]
fn cube_parameters() {
    let pt = intersection_numbers(&"{3,2,1;1,2,3}".parse().unwrap()).unwrap();
    assert_eq!((pt.k.clone(), pt.v, pt.p(1, 1, 1), pt.p(2, 1, 1)), (vec![1, 3, 3, 1], 8, 0, 2));
}

fn adjacency(g: &ExplicitGraph) -> RatMatrix {
    let n = g.order();
    RatMatrix::from_fn(n, n, |x, y| Rational::from(i64::from(g.is_adjacent(x, y))))
}

#[test]
fn petersen_adjacency_spectrum() {
    let g = build_graph("petersen").unwrap();
    let roots = char_poly_roots(&adjacency(&g)).unwrap();
    let brute: Vec<(Rational, u64)> = roots.into_iter().rev().map(|(r, m)| (r, m as u64)).collect();
    let spec = spectrum(&"{3,2;1,1}".parse().unwrap()).unwrap();
    let computed: Vec<(Rational, u64)> = spec.pairs().map(|(t, m)| (t.clone(), m)).collect();
    assert_eq!(brute, computed);
}

#[test]
fn rook_grounding() {
    let g = build_graph("rook(8)").unwrap();
    let pt = brute_force_p_table(&g).unwrap();
    assert_eq!(distance_graph_srg_params(&pt, 1).unwrap(), SrgParams { v: 64, k: 14, lambda: 6, mu: 2 });
    // two vertices in different rows and columns have exactly two common neighbours
    let dist = g.distances();
    for x in 0..64 {
        for y in 0..64 {
            if dist.get(x, y) == 2 {
                let common = (0..64).filter(|&z| g.is_adjacent(x, z) && g.is_adjacent(y, z)).count();
                assert_eq!(common, 2);
            }
        }
    }
    let target = intersection_numbers(&"{55,54,2;1,1,54}".parse().unwrap()).unwrap();
    assert_eq!(distance_graph_srg_params(&target, 3).unwrap(), SrgParams::lattice(56));
}

#[test]
fn rook_mu_is_two() {
    for n in 3..=7 {
        let pt = brute_force_p_table(&rook(n).unwrap()).unwrap();
        assert_eq!(distance_graph_srg_params(&pt, 1).unwrap().mu, 2, "rook({n})");
    }
}

fn check_all_configs(name: &str, opts: &CheckOptions) -> usize {
    let g = build_graph(name).unwrap();
    let dist = g.distances();
    let pt = brute_force_p_table_with(&g, &dist).unwrap();
    let mut checked = 0;
    for cfg in TripleConfig::all_realizable(&pt) {
        let fam = solve_family(&assemble_system(&pt, None, cfg).unwrap()).unwrap();
        let report = check_against_family(&g, &dist, &fam, opts).unwrap();
        assert_eq!(report.violation_count, 0, "{name} {cfg}: {:?}", report.violations);
        assert!(report.triples_checked > 0);
        checked += report.triples_checked;
    }
    checked
}

#[test]
fn realized_tables_lie_in_families_exhaustive() {
    let opts = CheckOptions::default();
    // ordered triples of distinct vertices
    assert_eq!(check_all_configs("petersen", &opts), 720);
    assert_eq!(check_all_configs("cube3", &opts), 8 * 7 * 6);
    assert_eq!(check_all_configs("odd4", &opts), 35 * 34 * 33);
    assert_eq!(check_all_configs("hoffman_singleton", &opts), 50 * 49 * 48);
    assert_eq!(check_all_configs("hoffman_singleton_edge_deleted", &opts), 36 * 35 * 34);
}

#[test]
fn hoffman_singleton_sampled_is_seeded() {
    let g = build_graph("hoffman_singleton").unwrap();
    let dist = g.distances();
    let pt = brute_force_p_table_with(&g, &dist).unwrap();
    let fam = solve_family(&assemble_system(&pt, None, TripleConfig::new(2, 2, 2)).unwrap()).unwrap();
    let opts = CheckOptions { exhaustive_limit: 0, samples: 10_000, seed: 7 };
    let a = check_against_family(&g, &dist, &fam, &opts).unwrap();
    let b = check_against_family(&g, &dist, &fam, &opts).unwrap();
    assert_eq!(a, b);
    assert!(!a.exhaustive);
    assert_eq!((a.triples_checked, a.violation_count, a.seed), (10_000, 0, Some(7)));
}

#[test]
fn rook_sampled_against_family() {
    let g = build_graph("rook(12)").unwrap();
    let dist = g.distances();
    let pt = brute_force_p_table_with(&g, &dist).unwrap();
    for cfg in TripleConfig::all_realizable(&pt) {
        let fam = solve_family(&assemble_system(&pt, None, cfg).unwrap()).unwrap();
        let opts = CheckOptions { samples: 500, ..CheckOptions::default() };
        let r = check_against_family(&g, &dist, &fam, &opts).unwrap();
        assert!(!r.exhaustive);
        assert_eq!(r.violation_count, 0, "{cfg}");
    }
}

#[test]
fn relabelled_tables_follow_index_maps() {
    for name in ["petersen", "cube3", "hoffman_singleton_edge_deleted"] {
        let g = build_graph(name).unwrap();
        let dist = g.distances();
        let d = dist.diameter();
        let n = g.order();
        for u in 0..n.min(6) {
            for v in 0..n {
                for w in 0..n {
                    if u == v || v == w || u == w {
                        continue;
                    }
                    let base = brute_force_triples(&dist, u, v, w).inner();
                    let roles = [u, v, w];
                    for sigma in TriplePermutation::all() {
                        let moved = [roles[sigma.roles[0]], roles[sigma.roles[1]], roles[sigma.roles[2]]];
                        let t = brute_force_triples(&dist, moved[0], moved[1], moved[2]).inner();
                        assert_eq!(t, sigma.apply_point(d, &base), "{name} {sigma}");
                    }
                }
            }
        }
    }
}

#[test]
fn distinct_tables_are_recorded() {
    let g = build_graph("odd4").unwrap();
    let dist = g.distances();
    let pt = brute_force_p_table_with(&g, &dist).unwrap();
    let fam = solve_family(&assemble_system(&pt, None, TripleConfig::new(1, 1, 2)).unwrap()).unwrap();
    let r = check_against_family(&g, &dist, &fam, &CheckOptions::default()).unwrap();
    let points: BTreeSet<Vec<i64>> = fam.points().unwrap().into_iter().collect();
    assert!(r.distinct_tables >= 1 && r.distinct_tables <= points.len());
    assert_eq!(r.violation_count, 0);
}
