use serde::{Deserialize, Serialize};

use super::ConstraintError;
use crate::drg::ParameterTable;
use crate::triples::{cell_index, cell_name, TripleConfig};

/// Integer points of a family for one configuration.
#[derive(Debug, Clone, Copy)]
pub struct PointSet<'a> {
    pub config: TripleConfig,
    pub d: usize,
    pub points: &'a [Vec<i64>],
}

/// Double count of pairs `(y, z)` with `d(y, z) = t`, where `(u, v)` is a
/// fixed pair at distance `duv`, `y` has distances `a` from `(u, v)` and `z`
/// has distances `b`.
///
/// Counted through `y`, each of the `p^duv_{a}` vertices `y` sees cell
/// `[b1 b2 t]` of the family with configuration `(duv, a1, a2)`; through `z`,
/// each of the `p^duv_{b}` vertices `z` sees cell `[a1 a2 t]` of the family
/// `(duv, b1, b2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkSpec {
    pub duv: usize,
    pub a: (usize, usize),
    pub b: (usize, usize),
    pub t: usize,
}

impl LinkSpec {
    pub fn config_a(&self) -> TripleConfig {
        TripleConfig::new(self.duv, self.a.0, self.a.1)
    }

    pub fn config_b(&self) -> TripleConfig {
        TripleConfig::new(self.duv, self.b.0, self.b.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LinkSide {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LinkOutcome {
    /// Every family point realized in the graph must have `cell = value`.
    Forced { side: LinkSide, cell: String, value: i64 },
    /// Both cells are zero on every point.
    Tautology,
    /// The double count does not pin either cell.
    Unresolved,
    /// The two count ranges are disjoint.
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkResult {
    pub spec: LinkSpec,
    pub cell_a: String,
    pub cell_b: String,
    pub multiplier_a: u64,
    pub multiplier_b: u64,
    pub range_a: (i64, i64),
    pub range_b: (i64, i64),
    /// Range of the pair count allowed by both sides.
    pub count_range: Option<(i64, i64)>,
    pub relation: String,
    pub outcomes: Vec<LinkOutcome>,
}

impl LinkResult {
    pub fn forced(&self) -> impl Iterator<Item = (LinkSide, &str, i64)> {
        self.outcomes.iter().filter_map(|o| match o {
            LinkOutcome::Forced { side, cell, value } => Some((*side, cell.as_str(), *value)),
            _ => None,
        })
    }

    pub fn is_infeasible(&self) -> bool {
        self.outcomes.contains(&LinkOutcome::Infeasible)
    }
}

fn range(points: &[Vec<i64>], cell: usize) -> Option<(i64, i64)> {
    let lo = points.iter().map(|p| p[cell]).min()?;
    let hi = points.iter().map(|p| p[cell]).max()?;
    Some((lo, hi))
}

pub fn link_pair_count(
    pt: &ParameterTable,
    fam_a: PointSet<'_>,
    fam_b: PointSet<'_>,
    spec: LinkSpec,
) -> Result<LinkResult, ConstraintError> {
    if fam_a.config != spec.config_a() || fam_b.config != spec.config_b() {
        return Err(ConstraintError::LinkMismatch(format!(
            "link needs families {} and {}, got {} and {}",
            spec.config_a(),
            spec.config_b(),
            fam_a.config,
            fam_b.config
        )));
    }
    let d = fam_a.d;
    let cell_a = cell_index(d, spec.b.0, spec.b.1, spec.t);
    let cell_b = cell_index(d, spec.a.0, spec.a.1, spec.t);
    let n_a = pt.p(spec.duv, spec.a.0, spec.a.1);
    let n_b = pt.p(spec.duv, spec.b.0, spec.b.1);
    let name_a = cell_name(d, cell_a);
    let name_b = cell_name(d, cell_b);
    let relation = format!(
        "sum over {n_a} vertices y of {name_a}{} = sum over {n_b} vertices z of {name_b}{}",
        fam_a.config, fam_b.config
    );
    let (Some(ra), Some(rb)) = (range(fam_a.points, cell_a), range(fam_b.points, cell_b)) else {
        return Err(ConstraintError::LinkMismatch("a linked family has no points".into()));
    };

    let (na, nb) = (n_a as i64, n_b as i64);
    let lo = (na * ra.0).max(nb * rb.0);
    let hi = (na * ra.1).min(nb * rb.1);
    let mut outcomes = Vec::new();
    let count_range = (lo <= hi).then_some((lo, hi));
    if count_range.is_none() {
        outcomes.push(LinkOutcome::Infeasible);
    } else if ra == (0, 0) && rb == (0, 0) {
        outcomes.push(LinkOutcome::Tautology);
    } else {
        // Each side is a sum of n terms in [min, max]; it reaches n*min (n*max)
        // only if every term equals min (max).
        let mut pin = |side, name: &String, n: i64, r: (i64, i64)| {
            if r.0 == r.1 {
                return;
            }
            if hi == n * r.0 {
                outcomes.push(LinkOutcome::Forced { side, cell: name.clone(), value: r.0 });
            } else if lo == n * r.1 {
                outcomes.push(LinkOutcome::Forced { side, cell: name.clone(), value: r.1 });
            }
        };
        pin(LinkSide::A, &name_a, na, ra);
        pin(LinkSide::B, &name_b, nb, rb);
        if outcomes.is_empty() {
            outcomes.push(LinkOutcome::Unresolved);
        }
    }
    Ok(LinkResult {
        spec,
        cell_a: name_a,
        cell_b: name_b,
        multiplier_a: n_a,
        multiplier_b: n_b,
        range_a: ra,
        range_b: rb,
        count_range,
        relation,
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drg::intersection_numbers;

    fn pt() -> ParameterTable {
        intersection_numbers(&"{55,54,2;1,1,54}".parse().unwrap()).unwrap()
    }

    fn point(d: usize, cell: (usize, usize, usize), value: i64) -> Vec<i64> {
        let mut p = vec![0; d * d * d];
        p[cell_index(d, cell.0, cell.1, cell.2)] = value;
        p
    }

    const SPEC: LinkSpec = LinkSpec { duv: 2, a: (2, 1), b: (2, 3), t: 3 };

    #[test]
    fn zero_side_forces_other() {
        let a: Vec<Vec<i64>> = (0..3).map(|x| point(3, (2, 3, 3), x)).collect();
        let b = vec![point(3, (2, 1, 3), 0)];
        let r = link_pair_count(
            &pt(),
            PointSet { config: SPEC.config_a(), d: 3, points: &a },
            PointSet { config: SPEC.config_b(), d: 3, points: &b },
            SPEC,
        )
        .unwrap();
        assert_eq!((r.multiplier_a, r.multiplier_b), (52, 106));
        assert_eq!(r.outcomes, vec![LinkOutcome::Forced { side: LinkSide::A, cell: "[233]".into(), value: 0 }]);
    }

    #[test]
    fn both_zero_is_tautology_and_overlap_unresolved() {
        let z = vec![vec![0; 27]];
        let r = link_pair_count(
            &pt(),
            PointSet { config: SPEC.config_a(), d: 3, points: &z },
            PointSet { config: SPEC.config_b(), d: 3, points: &z },
            SPEC,
        )
        .unwrap();
        assert_eq!(r.outcomes, vec![LinkOutcome::Tautology]);

        let a: Vec<Vec<i64>> = (0..3).map(|x| point(3, (2, 3, 3), x)).collect();
        let b: Vec<Vec<i64>> = (0..2).map(|x| point(3, (2, 1, 3), x)).collect();
        let r = link_pair_count(
            &pt(),
            PointSet { config: SPEC.config_a(), d: 3, points: &a },
            PointSet { config: SPEC.config_b(), d: 3, points: &b },
            SPEC,
        )
        .unwrap();
        assert_eq!(r.outcomes, vec![LinkOutcome::Unresolved]);
        assert_eq!(r.count_range, Some((0, 104)));
    }

    #[test]
    fn disjoint_counts_infeasible() {
        let a = vec![point(3, (2, 3, 3), 2)];
        let b = vec![point(3, (2, 1, 3), 0)];
        let r = link_pair_count(
            &pt(),
            PointSet { config: SPEC.config_a(), d: 3, points: &a },
            PointSet { config: SPEC.config_b(), d: 3, points: &b },
            SPEC,
        )
        .unwrap();
        assert!(r.is_infeasible());
    }
}
