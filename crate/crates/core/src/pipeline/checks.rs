use serde::{Deserialize, Serialize};

use crate::constraints::PointSet;
use crate::drg::{distance_graph_srg_params, ParameterTable};
use crate::exactmath::Rational;
use crate::triples::{cell_index, TripleConfig};

/// Two incompatible counts: `demand` vertices must fit into a set of size
/// `capacity`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingCertificate {
    pub demand: u64,
    pub capacity: u64,
    pub demand_derivation: Vec<String>,
    pub capacity_derivation: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize, Deserialize)]
#[error("no contradiction: {reason}")]
pub struct NoContradiction {
    pub reason: String,
}

fn no(reason: impl Into<String>) -> NoContradiction {
    NoContradiction { reason: reason.into() }
}

/// Fix `u, v` at distance 2 and let `X = Gamma_1(u) ∩ Gamma_3(v)`, of size
/// `m = p^2_13`. If every point of the (2,2,1) family has `[133] = m`, then
/// each of the `p^2_21` vertices `w` with `d(u,w) = 2, d(v,w) = 1` has all of
/// `X` at distance 3. Two vertices `x, y` of `X` are at distance 1 or 2, so
/// such `w` lie in `Gamma_3(x) ∩ Gamma_3(y)` minus `v`, which has
/// `mu(Gamma_3) - 1` elements.
pub fn final_contradiction_check(
    pt: &ParameterTable,
    table221: PointSet<'_>,
) -> Result<CountingCertificate, NoContradiction> {
    let d = pt.diameter();
    if d != 3 {
        return Err(no(format!("diameter {d}, the count needs diameter 3")));
    }
    if table221.config != TripleConfig::new(2, 2, 1) {
        return Err(no(format!("expected a (2,2,1) table, got {}", table221.config)));
    }
    let srg = distance_graph_srg_params(pt, 3).map_err(|e| no(e.to_string()))?;
    let m = pt.p(2, 1, 3);
    if m < 2 {
        return Err(no(format!("p^2_13 = {m}, fewer than two vertices to pin")));
    }
    let c133 = cell_index(d, 1, 3, 3);
    if table221.points.is_empty() {
        return Err(no("the (2,2,1) table has no points"));
    }
    if let Some(p) = table221.points.iter().find(|p| p[c133] != m as i64) {
        return Err(no(format!("a (2,2,1) point has [133] = {} while p^2_13 = {m}", p[c133])));
    }
    // pairs inside Gamma_1(u) are at distance 1 or 2
    let from_p = (1..=2)
        .filter(|&h| pt.p(h, 1, 1) > 0)
        .map(|h| pt.p(h, 3, 3))
        .max()
        .unwrap_or(0);
    if from_p != srg.mu {
        return Err(no(format!("p^h_33 = {from_p} differs from mu(Gamma_3) = {}", srg.mu)));
    }
    let demand = pt.p(2, 2, 1);
    let capacity = srg.mu.saturating_sub(1);
    if demand <= capacity {
        return Err(no(format!("demand {demand} fits into capacity {capacity}")));
    }
    Ok(CountingCertificate {
        demand,
        capacity,
        demand_derivation: vec![
            format!("|Gamma_1(u) ∩ Gamma_3(v)| = p^2_13 = {m} for d(u,v) = 2"),
            format!("[133] = {m} on every (2,2,1) point: all of them are at distance 3 from w"),
            format!("number of w with d(u,w) = 2, d(v,w) = 1 is p^2_21 = {demand}"),
        ],
        capacity_derivation: vec![
            format!("distance-3 graph has parameters {srg}"),
            format!("two vertices of Gamma_1(u) ∩ Gamma_3(v) have mu = {} common distance-3 neighbours, v among them", srg.mu),
            format!("capacity mu - 1 = {capacity}"),
        ],
    })
}

/// Bounds on the average valency of the distance-2 graph induced on
/// `Gamma_2(u) ∩ Gamma_2(v)` for `d(u,v) = 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaBounds {
    pub e_min: i64,
    pub e_max: i64,
    pub lambda_min: Rational,
    pub lambda_max: Rational,
    /// Lower bound rounded down, upper bound rounded up.
    pub lambda_min_3dp: String,
    pub lambda_max_3dp: String,
}

/// `e = p^2_21 [222]_(2,2,1) + p^2_23 [222]_(2,2,3)` counts distance-2 pairs
/// between `Lambda = Gamma_2(u) ∩ Gamma_2(v)` and the rest of `Gamma_2(u)`
/// other than `v`; then `lambda = p^2_22 - 1 - e / p^2_22`.
pub fn lambda_average_bounds(pt: &ParameterTable, fam221: PointSet<'_>, fam223: PointSet<'_>) -> Option<LambdaBounds> {
    if pt.diameter() != 3 {
        return None;
    }
    let c = cell_index(3, 2, 2, 2);
    let r1 = super::range(fam221.points, c)?;
    let r3 = super::range(fam223.points, c)?;
    let (n1, n3) = (pt.p(2, 2, 1) as i64, pt.p(2, 2, 3) as i64);
    let e_min = n1 * r1.0 + n3 * r3.0;
    let e_max = n1 * r1.1 + n3 * r3.1;
    let n = Rational::from(pt.p(2, 2, 2));
    let lam = |e: i64| &(&n - &Rational::one()) - &(Rational::from(e) / &n);
    let lambda_min = lam(e_max);
    let lambda_max = lam(e_min);
    Some(LambdaBounds {
        e_min,
        e_max,
        lambda_min_3dp: lambda_min.floor_decimal(3),
        lambda_max_3dp: lambda_max.ceil_decimal(3),
        lambda_min,
        lambda_max,
    })
}
