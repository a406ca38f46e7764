use serde::{Deserialize, Serialize};

use super::{DrgError, IntersectionArray};
use crate::exactmath::{RatMatrix, Rational};

/// All intersection numbers of a distance-regular graph.
///
/// `p[h][i][j]` is the number of vertices at distance `i` from `x` and `j`
/// from `y`, for any pair with `d(x, y) = h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterTable {
    pub v: u64,
    pub k: Vec<u64>,
    pub p: Vec<Vec<Vec<u64>>>,
}

impl ParameterTable {
    pub fn diameter(&self) -> usize {
        self.k.len() - 1
    }

    /// `p^h_ij`.
    pub fn p(&self, h: usize, i: usize, j: usize) -> u64 {
        self.p[h][i][j]
    }

    /// Checks the structural identities every parameter table satisfies.
    pub fn check_invariants(&self) -> Result<(), String> {
        let d = self.diameter();
        if self.k.iter().sum::<u64>() != self.v {
            return Err("valencies do not sum to v".into());
        }
        for h in 0..=d {
            for i in 0..=d {
                let row: u64 = (0..=d).map(|j| self.p(h, i, j)).sum();
                if row != self.k[i] {
                    return Err(format!("sum_j p^{h}_{i}j = {row} != k_{i}"));
                }
                for j in 0..=d {
                    if self.p(h, i, j) != self.p(h, j, i) {
                        return Err(format!("p^{h}_{i}{j} not symmetric"));
                    }
                    if self.k[h] * self.p(h, i, j) != self.k[i] * self.p(i, h, j) {
                        return Err(format!("k_h p^{h}_{i}{j} != k_i p^{i}_{h}{j}"));
                    }
                    let expect0 = if i == j { self.k[i] } else { 0 };
                    if self.p(0, i, j) != expect0 {
                        return Err(format!("p^0_{i}{j} wrong"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `(v, k, lambda, mu)` of a strongly regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SrgParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl SrgParams {
    /// Parameters of the `n x n` rook (lattice) graph.
    pub fn lattice(n: u64) -> Self {
        SrgParams {
            v: n * n,
            k: 2 * (n - 1),
            lambda: n - 2,
            mu: 2,
        }
    }

    /// `n` if these are the parameters of the `n x n` lattice graph.
    pub fn lattice_order(&self) -> Option<u64> {
        let n = (self.v as f64).sqrt().round() as u64;
        (n >= 2 && *self == SrgParams::lattice(n)).then_some(n)
    }
}

impl std::fmt::Display for SrgParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {}, {})", self.v, self.k, self.lambda, self.mu)
    }
}

/// The tridiagonal matrix `L1` with `L1[h][j] = p^h_1j`.
pub fn intersection_matrix(arr: &IntersectionArray) -> RatMatrix {
    let d = arr.diameter();
    RatMatrix::from_fn(d + 1, d + 1, |h, j| {
        let v = if j + 1 == h {
            arr.c_at(h)
        } else if j == h {
            arr.a_at(h)
        } else if j == h + 1 {
            arr.b_at(h)
        } else {
            0
        };
        Rational::from(v)
    })
}

fn to_count(x: &Rational) -> Option<u64> {
    x.to_u64()
}

/// Computes the full p-table via `L1 Li = b_{i-1} L_{i-1} + a_i Li + c_{i+1} L_{i+1}`,
/// where `(Li)[h][j] = p^h_ij`.
pub fn intersection_numbers(arr: &IntersectionArray) -> Result<ParameterTable, DrgError> {
    let d = arr.diameter();
    let l1 = intersection_matrix(arr);
    let mut ls = vec![RatMatrix::identity(d + 1), l1.clone()];
    for i in 1..d {
        let prod = &l1 * &ls[i];
        let b_prev = Rational::from(arr.b_at(i - 1));
        let a_i = Rational::from(arr.a_at(i));
        let c_next = Rational::from(arr.c_at(i + 1));
        let next = RatMatrix::from_fn(d + 1, d + 1, |h, j| {
            (prod.get(h, j) - &b_prev * ls[i - 1].get(h, j) - &a_i * ls[i].get(h, j)) / &c_next
        });
        ls.push(next);
    }

    let mut p = vec![vec![vec![0u64; d + 1]; d + 1]; d + 1];
    for (i, li) in ls.iter().enumerate() {
        for (h, ph) in p.iter_mut().enumerate() {
            for j in 0..=d {
                let x = li.get(h, j);
                ph[i][j] = to_count(x).ok_or_else(|| DrgError::NonIntegralParameters {
                    h,
                    i,
                    j,
                    value: x.clone(),
                })?;
            }
        }
    }

    // k_i = b0...b_{i-1} / c1...c_i
    let mut k = vec![Rational::one()];
    for i in 1..=d {
        let next = &k[i - 1] * Rational::from(arr.b_at(i - 1)) / Rational::from(arr.c_at(i));
        k.push(next);
    }
    let k: Vec<u64> = k
        .iter()
        .enumerate()
        .map(|(i, x)| {
            to_count(x).ok_or_else(|| DrgError::NonIntegralParameters {
                h: 0,
                i,
                j: i,
                value: x.clone(),
            })
        })
        .collect::<Result<_, _>>()?;
    let v = k.iter().sum();
    Ok(ParameterTable { v, k, p })
}

/// SRG parameters of the distance-`i` graph, when its `mu` is well defined.
pub fn distance_graph_srg_params(pt: &ParameterTable, i: usize) -> Result<SrgParams, DrgError> {
    let d = pt.diameter();
    if i == 0 || i > d {
        return Err(DrgError::InvalidIndex(i));
    }
    let mut mus = (1..=d).filter(|&j| j != i).map(|j| (j, pt.p(j, i, i)));
    let (_, mu) = mus.next().ok_or(DrgError::InvalidIndex(i))?;
    let values: Vec<(usize, u64)> = (1..=d).filter(|&j| j != i).map(|j| (j, pt.p(j, i, i))).collect();
    if mus.any(|(_, m)| m != mu) {
        return Err(DrgError::NotSrgLike { index: i, values });
    }
    Ok(SrgParams {
        v: pt.v,
        k: pt.k[i],
        lambda: pt.p(i, i, i),
        mu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn target() -> ParameterTable {
        intersection_numbers(&"{55,54,2;1,1,54}".parse().unwrap()).unwrap()
    }

    #[test]
    fn target_table() {
        let pt = target();
        assert_eq!(pt.v, 3136);
        assert_eq!(pt.k, vec![1, 55, 2970, 110]);
        assert_eq!(pt.p[1], vec![vec![0, 1, 0, 0], vec![1, 0, 54, 0], vec![0, 54, 2808, 108], vec![0, 0, 108, 2]]);
        assert_eq!(pt.p[2], vec![vec![0, 0, 1, 0], vec![0, 1, 52, 2], vec![1, 52, 2811, 106], vec![0, 2, 106, 2]]);
        assert_eq!(pt.p[3], vec![vec![0, 0, 0, 1], vec![0, 0, 54, 1], vec![0, 54, 2862, 54], vec![1, 1, 54, 54]]);
        pt.check_invariants().unwrap();
    }

    #[test]
    fn cube_table() {
        let pt = intersection_numbers(&"{3,2,1;1,2,3}".parse().unwrap()).unwrap();
        assert_eq!(pt.k, vec![1, 3, 3, 1]);
        assert_eq!(pt.v, 8);
        assert_eq!(pt.p(1, 1, 1), 0);
        assert_eq!(pt.p(2, 1, 1), 2);
    }

    #[test]
    fn diameter_two_lambda() {
        for (b0, b1, c2) in [(3, 2, 1), (5, 4, 1), (7, 6, 1), (10, 6, 4), (6, 4, 4)] {
            let arr = IntersectionArray::new(vec![b0, b1], vec![1, c2]).unwrap();
            let pt = intersection_numbers(&arr).unwrap();
            assert_eq!(pt.p(1, 1, 1), b0 - b1 - 1);
            pt.check_invariants().unwrap();
        }
    }

    #[test]
    fn non_integral_rejected() {
        // k2 = 4*2/3 is not an integer
        let arr = IntersectionArray::new(vec![4, 2], vec![1, 3]).unwrap();
        assert!(matches!(intersection_numbers(&arr), Err(DrgError::NonIntegralParameters { .. })));
    }

    #[test]
    fn distance_graphs_of_target() {
        let pt = target();
        assert_eq!(
            distance_graph_srg_params(&pt, 3).unwrap(),
            SrgParams { v: 3136, k: 110, lambda: 54, mu: 2 }
        );
        assert_eq!(SrgParams::lattice(56), distance_graph_srg_params(&pt, 3).unwrap());
        assert!(matches!(distance_graph_srg_params(&pt, 2), Err(DrgError::NotSrgLike { index: 2, .. })));
        assert!(matches!(distance_graph_srg_params(&pt, 1), Err(DrgError::NotSrgLike { .. })));
    }

    #[test]
    fn lattice_order_detection() {
        assert_eq!(SrgParams::lattice(8).lattice_order(), Some(8));
        assert_eq!(SrgParams { v: 64, k: 14, lambda: 6, mu: 3 }.lattice_order(), None);
    }
}
