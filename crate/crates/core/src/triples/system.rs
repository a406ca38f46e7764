use serde::{Deserialize, Serialize};

use super::config::{cell_index, cell_name};
use super::{TripleConfig, TripleError};
use crate::drg::{KreinTable, ParameterTable};
use crate::exactmath::{RatMatrix, Rational};

/// A linear equation `sum coeffs[c] * [c] = rhs` over the `d^3` cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellEquation {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
    pub label: String,
}

/// A linear inequality `sum coeffs[c] * [c] <= rhs` over the cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellInequality {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
    pub label: String,
}

/// The linear system for one base-triple configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleSystem {
    pub config: TripleConfig,
    pub d: usize,
    pub equations: Vec<CellEquation>,
    /// `min(p^duv_ij, p^duw_ih, p^dvw_jh)` per cell.
    pub upper: Vec<u64>,
}

impl TripleSystem {
    pub fn num_cells(&self) -> usize {
        self.d * self.d * self.d
    }

    pub fn matrix(&self) -> (RatMatrix, Vec<Rational>) {
        let a = RatMatrix::from_rows(self.equations.iter().map(|e| e.coeffs.clone()).collect());
        let b = self.equations.iter().map(|e| e.rhs.clone()).collect();
        (a, b)
    }

    /// Checks every equation at an integer point.
    pub fn holds_at(&self, point: &[i64]) -> bool {
        self.equations.iter().all(|e| {
            let lhs: Rational = e
                .coeffs
                .iter()
                .zip(point)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, &x)| c * Rational::from(x))
                .sum();
            lhs == e.rhs
        })
    }
}

/// Krein data needed for the optional `S_ijh = 0` equations.
#[derive(Debug, Clone, Copy)]
pub struct KreinInput<'a> {
    pub table: &'a KreinTable,
    pub q: &'a RatMatrix,
}

/// Value of a cell with at least one zero index, or `None` for an unknown.
///
/// A zero index means the vertex is one of `u, v, w` itself.
pub fn boundary_value(cfg: &TripleConfig, i: usize, j: usize, h: usize) -> Option<u64> {
    let zeros = [i, j, h].iter().filter(|&&x| x == 0).count();
    let delta = |a: usize, b: usize| u64::from(a == b);
    match zeros {
        0 => None,
        1 if i == 0 => Some(delta(j, cfg.duv) * delta(h, cfg.duw)),
        1 if j == 0 => Some(delta(i, cfg.duv) * delta(h, cfg.dvw)),
        1 => Some(delta(i, cfg.duw) * delta(j, cfg.dvw)),
        _ => Some(0),
    }
}

fn unit(n: usize, c: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[c] = Rational::one();
    v
}

pub fn assemble_system(
    pt: &ParameterTable,
    krein: Option<KreinInput<'_>>,
    cfg: TripleConfig,
) -> Result<TripleSystem, TripleError> {
    cfg.check(pt)?;
    let d = pt.diameter();
    let n = d * d * d;
    let (w, v, u) = (cfg.duv, cfg.duw, cfg.dvw);
    let mut equations = Vec::new();

    // sum over the u-coordinate: x ranges over vertices with d(x,v)=j, d(x,w)=h
    for j in 1..=d {
        for h in 1..=d {
            let mut coeffs = vec![Rational::zero(); n];
            for l in 1..=d {
                coeffs[cell_index(d, l, j, h)] = Rational::one();
            }
            let rhs = pt.p(u, j, h) as i64 - boundary_value(&cfg, 0, j, h).unwrap() as i64;
            equations.push(CellEquation { coeffs, rhs: rhs.into(), label: format!("sum_l [l{j}{h}]") });
        }
    }
    for i in 1..=d {
        for h in 1..=d {
            let mut coeffs = vec![Rational::zero(); n];
            for l in 1..=d {
                coeffs[cell_index(d, i, l, h)] = Rational::one();
            }
            let rhs = pt.p(v, i, h) as i64 - boundary_value(&cfg, i, 0, h).unwrap() as i64;
            equations.push(CellEquation { coeffs, rhs: rhs.into(), label: format!("sum_l [{i}l{h}]") });
        }
    }
    for i in 1..=d {
        for j in 1..=d {
            let mut coeffs = vec![Rational::zero(); n];
            for l in 1..=d {
                coeffs[cell_index(d, i, j, l)] = Rational::one();
            }
            let rhs = pt.p(w, i, j) as i64 - boundary_value(&cfg, i, j, 0).unwrap() as i64;
            equations.push(CellEquation { coeffs, rhs: rhs.into(), label: format!("sum_l [{i}{j}l]") });
        }
    }

    let mut upper = vec![0u64; n];
    for i in 1..=d {
        for j in 1..=d {
            for h in 1..=d {
                let c = cell_index(d, i, j, h);
                let bound = pt.p(w, i, j).min(pt.p(v, i, h)).min(pt.p(u, j, h));
                upper[c] = bound;
                if bound == 0 {
                    equations.push(CellEquation {
                        coeffs: unit(n, c),
                        rhs: Rational::zero(),
                        label: format!("{} = 0 (zero intersection number)", cell_name(d, c)),
                    });
                }
            }
        }
    }

    if let Some(k) = krein {
        for (i, j, h) in k.table.vanishing() {
            equations.push(krein_equation(&cfg, d, k.q, i, j, h));
        }
    }

    Ok(TripleSystem { config: cfg, d, equations, upper })
}

/// `S_ijh = sum_{r,s,t} Q_ri Q_sj Q_th [rst] = 0` with boundary cells folded into the constant.
fn krein_equation(cfg: &TripleConfig, d: usize, q: &RatMatrix, i: usize, j: usize, h: usize) -> CellEquation {
    let n = d * d * d;
    let mut coeffs = vec![Rational::zero(); n];
    let mut constant = Rational::zero();
    for r in 0..=d {
        for s in 0..=d {
            for t in 0..=d {
                let w = q.get(r, i) * q.get(s, j) * q.get(t, h);
                if w.is_zero() {
                    continue;
                }
                match boundary_value(cfg, r, s, t) {
                    Some(0) => {}
                    Some(b) => constant += &(w * Rational::from(b)),
                    None => coeffs[cell_index(d, r, s, t)] += &w,
                }
            }
        }
    }
    CellEquation {
        coeffs,
        rhs: -constant,
        label: format!("S_{i}{j}{h} = 0 (q^{h}_{i}{j} = 0)"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drg::intersection_numbers;

    #[test]
    fn boundary_deltas() {
        let cfg = TripleConfig::new(2, 1, 3);
        assert_eq!(boundary_value(&cfg, 0, 2, 1), Some(1));
        assert_eq!(boundary_value(&cfg, 0, 2, 2), Some(0));
        assert_eq!(boundary_value(&cfg, 2, 0, 3), Some(1));
        assert_eq!(boundary_value(&cfg, 1, 3, 0), Some(1));
        assert_eq!(boundary_value(&cfg, 0, 0, 2), Some(0));
        assert_eq!(boundary_value(&cfg, 1, 1, 1), None);
    }

    #[test]
    fn target_211_system_shape() {
        let pt = intersection_numbers(&"{55,54,2;1,1,54}".parse().unwrap()).unwrap();
        let sys = assemble_system(&pt, None, TripleConfig::new(2, 1, 1)).unwrap();
        assert!(sys.equations.len() >= 27);
        // first block: sum_l [l j h] = p^1_jh - [0jh]; [0jh] = 1 only at (2,1)
        assert_eq!(sys.equations[0].rhs, Rational::from(0)); // p^1_11 = 0
        assert_eq!(sys.equations[3].rhs, Rational::from(53)); // p^1_21 - 1
        assert_eq!(sys.equations[4].rhs, Rational::from(2808)); // p^1_22
        // [111]: p^2_11 = 1, p^1_11 = 0
        assert_eq!(sys.upper[cell_index(3, 1, 1, 1)], 0);
        assert_eq!(sys.upper[cell_index(3, 2, 2, 2)], 2808);
    }

    #[test]
    fn unrealizable_rejected() {
        let pt = intersection_numbers(&"{55,54,2;1,1,54}".parse().unwrap()).unwrap();
        assert!(matches!(
            assemble_system(&pt, None, TripleConfig::new(1, 1, 1)),
            Err(TripleError::UnrealizableConfig(_))
        ));
    }
}
