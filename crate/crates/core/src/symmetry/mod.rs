//! Relabelling of base triples and the coupled relations it induces between
//! copies of a parametric family.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactmath::{rref, AffineSolution, RatMatrix, Rational};
use crate::triples::{cell_index, cell_of_index, format_affine, CellEquation, TripleConfig, TripleError, TripleFamily};

/// A permutation of the roles of `(u, v, w)`.
///
/// `roles[k]` is the old position that becomes position `k`: the relabelled
/// base triple is `(t[roles[0]], t[roles[1]], t[roles[2]])`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TriplePermutation {
    pub roles: [usize; 3],
}

impl TriplePermutation {
    pub const IDENTITY: TriplePermutation = TriplePermutation { roles: [0, 1, 2] };
    /// `(u, w, v)`.
    pub const PRIME: TriplePermutation = TriplePermutation { roles: [0, 2, 1] };
    /// `(v, u, w)`.
    pub const STAR: TriplePermutation = TriplePermutation { roles: [1, 0, 2] };
    /// `(w, v, u)`.
    pub const TILDE: TriplePermutation = TriplePermutation { roles: [2, 1, 0] };

    pub fn all() -> [TriplePermutation; 6] {
        [
            Self::IDENTITY,
            Self::PRIME,
            Self::STAR,
            Self::TILDE,
            TriplePermutation { roles: [1, 2, 0] },
            TriplePermutation { roles: [2, 0, 1] },
        ]
    }

    /// Suffix used for parameter copies.
    pub fn suffix(&self) -> String {
        match self.roles {
            [0, 1, 2] => String::new(),
            [0, 2, 1] => "'".into(),
            [1, 0, 2] => "*".into(),
            [2, 1, 0] => "~".into(),
            r => {
                let names = ['u', 'v', 'w'];
                format!("^{}{}{}", names[r[0]], names[r[1]], names[r[2]])
            }
        }
    }

    fn distance(cfg: &TripleConfig, a: usize, b: usize) -> usize {
        match (a.min(b), a.max(b)) {
            (0, 1) => cfg.duv,
            (0, 2) => cfg.duw,
            (1, 2) => cfg.dvw,
            _ => 0,
        }
    }

    pub fn apply_config(&self, cfg: TripleConfig) -> TripleConfig {
        let r = self.roles;
        TripleConfig::new(
            Self::distance(&cfg, r[0], r[1]),
            Self::distance(&cfg, r[0], r[2]),
            Self::distance(&cfg, r[1], r[2]),
        )
    }

    /// Old index `e` read by new index `c`: `e[roles[k]] = c[k]`.
    pub fn source_index(&self, c: [usize; 3]) -> [usize; 3] {
        let mut e = [0; 3];
        for k in 0..3 {
            e[self.roles[k]] = c[k];
        }
        e
    }

    pub fn source_cell(&self, d: usize, cell: usize) -> usize {
        let (i, j, h) = cell_of_index(d, cell);
        let [a, b, c] = self.source_index([i, j, h]);
        cell_index(d, a, b, c)
    }

    /// Table of the relabelled triple: `new[c] = old[source_cell(c)]`.
    pub fn apply_point(&self, d: usize, point: &[i64]) -> Vec<i64> {
        (0..point.len()).map(|c| point[self.source_cell(d, c)]).collect()
    }

    /// Relabel by `self`, then by `other`.
    pub fn then(&self, other: &TriplePermutation) -> TriplePermutation {
        TriplePermutation {
            roles: [self.roles[other.roles[0]], self.roles[other.roles[1]], self.roles[other.roles[2]]],
        }
    }

    pub fn inverse(&self) -> TriplePermutation {
        let mut roles = [0; 3];
        for k in 0..3 {
            roles[self.roles[k]] = k;
        }
        TriplePermutation { roles }
    }

    /// Non-identity permutations that fix the configuration.
    pub fn stabilizer(cfg: TripleConfig) -> Vec<TriplePermutation> {
        Self::all()
            .into_iter()
            .filter(|s| *s != Self::IDENTITY && s.apply_config(cfg) == cfg)
            .collect()
    }
}

impl fmt::Display for TriplePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ['u', 'v', 'w'];
        let r = self.roles;
        write!(f, "({},{},{})", names[r[0]], names[r[1]], names[r[2]])
    }
}

fn permute_vec<T: Clone>(perm: &TriplePermutation, d: usize, v: &[T]) -> Vec<T> {
    (0..v.len()).map(|c| v[perm.source_cell(d, c)].clone()).collect()
}

/// Family of the relabelled base triple. The parameters keep their meaning;
/// only cell positions move.
pub fn permute_family(fam: &TripleFamily, sigma: &TriplePermutation) -> Result<TripleFamily, TripleError> {
    let d = fam.d;
    let config = sigma.apply_config(fam.config);
    let equations = fam
        .equations
        .iter()
        .map(|e| CellEquation {
            coeffs: permute_vec(sigma, d, &e.coeffs),
            rhs: e.rhs.clone(),
            label: format!("{}{}", e.label, sigma.suffix()),
        })
        .collect();
    let inequalities = fam
        .inequalities
        .iter()
        .map(|e| crate::triples::CellInequality {
            coeffs: permute_vec(sigma, d, &e.coeffs),
            rhs: e.rhs.clone(),
            label: format!("{}{}", e.label, sigma.suffix()),
        })
        .collect();
    let upper = permute_vec(sigma, d, &fam.upper);
    let inv = sigma.inverse();
    let closure = fam.closure.iter().map(|rho| inv.then(rho).then(sigma)).collect();
    let sol = &fam.solution;
    let solution = AffineSolution {
        variables: crate::triples::cell_names(d),
        particular: permute_vec(sigma, d, &sol.particular),
        basis: sol.basis.iter().map(|b| permute_vec(sigma, d, b)).collect(),
        free: sol.free.iter().map(|&f| inv.source_cell(d, f)).collect(),
    };
    Ok(TripleFamily {
        config,
        d,
        equations,
        inequalities,
        upper,
        solution,
        closure,
    })
}

/// `copy(sigma)[cell] = original[source_cell(cell)]` written over the
/// parameters `t` of the original and `t^sigma` of the copy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoupledRelation {
    pub perm: TriplePermutation,
    pub cell: usize,
    pub source_cell: usize,
    /// Coefficients on the copy's parameters.
    pub copy_coeffs: Vec<Rational>,
    /// Coefficients on the original parameters.
    pub orig_coeffs: Vec<Rational>,
    /// `copy_coeffs . t^sigma - orig_coeffs . t = rhs`.
    pub rhs: Rational,
    pub text: String,
}

/// Coupled linear system over `[copies..., original]` parameter blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoupledSystem {
    pub perms: Vec<TriplePermutation>,
    pub dim: usize,
    pub relations: Vec<CoupledRelation>,
    pub variables: Vec<String>,
    pub matrix: RatMatrix,
    pub rhs: Vec<Rational>,
}

/// A term `coeff * [cell]` evaluated in a given copy (`None` = original).
#[derive(Debug, Clone)]
pub struct CopyTerm {
    pub copy: Option<TriplePermutation>,
    pub cell: usize,
    pub coeff: Rational,
}

impl CopyTerm {
    pub fn new(copy: Option<TriplePermutation>, cell: usize, coeff: i64) -> Self {
        CopyTerm { copy, cell, coeff: coeff.into() }
    }
}

impl CoupledSystem {
    fn block(&self, copy: Option<TriplePermutation>) -> usize {
        match copy {
            None => self.perms.len() * self.dim,
            Some(p) => self.dim * self.perms.iter().position(|&q| q == p).expect("copy not in system"),
        }
    }

    /// True when `sum terms = rhs` holds on every solution of the coupled
    /// system, each family copy being evaluated in its own parameters.
    pub fn implies(&self, fam: &TripleFamily, terms: &[CopyTerm], rhs: &Rational) -> Result<bool, TripleError> {
        let n = self.variables.len();
        let mut coeffs = vec![Rational::zero(); n];
        let mut constant = Rational::zero();
        for t in terms {
            let (c, a) = fam.expression(t.cell);
            constant += &(&t.coeff * &c);
            let off = self.block(t.copy);
            for (k, ak) in a.iter().enumerate() {
                coeffs[off + k] += &(&t.coeff * ak);
            }
        }
        let sol = crate::exactmath::rref_parametric_named(&self.matrix, &self.rhs, self.variables.clone())
            .map_err(|w| TripleError::Infeasible { equations: vec!["coupled system".into()], witness: w })?;
        Ok(sol.implies(&coeffs, &(rhs - &constant)))
    }
}

pub fn coupled_system(fam: &TripleFamily, perms: &[TriplePermutation]) -> CoupledSystem {
    let d = fam.d;
    let m = fam.dimension();
    let names = fam.parameter_names();
    let mut variables = Vec::new();
    for p in perms {
        variables.extend(names.iter().map(|x| format!("{x}{}", p.suffix())));
    }
    variables.extend(names.iter().map(|x| x.to_string()));
    let orig_off = perms.len() * m;

    let mut relations = Vec::new();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (pi, p) in perms.iter().enumerate() {
        let copy_names: Vec<String> = names.iter().map(|x| format!("{x}{}", p.suffix())).collect();
        let copy_refs: Vec<&str> = copy_names.iter().map(String::as_str).collect();
        for cell in 0..fam.num_cells() {
            let src = p.source_cell(d, cell);
            let (c1, a1) = fam.expression(cell);
            let (c0, a0) = fam.expression(src);
            if a1.iter().all(Rational::is_zero) && a0.iter().all(Rational::is_zero) && c1 == c0 {
                continue;
            }
            let mut row = vec![Rational::zero(); variables.len()];
            for k in 0..m {
                row[pi * m + k] = a1[k].clone();
                row[orig_off + k] = -&a0[k];
            }
            let r = &c0 - &c1;
            let text = format!(
                "{}{} = {} = {} = {}",
                crate::triples::cell_name(d, cell),
                p.suffix(),
                format_affine(&c1, &a1, &copy_refs),
                crate::triples::cell_name(d, src),
                format_affine(&c0, &a0, &names),
            );
            rows.push(row);
            rhs.push(r.clone());
            relations.push(CoupledRelation {
                perm: *p,
                cell,
                source_cell: src,
                copy_coeffs: a1,
                orig_coeffs: a0,
                rhs: r,
                text,
            });
        }
    }
    let matrix = if rows.is_empty() {
        RatMatrix::zeros(0, variables.len())
    } else {
        RatMatrix::from_rows(rows)
    };
    CoupledSystem {
        perms: perms.to_vec(),
        dim: m,
        relations,
        variables,
        matrix,
        rhs,
    }
}

/// Result of symmetrizing a family under a set of relabellings fixing its configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symmetrized {
    pub family: TripleFamily,
    pub relations: Vec<CoupledRelation>,
    /// Projected constraints on the original parameters, as cell equations.
    pub projected: Vec<CellEquation>,
}

/// Couples the family with one parameter copy per permutation, eliminates
/// the copies (their columns come first in the elimination order) and adds
/// what remains as equations on the original cells.
pub fn symmetrize_families(fam: &TripleFamily, stabilizer: &[TriplePermutation]) -> Result<Symmetrized, TripleError> {
    for s in stabilizer {
        if s.apply_config(fam.config) != fam.config {
            return Err(TripleError::NotInStabilizer(*s, fam.config));
        }
    }
    let perms: Vec<TriplePermutation> = stabilizer.iter().copied().filter(|s| *s != TriplePermutation::IDENTITY).collect();
    if perms.is_empty() {
        return Ok(Symmetrized {
            family: fam.clone(),
            relations: Vec::new(),
            projected: Vec::new(),
        });
    }
    let sys = coupled_system(fam, &perms);
    let m = fam.dimension();
    let orig_off = perms.len() * m;
    let reduced = rref(&sys.matrix, &sys.rhs).map_err(|w| TripleError::Infeasible {
        equations: w.rows.iter().map(|&r| sys.relations[r].text.clone()).collect(),
        witness: w,
    })?;
    let n = fam.num_cells();
    let projected: Vec<CellEquation> = reduced
        .iter()
        .filter(|r| r.pivot >= orig_off)
        .map(|r| {
            // sum_k a_k t_k = rhs, t_k = [free_k]
            let mut coeffs = vec![Rational::zero(); n];
            for k in 0..m {
                coeffs[fam.solution.free[k]] = r.coeffs[orig_off + k].clone();
            }
            let names = fam.parameter_names();
            let text = format_affine(&Rational::zero(), &r.coeffs[orig_off..], &names);
            CellEquation {
                coeffs,
                rhs: r.rhs.clone(),
                label: format!("symmetrization: {text} = {}", r.rhs),
            }
        })
        .collect();
    let family = fam.with_equations(projected.clone())?.with_closure(perms.iter().copied());
    Ok(Symmetrized {
        family,
        relations: sys.relations,
        projected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_maps_match_notation() {
        // [ijh]' = [ihj], [ijh]* = [jih], [ijh]~ = [hji]
        assert_eq!(TriplePermutation::PRIME.source_index([1, 2, 3]), [1, 3, 2]);
        assert_eq!(TriplePermutation::STAR.source_index([1, 2, 3]), [2, 1, 3]);
        assert_eq!(TriplePermutation::TILDE.source_index([1, 2, 3]), [3, 2, 1]);
    }

    #[test]
    fn config_action() {
        let cfg = TripleConfig::new(2, 2, 3);
        assert_eq!(TriplePermutation::PRIME.apply_config(cfg), cfg);
        assert_eq!(TriplePermutation::STAR.apply_config(cfg), TripleConfig::new(2, 3, 2));
        assert_eq!(TriplePermutation::stabilizer(cfg), vec![TriplePermutation::PRIME]);
        assert_eq!(TriplePermutation::stabilizer(TripleConfig::new(2, 2, 2)).len(), 5);
        assert!(TriplePermutation::stabilizer(TripleConfig::new(1, 2, 3)).is_empty());
    }

    #[test]
    fn group_laws() {
        let d = 3;
        let point: Vec<i64> = (0..27).collect();
        for a in TriplePermutation::all() {
            assert_eq!(a.then(&a.inverse()), TriplePermutation::IDENTITY);
            for b in TriplePermutation::all() {
                // relabel by a, then by b
                let step = b.apply_point(d, &a.apply_point(d, &point));
                assert_eq!(step, a.then(&b).apply_point(d, &point));
                let cfg = TripleConfig::new(1, 2, 3);
                assert_eq!(b.apply_config(a.apply_config(cfg)), a.then(&b).apply_config(cfg));
            }
        }
        for t in [TriplePermutation::PRIME, TriplePermutation::STAR, TriplePermutation::TILDE] {
            assert_eq!(t.apply_point(d, &t.apply_point(d, &point)), point);
        }
    }
}
