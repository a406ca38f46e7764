//! Exact parametric solution of linear systems `A x = b` over the rationals.
//!
//! Elimination is Gauss-Jordan with pivot columns chosen left to right, so the
//! free variables are exactly the non-pivot columns and the parametrization is
//! a deterministic function of the column order.

use serde::{Deserialize, Serialize};

use super::{RatMatrix, Rational};

/// One non-zero row of a reduced row echelon form: `x[pivot] + sum coeffs = rhs`
/// where `coeffs[pivot] == 1` and every other pivot column is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedRow {
    pub pivot: usize,
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

/// Witness that `A x = b` has no solution: a multiplier vector `y` with
/// `yᵀA = 0` and `yᵀb != 0`. The rows with non-zero multiplier form an
/// inconsistent subsystem.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("inconsistent linear system (rows {rows:?} combine to 0 = {residual})")]
pub struct Inconsistent {
    pub multipliers: Vec<Rational>,
    pub rows: Vec<usize>,
    pub residual: Rational,
}

/// Full solution set of a consistent system in the form
/// `particular + sum_k t_k * basis[k]`, `t_k` ranging over the rationals.
///
/// `basis[k]` has a 1 at `free[k]` and zeros at every other free column, so
/// the parameter `t_k` is the value of variable `free[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineSolution {
    pub variables: Vec<String>,
    pub particular: Vec<Rational>,
    pub basis: Vec<Vec<Rational>>,
    pub free: Vec<usize>,
}

impl AffineSolution {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn parameter_names(&self) -> Vec<&str> {
        self.free.iter().map(|&f| self.variables[f].as_str()).collect()
    }

    /// Point of the solution set at the given parameter values.
    pub fn evaluate(&self, params: &[Rational]) -> Vec<Rational> {
        assert_eq!(params.len(), self.basis.len(), "wrong number of parameters");
        let mut x = self.particular.clone();
        for (t, b) in params.iter().zip(&self.basis) {
            if t.is_zero() {
                continue;
            }
            for (xi, bi) in x.iter_mut().zip(b) {
                if !bi.is_zero() {
                    *xi += &(t * bi);
                }
            }
        }
        x
    }

    /// Affine expression of variable `var` in the parameters: `(constant, coefficients)`.
    pub fn expression(&self, var: usize) -> (Rational, Vec<Rational>) {
        (
            self.particular[var].clone(),
            self.basis.iter().map(|b| b[var].clone()).collect(),
        )
    }

    /// True when `coeffs · x = rhs` holds for every point of the solution set.
    pub fn implies(&self, coeffs: &[Rational], rhs: &Rational) -> bool {
        let dot = |v: &[Rational]| -> Rational { coeffs.iter().zip(v).map(|(a, b)| a * b).sum() };
        &dot(&self.particular) == rhs && self.basis.iter().all(|b| dot(b).is_zero())
    }

    /// Checks `A·particular = b` and `A·basis = 0` exactly.
    pub fn satisfies(&self, a: &RatMatrix, b: &[Rational]) -> bool {
        a.mul_vec(&self.particular) == b
            && self
                .basis
                .iter()
                .all(|v| a.mul_vec(v).iter().all(Rational::is_zero))
    }
}

/// Reduced row echelon form of `[A | b]`. Returns the non-zero reduced rows,
/// or the inconsistency witness.
pub fn rref(a: &RatMatrix, b: &[Rational]) -> Result<Vec<ReducedRow>, Inconsistent> {
    assert_eq!(a.rows(), b.len(), "row count of A must equal length of b");
    let m = a.rows();
    let n = a.cols();
    // Working rows: n coefficient columns, 1 rhs column, m tracking columns.
    let mut rows: Vec<Vec<Rational>> = (0..m)
        .map(|r| {
            let mut row = a.row(r).to_vec();
            row.push(b[r].clone());
            row.extend((0..m).map(|c| if c == r { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..n {
        let Some(p) = (next..m).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        let inv = rows[next][col].recip();
        for x in rows[next].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == m {
            break;
        }
    }

    if let Some(bad) = rows[next..].iter().find(|row| !row[n].is_zero()) {
        let multipliers: Vec<Rational> = bad[n + 1..].to_vec();
        let rows_used = multipliers
            .iter()
            .enumerate()
            .filter(|(_, y)| !y.is_zero())
            .map(|(i, _)| i)
            .collect();
        return Err(Inconsistent {
            multipliers,
            rows: rows_used,
            residual: bad[n].clone(),
        });
    }

    Ok(rows
        .into_iter()
        .zip(pivots)
        .map(|(mut row, pivot)| {
            row.truncate(n + 1);
            let rhs = row.pop().expect("rhs column");
            ReducedRow { pivot, coeffs: row, rhs }
        })
        .collect())
}

/// Solves `A x = b` exactly, naming variables `x0, x1, ...`.
pub fn rref_parametric(a: &RatMatrix, b: &[Rational]) -> Result<AffineSolution, Inconsistent> {
    let names = (0..a.cols()).map(|i| format!("x{i}")).collect();
    rref_parametric_named(a, b, names)
}

pub fn rref_parametric_named(
    a: &RatMatrix,
    b: &[Rational],
    variables: Vec<String>,
) -> Result<AffineSolution, Inconsistent> {
    assert_eq!(variables.len(), a.cols(), "one name per column");
    let n = a.cols();
    let reduced = rref(a, b)?;
    let mut is_pivot = vec![false; n];
    for r in &reduced {
        is_pivot[r.pivot] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();

    let mut particular = vec![Rational::zero(); n];
    for r in &reduced {
        particular[r.pivot] = r.rhs.clone();
    }
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for r in &reduced {
                v[r.pivot] = -&r.coeffs[f];
            }
            v
        })
        .collect();

    Ok(AffineSolution {
        variables,
        particular,
        basis,
        free,
    })
}
