use std::fmt;

use serde::{Deserialize, Serialize};

use super::config::{cell_index, cell_name, cell_names};
use super::enumerate::{enumerate_points, EnumerationLimits};
use super::system::{CellEquation, CellInequality, TripleSystem};
use super::{TripleConfig, TripleError};
use crate::exactmath::{rref_parametric_named, AffineSolution, RatMatrix, Rational};
use crate::symmetry::TriplePermutation;

/// Parametric solution of a triple system together with the bounds that
/// restrict it to feasible integer points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleFamily {
    pub config: TripleConfig,
    pub d: usize,
    pub equations: Vec<CellEquation>,
    pub inequalities: Vec<CellInequality>,
    pub upper: Vec<u64>,
    pub solution: AffineSolution,
    /// Relabellings under which the point set is required to be closed.
    pub closure: Vec<TriplePermutation>,
}

pub fn solve_family(system: &TripleSystem) -> Result<TripleFamily, TripleError> {
    TripleFamily::from_parts(
        system.config,
        system.d,
        system.equations.clone(),
        Vec::new(),
        system.upper.clone(),
        Vec::new(),
    )
}

impl TripleFamily {
    pub fn from_parts(
        config: TripleConfig,
        d: usize,
        equations: Vec<CellEquation>,
        inequalities: Vec<CellInequality>,
        upper: Vec<u64>,
        closure: Vec<TriplePermutation>,
    ) -> Result<Self, TripleError> {
        let solution = solve(d, &equations)?;
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

    pub fn num_cells(&self) -> usize {
        self.d * self.d * self.d
    }

    pub fn cell(&self, i: usize, j: usize, h: usize) -> usize {
        cell_index(self.d, i, j, h)
    }

    pub fn dimension(&self) -> usize {
        self.solution.dimension()
    }

    pub fn parameter_names(&self) -> Vec<&str> {
        self.solution.parameter_names()
    }

    /// Adds equations and re-solves.
    pub fn with_equations(&self, extra: impl IntoIterator<Item = CellEquation>) -> Result<Self, TripleError> {
        let mut equations = self.equations.clone();
        equations.extend(extra);
        TripleFamily::from_parts(
            self.config,
            self.d,
            equations,
            self.inequalities.clone(),
            self.upper.clone(),
            self.closure.clone(),
        )
    }

    pub fn with_inequalities(&self, extra: impl IntoIterator<Item = CellInequality>) -> Self {
        let mut fam = self.clone();
        fam.inequalities.extend(extra);
        fam
    }

    pub fn with_closure(&self, perms: impl IntoIterator<Item = TriplePermutation>) -> Self {
        let mut fam = self.clone();
        for p in perms {
            if !fam.closure.contains(&p) {
                fam.closure.push(p);
            }
        }
        fam
    }

    /// Affine expression `(constant, coefficient per parameter)` of a cell.
    pub fn expression(&self, cell: usize) -> (Rational, Vec<Rational>) {
        self.solution.expression(cell)
    }

    /// True when the cell is the same constant on the whole affine family.
    pub fn constant_value(&self, cell: usize) -> Option<Rational> {
        let (c, coeffs) = self.expression(cell);
        coeffs.iter().all(Rational::is_zero).then_some(c)
    }

    pub fn format_expression(&self, cell: usize) -> String {
        let (c, coeffs) = self.expression(cell);
        format_affine(&c, &coeffs, &self.parameter_names())
    }

    /// Checks equations, bounds and inequalities at a point.
    pub fn contains_point(&self, point: &[i64]) -> bool {
        if point.len() != self.num_cells() {
            return false;
        }
        if point.iter().zip(&self.upper).any(|(&x, &u)| x < 0 || x as u64 > u) {
            return false;
        }
        let dot = |coeffs: &[Rational]| -> Rational {
            coeffs
                .iter()
                .zip(point)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, &x)| c * Rational::from(x))
                .sum()
        };
        self.equations.iter().all(|e| dot(&e.coeffs) == e.rhs)
            && self.inequalities.iter().all(|e| dot(&e.coeffs) <= e.rhs)
    }

    /// Integer points with the default cap.
    pub fn points(&self) -> Result<Vec<Vec<i64>>, TripleError> {
        enumerate_points(self, EnumerationLimits::default())
    }

    /// `[min, max]` of a cell over the given points.
    pub fn cell_range(points: &[Vec<i64>], cell: usize) -> Option<(i64, i64)> {
        let lo = points.iter().map(|p| p[cell]).min()?;
        let hi = points.iter().map(|p| p[cell]).max()?;
        Some((lo, hi))
    }

    /// Table of `[ijh] = expression` lines, one per cell.
    pub fn table(&self) -> Vec<(String, String)> {
        (0..self.num_cells())
            .map(|c| (cell_name(self.d, c), self.format_expression(c)))
            .collect()
    }
}

fn solve(d: usize, equations: &[CellEquation]) -> Result<AffineSolution, TripleError> {
    let n = d * d * d;
    let a = if equations.is_empty() {
        RatMatrix::zeros(0, n)
    } else {
        RatMatrix::from_rows(equations.iter().map(|e| e.coeffs.clone()).collect())
    };
    let b: Vec<Rational> = equations.iter().map(|e| e.rhs.clone()).collect();
    rref_parametric_named(&a, &b, cell_names(d)).map_err(|w| TripleError::Infeasible {
        equations: w.rows.iter().map(|&r| equations[r].label.clone()).collect(),
        witness: w,
    })
}

/// Renders `c + sum a_k t_k` compactly, e.g. `-[333] + 2652`.
pub fn format_affine(constant: &Rational, coeffs: &[Rational], names: &[&str]) -> String {
    let mut out = String::new();
    for (a, name) in coeffs.iter().zip(names) {
        if a.is_zero() {
            continue;
        }
        let neg = a.is_negative();
        let mag = a.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != Rational::one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(name);
    }
    if out.is_empty() {
        return constant.to_string();
    }
    if !constant.is_zero() {
        out.push_str(if constant.is_negative() { " - " } else { " + " });
        out.push_str(&constant.abs().to_string());
    }
    out
}

impl fmt::Display for TripleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "config {} (duv,duw,dvw): {} parameter(s) [{}]",
            self.config,
            self.dimension(),
            self.parameter_names().join(", ")
        )?;
        for (name, expr) in self.table() {
            writeln!(f, "  {name} = {expr}")?;
        }
        for ineq in &self.inequalities {
            writeln!(f, "  subject to {}", ineq.label)?;
        }
        Ok(())
    }
}
