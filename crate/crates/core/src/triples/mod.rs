//! Triple intersection numbers: the linear system for a base-triple
//! configuration, its parametric solution and the integer points.

mod config;
mod enumerate;
mod family;
mod system;

pub use config::{cell_index, cell_name, cell_names, cell_of_index, TripleConfig};
pub use enumerate::{enumerate_points, parameter_box, EnumerationLimits, DEFAULT_POINT_CAP};
pub use family::{format_affine, solve_family, TripleFamily};
pub use system::{assemble_system, boundary_value, CellEquation, CellInequality, KreinInput, TripleSystem};

use crate::exactmath::Inconsistent;
use crate::symmetry::TriplePermutation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TripleError {
    #[error("configuration {0} (duv,duw,dvw) is not realizable")]
    UnrealizableConfig(TripleConfig),
    #[error("cannot parse configuration {0:?}; expected duv,duw,dvw")]
    ParseConfig(String),
    #[error("infeasible triple system; inconsistent equations: {equations:?}")]
    Infeasible { equations: Vec<String>, witness: Inconsistent },
    #[error("more than {cap} integer points")]
    EnumerationTooLarge { cap: usize },
    #[error("{0} does not fix configuration {1}")]
    NotInStabilizer(TriplePermutation, TripleConfig),
}
