//! Classical parameters of a distance-regular graph computed from its
//! intersection array.

mod array;
mod params;
mod spectral;

pub use array::IntersectionArray;
pub use params::{distance_graph_srg_params, intersection_matrix, intersection_numbers, ParameterTable, SrgParams};
pub use spectral::{eigenmatrices, krein_table, spectrum, standard_sequence, EigenmatrixPair, KreinTable, Spectrum};

use crate::exactmath::{CharPolyError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DrgError {
    #[error("cannot parse intersection array {0:?}; expected {{b0,...,b_(d-1);c1,...,c_d}}")]
    ParseArray(String),
    #[error("invalid intersection array: {0}")]
    InvalidArray(String),
    #[error("p^{h}_{i}{j} = {value} is not a non-negative integer")]
    NonIntegralParameters { h: usize, i: usize, j: usize, value: Rational },
    #[error(transparent)]
    Spectrum(#[from] CharPolyError),
    #[error("eigenvalue {eigenvalue} has multiplicity {multiplicity}, not a positive integer")]
    NonIntegralMultiplicity { eigenvalue: Rational, multiplicity: Rational },
    #[error("Krein parameter q^{h}_{i}{j} = {value} is negative")]
    NegativeKrein { i: usize, j: usize, h: usize, value: Rational },
    #[error("distance-{index} graph is not strongly regular: p^j_ii over j = {values:?}")]
    NotSrgLike { index: usize, values: Vec<(usize, u64)> },
    #[error("distance index {0} out of range")]
    InvalidIndex(usize),
}
