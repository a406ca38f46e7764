//! Exact parameters, triple intersection numbers and feasibility certificates
//! for distance-regular graphs given by an intersection array.

pub mod exactmath;
pub mod drg;
pub mod symmetry;
pub mod triples;
pub mod constraints;
pub mod pipeline;
pub mod oracle;
