//! Dense complex linear algebra for quantum states: construction, Haar
//! sampling, distance measures, symmetric-subspace utilities and binary
//! projective measurements.

pub mod distance;
pub mod haar;
pub mod linalg;
pub mod measure;
pub mod state;
pub mod symmetric;

pub use distance::{affinity, bures_distance, fidelity, trace_distance};
pub use haar::{haar_projector, haar_state, haar_unitary, random_density};
pub use linalg::{ComplexMatrix, ComplexVector, C64};
pub use measure::{measure_binary, restrict_to_subspace, round_to_projector_state, Outcome};
pub use state::{DensityMatrix, Projector, PureState};
pub use symmetric::{sym_dimension, sym_projector};
