//! Projector tomography: Jordan-block geometry of projector pairs,
//! Schur–Weyl sampling, moment bounds, pretty-good-measurement learners and
//! the bootstrap from a trace-distance learner to a Bures-distance learner.

pub mod bootstrap;
pub mod bounds;
pub mod error;
pub mod jordan;
pub mod output;
pub mod pgm;
pub mod quantum;
pub mod rep_theory;
pub mod rng;
pub mod selftest;
pub mod stats;
pub mod wss;

pub use error::{Error, Result};
pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
pub use rng::SeededRng;
