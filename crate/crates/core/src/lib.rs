//! QUBO and Ising formulations of the Bernstein-Vazirani and Simon
//! hidden-string problems.
//!
//! The crate builds the Hamiltonians that an annealing machine would be
//! programmed with, solves them either exhaustively or with simulated
//! annealing, and runs the full recovery protocols against sealed oracles
//! while counting every oracle query and every solver call.
//!
//! ```
//! use aqc_hidden::{builders, model::exhaustive_solve, BitVector};
//!
//! let a = BitVector::from_integer(0b1010, 4);
//! let model = builders::build_bv_qubo_from_bits(&a);
//! let spectrum = exhaustive_solve(&model, 24).unwrap();
//! assert_eq!(spectrum.ground_states(), vec![a]);
//! ```

pub mod anneal;
pub mod bits;
pub mod builders;
pub mod cli;
pub mod config;
mod error;
pub mod model;
pub mod oracles;
pub mod protocol;
pub mod qubo_format;
pub mod rng;

pub use bits::BitVector;
pub use error::{Error, Result};
pub use model::{Coeff, IsingModel, QuboModel, Spectrum, VarLabel};
