//! Clairvoyant demon problems as dependent percolation.
//!
//! Three finite-horizon problems on random sequences, each decided by a
//! frontier dynamic program and checked against brute-force oracles:
//!
//! * [`schedule`]: keep two iid walks on `{1..M}` apart by delaying them,
//!   i.e. a monotone open path in the grid where `(i,j)` is open iff
//!   `X_i != Y_j`.
//! * [`compat`]: delete 0s from two Bernoulli words so that no position
//!   carries two 1s.
//! * [`embed1d`]: embed one binary word in another with gaps at most `M`,
//!   with exact probabilities, the alternating-word recursion and moments.
//!
//! [`lattice2d`] covers the two-dimensional block construction and
//! visibility of words along self-avoiding paths; [`envmodels`] has the
//! column random environment and exact k-wise independence tests.

pub mod compat;
pub mod embed1d;
pub mod envmodels;
pub mod error;
pub mod estimate;
pub mod frontier;
pub mod lattice2d;
pub mod mc;
pub mod ratio;
pub mod rng;
pub mod schedule;
pub mod seq;
pub mod word;

pub use error::{Error, Result};
pub use estimate::Estimate;
pub use frontier::Frontier;
pub use mc::McPlan;
pub use ratio::Rational;
pub use rng::RngSpec;
pub use seq::{sample_uniform_sequence, IntSequence};
pub use word::{make_word, reduces_to, GapEncoding, Word, WordKind};
