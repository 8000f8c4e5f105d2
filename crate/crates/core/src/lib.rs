//! Exact computations with transvectants of binary forms: quadratic
//! syzygies between them, the Wigner symbols that encode their
//! coefficients, and the symmetric-group identities in the same family.

pub mod error;
pub mod poly;
pub mod random;
pub mod rational;
pub mod symgroup;
pub mod syzygy;
pub mod transvectant;
pub mod wigner;

pub use error::{Error, Result};
pub use poly::{bracket, MultiForm, PairOrder, VarPair};
pub use rational::Q;
pub use transvectant::{transvect, BinaryForm, Convention};
