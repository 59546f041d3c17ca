//! Harmonic analysis on symmetric graphs of type `k` and order `r`.

pub mod boundary;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod numerics;
pub mod registry;
pub mod spectral;
pub mod transforms;
pub mod verify;
pub mod vertex;
pub mod wave;

pub use error::{Error, Result};
pub use group::{GraphParams, ReducedWord, Syllable};
pub use numerics::{AlgebraicValue, Scalar};
pub use vertex::VertexFun;
