//! Exact harmonic analysis on the rank-two value group `Γ = Z ⊕ Z`.

pub mod element;
pub mod error;
pub mod fourier;
pub mod heisenberg;
pub mod oracle;
pub mod rank1;
pub mod rank2;
pub mod sample;
pub mod scalar;
pub mod suites;
pub mod torsor;
pub mod value_group;

pub use error::{Error, Result};
