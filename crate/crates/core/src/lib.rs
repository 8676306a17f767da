//! Exact computation of genus-one invariants of the quartic Kontsevich model:
//! the deformed spectral curve, correlators `Ω_{g,n}`, the free energy
//! `F⁽¹⁾`, the Bergman τ-function, and combinatorial cross-checks.

pub mod algebra;
pub mod enumeration;
pub mod error;
pub mod freenergy;
pub mod insertion;
pub mod precision;
pub mod report;
pub mod spectral;
pub mod table;
pub mod trengine;
pub mod verify;

pub use error::{QkmError, Result};
