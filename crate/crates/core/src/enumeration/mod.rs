//! Combinatorial oracles: closed-form quadrangulation counts, brute-force
//! enumeration of vacuum ribbon graphs, and the order-λ² graph expansion
//! of `F⁽¹⁾`.

mod appendix;
mod counts;
mod ribbon;

pub use appendix::{appendix_a_identities, appendix_sums, AppendixReport, AppendixSums};
pub use counts::{quadrangulation_counts, CountKind};
pub use ribbon::{
    enumerate_vacuum, perfect_matchings, GenusWeight, GraphClass, RibbonGraph, VacuumEnumeration, MAX_VERTICES,
};
