//! Topological recursion for the single-eigenvalue curve and the closed
//! forms of `Ω₁,₁` valid for any number of eigenvalues.

pub mod closed;
pub mod engine;

pub use closed::{
    bergman_projective_connection, omega11_closed, omega11_h_pieces, omega11_parts, omega11_rhs_at,
    symplectic_sides, Omega11Parts, Part,
};
pub use engine::{
    build_form, evaluate, evaluate_h, loop_equation_check, symmetry_checks, tr_omega, Convention, Form, Key,
    OmegaResult,
};
