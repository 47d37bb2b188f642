//! Supersymmetry algebras from composition algebras: Clifford modules with
//! exact gamma-pairings, supertranslation algebras, square-zero supercharges
//! and their orbit classification.

pub mod clifford;
pub mod composition;

pub use clifford::{
    a_valued_pair, build_chiral_2d, build_chiral_2d_from_algebra, build_division_model,
    build_gamma_model, gamma_matrices, CliffordModel, GammaPairing, ModelKind, Multiplicity,
    ResidualReport, SpinBlock, WPairing,
};
pub use composition::{AlgebraKind, CompositionAlgebra};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SusyError {
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("mismatched algebras")]
    Mismatch,
    #[error("degenerate bilinear form")]
    DegenerateForm,
    #[error("supercharge is not square-zero")]
    NotSquareZero,
    #[error("invariants match no classification row")]
    Unclassified,
    #[error("budget exceeded: {0}")]
    Budget(String),
}

pub mod algebra;
pub mod orbits;
pub mod reps;

pub use algebra::{make_susy, reduction_chain, ReductionChain, Supercharge, SusyAlgebra, SusyLabel};
pub use orbits::{classify, golden_row, golden_table, orbit_invariants, OrbitInvariants, OrbitLabel};
