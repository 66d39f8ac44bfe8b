//! Berezin-type norms of operators on finite reproducing-kernel Hilbert
//! space (RKHS) models.
//!
//! The library realizes an RKHS as a finite family of kernel vectors over a
//! sampled domain and computes the Berezin symbol, Berezin number, Berezin
//! norm and the interpolating t-Berezin norm
//!
//! ```text
//! ‖A‖_{t-ber} = max_{λ,μ} { t·|⟨A k̂_λ, k̂_μ⟩| + (1-t)·|⟨A* k̂_λ, k̂_μ⟩| }
//! ```
//!
//! of dense complex operators.  On top of that sit a catalog of operator
//! inequalities ([`bounds`]), direct-sum models for operator-matrix bounds
//! ([`blocks`]), Orlicz-function machinery ([`orlicz`]) and a seeded
//! randomized verification harness ([`harness`]).
//!
//! All suprema are maxima over the sampled point set, so every computed
//! quantity is a lower estimate of its infinite-dimensional counterpart.

pub mod berezin;
pub mod blocks;
pub mod bounds;
pub mod calculus;
pub mod cli;
pub mod harness;
pub mod model;
pub mod orlicz;

pub use berezin::{
    berezin_norm, berezin_number, berezin_symbol, equality_witness, min_t_berezin,
    t_berezin_norm, unitary_check, MinTResult, SymbolMatrix, TBerezinResult,
};
pub use calculus::{
    absolute_pair, absolute_value, apply_spectral, commutation_residual, operator_norm,
    spectral_radius, HermitianMatrix, SpectralDecomposition,
};
pub use model::{KernelModel, ModelSpec, Operator};

use num_complex::Complex;

/// Scalar type used throughout: double-precision complex numbers.
pub type C64 = Complex<f64>;
/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<C64>;
/// Dense complex vector.
pub type CVector = nalgebra::DVector<C64>;

/// Errors shared by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension must be at least 1")]
    InvalidDimension,
    #[error("invalid domain point: {0}")]
    InvalidPoint(String),
    #[error("column {0} of the basis evaluations is identically zero; kernel vectors must be nonzero")]
    ZeroKernel(usize),
    #[error("point index {index} out of range for a model with {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("operator is {rows}x{cols} but the model has dimension {dim}")]
    ShapeMismatch { rows: usize, cols: usize, dim: usize },
    #[error("matrix is not positive semidefinite: eigenvalue {0} is materially negative")]
    NotPsd(f64),
    #[error("dense eigensolver failed to converge")]
    EigFailed,
    #[error("matrix is not Hermitian: ‖H - H*‖ = {0}")]
    NotHermitian(f64),
    #[error("operator is numerically singular (smallest singular value {0})")]
    Singular(f64),
    #[error("parameter out of range: {0}")]
    InvalidParam(String),
    #[error("not an Orlicz function: {0}")]
    NotOrlicz(String),
    #[error("composite kernel family would have {0} members, above the cap of {max}", max = blocks::FAMILY_CAP)]
    FamilyTooLarge(usize),
    #[error("model has no points")]
    EmptyModel,
    #[error("refinement requires a disk-sampled (Hardy) model")]
    NotRefinable,
}

pub type Result<T> = std::result::Result<T, Error>;
