//! Zhegalkin zebra tilings and their combinatorics.
//!
//! A zebra polynomial is an F2-polynomial in elementary "zebra" functions
//! `floor(2 x . v) mod 2`; its level sets tile the plane by black and white
//! polygons. This crate computes, in exact rational arithmetic, the chain of
//! objects attached to such a tiling:
//!
//! * the periodic tiling itself and its lattice of translation symmetries
//!   ([`arrangement`]),
//! * the finite superpotential `(E, sigma0, sigma1)` on a torus quotient
//!   ([`superpotential`]),
//! * perfect matchings, the weight semigroup and its relation lattice
//!   ([`matchings`]),
//! * incidence vectors, rho-matrices and the Poisson bilinear forms
//!   ([`homology`]),
//! * weight realizations, quadrangle tilings and Newton polygons
//!   ([`realization`]),
//! * the tautological matrix representation of the Jacobi algebra
//!   ([`jacobi`]),
//! * SVG rendering ([`render`]).
//!
//! Geometry lives in the integer-frequency frame where the six base
//! directions are `(-3,1), (-1,1), (0,2), (1,1), (3,1), (2,0)`; see
//! [`zebra::RESCALED`] and [`render::FRAME_MAP`] for the frame conventions.

pub mod arrangement;
pub mod geom;
pub mod homology;
pub mod jacobi;
pub mod linalg;
pub mod matchings;
pub mod perm;
pub mod realization;
pub mod render;
pub mod superpotential;
pub mod zebra;

use thiserror::Error;

/// Errors shared by the pipeline stages.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("polynomial cancels to zero over F2")]
    ZeroPolynomial,
    #[error("degenerate polynomial: {0}")]
    Degenerate(String),
    #[error("patch too small: {0}")]
    PatchTooSmall(String),
    #[error("no translation lattice found within the maximal patch")]
    NoLattice,
    #[error("sublattice matrix is singular")]
    SingularLattice,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("enumeration cap of {0} exceeded")]
    CapExceeded(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
