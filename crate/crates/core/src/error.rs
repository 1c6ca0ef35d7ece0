//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("generators do not span a full-rank lattice")]
    RankDeficient,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("not a symmetry: ({alpha}) is not in the symmetry group")]
    NotASymmetry { alpha: String },

    #[error("operands belong to different ambient groups")]
    MixedAmbients,

    #[error("lattice is not intermediate between the acting lattice and Z^n")]
    NotIntermediate,

    #[error("enumeration bound exceeded: order {order} > bound {bound}")]
    EnumerationBound { order: String, bound: u64 },

    #[error("inexact division in {context}: {numerator} not divisible by {denominator}")]
    InexactDivision {
        context: &'static str,
        numerator: String,
        denominator: String,
    },

    #[error("zeta function routes disagree (internal identity violation)")]
    RouteMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
