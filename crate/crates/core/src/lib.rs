//! Mutually unbiased unitary bases on small Hilbert spaces.
//!
//! The crate builds orthogonal bases of unitaries for subspaces of `M(d, ℂ)`,
//! certifies when two of them are mutually unbiased, searches exhaustively
//! over root-of-unity phase assignments for new ones, and exercises the two
//! applications that motivate them: discriminating unitaries through their
//! maximally entangled images, and a two-way key distribution protocol.
//!
//! ```
//! use muub::builtin::builtin_qubit_family;
//! use muub::basis::unbiasedness_constant;
//! use muub::EPS;
//!
//! let family = builtin_qubit_family();
//! let c = unbiasedness_constant(&family.bases()[0], &family.bases()[1], EPS).unwrap();
//! assert!((c - 1.0).abs() < EPS);
//! ```

pub mod basis;
pub mod builtin;
pub mod clique;
pub mod entangled;
pub mod error;
pub mod json;
pub mod linalg;
pub mod pauli;
pub mod qkd;
pub mod rng;
pub mod search;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, ComplexScalar, StateVector, EPS};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/operator-bases.md")]
    mod operator_bases {}
    #[doc = include_str!("../../../book/src/qubit-families.md")]
    mod qubit_families {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/entangled-states.md")]
    mod entangled_states {}
    #[doc = include_str!("../../../book/src/discrimination.md")]
    mod discrimination {}
    #[doc = include_str!("../../../book/src/qkd.md")]
    mod qkd {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/conventions.md")]
    mod conventions {}
}
