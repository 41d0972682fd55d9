//! Quaternion sampling expansions.
//!
//! The crate covers quaternion arithmetic and similarity orbits
//! ([`quaternion`]), simple quaternion polynomials and their isolated and
//! spherical zeros ([`poly`]), quaternion matrices with right eigenvalues via
//! the complex adjoint ([`linalg`]), boundary-value recurrences with their
//! sampling expansions ([`bvp`]), and characteristic polynomials of
//! tridiagonal symmetric matrices ([`charpoly`]).
//!
//! ```
//! use qsampling::{build_phi, BvpSpec, Quaternion as Q, SamplingExpansion};
//!
//! let spec = BvpSpec::new(vec![Q::J; 3], vec![-Q::I; 4], Q::ZERO, Q::ZERO)?;
//! let table = build_phi(&spec)?;
//! let exp = SamplingExpansion::method2(&table, Q::ONE + Q::K)?;
//! assert!((exp.points()[0] - Q::I).norm() < 1e-9);
//! # Ok::<(), qsampling::Error>(())
//! ```

// negated comparisons below are deliberate: NaN must fail the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bvp;
pub mod charpoly;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod poly;
pub mod quaternion;
pub mod text;
pub mod verify;

pub use bvp::{
    alternate_expansion, build_l, build_phi, random_normal_spec, reconstruct, transform, BvpSpec, PhiTable,
    SamplingExpansion,
};
pub use charpoly::{char_poly, spectrum_check, CharPolyResult};
pub use error::{Error, Result};
pub use linalg::{
    complex_adjoint, gram_schmidt, is_normal, normality_by_parts, right_eigen, EigenPair, QMatrix, QVector,
};
pub use poly::{companion_real, conjugate_zero_set, zeros, QPoly, ZeroKind, ZeroReport};
pub use quaternion::{is_similar, OrbitClass, Quaternion};
