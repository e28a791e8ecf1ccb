//! Exact representation-theoretic computations for the Virasoro algebra at
//! central charge `c_{p,q}` and the triplet algebra `W_{p,q}`.
//!
//! All arithmetic is exact: rationals, roots of unity as rational exponents,
//! and rational functions in one formal parameter.

pub mod error;
pub mod exactnum;
pub mod braidfmat;
pub mod fusion;
pub mod kacmod;
pub mod linalg;
pub mod sl2rep;
pub mod sweep;
pub mod verify;
pub mod virasoro;
pub mod wpq;

pub use error::{Error, Result};
