//! Exact and high-precision arithmetic engines for both sides of the
//! large-N duality between Chern-Simons theory on the three-sphere and
//! Gromov-Witten theory of the resolved conifold.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod conifold;
pub mod energy;
pub mod error;
pub mod exactnum;
pub mod gwloc;
pub mod liedata;
pub mod mtc;
pub mod tangle;

pub use error::{Error, Result};
pub use exactnum::{ApComplex, ApReal, BigRat, LaurentPoly, Precision, RootOfUnity};
pub use num_bigint::BigInt;
