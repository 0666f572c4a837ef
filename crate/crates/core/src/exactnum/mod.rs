//! Scalars: big rationals, Laurent polynomials, fixed-point complex
//! numbers and the number-theoretic constants built from them.

pub mod ap;
pub mod laurent;
pub mod qnum;
pub mod rat;
pub mod series;

pub use ap::{cmat_max_dev, cmat_mul, ApComplex, ApReal, CMatrix, Precision};
pub use laurent::LaurentPoly;
pub use qnum::{
    bernoulli, bernoulli_table, eval_at_root, q_binomial, q_factorial, q_integer, q_integer_in, zeta_even,
    zeta_even_from, RootOfUnity,
};
pub use series::{series_inv, series_mul, sinc_series};
pub use rat::{binomial, factorial, rat, rint, rone, rpow, rzero, BigRat};
