//! Truncated power series with rational coefficients.

use alloc::vec::Vec;

use num_traits::Zero;

use super::rat::{factorial, BigRat};
use crate::error::{Error, Result};

/// Product of two series truncated to `len` terms.
pub fn series_mul(a: &[BigRat], b: &[BigRat], len: usize) -> Vec<BigRat> {
    let mut out = alloc::vec![BigRat::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Multiplicative inverse truncated to `len` terms; needs a nonzero constant term.
pub fn series_inv(a: &[BigRat], len: usize) -> Result<Vec<BigRat>> {
    let a0 = a.first().filter(|c| !c.is_zero()).ok_or_else(|| Error::singular("series has no constant term"))?;
    let inv0 = a0.recip();
    let mut out: Vec<BigRat> = Vec::with_capacity(len);
    for k in 0..len {
        if k == 0 {
            out.push(inv0.clone());
            continue;
        }
        let mut s = BigRat::zero();
        for j in 1..=k.min(a.len() - 1) {
            s += &a[j] * &out[k - j];
        }
        out.push(-s * &inv0);
    }
    Ok(out)
}

/// Coefficients of `sin(c x)/(c x)` in powers of `x^2`.
pub fn sinc_series(c: &BigRat, len: usize) -> Vec<BigRat> {
    let c2 = c * c;
    let mut pow = BigRat::from_integer(1.into());
    (0..len)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let v = &pow * BigRat::new(sign.into(), factorial(2 * k as u64 + 1));
            pow *= &c2;
            v
        })
        .collect()
}
