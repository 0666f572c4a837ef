//! Quantum integers, Bernoulli numbers, even zeta values and evaluation
//! at roots of unity.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ap::{ApComplex, Precision};
use super::laurent::LaurentPoly;
use super::rat::{factorial, rint, BigRat};
use crate::error::{Error, Result};

/// `[n]_q = (q^n - q^-n)/(q - q^-1)` in the variable `q`.
pub fn q_integer(n: i64) -> LaurentPoly {
    q_integer_in('q', n)
}

/// `[n]` in an arbitrary variable name.
pub fn q_integer_in(var: char, n: i64) -> LaurentPoly {
    let sign = if n < 0 { -1 } else { 1 };
    let m = n.abs();
    LaurentPoly::from_terms(var, (0..m).map(|j| (m - 1 - 2 * j, rint(sign))))
}

pub fn q_factorial(n: i64) -> LaurentPoly {
    let mut acc = LaurentPoly::one('q');
    for k in 1..=n {
        acc = &acc * &q_integer(k);
    }
    acc
}

/// `[n]!/([n-m]! [m]!)`, computed by exact polynomial division.
pub fn q_binomial(n: i64, m: i64) -> Result<LaurentPoly> {
    if n < 0 || m < 0 || m > n {
        return Err(Error::argument(alloc::format!("q-binomial needs 0 <= m <= n, got ({n}, {m})")));
    }
    let den = &q_factorial(n - m) * &q_factorial(m);
    q_factorial(n).div_exact(&den)
}

/// `B_0 .. B_kmax` from the inverse of `(e^z - 1)/z = sum z^k/(k+1)!`.
pub fn bernoulli_table(kmax: usize) -> Vec<BigRat> {
    let a: Vec<BigRat> = (0..=kmax).map(|k| BigRat::new(BigInt::one(), factorial(k as u64 + 1))).collect();
    let mut c: Vec<BigRat> = Vec::with_capacity(kmax + 1);
    c.push(BigRat::one());
    for k in 1..=kmax {
        let mut s = BigRat::zero();
        for j in 1..=k {
            s += &a[j] * &c[k - j];
        }
        c.push(-s);
    }
    c.into_iter().enumerate().map(|(k, ck)| ck * BigRat::from_integer(factorial(k as u64))).collect()
}

pub fn bernoulli(k: usize) -> BigRat {
    bernoulli_table(k).pop().unwrap_or_else(BigRat::one)
}

/// The rational `r` with `zeta(2n) = r (2 pi)^{2n}`.
pub fn zeta_even(two_n: i64) -> Result<BigRat> {
    if two_n < 2 || two_n % 2 != 0 {
        return Err(Error::argument(alloc::format!("zeta_even needs an even argument >= 2, got {two_n}")));
    }
    Ok(zeta_even_from(&bernoulli(two_n as usize), two_n))
}

/// Same as [`zeta_even`] given `B_{2n}` already.
pub fn zeta_even_from(b2n: &BigRat, two_n: i64) -> BigRat {
    let n = two_n / 2;
    let sign = if n % 2 == 1 { 1 } else { -1 };
    b2n * rint(sign) / BigRat::from_integer(factorial(two_n as u64) * 2)
}

/// Substitutes the variable by `e^{2 pi i scale / l}`.
pub fn eval_at_root(p: &LaurentPoly, l: i64, numerator_scale: i64, prec: &Precision) -> ApComplex {
    assert!(l > 0, "root of unity order must be positive");
    let mut acc = prec.czero();
    for (e, c) in p.terms() {
        let z = prec.cis_turn(&BigRat::new(BigInt::from(e) * numerator_scale, BigInt::from(l)));
        acc = acc + z.scale_rat(c);
    }
    acc
}

/// A root of unity `e^{2 pi i s / l}` with its principal value.
#[derive(Clone, Debug)]
pub struct RootOfUnity {
    order: i64,
    scale: i64,
    value: ApComplex,
}

impl RootOfUnity {
    pub fn new(order: i64, scale: i64, prec: &Precision) -> Self {
        assert!(order > 0, "root of unity order must be positive");
        let value = prec.cis_turn(&BigRat::new(BigInt::from(scale), BigInt::from(order)));
        RootOfUnity { order, scale, value }
    }

    /// `e^{2 pi i / l}`.
    pub fn primitive(order: i64, prec: &Precision) -> Self {
        Self::new(order, 1, prec)
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn value(&self) -> &ApComplex {
        &self.value
    }

    /// Exact-phase power for a rational exponent.
    pub fn pow_rat(&self, e: &BigRat, prec: &Precision) -> ApComplex {
        prec.cis_turn(&(e * BigRat::new(BigInt::from(self.scale), BigInt::from(self.order))))
    }

    pub fn pow(&self, e: i64, prec: &Precision) -> ApComplex {
        self.pow_rat(&rint(e), prec)
    }
}
