//! Big rationals and small helpers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Arbitrary-size rational in lowest terms with positive denominator.
pub type BigRat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rint(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn rzero() -> BigRat {
    BigRat::zero()
}

pub fn rone() -> BigRat {
    BigRat::one()
}

/// `r^e` for any integer `e` (`r` nonzero when `e < 0`).
pub fn rpow(r: &BigRat, e: i64) -> BigRat {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), e.unsigned_abs() as usize)
    }
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
