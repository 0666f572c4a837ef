//! Sparse Laurent polynomials with rational coefficients.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rat::{rint, BigRat};
use crate::error::{Error, Result};

/// `sum c_e v^e` over integer exponents `e`, with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    var: char,
    coeffs: BTreeMap<i64, BigRat>,
}

impl LaurentPoly {
    pub fn zero(var: char) -> Self {
        LaurentPoly { var, coeffs: BTreeMap::new() }
    }

    pub fn one(var: char) -> Self {
        Self::constant(var, BigRat::one())
    }

    pub fn constant(var: char, c: BigRat) -> Self {
        Self::monomial(var, 0, c)
    }

    pub fn monomial(var: char, e: i64, c: BigRat) -> Self {
        let mut p = Self::zero(var);
        if !c.is_zero() {
            p.coeffs.insert(e, c);
        }
        p
    }

    /// `v^e` with coefficient one.
    pub fn power(var: char, e: i64) -> Self {
        Self::monomial(var, e, BigRat::one())
    }

    pub fn from_terms(var: char, terms: impl IntoIterator<Item = (i64, BigRat)>) -> Self {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn from_int_terms(var: char, terms: &[(i64, i64)]) -> Self {
        Self::from_terms(var, terms.iter().map(|&(e, c)| (e, rint(c))))
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigRat {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRat)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_term(&mut self, e: i64, c: BigRat) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigRat::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (e, c) in other.coeffs.iter() {
            self.add_term(*e, c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, k: &BigRat) {
        for (e, c) in other.coeffs.iter() {
            self.add_term(*e, c * k);
        }
    }

    pub fn scale(&self, k: &BigRat) -> Self {
        if k.is_zero() {
            return Self::zero(self.var);
        }
        LaurentPoly { var: self.var, coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    /// Multiplies by `v^s`.
    pub fn shift(&self, s: i64) -> Self {
        LaurentPoly { var: self.var, coeffs: self.coeffs.iter().map(|(e, c)| (e + s, c.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.var);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `v -> v^k` (for `k = -1` this is the bar involution).
    pub fn substitute_power(&self, k: i64) -> Self {
        LaurentPoly { var: self.var, coeffs: self.coeffs.iter().map(|(e, c)| (e * k, c.clone())).collect() }
    }

    /// Re-expresses a polynomial in `w` as one in `v` with `w = v^k`.
    pub fn rebase(&self, var: char, k: i64) -> Self {
        let mut p = self.substitute_power(k);
        p.var = var;
        p
    }

    /// Value at `v = 1`.
    pub fn eval_one(&self) -> BigRat {
        self.coeffs.values().fold(BigRat::zero(), |a, c| a + c)
    }

    /// Value at a nonzero rational point.
    pub fn eval_rat(&self, x: &BigRat) -> BigRat {
        self.coeffs.iter().fold(BigRat::zero(), |a, (e, c)| a + c * super::rat::rpow(x, *e))
    }

    /// Exact division; fails when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (dlo, dhi) = match (divisor.min_exp(), divisor.max_exp()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::argument("division by the zero polynomial")),
        };
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = Self::zero(self.var);
        while let Some(top) = rem.max_exp() {
            let lo = rem.min_exp().unwrap_or(top);
            if top - dhi < lo - dlo {
                return Err(Error::argument("polynomial division leaves a remainder"));
            }
            let c = rem.coeff(top) / &lead;
            let e = top - dhi;
            quot.add_term(e, c.clone());
            for (de, dc) in divisor.coeffs.iter() {
                rem.add_term(de + e, -(dc * &c));
            }
        }
        Ok(quot)
    }

    /// All coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn to_pretty(&self) -> String {
        alloc::format!("{self}")
    }

    pub fn exponents(&self) -> Vec<i64> {
        self.coeffs.keys().copied().collect()
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        p.add_assign_ref(rhs);
        p
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (e, c) in rhs.coeffs.iter() {
            p.add_term(*e, -c.clone());
        }
        p
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = LaurentPoly::zero(self.var);
        for (e1, c1) in self.coeffs.iter() {
            for (e2, c2) in rhs.coeffs.iter() {
                p.add_term(e1 + e2, c1 * c2);
            }
        }
        p
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-BigRat::one())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$f(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$f(&rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest exponent first, e.g. `u^6 + u^2 + u^-2 + u^-6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let unit = a.is_one();
            if *e == 0 {
                write!(f, "{a}")?;
                continue;
            }
            if !unit {
                write!(f, "{a}*")?;
            }
            if *e == 1 {
                write!(f, "{}", self.var)?;
            } else {
                write!(f, "{}^{}", self.var, e)?;
            }
        }
        Ok(())
    }
}
