//! Binary fixed-point reals and complex numbers over big integers.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rat::BigRat;

/// A real number `m * 2^-bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApReal {
    m: BigInt,
    bits: u32,
}

impl ApReal {
    pub fn from_raw(m: BigInt, bits: u32) -> Self {
        ApReal { m, bits }
    }

    pub fn zero(bits: u32) -> Self {
        ApReal { m: BigInt::zero(), bits }
    }

    pub fn from_int(n: i64, bits: u32) -> Self {
        ApReal { m: BigInt::from(n) << bits, bits }
    }

    pub fn from_bigint(n: &BigInt, bits: u32) -> Self {
        ApReal { m: n << bits, bits }
    }

    pub fn from_rat(r: &BigRat, bits: u32) -> Self {
        let num = r.numer() << bits;
        ApReal { m: div_round(&num, r.denom()), bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.m
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.m.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        ApReal { m: self.m.abs(), bits: self.bits }
    }

    /// Re-expresses the value at another binary scale.
    pub fn with_bits(&self, bits: u32) -> Self {
        match bits.cmp(&self.bits) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => ApReal { m: &self.m << (bits - self.bits), bits },
            Ordering::Less => ApReal { m: shr_round(&self.m, self.bits - bits), bits },
        }
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u32) {
        if self.bits == other.bits {
            (self.m.clone(), other.m.clone(), self.bits)
        } else {
            let bits = self.bits.max(other.bits);
            (self.with_bits(bits).m, other.with_bits(bits).m, bits)
        }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        ApReal { m: &self.m * k, bits: self.bits }
    }

    pub fn div_int(&self, k: i64) -> Self {
        ApReal { m: div_round(&self.m, &BigInt::from(k)), bits: self.bits }
    }

    pub fn mul_pow2(&self, e: i64) -> Self {
        if e >= 0 {
            ApReal { m: &self.m << e as u64, bits: self.bits }
        } else {
            ApReal { m: shr_round(&self.m, (-e) as u32), bits: self.bits }
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        let (a, b, bits) = self.aligned(other);
        assert!(!b.is_zero(), "division by zero");
        ApReal { m: div_round(&(a << bits), &b), bits }
    }

    pub fn recip(&self) -> Self {
        ApReal::from_int(1, self.bits).div(self)
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.m.is_negative(), "square root of a negative number");
        ApReal { m: (&self.m << self.bits).sqrt(), bits: self.bits }
    }

    /// Nearest integer, ties away from zero.
    pub fn round(&self) -> BigInt {
        shr_round(&self.m, self.bits)
    }

    pub fn to_f64(&self) -> f64 {
        let shift = (self.m.bits() as u32).saturating_sub(60);
        let mut v = shr_round(&self.m, shift).to_f64().unwrap_or(f64::NAN);
        let e = shift as i64 - self.bits as i64;
        for _ in 0..e.unsigned_abs() {
            v = if e < 0 { v * 0.5 } else { v * 2.0 };
        }
        v
    }

    /// Decimal expansion rounded to `digits` places after the point.
    pub fn to_decimal(&self, digits: usize) -> String {
        let ten = BigInt::from(10u32);
        let scaled = &self.m * num_traits::pow(ten, digits);
        let n = shr_round(&scaled, self.bits);
        let neg = n.is_negative();
        let mut s = n.abs().to_str_radix(10);
        if s.len() <= digits {
            let pad: String = core::iter::repeat_n('0', digits + 1 - s.len()).collect();
            s = pad + &s;
        }
        let (int_part, frac_part) = s.split_at(s.len() - digits);
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(int_part);
        if digits > 0 {
            out.push('.');
            out.push_str(frac_part);
        }
        out
    }
}

impl PartialOrd for ApReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ApReal {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

fn shr_round(m: &BigInt, s: u32) -> BigInt {
    if s == 0 {
        return m.clone();
    }
    let half = BigInt::one() << (s - 1);
    (m + half) >> s
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (a, b) = if b.is_negative() { (-a, -b) } else { (a.clone(), b.clone()) };
    let two_a: BigInt = &a * 2 + &b;
    two_a.div_floor(&(&b * 2u32))
}

macro_rules! real_binop {
    ($tr:ident, $f:ident, $body:expr) => {
        impl $tr<&ApReal> for &ApReal {
            type Output = ApReal;
            fn $f(self, rhs: &ApReal) -> ApReal {
                let g: fn(&ApReal, &ApReal) -> ApReal = $body;
                g(self, rhs)
            }
        }
        impl $tr<ApReal> for ApReal {
            type Output = ApReal;
            fn $f(self, rhs: ApReal) -> ApReal {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&ApReal> for ApReal {
            type Output = ApReal;
            fn $f(self, rhs: &ApReal) -> ApReal {
                (&self).$f(rhs)
            }
        }
        impl $tr<ApReal> for &ApReal {
            type Output = ApReal;
            fn $f(self, rhs: ApReal) -> ApReal {
                self.$f(&rhs)
            }
        }
    };
}

real_binop!(Add, add, |a, b| {
    let (x, y, bits) = a.aligned(b);
    ApReal { m: x + y, bits }
});
real_binop!(Sub, sub, |a, b| {
    let (x, y, bits) = a.aligned(b);
    ApReal { m: x - y, bits }
});
real_binop!(Mul, mul, |a, b| {
    let (x, y, bits) = a.aligned(b);
    ApReal { m: shr_round(&(x * y), bits), bits }
});

impl Neg for ApReal {
    type Output = ApReal;
    fn neg(self) -> ApReal {
        ApReal { m: -self.m, bits: self.bits }
    }
}

impl Neg for &ApReal {
    type Output = ApReal;
    fn neg(self) -> ApReal {
        ApReal { m: -&self.m, bits: self.bits }
    }
}

impl fmt::Display for ApReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        f.write_str(&self.to_decimal(digits))
    }
}

/// A complex number with fixed-point real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApComplex {
    pub re: ApReal,
    pub im: ApReal,
}

impl ApComplex {
    pub fn new(re: ApReal, im: ApReal) -> Self {
        ApComplex { re, im }
    }

    pub fn real(re: ApReal) -> Self {
        let bits = re.bits();
        ApComplex { re, im: ApReal::zero(bits) }
    }

    pub fn zero(bits: u32) -> Self {
        ApComplex { re: ApReal::zero(bits), im: ApReal::zero(bits) }
    }

    pub fn one(bits: u32) -> Self {
        ApComplex { re: ApReal::from_int(1, bits), im: ApReal::zero(bits) }
    }

    pub fn i(bits: u32) -> Self {
        ApComplex { re: ApReal::zero(bits), im: ApReal::from_int(1, bits) }
    }

    pub fn from_rat(r: &BigRat, bits: u32) -> Self {
        ApComplex::real(ApReal::from_rat(r, bits))
    }

    pub fn bits(&self) -> u32 {
        self.re.bits()
    }

    pub fn conj(&self) -> Self {
        ApComplex { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> ApReal {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> ApReal {
        // Squares at double scale so magnitudes near 2^-bits survive.
        let bits = self.re.bits;
        let wide = ApComplex { re: self.re.with_bits(2 * bits), im: self.im.with_bits(2 * bits) };
        wide.norm_sqr().sqrt().with_bits(bits)
    }

    pub fn scale(&self, r: &ApReal) -> Self {
        ApComplex { re: &self.re * r, im: &self.im * r }
    }

    pub fn scale_rat(&self, r: &BigRat) -> Self {
        self.scale(&ApReal::from_rat(r, self.bits()))
    }

    pub fn mul_int(&self, k: i64) -> Self {
        ApComplex { re: self.re.mul_int(k), im: self.im.mul_int(k) }
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        ApComplex { re: self.re.div(&n), im: (-&self.im).div(&n) }
    }

    pub fn div(&self, other: &Self) -> Self {
        self * &other.recip()
    }

    pub fn powi(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.recip() } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = ApComplex::one(self.bits());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Modulus of `self - other`.
    pub fn dist(&self, other: &Self) -> ApReal {
        (self - other).abs()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn to_decimal_pair(&self, digits: usize) -> [String; 2] {
        [self.re.to_decimal(digits), self.im.to_decimal(digits)]
    }
}

macro_rules! complex_binop {
    ($tr:ident, $f:ident, $body:expr) => {
        impl $tr<&ApComplex> for &ApComplex {
            type Output = ApComplex;
            fn $f(self, rhs: &ApComplex) -> ApComplex {
                let g: fn(&ApComplex, &ApComplex) -> ApComplex = $body;
                g(self, rhs)
            }
        }
        impl $tr<ApComplex> for ApComplex {
            type Output = ApComplex;
            fn $f(self, rhs: ApComplex) -> ApComplex {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&ApComplex> for ApComplex {
            type Output = ApComplex;
            fn $f(self, rhs: &ApComplex) -> ApComplex {
                (&self).$f(rhs)
            }
        }
        impl $tr<ApComplex> for &ApComplex {
            type Output = ApComplex;
            fn $f(self, rhs: ApComplex) -> ApComplex {
                self.$f(&rhs)
            }
        }
    };
}

complex_binop!(Add, add, |a, b| ApComplex { re: &a.re + &b.re, im: &a.im + &b.im });
complex_binop!(Sub, sub, |a, b| ApComplex { re: &a.re - &b.re, im: &a.im - &b.im });
complex_binop!(Mul, mul, |a, b| ApComplex {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re,
});

impl Neg for ApComplex {
    type Output = ApComplex;
    fn neg(self) -> ApComplex {
        ApComplex { re: -self.re, im: -self.im }
    }
}

impl Neg for &ApComplex {
    type Output = ApComplex;
    fn neg(self) -> ApComplex {
        ApComplex { re: -&self.re, im: -&self.im }
    }
}

impl fmt::Display for ApComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        write!(f, "[{}, {}]", self.re.to_decimal(digits), self.im.to_decimal(digits))
    }
}

/// Working precision together with the constants needed by the
/// elementary functions. Each value owns its constants, so no global
/// cache is shared between threads.
#[derive(Clone, Debug)]
pub struct Precision {
    prec: u32,
    bits: u32,
    pi: ApReal,
    ln2: ApReal,
    tol: ApReal,
}

pub const DEFAULT_PRECISION_BITS: u32 = 256;
pub const DEFAULT_TOLERANCE_EXP10: u32 = 50;
const GUARD_BITS: u32 = 64;

impl Default for Precision {
    fn default() -> Self {
        Precision::new(DEFAULT_PRECISION_BITS)
    }
}

impl Precision {
    /// Precision of `prec` bits with tolerance scaled like the default
    /// (`10^-50` at 256 bits).
    pub fn new(prec: u32) -> Self {
        let exp10 = (prec as u64 * DEFAULT_TOLERANCE_EXP10 as u64 / DEFAULT_PRECISION_BITS as u64) as u32;
        Precision::with_tolerance(prec, exp10.max(1))
    }

    /// Precision of `prec` bits with comparison tolerance `10^-exp10`.
    pub fn with_tolerance(prec: u32, exp10: u32) -> Self {
        let bits = prec + GUARD_BITS;
        let pi = machin_pi(bits);
        let ln2 = atanh_inv(3, bits).mul_int(2);
        let tol = ApReal::from_rat(
            &BigRat::new(BigInt::one(), num_traits::pow(BigInt::from(10u32), exp10 as usize)),
            bits,
        );
        Precision { prec, bits, pi, ln2, tol }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Working bits, including guard bits.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Decimal digits that the nominal precision supports.
    pub fn digits(&self) -> usize {
        (self.prec as u64 * 30103 / 100000) as usize
    }

    pub fn tolerance(&self) -> &ApReal {
        &self.tol
    }

    pub fn pi(&self) -> ApReal {
        self.pi.clone()
    }

    pub fn ln2(&self) -> ApReal {
        self.ln2.clone()
    }

    pub fn int(&self, n: i64) -> ApReal {
        ApReal::from_int(n, self.bits)
    }

    pub fn rat(&self, r: &BigRat) -> ApReal {
        ApReal::from_rat(r, self.bits)
    }

    pub fn one(&self) -> ApComplex {
        ApComplex::one(self.bits)
    }

    pub fn czero(&self) -> ApComplex {
        ApComplex::zero(self.bits)
    }

    pub fn crat(&self, r: &BigRat) -> ApComplex {
        ApComplex::from_rat(r, self.bits)
    }

    pub fn approx_eq(&self, a: &ApComplex, b: &ApComplex) -> bool {
        a.dist(b) <= self.tol
    }

    pub fn approx_eq_real(&self, a: &ApReal, b: &ApReal) -> bool {
        (a - b).abs() <= self.tol
    }

    /// `(sin x, cos x)`.
    pub fn sin_cos(&self, x: &ApReal) -> (ApReal, ApReal) {
        let x = x.with_bits(self.bits);
        let half_pi = self.pi.mul_pow2(-1);
        let q = x.div(&half_pi).round();
        let r = &x - ApReal::from_bigint(&q, self.bits) * &half_pi;
        let (s, c) = sin_cos_small(&r);
        let quadrant = q.mod_floor(&BigInt::from(4)).to_u8().unwrap_or(0);
        match quadrant {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    /// `e^{2 pi i r}` with exact reduction of `r` modulo one.
    pub fn cis_turn(&self, r: &BigRat) -> ApComplex {
        let frac = r - r.floor();
        let eighths = (&frac * BigRat::from_integer(BigInt::from(8))).floor();
        let oct = eighths.to_integer().to_u8().unwrap_or(0);
        let rem = &frac - &eighths / BigRat::from_integer(BigInt::from(8));
        let angle = self.rat(&rem).mul_int(2) * &self.pi;
        let (s, c) = sin_cos_small(&angle);
        let rot = |k: u8, s: ApReal, c: ApReal| -> (ApReal, ApReal) {
            match k {
                0 => (c, s),
                1 => (-s, c),
                2 => (-c, -s),
                _ => (s, -c),
            }
        };
        let (re, im) = if oct.is_multiple_of(2) {
            rot(oct / 2, s, c)
        } else {
            let h = self.rat(&BigRat::new(BigInt::one(), BigInt::from(2))).sqrt();
            let re0 = (&c - &s) * &h;
            let im0 = (&c + &s) * &h;
            rot(oct / 2, im0, re0)
        };
        ApComplex { re, im }
    }

    /// `e^{i x}`.
    pub fn cis(&self, x: &ApReal) -> ApComplex {
        let (s, c) = self.sin_cos(x);
        ApComplex { re: c, im: s }
    }

    pub fn atan(&self, x: &ApReal) -> ApReal {
        let x = x.with_bits(self.bits);
        let one = self.int(1);
        if x.abs() > one {
            let half_pi = self.pi.mul_pow2(-1);
            let r = self.atan(&x.recip());
            return if x.is_negative() { -half_pi - r } else { half_pi - r };
        }
        let mut y = x;
        let mut doublings = 0;
        for _ in 0..3 {
            let d = &one + (&one + &y * &y).sqrt();
            y = y.div(&d);
            doublings += 1;
        }
        let y2 = &y * &y;
        let mut term = y.clone();
        let mut sum = y;
        let mut k = 1i64;
        loop {
            term = -(&term * &y2);
            let t = term.div_int(2 * k + 1);
            if t.is_zero() {
                break;
            }
            sum = sum + t;
            k += 1;
        }
        sum.mul_pow2(doublings)
    }

    /// Principal argument in `(-pi, pi]`.
    pub fn atan2(&self, y: &ApReal, x: &ApReal) -> ApReal {
        let y = y.with_bits(self.bits);
        let x = x.with_bits(self.bits);
        if x.is_zero() {
            let half_pi = self.pi.mul_pow2(-1);
            return match y.signum() {
                1 => half_pi,
                -1 => -half_pi,
                _ => self.int(0),
            };
        }
        let base = self.atan(&y.div(&x));
        if !x.is_negative() {
            base
        } else if y.is_negative() {
            base - &self.pi
        } else {
            base + &self.pi
        }
    }

    pub fn arg(&self, z: &ApComplex) -> ApReal {
        self.atan2(&z.im, &z.re)
    }

    /// Natural logarithm of a positive real.
    pub fn ln(&self, x: &ApReal) -> ApReal {
        let x = x.with_bits(self.bits);
        assert!(x.signum() > 0, "logarithm of a non-positive number");
        let e = x.mantissa().bits() as i64 - 1 - self.bits as i64;
        let y = x.mul_pow2(-e);
        let one = self.int(1);
        let s = (&y - &one).div(&(&y + &one));
        let lny = atanh_series(&s).mul_int(2);
        lny + self.ln2.mul_int(e)
    }

    pub fn exp(&self, x: &ApReal) -> ApReal {
        let x = x.with_bits(self.bits);
        let n = x.div(&self.ln2).round();
        let r = &x - ApReal::from_bigint(&n, self.bits) * &self.ln2;
        let mut term = self.int(1);
        let mut sum = term.clone();
        let mut k = 1i64;
        loop {
            term = (&term * &r).div_int(k);
            if term.is_zero() {
                break;
            }
            sum = sum + &term;
            k += 1;
        }
        sum.mul_pow2(n.to_i64().expect("exponent out of range"))
    }

    /// Positive real `n`-th root of a positive real.
    pub fn nth_root(&self, x: &ApReal, n: u32) -> ApReal {
        assert!(n >= 1);
        if x.is_zero() {
            return self.int(0);
        }
        let mut y = self.exp(&self.ln(x).div_int(n as i64));
        for _ in 0..2 {
            let yn1 = pow_real(&y, n - 1);
            y = (y.mul_int(n as i64 - 1) + x.div(&yn1)).div_int(n as i64);
        }
        y
    }

    /// Principal `n`-th root of a nonzero complex number.
    pub fn principal_root(&self, z: &ApComplex, n: u32) -> ApComplex {
        let r = self.nth_root(&z.abs(), n);
        let theta = self.arg(z).div_int(n as i64);
        self.cis(&theta).scale(&r)
    }

    /// Complex natural logarithm, principal branch.
    pub fn cln(&self, z: &ApComplex) -> ApComplex {
        ApComplex { re: self.ln(&z.abs()), im: self.arg(z) }
    }

    /// Evaluates a real polynomial-like sum quickly: `sum c_i z^{e_i}`.
    pub fn eval_terms(&self, terms: &[(BigRat, ApComplex)]) -> ApComplex {
        let mut acc = self.czero();
        for (c, z) in terms {
            acc = acc + z.scale_rat(c);
        }
        acc
    }
}

fn pow_real(x: &ApReal, n: u32) -> ApReal {
    let mut acc = ApReal::from_int(1, x.bits());
    for _ in 0..n {
        acc = &acc * x;
    }
    acc
}

fn sin_cos_small(r: &ApReal) -> (ApReal, ApReal) {
    let bits = r.bits();
    let r2 = r * r;
    let mut s_term = r.clone();
    let mut s = r.clone();
    let mut c_term = ApReal::from_int(1, bits);
    let mut c = c_term.clone();
    let mut k = 1i64;
    loop {
        s_term = -(&s_term * &r2).div_int((2 * k) * (2 * k + 1));
        c_term = -(&c_term * &r2).div_int((2 * k - 1) * (2 * k));
        if s_term.is_zero() && c_term.is_zero() {
            break;
        }
        s = s + &s_term;
        c = c + &c_term;
        k += 1;
    }
    (s, c)
}

fn atanh_series(s: &ApReal) -> ApReal {
    let s2 = s * s;
    let mut term = s.clone();
    let mut sum = s.clone();
    let mut k = 1i64;
    loop {
        term = &term * &s2;
        let t = term.div_int(2 * k + 1);
        if t.is_zero() {
            break;
        }
        sum = sum + t;
        k += 1;
    }
    sum
}

fn atanh_inv(k: i64, bits: u32) -> ApReal {
    atanh_series(&ApReal::from_int(1, bits).div_int(k))
}

fn atan_inv(k: i64, bits: u32) -> ApReal {
    let x = ApReal::from_int(1, bits).div_int(k);
    let x2 = &x * &x;
    let mut term = x.clone();
    let mut sum = x;
    let mut n = 1i64;
    loop {
        term = -(&term * &x2);
        let t = term.div_int(2 * n + 1);
        if t.is_zero() {
            break;
        }
        sum = sum + t;
        n += 1;
    }
    sum
}

fn machin_pi(bits: u32) -> ApReal {
    atan_inv(5, bits).mul_int(16) - atan_inv(239, bits).mul_int(4)
}

/// Dense complex matrix helpers used by the modular-data checks.
pub type CMatrix = Vec<Vec<ApComplex>>;

pub fn cmat_mul(a: &CMatrix, b: &CMatrix, bits: u32) -> CMatrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let inner = b.len();
    let mut out = Vec::with_capacity(n);
    for row in a.iter() {
        let mut r = Vec::with_capacity(m);
        for j in 0..m {
            let mut acc = ApComplex::zero(bits);
            for (k, x) in row.iter().enumerate().take(inner) {
                acc = acc + x * &b[k][j];
            }
            r.push(acc);
        }
        out.push(r);
    }
    out
}

/// Largest entrywise modulus of `a - b`.
pub fn cmat_max_dev(a: &CMatrix, b: &CMatrix, bits: u32) -> ApReal {
    let mut best = ApReal::zero(bits);
    for (ra, rb) in a.iter().zip(b.iter()) {
        for (x, y) in ra.iter().zip(rb.iter()) {
            let d = x.dist(y);
            if d > best {
                best = d;
            }
        }
    }
    best
}
