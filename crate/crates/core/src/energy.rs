//! Free-energy series on both sides of the duality: exact coefficient
//! tables, their term-by-term comparison, and the symbolic residual of
//! the non-series terms.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{bernoulli_table, binomial, factorial, rat, rint, zeta_even_from, ApComplex, BigRat, Precision};

fn check_h(g: u32, h: u32) -> Result<()> {
    if !h.is_multiple_of(2) || h < 2 {
        return Err(Error::domain(alloc::format!("h must be even and at least 2, got {h}")));
    }
    if g == 0 && h == 2 {
        return Err(Error::domain("the genus zero family starts at h = 4"));
    }
    Ok(())
}

/// `zeta(2n)/(2 pi)^{2n}` from a Bernoulli table covering `2n`.
fn ze(b: &[BigRat], two_n: u32) -> BigRat {
    zeta_even_from(&b[two_n as usize], two_n as i64)
}

/// Coefficient of `N^h x^{2g-2+h}` in the perturbative Chern-Simons free energy.
pub fn cs_pert_coeff(g: u32, h: u32) -> Result<BigRat> {
    check_h(g, h)?;
    let b = bernoulli_table((2 * g + h) as usize);
    Ok(cs_coeff_with(&b, g, h))
}

fn cs_coeff_with(b: &[BigRat], g: u32, h: u32) -> BigRat {
    match g {
        0 => -rat(2, (h * (h - 1) * (h - 2)) as i64) * ze(b, h - 2),
        1 => rat(1, 6 * h as i64) * ze(b, h),
        _ => {
            let gi = g as i64;
            BigRat::from_integer(binomial(2 * gi + h as i64 - 3, h as i64)) * &b[2 * g as usize]
                / rint(gi * (2 * gi - 2))
                * ze(b, 2 * g - 2 + h)
        }
    }
}

/// Named real constants that stay symbolic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Constant {
    One,
    Zeta3,
    Zeta2,
    Ln2Pi,
    ZetaPrime0,
    ZetaPrimeM1,
}

impl Constant {
    fn name(self) -> &'static str {
        match self {
            Constant::One => "",
            Constant::Zeta3 => "zeta3",
            Constant::Zeta2 => "zeta2",
            Constant::Ln2Pi => "ln_2pi",
            Constant::ZetaPrime0 => "zetaprime_0",
            Constant::ZetaPrimeM1 => "zetaprime_m1",
        }
    }
}

/// A rational combination of [`Constant`]s.
pub type ConstSpan = BTreeMap<Constant, BigRat>;

fn span(c: Constant, r: BigRat) -> ConstSpan {
    let mut m = ConstSpan::new();
    if !r.is_zero() {
        m.insert(c, r);
    }
    m
}

/// Expansion data of `Li_p(e^{-t})` near `t = 0` for odd `p <= 3`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolylogExpansion {
    pub p: i64,
    /// `(c, e)` for a singular term `c t^e`.
    pub leading: Option<(BigRat, i64)>,
    /// `(c, e)` for the counterterm `c t^e ln t` added to the left side.
    pub log_counterterm: Option<(BigRat, i64)>,
    /// Coefficients of `t^0 .. t^order` of the regular part.
    pub coeffs: Vec<ConstSpan>,
}

impl PolylogExpansion {
    pub fn coeff(&self, h: usize) -> ConstSpan {
        self.coeffs.get(h).cloned().unwrap_or_default()
    }

    /// Rational part of the `t^h` coefficient.
    pub fn rational(&self, h: usize) -> BigRat {
        self.coeff(h).get(&Constant::One).cloned().unwrap_or_else(BigRat::zero)
    }
}

/// `zeta(-j) = (-1)^j B_{j+1}/(j+1)`.
fn zeta_nonpositive(b: &[BigRat], j: u64) -> BigRat {
    let s = if j.is_multiple_of(2) { BigRat::one() } else { -BigRat::one() };
    s * &b[j as usize + 1] / rint(j as i64 + 1)
}

/// Taylor data of `Li_p(e^{-t})`, with log counterterms for `p` in `{1, 3}`.
pub fn polylog_coeff(p: i64, order: usize) -> Result<PolylogExpansion> {
    if p % 2 == 0 || p > 3 {
        return Err(Error::domain(alloc::format!("polylog order must be odd and at most 3, got {p}")));
    }
    let b = bernoulli_table(order + 4 + p.unsigned_abs() as usize);
    // f(t) = Li_1(e^{-t}) + ln t = t/2 - sum B_{2n}/((2n)! 2n) t^{2n}.
    let f = |m: usize| -> BigRat {
        if m == 1 {
            rat(1, 2)
        } else if m >= 2 && m.is_multiple_of(2) {
            -&b[m] / (BigRat::from_integer(factorial(m as u64)) * rint(m as i64))
        } else {
            BigRat::zero()
        }
    };
    match p {
        1 => Ok(PolylogExpansion {
            p,
            leading: None,
            log_counterterm: Some((BigRat::one(), 0)),
            coeffs: (0..=order).map(|m| span(Constant::One, f(m))).collect(),
        }),
        3 => {
            // (Li_3 + t^2/2 ln t - 3t^2/4)'' = f, value zeta(3) and slope -zeta(2) at 0.
            let coeffs = (0..=order)
                .map(|m| match m {
                    0 => span(Constant::Zeta3, BigRat::one()),
                    1 => span(Constant::Zeta2, -BigRat::one()),
                    _ => {
                        let extra = if m == 2 { rat(3, 4) } else { BigRat::zero() };
                        span(Constant::One, f(m - 2) / rint((m * (m - 1)) as i64) + extra)
                    }
                })
                .collect();
            Ok(PolylogExpansion { p, leading: None, log_counterterm: Some((rat(1, 2), 2)), coeffs })
        }
        _ => {
            // Li_{-q}(e^{-t}) = q! t^{-q-1} + sum_k zeta(-q-k)(-t)^k/k!.
            let q = (-p) as u64;
            let coeffs = (0..=order as u64)
                .map(|k| {
                    let s = if k % 2 == 0 { BigRat::one() } else { -BigRat::one() };
                    span(Constant::One, s * zeta_nonpositive(&b, q + k) / BigRat::from_integer(factorial(k)))
                })
                .collect();
            Ok(PolylogExpansion {
                p,
                leading: Some((BigRat::from_integer(factorial(q)), -(q as i64) - 1)),
                log_counterterm: None,
                coeffs,
            })
        }
    }
}

/// `(-1)^{g-1}(2g-1) B_{2g}/(2g)!`, the weight of `Li_{3-2g}` in `F_g`.
fn genus_prefactor(b: &[BigRat], g: u32) -> BigRat {
    let gi = g as i64;
    let s = if (gi - 1).rem_euclid(2) == 0 { BigRat::one() } else { -BigRat::one() };
    s * rint(2 * gi - 1) * &b[2 * g as usize] / BigRat::from_integer(factorial(2 * g as u64))
}

/// Coefficient of `(it)^h y^{2g-2}` in the conifold `F_g`, read off the
/// polylogarithm expansion; under `it = N x`, `y = x` it multiplies `N^h x^{2g-2+h}`.
pub fn gw_coeff(g: u32, h: u32) -> Result<BigRat> {
    check_h(g, h)?;
    let b = bernoulli_table(2 * g as usize);
    let li = polylog_coeff(3 - 2 * g as i64, h as usize)?;
    // t^h = (-1)^{h/2} (it)^h for even h.
    let s = if (h / 2).is_multiple_of(2) { BigRat::one() } else { -BigRat::one() };
    Ok(genus_prefactor(&b, g) * li.rational(h as usize) * s)
}

/// `B_{2g}/(2g(2g-2))`, the `N^{2-2g}` term of the Barnes asymptotics.
pub fn barnes_coeff(g: u32) -> Result<BigRat> {
    if g < 2 {
        return Err(Error::domain("Barnes coefficients start at genus 2"));
    }
    let b = bernoulli_table(2 * g as usize);
    let gi = g as i64;
    Ok(&b[2 * g as usize] / rint(2 * gi * (2 * gi - 2)))
}

/// Leading `(it)^{2-2g}` coefficient of the conifold `F_g`, `g >= 2`.
pub fn gw_leading_coeff(g: u32) -> Result<BigRat> {
    if g < 2 {
        return Err(Error::domain("leading term is defined for genus at least 2"));
    }
    let b = bernoulli_table(2 * g as usize);
    let li = polylog_coeff(3 - 2 * g as i64, 0)?;
    let (c, e) = li.leading.expect("negative order has a pole");
    // t^{2-2g} = (it)^{2-2g} i^{2g-2} = (-1)^{g-1} (it)^{2-2g}.
    debug_assert_eq!(e, 2 - 2 * g as i64);
    let s = if (g - 1).is_multiple_of(2) { BigRat::one() } else { -BigRat::one() };
    Ok(genus_prefactor(&b, g) * c * s)
}

/// Exact `(g, h)` coefficient table of `N^h x^{2g-2+h}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries {
    pub g_max: u32,
    pub h_max: u32,
    pub coefficients: BTreeMap<(u32, u32), BigRat>,
}

impl BiSeries {
    fn build(g_max: u32, h_max: u32, f: impl Fn(u32, u32) -> Result<BigRat>) -> Result<Self> {
        let mut coefficients = BTreeMap::new();
        for g in 0..=g_max {
            for h in (2..=h_max).step_by(2) {
                if g == 0 && h == 2 {
                    continue;
                }
                coefficients.insert((g, h), f(g, h)?);
            }
        }
        Ok(BiSeries { g_max, h_max, coefficients })
    }

    pub fn chern_simons(g_max: u32, h_max: u32) -> Result<Self> {
        let b = bernoulli_table((2 * g_max + h_max) as usize);
        Self::build(g_max, h_max, |g, h| Ok(cs_coeff_with(&b, g, h)))
    }

    pub fn gromov_witten(g_max: u32, h_max: u32) -> Result<Self> {
        Self::build(g_max, h_max, gw_coeff)
    }

    pub fn get(&self, g: u32, h: u32) -> Option<&BigRat> {
        self.coefficients.get(&(g, h))
    }
}

/// Result of [`compare`].
#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub g_max: u32,
    pub h_max: u32,
    pub checked: usize,
    pub mismatches: Vec<(u32, u32)>,
    pub residual: SymbolicExpr,
}

impl Comparison {
    pub fn matched(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Term-by-term comparison of the two series plus the symbolic residual.
pub fn compare(g_max: u32, h_max: u32) -> Result<Comparison> {
    let cs = BiSeries::chern_simons(g_max, h_max)?;
    let gw = BiSeries::gromov_witten(g_max, h_max)?;
    let mut mismatches = Vec::new();
    for (k, v) in &cs.coefficients {
        if gw.coefficients.get(k) != Some(v) {
            mismatches.push(*k);
        }
    }
    for g in 2..=g_max {
        if barnes_coeff(g)? != gw_leading_coeff(g)? {
            mismatches.push((g, 0));
        }
    }
    Ok(Comparison { g_max, h_max, checked: cs.coefficients.len(), mismatches, residual: residual() })
}

/// Logarithmic factors in [`SymbolicExpr`] monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LogFactor {
    LnX,
    LnN,
    /// `ln(k + N)`.
    LnKN,
    /// `Re ln(i x N)`.
    ReLnIXN,
    None,
}

/// `N^n_pow x^x_pow * log * constant`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub log: LogFactor,
    pub x_pow: i32,
    pub n_pow: i32,
    pub constant: Constant,
}

impl Monomial {
    pub fn new(n_pow: i32, x_pow: i32, log: LogFactor, constant: Constant) -> Self {
        Monomial { log, x_pow, n_pow, constant }
    }
}

/// Finite rational combination of [`Monomial`]s.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolicExpr {
    terms: BTreeMap<Monomial, BigRat>,
}

impl SymbolicExpr {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, m: Monomial, c: BigRat) {
        let e = self.terms.entry(m).or_insert_with(BigRat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn with(mut self, n_pow: i32, x_pow: i32, log: LogFactor, constant: Constant, c: BigRat) -> Self {
        self.add(Monomial::new(n_pow, x_pow, log, constant), c);
        self
    }

    pub fn coeff(&self, m: &Monomial) -> BigRat {
        self.terms.get(m).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add(*m, -c);
        }
        out
    }

    /// Applies `ln(k+N) = ln 2pi - ln x`, `zeta'(0) = -ln(2pi)/2` and
    /// `Re ln(i x N) = ln x + ln N`.
    pub fn normal_form(&self) -> Self {
        let mut out = SymbolicExpr::new();
        for (m, c) in &self.terms {
            let mut parts: Vec<(Monomial, BigRat)> = Vec::new();
            match m.log {
                LogFactor::LnKN => {
                    if m.constant != Constant::One {
                        parts.push((*m, c.clone()));
                    } else {
                        parts.push((Monomial { log: LogFactor::None, constant: Constant::Ln2Pi, ..*m }, c.clone()));
                        parts.push((Monomial { log: LogFactor::LnX, ..*m }, -c));
                    }
                }
                LogFactor::ReLnIXN => {
                    parts.push((Monomial { log: LogFactor::LnX, ..*m }, c.clone()));
                    parts.push((Monomial { log: LogFactor::LnN, ..*m }, c.clone()));
                }
                _ => parts.push((*m, c.clone())),
            }
            for (mm, cc) in parts {
                if mm.constant == Constant::ZetaPrime0 && mm.log == LogFactor::None {
                    out.add(Monomial { constant: Constant::Ln2Pi, ..mm }, -cc / rint(2));
                } else {
                    out.add(mm, cc);
                }
            }
        }
        out
    }
}

impl fmt::Display for SymbolicExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let mut factors: Vec<String> = Vec::new();
            if m.n_pow == 1 {
                factors.push("N".into());
            } else if m.n_pow != 0 {
                factors.push(alloc::format!("N^{}", m.n_pow));
            }
            if m.constant != Constant::One {
                factors.push(m.constant.name().into());
            }
            if m.x_pow == 1 {
                factors.push("x".into());
            } else if m.x_pow != 0 {
                factors.push(alloc::format!("x^{}", m.x_pow));
            }
            match m.log {
                LogFactor::LnX => factors.push("ln_x".into()),
                LogFactor::LnN => factors.push("ln_N".into()),
                LogFactor::LnKN => factors.push("ln_kN".into()),
                LogFactor::ReLnIXN => factors.push("re_ln_ixN".into()),
                LogFactor::None => {}
            }
            let a = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coef = if a.is_integer() { alloc::format!("{}", a.numer()) } else { alloc::format!("({}/{})", a.numer(), a.denom()) };
            if factors.is_empty() {
                f.write_str(&coef)?;
            } else {
                if !a.is_one() {
                    write!(f, "{coef}*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

use LogFactor as L;
use Constant as K;

/// Non-series terms of the unnormalized Chern-Simons free energy on `S^3`,
/// with the Barnes function replaced by its asymptotic expansion.
pub fn cs_nonsum_terms() -> SymbolicExpr {
    SymbolicExpr::new()
        .with(2, 0, L::LnX, K::One, rat(1, 2))
        .with(1, 0, L::LnX, K::One, rat(-1, 2))
        .with(0, 0, L::LnKN, K::One, rat(1, 2))
        .with(1, 0, L::LnKN, K::One, rat(-1, 2))
        .with(2, 0, L::LnN, K::One, rat(1, 2))
        .with(0, 0, L::LnN, K::One, rat(-1, 2))
        .with(2, 0, L::None, K::One, rat(-3, 4))
        .with(0, 0, L::LnN, K::One, rat(-1, 12))
        .with(1, 0, L::None, K::ZetaPrime0, rat(-1, 1))
        .with(0, 0, L::None, K::ZetaPrimeM1, rat(1, 1))
}

/// A term `c * K * t^t_pow * y^y_pow * (ln t)^[log]` of the Gromov-Witten free energy.
#[derive(Clone, Debug, PartialEq)]
pub struct GwTerm {
    pub coeff: BigRat,
    pub constant: Constant,
    pub t_pow: i32,
    pub y_pow: i32,
    pub log_t: bool,
}

fn gw(c: BigRat, k: Constant, t_pow: i32, y_pow: i32, log_t: bool) -> GwTerm {
    GwTerm { coeff: c, constant: k, t_pow, y_pow, log_t }
}

/// Non-series terms of the conifold Gromov-Witten free energy.
pub fn gw_nonsum_terms() -> Vec<GwTerm> {
    alloc::vec![
        gw(rat(1, 24), K::One, 1, 0, false),
        gw(rat(-1, 12), K::One, 0, 0, true),
        gw(rint(1), K::Zeta3, 0, -2, false),
        gw(rint(-1), K::Zeta2, 1, -2, false),
        gw(rat(3, 4), K::One, 2, -2, false),
        gw(rat(1, 12), K::One, 3, -2, false),
        gw(rat(-1, 2), K::One, 2, -2, true),
    ]
}

/// Real part of a sum of [`GwTerm`]s at `t = i N x`, `y = x`.
pub fn gw_real_part_at_inx(terms: &[GwTerm]) -> Result<SymbolicExpr> {
    let mut out = SymbolicExpr::new();
    for term in terms {
        // t^p = i^p N^p x^p.
        let phase = term.t_pow.rem_euclid(4);
        let re = match phase {
            0 => BigRat::one(),
            2 => -BigRat::one(),
            _ => BigRat::zero(),
        };
        if re.is_zero() {
            if term.log_t {
                return Err(Error::argument("odd power of t times ln t has no rational real part"));
            }
            continue;
        }
        let log = if term.log_t { L::ReLnIXN } else { L::None };
        out.add(Monomial::new(term.t_pow, term.t_pow + term.y_pow, log, term.constant), &term.coeff * re);
    }
    Ok(out)
}

/// `Re F^GW(iNx, x) - F^CS(N, x)` over the non-series terms, in normal form.
pub fn residual() -> SymbolicExpr {
    let gw = gw_real_part_at_inx(&gw_nonsum_terms()).expect("fixed term list");
    gw.sub(&cs_nonsum_terms()).normal_form()
}

/// `(5/12) ln x + zeta(3) x^-2 - (1/2) ln 2pi - zeta'(-1)`.
pub fn theorem_rhs() -> SymbolicExpr {
    SymbolicExpr::new()
        .with(0, 0, L::LnX, K::One, rat(5, 12))
        .with(0, -2, L::None, K::Zeta3, rint(1))
        .with(0, 0, L::None, K::Ln2Pi, rat(-1, 2))
        .with(0, 0, L::None, K::ZetaPrimeM1, rint(-1))
}

/// The intermediate combination written out in the proof of the comparison theorem.
pub fn proof_intermediate() -> SymbolicExpr {
    SymbolicExpr::new()
        .with(1, 0, L::LnKN, K::One, rat(1, 2))
        .with(0, 0, L::LnKN, K::One, rat(-1, 2))
        .with(2, 0, L::LnX, K::One, rat(-1, 2))
        .with(1, 0, L::LnX, K::One, rat(1, 2))
        .with(2, 0, L::LnN, K::One, rat(-1, 2))
        .with(2, 0, L::None, K::One, rat(3, 4))
        .with(0, 0, L::LnN, K::One, rat(1, 12))
        .with(1, 0, L::None, K::ZetaPrime0, rint(1))
        .with(0, 0, L::None, K::ZetaPrimeM1, rint(-1))
        .with(0, 0, L::ReLnIXN, K::One, rat(-1, 12))
        .with(0, -2, L::None, K::Zeta3, rint(1))
        .with(2, 0, L::None, K::One, rat(-3, 4))
        .with(2, 0, L::ReLnIXN, K::One, rat(1, 2))
}

/// `ln Z(S^3)` for `SU(N)` at level `k` from the exact product formula.
pub fn cs_free_energy_numeric(n: u32, k: u32, prec: &Precision) -> Result<ApComplex> {
    if n < 2 || k < 1 {
        return Err(Error::argument("need N >= 2 and k >= 1"));
    }
    let l = (k + n) as i64;
    let mut acc = -prec.ln(&prec.int(n as i64)).div_int(2);
    acc = acc + prec.ln(&prec.int(l)).mul_int(1 - n as i64).div_int(2);
    for j in 1..n as i64 {
        let s = prec.cis_turn(&rat(j, 2 * l)).im.mul_int(2);
        acc = acc + prec.ln(&s).mul_int(n as i64 - j);
    }
    Ok(ApComplex::real(acc))
}

/// Renders a [`ConstSpan`] for diagnostics.
pub fn span_to_string(s: &ConstSpan) -> String {
    let mut out = String::new();
    for (i, (k, v)) in s.iter().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        let _ = write!(out, "{v}");
        if *k != Constant::One {
            let _ = write!(out, "*{}", k.name());
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
