//! Gromov-Witten invariants of the resolved conifold: the all-genus
//! multiple cover formula, the Hodge constants `b_g`, degree zero
//! invariants and the Gopakumar-Vafa integrality form.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{bernoulli_table, factorial, rat, rint, rpow, series_inv, series_mul, sinc_series, BigRat};

/// One invariant `N_{g,d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConifoldInvariant {
    pub g: u32,
    pub d: u32,
    pub value: BigRat,
}

/// The coefficients `b_g` of `(s/2)/sin(s/2) = sum b_g s^{2g}`.
#[derive(Clone, Debug)]
pub struct HodgeConstants {
    b: Vec<BigRat>,
}

impl HodgeConstants {
    /// Stores `b_0 .. b_gmax`.
    pub fn new(gmax: u32) -> Self {
        let len = gmax as usize + 1;
        let b = series_inv(&sinc_series(&rat(1, 2), len), len).expect("sinc has constant term 1");
        HodgeConstants { b }
    }

    pub fn gmax(&self) -> u32 {
        self.b.len() as u32 - 1
    }

    pub fn get(&self, g: u32) -> Option<&BigRat> {
        self.b.get(g as usize)
    }

    pub fn as_slice(&self) -> &[BigRat] {
        &self.b
    }
}

pub fn hodge_bg(g: u32) -> BigRat {
    HodgeConstants::new(g).b.pop().unwrap_or_else(BigRat::one)
}

fn sign(k: i64) -> BigRat {
    if k.rem_euclid(2) == 0 {
        BigRat::one()
    } else {
        -BigRat::one()
    }
}

/// `N_{g,d} = d^{2g-3} (-1)^{g-1} (2g-1) B_{2g}/(2g)!` for `d >= 1`.
pub fn conifold_invariant(g: u32, d: u32) -> Result<BigRat> {
    if d < 1 {
        return Err(Error::argument("degree must be at least 1; use degree_zero for d = 0"));
    }
    let b = bernoulli_table(2 * g as usize);
    Ok(closed_form(g, d, &b[2 * g as usize]))
}

fn closed_form(g: u32, d: u32, b2g: &BigRat) -> BigRat {
    let g = g as i64;
    rpow(&rint(d as i64), 2 * g - 3) * sign(g - 1) * rint(2 * g - 1) * b2g / BigRat::from_integer(factorial(2 * g as u64))
}

/// `N_{g,d}` as `d^{2g-3} sum_{g0+g1=g} b_{g0} b_{g1}`.
pub fn conifold_invariant_convolution(g: u32, d: u32, hodge: &HodgeConstants) -> Result<BigRat> {
    if d < 1 {
        return Err(Error::argument("degree must be at least 1"));
    }
    if g > hodge.gmax() {
        return Err(Error::argument("Hodge table too short for the requested genus"));
    }
    let b = hodge.as_slice();
    let conv: BigRat = (0..=g as usize).map(|i| &b[i] * &b[g as usize - i]).sum();
    Ok(rpow(&rint(d as i64), 2 * g as i64 - 3) * conv)
}

/// `N_{g,0} = (-1)^{g-1}(2g-1) B_{2g} B_{2g-2} chi / (2 (2g-2) (2g)!)`.
///
/// For `g` in `{0, 1}` there are no contracted stable maps on the conifold,
/// so `chi = 2` returns zero; other `chi` are rejected.
pub fn degree_zero(g: u32, chi: i64) -> Result<BigRat> {
    if g < 2 {
        if chi == 2 {
            return Ok(BigRat::zero());
        }
        return Err(Error::domain("degree zero formula needs genus at least 2"));
    }
    let b = bernoulli_table(2 * g as usize);
    let gi = g as i64;
    Ok(sign(gi - 1) * rint(2 * gi - 1) * &b[2 * g as usize] * &b[2 * g as usize - 2] * rint(chi)
        / (rint(2 * (2 * gi - 2)) * BigRat::from_integer(factorial(2 * g as u64))))
}

/// Table of `N_{g,d}` for `0 <= g <= gmax`, `1 <= d <= dmax`.
pub fn conifold_table(gmax: u32, dmax: u32) -> Vec<ConifoldInvariant> {
    let b = bernoulli_table(2 * gmax as usize);
    let mut out = Vec::new();
    for g in 0..=gmax {
        for d in 1..=dmax {
            out.push(ConifoldInvariant { g, d, value: closed_form(g, d, &b[2 * g as usize]) });
        }
    }
    out
}

/// Coefficients of `y^{2g-2}`, `g = 0..len`, in `(1/k)(2 sin(k y/2))^{2h-2}`.
pub fn gv_sine_term(h: u32, k: u32, len: usize) -> Result<Vec<BigRat>> {
    // 2 sin(k y/2) = k y * sinc(k y/2).
    let kr = rint(k as i64);
    let s = sinc_series(&(&kr / rint(2)), len);
    let base = if h == 0 { series_inv(&s, len)? } else { s };
    let mut pow = alloc::vec![BigRat::zero(); len];
    pow[0] = BigRat::one();
    for _ in 0..(if h == 0 { 2 } else { 2 * h - 2 }) {
        pow = series_mul(&pow, &base, len);
    }
    // The leading power of y is 2h-2; shift so index g means y^{2g-2}.
    let lead = rpow(&kr, 2 * h as i64 - 2) / &kr;
    let mut out = alloc::vec![BigRat::zero(); len];
    for (i, c) in pow.into_iter().enumerate() {
        let g = i + h as usize;
        if g < len {
            out[g] = c * &lead;
        }
    }
    Ok(out)
}

/// BPS numbers of the conifold: one genus zero state on the primitive class.
pub fn conifold_bps(g: u32, beta: u32) -> BigInt {
    BigInt::from((g == 0 && beta == 1) as i32)
}

/// Outcome of comparing the Gromov-Witten and Gopakumar-Vafa expansions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GvReport {
    pub g_max: u32,
    pub d_max: u32,
    pub checked: usize,
    pub mismatches: Vec<(u32, u32)>,
}

impl GvReport {
    pub fn matched(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares `sum_g N_{g,d} y^{2g-2}` with the Gopakumar-Vafa form
/// `sum_{h, k beta = d} n^h_beta (1/k)(2 sin(k y/2))^{2h-2}`.
pub fn gv_check(g_max: u32, d_max: u32) -> Result<GvReport> {
    let len = g_max as usize + 1;
    let table = conifold_table(g_max, d_max);
    let mut report = GvReport { g_max, d_max, checked: 0, mismatches: Vec::new() };
    for d in 1..=d_max {
        let mut gv = alloc::vec![BigRat::zero(); len];
        for k in (1..=d).filter(|k| d % k == 0) {
            let beta = d / k;
            for h in 0..=g_max {
                let n = conifold_bps(h, beta);
                if n.is_zero() {
                    continue;
                }
                let term = gv_sine_term(h, k, len)?;
                for (acc, t) in gv.iter_mut().zip(term) {
                    *acc += t * BigRat::from_integer(n.clone());
                }
            }
        }
        for g in 0..=g_max {
            let gw = &table.iter().find(|x| x.g == g && x.d == d).expect("table entry").value;
            report.checked += 1;
            if gw != &gv[g as usize] {
                report.mismatches.push((g, d));
            }
        }
    }
    Ok(report)
}
