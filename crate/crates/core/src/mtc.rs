//! Modular data of the reduced tilting modules of `U_eps(sl_N)` at
//! `eps = e^{pi i/(k+N)}`, the `U(1)_{2m+1}` category, and surgery
//! invariants built from them.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{cmat_max_dev, cmat_mul, rat, ApComplex, ApReal, BigRat, CMatrix, Precision};
use crate::liedata::{alcove_weights, in_alcove, inner_product, l_inner, quantum_dim, signed_permutations, AlcoveData, Weight};

fn check_level(n: usize, k: i64) -> Result<()> {
    if n < 2 || k < 1 {
        return Err(Error::argument(format!("need N >= 2 and k >= 1, got ({n}, {k})")));
    }
    Ok(())
}

fn check_weight(w: &Weight, n: usize, k: i64) -> Result<()> {
    if w.rank() != n {
        return Err(Error::argument(format!("weight of sl_{} used with N = {n}", w.rank())));
    }
    if !in_alcove(w, k) {
        return Err(Error::domain(format!("weight {:?} is outside the alcove at level {k}", w.coords())));
    }
    Ok(())
}

/// `eps^r = e^{pi i r/(k+N)}`.
fn eps_pow(r: &BigRat, lp: i64, prec: &Precision) -> ApComplex {
    prec.cis_turn(&(r / BigRat::from_integer(BigInt::from(2 * lp))))
}

/// `theta_lambda = eps^{(lambda + 2 rho, lambda)}`.
pub fn twist_eigenvalue(lambda: &Weight, n: usize, k: i64, prec: &Precision) -> Result<ApComplex> {
    check_level(n, k)?;
    check_weight(lambda, n, k)?;
    let e = inner_product(&lambda.add(&Weight::rho(n).scaled(2)), lambda)?;
    Ok(eps_pow(&e, k + n as i64, prec))
}

/// `s~_{lambda mu} = delta_0^{-1} sum_sigma (-1)^sigma eps^{2(sigma(lambda+rho), mu+rho)}`.
pub fn stilde_entry(lambda: &Weight, mu: &Weight, n: usize, k: i64, prec: &Precision) -> Result<ApComplex> {
    check_level(n, k)?;
    check_weight(lambda, n, k)?;
    check_weight(mu, n, k)?;
    Ok(StildeKernel::new(n, k, prec).entry(lambda, mu, prec))
}

/// Permutation data and the Weyl denominator shared by all entries.
struct StildeKernel {
    n: usize,
    lp: i64,
    perms: Vec<(Vec<usize>, i64)>,
    delta0_inv: ApComplex,
}

impl StildeKernel {
    fn new(n: usize, k: i64, prec: &Precision) -> Self {
        let lp = k + n as i64;
        let mut delta0 = prec.one();
        for i in 1..=n {
            for j in i + 1..=n {
                let r = rint_rat((j - i) as i64);
                delta0 = &delta0 * &(eps_pow(&r, lp, prec) - eps_pow(&-r, lp, prec));
            }
        }
        StildeKernel { n, lp, perms: signed_permutations(n), delta0_inv: delta0.recip() }
    }

    fn entry(&self, lambda: &Weight, mu: &Weight, prec: &Precision) -> ApComplex {
        let rho = Weight::rho(self.n);
        let a = lambda.add(&rho).l_vector();
        let b = mu.add(&rho).l_vector();
        let mut acc = prec.czero();
        let mut pa = vec![0i64; self.n];
        for (sigma, sign) in &self.perms {
            for (i, &s) in sigma.iter().enumerate() {
                pa[s] = a[i];
            }
            let e = l_inner(&pa, &b) * rint_rat(2);
            let z = eps_pow(&e, self.lp, prec);
            acc = if *sign > 0 { acc + z } else { acc - z };
        }
        &acc * &self.delta0_inv
    }
}

fn rint_rat(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// Characteristic data of the sl_N modular category at level `k`.
#[derive(Clone, Debug)]
pub struct ModularData {
    pub n: usize,
    pub k: i64,
    /// Simple objects in lexicographic order of fundamental-weight coordinates.
    pub alcove: AlcoveData,
    pub d: Vec<ApComplex>,
    pub theta: Vec<ApComplex>,
    pub stilde: CMatrix,
    pub ttilde: CMatrix,
    /// Positive square root of `sum d^2`.
    pub diameter: ApComplex,
    /// `p^{+-} = sum theta^{+-1} d^2`.
    pub p_plus: ApComplex,
    pub p_minus: ApComplex,
    bits: u32,
}

impl ModularData {
    pub fn new(n: usize, k: i64, prec: &Precision) -> Result<Self> {
        check_level(n, k)?;
        let alcove = alcove_weights(n, k)?;
        let d: Vec<ApComplex> = alcove.weights.iter().map(|w| quantum_dim(w, n, k, prec)).collect();
        let theta = alcove.weights.iter().map(|w| twist_eigenvalue(w, n, k, prec)).collect::<Result<Vec<_>>>()?;
        let kernel = StildeKernel::new(n, k, prec);
        let m = alcove.len();
        let mut stilde = vec![vec![prec.czero(); m]; m];
        for i in 0..m {
            for j in i..m {
                let v = kernel.entry(&alcove.weights[i], &alcove.weights[j], prec);
                stilde[j][i] = v.clone();
                stilde[i][j] = v;
            }
        }
        let mut ttilde = vec![vec![prec.czero(); m]; m];
        for i in 0..m {
            ttilde[i][i] = theta[i].clone();
        }
        let mut sum_d2 = prec.int(0);
        let mut p_plus = prec.czero();
        let mut p_minus = prec.czero();
        for (di, th) in d.iter().zip(&theta) {
            let d2 = &di.re * &di.re;
            sum_d2 = sum_d2 + &d2;
            p_plus = p_plus + th.scale(&d2);
            p_minus = p_minus + th.conj().scale(&d2);
        }
        let diameter = ApComplex::real(sum_d2.sqrt());
        Ok(ModularData { n, k, alcove, d, theta, stilde, ttilde, diameter, p_plus, p_minus, bits: prec.bits() })
    }

    pub fn len(&self) -> usize {
        self.alcove.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alcove.is_empty()
    }

    pub fn sum_d_squared(&self) -> ApReal {
        &self.diameter.re * &self.diameter.re
    }

    /// Permutation matrix of `lambda -> lambda*`.
    pub fn dual_matrix(&self, prec: &Precision) -> CMatrix {
        let m = self.len();
        let mut p = vec![vec![prec.czero(); m]; m];
        for (i, j) in self.alcove.dual_permutation().into_iter().enumerate() {
            p[i][j] = prec.one();
        }
        p
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// The sixth root `zeta` of `p+/p-` with `zeta^3 = p+/D`; other
    /// branches flip the sign of `(st)^3`.
    pub fn zeta(&self, prec: &Precision) -> ApComplex {
        prec.principal_root(&self.p_plus.div(&self.diameter), 3)
    }
}

/// `Z(S^3) = N^{-1/2}(k+N)^{(1-N)/2} prod_{j<N} (2 sin(pi j/(k+N)))^{N-j}`.
pub fn z_s3(n: usize, k: i64, prec: &Precision) -> Result<ApComplex> {
    check_level(n, k)?;
    let lp = k + n as i64;
    let mut v = prec.int(1);
    for j in 1..n {
        let s = prec.cis_turn(&rat(j as i64, 2 * lp)).im.mul_int(2);
        for _ in 0..n - j {
            v = &v * &s;
        }
    }
    let mut denom = prec.int(n as i64);
    for _ in 1..n {
        denom = denom.mul_int(lp);
    }
    Ok(ApComplex::real(v.div(&denom.sqrt())))
}

/// Deviations of the normalised modular data from the `SL_2(Z)` relations.
#[derive(Clone, Debug)]
pub struct Sl2zReport {
    pub st_cubed_vs_s_squared: ApReal,
    pub s_squared_t_vs_t_s_squared: ApReal,
    pub s_fourth_vs_identity: ApReal,
    pub stilde_squared_vs_dual: ApReal,
    /// `(s^-1 t)^3` against `s^-2`: the same relation for the mirror pairing.
    pub inverse_st_cubed_vs_s_squared: ApReal,
}

impl Sl2zReport {
    /// Largest deviation among the four relations as stated for `(s, t)`.
    pub fn max_deviation(&self) -> ApReal {
        [&self.st_cubed_vs_s_squared, &self.s_squared_t_vs_t_s_squared, &self.s_fourth_vs_identity, &self.stilde_squared_vs_dual]
            .into_iter()
            .max()
            .cloned()
            .expect("four entries")
    }
}

/// Checks `(st)^3 = s^2`, `s^2 t = t s^2`, `s^4 = 1` for `s = s~/D`,
/// `t = zeta^{-1} t~` with `zeta` from [`ModularData::zeta`], and
/// `s~^2 = D^2 Pi_dual`.
pub fn verify_sl2z(n: usize, k: i64, prec: &Precision) -> Result<Sl2zReport> {
    let md = ModularData::new(n, k, prec)?;
    Ok(verify_sl2z_data(&md, prec))
}

pub fn verify_sl2z_data(md: &ModularData, prec: &Precision) -> Sl2zReport {
    let bits = prec.bits();
    let m = md.len();
    let dinv = md.diameter.recip();
    let s: CMatrix = md.stilde.iter().map(|r| r.iter().map(|x| x * &dinv).collect()).collect();
    let zinv = md.zeta(prec).recip();
    let t: CMatrix = md.ttilde.iter().map(|r| r.iter().map(|x| x * &zinv).collect()).collect();
    let mut id = vec![vec![prec.czero(); m]; m];
    for (i, row) in id.iter_mut().enumerate() {
        row[i] = prec.one();
    }
    let st = cmat_mul(&s, &t, bits);
    let st3 = cmat_mul(&cmat_mul(&st, &st, bits), &st, bits);
    let s2 = cmat_mul(&s, &s, bits);
    let s4 = cmat_mul(&s2, &s2, bits);
    let s2t = cmat_mul(&s2, &t, bits);
    let ts2 = cmat_mul(&t, &s2, bits);
    let s3 = cmat_mul(&s2, &s, bits);
    let it = cmat_mul(&s3, &t, bits);
    let it3 = cmat_mul(&cmat_mul(&it, &it, bits), &it, bits);
    let stilde2 = cmat_mul(&md.stilde, &md.stilde, bits);
    let d2 = md.sum_d_squared();
    let dual: CMatrix = md.dual_matrix(prec).iter().map(|r| r.iter().map(|x| x.scale(&d2)).collect()).collect();
    Sl2zReport {
        st_cubed_vs_s_squared: cmat_max_dev(&st3, &s2, bits),
        s_squared_t_vs_t_s_squared: cmat_max_dev(&s2t, &ts2, bits),
        s_fourth_vs_identity: cmat_max_dev(&s4, &id, bits),
        stilde_squared_vs_dual: cmat_max_dev(&stilde2, &dual, bits),
        inverse_st_cubed_vs_s_squared: cmat_max_dev(&it3, &s2, bits),
    }
}

/// `U(1)_{2m+1}`: objects `Z/(2m+1)`, all of dimension one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct U1Category {
    pub m: u32,
}

impl U1Category {
    pub fn new(m: u32) -> Result<Self> {
        if m < 1 {
            return Err(Error::argument("U(1) category needs m >= 1"));
        }
        Ok(U1Category { m })
    }

    pub fn order(&self) -> i64 {
        2 * self.m as i64 + 1
    }

    /// Braiding of labels `a` over `b`: `e^{2 pi i ab/(2m+1)}`.
    pub fn braiding(&self, a: i64, b: i64, prec: &Precision) -> ApComplex {
        prec.cis_turn(&rat(a * b, self.order()))
    }

    /// Twist of label `p`: `e^{2 pi i p^2/(2m+1)}`.
    pub fn twist(&self, p: i64, prec: &Precision) -> ApComplex {
        self.braiding(p, p, prec)
    }

    /// Gauss sums `p^{+-} = sum_p theta_p^{+-1}`.
    pub fn p_plus(&self, prec: &Precision) -> ApComplex {
        (0..self.order()).fold(prec.czero(), |a, p| a + self.twist(p, prec))
    }

    pub fn p_minus(&self, prec: &Precision) -> ApComplex {
        (0..self.order()).fold(prec.czero(), |a, p| a + self.twist(p, prec).conj())
    }

    pub fn diameter(&self, prec: &Precision) -> ApReal {
        prec.int(self.order()).sqrt()
    }
}

/// A framed surgery link described by its linking matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryPresentation {
    linking: Vec<Vec<i64>>,
    colors: Option<Vec<i64>>,
}

impl SurgeryPresentation {
    pub fn new(linking: Vec<Vec<i64>>) -> Result<Self> {
        check_symmetric(&linking)?;
        Ok(SurgeryPresentation { linking, colors: None })
    }

    pub fn with_colors(mut self, colors: Vec<i64>) -> Result<Self> {
        if colors.len() != self.components() {
            return Err(Error::argument(format!("expected {} colors, got {}", self.components(), colors.len())));
        }
        self.colors = Some(colors);
        Ok(self)
    }

    pub fn empty() -> Self {
        SurgeryPresentation { linking: Vec::new(), colors: None }
    }

    pub fn unknot(framing: i64) -> Self {
        SurgeryPresentation { linking: vec![vec![framing]], colors: None }
    }

    pub fn linking(&self) -> &[Vec<i64>] {
        &self.linking
    }

    pub fn colors(&self) -> Option<&[i64]> {
        self.colors.as_deref()
    }

    pub fn components(&self) -> usize {
        self.linking.len()
    }
}

fn check_symmetric(m: &[Vec<i64>]) -> Result<()> {
    let c = m.len();
    for (i, row) in m.iter().enumerate() {
        if row.len() != c {
            return Err(Error::argument("matrix must be square"));
        }
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return Err(Error::argument(format!("matrix is not symmetric at ({i}, {j})")));
            }
        }
    }
    Ok(())
}

/// `F(L) = exp(2 pi i/(2m+1) sum_ij n_ij p_i p_j)` for the presentation's colors.
pub fn u1_link_value(pres: &SurgeryPresentation, m: u32, prec: &Precision) -> Result<ApComplex> {
    let cat = U1Category::new(m)?;
    let colors = pres.colors().ok_or_else(|| Error::argument("presentation has no colors"))?;
    Ok(u1_phase(pres.linking(), colors, &cat, prec))
}

fn u1_phase(lk: &[Vec<i64>], colors: &[i64], cat: &U1Category, prec: &Precision) -> ApComplex {
    let mut e = BigInt::zero();
    for (i, row) in lk.iter().enumerate() {
        for (j, n) in row.iter().enumerate() {
            e += BigInt::from(*n) * colors[i] * colors[j];
        }
    }
    prec.cis_turn(&BigRat::new(e, BigInt::from(cat.order())))
}

/// `tau = (p^-)^sigma D^{-sigma-c-1} sum_colors F(L)`.
pub fn u1_tau(pres: &SurgeryPresentation, m: u32, prec: &Precision) -> Result<ApComplex> {
    let cat = U1Category::new(m)?;
    let c = pres.components();
    let order = cat.order();
    let mut colors = vec![0i64; c];
    let mut total = prec.czero();
    loop {
        total = total + u1_phase(pres.linking(), &colors, &cat, prec);
        let mut i = 0;
        while i < c {
            colors[i] += 1;
            if colors[i] < order {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
        if i == c {
            break;
        }
    }
    let sigma = signature(pres.linking())?;
    let dd = ApComplex::real(cat.diameter(prec));
    Ok(tau_normalise(&total, &cat.p_minus(prec), &dd, sigma, c as i64))
}

fn tau_normalise(f: &ApComplex, p_minus: &ApComplex, d: &ApComplex, sigma: i64, c: i64) -> ApComplex {
    f * &p_minus.powi(sigma) * &d.powi(-sigma - c - 1)
}

/// Surgery on an `f`-framed unknot with `F = sum d^2 theta^f`.
pub fn sln_unknot_surgery_tau(f: i64, n: usize, k: i64, prec: &Precision) -> Result<ApComplex> {
    let md = ModularData::new(n, k, prec)?;
    Ok(sln_unknot_surgery_tau_data(f, &md))
}

pub fn sln_unknot_surgery_tau_data(f: i64, md: &ModularData) -> ApComplex {
    let mut total = ApComplex::zero(md.bits());
    for (di, th) in md.d.iter().zip(&md.theta) {
        let d2 = &di.re * &di.re;
        total = total + th.powi(f).scale(&d2);
    }
    tau_normalise(&total, &md.p_minus, &md.diameter, f.signum(), 1)
}

/// Signature of a symmetric integer matrix by rational congruence diagonalisation.
pub fn signature(m: &[Vec<i64>]) -> Result<i64> {
    check_symmetric(m)?;
    let c = m.len();
    let mut a: Vec<Vec<BigRat>> = m.iter().map(|r| r.iter().map(|&x| rint_rat(x)).collect()).collect();
    let mut sig = 0i64;
    let mut active: Vec<usize> = (0..c).collect();
    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| !a[i][i].is_zero()) {
            let p = active.remove(pos);
            let piv = a[p][p].clone();
            sig += if piv.is_positive() { 1 } else { -1 };
            for &i in &active {
                let f = &a[i][p] / &piv;
                if f.is_zero() {
                    continue;
                }
                for &j in &active {
                    let v = &f * &a[p][j];
                    a[i][j] -= v;
                }
            }
            continue;
        }
        // All remaining diagonal entries vanish: pair off a nonzero off-diagonal entry.
        let pair = active.iter().enumerate().find_map(|(x, &i)| active[x + 1..].iter().find(|&&j| !a[i][j].is_zero()).map(|&j| (i, j)));
        match pair {
            None => break,
            Some((i, j)) => {
                // Replace row/column i by i + j, making the (i, i) entry 2 a_ij.
                for &r in &active {
                    let v = a[j][r].clone();
                    a[i][r] += v;
                }
                for &r in &active {
                    let v = a[r][j].clone();
                    a[r][i] += v;
                }
            }
        }
    }
    Ok(sig)
}

/// Right-handed Hopf link value at `q = eps`, i.e. `u = e^{pi i/(N(k+N))}`.
pub fn hopf_at_eps(w: &crate::exactnum::LaurentPoly, n: usize, k: i64, prec: &Precision) -> ApComplex {
    crate::exactnum::eval_at_root(w, 2 * n as i64 * (k + n as i64), 1, prec)
}
