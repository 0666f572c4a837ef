//! Weights, roots and alcoves of sl_N; Schur polynomials and the Pieri rule.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{rat, rint, ApComplex, BigRat, Precision};

/// `sum n_i omega_i` for sl_N, stored in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    coords: Vec<i64>,
}

impl Weight {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::argument("sl_N weights need N >= 2"));
        }
        Ok(Weight { coords })
    }

    pub fn zero(n: usize) -> Self {
        Weight { coords: vec![0; n - 1] }
    }

    /// `rho = sum omega_i`.
    pub fn rho(n: usize) -> Self {
        Weight { coords: vec![1; n - 1] }
    }

    /// `omega_i`, 1-based.
    pub fn fundamental(n: usize, i: usize) -> Self {
        let mut c = vec![0; n - 1];
        c[i - 1] = 1;
        Weight { coords: c }
    }

    /// `alpha_ij = L_i - L_j`, 1-based.
    pub fn root(n: usize, i: usize, j: usize) -> Self {
        let mut v = vec![0i64; n];
        v[i - 1] += 1;
        v[j - 1] -= 1;
        Weight::from_l_vector(&v)
    }

    /// Simple root `alpha_i = L_i - L_{i+1}`.
    pub fn simple_root(n: usize, i: usize) -> Self {
        Weight::root(n, i, i + 1)
    }

    /// Weight with L-basis coordinates `v` (taken modulo `(1, ..., 1)`).
    pub fn from_l_vector(v: &[i64]) -> Self {
        Weight { coords: v.windows(2).map(|w| w[0] - w[1]).collect() }
    }

    /// Dominant weight of a partition with at most `n - 1` rows.
    pub fn from_partition(n: usize, parts: &[i64]) -> Result<Self> {
        if parts.len() > n - 1 {
            return Err(Error::argument(format!("partition has more than {} rows", n - 1)));
        }
        let mut v = vec![0i64; n];
        v[..parts.len()].copy_from_slice(parts);
        if v.windows(2).any(|w| w[0] < w[1]) || v.iter().any(|&x| x < 0) {
            return Err(Error::argument("parts must be non-increasing and non-negative"));
        }
        Ok(Weight::from_l_vector(&v))
    }

    pub fn rank(&self) -> usize {
        self.coords.len() + 1
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// L-basis coordinates with last entry zero.
    pub fn l_vector(&self) -> Vec<i64> {
        let n = self.rank();
        let mut v = vec![0i64; n];
        for j in (0..n - 1).rev() {
            v[j] = v[j + 1] + self.coords[j];
        }
        v
    }

    /// Partition view `(lambda_1, ..., lambda_{N-1})`.
    pub fn to_partition(&self) -> Vec<i64> {
        let mut v = self.l_vector();
        v.pop();
        v
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn level(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight { coords: self.coords.iter().map(|a| a * k).collect() }
    }
}

/// Normalized invariant form, `(L_i, L_j) = delta_ij - 1/N`.
pub fn inner_product(mu: &Weight, nu: &Weight) -> Result<BigRat> {
    if mu.rank() != nu.rank() {
        return Err(Error::argument(format!("rank mismatch: sl_{} vs sl_{}", mu.rank(), nu.rank())));
    }
    Ok(l_inner(&mu.l_vector(), &nu.l_vector()))
}

/// Form on raw L-basis vectors.
pub fn l_inner(a: &[i64], b: &[i64]) -> BigRat {
    let n = a.len() as i64;
    let dot: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let sa: i64 = a.iter().sum();
    let sb: i64 = b.iter().sum();
    rint(dot) - rat(sa * sb, n)
}

/// Positive roots and Cartan matrix of sl_N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub n: usize,
    pub positive_roots: Vec<(usize, usize)>,
    pub cartan: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn new(n: usize) -> Self {
        let mut positive_roots = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                positive_roots.push((i, j));
            }
        }
        let cartan = (1..n)
            .map(|i| {
                (1..n)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        RootSystem { n, positive_roots, cartan }
    }

    pub fn highest_root(&self) -> Weight {
        Weight::root(self.n, 1, self.n)
    }
}

/// Dominant weights in the open Weyl alcove at level `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlcoveData {
    pub n: usize,
    pub k: i64,
    pub weights: Vec<Weight>,
}

impl AlcoveData {
    /// `l' = k + N`.
    pub fn shifted_level(&self) -> i64 {
        self.k + self.n as i64
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn index_of(&self, w: &Weight) -> Option<usize> {
        self.weights.iter().position(|x| x == w)
    }

    /// Permutation `i -> index of (weights[i])*`.
    pub fn dual_permutation(&self) -> Vec<usize> {
        self.weights.iter().map(|w| self.index_of(&dual_weight(w)).expect("alcove closed under duality")).collect()
    }
}

/// Lexicographic enumeration of `n_i >= 0` with `sum n_i <= k`.
pub fn alcove_weights(n: usize, k: i64) -> Result<AlcoveData> {
    if n < 2 || k < 1 {
        return Err(Error::argument(format!("alcove needs N >= 2 and k >= 1, got ({n}, {k})")));
    }
    let mut weights = Vec::new();
    let mut cur = vec![0i64; n - 1];
    fn rec(pos: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if pos == cur.len() {
            out.push(Weight { coords: cur.clone() });
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(pos + 1, left - v, cur, out);
        }
        cur[pos] = 0;
    }
    rec(0, k, &mut cur, &mut weights);
    Ok(AlcoveData { n, k, weights })
}

pub fn in_alcove(w: &Weight, k: i64) -> bool {
    w.is_dominant() && w.level() <= k
}

/// `lambda* = -w_0(lambda)`: reverses the fundamental-weight coordinates.
pub fn dual_weight(w: &Weight) -> Weight {
    let mut c = w.coords.clone();
    c.reverse();
    Weight { coords: c }
}

/// `(lambda + rho, alpha_ij)` for 1-based `i < j`.
pub fn shifted_root_pairing(w: &Weight, i: usize, j: usize) -> i64 {
    w.coords[i - 1..j - 1].iter().map(|c| c + 1).sum()
}

/// Sine-product quantum dimension at `epsilon = e^{pi i/(k+N)}`.
pub fn quantum_dim(w: &Weight, n: usize, k: i64, prec: &Precision) -> ApComplex {
    let lp = k + n as i64;
    let sin = |m: i64| prec.cis_turn(&rat(m, 2 * lp)).im;
    let mut num = prec.int(1);
    let mut den = prec.int(1);
    for i in 1..=n {
        for j in i + 1..=n {
            num = num * sin(shifted_root_pairing(w, i, j));
            den = den * sin((j - i) as i64);
        }
    }
    ApComplex::real(num.div(&den))
}

/// Classical dimension `prod (lambda + rho, alpha)/(rho, alpha)`.
pub fn weyl_dim(w: &Weight) -> BigInt {
    let n = w.rank();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 1..=n {
        for j in i + 1..=n {
            num *= shifted_root_pairing(w, i, j);
            den *= (j - i) as i64;
        }
    }
    num / den
}

/// A partition: weakly decreasing positive parts.
pub type Partition = Vec<usize>;

/// Polynomial in `m` variables keyed by exponent vectors.
pub type MPoly = BTreeMap<Vec<u32>, BigInt>;

fn mpoly_add_term(p: &mut MPoly, e: Vec<u32>, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let slot = p.entry(e.clone()).or_insert_with(BigInt::zero);
    *slot += c;
    if slot.is_zero() {
        p.remove(&e);
    }
}

pub fn mpoly_mul(a: &MPoly, b: &MPoly) -> MPoly {
    let mut out = MPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            mpoly_add_term(&mut out, e, ca * cb);
        }
    }
    out
}

pub fn mpoly_eval(p: &MPoly, x: &[i64]) -> BigInt {
    p.iter()
        .map(|(e, c)| {
            let mut t = c.clone();
            for (xi, ei) in x.iter().zip(e) {
                t *= num_traits::pow(BigInt::from(*xi), *ei as usize);
            }
            t
        })
        .sum()
}

fn validate_partition(lambda: &[usize], m: usize) -> Result<()> {
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::argument("partition parts must be non-increasing"));
    }
    let len = lambda.iter().filter(|&&p| p > 0).count();
    if len > m {
        return Err(Error::argument(format!("partition has {len} parts but only {m} variables")));
    }
    Ok(())
}

fn permutations(m: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i64)>) {
        let m = used.len();
        if prefix.len() == m {
            let inversions = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).filter(|&(i, j)| prefix[i] > prefix[j]).count();
            out.push((prefix.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for v in 0..m {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// Signed permutations of `0..m` with their parities.
pub fn signed_permutations(m: usize) -> Vec<(Vec<usize>, i64)> {
    permutations(m)
}

/// `det(x_j^{e_i})` for exponents `e`.
pub fn alternant(exps: &[u32]) -> MPoly {
    let m = exps.len();
    let mut out = MPoly::new();
    for (sigma, sign) in permutations(m) {
        let mut e = vec![0u32; m];
        for (i, &j) in sigma.iter().enumerate() {
            e[j] = exps[i];
        }
        mpoly_add_term(&mut out, e, BigInt::from(sign));
    }
    out
}

/// `prod_{i<j} (x_i - x_j)`.
pub fn vandermonde(m: usize) -> MPoly {
    let mut acc = MPoly::new();
    acc.insert(vec![0; m], BigInt::one());
    for i in 0..m {
        for j in i + 1..m {
            let mut f = MPoly::new();
            let mut ei = vec![0; m];
            ei[i] = 1;
            let mut ej = vec![0; m];
            ej[j] = 1;
            f.insert(ei, BigInt::one());
            f.insert(ej, -BigInt::one());
            acc = mpoly_mul(&acc, &f);
        }
    }
    acc
}

/// Exact quotient by `x_i - x_j` via synthetic division in `x_i`.
fn div_linear(p: &MPoly, i: usize, j: usize) -> Result<MPoly> {
    let mut by_deg: BTreeMap<u32, MPoly> = BTreeMap::new();
    for (e, c) in p {
        let mut rest = e.clone();
        let d = rest[i];
        rest[i] = 0;
        mpoly_add_term(by_deg.entry(d).or_default(), rest, c.clone());
    }
    let top = match by_deg.keys().next_back() {
        Some(&d) => d,
        None => return Ok(MPoly::new()),
    };
    let mut out = MPoly::new();
    let mut q = MPoly::new();
    let mut d = top;
    while d > 0 {
        let mut next = by_deg.remove(&d).unwrap_or_default();
        for (e, c) in q.iter() {
            let mut e2 = e.clone();
            e2[j] += 1;
            mpoly_add_term(&mut next, e2, c.clone());
        }
        q = next;
        for (e, c) in q.iter() {
            let mut e2 = e.clone();
            e2[i] = d - 1;
            mpoly_add_term(&mut out, e2, c.clone());
        }
        d -= 1;
    }
    let mut rem = by_deg.remove(&0).unwrap_or_default();
    for (e, c) in q.iter() {
        let mut e2 = e.clone();
        e2[j] += 1;
        mpoly_add_term(&mut rem, e2, c.clone());
    }
    if !rem.is_empty() {
        return Err(Error::argument("division by a linear factor leaves a remainder"));
    }
    Ok(out)
}

/// Schur polynomial as the ratio `det(x_j^{lambda_i + m - i}) / det(x_j^{m - i})`.
pub fn schur_polynomial(lambda: &[usize], m: usize) -> Result<MPoly> {
    validate_partition(lambda, m)?;
    let exps: Vec<u32> = (0..m).map(|i| (lambda.get(i).copied().unwrap_or(0) + m - 1 - i) as u32).collect();
    let mut p = alternant(&exps);
    for i in 0..m {
        for j in i + 1..m {
            p = div_linear(&p, i, j)?;
        }
    }
    Ok(p)
}

/// Schur polynomial as a sum over semistandard tableaux with entries `< m`.
pub fn schur_tableaux(lambda: &[usize], m: usize) -> Result<MPoly> {
    validate_partition(lambda, m)?;
    let shape: Vec<usize> = lambda.iter().copied().filter(|&p| p > 0).collect();
    let cells: Vec<(usize, usize)> =
        shape.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut out = MPoly::new();
    fn fill(
        idx: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        m: usize,
        out: &mut MPoly,
    ) {
        if idx == cells.len() {
            let mut e = vec![0u32; m];
            for row in grid.iter() {
                for &v in row {
                    e[v] += 1;
                }
            }
            mpoly_add_term(out, e, BigInt::one());
            return;
        }
        let (r, c) = cells[idx];
        let lo_row = if c > 0 { grid[r][c - 1] } else { 0 };
        let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 0 };
        for v in lo_row.max(lo_col)..m {
            grid[r][c] = v;
            fill(idx + 1, cells, grid, m, out);
        }
    }
    fill(0, &cells, &mut grid, m, &mut out);
    Ok(out)
}

/// Partitions obtained by adding a horizontal strip of `m` boxes to
/// `lambda`; with `rank_cap = Some(N)` results with `N` or more rows are
/// excluded.
pub fn pieri_multiply(lambda: &[usize], m: usize, rank_cap: Option<usize>) -> Vec<Partition> {
    let base: Vec<usize> = lambda.iter().copied().filter(|&p| p > 0).collect();
    let rows = base.len() + 1;
    let mut out = Vec::new();
    let mut cur = vec![0usize; rows];
    fn rec(i: usize, left: usize, base: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == cur.len() {
            if left == 0 {
                out.push(cur.iter().copied().filter(|&p| p > 0).collect());
            }
            return;
        }
        let lo = base.get(i).copied().unwrap_or(0);
        let hi = if i == 0 { lo + left } else { base[i - 1].min(lo + left) };
        for v in (lo..=hi).rev() {
            cur[i] = v;
            rec(i + 1, left - (v - lo), base, cur, out);
        }
    }
    rec(0, m, &base, &mut cur, &mut out);
    if let Some(n) = rank_cap {
        out.retain(|p| p.len() < n);
    }
    out
}

/// Multiplicities in `H_{m_1} H_{m_2} ...` expanded by repeated Pieri steps.
pub fn pieri_expand(factors: &[usize], rank_cap: Option<usize>) -> BTreeMap<Partition, u64> {
    let mut acc: BTreeMap<Partition, u64> = BTreeMap::new();
    acc.insert(Vec::new(), 1);
    for &m in factors {
        let mut next = BTreeMap::new();
        for (lam, mult) in acc.iter() {
            for mu in pieri_multiply(lam, m, rank_cap) {
                *next.entry(mu).or_insert(0) += mult;
            }
        }
        acc = next;
    }
    acc
}
