//! Genus-zero torus localization on CP^2 and the Kontsevich recursion.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial, rat, rint, rpow, BigRat};

/// Equivariant weights `alpha_0, alpha_1, alpha_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivWeights([BigRat; 3]);

impl EquivWeights {
    pub fn new(a0: BigRat, a1: BigRat, a2: BigRat) -> Result<Self> {
        if a0 == a1 || a0 == a2 || a1 == a2 {
            return Err(Error::argument("equivariant weights must be pairwise distinct"));
        }
        Ok(EquivWeights([a0, a1, a2]))
    }

    pub fn from_ints(a: [i64; 3]) -> Result<Self> {
        Self::new(rint(a[0]), rint(a[1]), rint(a[2]))
    }

    pub fn get(&self, k: usize) -> &BigRat {
        &self.0[k]
    }

    pub fn as_array(&self) -> &[BigRat; 3] {
        &self.0
    }
}

/// Lift of the point class `h^2` used at one insertion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Insertion {
    /// `h^2`, restricting to `alpha_i^2` at `q_i`.
    Standard,
    /// `(h - alpha_a)(h - alpha_b)`.
    Shifted(usize, usize),
}

impl Insertion {
    pub fn value(&self, alpha: &EquivWeights, k: usize) -> BigRat {
        let a = alpha.get(k);
        match *self {
            Insertion::Standard => a * a,
            Insertion::Shifted(i, j) => (a - alpha.get(i)) * (a - alpha.get(j)),
        }
    }
}

/// Choice of lifts for all insertions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Linearization {
    Uniform(Insertion),
    PerMark(Vec<Insertion>),
}

impl Linearization {
    pub fn standard() -> Self {
        Linearization::Uniform(Insertion::Standard)
    }

    /// `(h - alpha_1)(h - alpha_2)` at every insertion.
    pub fn shifted() -> Self {
        Linearization::Uniform(Insertion::Shifted(1, 2))
    }

    fn at(&self, mark: usize) -> Insertion {
        match self {
            Linearization::Uniform(i) => *i,
            Linearization::PerMark(v) => v[mark],
        }
    }
}

/// Unlabeled tree with edge degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphShape {
    pub vertices: usize,
    pub edges: Vec<(usize, usize, u32)>,
}

impl GraphShape {
    pub fn degree(&self) -> u32 {
        self.edges.iter().map(|e| e.2).sum()
    }

    fn adjacency(&self) -> Vec<Vec<(usize, u32)>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for &(u, v, d) in &self.edges {
            adj[u].push((v, d));
            adj[v].push((u, d));
        }
        adj
    }

    fn edge_set(&self) -> BTreeSet<(usize, usize, u32)> {
        self.edges.iter().map(|&(u, v, d)| (u.min(v), u.max(v), d)).collect()
    }

    /// Vertex permutations preserving edges and degrees.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let es = self.edge_set();
        all_perms(self.vertices)
            .into_iter()
            .filter(|p| {
                self.edges.iter().all(|&(u, v, d)| es.contains(&(p[u].min(p[v]), p[u].max(p[v]), d)))
            })
            .collect()
    }

    fn labelings(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = vec![0usize; self.vertices];
        fn rec(i: usize, shape: &GraphShape, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if i == cur.len() {
                if shape.edges.iter().all(|&(u, v, _)| cur[u] != cur[v]) {
                    out.push(cur.clone());
                }
                return;
            }
            for k in 0..3 {
                cur[i] = k;
                rec(i + 1, shape, cur, out);
            }
        }
        rec(0, self, &mut cur, &mut out);
        out
    }
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for i in 0..=n {
        for mut rest in compositions(n - i, k - 1) {
            rest.insert(0, i);
            out.push(rest);
        }
    }
    out
}

/// Labeled trees on `v` vertices from Pruefer sequences.
fn labeled_trees(v: usize) -> Vec<Vec<(usize, usize)>> {
    if v == 1 {
        return vec![Vec::new()];
    }
    if v == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut out = Vec::new();
    let total = v.pow((v - 2) as u32);
    for code in 0..total {
        let mut seq = Vec::with_capacity(v - 2);
        let mut c = code;
        for _ in 0..v - 2 {
            seq.push(c % v);
            c /= v;
        }
        let mut deg = vec![1usize; v];
        for &x in &seq {
            deg[x] += 1;
        }
        let mut edges = Vec::new();
        for &x in &seq {
            let leaf = (0..v).find(|&i| deg[i] == 1).expect("leaf exists");
            edges.push((leaf, x));
            deg[leaf] -= 1;
            deg[x] -= 1;
        }
        let rest: Vec<usize> = (0..v).filter(|&i| deg[i] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(edges);
    }
    out
}

fn shape_key(edges: &[(usize, usize, u32)], p: &[usize]) -> Vec<(usize, usize, u32)> {
    let mut k: Vec<_> = edges.iter().map(|&(a, b, d)| (p[a].min(p[b]), p[a].max(p[b]), d)).collect();
    k.sort();
    k
}

/// Re-orders the vertices of a path along the path.
fn path_order(shape: &GraphShape) -> Option<GraphShape> {
    let adj = shape.adjacency();
    if adj.iter().any(|a| a.len() > 2) {
        return None;
    }
    let ends: Vec<usize> = (0..shape.vertices).filter(|&i| adj[i].len() <= 1).collect();
    let mut best: Option<GraphShape> = None;
    for &start in &ends {
        let mut order = vec![start];
        let mut degs = Vec::new();
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&(nx, d)) = adj[cur].iter().find(|(x, _)| *x != prev) {
            order.push(nx);
            degs.push(d);
            prev = cur;
            cur = nx;
        }
        let edges: Vec<_> = degs.iter().enumerate().map(|(i, &d)| (i, i + 1, d)).collect();
        let cand = GraphShape { vertices: shape.vertices, edges };
        let better = match &best {
            None => true,
            Some(b) => cand.edges.iter().map(|e| e.2).collect::<Vec<_>>() > b.edges.iter().map(|e| e.2).collect::<Vec<_>>(),
        };
        if better {
            best = Some(cand);
        }
    }
    best
}

/// All trees with edge degrees summing to `d`, up to isomorphism; ordered by
/// vertex count. Paths are listed with vertices in path order.
pub fn graph_shapes(d: u32) -> Vec<GraphShape> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for v in 2..=(d as usize + 1) {
        let e = v - 1;
        for tree in labeled_trees(v) {
            for comp in compositions(d as usize - e, e) {
                let edges: Vec<_> = tree.iter().zip(&comp).map(|(&(a, b), &x)| (a, b, x as u32 + 1)).collect();
                let key = all_perms(v).iter().map(|p| shape_key(&edges, p)).min().expect("nonempty");
                if seen.insert((v, key)) {
                    let shape = GraphShape { vertices: v, edges };
                    out.push(path_order(&shape).unwrap_or(shape));
                }
            }
        }
    }
    out
}

/// A torus-fixed locus: a labeled tree with marked points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedGraph {
    pub labels: Vec<usize>,
    pub edges: Vec<(usize, usize, u32)>,
    /// Vertex carrying each marked point.
    pub marks: Vec<usize>,
    /// Automorphisms fixing labels, degrees and every marked point.
    pub aut: u64,
    /// Index into [`graph_shapes`].
    pub shape: usize,
}

impl FixedGraph {
    pub fn degree(&self) -> u32 {
        self.edges.iter().map(|e| e.2).sum()
    }

    pub fn mark_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.labels.len()];
        for &m in &self.marks {
            c[m] += 1;
        }
        c
    }
}

type GraphKey = (Vec<usize>, Vec<(usize, usize, u32)>, Vec<usize>);

fn graph_key(shape: &GraphShape, labels: &[usize], marks: &[usize], p: &[usize]) -> GraphKey {
    let mut l = vec![0; labels.len()];
    for (i, &x) in labels.iter().enumerate() {
        l[p[i]] = x;
    }
    (l, shape_key(&shape.edges, p), marks.iter().map(|&m| p[m]).collect())
}

/// Every fixed-locus graph of degree `d` with `n` distinguishable marks,
/// one representative per isomorphism class.
pub fn enumerate_graphs(d: u32, n: usize) -> Result<Vec<FixedGraph>> {
    if d < 1 {
        return Err(Error::argument("degree must be at least 1"));
    }
    let mut out = Vec::new();
    for (si, shape) in graph_shapes(d).iter().enumerate() {
        let v = shape.vertices;
        let perms = all_perms(v);
        let auts = shape.automorphisms();
        let id: Vec<usize> = (0..v).collect();
        let mut seen = BTreeSet::new();
        for labels in shape.labelings() {
            for code in 0..v.pow(n as u32) {
                let mut marks = Vec::with_capacity(n);
                let mut c = code;
                for _ in 0..n {
                    marks.push(c % v);
                    c /= v;
                }
                let key = perms.iter().map(|p| graph_key(shape, &labels, &marks, p)).min().expect("nonempty");
                if !seen.insert(key) {
                    continue;
                }
                let own = graph_key(shape, &labels, &marks, &id);
                let aut = auts.iter().filter(|p| graph_key(shape, &labels, &marks, p) == own).count() as u64;
                out.push(FixedGraph { labels: labels.clone(), edges: shape.edges.clone(), marks, aut, shape: si });
            }
        }
    }
    Ok(out)
}

/// `int over M_{0,m} of prod (w_i - psi_i)^{-1} = prod w_i^{-1} (sum w_i^{-1})^{m-3}`.
pub fn psi_vertex_integral(weights: &[BigRat], m: usize) -> Result<BigRat> {
    if m < 3 {
        return Err(Error::domain(format!("psi integral needs at least 3 special points, got {m}")));
    }
    if weights.iter().any(|w| w.is_zero()) {
        return Err(Error::singular("zero flag weight in a psi integral"));
    }
    let mut prod = BigRat::one();
    let mut sum = BigRat::zero();
    for w in weights {
        let r = w.recip();
        sum += &r;
        prod *= r;
    }
    Ok(prod * rpow(&sum, (m - 3) as i64))
}

/// `int over M_{0,m} of psi_1^{a_1} ... psi_k^{a_k}`: the multinomial
/// `(m-3)!/prod a_i!` when `sum a_i = m - 3`, else zero.
pub fn psi_monomial_integral(exps: &[u32], m: usize) -> Result<BigInt> {
    if m < 3 {
        return Err(Error::domain(format!("M_(0,{m}) is empty")));
    }
    if exps.len() > m {
        return Err(Error::argument("more psi classes than marked points"));
    }
    let total: u64 = exps.iter().map(|&a| a as u64).sum();
    if total != (m - 3) as u64 {
        return Ok(BigInt::zero());
    }
    let mut v = factorial(total);
    for &a in exps {
        v /= factorial(a as u64);
    }
    Ok(v)
}

struct Prepared<'a> {
    shape: &'a GraphShape,
    adj: Vec<Vec<(usize, u32)>>,
    dprod: BigInt,
}

impl<'a> Prepared<'a> {
    fn new(shape: &'a GraphShape) -> Self {
        let dprod = shape.edges.iter().fold(BigInt::one(), |a, e| a * e.2);
        Prepared { shape, adj: shape.adjacency(), dprod }
    }

    /// `e(N_Gamma)^{-1}` divided by `prod d(e)`, excluding insertions and `|Aut|`.
    fn inverse_euler(&self, labels: &[usize], counts: &[usize], alpha: &EquivWeights) -> Result<BigRat> {
        let al = alpha.as_array();
        let mut e_h0 = BigRat::one();
        for (v, nbrs) in self.adj.iter().enumerate() {
            let k = labels[v];
            for j in 0..3 {
                if j != k {
                    e_h0 *= rpow(&(&al[k] - &al[j]), 1 - nbrs.len() as i64);
                }
            }
        }
        for &(u, v, d) in &self.shape.edges {
            let (a0, a1) = (&al[labels[u]], &al[labels[v]]);
            let df = BigRat::from_integer(factorial(d as u64));
            let sign = if d % 2 == 0 { 1 } else { -1 };
            let mut t = rint(sign) * &df * &df / rpow(&rint(d as i64), 2 * d as i64) * rpow(&(a0 - a1), 2 * d as i64);
            for a in 0..=d {
                let b = d - a;
                for j in 0..3 {
                    if j != labels[u] && j != labels[v] {
                        let f = rat(a as i64, d as i64) * a0 + rat(b as i64, d as i64) * a1 - &al[j];
                        if f.is_zero() {
                            return Err(Error::singular(format!(
                                "edge factor {a}/{d} a{} + {b}/{d} a{} - a{j} vanishes",
                                labels[u], labels[v]
                            )));
                        }
                        t *= f;
                    }
                }
            }
            e_h0 *= t;
        }
        let mut inv = e_h0.recip();
        for (v, nbrs) in self.adj.iter().enumerate() {
            let ws: Vec<BigRat> =
                nbrs.iter().map(|&(w, d)| (&al[labels[v]] - &al[labels[w]]) / rint(d as i64)).collect();
            let (val, n) = (nbrs.len(), counts[v]);
            if val == 1 && n == 0 {
                inv *= &ws[0];
            } else if val == 2 && n == 0 {
                let s = &ws[0] + &ws[1];
                if s.is_zero() {
                    return Err(Error::singular(format!("node-smoothing weight vanishes at vertex {v}")));
                }
                inv /= s;
            } else if val + n >= 3 {
                inv *= psi_vertex_integral(&ws, val + n)?;
            }
        }
        Ok(inv / BigRat::from_integer(self.dprod.clone()))
    }
}

/// `e(N_Gamma)^{-1}` for one fixed graph, without insertions or automorphism factors.
pub fn inverse_euler_class(g: &FixedGraph, alpha: &EquivWeights) -> Result<BigRat> {
    let shape = GraphShape { vertices: g.labels.len(), edges: g.edges.clone() };
    let prep = Prepared::new(&shape);
    Ok(prep.inverse_euler(&g.labels, &g.mark_counts(), alpha)? * BigRat::from_integer(prep.dprod.clone()))
}

/// `(1/|A_Gamma|) (prod insertions) e(N_Gamma)^{-1}` for one fixed graph.
pub fn graph_contribution(g: &FixedGraph, alpha: &EquivWeights, lin: &Linearization) -> Result<BigRat> {
    let shape = GraphShape { vertices: g.labels.len(), edges: g.edges.clone() };
    let prep = Prepared::new(&shape);
    let mut c = prep.inverse_euler(&g.labels, &g.mark_counts(), alpha)?;
    for (i, &v) in g.marks.iter().enumerate() {
        c *= lin.at(i).value(alpha, g.labels[v]);
    }
    Ok(c / rint(g.aut as i64))
}

fn check_lin(lin: &Linearization, n: usize) -> Result<()> {
    if let Linearization::PerMark(v) = lin {
        if v.len() != n {
            return Err(Error::argument(format!("{} insertions given for {n} marked points", v.len())));
        }
    }
    Ok(())
}

/// Sum over all mark placements for one labeling of a shape, weighted by
/// `1/|Aut(shape)|`.
fn labeling_sum(prep: &Prepared<'_>, labels: &[usize], n: usize, alpha: &EquivWeights, lin: &Linearization) -> Result<BigRat> {
    let v = prep.shape.vertices;
    let mut s = BigRat::zero();
    match lin {
        Linearization::Uniform(ins) => {
            let vals: Vec<BigRat> = labels.iter().map(|&k| ins.value(alpha, k)).collect();
            for counts in compositions(n, v) {
                let mut mult = factorial(n as u64);
                for &c in &counts {
                    mult /= factorial(c as u64);
                }
                let mut term = prep.inverse_euler(labels, &counts, alpha)? * BigRat::from_integer(mult);
                for (x, &c) in vals.iter().zip(&counts) {
                    term *= rpow(x, c as i64);
                }
                s += term;
            }
        }
        Linearization::PerMark(list) => {
            let mut cache: BTreeMap<Vec<usize>, BigRat> = BTreeMap::new();
            for code in 0..v.pow(n as u32) {
                let mut counts = vec![0usize; v];
                let mut c = code;
                let mut ins = BigRat::one();
                for item in list.iter().take(n) {
                    let vert = c % v;
                    c /= v;
                    counts[vert] += 1;
                    ins *= item.value(alpha, labels[vert]);
                }
                if ins.is_zero() {
                    continue;
                }
                let e = match cache.get(&counts) {
                    Some(e) => e.clone(),
                    None => {
                        let e = prep.inverse_euler(labels, &counts, alpha)?;
                        cache.insert(counts.clone(), e.clone());
                        e
                    }
                };
                s += e * ins;
            }
        }
    }
    Ok(s)
}

/// Contribution of one labeled graph (an isomorphism class of labelings of
/// `shape`) summed over all placements of the `n` marked points.
pub fn labeled_graph_total(
    shape: &GraphShape,
    labels: &[usize],
    n: usize,
    alpha: &EquivWeights,
    lin: &Linearization,
) -> Result<BigRat> {
    check_lin(lin, n)?;
    let prep = Prepared::new(shape);
    let auts = shape.automorphisms();
    let orbit: BTreeSet<Vec<usize>> = auts.iter().map(|p| permute_labels(labels, p)).collect();
    let mut s = BigRat::zero();
    for l in &orbit {
        s += labeling_sum(&prep, l, n, alpha, lin)?;
    }
    Ok(s / rint(auts.len() as i64))
}

fn permute_labels(labels: &[usize], p: &[usize]) -> Vec<usize> {
    let mut out = vec![0; labels.len()];
    for (i, &x) in labels.iter().enumerate() {
        out[p[i]] = x;
    }
    out
}

/// Labeled graph classes of a shape, one representative (the
/// lexicographically least labeling in its orbit) each.
pub fn labeled_classes(shape: &GraphShape) -> Vec<Vec<usize>> {
    let auts = shape.automorphisms();
    let mut reps = BTreeSet::new();
    for l in shape.labelings() {
        let rep = auts.iter().map(|p| permute_labels(&l, p)).min().expect("identity");
        reps.insert(rep);
    }
    reps.into_iter().collect()
}

/// Roman-numeral shape name followed by the labels, e.g. `II(010)`.
pub fn class_name(shape_index: usize, labels: &[usize]) -> String {
    const ROMAN: [&str; 12] = ["I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII"];
    let head = ROMAN.get(shape_index).map(|s| String::from(*s)).unwrap_or_else(|| format!("S{}", shape_index + 1));
    let body: String = labels.iter().map(|&l| char::from(b'0' + l as u8)).collect();
    format!("{head}({body})")
}

/// Per-class subtotals of the degree-`d` graph sum, keyed by [`class_name`].
pub fn class_subtotals(d: u32, alpha: &EquivWeights, lin: &Linearization) -> Result<Vec<(String, BigRat)>> {
    let n = 3 * d as usize - 1;
    check_lin(lin, n)?;
    let mut out = Vec::new();
    for (si, shape) in graph_shapes(d).iter().enumerate() {
        for labels in labeled_classes(shape) {
            out.push((class_name(si, &labels), labeled_graph_total(shape, &labels, n, alpha, lin)?));
        }
    }
    Ok(out)
}

/// Number of degree-`d` rational curves through `3d - 1` general points of
/// CP^2 as the localization graph sum.
pub fn gw_invariant_cp2(d: u32, alpha: &EquivWeights, lin: &Linearization) -> Result<BigRat> {
    if d < 1 {
        return Err(Error::argument("degree must be at least 1"));
    }
    let n = 3 * d as usize - 1;
    check_lin(lin, n)?;
    let mut total = BigRat::zero();
    for shape in graph_shapes(d) {
        let prep = Prepared::new(&shape);
        let aut = shape.automorphisms().len() as i64;
        let mut s = BigRat::zero();
        for labels in shape.labelings() {
            s += labeling_sum(&prep, &labels, n, alpha, lin)?;
        }
        total += s / rint(aut);
    }
    Ok(total)
}

/// `N_d` from the WDVV recursion,
/// `N_d = sum N_a N_b (a^2 b^2 C(3d-4, 3a-2) - a^3 b C(3d-4, 3a-1))`.
pub fn kontsevich_recursion(d: u32) -> Result<BigInt> {
    if d < 1 {
        return Err(Error::argument("degree must be at least 1"));
    }
    let mut n: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    for dd in 2..=d as i64 {
        let mut s = BigInt::zero();
        for a in 1..dd {
            let b = dd - a;
            let t = BigInt::from(a * a * b * b) * binomial(3 * dd - 4, 3 * a - 2)
                - BigInt::from(a * a * a * b) * binomial(3 * dd - 4, 3 * a - 1);
            s += &n[a as usize] * &n[b as usize] * t;
        }
        n.push(s);
    }
    Ok(n[d as usize].clone())
}
