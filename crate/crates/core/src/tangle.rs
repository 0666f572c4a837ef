//! Framed oriented link diagrams in Morse position, evaluated as
//! compositions of elementary morphisms: the fundamental representation
//! of `U_q(sl_N)` over Laurent polynomials in `u = q^{1/N}`, and the
//! `U(1)_{2m+1}` color-and-multiply rule.
//!
//! Diagram text has one slice per line (or `/`-separated), read bottom
//! to top. Tokens are `id@i`, `cup@i`, `cupx@i`, `cap@i`, `capx@i`,
//! `x@i`, `xi@i`, `t@i`, `ti@i`, where `i` is the leftmost strand
//! below the slice that the generator touches (for cups: the strand
//! in front of which the new pair is inserted). `#` starts a comment.
//! An optional first line `in: U D ...` declares incoming strands.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{q_integer_in, ApComplex, BigRat, LaurentPoly, Precision};

/// Strand orientation relative to the upward reading direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orient {
    Up,
    Down,
}

impl Orient {
    fn letter(self) -> char {
        match self {
            Orient::Up => 'U',
            Orient::Down => 'D',
        }
    }
}

/// Elementary pieces of a diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    Id,
    Cup,
    CupStar,
    Cap,
    CapStar,
    CrossPos,
    CrossNeg,
    TwistPos,
    TwistNeg,
}

impl GenKind {
    pub fn token(self) -> &'static str {
        match self {
            GenKind::Id => "id",
            GenKind::Cup => "cup",
            GenKind::CupStar => "cupx",
            GenKind::Cap => "cap",
            GenKind::CapStar => "capx",
            GenKind::CrossPos => "x",
            GenKind::CrossNeg => "xi",
            GenKind::TwistPos => "t",
            GenKind::TwistNeg => "ti",
        }
    }

    fn from_token(s: &str) -> Option<Self> {
        Some(match s {
            "id" => GenKind::Id,
            "cup" => GenKind::Cup,
            "cupx" => GenKind::CupStar,
            "cap" => GenKind::Cap,
            "capx" => GenKind::CapStar,
            "x" => GenKind::CrossPos,
            "xi" => GenKind::CrossNeg,
            "t" => GenKind::TwistPos,
            "ti" => GenKind::TwistNeg,
            _ => return None,
        })
    }

    /// Number of strands consumed from below.
    pub fn arity_in(self) -> usize {
        match self {
            GenKind::Cup | GenKind::CupStar => 0,
            GenKind::Id | GenKind::TwistPos | GenKind::TwistNeg => 1,
            GenKind::Cap | GenKind::CapStar | GenKind::CrossPos | GenKind::CrossNeg => 2,
        }
    }

    pub fn arity_out(self) -> usize {
        match self {
            GenKind::Cap | GenKind::CapStar => 0,
            GenKind::Id | GenKind::TwistPos | GenKind::TwistNeg => 1,
            GenKind::Cup | GenKind::CupStar | GenKind::CrossPos | GenKind::CrossNeg => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub kind: GenKind,
    pub position: usize,
}

impl Generator {
    pub fn new(kind: GenKind, position: usize) -> Self {
        Generator { kind, position }
    }
}

/// A generator resolved against the strands present below it; `at` is
/// an absolute index into the current strand list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    /// Emits `(Up, Down)` for a plain cup and `(Down, Up)` for a dual cup.
    Cup { at: usize, dual: bool },
    /// Consumes an opposite pair; `(Up, Down)` pairs use the weighted pairing.
    Cap { at: usize, weighted: bool },
    Cross { at: usize, positive: bool, orient: (Orient, Orient) },
    Twist { at: usize, positive: bool },
}

/// A crossing between the components of its two strands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingRecord {
    pub slice: usize,
    pub components: (usize, usize),
    pub sign: i32,
}

/// A validated diagram.
#[derive(Clone, Debug)]
pub struct TangleDiagram {
    inputs: Vec<Orient>,
    slices: Vec<Vec<Generator>>,
    ops: Vec<(usize, Op)>,
    levels: Vec<Vec<Orient>>,
    component_count: usize,
    crossings: Vec<CrossingRecord>,
    twists: Vec<(usize, i32)>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn add(&mut self) -> usize {
        self.0.push(self.0.len());
        self.0.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

impl TangleDiagram {
    /// Validates `slices` (bottom to top) on top of `inputs`.
    pub fn from_slices(inputs: Vec<Orient>, slices: Vec<Vec<Generator>>) -> Result<Self> {
        Self::build(inputs, slices, None)
    }

    fn build(inputs: Vec<Orient>, slices: Vec<Vec<Generator>>, lines: Option<&[(usize, Vec<usize>)]>) -> Result<Self> {
        let locate = |s: usize, g: usize| -> (usize, usize) {
            match lines {
                Some(l) => (l[s].0, l[s].1.get(g).copied().unwrap_or(1)),
                None => (s + 1, 1),
            }
        };
        let err = |s: usize, g: usize, message: String| -> Error {
            let (line, column) = locate(s, g);
            Error::Parse { line, column, message }
        };
        let mut uf = UnionFind(Vec::new());
        let mut strands: Vec<(Orient, usize)> = inputs.iter().map(|&o| (o, uf.add())).collect();
        let mut levels = alloc::vec![inputs.clone()];
        let mut ops = Vec::new();
        let mut raw_crossings: Vec<(usize, usize, usize, i32)> = Vec::new();
        let mut raw_twists: Vec<(usize, i32)> = Vec::new();
        for (si, slice) in slices.iter().enumerate() {
            let width = strands.len();
            let consumed: usize = slice.iter().map(|g| g.kind.arity_in()).sum();
            if consumed > width {
                let g = slice.len().saturating_sub(1);
                return Err(err(
                    si,
                    g,
                    alloc::format!("strand count mismatch: slice needs {consumed} strands but {width} are present"),
                ));
            }
            let mut used = alloc::vec![false; width];
            for (gi, g) in slice.iter().enumerate() {
                let a = g.kind.arity_in();
                let end = g.position + a;
                if (a == 0 && g.position > width) || (a > 0 && end > width) {
                    return Err(err(
                        si,
                        gi,
                        alloc::format!(
                            "strand count mismatch: {}@{} needs strands up to {} but {width} are present",
                            g.kind.token(),
                            g.position,
                            end.max(g.position + 1) - 1
                        ),
                    ));
                }
                for u in used.iter_mut().take(end).skip(g.position) {
                    if *u {
                        return Err(err(si, gi, alloc::format!("{}@{} overlaps another generator", g.kind.token(), g.position)));
                    }
                    *u = true;
                }
            }
            // Apply right to left so positions below the slice stay valid.
            let mut order: Vec<usize> = (0..slice.len()).collect();
            order.sort_by(|&a, &b| slice[b].position.cmp(&slice[a].position).then(b.cmp(&a)));
            for gi in order {
                let g = slice[gi];
                let at = g.position;
                match g.kind {
                    GenKind::Id => {}
                    GenKind::Cup | GenKind::CupStar => {
                        let c = uf.add();
                        let dual = g.kind == GenKind::CupStar;
                        let pair = if dual { [Orient::Down, Orient::Up] } else { [Orient::Up, Orient::Down] };
                        strands.insert(at, (pair[1], c));
                        strands.insert(at, (pair[0], c));
                        ops.push((si, Op::Cup { at, dual }));
                    }
                    GenKind::Cap | GenKind::CapStar => {
                        let (oa, ca) = strands[at];
                        let (ob, cb) = strands[at + 1];
                        if oa == ob {
                            return Err(err(si, gi, alloc::format!("cap@{at} joins two strands with the same orientation")));
                        }
                        uf.union(ca, cb);
                        strands.drain(at..at + 2);
                        ops.push((si, Op::Cap { at, weighted: oa == Orient::Up }));
                    }
                    GenKind::CrossPos | GenKind::CrossNeg => {
                        let (oa, ca) = strands[at];
                        let (ob, cb) = strands[at + 1];
                        let positive = g.kind == GenKind::CrossPos;
                        let co = oa == ob;
                        let sign = if positive == co { 1 } else { -1 };
                        raw_crossings.push((si, ca, cb, sign));
                        strands.swap(at, at + 1);
                        ops.push((si, Op::Cross { at, positive, orient: (oa, ob) }));
                    }
                    GenKind::TwistPos | GenKind::TwistNeg => {
                        let positive = g.kind == GenKind::TwistPos;
                        raw_twists.push((strands[at].1, if positive { 1 } else { -1 }));
                        ops.push((si, Op::Twist { at, positive }));
                    }
                }
            }
            levels.push(strands.iter().map(|s| s.0).collect());
        }
        // Components are numbered by their first appearance.
        let mut index: BTreeMap<usize, usize> = BTreeMap::new();
        for i in 0..uf.0.len() {
            let r = uf.find(i);
            let next = index.len();
            index.entry(r).or_insert(next);
        }
        let mut comp = |x: usize| -> usize { index[&uf.find(x)] };
        let crossings = raw_crossings
            .into_iter()
            .map(|(slice, a, b, sign)| CrossingRecord { slice, components: (comp(a), comp(b)), sign })
            .collect();
        let twists = raw_twists.into_iter().map(|(c, s)| (comp(c), s)).collect();
        let component_count = index.len();
        Ok(TangleDiagram { inputs, slices, ops, levels, component_count, crossings, twists })
    }

    pub fn inputs(&self) -> &[Orient] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[Orient] {
        self.levels.last().expect("levels start with the inputs")
    }

    pub fn slices(&self) -> &[Vec<Generator>] {
        &self.slices
    }

    pub fn ops(&self) -> impl Iterator<Item = &Op> {
        self.ops.iter().map(|(_, op)| op)
    }

    /// Orientations after each slice, starting with the inputs.
    pub fn levels(&self) -> &[Vec<Orient>] {
        &self.levels
    }

    pub fn is_closed(&self) -> bool {
        self.inputs.is_empty() && self.outputs().is_empty()
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn crossings(&self) -> &[CrossingRecord] {
        &self.crossings
    }

    pub fn twists(&self) -> &[(usize, i32)] {
        &self.twists
    }

    /// Total writhe: signed crossings plus twists.
    pub fn total_framing(&self) -> i64 {
        let c: i64 = self.crossings.iter().map(|c| c.sign as i64).sum();
        let t: i64 = self.twists.iter().map(|t| t.1 as i64).sum();
        c + t
    }

    /// Diagram text that parses back to the same slices.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.inputs.is_empty() {
            out.push_str("in:");
            for o in &self.inputs {
                out.push(' ');
                out.push(o.letter());
            }
            out.push('\n');
        }
        for s in &self.slices {
            let toks: Vec<String> = s.iter().map(|g| alloc::format!("{}@{}", g.kind.token(), g.position)).collect();
            out.push_str(&toks.join(" "));
            out.push('\n');
        }
        out
    }

    /// Stacks `other` on top of `self`.
    pub fn compose(&self, other: &TangleDiagram) -> Result<TangleDiagram> {
        if self.outputs() != other.inputs() {
            return Err(Error::argument("boundary orientations do not match"));
        }
        let mut slices = self.slices.clone();
        slices.extend(other.slices.iter().cloned());
        Self::from_slices(self.inputs.clone(), slices)
    }

    /// Disjoint union of two closed diagrams, drawn one above the other.
    pub fn disjoint_union(&self, other: &TangleDiagram) -> Result<TangleDiagram> {
        if !self.is_closed() || !other.is_closed() {
            return Err(Error::argument("disjoint union is defined for closed diagrams"));
        }
        let mut slices = self.slices.clone();
        slices.extend(other.slices.iter().cloned());
        Self::from_slices(Vec::new(), slices)
    }
}

/// Parses diagram text.
pub fn parse_diagram(text: &str) -> Result<TangleDiagram> {
    let mut inputs = Vec::new();
    let mut slices: Vec<Vec<Generator>> = Vec::new();
    let mut where_: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut seen_slice = false;
    for (li, raw) in text.lines().enumerate() {
        let line = li + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("in:") {
            if seen_slice || !inputs.is_empty() {
                let column = body.find("in:").map_or(1, |c| raw[..c].chars().count() + 1);
                return Err(Error::Parse { line, column, message: "input declaration must come first".into() });
            }
            let base = body.find("in:").unwrap_or(0) + 3;
            for (off, tok) in token_spans(rest) {
                let column = raw[..base + off].chars().count() + 1;
                inputs.push(match tok {
                    "U" | "u" => Orient::Up,
                    "D" | "d" => Orient::Down,
                    _ => return Err(Error::Parse { line, column, message: alloc::format!("unknown orientation `{tok}`") }),
                });
            }
            continue;
        }
        let mut offset = 0usize;
        for part in body.split('/') {
            let mut gens = Vec::new();
            let mut cols = Vec::new();
            for (off, tok) in token_spans(part) {
                let column = raw[..offset + off].chars().count() + 1;
                gens.push(parse_token(tok).map_err(|message| Error::Parse { line, column, message })?);
                cols.push(column);
            }
            offset += part.len() + 1;
            if !gens.is_empty() {
                slices.push(gens);
                where_.push((line, cols));
                seen_slice = true;
            }
        }
    }
    TangleDiagram::build(inputs, slices, Some(&where_))
}

fn token_spans(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.split_whitespace().map(move |t| (t.as_ptr() as usize - s.as_ptr() as usize, t))
}

fn parse_token(tok: &str) -> core::result::Result<Generator, String> {
    let (name, pos) = tok.split_once('@').ok_or_else(|| alloc::format!("expected `name@index`, found `{tok}`"))?;
    let kind = GenKind::from_token(name).ok_or_else(|| alloc::format!("unknown token `{name}`"))?;
    let position = pos.parse::<usize>().map_err(|_| alloc::format!("bad strand index `{pos}`"))?;
    Ok(Generator { kind, position })
}

/// Linking matrix of a closed diagram: writhes on the diagonal, linking
/// numbers off it.
pub fn linking_matrix(d: &TangleDiagram) -> Result<Vec<Vec<i64>>> {
    if !d.is_closed() {
        return Err(Error::domain("linking matrix needs a closed diagram"));
    }
    let c = d.component_count();
    let mut twice = alloc::vec![alloc::vec![0i64; c]; c];
    for x in d.crossings() {
        let (a, b) = x.components;
        if a == b {
            twice[a][a] += 2 * x.sign as i64;
        } else {
            twice[a][b] += x.sign as i64;
            twice[b][a] += x.sign as i64;
        }
    }
    for &(a, s) in d.twists() {
        twice[a][a] += 2 * s as i64;
    }
    let mut out = alloc::vec![alloc::vec![0i64; c]; c];
    for i in 0..c {
        for j in 0..c {
            if twice[i][j] % 2 != 0 {
                return Err(Error::domain("odd crossing count between two components"));
            }
            out[i][j] = twice[i][j] / 2;
        }
    }
    Ok(out)
}

/// Sparse vector over basis tensors `v_{i_1} (x) ... (x) v_{i_n}` (dual
/// basis vectors on downward strands), indices `0..N`.
pub type State = BTreeMap<Vec<u8>, LaurentPoly>;

/// Sparse operator: input basis tensor to output state.
pub type Operator = BTreeMap<Vec<u8>, State>;

fn upow(e: i64) -> LaurentPoly {
    LaurentPoly::power('u', e)
}

fn add_to(state: &mut State, key: Vec<u8>, c: LaurentPoly) {
    if c.is_zero() {
        return;
    }
    match state.get_mut(&key) {
        Some(v) => {
            v.add_assign_ref(&c);
            if v.is_zero() {
                state.remove(&key);
            }
        }
        None => {
            state.insert(key, c);
        }
    }
}

/// Evaluation engine for the fundamental representation of `U_q(sl_N)`.
#[derive(Clone, Debug)]
pub struct SlnEngine {
    n: u32,
    qmq: LaurentPoly,
}

impl SlnEngine {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::argument("need N >= 2"));
        }
        let ni = n as i64;
        Ok(SlnEngine { n, qmq: &upow(ni) - &upow(-ni) })
    }

    pub fn rank(&self) -> u32 {
        self.n
    }

    /// Exponent of `u` in `q^{N+1-2k}` for the 0-based index `k0 = k-1`.
    fn rho_exp(&self, k0: u8) -> i64 {
        let n = self.n as i64;
        n * (n - 1 - 2 * k0 as i64)
    }

    pub fn cup(&self, s: &State, at: usize, dual: bool) -> State {
        let mut out = State::new();
        for (key, c) in s {
            for k in 0..self.n as u8 {
                let mut nk = Vec::with_capacity(key.len() + 2);
                nk.extend_from_slice(&key[..at]);
                nk.push(k);
                nk.push(k);
                nk.extend_from_slice(&key[at..]);
                let w = if dual { c * &upow(-self.rho_exp(k)) } else { c.clone() };
                add_to(&mut out, nk, w);
            }
        }
        out
    }

    pub fn cap(&self, s: &State, at: usize, weighted: bool) -> State {
        let mut out = State::new();
        for (key, c) in s {
            if key[at] != key[at + 1] {
                continue;
            }
            let mut nk = key.clone();
            nk.drain(at..at + 2);
            let w = if weighted { c * &upow(self.rho_exp(key[at])) } else { c.clone() };
            add_to(&mut out, nk, w);
        }
        out
    }

    pub fn twist(&self, s: &State, positive: bool) -> State {
        let n = self.n as i64;
        let f = upow(if positive { n * n - 1 } else { 1 - n * n });
        s.iter().map(|(k, c)| (k.clone(), c * &f)).collect()
    }

    /// The braiding on two upward strands, or its inverse.
    pub fn braid(&self, s: &State, at: usize, positive: bool) -> State {
        let n = self.n as i64;
        let mut out = State::new();
        for (key, c) in s {
            let (i, j) = (key[at], key[at + 1]);
            let mut sw = key.clone();
            sw.swap(at, at + 1);
            if positive {
                if i == j {
                    add_to(&mut out, key.clone(), c * &upow(n - 1));
                } else if i < j {
                    add_to(&mut out, sw, c * &upow(-1));
                } else {
                    let cu = c * &upow(-1);
                    add_to(&mut out, sw, cu.clone());
                    add_to(&mut out, key.clone(), &cu * &self.qmq);
                }
            } else if i == j {
                add_to(&mut out, key.clone(), c * &upow(1 - n));
            } else if i > j {
                add_to(&mut out, sw, c * &upow(1));
            } else {
                let cu = c * &upow(1);
                add_to(&mut out, sw, cu.clone());
                add_to(&mut out, key.clone(), -(&cu * &self.qmq));
            }
        }
        out
    }

    /// Crossing between strands of any orientation, built from the
    /// upward braiding and the duality morphisms.
    pub fn cross(&self, s: &State, at: usize, positive: bool, orient: (Orient, Orient)) -> State {
        use Orient::*;
        match orient {
            (Up, Up) => self.braid(s, at, positive),
            (Up, Down) => {
                let t = self.cup(s, at, true);
                let t = self.braid(&t, at + 1, !positive);
                self.cap(&t, at + 2, true)
            }
            (Down, Up) => {
                let t = self.cup(s, at + 2, false);
                let t = self.braid(&t, at + 1, !positive);
                self.cap(&t, at, false)
            }
            (Down, Down) => {
                let t = self.cup(s, at + 2, false);
                let t = self.cup(&t, at + 3, false);
                let t = self.braid(&t, at + 2, positive);
                let t = self.cap(&t, at + 1, false);
                self.cap(&t, at, false)
            }
        }
    }

    pub fn apply(&self, s: &State, op: &Op) -> State {
        match *op {
            Op::Cup { at, dual } => self.cup(s, at, dual),
            Op::Cap { at, weighted } => self.cap(s, at, weighted),
            Op::Cross { at, positive, orient } => self.cross(s, at, positive, orient),
            Op::Twist { positive, .. } => self.twist(s, positive),
        }
    }

    /// Pushes a basis tensor through the whole diagram.
    pub fn run(&self, d: &TangleDiagram, input: &[u8]) -> Result<State> {
        if input.len() != d.inputs().len() || input.iter().any(|&i| i as u32 >= self.n) {
            return Err(Error::argument("input tensor does not match the diagram boundary"));
        }
        let mut s = State::new();
        s.insert(input.to_vec(), LaurentPoly::one('u'));
        for op in d.ops() {
            s = self.apply(&s, op);
        }
        Ok(s)
    }

    /// The operator of an open diagram on all input basis tensors.
    pub fn operator(&self, d: &TangleDiagram) -> Result<Operator> {
        let mut out = Operator::new();
        for key in basis_tensors(self.n, d.inputs().len()) {
            let s = self.run(d, &key)?;
            out.insert(key, s);
        }
        Ok(out)
    }
}

/// All index tuples of the given length.
pub fn basis_tensors(n: u32, len: usize) -> Vec<Vec<u8>> {
    let mut out = alloc::vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * n as usize);
        for k in &out {
            for i in 0..n as u8 {
                let mut kk = k.clone();
                kk.push(i);
                next.push(kk);
            }
        }
        out = next;
    }
    out
}

/// Framed invariant `W^{sl_N}` of a closed diagram, in `u = q^{1/N}`.
pub fn evaluate_closed(d: &TangleDiagram, n: u32) -> Result<LaurentPoly> {
    if !d.is_closed() {
        return Err(Error::domain("evaluation needs a closed diagram"));
    }
    let e = SlnEngine::new(n)?;
    let s = e.run(d, &[])?;
    Ok(s.get(&Vec::new()).cloned().unwrap_or_else(|| LaurentPoly::zero('u')))
}

/// `[N]_q = (q^N - q^-N)/(q - q^-1)` written in `u`.
pub fn unknot_value(n: u32) -> LaurentPoly {
    q_integer_in('u', n as i64).substitute_power(n as i64)
}

/// `P(L) = q^{(1/N - N) sum n_ij} W(L) = u^{(1-N^2) sum n_ij} W(L)`.
pub fn thomflyp(d: &TangleDiagram, n: u32) -> Result<LaurentPoly> {
    let w = evaluate_closed(d, n)?;
    let lk = linking_matrix(d)?;
    let total: i64 = lk.iter().flatten().sum();
    let ni = n as i64;
    Ok(w.shift((1 - ni * ni) * total))
}

/// Matrices of the fundamental representation in the lexicographic
/// basis `v_i (x) v_j -> i N + j`.
#[derive(Clone, Debug)]
pub struct RepFundamental {
    pub n: u32,
    /// `R = q^{-1/N}(q sum E_ii E_ii + sum_{i != j} E_ii E_jj + (q - q^-1) sum_{i<j} E_ij E_ji)`.
    pub r: Vec<Vec<LaurentPoly>>,
    pub r_inv: Vec<Vec<LaurentPoly>>,
    /// Braiding `flip . R` and its inverse.
    pub braiding: Vec<Vec<LaurentPoly>>,
    pub braiding_inv: Vec<Vec<LaurentPoly>>,
    /// Coefficients of `coev(1) = sum v_k (x) v^k`.
    pub cup: Vec<LaurentPoly>,
    /// `ev(v^k (x) v_l) = delta_kl`.
    pub cap: Vec<LaurentPoly>,
    /// `q^{N+1-2k}` weights of the dual pairing.
    pub dual_weights: Vec<LaurentPoly>,
    pub twist: LaurentPoly,
}

fn zero_matrix(d: usize) -> Vec<Vec<LaurentPoly>> {
    alloc::vec![alloc::vec![LaurentPoly::zero('u'); d]; d]
}

/// Dense product of Laurent matrices.
pub fn laurent_matmul(a: &[Vec<LaurentPoly>], b: &[Vec<LaurentPoly>]) -> Vec<Vec<LaurentPoly>> {
    let d = a.len();
    let mut out = zero_matrix(d);
    for i in 0..d {
        for k in 0..d {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..d {
                if !b[k][j].is_zero() {
                    let p = &a[i][k] * &b[k][j];
                    out[i][j].add_assign_ref(&p);
                }
            }
        }
    }
    out
}

pub fn laurent_identity(d: usize) -> Vec<Vec<LaurentPoly>> {
    let mut m = zero_matrix(d);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = LaurentPoly::one('u');
    }
    m
}

/// The `R`-matrix data of the fundamental representation.
pub fn r_matrix_fundamental(n: u32) -> Result<RepFundamental> {
    if n < 2 {
        return Err(Error::argument("need N >= 2"));
    }
    let ni = n as i64;
    let d = (n * n) as usize;
    let idx = |i: usize, j: usize| i * n as usize + j;
    let q = upow(ni);
    let qi = upow(-ni);
    let qmq = &q - &qi;
    let pref = upow(-1);
    let mut r = zero_matrix(d);
    let mut r_inv = zero_matrix(d);
    for i in 0..n as usize {
        for j in 0..n as usize {
            // E_ii (x) E_jj is diagonal on v_i (x) v_j.
            let diag = if i == j { &q * &pref } else { pref.clone() };
            r[idx(i, j)][idx(i, j)] = diag;
            let diag_inv = if i == j { &qi * &upow(1) } else { upow(1) };
            r_inv[idx(i, j)][idx(i, j)] = diag_inv;
            if i < j {
                // E_ij (x) E_ji sends v_j (x) v_i to v_i (x) v_j.
                r[idx(i, j)][idx(j, i)] = &qmq * &pref;
                r_inv[idx(i, j)][idx(j, i)] = -(&qmq * &upow(1));
            }
        }
    }
    let mut flip = zero_matrix(d);
    for i in 0..n as usize {
        for j in 0..n as usize {
            flip[idx(j, i)][idx(i, j)] = LaurentPoly::one('u');
        }
    }
    let braiding = laurent_matmul(&flip, &r);
    let braiding_inv = laurent_matmul(&r_inv, &flip);
    let cup = (0..d).map(|k| if k % (n as usize + 1) == 0 { LaurentPoly::one('u') } else { LaurentPoly::zero('u') }).collect();
    let cap = (0..d).map(|k| if k % (n as usize + 1) == 0 { LaurentPoly::one('u') } else { LaurentPoly::zero('u') }).collect();
    let dual_weights = (1..=ni).map(|k| upow(ni * (ni + 1 - 2 * k))).collect();
    Ok(RepFundamental { n, r, r_inv, braiding, braiding_inv, cup, cap, dual_weights, twist: upow(ni * ni - 1) })
}

/// `u X - u^-1 X^-1 - (q - q^-1) id` for the braiding `X`; zero exactly.
pub fn skein_operator_residual(n: u32) -> Result<Vec<Vec<LaurentPoly>>> {
    let rep = r_matrix_fundamental(n)?;
    let d = rep.braiding.len();
    let ni = n as i64;
    let qmq = &upow(ni) - &upow(-ni);
    let mut out = zero_matrix(d);
    for i in 0..d {
        for j in 0..d {
            let mut v = &rep.braiding[i][j] * &upow(1);
            v = &v - &(&rep.braiding_inv[i][j] * &upow(-1));
            if i == j {
                v = &v - &qmq;
            }
            out[i][j] = v;
        }
    }
    Ok(out)
}

/// One skein triple: `L+`, `L-` and the smoothing `L0` at one crossing.
#[derive(Clone, Debug)]
pub struct SkeinTriple {
    pub plus: TangleDiagram,
    pub minus: TangleDiagram,
    pub zero: TangleDiagram,
}

impl SkeinTriple {
    /// Builds the triple from a diagram whose slice `slice` holds a
    /// crossing between co-oriented strands at generator `gen`.
    pub fn at(d: &TangleDiagram, slice: usize, gen: usize) -> Result<Self> {
        let g = *d
            .slices()
            .get(slice)
            .and_then(|s| s.get(gen))
            .ok_or_else(|| Error::argument("no generator at that location"))?;
        if !matches!(g.kind, GenKind::CrossPos | GenKind::CrossNeg) {
            return Err(Error::argument("skein site must be a crossing"));
        }
        let below = &d.levels()[slice];
        let pos = g.position;
        if below[pos] != below[pos + 1] {
            return Err(Error::argument("skein crossing must join co-oriented strands"));
        }
        let with = |kind: Option<GenKind>| -> Result<TangleDiagram> {
            let mut slices = d.slices().to_vec();
            match kind {
                Some(k) => slices[slice][gen].kind = k,
                None => {
                    let p = slices[slice][gen].position;
                    slices[slice][gen] = Generator::new(GenKind::Id, p);
                    slices[slice].push(Generator::new(GenKind::Id, p + 1));
                }
            }
            TangleDiagram::from_slices(d.inputs().to_vec(), slices)
        };
        Ok(SkeinTriple { plus: with(Some(GenKind::CrossPos))?, minus: with(Some(GenKind::CrossNeg))?, zero: with(None)? })
    }

    /// Checks that the three diagrams differ only at one co-oriented crossing site.
    pub fn validate(&self) -> Result<()> {
        let (p, m, z) = (&self.plus, &self.minus, &self.zero);
        if p.inputs() != m.inputs() || p.inputs() != z.inputs() || p.slices().len() != m.slices().len() || p.slices().len() != z.slices().len() {
            return Err(Error::argument("skein triple diagrams have different shapes"));
        }
        let mut site = None;
        for (i, ((a, b), c)) in p.slices().iter().zip(m.slices()).zip(z.slices()).enumerate() {
            if a == b && a == c {
                continue;
            }
            if site.is_some() {
                return Err(Error::argument("skein triple differs in more than one slice"));
            }
            site = Some(i);
            let canon = |s: &[Generator]| -> Vec<Generator> {
                let mut v: Vec<Generator> = s.iter().copied().filter(|g| g.kind != GenKind::Id).collect();
                v.sort_by_key(|g| g.position);
                v
            };
            let (ca, cb, cc) = (canon(a), canon(b), canon(c));
            let pa: Vec<_> = ca.iter().filter(|g| g.kind == GenKind::CrossPos && !cb.contains(g)).collect();
            let nb: Vec<_> = cb.iter().filter(|g| g.kind == GenKind::CrossNeg && !ca.contains(g)).collect();
            if pa.len() != 1 || nb.len() != 1 || pa[0].position != nb[0].position {
                return Err(Error::argument("L+ and L- must differ by one crossing"));
            }
            let mut rest_a = ca.clone();
            rest_a.retain(|g| g != pa[0]);
            if rest_a != cc {
                return Err(Error::argument("L0 must remove the crossing and keep the rest"));
            }
            let lv = &p.levels()[i];
            let at = pa[0].position;
            if lv[at] != lv[at + 1] {
                return Err(Error::argument("skein crossing must join co-oriented strands"));
            }
        }
        if site.is_none() {
            return Err(Error::argument("skein triple diagrams are identical"));
        }
        Ok(())
    }
}

/// Outcome of a skein check.
#[derive(Clone, Debug)]
pub struct SkeinReport {
    pub n: u32,
    pub operator_identity_holds: bool,
    /// `u^{N^2} P(L+) - u^{-N^2} P(L-) - (u^N - u^-N) P(L0)` per triple.
    pub residuals: Vec<LaurentPoly>,
}

impl SkeinReport {
    pub fn all_zero(&self) -> bool {
        self.operator_identity_holds && self.residuals.iter().all(|r| r.is_zero())
    }

    /// Number of nonzero coefficients in the worst residual.
    pub fn max_residual_terms(&self) -> usize {
        self.residuals.iter().map(|r| r.len()).max().unwrap_or(0)
    }
}

pub fn skein_check(n: u32, triples: &[SkeinTriple]) -> Result<SkeinReport> {
    let op = skein_operator_residual(n)?;
    let operator_identity_holds = op.iter().flatten().all(|p| p.is_zero());
    let ni = n as i64;
    let mut residuals = Vec::new();
    for t in triples {
        t.validate()?;
        let pp = thomflyp(&t.plus, n)?;
        let pm = thomflyp(&t.minus, n)?;
        let p0 = thomflyp(&t.zero, n)?;
        let lhs = &pp.shift(ni * ni) - &pm.shift(-ni * ni);
        let rhs = &p0 * &(&upow(ni) - &upow(-ni));
        residuals.push(&lhs - &rhs);
    }
    Ok(SkeinReport { n, operator_identity_holds, residuals })
}

/// `U(1)_{2m+1}` color-and-multiply value of a closed diagram with one
/// color per component. Upward strands carry `p`, downward strands `-p`.
pub fn evaluate_u1(d: &TangleDiagram, colors: &[i64], m: u32, prec: &Precision) -> Result<ApComplex> {
    if !d.is_closed() {
        return Err(Error::domain("evaluation needs a closed diagram"));
    }
    if colors.len() != d.component_count() {
        return Err(Error::argument(alloc::format!(
            "expected {} colors, got {}",
            d.component_count(),
            colors.len()
        )));
    }
    let order = 2 * m as i64 + 1;
    // Recompute strand labels slice by slice.
    let mut labels: Vec<i64> = Vec::new();
    let mut comp_of_cup = crossing_components(d);
    let mut phase = BigInt::zero();
    for op in d.ops() {
        match *op {
            Op::Cup { at, dual } => {
                let c = comp_of_cup.next().expect("one component per cup");
                let p = colors[c];
                let pair = if dual { [-p, p] } else { [p, -p] };
                labels.insert(at, pair[1]);
                labels.insert(at, pair[0]);
            }
            Op::Cap { at, .. } => {
                if labels[at] + labels[at + 1] != 0 {
                    return Err(Error::domain("cap joins incompatible labels"));
                }
                labels.drain(at..at + 2);
            }
            Op::Cross { at, positive, .. } => {
                let e = labels[at] * labels[at + 1];
                phase += if positive { e } else { -e };
                labels.swap(at, at + 1);
            }
            Op::Twist { at, positive } => {
                let e = labels[at] * labels[at];
                phase += if positive { e } else { -e };
            }
        }
    }
    Ok(prec.cis_turn(&BigRat::new(phase, BigInt::from(order))))
}

/// Component index of each cup in the order cups are applied.
fn crossing_components(d: &TangleDiagram) -> impl Iterator<Item = usize> {
    // Replay the union-find numbering: cups in application order create
    // strands whose components are the diagram's components.
    let mut uf = UnionFind(Vec::new());
    let mut strands: Vec<usize> = Vec::new();
    let mut cups = Vec::new();
    for op in d.ops() {
        match *op {
            Op::Cup { at, .. } => {
                let c = uf.add();
                cups.push(c);
                strands.insert(at, c);
                strands.insert(at, c);
            }
            Op::Cap { at, .. } => {
                uf.union(strands[at], strands[at + 1]);
                strands.drain(at..at + 2);
            }
            Op::Cross { at, .. } => strands.swap(at, at + 1),
            Op::Twist { .. } => {}
        }
    }
    let mut index: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..uf.0.len() {
        let r = uf.find(i);
        let next = index.len();
        index.entry(r).or_insert(next);
    }
    cups.into_iter().map(move |c| index[&uf.find(c)]).collect::<Vec<_>>().into_iter()
}

/// Renders a Laurent polynomial in `u` as `{"exp": "p/q"}` pairs.
pub fn coeff_strings(p: &LaurentPoly) -> Vec<(i64, String)> {
    p.terms().map(|(e, c)| (e, rat_string(c))).collect()
}

pub fn rat_string(c: &BigRat) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        let mut s = String::new();
        let _ = write!(s, "{}/{}", c.numer(), c.denom());
        s
    }
}

/// `true` if every coefficient is an integer.
pub fn has_integer_coefficients(p: &LaurentPoly) -> bool {
    p.terms().all(|(_, c)| c.is_integer())
}

/// Evaluates a polynomial in `u` at `u = e^{2 pi i s/l}`.
pub fn eval_u(p: &LaurentPoly, l: i64, s: i64, prec: &Precision) -> ApComplex {
    crate::exactnum::eval_at_root(p, l, s, prec)
}
