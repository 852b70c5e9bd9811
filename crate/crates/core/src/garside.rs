//! The braid monoid of a finite Coxeter group as a Garside monoid.
//!
//! Simple elements are the lifts of Weyl group elements; the Garside
//! element Δ lifts the longest element.  A braid is stored canonically
//! as `Δ^inf · f₁ ⋯ f_l` with a left-weighted factor sequence: for each
//! consecutive pair, the right descents of a factor contain the left
//! descents of the next.
//!
//! Conjugacy machinery: cycling, decycling, super/ultra summit sets and
//! the summit conjugacy graph with minimal simple conjugators, from
//! which (possibly twisted) centralizer generators are read off.  The
//! twisted form folds the automorphism into the conjugation action
//! `x ⋆ v = x⁻¹·v·F(x)`, so one code path serves both cases.

use std::sync::Arc;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::budget::Budget;
use crate::coxeter::{CoxGroup, Word};
use crate::error::{Error, Result};
use crate::par;
use crate::perm::Perm;

/// Shared context: the group, its Garside element Δ and the flip τ.
pub struct BraidCtx {
    pub group: Arc<CoxGroup>,
    pub delta: Perm,
}

impl BraidCtx {
    pub fn new(group: Arc<CoxGroup>) -> Arc<BraidCtx> {
        let delta = group.longest_element().clone();
        Arc::new(BraidCtx { group, delta })
    }

    /// τ(x) = Δ⁻¹·x·Δ on simples; an involutive diagram automorphism.
    pub fn tau(&self, x: &Perm) -> Perm {
        self.delta.compose(&x.compose(&self.delta))
    }

    fn tau_pow(&self, x: &Perm, k: i64) -> Perm {
        if k.rem_euclid(2) == 0 {
            x.clone()
        } else {
            self.tau(x)
        }
    }

    /// Greedy meet of two simples in the prefix order on `[1, Δ]`.
    pub fn meet(&self, u: &Perm, v: &Perm) -> Perm {
        let w = &self.group;
        let n = w.n_gens;
        let npos = w.n_pos;
        let mut m = w.identity();
        let mut u = u.clone();
        let mut v = v.clone();
        loop {
            let uinv = u.inverse();
            let vinv = v.inverse();
            match (0..n).find(|&s| uinv.apply(s) >= npos && vinv.apply(s) >= npos) {
                Some(s) => {
                    m = m.compose(&w.gen_perms[s]);
                    u = w.gen_perms[s].compose(&u);
                    v = w.gen_perms[s].compose(&v);
                }
                None => return m,
            }
        }
    }

    /// Join of two simples, via the order-reversing bijection `x ↦ w₀x`.
    pub fn join(&self, u: &Perm, v: &Perm) -> Perm {
        let wu = self.delta.compose(u);
        let wv = self.delta.compose(v);
        self.delta.compose(&self.meet(&wu, &wv))
    }

    /// Is the simple `x` a prefix of the simple `y`?
    pub fn is_prefix(&self, x: &Perm, y: &Perm) -> bool {
        let w = &self.group;
        w.length(x) + w.length(&x.inverse().compose(y)) == w.length(y)
    }

    /// x\y = x⁻¹·(x ∨ y) for simples.
    fn simple_complement(&self, x: &Perm, y: &Perm) -> Perm {
        x.inverse().compose(&self.join(x, y))
    }
}

/// A braid in left-weighted canonical form.
#[derive(Clone)]
pub struct Braid {
    pub ctx: Arc<BraidCtx>,
    pub inf: i64,
    pub factors: Vec<Perm>,
}

impl PartialEq for Braid {
    fn eq(&self, other: &Self) -> bool {
        self.inf == other.inf && self.factors == other.factors
    }
}
impl Eq for Braid {}

impl std::hash::Hash for Braid {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.inf.hash(state);
        self.factors.hash(state);
    }
}

impl PartialOrd for Braid {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Braid {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.inf.cmp(&other.inf).then_with(|| self.factors.cmp(&other.factors))
    }
}

impl std::fmt::Debug for Braid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.display())
    }
}

impl Braid {
    pub fn identity(ctx: &Arc<BraidCtx>) -> Braid {
        Braid { ctx: ctx.clone(), inf: 0, factors: vec![] }
    }

    pub fn delta_power(ctx: &Arc<BraidCtx>, k: i64) -> Braid {
        Braid { ctx: ctx.clone(), inf: k, factors: vec![] }
    }

    /// Lift of a Weyl group element (a simple).
    pub fn simple(ctx: &Arc<BraidCtx>, w: &Perm) -> Braid {
        left_normal_form(ctx, 0, vec![w.clone()])
    }

    pub fn sup(&self) -> i64 {
        self.inf + self.factors.len() as i64
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn is_positive(&self) -> bool {
        self.inf >= 0
    }

    pub fn is_identity(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    /// Image under the quotient map to W.
    pub fn image_in_w(&self) -> Perm {
        let ctx = &self.ctx;
        let mut acc = if self.inf.rem_euclid(2) == 1 {
            ctx.delta.clone()
        } else {
            ctx.group.identity()
        };
        for f in &self.factors {
            acc = acc.compose(f);
        }
        acc
    }
}

/// Left-weighted normal form of `Δ^k · f₁ ⋯ f_l` for arbitrary simple
/// factors: slides weight leftward, drops identities, absorbs Δ's.
pub fn left_normal_form(ctx: &Arc<BraidCtx>, k: i64, mut factors: Vec<Perm>) -> Braid {
    let w = &ctx.group;
    let n = w.n_gens;
    let npos = w.n_pos;
    factors.retain(|f| !f.is_identity());
    let bound = 2 * factors.len() + 4;
    let mut passes = 0usize;
    loop {
        let mut changed = false;
        for i in 0..factors.len().saturating_sub(1) {
            let (left, right) = factors.split_at_mut(i + 1);
            let a = &mut left[i];
            let b = &mut right[0];
            loop {
                let binv = b.inverse();
                match (0..n).find(|&s| binv.apply(s) >= npos && a.apply(s) < npos) {
                    Some(s) => {
                        *a = a.compose(&w.gen_perms[s]);
                        *b = w.gen_perms[s].compose(b);
                        changed = true;
                    }
                    None => break,
                }
            }
        }
        factors.retain(|f| !f.is_identity());
        if !changed {
            break;
        }
        passes += 1;
        assert!(passes <= bound, "normal form failed to converge");
    }
    let mut inf = k;
    while factors.first() == Some(&ctx.delta) {
        inf += 1;
        factors.remove(0);
    }
    Braid { ctx: ctx.clone(), inf, factors }
}

/// Lift of a word in the generators: the product of generator lifts.
pub fn positive_lift(ctx: &Arc<BraidCtx>, word: &[usize]) -> Braid {
    let mut acc = Braid::identity(ctx);
    for &l in word {
        let g = Braid::simple(ctx, &ctx.group.gen_perms[l - 1]);
        acc = braid_product(&acc, &g);
    }
    acc
}

pub fn braid_product(a: &Braid, b: &Braid) -> Braid {
    let ctx = &a.ctx;
    debug_assert!(Arc::ptr_eq(&a.ctx, &b.ctx), "context mismatch");
    let mut factors: Vec<Perm> = a.factors.iter().map(|f| ctx.tau_pow(f, b.inf)).collect();
    factors.extend(b.factors.iter().cloned());
    left_normal_form(ctx, a.inf + b.inf, factors)
}

pub fn braid_inverse(a: &Braid) -> Braid {
    let ctx = &a.ctx;
    // (Δ^k f₁⋯f_l)⁻¹ = f_l⁻¹ ⋯ f₁⁻¹ Δ^{−k}, and for a simple x we have
    // Δ = (w₀x⁻¹)·x with lengths adding, so x⁻¹ = Δ⁻¹·(w₀x⁻¹).
    let mut acc = Braid::identity(ctx);
    for f in a.factors.iter().rev() {
        let comp = ctx.delta.compose(&f.inverse());
        let piece = left_normal_form(ctx, -1, vec![comp]);
        acc = braid_product(&acc, &piece);
    }
    braid_product(&acc, &Braid::delta_power(ctx, -a.inf))
}

/// Largest common left divisor of two positive braids.
pub fn left_gcd(a: &Braid, b: &Braid) -> Braid {
    let ctx = &a.ctx;
    debug_assert!(a.is_positive() && b.is_positive(), "gcd needs positive braids");
    let mut a = a.clone();
    let mut b = b.clone();
    let mut g = Braid::identity(ctx);
    loop {
        let ha = head(&a);
        let hb = head(&b);
        let d = ctx.meet(&ha, &hb);
        if d.is_identity() {
            return g;
        }
        let dinv = braid_inverse(&Braid::simple(ctx, &d));
        g = braid_product(&g, &Braid::simple(ctx, &d));
        a = braid_product(&dinv, &a);
        b = braid_product(&dinv, &b);
    }
}

/// Maximal simple prefix of a positive braid.
fn head(a: &Braid) -> Perm {
    if a.inf > 0 {
        a.ctx.delta.clone()
    } else {
        a.factors.first().cloned().unwrap_or_else(|| a.ctx.group.identity())
    }
}

fn expanded_factors(a: &Braid) -> Vec<Perm> {
    let mut out = Vec::new();
    for _ in 0..a.inf {
        out.push(a.ctx.delta.clone());
    }
    out.extend(a.factors.iter().cloned());
    out
}

/// Right complement of positive words: P\Q, satisfying P∨Q = P·(P\Q).
fn word_complement(ctx: &Arc<BraidCtx>, p: &[Perm], q: &[Perm]) -> Vec<Perm> {
    if p.is_empty() {
        return q.to_vec();
    }
    if q.is_empty() {
        return vec![];
    }
    if p.len() == 1 {
        let x = &p[0];
        let y = &q[0];
        let mut out = vec![ctx.simple_complement(x, y)];
        let yx = ctx.simple_complement(y, x);
        out.extend(word_complement(ctx, &[yx], &q[1..]));
        out
    } else {
        let inner = word_complement(ctx, &p[..1], q);
        word_complement(ctx, &p[1..], &inner)
    }
}

/// Least common left multiple of two positive braids.
pub fn left_lcm(a: &Braid, b: &Braid) -> Braid {
    let ctx = &a.ctx;
    debug_assert!(a.is_positive() && b.is_positive(), "lcm needs positive braids");
    let comp = word_complement(ctx, &expanded_factors(a), &expanded_factors(b));
    let mut factors = expanded_factors(a);
    factors.extend(comp);
    left_normal_form(ctx, 0, factors)
}

/// Reduced fraction: `b = den⁻¹·num` with positive parts sharing no
/// common left divisor.
pub fn as_reduced_fraction(b: &Braid) -> (Braid, Braid) {
    let ctx = &b.ctx;
    if b.inf >= 0 {
        return (b.clone(), Braid::identity(ctx));
    }
    let den0 = Braid::delta_power(ctx, -b.inf);
    let num0 = Braid { ctx: ctx.clone(), inf: 0, factors: b.factors.clone() };
    let g = left_gcd(&den0, &num0);
    let ginv = braid_inverse(&g);
    (braid_product(&ginv, &num0), braid_product(&ginv, &den0))
}

// ---------------------------------------------------------------------------
// Display
// ---------------------------------------------------------------------------

impl Braid {
    /// Positive words as digit strings of generator labels (parenthesized
    /// comma form once labels reach 10), `w0` for Δ, `(a)^-1.b` for
    /// fractions.
    pub fn display(&self) -> String {
        let (num, den) = as_reduced_fraction(self);
        if den.is_identity() {
            return pos_string(&num);
        }
        if num.is_identity() {
            format!("({})^-1", pos_string(&den))
        } else {
            format!("({})^-1.{}", pos_string(&den), pos_string(&num))
        }
    }
}

fn pos_string(b: &Braid) -> String {
    let w = &b.ctx.group;
    let mut segments: Vec<String> = Vec::new();
    match b.inf {
        0 => {}
        1 => segments.push("w0".into()),
        k => segments.push(format!("w0^{k}")),
    }
    let mut letters: Word = Vec::new();
    for f in &b.factors {
        letters.extend(w.reduced_word(f));
    }
    if !letters.is_empty() {
        if w.n_gens <= 9 {
            segments.push(letters.iter().map(|l| l.to_string()).collect::<String>());
        } else {
            segments.push(format!(
                "({})",
                letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
            ));
        }
    }
    if segments.is_empty() {
        return "1".into();
    }
    segments.join(".")
}

// ---------------------------------------------------------------------------
// Twisted conjugacy: cycling, summit sets, centralizers
// ---------------------------------------------------------------------------

/// A Garside automorphism: a diagram automorphism of the group acting on
/// roots, hence on simples, braids and normal forms.
#[derive(Clone)]
pub struct GarsideAut {
    pub root_perm: Perm,
    root_perm_inv: Perm,
}

impl GarsideAut {
    pub fn identity(group: &CoxGroup) -> GarsideAut {
        let id = group.identity();
        GarsideAut { root_perm: id.clone(), root_perm_inv: id }
    }

    pub fn from_root_perm(root_perm: Perm) -> GarsideAut {
        let root_perm_inv = root_perm.inverse();
        GarsideAut { root_perm, root_perm_inv }
    }

    pub fn is_identity(&self) -> bool {
        self.root_perm.is_identity()
    }

    pub fn apply_w(&self, x: &Perm) -> Perm {
        self.root_perm.compose(&x.compose(&self.root_perm_inv))
    }

    pub fn inv_apply_w(&self, x: &Perm) -> Perm {
        self.root_perm_inv.compose(&x.compose(&self.root_perm))
    }

    /// Apply to a braid factorwise; normal forms are preserved.
    pub fn apply_braid(&self, b: &Braid) -> Braid {
        debug_assert_eq!(self.apply_w(&b.ctx.delta), b.ctx.delta);
        let factors: Vec<Perm> = b.factors.iter().map(|f| self.apply_w(f)).collect();
        Braid { ctx: b.ctx.clone(), inf: b.inf, factors }
    }
}

/// `x ⋆ v = x⁻¹·v·F(x)` — the action whose stabilizer is the twisted
/// centralizer.
pub fn twisted_conjugate(v: &Braid, x: &Braid, f: &GarsideAut) -> Braid {
    let fx = f.apply_braid(x);
    braid_product(&braid_product(&braid_inverse(x), v), &fx)
}

/// Cycling: conjugate by the initial factor `τ^{-inf}(f₁)`.  Returns the
/// result and the conjugating braid.
pub fn cycling(v: &Braid, f: &GarsideAut) -> (Braid, Braid) {
    if v.factors.is_empty() {
        return (v.clone(), Braid::identity(&v.ctx));
    }
    let ctx = &v.ctx;
    let iota = ctx.tau_pow(&v.factors[0], -v.inf);
    let mut factors: Vec<Perm> = v.factors[1..].to_vec();
    factors.push(f.apply_w(&iota));
    let out = left_normal_form(ctx, v.inf, factors);
    (out, Braid::simple(ctx, &iota))
}

/// Decycling: conjugate by `F⁻¹(f_l)⁻¹`, moving the final factor to the
/// front.
pub fn decycling(v: &Braid, f: &GarsideAut) -> (Braid, Braid) {
    if v.factors.is_empty() {
        return (v.clone(), Braid::identity(&v.ctx));
    }
    let ctx = &v.ctx;
    let last = v.factors.last().unwrap();
    let x = f.inv_apply_w(last);
    let mut factors = vec![ctx.tau_pow(&x, v.inf)];
    factors.extend_from_slice(&v.factors[..v.factors.len() - 1]);
    let out = left_normal_form(ctx, v.inf, factors);
    (out, braid_inverse(&Braid::simple(ctx, &x)))
}

/// Iterate cycling until inf rises (Some) or the orbit closes without
/// improvement (None); in the latter case inf is maximal along cycling.
fn cycle_for_inf(v: &Braid, f: &GarsideAut) -> Option<(Braid, Braid)> {
    let mut seen: FxHashSet<Braid> = FxHashSet::default();
    let mut cur = v.clone();
    let mut conj = Braid::identity(&v.ctx);
    loop {
        if !seen.insert(cur.clone()) {
            return None;
        }
        let (next, c) = cycling(&cur, f);
        conj = braid_product(&conj, &c);
        if next.inf > v.inf {
            return Some((next, conj));
        }
        cur = next;
    }
}

fn decycle_for_sup(v: &Braid, f: &GarsideAut) -> Option<(Braid, Braid)> {
    let mut seen: FxHashSet<Braid> = FxHashSet::default();
    let mut cur = v.clone();
    let mut conj = Braid::identity(&v.ctx);
    loop {
        if !seen.insert(cur.clone()) {
            return None;
        }
        let (next, c) = decycling(&cur, f);
        conj = braid_product(&conj, &c);
        if next.sup() < v.sup() {
            return Some((next, conj));
        }
        cur = next;
    }
}

/// Conjugate into the super summit set (maximal inf, minimal sup).
/// Returns the representative and a conjugator from `v` to it.
pub fn to_super_summit(v: &Braid, f: &GarsideAut) -> (Braid, Braid) {
    let mut cur = v.clone();
    let mut conj = Braid::identity(&v.ctx);
    loop {
        if let Some((next, c)) = cycle_for_inf(&cur, f) {
            cur = next;
            conj = braid_product(&conj, &c);
            continue;
        }
        if let Some((next, c)) = decycle_for_sup(&cur, f) {
            cur = next;
            conj = braid_product(&conj, &c);
            continue;
        }
        return (cur, conj);
    }
}

/// Walk the cycling orbit from a super summit element into its periodic
/// part; the result recurs under cycling.
fn to_ultra_summit(v: &Braid, f: &GarsideAut) -> (Braid, Braid) {
    let mut cur = v.clone();
    let mut conj = Braid::identity(&v.ctx);
    let mut seen: FxHashSet<Braid> = FxHashSet::default();
    seen.insert(cur.clone());
    loop {
        let (next, c) = cycling(&cur, f);
        let conj_next = braid_product(&conj, &c);
        if seen.contains(&next) {
            return (next, conj_next);
        }
        seen.insert(next.clone());
        cur = next;
        conj = conj_next;
    }
}

/// Does iterated cycling return to `v`?
fn in_cycling_circuit(v: &Braid, f: &GarsideAut) -> bool {
    let mut cur = v.clone();
    let mut seen: FxHashSet<Braid> = FxHashSet::default();
    loop {
        let (next, _) = cycling(&cur, f);
        if next == *v {
            return true;
        }
        if !seen.insert(next.clone()) {
            return false;
        }
        cur = next;
    }
}

/// The summit conjugacy graph of `b`: vertices are the ultra summit set
/// sorted by normal form; edges carry the simple conjugators kept per
/// atom (the minimal in-summit conjugator above each atom, plus Δ).
pub struct SummitGraph {
    pub vertices: Vec<Braid>,
    /// (from, simple, to) with `vertices[from] ⋆ simple = vertices[to]`.
    pub edges: Vec<(usize, Perm, usize)>,
    pub base: usize,
    /// Conjugates `b` to `vertices[base]`.
    pub base_conjugator: Braid,
}

pub fn summit_conjugacy_graph(
    b: &Braid,
    f: Option<&GarsideAut>,
    budget: &Budget,
) -> Result<SummitGraph> {
    let ctx = b.ctx.clone();
    let ident = GarsideAut::identity(&ctx.group);
    let f = f.unwrap_or(&ident);
    let (sss, c1) = to_super_summit(b, f);
    let (u0, c2) = to_ultra_summit(&sss, f);
    let base_conjugator = braid_product(&c1, &c2);
    debug_assert_eq!(twisted_conjugate(b, &base_conjugator, f), u0);

    let inf_s = u0.inf;
    let sup_s = u0.sup();
    let els = ctx.group.elements(budget)?;

    let mut uss_cache: FxHashMap<Braid, bool> = FxHashMap::default();
    uss_cache.insert(u0.clone(), true);
    let mut vertices: Vec<Braid> = vec![u0.clone()];
    let mut seen: FxHashSet<Braid> = FxHashSet::default();
    seen.insert(u0.clone());
    let mut edges: Vec<(Braid, Perm, Braid)> = Vec::new();
    let mut head = 0;
    while head < vertices.len() {
        if vertices.len() as u64 > budget.max_graph {
            return Err(Error::BudgetExceeded {
                what: "summit vertices",
                limit: budget.max_graph,
            });
        }
        let v = vertices[head].clone();
        // Scan all simple conjugators, keeping those that stay at summit
        // (inf, sup); ultra membership is decided afterwards with a cache.
        let candidates: Vec<(usize, Braid)> = {
            let hits = par::map_range(els.len(), |i| {
                let s = &els.elements[i];
                if s.is_identity() {
                    return None;
                }
                let target = twisted_conjugate(&v, &Braid::simple(&ctx, s), f);
                (target.inf == inf_s && target.sup() == sup_s).then_some((i, target))
            });
            hits.into_iter().flatten().collect()
        };
        let mut in_summit: Vec<(Perm, Braid)> = Vec::new();
        for (i, target) in candidates {
            let member = match uss_cache.get(&target) {
                Some(&m) => m,
                None => {
                    let m = in_cycling_circuit(&target, f);
                    uss_cache.insert(target.clone(), m);
                    m
                }
            };
            if member {
                in_summit.push((els.elements[i].clone(), target));
            }
        }
        // Per atom, fold the meet of the in-summit conjugators above it;
        // the in-summit set is meet-closed, so the fold lands inside it.
        let mut kept: Vec<(Perm, Braid)> = Vec::new();
        for a in 0..ctx.group.n_gens {
            let mut m: Option<Perm> = None;
            for (s, _) in &in_summit {
                if s.inverse().apply(a) >= ctx.group.n_pos {
                    m = Some(match m {
                        None => s.clone(),
                        Some(prev) => ctx.meet(&prev, s),
                    });
                }
            }
            if let Some(m) = m {
                let target = match in_summit.iter().find(|(s, _)| *s == m) {
                    Some((_, t)) => t.clone(),
                    None => {
                        let t = twisted_conjugate(&v, &Braid::simple(&ctx, &m), f);
                        debug_assert!(t.inf == inf_s && t.sup() == sup_s);
                        t
                    }
                };
                kept.push((m, target));
            }
        }
        if let Some((_, t)) = in_summit.iter().find(|(s, _)| *s == ctx.delta) {
            kept.push((ctx.delta.clone(), t.clone()));
        }
        kept.sort_by(|a, b| a.0.cmp(&b.0));
        kept.dedup_by(|a, b| a.0 == b.0);
        for (s, target) in kept {
            if seen.insert(target.clone()) {
                vertices.push(target.clone());
            }
            edges.push((v.clone(), s, target));
        }
        head += 1;
    }

    // Canonical vertex order for reproducible spanning trees.
    vertices.sort();
    let index: FxHashMap<&Braid, usize> =
        vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut edge_idx: Vec<(usize, Perm, usize)> =
        edges.iter().map(|(u, s, w)| (index[u], s.clone(), index[w])).collect();
    edge_idx.sort_by(|a, b| (a.0, &a.1, a.2).cmp(&(b.0, &b.1, b.2)));
    edge_idx.dedup();
    let base = index[&u0];
    Ok(SummitGraph { vertices, edges: edge_idx, base, base_conjugator })
}

/// Generators of `{x : x·b = b·F(x)}`: the conjugator into the summit
/// set, composed with the loop words of a spanning tree of the summit
/// graph, conjugated back.
pub fn centralizer_generators(
    b: &Braid,
    f: Option<&GarsideAut>,
    budget: &Budget,
) -> Result<Vec<Braid>> {
    let ctx = b.ctx.clone();
    let ident = GarsideAut::identity(&ctx.group);
    let fa = f.unwrap_or(&ident);
    let graph = summit_conjugacy_graph(b, f, budget)?;
    let n = graph.vertices.len();
    let mut tree_path: Vec<Option<Braid>> = vec![None; n];
    tree_path[graph.base] = Some(Braid::identity(&ctx));
    let mut queue = std::collections::VecDeque::from([graph.base]);
    let mut tree_edges: FxHashSet<usize> = FxHashSet::default();
    while let Some(v) = queue.pop_front() {
        for (k, (from, s, to)) in graph.edges.iter().enumerate() {
            if *from == v && tree_path[*to].is_none() {
                let path = braid_product(tree_path[v].as_ref().unwrap(), &Braid::simple(&ctx, s));
                tree_path[*to] = Some(path);
                tree_edges.insert(k);
                queue.push_back(*to);
            }
        }
    }
    let c0 = &graph.base_conjugator;
    let mut gens: Vec<Braid> = Vec::new();
    let mut dedup: FxHashSet<Braid> = FxHashSet::default();
    for (k, (from, s, to)) in graph.edges.iter().enumerate() {
        if tree_edges.contains(&k) {
            continue;
        }
        let pu = braid_product(c0, tree_path[*from].as_ref().expect("tree spans"));
        let pw = braid_product(c0, tree_path[*to].as_ref().expect("tree spans"));
        let g = braid_product(&braid_product(&pu, &Braid::simple(&ctx, s)), &braid_inverse(&pw));
        if g.is_identity() {
            continue;
        }
        if dedup.insert(g.clone()) {
            gens.push(g);
        }
    }
    // The defining equation is relied on downstream; check it here.
    for g in &gens {
        let lhs = braid_product(g, b);
        let rhs = braid_product(b, &fa.apply_braid(g));
        assert_eq!(lhs, rhs, "centralizer generator fails its defining equation");
    }
    Ok(gens)
}

// ---------------------------------------------------------------------------
