//! Finite-order semisimple elements of a reductive group, represented as
//! vectors over ℚ/ℤ on a basis of Y(T).
//!
//! Torus point arithmetic, Weyl action and root pairings; the algebraic
//! centre of a (possibly non-connected) subgroup; torsion subgroups of
//! subtori; full centralizers as extended reflection groups;
//! quasi-isolated classes; and the classification of centralizer types
//! from subsets of the extended diagram with the bad-prime filter.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rustc_hash::{FxHashMap, FxHashSet};

use crate::budget::Budget;
use crate::coxeter::{act_posset, CoxGroup, ReflSubgroup};
use crate::error::{Error, Result};
use crate::exactlin::{
    integer_kernel, lattice_complement, mat64_identity, snf_with_qinv, IntMat, Mat64, Rat,
};
use crate::par;
use crate::perm::{Bsgs, Perm};

/// A torsion point of the torus: coordinates in ℚ/ℤ, stored in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SSElt {
    pub v: Vec<Rat>,
}

fn frac(r: &Rat) -> Rat {
    let f = r - r.floor();
    if f.is_negative() {
        f + Rat::one()
    } else {
        f
    }
}

impl SSElt {
    pub fn new(coords: Vec<Rat>) -> SSElt {
        SSElt { v: coords.iter().map(frac).collect() }
    }

    pub fn zero(rank: usize) -> SSElt {
        SSElt { v: vec![Rat::zero(); rank] }
    }

    pub fn rank(&self) -> usize {
        self.v.len()
    }

    pub fn is_zero(&self) -> bool {
        self.v.iter().all(Zero::is_zero)
    }

    pub fn multiply(&self, other: &SSElt) -> SSElt {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        SSElt::new(self.v.iter().zip(&other.v).map(|(a, b)| a + b).collect())
    }

    pub fn power(&self, n: i64) -> SSElt {
        let k = Rat::from_integer(n.into());
        SSElt::new(self.v.iter().map(|a| a * &k).collect())
    }

    /// Order: lcm of the coordinate denominators.
    pub fn order(&self) -> u64 {
        let mut l = BigInt::one();
        for c in &self.v {
            l = l.lcm(c.denom());
        }
        u64::try_from(&l).expect("order fits u64")
    }

    /// Apply an integral Y-matrix, coordinates mod 1.
    pub fn apply_mat(&self, m: &Mat64) -> SSElt {
        SSElt::new(
            m.iter()
                .map(|row| {
                    let mut acc = Rat::zero();
                    for (c, x) in row.iter().zip(&self.v) {
                        if *c != 0 {
                            acc += Rat::from_integer((*c).into()) * x;
                        }
                    }
                    acc
                })
                .collect(),
        )
    }
}

impl fmt::Display for SSElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self
            .v
            .iter()
            .map(|c| {
                if c.denom().is_one() {
                    c.numer().to_string()
                } else {
                    format!("{}/{}", c.numer(), c.denom())
                }
            })
            .collect();
        write!(f, "<{}>", coords.join(","))
    }
}

impl fmt::Debug for SSElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Weyl action on torus points.
pub fn weyl_act(w: &CoxGroup, x: &Perm, s: &SSElt) -> SSElt {
    s.apply_mat(&w.ymat_of(x))
}

/// ⟨root, s⟩ mod 1, the root given by its 0-based index.
pub fn root_pairing(w: &CoxGroup, root0: usize, s: &SSElt) -> Rat {
    let mut acc = Rat::zero();
    for (&a, x) in w.roots_x[root0].iter().zip(&s.v) {
        if a != 0 {
            acc += Rat::from_integer(a.into()) * x;
        }
    }
    frac(&acc)
}

// ---------------------------------------------------------------------------
// Scaled integer representation for orbit scans
// ---------------------------------------------------------------------------

/// `v/n` with `v ∈ (ℤ/n)^rank`; orbit arithmetic stays integral.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Scaled {
    n: i64,
    v: Vec<i64>,
}

impl Scaled {
    fn from_elt(s: &SSElt) -> Scaled {
        let n = s.order() as i64;
        let v = s
            .v
            .iter()
            .map(|c| {
                let num = i64::try_from(c.numer()).expect("coordinate fits i64");
                let den = i64::try_from(c.denom()).expect("coordinate fits i64");
                (num * (n / den)).rem_euclid(n)
            })
            .collect();
        Scaled { n, v }
    }

    fn to_elt(&self) -> SSElt {
        SSElt::new(self.v.iter().map(|&x| Rat::new(x.into(), self.n.into())).collect())
    }

    fn apply_mat(&self, m: &Mat64) -> Scaled {
        let v = m
            .iter()
            .map(|row| {
                row.iter().zip(&self.v).map(|(&c, &x)| c * x).sum::<i64>().rem_euclid(self.n)
            })
            .collect();
        Scaled { n: self.n, v }
    }
}

/// Full W-orbit of a torus point, as a sorted list.
pub fn orbit(w: &CoxGroup, s: &SSElt, budget: &Budget) -> Result<Vec<SSElt>> {
    let start = Scaled::from_elt(s);
    let mut seen: FxHashSet<Scaled> = FxHashSet::default();
    seen.insert(start.clone());
    let mut queue = vec![start];
    let mut head = 0;
    while head < queue.len() {
        if queue.len() as u64 > budget.max_elements {
            return Err(Error::BudgetExceeded { what: "torus orbit", limit: budget.max_elements });
        }
        let cur = queue[head].clone();
        for m in &w.gen_ymats {
            let im = cur.apply_mat(m);
            if seen.insert(im.clone()) {
                queue.push(im);
            }
        }
        head += 1;
    }
    let mut out: Vec<SSElt> = queue.iter().map(Scaled::to_elt).collect();
    out.sort();
    Ok(out)
}

/// Orbit–stabilizer for the action on torus points: orbit size plus
/// generators and order of the stabilizer of `s` inside `⟨gens⟩` (whose
/// order is supplied).
fn point_stabilizer(
    w: &CoxGroup,
    gens: &[Perm],
    group_order: u128,
    s: &SSElt,
    budget: &Budget,
) -> Result<(usize, Vec<Perm>, u128)> {
    let ymats: Vec<Mat64> = gens.iter().map(|g| w.ymat_of(g)).collect();
    let start = Scaled::from_elt(s);
    let mut orbit: Vec<Scaled> = vec![start.clone()];
    let mut transv: Vec<Perm> = vec![w.identity()];
    let mut pos: FxHashMap<Scaled, usize> = FxHashMap::default();
    pos.insert(start, 0);
    let mut schreier: Vec<Perm> = Vec::new();
    let mut head = 0;
    while head < orbit.len() {
        if orbit.len() as u64 > budget.max_elements {
            return Err(Error::BudgetExceeded { what: "torus orbit", limit: budget.max_elements });
        }
        let cur = orbit[head].clone();
        for (g, m) in gens.iter().zip(&ymats) {
            let im = cur.apply_mat(m);
            match pos.get(&im) {
                None => {
                    pos.insert(im.clone(), orbit.len());
                    orbit.push(im);
                    transv.push(g.compose(&transv[head]));
                }
                Some(&k) => {
                    let sg = transv[k].inverse().compose(&g.compose(&transv[head]));
                    if !sg.is_identity() {
                        schreier.push(sg);
                    }
                }
            }
        }
        head += 1;
    }
    let target = group_order / orbit.len() as u128;
    let mut bsgs = Bsgs::from_generators(w.degree(), &[]);
    let mut out_gens = Vec::new();
    for sg in schreier {
        if bsgs.order() == target {
            break;
        }
        if !bsgs.contains(&sg) {
            bsgs.extend(sg.clone());
            out_gens.push(sg);
        }
    }
    debug_assert_eq!(bsgs.order(), target);
    Ok((orbit.len(), out_gens, target))
}

// ---------------------------------------------------------------------------
// Algebraic centre
// ---------------------------------------------------------------------------

/// The centre of the reductive group attached to a reflection subgroup:
/// a basis of Y(Z⁰), a complement lattice, and representatives of the
/// component group Z/Z⁰ inside the complement torus.
pub struct CentreData {
    pub z0: IntMat,
    pub complement: IntMat,
    pub az: Vec<SSElt>,
}

pub fn algebraic_centre(h: &ReflSubgroup) -> Result<CentreData> {
    let w = &h.parent;
    let rank = w.rank;
    let rows: Vec<Vec<i64>> = h.simples.iter().map(|&i| w.roots_x[i].clone()).collect();
    let a = IntMat::from_rows(&rows);
    let z0 = if h.simples.is_empty() { IntMat::identity(rank) } else { integer_kernel(&a) };
    let complement = lattice_complement(&z0, rank)?;
    // Torsion solutions of P·t ≡ 0 (mod 1) on the complement torus,
    // where P[i][k] = ⟨αᵢ, c_k⟩.
    let m = complement.rows;
    let mut p = IntMat::zeros(h.simples.len(), m);
    for (i, row) in rows.iter().enumerate() {
        for k in 0..m {
            let dot: BigInt = (0..rank).map(|c| &complement[(k, c)] * row[c]).sum();
            p[(i, k)] = dot;
        }
    }
    let (d, _, q, _) = snf_with_qinv(&p);
    let mut diag = Vec::new();
    for i in 0..m {
        let di = if i < p.rows { d[(i, i)].clone() } else { BigInt::zero() };
        if di.is_zero() {
            return Err(Error::Dimension("complement pairing not of full rank".into()));
        }
        diag.push(u64::try_from(&di).expect("small invariant factor"));
    }
    // u ranges over ∏ (1/dᵢ)ℤ/ℤ; t = Q·u; s = Σ t_k·c_k.
    let mut az = Vec::new();
    let mut counters = vec![0u64; m];
    'outer: loop {
        let u: Vec<Rat> =
            counters.iter().zip(&diag).map(|(&c, &di)| Rat::new(c.into(), di.into())).collect();
        let t: Vec<Rat> = (0..m)
            .map(|k| {
                let mut acc = Rat::zero();
                for (j, uj) in u.iter().enumerate() {
                    acc += Rat::from_integer(q[(k, j)].clone()) * uj;
                }
                acc
            })
            .collect();
        let coords: Vec<Rat> = (0..rank)
            .map(|c| {
                let mut acc = Rat::zero();
                for (k, tk) in t.iter().enumerate() {
                    acc += Rat::from_integer(complement[(k, c)].clone()) * tk;
                }
                acc
            })
            .collect();
        az.push(SSElt::new(coords));
        let mut i = 0;
        loop {
            if i == m {
                break 'outer;
            }
            counters[i] += 1;
            if counters[i] < diag[i] {
                break;
            }
            counters[i] = 0;
            i += 1;
        }
    }
    az.sort();
    az.dedup();
    Ok(CentreData { z0, complement, az })
}

// ---------------------------------------------------------------------------
// Torsion subgroups of subtori
// ---------------------------------------------------------------------------

/// The subgroup of elements of order dividing `n` in the subtorus with
/// the given Y-basis: generated by the basis rows scaled by 1/n.
pub struct SSGroup {
    pub generators: Vec<SSElt>,
}

pub fn semisimple_subgroup(rank: usize, basis: &IntMat, n: u64) -> SSGroup {
    assert_eq!(basis.cols, rank);
    let generators = (0..basis.rows)
        .map(|i| {
            SSElt::new((0..rank).map(|c| Rat::new(basis[(i, c)].clone(), n.into())).collect())
        })
        .collect();
    SSGroup { generators }
}

impl SSGroup {
    /// All distinct sums of the generators, sorted.
    pub fn enumerate(&self) -> Vec<SSElt> {
        let Some(first) = self.generators.first() else {
            return vec![];
        };
        let rank = first.rank();
        let mut seen: FxHashSet<SSElt> = FxHashSet::default();
        seen.insert(SSElt::zero(rank));
        let mut queue = vec![SSElt::zero(rank)];
        let mut head = 0;
        while head < queue.len() {
            let cur = queue[head].clone();
            for g in &self.generators {
                let next = cur.multiply(g);
                if seen.insert(next.clone()) {
                    queue.push(next);
                }
            }
            head += 1;
        }
        queue.sort();
        queue
    }
}

// ---------------------------------------------------------------------------
// Centralizers of torus points
// ---------------------------------------------------------------------------

/// `C_G(s)` as an extended reflection group: the Weyl group of the
/// identity component plus the diagram automorphisms induced on it by
/// the component group.
pub struct ExtRefGroup {
    /// Weyl group of C⁰(s): reflections of the roots vanishing on s.
    pub group: ReflSubgroup,
    /// Coset representatives of the full stabilizer modulo the
    /// reflection part that preserve the canonical simple system.
    pub aut_elements: Vec<Perm>,
    /// Their action on the subsystem's simples (0-based index maps).
    pub aut_maps: Vec<Vec<usize>>,
    pub stabilizer_order: u128,
}

impl ExtRefGroup {
    pub fn automorphism_group_order(&self) -> u128 {
        self.stabilizer_order / self.group.order
    }
}

/// Positive roots of `h` vanishing on `s` (0-based parent indices).
fn vanishing_roots(h: &ReflSubgroup, s: &SSElt) -> Vec<usize> {
    h.pos_roots
        .iter()
        .copied()
        .filter(|&i| root_pairing(&h.parent, i, s).is_zero())
        .collect()
}

/// Generators and order of the full stabilizer of `s` in the Weyl group
/// of `h`, computed through the stabilizer of the vanishing root set.
fn full_stabilizer(h: &ReflSubgroup, s: &SSElt, budget: &Budget) -> Result<(Vec<Perm>, u128)> {
    let w = &h.parent;
    let vanish = vanishing_roots(h, s);
    let set: u128 = vanish.iter().fold(0u128, |acc, &i| acc | (1u128 << i));
    let (_, mut n_gens, n_order) = set_stabilizer_in(w, &h.gen_perms, h.order, set, budget)?;
    for &i in &vanish {
        n_gens.push(w.reflection_perm(i).clone());
    }
    let (_, mut stab_gens, stab_order) = point_stabilizer(w, &n_gens, n_order, s, budget)?;
    for &i in &vanish {
        stab_gens.push(w.reflection_perm(i).clone());
    }
    Ok((stab_gens, stab_order))
}

/// Orbit of a folded root set under a subgroup with known order;
/// returns (orbit, stabilizer generators, stabilizer order).
fn set_stabilizer_in(
    w: &CoxGroup,
    gens: &[Perm],
    group_order: u128,
    set: u128,
    budget: &Budget,
) -> Result<(Vec<u128>, Vec<Perm>, u128)> {
    let mut orbit: Vec<u128> = vec![set];
    let mut transv: Vec<Perm> = vec![w.identity()];
    let mut pos: FxHashMap<u128, usize> = FxHashMap::default();
    pos.insert(set, 0);
    let mut head = 0;
    let mut schreier: Vec<Perm> = Vec::new();
    while head < orbit.len() {
        if orbit.len() as u64 > budget.max_elements {
            return Err(Error::BudgetExceeded {
                what: "root-set orbit",
                limit: budget.max_elements,
            });
        }
        let cur = orbit[head];
        for g in gens {
            let im = act_posset(w, g, cur);
            match pos.get(&im) {
                None => {
                    pos.insert(im, orbit.len());
                    orbit.push(im);
                    transv.push(g.compose(&transv[head]));
                }
                Some(&k) => {
                    let sg = transv[k].inverse().compose(&g.compose(&transv[head]));
                    if !sg.is_identity() {
                        schreier.push(sg);
                    }
                }
            }
        }
        head += 1;
    }
    let target = group_order / orbit.len() as u128;
    let mut bsgs = Bsgs::from_generators(w.degree(), &[]);
    let mut out = Vec::new();
    for sg in schreier {
        if bsgs.order() == target {
            break;
        }
        if !bsgs.contains(&sg) {
            bsgs.extend(sg.clone());
            out.push(sg);
        }
    }
    debug_assert_eq!(bsgs.order(), target);
    Ok((orbit, out, target))
}

/// Full centralizer of `s` in the ambient group, as an extended
/// reflection group.
pub fn semisimple_centralizer(
    g: &Arc<CoxGroup>,
    s: &SSElt,
    budget: &Budget,
) -> Result<ExtRefGroup> {
    let whole = g.as_subgroup();
    let (stab_gens, stab_order) = full_stabilizer(&whole, s, budget)?;
    let vanish = vanishing_roots(&whole, s);
    let group = g.reflection_subgroup0(&vanish);
    if stab_order == group.order {
        return Ok(ExtRefGroup {
            group,
            aut_elements: vec![],
            aut_maps: vec![],
            stabilizer_order: stab_order,
        });
    }
    // Enumerate the stabilizer and keep one positivity-preserving
    // representative per coset of the reflection part.
    let stab = crate::perm::enumerate_group(g.degree(), &stab_gens, budget)?;
    debug_assert_eq!(stab.len() as u128, stab_order);
    let mut auts: FxHashMap<Vec<usize>, Perm> = FxHashMap::default();
    for x in &stab.elements {
        let adjusted = adjust_to_simples(&group, x);
        let map: Vec<usize> = group
            .simples
            .iter()
            .map(|&r| {
                let im = adjusted.apply(r);
                group.simples.iter().position(|&t| t == im).expect("maps simples to simples")
            })
            .collect();
        auts.entry(map).or_insert(adjusted);
    }
    debug_assert_eq!(auts.len() as u128, stab_order / group.order);
    let mut pairs: Vec<(Vec<usize>, Perm)> = auts.into_iter().collect();
    pairs.sort();
    let identity_map: Vec<usize> = (0..group.simples.len()).collect();
    let mut aut_maps = Vec::new();
    let mut aut_elements = Vec::new();
    for (map, elt) in pairs {
        if map == identity_map {
            continue;
        }
        aut_maps.push(map);
        aut_elements.push(elt);
    }
    Ok(ExtRefGroup { group, aut_elements, aut_maps, stabilizer_order: stab_order })
}

/// Left-multiply by subsystem simple reflections until the element maps
/// the subsystem's positives to positives (hence simples to simples).
fn adjust_to_simples(h: &ReflSubgroup, x: &Perm) -> Perm {
    let w = &h.parent;
    let pos_set: FxHashSet<usize> = h.pos_roots.iter().copied().collect();
    let mut cur = x.clone();
    loop {
        let cur_inv = cur.inverse();
        // a canonical simple not in the image of the positive system
        match h.simples.iter().copied().find(|&b| !pos_set.contains(&cur_inv.apply(b))) {
            None => return cur,
            Some(b) => cur = w.reflection_perm(b).compose(&cur),
        }
    }
}

// ---------------------------------------------------------------------------
// Quasi-isolated elements
// ---------------------------------------------------------------------------

/// Dimension of the common fixed space of a set of Y-matrices.
fn fixed_space_dim(rank: usize, mats: &[Mat64]) -> usize {
    if mats.is_empty() {
        return rank;
    }
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for m in mats {
        for i in 0..rank {
            let mut row = m[i].clone();
            row[i] -= 1;
            rows.push(row);
        }
    }
    rank - IntMat::from_rows(&rows).rank()
}

/// `s` is quasi-isolated in `h` iff the full stabilizer of `s` in the
/// Weyl group of `h` has the same fixed space on Y⊗ℚ as the whole Weyl
/// group of `h`.
pub fn is_quasi_isolated(h: &ReflSubgroup, s: &SSElt, budget: &Budget) -> Result<bool> {
    let w = &h.parent;
    let whole_dim = fixed_space_dim(w.rank, &h.gen_ymats);
    let vanish = vanishing_roots(h, s);
    let refl_mats: Vec<Mat64> = vanish
        .iter()
        .map(|&i| {
            let mut m = mat64_identity(w.rank);
            for (r, row) in m.iter_mut().enumerate() {
                for (c, v) in row.iter_mut().enumerate() {
                    *v -= w.coroots_y[i][r] * w.roots_x[i][c];
                }
            }
            m
        })
        .collect();
    // The reflection part alone can already pin the fixed space down.
    if fixed_space_dim(w.rank, &refl_mats) == whole_dim {
        return Ok(true);
    }
    let (stab_gens, _) = full_stabilizer(h, s, budget)?;
    let mut mats: Vec<Mat64> = stab_gens.iter().map(|g| w.ymat_of(g)).collect();
    mats.extend(refl_mats);
    Ok(fixed_space_dim(w.rank, &mats) == whole_dim)
}

/// Coxeter number: one plus the maximal root height.
pub fn coxeter_number(w: &CoxGroup) -> u64 {
    (0..w.n_pos).map(|i| w.system.height(i)).max().unwrap_or(0) as u64 + 1
}

/// Torsion points of order dividing `n` restricted to the closed
/// fundamental alcove.
fn alcove_candidates(w: &CoxGroup, n: u64) -> Result<Vec<SSElt>> {
    let rank = w.rank;
    let nn = n as i64;
    let is_adjoint_like = w.n_gens == rank
        && (0..w.n_gens).all(|i| (0..rank).all(|c| w.roots_x[i][c] == i64::from(i == c)));
    if is_adjoint_like {
        // Simple-root pairings are the coordinates: enumerate the alcove
        // simplex directly, by component: aᵢ ≥ 0 and Σ cᵢaᵢ ≤ n with c
        // the highest-root coordinates.
        let comps = crate::rootsys::diagram_components(&w.cartan);
        let mut marks = vec![0i64; rank];
        for nodes in &comps {
            let hi = crate::rootsys::highest_root(&w.system, nodes);
            for (j, &c) in w.system.roots[hi].iter().enumerate() {
                if c != 0 {
                    marks[j] = c;
                }
            }
        }
        fn rec(
            a: &mut Vec<i64>,
            i: usize,
            marks: &[i64],
            comps: &[Vec<usize>],
            nn: i64,
            out: &mut Vec<SSElt>,
        ) {
            if i == a.len() {
                out.push(SSElt::new(a.iter().map(|&x| Rat::new(x.into(), nn.into())).collect()));
                return;
            }
            for v in 0..=nn {
                a[i] = v;
                let ok = comps.iter().all(|nodes| {
                    nodes.iter().map(|&j| if j <= i { marks[j] * a[j] } else { 0 }).sum::<i64>()
                        <= nn
                });
                if ok {
                    rec(a, i + 1, marks, comps, nn, out);
                }
            }
            a[i] = 0;
        }
        let mut out = Vec::new();
        rec(&mut vec![0i64; rank], 0, &marks, &comps, nn, &mut out);
        return Ok(out);
    }
    // General path: enumerate all points with denominator n and reduce
    // each into the closed alcove by affine descent.
    let total = (n as u128).pow(rank as u32);
    if total > 4_000_000 {
        return Err(Error::BudgetExceeded { what: "torsion candidates", limit: 4_000_000 });
    }
    let comps = crate::rootsys::diagram_components(&w.cartan);
    let highest: Vec<usize> =
        comps.iter().map(|nodes| crate::rootsys::highest_root(&w.system, nodes)).collect();
    let mut out = FxHashSet::default();
    let mut counters = vec![0i64; rank];
    'outer: loop {
        let mut u: Vec<Rat> = counters.iter().map(|&c| Rat::new(c.into(), nn.into())).collect();
        let mut steps = 0;
        loop {
            steps += 1;
            assert!(steps < 100_000, "alcove reduction failed to terminate");
            let mut changed = false;
            for i in 0..w.n_gens {
                let pairing: Rat = w.roots_x[i]
                    .iter()
                    .zip(&u)
                    .map(|(&a, x)| Rat::from_integer(a.into()) * x)
                    .sum();
                if pairing.is_negative() {
                    for (c, uc) in u.iter_mut().enumerate() {
                        *uc -= &pairing * Rat::from_integer(w.coroots_y[i][c].into());
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            let mut wrapped = false;
            for &hi in &highest {
                let pairing: Rat = w.roots_x[hi]
                    .iter()
                    .zip(&u)
                    .map(|(&a, x)| Rat::from_integer(a.into()) * x)
                    .sum();
                if pairing > Rat::one() {
                    let excess = &pairing - Rat::one();
                    for (c, uc) in u.iter_mut().enumerate() {
                        *uc -= &excess * Rat::from_integer(w.coroots_y[hi][c].into());
                    }
                    wrapped = true;
                }
            }
            if !wrapped {
                break;
            }
        }
        out.insert(SSElt::new(u));
        let mut i = 0;
        loop {
            if i == rank {
                break 'outer;
            }
            counters[i] += 1;
            if counters[i] < nn {
                break;
            }
            counters[i] = 0;
            i += 1;
        }
    }
    let mut v: Vec<SSElt> = out.into_iter().collect();
    v.sort();
    Ok(v)
}

/// One representative per W-orbit of quasi-isolated torsion points,
/// paired with the orbit size.  Representatives are the least points of
/// their orbits; the list is sorted by (orbit size, representative).
pub fn quasi_isolated_representatives(
    g: &Arc<CoxGroup>,
    budget: &Budget,
) -> Result<Vec<(SSElt, usize)>> {
    let h = coxeter_number(g);
    let whole = g.as_subgroup();
    let mut candidates: FxHashSet<SSElt> = FxHashSet::default();
    for d in 1..=h {
        for cand in alcove_candidates(g, d)? {
            candidates.insert(cand);
        }
    }
    let mut sorted: Vec<SSElt> = candidates.into_iter().collect();
    sorted.sort();
    let flags = par::map_vec(&sorted, |s| is_quasi_isolated(&whole, s, budget));
    let mut assigned: FxHashSet<SSElt> = FxHashSet::default();
    let mut reps = Vec::new();
    for (s, flag) in sorted.iter().zip(flags) {
        if assigned.contains(s) {
            continue;
        }
        if !flag? {
            continue;
        }
        let orb = orbit(g, s, budget)?;
        let rep = orb.first().expect("orbit nonempty").clone();
        let size = orb.len();
        for x in orb {
            assigned.insert(x);
        }
        reps.push((rep, size));
    }
    reps.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(reps)
}

// ---------------------------------------------------------------------------
// Centralizer types from the extended diagram
// ---------------------------------------------------------------------------

/// One reflection subgroup per W-conjugacy class of subsystems generated
/// by subsets of the extended Dynkin diagram; for `p > 0` only those
/// whose simple-root coordinate matrix has all Smith normal form
/// diagonal entries zero or coprime to `p`.
pub fn centralizer_class_representatives(
    w: &Arc<CoxGroup>,
    p: u64,
    budget: &Budget,
) -> Result<Vec<ReflSubgroup>> {
    if w.ctype.len() != 1 {
        return Err(Error::NotIrreducible);
    }
    if w.n_gens >= 8 && !budget.extended {
        return Err(Error::BudgetExceeded { what: "extended-diagram classification", limit: 0 });
    }
    let ext: Vec<usize> = {
        let mut e: Vec<usize> = (0..w.n_gens).collect();
        let hi = crate::rootsys::highest_root(&w.system, &(0..w.n_gens).collect::<Vec<_>>());
        e.push(w.system.negative_of(hi));
        e
    };
    // Subsystems from all node subsets: dedupe by root set first, then
    // by W-conjugacy via canonical (minimal) orbit forms.
    let mut by_set: FxHashMap<u128, ReflSubgroup> = FxHashMap::default();
    for mask in 0u32..(1u32 << ext.len()) {
        let subset: Vec<usize> = ext
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &r)| r)
            .collect();
        let sub = w.reflection_subgroup0(&subset);
        by_set.entry(sub.pos_bitset()).or_insert(sub);
    }
    let mut subs: Vec<(u128, ReflSubgroup)> = by_set.into_iter().collect();
    subs.sort_by_key(|(set, _)| *set);
    let canon_forms = par::map_vec(&subs, |(set, _)| canonical_set_form(w, *set, budget));
    let mut classes: FxHashMap<u128, ReflSubgroup> = FxHashMap::default();
    for ((_, sub), canon) in subs.into_iter().zip(canon_forms) {
        classes.entry(canon?).or_insert(sub);
    }
    let mut reps: Vec<(u128, ReflSubgroup)> = classes.into_iter().collect();
    reps.sort_by_key(|(c, _)| *c);
    let mut out = Vec::new();
    for (_, sub) in reps {
        if p > 0 && !passes_torsion_filter(w, &sub, p) {
            continue;
        }
        out.push(sub);
    }
    out.sort_by(|a, b| {
        (b.n_gens(), a.isomorphism_type()).cmp(&(a.n_gens(), b.isomorphism_type()))
    });
    Ok(out)
}

/// Minimal folded root set in the W-orbit.
fn canonical_set_form(w: &CoxGroup, set: u128, budget: &Budget) -> Result<u128> {
    let mut seen: FxHashSet<u128> = FxHashSet::default();
    seen.insert(set);
    let mut queue = vec![set];
    let mut head = 0;
    let mut min = set;
    while head < queue.len() {
        if queue.len() as u64 > budget.max_elements {
            return Err(Error::BudgetExceeded {
                what: "root-set orbit",
                limit: budget.max_elements,
            });
        }
        let cur = queue[head];
        for g in &w.gen_perms {
            let im = act_posset(w, g, cur);
            if seen.insert(im) {
                if im < min {
                    min = im;
                }
                queue.push(im);
            }
        }
        head += 1;
    }
    Ok(min)
}

/// All Smith normal form diagonal entries of the simple-root coordinate
/// matrix must be zero or coprime to p.
fn passes_torsion_filter(w: &CoxGroup, sub: &ReflSubgroup, p: u64) -> bool {
    if sub.simples.is_empty() {
        return true;
    }
    let rows: Vec<Vec<i64>> = sub.simples.iter().map(|&i| w.system.roots[i].clone()).collect();
    let diag = crate::exactlin::snf_diagonal(&IntMat::from_rows(&rows));
    diag.iter().all(|d| d.is_zero() || !(d % BigInt::from(p)).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{hermite_normal_form, rat};
    use crate::rootsys::{CartanType, Isogeny, RootDatum};

    fn group(name: &str) -> Arc<CoxGroup> {
        CoxGroup::from_type(&CartanType::parse(name).unwrap(), Isogeny::Adjoint).unwrap()
    }

    fn elt(coords: &[(i64, i64)]) -> SSElt {
        SSElt::new(coords.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn elt_arithmetic_and_order() {
        let z = SSElt::zero(6);
        assert_eq!(z.order(), 1);
        let s = elt(&[(0, 1), (0, 1), (0, 1), (1, 3), (0, 1), (0, 1)]);
        assert_eq!(s.order(), 3);
        assert_eq!(s.to_string(), "<0,0,0,1/3,0,0>");
        let sq = s.multiply(&s);
        assert_eq!(sq.to_string(), "<0,0,0,2/3,0,0>");
        assert!(s.multiply(&sq).is_zero());
        assert_eq!(s.power(3), SSElt::zero(6));
        assert_eq!(s.power(-1), sq);
    }

    #[test]
    fn weyl_act_is_action() {
        let w = group("A2");
        let s = elt(&[(1, 3), (2, 3)]);
        let budget = Budget::default();
        let els = w.elements(&budget).unwrap();
        for x in els.elements.iter() {
            for y in els.elements.iter().take(3) {
                let xy = x.compose(y);
                let a = weyl_act(&w, &xy, &s);
                let b = weyl_act(&w, x, &weyl_act(&w, y, &s));
                assert_eq!(a, b);
            }
        }
        assert_eq!(weyl_act(&w, &w.identity(), &s), s);
    }

    #[test]
    fn pairing_equivariance() {
        let w = group("B2");
        let s = elt(&[(1, 4), (3, 4)]);
        for x in w.elements(&Budget::default()).unwrap().elements.iter() {
            let xs = weyl_act(&w, x, &s);
            let xinv = x.inverse();
            for r in 0..w.system.count() {
                let lhs = root_pairing(&w, r, &xs);
                let rhs = root_pairing(&w, xinv.apply(r), &s);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn centre_of_e6_levi() {
        let e6 = group("E6");
        let m = e6.reflection_subgroup(&[1, 3, 5, 6]);
        let centre = algebraic_centre(&m).unwrap();
        let expect = hermite_normal_form(&IntMat::from_rows(&[
            vec![0, 1, 0, -1, 0, 0],
            vec![0, 0, 0, 1, 0, 0],
        ]));
        assert_eq!(hermite_normal_form(&centre.z0), expect);
        for az in &centre.az {
            for &r in &m.pos_roots {
                assert!(root_pairing(&e6, r, az).is_zero());
            }
        }
    }

    #[test]
    fn centre_of_adjoint_and_sc() {
        let e6 = group("E6");
        let full = e6.as_subgroup();
        let c = algebraic_centre(&full).unwrap();
        assert_eq!(c.z0.rows, 0);
        assert_eq!(c.az.len(), 1);
        assert!(c.az[0].is_zero());
        let sl3 = CoxGroup::build(RootDatum::preset(
            &CartanType::parse("A2").unwrap(),
            Isogeny::SimplyConnected,
        ))
        .unwrap();
        let c3 = algebraic_centre(&sl3.as_subgroup()).unwrap();
        assert_eq!(c3.az.len(), 3);
    }

    #[test]
    fn subgroup_enumeration_counts() {
        let e6 = group("E6");
        let m = e6.reflection_subgroup(&[1, 3, 5, 6]);
        let centre = algebraic_centre(&m).unwrap();
        let z3 = semisimple_subgroup(6, &centre.z0, 3);
        let els = z3.enumerate();
        assert_eq!(els.len(), 9);
        assert!(els.iter().all(|s| s.power(3).is_zero()));
        let z1 = semisimple_subgroup(6, &centre.z0, 1);
        assert_eq!(z1.enumerate().len(), 1);
    }

    #[test]
    fn orbit_sizes_divide() {
        let w = group("A2");
        let budget = Budget::default();
        for s in [elt(&[(1, 2), (0, 1)]), elt(&[(1, 3), (2, 3)]), SSElt::zero(2)] {
            let orb = orbit(&w, &s, &budget).unwrap();
            let (size, _, stab) = point_stabilizer(&w, &w.gen_perms, w.order, &s, &budget).unwrap();
            assert_eq!(size, orb.len());
            assert_eq!(size as u128 * stab, w.order);
        }
    }

    #[test]
    fn identity_is_quasi_isolated() {
        let w = group("A2");
        let whole = w.as_subgroup();
        let budget = Budget::default();
        assert!(is_quasi_isolated(&whole, &SSElt::zero(2), &budget).unwrap());
    }

    #[test]
    fn sc_a1_has_isolated_involution() {
        let sl2 = CoxGroup::build(RootDatum::preset(
            &CartanType::parse("A1").unwrap(),
            Isogeny::SimplyConnected,
        ))
        .unwrap();
        let budget = Budget::default();
        let reps = quasi_isolated_representatives(&sl2, &budget).unwrap();
        let orders: Vec<u64> = reps.iter().map(|(s, _)| s.order()).collect();
        assert!(orders.contains(&1));
        assert!(orders.contains(&2));
    }

    #[test]
    fn centralizer_of_identity() {
        let w = group("A2");
        let budget = Budget::default();
        let ext = semisimple_centralizer(&w, &SSElt::zero(2), &budget).unwrap();
        assert_eq!(ext.group.order, 6);
        assert_eq!(ext.automorphism_group_order(), 1);
        assert!(ext.aut_maps.is_empty());
    }

    #[test]
    fn generic_point_stabilizer_in_a2() {
        let w = group("A2");
        let budget = Budget::default();
        let s = elt(&[(1, 7), (2, 7)]);
        let ext = semisimple_centralizer(&w, &s, &budget).unwrap();
        // brute force over all six elements
        let els = w.elements(&budget).unwrap();
        let brute = els.elements.iter().filter(|x| weyl_act(&w, x, &s) == s).count();
        assert_eq!(ext.stabilizer_order, brute as u128);
        assert_eq!(ext.group.order, 1);
    }

    #[test]
    fn f4_extended_types_and_filter() {
        let f4 = group("F4");
        let budget = Budget::default();
        let all = centralizer_class_representatives(&f4, 0, &budget).unwrap();
        let types: Vec<String> = all.iter().map(|s| s.isomorphism_type()).collect();
        assert!(types.contains(&"A2+~A2".to_string()));
        assert!(types.contains(&"B4".to_string()));
        assert!(types.contains(&"F4".to_string()));
        let p2 = centralizer_class_representatives(&f4, 2, &budget).unwrap();
        let t2: Vec<String> = p2.iter().map(|s| s.isomorphism_type()).collect();
        assert!(t2.contains(&"A2+~A2".to_string()));
        let p3 = centralizer_class_representatives(&f4, 3, &budget).unwrap();
        let t3: Vec<String> = p3.iter().map(|s| s.isomorphism_type()).collect();
        assert!(!t3.contains(&"A2+~A2".to_string()));
        // Independent dedup oracle at p = 0: pairwise conjugacy of the
        // subset-generated root sets by scanning the whole group.
        let els = f4.elements(&budget).unwrap();
        let ext: Vec<usize> = {
            let mut e: Vec<usize> = (0..4).collect();
            let hi = crate::rootsys::highest_root(&f4.system, &[0, 1, 2, 3]);
            e.push(f4.system.negative_of(hi));
            e
        };
        let mut sets: Vec<u128> = Vec::new();
        for mask in 0u32..(1 << 5) {
            let subset: Vec<usize> = ext
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, &r)| r)
                .collect();
            let sub = f4.reflection_subgroup0(&subset);
            let set = sub.pos_bitset();
            if !sets.contains(&set) {
                sets.push(set);
            }
        }
        let mut class_reps: Vec<u128> = Vec::new();
        for &set in &sets {
            let conjug = class_reps.iter().any(|&rep| {
                els.elements.iter().any(|x| act_posset(&f4, x, set) == rep)
            });
            if !conjug {
                class_reps.push(set);
            }
        }
        assert_eq!(all.len(), class_reps.len());
    }

    #[test]
    fn e8_requires_extended_budget() {
        let e8 = group("E8");
        let budget = Budget::default();
        assert!(matches!(
            centralizer_class_representatives(&e8, 0, &budget),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn quasi_isolated_constant_on_orbits() {
        let w = group("A2");
        let whole = w.as_subgroup();
        let budget = Budget::default();
        for s in [elt(&[(1, 3), (1, 3)]), elt(&[(1, 2), (0, 1)])] {
            let flag = is_quasi_isolated(&whole, &s, &budget).unwrap();
            for x in orbit(&w, &s, &budget).unwrap() {
                assert_eq!(is_quasi_isolated(&whole, &x, &budget).unwrap(), flag);
            }
        }
    }
}
