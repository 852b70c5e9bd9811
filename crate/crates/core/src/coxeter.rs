//! Weyl groups as permutation groups on their roots.
//!
//! Elements are permutations of the root indices `0..2N`; the i-th
//! generator both permutes roots and acts on Y(T) by an integer matrix.
//! Generator labels and root indices are 1-based at the public surface,
//! matching the usual numbering of diagrams; internals are 0-based.

use std::sync::{Arc, OnceLock};

use rustc_hash::{FxHashMap, FxHashSet};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactlin::{mat64_identity, mat64_mul, Mat64};
use crate::par;
use crate::perm::{enumerate_group, Bsgs, GroupList, Perm};
use crate::rootsys::{
    classify_cartan, enumerate_roots, symmetrizer, CartanType, RootDatum, RootSystem, SimpleType,
};

/// Word in the generators, 1-based labels.
pub type Word = Vec<usize>;

/// A finite Weyl group, realized on its root system.
pub struct CoxGroup {
    pub datum: RootDatum,
    pub cartan: Vec<Vec<i64>>,
    pub system: RootSystem,
    /// Number of simple reflections.
    pub n_gens: usize,
    /// Rank of Y(T).
    pub rank: usize,
    /// Number of positive roots.
    pub n_pos: usize,
    pub gen_perms: Vec<Perm>,
    pub gen_ymats: Vec<Mat64>,
    /// X(T)-coordinates of every root.
    pub roots_x: Vec<Vec<i64>>,
    /// Y(T)-coordinates of every coroot.
    pub coroots_y: Vec<Vec<i64>>,
    /// Classified type with diagram node sets (0-based).
    pub ctype: Vec<(SimpleType, Vec<usize>)>,
    pub order: u128,
    root_norms: Vec<i64>,
    longest: OnceLock<Perm>,
    reflections: OnceLock<Vec<Perm>>,
    elements: OnceLock<Arc<GroupList>>,
}

impl CoxGroup {
    pub fn build(datum: RootDatum) -> Result<Arc<CoxGroup>> {
        let cartan = datum.cartan();
        let ctype = classify_cartan(&cartan)?;
        let system = enumerate_roots(&cartan)?;
        let n_gens = datum.semisimple_rank();
        let rank = datum.rank();
        let n_pos = system.n_pos;
        let count = system.count();

        let r64 = datum.r.to_i64_rows();
        let rv64 = datum.rv.to_i64_rows();
        let roots_x: Vec<Vec<i64>> = system
            .roots
            .iter()
            .map(|coords| {
                (0..rank)
                    .map(|c| (0..n_gens).map(|j| coords[j] * r64[j][c]).sum())
                    .collect()
            })
            .collect();
        let coroots_y: Vec<Vec<i64>> = system
            .coroots
            .iter()
            .map(|coords| {
                (0..rank)
                    .map(|c| (0..n_gens).map(|j| coords[j] * rv64[j][c]).sum())
                    .collect()
            })
            .collect();

        let mut gen_perms = Vec::with_capacity(n_gens);
        for i in 0..n_gens {
            let mut img = vec![0u16; count];
            for (k, coords) in system.roots.iter().enumerate() {
                let pairing: i64 = (0..n_gens).map(|j| coords[j] * cartan[j][i]).sum();
                let mut b = coords.clone();
                b[i] -= pairing;
                img[k] = system.index_of(&b).expect("reflection closes the system") as u16;
            }
            gen_perms.push(Perm::from_images(img));
        }

        let mut gen_ymats = Vec::with_capacity(n_gens);
        for i in 0..n_gens {
            let mut m = mat64_identity(rank);
            for (a, row) in m.iter_mut().enumerate() {
                for (b, v) in row.iter_mut().enumerate() {
                    *v -= rv64[i][a] * r64[i][b];
                }
            }
            gen_ymats.push(m);
        }

        let order = ctype.iter().map(|(t, _)| t.group_order()).product();
        let sym = symmetrizer(&cartan);
        let root_norms: Vec<i64> = system
            .roots
            .iter()
            .map(|a| {
                let mut s = 0i64;
                for (i, &ai) in a.iter().enumerate() {
                    for (j, &aj) in a.iter().enumerate() {
                        s += ai * aj * cartan[i][j] * sym[j];
                    }
                }
                s
            })
            .collect();

        Ok(Arc::new(CoxGroup {
            datum,
            cartan,
            system,
            n_gens,
            rank,
            n_pos,
            gen_perms,
            gen_ymats,
            roots_x,
            coroots_y,
            ctype,
            order,
            root_norms,
            longest: OnceLock::new(),
            reflections: OnceLock::new(),
            elements: OnceLock::new(),
        }))
    }

    pub fn from_type(t: &CartanType, isogeny: crate::rootsys::Isogeny) -> Result<Arc<CoxGroup>> {
        CoxGroup::build(RootDatum::preset(t, isogeny))
    }

    pub fn degree(&self) -> usize {
        self.system.count()
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree())
    }

    pub fn type_string(&self) -> String {
        iso_string(self.ctype.iter().map(|(t, _)| *t).collect())
    }

    /// ⟨root, coroot⟩ via X/Y coordinates, 0-based indices.
    pub fn pairing(&self, root: usize, coroot: usize) -> i64 {
        self.roots_x[root]
            .iter()
            .zip(&self.coroots_y[coroot])
            .map(|(&a, &b)| a * b)
            .sum()
    }

    /// Reflection along the root with 0-based index `i`; all reflection
    /// permutations are computed once and cached.
    pub fn reflection_perm(&self, i: usize) -> &Perm {
        let all = self.reflections.get_or_init(|| {
            (0..self.system.count())
                .map(|k| {
                    let mut img = vec![0u16; self.system.count()];
                    for (t, coords) in self.system.roots.iter().enumerate() {
                        // ⟨β, αₖ∨⟩ from root combinatorics: bᵀ·C·(coroot of k)
                        let pair: i64 = (0..self.n_gens)
                            .map(|a| {
                                coords[a]
                                    * (0..self.n_gens)
                                        .map(|b| self.cartan[a][b] * self.system.coroots[k][b])
                                        .sum::<i64>()
                            })
                            .sum();
                        let mut im = coords.clone();
                        for (c, v) in im.iter_mut().enumerate() {
                            *v -= pair * self.system.roots[k][c];
                        }
                        img[t] = self.system.index_of(&im).expect("closed") as u16;
                    }
                    Perm::from_images(img)
                })
                .collect()
        });
        &all[i]
    }

    pub fn is_long_root(&self, i: usize) -> bool {
        let max = self.root_norms.iter().copied().max().unwrap_or(0);
        self.root_norms[i] == max
    }

    pub fn has_two_lengths(&self) -> bool {
        let max = self.root_norms.iter().copied().max().unwrap_or(0);
        self.root_norms.iter().any(|&x| x != max)
    }

    // -- words, descents, lengths --------------------------------------

    pub fn length(&self, w: &Perm) -> usize {
        (0..self.n_pos).filter(|&i| w.apply(i) >= self.n_pos).count()
    }

    /// `s ∈ LeftDescentSet(w)` iff `w⁻¹(α_s)` is negative; 1-based labels.
    pub fn left_descent_set(&self, w: &Perm) -> Vec<usize> {
        let winv = w.inverse();
        (0..self.n_gens).filter(|&s| winv.apply(s) >= self.n_pos).map(|s| s + 1).collect()
    }

    pub fn first_left_descent(&self, w: &Perm) -> Option<usize> {
        let winv = w.inverse();
        (0..self.n_gens).find(|&s| winv.apply(s) >= self.n_pos).map(|s| s + 1)
    }

    pub fn element_of_word(&self, word: &[usize]) -> Perm {
        let mut acc = self.identity();
        for &l in word {
            assert!((1..=self.n_gens).contains(&l), "letter {l} out of range");
            acc = acc.compose(&self.gen_perms[l - 1]);
        }
        acc
    }

    /// Lexicographically first reduced word (repeated first left descent).
    pub fn reduced_word(&self, w: &Perm) -> Word {
        let mut word = Vec::new();
        let mut cur = w.clone();
        while let Some(s) = self.first_left_descent(&cur) {
            word.push(s);
            cur = self.gen_perms[s - 1].compose(&cur);
        }
        word
    }

    pub fn longest_element(&self) -> &Perm {
        self.longest.get_or_init(|| {
            let mut w = self.identity();
            loop {
                // extend by the first right ascent
                match (0..self.n_gens).find(|&s| w.apply(s) < self.n_pos) {
                    Some(s) => w = w.compose(&self.gen_perms[s]),
                    None => return w,
                }
            }
        })
    }

    /// Matrix of `w` on Y(T), folded along a reduced word.
    pub fn ymat_of(&self, w: &Perm) -> Mat64 {
        let mut acc = mat64_identity(self.rank);
        for &l in &self.reduced_word(w) {
            acc = mat64_mul(&acc, &self.gen_ymats[l - 1]);
        }
        acc
    }

    /// All group elements (breadth-first, identity first), cached after
    /// the first successful call.
    pub fn elements(&self, budget: &Budget) -> Result<Arc<GroupList>> {
        if let Some(e) = self.elements.get() {
            return Ok(e.clone());
        }
        if self.order > u128::from(budget.max_elements) {
            return Err(Error::BudgetExceeded {
                what: "group elements",
                limit: budget.max_elements,
            });
        }
        let list = enumerate_group(self.degree(), &self.gen_perms, budget)?;
        debug_assert_eq!(list.len() as u128, self.order);
        let _ = self.elements.set(Arc::new(list));
        Ok(self.elements.get().unwrap().clone())
    }

    /// Generator order for representative tie-breaks: the two color
    /// classes of the diagram, class of the lowest node first, ascending
    /// within each class.
    fn bipartite_rank(&self) -> Vec<usize> {
        let n = self.n_gens;
        let mut color = vec![u8::MAX; n];
        for comp_start in 0..n {
            if color[comp_start] != u8::MAX {
                continue;
            }
            color[comp_start] = 0;
            let mut stack = vec![comp_start];
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if i != j && self.cartan[i][j] != 0 && color[j] == u8::MAX {
                        color[j] = 1 - color[i];
                        stack.push(j);
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (color[i], i));
        let mut rank = vec![0usize; n];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        rank
    }
}

impl std::fmt::Debug for CoxGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CoxGroup({}, rank {})", self.type_string(), self.rank)
    }
}

pub(crate) fn iso_string(mut comps: Vec<SimpleType>) -> String {
    comps.sort_by(|a, b| {
        b.rank.cmp(&a.rank).then(a.family.cmp(&b.family)).then(a.short.cmp(&b.short))
    });
    if comps.is_empty() {
        return "T0".into(); // rank-0 subgroup: a torus
    }
    comps.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("+")
}

// ---------------------------------------------------------------------------
// Conjugacy classes
// ---------------------------------------------------------------------------

/// One (possibly twisted) conjugacy class.
#[derive(Debug, Clone)]
pub struct ClassData {
    /// Minimal-length representative word.
    pub rep_word: Word,
    pub rep: Perm,
    pub size: usize,
    /// Order of the representative as a group element.
    pub order: u64,
    pub min_length: usize,
    /// Ids (into the enumerated group) of all minimal-length members.
    pub min_length_ids: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct ClassInfo {
    pub classes: Vec<ClassData>,
}

impl CoxGroup {
    /// Conjugacy classes with minimal-length representatives; classes
    /// sorted by (representative length, representative word).
    pub fn conjugacy_classes(&self, budget: &Budget) -> Result<ClassInfo> {
        let sigma: Vec<usize> = (0..self.n_gens).collect();
        self.twisted_classes(&sigma, budget)
    }

    /// Partition of `{x·σ}` under `w·(xσ)·w⁻¹`, as orbits of
    /// `x ↦ s·x·σ(s)`.  `sigma` is a 0-based generator relabel (identity
    /// for ordinary conjugacy).
    pub(crate) fn twisted_classes(&self, sigma: &[usize], budget: &Budget) -> Result<ClassInfo> {
        let els = self.elements(budget)?;
        let n = els.len();
        let mut class_of = vec![u32::MAX; n];
        let mut classes_ids: Vec<Vec<u32>> = Vec::new();
        for start in 0..n as u32 {
            if class_of[start as usize] != u32::MAX {
                continue;
            }
            let cid = classes_ids.len() as u32;
            let mut ids = vec![start];
            class_of[start as usize] = cid;
            let mut head = 0;
            while head < ids.len() {
                let x = &els.elements[ids[head] as usize];
                for s in 0..self.n_gens {
                    let y = self.gen_perms[s].compose(&x.compose(&self.gen_perms[sigma[s]]));
                    let yid = els.id_of(&y).expect("closed under conjugation");
                    if class_of[yid as usize] == u32::MAX {
                        class_of[yid as usize] = cid;
                        ids.push(yid);
                    }
                }
                head += 1;
            }
            classes_ids.push(ids);
        }

        let lengths: Vec<usize> = par::map_vec(&els.elements, |w| self.length(w));
        let rank = self.bipartite_rank();
        let mut classes: Vec<ClassData> = classes_ids
            .into_iter()
            .map(|ids| {
                let min_length = ids.iter().map(|&i| lengths[i as usize]).min().unwrap();
                let min_ids: Vec<u32> =
                    ids.iter().copied().filter(|&i| lengths[i as usize] == min_length).collect();
                // Among minimal-length members pick the one whose first
                // reduced word is least in the bipartite generator order.
                let mut best: Option<(Vec<usize>, Word, u32)> = None;
                for &i in &min_ids {
                    let word = self.reduced_word(&els.elements[i as usize]);
                    let key: Vec<usize> = word.iter().map(|&l| rank[l - 1]).collect();
                    if best.as_ref().is_none_or(|(bk, _, _)| key < *bk) {
                        best = Some((key, word, i));
                    }
                }
                let (_, rep_word, rep_id) = best.unwrap();
                let rep = els.elements[rep_id as usize].clone();
                let order = rep.order();
                ClassData {
                    rep_word,
                    rep,
                    size: ids.len(),
                    order,
                    min_length,
                    min_length_ids: min_ids,
                }
            })
            .collect();
        classes.sort_by(|a, b| {
            a.min_length.cmp(&b.min_length).then_with(|| a.rep_word.cmp(&b.rep_word))
        });
        Ok(ClassInfo { classes })
    }

    /// Generator support of an element: the letters of any reduced word.
    pub fn support(&self, w: &Perm) -> Vec<usize> {
        let mut letters: Vec<usize> = self.reduced_word(w);
        letters.sort_unstable();
        letters.dedup();
        letters
    }
}

// ---------------------------------------------------------------------------
// Reflection subgroups
// ---------------------------------------------------------------------------

/// A reflection subgroup on a closed subsystem, with its canonical simple
/// system and Cartan data; its elements act on the parent's roots.
#[derive(Clone)]
pub struct ReflSubgroup {
    pub parent: Arc<CoxGroup>,
    /// Parent root indices (0-based, ascending) of the canonical simples.
    pub simples: Vec<usize>,
    /// Parent indices of the subsystem's positive roots, ascending.
    pub pos_roots: Vec<usize>,
    pub cartan: Vec<Vec<i64>>,
    pub gen_perms: Vec<Perm>,
    pub gen_ymats: Vec<Mat64>,
    /// Classified type with short-root marks relative to the parent;
    /// node sets are 0-based in subsystem numbering.
    pub ctype: Vec<(SimpleType, Vec<usize>)>,
    pub order: u128,
}

impl CoxGroup {
    /// Subgroup generated by the reflections of the given 1-based parent
    /// root indices, with its canonical simple system.
    pub fn reflection_subgroup(self: &Arc<Self>, roots_1based: &[usize]) -> ReflSubgroup {
        let idx: Vec<usize> = roots_1based.iter().map(|&r| r - 1).collect();
        self.reflection_subgroup0(&idx)
    }

    pub(crate) fn reflection_subgroup0(self: &Arc<Self>, roots0: &[usize]) -> ReflSubgroup {
        // Close the folded root set under member reflections.
        let mut pos: FxHashSet<usize> = roots0.iter().map(|&r| self.system.fold(r)).collect();
        loop {
            let cur: Vec<usize> = pos.iter().copied().collect();
            let before = pos.len();
            for &a in &cur {
                let refl = self.reflection_perm(a).clone();
                for &b in &cur {
                    pos.insert(self.system.fold(refl.apply(b)));
                }
            }
            if pos.len() == before {
                break;
            }
        }
        let mut pos_roots: Vec<usize> = pos.iter().copied().collect();
        pos_roots.sort_unstable();
        // Canonical simples: positive subsystem roots that are not sums of
        // two positive subsystem roots.
        let coord_set: FxHashSet<&Vec<i64>> =
            pos_roots.iter().map(|&i| &self.system.roots[i]).collect();
        let simples: Vec<usize> = pos_roots
            .iter()
            .copied()
            .filter(|&i| {
                let a = &self.system.roots[i];
                !pos_roots.iter().any(|&j| {
                    let b = &self.system.roots[j];
                    let diff: Vec<i64> = a.iter().zip(b).map(|(&x, &y)| x - y).collect();
                    j != i && coord_set.contains(&diff)
                })
            })
            .collect();

        let k = simples.len();
        let mut cartan = vec![vec![0i64; k]; k];
        for (i, &a) in simples.iter().enumerate() {
            for (j, &b) in simples.iter().enumerate() {
                cartan[i][j] = self.pairing(a, b);
            }
        }
        let gen_perms: Vec<Perm> =
            simples.iter().map(|&a| self.reflection_perm(a).clone()).collect();
        let gen_ymats: Vec<Mat64> = simples
            .iter()
            .map(|&a| {
                let mut m = mat64_identity(self.rank);
                for (r, row) in m.iter_mut().enumerate() {
                    for (c, v) in row.iter_mut().enumerate() {
                        *v -= self.coroots_y[a][r] * self.roots_x[a][c];
                    }
                }
                m
            })
            .collect();
        let mut ctype = classify_cartan(&cartan).expect("closed subsystem has finite type");
        if self.has_two_lengths() {
            for (t, nodes) in ctype.iter_mut() {
                t.short = nodes.iter().all(|&n| !self.is_long_root(simples[n]));
            }
        }
        let order = ctype.iter().map(|(t, _)| t.group_order()).product();
        ReflSubgroup {
            parent: self.clone(),
            simples,
            pos_roots,
            cartan,
            gen_perms,
            gen_ymats,
            ctype,
            order,
        }
    }

    /// The whole group viewed as a reflection subgroup of itself.
    pub fn as_subgroup(self: &Arc<Self>) -> ReflSubgroup {
        let all: Vec<usize> = (1..=self.n_gens).collect();
        self.reflection_subgroup(&all)
    }
}

impl ReflSubgroup {
    /// 1-based parent root indices of the canonical simples.
    pub fn simple_labels(&self) -> Vec<usize> {
        self.simples.iter().map(|&i| i + 1).collect()
    }

    pub fn n_gens(&self) -> usize {
        self.simples.len()
    }

    /// Sorted component labels, short components marked with `~`.
    pub fn isomorphism_type(&self) -> String {
        iso_string(self.ctype.iter().map(|(t, _)| *t).collect())
    }

    /// Reflection degrees on the full ambient space: component degrees
    /// plus a degree 1 for each central direction.
    pub fn ambient_degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.ctype.iter().flat_map(|(t, _)| t.degrees()).collect();
        d.extend(std::iter::repeat(1).take(self.parent.rank - self.n_gens()));
        d.sort_unstable();
        d
    }

    /// Folded positive-root bitset of the subsystem.
    pub fn pos_bitset(&self) -> u128 {
        self.pos_roots.iter().fold(0u128, |acc, &i| acc | (1u128 << i))
    }

    /// Enumerate the subgroup's elements as parent permutations.
    pub fn elements(&self, budget: &Budget) -> Result<GroupList> {
        enumerate_group(self.parent.degree(), &self.gen_perms, budget)
    }
}

// ---------------------------------------------------------------------------
// Orbits on root sets, normalizers, centralizers, double cosets
// ---------------------------------------------------------------------------

/// Image of a folded positive-root bitset under a permutation.
pub fn act_posset(w: &CoxGroup, p: &Perm, set: u128) -> u128 {
    let mut out = 0u128;
    let mut rest = set;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out |= 1u128 << w.system.fold(p.apply(i));
    }
    out
}

/// Orbit of a folded root set together with Schreier generators of its
/// stabilizer: returns `(orbit, stabilizer generators, stabilizer order)`.
pub fn set_stabilizer(
    w: &CoxGroup,
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
        for g in &w.gen_perms {
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
    let target = w.order / orbit.len() as u128;
    let mut bsgs = Bsgs::from_generators(w.degree(), &[]);
    let mut gens = Vec::new();
    for sg in schreier {
        if bsgs.order() == target {
            break;
        }
        if !bsgs.contains(&sg) {
            bsgs.extend(sg.clone());
            gens.push(sg);
        }
    }
    debug_assert_eq!(bsgs.order(), target);
    Ok((orbit, gens, target))
}

impl CoxGroup {
    /// Generators and order of `N_W(H)`, the stabilizer of H's root set.
    pub fn normalizer_of_subsystem(
        &self,
        h: &ReflSubgroup,
        budget: &Budget,
    ) -> Result<(Vec<Perm>, u128)> {
        let (_, mut gens, order) = set_stabilizer(self, h.pos_bitset(), budget)?;
        for g in &h.gen_perms {
            gens.push(g.clone());
        }
        Ok((gens, order))
    }

    pub fn element_centralizer(&self, w: &Perm, budget: &Budget) -> Result<(Vec<Perm>, u128)> {
        self.twisted_centralizer(w, None, budget)
    }

    pub fn centralizer_order(&self, w: &Perm, budget: &Budget) -> Result<u128> {
        Ok(self.element_centralizer(w, budget)?.1)
    }

    /// Stabilizer of `x·σ` under `g·(xσ)·g⁻¹ = (g·x·σ(g)⁻¹)·σ`: the
    /// elements `g` with `g·x·σ(g)⁻¹ = x`.  `sigma` is a 0-based
    /// generator relabel; None means ordinary conjugation.
    pub fn twisted_centralizer(
        &self,
        x: &Perm,
        sigma: Option<&[usize]>,
        budget: &Budget,
    ) -> Result<(Vec<Perm>, u128)> {
        let ident: Vec<usize> = (0..self.n_gens).collect();
        let sigma = sigma.unwrap_or(&ident);
        let mut orbit: Vec<Perm> = vec![x.clone()];
        let mut transv: Vec<Perm> = vec![self.identity()];
        let mut pos: FxHashMap<Perm, usize> = FxHashMap::default();
        pos.insert(x.clone(), 0);
        let mut head = 0;
        let mut schreier: Vec<Perm> = Vec::new();
        while head < orbit.len() {
            if orbit.len() as u64 > budget.max_elements {
                return Err(Error::BudgetExceeded {
                    what: "conjugation orbit",
                    limit: budget.max_elements,
                });
            }
            let cur = orbit[head].clone();
            for s in 0..self.n_gens {
                let im = self.gen_perms[s].compose(&cur.compose(&self.gen_perms[sigma[s]]));
                match pos.get(&im) {
                    None => {
                        pos.insert(im.clone(), orbit.len());
                        orbit.push(im);
                        transv.push(self.gen_perms[s].compose(&transv[head]));
                    }
                    Some(&k) => {
                        let sg =
                            transv[k].inverse().compose(&self.gen_perms[s].compose(&transv[head]));
                        if !sg.is_identity() {
                            schreier.push(sg);
                        }
                    }
                }
            }
            head += 1;
        }
        let target = self.order / orbit.len() as u128;
        let mut bsgs = Bsgs::from_generators(self.degree(), &[]);
        let mut gens = Vec::new();
        for sg in schreier {
            if bsgs.order() == target {
                break;
            }
            if !bsgs.contains(&sg) {
                bsgs.extend(sg.clone());
                gens.push(sg);
            }
        }
        debug_assert_eq!(bsgs.order(), target);
        Ok((gens, target))
    }

    /// One representative per H-K double coset; each representative is
    /// the least permutation of its H-coset.
    pub fn double_coset_representatives(
        &self,
        h_gens: &[Perm],
        k_gens: &[Perm],
        budget: &Budget,
    ) -> Result<Vec<Perm>> {
        let h = enumerate_group(self.degree(), h_gens, budget)?;
        if h.len() as u128 == self.order {
            return Ok(vec![self.identity()]);
        }
        let canon = |g: &Perm| -> Perm { h.elements.iter().map(|x| x.compose(g)).min().unwrap() };
        let start = canon(&self.identity());
        let mut cosets: Vec<Perm> = vec![start.clone()];
        let mut seen: FxHashSet<Perm> = FxHashSet::default();
        seen.insert(start);
        let mut head = 0;
        while head < cosets.len() {
            if cosets.len() as u64 * h.len() as u64 > budget.max_elements {
                return Err(Error::BudgetExceeded { what: "cosets", limit: budget.max_elements });
            }
            let cur = cosets[head].clone();
            for s in &self.gen_perms {
                let next = canon(&cur.compose(s));
                if seen.insert(next.clone()) {
                    cosets.push(next);
                }
            }
            head += 1;
        }
        let mut assigned: FxHashSet<Perm> = FxHashSet::default();
        let mut reps = Vec::new();
        for c in &cosets {
            if assigned.contains(c) {
                continue;
            }
            reps.push(c.clone());
            let mut stack = vec![c.clone()];
            assigned.insert(c.clone());
            while let Some(cur) = stack.pop() {
                for kg in k_gens {
                    let next = canon(&cur.compose(kg));
                    if assigned.insert(next.clone()) {
                        stack.push(next);
                    }
                }
            }
        }
        Ok(reps)
    }
}

// ---------------------------------------------------------------------------
