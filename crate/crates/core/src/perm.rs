//! Permutations on root indices and finite permutation-group machinery:
//! orbits with transversals, Schreier generators and a deterministic
//! Schreier–Sims stabilizer chain for orders and membership tests.

use num_integer::Integer;
use rustc_hash::FxHashMap;

use crate::budget::Budget;
use crate::error::{Error, Result};

/// Permutation of `0..degree`, stored as the image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm { img: (0..degree as u16).collect() }
    }

    pub fn from_images(img: Vec<u16>) -> Self {
        debug_assert!({
            let mut seen = vec![false; img.len()];
            img.iter().all(|&x| {
                let ok = (x as usize) < img.len() && !seen[x as usize];
                if ok {
                    seen[x as usize] = true;
                }
                ok
            })
        });
        Perm { img }
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    /// `(self ∘ other)(i) = self(other(i))` — `other` acts first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { img: other.img.iter().map(|&i| self.img[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Perm { img: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Multiplicative order (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut ord: u64 = 1;
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut len = 0u64;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.apply(j);
                len += 1;
            }
            ord = ord.lcm(&len);
        }
        ord
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.img.iter().enumerate().find(|(i, &x)| *i != x as usize).map(|(i, _)| i)
    }

    /// Cycle notation on 1-based points, fixed points omitted.
    pub fn cycles_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for i in 0..n {
            if seen[i] || self.apply(i) == i {
                continue;
            }
            let mut cyc = vec![i];
            seen[i] = true;
            let mut j = self.apply(i);
            while j != i {
                seen[j] = true;
                cyc.push(j);
                j = self.apply(j);
            }
            out.push('(');
            out.push_str(
                &cyc.iter().map(|&p| (p + 1).to_string()).collect::<Vec<_>>().join(","),
            );
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.cycles_string())
    }
}

// ---------------------------------------------------------------------------
// Orbits
// ---------------------------------------------------------------------------

/// Orbit of a point with a transversal: `transversal[k]` maps `start` to
/// `orbit[k]`.
pub fn orbit_transversal(gens: &[Perm], start: usize) -> (Vec<usize>, Vec<Perm>) {
    let degree = gens.first().map_or(start + 1, Perm::degree);
    let mut orbit = vec![start];
    let mut transv = vec![Perm::identity(degree)];
    let mut pos: FxHashMap<usize, usize> = FxHashMap::default();
    pos.insert(start, 0);
    let mut head = 0;
    while head < orbit.len() {
        let pt = orbit[head];
        for g in gens {
            let im = g.apply(pt);
            if !pos.contains_key(&im) {
                pos.insert(im, orbit.len());
                orbit.push(im);
                transv.push(g.compose(&transv[head]));
            }
        }
        head += 1;
    }
    (orbit, transv)
}

/// Enumerated group with a fast membership index.
pub struct GroupList {
    pub elements: Vec<Perm>,
    pub index: FxHashMap<Perm, u32>,
}

impl GroupList {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn id_of(&self, p: &Perm) -> Option<u32> {
        self.index.get(p).copied()
    }
}

/// Breadth-first enumeration of `⟨gens⟩`, identity first.
pub fn enumerate_group(degree: usize, gens: &[Perm], budget: &Budget) -> Result<GroupList> {
    let mut elements = vec![Perm::identity(degree)];
    let mut index = FxHashMap::default();
    index.insert(elements[0].clone(), 0u32);
    let mut head = 0;
    while head < elements.len() {
        let cur = elements[head].clone();
        for g in gens {
            let next = g.compose(&cur);
            if !index.contains_key(&next) {
                if elements.len() as u64 >= budget.max_elements {
                    return Err(Error::BudgetExceeded {
                        what: "group elements",
                        limit: budget.max_elements,
                    });
                }
                index.insert(next.clone(), elements.len() as u32);
                elements.push(next);
            }
        }
        head += 1;
    }
    Ok(GroupList { elements, index })
}

// ---------------------------------------------------------------------------
// Schreier–Sims
// ---------------------------------------------------------------------------

struct Level {
    point: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    transv: FxHashMap<usize, Perm>,
}

/// Base and strong generating set for a permutation group, built with the
/// deterministic Schreier–Sims algorithm.  Supports exact order and
/// membership queries; this is the independent order oracle used by the
/// higher layers (an orbit–stabilizer chain).
pub struct Bsgs {
    degree: usize,
    levels: Vec<Level>,
}

impl Bsgs {
    pub fn from_generators(degree: usize, gens: &[Perm]) -> Bsgs {
        let mut s = Bsgs { degree, levels: Vec::new() };
        for g in gens {
            s.extend(g.clone());
        }
        s
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        match self.strip(p, 0) {
            (res, _) => res.is_identity(),
        }
    }

    /// Add a generator, maintaining the chain.
    pub fn extend(&mut self, g: Perm) {
        if g.is_identity() {
            return;
        }
        let (res, lvl) = self.strip(&g, 0);
        if res.is_identity() {
            return;
        }
        self.add_gen(res, lvl);
        self.reclose();
    }

    fn add_gen(&mut self, g: Perm, lvl: usize) {
        if lvl == self.levels.len() {
            let point = g.first_moved().expect("non-identity residue");
            self.levels.push(Level {
                point,
                gens: Vec::new(),
                orbit: vec![point],
                transv: FxHashMap::from_iter([(point, Perm::identity(self.degree))]),
            });
        }
        self.levels[lvl].gens.push(g);
    }

    /// Sift `p` through the chain starting at `lvl`; returns the residue
    /// and the level where sifting stopped.
    fn strip(&self, p: &Perm, lvl: usize) -> (Perm, usize) {
        let mut cur = p.clone();
        for (i, level) in self.levels.iter().enumerate().skip(lvl) {
            let im = cur.apply(level.point);
            match level.transv.get(&im) {
                Some(t) => cur = t.inverse().compose(&cur),
                None => return (cur, i),
            }
        }
        (cur, self.levels.len())
    }

    fn gens_for_level(&self, lvl: usize) -> Vec<Perm> {
        self.levels[lvl..].iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    fn recompute_orbit(&mut self, lvl: usize) {
        let gens = self.gens_for_level(lvl);
        let point = self.levels[lvl].point;
        let mut orbit = vec![point];
        let mut transv = FxHashMap::default();
        transv.insert(point, Perm::identity(self.degree));
        let mut head = 0;
        while head < orbit.len() {
            let pt = orbit[head];
            let rep = transv[&pt].clone();
            for g in &gens {
                let im = g.apply(pt);
                if !transv.contains_key(&im) {
                    transv.insert(im, g.compose(&rep));
                    orbit.push(im);
                }
            }
            head += 1;
        }
        let level = &mut self.levels[lvl];
        level.orbit = orbit;
        level.transv = transv;
    }

    /// Fixpoint pass: recompute every orbit and chase Schreier generators
    /// until the whole chain verifies.
    fn reclose(&mut self) {
        loop {
            for lvl in 0..self.levels.len() {
                self.recompute_orbit(lvl);
            }
            let mut failure: Option<(Perm, usize)> = None;
            'scan: for lvl in (0..self.levels.len()).rev() {
                let gens = self.gens_for_level(lvl);
                for k in 0..self.levels[lvl].orbit.len() {
                    let pt = self.levels[lvl].orbit[k];
                    let rep = self.levels[lvl].transv[&pt].clone();
                    for g in &gens {
                        let im = g.apply(pt);
                        let to = self.levels[lvl].transv[&im].clone();
                        let schreier = to.inverse().compose(&g.compose(&rep));
                        if schreier.is_identity() {
                            continue;
                        }
                        let (res, deep) = self.strip(&schreier, lvl + 1);
                        if !res.is_identity() {
                            failure = Some((res, deep));
                            break 'scan;
                        }
                    }
                }
            }
            match failure {
                Some((res, lvl)) => self.add_gen(res, lvl),
                None => return,
            }
        }
    }
}

/// Order of the subgroup generated by `gens`.
pub fn subgroup_order(degree: usize, gens: &[Perm]) -> u128 {
    Bsgs::from_generators(degree, gens).order()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(img: &[u16]) -> Perm {
        Perm::from_images(img.to_vec())
    }

    #[test]
    fn compose_and_inverse() {
        let a = p(&[1, 0, 2]);
        let b = p(&[0, 2, 1]);
        let ab = a.compose(&b);
        assert_eq!(ab, p(&[1, 2, 0]));
        assert!(ab.compose(&ab.inverse()).is_identity());
        assert_eq!(ab.order(), 3);
    }

    #[test]
    fn symmetric_group_order() {
        // S_5 generated by a transposition and a 5-cycle.
        let t = p(&[1, 0, 2, 3, 4]);
        let c = p(&[1, 2, 3, 4, 0]);
        assert_eq!(subgroup_order(5, &[t.clone(), c.clone()]), 120);
        let bsgs = Bsgs::from_generators(5, &[t, c]);
        assert!(bsgs.contains(&p(&[4, 3, 2, 1, 0])));
    }

    #[test]
    fn alternating_membership() {
        // A_4: generated by two 3-cycles.
        let a = p(&[1, 2, 0, 3]);
        let b = p(&[0, 2, 3, 1]);
        let bsgs = Bsgs::from_generators(4, &[a, b]);
        assert_eq!(bsgs.order(), 12);
        assert!(!bsgs.contains(&p(&[1, 0, 2, 3])));
    }

    #[test]
    fn enumerate_small() {
        let t = p(&[1, 0, 2]);
        let c = p(&[1, 2, 0]);
        let g = enumerate_group(3, &[t, c], &Budget::default()).unwrap();
        assert_eq!(g.len(), 6);
        assert!(g.elements[0].is_identity());
    }

    #[test]
    fn budget_respected() {
        let t = p(&[1, 0, 2, 3, 4]);
        let c = p(&[1, 2, 3, 4, 0]);
        let tight = Budget::default().with_elements(10);
        assert!(matches!(
            enumerate_group(5, &[t, c], &tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn orbit_transversal_maps_start() {
        let c = p(&[1, 2, 3, 4, 0]);
        let (orbit, transv) = orbit_transversal(&[c], 0);
        assert_eq!(orbit.len(), 5);
        for (k, &pt) in orbit.iter().enumerate() {
            assert_eq!(transv[k].apply(0), pt);
        }
    }
}
