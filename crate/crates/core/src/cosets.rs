//! Coxeter cosets `Wφ`: twisted rational structures.
//!
//! A coset is a Weyl group together with a diagram automorphism φ, given
//! by a permutation of the simple-root labels that preserves the Cartan
//! matrix.  F-conjugacy classes are the W-orbits on `Wφ` under
//! `w·(xφ)·w⁻¹`; a class is elliptic when no minimal-length member lives
//! in a proper φ-stable standard parabolic.  Twistings `W_L·wφ` classify
//! the rational forms of a Levi subgroup; their torus order polynomials
//! and the eigenvalues of `wφ` on basic invariants (the factors of φ)
//! are computed here.

use std::sync::Arc;

use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::budget::Budget;
use crate::coxeter::{ClassInfo, CoxGroup, ReflSubgroup, Word};
use crate::error::{Error, Result};
use crate::exactlin::{
    characteristic_polynomial, cyclotomic_factorization, euler_phi, mat64_identity, mat64_mul,
    mat64_to_intmat, rat_int, solve_rational, CycProduct, IntMat, Mat64, Poly, Rat,
};
use crate::garside::GarsideAut;
use crate::perm::{enumerate_group, Perm};

/// A Coxeter coset `Wφ`.
#[derive(Clone)]
pub struct Coset {
    pub group: Arc<CoxGroup>,
    /// 0-based relabel of the generators (identity when untwisted).
    pub sigma: Vec<usize>,
    /// φ as a permutation of the roots.
    pub sigma_root: Perm,
    /// Induced integral action on Y(T).
    pub phi_y: Mat64,
    pub name: String,
}

impl Coset {
    /// Build `Wφ` from a 1-based label map; errors unless the map
    /// preserves the Cartan matrix.
    pub fn new(group: Arc<CoxGroup>, sigma_labels: &[usize]) -> Result<Coset> {
        let n = group.n_gens;
        if sigma_labels.len() != n {
            return Err(Error::Dimension("label map must cover all generators".into()));
        }
        let sigma: Vec<usize> = sigma_labels.iter().map(|&l| l - 1).collect();
        {
            let mut seen = vec![false; n];
            for &i in &sigma {
                if i >= n || seen[i] {
                    return Err(Error::NotDiagramAutomorphism);
                }
                seen[i] = true;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if group.cartan[i][j] != group.cartan[sigma[i]][sigma[j]] {
                    return Err(Error::NotDiagramAutomorphism);
                }
            }
        }
        // Root permutation: coordinate relabel.
        let count = group.system.count();
        let mut img = vec![0u16; count];
        for (k, coords) in group.system.roots.iter().enumerate() {
            let mut b = vec![0i64; n];
            for j in 0..n {
                b[sigma[j]] = coords[j];
            }
            img[k] = group
                .system
                .index_of(&b)
                .expect("diagram automorphisms permute the roots") as u16;
        }
        let sigma_root = Perm::from_images(img);
        let phi_y = phi_on_y(&group, &sigma)?;
        let name = coset_name(&group, &sigma);
        Ok(Coset { group, sigma, sigma_root, phi_y, name })
    }

    pub fn untwisted(group: Arc<CoxGroup>) -> Coset {
        let labels: Vec<usize> = (1..=group.n_gens).collect();
        Coset::new(group, &labels).expect("identity is a diagram automorphism")
    }

    pub fn is_untwisted(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Order of φ as a label permutation.
    pub fn twist_order(&self) -> u64 {
        let img: Vec<u16> = self.sigma.iter().map(|&i| i as u16).collect();
        Perm::from_images(img).order()
    }

    // -- applying the automorphism --------------------------------------

    pub fn frobenius_word(&self, word: &[usize]) -> Word {
        word.iter().map(|&l| self.sigma[l - 1] + 1).collect()
    }

    pub fn frobenius_element(&self, x: &Perm) -> Perm {
        self.sigma_root.compose(&x.compose(&self.sigma_root.inverse()))
    }

    pub fn garside_aut(&self) -> GarsideAut {
        GarsideAut::from_root_perm(self.sigma_root.clone())
    }

    /// F-conjugacy classes: orbits of `x ↦ s·x·σ(s)` on W.
    pub fn f_conjugacy_classes(&self, budget: &Budget) -> Result<ClassInfo> {
        self.group.twisted_classes(&self.sigma, budget)
    }

    /// Elliptic flags, parallel to the classes: a class is elliptic iff
    /// every minimal-length member has support meeting every σ-orbit on
    /// the generators.
    pub fn elliptic_flags(&self, info: &ClassInfo, budget: &Budget) -> Result<Vec<bool>> {
        let orbits = self.label_orbits();
        let els = self.group.elements(budget)?;
        Ok(info
            .classes
            .iter()
            .map(|c| {
                c.min_length_ids.iter().all(|&id| {
                    let support = self.group.support(&els.elements[id as usize]);
                    orbits.iter().all(|orb| orb.iter().any(|l| support.contains(l)))
                })
            })
            .collect())
    }

    /// σ-orbits on the 1-based generator labels.
    pub fn label_orbits(&self) -> Vec<Vec<usize>> {
        let n = self.group.n_gens;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orb = vec![start + 1];
            seen[start] = true;
            let mut cur = self.sigma[start];
            while cur != start {
                seen[cur] = true;
                orb.push(cur + 1);
                cur = self.sigma[cur];
            }
            out.push(orb);
        }
        out
    }

    /// Twisted centralizer order of `x·φ`, directly by orbit–stabilizer.
    pub fn twisted_centralizer(&self, x: &Perm, budget: &Budget) -> Result<(Vec<Perm>, u128)> {
        self.group.twisted_centralizer(x, Some(&self.sigma), budget)
    }
}

fn coset_name(group: &CoxGroup, sigma: &[usize]) -> String {
    let img: Vec<u16> = sigma.iter().map(|&i| i as u16).collect();
    let ord = Perm::from_images(img).order();
    let t = group.type_string();
    if ord == 1 {
        t
    } else {
        format!("{ord}{t}")
    }
}

/// Integral matrix of φ on Y(T): identity for the trivial relabel; for a
/// semisimple datum, `R⁻¹·P·R` where `P·e_j = e_{σ(j)}`.
fn phi_on_y(group: &CoxGroup, sigma: &[usize]) -> Result<Mat64> {
    let n = group.n_gens;
    let rank = group.rank;
    if sigma.iter().enumerate().all(|(i, &j)| i == j) {
        return Ok(mat64_identity(rank));
    }
    if n != rank {
        return Err(Error::Unsupported(
            "twisting a non-semisimple datum is not supported".into(),
        ));
    }
    // Dualizing φX(αᵢ) = α_{σ(i)} against the dot pairing gives
    // φY = R⁻¹·P·R on column vectors, where P·e_j = e_{σ(j)}.
    // Solve R·φY = P·R column by column and demand integrality.
    let r = &group.datum.r;
    let mut pr = IntMat::zeros(n, rank);
    for j in 0..n {
        for c in 0..rank {
            pr[(sigma[j], c)] = r[(j, c)].clone();
        }
    }
    let mut cols: Vec<Vec<i64>> = Vec::with_capacity(rank);
    for c in 0..rank {
        let b: Vec<Rat> = (0..rank).map(|i| Rat::from_integer(pr[(i, c)].clone())).collect();
        let x = solve_rational(r, &b).ok_or(Error::NotDiagramAutomorphism)?;
        let mut col = Vec::with_capacity(rank);
        for v in x {
            if !v.denom().is_one() {
                return Err(Error::NotDiagramAutomorphism);
            }
            col.push(i64::try_from(v.numer()).map_err(|_| Error::NotDiagramAutomorphism)?);
        }
        cols.push(col);
    }
    let phi: Mat64 = (0..rank).map(|i| (0..rank).map(|j| cols[j][i]).collect()).collect();
    // Consistency: φY must send coroots to the relabeled coroots.
    let rv = group.datum.rv.to_i64_rows();
    for i in 0..n {
        let image = crate::exactlin::mat64_vec(&phi, &rv[i]);
        if image != rv[sigma[i]] {
            return Err(Error::NotDiagramAutomorphism);
        }
    }
    Ok(phi)
}

// ---------------------------------------------------------------------------
// Subcosets and twistings
// ---------------------------------------------------------------------------

/// `W_L·wφ`: a rational form of the Levi with Weyl group `W_L`.
#[derive(Clone)]
pub struct SubCoset {
    pub levi: ReflSubgroup,
    pub coset: Coset,
    /// The twisting element, a canonical representative of its class.
    pub w: Perm,
    /// Matrix of `w·φ` on Y(T).
    pub w_phi_y: Mat64,
}

impl SubCoset {
    pub fn new(levi: ReflSubgroup, coset: Coset, w: Perm) -> Result<SubCoset> {
        let root_action = w.compose(&coset.sigma_root);
        let set = levi.pos_bitset();
        if crate::coxeter::act_posset(&coset.group, &root_action, set) != set {
            return Err(Error::Unsupported("wφ does not stabilize the subsystem".into()));
        }
        let w_phi_y = mat64_mul(&coset.group.ymat_of(&w), &coset.phi_y);
        Ok(SubCoset { levi, coset, w, w_phi_y })
    }

    /// Apply `wφ` to a group element: conjugation composed with σ.
    pub fn frobenius_element(&self, x: &Perm) -> Perm {
        let a = self.w.compose(&self.coset.sigma_root);
        a.compose(&x.compose(&a.inverse()))
    }

    /// Orbits of `wφ` on the components of the Levi, with component
    /// types and 1-based simple labels: display helper.
    pub fn component_orbits(&self) -> Vec<Vec<(String, Vec<usize>)>> {
        let levi = &self.levi;
        let root_action = self.w.compose(&self.coset.sigma_root);
        let n_comp = levi.ctype.len();
        // component of a folded root: the component whose root set holds it
        let comp_roots: Vec<Vec<usize>> = levi
            .ctype
            .iter()
            .map(|(_, nodes)| {
                let gens: Vec<usize> = nodes.iter().map(|&n| levi.simples[n]).collect();
                levi.parent.reflection_subgroup0(&gens).pos_roots
            })
            .collect();
        let comp_of_root = |r: usize| -> usize {
            comp_roots.iter().position(|roots| roots.contains(&r)).expect("root in a component")
        };
        let mut image = vec![0usize; n_comp];
        for (ci, roots) in comp_roots.iter().enumerate() {
            let im = levi.parent.system.fold(root_action.apply(roots[0]));
            image[ci] = comp_of_root(im);
        }
        let mut seen = vec![false; n_comp];
        let mut orbits = Vec::new();
        for start in 0..n_comp {
            if seen[start] {
                continue;
            }
            let mut orb = Vec::new();
            let mut cur = start;
            loop {
                seen[cur] = true;
                let (t, nodes) = &levi.ctype[cur];
                let labels: Vec<usize> =
                    nodes.iter().map(|&n| levi.simples[n] + 1).collect();
                orb.push((t.to_string(), labels));
                cur = image[cur];
                if cur == start {
                    break;
                }
            }
            orbits.push(orb);
        }
        orbits
    }

    /// Display like `A1<2>xA1<5>` with parentheses around φ-orbits.
    pub fn shape_string(&self) -> String {
        self.component_orbits()
            .iter()
            .map(|orb| {
                if orb.len() == 1 {
                    let (t, labels) = &orb[0];
                    format!(
                        "{t}<{}>",
                        labels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
                    )
                } else {
                    let types: Vec<String> = orb.iter().map(|(t, _)| t.clone()).collect();
                    let labels: Vec<String> = orb
                        .iter()
                        .flat_map(|(_, ls)| ls.iter().map(|l| l.to_string()))
                        .collect();
                    format!("({})<{}>", types.join("x"), labels.join(","))
                }
            })
            .collect::<Vec<_>>()
            .join("x")
    }
}

/// One subcoset `W_L·wφ` per φ-conjugacy class of `N_W(W_L)/W_L`.
pub fn twistings(coset: &Coset, levi: &ReflSubgroup, budget: &Budget) -> Result<Vec<SubCoset>> {
    let w = &coset.group;
    let set = levi.pos_bitset();
    if crate::coxeter::act_posset(w, &coset.sigma_root, set) != set {
        return Err(Error::Unsupported("φ must stabilize the subsystem".into()));
    }
    let (n_gens_list, n_order) = w.normalizer_of_subsystem(levi, budget)?;
    let normalizer = enumerate_group(w.degree(), &n_gens_list, budget)?;
    debug_assert_eq!(normalizer.len() as u128, n_order);
    let levi_elements = levi.elements(budget)?;
    // Canonical representative of a coset x·W_L.
    let canon = |x: &Perm| -> Perm {
        levi_elements.elements.iter().map(|l| x.compose(l)).min().unwrap()
    };
    let mut coset_reps: Vec<Perm> = Vec::new();
    {
        let mut seen = rustc_hash::FxHashSet::default();
        for x in &normalizer.elements {
            let c = canon(x);
            if seen.insert(c.clone()) {
                coset_reps.push(c);
            }
        }
    }
    coset_reps.sort();
    // φ-conjugacy on the quotient: rep ↦ canon(n·rep·φ(n)⁻¹).
    let index: FxHashMap<Perm, usize> =
        coset_reps.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    let mut class_of = vec![usize::MAX; coset_reps.len()];
    let mut reps = Vec::new();
    for start in 0..coset_reps.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let cid = reps.len();
        let mut stack = vec![start];
        class_of[start] = cid;
        let mut best = coset_reps[start].clone();
        while let Some(k) = stack.pop() {
            let cur = &coset_reps[k];
            for g in &n_gens_list {
                let fg_inv = coset.frobenius_element(g).inverse();
                let im = canon(&g.compose(&cur.compose(&fg_inv)));
                let id = index[&im];
                if class_of[id] == usize::MAX {
                    class_of[id] = cid;
                    if coset_reps[id] < best {
                        best = coset_reps[id].clone();
                    }
                    stack.push(id);
                }
            }
        }
        reps.push(best);
    }
    reps.sort();
    reps.into_iter().map(|w_elt| SubCoset::new(levi.clone(), coset.clone(), w_elt)).collect()
}

// ---------------------------------------------------------------------------
// Torus order polynomials
// ---------------------------------------------------------------------------

/// Restrict an integral Y-action to a stable sublattice given by basis
/// rows; errors if the lattice is not stable.
pub fn restrict_to_lattice(action: &Mat64, basis: &IntMat) -> Result<IntMat> {
    let k = basis.rows;
    let r = basis.cols;
    let bt = basis.transpose();
    let mut out = IntMat::zeros(k, k);
    for i in 0..k {
        let row: Vec<i64> = (0..r)
            .map(|c| i64::try_from(&basis[(i, c)]).expect("basis fits i64"))
            .collect();
        let image = crate::exactlin::mat64_vec(action, &row);
        let b: Vec<Rat> = image.iter().map(|&x| rat_int(x)).collect();
        let x = solve_rational(&bt, &b).ok_or(Error::LatticeNotStable)?;
        for (j, v) in x.iter().enumerate() {
            if !v.denom().is_one() {
                return Err(Error::LatticeNotStable);
            }
            out[(j, i)] = v.numer().clone();
        }
    }
    Ok(out)
}

/// `|S^{wF}|` as a polynomial in q: `det(q·A − 1)` for `A` the matrix of
/// `wφ` on the lattice, sign-normalized and cyclotomically factored.
pub fn torus_order_polynomial(sc: &SubCoset, lattice: &IntMat) -> Result<CycProduct> {
    let a = restrict_to_lattice(&sc.w_phi_y, lattice)?;
    let poly = crate::exactlin::scaled_det_minus_one(&a);
    cyclotomic_factorization(&poly)
}

// ---------------------------------------------------------------------------
// Factors of φ via the coset Molien series
// ---------------------------------------------------------------------------

fn series_inverse(a: &[Rat], trunc: usize) -> Vec<Rat> {
    assert!(!a[0].is_zero(), "series not invertible");
    let mut out = vec![Rat::zero(); trunc + 1];
    out[0] = Rat::one() / &a[0];
    for k in 1..=trunc {
        let mut acc = Rat::zero();
        for j in 1..=k {
            if j < a.len() && !a[j].is_zero() {
                acc += &a[j] * &out[k - j];
            }
        }
        out[k] = -acc / &a[0];
    }
    out
}

/// `∏(1 − ε t^d)` over the primitive m-th roots ε: `Φ_m(0)·Φ_m(t^d)`.
fn unity_orbit_factor(m: u32, d: usize) -> Poly {
    let phi = crate::exactlin::cyclotomic_poly(m);
    let c0 = phi.eval(&Rat::zero());
    let mut coeffs = vec![Rat::zero(); phi.degree() * d + 1];
    for (k, c) in phi.coeffs.iter().enumerate() {
        coeffs[k * d] = c * &c0;
    }
    Poly::from_coeffs(coeffs)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

fn peel(
    p: &Poly,
    degrees: &[usize],
    slot_idx: usize,
    slots: &mut Vec<(usize, usize)>,
    order: u64,
    out: &mut Vec<(usize, u32)>,
) -> bool {
    if slot_idx == slots.len() {
        return *p == Poly::one();
    }
    let (d, remaining) = slots[slot_idx];
    if remaining == 0 {
        return peel(p, degrees, slot_idx + 1, slots, order, out);
    }
    for m in divisors(order) {
        let m = m as u32;
        if euler_phi(m) as usize > remaining {
            continue;
        }
        let factor = unity_orbit_factor(m, d);
        if let Some(q) = p.div_exact(&factor) {
            slots[slot_idx].1 = remaining - euler_phi(m) as usize;
            out.push((d, m));
            if peel(&q, degrees, slot_idx, slots, order, out) {
                slots[slot_idx].1 = remaining;
                return true;
            }
            out.pop();
            slots[slot_idx].1 = remaining;
        }
    }
    false
}

/// Multiset of pairs (degree, ε) describing the eigenvalues of `wφ` on
/// the basic invariants of the Levi on the full ambient space; ε is a
/// root of unity written additively in ℚ/ℤ (0 ↦ +1, 1/2 ↦ −1, …).
/// Matched against the coset Molien series
/// `|W_L|⁻¹·Σ_x det(1 − t·x·wφ)⁻¹ = ∏ (1 − ε_i t^{d_i})⁻¹`.
///
/// The degree-1 factors are pinned first: the linear invariants span the
/// fixed space of W_L on Y⊗ℚ, so their eigenvalue multiset is exactly
/// that of `wφ` on the kernel lattice of the root pairing.  Without this
/// the series alone is ambiguous — a degree-1 pair {±i} and a degree-2
/// eigenvalue −1 both contribute (1 + t²).
pub fn phi_factors(sc: &SubCoset, budget: &Budget) -> Result<Vec<(usize, Rat)>> {
    let levi = &sc.levi;
    let parent = &levi.parent;
    let degrees = levi.ambient_degrees();
    let trunc: usize = degrees.iter().sum();
    let els = levi.elements(budget)?;

    // Group elements by the characteristic polynomial of x·wφ on Y.
    let mut charpolys: FxHashMap<Vec<Rat>, usize> = FxHashMap::default();
    for x in &els.elements {
        let m = mat64_mul(&parent.ymat_of(x), &sc.w_phi_y);
        let cp = characteristic_polynomial(&mat64_to_intmat(&m));
        *charpolys.entry(cp.coeffs).or_insert(0) += 1;
    }
    let rank = parent.rank;
    let mut molien = vec![Rat::zero(); trunc + 1];
    for (cp, count) in &charpolys {
        // det(1 − tM): reverse of the characteristic polynomial.
        let rev: Vec<Rat> = (0..=rank)
            .map(|j| cp.get(rank - j).cloned().unwrap_or_else(Rat::zero))
            .collect();
        let inv = series_inverse(&rev, trunc);
        let c = rat_int(*count as i64);
        for (k, v) in inv.iter().enumerate() {
            molien[k] += v * &c;
        }
    }
    let size = rat_int(els.len() as i64);
    for v in molien.iter_mut() {
        *v /= &size;
    }

    // P(t) = 1/Molien is the polynomial ∏(1 − ε_i t^{d_i}).
    let mut p = Poly::from_coeffs(series_inverse(&molien, trunc));
    let order = {
        // multiplicative order of wφ on Y
        let mut m = sc.w_phi_y.clone();
        let mut k = 1u64;
        while m != mat64_identity(rank) {
            m = mat64_mul(&m, &sc.w_phi_y);
            k += 1;
            assert!(k <= 10_000, "wφ does not have finite order");
        }
        k
    };
    // Degree-1 factors from the fixed lattice of W_L.
    let mut chosen: Vec<(usize, u32)> = Vec::new();
    let n_linear = degrees.iter().filter(|&&d| d == 1).count();
    if n_linear > 0 {
        let rows: Vec<Vec<i64>> =
            levi.simples.iter().map(|&i| parent.roots_x[i].clone()).collect();
        let fixed = if rows.is_empty() {
            IntMat::identity(rank)
        } else {
            crate::exactlin::integer_kernel(&IntMat::from_rows(&rows))
        };
        debug_assert_eq!(fixed.rows, n_linear);
        let a = restrict_to_lattice(&sc.w_phi_y, &fixed)?;
        let cp = characteristic_polynomial(&a);
        let cyc = cyclotomic_factorization(&cp).map_err(|_| Error::SeriesMismatch)?;
        for (&m, &mult) in &cyc.factors {
            for _ in 0..mult {
                let factor = unity_orbit_factor(m, 1);
                p = p.div_exact(&factor).ok_or(Error::SeriesMismatch)?;
                chosen.push((1, m));
            }
        }
    }
    // Multiplicity slots for the remaining degrees.
    let mut slots: Vec<(usize, usize)> = Vec::new();
    for &d in degrees.iter().filter(|&&d| d > 1) {
        match slots.last_mut() {
            Some((dd, c)) if *dd == d => *c += 1,
            _ => slots.push((d, 1)),
        }
    }
    if !peel(&p, &degrees, 0, &mut slots, order, &mut chosen) {
        return Err(Error::SeriesMismatch);
    }
    let mut out: Vec<(usize, Rat)> = Vec::new();
    for (d, m) in chosen {
        for j in 1..=m {
            if num_integer::gcd(j, m) == 1 {
                out.push((d, Rat::new((j % m).into(), m.into())));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The distinct ε values of `phi_factors`.
pub fn phi_factor_set(factors: &[(usize, Rat)]) -> Vec<Rat> {
    let mut set: Vec<Rat> = factors.iter().map(|(_, e)| e.clone()).collect();
    set.sort();
    set.dedup();
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{CartanType, Isogeny};

    fn group(name: &str) -> Arc<CoxGroup> {
        CoxGroup::from_type(&CartanType::parse(name).unwrap(), Isogeny::Adjoint).unwrap()
    }

    #[test]
    fn coset_names_and_validation() {
        let e6 = group("E6");
        let twisted = Coset::new(e6.clone(), &[6, 2, 5, 4, 3, 1]).unwrap();
        assert_eq!(twisted.name, "2E6");
        assert!(Coset::new(e6.clone(), &[2, 1, 3, 4, 5, 6]).is_err());
        let untw = Coset::untwisted(e6);
        assert_eq!(untw.name, "E6");
        assert!(untw.is_untwisted());
    }

    #[test]
    fn frobenius_applies() {
        let e6 = group("E6");
        let c = Coset::new(e6.clone(), &[6, 2, 5, 4, 3, 1]).unwrap();
        assert_eq!(c.frobenius_word(&[1]), vec![6]);
        assert_eq!(c.frobenius_word(&[3, 2]), vec![5, 2]);
        let x = e6.element_of_word(&[1]);
        let fx = c.frobenius_element(&x);
        assert_eq!(fx, e6.element_of_word(&[6]));
        // untwisted coset: identity on everything
        let u = Coset::untwisted(e6.clone());
        assert_eq!(u.frobenius_element(&x), x);
        // phi_y should have order 2
        let sq = mat64_mul(&c.phi_y, &c.phi_y);
        assert_eq!(sq, mat64_identity(6));
    }

    #[test]
    fn untwisted_a3_classes_match() {
        let a3 = group("A3");
        let c = Coset::untwisted(a3.clone());
        let budget = Budget::default();
        let info = c.f_conjugacy_classes(&budget).unwrap();
        let mut sizes: Vec<usize> = info.classes.iter().map(|c| c.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
    }

    #[test]
    fn twisted_a2_has_three_classes() {
        let a2 = group("A2");
        let c = Coset::new(a2, &[2, 1]).unwrap();
        let budget = Budget::default();
        let info = c.f_conjugacy_classes(&budget).unwrap();
        assert_eq!(info.classes.len(), 3);
        assert_eq!(info.classes.iter().map(|x| x.size).sum::<usize>(), 6);
        // size × twisted centralizer = |W| on each class
        for cl in &info.classes {
            let (_, order) = c.twisted_centralizer(&cl.rep, &budget).unwrap();
            assert_eq!(order * cl.size as u128, 6);
        }
    }

    #[test]
    fn twistings_trivial_cases() {
        let budget = Budget::default();
        let a2 = group("A2");
        let c = Coset::untwisted(a2.clone());
        // L = W: single twisting
        let full = a2.as_subgroup();
        let tw = twistings(&c, &full, &budget).unwrap();
        assert_eq!(tw.len(), 1);
        // L = ⟨s₁⟩ in A₂: N/W_L trivial
        let l = a2.reflection_subgroup(&[1]);
        let tw2 = twistings(&c, &l, &budget).unwrap();
        assert_eq!(tw2.len(), 1);
        assert!(tw2[0].w.is_identity());
    }

    #[test]
    fn torus_order_identity_twist() {
        let budget = Budget::default();
        let a2 = group("A2");
        let c = Coset::untwisted(a2.clone());
        let full = a2.as_subgroup();
        let tw = twistings(&c, &full, &budget).unwrap();
        let lattice = IntMat::identity(2);
        let cyc = torus_order_polynomial(&tw[0], &lattice).unwrap();
        assert_eq!(cyc.to_string(), "(q-1)^2");
    }

    #[test]
    fn torus_order_degree_and_value_at_one() {
        use num_traits::Signed;
        let budget = Budget::default();
        let e7 = group("E7");
        let c = Coset::untwisted(e7.clone());
        let l = e7.reflection_subgroup(&[2, 5, 7]);
        let z0 = crate::semisimple::algebraic_centre(&l).unwrap().z0;
        for sc in twistings(&c, &l, &budget).unwrap().iter().take(6) {
            let cyc = torus_order_polynomial(sc, &z0).unwrap();
            assert_eq!(cyc.degree() as usize, z0.rows);
            // |poly(1)| = |det(A − 1)| on the lattice
            let a = restrict_to_lattice(&sc.w_phi_y, &z0).unwrap();
            let mut ai = a.clone();
            for i in 0..ai.rows {
                let v = &ai[(i, i)] - num_bigint::BigInt::from(1);
                ai[(i, i)] = v;
            }
            let value = cyc.expand().eval(&crate::exactlin::rat_int(1));
            assert_eq!(value.abs(), Rat::from_integer(ai.det().abs()));
        }
    }

    #[test]
    fn lattice_restriction_checks_stability() {
        let a2 = group("A2");
        let s1_y = a2.gen_ymats[0].clone();
        // the span of e1 alone is not s₁-stable in the adjoint A₂ datum
        let unstable = IntMat::from_rows(&[vec![1, 0]]);
        assert!(restrict_to_lattice(&s1_y, &unstable).is_err());
        let stable = IntMat::identity(2);
        assert!(restrict_to_lattice(&s1_y, &stable).is_ok());
    }

    #[test]
    fn phi_factors_untwisted_all_ones() {
        let budget = Budget::default();
        let a3 = group("A3");
        let c = Coset::untwisted(a3.clone());
        let l = a3.reflection_subgroup(&[1, 3]);
        let tw = twistings(&c, &l, &budget).unwrap();
        let untw = tw.iter().find(|s| s.w.is_identity()).expect("identity twist exists");
        let factors = phi_factors(untw, &budget).unwrap();
        // degrees [1, 2, 2] on the full 3-space, all ε = 1
        assert_eq!(
            factors.iter().map(|(d, _)| *d).collect::<Vec<_>>(),
            untw.levi.ambient_degrees()
        );
        assert!(factors.iter().all(|(_, e)| e.is_zero()));
    }

    #[test]
    fn phi_factors_rank_one_flip() {
        // W_L trivial on a rank-1 torus with w acting by −1: factor −1 at
        // degree 1.
        let budget = Budget::default();
        let a1 = group("A1");
        let c = Coset::untwisted(a1.clone());
        let l = a1.reflection_subgroup(&[]);
        assert_eq!(l.order, 1);
        let tw = twistings(&c, &l, &budget).unwrap();
        // N = W = S₂, quotient trivial Levi: two classes: id and s₁
        assert_eq!(tw.len(), 2);
        let flip = tw.iter().find(|s| !s.w.is_identity()).unwrap();
        let factors = phi_factors(flip, &budget).unwrap();
        assert_eq!(factors, vec![(1, crate::exactlin::rat(1, 2))]);
        let ones = tw.iter().find(|s| s.w.is_identity()).unwrap();
        let f1 = phi_factors(ones, &budget).unwrap();
        assert_eq!(f1, vec![(1, Rat::zero())]);
    }

    #[test]
    fn sub_coset_frobenius_and_shape() {
        let budget = Budget::default();
        let e7 = group("E7");
        let c = Coset::untwisted(e7.clone());
        let l = e7.reflection_subgroup(&[2, 5, 7]);
        let tw = twistings(&c, &l, &budget).unwrap();
        assert!(!tw.is_empty());
        let id_tw = tw.iter().find(|s| s.w.is_identity()).unwrap();
        assert_eq!(id_tw.shape_string(), "A1<2>xA1<5>xA1<7>");
    }
}
