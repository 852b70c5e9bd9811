//! Cartan matrices, root data and root systems.
//!
//! Conventions: a root datum is a pair of integer matrices `R` (simple
//! roots as rows, coordinates on a basis of X(T)) and `Rv` (simple
//! coroots as rows, on the dual basis of Y(T)); the pairing is the dot
//! product, so `R·Rvᵀ` is the Cartan matrix with `C[i][j] = ⟨αᵢ, αⱼ∨⟩`.
//!
//! Node numbering for the E family follows the convention where node 2
//! hangs off node 4 of the chain 1–3–4–5–…  Roots are enumerated by
//! reflection closure and listed positives first, sorted by height then
//! lexicographically, followed by their negatives in matching order.

use std::fmt;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::exactlin::IntMat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(&self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// One irreducible factor of a Cartan type.  `short` marks components
/// consisting of short roots of an ambient system (display only).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
    pub short: bool,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidType(format!("{}{rank}", family.letter())));
        }
        Ok(SimpleType { family, rank, short: false })
    }

    /// Reflection degrees of the Weyl group of this type.
    pub fn degrees(&self) -> Vec<usize> {
        match (self.family, self.rank) {
            (Family::A, n) => (2..=n + 1).collect(),
            (Family::B | Family::C, n) => (1..=n).map(|k| 2 * k).collect(),
            (Family::D, n) => {
                let mut d: Vec<usize> = (1..n).map(|k| 2 * k).collect();
                d.push(n);
                d.sort_unstable();
                d
            }
            (Family::E, 6) => vec![2, 5, 6, 8, 9, 12],
            (Family::E, 7) => vec![2, 6, 8, 10, 12, 14, 18],
            (Family::E, 8) => vec![2, 8, 12, 14, 18, 20, 24, 30],
            (Family::F, 4) => vec![2, 6, 8, 12],
            (Family::G, 2) => vec![2, 6],
            _ => unreachable!("validated type"),
        }
    }

    pub fn group_order(&self) -> u128 {
        self.degrees().iter().map(|&d| d as u128).product()
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.short {
            write!(f, "~")?;
        }
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// A (possibly reducible) Cartan type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub components: Vec<SimpleType>,
}

impl CartanType {
    pub fn simple(family: Family, rank: usize) -> Result<Self> {
        Ok(CartanType { components: vec![SimpleType::new(family, rank)?] })
    }

    /// Parse names like `"E6"`, `"A2"`, `"B3+A1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut components = Vec::new();
        for part in s.split('+') {
            let part = part.trim();
            let short = part.starts_with('~');
            let body = part.trim_start_matches('~');
            let mut chars = body.chars();
            let fam = match chars.next() {
                Some('A') => Family::A,
                Some('B') => Family::B,
                Some('C') => Family::C,
                Some('D') => Family::D,
                Some('E') => Family::E,
                Some('F') => Family::F,
                Some('G') => Family::G,
                _ => return Err(Error::InvalidType(s.into())),
            };
            let rank: usize =
                chars.as_str().parse().map_err(|_| Error::InvalidType(s.into()))?;
            let mut t = SimpleType::new(fam, rank)?;
            t.short = short;
            components.push(t);
        }
        if components.is_empty() {
            return Err(Error::InvalidType(s.into()));
        }
        Ok(CartanType { components })
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    pub fn group_order(&self) -> u128 {
        self.components.iter().map(SimpleType::group_order).product()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> =
            self.components.iter().flat_map(SimpleType::degrees).collect();
        d.sort_unstable();
        d
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

// ---------------------------------------------------------------------------
// Cartan matrices
// ---------------------------------------------------------------------------

/// Edges of the Coxeter diagram of one irreducible type, as
/// `(i, j, ⟨αᵢ,αⱼ∨⟩, ⟨αⱼ,αᵢ∨⟩)` on 0-based nodes.
fn edges(t: &SimpleType) -> Vec<(usize, usize, i64, i64)> {
    let n = t.rank;
    let chain = |from: usize, to: usize| -> Vec<(usize, usize, i64, i64)> {
        (from..to).map(|i| (i, i + 1, -1, -1)).collect()
    };
    match t.family {
        Family::A => chain(0, n - 1),
        Family::B => {
            // Last simple root short: ⟨α_{n-1}, α_n∨⟩ = −2.
            let mut e = chain(0, n - 2);
            e.push((n - 2, n - 1, -2, -1));
            e
        }
        Family::C => {
            let mut e = chain(0, n - 2);
            e.push((n - 2, n - 1, -1, -2));
            e
        }
        Family::D => {
            // Fork at node 3: nodes 1 and 2 both attach to 3.
            let mut e = vec![(0, 2, -1, -1), (1, 2, -1, -1)];
            e.extend(chain(2, n - 1));
            e
        }
        Family::E => {
            // 1 - 3 - 4 - 5 - … with 2 attached to 4.
            let mut e = vec![(0, 2, -1, -1), (1, 3, -1, -1)];
            e.extend(chain(2, n - 1));
            e
        }
        Family::F => vec![(0, 1, -1, -1), (1, 2, -2, -1), (2, 3, -1, -1)],
        Family::G => vec![(0, 1, -1, -3)],
    }
}

/// Cartan matrix of a type, components in block-diagonal order.
pub fn cartan_matrix(t: &CartanType) -> Vec<Vec<i64>> {
    let n = t.rank();
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        c[i][i] = 2;
    }
    let mut offset = 0;
    for comp in &t.components {
        for (i, j, a, b) in edges(comp) {
            c[offset + i][offset + j] = a;
            c[offset + j][offset + i] = b;
        }
        offset += comp.rank;
    }
    c
}

/// Symmetrizer: minimal positive integers `d` with `dᵢ·C[j][i] = dⱼ·C[i][j]`
/// so that `(αᵢ,αⱼ) = C[i][j]·dⱼ` is symmetric; `dᵢ` is proportional to the
/// squared length of `αᵢ`.
pub fn symmetrizer(cartan: &[Vec<i64>]) -> Vec<i64> {
    let n = cartan.len();
    let mut d = vec![0i64; n];
    for start in 0..n {
        if d[start] != 0 {
            continue;
        }
        d[start] = 6; // headroom for ratios 2 and 3
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i == j || cartan[i][j] == 0 || d[j] != 0 {
                    continue;
                }
                // dⱼ/dᵢ = C[j][i]/C[i][j]
                d[j] = d[i] * cartan[j][i] / cartan[i][j];
                stack.push(j);
            }
        }
        // Normalize the component so its minimum is as small as possible.
        let comp: Vec<usize> = (0..n).filter(|&k| d[k] != 0 && connected(cartan, start, k)).collect();
        let g = comp.iter().fold(0i64, |acc, &k| num_integer::gcd(acc, d[k]));
        if g > 1 {
            for &k in &comp {
                d[k] /= g;
            }
        }
    }
    d
}

fn connected(cartan: &[Vec<i64>], a: usize, b: usize) -> bool {
    if a == b {
        return true;
    }
    let n = cartan.len();
    let mut seen = vec![false; n];
    seen[a] = true;
    let mut stack = vec![a];
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if i != j && cartan[i][j] != 0 && !seen[j] {
                if j == b {
                    return true;
                }
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    false
}

/// Connected components of the diagram, each as a sorted list of 0-based
/// nodes.
pub fn diagram_components(cartan: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = cartan.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i != j && cartan[i][j] != 0 && !seen[j] {
                    seen[j] = true;
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Recognize the type of a valid Cartan matrix.  Returns the components
/// with their node sets (in ambient node numbering).
pub fn classify_cartan(cartan: &[Vec<i64>]) -> Result<Vec<(SimpleType, Vec<usize>)>> {
    let comps = diagram_components(cartan);
    let mut out = Vec::new();
    for nodes in comps {
        let t = classify_component(cartan, &nodes)?;
        out.push((t, nodes));
    }
    out.sort_by(|a, b| a.1.cmp(&b.1));
    Ok(out)
}

fn classify_component(cartan: &[Vec<i64>], nodes: &[usize]) -> Result<SimpleType> {
    let n = nodes.len();
    let err = || Error::InvalidCartan(format!("unrecognized component on nodes {nodes:?}"));
    let adj: Vec<Vec<usize>> = nodes
        .iter()
        .map(|&i| {
            nodes.iter().copied().filter(|&j| j != i && cartan[i][j] != 0).collect()
        })
        .collect();
    let multi: Vec<(usize, usize, i64)> = nodes
        .iter()
        .enumerate()
        .flat_map(|(a, &i)| {
            nodes.iter().enumerate().filter_map(move |(b, &j)| {
                (a < b && cartan[i][j] != 0).then(|| (a, b, cartan[i][j] * cartan[j][i]))
            })
        })
        .filter(|&(_, _, m)| m > 1)
        .collect();
    let degrees: Vec<usize> = adj.iter().map(Vec::len).collect();
    let branch_nodes: Vec<usize> = (0..n).filter(|&k| degrees[k] >= 3).collect();
    if degrees.iter().any(|&d| d > 3) || branch_nodes.len() > 1 {
        return Err(err());
    }
    let edge_count: usize = degrees.iter().sum::<usize>() / 2;
    if edge_count != n - 1 {
        return Err(err()); // cycles never occur in finite type
    }
    if multi.len() > 1 {
        return Err(err());
    }
    if let Some(&(a, b, m)) = multi.first() {
        if !branch_nodes.is_empty() {
            return Err(err());
        }
        if m == 3 {
            return if n == 2 { SimpleType::new(Family::G, 2) } else { Err(err()) };
        }
        // Double bond on a path: B (short end is a leaf), C (long end is a
        // leaf), or F4 (bond in the middle of a 4-chain).
        let i = nodes[a];
        let j = nodes[b];
        // C[i][j] = −2 means α_j is short.
        let (long_end, short_end) =
            if cartan[i][j] == -2 { (a, b) } else { (b, a) };
        let leaf = |k: usize| degrees[k] == 1;
        if n == 2 {
            return SimpleType::new(Family::B, 2);
        }
        return match (leaf(long_end), leaf(short_end)) {
            (_, true) => SimpleType::new(Family::B, n),
            (true, _) => SimpleType::new(Family::C, n),
            (false, false) if n == 4 => SimpleType::new(Family::F, 4),
            _ => Err(err()),
        };
    }
    // Simply laced: A (path), D (arm lengths 1,1,k), E (1,2,k).
    if branch_nodes.is_empty() {
        return SimpleType::new(Family::A, n);
    }
    let b = branch_nodes[0];
    let mut arms: Vec<usize> = adj[b]
        .iter()
        .map(|&start_node| {
            // walk away from the branch node
            let mut len = 1;
            let mut prev = nodes[b];
            let mut cur = start_node;
            loop {
                let next: Vec<usize> = nodes
                    .iter()
                    .copied()
                    .filter(|&x| x != prev && x != cur && cartan[cur][x] != 0)
                    .collect();
                match next.as_slice() {
                    [] => break,
                    [one] => {
                        prev = cur;
                        cur = *one;
                        len += 1;
                    }
                    _ => break,
                }
            }
            len
        })
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, _] => SimpleType::new(Family::D, n),
        [1, 2, k] if (2..=4).contains(k) => SimpleType::new(Family::E, n),
        _ => Err(err()),
    }
}

// ---------------------------------------------------------------------------
// Root data
// ---------------------------------------------------------------------------

/// Isogeny presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Isogeny {
    Adjoint,
    SimplyConnected,
}

/// Pair of integer matrices pinning a connected reductive group: simple
/// roots `R` on X(T) and simple coroots `Rv` on Y(T).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    pub r: IntMat,
    pub rv: IntMat,
}

impl RootDatum {
    pub fn new(r: IntMat, rv: IntMat) -> Result<Self> {
        if r.rows != rv.rows || r.cols != rv.cols {
            return Err(Error::Dimension("R and Rv must have equal shapes".into()));
        }
        let datum = RootDatum { r, rv };
        classify_cartan(&datum.cartan())?;
        Ok(datum)
    }

    /// Semisimple rank (number of simple roots).
    pub fn semisimple_rank(&self) -> usize {
        self.r.rows
    }

    /// Rank of the torus.
    pub fn rank(&self) -> usize {
        self.r.cols
    }

    /// `C[i][j] = ⟨αᵢ, αⱼ∨⟩`.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        self.r.mul(&self.rv.transpose()).to_i64_rows()
    }

    pub fn preset(t: &CartanType, isogeny: Isogeny) -> Self {
        let c = IntMat::from_rows(&cartan_matrix(t));
        let n = t.rank();
        match isogeny {
            Isogeny::Adjoint => RootDatum { r: IntMat::identity(n), rv: c.transpose() },
            Isogeny::SimplyConnected => RootDatum { r: c, rv: IntMat::identity(n) },
        }
    }

    /// Familiar named groups: `gl`, `sl`, `pgl`.
    pub fn named(name: &str, n: usize) -> Result<Self> {
        match name {
            "gl" => {
                if n < 2 {
                    return Err(Error::UnknownDatum(format!("{name},{n}")));
                }
                let rows: Vec<Vec<i64>> = (0..n - 1)
                    .map(|i| {
                        let mut row = vec![0i64; n];
                        row[i] = -1;
                        row[i + 1] = 1;
                        row
                    })
                    .collect();
                let m = IntMat::from_rows(&rows);
                Ok(RootDatum { r: m.clone(), rv: m })
            }
            "sl" => Ok(RootDatum::preset(
                &CartanType::simple(Family::A, n - 1)?,
                Isogeny::SimplyConnected,
            )),
            "pgl" => {
                Ok(RootDatum::preset(&CartanType::simple(Family::A, n - 1)?, Isogeny::Adjoint))
            }
            _ => Err(Error::UnknownDatum(name.into())),
        }
    }
}

// ---------------------------------------------------------------------------
// Root systems
// ---------------------------------------------------------------------------

/// Roots in simple-root coordinates; positives first (height then lex),
/// then negatives in matching order: `roots[i + n_pos] = −roots[i]`.
/// `coroots[i]` is the coroot of `roots[i]` in simple-coroot coordinates.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub n_pos: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    index: FxHashMap<Vec<i64>, usize>,
}

impl RootSystem {
    pub fn count(&self) -> usize {
        self.roots.len()
    }

    pub fn index_of(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn height(&self, i: usize) -> i64 {
        self.roots[i].iter().sum()
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.n_pos
    }

    /// Index of `−roots[i]`.
    pub fn negative_of(&self, i: usize) -> usize {
        if i < self.n_pos {
            i + self.n_pos
        } else {
            i - self.n_pos
        }
    }

    /// Fold a root index onto its positive representative.
    pub fn fold(&self, i: usize) -> usize {
        if i < self.n_pos {
            i
        } else {
            i - self.n_pos
        }
    }
}

/// Closure of the simple roots under the simple reflections.  Errors if
/// the closure exceeds a safety bound (the input was not a Cartan
/// matrix of finite type).
pub fn enumerate_roots(cartan: &[Vec<i64>]) -> Result<RootSystem> {
    let n = cartan.len();
    const MAX_ROOTS: usize = 1 << 14;
    let mut pos: Vec<Vec<i64>> = Vec::new();
    let mut seen: FxHashMap<Vec<i64>, ()> = FxHashMap::default();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        seen.insert(e.clone(), ());
        pos.push(e);
    }
    let mut head = 0;
    while head < pos.len() {
        let a = pos[head].clone();
        for i in 0..n {
            // ⟨α, αᵢ∨⟩ = Σⱼ aⱼ·C[j][i]
            let pairing: i64 = (0..n).map(|j| a[j] * cartan[j][i]).sum();
            let mut b = a.clone();
            b[i] -= pairing;
            if b.iter().all(|&x| x >= 0) && !seen.contains_key(&b) {
                if pos.len() >= MAX_ROOTS {
                    return Err(Error::InvalidCartan("root closure does not terminate".into()));
                }
                seen.insert(b.clone(), ());
                pos.push(b);
            }
        }
        head += 1;
    }
    // Height first; within a height block, descending lexicographic order
    // on the coordinates, so the simple roots come out as α₁, …, αₙ.
    pos.sort_by(|a, b| {
        let (ha, hb) = (a.iter().sum::<i64>(), b.iter().sum::<i64>());
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    let n_pos = pos.len();

    // Coroot coordinates, generated alongside by the dual reflections.
    let mut coroot_of: FxHashMap<Vec<i64>, Vec<i64>> = FxHashMap::default();
    let mut queue: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        coroot_of.insert(e.clone(), e.clone());
        queue.push((e.clone(), e));
    }
    let mut head = 0;
    while head < queue.len() {
        let (a, av) = queue[head].clone();
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| a[j] * cartan[j][i]).sum();
            let mut b = a.clone();
            b[i] -= pairing;
            // sᵢ(α∨) = α∨ − ⟨αᵢ, α∨⟩·αᵢ∨ with ⟨αᵢ, α∨⟩ = Σⱼ C[i][j]·α∨ⱼ
            let co_pairing: i64 = (0..n).map(|j| cartan[i][j] * av[j]).sum();
            let mut bv = av.clone();
            bv[i] -= co_pairing;
            if !coroot_of.contains_key(&b) {
                coroot_of.insert(b.clone(), bv.clone());
                queue.push((b, bv));
            }
        }
        head += 1;
    }

    let mut roots = Vec::with_capacity(2 * n_pos);
    let mut coroots = Vec::with_capacity(2 * n_pos);
    for a in &pos {
        roots.push(a.clone());
        coroots.push(coroot_of[a].clone());
    }
    for a in &pos {
        roots.push(a.iter().map(|x| -x).collect());
        coroots.push(coroot_of[a].iter().map(|x| -x).collect());
    }
    let index: FxHashMap<Vec<i64>, usize> =
        roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
    Ok(RootSystem { n_pos, roots, coroots, index })
}

/// Index (into the positive roots) of the highest root of the component
/// containing the given nodes.
pub fn highest_root(system: &RootSystem, component_nodes: &[usize]) -> usize {
    let mut best: Option<usize> = None;
    for i in 0..system.n_pos {
        let a = &system.roots[i];
        let supported = a
            .iter()
            .enumerate()
            .all(|(j, &c)| c == 0 || component_nodes.contains(&j));
        let touches = component_nodes.iter().any(|&j| a[j] != 0);
        if supported && touches {
            match best {
                None => best = Some(i),
                Some(b) => {
                    if system.height(i) > system.height(b) {
                        best = Some(i);
                    }
                }
            }
        }
    }
    best.expect("component has roots")
}

/// Extended (affine) diagram node sets: per component, the indices of its
/// simple roots followed by the index of the negative of its highest
/// root, all as indices into the root list.
pub fn extended_diagram(cartan: &[Vec<i64>], system: &RootSystem) -> Vec<Vec<usize>> {
    diagram_components(cartan)
        .into_iter()
        .map(|nodes| {
            let mut set: Vec<usize> = nodes.clone();
            let hi = highest_root(system, &nodes);
            set.push(system.negative_of(hi));
            set
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(s: &str) -> CartanType {
        CartanType::parse(s).unwrap()
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(cartan_matrix(&ct("A2")), vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(cartan_matrix(&ct("A1")), vec![vec![2]]);
        let g2 = cartan_matrix(&ct("G2"));
        assert_eq!(g2[0][1] * g2[1][0], 3);
        assert_eq!(IntMat::from_rows(&g2).det(), 1.into());
        assert!(CartanType::parse("E9").is_err());
        assert!(CartanType::parse("F3").is_err());
    }

    #[test]
    fn e6_numbering_matches_diagram() {
        // 1–3, 3–4, 4–5, 5–6 chain with 2 attached to 4.
        let c = cartan_matrix(&ct("E6"));
        let expect_edges = [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)];
        for (i, j) in expect_edges {
            assert_eq!(c[i][j], -1, "edge {i}-{j}");
        }
        assert_eq!(c[0][1], 0);
        assert_eq!(c[0][3], 0);
    }

    #[test]
    fn presets_match_pairing() {
        for (name, iso) in [("A2", Isogeny::Adjoint), ("A2", Isogeny::SimplyConnected)] {
            let t = ct(name);
            let d = RootDatum::preset(&t, iso);
            assert_eq!(d.cartan(), cartan_matrix(&t));
        }
        let adj = RootDatum::preset(&ct("A2"), Isogeny::Adjoint);
        assert_eq!(adj.r, IntMat::identity(2));
        assert_eq!(adj.rv.to_i64_rows(), vec![vec![2, -1], vec![-1, 2]]);
        let sc = RootDatum::preset(&ct("A2"), Isogeny::SimplyConnected);
        assert_eq!(sc.r.to_i64_rows(), vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(sc.rv, IntMat::identity(2));
        let a1 = RootDatum::preset(&ct("A1"), Isogeny::Adjoint);
        assert_eq!(a1.r.to_i64_rows(), vec![vec![1]]);
        assert_eq!(a1.rv.to_i64_rows(), vec![vec![2]]);
    }

    #[test]
    fn named_data() {
        let gl3 = RootDatum::named("gl", 3).unwrap();
        assert_eq!(gl3.r.to_i64_rows(), vec![vec![-1, 1, 0], vec![0, -1, 1]]);
        assert_eq!(gl3.rv, gl3.r);
        assert_eq!(gl3.cartan(), cartan_matrix(&ct("A2")));
        let sl4 = RootDatum::named("sl", 4).unwrap();
        assert_eq!(sl4.rv, IntMat::identity(3));
        let pgl4 = RootDatum::named("pgl", 4).unwrap();
        assert_eq!(pgl4.r, IntMat::identity(3));
        assert!(RootDatum::named("so", 5).is_err());
    }

    #[test]
    fn root_counts() {
        for (name, count) in
            [("A2", 6), ("G2", 12), ("F4", 48), ("D4", 24), ("E6", 72), ("E7", 126)]
        {
            let t = ct(name);
            let sys = enumerate_roots(&cartan_matrix(&t)).unwrap();
            assert_eq!(sys.count(), count, "{name}");
            // independent count: positive roots = sum of exponents
            let exponents: usize = t.degrees().iter().map(|d| d - 1).sum();
            assert_eq!(sys.n_pos, exponents, "{name}");
            // closure sanity: matched negatives
            for i in 0..sys.n_pos {
                let neg: Vec<i64> = sys.roots[i].iter().map(|x| -x).collect();
                assert_eq!(sys.roots[i + sys.n_pos], neg);
            }
        }
    }

    #[test]
    fn e8_root_count() {
        let sys = enumerate_roots(&cartan_matrix(&ct("E8"))).unwrap();
        assert_eq!(sys.count(), 240);
    }

    #[test]
    fn a2_positive_roots() {
        let sys = enumerate_roots(&cartan_matrix(&ct("A2"))).unwrap();
        assert_eq!(sys.roots[..3].to_vec(), vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn highest_roots() {
        let a2 = enumerate_roots(&cartan_matrix(&ct("A2"))).unwrap();
        assert_eq!(a2.roots[highest_root(&a2, &[0, 1])], vec![1, 1]);
        let g2 = enumerate_roots(&cartan_matrix(&ct("G2"))).unwrap();
        assert_eq!(g2.height(highest_root(&g2, &[0, 1])), 5);
        let e7 = enumerate_roots(&cartan_matrix(&ct("E7"))).unwrap();
        let ext = extended_diagram(&cartan_matrix(&ct("E7")), &e7);
        assert_eq!(ext.len(), 1);
        assert_eq!(ext[0].len(), 8);
    }

    #[test]
    fn non_cartan_input_rejected() {
        // An affine-type matrix: closure never terminates.
        let aff = vec![vec![2, -2], vec![-2, 2]];
        assert!(enumerate_roots(&aff).is_err());
    }

    #[test]
    fn classify_roundtrip() {
        for name in ["A1", "A5", "B2", "B4", "C3", "D4", "D5", "E6", "E7", "E8", "F4", "G2"] {
            let t = ct(name);
            let got = classify_cartan(&cartan_matrix(&t)).unwrap();
            assert_eq!(got.len(), 1);
            assert_eq!(got[0].0.family, t.components[0].family, "{name}");
            assert_eq!(got[0].0.rank, t.components[0].rank, "{name}");
        }
        let mixed = ct("A2+B3");
        let got = classify_cartan(&cartan_matrix(&mixed)).unwrap();
        assert_eq!(got.len(), 2);
    }

    #[test]
    fn symmetrizer_lengths() {
        let c = cartan_matrix(&ct("B2"));
        let d = symmetrizer(&c);
        assert_eq!(d[0], 2 * d[1]); // first root long
        let g = cartan_matrix(&ct("G2"));
        let dg = symmetrizer(&g);
        assert_eq!(dg[1], 3 * dg[0]); // second root long
        let f = cartan_matrix(&ct("F4"));
        let df = symmetrizer(&f);
        assert_eq!(df, vec![2, 2, 1, 1]);
    }

    #[test]
    fn degrees_and_orders() {
        assert_eq!(ct("E6").group_order(), 51840);
        assert_eq!(ct("E7").group_order(), 2903040);
        assert_eq!(ct("E8").group_order(), 696729600);
        assert_eq!(ct("F4").group_order(), 1152);
        assert_eq!(ct("A3").group_order(), 24);
        assert_eq!(ct("D4").degrees(), vec![2, 4, 4, 6]);
    }
}
