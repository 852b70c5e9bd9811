//! Exact integer and rational linear algebra.
//!
//! Everything here is arbitrary precision: matrices over ℤ (Smith and
//! Hermite normal forms, integral kernels, complements of saturated
//! sublattices, characteristic polynomials) and polynomials over ℚ with
//! cyclotomic factorization for torus order polynomials.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (maintained by `num_rational`).
pub type Rat = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

// ---------------------------------------------------------------------------
// Integer matrices
// ---------------------------------------------------------------------------

/// Dense row-major matrix over ℤ.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMat { rows: r, cols: c, entries }
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let c = rows.first().map_or(0, Vec::len);
        Self::from_big_rows_cols(rows, c)
    }

    pub fn from_big_rows_cols(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let r = rows.len();
        let mut entries = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            entries.extend(row);
        }
        IntMat { rows: r, cols, entries }
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| i64::try_from(x).expect("entry fits i64")).collect())
            .collect()
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_i += k · row_j
    fn row_addmul(&mut self, i: usize, j: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for t in 0..self.cols {
            let add = k * &self[(j, t)];
            self[(i, t)] += add;
        }
    }

    /// col_j += k · col_i
    fn col_addmul(&mut self, j: usize, i: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for t in 0..self.rows {
            let add = k * &self[(t, i)];
            self[(t, j)] += add;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for t in 0..self.cols {
            let v = -self[(i, t)].clone();
            self[(i, t)] = v;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(k, k)] * &m[(i, j)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = &num / &prev;
                }
            }
            for i in k + 1..n {
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Rank over ℚ, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            let pivot = (row..m.rows).find(|&i| !m[(i, col)].is_zero());
            let Some(p) = pivot else { continue };
            m.swap_rows(row, p);
            for i in row + 1..m.rows {
                if m[(i, col)].is_zero() {
                    continue;
                }
                let a = m[(row, col)].clone();
                let b = m[(i, col)].clone();
                for j in col..m.cols {
                    let v = &a * &m[(i, j)] - &b * &m[(row, j)];
                    m[(i, j)] = v;
                }
            }
            rank += 1;
            row += 1;
            if row == m.rows {
                break;
            }
        }
        rank
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>())?;
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

struct SnfState {
    m: IntMat,
    p: IntMat,
    q: IntMat,
    qinv: IntMat,
}

impl SnfState {
    fn row_addmul(&mut self, i: usize, j: usize, k: &BigInt) {
        self.m.row_addmul(i, j, k);
        self.p.row_addmul(i, j, k);
    }

    fn col_addmul(&mut self, j: usize, i: usize, k: &BigInt) {
        self.m.col_addmul(j, i, k);
        self.q.col_addmul(j, i, k);
        self.qinv.row_addmul(i, j, &-k.clone());
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        self.p.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        self.q.swap_cols(a, b);
        self.qinv.swap_rows(a, b);
    }

    fn negate_row(&mut self, i: usize) {
        self.m.negate_row(i);
        self.p.negate_row(i);
    }
}

/// Smith normal form with transforms: returns `(d, p, q)` such that
/// `p·m·q = d`, `d` diagonal with nonnegative entries and `d[i] | d[i+1]`,
/// and `p`, `q` unimodular.
pub fn smith_normal_form(m: &IntMat) -> (IntMat, IntMat, IntMat) {
    let (d, p, q, _) = snf_with_qinv(m);
    (d, p, q)
}

pub(crate) fn snf_with_qinv(m: &IntMat) -> (IntMat, IntMat, IntMat, IntMat) {
    let rows = m.rows;
    let cols = m.cols;
    let mut st = SnfState {
        m: m.clone(),
        p: IntMat::identity(rows),
        q: IntMat::identity(cols),
        qinv: IntMat::identity(cols),
    };
    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            // Locate a pivot of minimal absolute value in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if st.m[(i, j)].is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some(b) => {
                            if st.m[(i, j)].abs() < st.m[b].abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            st.swap_rows(t, pi);
            st.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                if st.m[(i, t)].is_zero() {
                    continue;
                }
                let k = -(&st.m[(i, t)] / &st.m[(t, t)]);
                st.row_addmul(i, t, &k);
                if !st.m[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if st.m[(t, j)].is_zero() {
                    continue;
                }
                let k = -(&st.m[(t, j)] / &st.m[(t, t)]);
                st.col_addmul(j, t, &k);
                if !st.m[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce that the pivot divides the
            // rest of the block, else fold an offending row in and retry.
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&st.m[(i, j)] % &st.m[(t, t)]).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    st.row_addmul(t, i, &BigInt::one());
                }
                None => break,
            }
        }
    }
    for t in 0..steps {
        if st.m[(t, t)].is_negative() {
            st.negate_row(t);
        }
    }
    (st.m, st.p, st.q, st.qinv)
}

/// Diagonal of the Smith normal form (zeros trimmed from the end kept).
pub fn snf_diagonal(m: &IntMat) -> Vec<BigInt> {
    let (d, _, _) = smith_normal_form(m);
    (0..m.rows.min(m.cols)).map(|i| d[(i, i)].clone()).collect()
}

// ---------------------------------------------------------------------------
// Hermite normal form
// ---------------------------------------------------------------------------

/// Row-style Hermite normal form: pivots positive, entries above a pivot
/// reduced into `[0, pivot)`, zero rows dropped.  Two matrices have equal
/// HNF exactly when their rows span the same sublattice of ℤⁿ.
pub fn hermite_normal_form(m: &IntMat) -> IntMat {
    let mut w = m.clone();
    let rows = w.rows;
    let cols = w.cols;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid on the entries of column c at row r and below.
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if w[(i, c)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        if w[(i, c)].abs() < w[(b, c)].abs() {
                            best = Some(i);
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            w.swap_rows(r, b);
            let mut again = false;
            for i in r + 1..rows {
                if w[(i, c)].is_zero() {
                    continue;
                }
                let k = -(&w[(i, c)] / &w[(r, c)]);
                w.row_addmul(i, r, &k);
                if !w[(i, c)].is_zero() {
                    again = true;
                }
            }
            if !again {
                break;
            }
        }
        if w[(r, c)].is_zero() {
            continue;
        }
        if w[(r, c)].is_negative() {
            w.negate_row(r);
        }
        for i in 0..r {
            let k = -w[(i, c)].div_floor(&w[(r, c)]);
            w.row_addmul(i, r, &k);
        }
        r += 1;
    }
    let mut rows_out = Vec::new();
    for i in 0..r {
        rows_out.push(w.row(i).to_vec());
    }
    IntMat::from_big_rows_cols(rows_out, cols)
}

// ---------------------------------------------------------------------------
// Kernels and complements
// ---------------------------------------------------------------------------

/// ℤ-basis (as rows, in HNF) of `{ v : v · mᵀ = 0 }`.  The result is a
/// saturated sublattice: any integer vector orthogonal to the rows of `m`
/// is an integer combination of the basis.
pub fn integer_kernel(m: &IntMat) -> IntMat {
    let (d, _, q, _) = snf_with_qinv(m);
    let steps = m.rows.min(m.cols);
    let rank = (0..steps).filter(|&i| !d[(i, i)].is_zero()).count();
    // m vᵀ = 0  ⟺  vᵀ lies in the span of the trailing columns of q.
    let mut rows = Vec::new();
    for j in rank..m.cols {
        rows.push((0..m.cols).map(|i| q[(i, j)].clone()).collect());
    }
    hermite_normal_form(&IntMat::from_big_rows_cols(rows, m.cols))
}

/// Rows completing `sub` to a ℤ-basis of ℤ^ambient_rank.  Errors unless
/// the rows of `sub` are independent and span a saturated sublattice.
pub fn lattice_complement(sub: &IntMat, ambient_rank: usize) -> Result<IntMat> {
    assert_eq!(sub.cols, ambient_rank, "ambient rank mismatch");
    let k = sub.rows;
    let (d, _, _, qinv) = snf_with_qinv(sub);
    for i in 0..k.min(ambient_rank) {
        if !d[(i, i)].is_one() {
            return Err(Error::NotSaturated(d[(i, i)].to_string()));
        }
    }
    if k > ambient_rank {
        return Err(Error::Dimension("more rows than ambient rank".into()));
    }
    // p·sub·q = [I | 0] so the rows of sub and the trailing rows of q⁻¹
    // together form a basis of ℤ^ambient_rank.
    let mut rows = Vec::new();
    for i in k..ambient_rank {
        rows.push(qinv.row(i).to_vec());
    }
    Ok(IntMat::from_big_rows_cols(rows, ambient_rank))
}

// ---------------------------------------------------------------------------
// Rational elimination helpers
// ---------------------------------------------------------------------------

/// Solve `a · x = b` over ℚ where `a` is rows×cols with full column rank
/// and the system is consistent; returns None if inconsistent.
pub fn solve_rational(a: &IntMat, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.rows, b.len());
    let rows = a.rows;
    let cols = a.cols;
    let mut aug: Vec<Vec<Rat>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Rat> =
                a.row(i).iter().map(|x| Rat::from_integer(x.clone())).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !aug[i][c].is_zero()) else { continue };
        aug.swap(r, p);
        let inv = aug[r][c].clone();
        for j in c..=cols {
            let v = &aug[r][j] / &inv;
            aug[r][j] = v;
        }
        for i in 0..rows {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in c..=cols {
                    let v = &aug[i][j] - &f * &aug[r][j];
                    aug[i][j] = v;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // Inconsistency: zero row with nonzero rhs.
    for i in r..rows {
        if !aug[i][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for (idx, &c) in pivot_cols.iter().enumerate() {
        x[c] = aug[idx][cols].clone();
    }
    Some(x)
}

// ---------------------------------------------------------------------------
// Small dense i64 matrices (row-major, acting on column vectors)
// ---------------------------------------------------------------------------

pub type Mat64 = Vec<Vec<i64>>;

pub fn mat64_identity(n: usize) -> Mat64 {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mat64_mul(a: &Mat64, b: &Mat64) -> Mat64 {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for t in 0..k {
            let v = a[i][t];
            if v == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += v * b[t][j];
            }
        }
    }
    out
}

pub fn mat64_vec(a: &Mat64, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(&r, &x)| r * x).sum()).collect()
}

pub fn mat64_to_intmat(a: &Mat64) -> IntMat {
    IntMat::from_rows(a)
}

// ---------------------------------------------------------------------------
// Polynomials over ℚ
// ---------------------------------------------------------------------------

/// Dense polynomial in the indeterminate `q`, coefficients ascending.
/// The zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    pub coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::from_coeffs(vec![Rat::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    /// q^n
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = Rat::one();
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn divrem(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = div.degree();
        let dl = div.leading();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let f = &rem[i] / &dl;
            quot[i - dd] = f.clone();
            for (j, c) in div.coeffs.iter().enumerate() {
                let v = &rem[i - dd + j] - &f * c;
                rem[i - dd + j] = v;
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Exact division; None if there is a remainder.
    pub fn div_exact(&self, div: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(div);
        r.is_zero().then_some(q)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                if mag.denom().is_one() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{}", mag.numer(), mag.denom())?;
                }
                if k > 0 {
                    write!(f, "*")?;
                }
            }
            if k == 1 {
                write!(f, "q")?;
            } else if k > 1 {
                write!(f, "q^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Monic characteristic polynomial `det(q·I − m)`, computed by exact
/// interpolation through `deg+1` integer points.
pub fn characteristic_polynomial(m: &IntMat) -> Poly {
    assert_eq!(m.rows, m.cols, "characteristic polynomial of non-square matrix");
    let n = m.rows;
    let mut values = Vec::with_capacity(n + 1);
    for t in 0..=n as i64 {
        let mut a = m.clone();
        for i in 0..n {
            let v = BigInt::from(t) - &a[(i, i)];
            a[(i, i)] = v;
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let v = -a[(i, j)].clone();
                    a[(i, j)] = v;
                }
            }
        }
        values.push((rat_int(t), Rat::from_integer(a.det())));
    }
    interpolate(&values)
}

/// `det(q·m − I)`, sign-normalized to a positive leading coefficient.
pub fn scaled_det_minus_one(m: &IntMat) -> Poly {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut values = Vec::with_capacity(n + 1);
    for t in 0..=n as i64 {
        let mut a = IntMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] = BigInt::from(t) * &m[(i, j)];
            }
            let v = &a[(i, i)] - BigInt::one();
            a[(i, i)] = v;
        }
        values.push((rat_int(t), Rat::from_integer(a.det())));
    }
    let p = interpolate(&values);
    if p.leading().is_negative() {
        p.neg()
    } else {
        p
    }
}

fn interpolate(points: &[(Rat, Rat)]) -> Poly {
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut term = Poly::from_coeffs(vec![yi.clone()]);
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = xi - xj;
            term = term.mul(&Poly::from_coeffs(vec![-xj / &denom, Rat::one() / &denom]));
        }
        acc = acc.add(&term);
    }
    acc
}

// ---------------------------------------------------------------------------
// Cyclotomic products
// ---------------------------------------------------------------------------

/// A polynomial presented as ±q^k·∏ Φ_d^m.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycProduct {
    pub sign: i8,
    pub q_power: u32,
    /// d ↦ multiplicity of Φ_d
    pub factors: BTreeMap<u32, u32>,
}

impl CycProduct {
    pub fn expand(&self) -> Poly {
        let mut p = Poly::monomial(self.q_power as usize);
        if self.sign < 0 {
            p = p.neg();
        }
        for (&d, &m) in &self.factors {
            p = p.mul(&cyclotomic_poly(d).pow(m));
        }
        p
    }

    pub fn degree(&self) -> u32 {
        self.q_power + self.factors.iter().map(|(&d, &m)| euler_phi(d) * m).sum::<u32>()
    }

    /// Multiplicity of Φ_d.
    pub fn multiplicity(&self, d: u32) -> u32 {
        self.factors.get(&d).copied().unwrap_or(0)
    }

    /// The set of d with Φ_d appearing.
    pub fn support(&self) -> Vec<u32> {
        self.factors.keys().copied().collect()
    }
}

impl fmt::Display for CycProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.q_power == 1 {
            parts.push("q".into());
        } else if self.q_power > 1 {
            parts.push(format!("q^{}", self.q_power));
        }
        for (&d, &m) in &self.factors {
            let phi = cyclotomic_poly(d);
            let base = format!("({phi})");
            if m == 1 {
                parts.push(base);
            } else {
                parts.push(format!("{base}^{m}"));
            }
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        if self.sign < 0 {
            write!(f, "-")?;
        }
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for CycProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The d-th cyclotomic polynomial Φ_d, by recursive division of q^d − 1.
pub fn cyclotomic_poly(d: u32) -> Poly {
    fn go(d: u32, cache: &mut BTreeMap<u32, Poly>) -> Poly {
        if let Some(p) = cache.get(&d) {
            return p.clone();
        }
        let mut num = Poly::monomial(d as usize).sub(&Poly::one());
        for e in 1..d {
            if d % e == 0 {
                let div = go(e, cache);
                num = num.div_exact(&div).expect("cyclotomic division is exact");
            }
        }
        cache.insert(d, num.clone());
        num
    }
    assert!(d >= 1);
    go(d, &mut BTreeMap::new())
}

/// Factor `f` as ±q^k·∏ Φ_d^m by trial division, or report the residual
/// non-cyclotomic part.
pub fn cyclotomic_factorization(f: &Poly) -> Result<CycProduct> {
    if f.is_zero() {
        return Err(Error::NotCyclotomic("0".into()));
    }
    if !f.has_integer_coeffs() {
        return Err(Error::NotCyclotomic(format!("non-integer coefficients in {f}")));
    }
    let q_power = f.coeffs.iter().position(|c| !c.is_zero()).unwrap() as u32;
    let shifted = Poly::from_coeffs(f.coeffs[q_power as usize..].to_vec());
    let sign: i8 = if shifted.leading().is_negative() { -1 } else { 1 };
    if !shifted.leading().abs().is_one() {
        return Err(Error::NotCyclotomic(format!("leading coefficient of {f} is not ±1")));
    }
    let mut h = if sign < 0 { shifted.neg() } else { shifted };
    let mut factors = BTreeMap::new();
    let deg = h.degree() as u32;
    if deg > 0 {
        // φ(d) ≥ √(d/2), so φ(d) ≤ deg forces d ≤ 2·deg².
        let bound = 2 * deg * deg + 1;
        for d in 1..=bound {
            if euler_phi(d) > deg {
                continue;
            }
            let phi = cyclotomic_poly(d);
            while let Some(quot) = h.div_exact(&phi) {
                h = quot;
                *factors.entry(d).or_insert(0) += 1;
                if h.degree() == 0 {
                    break;
                }
            }
            if h.degree() == 0 {
                break;
            }
        }
    }
    if h != Poly::one() {
        return Err(Error::NotCyclotomic(h.to_string()));
    }
    Ok(CycProduct { sign, q_power, factors })
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMat {
        IntMat::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    /// Independent oracle for the invariant factors: d_k = D_k / D_{k−1}
    /// where D_k is the gcd of all k×k minors.
    fn invariant_factors_by_minors(a: &IntMat) -> Vec<BigInt> {
        fn minors(a: &IntMat, k: usize) -> BigInt {
            fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
                if k == 0 {
                    return vec![vec![]];
                }
                let mut out = Vec::new();
                for first in 0..n {
                    for mut rest in combos(n - first - 1, k - 1) {
                        for r in rest.iter_mut() {
                            *r += first + 1;
                        }
                        rest.insert(0, first);
                        out.push(rest);
                    }
                }
                out
            }
            let mut g = BigInt::zero();
            for rs in combos(a.rows, k) {
                for cs in combos(a.cols, k) {
                    let mut sub = IntMat::zeros(k, k);
                    for (i, &r) in rs.iter().enumerate() {
                        for (j, &c) in cs.iter().enumerate() {
                            sub[(i, j)] = a[(r, c)].clone();
                        }
                    }
                    g = g.gcd(&sub.det());
                }
            }
            g
        }
        let n = a.rows.min(a.cols);
        let mut out = Vec::new();
        let mut prev = BigInt::one();
        for k in 1..=n {
            let dk = minors(a, k);
            if dk.is_zero() {
                out.push(BigInt::zero());
            } else {
                out.push(&dk / &prev);
                prev = dk;
            }
        }
        out
    }

    fn check_snf(a: &IntMat) {
        let (d, p, q) = smith_normal_form(a);
        assert_eq!(p.mul(a).mul(&q), d, "p·m·q = d fails");
        assert!(p.det().abs().is_one(), "p not unimodular");
        assert!(q.det().abs().is_one(), "q not unimodular");
        let n = a.rows.min(a.cols);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    assert!(d[(i, j)].is_zero());
                }
            }
        }
        let mut stopped = false;
        for i in 0..n {
            assert!(!d[(i, i)].is_negative());
            if d[(i, i)].is_zero() {
                stopped = true;
            } else {
                assert!(!stopped, "zero before nonzero invariant factor");
                if i + 1 < n && !d[(i + 1, i + 1)].is_zero() {
                    assert!((&d[(i + 1, i + 1)] % &d[(i, i)]).is_zero(), "divisibility chain");
                }
            }
        }
        let oracle = invariant_factors_by_minors(a);
        let got: Vec<BigInt> = (0..n).map(|i| d[(i, i)].clone()).collect();
        assert_eq!(got, oracle, "invariant factors disagree with minor-gcd oracle");
    }

    #[test]
    fn snf_cartan_a2() {
        let a = m(&[&[2, -1], &[-1, 2]]);
        let (d, _, _) = smith_normal_form(&a);
        assert_eq!(d, m(&[&[1, 0], &[0, 3]]));
        check_snf(&a);
    }

    #[test]
    fn snf_identity_and_diagonal() {
        check_snf(&IntMat::identity(4));
        let (d, _, _) = smith_normal_form(&IntMat::identity(3));
        assert_eq!(d, IntMat::identity(3));
        let a = m(&[&[2, 0], &[0, 2]]);
        let (d, _, _) = smith_normal_form(&a);
        assert_eq!(d, a);
    }

    #[test]
    fn snf_random_small() {
        // Deterministic pseudo-random small matrices.
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for _ in 0..40 {
            let rows = 1 + (next() % 4) as usize;
            let cols = 1 + (next() % 4) as usize;
            let mut a = IntMat::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    a[(i, j)] = BigInt::from((next() % 11) as i64 - 5);
                }
            }
            check_snf(&a);
        }
    }

    #[test]
    fn hnf_examples() {
        let a = m(&[&[0, 1, 0, -1, 0, 0], &[0, 0, 0, 1, 0, 0]]);
        let h = hermite_normal_form(&a);
        assert_eq!(h, m(&[&[0, 1, 0, 0, 0, 0], &[0, 0, 0, 1, 0, 0]]));
        assert_eq!(hermite_normal_form(&IntMat::identity(3)), IntMat::identity(3));
        assert_eq!(hermite_normal_form(&m(&[&[2, 4]])), m(&[&[2, 4]]));
    }

    #[test]
    fn hnf_idempotent_and_row_mix_invariant() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let h = hermite_normal_form(&a);
        assert_eq!(hermite_normal_form(&h), h);
        // Unimodular row mixing does not change the lattice.
        let mut b = a.clone();
        b.row_addmul(0, 1, &BigInt::from(3));
        b.swap_rows(1, 2);
        b.negate_row(2);
        assert_eq!(hermite_normal_form(&b), h);
    }

    #[test]
    fn kernel_basics() {
        let k = integer_kernel(&m(&[&[1, 1]]));
        assert_eq!(k.rows, 1);
        // span{[1,-1]}
        assert_eq!(hermite_normal_form(&m(&[&[1, -1]])), k);
        let inv = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(integer_kernel(&inv).rows, 0);
    }

    #[test]
    fn kernel_orthogonality_and_saturation() {
        let a = m(&[&[2, 4, 6], &[0, 2, 2]]);
        let k = integer_kernel(&a);
        for i in 0..k.rows {
            for j in 0..a.rows {
                let dot: BigInt =
                    (0..3).map(|t| &k[(i, t)] * &a[(j, t)]).sum();
                assert!(dot.is_zero());
            }
        }
        // Saturation: all invariant factors of the kernel basis are 1.
        for d in snf_diagonal(&k) {
            assert!(d.is_one());
        }
    }

    #[test]
    fn complement_examples() {
        let sub = m(&[&[1, 0, 0], &[0, 1, 0]]);
        let c = lattice_complement(&sub, 3).unwrap();
        assert_eq!(c.rows, 1);
        let sub2 = m(&[&[1, 1]]);
        let c2 = lattice_complement(&sub2, 2).unwrap();
        let mut full = sub2.to_i64_rows();
        full.extend(c2.to_i64_rows());
        assert!(IntMat::from_rows(&full).det().abs().is_one());
        // Non-saturated input errors.
        assert!(lattice_complement(&m(&[&[2, 0]]), 2).is_err());
    }

    #[test]
    fn charpoly_examples() {
        assert_eq!(
            characteristic_polynomial(&IntMat::identity(2)),
            Poly::from_i64(&[1, -2, 1])
        );
        assert_eq!(
            characteristic_polynomial(&m(&[&[0, 1], &[1, 0]])),
            Poly::from_i64(&[-1, 0, 1])
        );
    }

    #[test]
    fn cyclotomic_basics() {
        assert_eq!(cyclotomic_poly(1), Poly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), Poly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic_poly(3), Poly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly(6), Poly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12).degree(), 4);
    }

    #[test]
    fn cyclotomic_factorization_examples() {
        let f = cyclotomic_factorization(&Poly::from_i64(&[1, 1, 1])).unwrap();
        assert_eq!(f.factors, BTreeMap::from([(3, 1)]));
        let prod = Poly::from_i64(&[-1, 1]).pow(2).mul(&Poly::from_i64(&[1, 1, 1]));
        let f2 = cyclotomic_factorization(&prod).unwrap();
        assert_eq!(f2.factors, BTreeMap::from([(1, 2), (3, 1)]));
        assert_eq!(f2.to_string(), "(q-1)^2*(q^2+q+1)");
        assert_eq!(f2.expand(), prod);
        assert!(cyclotomic_factorization(&Poly::from_i64(&[2, 0, 1])).is_err());
    }

    #[test]
    fn poly_display() {
        assert_eq!(Poly::from_i64(&[-1, 1]).to_string(), "q-1");
        assert_eq!(Poly::from_i64(&[1, 1, 1]).to_string(), "q^2+q+1");
        assert_eq!(Poly::from_i64(&[0, -2, 0, 1]).to_string(), "q^3-2*q");
        assert_eq!(cyclotomic_factorization(&Poly::from_i64(&[1, 2, 1])).unwrap().to_string(), "(q+1)^2");
    }

    #[test]
    fn solve_rational_works() {
        let a = m(&[&[2, 1], &[1, 1], &[3, 2]]);
        let b = vec![rat_int(5), rat_int(3), rat_int(8)];
        let x = solve_rational(&a, &b).unwrap();
        assert_eq!(x, vec![rat_int(2), rat_int(1)]);
        let bad = vec![rat_int(5), rat_int(3), rat_int(9)];
        assert!(solve_rational(&a, &bad).is_none());
    }
}
