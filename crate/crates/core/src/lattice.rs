//! Exact integer and rational linear algebra.
//!
//! Everything here works over `BigInt` / `BigRational`. Kernels and quotient
//! lattices are derived from the row Hermite normal form.

use std::fmt;
use std::ops::Deref;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_from_int(v: &Int) -> Rat {
    BigRational::from_integer(v.clone())
}

/// An element of `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LatticeVector(pub Vec<Int>);

impl LatticeVector {
    pub fn new(coords: Vec<Int>) -> Self {
        LatticeVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(n: usize) -> Self {
        LatticeVector(vec![Int::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = Int::one();
        v
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &[Int]) -> Int {
        dot(&self.0, other)
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Int) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn content(&self) -> Int {
        content(&self.0)
    }

    pub fn norm_squared(&self) -> Int {
        self.0.iter().map(|a| a * a).sum()
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.0.iter().map(|c| c.to_i64()).collect()
    }
}

impl Deref for LatticeVector {
    type Target = [Int];
    fn deref(&self) -> &[Int] {
        &self.0
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// gcd of all entries (nonnegative; zero for the zero vector).
pub fn content(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Divides out the gcd of the coordinates.
pub fn primitive_of(v: &LatticeVector) -> Result<LatticeVector> {
    let g = v.content();
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(LatticeVector(v.0.iter().map(|x| x / &g).collect()))
}

/// Dense integer matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: Vec<Vec<Int>>,
    cols: usize,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<Int>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows, cols }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::new(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(), cols)
    }

    pub fn from_vectors(vs: &[LatticeVector], cols: usize) -> Self {
        Self::new(vs.iter().map(|v| v.0.clone()).collect(), cols)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows: vec![vec![Int::zero(); cols]; rows], cols }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = Int::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<Int>] {
        &self.rows
    }

    pub fn row_vectors(&self) -> Vec<LatticeVector> {
        self.rows.iter().map(|r| LatticeVector(r.clone())).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.rows[i][j]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                t.rows[j][i] = x.clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows.len());
        let mut out = IntMatrix::zeros(self.rows.len(), other.cols);
        for (i, r) in self.rows.iter().enumerate() {
            for (k, a) in r.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.rows[i][j] += a * &other.rows[k][j];
                }
            }
        }
        out
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        self.rows.iter().map(|r| dot(r, v)).collect()
    }

    /// `v^T * self` for a row vector `v`.
    pub fn apply_left(&self, v: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::zero(); self.cols];
        for (a, r) in v.iter().zip(&self.rows) {
            if a.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(r) {
                *o += a * x;
            }
        }
        out
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.rows[i].iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
    }

    /// row[target] -= q * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        let src = self.rows[source].clone();
        for (t, s) in self.rows[target].iter_mut().zip(&src) {
            *t -= q * s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.rows[i].iter_mut() {
            *x = -&*x;
        }
    }
}

/// Row Hermite normal form: returns `(H, U)` with `U` unimodular and `U * m = H`.
///
/// `H` is in row echelon form, pivots are positive, entries above a pivot lie in
/// `[0, pivot)`, and zero rows come last.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let nr = m.nrows();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(nr);
    let mut pivot_row = 0;
    for col in 0..m.ncols() {
        if pivot_row == nr {
            break;
        }
        loop {
            // smallest nonzero |entry| in this column at or below pivot_row
            let best = (pivot_row..nr)
                .filter(|&r| !h.rows[r][col].is_zero())
                .min_by(|&a, &b| h.rows[a][col].abs().cmp(&h.rows[b][col].abs()));
            let Some(best) = best else { break };
            h.swap_rows(pivot_row, best);
            u.swap_rows(pivot_row, best);
            let mut done = true;
            for r in pivot_row + 1..nr {
                if h.rows[r][col].is_zero() {
                    continue;
                }
                let q = h.rows[r][col].div_floor(&h.rows[pivot_row][col]);
                h.sub_row_multiple(r, pivot_row, &q);
                u.sub_row_multiple(r, pivot_row, &q);
                if !h.rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.rows[pivot_row][col].is_zero() {
            continue;
        }
        if h.rows[pivot_row][col].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        let p = h.rows[pivot_row][col].clone();
        for r in 0..pivot_row {
            let q = h.rows[r][col].div_floor(&p);
            h.sub_row_multiple(r, pivot_row, &q);
            u.sub_row_multiple(r, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Number of nonzero rows of an HNF.
fn hnf_rank(h: &IntMatrix) -> usize {
    (0..h.nrows()).take_while(|&i| !h.is_zero_row(i)).count()
}

/// Z-basis of `{x in Z^cols : m x = 0}`, returned in Hermite normal form.
pub fn integer_kernel_basis(m: &IntMatrix) -> Vec<LatticeVector> {
    let t = m.transpose();
    let (h, u) = hnf(&t);
    let r = hnf_rank(&h);
    let kernel: Vec<Vec<Int>> = (r..t.nrows()).map(|i| u.row(i).to_vec()).collect();
    if kernel.is_empty() {
        return Vec::new();
    }
    let (kh, _) = hnf(&IntMatrix::new(kernel, m.ncols()));
    let k = hnf_rank(&kh);
    (0..k).map(|i| LatticeVector(kh.row(i).to_vec())).collect()
}

/// The index of a subgroup of `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Index {
    Finite(Int),
    Infinite,
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(i) => write!(f, "{i}"),
            Index::Infinite => write!(f, "infinite"),
        }
    }
}

/// HNF basis of the subgroup generated by `generators` and its index in `Z^ambient_rank`.
pub fn subgroup_index(generators: &[LatticeVector], ambient_rank: usize) -> (IntMatrix, Index) {
    let m = IntMatrix::from_vectors(generators, ambient_rank);
    let (h, _) = hnf(&m);
    let r = hnf_rank(&h);
    let basis = IntMatrix::new((0..r).map(|i| h.row(i).to_vec()).collect(), ambient_rank);
    if r < ambient_rank {
        return (basis, Index::Infinite);
    }
    let mut idx = Int::one();
    for i in 0..r {
        let pivot = basis.row(i).iter().find(|x| !x.is_zero()).expect("nonzero row");
        idx *= pivot;
    }
    (basis, Index::Finite(idx))
}

/// Saturated Z-basis of `span_Q(vectors) ∩ Z^n`.
pub fn saturation(vectors: &[LatticeVector], n: usize) -> Vec<LatticeVector> {
    let g = IntMatrix::from_vectors(vectors, n);
    let perp = integer_kernel_basis(&g);
    integer_kernel_basis(&IntMatrix::from_vectors(&perp, n))
}

/// For a matrix `b` (d x n) whose rows form a basis of a saturated sublattice,
/// returns `c` (n x d) with `b * c = I_d`.
pub fn right_inverse(b: &IntMatrix) -> Result<IntMatrix> {
    let d = b.nrows();
    let n = b.ncols();
    if d == 0 {
        return Ok(IntMatrix::zeros(n, 0));
    }
    let (h, u) = hnf(&b.transpose());
    for i in 0..n {
        for j in 0..d {
            let expect = if i == j { Int::one() } else { Int::zero() };
            if h.get(i, j) != &expect {
                return Err(Error::Validation("rows do not span a saturated lattice".into()));
            }
        }
    }
    let top = IntMatrix::new((0..d).map(|i| u.row(i).to_vec()).collect(), n);
    Ok(top.transpose())
}

/// Determinant of a square integer matrix (fraction-free Bareiss elimination).
pub fn det(m: &IntMatrix) -> Int {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "determinant of a non-square matrix");
    if n == 0 {
        return Int::one();
    }
    let mut a: Vec<Vec<Int>> = m.rows().to_vec();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Int::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Reduced row echelon form over Q; returns the nonzero rows and pivot columns.
pub fn rref(rows: &[Vec<Rat>], cols: usize) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut a: Vec<Vec<Rat>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    (a, pivots)
}

/// Rank over Q.
pub fn rank_q(rows: &[Vec<Rat>], cols: usize) -> usize {
    rref(rows, cols).1.len()
}

/// Rank over Q of an integer matrix.
pub fn rank_int(m: &IntMatrix) -> usize {
    let rows: Vec<Vec<Rat>> = m.rows().iter().map(|r| r.iter().map(rat_from_int).collect()).collect();
    rank_q(&rows, m.ncols())
}

/// Basis of `{x in Q^cols : rows x = 0}`.
pub fn rational_kernel(rows: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let (r, pivots) = rref(rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); cols];
            v[f] = Rat::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Solves `a x = b` over Q (a is rows x cols). Returns any solution.
pub fn solve_rational(a: &[Vec<Rat>], b: &[Rat], cols: usize) -> Option<Vec<Rat>> {
    let aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, cols + 1);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[cols].clone();
    }
    Some(x)
}

/// Clears denominators of a rational vector and returns the primitive integer
/// vector pointing in the same direction.
pub fn primitive_from_rational(v: &[Rat]) -> Result<LatticeVector> {
    let l = v.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Int> = v.iter().map(|x| (x * rat_from_int(&l)).to_integer()).collect();
    primitive_of(&LatticeVector(ints))
}

/// A linear subspace of `Q^n`, stored as the nonzero rows of its reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rat>>,
}

impl Subspace {
    pub fn new(ambient: usize, rows: &[Vec<Rat>]) -> Self {
        let (basis, _) = rref(rows, ambient);
        Subspace { ambient, basis }
    }

    pub fn full(ambient: usize) -> Self {
        let rows: Vec<Vec<Rat>> = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect();
        Subspace { ambient, basis: rows }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    fn orthogonal(&self) -> Vec<Vec<Rat>> {
        rational_kernel(&self.basis, self.ambient)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let mut perp = self.orthogonal();
        perp.extend(other.orthogonal());
        let rows = rational_kernel(&perp, self.ambient);
        Subspace::new(self.ambient, &rows)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::new(self.ambient, &rows)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim()
    }
}

/// Projection `Z^n -> Z^n / sat(span tau)` together with a chosen section.
///
/// The projection matrix has the basis of `tau^perp ∩ M` as rows, so quotient
/// coordinates are pairings with that basis and characters of the quotient embed
/// into `M` through the same rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    source_rank: usize,
    sublattice: Vec<LatticeVector>,
    projection: IntMatrix,
    section: IntMatrix,
}

impl QuotientMap {
    /// Like [`quotient_lattice`] but allows the trivial (rank 0) quotient.
    pub fn build(n: usize, tau_generators: &[LatticeVector]) -> QuotientMap {
        let g = IntMatrix::from_vectors(tau_generators, n);
        let perp = integer_kernel_basis(&g);
        let projection = IntMatrix::from_vectors(&perp, n);
        let sublattice = integer_kernel_basis(&projection);
        let section = right_inverse(&projection).expect("kernel bases are saturated");
        QuotientMap { source_rank: n, sublattice, projection, section }
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn quotient_rank(&self) -> usize {
        self.projection.nrows()
    }

    /// Saturated basis of the sublattice killed by the projection.
    pub fn sublattice(&self) -> &[LatticeVector] {
        &self.sublattice
    }

    /// `(n - d) x n`; rows form a basis of `tau^perp ∩ M`.
    pub fn projection(&self) -> &IntMatrix {
        &self.projection
    }

    /// `n x (n - d)`; `projection * section = I`.
    pub fn section(&self) -> &IntMatrix {
        &self.section
    }

    pub fn project(&self, v: &[Int]) -> LatticeVector {
        LatticeVector(self.projection.apply(v))
    }

    pub fn lift(&self, y: &[Int]) -> LatticeVector {
        LatticeVector(self.section.apply(y))
    }

    /// Another valid section: column `j` is shifted by `sum_i shift[i][j] * sublattice[i]`.
    pub fn with_section_shift(&self, shift: &IntMatrix) -> QuotientMap {
        assert_eq!(shift.nrows(), self.sublattice.len());
        assert_eq!(shift.ncols(), self.quotient_rank());
        let k = IntMatrix::from_vectors(&self.sublattice, self.source_rank).transpose();
        let delta = k.mul(shift);
        let rows = (0..self.source_rank)
            .map(|i| (0..self.quotient_rank()).map(|j| self.section.get(i, j) + delta.get(i, j)).collect())
            .collect();
        QuotientMap { section: IntMatrix::new(rows, self.quotient_rank()), ..self.clone() }
    }
}

/// The quotient of `Z^n` by the saturation of the span of `tau_generators`.
pub fn quotient_lattice(n: usize, tau_generators: &[LatticeVector]) -> Result<QuotientMap> {
    let q = QuotientMap::build(n, tau_generators);
    if q.quotient_rank() == 0 {
        return Err(Error::FullSpan);
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(v)
    }

    /// Brute-force check that `v` is an integer combination of `rows` with small coefficients.
    fn in_span_bruteforce(v: &[Int], rows: &[Vec<Int>], bound: i64) -> bool {
        fn rec(v: &[Int], rows: &[Vec<Int>], acc: Vec<Int>, i: usize, bound: i64) -> bool {
            if i == rows.len() {
                return acc.as_slice() == v;
            }
            (-bound..=bound).any(|c| {
                let next: Vec<Int> = acc.iter().zip(&rows[i]).map(|(a, r)| a + r * c).collect();
                rec(v, rows, next, i + 1, bound)
            })
        }
        rec(v, rows, vec![Int::zero(); v.len()], 0, bound)
    }

    #[test]
    fn hnf_identity_and_diagonal() {
        let id = IntMatrix::identity(2);
        let (h, u) = hnf(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);
        let d = IntMatrix::from_i64(&[&[2, 0], &[0, 2]]);
        assert_eq!(hnf(&d).0, d);
    }

    #[test]
    fn hnf_row_span_matches_by_membership() {
        let m = IntMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6]]);
        let (h, u) = hnf(&m);
        assert_eq!(h.get(0, 0), &int(1));
        assert_eq!(u.mul(&m), h);
        assert_eq!(det(&u).abs(), int(1));
        for r in m.rows() {
            assert!(in_span_bruteforce(r, h.rows(), 6));
        }
        for r in h.rows() {
            assert!(in_span_bruteforce(r, m.rows(), 6));
        }
        assert_eq!(h, IntMatrix::from_i64(&[&[1, 2, 3], &[0, 3, 6]]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(integer_kernel_basis(&IntMatrix::from_i64(&[&[1, 1]])), vec![lv(&[1, -1])]);
        assert!(integer_kernel_basis(&IntMatrix::identity(3)).is_empty());
        let k = integer_kernel_basis(&IntMatrix::from_i64(&[&[2, 4]]));
        assert_eq!(k, vec![lv(&[2, -1])]);
    }

    #[test]
    fn kernel_of_two_four_is_saturated_by_enumeration() {
        // every small kernel vector of [2,4] is a multiple of (2,-1)
        for x in -10i64..=10 {
            for y in -10i64..=10 {
                if 2 * x + 4 * y == 0 {
                    assert_eq!(x, -2 * y);
                }
            }
        }
    }

    #[test]
    fn subgroup_index_examples() {
        assert_eq!(subgroup_index(&[lv(&[2])], 1).1, Index::Finite(int(2)));
        assert_eq!(subgroup_index(&[lv(&[1, 0]), lv(&[0, 1])], 2).1, Index::Finite(int(1)));
        assert_eq!(subgroup_index(&[lv(&[2, 0]), lv(&[0, 3])], 2).1, Index::Finite(int(6)));
        assert_eq!(subgroup_index(&[lv(&[1, 1])], 2).1, Index::Infinite);
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive_of(&lv(&[2, 4, 6])).unwrap(), lv(&[1, 2, 3]));
        assert_eq!(primitive_of(&lv(&[1, -1])).unwrap(), lv(&[1, -1]));
        assert_eq!(primitive_of(&lv(&[0, -6, 9])).unwrap(), lv(&[0, -2, 3]));
        assert_eq!(primitive_of(&lv(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn rank_examples() {
        let id: Vec<Vec<Rat>> =
            (0..3).map(|i| (0..3).map(|j| if i == j { rat(1, 1) } else { rat(0, 1) }).collect()).collect();
        assert_eq!(rank_q(&id, 3), 3);
        assert_eq!(rank_q(&vec![vec![rat(0, 1); 2]; 2], 2), 0);
        assert_eq!(rank_q(&[vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]], 2), 1);
    }

    #[test]
    fn det_small() {
        assert_eq!(det(&IntMatrix::from_i64(&[&[1, 1], &[1, -1]])), int(-2));
        assert_eq!(det(&IntMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]])), int(-5));
        assert_eq!(det(&IntMatrix::from_i64(&[&[1, 2], &[2, 4]])), int(0));
    }

    #[test]
    fn subspace_ops() {
        let q = |v: &[i64]| v.iter().map(|&x| rat(x, 1)).collect::<Vec<_>>();
        let x = Subspace::new(2, &[q(&[1, 0])]);
        let y = Subspace::new(2, &[q(&[0, 1])]);
        assert_eq!(x.intersect(&y).dim(), 0);
        assert_eq!(x.sum(&y).dim(), 2);
        assert!(Subspace::full(2).contains(&x));
        assert!(!x.contains(&y));
    }

    #[test]
    fn quotient_examples() {
        let q = quotient_lattice(3, &[lv(&[1, 1, 1])]).unwrap();
        assert_eq!(q.quotient_rank(), 2);
        assert!(q.project(&lv(&[1, 1, 1])).is_zero());

        let q = quotient_lattice(2, &[lv(&[2, 0])]).unwrap();
        assert!(q.project(&lv(&[1, 0])).is_zero());
        assert!(!q.project(&lv(&[0, 1])).is_zero());

        let q = quotient_lattice(3, &[lv(&[1, 1, 2]), lv(&[1, -1, 2])]).unwrap();
        assert_eq!(q.quotient_rank(), 1);
        // the kernel of the projection is the saturation: (1,0,2) and (0,1,0)
        assert!(q.project(&lv(&[1, 0, 2])).is_zero());
        assert!(q.project(&lv(&[0, 1, 0])).is_zero());
        assert!(!q.project(&lv(&[0, 0, 1])).is_zero());

        assert_eq!(quotient_lattice(2, &[lv(&[1, 0]), lv(&[0, 1])]), Err(Error::FullSpan));
    }

    #[test]
    fn section_shift_is_still_a_section() {
        let q = quotient_lattice(3, &[lv(&[1, 2, 3])]).unwrap();
        let shifted = q.with_section_shift(&IntMatrix::from_i64(&[&[3, -2]]));
        assert_ne!(shifted.section(), q.section());
        assert_eq!(shifted.projection().mul(shifted.section()), IntMatrix::identity(2));
    }
}
