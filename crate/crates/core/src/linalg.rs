//! Dense exact linear algebra over `F_p`.
//!
//! Matrices are row-major. Elimination always takes the first nonzero entry of
//! the leftmost remaining column as pivot, so results are reproducible.

use crate::error::{Error, Result};
use crate::field::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
    field: PrimeField,
}

/// Output of [`DenseMatrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: DenseMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// A particular solution plus a basis of the kernel.
#[derive(Clone, Debug)]
pub struct Solution {
    pub particular: Vec<u64>,
    pub kernel: Vec<Vec<u64>>,
}

impl DenseMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
            field,
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.modulus();
        }
        m
    }

    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.iter().map(|&x| x % field.modulus()));
        }
        Self {
            rows: rows.len(),
            cols,
            data,
            field,
        }
    }

    pub fn from_columns(field: PrimeField, rows: usize, cols: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged column");
            for (i, &x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x % field.modulus();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<u64> {
        self.row(i).to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * out.cols + j;
                        out.data[idx] = f.mul_add(out.data[idx], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(
                    0,
                    |acc, (&a, &b)| if a == 0 || b == 0 { acc } else { f.mul_add(acc, a, b) },
                )
            })
            .collect()
    }

    /// In-place reduction to reduced row echelon form. Returns the pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in c..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            for j in c..cols {
                let idx = r * cols + j;
                self.data[idx] = f.mul(self.data[idx], inv);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                for j in c..cols {
                    let pv = self.data[r * cols + j];
                    if pv != 0 {
                        let idx = i * cols + j;
                        self.data[idx] = f.mul_add(self.data[idx], neg, pv);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> Rref {
        let mut reduced = self.clone();
        let pivots = reduced.rref_in_place();
        Rref {
            rank: pivots.len(),
            reduced,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let Rref { reduced, pivots, .. } = self.rref();
        kernel_from_rref(&reduced, &pivots, self.cols)
    }

    /// Solves `self * x = b`.
    pub fn solve(&self, b: &[u64]) -> Result<Solution> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                self.rows
            )));
        }
        let f = self.field;
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            aug.data[i * (self.cols + 1)..i * (self.cols + 1) + self.cols].copy_from_slice(self.row(i));
            aug.data[i * (self.cols + 1) + self.cols] = b[i] % f.modulus();
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut particular = vec![0; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            particular[c] = aug.get(r, self.cols);
        }
        // kernel from the coefficient part of the reduced augmented matrix
        let mut coeff = Self::zeros(f, self.rows, self.cols);
        for i in 0..self.rows {
            coeff.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(&aug.row(i)[..self.cols]);
        }
        let kernel = kernel_from_rref(&coeff, &pivots, self.cols);
        Ok(Solution { particular, kernel })
    }

    pub fn inverse(&self) -> Option<DenseMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let f = self.field;
        let mut aug = Self::zeros(f, n, 2 * n);
        for i in 0..n {
            aug.data[i * 2 * n..i * 2 * n + n].copy_from_slice(self.row(i));
            aug.data[i * 2 * n + n + i] = 1;
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(f, n, n);
        for i in 0..n {
            inv.data[i * n..(i + 1) * n].copy_from_slice(&aug.row(i)[n..]);
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Nilpotency test for square matrices (`self^n == 0`).
    pub fn is_nilpotent(&self) -> bool {
        assert_eq!(self.rows, self.cols);
        let mut p = self.clone();
        let mut k = 1;
        while k < self.rows {
            p = p.mul(&p);
            k *= 2;
        }
        p.is_zero()
    }

    pub fn trace(&self) -> u64 {
        let f = self.field;
        (0..self.rows.min(self.cols)).fold(0, |acc, i| f.add(acc, self.get(i, i)))
    }
}

fn kernel_from_rref(reduced: &DenseMatrix, pivots: &[usize], cols: usize) -> Vec<Vec<u64>> {
    let f = reduced.field;
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; cols];
        v[free] = 1;
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = f.neg(reduced.get(r, free));
        }
        basis.push(v);
    }
    basis
}

/// Basis (rows of an RREF) of the span of `vectors`.
pub fn row_space_basis(field: PrimeField, dim: usize, vectors: &[Vec<u64>]) -> Vec<Vec<u64>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let r = DenseMatrix::from_rows(field, dim, vectors).rref();
    (0..r.rank).map(|i| r.reduced.row_vec(i)).collect()
}

pub fn rank_of(field: PrimeField, dim: usize, vectors: &[Vec<u64>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    DenseMatrix::from_rows(field, dim, vectors).rank()
}

/// Coset representatives for `span / subspace`.
///
/// Representatives are taken from `span` itself (greedily, in input order),
/// so they inherit any homogeneity the spanning vectors have.
pub fn quotient_basis(
    field: PrimeField,
    dim: usize,
    span: &[Vec<u64>],
    subspace: &[Vec<u64>],
) -> Result<Vec<Vec<u64>>> {
    let span_rank = rank_of(field, dim, span);
    let mut stacked: Vec<Vec<u64>> = span.to_vec();
    stacked.extend(subspace.iter().cloned());
    if rank_of(field, dim, &stacked) != span_rank {
        return Err(Error::NotASubspace);
    }
    let mut echelon = IncrementalBasis::new(field, dim);
    for s in subspace {
        echelon.insert(s.clone());
    }
    let mut reps = Vec::new();
    for v in span {
        if echelon.insert(v.clone()) {
            reps.push(v.clone());
        }
    }
    Ok(reps)
}

/// Echelon basis grown one vector at a time; used to test membership and
/// extract independent subsets without re-running a full elimination.
#[derive(Clone, Debug)]
pub struct IncrementalBasis {
    field: PrimeField,
    dim: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl IncrementalBasis {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        Self {
            field,
            dim,
            rows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the current rows; returns the remainder.
    pub fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        let f = self.field;
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c == 0 {
                continue;
            }
            let neg = f.neg(c);
            for (x, &r) in v.iter_mut().zip(row) {
                if r != 0 {
                    *x = f.mul_add(*x, neg, r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&x| x == 0)
    }

    /// Inserts `v`; returns `true` if it was independent of the current rows.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = self.field;
        let inv = f.inv(v[pivot]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // keep rows fully reduced at their pivots
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                let neg = f.neg(c);
                for (x, &r) in row.iter_mut().zip(&v) {
                    if r != 0 {
                        *x = f.mul_add(*x, neg, r);
                    }
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }
}

/// Expresses vectors in the span of a fixed independent family.
///
/// Built from independent `generators`; [`Coordinates::coords`] returns the
/// unique coefficients of a vector lying in their span.
#[derive(Clone, Debug)]
pub struct Coordinates {
    field: PrimeField,
    dim: usize,
    count: usize,
    pivot_rows: Vec<usize>,
    inverse: DenseMatrix,
}

impl Coordinates {
    pub fn new(field: PrimeField, dim: usize, generators: &[Vec<u64>]) -> Result<Self> {
        let count = generators.len();
        if count == 0 {
            return Ok(Self {
                field,
                dim,
                count,
                pivot_rows: Vec::new(),
                inverse: DenseMatrix::zeros(field, 0, 0),
            });
        }
        // generators are the rows of g (count x dim); pick `count` independent columns.
        let g = DenseMatrix::from_rows(field, dim, generators);
        let r = g.rref();
        if r.rank != count {
            return Err(Error::Dimension("generators are not independent".into()));
        }
        let pivot_rows = r.pivots.clone();
        // square matrix: sub[k][j] = generators[k][pivot_rows[j]]
        let mut sub = DenseMatrix::zeros(field, count, count);
        for (k, gen) in generators.iter().enumerate() {
            for (j, &c) in pivot_rows.iter().enumerate() {
                sub.set(k, j, gen[c]);
            }
        }
        // coords x satisfy x^T sub = v_P^T, i.e. x = (sub^T)^{-1} v_P
        let inverse = sub
            .transpose()
            .inverse()
            .ok_or_else(|| Error::Dimension("singular coordinate system".into()))?;
        Ok(Self {
            field,
            dim,
            count,
            pivot_rows,
            inverse,
        })
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficients of `v` assuming it lies in the span.
    pub fn coords(&self, v: &[u64]) -> Vec<u64> {
        if self.count == 0 {
            return Vec::new();
        }
        let vp: Vec<u64> = self.pivot_rows.iter().map(|&c| v[c]).collect();
        let _ = self.field;
        self.inverse.mul_vec(&vp)
    }
}

/// `sum_k c_k * v_k`.
pub fn combine(field: PrimeField, dim: usize, coeffs: &[u64], vectors: &[Vec<u64>]) -> Vec<u64> {
    let mut out = vec![0; dim];
    for (&c, v) in coeffs.iter().zip(vectors) {
        if c == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(v) {
            if x != 0 {
                *o = field.mul_add(*o, c, x);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let k = f(7);
        let id = DenseMatrix::identity(k, 3);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.rank, 3);
        let z = DenseMatrix::zeros(k, 2, 5);
        let r = z.rref();
        assert_eq!(r.rank, 0);
        assert!(r.reduced.is_zero());
    }

    #[test]
    fn rref_rank_one_over_f5() {
        let k = f(5);
        let m = DenseMatrix::from_rows(k, 2, &[vec![1, 2], vec![2, 4]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.reduced, DenseMatrix::from_rows(k, 2, &[vec![1, 2], vec![0, 0]]));
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn solve_cases() {
        let k = f(7);
        let id = DenseMatrix::identity(k, 3);
        let s = id.solve(&[3, 1, 4]).unwrap();
        assert_eq!(s.particular, vec![3, 1, 4]);
        assert!(s.kernel.is_empty());

        let z = DenseMatrix::zeros(k, 2, 3);
        let s = z.solve(&[0, 0]).unwrap();
        assert_eq!(s.particular, vec![0, 0, 0]);
        assert_eq!(s.kernel.len(), 3);

        let m = DenseMatrix::from_rows(k, 2, &[vec![1, 1]]);
        let s = m.solve(&[1]).unwrap();
        assert_eq!(s.particular, vec![1, 0]);
        assert_eq!(s.kernel.len(), 1);

        assert_eq!(z.solve(&[1, 0]).unwrap_err(), Error::Inconsistent);
    }

    #[test]
    fn quotient_cases() {
        let k = f(11);
        let span = vec![vec![1, 0], vec![0, 1]];
        let q = quotient_basis(k, 2, &span, &[vec![1, 0]]).unwrap();
        assert_eq!(q, vec![vec![0, 1]]);
        assert!(quotient_basis(k, 2, &span, &span).unwrap().is_empty());
        let e: Vec<Vec<u64>> = (0..5).map(|i| (0..6).map(|j| u64::from(i == j)).collect()).collect();
        let sub = vec![e[0].clone(), combine(k, 6, &[1, 1], &[e[1].clone(), e[2].clone()])];
        assert_eq!(quotient_basis(k, 6, &e, &sub).unwrap().len(), 3);
        assert_eq!(
            quotient_basis(k, 6, &e[..2], &[e[3].clone()]).unwrap_err(),
            Error::NotASubspace
        );
    }

    #[test]
    fn inverse_and_nilpotent() {
        let k = f(13);
        let m = DenseMatrix::from_rows(k, 2, &[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), DenseMatrix::identity(k, 2));
        let n = DenseMatrix::from_rows(k, 3, &[vec![0, 1, 5], vec![0, 0, 2], vec![0, 0, 0]]);
        assert!(n.is_nilpotent());
        assert!(!m.is_nilpotent());
        assert!(n.inverse().is_none());
    }

    fn arb_matrix(p: u64) -> impl Strategy<Value = (usize, usize, Vec<u64>)> {
        (1usize..7, 1usize..7).prop_flat_map(move |(r, c)| (Just(r), Just(c), proptest::collection::vec(0..p, r * c)))
    }

    proptest! {
        #[test]
        fn solve_returns_solution_and_kernel((r, c, data) in arb_matrix(7), x0 in proptest::collection::vec(0u64..7, 7)) {
            let k = f(7);
            let rows: Vec<Vec<u64>> = data.chunks(c).map(|s| s.to_vec()).collect();
            let m = DenseMatrix::from_rows(k, c, &rows);
            let x0 = &x0[..c];
            let b = m.mul_vec(x0);
            let s = m.solve(&b).unwrap();
            prop_assert_eq!(m.mul_vec(&s.particular), b);
            for v in &s.kernel {
                prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
            }
            prop_assert_eq!(s.kernel.len(), c - m.rank());
            let _ = r;
        }

        #[test]
        fn rref_is_idempotent((_r, c, data) in arb_matrix(5)) {
            let k = f(5);
            let rows: Vec<Vec<u64>> = data.chunks(c).map(|s| s.to_vec()).collect();
            let once = DenseMatrix::from_rows(k, c, &rows).rref().reduced;
            let twice = once.rref().reduced;
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn quotient_count_matches(seed in proptest::collection::vec(0u64..11, 64), sub_n in 0usize..4, extra in 0usize..4) {
            let k = f(11);
            let dim = 8;
            let sub: Vec<Vec<u64>> = (0..sub_n).map(|i| seed[i*8..i*8+8].to_vec()).collect();
            let mut span = sub.clone();
            for i in 0..extra {
                span.push(seed[(4+i)*8..(4+i)*8+8].to_vec());
            }
            let q = quotient_basis(k, dim, &span, &sub).unwrap();
            prop_assert_eq!(q.len(), rank_of(k, dim, &span) - rank_of(k, dim, &sub));
        }

        #[test]
        fn coordinates_recover_combination(seed in proptest::collection::vec(0u64..13, 40), coeffs in proptest::collection::vec(0u64..13, 5)) {
            let k = f(13);
            let mut basis = IncrementalBasis::new(k, 8);
            let mut gens = Vec::new();
            for ch in seed.chunks(8) {
                if basis.insert(ch.to_vec()) { gens.push(ch.to_vec()); }
            }
            let c = &coeffs[..gens.len()];
            let v = combine(k, 8, c, &gens);
            let coords = Coordinates::new(k, 8, &gens).unwrap();
            prop_assert_eq!(coords.coords(&v), c.to_vec());
        }
    }
}
