//! Algebras given by structure constants with a distinguished complete set of
//! orthogonal idempotents.
//!
//! Every basis element `b` lives in a single corner `e_s S e_t`, recorded as
//! `corner(b) = (s, t)`. For algebras coming from quivers this is "a path from
//! `s` to `t`", and `e_s S e_t` is `Hom(P(t), P(s))`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{quotient_basis, DenseMatrix, IncrementalBasis};
use crate::sparse::{self, SparseVec};

#[derive(Debug)]
pub struct StructureConstantAlgebra {
    field: PrimeField,
    vertex_labels: Vec<String>,
    idempotents: Vec<usize>,
    corners: Vec<(usize, usize)>,
    labels: Vec<String>,
    table: Vec<Vec<SparseVec>>,
    by_corner: Vec<Vec<Vec<usize>>>,
    radical_hint: bool,
    radical: OnceLock<Result<Radical>>,
}

impl Clone for StructureConstantAlgebra {
    fn clone(&self) -> Self {
        Self {
            field: self.field,
            vertex_labels: self.vertex_labels.clone(),
            idempotents: self.idempotents.clone(),
            corners: self.corners.clone(),
            labels: self.labels.clone(),
            table: self.table.clone(),
            by_corner: self.by_corner.clone(),
            radical_hint: self.radical_hint,
            radical: OnceLock::new(),
        }
    }
}

/// Radical data, stored per corner in corner coordinates.
#[derive(Clone, Debug)]
pub struct Radical {
    /// `rad[s][t]`: basis of `e_s rad e_t`, each vector indexed like `basis_in_corner(s, t)`.
    pub rad: Vec<Vec<Vec<Vec<u64>>>>,
    /// Same for `rad^2`.
    pub rad2: Vec<Vec<Vec<Vec<u64>>>>,
}

impl Radical {
    pub fn dim(&self) -> usize {
        self.rad.iter().flatten().map(Vec::len).sum()
    }

    pub fn dim2(&self) -> usize {
        self.rad2.iter().flatten().map(Vec::len).sum()
    }
}

/// Gabriel quiver data of a basic algebra.
#[derive(Clone, Debug)]
pub struct GabrielPresentation {
    /// `arrows[s][t]` = number of arrows `s -> t`.
    pub arrows: Vec<Vec<usize>>,
    pub dim_rad: usize,
    pub dim_rad2: usize,
    /// Representatives of `e_s (rad/rad^2) e_t`, as global sparse vectors.
    pub arrow_representatives: Vec<Vec<Vec<SparseVec>>>,
}

impl GabrielPresentation {
    pub fn arrow_count(&self) -> usize {
        self.arrows.iter().flatten().sum()
    }
}

impl StructureConstantAlgebra {
    /// `table[i][j]` is `b_i * b_j`; it must be empty unless `corner(i).1 == corner(j).0`.
    ///
    /// `radical_adapted` declares that the non-idempotent basis elements span the
    /// radical; it is checked when the radical is first requested.
    pub fn new(
        field: PrimeField,
        vertex_labels: Vec<String>,
        idempotents: Vec<usize>,
        corners: Vec<(usize, usize)>,
        labels: Vec<String>,
        table: Vec<Vec<SparseVec>>,
        radical_adapted: bool,
    ) -> Result<Self> {
        let dim = corners.len();
        let n = vertex_labels.len();
        if idempotents.len() != n || labels.len() != dim || table.len() != dim {
            return Err(Error::Dimension(
                "structure constant data has inconsistent sizes".into(),
            ));
        }
        let mut by_corner = vec![vec![Vec::new(); n]; n];
        for (b, &(s, t)) in corners.iter().enumerate() {
            if s >= n || t >= n {
                return Err(Error::Dimension(format!("basis element {b} has corner outside range")));
            }
            by_corner[s][t].push(b);
        }
        for (v, &e) in idempotents.iter().enumerate() {
            if corners.get(e) != Some(&(v, v)) {
                return Err(Error::Dimension(format!("idempotent {v} not in its diagonal corner")));
            }
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Dimension("multiplication table row has wrong length".into()));
            }
            for (j, prod) in row.iter().enumerate() {
                if prod.is_empty() {
                    continue;
                }
                let (s, u) = corners[i];
                let (u2, t) = corners[j];
                if u != u2 || prod.iter().any(|&(k, _)| corners[k] != (s, t)) {
                    return Err(Error::Dimension(format!(
                        "product of basis elements {i},{j} leaves its corner"
                    )));
                }
            }
        }
        let alg = Self {
            field,
            vertex_labels,
            idempotents,
            corners,
            labels,
            table,
            by_corner,
            radical_hint: radical_adapted,
            radical: OnceLock::new(),
        };
        alg.check_idempotents()?;
        Ok(alg)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.corners.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.idempotents.len()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn is_idempotent_index(&self, b: usize) -> bool {
        let (s, t) = self.corners[b];
        s == t && self.idempotents[s] == b
    }

    pub fn corner(&self, b: usize) -> (usize, usize) {
        self.corners[b]
    }

    pub fn corners(&self) -> &[(usize, usize)] {
        &self.corners
    }

    /// Basis positions lying in `e_s S e_t`.
    pub fn basis_in_corner(&self, s: usize, t: usize) -> &[usize] {
        &self.by_corner[s][t]
    }

    pub fn corner_dim(&self, s: usize, t: usize) -> usize {
        self.by_corner[s][t].len()
    }

    #[inline]
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn one(&self) -> SparseVec {
        let mut v: SparseVec = self.idempotents.iter().map(|&e| (e, 1)).collect();
        v.sort_unstable();
        v
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let f = self.field;
        let mut terms: Vec<(usize, u64)> = Vec::new();
        for &(i, a) in x {
            let ti = self.corners[i].1;
            for &(j, b) in y {
                if self.corners[j].0 != ti {
                    continue;
                }
                let prod = &self.table[i][j];
                if prod.is_empty() {
                    continue;
                }
                let ab = f.mul(a, b);
                for &(k, c) in prod {
                    terms.push((k, f.mul(ab, c)));
                }
            }
        }
        collect_terms(f, terms)
    }

    pub fn mul_dense(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        sparse::to_dense(&self.mul(&sparse::from_dense(x), &sparse::from_dense(y)), self.dim())
    }

    /// Matrix of `y -> x*y` (columns = basis images).
    pub fn left_mult_matrix(&self, x: &SparseVec) -> DenseMatrix {
        let d = self.dim();
        let cols: Vec<Vec<u64>> = (0..d)
            .map(|j| sparse::to_dense(&self.mul(x, &sparse::unit(j)), d))
            .collect();
        DenseMatrix::from_columns(self.field, d, &cols)
    }

    /// Matrix of `y -> y*x`.
    pub fn right_mult_matrix(&self, x: &SparseVec) -> DenseMatrix {
        let d = self.dim();
        let cols: Vec<Vec<u64>> = (0..d)
            .map(|j| sparse::to_dense(&self.mul(&sparse::unit(j), x), d))
            .collect();
        DenseMatrix::from_columns(self.field, d, &cols)
    }

    fn check_idempotents(&self) -> Result<()> {
        for (v, &e) in self.idempotents.iter().enumerate() {
            for b in 0..self.dim() {
                let (s, t) = self.corners[b];
                let left = if s == v { sparse::unit(b) } else { Vec::new() };
                let right = if t == v { sparse::unit(b) } else { Vec::new() };
                if self.table[e][b] != left || self.table[b][e] != right {
                    return Err(Error::Dimension(format!(
                        "idempotent of vertex {v} does not act as a corner projection on {}",
                        self.labels[b]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Exhaustive associativity check; returns the first failing triple.
    pub fn check_associative(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                if self.corners[i].1 != self.corners[j].0 {
                    continue;
                }
                let ij = &self.table[i][j];
                for k in 0..d {
                    if self.corners[j].1 != self.corners[k].0 {
                        continue;
                    }
                    let left = self.mul(ij, &sparse::unit(k));
                    let right = self.mul(&sparse::unit(i), &self.table[j][k]);
                    if left != right {
                        return Err(Error::NotAssociative((i, j, k)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Coordinates of a global vector restricted to corner `(s, t)`.
    pub fn corner_coords(&self, x: &SparseVec, s: usize, t: usize) -> Vec<u64> {
        let basis = &self.by_corner[s][t];
        basis.iter().map(|&b| sparse::coefficient(x, b)).collect()
    }

    pub fn from_corner_coords(&self, s: usize, t: usize, c: &[u64]) -> SparseVec {
        let basis = &self.by_corner[s][t];
        let mut v: SparseVec = basis
            .iter()
            .zip(c)
            .filter(|(_, &x)| x != 0)
            .map(|(&b, &x)| (b, x))
            .collect();
        v.sort_unstable();
        v
    }

    pub fn radical(&self) -> Result<&Radical> {
        self.radical
            .get_or_init(|| self.compute_radical())
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Global sparse basis of `e_s rad e_t`.
    pub fn radical_corner_vectors(&self, s: usize, t: usize) -> Result<Vec<SparseVec>> {
        let r = self.radical()?;
        Ok(r.rad[s][t].iter().map(|c| self.from_corner_coords(s, t, c)).collect())
    }

    /// All of `rad` as global sparse vectors.
    pub fn radical_vectors(&self) -> Result<Vec<SparseVec>> {
        let n = self.num_vertices();
        let mut out = Vec::new();
        for s in 0..n {
            for t in 0..n {
                out.extend(self.radical_corner_vectors(s, t)?);
            }
        }
        Ok(out)
    }

    fn compute_radical(&self) -> Result<Radical> {
        let rad = match self.structural_radical() {
            Some(r) => r,
            None => self.trace_form_radical()?,
        };
        let rad2 = self.radical_square(&rad);
        Ok(Radical { rad, rad2 })
    }

    /// Radical candidate from local diagonal corners plus all off-diagonal
    /// corners, accepted only if it is a two-sided ideal of trace-zero
    /// (hence nilpotent, for `p > dim`) elements with semisimple quotient `K^n`.
    fn structural_radical(&self) -> Option<Vec<Vec<Vec<Vec<u64>>>>> {
        let f = self.field;
        let n = self.num_vertices();
        // chi[b]: residue of basis element b in its diagonal corner (0 off-diagonal)
        let mut chi = vec![0u64; self.dim()];
        for v in 0..n {
            let basis = &self.by_corner[v][v];
            let c = basis.len();
            if self.radical_hint {
                continue;
            }
            let inv_c = f.inv(f.from_i64(c as i64));
            for &b in basis {
                if b == self.idempotents[v] {
                    chi[b] = 1;
                    continue;
                }
                // trace of left multiplication by b on the corner
                let mut tr = 0;
                for &y in basis {
                    tr = f.add(tr, sparse::coefficient(&self.table[b][y], y));
                }
                chi[b] = f.mul(tr, inv_c);
            }
        }
        for v in 0..n {
            chi[self.idempotents[v]] = 1;
        }
        // membership test: x in R iff for each v, sum_{b in corner (v,v)} chi[b] x_b = 0
        let in_rad = |x: &SparseVec| -> bool {
            let mut acc = vec![0u64; n];
            for &(b, c) in x {
                let (s, t) = self.corners[b];
                if s == t {
                    acc[s] = f.mul_add(acc[s], chi[b], c);
                }
            }
            acc.iter().all(|&a| a == 0)
        };
        let candidate: Vec<SparseVec> = (0..self.dim())
            .filter(|&b| !self.is_idempotent_index(b))
            .map(|b| {
                let (s, t) = self.corners[b];
                if s != t || chi[b] == 0 {
                    sparse::unit(b)
                } else {
                    let mut v = vec![(b, 1), (self.idempotents[s], f.neg(chi[b]))];
                    v.sort_unstable();
                    v
                }
            })
            .collect();
        // two-sided ideal
        for r in &candidate {
            for b in 0..self.dim() {
                let u = sparse::unit(b);
                if !in_rad(&self.mul(r, &u)) || !in_rad(&self.mul(&u, r)) {
                    return None;
                }
            }
        }
        // trace-zero on the left regular representation (nil ideal when p > dim)
        if (self.field.modulus() as u128) > self.dim() as u128 {
            for r in &candidate {
                let mut tr = 0;
                for &(b, c) in r {
                    for y in 0..self.dim() {
                        tr = f.mul_add(tr, c, sparse::coefficient(&self.table[b][y], y));
                    }
                }
                if tr != 0 {
                    return None;
                }
            }
        }
        let mut rad = vec![vec![Vec::new(); n]; n];
        for r in &candidate {
            let (s, t) = self.corners[r.iter().find(|&&(b, _)| !self.is_idempotent_index(b))?.0];
            rad[s][t].push(self.corner_coords(r, s, t));
        }
        Some(rad)
    }

    /// Radical as the kernel of the trace form `(x, y) -> tr(L_{xy})` (valid for `p > dim`).
    fn trace_form_radical(&self) -> Result<Vec<Vec<Vec<Vec<u64>>>>> {
        let d = self.dim();
        if (self.field.modulus() as u128) <= d as u128 {
            return Err(Error::FieldTooSmall {
                p: self.field.modulus(),
                dim: d,
            });
        }
        let f = self.field;
        let traces: Vec<u64> = (0..d)
            .map(|b| (0..d).fold(0, |acc, y| f.add(acc, sparse::coefficient(&self.table[b][y], y))))
            .collect();
        let mut gram = DenseMatrix::zeros(f, d, d);
        for i in 0..d {
            for j in 0..d {
                let v = self.table[i][j]
                    .iter()
                    .fold(0, |acc, &(k, c)| f.mul_add(acc, c, traces[k]));
                gram.set(i, j, v);
            }
        }
        let kernel = gram.kernel();
        let n = self.num_vertices();
        if d - kernel.len() != n {
            return Err(Error::NotBasic(format!(
                "semisimple quotient has dimension {}, expected {n}",
                d - kernel.len()
            )));
        }
        // the radical is spanned by corner components of kernel vectors
        let mut rad = vec![vec![Vec::new(); n]; n];
        let mut bases: Vec<Vec<IncrementalBasis>> = (0..n)
            .map(|s| {
                (0..n)
                    .map(|t| IncrementalBasis::new(f, self.corner_dim(s, t)))
                    .collect()
            })
            .collect();
        for k in &kernel {
            let x = sparse::from_dense(k);
            for s in 0..n {
                for t in 0..n {
                    let c = self.corner_coords(&x, s, t);
                    if c.iter().any(|&z| z != 0) && bases[s][t].insert(c.clone()) {
                        rad[s][t].push(c);
                    }
                }
            }
        }
        Ok(rad)
    }

    fn radical_square(&self, rad: &[Vec<Vec<Vec<u64>>>]) -> Vec<Vec<Vec<Vec<u64>>>> {
        let n = self.num_vertices();
        let mut rad2 = vec![vec![Vec::new(); n]; n];
        for s in 0..n {
            for t in 0..n {
                let dim_st = self.corner_dim(s, t);
                if dim_st == 0 {
                    continue;
                }
                let mut basis = IncrementalBasis::new(self.field, dim_st);
                for u in 0..n {
                    for x in &rad[s][u] {
                        let xv = self.from_corner_coords(s, u, x);
                        for y in &rad[u][t] {
                            let yv = self.from_corner_coords(u, t, y);
                            let p = self.corner_coords(&self.mul(&xv, &yv), s, t);
                            if basis.insert(p.clone()) {
                                rad2[s][t].push(p);
                            }
                        }
                    }
                }
            }
        }
        rad2
    }

    /// Gabriel quiver: arrows `s -> t` counted by `dim e_s (rad/rad^2) e_t`.
    pub fn gabriel_presentation(&self) -> Result<GabrielPresentation> {
        let r = self.radical()?;
        let n = self.num_vertices();
        for v in 0..n {
            if self.corner_dim(v, v) != r.rad[v][v].len() + 1 {
                return Err(Error::NotBasic(format!(
                    "corner of vertex {} is not local with residue field K",
                    self.vertex_labels[v]
                )));
            }
        }
        let mut arrows = vec![vec![0; n]; n];
        let mut reps = vec![vec![Vec::new(); n]; n];
        for s in 0..n {
            for t in 0..n {
                let q = quotient_basis(self.field, self.corner_dim(s, t), &r.rad[s][t], &r.rad2[s][t])?;
                arrows[s][t] = q.len();
                reps[s][t] = q.iter().map(|c| self.from_corner_coords(s, t, c)).collect();
            }
        }
        Ok(GabrielPresentation {
            arrows,
            dim_rad: r.dim(),
            dim_rad2: r.dim2(),
            arrow_representatives: reps,
        })
    }

    /// Sub-algebra `eSe` for `e` the sum of the idempotents in `vertices`.
    pub fn idempotent_subalgebra(&self, vertices: &[usize]) -> Result<StructureConstantAlgebra> {
        if vertices.is_empty() {
            return Err(Error::Precondition("empty vertex subset".into()));
        }
        let n = self.num_vertices();
        let mut new_index = vec![usize::MAX; n];
        for (k, &v) in vertices.iter().enumerate() {
            if v >= n || new_index[v] != usize::MAX {
                return Err(Error::Precondition("invalid vertex subset".into()));
            }
            new_index[v] = k;
        }
        let keep: Vec<usize> = (0..self.dim())
            .filter(|&b| {
                let (s, t) = self.corners[b];
                new_index[s] != usize::MAX && new_index[t] != usize::MAX
            })
            .collect();
        let mut pos = vec![usize::MAX; self.dim()];
        for (k, &b) in keep.iter().enumerate() {
            pos[b] = k;
        }
        let remap = |v: &SparseVec| -> SparseVec {
            let mut out: SparseVec = v.iter().map(|&(b, c)| (pos[b], c)).collect();
            out.sort_unstable();
            out
        };
        let table = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| remap(&self.table[i][j])).collect())
            .collect();
        let corners = keep
            .iter()
            .map(|&b| {
                let (s, t) = self.corners[b];
                (new_index[s], new_index[t])
            })
            .collect();
        StructureConstantAlgebra::new(
            self.field,
            vertices.iter().map(|&v| self.vertex_labels[v].clone()).collect(),
            vertices.iter().map(|&v| pos[self.idempotents[v]]).collect(),
            corners,
            keep.iter().map(|&b| self.labels[b].clone()).collect(),
            table,
            self.radical_hint,
        )
    }

    /// Product algebra `S x S'` (block diagonal).
    pub fn product(&self, other: &StructureConstantAlgebra) -> Result<StructureConstantAlgebra> {
        let d1 = self.dim();
        let n1 = self.num_vertices();
        let shift = |v: &SparseVec| -> SparseVec { v.iter().map(|&(b, c)| (b + d1, c)).collect() };
        let d = d1 + other.dim();
        let mut table = vec![vec![Vec::new(); d]; d];
        for i in 0..d1 {
            for j in 0..d1 {
                table[i][j] = self.table[i][j].clone();
            }
        }
        for i in 0..other.dim() {
            for j in 0..other.dim() {
                table[d1 + i][d1 + j] = shift(&other.table[i][j]);
            }
        }
        let mut corners = self.corners.clone();
        corners.extend(other.corners.iter().map(|&(s, t)| (s + n1, t + n1)));
        let mut idem = self.idempotents.clone();
        idem.extend(other.idempotents.iter().map(|&e| e + d1));
        let mut vl = self.vertex_labels.clone();
        vl.extend(other.vertex_labels.iter().cloned());
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        StructureConstantAlgebra::new(
            self.field,
            vl,
            idem,
            corners,
            labels,
            table,
            self.radical_hint && other.radical_hint,
        )
    }
}

/// Sorts and merges `(index, value)` terms, dropping zeros.
pub(crate) fn collect_terms(f: PrimeField, mut terms: Vec<(usize, u64)>) -> SparseVec {
    if terms.len() <= 1 {
        terms.retain(|&(_, c)| c != 0);
        return terms;
    }
    terms.sort_unstable_by_key(|&(k, _)| k);
    let mut out: SparseVec = Vec::with_capacity(terms.len());
    for (k, c) in terms {
        match out.last_mut() {
            Some((lk, lc)) if *lk == k => *lc = f.add(*lc, c),
            _ => out.push((k, c)),
        }
    }
    out.retain(|&(_, c)| c != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    /// `K x K`.
    fn two_points() -> StructureConstantAlgebra {
        StructureConstantAlgebra::new(
            field(),
            vec!["1".into(), "2".into()],
            vec![0, 1],
            vec![(0, 0), (1, 1)],
            vec!["e1".into(), "e2".into()],
            vec![vec![vec![(0, 1)], vec![]], vec![vec![], vec![(1, 1)]]],
            false,
        )
        .unwrap()
    }

    /// `K[x]/x^2` with basis `1, x`.
    fn dual_numbers() -> StructureConstantAlgebra {
        StructureConstantAlgebra::new(
            field(),
            vec!["1".into()],
            vec![0],
            vec![(0, 0), (0, 0)],
            vec!["e".into(), "x".into()],
            vec![vec![vec![(0, 1)], vec![(1, 1)]], vec![vec![(1, 1)], vec![]]],
            false,
        )
        .unwrap()
    }

    #[test]
    fn semisimple_has_no_arrows() {
        let s = two_points();
        s.check_associative().unwrap();
        let g = s.gabriel_presentation().unwrap();
        assert_eq!(g.arrow_count(), 0);
        assert_eq!(g.dim_rad, 0);
    }

    #[test]
    fn dual_numbers_have_one_loop() {
        let s = dual_numbers();
        s.check_associative().unwrap();
        let g = s.gabriel_presentation().unwrap();
        assert_eq!(g.arrows, vec![vec![1]]);
        assert_eq!((g.dim_rad, g.dim_rad2), (1, 0));
    }

    #[test]
    fn shifted_basis_still_finds_radical() {
        // basis 1, 1+x of K[x]/x^2
        let s = StructureConstantAlgebra::new(
            field(),
            vec!["1".into()],
            vec![0],
            vec![(0, 0), (0, 0)],
            vec!["e".into(), "1+x".into()],
            vec![
                vec![vec![(0, 1)], vec![(1, 1)]],
                // (1+x)^2 = 1 + 2x = 2(1+x) - 1
                vec![vec![(1, 1)], vec![(0, 100), (1, 2)]],
            ],
            false,
        )
        .unwrap();
        s.check_associative().unwrap();
        let r = s.radical().unwrap();
        assert_eq!(r.dim(), 1);
        assert_eq!(r.rad[0][0][0], vec![100, 1]);
    }

    #[test]
    fn matrix_algebra_is_not_basic() {
        // M_2(K): e11, e22, e12, e21 with idempotents e11, e22
        let mut t = vec![vec![Vec::new(); 4]; 4];
        // units: index -> (row, col)
        let rc = [(0, 0), (1, 1), (0, 1), (1, 0)];
        for i in 0..4 {
            for j in 0..4 {
                if rc[i].1 == rc[j].0 {
                    let k = rc.iter().position(|&x| x == (rc[i].0, rc[j].1)).unwrap();
                    t[i][j] = vec![(k, 1)];
                }
            }
        }
        let s = StructureConstantAlgebra::new(
            field(),
            vec!["1".into(), "2".into()],
            vec![0, 1],
            rc.to_vec(),
            vec!["e11".into(), "e22".into(), "e12".into(), "e21".into()],
            t,
            false,
        )
        .unwrap();
        s.check_associative().unwrap();
        assert!(matches!(s.gabriel_presentation(), Err(Error::NotBasic(_))));
    }

    #[test]
    fn product_and_subalgebra() {
        let p = two_points().product(&dual_numbers()).unwrap();
        assert_eq!(p.dim(), 4);
        p.check_associative().unwrap();
        let sub = p.idempotent_subalgebra(&[2]).unwrap();
        assert_eq!(sub.dim(), 2);
        assert_eq!(sub.gabriel_presentation().unwrap().arrows, vec![vec![1]]);
    }
}
