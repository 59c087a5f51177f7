//! Bounded complexes of indecomposable projectives `P(i) = e_i S`.
//!
//! A differential `X^d -> X^{d+1}` is a matrix with one row per summand of
//! `X^{d+1}` and one column per summand of `X^d`; the entry between `P(i)`
//! and `P(j)` lies in `e_j S e_i` and acts by left multiplication. Composition
//! of maps is the matrix product with algebra products in the same order.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::morphism::AlgebraMap;
use crate::sc::StructureConstantAlgebra;
use crate::sparse::{self, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<SparseVec>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Vec::new(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<SparseVec>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &SparseVec {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: SparseVec) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Vec::is_empty)
    }

    /// `self * other`, i.e. `self` after `other`.
    pub fn mul(&self, sc: &StructureConstantAlgebra, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let f = sc.field();
        let mut out = Mat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc: SparseVec = Vec::new();
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    let b = other.get(k, c);
                    if a.is_empty() || b.is_empty() {
                        continue;
                    }
                    acc = sparse::add(f, &acc, &sc.mul(a, b));
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn add(&self, f: PrimeField, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| sparse::add(f, a, b))
                .collect(),
        }
    }

    pub fn scale(&self, f: PrimeField, c: u64) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| sparse::scale(f, a, c)).collect(),
        }
    }

    pub fn neg(&self, f: PrimeField) -> Mat {
        self.scale(f, f.neg(1))
    }

    pub fn map_entries(&self, g: impl Fn(&SparseVec) -> SparseVec) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(g).collect(),
        }
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut out = Mat::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// `[[a, b], [c, d]]`.
    pub fn blocks(a: &Mat, b: &Mat, c: &Mat, d: &Mat) -> Mat {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        let mut out = Mat::zeros(rows, cols);
        for r in 0..rows {
            for k in 0..cols {
                let v = match (r < a.rows, k < a.cols) {
                    (true, true) => a.get(r, k),
                    (true, false) => b.get(r, k - a.cols),
                    (false, true) => c.get(r - a.rows, k),
                    (false, false) => d.get(r - a.rows, k - a.cols),
                };
                out.set(r, k, v.clone());
            }
        }
        out
    }

    pub fn hstack(a: &Mat, b: &Mat) -> Mat {
        Mat::blocks(a, b, &Mat::zeros(0, a.cols), &Mat::zeros(0, b.cols))
    }

    pub fn vstack(a: &Mat, c: &Mat) -> Mat {
        Mat::blocks(a, &Mat::zeros(a.rows, 0), c, &Mat::zeros(c.rows, 0))
    }
}

/// A bounded complex; `terms[k]` lists the vertices of the summands in degree `lo + k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjComplex {
    lo: i32,
    terms: Vec<Vec<usize>>,
    diffs: Vec<Mat>,
}

impl ProjComplex {
    pub fn zero() -> Self {
        Self {
            lo: 0,
            terms: Vec::new(),
            diffs: Vec::new(),
        }
    }

    pub fn stalk(vertex: usize, degree: i32) -> Self {
        Self::stalk_sum(vec![vertex], degree)
    }

    pub fn stalk_sum(vertices: Vec<usize>, degree: i32) -> Self {
        if vertices.is_empty() {
            return Self::zero();
        }
        Self {
            lo: degree,
            terms: vec![vertices],
            diffs: Vec::new(),
        }
    }

    /// Two-term complex `P(sources) -> P(targets)` in degrees -1, 0.
    pub fn two_term(sources: Vec<usize>, targets: Vec<usize>, d: Mat) -> Self {
        Self::new_unchecked(-1, vec![sources, targets], vec![d]).trimmed()
    }

    pub fn new(sc: &StructureConstantAlgebra, lo: i32, terms: Vec<Vec<usize>>, diffs: Vec<Mat>) -> Result<Self> {
        let x = Self::new_unchecked(lo, terms, diffs);
        x.check(sc)?;
        Ok(x.trimmed())
    }

    pub(crate) fn new_unchecked(lo: i32, terms: Vec<Vec<usize>>, diffs: Vec<Mat>) -> Self {
        assert_eq!(diffs.len() + 1, terms.len().max(1));
        Self { lo, terms, diffs }
    }

    /// Corner placement of every entry and `d o d = 0`.
    pub fn check(&self, sc: &StructureConstantAlgebra) -> Result<()> {
        for (k, d) in self.diffs.iter().enumerate() {
            let (src, tgt) = (&self.terms[k], &self.terms[k + 1]);
            if d.rows != tgt.len() || d.cols != src.len() {
                return Err(Error::Dimension(format!(
                    "differential in degree {} has wrong shape",
                    self.lo + k as i32
                )));
            }
            for r in 0..d.rows {
                for c in 0..d.cols {
                    for &(b, _) in d.get(r, c) {
                        if sc.corner(b) != (tgt[r], src[c]) {
                            return Err(Error::Dimension(format!(
                                "differential entry ({r},{c}) in degree {} is not in e_j A e_i",
                                self.lo + k as i32
                            )));
                        }
                    }
                }
            }
        }
        for k in 1..self.diffs.len() {
            if !self.diffs[k].mul(sc, &self.diffs[k - 1]).is_zero() {
                return Err(Error::Verification(format!(
                    "d o d != 0 at degree {}",
                    self.lo + k as i32 - 1
                )));
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(Vec::is_empty)
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest degree (equal to `lo - 1` for the zero complex).
    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    /// `hi - lo`, i.e. 0 for stalks and 1 for two-term complexes.
    pub fn width(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    pub fn term(&self, d: i32) -> &[usize] {
        if d < self.lo || d > self.hi() {
            return &[];
        }
        &self.terms[(d - self.lo) as usize]
    }

    /// Differential `X^d -> X^{d+1}`, if both degrees are inside the range.
    pub fn diff(&self, d: i32) -> Option<&Mat> {
        if d < self.lo || d >= self.hi() {
            return None;
        }
        Some(&self.diffs[(d - self.lo) as usize])
    }

    pub fn terms(&self) -> &[Vec<usize>] {
        &self.terms
    }

    pub fn total_summands(&self) -> usize {
        self.terms.iter().map(Vec::len).sum()
    }

    pub fn multiplicity(&self, d: i32, n: usize) -> Vec<usize> {
        let mut m = vec![0; n];
        for &v in self.term(d) {
            m[v] += 1;
        }
        m
    }

    /// Alternating sum of multiplicities, degree 0 counted positively.
    pub fn g_vector(&self, n: usize) -> Vec<i64> {
        let mut g = vec![0i64; n];
        for d in self.degrees() {
            let sign = if d.rem_euclid(2) == 0 { 1 } else { -1 };
            for &v in self.term(d) {
                g[v] += sign;
            }
        }
        g
    }

    /// Sorted vertex lists per degree; equal for isomorphic minimal complexes.
    pub fn shape(&self) -> Vec<(i32, Vec<usize>)> {
        self.degrees()
            .map(|d| {
                let mut t = self.term(d).to_vec();
                t.sort_unstable();
                (d, t)
            })
            .filter(|(_, t)| !t.is_empty())
            .collect()
    }

    /// Drops empty degrees at both ends.
    pub fn trimmed(mut self) -> Self {
        while self.terms.first().is_some_and(Vec::is_empty) {
            self.terms.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        while self.terms.last().is_some_and(Vec::is_empty) {
            self.terms.pop();
            self.diffs.pop();
        }
        if self.terms.is_empty() {
            return Self::zero();
        }
        self
    }

    /// `X[k]`: `X[k]^d = X^{d+k}` with differential `(-1)^k d`.
    pub fn shift(&self, f: PrimeField, k: i32) -> Self {
        let diffs = if k.rem_euclid(2) == 0 {
            self.diffs.clone()
        } else {
            self.diffs.iter().map(|d| d.neg(f)).collect()
        };
        Self {
            lo: self.lo - k,
            terms: self.terms.clone(),
            diffs,
        }
    }

    pub fn direct_sum(&self, other: &ProjComplex) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let terms: Vec<Vec<usize>> = (lo..=hi)
            .map(|d| {
                let mut t = self.term(d).to_vec();
                t.extend_from_slice(other.term(d));
                t
            })
            .collect();
        let diffs = (lo..hi)
            .map(|d| {
                let a = self
                    .diff(d)
                    .cloned()
                    .unwrap_or_else(|| Mat::zeros(self.term(d + 1).len(), self.term(d).len()));
                let b = other
                    .diff(d)
                    .cloned()
                    .unwrap_or_else(|| Mat::zeros(other.term(d + 1).len(), other.term(d).len()));
                Mat::blocks(&a, &Mat::zeros(a.rows, b.cols), &Mat::zeros(b.rows, a.cols), &b)
            })
            .collect();
        Self { lo, terms, diffs }
    }

    /// Standard mapping cone of a degree-0 chain map `f: X -> Y`:
    /// `Cone^d = X^{d+1} + Y^d` with differential `[[-d_X, 0], [f, d_Y]]`.
    pub fn cone_unminimized(f: PrimeField, x: &ProjComplex, y: &ProjComplex, map: &ChainMap) -> Self {
        assert_eq!(map.degree, 0);
        if x.is_zero() {
            return y.clone();
        }
        if y.is_zero() {
            return x.shift(f, 1);
        }
        let lo = (x.lo - 1).min(y.lo);
        let hi = (x.hi() - 1).max(y.hi());
        let terms: Vec<Vec<usize>> = (lo..=hi)
            .map(|d| {
                let mut t = x.term(d + 1).to_vec();
                t.extend_from_slice(y.term(d));
                t
            })
            .collect();
        let diffs = (lo..hi)
            .map(|d| {
                let (xs, xt) = (x.term(d + 1).len(), x.term(d + 2).len());
                let (ys, yt) = (y.term(d).len(), y.term(d + 1).len());
                let dx = x.diff(d + 1).map(|m| m.neg(f)).unwrap_or_else(|| Mat::zeros(xt, xs));
                let dy = y.diff(d).cloned().unwrap_or_else(|| Mat::zeros(yt, ys));
                let fm = map.comps.get(&(d + 1)).cloned().unwrap_or_else(|| Mat::zeros(yt, xs));
                Mat::blocks(&dx, &Mat::zeros(xt, ys), &fm, &dy)
            })
            .collect();
        Self { lo, terms, diffs }.trimmed()
    }

    pub fn cone(sc: &StructureConstantAlgebra, x: &ProjComplex, y: &ProjComplex, map: &ChainMap) -> Self {
        Self::cone_unminimized(sc.field(), x, y, map).minimize(sc)
    }

    /// True if every differential entry lies in the radical.
    pub fn is_minimal(&self, sc: &StructureConstantAlgebra) -> bool {
        self.find_unit(sc).is_none()
    }

    fn find_unit(&self, sc: &StructureConstantAlgebra) -> Option<(usize, usize, usize)> {
        for (k, d) in self.diffs.iter().enumerate() {
            for r in 0..d.rows {
                for c in 0..d.cols {
                    let (vt, vs) = (self.terms[k + 1][r], self.terms[k][c]);
                    if vt == vs && sparse::coefficient(d.get(r, c), sc.idempotent(vs)) != 0 {
                        return Some((k, r, c));
                    }
                }
            }
        }
        None
    }

    /// Splits off contractible summands `P --u--> P` with `u` a unit, replacing
    /// the remaining block by `delta - gamma u^-1 beta`.
    pub fn minimize(mut self, sc: &StructureConstantAlgebra) -> Self {
        let f = sc.field();
        while let Some((k, r, c)) = self.find_unit(sc) {
            let d = &self.diffs[k];
            let u_inv = local_inverse(sc, d.get(r, c), self.terms[k][c]);
            let keep_rows: Vec<usize> = (0..d.rows).filter(|&i| i != r).collect();
            let keep_cols: Vec<usize> = (0..d.cols).filter(|&j| j != c).collect();
            let mut nd = d.select(&keep_rows, &keep_cols);
            for (i, &rr) in keep_rows.iter().enumerate() {
                let gamma = d.get(rr, c);
                if gamma.is_empty() {
                    continue;
                }
                let gu = sc.mul(gamma, &u_inv);
                for (j, &cc) in keep_cols.iter().enumerate() {
                    let beta = d.get(r, cc);
                    if beta.is_empty() {
                        continue;
                    }
                    let corr = sc.mul(&gu, beta);
                    let v = sparse::sub(f, nd.get(i, j), &corr);
                    nd.set(i, j, v);
                }
            }
            if k > 0 {
                let prev = &self.diffs[k - 1];
                let all_cols: Vec<usize> = (0..prev.cols).collect();
                self.diffs[k - 1] = prev.select(&keep_cols, &all_cols);
            }
            if k + 1 < self.diffs.len() {
                let next = &self.diffs[k + 1];
                let all_rows: Vec<usize> = (0..next.rows).collect();
                self.diffs[k + 1] = next.select(&all_rows, &keep_rows);
            }
            self.diffs[k] = nd;
            self.terms[k].remove(c);
            self.terms[k + 1].remove(r);
        }
        self.trimmed()
    }

    /// Relabels summands by `perm` and transports entries along `map`.
    pub fn twist(&self, f: PrimeField, map: &AlgebraMap, perm: &[usize]) -> Self {
        Self {
            lo: self.lo,
            terms: self
                .terms
                .iter()
                .map(|t| t.iter().map(|&v| perm[v]).collect())
                .collect(),
            diffs: self.diffs.iter().map(|d| d.map_entries(|x| map.apply(f, x))).collect(),
        }
    }

    pub fn identity(&self, sc: &StructureConstantAlgebra) -> ChainMap {
        let mut comps = BTreeMap::new();
        for d in self.degrees() {
            let t = self.term(d);
            if t.is_empty() {
                continue;
            }
            let mut m = Mat::zeros(t.len(), t.len());
            for (i, &v) in t.iter().enumerate() {
                m.set(i, i, sparse::unit(sc.idempotent(v)));
            }
            comps.insert(d, m);
        }
        ChainMap { degree: 0, comps }
    }
}

/// Inverse of a unit `u` of the local corner `e_v S e_v`.
pub fn local_inverse(sc: &StructureConstantAlgebra, u: &SparseVec, v: usize) -> SparseVec {
    let f = sc.field();
    let e = sc.idempotent(v);
    let c = sparse::coefficient(u, e);
    assert!(c != 0, "not a unit");
    let ci = f.inv(c);
    // u = c(e - n) with n nilpotent; u^-1 = c^-1 (e + n + n^2 + ...)
    let n = sparse::sub(f, &sparse::unit(e), &sparse::scale(f, u, ci));
    let mut acc = sparse::unit(e);
    let mut pw = sparse::unit(e);
    loop {
        pw = sc.mul(&pw, &n);
        if pw.is_empty() {
            break;
        }
        acc = sparse::add(f, &acc, &pw);
    }
    sparse::scale(f, &acc, ci)
}

/// A map of complexes of some degree `k`: `comps[d]: X^d -> Y^{d+k}`; absent blocks are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub degree: i32,
    pub comps: BTreeMap<i32, Mat>,
}

impl ChainMap {
    pub fn zero(degree: i32) -> Self {
        Self {
            degree,
            comps: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(Mat::is_zero)
    }

    /// `self o other`.
    pub fn compose(&self, sc: &StructureConstantAlgebra, other: &ChainMap) -> ChainMap {
        let mut comps = BTreeMap::new();
        for (&d, fm) in &other.comps {
            if let Some(gm) = self.comps.get(&(d + other.degree)) {
                comps.insert(d, gm.mul(sc, fm));
            }
        }
        ChainMap {
            degree: self.degree + other.degree,
            comps,
        }
    }

    pub fn add(&self, f: PrimeField, other: &ChainMap) -> ChainMap {
        assert_eq!(self.degree, other.degree);
        let mut comps = self.comps.clone();
        for (&d, m) in &other.comps {
            match comps.get_mut(&d) {
                Some(a) => *a = a.add(f, m),
                None => {
                    comps.insert(d, m.clone());
                }
            }
        }
        ChainMap {
            degree: self.degree,
            comps,
        }
    }

    pub fn scale(&self, f: PrimeField, c: u64) -> ChainMap {
        ChainMap {
            degree: self.degree,
            comps: self.comps.iter().map(|(&d, m)| (d, m.scale(f, c))).collect(),
        }
    }

    pub fn twist(&self, f: PrimeField, map: &AlgebraMap) -> ChainMap {
        ChainMap {
            degree: self.degree,
            comps: self
                .comps
                .iter()
                .map(|(&d, m)| (d, m.map_entries(|x| map.apply(f, x))))
                .collect(),
        }
    }

    /// Block column `[self_1; self_2; ...]` into a direct sum of targets.
    pub fn stack_targets(maps: &[ChainMap], x: &ProjComplex, targets: &[&ProjComplex]) -> ChainMap {
        let degree = maps.first().map_or(0, |m| m.degree);
        let mut comps = BTreeMap::new();
        for d in x.degrees() {
            let cols = x.term(d).len();
            let mut acc = Mat::zeros(0, cols);
            for (m, y) in maps.iter().zip(targets) {
                let rows = y.term(d + degree).len();
                let block = m.comps.get(&d).cloned().unwrap_or_else(|| Mat::zeros(rows, cols));
                acc = Mat::vstack(&acc, &block);
            }
            if acc.rows > 0 && cols > 0 {
                comps.insert(d, acc);
            }
        }
        ChainMap { degree, comps }
    }

    /// Block row `[m_1, m_2, ...]` out of a direct sum of sources.
    pub fn stack_sources(maps: &[ChainMap], sources: &[&ProjComplex], y: &ProjComplex) -> ChainMap {
        let degree = maps.first().map_or(0, |m| m.degree);
        let lo = sources
            .iter()
            .filter(|s| !s.is_zero())
            .map(|s| s.lo())
            .min()
            .unwrap_or(0);
        let hi = sources
            .iter()
            .filter(|s| !s.is_zero())
            .map(|s| s.hi())
            .max()
            .unwrap_or(-1);
        let mut comps = BTreeMap::new();
        for d in lo..=hi {
            let rows = y.term(d + degree).len();
            let mut acc = Mat::zeros(rows, 0);
            for (m, x) in maps.iter().zip(sources) {
                let cols = x.term(d).len();
                let block = m.comps.get(&d).cloned().unwrap_or_else(|| Mat::zeros(rows, cols));
                acc = Mat::hstack(&acc, &block);
            }
            if acc.rows > 0 && acc.cols > 0 {
                comps.insert(d, acc);
            }
        }
        ChainMap { degree, comps }
    }
}

/// Checks `d_Y f = (-1)^k f d_X`.
pub fn is_chain_map(sc: &StructureConstantAlgebra, x: &ProjComplex, y: &ProjComplex, map: &ChainMap) -> bool {
    let f = sc.field();
    let k = map.degree;
    let sign = if k.rem_euclid(2) == 0 { 1 } else { f.neg(1) };
    let lo = x.lo().min(y.lo() - k) - 1;
    let hi = x.hi().max(y.hi() - k) + 1;
    for d in lo..=hi {
        let (s, t) = (x.term(d).len(), y.term(d + k + 1).len());
        if s == 0 || t == 0 {
            continue;
        }
        let mut lhs = Mat::zeros(t, s);
        if let (Some(dy), Some(fm)) = (y.diff(d + k), map.comps.get(&d)) {
            lhs = lhs.add(f, &dy.mul(sc, fm));
        }
        if let (Some(fm), Some(dx)) = (map.comps.get(&(d + 1)), x.diff(d)) {
            lhs = lhs.add(f, &fm.mul(sc, dx).scale(f, f.neg(sign)));
        }
        if !lhs.is_zero() {
            return false;
        }
    }
    true
}
