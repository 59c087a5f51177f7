//! `Hom(X, Y[k])` in the homotopy category, as cycles modulo boundaries of the
//! Hom complex.
//!
//! A degree-`k` map has components `f^d: X^d -> Y^{d+k}`; its boundary is
//! `D(f) = d_Y f - (-1)^k f d_X`.

use std::collections::{BTreeMap, HashMap};

use crate::field::PrimeField;
use crate::linalg::{quotient_basis, row_space_basis, Coordinates, DenseMatrix};
use crate::sc::StructureConstantAlgebra;
use crate::sparse;

use super::complex::{ChainMap, Mat, ProjComplex};

#[derive(Clone, Debug)]
struct Block {
    d: i32,
    r: usize,
    c: usize,
    corner: (usize, usize),
    offset: usize,
    len: usize,
}

/// Coordinates for all degree-`k` maps `X -> Y`.
#[derive(Clone, Debug)]
pub struct Layout {
    degree: i32,
    blocks: Vec<Block>,
    index: HashMap<(i32, usize, usize), usize>,
    dim: usize,
}

impl Layout {
    pub fn new(sc: &StructureConstantAlgebra, x: &ProjComplex, y: &ProjComplex, k: i32) -> Self {
        let mut blocks = Vec::new();
        let mut index = HashMap::new();
        let mut offset = 0;
        for d in x.degrees() {
            let tgt = y.term(d + k);
            for (c, &vs) in x.term(d).iter().enumerate() {
                for (r, &vt) in tgt.iter().enumerate() {
                    let len = sc.corner_dim(vt, vs);
                    if len == 0 {
                        continue;
                    }
                    index.insert((d, r, c), blocks.len());
                    blocks.push(Block {
                        d,
                        r,
                        c,
                        corner: (vt, vs),
                        offset,
                        len,
                    });
                    offset += len;
                }
            }
        }
        Self {
            degree: k,
            blocks,
            index,
            dim: offset,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn to_vector(&self, sc: &StructureConstantAlgebra, map: &ChainMap) -> Vec<u64> {
        let mut v = vec![0; self.dim];
        for (&d, m) in &map.comps {
            for r in 0..m.rows {
                for c in 0..m.cols {
                    let e = m.get(r, c);
                    if e.is_empty() {
                        continue;
                    }
                    let b = &self.blocks[self.index[&(d, r, c)]];
                    let coords = sc.corner_coords(e, b.corner.0, b.corner.1);
                    v[b.offset..b.offset + b.len].copy_from_slice(&coords);
                }
            }
        }
        v
    }

    pub fn to_map(&self, sc: &StructureConstantAlgebra, x: &ProjComplex, y: &ProjComplex, v: &[u64]) -> ChainMap {
        let mut comps: BTreeMap<i32, Mat> = BTreeMap::new();
        for b in &self.blocks {
            let coords = &v[b.offset..b.offset + b.len];
            if coords.iter().all(|&c| c == 0) {
                continue;
            }
            let m = comps
                .entry(b.d)
                .or_insert_with(|| Mat::zeros(y.term(b.d + self.degree).len(), x.term(b.d).len()));
            m.set(b.r, b.c, sc.from_corner_coords(b.corner.0, b.corner.1, coords));
        }
        ChainMap {
            degree: self.degree,
            comps,
        }
    }
}

/// Matrix of `D: Maps_k -> Maps_{k+1}` in layout coordinates.
fn boundary_matrix(
    sc: &StructureConstantAlgebra,
    x: &ProjComplex,
    y: &ProjComplex,
    src: &Layout,
    tgt: &Layout,
) -> DenseMatrix {
    let f = sc.field();
    let k = src.degree;
    let sign = if k.rem_euclid(2) == 0 { f.neg(1) } else { 1 };
    let mut m = DenseMatrix::zeros(f, tgt.dim, src.dim);
    let mut put = |col: usize, d: i32, r: usize, c: usize, val: &sparse::SparseVec, scale: u64| {
        if val.is_empty() {
            return;
        }
        let b = &tgt.blocks[tgt.index[&(d, r, c)]];
        let coords = sc.corner_coords(val, b.corner.0, b.corner.1);
        for (i, x) in coords.into_iter().enumerate() {
            if x != 0 {
                let row = b.offset + i;
                let cur = m.get(row, col);
                m.set(row, col, f.mul_add(cur, scale, x));
            }
        }
    };
    for blk in &src.blocks {
        let basis = sc.basis_in_corner(blk.corner.0, blk.corner.1);
        for (i, &bb) in basis.iter().enumerate() {
            let col = blk.offset + i;
            let unit = sparse::unit(bb);
            // d_Y o f: component X^d -> Y^{d+k+1}
            if let Some(dy) = y.diff(blk.d + k) {
                for r2 in 0..dy.rows {
                    let e = dy.get(r2, blk.r);
                    if !e.is_empty() {
                        put(col, blk.d, r2, blk.c, &sc.mul(e, &unit), 1);
                    }
                }
            }
            // -(-1)^k f o d_X: component X^{d-1} -> Y^{d+k}
            if let Some(dx) = x.diff(blk.d - 1) {
                for c2 in 0..dx.cols {
                    let e = dx.get(blk.c, c2);
                    if !e.is_empty() {
                        put(col, blk.d - 1, blk.r, c2, &sc.mul(&unit, e), sign);
                    }
                }
            }
        }
    }
    m
}

/// `Hom(X, Y[k])` with chosen representatives.
#[derive(Clone, Debug)]
pub struct HomSpace {
    layout: Layout,
    reps: Vec<Vec<u64>>,
    boundaries: Vec<Vec<u64>>,
    coords: Coordinates,
}

impl HomSpace {
    pub fn compute(sc: &StructureConstantAlgebra, x: &ProjComplex, y: &ProjComplex, k: i32) -> Self {
        let f = sc.field();
        let here = Layout::new(sc, x, y, k);
        if here.dim == 0 {
            return Self::empty(f, here);
        }
        let next = Layout::new(sc, x, y, k + 1);
        let prev = Layout::new(sc, x, y, k - 1);
        let cycles: Vec<Vec<u64>> = if next.dim == 0 {
            (0..here.dim)
                .map(|i| sparse::to_dense(&sparse::unit(i), here.dim))
                .collect()
        } else {
            boundary_matrix(sc, x, y, &here, &next).kernel()
        };
        let boundaries = if prev.dim == 0 || cycles.is_empty() {
            Vec::new()
        } else {
            let b = boundary_matrix(sc, x, y, &prev, &here);
            let cols: Vec<Vec<u64>> = (0..b.cols()).map(|j| b.column(j)).collect();
            row_space_basis(f, here.dim, &cols)
        };
        let reps = quotient_basis(f, here.dim, &cycles, &boundaries).expect("boundaries are cycles");
        let mut gens = reps.clone();
        gens.extend(boundaries.iter().cloned());
        let coords = Coordinates::new(f, here.dim, &gens).expect("independent by construction");
        Self {
            layout: here,
            reps,
            boundaries,
            coords,
        }
    }

    fn empty(f: PrimeField, layout: Layout) -> Self {
        Self {
            coords: Coordinates::new(f, layout.dim, &[]).unwrap(),
            layout,
            reps: Vec::new(),
            boundaries: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Same space with other representatives (cycles independent modulo boundaries).
    pub fn with_basis(self, f: PrimeField, reps: Vec<Vec<u64>>) -> Self {
        assert_eq!(reps.len(), self.reps.len());
        let mut gens = reps.clone();
        gens.extend(self.boundaries.iter().cloned());
        let coords = Coordinates::new(f, self.layout.dim, &gens).expect("new basis is independent");
        Self {
            layout: self.layout,
            reps,
            boundaries: self.boundaries,
            coords,
        }
    }

    pub fn degree(&self) -> i32 {
        self.layout.degree
    }

    pub fn homotopy_dim(&self) -> usize {
        self.boundaries.len()
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn rep_vectors(&self) -> &[Vec<u64>] {
        &self.reps
    }

    pub fn rep(&self, sc: &StructureConstantAlgebra, x: &ProjComplex, y: &ProjComplex, i: usize) -> ChainMap {
        self.layout.to_map(sc, x, y, &self.reps[i])
    }

    pub fn reps(&self, sc: &StructureConstantAlgebra, x: &ProjComplex, y: &ProjComplex) -> Vec<ChainMap> {
        (0..self.dim()).map(|i| self.rep(sc, x, y, i)).collect()
    }

    /// `sum c_i rep_i`.
    pub fn combination(
        &self,
        sc: &StructureConstantAlgebra,
        x: &ProjComplex,
        y: &ProjComplex,
        coeffs: &[u64],
    ) -> ChainMap {
        let v = crate::linalg::combine(sc.field(), self.layout.dim, coeffs, &self.reps);
        self.layout.to_map(sc, x, y, &v)
    }

    /// Class of a cycle in the representative basis.
    pub fn class_of_vector(&self, v: &[u64]) -> Vec<u64> {
        let mut c = self.coords.coords(v);
        c.truncate(self.reps.len());
        c
    }

    pub fn class_of(&self, sc: &StructureConstantAlgebra, map: &ChainMap) -> Vec<u64> {
        if self.layout.dim == 0 {
            return Vec::new();
        }
        self.class_of_vector(&self.layout.to_vector(sc, map))
    }
}

pub fn hom_dim(sc: &StructureConstantAlgebra, x: &ProjComplex, y: &ProjComplex, k: i32) -> usize {
    HomSpace::compute(sc, x, y, k).dim()
}
