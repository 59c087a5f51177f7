//! Linear maps between structure-constant algebras, given on basis elements.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::DenseMatrix;
use crate::sc::{collect_terms, StructureConstantAlgebra};
use crate::sparse::{self, SparseVec};

/// A linear map `S -> S'` stored as images of basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMap {
    pub images: Vec<SparseVec>,
}

impl AlgebraMap {
    pub fn identity(dim: usize) -> Self {
        Self {
            images: (0..dim).map(sparse::unit).collect(),
        }
    }

    pub fn apply(&self, f: PrimeField, x: &SparseVec) -> SparseVec {
        let terms = x
            .iter()
            .flat_map(|&(b, c)| self.images[b].iter().map(move |&(k, d)| (k, f.mul(c, d))))
            .collect();
        collect_terms(f, terms)
    }

    /// `self` after `first`.
    pub fn compose(&self, f: PrimeField, first: &AlgebraMap) -> AlgebraMap {
        AlgebraMap {
            images: first.images.iter().map(|x| self.apply(f, x)).collect(),
        }
    }

    pub fn matrix(&self, f: PrimeField, target_dim: usize) -> DenseMatrix {
        let cols: Vec<Vec<u64>> = self.images.iter().map(|x| sparse::to_dense(x, target_dim)).collect();
        DenseMatrix::from_columns(f, target_dim, &cols)
    }

    pub fn inverse(&self, f: PrimeField) -> Result<AlgebraMap> {
        let d = self.images.len();
        let inv = self
            .matrix(f, d)
            .inverse()
            .ok_or_else(|| Error::Verification("algebra map is not bijective".into()))?;
        Ok(AlgebraMap {
            images: (0..d).map(|j| sparse::from_dense(&inv.column(j))).collect(),
        })
    }

    /// Checks `phi(xy) = phi(x)phi(y)` on all basis pairs and `phi(1) = 1`.
    pub fn check_homomorphism(
        &self,
        source: &StructureConstantAlgebra,
        target: &StructureConstantAlgebra,
    ) -> Result<()> {
        let f = source.field();
        if self.apply(f, &source.one()) != target.one() {
            return Err(Error::Verification("map is not unital".into()));
        }
        let d = source.dim();
        for i in 0..d {
            for j in 0..d {
                if source.corner(i).1 != source.corner(j).0 {
                    // product is zero in the source; the images must multiply to zero too
                    if !target.mul(&self.images[i], &self.images[j]).is_empty() {
                        return Err(Error::Verification(format!(
                            "images of {} and {} multiply to a nonzero element",
                            source.labels()[i],
                            source.labels()[j]
                        )));
                    }
                    continue;
                }
                let lhs = self.apply(f, source.mul_basis(i, j));
                let rhs = target.mul(&self.images[i], &self.images[j]);
                if lhs != rhs {
                    return Err(Error::Verification(format!(
                        "map is not multiplicative on {} * {}",
                        source.labels()[i],
                        source.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// The vertex permutation `v -> w` with `phi(e_v) = e_w`, if every vertex
    /// idempotent is sent exactly to a vertex idempotent.
    pub fn vertex_permutation(&self, alg: &StructureConstantAlgebra) -> Result<Vec<usize>> {
        let n = alg.num_vertices();
        let mut perm = Vec::with_capacity(n);
        for v in 0..n {
            let img = &self.images[alg.idempotent(v)];
            let w = (0..n)
                .find(|&w| *img == sparse::unit(alg.idempotent(w)))
                .ok_or(Error::NotVertexPermuting)?;
            perm.push(w);
        }
        let mut seen = vec![false; n];
        for &w in &perm {
            if std::mem::replace(&mut seen[w], true) {
                return Err(Error::NotVertexPermuting);
            }
        }
        Ok(perm)
    }
}

pub fn invert_permutation(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// Cycles of a permutation, each starting at its smallest element, sorted.
pub fn permutation_orbits(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            orbit.push(x);
            x = p[x];
        }
        out.push(orbit);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbits_and_inverse() {
        let p = vec![1, 2, 0, 4, 3, 5];
        assert_eq!(permutation_orbits(&p), vec![vec![0, 1, 2], vec![3, 4], vec![5]]);
        let q = invert_permutation(&p);
        for i in 0..6 {
            assert_eq!(q[p[i]], i);
        }
    }
}
