//! Isomorphism tests, local endomorphism rings and endomorphism algebras.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{combine, DenseMatrix};
use crate::sc::{collect_terms, StructureConstantAlgebra};
use crate::sparse::{self, SparseVec};

use super::complex::{ChainMap, Mat, ProjComplex};
use super::hom::HomSpace;

const ISO_RETRIES: usize = 20;

/// Scalar matrix of idempotent coefficients of a block `Y^d x X^d`.
fn top_block(sc: &StructureConstantAlgebra, x_term: &[usize], y_term: &[usize], m: Option<&Mat>) -> DenseMatrix {
    let f = sc.field();
    let mut t = DenseMatrix::zeros(f, y_term.len(), x_term.len());
    if let Some(m) = m {
        for (r, &vy) in y_term.iter().enumerate() {
            for (c, &vx) in x_term.iter().enumerate() {
                if vx == vy {
                    t.set(r, c, sparse::coefficient(m.get(r, c), sc.idempotent(vx)));
                }
            }
        }
    }
    t
}

/// Degree-0 map between minimal complexes whose top is invertible in every degree.
pub fn is_isomorphism(sc: &StructureConstantAlgebra, x: &ProjComplex, y: &ProjComplex, map: &ChainMap) -> bool {
    if x.shape() != y.shape() {
        return false;
    }
    x.degrees().all(|d| {
        let (xt, yt) = (x.term(d), y.term(d));
        xt.is_empty() || top_block(sc, xt, yt, map.comps.get(&d)).is_invertible()
    })
}

/// Randomized test for minimal complexes; `false` after the retry budget.
pub fn is_isomorphic(sc: &StructureConstantAlgebra, x: &ProjComplex, y: &ProjComplex, seed: u64) -> bool {
    if x.shape() != y.shape() {
        return false;
    }
    if x.is_zero() {
        return true;
    }
    let hom = HomSpace::compute(sc, x, y, 0);
    if hom.dim() == 0 {
        return false;
    }
    let f = sc.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ISO_RETRIES {
        let coeffs: Vec<u64> = (0..hom.dim()).map(|_| f.random(&mut rng)).collect();
        if is_isomorphism(sc, x, y, &hom.combination(sc, x, y, &coeffs)) {
            return true;
        }
    }
    false
}

/// `End(X)` of an indecomposable minimal complex, with basis `id` followed by
/// a basis of the radical.
#[derive(Clone, Debug)]
pub struct LocalEnd {
    pub hom: HomSpace,
    pub rad_dim: usize,
}

/// Nilpotent-by-trace test: `f` is radical iff `tr(top(f) top(g)) = 0` for all `g`.
pub fn local_endomorphisms(sc: &StructureConstantAlgebra, x: &ProjComplex, index: usize) -> Result<LocalEnd> {
    let f = sc.field();
    let hom = HomSpace::compute(sc, x, x, 0);
    let reps = hom.reps(sc, x, x);
    let tops: Vec<Vec<DenseMatrix>> = reps
        .iter()
        .map(|m| {
            x.degrees()
                .map(|d| top_block(sc, x.term(d), x.term(d), m.comps.get(&d)))
                .collect()
        })
        .collect();
    let n = reps.len();
    let mut gram = DenseMatrix::zeros(f, n, n);
    for i in 0..n {
        for j in 0..n {
            let t = tops[i]
                .iter()
                .zip(&tops[j])
                .fold(0, |acc, (a, b)| f.add(acc, a.mul(b).trace()));
            gram.set(i, j, t);
        }
    }
    let residue = gram.rank();
    if residue != 1 {
        return Err(Error::NonSplitLocalRing {
            summand: index,
            residue_dim: residue,
        });
    }
    let layout = hom.layout().clone();
    let id = layout.to_vector(sc, &x.identity(sc));
    let mut basis = vec![id];
    for k in gram.kernel() {
        basis.push(combine(f, layout.dim(), &k, hom.rep_vectors()));
    }
    let rad_dim = basis.len() - 1;
    Ok(LocalEnd {
        hom: hom.with_basis(f, basis),
        rad_dim,
    })
}

/// Hom spaces between the summands of `T`, with local bases on the diagonal.
#[derive(Clone, Debug)]
pub struct EndData {
    /// `homs[a][b] = Hom(X_a, X_b)`.
    pub homs: Vec<Vec<HomSpace>>,
    pub rad_dims: Vec<usize>,
}

impl EndData {
    pub fn compute(sc: &StructureConstantAlgebra, summands: &[ProjComplex]) -> Result<Self> {
        let n = summands.len();
        let mut homs = Vec::with_capacity(n);
        let mut rad_dims = Vec::with_capacity(n);
        for a in 0..n {
            let mut row = Vec::with_capacity(n);
            for b in 0..n {
                if a == b {
                    let le = local_endomorphisms(sc, &summands[a], a)?;
                    rad_dims.push(le.rad_dim);
                    row.push(le.hom);
                } else {
                    row.push(HomSpace::compute(sc, &summands[a], &summands[b], 0));
                }
            }
            homs.push(row);
        }
        Ok(Self { homs, rad_dims })
    }
}

/// `End(T)` with `Hom(X_a, X_b)` in corner `(b, a)` and product `x * y = x o y`.
pub fn end_algebra(
    sc: &StructureConstantAlgebra,
    summands: &[ProjComplex],
    labels: Option<Vec<String>>,
) -> Result<StructureConstantAlgebra> {
    let data = EndData::compute(sc, summands)?;
    end_algebra_from(sc, summands, &data, labels)
}

pub fn end_algebra_from(
    sc: &StructureConstantAlgebra,
    summands: &[ProjComplex],
    data: &EndData,
    labels: Option<Vec<String>>,
) -> Result<StructureConstantAlgebra> {
    let f = sc.field();
    let n = summands.len();
    let vertex_labels = labels.unwrap_or_else(|| (0..n).map(|a| format!("T{a}")).collect());
    // basis index offsets per (a, b)
    let mut offset = vec![vec![0usize; n]; n];
    let mut corners = Vec::new();
    let mut names = Vec::new();
    for b in 0..n {
        for a in 0..n {
            offset[a][b] = corners.len();
            for i in 0..data.homs[a][b].dim() {
                corners.push((b, a));
                names.push(if a == b && i == 0 {
                    format!("id_{}", vertex_labels[a])
                } else {
                    format!("{}->{}#{i}", vertex_labels[a], vertex_labels[b])
                });
            }
        }
    }
    let dim = corners.len();
    let maps: Vec<Vec<Vec<ChainMap>>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| data.homs[a][b].reps(sc, &summands[a], &summands[b]))
                .collect()
        })
        .collect();
    let mut table = vec![vec![SparseVec::new(); dim]; dim];
    for b in 0..n {
        for a in 0..n {
            for (i, x) in maps[a][b].iter().enumerate() {
                for c in 0..n {
                    for (j, y) in maps[c][a].iter().enumerate() {
                        let prod = x.compose(sc, y);
                        let cls = data.homs[c][b].class_of(sc, &prod);
                        let terms = cls
                            .iter()
                            .enumerate()
                            .filter(|(_, &v)| v != 0)
                            .map(|(k, &v)| (offset[c][b] + k, v))
                            .collect();
                        table[offset[a][b] + i][offset[c][a] + j] = collect_terms(f, terms);
                    }
                }
            }
        }
    }
    let idempotents = (0..n).map(|a| offset[a][a]).collect();
    StructureConstantAlgebra::new(f, vertex_labels, idempotents, corners, names, table, true)
}
