//! Bound quiver algebras `KQ/I` with an exact normal-form path basis.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::DenseMatrix;
use crate::quiver::{PathWord, Quiver, Relation};
use crate::sc::{collect_terms, StructureConstantAlgebra};
use crate::sparse::{self, SparseVec};

pub const DEFAULT_MAX_CAP: usize = 40;

/// Upper bound on the number of paths enumerated by the truncated algorithm.
const MAX_TRUNCATED_PATHS: usize = 200_000;

#[derive(Debug, Clone)]
pub struct BoundQuiverAlgebra {
    quiver: Quiver,
    relations: Vec<Relation>,
    field: PrimeField,
    basis: Vec<PathWord>,
    index: HashMap<PathWord, usize>,
    /// `action[b][a]` = normal form of `b * a`.
    action: Vec<Vec<SparseVec>>,
    loewy_length: usize,
    sc: StructureConstantAlgebra,
}

/// An element as a combination of normal paths.
pub type AlgebraElement = SparseVec;

impl BoundQuiverAlgebra {
    pub fn build(quiver: Quiver, relations: Vec<Relation>, field: PrimeField, max_cap: usize) -> Result<Self> {
        let reduced = validate_relations(&quiver, &relations, field)?;
        let homogeneous = reduced.iter().all(|r| r.iter().all(|(_, p)| p.len() == r[0].1.len()));
        let (basis, action, loewy) = if homogeneous {
            graded_normal_form(&quiver, &reduced, field, max_cap)?
        } else {
            truncated_normal_form(&quiver, &reduced, field, max_cap)?
        };
        Self::assemble(quiver, relations, field, basis, action, loewy)
    }

    /// Same algebra computed by the brute-force truncated path-space method.
    pub fn build_truncated(
        quiver: Quiver,
        relations: Vec<Relation>,
        field: PrimeField,
        max_cap: usize,
    ) -> Result<Self> {
        let reduced = validate_relations(&quiver, &relations, field)?;
        let (basis, action, loewy) = truncated_normal_form(&quiver, &reduced, field, max_cap)?;
        Self::assemble(quiver, relations, field, basis, action, loewy)
    }

    fn assemble(
        quiver: Quiver,
        relations: Vec<Relation>,
        field: PrimeField,
        basis: Vec<PathWord>,
        action: Vec<Vec<SparseVec>>,
        loewy_length: usize,
    ) -> Result<Self> {
        let index: HashMap<PathWord, usize> = basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let dim = basis.len();
        let fold = |start: SparseVec, arrows: &[usize]| -> SparseVec {
            let mut x = start;
            for &a in arrows {
                let terms: Vec<(usize, u64)> = x
                    .iter()
                    .flat_map(|&(b, c)| action[b][a].iter().map(move |&(k, d)| (k, field.mul(c, d))))
                    .collect();
                x = collect_terms(field, terms);
                if x.is_empty() {
                    break;
                }
            }
            x
        };
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                if basis[i].target != basis[j].source {
                    continue;
                }
                table[i][j] = if basis[j].arrows.is_empty() {
                    sparse::unit(i)
                } else {
                    fold(sparse::unit(i), &basis[j].arrows)
                };
            }
        }
        let idempotents: Vec<usize> = (0..quiver.num_vertices())
            .map(|v| index[&PathWord::trivial(v)])
            .collect();
        let sc = StructureConstantAlgebra::new(
            field,
            quiver.vertices().to_vec(),
            idempotents,
            basis.iter().map(|p| (p.source, p.target)).collect(),
            basis.iter().map(|p| quiver.path_label(p)).collect(),
            table,
            true,
        )?;
        Ok(Self {
            quiver,
            relations,
            field,
            basis,
            index,
            action,
            loewy_length,
            sc,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[PathWord] {
        &self.basis
    }

    /// Smallest `L` with every path of length `L` zero.
    pub fn loewy_length(&self) -> usize {
        self.loewy_length
    }

    pub fn sc(&self) -> &StructureConstantAlgebra {
        &self.sc
    }

    pub fn basis_index(&self, p: &PathWord) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn idempotent(&self, v: usize) -> AlgebraElement {
        sparse::unit(self.sc.idempotent(v))
    }

    /// Normal form of an arbitrary path.
    pub fn path_element(&self, p: &PathWord) -> AlgebraElement {
        let mut x = self.idempotent(p.source);
        for &a in &p.arrows {
            x = self.right_arrow(&x, a);
        }
        x
    }

    pub fn path_by_names(&self, names: &[&str]) -> Result<AlgebraElement> {
        Ok(self.path_element(&self.quiver.path_by_names(names)?))
    }

    pub fn arrow(&self, a: usize) -> AlgebraElement {
        self.path_element(&self.quiver.path(&[a]).expect("single arrow is a path"))
    }

    pub fn arrow_by_name(&self, name: &str) -> Result<AlgebraElement> {
        self.path_by_names(&[name])
    }

    pub fn right_arrow(&self, x: &AlgebraElement, a: usize) -> AlgebraElement {
        let terms = x
            .iter()
            .flat_map(|&(b, c)| self.action[b][a].iter().map(move |&(k, d)| (k, self.field.mul(c, d))))
            .collect();
        collect_terms(self.field, terms)
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        self.sc.mul(x, y)
    }

    /// Basis of `Hom(P(i), P(j)) = e_j A e_i`, as basis positions.
    pub fn hom_projectives(&self, i: usize, j: usize) -> &[usize] {
        self.sc.basis_in_corner(j, i)
    }

    /// Normal basis of `P(i) = e_i A`.
    pub fn projective_basis(&self, i: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.basis[b].source == i).collect()
    }

    /// Evaluates a relation in the algebra (must be zero).
    pub fn evaluate(&self, r: &Relation) -> Result<AlgebraElement> {
        let mut acc = Vec::new();
        for (c, word) in r {
            let p = self.quiver.path(word)?;
            acc = sparse::add_scaled(self.field, &acc, &self.path_element(&p), self.field.from_i64(*c));
        }
        Ok(acc)
    }

    pub fn label(&self, x: &AlgebraElement) -> String {
        if x.is_empty() {
            return "0".into();
        }
        x.iter()
            .map(|&(b, c)| {
                let s = self.field.to_signed(c);
                format!("{s}*{}", self.quiver.path_label(&self.basis[b]))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Per-vertex bases of `rad P(i)` and `soc P(i)`, with totals.
    pub fn radical_and_socle(&self) -> RadicalSocle {
        let n = self.quiver.num_vertices();
        let mut rad_p = Vec::with_capacity(n);
        let mut soc_p = Vec::with_capacity(n);
        for i in 0..n {
            let pb = self.projective_basis(i);
            rad_p.push(
                pb.iter()
                    .copied()
                    .filter(|&b| !self.basis[b].arrows.is_empty())
                    .map(sparse::unit)
                    .collect::<Vec<_>>(),
            );
            soc_p.push(self.socle_of_projective(i));
        }
        RadicalSocle {
            rad_a_dim: rad_p.iter().map(Vec::len).sum(),
            soc_a_dim: soc_p.iter().map(Vec::len).sum(),
            rad_p,
            soc_p,
        }
    }

    /// `{x in e_i A : x * arrow = 0 for every arrow}`.
    pub fn socle_of_projective(&self, i: usize) -> Vec<AlgebraElement> {
        let pb = self.projective_basis(i);
        let dim = self.dim();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for a in 0..self.quiver.num_arrows() {
            // each column is the image of one basis element of P(i)
            let images: Vec<Vec<u64>> = pb.iter().map(|&b| sparse::to_dense(&self.action[b][a], dim)).collect();
            for r in 0..dim {
                if images.iter().any(|col| col[r] != 0) {
                    rows.push(images.iter().map(|col| col[r]).collect());
                }
            }
        }
        let m = DenseMatrix::from_rows(self.field, pb.len(), &rows);
        m.kernel()
            .into_iter()
            .map(|k| {
                let mut v: SparseVec = k
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(j, &c)| (pb[j], c))
                    .collect();
                v.sort_unstable();
                v
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct RadicalSocle {
    pub rad_p: Vec<Vec<AlgebraElement>>,
    pub soc_p: Vec<Vec<AlgebraElement>>,
    pub rad_a_dim: usize,
    pub soc_a_dim: usize,
}

type ReducedRelation = Vec<(u64, PathWord)>;

fn validate_relations(quiver: &Quiver, relations: &[Relation], field: PrimeField) -> Result<Vec<ReducedRelation>> {
    let mut out = Vec::new();
    for (index, r) in relations.iter().enumerate() {
        let mut terms: Vec<(u64, PathWord)> = Vec::new();
        for (c, word) in r {
            if word.len() < 2 {
                return Err(Error::RelationNotInRadSquared {
                    index,
                    reason: format!("term of length {}", word.len()),
                });
            }
            let p = quiver.path(word).map_err(|e| Error::RelationNotInRadSquared {
                index,
                reason: e.to_string(),
            })?;
            if let Some((s, t)) = terms.first().map(|(_, q)| (q.source, q.target)) {
                if (s, t) != (p.source, p.target) {
                    return Err(Error::RelationNotInRadSquared {
                        index,
                        reason: "terms are not parallel paths".into(),
                    });
                }
            }
            let c = field.from_i64(*c);
            match terms.iter_mut().find(|(_, q)| *q == p) {
                Some(t) => t.0 = field.add(t.0, c),
                None => terms.push((c, p)),
            }
        }
        terms.retain(|(c, _)| *c != 0);
        if !terms.is_empty() {
            out.push(terms);
        }
    }
    Ok(out)
}

fn name_key(quiver: &Quiver, p: &PathWord) -> Vec<String> {
    quiver.path_names(p)
}

type NormalForm = (Vec<PathWord>, Vec<Vec<SparseVec>>, usize);

/// Degree-by-degree normal form for homogeneous relations.
///
/// Level `k` candidates are `n*a` with `n` normal of length `k-1`. The ideal in
/// degree `k` modulo `I_{k-1} Q_1` is spanned by `a * g` (`g` a degree `k-1`
/// generator) and the degree-`k` relations, all rewritten into candidates.
/// Within each corner the lexicographically largest candidates are eliminated.
fn graded_normal_form(
    quiver: &Quiver,
    relations: &[ReducedRelation],
    field: PrimeField,
    max_cap: usize,
) -> Result<NormalForm> {
    let n = quiver.num_vertices();
    let na = quiver.num_arrows();
    let mut basis: Vec<PathWord> = (0..n).map(PathWord::trivial).collect();
    let mut action: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); na]; n];
    let mut level: Vec<usize> = (0..n).collect();
    // previous-degree ideal generators, as combinations of actual paths
    let mut prev_gens: Vec<Vec<(u64, PathWord)>> = Vec::new();
    let mut k = 0;
    loop {
        k += 1;
        if k > max_cap {
            return Err(Error::NotAdmissible { cap: max_cap });
        }
        // candidates of length k
        let mut cand: Vec<PathWord> = Vec::new();
        let mut cand_index: HashMap<PathWord, usize> = HashMap::new();
        let mut cand_origin: Vec<(usize, usize)> = Vec::new();
        for &b in &level {
            let p = &basis[b];
            for a in quiver.arrows_from(p.target) {
                let mut arrows = p.arrows.clone();
                arrows.push(a);
                let c = PathWord {
                    source: p.source,
                    target: quiver.arrow(a).target,
                    arrows,
                };
                cand_index.insert(c.clone(), cand.len());
                cand.push(c);
                cand_origin.push((b, a));
            }
        }
        // rewrite a path of length k into candidate coordinates
        let rewrite = |p: &PathWord, basis: &[PathWord], action: &[Vec<SparseVec>]| -> SparseVec {
            let (last, prefix) = p.arrows.split_last().expect("nonempty path");
            let mut x = sparse::unit(p.source);
            for &a in prefix {
                let terms = x
                    .iter()
                    .flat_map(|&(b, c)| action[b][a].iter().map(move |&(kk, d)| (kk, field.mul(c, d))))
                    .collect();
                x = collect_terms(field, terms);
            }
            let terms = x
                .iter()
                .map(|&(b, c)| {
                    let mut arrows = basis[b].arrows.clone();
                    arrows.push(*last);
                    let w = PathWord {
                        source: basis[b].source,
                        target: quiver.arrow(*last).target,
                        arrows,
                    };
                    (cand_index[&w], c)
                })
                .collect();
            collect_terms(field, terms)
        };
        let mut gens: Vec<SparseVec> = Vec::new();
        for g in &prev_gens {
            let src = g[0].1.source;
            for a in quiver.arrows_into(src) {
                let mut acc: Vec<(usize, u64)> = Vec::new();
                for (c, p) in g {
                    let mut arrows = vec![a];
                    arrows.extend_from_slice(&p.arrows);
                    let w = PathWord {
                        source: quiver.arrow(a).source,
                        target: p.target,
                        arrows,
                    };
                    for (kk, d) in rewrite(&w, &basis, &action) {
                        acc.push((kk, field.mul(*c, d)));
                    }
                }
                let v = collect_terms(field, acc);
                if !v.is_empty() {
                    gens.push(v);
                }
            }
        }
        for r in relations.iter().filter(|r| r[0].1.len() == k) {
            let mut acc = Vec::new();
            for (c, p) in r {
                for (kk, d) in rewrite(p, &basis, &action) {
                    acc.push((kk, field.mul(*c, d)));
                }
            }
            let v = collect_terms(field, acc);
            if !v.is_empty() {
                gens.push(v);
            }
        }
        // eliminate per corner
        let mut blocks: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, c) in cand.iter().enumerate() {
            blocks.entry((c.source, c.target)).or_default().push(i);
        }
        let mut block_keys: Vec<_> = blocks.keys().copied().collect();
        block_keys.sort_unstable();
        let mut gens_by_block: HashMap<(usize, usize), Vec<&SparseVec>> = HashMap::new();
        for g in &gens {
            let c = &cand[g[0].0];
            gens_by_block.entry((c.source, c.target)).or_default().push(g);
        }
        // normal form of each candidate, in candidate coordinates (free columns only)
        let mut cand_nf: Vec<Option<Vec<(usize, u64)>>> = vec![None; cand.len()];
        let mut new_gens: Vec<Vec<(u64, PathWord)>> = Vec::new();
        let mut normal: Vec<usize> = Vec::new();
        for key in block_keys {
            let mut cols = blocks[&key].clone();
            // descending lexicographic: largest words become pivots
            cols.sort_by(|&x, &y| name_key(quiver, &cand[y]).cmp(&name_key(quiver, &cand[x])));
            let col_of: HashMap<usize, usize> = cols.iter().enumerate().map(|(j, &c)| (c, j)).collect();
            let rows: Vec<Vec<u64>> = gens_by_block
                .get(&key)
                .map(|gs| {
                    gs.iter()
                        .map(|g| {
                            let mut row = vec![0; cols.len()];
                            for &(c, v) in g.iter() {
                                row[col_of[&c]] = v;
                            }
                            row
                        })
                        .collect()
                })
                .unwrap_or_default();
            let (pivots, reduced) = if rows.is_empty() {
                (Vec::new(), None)
            } else {
                let r = DenseMatrix::from_rows(field, cols.len(), &rows).rref();
                (r.pivots.clone(), Some(r))
            };
            let mut is_pivot = vec![false; cols.len()];
            for &p in &pivots {
                is_pivot[p] = true;
            }
            for (j, &c) in cols.iter().enumerate() {
                if !is_pivot[j] {
                    cand_nf[c] = Some(vec![(c, 1)]);
                }
            }
            if let Some(r) = reduced {
                for (row, &pc) in pivots.iter().enumerate() {
                    let mut nf = Vec::new();
                    let mut g = Vec::new();
                    for (j, &c) in cols.iter().enumerate() {
                        let v = r.reduced.get(row, j);
                        if v == 0 {
                            continue;
                        }
                        g.push((v, cand[c].clone()));
                        if j != pc {
                            nf.push((c, field.neg(v)));
                        }
                    }
                    cand_nf[cols[pc]] = Some(nf);
                    new_gens.push(g);
                }
            }
        }
        // new normal paths, ascending lexicographic within the level
        let mut free: Vec<usize> = (0..cand.len())
            .filter(|&c| matches!(&cand_nf[c], Some(v) if v.len() == 1 && v[0] == (c, 1)))
            .collect();
        free.sort_by(|&x, &y| {
            (cand[x].source, cand[x].target, name_key(quiver, &cand[x])).cmp(&(
                cand[y].source,
                cand[y].target,
                name_key(quiver, &cand[y]),
            ))
        });
        let mut basis_of_cand = HashMap::new();
        for &c in &free {
            basis_of_cand.insert(c, basis.len());
            normal.push(basis.len());
            basis.push(cand[c].clone());
            action.push(vec![Vec::new(); na]);
        }
        for (c, &(b, a)) in cand_origin.iter().enumerate() {
            let nf = cand_nf[c].as_ref().expect("every candidate resolved");
            let terms = nf.iter().map(|&(cc, v)| (basis_of_cand[&cc], v)).collect();
            action[b][a] = collect_terms(field, terms);
        }
        if normal.is_empty() {
            return Ok((basis, action, k));
        }
        level = normal;
        prev_gens = new_gens;
    }
}

/// Brute-force normal form: all paths up to a growing cap, ideal spanned by
/// truncated `u r v`, longest and lexicographically largest paths eliminated.
fn truncated_normal_form(
    quiver: &Quiver,
    relations: &[ReducedRelation],
    field: PrimeField,
    max_cap: usize,
) -> Result<NormalForm> {
    let n = quiver.num_vertices();
    let na = quiver.num_arrows();
    for cap in 1..=max_cap {
        // enumerate paths of length <= cap
        let mut paths: Vec<PathWord> = (0..n).map(PathWord::trivial).collect();
        let mut frontier: Vec<usize> = (0..n).collect();
        for _ in 0..cap {
            let mut next = Vec::new();
            for &i in &frontier {
                let t = paths[i].target;
                for a in quiver.arrows_from(t) {
                    let mut arrows = paths[i].arrows.clone();
                    arrows.push(a);
                    next.push(paths.len());
                    paths.push(PathWord {
                        source: paths[i].source,
                        target: quiver.arrow(a).target,
                        arrows,
                    });
                }
            }
            if paths.len() > MAX_TRUNCATED_PATHS {
                return Err(Error::NotAdmissible { cap });
            }
            frontier = next;
        }
        let top: Vec<usize> = frontier;
        let index: HashMap<&PathWord, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let starting_at = |v: usize| paths.iter().enumerate().filter(move |(_, p)| p.source == v);
        let ending_at = |v: usize| paths.iter().enumerate().filter(move |(_, p)| p.target == v);
        let mut gens: Vec<SparseVec> = Vec::new();
        for r in relations {
            let (s, t) = (r[0].1.source, r[0].1.target);
            let minlen = r.iter().map(|(_, p)| p.len()).min().unwrap();
            for (_, u) in ending_at(s) {
                for (_, v) in starting_at(t) {
                    if u.len() + minlen + v.len() > cap {
                        continue;
                    }
                    let mut terms = Vec::new();
                    for (c, p) in r {
                        if u.len() + p.len() + v.len() > cap {
                            continue;
                        }
                        let mut arrows = u.arrows.clone();
                        arrows.extend_from_slice(&p.arrows);
                        arrows.extend_from_slice(&v.arrows);
                        let w = PathWord {
                            source: u.source,
                            target: v.target,
                            arrows,
                        };
                        terms.push((index[&w], *c));
                    }
                    let g = collect_terms(field, terms);
                    if !g.is_empty() {
                        gens.push(g);
                    }
                }
            }
        }
        // columns: longest first, then lexicographically largest
        let mut cols: Vec<usize> = (0..paths.len()).collect();
        cols.sort_by(|&x, &y| {
            (paths[y].len(), name_key(quiver, &paths[y])).cmp(&(paths[x].len(), name_key(quiver, &paths[x])))
        });
        let mut col_of = vec![0; paths.len()];
        for (j, &c) in cols.iter().enumerate() {
            col_of[c] = j;
        }
        let rows: Vec<Vec<u64>> = gens
            .iter()
            .map(|g| {
                let mut row = vec![0; cols.len()];
                for &(c, v) in g {
                    row[col_of[c]] = v;
                }
                row
            })
            .collect();
        let rref = if rows.is_empty() {
            None
        } else {
            Some(DenseMatrix::from_rows(field, cols.len(), &rows).rref())
        };
        let pivots: Vec<usize> = rref.as_ref().map(|r| r.pivots.clone()).unwrap_or_default();
        let mut is_pivot = vec![false; cols.len()];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        if !top.iter().all(|&p| is_pivot[col_of[p]]) {
            continue;
        }
        // normal basis: non-pivot paths (all shorter than cap), ordered by length then lex
        let mut normal: Vec<usize> = (0..paths.len()).filter(|&p| !is_pivot[col_of[p]]).collect();
        normal.sort_by(|&x, &y| {
            (
                paths[x].len(),
                paths[x].source,
                paths[x].target,
                name_key(quiver, &paths[x]),
            )
                .cmp(&(
                    paths[y].len(),
                    paths[y].source,
                    paths[y].target,
                    name_key(quiver, &paths[y]),
                ))
        });
        let mut basis_pos = vec![usize::MAX; paths.len()];
        for (k, &p) in normal.iter().enumerate() {
            basis_pos[p] = k;
        }
        let pivot_row: HashMap<usize, usize> = pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        let nf = |p: usize| -> SparseVec {
            if basis_pos[p] != usize::MAX {
                return sparse::unit(basis_pos[p]);
            }
            let r = rref.as_ref().unwrap();
            let row = pivot_row[&col_of[p]];
            let terms = (0..cols.len())
                .filter(|&j| j != col_of[p] && r.reduced.get(row, j) != 0)
                .map(|j| (basis_pos[cols[j]], field.neg(r.reduced.get(row, j))))
                .collect();
            collect_terms(field, terms)
        };
        let basis: Vec<PathWord> = normal.iter().map(|&p| paths[p].clone()).collect();
        let mut action = vec![vec![Vec::new(); na]; basis.len()];
        for (b, p) in basis.iter().enumerate() {
            for a in quiver.arrows_from(p.target) {
                let mut arrows = p.arrows.clone();
                arrows.push(a);
                let w = PathWord {
                    source: p.source,
                    target: quiver.arrow(a).target,
                    arrows,
                };
                action[b][a] = match index.get(&w) {
                    Some(&i) => nf(i),
                    None => Vec::new(),
                };
            }
        }
        let loewy = basis.iter().map(PathWord::len).max().unwrap_or(0) + 1;
        return Ok((basis, action, loewy));
    }
    Err(Error::NotAdmissible { cap: max_cap })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> String {
        x.to_string()
    }

    fn field() -> PrimeField {
        PrimeField::default_field()
    }

    fn nakayama_2_4() -> (Quiver, Vec<Relation>) {
        let q = Quiver::new(
            vec![s("1"), s("2")],
            vec![(s("a"), s("1"), s("2")), (s("b"), s("2"), s("1"))],
        )
        .unwrap();
        let (a, b) = (0, 1);
        (q, vec![vec![(1, vec![a, b, a, b])], vec![(1, vec![b, a, b, a])]])
    }

    #[test]
    fn nakayama_base_has_dim_8() {
        let (q, r) = nakayama_2_4();
        let alg = BoundQuiverAlgebra::build(q.clone(), r.clone(), field(), DEFAULT_MAX_CAP).unwrap();
        assert_eq!(alg.dim(), 8);
        assert_eq!(alg.loewy_length(), 4);
        let labels: Vec<String> = alg.basis().iter().map(|p| q.path_label(p)).collect();
        for l in ["e_1", "e_2", "a", "b", "a*b", "b*a", "a*b*a", "b*a*b"] {
            assert!(labels.contains(&l.to_string()), "{l} missing");
        }
        let x = alg.path_by_names(&["a", "b", "a", "b"]).unwrap();
        assert!(x.is_empty());
        let brute = BoundQuiverAlgebra::build_truncated(q, r, field(), DEFAULT_MAX_CAP).unwrap();
        assert_eq!(brute.dim(), 8);
        alg.sc().check_associative().unwrap();
    }

    #[test]
    fn single_vertex() {
        let q = Quiver::new(vec![s("1")], vec![]).unwrap();
        let alg = BoundQuiverAlgebra::build(q, vec![], field(), DEFAULT_MAX_CAP).unwrap();
        assert_eq!(alg.dim(), 1);
        assert_eq!(alg.multiply(&alg.idempotent(0), &alg.idempotent(0)), alg.idempotent(0));
    }

    #[test]
    fn rejects_length_one_and_nonparallel() {
        let (q, _) = nakayama_2_4();
        let e = BoundQuiverAlgebra::build(q.clone(), vec![vec![(1, vec![0])]], field(), 10);
        assert!(matches!(e, Err(Error::RelationNotInRadSquared { .. })));
        let e = BoundQuiverAlgebra::build(q, vec![vec![(1, vec![0, 1]), (1, vec![1, 0])]], field(), 10);
        assert!(matches!(e, Err(Error::RelationNotInRadSquared { .. })));
    }

    #[test]
    fn cyclic_without_relations_is_not_admissible() {
        let (q, _) = nakayama_2_4();
        let e = BoundQuiverAlgebra::build(q, vec![], field(), 12);
        assert_eq!(e.unwrap_err(), Error::NotAdmissible { cap: 12 });
    }

    #[test]
    fn inhomogeneous_relation() {
        // loop x with x^2 = x^3: then x^2 = x^3 = x^4 = ... and nilpotency forces x^2 = 0
        let q = Quiver::new(vec![s("1")], vec![(s("x"), s("1"), s("1"))]).unwrap();
        let r = vec![vec![(1, vec![0, 0]), (-1, vec![0, 0, 0])], vec![(1, vec![0, 0, 0, 0])]];
        let alg = BoundQuiverAlgebra::build(q, r, field(), 10).unwrap();
        assert_eq!(alg.dim(), 2);
        alg.sc().check_associative().unwrap();
    }

    #[test]
    fn commutative_square() {
        // 1 -a-> 2 -b-> 4, 1 -c-> 3 -d-> 4 with ab = cd
        let q = Quiver::new(
            vec![s("1"), s("2"), s("3"), s("4")],
            vec![
                (s("a"), s("1"), s("2")),
                (s("b"), s("2"), s("4")),
                (s("c"), s("1"), s("3")),
                (s("d"), s("3"), s("4")),
            ],
        )
        .unwrap();
        let r = vec![vec![(1, vec![0, 1]), (-1, vec![2, 3])]];
        let alg = BoundQuiverAlgebra::build(q.clone(), r.clone(), field(), 10).unwrap();
        assert_eq!(alg.dim(), 9);
        assert_eq!(
            alg.path_by_names(&["a", "b"]).unwrap(),
            alg.path_by_names(&["c", "d"]).unwrap()
        );
        assert_eq!(alg.hom_projectives(3, 0).len(), 1);
        let brute = BoundQuiverAlgebra::build_truncated(q, r, field(), 10).unwrap();
        assert_eq!(brute.dim(), 9);
    }

    #[test]
    fn socle_of_nakayama_base() {
        let (q, r) = nakayama_2_4();
        let alg = BoundQuiverAlgebra::build(q, r, field(), DEFAULT_MAX_CAP).unwrap();
        let rs = alg.radical_and_socle();
        assert_eq!(rs.soc_p[0].len(), 1);
        assert_eq!(alg.label(&rs.soc_p[0][0]), "1*a*b*a");
        assert_eq!(rs.rad_a_dim, 6);
        assert_eq!(rs.soc_a_dim, 2);
    }
}
