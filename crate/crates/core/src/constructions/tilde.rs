//! The doubled algebra `Ã = KQ̃/Ĩ` and its model `Γ/J''` inside `A x A`.

use crate::algebra::{BoundQuiverAlgebra, DEFAULT_MAX_CAP};
use crate::error::{Error, Result};
use crate::linalg::{combine, quotient_basis, rank_of, Coordinates, DenseMatrix};
use crate::morphism::AlgebraMap;
use crate::quiver::{PathWord, Quiver, Relation};
use crate::sc::{collect_terms, StructureConstantAlgebra};
use crate::selfinjective::{evaluate, frobenius_form, is_self_injective};
use crate::sparse::{self, SparseVec};

use super::Certificate;

#[derive(Clone, Debug)]
pub struct TildeOutput {
    pub base: BoundQuiverAlgebra,
    pub algebra: BoundQuiverAlgebra,
    /// Arrow indices of the chosen socle path `p_i` of the base, per vertex.
    pub socle_paths: Vec<Vec<usize>>,
}

pub fn plus_name(a: &str) -> String {
    format!("{a}+")
}

pub fn minus_name(a: &str) -> String {
    format!("{a}-")
}

/// Longest path from `i` (then smallest in arrow order) whose class spans `soc P(i)`.
fn socle_path(alg: &BoundQuiverAlgebra, i: usize, soc: &SparseVec) -> Option<Vec<usize>> {
    let q = alg.quiver();
    let f = alg.field();
    let spans = |x: &SparseVec| {
        if x.len() != soc.len() || x.iter().zip(soc).any(|(a, b)| a.0 != b.0) {
            return false;
        }
        let r = f.div(x[0].1, soc[0].1);
        x.iter().zip(soc).all(|(a, b)| a.1 == f.mul(r, b.1))
    };
    // every nonzero path from i, grouped by length
    let mut layers: Vec<Vec<(Vec<usize>, SparseVec)>> = vec![vec![(Vec::new(), alg.idempotent(i))]];
    loop {
        let mut next = Vec::new();
        for (word, x) in layers.last().unwrap() {
            let end = if word.is_empty() {
                i
            } else {
                q.arrow(*word.last().unwrap()).target
            };
            for a in q.arrows_from(end) {
                let y = alg.right_arrow(x, a);
                if !y.is_empty() {
                    let mut w = word.clone();
                    w.push(a);
                    next.push((w, y));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layers.push(next);
    }
    layers
        .iter()
        .rev()
        .find_map(|layer| layer.iter().find(|(_, x)| spans(x)).map(|(w, _)| w.clone()))
}

/// Builds `Ã` from a basic connected self-injective `A` with `soc P(i)`
/// inside `rad^2` and spanned by a path.
pub fn tilde_construction(base: &BoundQuiverAlgebra, seed: u64) -> Result<TildeOutput> {
    let si = is_self_injective(base.sc(), seed)?;
    if !si.selfinjective {
        return Err(Error::Precondition("base algebra is not self-injective".into()));
    }
    let q = base.quiver();
    let n = q.num_vertices();
    if q.num_arrows() == 0 {
        return Err(Error::Precondition("base algebra is semisimple".into()));
    }
    let mut socle_paths = Vec::with_capacity(n);
    for i in 0..n {
        let soc = base.socle_of_projective(i);
        let label = q.vertices()[i].clone();
        if soc.len() != 1 {
            return Err(Error::Precondition(format!("socle of P({label}) is not simple")));
        }
        let basis = base.basis();
        if soc[0].iter().any(|&(b, _)| basis[b].len() < 2) {
            return Err(Error::SocleNotInRadSquared(label));
        }
        let p = socle_path(base, i, &soc[0]).ok_or(Error::SocleNotPathSpanned(label))?;
        socle_paths.push(p);
    }
    let na = q.num_arrows();
    let mut arrows = Vec::with_capacity(2 * na);
    for a in q.arrows() {
        let (s, t) = (q.vertices()[a.source].clone(), q.vertices()[a.target].clone());
        arrows.push((plus_name(&a.name), s.clone(), t.clone()));
        arrows.push((minus_name(&a.name), s, t));
    }
    let qt = Quiver::new(q.vertices().to_vec(), arrows)?;
    let plus = |a: usize| 2 * a;
    let minus = |a: usize| 2 * a + 1;
    let lift = |r: &Relation, g: &dyn Fn(usize) -> usize| -> Relation {
        r.iter().map(|(c, w)| (*c, w.iter().map(|&a| g(a)).collect())).collect()
    };
    let mut rels: Vec<Relation> = Vec::new();
    rels.extend(base.relations().iter().map(|r| lift(r, &plus)));
    rels.extend(base.relations().iter().map(|r| lift(r, &minus)));
    for a in 0..na {
        for b in q.arrows_from(q.arrow(a).target) {
            rels.push(vec![(1, vec![plus(a), minus(b)])]);
            rels.push(vec![(1, vec![minus(a), plus(b)])]);
        }
    }
    for p in &socle_paths {
        rels.push(vec![
            (1, p.iter().map(|&a| plus(a)).collect()),
            (-1, p.iter().map(|&a| minus(a)).collect()),
        ]);
    }
    let cap = DEFAULT_MAX_CAP.max(base.loewy_length() + 2);
    let algebra = BoundQuiverAlgebra::build(qt, rels, base.field(), cap)?;
    Ok(TildeOutput {
        base: base.clone(),
        algebra,
        socle_paths,
    })
}

/// `Γ/J''` with `Γ = {(a, a') : a - a' in rad A}` and `J'' = {(s, -s) : s in soc A}`.
#[derive(Clone, Debug)]
pub struct GammaQuotient {
    pub sc: StructureConstantAlgebra,
    /// Representative in `A x A` (coordinates `b` and `dim A + b`) of each basis element.
    pub reps: Vec<SparseVec>,
    pub gamma_dim: usize,
}

impl GammaQuotient {
    pub fn dim(&self) -> usize {
        self.sc.dim()
    }
}

/// Corner of Γ in the basis (representatives, then J''), plus the offset and count of the representatives.
type CornerCoords = (Coordinates, Vec<Vec<u64>>, usize, usize);

pub fn gamma_quotient_construction(base: &BoundQuiverAlgebra, seed: u64) -> Result<GammaQuotient> {
    let si = is_self_injective(base.sc(), seed)?;
    if !si.selfinjective {
        return Err(Error::Precondition("base algebra is not self-injective".into()));
    }
    let f = base.field();
    let a = base.sc();
    let d = a.dim();
    let n = a.num_vertices();
    let lam = a.product(a)?;
    let dl = lam.dim();
    let rs = base.radical_and_socle();
    let is_vertex: Vec<bool> = (0..d).map(|b| a.is_idempotent_index(b)).collect();

    // Γ basis, corner by corner, with the vertex idempotent first on the diagonal
    let mut gamma: Vec<Vec<Vec<SparseVec>>> = vec![vec![Vec::new(); n]; n];
    for v in 0..n {
        let e = a.idempotent(v);
        gamma[v][v].push(vec![(e, 1), (d + e, 1)]);
    }
    for b in (0..d).filter(|&b| !is_vertex[b]) {
        let (s, t) = a.corner(b);
        gamma[s][t].push(vec![(b, 1)]);
        gamma[s][t].push(vec![(d + b, 1)]);
    }
    let gamma_dim: usize = gamma.iter().flatten().map(Vec::len).sum();
    // J'' per corner
    let mut jpp: Vec<Vec<Vec<SparseVec>>> = vec![vec![Vec::new(); n]; n];
    for soc in rs.soc_p.iter().flatten() {
        let (s, t) = a.corner(soc[0].0);
        let mut v: SparseVec = soc.clone();
        v.extend(soc.iter().map(|&(b, c)| (d + b, f.neg(c))));
        jpp[s][t].push(v);
    }

    let dense = |v: &SparseVec| sparse::to_dense(v, dl);
    let mut reps = Vec::new();
    let mut corners = Vec::new();
    let mut coords: Vec<Vec<Option<CornerCoords>>> = vec![vec![None; n]; n];
    for s in 0..n {
        for t in 0..n {
            let span: Vec<Vec<u64>> = gamma[s][t].iter().map(dense).collect();
            let sub: Vec<Vec<u64>> = jpp[s][t].iter().map(dense).collect();
            let q = quotient_basis(f, dl, &span, &sub)?;
            let offset = reps.len();
            for v in &q {
                reps.push(sparse::from_dense(v));
                corners.push((s, t));
            }
            let mut gens = q.clone();
            gens.extend(sub);
            if !gens.is_empty() {
                coords[s][t] = Some((Coordinates::new(f, dl, &gens)?, gens, offset, q.len()));
            }
        }
    }
    let dim = reps.len();
    let reduce = |x: &SparseVec, s: usize, t: usize| -> Result<SparseVec> {
        if x.is_empty() {
            return Ok(Vec::new());
        }
        let (c, gens, offset, len) = coords[s][t]
            .as_ref()
            .ok_or_else(|| Error::Verification("product leaves Γ".into()))?;
        let full = dense(x);
        let cc = c.coords(&full);
        let back = combine(f, dl, &cc, gens);
        if back != full {
            return Err(Error::Verification("product leaves Γ".into()));
        }
        Ok(collect_terms(f, (0..*len).map(|k| (offset + k, cc[k])).collect()))
    };
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            if corners[i].1 != corners[j].0 {
                continue;
            }
            let prod = lam.mul(&reps[i], &reps[j]);
            table[i][j] = reduce(&prod, corners[i].0, corners[j].1)?;
        }
    }
    let labels: Vec<String> = reps
        .iter()
        .map(|r| {
            let first = r.iter().all(|&(b, _)| b < d);
            let second = r.iter().all(|&(b, _)| b >= d);
            let b = r[0].0 % d;
            match (first, second) {
                (true, false) => format!("({},0)", a.labels()[b]),
                (false, true) => format!("(0,{})", a.labels()[b]),
                _ => format!("({0},{0})", a.labels()[b]),
            }
        })
        .collect();
    let idempotents = (0..n)
        .map(|v| corners.iter().position(|&c| c == (v, v)).unwrap())
        .collect();
    let sc = StructureConstantAlgebra::new(f, a.vertex_labels().to_vec(), idempotents, corners, labels, table, true)?;
    // Frobenius: λ ⊕ λ restricted to the representatives
    let form = frobenius_form(a, seed)?;
    let lam_form: Vec<u64> = form.iter().chain(form.iter()).copied().collect();
    let mut gram = DenseMatrix::zeros(f, dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let x = lam.mul(&reps[i], &reps[j]);
            gram.set(i, j, evaluate(f, &lam_form, &x));
        }
    }
    if !gram.is_invertible() {
        return Err(Error::Verification("induced form on Γ/J'' is degenerate".into()));
    }
    Ok(GammaQuotient { sc, reps, gamma_dim })
}

/// The explicit map `Ã -> Γ/J''`: vertices to `(e_i, e_i)`, `a+` to `(a, 0)`, `a-` to `(0, a)`.
pub fn verify_tilde_iso(tilde: &TildeOutput, gq: &GammaQuotient) -> Result<Certificate> {
    let at = &tilde.algebra;
    let base = &tilde.base;
    let f = at.field();
    let d = base.dim();
    let g = &gq.sc;
    let mut cert = Certificate::new("tilde-iso");
    cert.dim("tilde", at.dim());
    cert.dim("gamma", gq.gamma_dim);
    cert.dim("gamma_quotient", g.dim());

    // express an element of A x A (lying in Γ) in the quotient basis
    let to_quotient = |x: &SparseVec| -> Option<SparseVec> {
        let dl = 2 * d;
        let mut gens: Vec<Vec<u64>> = gq.reps.iter().map(|r| sparse::to_dense(r, dl)).collect();
        let nq = gens.len();
        for soc in base.radical_and_socle().soc_p.iter().flatten() {
            let mut v: SparseVec = soc.clone();
            v.extend(soc.iter().map(|&(b, c)| (d + b, f.neg(c))));
            gens.push(sparse::to_dense(&v, dl));
        }
        let c = Coordinates::new(f, dl, &gens).ok()?;
        let full = sparse::to_dense(x, dl);
        let cc = c.coords(&full);
        if combine(f, dl, &cc, &gens) != full {
            return None;
        }
        Some(collect_terms(f, (0..nq).map(|k| (k, cc[k])).collect()))
    };
    let qt = at.quiver();
    let mut arrow_imgs = Vec::with_capacity(qt.num_arrows());
    for (k, arrow) in qt.arrows().iter().enumerate() {
        let a = base.arrow(k / 2);
        let shifted: SparseVec = if k % 2 == 0 {
            a.clone()
        } else {
            a.iter().map(|&(b, c)| (d + b, c)).collect()
        };
        match to_quotient(&shifted) {
            Some(v) => arrow_imgs.push(v),
            None => {
                cert.check_with("arrow images lie in Γ", false, Some(arrow.name.clone()));
                return Ok(cert);
            }
        }
    }
    let vertex_img = |v: usize| sparse::unit(g.idempotent(v));
    let path_img = |p: &PathWord| -> SparseVec {
        p.arrows
            .iter()
            .fold(vertex_img(p.source), |acc, &a| g.mul(&acc, &arrow_imgs[a]))
    };
    let rel_ok = at.relations().iter().all(|r| {
        let mut acc = Vec::new();
        for (c, w) in r {
            let p = qt.path(w).expect("relation words are paths");
            acc = sparse::add_scaled(f, &acc, &path_img(&p), f.from_i64(*c));
        }
        acc.is_empty()
    });
    cert.check("relations map to zero", rel_ok);
    let phi = AlgebraMap {
        images: at.basis().iter().map(path_img).collect(),
    };
    let hom = phi.check_homomorphism(at.sc(), g);
    cert.check_with("algebra homomorphism", hom.is_ok(), hom.err().map(|e| e.to_string()));
    let dense: Vec<Vec<u64>> = phi.images.iter().map(|x| sparse::to_dense(x, g.dim())).collect();
    cert.check("surjective", rank_of(f, g.dim(), &dense) == g.dim());
    cert.check("dimensions agree", at.dim() == g.dim());
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_nakayama_selfinjective;
    use crate::PrimeField;

    #[test]
    fn example_base() {
        let f = PrimeField::new(1_000_003).unwrap();
        let a = build_nakayama_selfinjective(2, 4, f).unwrap();
        let t = tilde_construction(&a, 1).unwrap();
        assert_eq!(t.algebra.quiver().num_arrows(), 4);
        assert_eq!(t.algebra.relations().len(), 10);
        assert_eq!(t.algebra.dim(), 12);
        assert!(t.algebra.quiver().has_multiple_arrow());
        let g = gamma_quotient_construction(&a, 1).unwrap();
        assert_eq!(g.gamma_dim, 14);
        assert_eq!(g.dim(), 12);
        let c = verify_tilde_iso(&t, &g).unwrap();
        assert!(c.ok, "{:?}", c.failed_checks());
    }
}
