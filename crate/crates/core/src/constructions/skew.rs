//! The shift automorphism of `A_{n,m}` and the skew group algebra `A_n * G_m`.

use crate::algebra::BoundQuiverAlgebra;
use crate::error::{Error, Result};
use crate::field::{primitive_root_of_unity, PrimeField};
use crate::linalg::rank_of;
use crate::morphism::AlgebraMap;
use crate::quiver::PathWord;
use crate::sc::{collect_terms, StructureConstantAlgebra};
use crate::sparse::{self, SparseVec};

use super::families::{build_anm, AnmSpec};
use super::Certificate;

/// `psi: e_{i,r} -> e_{i,r+1}`, and the same on arrows. Returns the map and
/// its vertex permutation.
pub fn psi_automorphism(alg: &BoundQuiverAlgebra, spec: AnmSpec) -> Result<(AlgebraMap, Vec<usize>)> {
    let q = alg.quiver();
    if q.num_vertices() != spec.num_vertices() {
        return Err(Error::Precondition("algebra is not the given A_{n,m}".into()));
    }
    let shift_arrow = |a: usize| -> Result<usize> {
        let name = &q.arrow(a).name;
        let (kind, rest) = name.split_at(1);
        let inner = rest.trim_start_matches('(').trim_end_matches(')');
        let (i, r) = inner
            .split_once(',')
            .and_then(|(i, r)| Some((i.parse::<usize>().ok()?, r.parse::<usize>().ok()?)))
            .ok_or_else(|| Error::Precondition(format!("unexpected arrow name {name}")))?;
        let shifted = format!("{kind}({i},{})", (r + 1) % spec.m);
        q.arrow_index(&shifted)
            .ok_or_else(|| Error::Precondition(format!("missing arrow {shifted}")))
    };
    let shift_vertex = |v: usize| {
        let (i, r) = spec.coords(v);
        spec.vertex(i, r as i64 + 1)
    };
    let mut images = Vec::with_capacity(alg.dim());
    for p in alg.basis() {
        let arrows = p.arrows.iter().map(|&a| shift_arrow(a)).collect::<Result<Vec<_>>>()?;
        let img = if arrows.is_empty() {
            PathWord::trivial(shift_vertex(p.source))
        } else {
            q.path(&arrows)?
        };
        images.push(alg.path_element(&img));
    }
    let perm = (0..spec.num_vertices()).map(shift_vertex).collect();
    Ok((AlgebraMap { images }, perm))
}

/// `A_n * G_m` with `g` fixing vertices and `a`-arrows and scaling `b`-arrows by `zeta`.
#[derive(Clone, Debug)]
pub struct SkewGroupAlgebra {
    pub base: BoundQuiverAlgebra,
    pub m: usize,
    pub zeta: u64,
    /// Basis element `path * g^k` sits at `k * dim(base) + path`.
    pub sc: StructureConstantAlgebra,
}

impl SkewGroupAlgebra {
    pub fn index(&self, path: usize, k: usize) -> usize {
        (k % self.m) * self.base.dim() + path
    }

    /// `x * g^k` for `x` in the base algebra.
    pub fn embed(&self, x: &SparseVec, k: usize) -> SparseVec {
        x.iter().map(|&(b, c)| (self.index(b, k), c)).collect()
    }
}

fn b_count(alg: &BoundQuiverAlgebra, p: &PathWord) -> usize {
    p.arrows
        .iter()
        .filter(|&&a| alg.quiver().arrow(a).name.starts_with('b'))
        .count()
}

pub fn skew_group_algebra(n: usize, m: usize, zeta: u64, field: PrimeField) -> Result<SkewGroupAlgebra> {
    if m == 0 || field.pow(zeta, m as u64) != 1 || (1..m).any(|k| field.pow(zeta, k as u64) == 1) {
        return Err(Error::NoRootOfUnity {
            p: field.modulus(),
            m: m as u64,
        });
    }
    let base = build_anm(n, 1, field)?;
    let d = base.dim();
    let sc0 = base.sc();
    let beta: Vec<u64> = base.basis().iter().map(|p| b_count(&base, p) as u64).collect();
    let dim = d * m;
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for k in 0..m {
        for l in 0..m {
            for i in 0..d {
                for j in 0..d {
                    let prod = sc0.mul_basis(i, j);
                    if prod.is_empty() {
                        continue;
                    }
                    // (p * g^k)(q * g^l) = p g^k(q) * g^{k+l}
                    let s = field.pow(zeta, (k as u64 * beta[j]) % m as u64);
                    let terms = prod
                        .iter()
                        .map(|&(b, c)| (((k + l) % m) * d + b, field.mul(c, s)))
                        .collect();
                    table[k * d + i][l * d + j] = collect_terms(field, terms);
                }
            }
        }
    }
    let mut corners = Vec::with_capacity(dim);
    let mut labels = Vec::with_capacity(dim);
    for k in 0..m {
        for b in 0..d {
            corners.push(sc0.corner(b));
            labels.push(format!("{}*g^{k}", sc0.labels()[b]));
        }
    }
    let idempotents = (0..n).map(|v| sc0.idempotent(v)).collect();
    let sc = StructureConstantAlgebra::new(
        field,
        sc0.vertex_labels().to_vec(),
        idempotents,
        corners,
        labels,
        table,
        false,
    )?;
    Ok(SkewGroupAlgebra { base, m, zeta, sc })
}

/// Checks the averaging map `A_{n,m} -> A_n * G_m` on generators and on the
/// whole normal basis, then surjectivity and equal dimensions.
pub fn verify_anm_skew_iso(n: usize, m: usize, p: u64) -> Result<Certificate> {
    let field = PrimeField::new(p)?;
    let zeta = primitive_root_of_unity(p, m as u64)?.value;
    let skew = skew_group_algebra(n, m, zeta, field)?;
    let spec = AnmSpec::new(n, m)?;
    let anm = build_anm(n, m, field)?;
    let s = &skew.sc;
    let base = &skew.base;
    let inv_m = field.inv(m as u64 % p);

    let average = |x: &SparseVec, phase: u64| -> SparseVec {
        let mut acc = Vec::new();
        for k in 0..m {
            let c = field.mul(inv_m, field.pow(zeta, (k as u64 * phase) % m as u64));
            acc = sparse::add_scaled(field, &acc, &skew.embed(x, k), c);
        }
        acc
    };
    let m64 = m as u64;
    let wrap = |r: i64| r.rem_euclid(m as i64) as u64;
    let e_img = |i: usize, r: i64| average(&base.idempotent(i - 1), wrap(r));
    let a_img = |j: usize, s_: i64| -> Result<SparseVec> {
        if j == 0 || j >= n {
            return Ok(Vec::new());
        }
        Ok(average(&base.arrow_by_name(&AnmSpec::a_name(j, 0))?, wrap(s_)))
    };
    let b_img = |k: usize, t: i64| -> Result<SparseVec> {
        if k <= 1 || k > n {
            return Ok(Vec::new());
        }
        Ok(average(&base.arrow_by_name(&AnmSpec::b_name(k, 0))?, wrap(t + 1) % m64))
    };

    let mut cert = Certificate::new("skew-iso");
    cert.input("n", n);
    cert.input("m", m);
    cert.input("p", p);
    cert.input("zeta", zeta);

    let ms = m as i64;
    let delta = |c: bool, x: &SparseVec| if c { x.clone() } else { Vec::new() };
    let mut sum = Vec::new();
    let mut ok = [true; 7];
    for i in 1..=n {
        for r in 0..ms {
            let e = e_img(i, r);
            sum = sparse::add(field, &sum, &e);
            for i2 in 1..=n {
                for r2 in 0..ms {
                    let e2 = e_img(i2, r2);
                    ok[1] &= s.mul(&e, &e2) == delta(i == i2 && r == r2, &e);
                }
            }
            for j in 1..n {
                for s_ in 0..ms {
                    let a = a_img(j, s_)?;
                    ok[2] &= s.mul(&e, &a) == delta(i == j && r == s_, &a);
                    ok[3] &= s.mul(&a, &e) == delta(j + 1 == i && s_ == r, &a);
                }
            }
            for k in 2..=n {
                for t in 0..ms {
                    let b = b_img(k, t)?;
                    ok[4] &= s.mul(&e, &b) == delta(i == k && r == t, &b);
                    ok[5] &= s.mul(&b, &e) == delta(k - 1 == i && wrap(t + 1) == r as u64, &b);
                }
            }
            let lhs = s.mul(&a_img(i, r)?, &b_img(i + 1, r)?);
            let rhs = s.mul(&b_img(i, r)?, &a_img(i - 1, r + 1)?);
            ok[6] &= lhs == rhs;
        }
    }
    ok[0] = sum == s.one();
    let names = [
        "sum of vertex images is 1",
        "vertex images are orthogonal idempotents",
        "e a = delta a",
        "a e = delta a",
        "e b = delta b",
        "b e = delta b",
        "commutativity relation",
    ];
    for (name, &pass) in names.iter().zip(&ok) {
        cert.check(*name, pass);
    }

    // extend to the normal basis of A_{n,m} and check multiplicativity
    let q = anm.quiver();
    let gen_img = |a: usize| -> Result<SparseVec> {
        let name = &q.arrow(a).name;
        let (i, r) = spec.coords(q.arrow(a).source);
        if name.starts_with('a') {
            a_img(i, r as i64)
        } else {
            b_img(i, r as i64)
        }
    };
    let arrow_imgs = (0..q.num_arrows()).map(gen_img).collect::<Result<Vec<_>>>()?;
    let images: Vec<SparseVec> = anm
        .basis()
        .iter()
        .map(|path| {
            let (i, r) = spec.coords(path.source);
            path.arrows
                .iter()
                .fold(e_img(i, r as i64), |acc, &a| s.mul(&acc, &arrow_imgs[a]))
        })
        .collect();
    let phi = AlgebraMap { images };
    let hom = phi.check_homomorphism(anm.sc(), s);
    cert.check_with(
        "extends to an algebra homomorphism",
        hom.is_ok(),
        hom.err().map(|e| e.to_string()),
    );
    let dense: Vec<Vec<u64>> = phi.images.iter().map(|x| sparse::to_dense(x, s.dim())).collect();
    let rank = rank_of(field, s.dim(), &dense);
    cert.check("surjective", rank == s.dim());
    cert.dim("A_nm", anm.dim());
    cert.dim("skew", s.dim());
    cert.check("dimensions agree", anm.dim() == s.dim());
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skew_dims_and_identity() {
        let f = PrimeField::new(5).unwrap();
        let s = skew_group_algebra(3, 2, 4, f).unwrap();
        assert_eq!(s.sc.dim(), 20);
        s.sc.check_associative().unwrap();
        let one: SparseVec = (0..3).map(|v| (s.sc.idempotent(v), 1)).collect();
        assert_eq!(s.sc.one(), one);
        let t = skew_group_algebra(3, 1, 1, f).unwrap();
        assert_eq!(t.sc.dim(), 10);
    }

    #[test]
    fn skew_iso_small() {
        let c = verify_anm_skew_iso(3, 2, 5).unwrap();
        assert!(c.ok, "{:?}", c.failed_checks());
        assert_eq!(c.dims["skew"], 20);
    }

    #[test]
    fn psi_has_order_m() {
        let f = PrimeField::new(1_000_003).unwrap();
        let spec = AnmSpec::new(3, 4).unwrap();
        let a = build_anm(3, 4, f).unwrap();
        let (psi, perm) = psi_automorphism(&a, spec).unwrap();
        psi.check_homomorphism(a.sc(), a.sc()).unwrap();
        assert_eq!(psi.vertex_permutation(a.sc()).unwrap(), perm);
        let mut pw = psi.clone();
        for _ in 1..4 {
            pw = psi.compose(f, &pw);
        }
        assert_eq!(pw, AlgebraMap::identity(a.dim()));
    }
}
