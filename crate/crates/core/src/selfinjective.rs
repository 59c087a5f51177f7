//! Self-injectivity, Frobenius forms and Nakayama automorphisms for basic
//! algebras given by structure constants.
//!
//! Orientation: `pi` is the permutation with `nu P(i) = P(pi(i))`, and
//! `sigma = pi^-1` is the socle permutation, `soc P(i) = S(sigma(i))`.
//! The automorphism `v` satisfies `lambda(v(a) b) = lambda(b a)` and, after
//! normalization by an inner automorphism, `v(e_i) = e_{pi(i)}` exactly.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::DenseMatrix;
use crate::morphism::{invert_permutation, permutation_orbits, AlgebraMap};
use crate::sc::StructureConstantAlgebra;
use crate::sparse::{self, SparseVec};

const INTERTWINER_RETRIES: usize = 20;
const FORM_RETRIES: usize = 100;

#[derive(Clone, Debug)]
pub struct SelfInjectivity {
    pub selfinjective: bool,
    /// Socle permutation when every socle is simple and `sigma` is bijective.
    pub sigma: Option<Vec<usize>>,
    /// A vertex where the test failed.
    pub witness: Option<usize>,
    pub reason: Option<String>,
    /// Random intertwiner search exhausted without a decision.
    pub inconclusive: bool,
    /// `functionals[i]`: corner coordinates on `e_i S e_{sigma(i)}` of a functional
    /// making `x -> phi(x * -)` an isomorphism `P(i) -> D(S e_{sigma(i)})`.
    functionals: Vec<Vec<u64>>,
}

impl SelfInjectivity {
    fn fail(witness: usize, reason: String, sigma: Option<Vec<usize>>) -> Self {
        Self {
            selfinjective: false,
            sigma,
            witness: Some(witness),
            reason: Some(reason),
            inconclusive: false,
            functionals: Vec::new(),
        }
    }
}

/// Elements `x` of `e_i S` with `x * g = 0` for every generator `g` of the radical.
fn projective_socle(sc: &StructureConstantAlgebra, gens: &[SparseVec], i: usize) -> Vec<SparseVec> {
    let f = sc.field();
    let n = sc.num_vertices();
    let basis: Vec<usize> = (0..n).flat_map(|t| sc.basis_in_corner(i, t).iter().copied()).collect();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for g in gens {
        let images: Vec<SparseVec> = basis.iter().map(|&b| sc.mul(&sparse::unit(b), g)).collect();
        let mut touched: Vec<usize> = images.iter().flatten().map(|&(k, _)| k).collect();
        touched.sort_unstable();
        touched.dedup();
        for &k in &touched {
            rows.push(images.iter().map(|im| sparse::coefficient(im, k)).collect());
        }
    }
    let m = DenseMatrix::from_rows(f, basis.len(), &rows);
    m.kernel()
        .into_iter()
        .map(|c| {
            let mut v: SparseVec = basis
                .iter()
                .zip(&c)
                .filter(|(_, &x)| x != 0)
                .map(|(&b, &x)| (b, x))
                .collect();
            v.sort_unstable();
            v
        })
        .collect()
}

/// Generators of the radical as a right ideal (lifts of `rad/rad^2`).
fn radical_generators(sc: &StructureConstantAlgebra) -> Result<Vec<SparseVec>> {
    let g = sc.gabriel_presentation()?;
    Ok(g.arrow_representatives.into_iter().flatten().flatten().collect())
}

/// `M[x][y] = phi(x y)` for `x` in `e_i S`, `y` in `S e_j`, with `phi` on `e_i S e_j`.
fn pairing_matrix(sc: &StructureConstantAlgebra, i: usize, j: usize, phi: &[u64]) -> DenseMatrix {
    let f = sc.field();
    let n = sc.num_vertices();
    let left: Vec<usize> = (0..n).flat_map(|t| sc.basis_in_corner(i, t).iter().copied()).collect();
    let right: Vec<usize> = (0..n).flat_map(|t| sc.basis_in_corner(t, j).iter().copied()).collect();
    let target = sc.basis_in_corner(i, j);
    let mut m = DenseMatrix::zeros(f, left.len(), right.len());
    for (r, &x) in left.iter().enumerate() {
        for (c, &y) in right.iter().enumerate() {
            if sc.corner(x).1 != sc.corner(y).0 {
                continue;
            }
            let mut acc = 0;
            for &(k, v) in sc.mul_basis(x, y) {
                if let Ok(pos) = target.binary_search(&k) {
                    acc = f.mul_add(acc, v, phi[pos]);
                }
            }
            m.set(r, c, acc);
        }
    }
    m
}

pub fn is_self_injective(sc: &StructureConstantAlgebra, seed: u64) -> Result<SelfInjectivity> {
    let f = sc.field();
    let n = sc.num_vertices();
    let gens = radical_generators(sc)?;
    let mut sigma = Vec::with_capacity(n);
    let mut socles = Vec::with_capacity(n);
    for i in 0..n {
        let soc = projective_socle(sc, &gens, i);
        if soc.len() != 1 {
            return Ok(SelfInjectivity::fail(
                i,
                format!("socle of P({}) has dimension {}", sc.vertex_labels()[i], soc.len()),
                None,
            ));
        }
        let s = soc.into_iter().next().unwrap();
        let t = sc.corner(s[0].0).1;
        sigma.push(t);
        socles.push(s);
    }
    let mut seen = vec![false; n];
    for (i, &t) in sigma.iter().enumerate() {
        if std::mem::replace(&mut seen[t], true) {
            return Ok(SelfInjectivity::fail(
                i,
                "socle permutation is not injective".into(),
                Some(sigma),
            ));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut functionals = Vec::with_capacity(n);
    let mut inconclusive = false;
    for i in 0..n {
        let j = sigma[i];
        let p_dim: usize = (0..n).map(|t| sc.corner_dim(i, t)).sum();
        let i_dim: usize = (0..n).map(|t| sc.corner_dim(t, j)).sum();
        if p_dim != i_dim {
            return Ok(SelfInjectivity::fail(
                i,
                format!(
                    "dim P({}) = {p_dim} but dim I({}) = {i_dim}",
                    sc.vertex_labels()[i],
                    sc.vertex_labels()[j]
                ),
                Some(sigma),
            ));
        }
        // dual of the socle generator first, then random functionals
        let s = sc.corner_coords(&socles[i], i, j);
        let k = s.iter().position(|&x| x != 0).unwrap();
        let mut phi = vec![0; s.len()];
        phi[k] = f.inv(s[k]);
        let mut found = None;
        for attempt in 0..=INTERTWINER_RETRIES {
            if attempt > 0 {
                phi = (0..s.len()).map(|_| f.random(&mut rng)).collect();
            }
            if pairing_matrix(sc, i, j, &phi).is_invertible() {
                found = Some(phi.clone());
                break;
            }
        }
        match found {
            Some(phi) => functionals.push(phi),
            None => {
                inconclusive = true;
                let mut r = SelfInjectivity::fail(
                    i,
                    format!("no isomorphism P({0}) -> D(S e_{0}) found", sc.vertex_labels()[i]),
                    Some(sigma),
                );
                r.inconclusive = inconclusive;
                return Ok(r);
            }
        }
    }
    Ok(SelfInjectivity {
        selfinjective: true,
        sigma: Some(sigma),
        witness: None,
        reason: None,
        inconclusive,
        functionals,
    })
}

/// Gram matrix `G[a][b] = lambda(b_a b_b)`.
pub fn gram_matrix(sc: &StructureConstantAlgebra, form: &[u64]) -> DenseMatrix {
    let f = sc.field();
    let d = sc.dim();
    let mut g = DenseMatrix::zeros(f, d, d);
    for a in 0..d {
        for b in 0..d {
            if sc.corner(a).1 != sc.corner(b).0 {
                continue;
            }
            let v = evaluate(f, form, sc.mul_basis(a, b));
            if v != 0 {
                g.set(a, b, v);
            }
        }
    }
    g
}

pub fn evaluate(f: PrimeField, form: &[u64], x: &SparseVec) -> u64 {
    x.iter().fold(0, |acc, &(k, c)| f.mul_add(acc, c, form[k]))
}

/// A Frobenius form supported on the corners `e_i S e_{sigma(i)}`.
pub fn frobenius_form(sc: &StructureConstantAlgebra, seed: u64) -> Result<Vec<u64>> {
    let rep = is_self_injective(sc, seed)?;
    if !rep.selfinjective {
        return Err(Error::NoFrobeniusForm);
    }
    let f = sc.field();
    let sigma = rep.sigma.as_ref().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let assemble = |scales: &[u64]| {
        let mut form = vec![0; sc.dim()];
        for (i, phi) in rep.functionals.iter().enumerate() {
            for (&b, &c) in sc.basis_in_corner(i, sigma[i]).iter().zip(phi) {
                form[b] = f.mul(c, scales[i]);
            }
        }
        form
    };
    let mut scales = vec![1; sc.num_vertices()];
    for _ in 0..=FORM_RETRIES {
        let form = assemble(&scales);
        if gram_matrix(sc, &form).is_invertible() {
            return Ok(form);
        }
        scales = (0..scales.len()).map(|_| f.random_nonzero(&mut rng)).collect();
    }
    Err(Error::NoFrobeniusForm)
}

#[derive(Clone, Debug)]
pub struct NakayamaData {
    /// Frobenius form on the basis, compatible with `automorphism`.
    pub form: Vec<u64>,
    pub sigma: Vec<usize>,
    pub pi: Vec<usize>,
    /// `v`, with `v(e_i) = e_{pi(i)}`.
    pub automorphism: AlgebraMap,
    pub inverse: AlgebraMap,
}

impl NakayamaData {
    pub fn weakly_symmetric(&self) -> bool {
        self.pi.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn nu_cyclic(&self) -> bool {
        self.orbits().len() == 1
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        permutation_orbits(&self.pi)
    }
}

pub fn nakayama_data(sc: &StructureConstantAlgebra, seed: u64) -> Result<NakayamaData> {
    let f = sc.field();
    let d = sc.dim();
    let n = sc.num_vertices();
    let form = frobenius_form(sc, seed)?;
    let sigma = is_self_injective(sc, seed)?.sigma.unwrap();
    let g = gram_matrix(sc, &form);
    // columns of (G^T)^-1 G are the coordinates of v(b_a)
    let gt_inv = g
        .transpose()
        .inverse()
        .ok_or_else(|| Error::AutomorphismCheckFailed("Gram matrix singular".into()))?;
    let vm = gt_inv.mul(&g);
    let raw = AlgebraMap {
        images: (0..d).map(|a| sparse::from_dense(&vm.column(a))).collect(),
    };
    let mut pi = Vec::with_capacity(n);
    for i in 0..n {
        let img = &raw.images[sc.idempotent(i)];
        let hits: Vec<usize> = (0..n)
            .filter(|&j| sparse::coefficient(img, sc.idempotent(j)) != 0)
            .collect();
        match hits.as_slice() {
            [j] if sparse::coefficient(img, sc.idempotent(*j)) == 1 => pi.push(*j),
            _ => {
                return Err(Error::AutomorphismCheckFailed(format!(
                    "v(e_{}) is not congruent to a vertex idempotent",
                    sc.vertex_labels()[i]
                )))
            }
        }
    }
    if invert_permutation(&sigma) != pi {
        return Err(Error::AutomorphismCheckFailed(
            "permutation read from v disagrees with the socle permutation".into(),
        ));
    }
    // u = sum v(e_i) e_{pi(i)} conjugates v(e_i) to e_{pi(i)}
    let mut u: SparseVec = Vec::new();
    for i in 0..n {
        let t = sc.mul(&raw.images[sc.idempotent(i)], &sparse::unit(sc.idempotent(pi[i])));
        u = sparse::add(f, &u, &t);
    }
    let u_inv = unit_inverse(sc, &u)?;
    let automorphism = AlgebraMap {
        images: raw.images.iter().map(|x| sc.mul(&sc.mul(&u_inv, x), &u)).collect(),
    };
    // lambda'(x) = lambda(u x)
    let form: Vec<u64> = (0..d)
        .map(|b| evaluate(f, &form, &sc.mul(&u, &sparse::unit(b))))
        .collect();
    automorphism
        .check_homomorphism(sc, sc)
        .map_err(|e| Error::AutomorphismCheckFailed(e.to_string()))?;
    if automorphism.vertex_permutation(sc)? != pi {
        return Err(Error::AutomorphismCheckFailed("normalization failed".into()));
    }
    let inverse = automorphism
        .inverse(f)
        .map_err(|e| Error::AutomorphismCheckFailed(e.to_string()))?;
    let data = NakayamaData {
        form,
        sigma,
        pi,
        automorphism,
        inverse,
    };
    check_nakayama_identity(sc, &data)?;
    Ok(data)
}

/// Exhaustive check of `lambda(v(a) b) = lambda(b a)` on basis pairs.
pub fn check_nakayama_identity(sc: &StructureConstantAlgebra, data: &NakayamaData) -> Result<()> {
    let f = sc.field();
    let d = sc.dim();
    for a in 0..d {
        let va = &data.automorphism.images[a];
        for b in 0..d {
            let lhs = evaluate(f, &data.form, &sc.mul(va, &sparse::unit(b)));
            let rhs = if sc.corner(b).1 == sc.corner(a).0 {
                evaluate(f, &data.form, sc.mul_basis(b, a))
            } else {
                0
            };
            if lhs != rhs {
                return Err(Error::AutomorphismCheckFailed(format!(
                    "lambda(v(a)b) != lambda(ba) at ({}, {})",
                    sc.labels()[a],
                    sc.labels()[b]
                )));
            }
        }
    }
    Ok(())
}

fn unit_inverse(sc: &StructureConstantAlgebra, u: &SparseVec) -> Result<SparseVec> {
    let d = sc.dim();
    let one = sparse::to_dense(&sc.one(), d);
    let sol = sc
        .left_mult_matrix(u)
        .solve(&one)
        .map_err(|_| Error::AutomorphismCheckFailed("conjugating element is not a unit".into()))?;
    Ok(sparse::from_dense(&sol.particular))
}

/// Orbits of `pi` with the weakly-symmetric and nu-cyclic flags.
pub fn nu_orbit_partition(data: &NakayamaData) -> (Vec<Vec<usize>>, bool, bool) {
    (data.orbits(), data.weakly_symmetric(), data.nu_cyclic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BoundQuiverAlgebra;
    use crate::constructions::families::{
        build_anm, build_nakayama_selfinjective, build_preprojective, AnmSpec, Dynkin,
    };
    use crate::quiver::Quiver;

    fn f() -> PrimeField {
        PrimeField::default_field()
    }

    #[test]
    fn path_algebra_a2_not_selfinjective() {
        let q = Quiver::new(vec!["1".into(), "2".into()], vec![("a".into(), "1".into(), "2".into())]).unwrap();
        let a = BoundQuiverAlgebra::build(q, vec![], f(), 10).unwrap();
        let r = is_self_injective(a.sc(), 0).unwrap();
        assert!(!r.selfinjective);
        assert!(frobenius_form(a.sc(), 0).is_err());
    }

    #[test]
    fn dual_numbers_symmetric() {
        let a = build_nakayama_selfinjective(1, 2, f()).unwrap();
        let nd = nakayama_data(a.sc(), 1).unwrap();
        assert_eq!(nd.pi, vec![0]);
        assert_eq!(nd.automorphism, AlgebraMap::identity(2));
    }

    #[test]
    fn nakayama_2_4_swaps_vertices() {
        let a = build_nakayama_selfinjective(2, 4, f()).unwrap();
        let nd = nakayama_data(a.sc(), 1).unwrap();
        // soc P(1) is spanned by aba, ending at vertex 2
        assert_eq!(nd.sigma, vec![1, 0]);
        assert_eq!(nd.pi, vec![1, 0]);
        assert!(nd.nu_cyclic());
        assert!(gram_matrix(a.sc(), &nd.form).is_invertible());
    }

    #[test]
    fn anm_permutation() {
        let a = build_anm(5, 3, f()).unwrap();
        let spec = AnmSpec::new(5, 3).unwrap();
        let nd = nakayama_data(a.sc(), 7).unwrap();
        for v in 0..15 {
            assert_eq!(nd.pi[v], spec.nakayama_permutation(v));
            let (i, r) = spec.coords(v);
            assert_eq!(nd.pi[nd.pi[v]], spec.vertex(i, r as i64 - 4));
        }
        assert_eq!(nd.orbits().len(), 3);
        let a32 = build_anm(3, 2, f()).unwrap();
        let form = frobenius_form(a32.sc(), 0).unwrap();
        assert_eq!(gram_matrix(a32.sc(), &form).rank(), 20);
    }

    #[test]
    fn preprojective_weak_symmetry() {
        for (d, ws) in [(Dynkin::A(3), false), (Dynkin::D(4), true), (Dynkin::A(2), false)] {
            let a = build_preprojective(d, f()).unwrap();
            let nd = nakayama_data(a.sc(), 0).unwrap();
            assert_eq!(nd.weakly_symmetric(), ws, "{d:?}");
        }
    }
}
