//! Concrete algebra families: `A_{n,m}`, preprojective algebras of Dynkin
//! type, and self-injective Nakayama algebras.

use crate::algebra::{BoundQuiverAlgebra, DEFAULT_MAX_CAP};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::quiver::{Quiver, Relation};

/// Index bookkeeping for the quiver `T_{n,m}`: vertex `(i, r)` with
/// `1 <= i <= n`, `r` in `Z/m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnmSpec {
    pub n: usize,
    pub m: usize,
}

impl AnmSpec {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::Precondition("n and m must be positive".into()));
        }
        Ok(Self { n, m })
    }

    pub fn num_vertices(&self) -> usize {
        self.n * self.m
    }

    pub fn vertex(&self, i: usize, r: i64) -> usize {
        debug_assert!((1..=self.n).contains(&i));
        (i - 1) * self.m + self.wrap(r)
    }

    pub fn coords(&self, v: usize) -> (usize, usize) {
        (v / self.m + 1, v % self.m)
    }

    pub fn wrap(&self, r: i64) -> usize {
        r.rem_euclid(self.m as i64) as usize
    }

    pub fn vertex_label(i: usize, r: usize) -> String {
        format!("({i},{r})")
    }

    pub fn a_name(i: usize, r: usize) -> String {
        format!("a({i},{r})")
    }

    pub fn b_name(i: usize, r: usize) -> String {
        format!("b({i},{r})")
    }

    /// `m * n(n+1)(n+2)/6`.
    pub fn expected_dim(&self) -> usize {
        self.m * self.n * (self.n + 1) * (self.n + 2) / 6
    }

    /// `(i, r) -> (n-i+1, r+i-n)`.
    pub fn nakayama_permutation(&self, v: usize) -> usize {
        let (i, r) = self.coords(v);
        self.vertex(self.n - i + 1, r as i64 + i as i64 - self.n as i64)
    }
}

pub fn anm_quiver(spec: AnmSpec) -> Quiver {
    let AnmSpec { n, m } = spec;
    let mut vertices = Vec::new();
    for i in 1..=n {
        for r in 0..m {
            vertices.push(AnmSpec::vertex_label(i, r));
        }
    }
    let mut arrows = Vec::new();
    for i in 1..n {
        for r in 0..m {
            arrows.push((
                AnmSpec::a_name(i, r),
                AnmSpec::vertex_label(i, r),
                AnmSpec::vertex_label(i + 1, r),
            ));
        }
    }
    for i in 2..=n {
        for r in 0..m {
            arrows.push((
                AnmSpec::b_name(i, r),
                AnmSpec::vertex_label(i, r),
                AnmSpec::vertex_label(i - 1, (r + 1) % m),
            ));
        }
    }
    Quiver::new(vertices, arrows).expect("T_{n,m} is a valid quiver")
}

/// Relations `a_{i,r} b_{i+1,r} - b_{i,r} a_{i-1,r+1}` with absent arrows read as zero.
pub fn anm_relations(spec: AnmSpec, q: &Quiver) -> Vec<Relation> {
    let AnmSpec { n, m } = spec;
    let mut out = Vec::new();
    for i in 1..=n {
        for r in 0..m {
            let mut rel: Relation = Vec::new();
            if i < n {
                let a = q.arrow_index(&AnmSpec::a_name(i, r)).unwrap();
                let b = q.arrow_index(&AnmSpec::b_name(i + 1, r)).unwrap();
                rel.push((1, vec![a, b]));
            }
            if i > 1 {
                let b = q.arrow_index(&AnmSpec::b_name(i, r)).unwrap();
                let a = q.arrow_index(&AnmSpec::a_name(i - 1, (r + 1) % m)).unwrap();
                rel.push((-1, vec![b, a]));
            }
            if !rel.is_empty() {
                out.push(rel);
            }
        }
    }
    out
}

pub fn build_anm(n: usize, m: usize, field: PrimeField) -> Result<BoundQuiverAlgebra> {
    let spec = AnmSpec::new(n, m)?;
    let q = anm_quiver(spec);
    let rels = anm_relations(spec, &q);
    BoundQuiverAlgebra::build(q, rels, field, DEFAULT_MAX_CAP)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dynkin {
    A(usize),
    D(usize),
    E(usize),
}

impl Dynkin {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, rank) = s.split_at(1.min(s.len()));
        let rank: usize = rank
            .parse()
            .map_err(|_| Error::Precondition(format!("bad Dynkin type {s:?}")))?;
        let d = match kind {
            "A" | "a" => Dynkin::A(rank),
            "D" | "d" => Dynkin::D(rank),
            "E" | "e" => Dynkin::E(rank),
            _ => return Err(Error::Precondition(format!("bad Dynkin type {s:?}"))),
        };
        d.edges()?;
        Ok(d)
    }

    pub fn rank(&self) -> usize {
        match *self {
            Dynkin::A(n) | Dynkin::D(n) | Dynkin::E(n) => n,
        }
    }

    /// Edges `(u, v)` on vertices `1..=rank`.
    pub fn edges(&self) -> Result<Vec<(usize, usize)>> {
        match *self {
            Dynkin::A(n) if n >= 1 => Ok((1..n).map(|i| (i, i + 1)).collect()),
            Dynkin::D(n) if n >= 4 => {
                let mut e: Vec<_> = (1..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 2, n - 1));
                e.push((n - 2, n));
                Ok(e)
            }
            Dynkin::E(n) if (6..=8).contains(&n) => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
                e.push((3, n));
                Ok(e)
            }
            d => Err(Error::Precondition(format!("unsupported Dynkin diagram {d:?}"))),
        }
    }

    /// Weakly symmetric preprojective algebra (Nakayama permutation trivial).
    pub fn preprojective_weakly_symmetric(&self) -> bool {
        match *self {
            Dynkin::A(n) => n == 1,
            Dynkin::D(n) => n % 2 == 0,
            Dynkin::E(n) => n != 6,
        }
    }
}

/// Preprojective algebra: doubled quiver with relation `sum a a* - sum a* a` at each vertex.
pub fn build_preprojective(d: Dynkin, field: PrimeField) -> Result<BoundQuiverAlgebra> {
    let edges = d.edges()?;
    let n = d.rank();
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut arrows = Vec::new();
    for &(u, v) in &edges {
        arrows.push((format!("x{u}{v}"), u.to_string(), v.to_string()));
        arrows.push((format!("y{v}{u}"), v.to_string(), u.to_string()));
    }
    let q = Quiver::new(vertices, arrows)?;
    let mut rels = Vec::new();
    for w in 1..=n {
        let mut rel: Relation = Vec::new();
        for (k, &(u, v)) in edges.iter().enumerate() {
            let (x, y) = (2 * k, 2 * k + 1);
            if u == w {
                rel.push((1, vec![x, y]));
            }
            if v == w {
                rel.push((-1, vec![y, x]));
            }
        }
        if !rel.is_empty() {
            rels.push(rel);
        }
    }
    BoundQuiverAlgebra::build(q, rels, field, DEFAULT_MAX_CAP)
}

pub fn nakayama_arrow_name(k: usize, s: usize) -> String {
    if s <= 26 {
        ((b'a' + k as u8) as char).to_string()
    } else {
        format!("x{k}")
    }
}

/// Cyclic quiver on `s` vertices modulo all paths of length `loewy`.
pub fn build_nakayama_selfinjective(s: usize, loewy: usize, field: PrimeField) -> Result<BoundQuiverAlgebra> {
    if s == 0 || loewy < 2 {
        return Err(Error::Precondition("need s >= 1 and Loewy length >= 2".into()));
    }
    let vertices: Vec<String> = (1..=s).map(|i| i.to_string()).collect();
    let arrows = (0..s)
        .map(|k| {
            (
                nakayama_arrow_name(k, s),
                (k + 1).to_string(),
                ((k + 1) % s + 1).to_string(),
            )
        })
        .collect();
    let q = Quiver::new(vertices, arrows)?;
    let rels = (0..s)
        .map(|k| vec![(1, (0..loewy).map(|j| (k + j) % s).collect())])
        .collect();
    BoundQuiverAlgebra::build(q, rels, field, DEFAULT_MAX_CAP.max(loewy + 1))
}
