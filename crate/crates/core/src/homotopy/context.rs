//! Shared state for computations over one algebra: interned summands and a
//! cache of Hom spaces between them.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::morphism::{invert_permutation, AlgebraMap};
use crate::sc::StructureConstantAlgebra;
use crate::selfinjective::NakayamaData;

use super::complex::ProjComplex;
use super::hom::HomSpace;
use super::object::{is_isomorphic, local_endomorphisms, LocalEnd};

pub type SummandId = usize;

pub const DEFAULT_MAX_WINDOW: usize = 6;

#[derive(Default)]
struct Store {
    items: Vec<Arc<ProjComplex>>,
    exact: HashMap<ProjComplex, SummandId>,
    by_g: HashMap<Vec<i64>, SummandId>,
}

pub struct Context {
    sc: StructureConstantAlgebra,
    nakayama: Option<NakayamaData>,
    pub seed: u64,
    pub max_window: usize,
    store: RwLock<Store>,
    homs: RwLock<HashMap<(SummandId, SummandId, i32), Arc<HomSpace>>>,
    ends: RwLock<HashMap<SummandId, Arc<LocalEnd>>>,
}

impl Context {
    pub fn new(sc: StructureConstantAlgebra, nakayama: Option<NakayamaData>, seed: u64) -> Self {
        Self {
            sc,
            nakayama,
            seed,
            max_window: DEFAULT_MAX_WINDOW,
            store: RwLock::new(Store::default()),
            homs: RwLock::new(HashMap::new()),
            ends: RwLock::new(HashMap::new()),
        }
    }

    pub fn with_max_window(mut self, w: usize) -> Self {
        self.max_window = w;
        self
    }

    pub fn sc(&self) -> &StructureConstantAlgebra {
        &self.sc
    }

    pub fn field(&self) -> PrimeField {
        self.sc.field()
    }

    pub fn num_vertices(&self) -> usize {
        self.sc.num_vertices()
    }

    pub fn nakayama(&self) -> Result<&NakayamaData> {
        self.nakayama
            .as_ref()
            .ok_or_else(|| Error::Precondition("algebra has no Nakayama data".into()))
    }

    pub fn num_summands_interned(&self) -> usize {
        self.store.read().unwrap().items.len()
    }

    /// Interns a minimal complex known to be rigid (`Hom(X, X[1]) = 0`).
    /// Two-term rigid complexes are identified by their g-vectors.
    pub fn intern(&self, x: ProjComplex) -> SummandId {
        let two_term = x.lo() >= -1 && x.hi() <= 0;
        let g = x.g_vector(self.num_vertices());
        {
            let st = self.store.read().unwrap();
            if let Some(&id) = st.exact.get(&x) {
                return id;
            }
            if two_term {
                if let Some(&id) = st.by_g.get(&g) {
                    if st.items[id].shape() == x.shape() {
                        return id;
                    }
                }
            }
        }
        let mut st = self.store.write().unwrap();
        if let Some(&id) = st.exact.get(&x) {
            return id;
        }
        if two_term {
            if let Some(&id) = st.by_g.get(&g) {
                if st.items[id].shape() == x.shape() {
                    return id;
                }
            }
        }
        let id = st.items.len();
        st.items.push(Arc::new(x.clone()));
        st.exact.insert(x, id);
        if two_term {
            st.by_g.entry(g).or_insert(id);
        }
        id
    }

    pub fn complex(&self, id: SummandId) -> Arc<ProjComplex> {
        self.store.read().unwrap().items[id].clone()
    }

    pub fn g_vector(&self, id: SummandId) -> Vec<i64> {
        self.complex(id).g_vector(self.num_vertices())
    }

    pub fn stalk(&self, v: usize, degree: i32) -> SummandId {
        self.intern(ProjComplex::stalk(v, degree))
    }

    /// Indecomposable summands of `A[shift]`, one per vertex.
    pub fn algebra_summands(&self, shift: i32) -> Vec<SummandId> {
        (0..self.num_vertices()).map(|v| self.stalk(v, -shift)).collect()
    }

    /// `Hom(X_a, X_b[k])`.
    pub fn hom(&self, a: SummandId, b: SummandId, k: i32) -> Arc<HomSpace> {
        if let Some(h) = self.homs.read().unwrap().get(&(a, b, k)) {
            return h.clone();
        }
        let (x, y) = (self.complex(a), self.complex(b));
        let h = Arc::new(HomSpace::compute(&self.sc, &x, &y, k));
        self.homs.write().unwrap().insert((a, b, k), h.clone());
        h
    }

    pub fn hom_dim(&self, a: SummandId, b: SummandId, k: i32) -> usize {
        let (x, y) = (self.complex(a), self.complex(b));
        if x.is_zero() || y.is_zero() || k < y.lo() - x.hi() || k > y.hi() - x.lo() {
            return 0;
        }
        self.hom(a, b, k).dim()
    }

    pub fn local_end(&self, a: SummandId) -> Result<Arc<LocalEnd>> {
        if let Some(e) = self.ends.read().unwrap().get(&a) {
            return Ok(e.clone());
        }
        let e = Arc::new(local_endomorphisms(&self.sc, &self.complex(a), a)?);
        self.ends.write().unwrap().insert(a, e.clone());
        Ok(e)
    }

    /// `Hom(M, N[i]) = 0` for all `i > 0`.
    pub fn order_ge(&self, m: &[SummandId], n: &[SummandId]) -> bool {
        m.iter().all(|&a| {
            n.iter().all(|&b| {
                let (x, y) = (self.complex(a), self.complex(b));
                (1..=(y.hi() - x.lo()).max(0)).all(|i| self.hom_dim(a, b, i) == 0)
            })
        })
    }

    pub fn is_presilting(&self, t: &[SummandId]) -> bool {
        self.order_ge(t, t)
    }

    /// `Hom(T, T[i]) = 0` for all `i < 0`.
    pub fn negative_vanishing(&self, t: &[SummandId]) -> bool {
        t.iter().all(|&a| {
            t.iter().all(|&b| {
                let (x, y) = (self.complex(a), self.complex(b));
                ((y.lo() - x.hi()).min(0)..0).all(|i| self.hom_dim(a, b, i) == 0)
            })
        })
    }

    pub fn is_tilting(&self, t: &[SummandId]) -> bool {
        self.is_presilting(t) && self.negative_vanishing(t)
    }

    /// Two-term criterion: presilting, window inside `[-1, 0]`, and as many
    /// pairwise distinct summands as vertices.
    pub fn certify_two_term_silting(&self, t: &[SummandId]) -> Result<()> {
        let mut ids = t.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let in_window = t.iter().all(|&a| {
            let x = self.complex(a);
            !x.is_zero() && x.lo() >= -1 && x.hi() <= 0
        });
        if !in_window || ids.len() != self.num_vertices() || ids.len() != t.len() {
            return Err(Error::CannotCertifyGeneration);
        }
        if !self.is_presilting(t) {
            return Err(Error::Verification("object is not presilting".into()));
        }
        Ok(())
    }

    pub fn check_window(&self, x: &ProjComplex) -> Result<()> {
        if x.width() > self.max_window {
            return Err(Error::WindowOverflow {
                width: x.width(),
                cap: self.max_window,
            });
        }
        Ok(())
    }

    /// `nu X`.
    pub fn nu(&self, a: SummandId) -> Result<SummandId> {
        let nd = self.nakayama()?;
        let x = self.complex(a).twist(self.field(), &nd.automorphism, &nd.pi);
        Ok(self.intern(x))
    }

    /// Twist by an automorphism `theta` with vertex permutation `perm`: the
    /// summand `P(i)` goes to `P(perm^-1(i))`, entries through `theta^-1`.
    pub fn apply_automorphism(&self, a: SummandId, theta_inv: &AlgebraMap, perm: &[usize]) -> SummandId {
        let inv = invert_permutation(perm);
        let x = self.complex(a).twist(self.field(), theta_inv, &inv);
        self.intern(x)
    }

    pub fn is_isomorphic(&self, a: SummandId, b: SummandId) -> bool {
        if a == b {
            return true;
        }
        is_isomorphic(&self.sc, &self.complex(a), &self.complex(b), self.seed)
    }

    /// Matches summand lists up to isomorphism and order.
    pub fn same_object(&self, m: &[SummandId], n: &[SummandId]) -> bool {
        if m.len() != n.len() {
            return false;
        }
        let mut used = vec![false; n.len()];
        'outer: for &a in m {
            for (j, &b) in n.iter().enumerate() {
                if !used[j] && self.is_isomorphic(a, b) {
                    used[j] = true;
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }
}
