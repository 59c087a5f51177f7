//! Minimal approximations, silting mutation and two-term enumeration.

use std::collections::{HashMap, HashSet, VecDeque};

use petgraph::graph::DiGraph;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homotopy::{ChainMap, Context, ProjComplex, SummandId};
use crate::linalg::quotient_basis;
use crate::sparse;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MutationStep {
    pub direction: Direction,
    pub positions: Vec<usize>,
}

/// Summands in a fixed order plus the mutation path from `A` that certifies siltingness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiltingObject {
    pub summands: Vec<SummandId>,
    pub certificate: Vec<MutationStep>,
}

impl SiltingObject {
    pub fn algebra(ctx: &Context) -> Self {
        Self {
            summands: ctx.algebra_summands(0),
            certificate: Vec::new(),
        }
    }

    /// Rows of g-vectors, sorted: the dedup key for two-term objects.
    pub fn key(&self, ctx: &Context) -> Vec<Vec<i64>> {
        let mut rows: Vec<Vec<i64>> = self.summands.iter().map(|&a| ctx.g_vector(a)).collect();
        rows.sort();
        rows
    }

    pub fn is_two_term(&self, ctx: &Context) -> bool {
        self.summands.iter().all(|&a| {
            let x = ctx.complex(a);
            x.lo() >= -1 && x.hi() <= 0
        })
    }

    pub fn complexes(&self, ctx: &Context) -> Vec<ProjComplex> {
        self.summands.iter().map(|&a| (*ctx.complex(a)).clone()).collect()
    }
}

fn span_of(ctx: &Context, maps: &[ChainMap], x: SummandId, y: SummandId) -> Vec<Vec<u64>> {
    let h = ctx.hom(x, y, 0);
    maps.iter().map(|m| h.class_of(ctx.sc(), m)).collect()
}

/// Minimal left `add N`-approximation of `X`: returns the target summands
/// (with repetition) and the map into their direct sum.
pub fn minimal_left_approximation(ctx: &Context, x: SummandId, n: &[SummandId]) -> Result<(Vec<SummandId>, ChainMap)> {
    let sc = ctx.sc();
    let xc = ctx.complex(x);
    let mut targets = Vec::new();
    let mut maps = Vec::new();
    for &nj in n {
        let h = ctx.hom(x, nj, 0);
        if h.dim() == 0 {
            continue;
        }
        let njc = ctx.complex(nj);
        let mut sub: Vec<Vec<u64>> = Vec::new();
        for &nk in n {
            let hk = ctx.hom(x, nk, 0);
            if hk.dim() == 0 {
                continue;
            }
            let nkc = ctx.complex(nk);
            let through: Vec<ChainMap> = if nk == nj {
                let le = ctx.local_end(nj)?;
                le.hom.reps(sc, &njc, &njc).into_iter().skip(1).collect()
            } else {
                ctx.hom(nk, nj, 0).reps(sc, &nkc, &njc)
            };
            if through.is_empty() {
                continue;
            }
            let gs = hk.reps(sc, &xc, &nkc);
            let comps: Vec<ChainMap> = through
                .iter()
                .flat_map(|t| gs.iter().map(move |g| t.compose(sc, g)))
                .collect();
            sub.extend(span_of(ctx, &comps, x, nj));
        }
        let all: Vec<Vec<u64>> = (0..h.dim())
            .map(|i| sparse::to_dense(&sparse::unit(i), h.dim()))
            .collect();
        for c in quotient_basis(ctx.field(), h.dim(), &all, &sub)? {
            targets.push(nj);
            maps.push(h.combination(sc, &xc, &njc, &c));
        }
    }
    let tcs: Vec<_> = targets.iter().map(|&t| ctx.complex(t)).collect();
    let trefs: Vec<&ProjComplex> = tcs.iter().map(|a| a.as_ref()).collect();
    Ok((targets, ChainMap::stack_targets(&maps, &xc, &trefs)))
}

/// Minimal right `add N`-approximation `N' -> X`.
pub fn minimal_right_approximation(ctx: &Context, x: SummandId, n: &[SummandId]) -> Result<(Vec<SummandId>, ChainMap)> {
    let sc = ctx.sc();
    let xc = ctx.complex(x);
    let mut sources = Vec::new();
    let mut maps = Vec::new();
    for &nj in n {
        let h = ctx.hom(nj, x, 0);
        if h.dim() == 0 {
            continue;
        }
        let njc = ctx.complex(nj);
        let mut sub: Vec<Vec<u64>> = Vec::new();
        for &nk in n {
            let hk = ctx.hom(nk, x, 0);
            if hk.dim() == 0 {
                continue;
            }
            let nkc = ctx.complex(nk);
            let through: Vec<ChainMap> = if nk == nj {
                let le = ctx.local_end(nj)?;
                le.hom.reps(sc, &njc, &njc).into_iter().skip(1).collect()
            } else {
                ctx.hom(nj, nk, 0).reps(sc, &njc, &nkc)
            };
            if through.is_empty() {
                continue;
            }
            let gs = hk.reps(sc, &nkc, &xc);
            let comps: Vec<ChainMap> = gs
                .iter()
                .flat_map(|g| through.iter().map(move |t| g.compose(sc, t)))
                .collect();
            sub.extend(span_of(ctx, &comps, nj, x));
        }
        let all: Vec<Vec<u64>> = (0..h.dim())
            .map(|i| sparse::to_dense(&sparse::unit(i), h.dim()))
            .collect();
        for c in quotient_basis(ctx.field(), h.dim(), &all, &sub)? {
            sources.push(nj);
            maps.push(h.combination(sc, &njc, &xc, &c));
        }
    }
    let scs: Vec<_> = sources.iter().map(|&t| ctx.complex(t)).collect();
    let srefs: Vec<&ProjComplex> = scs.iter().map(|a| a.as_ref()).collect();
    Ok((sources, ChainMap::stack_sources(&maps, &srefs, &xc)))
}

fn sum_of(ctx: &Context, ids: &[SummandId]) -> ProjComplex {
    ids.iter()
        .fold(ProjComplex::zero(), |acc, &a| acc.direct_sum(&ctx.complex(a)))
}

/// Cone of the minimal left approximation of `X`.
pub fn left_mutate_summand(ctx: &Context, x: SummandId, n: &[SummandId]) -> Result<ProjComplex> {
    let (targets, f) = minimal_left_approximation(ctx, x, n)?;
    let z = ProjComplex::cone(ctx.sc(), &ctx.complex(x), &sum_of(ctx, &targets), &f);
    ctx.check_window(&z)?;
    Ok(z)
}

/// Co-cone of the minimal right approximation of `X`.
pub fn right_mutate_summand(ctx: &Context, x: SummandId, n: &[SummandId]) -> Result<ProjComplex> {
    let (sources, g) = minimal_right_approximation(ctx, x, n)?;
    let c = ProjComplex::cone(ctx.sc(), &sum_of(ctx, &sources), &ctx.complex(x), &g);
    let z = c.shift(ctx.field(), -1);
    ctx.check_window(&z)?;
    Ok(z)
}

fn complement(t: &SiltingObject, positions: &[usize]) -> Vec<SummandId> {
    t.summands
        .iter()
        .enumerate()
        .filter(|(i, _)| !positions.contains(i))
        .map(|(_, &a)| a)
        .collect()
}

fn mutate(ctx: &Context, t: &SiltingObject, positions: &[usize], dir: Direction) -> Result<SiltingObject> {
    if positions.is_empty() || positions.iter().any(|&p| p >= t.summands.len()) {
        return Err(Error::Precondition("invalid summand positions".into()));
    }
    let rest = complement(t, positions);
    let mut summands = t.summands.clone();
    for &p in positions {
        let z = match dir {
            Direction::Left => left_mutate_summand(ctx, t.summands[p], &rest)?,
            Direction::Right => right_mutate_summand(ctx, t.summands[p], &rest)?,
        };
        summands[p] = ctx.intern(z);
    }
    let mut certificate = t.certificate.clone();
    certificate.push(MutationStep {
        direction: dir,
        positions: positions.to_vec(),
    });
    Ok(SiltingObject { summands, certificate })
}

pub fn left_mutation(ctx: &Context, t: &SiltingObject, positions: &[usize]) -> Result<SiltingObject> {
    mutate(ctx, t, positions, Direction::Left)
}

pub fn right_mutation(ctx: &Context, t: &SiltingObject, positions: &[usize]) -> Result<SiltingObject> {
    mutate(ctx, t, positions, Direction::Right)
}

/// `M > N` strictly.
pub fn strictly_greater(ctx: &Context, m: &SiltingObject, n: &SiltingObject) -> bool {
    ctx.order_ge(&m.summands, &n.summands) && !ctx.order_ge(&n.summands, &m.summands)
}

/// Re-runs the certificate from `A` and compares up to isomorphism.
pub fn replay_certificate(ctx: &Context, t: &SiltingObject) -> Result<bool> {
    let mut cur = SiltingObject::algebra(ctx);
    for step in &t.certificate {
        cur = mutate(ctx, &cur, &step.positions, step.direction)?;
    }
    Ok(ctx.same_object(&cur.summands, &t.summands))
}

/// Left if the result stays two-term, otherwise right.
fn exchange_positions(
    ctx: &Context,
    t: &SiltingObject,
    positions: &[usize],
) -> Result<Option<(SiltingObject, Direction)>> {
    let in_window = |o: &SiltingObject| o.is_two_term(ctx);
    match left_mutation(ctx, t, positions) {
        Ok(o) if in_window(&o) => return Ok(Some((o, Direction::Left))),
        Ok(_) | Err(Error::WindowOverflow { .. }) => {}
        Err(e) => return Err(e),
    }
    match right_mutation(ctx, t, positions) {
        Ok(o) if in_window(&o) => Ok(Some((o, Direction::Right))),
        Ok(_) | Err(Error::WindowOverflow { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn two_term_exchange(ctx: &Context, t: &SiltingObject, k: usize) -> Result<(SiltingObject, Direction)> {
    exchange_positions(ctx, t, &[k])?
        .ok_or_else(|| Error::Verification("neither mutation of a two-term summand is two-term".into()))
}

/// Position permutation induced by `nu` on the summands.
pub fn nu_permutation(ctx: &Context, t: &SiltingObject) -> Result<Vec<usize>> {
    let mut perm = Vec::with_capacity(t.summands.len());
    for &a in &t.summands {
        let b = ctx.nu(a)?;
        let j = t
            .summands
            .iter()
            .position(|&c| c == b)
            .or_else(|| t.summands.iter().position(|&c| ctx.is_isomorphic(c, b)))
            .ok_or_else(|| Error::Precondition("object is not nu-stable".into()))?;
        perm.push(j);
    }
    Ok(perm)
}

pub fn nu_orbits(ctx: &Context, t: &SiltingObject) -> Result<Vec<Vec<usize>>> {
    Ok(crate::morphism::permutation_orbits(&nu_permutation(ctx, t)?))
}

pub fn is_nu_stable(ctx: &Context, t: &SiltingObject) -> bool {
    nu_permutation(ctx, t).is_ok()
}

/// Left mutation at a whole `nu`-orbit of summands.
pub fn nu_stable_orbit_mutation(ctx: &Context, t: &SiltingObject, orbit: &[usize]) -> Result<SiltingObject> {
    let out = left_mutation(ctx, t, orbit)?;
    if !is_nu_stable(ctx, &out) {
        return Err(Error::Verification("orbit mutation is not nu-stable".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Node {
    pub object: SiltingObject,
    pub key: Vec<Vec<i64>>,
}

/// Directed from the larger object to the smaller one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    /// Summand positions in `from` that were mutated.
    pub label: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct MutationGraphResult {
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    pub complete: bool,
    pub cutoff: usize,
    /// `(node, orbit positions)` pairs where neither direction stays two-term.
    pub blocked: Vec<(usize, Vec<usize>)>,
}

pub const DEFAULT_CUTOFF: usize = 2000;

fn bfs(
    ctx: &Context,
    cutoff: usize,
    moves: impl Fn(&SiltingObject) -> Result<Vec<Vec<usize>>> + Sync,
) -> Result<MutationGraphResult> {
    let start = SiltingObject::algebra(ctx);
    let mut index: HashMap<Vec<Vec<i64>>, usize> = HashMap::new();
    let key = start.key(ctx);
    index.insert(key.clone(), 0);
    let mut nodes = vec![Node { object: start, key }];
    let mut edges = Vec::new();
    let mut seen_edges = HashSet::new();
    let mut blocked = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    let mut complete = true;
    'outer: while let Some(u) = queue.pop_front() {
        let obj = nodes[u].object.clone();
        let mv = moves(&obj)?;
        let results: Vec<Result<Option<(SiltingObject, Direction)>>> =
            mv.par_iter().map(|pos| exchange_positions(ctx, &obj, pos)).collect();
        for (pos, res) in mv.into_iter().zip(results) {
            let Some((next, dir)) = res? else {
                blocked.push((u, pos));
                continue;
            };
            let key = next.key(ctx);
            let v = match index.get(&key) {
                Some(&v) => v,
                None => {
                    if nodes.len() >= cutoff {
                        complete = false;
                        break 'outer;
                    }
                    let v = nodes.len();
                    index.insert(key.clone(), v);
                    nodes.push(Node { object: next, key });
                    queue.push_back(v);
                    v
                }
            };
            let (from, to) = match dir {
                Direction::Left => (u, v),
                Direction::Right => (v, u),
            };
            if seen_edges.insert((from, to)) {
                // positions are kept in place, so the label works for both ends
                edges.push(Edge { from, to, label: pos });
            }
        }
    }
    Ok(MutationGraphResult {
        nodes,
        edges,
        complete,
        cutoff,
        blocked,
    })
}

/// BFS over single-summand exchanges from `A`.
pub fn enumerate_two_term(ctx: &Context, cutoff: usize) -> Result<MutationGraphResult> {
    bfs(ctx, cutoff, |t| Ok((0..t.summands.len()).map(|k| vec![k]).collect()))
}

/// BFS over `nu`-orbit exchanges from `A`.
pub fn enumerate_two_term_nu_stable(ctx: &Context, cutoff: usize) -> Result<MutationGraphResult> {
    ctx.nakayama()?;
    bfs(ctx, cutoff, |t| nu_orbits(ctx, t))
}

/// Hasse quiver of a complete result; checks acyclicity and that no arrow
/// is shortcut by a path of length two.
pub fn hasse_quiver(result: &MutationGraphResult) -> Result<DiGraph<usize, Vec<usize>>> {
    if !result.complete {
        return Err(Error::PartialResult { cutoff: result.cutoff });
    }
    let mut g = DiGraph::new();
    let ids: Vec<_> = (0..result.nodes.len()).map(|i| g.add_node(i)).collect();
    for e in &result.edges {
        g.add_edge(ids[e.from], ids[e.to], e.label.clone());
    }
    if petgraph::algo::toposort(&g, None).is_err() {
        return Err(Error::Verification("Hasse quiver has a cycle".into()));
    }
    let arrows: HashSet<(usize, usize)> = result.edges.iter().map(|e| (e.from, e.to)).collect();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); result.nodes.len()];
    for e in &result.edges {
        out[e.from].push(e.to);
    }
    for e in &result.edges {
        if out[e.from].iter().any(|&w| arrows.contains(&(w, e.to))) {
            return Err(Error::Verification(format!(
                "arrow {} -> {} is not a cover relation",
                e.from, e.to
            )));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_nakayama_selfinjective, build_preprojective, Dynkin};
    use crate::selfinjective::nakayama_data;
    use crate::PrimeField;

    fn ctx_for(sc: crate::StructureConstantAlgebra) -> Context {
        let nd = nakayama_data(&sc, 1).unwrap();
        Context::new(sc, Some(nd), 1)
    }

    fn preproj(d: Dynkin) -> Context {
        let f = PrimeField::new(1_000_003).unwrap();
        ctx_for(build_preprojective(d, f).unwrap().sc().clone())
    }

    #[test]
    fn preprojective_counts() {
        for (d, n) in [(Dynkin::A(2), 6), (Dynkin::A(3), 24)] {
            let ctx = preproj(d);
            let res = enumerate_two_term(&ctx, DEFAULT_CUTOFF).unwrap();
            assert!(res.complete);
            assert_eq!(res.nodes.len(), n);
            assert!(res.blocked.is_empty());
            let g = hasse_quiver(&res).unwrap();
            assert_eq!(g.node_count(), n);
        }
    }

    #[test]
    fn exchange_laws() {
        let ctx = preproj(Dynkin::A(3));
        let a = SiltingObject::algebra(&ctx);
        for k in 0..3 {
            let l = left_mutation(&ctx, &a, &[k]).unwrap();
            assert!(ctx.is_presilting(&l.summands));
            assert!(strictly_greater(&ctx, &a, &l));
            let back = right_mutation(&ctx, &l, &[k]).unwrap();
            assert!(ctx.same_object(&back.summands, &a.summands));
            assert!(replay_certificate(&ctx, &l).unwrap());
        }
    }

    #[test]
    fn nakayama_nu_stable() {
        let f = PrimeField::new(1_000_003).unwrap();
        let ctx = ctx_for(build_nakayama_selfinjective(2, 4, f).unwrap().sc().clone());
        let res = enumerate_two_term_nu_stable(&ctx, DEFAULT_CUTOFF).unwrap();
        assert!(res.complete);
        assert_eq!(res.nodes.len(), 2);
    }
}
