//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use petgraph::algo::has_path_connecting;
use petgraph::graph::DiGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use silting_core::constructions::derived::verify_prop_derived_class;
use silting_core::constructions::skew::{psi_automorphism, verify_anm_skew_iso};
use silting_core::constructions::tilde::{gamma_quotient_construction, tilde_construction, verify_tilde_iso};
use silting_core::constructions::{build_anm, build_nakayama_selfinjective, build_preprojective, AnmSpec, Dynkin};
use silting_core::homotopy::{end_algebra, Context, SummandId};
use silting_core::mutation::{
    enumerate_two_term, enumerate_two_term_nu_stable, hasse_quiver, is_nu_stable, left_mutation, nu_orbits,
    nu_stable_orbit_mutation, right_mutation, strictly_greater, MutationGraphResult, SiltingObject,
};
use silting_core::selfinjective::{frobenius_form, gram_matrix, is_self_injective, nakayama_data};
use silting_core::{BoundQuiverAlgebra, PrimeField};

/// Node counts of the nu-stable two-term enumeration, fixed after the first verified run.
const NU_STABLE_A35: usize = 8;
const NU_STABLE_A53: usize = 48;
const PREPROJECTIVE_D4: usize = 192;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn field() -> PrimeField {
    PrimeField::default_field()
}

fn context(alg: &BoundQuiverAlgebra, seed: u64) -> Result<Context, String> {
    let nd = nakayama_data(alg.sc(), seed).map_err(|e| e.to_string())?;
    Ok(Context::new(alg.sc().clone(), Some(nd), seed))
}

fn criterion_1() -> Outcome {
    let mut cases = 0;
    for n in 1..=6usize {
        for m in 1..=5usize {
            let alg = build_anm(n, m, field()).map_err(|e| e.to_string())?;
            let expected = m * n * (n + 1) * (n + 2) / 6;
            ensure(alg.dim() == expected, || {
                format!("dim A_{{{n},{m}}} = {} != {expected}", alg.dim())
            })?;
            for i in 1..=n {
                for r in 0..m {
                    let v = (i - 1) * m + r;
                    let d = alg.projective_basis(v).len();
                    ensure(d == i * (n - i + 1), || {
                        format!("dim P({i},{r}) = {d} in A_{{{n},{m}}}")
                    })?;
                }
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} algebras"))
}

fn criterion_2() -> Outcome {
    let mut cases = 0;
    for n in 1..=6usize {
        for m in 1..=5usize {
            let alg = build_anm(n, m, field()).map_err(|e| e.to_string())?;
            let nd = nakayama_data(alg.sc(), 7).map_err(|e| e.to_string())?;
            for i in 1..=n {
                for r in 0..m {
                    let j = n - i + 1;
                    let s = (r as i64 + i as i64 - n as i64).rem_euclid(m as i64) as usize;
                    let v = (i - 1) * m + r;
                    ensure(nd.pi[v] == (j - 1) * m + s, || {
                        format!("pi({i},{r}) wrong in A_{{{n},{m}}}: got index {}", nd.pi[v])
                    })?;
                }
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} algebras"))
}

fn reachability(res: &MutationGraphResult) -> DiGraph<(), ()> {
    let mut g = DiGraph::new();
    let ids: Vec<_> = res.nodes.iter().map(|_| g.add_node(())).collect();
    for e in &res.edges {
        g.add_edge(ids[e.from], ids[e.to], ());
    }
    g
}

fn criterion_3() -> Outcome {
    let mut counts = Vec::new();
    for (n, expected) in [(2usize, 6usize), (3, 24), (4, 120)] {
        let alg = build_preprojective(Dynkin::A(n), field()).map_err(|e| e.to_string())?;
        let ctx = context(&alg, 3)?;
        let res = enumerate_two_term(&ctx, 2000).map_err(|e| e.to_string())?;
        ensure(res.complete, || format!("A{n}: enumeration incomplete"))?;
        ensure(res.nodes.len() == expected, || {
            format!("A{n}: {} nodes, expected {expected}", res.nodes.len())
        })?;
        hasse_quiver(&res).map_err(|e| format!("A{n}: {e}"))?;
        if n <= 3 {
            // the partial order from Hom vanishing must be the reachability order of the graph
            let g = reachability(&res);
            let idx: Vec<_> = g.node_indices().collect();
            for (a, na) in res.nodes.iter().enumerate() {
                for (b, nb) in res.nodes.iter().enumerate() {
                    let ge = ctx.order_ge(&na.object.summands, &nb.object.summands);
                    let reach = has_path_connecting(&g, idx[a], idx[b], None);
                    ensure(ge == reach, || format!("A{n}: order and graph disagree on ({a},{b})"))?;
                }
            }
        }
        counts.push(format!("A{n}={}", res.nodes.len()));
    }
    Ok(counts.join(" "))
}

fn normalized_relations(alg: &BoundQuiverAlgebra) -> BTreeSet<Vec<(i64, Vec<String>)>> {
    let q = alg.quiver();
    alg.relations()
        .iter()
        .map(|r| {
            let mut terms: Vec<(i64, Vec<String>)> = r
                .iter()
                .map(|(c, w)| (*c, w.iter().map(|&a| q.arrow(a).name.clone()).collect()))
                .collect();
            terms.sort_by(|x, y| x.1.cmp(&y.1));
            if terms[0].0 < 0 {
                terms.iter_mut().for_each(|t| t.0 = -t.0);
            }
            terms
        })
        .collect()
}

fn criterion_4() -> Outcome {
    let base = build_nakayama_selfinjective(2, 4, field()).map_err(|e| e.to_string())?;
    let t = tilde_construction(&base, 1).map_err(|e| e.to_string())?;
    let alg = &t.algebra;
    let q = alg.quiver();
    let arrows: BTreeSet<(String, String, String)> = q
        .arrows()
        .iter()
        .map(|a| {
            (
                a.name.clone(),
                q.vertices()[a.source].clone(),
                q.vertices()[a.target].clone(),
            )
        })
        .collect();
    let want_arrows: BTreeSet<(String, String, String)> =
        [("a+", "1", "2"), ("a-", "1", "2"), ("b+", "2", "1"), ("b-", "2", "1")]
            .iter()
            .map(|(n, s, t)| (n.to_string(), s.to_string(), t.to_string()))
            .collect();
    ensure(arrows == want_arrows, || format!("arrows {arrows:?}"))?;
    let mono = |w: &[&str]| vec![(1i64, w.iter().map(|s| s.to_string()).collect::<Vec<_>>())];
    let mut want: BTreeSet<Vec<(i64, Vec<String>)>> = [
        mono(&["a+", "b+", "a+", "b+"]),
        mono(&["b+", "a+", "b+", "a+"]),
        mono(&["a-", "b-", "a-", "b-"]),
        mono(&["b-", "a-", "b-", "a-"]),
        mono(&["a+", "b-"]),
        mono(&["a-", "b+"]),
        mono(&["b+", "a-"]),
        mono(&["b-", "a+"]),
    ]
    .into_iter()
    .collect();
    for (x, y) in [
        (["a+", "b+", "a+"], ["a-", "b-", "a-"]),
        (["b+", "a+", "b+"], ["b-", "a-", "b-"]),
    ] {
        let mut r = vec![
            (1, x.iter().map(|s| s.to_string()).collect::<Vec<_>>()),
            (-1, y.iter().map(|s| s.to_string()).collect::<Vec<_>>()),
        ];
        r.sort_by(|u, v| u.1.cmp(&v.1));
        if r[0].0 < 0 {
            r.iter_mut().for_each(|t| t.0 = -t.0);
        }
        want.insert(r);
    }
    let got = normalized_relations(alg);
    ensure(got == want, || format!("relations differ: {got:?}"))?;
    ensure(alg.dim() == 12, || format!("dim {}", alg.dim()))?;
    let si = is_self_injective(alg.sc(), 5).map_err(|e| e.to_string())?;
    ensure(si.selfinjective, || "not self-injective".into())?;
    let ctx = context(alg, 5)?;
    ensure(ctx.nakayama().map_err(|e| e.to_string())?.nu_cyclic(), || {
        "not nu-cyclic".into()
    })?;
    ensure(q.has_multiple_arrow(), || "no multiple arrow".into())?;
    let res = enumerate_two_term_nu_stable(&ctx, 2000).map_err(|e| e.to_string())?;
    let keys: BTreeSet<Vec<Vec<i64>>> = res.nodes.iter().map(|n| n.key.clone()).collect();
    let a = SiltingObject::algebra(&ctx).key(&ctx);
    let shifted = SiltingObject {
        summands: ctx.algebra_summands(1),
        certificate: Vec::new(),
    }
    .key(&ctx);
    ensure(res.complete && keys == [a, shifted].into_iter().collect(), || {
        format!("nu-stable nodes {keys:?}")
    })?;
    let gq = gamma_quotient_construction(&base, 1).map_err(|e| e.to_string())?;
    let cert = verify_tilde_iso(&t, &gq).map_err(|e| e.to_string())?;
    ensure(cert.ok, || format!("tilde-iso failed: {:?}", cert.failed_checks()))?;
    Ok(format!("dim 12, 10 relations, nu-stable nodes {}", res.nodes.len()))
}

/// Number of paths (including trivial ones) in an acyclic quiver given by its arrow matrix.
fn path_count(arrows: &[Vec<usize>]) -> usize {
    let n = arrows.len();
    let mut layer: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| usize::from(i == j)).collect()).collect();
    let mut total = n;
    for _ in 0..n {
        let next: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| layer[i][k] * arrows[k][j]).sum())
                    .collect()
            })
            .collect();
        let s: usize = next.iter().flatten().sum();
        if s == 0 {
            return total;
        }
        total += s;
        layer = next;
    }
    usize::MAX
}

fn criterion_5() -> Outcome {
    let alg = build_anm(5, 5, field()).map_err(|e| e.to_string())?;
    let spec = AnmSpec::new(5, 5).map_err(|e| e.to_string())?;
    let r = 2i64;
    let verts = [
        spec.vertex(4, r - 1),
        spec.vertex(2, r),
        spec.vertex(3, r),
        spec.vertex(4, r),
        spec.vertex(2, r + 1),
    ];
    let sub = alg.sc().idempotent_subalgebra(&verts).map_err(|e| e.to_string())?;
    let gp = sub.gabriel_presentation().map_err(|e| e.to_string())?;
    let arrows = &gp.arrows;
    let center = 2;
    let total: usize = arrows.iter().flatten().sum();
    let into: usize = (0..5).map(|s| arrows[s][center]).sum();
    let out: usize = (0..5).map(|t| arrows[center][t]).sum();
    let leaves_ok = (0..5).filter(|&v| v != center).all(|v| {
        let deg: usize = (0..5).map(|w| arrows[v][w] + arrows[w][v]).sum();
        deg == 1 && arrows[v][center] + arrows[center][v] == 1
    });
    ensure(total == 4 && into == 2 && out == 2 && leaves_ok, || {
        format!("Gabriel quiver {arrows:?}")
    })?;
    ensure(sub.dim() == 13, || format!("dim {}", sub.dim()))?;
    let rad = sub.radical().map_err(|e| e.to_string())?;
    ensure(rad.dim2() == 4, || format!("dim rad^2 = {}", rad.dim2()))?;
    let paths = path_count(arrows);
    ensure(paths == sub.dim(), || format!("{paths} paths but dim {}", sub.dim()))?;
    let ctx = context(&alg, 11)?;
    let res = enumerate_two_term(&ctx, 500).map_err(|e| e.to_string())?;
    ensure(!res.complete && res.nodes.len() == 500, || {
        format!("enumeration stopped at {} nodes", res.nodes.len())
    })?;
    Ok("D4-tilde, dim 13, no relations; cutoff 500 reached".into())
}

fn criterion_6() -> Outcome {
    for (n, m, p) in [(3, 2, 5), (3, 4, 13), (5, 3, 7)] {
        let c = verify_anm_skew_iso(n, m, p).map_err(|e| e.to_string())?;
        ensure(c.ok, || format!("({n},{m},{p}): {:?}", c.failed_checks()))?;
        ensure(c.dims["A_nm"] == c.dims["skew"], || {
            format!("({n},{m},{p}): dims {:?}", c.dims)
        })?;
    }
    Ok("3 cases".into())
}

fn criterion_7() -> Outcome {
    let p = field().modulus();
    for (n, m, l) in [(3usize, 5usize, 1usize), (3, 5, 2), (5, 3, 1), (5, 3, 2), (5, 3, 3)] {
        let c = verify_prop_derived_class(n, m, p, l, 17).map_err(|e| format!("({n},{m},{l}): {e}"))?;
        ensure(c.ok, || format!("({n},{m},{l}): {:?}", c.failed_checks()))?;
        let want = m * n * (n + 1) * (n + 2) / 6;
        ensure(c.dims["End"] == want, || {
            format!("({n},{m},{l}): dim End {}", c.dims["End"])
        })?;
    }
    Ok("5 cases".into())
}

fn psi_stable(ctx: &Context, alg: &BoundQuiverAlgebra, spec: AnmSpec, summands: &[SummandId]) -> Result<bool, String> {
    let (psi, perm) = psi_automorphism(alg, spec).map_err(|e| e.to_string())?;
    let inv = psi.inverse(ctx.field()).map_err(|e| e.to_string())?;
    let image: Vec<SummandId> = summands
        .iter()
        .map(|&a| ctx.apply_automorphism(a, &inv, &perm))
        .collect();
    Ok(ctx.same_object(&image, summands))
}

fn criterion_8() -> Outcome {
    let mut out = Vec::new();
    for (n, m, expected) in [(3usize, 5usize, NU_STABLE_A35), (5, 3, NU_STABLE_A53)] {
        let alg = build_anm(n, m, field()).map_err(|e| e.to_string())?;
        let spec = AnmSpec::new(n, m).map_err(|e| e.to_string())?;
        let ctx = context(&alg, 13)?;
        // control: mutating a single summand breaks psi-stability
        let single = left_mutation(&ctx, &SiltingObject::algebra(&ctx), &[0]).map_err(|e| e.to_string())?;
        ensure(!psi_stable(&ctx, &alg, spec, &single.summands)?, || {
            "psi-stability check accepts everything".into()
        })?;
        let res = enumerate_two_term_nu_stable(&ctx, 2000).map_err(|e| e.to_string())?;
        ensure(res.complete, || {
            format!("A_{{{n},{m}}}: incomplete at {}", res.nodes.len())
        })?;
        for (k, node) in res.nodes.iter().enumerate() {
            ensure(ctx.is_tilting(&node.object.summands), || {
                format!("A_{{{n},{m}}}: node {k} not tilting")
            })?;
            ensure(psi_stable(&ctx, &alg, spec, &node.object.summands)?, || {
                format!("A_{{{n},{m}}}: node {k} not psi-stable")
            })?;
        }
        ensure(res.nodes.len() == expected, || {
            format!(
                "A_{{{n},{m}}}: {} nodes, regression constant {expected}",
                res.nodes.len()
            )
        })?;
        out.push(format!("A_{{{n},{m}}}={}", res.nodes.len()));
    }
    Ok(out.join(" "))
}

#[derive(Default)]
struct Tally {
    steps: usize,
    orbit_steps: usize,
    end_checks: usize,
    serre_pairs: usize,
}

fn end_is_frobenius(ctx: &Context, t: &SiltingObject, seed: u64) -> Result<bool, String> {
    let end = end_algebra(ctx.sc(), &t.complexes(ctx), None).map_err(|e| e.to_string())?;
    let form = match frobenius_form(&end, seed) {
        Ok(f) => f,
        Err(_) => return Ok(false),
    };
    Ok(gram_matrix(&end, &form).is_invertible())
}

fn walk(
    ctx: &Context,
    steps: usize,
    rng: &mut ChaCha8Rng,
    tally: &mut Tally,
    seen: &mut Vec<SummandId>,
) -> Result<(), String> {
    let start = SiltingObject::algebra(ctx);
    let mut t = start.clone();
    let mut done = 0;
    let mut attempts = 0;
    while done < steps {
        attempts += 1;
        ensure(attempts < 20 * steps, || "too many failed mutation attempts".into())?;
        if done % 10 == 0 {
            t = start.clone();
        }
        let k = rng.gen_range(0..t.summands.len());
        let left = rng.gen_bool(0.5);
        let u = if left {
            left_mutation(ctx, &t, &[k])
        } else {
            right_mutation(ctx, &t, &[k])
        };
        let Ok(u) = u else { continue };
        ensure(u.summands.len() == t.summands.len(), || "summand count changed".into())?;
        ensure(ctx.is_presilting(&u.summands), || "mutation lost presilting".into())?;
        let (hi, lo) = if left { (&t, &u) } else { (&u, &t) };
        ensure(strictly_greater(ctx, hi, lo), || {
            "order did not strictly decrease".into()
        })?;
        let back = if left {
            right_mutation(ctx, &u, &[k])
        } else {
            left_mutation(ctx, &u, &[k])
        }
        .map_err(|e| e.to_string())?;
        ensure(ctx.same_object(&back.summands, &t.summands), || {
            "inverse mutation did not return".into()
        })?;
        seen.extend(u.summands.iter().copied());
        done += 1;
        tally.steps += 1;

        if is_nu_stable(ctx, &t) {
            let orbits = nu_orbits(ctx, &t).map_err(|e| e.to_string())?;
            let orbit = &orbits[rng.gen_range(0..orbits.len())];
            if let Ok(v) = nu_stable_orbit_mutation(ctx, &t, orbit) {
                ensure(is_nu_stable(ctx, &v), || "orbit mutation broke nu-stability".into())?;
                ensure(end_is_frobenius(ctx, &v, 3)?, || {
                    "End of nu-stable object not Frobenius".into()
                })?;
                tally.orbit_steps += 1;
                tally.end_checks += 1;
            }
        }
        t = u;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let f = field();
    let algebras = [
        build_preprojective(Dynkin::A(3), f),
        build_anm(3, 2, f),
        build_nakayama_selfinjective(2, 4, f),
        build_nakayama_selfinjective(3, 3, f),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut tally = Tally::default();
    for alg in algebras {
        let alg = alg.map_err(|e| e.to_string())?;
        let ctx = context(&alg, 19)?;
        let mut seen = ctx.algebra_summands(0);
        walk(&ctx, 50, &mut rng, &mut tally, &mut seen)?;
        ensure(end_is_frobenius(&ctx, &SiltingObject::algebra(&ctx), 3)?, || {
            "End(A) not Frobenius".into()
        })?;
        tally.end_checks += 1;
        seen.sort_unstable();
        seen.dedup();
        for _ in 0..25 {
            let x = seen[rng.gen_range(0..seen.len())];
            let y = seen[rng.gen_range(0..seen.len())];
            let nx = ctx.nu(x).map_err(|e| e.to_string())?;
            let (l, r) = (ctx.hom_dim(x, y, 0), ctx.hom_dim(y, nx, 0));
            ensure(l == r, || format!("Serre: dim Hom(X,Y) = {l}, dim Hom(Y,nuX) = {r}"))?;
            tally.serre_pairs += 1;
        }
    }
    ensure(tally.steps == 200 && tally.serre_pairs == 100, || {
        "suite incomplete".into()
    })?;
    Ok(format!(
        "{} steps, {} orbit steps, {} End checks, {} Serre pairs",
        tally.steps, tally.orbit_steps, tally.end_checks, tally.serre_pairs
    ))
}

fn criterion_10() -> Outcome {
    let alg = build_preprojective(Dynkin::D(4), field()).map_err(|e| e.to_string())?;
    let ctx = context(&alg, 23)?;
    ensure(ctx.nakayama().map_err(|e| e.to_string())?.weakly_symmetric(), || {
        "not weakly symmetric".into()
    })?;
    let res = enumerate_two_term(&ctx, 2000).map_err(|e| e.to_string())?;
    ensure(res.complete, || "enumeration incomplete".into())?;
    for (k, node) in res.nodes.iter().enumerate() {
        ensure(is_nu_stable(&ctx, &node.object), || format!("node {k} not nu-stable"))?;
    }
    ensure(res.nodes.len() == PREPROJECTIVE_D4, || {
        format!("{} nodes", res.nodes.len())
    })?;
    Ok(format!("{} nodes, all nu-stable", res.nodes.len()))
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() {
    let criteria: [Criterion; 10] = [
        ("dimension formulas", criterion_1, Duration::from_secs(10)),
        ("Nakayama permutation", criterion_2, Duration::from_secs(10)),
        ("preprojective type A counts", criterion_3, Duration::from_secs(300)),
        ("tilde pipeline", criterion_4, Duration::from_secs(60)),
        ("infiniteness witnesses", criterion_5, Duration::from_secs(600)),
        ("skew group isomorphism", criterion_6, Duration::from_secs(120)),
        ("endomorphism ring theorem", criterion_7, Duration::from_secs(1800)),
        (
            "nu-stable finiteness and psi-stability",
            criterion_8,
            Duration::from_secs(1800),
        ),
        ("property suite", criterion_9, Duration::from_secs(900)),
        ("weakly symmetric D4", criterion_10, Duration::from_secs(600)),
    ];
    let only: Option<usize> = std::env::args().nth(1).and_then(|a| a.parse().ok());
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let id = i + 1;
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let t0 = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let dt = t0.elapsed();
        let outcome = outcome.and_then(|d| {
            if dt > *budget {
                Err(format!("{d}; over time budget {budget:?}"))
            } else {
                Ok(d)
            }
        });
        match outcome {
            Ok(d) => println!("criterion {id:>2} {name}: PASS ({:.1}s) {d}", dt.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("criterion {id:>2} {name}: FAIL ({:.1}s) {e}", dt.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
