use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use silting_core::constructions::derived::verify_prop_derived_class;
use silting_core::constructions::skew::{skew_group_algebra, verify_anm_skew_iso};
use silting_core::constructions::tilde::{gamma_quotient_construction, tilde_construction, verify_tilde_iso};
use silting_core::constructions::{build_anm, build_nakayama_selfinjective, build_preprojective, Certificate, Dynkin};
use silting_core::field::{primitive_root_of_unity, smallest_prime_congruent_one};
use silting_core::homotopy::Context;
use silting_core::io::{self, AlgebraSpec, RunManifest};
use silting_core::mutation::{
    enumerate_two_term, enumerate_two_term_nu_stable, hasse_quiver, left_mutation, nu_orbits, right_mutation,
    SiltingObject,
};
use silting_core::selfinjective::{is_self_injective, nakayama_data, nu_orbit_partition};
use silting_core::{BoundQuiverAlgebra, Error, PrimeField, StructureConstantAlgebra};

#[derive(Parser)]
#[command(
    name = "siltkit",
    version,
    about = "Silting mutation and self-injective algebra toolkit"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Prime modulus of the ground field (overrides the algebra file).
    #[arg(long, global = true)]
    field_prime: Option<u64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Stop enumerations after this many objects.
    #[arg(long, global = true, default_value_t = 2000)]
    cutoff: usize,
    /// Largest complex width allowed during mutation.
    #[arg(long, global = true, default_value_t = 6)]
    max_window: usize,
    /// Print the full JSON document instead of a summary.
    #[arg(long, global = true)]
    json: bool,
    /// Write a DOT rendering of the resulting graph here.
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect an algebra file.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Mutation and two-term enumeration.
    #[command(subcommand)]
    Silting(SiltingCmd),
    /// Build algebras from the built-in families and constructions.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Check isomorphism and derived-equivalence certificates.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Self-injectivity, Nakayama permutation and nu-cyclicity.
    CheckSelfinjective { file: PathBuf },
}

#[derive(Subcommand)]
enum SiltingCmd {
    /// Breadth-first enumeration of two-term silting objects.
    Enumerate {
        file: PathBuf,
        /// Mutate only at nu-orbits.
        #[arg(long)]
        nu_stable: bool,
        /// Include the complexes of every node.
        #[arg(long)]
        complexes: bool,
    },
    /// One mutation of the algebra at a summand or its nu-orbit.
    Mutate {
        file: PathBuf,
        /// Vertex label of the summand.
        #[arg(long)]
        vertex: String,
        /// Mutate the whole nu-orbit of the vertex.
        #[arg(long)]
        orbit: bool,
        #[arg(long)]
        right: bool,
    },
    /// Hasse quiver of the two-term silting poset.
    Hasse {
        file: PathBuf,
        #[arg(long)]
        nu_stable: bool,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    Anm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    Preprojective {
        /// Dynkin type such as A3, D4 or E6.
        #[arg(long = "type")]
        diagram: String,
    },
    Nakayama {
        #[arg(long)]
        simples: usize,
        #[arg(long)]
        loewy: usize,
    },
    Tilde {
        file: PathBuf,
    },
    Gamma {
        file: PathBuf,
    },
    Skew {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    TildeIso {
        file: PathBuf,
    },
    SkewIso {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    DerivedClass {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        l: usize,
    },
}

/// Failure classes mapped to exit codes.
enum Failure {
    Compute(Error),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(m) => Failure::Verification(m),
            e => Failure::Compute(e),
        }
    }
}

struct Output {
    command: String,
    inputs: Value,
    modulus: Option<u64>,
    body: Value,
    summary: String,
    cert: Option<Certificate>,
    /// The body is itself the artifact and is printed even without `--json`.
    artifact: bool,
}

fn load(g: &Global, file: &Path) -> Result<BoundQuiverAlgebra, Error> {
    io::parse_algebra_file(file)?.build(g.field_prime)
}

fn context(g: &Global, alg: &BoundQuiverAlgebra, need_nakayama: bool) -> Result<Context, Error> {
    let nd = if need_nakayama {
        Some(nakayama_data(alg.sc(), g.seed)?)
    } else {
        nakayama_data(alg.sc(), g.seed).ok()
    };
    Ok(Context::new(alg.sc().clone(), nd, g.seed).with_max_window(g.max_window))
}

fn sc_json(sc: &StructureConstantAlgebra) -> Result<Value, Error> {
    let gp = sc.gabriel_presentation()?;
    Ok(json!({
        "dim": sc.dim(),
        "vertices": sc.vertex_labels(),
        "basis": sc.labels(),
        "gabriel_arrows": gp.arrows,
        "dim_rad": gp.dim_rad,
        "dim_rad2": gp.dim_rad2,
    }))
}

fn field_of(g: &Global) -> Result<PrimeField, Error> {
    g.field_prime.map_or(Ok(PrimeField::default_field()), PrimeField::new)
}

fn cert_output(command: &str, inputs: Value, modulus: Option<u64>, cert: Certificate) -> Output {
    let summary = if cert.ok {
        format!("{}: OK ({} checks)", cert.name, cert.checks.len())
    } else {
        format!("{}: FAILED {:?}", cert.name, cert.failed_checks())
    };
    Output {
        command: command.into(),
        inputs,
        modulus,
        body: serde_json::to_value(&cert).expect("certificate serializes"),
        summary,
        cert: Some(cert),
        artifact: false,
    }
}

fn algebra_output(command: &str, inputs: Value, alg: &BoundQuiverAlgebra) -> Output {
    let spec = AlgebraSpec::from_algebra(alg);
    Output {
        command: command.into(),
        inputs,
        modulus: Some(alg.field().modulus()),
        body: serde_json::to_value(&spec).expect("algebra spec serializes"),
        summary: format!(
            "{} vertices, {} arrows, {} relations, dim {}",
            alg.quiver().num_vertices(),
            alg.quiver().num_arrows(),
            alg.relations().len(),
            alg.dim()
        ),
        cert: None,
        artifact: true,
    }
}

fn run(g: &Global, cmd: Command) -> Result<Output, Failure> {
    let f = |p: &Path| json!({ "file": p.display().to_string() });
    Ok(match cmd {
        Command::Algebra(AlgebraCmd::CheckSelfinjective { file }) => {
            let alg = load(g, &file)?;
            let si = is_self_injective(alg.sc(), g.seed)?;
            let labels = alg.quiver().vertices();
            let (perm, ws, cyclic) = if si.selfinjective {
                let nd = nakayama_data(alg.sc(), g.seed)?;
                let (_, ws, cyclic) = nu_orbit_partition(&nd);
                (
                    Some(nd.pi.iter().map(|&v| labels[v].clone()).collect::<Vec<_>>()),
                    Some(ws),
                    Some(cyclic),
                )
            } else {
                (None, None, None)
            };
            let body = json!({
                "selfinjective": si.selfinjective,
                "permutation": perm,
                "weakly_symmetric": ws,
                "nu_cyclic": cyclic,
                "reason": si.reason,
            });
            Output {
                command: "algebra check-selfinjective".into(),
                inputs: f(&file),
                modulus: Some(alg.field().modulus()),
                summary: format!("selfinjective = {}", si.selfinjective),
                body,
                cert: None,
                artifact: false,
            }
        }
        Command::Silting(SiltingCmd::Enumerate {
            file,
            nu_stable,
            complexes,
        }) => {
            let alg = load(g, &file)?;
            let ctx = context(g, &alg, nu_stable)?;
            let res = if nu_stable {
                enumerate_two_term_nu_stable(&ctx, g.cutoff)?
            } else {
                enumerate_two_term(&ctx, g.cutoff)?
            };
            if let Some(path) = &g.dot {
                std::fs::write(path, io::mutation_dot(&res)).map_err(Error::from)?;
            }
            Output {
                command: "silting enumerate".into(),
                inputs: json!({ "file": file.display().to_string(), "nu_stable": nu_stable }),
                modulus: Some(alg.field().modulus()),
                summary: format!(
                    "{} nodes, {} edges, {}",
                    res.nodes.len(),
                    res.edges.len(),
                    if res.complete {
                        "complete"
                    } else {
                        "partial (cutoff reached)"
                    }
                ),
                body: io::graph_json(&ctx, &res, complexes),
                cert: None,
                artifact: false,
            }
        }
        Command::Silting(SiltingCmd::Mutate {
            file,
            vertex,
            orbit,
            right,
        }) => {
            let alg = load(g, &file)?;
            let ctx = context(g, &alg, orbit)?;
            let v = alg
                .quiver()
                .vertex_index(&vertex)
                .ok_or_else(|| Error::Precondition(format!("unknown vertex {vertex:?}")))?;
            let start = SiltingObject::algebra(&ctx);
            let positions = if orbit {
                nu_orbits(&ctx, &start)?
                    .into_iter()
                    .find(|o| o.contains(&v))
                    .unwrap_or(vec![v])
            } else {
                vec![v]
            };
            let out = if right {
                right_mutation(&ctx, &start, &positions)?
            } else {
                left_mutation(&ctx, &start, &positions)?
            };
            let summands: Vec<Value> = out
                .summands
                .iter()
                .map(|&a| io::complex_json(ctx.sc(), &ctx.complex(a)))
                .collect();
            Output {
                command: "silting mutate".into(),
                inputs: json!({ "file": file.display().to_string(), "vertex": vertex, "orbit": orbit, "right": right }),
                modulus: Some(alg.field().modulus()),
                summary: format!(
                    "mutated at {} summand(s); tilting = {}",
                    positions.len(),
                    ctx.is_tilting(&out.summands)
                ),
                body: json!({
                    "positions": positions,
                    "summands": summands,
                    "g_vectors": out.key(&ctx),
                    "presilting": ctx.is_presilting(&out.summands),
                    "tilting": ctx.is_tilting(&out.summands),
                    "certificate": out.certificate,
                }),
                cert: None,
                artifact: false,
            }
        }
        Command::Silting(SiltingCmd::Hasse { file, nu_stable }) => {
            let alg = load(g, &file)?;
            let ctx = context(g, &alg, nu_stable)?;
            let res = if nu_stable {
                enumerate_two_term_nu_stable(&ctx, g.cutoff)?
            } else {
                enumerate_two_term(&ctx, g.cutoff)?
            };
            let h = hasse_quiver(&res)?;
            let dot = io::mutation_dot(&res);
            if let Some(path) = &g.dot {
                std::fs::write(path, &dot).map_err(Error::from)?;
            }
            Output {
                command: "silting hasse".into(),
                inputs: json!({ "file": file.display().to_string(), "nu_stable": nu_stable }),
                modulus: Some(alg.field().modulus()),
                summary: format!("Hasse quiver: {} nodes, {} arrows", h.node_count(), h.edge_count()),
                body: json!({ "graph": io::graph_json(&ctx, &res, false), "dot": dot }),
                cert: None,
                artifact: false,
            }
        }
        Command::Construct(c) => match c {
            ConstructCmd::Anm { n, m } => {
                let alg = build_anm(n, m, field_of(g)?)?;
                algebra_output("construct anm", json!({ "n": n, "m": m }), &alg)
            }
            ConstructCmd::Preprojective { diagram } => {
                let alg = build_preprojective(Dynkin::parse(&diagram)?, field_of(g)?)?;
                algebra_output("construct preprojective", json!({ "type": diagram }), &alg)
            }
            ConstructCmd::Nakayama { simples, loewy } => {
                let alg = build_nakayama_selfinjective(simples, loewy, field_of(g)?)?;
                algebra_output(
                    "construct nakayama",
                    json!({ "simples": simples, "loewy": loewy }),
                    &alg,
                )
            }
            ConstructCmd::Tilde { file } => {
                let base = load(g, &file)?;
                let t = tilde_construction(&base, g.seed)?;
                algebra_output("construct tilde", f(&file), &t.algebra)
            }
            ConstructCmd::Gamma { file } => {
                let base = load(g, &file)?;
                let gq = gamma_quotient_construction(&base, g.seed)?;
                Output {
                    command: "construct gamma".into(),
                    inputs: f(&file),
                    modulus: Some(base.field().modulus()),
                    summary: format!("dim Γ = {}, dim Γ/J'' = {}", gq.gamma_dim, gq.dim()),
                    body: json!({ "gamma_dim": gq.gamma_dim, "quotient": sc_json(&gq.sc)? }),
                    cert: None,
                    artifact: false,
                }
            }
            ConstructCmd::Skew { n, m } => {
                let p = g
                    .field_prime
                    .unwrap_or_else(|| smallest_prime_congruent_one(1_000_000, m as u64));
                let zeta = primitive_root_of_unity(p, m as u64)?.value;
                let s = skew_group_algebra(n, m, zeta, PrimeField::new(p)?)?;
                Output {
                    command: "construct skew".into(),
                    inputs: json!({ "n": n, "m": m }),
                    modulus: Some(p),
                    summary: format!("dim A_{n} * G_{m} = {} (zeta = {zeta})", s.sc.dim()),
                    body: json!({ "dim": s.sc.dim(), "zeta": zeta, "basis": s.sc.labels() }),
                    cert: None,
                    artifact: false,
                }
            }
        },
        Command::Verify(v) => match v {
            VerifyCmd::TildeIso { file } => {
                let base = load(g, &file)?;
                let t = tilde_construction(&base, g.seed)?;
                let gq = gamma_quotient_construction(&base, g.seed)?;
                let cert = verify_tilde_iso(&t, &gq)?;
                cert_output("verify tilde-iso", f(&file), Some(base.field().modulus()), cert)
            }
            VerifyCmd::SkewIso { n, m } => {
                let p = g
                    .field_prime
                    .unwrap_or_else(|| smallest_prime_congruent_one(1_000_000, m as u64));
                let cert = verify_anm_skew_iso(n, m, p)?;
                cert_output("verify skew-iso", json!({ "n": n, "m": m }), Some(p), cert)
            }
            VerifyCmd::DerivedClass { n, m, l } => {
                let p = field_of(g)?.modulus();
                let cert = verify_prop_derived_class(n, m, p, l, g.seed)?;
                cert_output("verify derived-class", json!({ "n": n, "m": m, "l": l }), Some(p), cert)
            }
        },
    })
}

/// A closed pipe downstream is not an error.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let started = Instant::now();
    let g = cli.global.clone();
    match run(&g, cli.command) {
        Ok(out) => {
            let manifest = RunManifest::new(&out.command, out.inputs, g.seed, out.modulus, started.elapsed());
            if g.json || out.artifact {
                let mut doc = out.body;
                if let Value::Object(map) = &mut doc {
                    map.insert(
                        "manifest".into(),
                        serde_json::to_value(&manifest).expect("manifest serializes"),
                    );
                }
                emit(&serde_json::to_string_pretty(&doc).expect("output serializes"));
            } else {
                emit(&out.summary);
            }
            match out.cert {
                Some(c) if !c.ok => ExitCode::from(3),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
