//! Algebra files, JSON/DOT export and run manifests.

use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{BoundQuiverAlgebra, DEFAULT_MAX_CAP};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::homotopy::{Context, ProjComplex};
use crate::mutation::MutationGraphResult;
use crate::quiver::{Quiver, Relation};
use crate::sc::StructureConstantAlgebra;
use crate::sparse::SparseVec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coefficient: i64,
    pub path: Vec<String>,
}

/// On-disk description of `KQ/I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field_modulus: Option<u64>,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
    /// Provenance of generated files; ignored when building.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest: Option<Value>,
}

impl AlgebraSpec {
    pub fn quiver(&self) -> Result<Quiver> {
        Quiver::new(
            self.vertices.clone(),
            self.arrows
                .iter()
                .map(|a| (a.name.clone(), a.source.clone(), a.target.clone()))
                .collect(),
        )
    }

    pub fn relations(&self, q: &Quiver) -> Result<Vec<Relation>> {
        self.relations
            .iter()
            .enumerate()
            .map(|(k, rel)| {
                rel.iter()
                    .map(|t| {
                        let word = t
                            .path
                            .iter()
                            .map(|name| {
                                q.arrow_index(name)
                                    .ok_or_else(|| Error::Quiver(format!("relation {k}: unknown arrow {name:?}")))
                            })
                            .collect::<Result<Vec<_>>>()?;
                        if word.is_empty() {
                            return Err(Error::Quiver(format!("relation {k}: empty path")));
                        }
                        q.path(&word)?;
                        Ok((t.coefficient, word))
                    })
                    .collect()
            })
            .collect()
    }

    /// Field from `--field-prime`, then the file, then the default.
    pub fn field(&self, override_prime: Option<u64>) -> Result<PrimeField> {
        match override_prime.or(self.field_modulus) {
            Some(p) => PrimeField::new(p),
            None => Ok(PrimeField::default_field()),
        }
    }

    pub fn build(&self, override_prime: Option<u64>) -> Result<BoundQuiverAlgebra> {
        let q = self.quiver()?;
        let rels = self.relations(&q)?;
        BoundQuiverAlgebra::build(q, rels, self.field(override_prime)?, DEFAULT_MAX_CAP)
    }

    pub fn from_algebra(alg: &BoundQuiverAlgebra) -> Self {
        let q = alg.quiver();
        Self {
            field_modulus: Some(alg.field().modulus()),
            vertices: q.vertices().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowSpec {
                    name: a.name.clone(),
                    source: q.vertices()[a.source].clone(),
                    target: q.vertices()[a.target].clone(),
                })
                .collect(),
            relations: alg
                .relations()
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|(c, w)| TermSpec {
                            coefficient: *c,
                            path: w.iter().map(|&a| q.arrow(a).name.clone()).collect(),
                        })
                        .collect()
                })
                .collect(),
            manifest: None,
        }
    }
}

pub fn parse_algebra_str(text: &str) -> Result<AlgebraSpec> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn parse_algebra_file(path: &Path) -> Result<AlgebraSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_algebra_str(&text)
}

pub fn emit_algebra(spec: &AlgebraSpec) -> String {
    serde_json::to_string_pretty(spec).expect("algebra spec serializes")
}

pub fn element_json(sc: &StructureConstantAlgebra, x: &SparseVec) -> Value {
    let f = sc.field();
    Value::Array(
        x.iter()
            .map(|&(b, c)| json!({ "coefficient": f.to_signed(c).to_string(), "basis": sc.labels()[b] }))
            .collect(),
    )
}

/// Terms as vertex labels, differentials as matrices of basis combinations.
pub fn complex_json(sc: &StructureConstantAlgebra, x: &ProjComplex) -> Value {
    let labels = sc.vertex_labels();
    let terms: Vec<Value> = x
        .degrees()
        .map(|d| {
            json!({
                "degree": d,
                "summands": x.term(d).iter().map(|&v| labels[v].clone()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let diffs: Vec<Value> = x
        .degrees()
        .filter_map(|d| x.diff(d).map(|m| (d, m)))
        .map(|(d, m)| {
            let rows: Vec<Value> = (0..m.rows)
                .map(|r| Value::Array((0..m.cols).map(|c| element_json(sc, m.get(r, c))).collect()))
                .collect();
            json!({ "from_degree": d, "matrix": rows })
        })
        .collect();
    json!({ "terms": terms, "differentials": diffs })
}

pub fn graph_json(ctx: &Context, result: &MutationGraphResult, with_complexes: bool) -> Value {
    let nodes: Vec<Value> = result
        .nodes
        .iter()
        .enumerate()
        .map(|(i, node)| {
            let mut v = json!({
                "id": i,
                "g_vectors": node.key,
                "certificate": node.object.certificate,
            });
            if with_complexes {
                v["summands"] = Value::Array(
                    node.object
                        .summands
                        .iter()
                        .map(|&a| complex_json(ctx.sc(), &ctx.complex(a)))
                        .collect(),
                );
            }
            v
        })
        .collect();
    json!({
        "nodes": nodes,
        "edges": result.edges,
        "node_count": result.nodes.len(),
        "edge_count": result.edges.len(),
        "complete": result.complete,
        "cutoff": result.cutoff,
        "blocked": result.blocked.iter().map(|(n, o)| json!({ "node": n, "positions": o })).collect::<Vec<_>>(),
    })
}

/// Directed graph in DOT, nodes in index order and edges sorted.
pub fn emit_dot(name: &str, labels: &[String], edges: &[(usize, usize)]) -> String {
    let mut out = format!("digraph {name} {{\n");
    for (i, l) in labels.iter().enumerate() {
        out.push_str(&format!("  n{i} [label=\"{}\"];\n", l.replace('"', "\\\"")));
    }
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    for (a, b) in sorted {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}

pub fn mutation_dot(result: &MutationGraphResult) -> String {
    let labels: Vec<String> = result
        .nodes
        .iter()
        .map(|n| {
            n.key
                .iter()
                .map(|g| format!("({})", g.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    let edges: Vec<(usize, usize)> = result.edges.iter().map(|e| (e.from, e.to)).collect();
    emit_dot("hasse", &labels, &edges)
}

#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Value,
    pub seed: u64,
    pub field_modulus: Option<u64>,
    pub versions: Value,
    pub wall_time_ms: u128,
}

impl RunManifest {
    pub fn new(command: &str, inputs: Value, seed: u64, field_modulus: Option<u64>, wall: Duration) -> Self {
        Self {
            command: command.into(),
            inputs,
            seed,
            field_modulus,
            versions: json!({ "siltkit": env!("CARGO_PKG_VERSION"), "format": 1 }),
            wall_time_ms: wall.as_millis(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const NAKAYAMA: &str = r#"{
  "field_modulus": 1000003,
  "vertices": ["1", "2"],
  "arrows": [
    {"name": "a", "source": "1", "target": "2"},
    {"name": "b", "source": "2", "target": "1"}
  ],
  "relations": [
    [{"coefficient": 1, "path": ["a", "b", "a", "b"]}],
    [{"coefficient": 1, "path": ["b", "a", "b", "a"]}]
  ]
}"#;

    #[test]
    fn round_trip() {
        let spec = parse_algebra_str(NAKAYAMA).unwrap();
        assert_eq!(spec.vertices.len(), 2);
        assert_eq!(spec.relations.len(), 2);
        let again = parse_algebra_str(&emit_algebra(&spec)).unwrap();
        assert_eq!(again, spec);
        let alg = spec.build(None).unwrap();
        assert_eq!(alg.dim(), 8);
        assert_eq!(AlgebraSpec::from_algebra(&alg), spec);
    }

    #[test]
    fn errors_carry_location() {
        let bad = NAKAYAMA.replace(
            "\"coefficient\": 1, \"path\": [\"b\"",
            "\"coefficient\": x, \"path\": [\"b\"",
        );
        match parse_algebra_str(&bad) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column > 0), (10, true)),
            other => panic!("{other:?}"),
        }
        let unknown = NAKAYAMA.replace("[\"a\", \"b\", \"a\", \"b\"]", "[\"a\", \"c\"]");
        assert!(matches!(
            parse_algebra_str(&unknown).unwrap().build(None),
            Err(Error::Quiver(_))
        ));
    }

    #[test]
    fn cyclic_quiver_without_relations_is_rejected() {
        let spec = parse_algebra_str(&NAKAYAMA.replace(
            "\"relations\": [\n    [{\"coefficient\": 1, \"path\": [\"a\", \"b\", \"a\", \"b\"]}],\n    [{\"coefficient\": 1, \"path\": [\"b\", \"a\", \"b\", \"a\"]}]\n  ]",
            "\"relations\": []",
        ))
        .unwrap();
        assert!(spec.relations.is_empty());
        assert!(spec.build(None).is_err());
        let hereditary = r#"{"vertices": ["1","2"], "arrows": [{"name": "a", "source": "1", "target": "2"}]}"#;
        assert_eq!(parse_algebra_str(hereditary).unwrap().build(None).unwrap().dim(), 3);
    }

    #[test]
    fn dot_is_deterministic() {
        let d = emit_dot("g", &["x".into(), "y".into()], &[(0, 1)]);
        assert_eq!(
            d,
            "digraph g {\n  n0 [label=\"x\"];\n  n1 [label=\"y\"];\n  n0 -> n1;\n}\n"
        );
        assert_eq!(emit_dot("g", &[], &[]), "digraph g {\n}\n");
    }
}
