//! Quivers and path words.
//!
//! Paths compose left to right: the word `[a, b]` means "first `a`, then `b`",
//! so it requires `target(a) == source(b)`.

use std::collections::HashMap;

use petgraph::graph::DiGraph;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

/// A path in a quiver. The empty word is the trivial path at `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathWord {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl PathWord {
    pub fn trivial(v: usize) -> Self {
        Self {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// A linear combination of paths with integer coefficients, as written by a user.
pub type Relation = Vec<(i64, Vec<usize>)>;

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::Quiver(format!("duplicate vertex label {v:?}")));
            }
        }
        let mut arrow_index = HashMap::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (name, s, t) in arrows {
            let source = *vertex_index
                .get(&s)
                .ok_or_else(|| Error::Quiver(format!("arrow {name:?}: unknown source {s:?}")))?;
            let target = *vertex_index
                .get(&t)
                .ok_or_else(|| Error::Quiver(format!("arrow {name:?}: unknown target {t:?}")))?;
            if arrow_index.insert(name.clone(), out.len()).is_some() {
                return Err(Error::Quiver(format!("duplicate arrow name {name:?}")));
            }
            out.push(Arrow { name, source, target });
        }
        Ok(Self {
            vertices,
            arrows: out,
            vertex_index,
            arrow_index,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertex_index.get(label).copied()
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrow_index.get(name).copied()
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.source == v)
            .map(|(i, _)| i)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.target == v)
            .map(|(i, _)| i)
    }

    /// Builds a path from arrow indices, checking composability.
    pub fn path(&self, arrows: &[usize]) -> Result<PathWord> {
        let Some(&first) = arrows.first() else {
            return Err(Error::Quiver("empty arrow word has no anchor vertex".into()));
        };
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(Error::Quiver(format!(
                    "arrows {} and {} are not composable",
                    self.arrows[w[0]].name, self.arrows[w[1]].name
                )));
            }
        }
        Ok(PathWord {
            source: self.arrows[first].source,
            target: self.arrows[*arrows.last().unwrap()].target,
            arrows: arrows.to_vec(),
        })
    }

    pub fn path_by_names(&self, names: &[&str]) -> Result<PathWord> {
        let idx = names
            .iter()
            .map(|n| {
                self.arrow_index(n)
                    .ok_or_else(|| Error::Quiver(format!("unknown arrow {n:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.path(&idx)
    }

    pub fn path_names(&self, p: &PathWord) -> Vec<String> {
        p.arrows.iter().map(|&a| self.arrows[a].name.clone()).collect()
    }

    /// Human-readable label: arrow names joined, or `e_<vertex>` for trivial paths.
    pub fn path_label(&self, p: &PathWord) -> String {
        if p.arrows.is_empty() {
            format!("e_{}", self.vertices[p.source])
        } else {
            self.path_names(p).join("*")
        }
    }

    pub fn is_acyclic(&self) -> bool {
        let mut g = DiGraph::<(), ()>::new();
        let nodes: Vec<_> = (0..self.vertices.len()).map(|_| g.add_node(())).collect();
        for a in &self.arrows {
            g.add_edge(nodes[a.source], nodes[a.target], ());
        }
        petgraph::algo::toposort(&g, None).is_ok()
    }

    /// Arrow counts `counts[s][t]`.
    pub fn arrow_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut m = vec![vec![0; n]; n];
        for a in &self.arrows {
            m[a.source][a.target] += 1;
        }
        m
    }

    /// True if some ordered pair of vertices has at least two arrows.
    pub fn has_multiple_arrow(&self) -> bool {
        self.arrow_matrix().iter().flatten().any(|&c| c >= 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> String {
        x.to_string()
    }

    #[test]
    fn builds_and_composes() {
        let q = Quiver::new(
            vec![s("1"), s("2")],
            vec![(s("a"), s("1"), s("2")), (s("b"), s("2"), s("1"))],
        )
        .unwrap();
        let p = q.path_by_names(&["a", "b", "a"]).unwrap();
        assert_eq!((p.source, p.target, p.len()), (0, 1, 3));
        assert!(q.path_by_names(&["a", "a"]).is_err());
        assert!(!q.is_acyclic());
        assert_eq!(q.path_label(&PathWord::trivial(1)), "e_2");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Quiver::new(vec![s("1"), s("1")], vec![]).is_err());
        assert!(Quiver::new(vec![s("1")], vec![(s("a"), s("1"), s("9"))]).is_err());
        let q = Quiver::new(
            vec![s("1"), s("2")],
            vec![(s("a"), s("1"), s("2")), (s("c"), s("1"), s("2"))],
        )
        .unwrap();
        assert!(q.is_acyclic());
        assert!(q.has_multiple_arrow());
    }
}
