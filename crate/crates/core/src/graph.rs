//! Finite simple graphs with a fixed total order on the vertices.
//!
//! Vertex order is the order of the name list passed at construction. Every
//! subgraph produced here inherits that order, so "first vertex" and
//! "ascending clique" always refer to the ambient ordering.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<bool>>,
}

/// A nonempty complete subgraph, stored as ascending vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clique(Vec<usize>);

impl Clique {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn names<'g>(&self, graph: &'g Graph) -> Vec<&'g str> {
        self.0.iter().map(|&v| graph.name(v)).collect()
    }
}

/// The pieces used when peeling off a vertex `v`: `omega` is the star of
/// `v`, `delta` the graph without `v`, and `link = omega ∩ delta`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub vertex: String,
    pub omega: Graph,
    pub delta: Graph,
    pub link: Graph,
}

impl Graph {
    pub fn new<S: AsRef<str>>(names: &[S], edges: &[(S, S)]) -> Result<Self> {
        let mut graph = Graph::edgeless(names)?;
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = graph.require(a)?;
            let j = graph.require(b)?;
            if i == j {
                return Err(Error::input(format!("self-loop at vertex '{a}'")));
            }
            if graph.adj[i][j] {
                return Err(Error::input(format!("duplicate edge {a}-{b}")));
            }
            graph.adj[i][j] = true;
            graph.adj[j][i] = true;
        }
        Ok(graph)
    }

    pub fn edgeless<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut index = HashMap::with_capacity(names.len());
        let mut owned = Vec::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            let name = name.as_ref();
            if name.is_empty() {
                return Err(Error::input("empty vertex name"));
            }
            if index.insert(name.to_string(), i).is_some() {
                return Err(Error::input(format!("duplicate vertex '{name}'")));
            }
            owned.push(name.to_string());
        }
        let n = owned.len();
        Ok(Graph {
            names: owned,
            index,
            adj: vec![vec![false; n]; n],
        })
    }

    pub fn complete<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut g = Graph::edgeless(names)?;
        let n = g.len();
        for i in 0..n {
            for j in 0..n {
                g.adj[i][j] = i != j;
            }
        }
        Ok(g)
    }

    /// Vertices named `v0, v1, ...` with edges given by index pairs.
    pub fn from_index_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let named: Vec<(String, String)> = edges
            .iter()
            .map(|&(a, b)| (format!("v{a}"), format!("v{b}")))
            .collect();
        Graph::new(&names, &named)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub(crate) fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::input(format!("unknown vertex '{name}'")))
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a][b]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v]
            .iter()
            .enumerate()
            .filter_map(|(w, &e)| e.then_some(w))
    }

    /// Edges as ascending index pairs, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.adj[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn full_subgraph<S: AsRef<str>>(&self, subset: &[S]) -> Result<Graph> {
        let mut keep = vec![false; self.len()];
        for name in subset {
            keep[self.require(name.as_ref())?] = true;
        }
        let indices: Vec<usize> = (0..self.len()).filter(|&i| keep[i]).collect();
        Ok(self.full_subgraph_on(&indices))
    }

    /// Induced subgraph on the given indices, listed in ambient order.
    pub fn full_subgraph_on(&self, indices: &[usize]) -> Graph {
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let names: Vec<&str> = sorted.iter().map(|&i| self.name(i)).collect();
        let mut g = Graph::edgeless(&names).expect("names already validated");
        for (a, &i) in sorted.iter().enumerate() {
            for (b, &j) in sorted.iter().enumerate() {
                g.adj[a][b] = self.adj[i][j];
            }
        }
        g
    }

    /// For each vertex of `self`, its index in `ambient`, provided `self`
    /// is a full subgraph of `ambient` (same names, same induced edges).
    pub fn embedding_into(&self, ambient: &Graph) -> Result<Vec<usize>> {
        let map: Vec<usize> = self
            .names
            .iter()
            .map(|n| {
                ambient.index_of(n).ok_or_else(|| {
                    Error::usage(format!("vertex '{n}' is not in the ambient graph"))
                })
            })
            .collect::<Result<_>>()?;
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.adj[i][j] != ambient.adj[map[i]][map[j]] {
                    return Err(Error::usage(format!(
                        "not a full subgraph: adjacency of {}-{} differs",
                        self.names[i], self.names[j]
                    )));
                }
            }
        }
        Ok(map)
    }

    /// Graph on `self`'s vertices followed by `other`'s, with every cross
    /// pair joined. The graph of the direct product of the two products.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let names: Vec<&str> = self
            .names
            .iter()
            .chain(other.names.iter())
            .map(String::as_str)
            .collect();
        let mut g = Graph::edgeless(&names)?;
        let n = self.len();
        for i in 0..g.len() {
            for j in 0..g.len() {
                g.adj[i][j] = match (i < n, j < n) {
                    (true, true) => self.adj[i][j],
                    (false, false) => other.adj[i - n][j - n],
                    _ => true,
                };
            }
        }
        Ok(g)
    }

    /// All nonempty complete subgraphs, sorted by size and then
    /// lexicographically in vertex order.
    pub fn cliques(&self, max_size: Option<usize>) -> Vec<Clique> {
        let cap = max_size.unwrap_or(usize::MAX);
        let mut out = Vec::new();
        let mut current = Vec::new();
        for v in 0..self.len() {
            self.extend_clique(v, cap, &mut current, &mut out);
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.0.cmp(&b.0)));
        out
    }

    fn extend_clique(&self, v: usize, cap: usize, current: &mut Vec<usize>, out: &mut Vec<Clique>) {
        if current.len() >= cap {
            return;
        }
        current.push(v);
        out.push(Clique(current.clone()));
        for w in v + 1..self.len() {
            if current.iter().all(|&u| self.adj[u][w]) {
                self.extend_clique(w, cap, current, out);
            }
        }
        current.pop();
    }

    pub fn clique_number(&self) -> usize {
        self.cliques(None).last().map_or(0, Clique::len)
    }

    pub fn decompose(&self, v: &str) -> Result<Decomposition> {
        let vi = self.require(v)?;
        let mut star: Vec<usize> = self.neighbors(vi).collect();
        let link = self.full_subgraph_on(&star);
        star.push(vi);
        let omega = self.full_subgraph_on(&star);
        let rest: Vec<usize> = (0..self.len()).filter(|&i| i != vi).collect();
        let delta = self.full_subgraph_on(&rest);
        Ok(Decomposition {
            vertex: v.to_string(),
            omega,
            delta,
            link,
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .into_iter()
            .map(|(a, b)| format!("{}-{}", self.names[a], self.names[b]))
            .collect();
        f.debug_struct("Graph")
            .field("vertices", &self.names)
            .field("edges", &edges)
            .finish()
    }
}
