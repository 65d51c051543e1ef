//! Test-side oracles, written without reference to the library's algorithms.
#![allow(dead_code)]

use std::sync::Arc;

use gpres::homology::HomologyGroup;
use gpres::{Graph, GraphProduct, GroupKind, VertexGroupSpec};
use rand::Rng;

/// A finitely generated abelian group, torsion split into prime powers and
/// sorted, so equal groups compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ab {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

fn prime_powers(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut q = 1;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Ab {
    pub fn new(rank: usize, orders: impl IntoIterator<Item = u64>) -> Ab {
        let mut torsion: Vec<u64> = orders.into_iter().flat_map(prime_powers).collect();
        torsion.sort_unstable();
        Ab { rank, torsion }
    }

    pub fn zero() -> Ab {
        Ab::new(0, [])
    }

    pub fn free(rank: usize) -> Ab {
        Ab::new(rank, [])
    }

    pub fn sum(&self, other: &Ab) -> Ab {
        Ab::new(self.rank + other.rank, self.torsion.iter().chain(&other.torsion).copied())
    }

    pub fn tensor(&self, other: &Ab) -> Ab {
        let mut orders = Vec::new();
        for &t in &self.torsion {
            orders.extend(std::iter::repeat_n(t, other.rank));
            orders.extend(other.torsion.iter().map(|&u| gcd(t, u)));
        }
        for &u in &other.torsion {
            orders.extend(std::iter::repeat_n(u, self.rank));
        }
        Ab::new(self.rank * other.rank, orders)
    }

    pub fn tor(&self, other: &Ab) -> Ab {
        let orders = self
            .torsion
            .iter()
            .flat_map(|&t| other.torsion.iter().map(move |&u| gcd(t, u)));
        Ab::new(0, orders)
    }

    pub fn from_homology(h: &HomologyGroup) -> Ab {
        Ab::new(h.betti, h.torsion.iter().map(|t| u64::try_from(t).expect("small torsion")))
    }
}

/// `H_k(G; Z)` for the catalog groups, from the textbook answers.
pub fn vertex_homology(kind: &GroupKind, k: usize) -> Ab {
    match (kind, k) {
        (_, 0) => Ab::free(1),
        (GroupKind::Trivial, _) => Ab::zero(),
        (GroupKind::InfiniteCyclic, 1) => Ab::free(1),
        (GroupKind::Free { rank }, 1) => Ab::free(*rank),
        (GroupKind::InfiniteCyclic | GroupKind::Free { .. }, _) => Ab::zero(),
        (GroupKind::Cyclic { n }, k) if k % 2 == 1 => Ab::new(0, [*n]),
        (GroupKind::Cyclic { .. }, _) => Ab::zero(),
        (other, _) => panic!("no oracle for {other}"),
    }
}

/// Künneth over `Z`: `H_n(X × Y)` from the homology of the factors in
/// degrees `0..=top`.
pub fn kunneth(hx: &[Ab], hy: &[Ab], top: usize) -> Vec<Ab> {
    (0..=top)
        .map(|n| {
            let mut acc = Ab::zero();
            for i in 0..=n {
                acc = acc.sum(&hx[i].tensor(&hy[n - i]));
            }
            for i in 0..n {
                acc = acc.sum(&hx[i].tor(&hy[n - 1 - i]));
            }
            acc
        })
        .collect()
}

/// Number of complete subgraphs on exactly `k` vertices, by brute force over
/// vertex subsets.
pub fn count_cliques(n: usize, edges: &[(usize, usize)], k: usize) -> usize {
    let adj = |a: usize, b: usize| edges.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a));
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .filter(|m| {
            let vs: Vec<usize> = (0..n).filter(|&v| m & (1 << v) != 0).collect();
            vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| adj(a, b)))
        })
        .count()
}

pub fn clique_number(n: usize, edges: &[(usize, usize)]) -> usize {
    (0..=n).rev().find(|&k| count_cliques(n, edges, k) > 0).unwrap_or(0)
}

/// Edge set of the labelled graph on `n` vertices encoded by `mask`, one bit
/// per pair `i < j` in lexicographic order.
pub fn edges_from_mask(n: usize, mask: u64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask & (1 << bit) != 0 {
                out.push((i, j));
            }
            bit += 1;
        }
    }
    out
}

pub fn pairs(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

pub fn random_edges(rng: &mut impl Rng, n: usize) -> Vec<(usize, usize)> {
    edges_from_mask(n, rng.gen_range(0..1u64 << pairs(n)))
}

pub fn product(n: usize, edges: &[(usize, usize)], kinds: &[GroupKind]) -> Arc<GraphProduct> {
    let graph = Graph::from_index_edges(n, edges).unwrap();
    let specs: Vec<VertexGroupSpec> = kinds
        .iter()
        .enumerate()
        .map(|(i, k)| VertexGroupSpec::new(format!("v{i}"), k.clone()))
        .collect();
    Arc::new(GraphProduct::new(graph, &specs).unwrap())
}

/// trivial, cyclic(2..4), infinite_cyclic, free(1..3).
pub fn random_kind(rng: &mut impl Rng) -> GroupKind {
    match rng.gen_range(0..8) {
        0 => GroupKind::Trivial,
        1..=3 => GroupKind::Cyclic { n: rng.gen_range(2..=4) },
        4 => GroupKind::InfiniteCyclic,
        _ => GroupKind::Free { rank: rng.gen_range(1..=3) },
    }
}

/// Every tuple of length `n` over `choices`.
pub fn tuples<T: Clone>(choices: &[T], n: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                choices.iter().map(move |c| {
                    let mut t = t.clone();
                    t.push(c.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// Problem-file JSON for the command-line front end.
pub fn problem_json(n: usize, edges: &[(usize, usize)], kinds: &[GroupKind]) -> String {
    let vertices: Vec<String> = kinds
        .iter()
        .enumerate()
        .map(|(i, k)| {
            let group = match k {
                GroupKind::Trivial => r#"{"kind":"trivial"}"#.to_string(),
                GroupKind::Cyclic { n } => format!(r#"{{"kind":"cyclic","n":{n}}}"#),
                GroupKind::InfiniteCyclic => r#"{"kind":"infinite_cyclic"}"#.to_string(),
                GroupKind::Free { rank } => format!(r#"{{"kind":"free","rank":{rank}}}"#),
                other => panic!("no JSON form for {other}"),
            };
            format!(r#"{{"name":"v{i}","group":{group}}}"#)
        })
        .collect();
    let edges: Vec<String> = edges.iter().map(|(a, b)| format!(r#"["v{a}","v{b}"]"#)).collect();
    assert_eq!(vertices.len(), n);
    format!(r#"{{"vertices":[{}],"edges":[{}]}}"#, vertices.join(","), edges.join(","))
}
