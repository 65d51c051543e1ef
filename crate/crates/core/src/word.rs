//! Graph products of catalog groups and their syllable normal form.
//!
//! A word is a list of syllables, each a non-identity element of one vertex
//! group. Syllables at adjacent vertices commute. A word is *reduced* when no
//! two syllables at the same vertex can be shuffled next to each other, and
//! two reduced words represent the same element exactly when one is a shuffle
//! of the other. The canonical representative kept here is the shuffle whose
//! vertex sequence is lexicographically least.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{Elem, GroupKind, VertexGroupSpec};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub vertex: usize,
    pub elem: Elem,
}

/// An element of a graph product in canonical normal form. The empty word
/// is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Syllable>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }
}

/// A graph with a word-capable group at every vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct GraphProduct {
    graph: Graph,
    groups: Vec<GroupKind>,
}

impl GraphProduct {
    /// `specs` may be listed in any order but must name every vertex once.
    pub fn new(graph: Graph, specs: &[VertexGroupSpec]) -> Result<Self> {
        let mut groups: Vec<Option<GroupKind>> = vec![None; graph.len()];
        for spec in specs {
            let i = graph.require(&spec.name)?;
            if groups[i].is_some() {
                return Err(Error::input(format!("vertex '{}' given two groups", spec.name)));
            }
            if !spec.kind.has_word_arithmetic() {
                return Err(Error::unsupported(format!(
                    "vertex '{}' carries a presented group, which has no normal form",
                    spec.name
                )));
            }
            groups[i] = Some(spec.kind.clone());
        }
        let groups = groups
            .into_iter()
            .enumerate()
            .map(|(i, g)| g.ok_or_else(|| Error::input(format!("no group for vertex '{}'", graph.name(i)))))
            .collect::<Result<_>>()?;
        Ok(GraphProduct { graph, groups })
    }

    pub fn single(spec: &VertexGroupSpec) -> Result<Self> {
        GraphProduct::new(Graph::edgeless(&[spec.name.as_str()])?, std::slice::from_ref(spec))
    }

    pub fn trivial_group() -> Self {
        GraphProduct {
            graph: Graph::edgeless::<&str>(&[]).expect("empty graph"),
            groups: Vec::new(),
        }
    }

    /// The free group on the given generator names: an edgeless product of
    /// infinite cyclic groups.
    pub fn free_on<S: AsRef<str>>(generators: &[S]) -> Result<Self> {
        let graph = Graph::edgeless(generators)?;
        let groups = vec![GroupKind::InfiniteCyclic; graph.len()];
        Ok(GraphProduct { graph, groups })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn group(&self, v: usize) -> &GroupKind {
        &self.groups[v]
    }

    pub fn specs(&self) -> Vec<VertexGroupSpec> {
        (0..self.graph.len())
            .map(|i| VertexGroupSpec::new(self.graph.name(i), self.groups[i].clone()))
            .collect()
    }

    pub fn spec_of(&self, name: &str) -> Result<VertexGroupSpec> {
        let i = self.graph.require(name)?;
        Ok(VertexGroupSpec::new(name, self.groups[i].clone()))
    }

    /// Restriction to a full subgraph.
    pub fn restrict(&self, sub: &Graph) -> Result<GraphProduct> {
        let map = sub.embedding_into(&self.graph)?;
        Ok(GraphProduct {
            graph: sub.clone(),
            groups: map.iter().map(|&i| self.groups[i].clone()).collect(),
        })
    }

    /// Direct product with a product on disjoint vertices; vertices of
    /// `self` come first in the order.
    pub fn direct_product(&self, other: &GraphProduct) -> Result<GraphProduct> {
        let graph = self.graph.join(&other.graph).map_err(|e| match e {
            Error::Input(m) => Error::usage(format!("factors share a vertex: {m}")),
            e => e,
        })?;
        let groups = self.groups.iter().chain(other.groups.iter()).cloned().collect();
        Ok(GraphProduct { graph, groups })
    }

    pub fn syllable(&self, vertex: usize, elem: Elem) -> Result<Word> {
        if vertex >= self.graph.len() {
            return Err(Error::input(format!("vertex index {vertex} out of range")));
        }
        let elem = self.groups[vertex].canonical(elem)?;
        Ok(self.normalize_unchecked(vec![Syllable { vertex, elem }]))
    }

    pub fn normalize(&self, raw: Vec<Syllable>) -> Result<Word> {
        let mut checked = Vec::with_capacity(raw.len());
        for s in raw {
            if s.vertex >= self.graph.len() {
                return Err(Error::input(format!("syllable at unknown vertex index {}", s.vertex)));
            }
            let elem = self.groups[s.vertex].canonical(s.elem)?;
            checked.push(Syllable { vertex: s.vertex, elem });
        }
        Ok(self.normalize_unchecked(checked))
    }

    /// Normal form of syllables whose payloads are already canonical.
    pub(crate) fn normalize_unchecked(&self, mut syl: Vec<Syllable>) -> Word {
        syl.retain(|s| !self.groups[s.vertex].is_identity(&s.elem));
        // Merge same-vertex pairs separated only by commuting syllables.
        let mut i = 0;
        while i < syl.len() {
            let v = syl[i].vertex;
            let mut j = i + 1;
            while j < syl.len() && self.graph.adjacent(v, syl[j].vertex) {
                j += 1;
            }
            if j < syl.len() && syl[j].vertex == v {
                let merged = self.groups[v].multiply(&syl[i].elem, &syl[j].elem);
                syl.remove(j);
                if self.groups[v].is_identity(&merged) {
                    syl.remove(i);
                    // A cancellation can expose a merge further left.
                    i = 0;
                } else {
                    syl[i].elem = merged;
                }
                continue;
            }
            i += 1;
        }
        Word(self.least_shuffle(syl))
    }

    /// Lexicographically least shuffle of a reduced syllable list: repeatedly
    /// emit the smallest vertex among syllables that commute with everything
    /// still in front of them.
    fn least_shuffle(&self, mut syl: Vec<Syllable>) -> Vec<Syllable> {
        let mut out = Vec::with_capacity(syl.len());
        while !syl.is_empty() {
            let mut best: Option<usize> = None;
            for p in 0..syl.len() {
                let v = syl[p].vertex;
                if best.is_some_and(|b| syl[b].vertex <= v) {
                    continue;
                }
                if syl[..p].iter().all(|s| self.graph.adjacent(s.vertex, v)) {
                    best = Some(p);
                }
            }
            out.push(syl.remove(best.expect("the first syllable is always movable")));
        }
        out
    }

    pub fn multiply(&self, a: &Word, b: &Word) -> Word {
        if a.is_identity() {
            return b.clone();
        }
        if b.is_identity() {
            return a.clone();
        }
        let mut syl = a.0.clone();
        syl.extend(b.0.iter().cloned());
        self.normalize_unchecked(syl)
    }

    pub fn inverse(&self, w: &Word) -> Word {
        let syl = w
            .0
            .iter()
            .rev()
            .map(|s| Syllable {
                vertex: s.vertex,
                elem: self.groups[s.vertex].inverse(&s.elem),
            })
            .collect();
        self.normalize_unchecked(syl)
    }

    pub fn pow(&self, w: &Word, exp: i64) -> Word {
        let base = if exp < 0 { self.inverse(w) } else { w.clone() };
        let mut acc = Word::identity();
        for _ in 0..exp.unsigned_abs() {
            acc = self.multiply(&acc, &base);
        }
        acc
    }

    pub fn equal(&self, a: &Word, b: &Word) -> bool {
        a == b
    }

    /// Renders a word as space-separated `vertex:element` syllables, `1`
    /// for the identity.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_identity() {
            return "1".to_string();
        }
        w.0.iter()
            .map(|s| format!("{}:{}", self.graph.name(s.vertex), self.groups[s.vertex].format_elem(&s.elem)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Inverse of [`GraphProduct::format_word`]; also accepts unreduced input
    /// such as `v:t w:x1 v:t^-1`.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Word::identity());
        }
        let mut raw = Vec::new();
        for token in text.split_whitespace() {
            let (vertex, elem) = token
                .split_once(':')
                .ok_or_else(|| Error::input(format!("syllable '{token}' lacks 'vertex:'")))?;
            let v = self.graph.require(vertex)?;
            let elem = self.groups[v].parse_elem(elem)?;
            raw.push(Syllable { vertex: v, elem });
        }
        Ok(self.normalize_unchecked(raw))
    }

    /// Embedding of `sub` (a product over a full subgraph) into `self`.
    pub fn embedding_of(&self, sub: &GraphProduct) -> Result<Embedding> {
        let map = sub.graph.embedding_into(&self.graph)?;
        for (i, &j) in map.iter().enumerate() {
            if sub.groups[i] != self.groups[j] {
                return Err(Error::usage(format!(
                    "vertex '{}' carries {} in the subgroup but {} in the ambient product",
                    sub.graph.name(i),
                    sub.groups[i],
                    self.groups[j]
                )));
            }
        }
        Ok(Embedding { map })
    }

    pub fn embed(&self, sub: &GraphProduct, w: &Word) -> Result<Word> {
        let e = self.embedding_of(sub)?;
        if let Some(s) = w.0.iter().find(|s| s.vertex >= sub.graph.len()) {
            return Err(Error::input(format!("vertex index {} not in the subgraph", s.vertex)));
        }
        Ok(e.apply(self, w))
    }
}

impl fmt::Debug for GraphProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let groups: Vec<String> = self.groups.iter().map(|g| g.to_string()).collect();
        f.debug_struct("GraphProduct")
            .field("graph", &self.graph)
            .field("groups", &groups)
            .finish()
    }
}

/// Vertex re-indexing from a full subgraph product into an ambient one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    map: Vec<usize>,
}

impl Embedding {
    pub fn apply(&self, ambient: &GraphProduct, w: &Word) -> Word {
        let syl = w
            .0
            .iter()
            .map(|s| Syllable {
                vertex: self.map[s.vertex],
                elem: s.elem.clone(),
            })
            .collect();
        ambient.normalize_unchecked(syl)
    }

    pub fn vertex(&self, v: usize) -> usize {
        self.map[v]
    }
}

pub(crate) fn same_group(a: &Arc<GraphProduct>, b: &Arc<GraphProduct>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn product(edges: &[(&str, &str)], kinds: &[GroupKind]) -> GraphProduct {
        let names: Vec<String> = (0..kinds.len()).map(|i| ["a", "b", "c", "d", "e", "f"][i].to_string()).collect();
        let edges: Vec<(String, String)> = edges.iter().map(|(x, y)| (x.to_string(), y.to_string())).collect();
        let g = Graph::new(&names, &edges).unwrap();
        let specs: Vec<VertexGroupSpec> =
            names.iter().zip(kinds).map(|(n, k)| VertexGroupSpec::new(n.clone(), k.clone())).collect();
        GraphProduct::new(g, &specs).unwrap()
    }

    fn syl(v: usize, e: i64) -> Syllable {
        Syllable { vertex: v, elem: Elem::Power(e) }
    }

    #[test]
    fn adjacent_syllables_sort() {
        let gp = product(&[("a", "b")], &[GroupKind::InfiniteCyclic, GroupKind::InfiniteCyclic]);
        let w = gp.normalize(vec![syl(1, 1), syl(0, 1)]).unwrap();
        assert_eq!(w.syllables(), &[syl(0, 1), syl(1, 1)]);
    }

    #[test]
    fn cancellation_and_non_adjacent_order() {
        let gp = product(&[], &[GroupKind::InfiniteCyclic, GroupKind::InfiniteCyclic]);
        assert!(gp.normalize(vec![syl(0, 1), syl(0, -1)]).unwrap().is_identity());
        let w = gp.normalize(vec![syl(1, 1), syl(0, 1)]).unwrap();
        assert_eq!(w.syllables(), &[syl(1, 1), syl(0, 1)]);
    }

    #[test]
    fn raag_edge_multiplication() {
        let gp = product(&[("a", "b")], &[GroupKind::InfiniteCyclic, GroupKind::InfiniteCyclic]);
        let ab = gp.normalize(vec![syl(0, 1), syl(1, 1)]).unwrap();
        let a = gp.normalize(vec![syl(0, 1)]).unwrap();
        assert_eq!(gp.multiply(&ab, &a).syllables(), &[syl(0, 2), syl(1, 1)]);
        assert_eq!(gp.multiply(&ab, &Word::identity()), ab);
        assert!(gp.multiply(&ab, &gp.inverse(&ab)).is_identity());
    }

    #[test]
    fn word_equality_respects_edges() {
        let kinds = [GroupKind::InfiniteCyclic, GroupKind::InfiniteCyclic];
        let joined = product(&[("a", "b")], &kinds);
        let apart = product(&[], &kinds);
        for (gp, expect) in [(joined, true), (apart, false)] {
            let x = gp.normalize(vec![syl(0, 1), syl(1, 1)]).unwrap();
            let y = gp.normalize(vec![syl(1, 1), syl(0, 1)]).unwrap();
            assert_eq!(gp.equal(&x, &y), expect);
        }
    }

    #[test]
    fn lex_least_needs_more_than_adjacent_swaps() {
        // a < b < c, b commutes with both, a and c do not commute. "c a b"
        // admits no descending adjacent swap, yet "b c a" is a smaller shuffle.
        let gp = product(&[("a", "b"), ("b", "c")], &vec![GroupKind::InfiniteCyclic; 3]);
        let w = gp.normalize(vec![syl(2, 1), syl(0, 1), syl(1, 1)]).unwrap();
        assert_eq!(w.syllables(), &[syl(1, 1), syl(2, 1), syl(0, 1)]);
    }

    #[test]
    fn merge_through_commuting_syllables() {
        let gp = product(
            &[("a", "b")],
            &[GroupKind::cyclic(3).unwrap(), GroupKind::InfiniteCyclic, GroupKind::InfiniteCyclic],
        );
        // a b a -> a^2 b ; a c a stays (c not adjacent to a)
        let w = gp.normalize(vec![syl(0, 1), syl(1, 1), syl(0, 1)]).unwrap();
        assert_eq!(w.syllables(), &[syl(0, 2), syl(1, 1)]);
        let w = gp.normalize(vec![syl(0, 1), syl(2, 1), syl(0, 1)]).unwrap();
        assert_eq!(w.len(), 3);
        // a c c^-1 a^2 -> identity (cancel exposes a merge)
        let w = gp.normalize(vec![syl(0, 1), syl(2, 1), syl(2, -1), syl(0, 2)]).unwrap();
        assert!(w.is_identity());
    }

    #[test]
    fn parse_and_format() {
        let gp = product(&[("a", "b")], &[GroupKind::cyclic(5).unwrap(), GroupKind::free(2).unwrap()]);
        let w = gp.parse_word("b:x1*x2^-1 a:t^3").unwrap();
        assert_eq!(gp.format_word(&w), "a:t^3 b:x1*x2^-1");
        assert_eq!(gp.parse_word(&gp.format_word(&w)).unwrap(), w);
        assert!(gp.parse_word("z:t").is_err());
        assert!(gp.parse_word("a:x1").is_err());
        assert_eq!(gp.format_word(&Word::identity()), "1");
    }

    #[test]
    fn embedding_keeps_words() {
        let gp = product(&[("a", "b"), ("b", "c")], &vec![GroupKind::InfiniteCyclic; 3]);
        let sub = gp.restrict(&gp.graph().full_subgraph(&["a", "c"]).unwrap()).unwrap();
        assert!(gp.embed(&sub, &Word::identity()).unwrap().is_identity());
        let w = sub.normalize(vec![syl(1, 2)]).unwrap();
        assert_eq!(gp.embed(&sub, &w).unwrap().syllables(), &[syl(2, 2)]);
        // Non-full subgraph is rejected.
        let bogus = GraphProduct::new(
            Graph::complete(&["a", "c"]).unwrap(),
            &[VertexGroupSpec::new("a", GroupKind::InfiniteCyclic), VertexGroupSpec::new("c", GroupKind::InfiniteCyclic)],
        )
        .unwrap();
        assert!(gp.embedding_of(&bogus).is_err());
    }

    #[test]
    fn presented_groups_rejected() {
        let p = crate::presentation::Presentation::new(vec!["a".into()], vec![]).unwrap();
        let spec = VertexGroupSpec::new("v", GroupKind::Presented(p));
        assert!(matches!(GraphProduct::single(&spec), Err(Error::Unsupported(_))));
    }

    fn arb_setup() -> impl Strategy<Value = (GraphProduct, Vec<Syllable>)> {
        (2usize..=4).prop_flat_map(|n| {
            let edges = proptest::collection::vec(any::<bool>(), n * (n - 1) / 2);
            let orders = proptest::collection::vec(2u64..=4, n);
            let raw = proptest::collection::vec((0..n, -3i64..=3), 0..8);
            (edges, orders, raw).prop_map(move |(bits, orders, raw)| {
                let mut e = Vec::new();
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if bits[k] {
                            e.push((i, j));
                        }
                        k += 1;
                    }
                }
                let g = Graph::from_index_edges(n, &e).unwrap();
                let specs: Vec<VertexGroupSpec> = (0..n)
                    .map(|i| VertexGroupSpec::new(format!("v{i}"), GroupKind::cyclic(orders[i]).unwrap()))
                    .collect();
                let gp = GraphProduct::new(g, &specs).unwrap();
                let raw = raw.into_iter().map(|(v, e)| syl(v, e)).collect();
                (gp, raw)
            })
        })
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent((gp, raw) in arb_setup()) {
            let w = gp.normalize(raw).unwrap();
            prop_assert_eq!(gp.normalize(w.syllables().to_vec()).unwrap(), w);
        }

        #[test]
        fn legal_shuffles_are_equal((gp, raw) in arb_setup(), swaps in proptest::collection::vec(0usize..8, 0..20)) {
            let w = gp.normalize(raw).unwrap();
            let mut s = w.syllables().to_vec();
            for p in swaps {
                if p + 1 < s.len() && gp.graph().adjacent(s[p].vertex, s[p + 1].vertex) {
                    s.swap(p, p + 1);
                }
            }
            prop_assert_eq!(gp.normalize(s).unwrap(), w);
        }

        #[test]
        fn normal_form_is_reduced((gp, raw) in arb_setup()) {
            let w = gp.normalize(raw).unwrap();
            let s = w.syllables();
            for i in 0..s.len() {
                for j in i + 1..s.len() {
                    if s[j].vertex == s[i].vertex {
                        let between_commute = s[i + 1..j].iter().all(|t| gp.graph().adjacent(t.vertex, s[i].vertex));
                        prop_assert!(!between_commute);
                    }
                }
            }
        }

        #[test]
        fn multiplication_is_associative((gp, raw) in arb_setup(), cut in 0usize..8, cut2 in 0usize..8) {
            let n = raw.len();
            let (c1, c2) = (cut.min(n), cut2.min(n));
            let (c1, c2) = (c1.min(c2), c1.max(c2));
            let x = gp.normalize(raw[..c1].to_vec()).unwrap();
            let y = gp.normalize(raw[c1..c2].to_vec()).unwrap();
            let z = gp.normalize(raw[c2..].to_vec()).unwrap();
            let left = gp.multiply(&gp.multiply(&x, &y), &z);
            let right = gp.multiply(&x, &gp.multiply(&y, &z));
            prop_assert_eq!(&left, &right);
            prop_assert_eq!(left, gp.normalize(raw).unwrap());
        }
    }
}
