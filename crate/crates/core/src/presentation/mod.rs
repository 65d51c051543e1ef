//! Group presentations, the presentation of a graph product, and the Fox
//! calculus linking a presentation to the low dimensions of a resolution.

mod fox;
mod parse;

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::GroupKind;

pub use fox::{
    canonical_presentation, compare_presentation_complex, compare_with_theorem, dim3_census, fox_derivative,
    presentation_boundaries, Census, ComparisonReport, Dim3Basis, FreeGroupRing, PresLabel, PresentationComplex,
    PresentationMismatch,
};
pub use parse::{parse_presentation, parse_relator, ParsedPresentation};

/// A generator or its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: String,
    /// `1` or `-1`.
    pub exponent: i8,
}

impl Letter {
    pub fn new(generator: impl Into<String>, exponent: i8) -> Self {
        assert!(exponent == 1 || exponent == -1, "letter exponent must be ±1");
        Letter {
            generator: generator.into(),
            exponent,
        }
    }

    pub fn inverse(&self) -> Letter {
        Letter::new(self.generator.clone(), -self.exponent)
    }
}

/// A freely reduced word in a free group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    /// Freely reduces `letters`.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            match out.last() {
                Some(last) if last.generator == l.generator && last.exponent == -l.exponent => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        FreeWord { letters: out }
    }

    pub fn empty() -> Self {
        FreeWord::default()
    }

    pub fn generator(name: &str) -> Self {
        FreeWord::new([Letter::new(name, 1)])
    }

    pub fn power(name: &str, exp: i64) -> Self {
        let sign = if exp < 0 { -1 } else { 1 };
        FreeWord::new((0..exp.unsigned_abs()).map(|_| Letter::new(name, sign)))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        FreeWord::new(self.letters.iter().chain(&other.letters).cloned())
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord::new(self.letters.iter().rev().map(Letter::inverse))
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &FreeWord, b: &FreeWord) -> FreeWord {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = &self.letters[i];
            let mut run = 0i64;
            while i < self.letters.len() && self.letters[i] == *l {
                run += 1;
                i += 1;
            }
            let exp = run * l.exponent as i64;
            parts.push(if exp == 1 {
                l.generator.clone()
            } else {
                format!("{}^{exp}", l.generator)
            });
        }
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<FreeWord>,
}

impl Presentation {
    /// Relators must use declared generators; they are kept in the given
    /// order (each already freely reduced by construction).
    pub fn new(generators: Vec<String>, relators: Vec<FreeWord>) -> Result<Self> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.as_str()) {
                return Err(Error::input(format!("generator '{g}' declared twice")));
            }
        }
        for r in &relators {
            if let Some(l) = r.letters.iter().find(|l| !seen.contains(l.generator.as_str())) {
                return Err(Error::input(format!("relator {r} uses undeclared generator '{}'", l.generator)));
            }
        }
        Ok(Presentation { generators, relators })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    /// The catalog group this presentation visibly defines, if any:
    /// no relators gives a free group (infinite cyclic on one generator),
    /// a single relator `a^n` with `n ≥ 2` on one generator gives `Z/n`.
    pub fn recognize(&self) -> Option<GroupKind> {
        match (self.generators.len(), self.relators.len()) {
            (0, 0) => Some(GroupKind::Trivial),
            (1, 0) => Some(GroupKind::InfiniteCyclic),
            (k, 0) => Some(GroupKind::Free { rank: k }),
            (1, 1) => {
                let r = &self.relators[0];
                let n = r.len();
                (n >= 2 && r.letters.iter().all(|l| l.exponent == 1)).then_some(GroupKind::Cyclic { n: n as u64 })
            }
            _ => None,
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(ToString::to_string).collect();
        write!(f, "<{} | {}>", self.generators.join(", "), rels.join(", "))
    }
}

/// Where a relator of a graph-product presentation comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelatorOrigin {
    /// Relator `index` of the presentation at `vertex`.
    Vertex { vertex: usize, index: usize },
    /// `a b a⁻¹ b⁻¹` for generators `a` at a vertex `v` and `b` at an adjacent `w > v`
    /// (global generator indices).
    Commutator { a: usize, b: usize },
}

/// `⟨⋃ Y_v ; ⋃ S_v ∪ C⟩` together with the bookkeeping tying each generator
/// and relator back to its vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphProductPresentation {
    pub presentation: Presentation,
    /// `(vertex, index within that vertex's generators)` per generator.
    pub generator_origin: Vec<(usize, usize)>,
    pub relator_origin: Vec<RelatorOrigin>,
}

/// Generators are the disjoint union in vertex order; relators are the vertex
/// relators in vertex order followed by one commutator per pair of generators
/// at adjacent vertices `v < w`.
pub fn graph_product_presentation(graph: &Graph, vertex: &[Presentation]) -> Result<GraphProductPresentation> {
    if vertex.len() != graph.len() {
        return Err(Error::usage(format!(
            "{} vertex presentations for a graph on {} vertices",
            vertex.len(),
            graph.len()
        )));
    }
    let mut generators = Vec::new();
    let mut generator_origin = Vec::new();
    let mut owner = std::collections::HashMap::new();
    let mut first = vec![0usize; graph.len()];
    for (v, p) in vertex.iter().enumerate() {
        first[v] = generators.len();
        for (i, g) in p.generators.iter().enumerate() {
            if let Some(&w) = owner.get(g.as_str()) {
                return Err(Error::input(format!(
                    "generator '{g}' appears at both '{}' and '{}'",
                    graph.name(w),
                    graph.name(v)
                )));
            }
            owner.insert(g.as_str(), v);
            generators.push(g.clone());
            generator_origin.push((v, i));
        }
    }
    let mut relators = Vec::new();
    let mut relator_origin = Vec::new();
    for (v, p) in vertex.iter().enumerate() {
        for (i, r) in p.relators.iter().enumerate() {
            relators.push(r.clone());
            relator_origin.push(RelatorOrigin::Vertex { vertex: v, index: i });
        }
    }
    for (v, w) in graph.edges() {
        for i in 0..vertex[v].generators.len() {
            for j in 0..vertex[w].generators.len() {
                let (a, b) = (first[v] + i, first[w] + j);
                relators.push(FreeWord::commutator(
                    &FreeWord::generator(&generators[a]),
                    &FreeWord::generator(&generators[b]),
                ));
                relator_origin.push(RelatorOrigin::Commutator { a, b });
            }
        }
    }
    Ok(GraphProductPresentation {
        presentation: Presentation::new(generators, relators)?,
        generator_origin,
        relator_origin,
    })
}
