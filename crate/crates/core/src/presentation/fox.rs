//! Fox calculus and the comparison between the resolution read off a
//! graph-product presentation and the clique-sum resolution in dimensions
//! one to three.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{graph_product_presentation, FreeWord, GraphProductPresentation, Presentation, RelatorOrigin};
use crate::error::{Error, Result};
use crate::group::{Elem, GroupKind};
use crate::matrix::GroupRingMatrix;
use crate::resolution::{clique_sum_resolution, standard_resolution, BasisLabel, ChainComplex};
use crate::ring::{CoefficientRing, GroupRingElement};
use crate::word::{GraphProduct, Syllable, Word};

/// The integral (or modular) group ring of the free group on named
/// generators.
#[derive(Clone, Debug)]
pub struct FreeGroupRing {
    group: Arc<GraphProduct>,
    index: HashMap<String, usize>,
    ring: CoefficientRing,
}

impl FreeGroupRing {
    pub fn new(generators: &[String], ring: CoefficientRing) -> Result<Self> {
        let group = Arc::new(GraphProduct::free_on(generators)?);
        let index = generators.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        Ok(FreeGroupRing { group, index, ring })
    }

    pub fn group(&self) -> &Arc<GraphProduct> {
        &self.group
    }

    pub fn ring(&self) -> &CoefficientRing {
        &self.ring
    }

    pub fn word(&self, w: &FreeWord) -> Result<Word> {
        let syl = w
            .letters()
            .iter()
            .map(|l| {
                let vertex = *self
                    .index
                    .get(&l.generator)
                    .ok_or_else(|| Error::input(format!("'{}' is not a generator", l.generator)))?;
                Ok(Syllable {
                    vertex,
                    elem: Elem::Power(l.exponent as i64),
                })
            })
            .collect::<Result<_>>()?;
        self.group.normalize(syl)
    }

    pub fn element(&self, w: &FreeWord) -> Result<GroupRingElement> {
        Ok(GroupRingElement::monomial(self.group.clone(), self.ring.clone(), self.word(w)?, 1))
    }
}

/// `∂w/∂y`, from `∂y/∂y = 1`, `∂(y⁻¹)/∂y = -y⁻¹` and
/// `∂(uv)/∂y = ∂u/∂y + u ∂v/∂y`.
pub fn fox_derivative(ring: &FreeGroupRing, w: &FreeWord, y: &str) -> Result<GroupRingElement> {
    if !ring.index.contains_key(y) {
        return Err(Error::input(format!("'{y}' is not a generator")));
    }
    let mut out = GroupRingElement::zero(ring.group.clone(), ring.ring.clone());
    let mut prefix = Vec::new();
    for l in w.letters() {
        if l.generator == y {
            if l.exponent == 1 {
                out.add_term(ring.word(&FreeWord::new(prefix.iter().cloned()))?, BigInt::from(1));
            } else {
                let mut with = prefix.clone();
                with.push(l.clone());
                out.add_term(ring.word(&FreeWord::new(with))?, BigInt::from(-1));
            }
        }
        prefix.push(l.clone());
    }
    Ok(out)
}

/// Bases of the presentation complex: dimension 0 is the group ring,
/// dimension 1 the generators, dimension 2 the relators and dimension 3 the
/// census below.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PresLabel {
    Base,
    Generator(usize),
    Relator(usize),
    Dim3(Dim3Basis),
}

/// The four kinds of dimension-3 generators. Generator and relator fields
/// are global indices into the graph-product presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Dim3Basis {
    /// A dimension-3 generator of a vertex resolution.
    Vertex { vertex: usize, index: usize },
    /// `a ⊗ s` with `a ∈ Y_v`, `s ∈ S_w`, `v < w` adjacent.
    GenRel { generator: usize, relator: usize },
    /// `s ⊗ b` with `s ∈ S_v`, `b ∈ Y_w`, `v < w` adjacent.
    RelGen { relator: usize, generator: usize },
    /// `a ⊗ b ⊗ c` over a triangle `u < v < w`.
    Gen3 { a: usize, b: usize, c: usize },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Census {
    pub vertex: usize,
    pub gen_rel: usize,
    pub rel_gen: usize,
    pub gen3: usize,
}

impl Census {
    pub fn total(&self) -> usize {
        self.vertex + self.gen_rel + self.rel_gen + self.gen3
    }
}

/// The resolution of `G(Γ)` through dimension 3 built from the graph-product
/// presentation: `d_1` from generators, `d_2` from the Fox Jacobian of the
/// relators evaluated in `R G(Γ)`, and `d_3` from the dimension-3 census.
#[derive(Clone, Debug)]
pub struct PresentationComplex {
    pub group: Arc<GraphProduct>,
    pub ring: CoefficientRing,
    pub presentation: GraphProductPresentation,
    /// Image of each generator in `G(Γ)`.
    pub images: Vec<Word>,
    pub d1: GroupRingMatrix<PresLabel>,
    pub d2: GroupRingMatrix<PresLabel>,
    pub d3: GroupRingMatrix<PresLabel>,
    pub census: Census,
}

/// The standard presentation of a catalog group at vertex `v`: `⟨v.t |⟩`,
/// `⟨v.t | v.t^n⟩`, `⟨v.x1, …, v.xk |⟩`, or the empty presentation.
pub fn canonical_presentation(vertex: &str, kind: &GroupKind) -> Result<Presentation> {
    let t = format!("{vertex}.t");
    match kind {
        GroupKind::Trivial => Presentation::new(Vec::new(), Vec::new()),
        GroupKind::InfiniteCyclic => Presentation::new(vec![t], Vec::new()),
        GroupKind::Cyclic { n } => Presentation::new(vec![t.clone()], vec![FreeWord::power(&t, *n as i64)]),
        GroupKind::Free { rank } => Presentation::new((1..=*rank).map(|i| format!("{vertex}.x{i}")).collect(), Vec::new()),
        GroupKind::Presented(p) => Ok(p.clone()),
        GroupKind::FiniteTable(_) => Err(Error::unsupported(format!(
            "vertex '{vertex}' is a finite table; no presentation is tied to its bar resolution"
        ))),
    }
}

/// Image in the vertex group of each generator of a presentation the
/// vertex kind is recognized from.
fn vertex_images(name: &str, kind: &GroupKind, p: &Presentation) -> Result<Vec<Elem>> {
    // Free of rank one and infinite cyclic are the same group.
    let same = |k: &GroupKind| {
        k == kind || matches!((k, kind), (GroupKind::InfiniteCyclic, GroupKind::Free { rank: 1 }))
    };
    match p.recognize() {
        Some(k) if same(&k) => {}
        Some(k) => {
            return Err(Error::input(format!(
                "presentation {p} at '{name}' defines {k}, but the vertex carries {kind}"
            )))
        }
        None => {
            return Err(Error::unsupported(format!(
                "presentation {p} at '{name}' is not a recognizable catalog group"
            )))
        }
    }
    Ok(kind.generators())
}

/// `d_1` and `d_2` of the presentation complex. `images[g]` is the image of
/// generator `g` in `G(Γ)`.
pub fn presentation_boundaries(
    group: &Arc<GraphProduct>,
    gpp: &GraphProductPresentation,
    images: &[Word],
    ring: &CoefficientRing,
) -> Result<(GroupRingMatrix<PresLabel>, GroupRingMatrix<PresLabel>)> {
    let p = &gpp.presentation;
    let gens: Vec<PresLabel> = (0..p.generators().len()).map(PresLabel::Generator).collect();
    let rels: Vec<PresLabel> = (0..p.relators().len()).map(PresLabel::Relator).collect();
    let mut d1 = GroupRingMatrix::zeros(group.clone(), ring.clone(), gens.clone(), vec![PresLabel::Base]);
    for (g, w) in images.iter().enumerate() {
        d1.set(g, 0, GroupRingElement::minus_one(group.clone(), ring.clone(), w.clone()))?;
    }
    let free = FreeGroupRing::new(p.generators(), ring.clone())?;
    let eval = |w: &Word| -> Word {
        w.syllables().iter().fold(Word::identity(), |acc, s| {
            let k = match s.elem {
                Elem::Power(k) => k,
                _ => unreachable!("free group syllables are powers"),
            };
            group.multiply(&acc, &group.pow(&images[s.vertex], k))
        })
    };
    let mut d2 = GroupRingMatrix::zeros(group.clone(), ring.clone(), rels, gens);
    for (r, rel) in p.relators().iter().enumerate() {
        let mentioned: HashSet<&str> = rel.letters().iter().map(|l| l.generator.as_str()).collect();
        for (g, name) in p.generators().iter().enumerate() {
            if mentioned.contains(name.as_str()) {
                let x = fox_derivative(&free, rel, name)?.map_group(group.clone(), eval);
                d2.set(r, g, x)?;
            }
        }
    }
    Ok((d1, d2))
}

/// Enumerates the dimension-3 generators and their boundaries in the
/// presentation complex. Vertex generators take their boundary from the
/// vertex resolution, whose dimension-2 basis is the vertex's relator list;
/// the mixed kinds use `d(x ⊗ y) = d(x) ⊗ y + (-1)^{|x|} x ⊗ d(y)`, with a
/// pair of generators `a ⊗ b` read as the commutator relator of `a` and `b`.
pub fn dim3_census(
    group: &Arc<GraphProduct>,
    gpp: &GraphProductPresentation,
    images: &[Word],
    d2: &GroupRingMatrix<PresLabel>,
    ring: &CoefficientRing,
) -> Result<(GroupRingMatrix<PresLabel>, Census)> {
    let graph = group.graph();
    let n = graph.len();
    let mut gens_at = vec![Vec::new(); n];
    for (g, &(v, _)) in gpp.generator_origin.iter().enumerate() {
        gens_at[v].push(g);
    }
    let mut rels_at = vec![Vec::new(); n];
    let mut commutator = HashMap::new();
    for (r, o) in gpp.relator_origin.iter().enumerate() {
        match *o {
            RelatorOrigin::Vertex { vertex, .. } => rels_at[vertex].push(r),
            RelatorOrigin::Commutator { a, b } => {
                commutator.insert((a, b), r);
            }
        }
    }
    let comm = |a: usize, b: usize| -> PresLabel { PresLabel::Relator(commutator[&(a, b)]) };
    let minus_one = |g: usize| GroupRingElement::minus_one(group.clone(), ring.clone(), images[g].clone());
    let neg = BigInt::from(-1);

    let mut rows: Vec<(PresLabel, Vec<(PresLabel, GroupRingElement)>)> = Vec::new();
    let mut census = Census::default();

    for v in 0..n {
        let spec = group.spec_of(graph.name(v))?;
        let res = standard_resolution(&spec, 3, ring)?;
        if res.rank(3) == 0 {
            continue;
        }
        if res.rank(2) != rels_at[v].len() {
            return Err(Error::unsupported(format!(
                "vertex '{}' has {} relators but its resolution has rank {} in dimension 2",
                graph.name(v),
                rels_at[v].len(),
                res.rank(2)
            )));
        }
        let embedding = group.embedding_of(res.group())?;
        let d3 = res.boundary(3);
        for i in 0..res.rank(3) {
            let row = d3
                .row(i)
                .map(|(c, x)| {
                    let x = x.map_group(group.clone(), |w| embedding.apply(group, w));
                    (PresLabel::Relator(rels_at[v][c]), x)
                })
                .collect();
            rows.push((PresLabel::Dim3(Dim3Basis::Vertex { vertex: v, index: i }), row));
            census.vertex += 1;
        }
    }
    for (v, w) in graph.edges() {
        for &a in &gens_at[v] {
            for &s in &rels_at[w] {
                let mut row = vec![(PresLabel::Relator(s), minus_one(a))];
                for (y, x) in d2.row(s) {
                    row.push((comm(a, y), x.scale(&neg)));
                }
                rows.push((PresLabel::Dim3(Dim3Basis::GenRel { generator: a, relator: s }), row));
                census.gen_rel += 1;
            }
        }
        for &s in &rels_at[v] {
            for &b in &gens_at[w] {
                let mut row: Vec<_> = d2.row(s).map(|(y, x)| (comm(y, b), x.clone())).collect();
                row.push((PresLabel::Relator(s), minus_one(b)));
                rows.push((PresLabel::Dim3(Dim3Basis::RelGen { relator: s, generator: b }), row));
                census.rel_gen += 1;
            }
        }
    }
    for clique in graph.cliques(Some(3)).iter().filter(|c| c.len() == 3) {
        let [u, v, w] = [clique.vertices()[0], clique.vertices()[1], clique.vertices()[2]];
        for &a in &gens_at[u] {
            for &b in &gens_at[v] {
                for &c in &gens_at[w] {
                    let row = vec![
                        (comm(b, c), minus_one(a)),
                        (comm(a, c), minus_one(b).scale(&neg)),
                        (comm(a, b), minus_one(c)),
                    ];
                    rows.push((PresLabel::Dim3(Dim3Basis::Gen3 { a, b, c }), row));
                    census.gen3 += 1;
                }
            }
        }
    }

    let labels: Vec<PresLabel> = rows.iter().map(|(l, _)| l.clone()).collect();
    let mut d3 = GroupRingMatrix::zeros(group.clone(), ring.clone(), labels, d2.rows().to_vec());
    let col_index: HashMap<PresLabel, usize> = d2.rows().iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    for (r, (_, row)) in rows.iter().enumerate() {
        for (label, x) in row {
            d3.accumulate(r, col_index[label], x)?;
        }
    }
    Ok((d3, census))
}

impl PresentationComplex {
    /// Builds the complex from per-vertex presentations (listed in vertex
    /// order), each of which must visibly present the catalog group at its
    /// vertex. `None` uses [`canonical_presentation`] everywhere.
    pub fn new(group: &Arc<GraphProduct>, vertex: Option<&[Presentation]>, ring: &CoefficientRing) -> Result<Self> {
        let graph = group.graph();
        let presentations: Vec<Presentation> = match vertex {
            Some(ps) => ps.to_vec(),
            None => (0..graph.len())
                .map(|v| canonical_presentation(graph.name(v), group.group(v)))
                .collect::<Result<_>>()?,
        };
        let gpp = graph_product_presentation(graph, &presentations)?;
        let mut images = Vec::new();
        for (v, p) in presentations.iter().enumerate() {
            for e in vertex_images(graph.name(v), group.group(v), p)? {
                images.push(group.syllable(v, e)?);
            }
        }
        let (d1, d2) = presentation_boundaries(group, &gpp, &images, ring)?;
        let (d3, census) = dim3_census(group, &gpp, &images, &d2, ring)?;
        Ok(PresentationComplex {
            group: group.clone(),
            ring: ring.clone(),
            presentation: gpp,
            images,
            d1,
            d2,
            d3,
            census,
        })
    }

    pub fn boundary(&self, k: usize) -> &GroupRingMatrix<PresLabel> {
        match k {
            1 => &self.d1,
            2 => &self.d2,
            3 => &self.d3,
            _ => panic!("presentation complex has boundaries d_1..d_3 only"),
        }
    }

    /// Counts predicted by the structure of the presentation:
    /// `Σ_{v<w adjacent} |Y_v||S_w|`, `Σ |S_v||Y_w|`, and
    /// `Σ_{u<v<w triangle} |Y_u||Y_v||Y_w|`; the vertex kind counts
    /// dimension-3 generators of the vertex resolutions.
    pub fn expected_census(&self) -> Result<Census> {
        let graph = self.group.graph();
        let mut y = vec![0usize; graph.len()];
        for &(v, _) in &self.presentation.generator_origin {
            y[v] += 1;
        }
        let mut s = vec![0usize; graph.len()];
        for o in &self.presentation.relator_origin {
            if let RelatorOrigin::Vertex { vertex, .. } = o {
                s[*vertex] += 1;
            }
        }
        let mut c = Census::default();
        for v in 0..graph.len() {
            c.vertex += standard_resolution(&self.group.spec_of(graph.name(v))?, 3, &self.ring)?.rank(3);
        }
        for (v, w) in graph.edges() {
            c.gen_rel += y[v] * s[w];
            c.rel_gen += s[v] * y[w];
        }
        for k in graph.cliques(Some(3)).iter().filter(|k| k.len() == 3) {
            c.gen3 += k.vertices().iter().map(|&v| y[v]).product::<usize>();
        }
        Ok(c)
    }

    /// The basis label of the clique-sum resolution matching a presentation
    /// basis element.
    pub fn theorem_label(&self, label: &PresLabel) -> BasisLabel {
        let graph = self.group.graph();
        let gen = |g: usize| {
            let (v, i) = self.presentation.generator_origin[g];
            BasisLabel::single(graph.name(v), 1, i)
        };
        let rel = |r: usize| match self.presentation.relator_origin[r] {
            RelatorOrigin::Vertex { vertex, index } => BasisLabel::single(graph.name(vertex), 2, index),
            RelatorOrigin::Commutator { a, b } => gen(a).concat(&gen(b)),
        };
        match label {
            PresLabel::Base => BasisLabel::base(),
            PresLabel::Generator(g) => gen(*g),
            PresLabel::Relator(r) => rel(*r),
            PresLabel::Dim3(Dim3Basis::Vertex { vertex, index }) => BasisLabel::single(graph.name(*vertex), 3, *index),
            PresLabel::Dim3(Dim3Basis::GenRel { generator, relator }) => gen(*generator).concat(&rel(*relator)),
            PresLabel::Dim3(Dim3Basis::RelGen { relator, generator }) => rel(*relator).concat(&gen(*generator)),
            PresLabel::Dim3(Dim3Basis::Gen3 { a, b, c }) => gen(*a).concat(&gen(*b)).concat(&gen(*c)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationMismatch {
    pub dim: usize,
    pub row: String,
    pub col: Option<String>,
    pub presentation: String,
    pub theorem: String,
}

impl fmt::Display for PresentationMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree {}, row {}", self.dim, self.row)?;
        if let Some(c) = &self.col {
            write!(f, ", column {c}")?;
        }
        write!(f, ": presentation {} vs theorem {}", self.presentation, self.theorem)
    }
}

#[derive(Clone, Debug)]
pub struct ComparisonReport {
    pub census: Census,
    pub expected_census: Census,
    /// `d_1 d_2` and `d_2 d_3` vanish on the presentation side.
    pub squares_vanish: bool,
    pub mismatch: Option<PresentationMismatch>,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.census == self.expected_census && self.squares_vanish && self.mismatch.is_none()
    }
}

/// Matches the presentation complex against a resolution through the
/// explicit basis bijection, entry by entry in dimensions 1 to 3.
pub fn compare_presentation_complex(pc: &PresentationComplex, theorem: &ChainComplex) -> Result<ComparisonReport> {
    if theorem.max_dim() < 3 {
        return Err(Error::usage("the comparison needs the resolution through dimension 3"));
    }
    let squares_vanish = pc.d2.mat_mul(&pc.d1)?.is_zero() && pc.d3.mat_mul(&pc.d2)?.is_zero();
    let mut mismatch = None;
    'dims: for k in 1..=3 {
        let d = pc.boundary(k);
        let mapped: Vec<BasisLabel> = d.rows().iter().map(|l| pc.theorem_label(l)).collect();
        let ours: HashSet<&BasisLabel> = mapped.iter().collect();
        let theirs: HashSet<&BasisLabel> = theorem.basis(k).iter().collect();
        if ours != theirs || ours.len() != mapped.len() {
            let extra = mapped.iter().find(|l| !theirs.contains(l)).map(ToString::to_string);
            let missing = theorem.basis(k).iter().find(|l| !ours.contains(l)).map(ToString::to_string);
            mismatch = Some(PresentationMismatch {
                dim: k,
                row: "basis".into(),
                col: None,
                presentation: format!("{} elements, unmatched {}", mapped.len(), extra.unwrap_or("-".into())),
                theorem: format!("{} elements, unmatched {}", theorem.rank(k), missing.unwrap_or("-".into())),
            });
            break;
        }
        for (r, label) in mapped.iter().enumerate() {
            let ours: BTreeMap<BasisLabel, GroupRingElement> =
                d.row(r).map(|(c, x)| (pc.theorem_label(&d.cols()[c]), x.clone())).collect();
            let theirs = theorem.boundary_of(k, label).unwrap_or_default();
            let cols: std::collections::BTreeSet<&BasisLabel> = ours.keys().chain(theirs.keys()).collect();
            let zero = GroupRingElement::zero(pc.group.clone(), pc.ring.clone());
            for col in cols {
                let (a, b) = (ours.get(col).unwrap_or(&zero), theirs.get(col).unwrap_or(&zero));
                if a != b {
                    mismatch = Some(PresentationMismatch {
                        dim: k,
                        row: label.to_string(),
                        col: Some(col.to_string()),
                        presentation: a.to_string(),
                        theorem: b.to_string(),
                    });
                    break 'dims;
                }
            }
        }
    }
    Ok(ComparisonReport {
        census: pc.census,
        expected_census: pc.expected_census()?,
        squares_vanish,
        mismatch,
    })
}

/// Builds both sides for a graph product of catalog groups and compares
/// them in dimensions 1 to 3.
pub fn compare_with_theorem(
    group: &Arc<GraphProduct>,
    vertex: Option<&[Presentation]>,
    ring: &CoefficientRing,
) -> Result<ComparisonReport> {
    let pc = PresentationComplex::new(group, vertex, ring)?;
    let theorem = clique_sum_resolution(group, ring, 3)?;
    compare_presentation_complex(&pc, &theorem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::group::VertexGroupSpec;
    use crate::presentation::Letter;
    use proptest::prelude::*;

    fn free_ring(gens: &[&str]) -> FreeGroupRing {
        let gens: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        FreeGroupRing::new(&gens, CoefficientRing::Integers).unwrap()
    }

    fn word(letters: &[(&str, i8)]) -> FreeWord {
        FreeWord::new(letters.iter().map(|(g, e)| Letter::new(*g, *e)))
    }

    #[test]
    fn derivative_of_commutator() {
        let f = free_ring(&["a", "b"]);
        let w = word(&[("a", 1), ("b", 1), ("a", -1), ("b", -1)]);
        let da = fox_derivative(&f, &w, "a").unwrap();
        let expected = &f.element(&FreeWord::empty()).unwrap() - &f.element(&word(&[("a", 1), ("b", 1), ("a", -1)])).unwrap();
        assert_eq!(da, expected);
    }

    #[test]
    fn derivative_of_power_is_geometric_sum() {
        let f = free_ring(&["a"]);
        let d = fox_derivative(&f, &FreeWord::power("a", 4), "a").unwrap();
        let mut expected = GroupRingElement::zero(f.group().clone(), CoefficientRing::Integers);
        for k in 0..4 {
            expected = &expected + &f.element(&FreeWord::power("a", k)).unwrap();
        }
        assert_eq!(d, expected);
    }

    #[test]
    fn derivative_in_another_generator_vanishes() {
        let f = free_ring(&["a", "b"]);
        assert!(fox_derivative(&f, &FreeWord::generator("b"), "a").unwrap().is_zero());
        assert!(fox_derivative(&f, &FreeWord::generator("b"), "c").is_err());
    }

    #[test]
    fn inverse_letter_rule() {
        let f = free_ring(&["a"]);
        let d = fox_derivative(&f, &FreeWord::power("a", -1), "a").unwrap();
        let expected = -&f.element(&FreeWord::power("a", -1)).unwrap();
        assert_eq!(d, expected);
    }

    fn product(names: &[&str], edges: &[(&str, &str)], kinds: Vec<GroupKind>) -> Arc<GraphProduct> {
        let g = Graph::new(names, edges).unwrap();
        let specs: Vec<VertexGroupSpec> = names.iter().zip(kinds).map(|(n, k)| VertexGroupSpec::new(*n, k)).collect();
        Arc::new(GraphProduct::new(g, &specs).unwrap())
    }

    #[test]
    fn raag_edge_commutator_row() {
        let gp = product(&["v", "w"], &[("v", "w")], vec![GroupKind::InfiniteCyclic; 2]);
        let pc = PresentationComplex::new(&gp, None, &CoefficientRing::Integers).unwrap();
        let r = CoefficientRing::Integers;
        let a = gp.syllable(0, Elem::Power(1)).unwrap();
        let b = gp.syllable(1, Elem::Power(1)).unwrap();
        let one = GroupRingElement::one(gp.clone(), r.clone());
        assert_eq!(pc.d2.entry(0, 0), &one - &GroupRingElement::monomial(gp.clone(), r.clone(), b, 1));
        assert_eq!(pc.d2.entry(0, 1), GroupRingElement::minus_one(gp.clone(), r, a));
    }

    #[test]
    fn cyclic_vertex_reduces_to_periodic_boundaries() {
        let gp = product(&["v"], &[], vec![GroupKind::Cyclic { n: 3 }]);
        let report = compare_with_theorem(&gp, None, &CoefficientRing::Integers).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.census.vertex, 1);
        let pc = PresentationComplex::new(&gp, None, &CoefficientRing::Integers).unwrap();
        assert_eq!(pc.d2.entry(0, 0).num_terms(), 3);
    }

    #[test]
    fn free_vertex_has_no_relators() {
        let gp = product(&["v"], &[], vec![GroupKind::Free { rank: 3 }]);
        let pc = PresentationComplex::new(&gp, None, &CoefficientRing::Integers).unwrap();
        assert_eq!(pc.d2.num_rows(), 0);
        assert_eq!(pc.d1.num_rows(), 3);
    }

    #[test]
    fn triangle_raag_census() {
        let gp = product(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")], vec![GroupKind::InfiniteCyclic; 3]);
        let report = compare_with_theorem(&gp, None, &CoefficientRing::Integers).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.census, Census { vertex: 0, gen_rel: 0, rel_gen: 0, gen3: 1 });
    }

    #[test]
    fn racg_edge_census() {
        let gp = product(&["v", "w"], &[("v", "w")], vec![GroupKind::Cyclic { n: 2 }; 2]);
        let report = compare_with_theorem(&gp, None, &CoefficientRing::Integers).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.census, Census { vertex: 2, gen_rel: 1, rel_gen: 1, gen3: 0 });
    }

    #[test]
    fn edgeless_census_is_vertex_only() {
        let gp = product(&["v", "w", "x"], &[], vec![GroupKind::Cyclic { n: 2 }, GroupKind::Cyclic { n: 3 }, GroupKind::Free { rank: 2 }]);
        let report = compare_with_theorem(&gp, None, &CoefficientRing::Integers).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.census, Census { vertex: 2, gen_rel: 0, rel_gen: 0, gen3: 0 });
    }

    #[test]
    fn flipped_dim3_sign_is_located() {
        let gp = product(&["v", "w"], &[("v", "w")], vec![GroupKind::Cyclic { n: 2 }, GroupKind::InfiniteCyclic]);
        let r = CoefficientRing::Integers;
        let mut pc = PresentationComplex::new(&gp, None, &r).unwrap();
        let row = pc.d3.rows().iter().position(|l| matches!(l, PresLabel::Dim3(Dim3Basis::RelGen { .. }))).unwrap();
        let (col, x) = pc.d3.row(row).map(|(c, x)| (c, x.clone())).next().unwrap();
        pc.d3.set(row, col, -&x).unwrap();
        let theorem = clique_sum_resolution(&gp, &r, 3).unwrap();
        let report = compare_presentation_complex(&pc, &theorem).unwrap();
        assert!(!report.passed());
        let m = report.mismatch.unwrap();
        assert_eq!(m.dim, 3);
        assert_eq!(m.row, "v^2[0] x w^1[0]");
    }

    #[test]
    fn user_presentations_with_own_names() {
        let gp = product(&["v", "w"], &[("v", "w")], vec![GroupKind::Cyclic { n: 3 }, GroupKind::Free { rank: 2 }]);
        let pv = Presentation::new(vec!["a".into()], vec![FreeWord::power("a", 3)]).unwrap();
        let pw = Presentation::new(vec!["b".into(), "c".into()], Vec::new()).unwrap();
        let report = compare_with_theorem(&gp, Some(&[pv.clone(), pw]), &CoefficientRing::Integers).unwrap();
        assert!(report.passed(), "{report:?}");
        let wrong = Presentation::new(vec!["b".into()], Vec::new()).unwrap();
        assert!(matches!(
            compare_with_theorem(&gp, Some(&[pv, wrong]), &CoefficientRing::Integers),
            Err(Error::Input(_))
        ));
    }

    fn arb_word() -> impl Strategy<Value = FreeWord> {
        proptest::collection::vec((0usize..4, prop::bool::ANY), 0..=12).prop_map(|ls| {
            FreeWord::new(ls.into_iter().map(|(g, inv)| Letter::new(["a", "b", "c", "d"][g], if inv { -1 } else { 1 })))
        })
    }

    proptest! {
        #[test]
        fn fundamental_identity(w in arb_word()) {
            let f = free_ring(&["a", "b", "c", "d"]);
            let mut lhs = GroupRingElement::zero(f.group().clone(), CoefficientRing::Integers);
            for y in ["a", "b", "c", "d"] {
                let y_minus_1 = &f.element(&FreeWord::generator(y)).unwrap() - &f.element(&FreeWord::empty()).unwrap();
                lhs = &lhs + &(&fox_derivative(&f, &w, y).unwrap() * &y_minus_1);
            }
            let rhs = &f.element(&w).unwrap() - &f.element(&FreeWord::empty()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
