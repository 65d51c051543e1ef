use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Clique, Graph};
use crate::group::{GroupKind, VertexGroupSpec};
use crate::resolution::{clique_sum_rank, clique_sum_resolution, ChainComplex};
use crate::ring::CoefficientRing;
use crate::word::GraphProduct;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerSummary {
    /// `χ_K = Π (χ_v - 1)` for every nonempty clique, in canonical order.
    pub per_clique_terms: Vec<(Vec<String>, BigRational)>,
    /// `Σ χ_K` over nonempty cliques.
    pub clique_formula_value: BigRational,
    /// `1 + Σ χ_K`: the empty clique contributes the degree-0 term. This is
    /// the Euler characteristic of the graph product.
    pub convention_with_empty: BigRational,
    /// Alternating sum of ranks of the clique-sum resolution, when every
    /// vertex resolution is finite.
    pub resolution_value: Option<BigRational>,
}

/// Euler characteristic of a catalog vertex group with a finite free
/// resolution.
pub fn vertex_euler(kind: &GroupKind) -> Option<BigRational> {
    let r = |x: i64| BigRational::from_integer(BigInt::from(x));
    match kind {
        GroupKind::Trivial => Some(r(1)),
        GroupKind::InfiniteCyclic => Some(r(0)),
        GroupKind::Free { rank } => Some(r(1 - *rank as i64)),
        GroupKind::FiniteTable(t) if t.order() == 1 => Some(r(1)),
        _ => None,
    }
}

/// The clique formula. `chis` must give a value for every vertex.
pub fn chiswell_euler(graph: &Graph, chis: &HashMap<String, BigRational>) -> Result<EulerSummary> {
    let values: Vec<&BigRational> = graph
        .names()
        .iter()
        .map(|n| chis.get(n).ok_or_else(|| Error::input(format!("no Euler characteristic given for vertex '{n}'"))))
        .collect::<Result<_>>()?;
    let term = |k: &Clique| {
        k.vertices()
            .iter()
            .fold(BigRational::one(), |acc, &v| acc * (values[v] - BigRational::one()))
    };
    let per_clique_terms: Vec<(Vec<String>, BigRational)> = graph
        .cliques(None)
        .iter()
        .map(|k| (k.names(graph).into_iter().map(String::from).collect(), term(k)))
        .collect();
    let clique_formula_value: BigRational = per_clique_terms.iter().map(|(_, x)| x).sum();
    Ok(EulerSummary {
        convention_with_empty: BigRational::one() + &clique_formula_value,
        clique_formula_value,
        per_clique_terms,
        resolution_value: None,
    })
}

/// `Σ (-1)^k τ(P_k)`, which for free modules is the alternating rank sum.
pub fn euler_from_resolution(c: &ChainComplex) -> Result<BigRational> {
    match c.length() {
        None => Err(Error::NotFp(
            "the resolution does not terminate, so the Euler characteristic is undefined".into(),
        )),
        Some(l) if l > c.max_dim() => Err(Error::usage(format!(
            "the resolution has length {l} but is stored only through degree {}",
            c.max_dim()
        ))),
        Some(_) => {
            let mut acc = BigRational::zero();
            for (k, &r) in c.ranks().iter().enumerate() {
                let tau = hs_tau(&ModuleDescription::Free { rank: r })?;
                if k % 2 == 0 {
                    acc += tau;
                } else {
                    acc -= tau;
                }
            }
            Ok(acc)
        }
    }
}

/// Clique formula with vertex values from the catalog where possible and
/// from `supplied` otherwise, plus the resolution value when every vertex
/// group has a finite resolution.
pub fn euler_summary(gp: &Arc<GraphProduct>, supplied: &HashMap<String, BigRational>) -> Result<EulerSummary> {
    let graph = gp.graph();
    let mut chis = supplied.clone();
    for v in 0..graph.len() {
        let kind = gp.group(v);
        if let Some(x) = vertex_euler(kind) {
            if let Some(given) = supplied.get(graph.name(v)) {
                if *given != x {
                    return Err(Error::input(format!(
                        "vertex '{}' is {kind} with Euler characteristic {x}, not {given}",
                        graph.name(v)
                    )));
                }
            }
            chis.insert(graph.name(v).to_string(), x);
        }
    }
    let cd = graph.cliques(None).iter().try_fold(0usize, |best, k| {
        let sum = k.vertices().iter().map(|&v| gp.group(v).resolution_length()).sum::<Option<usize>>()?;
        Some(best.max(sum))
    });
    let mut summary = chiswell_euler(graph, &chis)?;
    if let Some(bound) = cd {
        let c = clique_sum_resolution(gp, &CoefficientRing::Integers, bound)?;
        summary.resolution_value = Some(euler_from_resolution(&c)?);
    }
    Ok(summary)
}

/// A free module, described by how it was built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleDescription {
    Free { rank: usize },
    /// `P ⊗_{RH} RG` for a subgroup `H ≤ G`.
    Induced(Box<ModuleDescription>),
    /// `P ⊗_R Q` over a direct product.
    Tensor(Box<ModuleDescription>, Box<ModuleDescription>),
    /// A projective module that is not known to be free.
    Projective { description: String },
}

/// Coefficient of the identity in the Hattori–Stallings trace. For a free
/// module of rank `r` this is `r`; it is unchanged by induction and
/// multiplicative under tensor products.
pub fn hs_tau(m: &ModuleDescription) -> Result<BigRational> {
    match m {
        ModuleDescription::Free { rank } => Ok(BigRational::from_integer(BigInt::from(*rank))),
        ModuleDescription::Induced(p) => hs_tau(p),
        ModuleDescription::Tensor(p, q) => Ok(hs_tau(p)? * hs_tau(q)?),
        ModuleDescription::Projective { description } => Err(Error::unsupported(format!(
            "trace of the non-free projective module {description}"
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexFp {
    pub name: String,
    pub kind: String,
    /// The group is `FP_n` for every `n` up to this value (within the probe).
    pub fp_through: usize,
    /// Length of the vertex resolution, `None` when infinite or unknown.
    pub length: Option<usize>,
    /// `None` when unknown (a presentation not matching a catalog group).
    pub fp: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpReport {
    pub probe_dim: usize,
    pub vertices: Vec<VertexFp>,
    /// Every vertex group, hence the graph product, is `FP_n` through this.
    pub fp_through: usize,
    /// `max_K Σ_{v ∈ K} length(P^v)`; `None` when some length is infinite.
    pub cd_bound: Option<usize>,
    pub fp: Option<bool>,
    /// Ranks of the clique-sum resolution in degrees `0..=probe_dim`.
    pub ranks: Option<Vec<usize>>,
}

/// Finiteness over the integers, read off the catalog resolutions: the
/// graph product is `FP_n` (resp. `FP`) when every vertex group is.
pub fn fp_report(graph: &Graph, specs: &[VertexGroupSpec], probe_dim: usize) -> Result<FpReport> {
    let mut by_name: HashMap<&str, &VertexGroupSpec> = HashMap::new();
    for s in specs {
        graph.require(&s.name)?;
        if by_name.insert(s.name.as_str(), s).is_some() {
            return Err(Error::input(format!("vertex '{}' given two groups", s.name)));
        }
    }
    let mut vertices = Vec::new();
    let mut catalog = Vec::new();
    for name in graph.names() {
        let spec = by_name
            .get(name.as_str())
            .ok_or_else(|| Error::input(format!("no group for vertex '{name}'")))?;
        let kind = match &spec.kind {
            GroupKind::Presented(p) => p.recognize(),
            k => Some(k.clone()),
        };
        let entry = match &kind {
            Some(k) => VertexFp {
                name: name.clone(),
                kind: spec.kind.to_string(),
                fp_through: probe_dim,
                length: k.resolution_length(),
                fp: Some(k.resolution_length().is_some()),
            },
            // A finite presentation gives FP_2 and nothing more for free.
            None => VertexFp {
                name: name.clone(),
                kind: spec.kind.to_string(),
                fp_through: probe_dim.min(2),
                length: None,
                fp: None,
            },
        };
        vertices.push(entry);
        catalog.push(kind.map(|k| VertexGroupSpec::new(name.clone(), k)));
    }
    let fp_through = vertices.iter().map(|v| v.fp_through).min().unwrap_or(probe_dim);
    let cd_bound = graph.cliques(None).iter().try_fold(0usize, |best, k| {
        let sum = k.vertices().iter().map(|&v| vertices[v].length).sum::<Option<usize>>()?;
        Some(best.max(sum))
    });
    let fp = if vertices.iter().any(|v| v.fp == Some(false)) {
        Some(false)
    } else if vertices.iter().all(|v| v.fp == Some(true)) {
        Some(true)
    } else {
        None
    };
    let ranks = match catalog.into_iter().collect::<Option<Vec<_>>>() {
        Some(specs) => {
            let gp = GraphProduct::new(graph.clone(), &specs)?;
            Some((0..=probe_dim).map(|n| clique_sum_rank(&gp, n)).collect())
        }
        None => None,
    };
    Ok(FpReport {
        probe_dim,
        vertices,
        fp_through,
        cd_bound,
        fp,
        ranks,
    })
}
