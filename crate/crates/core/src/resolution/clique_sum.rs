//! The clique-sum resolution of a graph product: one tensor block per
//! nonempty complete subgraph, each induced up to the whole product.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{standard_resolution, BasisLabel, ChainComplex, Factor};
use crate::error::Result;
use crate::group::GroupKind;
use crate::ring::{CoefficientRing, GroupRingElement};
use crate::word::GraphProduct;

/// Embedded boundary rows of one vertex resolution: `rows[k][i]` lists the
/// `(index in degree k-1, coefficient in R G(Γ))` terms of `d_k(e_i)`.
struct VertexData {
    name: String,
    ranks: Vec<usize>,
    rows: Vec<Vec<Vec<(usize, GroupRingElement)>>>,
    length: Option<usize>,
}

fn vertex_data(gp: &Arc<GraphProduct>, v: usize, ring: &CoefficientRing, max_dim: usize) -> Result<VertexData> {
    let spec = gp.spec_of(gp.graph().name(v))?;
    let res = standard_resolution(&spec, max_dim, ring)?;
    let embedding = gp.embedding_of(res.group())?;
    let mut rows = vec![Vec::new()];
    for k in 1..=max_dim {
        let d = res.boundary(k);
        let per_row = (0..d.num_rows())
            .map(|r| {
                d.row(r)
                    .map(|(c, x)| (c, x.map_group(gp.clone(), |w| embedding.apply(gp, w))))
                    .collect()
            })
            .collect();
        rows.push(per_row);
    }
    Ok(VertexData {
        name: spec.name.clone(),
        ranks: res.ranks(),
        rows,
        length: res.length(),
    })
}

/// Compositions of `n` into `parts` positive summands, in lexicographic order.
fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if n < parts {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in 1..=n - (parts - 1) {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The free resolution of `G(Γ)` whose degree-`n` basis is indexed by
/// a nonempty clique `{v_1 < … < v_k}`, a multidegree `(n_1, …, n_k)` of
/// positive parts summing to `n`, and a basis element of each `P^{v_i}_{n_i}`.
///
/// The boundary of such a label is `Σ_i (-1)^{n_1+…+n_{i-1}} d^{v_i}` applied to
/// factor `i`, with coefficients from `R G_{v_i} ⊂ R G(Γ)`; a factor that
/// reaches degree 0 drops out, landing on the label of the smaller clique.
pub fn clique_sum_resolution(gp: &Arc<GraphProduct>, ring: &CoefficientRing, max_dim: usize) -> Result<ChainComplex> {
    let graph = gp.graph();
    let data: Vec<VertexData> = (0..graph.len())
        .map(|v| vertex_data(gp, v, ring, max_dim))
        .collect::<Result<_>>()?;
    let cliques = graph.cliques(None);

    let mut bases = vec![vec![BasisLabel::base()]];
    for n in 1..=max_dim {
        let mut basis = Vec::new();
        for clique in &cliques {
            let vs = clique.vertices();
            for degrees in compositions(n, vs.len()) {
                let ranks: Vec<usize> = vs.iter().zip(&degrees).map(|(&v, &d)| data[v].ranks[d]).collect();
                for idx in index_tuples(&ranks) {
                    let factors = vs
                        .iter()
                        .zip(&degrees)
                        .zip(&idx)
                        .map(|((&v, &d), &i)| Factor {
                            vertex: data[v].name.clone(),
                            degree: d,
                            index: i,
                        })
                        .collect();
                    basis.push(BasisLabel { factors });
                }
            }
        }
        bases.push(basis);
    }

    let length = if graph.is_empty() {
        Some(0)
    } else {
        cliques.iter().try_fold(0usize, |best, c| {
            let total = c.vertices().iter().map(|&v| data[v].length).sum::<Option<usize>>()?;
            Some(best.max(total))
        })
    };

    ChainComplex::assemble(gp.clone(), ring.clone(), bases, length, |_, label| {
        let mut row = Vec::new();
        let mut before = 0usize;
        for (i, f) in label.factors().iter().enumerate() {
            let v = graph.index_of(&f.vertex).expect("label vertex in graph");
            let sign = BigInt::from(if before.is_multiple_of(2) { 1 } else { -1 });
            for (target, x) in &data[v].rows[f.degree][f.index] {
                row.push((label.with_factor(i, f.degree - 1, *target), x.scale(&sign)));
            }
            before += f.degree;
        }
        Ok(row)
    })
}

fn index_tuples(ranks: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &r in ranks {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..r).map(move |i| {
                    let mut t = prefix.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// Rank in degree `n` by the counting formula
/// `Σ_K Σ_{n_1+…+n_k = n, n_i ≥ 1} Π rank P^{v_i}_{n_i}`, without building
/// any boundary.
pub fn clique_sum_rank(gp: &GraphProduct, n: usize) -> usize {
    if n == 0 {
        return 1;
    }
    let vertex_rank = |kind: &GroupKind, d: usize| -> usize {
        match kind.resolution_length() {
            Some(l) if d > l => 0,
            _ => match kind {
                GroupKind::Trivial | GroupKind::Presented(_) => 0,
                GroupKind::InfiniteCyclic | GroupKind::Cyclic { .. } => 1,
                GroupKind::Free { rank } => *rank,
                GroupKind::FiniteTable(t) => t.order().pow(d as u32),
            },
        }
    };
    gp.graph()
        .cliques(None)
        .iter()
        .map(|c| {
            compositions(n, c.len())
                .iter()
                .map(|degrees| {
                    c.vertices()
                        .iter()
                        .zip(degrees)
                        .map(|(&v, &d)| vertex_rank(gp.group(v), d))
                        .product::<usize>()
                })
                .sum::<usize>()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(3, 2), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(compositions(2, 3), Vec::<Vec<usize>>::new());
        assert_eq!(compositions(4, 1), vec![vec![4]]);
        assert_eq!(compositions(5, 3).len(), 6);
    }
}
