//! Catalog resolutions of single vertex groups.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{BasisLabel, BoundaryRow, ChainComplex};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteTable, GroupKind, VertexGroupSpec};
use crate::ring::{CoefficientRing, GroupRingElement};
use crate::word::{GraphProduct, Word};

/// Free resolution of a vertex group over its own group ring, in degrees
/// `0..=max_dim`:
///
/// * trivial: `R` alone;
/// * infinite cyclic and free of rank `k`: `R G^k → R G`, `e_i ↦ x_i - 1`;
/// * cyclic of order `n`: rank one in every degree, boundaries alternating
///   `t - 1` (odd degrees) and `1 + t + … + t^{n-1}` (even degrees);
/// * finite table: the unnormalized bar resolution, rank `|G|^k` in degree `k`.
pub fn standard_resolution(spec: &VertexGroupSpec, max_dim: usize, ring: &CoefficientRing) -> Result<ChainComplex> {
    if let GroupKind::Presented(_) = spec.kind {
        return Err(Error::unsupported(format!(
            "vertex '{}' is presented; catalog resolutions need a catalog group",
            spec.name
        )));
    }
    let group = Arc::new(GraphProduct::single(spec)?);
    let v = spec.name.as_str();
    let kind = &spec.kind;
    let length = kind.resolution_length();
    let top = length.map_or(max_dim, |l| l.min(max_dim));

    let rank = |k: usize| -> usize {
        if k == 0 {
            return 1;
        }
        if k > top {
            return 0;
        }
        match kind {
            GroupKind::Trivial => 0,
            GroupKind::InfiniteCyclic | GroupKind::Cyclic { .. } => 1,
            GroupKind::Free { rank } => *rank,
            GroupKind::FiniteTable(t) if t.order() == 1 => 0,
            GroupKind::FiniteTable(t) => t.order().pow(k as u32),
            GroupKind::Presented(_) => unreachable!(),
        }
    };
    let bases: Vec<Vec<BasisLabel>> = (0..=max_dim)
        .map(|k| {
            if k == 0 {
                vec![BasisLabel::base()]
            } else {
                (0..rank(k)).map(|i| BasisLabel::single(v, k, i)).collect()
            }
        })
        .collect();

    let one = |w: Word, c: i64| GroupRingElement::monomial(group.clone(), ring.clone(), w, c);
    let elem = |e: Elem| group.syllable(0, e).expect("catalog element");
    let target = |k: usize, i: usize| {
        if k == 1 {
            BasisLabel::base()
        } else {
            BasisLabel::single(v, k - 1, i)
        }
    };

    ChainComplex::assemble(group.clone(), ring.clone(), bases, length, |k, label| {
        let i = label.factors()[0].index;
        let row: BoundaryRow = match kind {
            GroupKind::InfiniteCyclic | GroupKind::Free { .. } => {
                let g = kind.generators()[i].clone();
                vec![(target(1, 0), GroupRingElement::minus_one(group.clone(), ring.clone(), elem(g)))]
            }
            GroupKind::Cyclic { n } => {
                let x = if k % 2 == 1 {
                    GroupRingElement::minus_one(group.clone(), ring.clone(), elem(Elem::Power(1)))
                } else {
                    let mut norm = GroupRingElement::zero(group.clone(), ring.clone());
                    for e in 0..*n as i64 {
                        norm.add_term(elem(Elem::Power(e)), BigInt::from(1));
                    }
                    norm
                };
                vec![(target(k, 0), x)]
            }
            GroupKind::FiniteTable(t) => bar_boundary(t, k, i)
                .into_iter()
                .map(|(coeff, face, sign)| (target(k, face), one(elem(Elem::Table(coeff as u32)), sign)))
                .collect(),
            GroupKind::Trivial | GroupKind::Presented(_) => unreachable!("no positive-degree generators"),
        };
        Ok(row)
    })
}

/// Terms `(group element, face index, sign)` of the bar differential
/// `d[g1|…|gk] = g1[g2|…|gk] + Σ (-1)^i […|g_i g_{i+1}|…] + (-1)^k [g1|…|g_{k-1}]`.
/// Tuples are encoded base `|G|` with `g1` most significant.
fn bar_boundary(t: &FiniteTable, k: usize, index: usize) -> Vec<(usize, usize, i64)> {
    let n = t.order();
    let mut g = vec![0usize; k];
    let mut rest = index;
    for slot in g.iter_mut().rev() {
        *slot = rest % n;
        rest /= n;
    }
    let encode = |xs: &[usize]| xs.iter().fold(0usize, |acc, &x| acc * n + x);
    let e = t.identity();
    let mut out = Vec::with_capacity(k + 1);
    out.push((g[0], encode(&g[1..]), 1));
    for i in 1..k {
        let mut merged = g[..i - 1].to_vec();
        merged.push(t.mul(g[i - 1], g[i]));
        merged.extend_from_slice(&g[i + 1..]);
        out.push((e, encode(&merged), if i % 2 == 0 { 1 } else { -1 }));
    }
    out.push((e, encode(&g[..k - 1]), if k.is_multiple_of(2) { 1 } else { -1 }));
    out
}
