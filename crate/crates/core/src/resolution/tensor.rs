use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{BoundaryRow, ChainComplex};
use crate::error::{Error, Result};

/// Resolution of `A × B` from resolutions `P` of `A` and `Q` of `B`.
///
/// In degree `n ≥ 1` the basis is the `P`-only labels, the `Q`-only labels
/// and the pairs `p ⊗ q` with both degrees positive. The boundary is
/// `d(p ⊗ q) = d(p) ⊗ q + (-1)^{|p|} p ⊗ d(q)`; a factor landing in degree 0
/// leaves the label, moving the term into a single-factor summand.
pub fn tensor_plus(p: &ChainComplex, q: &ChainComplex, max_dim: usize) -> Result<ChainComplex> {
    if p.ring != q.ring {
        return Err(Error::usage(format!("coefficient rings differ: {} vs {}", p.ring, q.ring)));
    }
    let group = Arc::new(p.group.direct_product(&q.group)?);
    let into_p = group.embedding_of(&p.group)?;
    let into_q = group.embedding_of(&q.group)?;

    let mut bases = Vec::with_capacity(max_dim + 1);
    for n in 0..=max_dim {
        let mut basis = Vec::new();
        for i in (0..=n).rev() {
            let j = n - i;
            let (pi, qj) = (p.basis_checked(i)?, q.basis_checked(j)?);
            for a in pi {
                for b in qj {
                    basis.push(a.concat(b));
                }
            }
        }
        bases.push(basis);
    }

    let p_vertices: HashSet<String> = p.group.graph().names().iter().cloned().collect();
    let length = match (p.length, q.length) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    };
    let ring = p.ring.clone();
    let g = group.clone();
    ChainComplex::assemble(group.clone(), ring, bases, length, |_, label| {
        let (a, b) = label.split(|v| p_vertices.contains(v));
        let (i, j) = (a.dim(), b.dim());
        let mut row: BoundaryRow = Vec::new();
        if i > 0 {
            for (face, x) in p.boundary_of(i, &a).expect("label from P's basis") {
                let x = x.map_group(g.clone(), |w| into_p.apply(&g, w));
                row.push((face.concat(&b), x));
            }
        }
        if j > 0 {
            let sign = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
            for (face, x) in q.boundary_of(j, &b).expect("label from Q's basis") {
                let x = x.map_group(g.clone(), |w| into_q.apply(&g, w)).scale(&sign);
                row.push((a.concat(&face), x));
            }
        }
        Ok(row)
    })
}
