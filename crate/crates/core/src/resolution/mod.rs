//! Chain complexes of free modules over group rings, and the resolutions
//! built from them.
//!
//! Modules are free with a labeled basis. A basis label is a list of
//! factors `(vertex, degree, index)`, one per vertex of a clique, listed in
//! ascending vertex order; the empty list labels the single generator in
//! degree 0. Tensoring two labels concatenates their factor lists, and a
//! factor whose degree falls to 0 simply disappears, which is how terms of a
//! tensor boundary move into the single-factor summands.

mod clique_sum;
mod glue;
mod standard;
mod tensor;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::GroupRingMatrix;
use crate::ring::{CoefficientRing, GroupRingElement};
use crate::word::GraphProduct;

pub use clique_sum::{clique_sum_rank, clique_sum_resolution};
pub use glue::{amalgam_glue, check_induction, inductive_resolution, InductionReport};
pub use standard::standard_resolution;
pub use tensor::tensor_plus;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub vertex: String,
    pub degree: usize,
    pub index: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel {
    factors: Vec<Factor>,
}

impl BasisLabel {
    /// The generator of the degree-0 module.
    pub fn base() -> Self {
        BasisLabel::default()
    }

    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        let mut seen = HashSet::new();
        for f in &factors {
            if f.degree == 0 {
                return Err(Error::usage(format!("factor at '{}' has degree 0", f.vertex)));
            }
            if !seen.insert(f.vertex.as_str()) {
                return Err(Error::usage(format!("vertex '{}' appears twice in a label", f.vertex)));
            }
        }
        Ok(BasisLabel { factors })
    }

    pub fn single(vertex: &str, degree: usize, index: usize) -> Self {
        BasisLabel {
            factors: vec![Factor {
                vertex: vertex.to_string(),
                degree,
                index,
            }],
        }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.degree).sum()
    }

    pub fn clique(&self) -> Vec<&str> {
        self.factors.iter().map(|f| f.vertex.as_str()).collect()
    }

    pub fn multidegree(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.degree).collect()
    }

    pub fn local_index(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.index).collect()
    }

    pub fn concat(&self, other: &BasisLabel) -> BasisLabel {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        BasisLabel { factors }
    }

    /// Splits into the factors at vertices accepted by `left` and the rest.
    pub(crate) fn split(&self, left: impl Fn(&str) -> bool) -> (BasisLabel, BasisLabel) {
        let (a, b): (Vec<Factor>, Vec<Factor>) = self.factors.iter().cloned().partition(|f| left(&f.vertex));
        (BasisLabel { factors: a }, BasisLabel { factors: b })
    }

    /// Replaces factor `i` by degree `degree` and index `index`, dropping it
    /// when `degree` is 0.
    pub(crate) fn with_factor(&self, i: usize, degree: usize, index: usize) -> BasisLabel {
        let mut factors = self.factors.clone();
        if degree == 0 {
            factors.remove(i);
        } else {
            factors[i].degree = degree;
            factors[i].index = index;
        }
        BasisLabel { factors }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| format!("{}^{}[{}]", x.vertex, x.degree, x.index))
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// A chain complex of free modules over `R G`, stored in degrees
/// `0..=max_dim`. `length` is the known length of the resolution when it is
/// finite; degrees past `max_dim` are then zero.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    group: Arc<GraphProduct>,
    ring: CoefficientRing,
    bases: Vec<Vec<BasisLabel>>,
    boundaries: Vec<GroupRingMatrix<BasisLabel>>,
    length: Option<usize>,
}

pub(crate) type BoundaryRow = Vec<(BasisLabel, GroupRingElement)>;

impl ChainComplex {
    /// Builds the boundary matrices from a per-label rule. Every target label
    /// must occur in the basis one degree down.
    pub(crate) fn assemble(
        group: Arc<GraphProduct>,
        ring: CoefficientRing,
        bases: Vec<Vec<BasisLabel>>,
        length: Option<usize>,
        mut boundary: impl FnMut(usize, &BasisLabel) -> Result<BoundaryRow>,
    ) -> Result<ChainComplex> {
        let mut boundaries = Vec::with_capacity(bases.len().saturating_sub(1));
        for k in 1..bases.len() {
            let mut d = GroupRingMatrix::zeros(group.clone(), ring.clone(), bases[k].clone(), bases[k - 1].clone());
            let cols: HashMap<&BasisLabel, usize> = bases[k - 1].iter().enumerate().map(|(i, l)| (l, i)).collect();
            for (r, label) in bases[k].iter().enumerate() {
                for (target, x) in boundary(k, label)? {
                    let c = *cols.get(&target).ok_or_else(|| {
                        Error::Consistency(format!("boundary of {label} hits {target}, which is not a basis label"))
                    })?;
                    d.accumulate(r, c, &x)?;
                }
            }
            boundaries.push(d);
        }
        Ok(ChainComplex {
            group,
            ring,
            bases,
            boundaries,
            length,
        })
    }

    /// The resolution of the trivial module by `R G` alone, i.e. the
    /// resolution of the trivial group when `group` is trivial.
    pub fn trivial(group: Arc<GraphProduct>, ring: CoefficientRing, max_dim: usize) -> ChainComplex {
        let mut bases = vec![Vec::new(); max_dim + 1];
        bases[0].push(BasisLabel::base());
        ChainComplex::assemble(group, ring, bases, Some(0), |_, _| Ok(Vec::new())).expect("no boundaries")
    }

    pub fn group(&self) -> &Arc<GraphProduct> {
        &self.group
    }

    pub fn ring(&self) -> &CoefficientRing {
        &self.ring
    }

    pub fn max_dim(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn length(&self) -> Option<usize> {
        self.length
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    pub fn rank(&self, k: usize) -> usize {
        self.bases.get(k).map_or(0, Vec::len)
    }

    pub fn basis(&self, k: usize) -> &[BasisLabel] {
        &self.bases[k]
    }

    /// Basis in degree `k`, which is empty past the stored range only when
    /// the complex is known to stop.
    pub(crate) fn basis_checked(&self, k: usize) -> Result<&[BasisLabel]> {
        if k <= self.max_dim() {
            return Ok(&self.bases[k]);
        }
        match self.length {
            Some(l) if l <= self.max_dim() => Ok(&[]),
            _ => Err(Error::usage(format!(
                "degree {k} requested from a complex truncated at {}",
                self.max_dim()
            ))),
        }
    }

    /// `d_k`, mapping degree `k` to degree `k - 1`.
    pub fn boundary(&self, k: usize) -> &GroupRingMatrix<BasisLabel> {
        assert!(k >= 1 && k <= self.max_dim(), "no boundary d_{k} stored");
        &self.boundaries[k - 1]
    }

    pub fn boundary_mut(&mut self, k: usize) -> &mut GroupRingMatrix<BasisLabel> {
        assert!(k >= 1 && k <= self.max_dim(), "no boundary d_{k} stored");
        &mut self.boundaries[k - 1]
    }

    /// Boundary of a basis label as a map from target labels to coefficients.
    pub fn boundary_of(&self, k: usize, label: &BasisLabel) -> Option<BTreeMap<BasisLabel, GroupRingElement>> {
        let d = self.boundary(k);
        let r = self.bases[k].iter().position(|l| l == label)?;
        Some(d.row(r).map(|(c, x)| (d.cols()[c].clone(), x.clone())).collect())
    }

    /// Extension of scalars along the inclusion of `self`'s group into
    /// `target`.
    pub fn induce(&self, target: &Arc<GraphProduct>) -> Result<ChainComplex> {
        let embedding = target.embedding_of(&self.group)?;
        let boundaries = self
            .boundaries
            .iter()
            .map(|d| d.map_entries(target.clone(), |x| x.map_group(target.clone(), |w| embedding.apply(target, w))))
            .collect::<Result<_>>()?;
        Ok(ChainComplex {
            group: target.clone(),
            ring: self.ring.clone(),
            bases: self.bases.clone(),
            boundaries,
            length: self.length,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub dim: usize,
    pub label: Option<BasisLabel>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub checked_compositions: usize,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the necessary conditions for a resolution: `d ∘ d = 0` wherever two
/// consecutive boundaries are stored, `ε ∘ d_1 = 0`, and that labels match
/// the matrix shapes and degrees.
pub fn verify_complex(c: &ChainComplex) -> VerifyReport {
    let mut violations = Vec::new();
    if c.bases[0] != [BasisLabel::base()] {
        violations.push(Violation {
            dim: 0,
            label: None,
            detail: "degree 0 must be the group ring itself".into(),
        });
    }
    for (k, basis) in c.bases.iter().enumerate() {
        let mut seen = HashSet::new();
        for l in basis {
            if l.dim() != k {
                violations.push(Violation {
                    dim: k,
                    label: Some(l.clone()),
                    detail: format!("label has total degree {}", l.dim()),
                });
            }
            if !seen.insert(l) {
                violations.push(Violation {
                    dim: k,
                    label: Some(l.clone()),
                    detail: "duplicate label".into(),
                });
            }
        }
        if k >= 1 {
            let d = c.boundary(k);
            if d.rows() != basis.as_slice() || d.cols() != c.bases[k - 1].as_slice() {
                violations.push(Violation {
                    dim: k,
                    label: None,
                    detail: format!("d_{k} labels do not match the bases"),
                });
            }
        }
    }
    if c.max_dim() >= 1 {
        let d1 = c.boundary(1);
        for (r, _, x) in d1.nonzero() {
            let a = x.augment();
            if !a.is_zero() {
                violations.push(Violation {
                    dim: 1,
                    label: Some(d1.rows()[r].clone()),
                    detail: format!("augmentation of d_1 entry is {a}"),
                });
            }
        }
    }
    let mut checked = 0;
    for k in 2..=c.max_dim() {
        checked += 1;
        match c.boundary(k).mat_mul(c.boundary(k - 1)) {
            Ok(prod) => {
                for (r, col, x) in prod.nonzero() {
                    violations.push(Violation {
                        dim: k,
                        label: Some(prod.rows()[r].clone()),
                        detail: format!("d_{}(d_{k}) has coefficient {x} on {}", k - 1, prod.cols()[col]),
                    });
                }
            }
            Err(e) => violations.push(Violation {
                dim: k,
                label: None,
                detail: e.to_string(),
            }),
        }
    }
    VerifyReport {
        checked_compositions: checked,
        violations,
    }
}

/// First difference between two complexes over the same group, comparing
/// bases as label sets and boundaries entry by entry through the labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexMismatch {
    pub dim: usize,
    pub row: Option<String>,
    pub col: Option<String>,
    pub left: String,
    pub right: String,
}

impl fmt::Display for ComplexMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree {}", self.dim)?;
        if let Some(r) = &self.row {
            write!(f, ", row {r}")?;
        }
        if let Some(c) = &self.col {
            write!(f, ", column {c}")?;
        }
        write!(f, ": {} vs {}", self.left, self.right)
    }
}

pub fn compare_complexes(a: &ChainComplex, b: &ChainComplex) -> Option<ComplexMismatch> {
    let top = a.max_dim().min(b.max_dim());
    for k in 0..=top {
        let sa: HashSet<&BasisLabel> = a.bases[k].iter().collect();
        let sb: HashSet<&BasisLabel> = b.bases[k].iter().collect();
        if sa != sb {
            let only_a = a.bases[k].iter().find(|l| !sb.contains(l));
            let only_b = b.bases[k].iter().find(|l| !sa.contains(l));
            return Some(ComplexMismatch {
                dim: k,
                row: None,
                col: None,
                left: format!("rank {} (extra {})", a.bases[k].len(), only_a.map_or("-".into(), |l| l.to_string())),
                right: format!("rank {} (extra {})", b.bases[k].len(), only_b.map_or("-".into(), |l| l.to_string())),
            });
        }
        if k == 0 {
            continue;
        }
        for label in &a.bases[k] {
            let ra = a.boundary_of(k, label).unwrap_or_default();
            let rb = b.boundary_of(k, label).unwrap_or_default();
            let cols: std::collections::BTreeSet<&BasisLabel> = ra.keys().chain(rb.keys()).collect();
            for col in cols {
                let zero_a = GroupRingElement::zero(a.group.clone(), a.ring.clone());
                let zero_b = GroupRingElement::zero(b.group.clone(), b.ring.clone());
                let xa = ra.get(col).unwrap_or(&zero_a);
                let xb = rb.get(col).unwrap_or(&zero_b);
                if xa != xb {
                    return Some(ComplexMismatch {
                        dim: k,
                        row: Some(label.to_string()),
                        col: Some(col.to_string()),
                        left: xa.to_string(),
                        right: xb.to_string(),
                    });
                }
            }
        }
    }
    None
}
