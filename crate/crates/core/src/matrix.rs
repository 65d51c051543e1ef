//! Sparse matrices over a group ring.
//!
//! Rows and columns carry basis labels. A boundary map `d_k` is stored with
//! rows indexed by the degree-`k` basis and columns by the degree-`k-1`
//! basis, so the composite `d_{k-1} ∘ d_k` is the product `d_k · d_{k-1}`.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{CoefficientRing, GroupRingElement};
use crate::word::{same_group, GraphProduct};

#[derive(Clone, Debug)]
pub struct GroupRingMatrix<L> {
    group: Arc<GraphProduct>,
    ring: CoefficientRing,
    rows: Vec<L>,
    cols: Vec<L>,
    entries: Vec<BTreeMap<usize, GroupRingElement>>,
}

impl<L: Clone + Eq + Hash> GroupRingMatrix<L> {
    pub fn zeros(group: Arc<GraphProduct>, ring: CoefficientRing, rows: Vec<L>, cols: Vec<L>) -> Self {
        let entries = vec![BTreeMap::new(); rows.len()];
        GroupRingMatrix {
            group,
            ring,
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(group: Arc<GraphProduct>, ring: CoefficientRing, labels: Vec<L>) -> Self {
        let mut m = Self::zeros(group.clone(), ring.clone(), labels.clone(), labels);
        for i in 0..m.rows.len() {
            m.entries[i].insert(i, GroupRingElement::one(group.clone(), ring.clone()));
        }
        m
    }

    pub fn group(&self) -> &Arc<GraphProduct> {
        &self.group
    }

    pub fn ring(&self) -> &CoefficientRing {
        &self.ring
    }

    pub fn rows(&self) -> &[L] {
        &self.rows
    }

    pub fn cols(&self) -> &[L] {
        &self.cols
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&GroupRingElement> {
        self.entries[r].get(&c)
    }

    /// Entry as an owned element, zero when absent.
    pub fn entry(&self, r: usize, c: usize) -> GroupRingElement {
        self.get(r, c)
            .cloned()
            .unwrap_or_else(|| GroupRingElement::zero(self.group.clone(), self.ring.clone()))
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, &GroupRingElement)> {
        self.entries[r].iter().map(|(c, x)| (*c, x))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &GroupRingElement)> {
        self.entries
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, x)| (r, *c, x)))
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(BTreeMap::is_empty)
    }

    pub fn set(&mut self, r: usize, c: usize, x: GroupRingElement) -> Result<()> {
        self.check_entry(&x)?;
        if x.is_zero() {
            self.entries[r].remove(&c);
        } else {
            self.entries[r].insert(c, x);
        }
        Ok(())
    }

    /// Adds `x` into entry `(r, c)`.
    pub fn accumulate(&mut self, r: usize, c: usize, x: &GroupRingElement) -> Result<()> {
        self.check_entry(x)?;
        let updated = match self.entries[r].get(&c) {
            Some(old) => old.checked_add(x)?,
            None => x.clone(),
        };
        if updated.is_zero() {
            self.entries[r].remove(&c);
        } else {
            self.entries[r].insert(c, updated);
        }
        Ok(())
    }

    fn check_entry(&self, x: &GroupRingElement) -> Result<()> {
        if *x.ring() != self.ring || !same_group(x.group(), &self.group) {
            return Err(Error::usage("entry does not belong to the matrix's group ring"));
        }
        Ok(())
    }

    pub fn mat_mul(&self, other: &GroupRingMatrix<L>) -> Result<GroupRingMatrix<L>> {
        if self.ring != other.ring || !same_group(&self.group, &other.group) {
            return Err(Error::usage("matrices over different group rings"));
        }
        if self.cols != other.rows {
            return Err(Error::usage(format!(
                "cannot multiply {}x{} by {}x{}: inner labels differ",
                self.num_rows(),
                self.num_cols(),
                other.num_rows(),
                other.num_cols()
            )));
        }
        let mut out = Self::zeros(self.group.clone(), self.ring.clone(), self.rows.clone(), other.cols.clone());
        for (r, row) in self.entries.iter().enumerate() {
            for (mid, a) in row {
                for (c, b) in &other.entries[*mid] {
                    out.accumulate(r, *c, &a.checked_mul(b)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Entrywise image under a map that sends zero to zero.
    pub fn map_entries(
        &self,
        target: Arc<GraphProduct>,
        f: impl Fn(&GroupRingElement) -> GroupRingElement,
    ) -> Result<GroupRingMatrix<L>> {
        let ring = self.ring.clone();
        let mut out = Self::zeros(target, ring, self.rows.clone(), self.cols.clone());
        for (r, c, x) in self.nonzero() {
            out.set(r, c, f(x))?;
        }
        Ok(out)
    }

    /// Integer (or residue) matrix of augmentations, dense row-major.
    pub fn augmented(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::default(); self.num_cols()]; self.num_rows()];
        for (r, c, x) in self.nonzero() {
            out[r][c] = x.augment();
        }
        out
    }

    pub fn row_index(&self) -> HashMap<&L, usize> {
        self.rows.iter().enumerate().map(|(i, l)| (l, i)).collect()
    }

    pub fn col_index(&self) -> HashMap<&L, usize> {
        self.cols.iter().enumerate().map(|(i, l)| (l, i)).collect()
    }
}
