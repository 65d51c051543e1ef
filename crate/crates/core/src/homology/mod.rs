//! Trivial-coefficient homology of resolutions, Euler characteristics and
//! finiteness reports.

mod euler;
mod snf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::resolution::ChainComplex;
use crate::ring::CoefficientRing;

pub use euler::{
    chiswell_euler, euler_from_resolution, euler_summary, fp_report, hs_tau, vertex_euler, EulerSummary, FpReport,
    ModuleDescription, VertexFp,
};
pub use snf::{rank_mod_p, smith_normal_form, IntMatrix, SmithForm};

/// `P ⊗_{RG} R`: the ranks of a free complex with every boundary entry
/// replaced by its augmentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerComplex {
    ring: CoefficientRing,
    ranks: Vec<usize>,
    /// `boundaries[k - 1]` is `d_k`, rows indexed by degree `k`.
    boundaries: Vec<IntMatrix>,
    length: Option<usize>,
}

impl IntegerComplex {
    /// `boundaries[k - 1]` must be a `ranks[k] × ranks[k - 1]` matrix.
    pub fn new(ring: CoefficientRing, ranks: Vec<usize>, boundaries: Vec<IntMatrix>, length: Option<usize>) -> Result<Self> {
        if ranks.is_empty() || boundaries.len() + 1 != ranks.len() {
            return Err(Error::usage("need one boundary per positive degree"));
        }
        for (i, d) in boundaries.iter().enumerate() {
            if d.rows() != ranks[i + 1] || d.cols() != ranks[i] {
                return Err(Error::usage(format!("d_{} has the wrong shape", i + 1)));
            }
        }
        Ok(IntegerComplex {
            ring,
            ranks,
            boundaries,
            length,
        })
    }

    pub fn ring(&self) -> &CoefficientRing {
        &self.ring
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn max_dim(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn boundary(&self, k: usize) -> &IntMatrix {
        &self.boundaries[k - 1]
    }

    fn complete(&self) -> bool {
        self.length.is_some_and(|l| l <= self.max_dim())
    }

    fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    /// `d_k`, or `None` when it is the zero map (degree 0 or past the end).
    fn stored(&self, k: usize) -> Option<&IntMatrix> {
        (k >= 1 && k <= self.max_dim()).then(|| &self.boundaries[k - 1])
    }
}

/// Applies the augmentation to every boundary entry.
pub fn trivialize(c: &ChainComplex) -> IntegerComplex {
    let boundaries = (1..=c.max_dim())
        .map(|k| {
            let d = c.boundary(k);
            IntMatrix::from_rows(d.augmented(), d.num_cols())
        })
        .collect();
    IntegerComplex {
        ring: c.ring().clone(),
        ranks: c.ranks(),
        boundaries,
        length: c.length(),
    }
}

/// One homology group: `betti` free summands (over `Z`, or copies of the
/// coefficient ring `Z/m`) and cyclic torsion summands of the given orders,
/// ascending, each dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub dim: usize,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

/// `H_k(C ⊗ coeff)`.
///
/// For a complex over `Z` this uses Smith normal forms of `d_k` and
/// `d_{k+1}`, and the universal coefficient theorem for `Z/m`. A complex
/// over `Z/p` is treated as a complex of vector spaces. Needs `d_{k+1}`,
/// which is available when `k < max_dim` or the complex is known to stop.
pub fn homology(c: &IntegerComplex, k: usize, coeff: &CoefficientRing) -> Result<HomologyGroup> {
    if k >= c.max_dim() && !c.complete() {
        return Err(Error::usage(format!(
            "H_{k} needs d_{}, but the complex is stored only through degree {}",
            k + 1,
            c.max_dim()
        )));
    }
    let snf = |j: usize| c.stored(j).map_or_else(|| SmithForm { divisors: Vec::new(), rank: 0 }, smith_normal_form);
    match (&c.ring, coeff) {
        (CoefficientRing::Integers, CoefficientRing::Integers) => {
            let (dk, dk1) = (snf(k), snf(k + 1));
            Ok(HomologyGroup {
                dim: k,
                betti: c.rank(k) - dk.rank - dk1.rank,
                torsion: dk1.divisors.into_iter().filter(|d| !d.is_one()).collect(),
            })
        }
        (CoefficientRing::Integers, CoefficientRing::IntegersMod(m)) => {
            let m = BigInt::from(*m);
            let (dk, dk1) = (snf(k), snf(k + 1));
            let free = c.rank(k) - dk.rank - dk1.rank;
            // H_k ⊗ Z/m ⊕ Tor(H_{k-1}, Z/m).
            let mut orders: Vec<BigInt> = vec![m.clone(); free];
            orders.extend(dk1.divisors.iter().chain(&dk.divisors).map(|d| d.gcd(&m)));
            Ok(cyclic_decomposition(k, orders, &m))
        }
        (CoefficientRing::IntegersMod(p), q) if c.ring.is_prime_field() && (q == &c.ring) => {
            let rank = |j: usize| c.stored(j).map_or(0, |d| rank_mod_p(d, *p));
            Ok(HomologyGroup {
                dim: k,
                betti: c.rank(k) - rank(k) - rank(k + 1),
                torsion: Vec::new(),
            })
        }
        (CoefficientRing::IntegersMod(_), q) if c.ring.is_prime_field() => Err(Error::usage(format!(
            "a complex over {} only has homology with {} coefficients, not {q}",
            c.ring, c.ring
        ))),
        (ring, _) => Err(Error::unsupported(format!(
            "homology of complexes over {ring}; build the complex over z or a prime field"
        ))),
    }
}

/// Invariant-factor form of `⊕ Z/o_i` over `Z/m`: summands of order `m`
/// count as free, others are listed as torsion.
fn cyclic_decomposition(k: usize, orders: Vec<BigInt>, m: &BigInt) -> HomologyGroup {
    let mut diag: Vec<BigInt> = orders.into_iter().filter(|o| !o.is_one() && !o.is_zero()).collect();
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = &diag[i] / &g * &diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    }
    let betti = diag.iter().filter(|d| *d == m).count();
    HomologyGroup {
        dim: k,
        betti,
        torsion: diag.into_iter().filter(|d| d != m && !d.is_one()).collect(),
    }
}

/// Homology in every degree `0..=top`.
pub fn homology_report(c: &IntegerComplex, top: usize, coeff: &CoefficientRing) -> Result<Vec<HomologyGroup>> {
    (0..=top).map(|k| homology(c, k, coeff)).collect()
}
