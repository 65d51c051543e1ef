//! Group rings `R G` with `R` the integers or the integers mod `m`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::word::{same_group, GraphProduct, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    Integers,
    IntegersMod(u64),
}

impl CoefficientRing {
    pub fn modulo(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::input(format!("modulus must be at least 2, got {m}")));
        }
        Ok(CoefficientRing::IntegersMod(m))
    }

    /// Canonical representative: residues live in `[0, m)`.
    pub fn reduce(&self, c: BigInt) -> BigInt {
        match self {
            CoefficientRing::Integers => c,
            CoefficientRing::IntegersMod(m) => c.mod_floor(&BigInt::from(*m)),
        }
    }

    pub fn is_prime_field(&self) -> bool {
        match self {
            CoefficientRing::Integers => false,
            CoefficientRing::IntegersMod(m) => (2..).take_while(|d| d * d <= *m).all(|d| m % d != 0),
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "z"),
            CoefficientRing::IntegersMod(m) => write!(f, "z/{m}"),
        }
    }
}

impl FromStr for CoefficientRing {
    type Err = Error;

    /// Accepts `z` or `z/m`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "z" {
            return Ok(CoefficientRing::Integers);
        }
        let m = s
            .strip_prefix("z/")
            .and_then(|m| m.parse::<u64>().ok())
            .ok_or_else(|| Error::input(format!("unknown coefficient ring '{s}' (expected z or z/m)")))?;
        CoefficientRing::modulo(m)
    }
}

/// A finite formal sum of group elements with nonzero coefficients.
#[derive(Clone)]
pub struct GroupRingElement {
    group: Arc<GraphProduct>,
    ring: CoefficientRing,
    terms: BTreeMap<Word, BigInt>,
}

impl PartialEq for GroupRingElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms && same_group(&self.group, &other.group)
    }
}

impl Eq for GroupRingElement {}

impl GroupRingElement {
    pub fn zero(group: Arc<GraphProduct>, ring: CoefficientRing) -> Self {
        GroupRingElement {
            group,
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(group: Arc<GraphProduct>, ring: CoefficientRing) -> Self {
        Self::monomial(group, ring, Word::identity(), BigInt::one())
    }

    pub fn monomial(group: Arc<GraphProduct>, ring: CoefficientRing, word: Word, coeff: impl Into<BigInt>) -> Self {
        let mut x = Self::zero(group, ring);
        x.add_term(word, coeff.into());
        x
    }

    /// `g - 1`.
    pub fn minus_one(group: Arc<GraphProduct>, ring: CoefficientRing, g: Word) -> Self {
        let mut x = Self::monomial(group, ring, g, 1);
        x.add_term(Word::identity(), BigInt::from(-1));
        x
    }

    pub fn group(&self) -> &Arc<GraphProduct> {
        &self.group
    }

    pub fn ring(&self) -> &CoefficientRing {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, word: Word, coeff: BigInt) {
        match self.terms.entry(word) {
            Entry::Occupied(mut e) => {
                let c = self.ring.reduce(e.get() + coeff);
                if c.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = c;
                }
            }
            Entry::Vacant(e) => {
                let c = self.ring.reduce(coeff);
                if !c.is_zero() {
                    e.insert(c);
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::usage(format!("coefficient rings differ: {} vs {}", self.ring, other.ring)));
        }
        if !same_group(&self.group, &other.group) {
            return Err(Error::usage("group ring elements over different groups"));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.group.clone(), self.ring.clone());
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(self.group.multiply(u, v), a * b);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.group.clone(), self.ring.clone());
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a * c);
        }
        out
    }

    /// Sum of coefficients, reduced into the coefficient ring.
    pub fn augment(&self) -> BigInt {
        self.ring.reduce(self.terms.values().sum())
    }

    /// Applies a group homomorphism termwise.
    pub fn map_group(&self, target: Arc<GraphProduct>, f: impl Fn(&Word) -> Word) -> Self {
        let mut out = Self::zero(target, self.ring.clone());
        for (w, c) in &self.terms {
            out.add_term(f(w), c.clone());
        }
        out
    }

    /// Sorted `coefficient*word` strings.
    pub fn term_strings(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|(w, c)| format!("{c}*{}", self.group.format_word(w)))
            .collect()
    }

    /// Parses `c*word + c*word - word ...`. Words use the syllable syntax of
    /// [`GraphProduct::parse_word`].
    pub fn parse(group: Arc<GraphProduct>, ring: CoefficientRing, text: &str) -> Result<Self> {
        let mut out = Self::zero(group.clone(), ring);
        let mut sign = BigInt::one();
        let mut current = String::new();
        let flush = |current: &mut String, sign: &BigInt, out: &mut Self| -> Result<()> {
            let t = current.trim();
            if t.is_empty() {
                return Ok(());
            }
            let (coeff, word) = match t.split_once('*') {
                Some((c, w)) if c.trim().parse::<BigInt>().is_ok() => (c.trim().parse::<BigInt>().unwrap(), w),
                _ => match t.parse::<BigInt>() {
                    Ok(c) => (c, "1"),
                    Err(_) => (BigInt::one(), t),
                },
            };
            out.add_term(group.parse_word(word)?, coeff * sign);
            current.clear();
            Ok(())
        };
        for ch in text.chars() {
            match ch {
                '+' | '-' if !current.trim_end().ends_with('^') => {
                    flush(&mut current, &sign, &mut out)?;
                    sign = if ch == '-' { BigInt::from(-1) } else { BigInt::one() };
                }
                _ => current.push(ch),
            }
        }
        flush(&mut current, &sign, &mut out)?;
        Ok(out)
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let word = self.group.format_word(w);
            let (neg, mag) = (c.is_negative(), c.abs());
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_identity() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{word}")?;
            } else {
                write!(f, "{mag}*{word}")?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a GroupRingElement> for &'a GroupRingElement {
    type Output = GroupRingElement;

    /// Panics on mismatched rings or groups; see [`GroupRingElement::checked_add`].
    fn add(self, rhs: &'a GroupRingElement) -> GroupRingElement {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Sub<&'a GroupRingElement> for &'a GroupRingElement {
    type Output = GroupRingElement;

    fn sub(self, rhs: &'a GroupRingElement) -> GroupRingElement {
        self.checked_add(&-rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Mul<&'a GroupRingElement> for &'a GroupRingElement {
    type Output = GroupRingElement;

    fn mul(self, rhs: &'a GroupRingElement) -> GroupRingElement {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;

    fn neg(self) -> GroupRingElement {
        self.scale(&BigInt::from(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::group::{Elem, FiniteTable, GroupKind, VertexGroupSpec};
    use proptest::prelude::*;

    fn z() -> Arc<GraphProduct> {
        Arc::new(GraphProduct::single(&VertexGroupSpec::new("v", GroupKind::InfiniteCyclic)).unwrap())
    }

    fn t_pow(g: &Arc<GraphProduct>, k: i64) -> Word {
        g.syllable(0, Elem::Power(k)).unwrap()
    }

    #[test]
    fn unit_times_inverse() {
        let g = z();
        let x = GroupRingElement::monomial(g.clone(), CoefficientRing::Integers, t_pow(&g, 3), 1);
        let y = GroupRingElement::monomial(g.clone(), CoefficientRing::Integers, t_pow(&g, -3), 1);
        assert_eq!(&x * &y, GroupRingElement::one(g, CoefficientRing::Integers));
    }

    #[test]
    fn geometric_sum_telescopes() {
        let g = z();
        let r = CoefficientRing::Integers;
        let one_minus_t = -&GroupRingElement::minus_one(g.clone(), r.clone(), t_pow(&g, 1));
        let mut norm = GroupRingElement::zero(g.clone(), r.clone());
        for k in 0..3 {
            norm.add_term(t_pow(&g, k), BigInt::one());
        }
        let expect = -&GroupRingElement::minus_one(g.clone(), r, t_pow(&g, 3));
        assert_eq!(&one_minus_t * &norm, expect);
        assert_eq!(format!("{expect}"), "1 - v:t^3");
    }

    #[test]
    fn scaling_and_augmentation() {
        let g = z();
        let r = CoefficientRing::Integers;
        let x = GroupRingElement::parse(g.clone(), r.clone(), "3*v:t - 2 + v:t^-1").unwrap();
        assert!(x.scale(&BigInt::zero()).is_zero());
        assert_eq!(x.augment(), BigInt::from(2));
        let diff = GroupRingElement::parse(g.clone(), r.clone(), "v:t^2 - v:t^5").unwrap();
        assert_eq!(diff.augment(), BigInt::zero());
        assert_eq!(GroupRingElement::zero(g, r).augment(), BigInt::zero());

        let c5 = Arc::new(GraphProduct::single(&VertexGroupSpec::new("v", GroupKind::cyclic(5).unwrap())).unwrap());
        let mut norm = GroupRingElement::zero(c5.clone(), CoefficientRing::Integers);
        for k in 0..5 {
            norm.add_term(c5.syllable(0, Elem::Power(k)).unwrap(), BigInt::one());
        }
        assert_eq!(norm.augment(), BigInt::from(5));
    }

    #[test]
    fn modular_coefficients_reduce() {
        let g = z();
        let r = CoefficientRing::modulo(3).unwrap();
        let x = GroupRingElement::parse(g.clone(), r.clone(), "2*v:t").unwrap();
        let y = &x + &x;
        assert_eq!(y.term_strings(), vec!["1*v:t".to_string()]);
        assert!((&y + &x).is_zero());
        assert_eq!("z/6".parse::<CoefficientRing>().unwrap(), CoefficientRing::IntegersMod(6));
        assert!("z/1".parse::<CoefficientRing>().is_err());
        assert!("q".parse::<CoefficientRing>().is_err());
    }

    #[test]
    fn mismatches_are_usage_errors() {
        let g = z();
        let x = GroupRingElement::one(g.clone(), CoefficientRing::Integers);
        let y = GroupRingElement::one(g, CoefficientRing::IntegersMod(2));
        assert!(matches!(x.checked_add(&y), Err(Error::Usage(_))));
        let other = Arc::new(GraphProduct::single(&VertexGroupSpec::new("w", GroupKind::InfiniteCyclic)).unwrap());
        let w = GroupRingElement::one(other, CoefficientRing::Integers);
        assert!(matches!(x.checked_mul(&w), Err(Error::Usage(_))));
    }

    fn small_product() -> Arc<GraphProduct> {
        let g = Graph::new(&["a", "b", "c"], &[("a", "b")]).unwrap();
        let specs = [
            VertexGroupSpec::new("a", GroupKind::cyclic(3).unwrap()),
            VertexGroupSpec::new("b", GroupKind::free(2).unwrap()),
            VertexGroupSpec::new("c", GroupKind::FiniteTable(Arc::new(FiniteTable::cyclic(2)))),
        ];
        Arc::new(GraphProduct::new(g, &specs).unwrap())
    }

    fn arb_element() -> impl Strategy<Value = Vec<(Vec<(usize, i32)>, i64)>> {
        let syllable = (0usize..3, 1i32..3);
        let word = proptest::collection::vec(syllable, 0..=3);
        proptest::collection::vec((word, -3i64..=3), 0..4)
    }

    fn build(g: &Arc<GraphProduct>, spec: Vec<(Vec<(usize, i32)>, i64)>) -> GroupRingElement {
        let mut x = GroupRingElement::zero(g.clone(), CoefficientRing::Integers);
        for (syls, c) in spec {
            let raw = syls
                .into_iter()
                .map(|(v, e)| crate::word::Syllable {
                    vertex: v,
                    elem: match v {
                        0 => Elem::Power(e as i64),
                        1 => Elem::Free(vec![if e == 1 { 1 } else { -2 }]),
                        _ => Elem::Table((e % 2) as u32),
                    },
                })
                .collect();
            x.add_term(g.normalize(raw).unwrap(), BigInt::from(c));
        }
        x
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_element(), b in arb_element(), c in arb_element()) {
            let g = small_product();
            let (x, y, z) = (build(&g, a), build(&g, b), build(&g, c));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
            prop_assert_eq!((&x * &y).augment(), x.augment() * y.augment());
            prop_assert!((&x - &x).is_zero());
        }
    }
}
