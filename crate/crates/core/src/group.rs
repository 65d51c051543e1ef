//! Vertex groups: the catalog of groups that can sit at a vertex, and exact
//! arithmetic on their elements.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::presentation::Presentation;

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTable {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    names: Option<Vec<String>>,
}

impl FiniteTable {
    pub fn new(table: Vec<Vec<usize>>, identity: usize, names: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::input("group table is empty"));
        }
        if identity >= n {
            return Err(Error::input("identity index out of range"));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::input(format!("table row {i} has length {} (expected {n})", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::input(format!("table entry {bad} in row {i} is not an element")));
            }
        }
        for g in 0..n {
            if table[identity][g] != g || table[g][identity] != g {
                return Err(Error::input(format!("element {identity} is not a two-sided identity")));
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == identity && table[h][g] == identity) {
                Some(h) => inverses.push(h),
                None => return Err(Error::input(format!("element {g} has no inverse"))),
            }
        }
        // Exhaustive below a few million triples, evenly strided above that.
        let stride = if n <= 128 { 1 } else { n / 97 + 1 };
        for a in (0..n).step_by(stride) {
            for b in (0..n).step_by(stride) {
                for c in (0..n).step_by(stride) {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::input(format!(
                            "table is not associative on ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        if let Some(names) = &names {
            if names.len() != n {
                return Err(Error::input("element name list does not match table size"));
            }
            for (i, nm) in names.iter().enumerate() {
                if names[..i].contains(nm) {
                    return Err(Error::input(format!("duplicate element name '{nm}'")));
                }
            }
        }
        Ok(FiniteTable {
            table,
            identity,
            inverses,
            names,
        })
    }

    /// The cyclic group of order `n` as a table, elements `0..n` under addition.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteTable::new(table, 0, None).expect("cyclic table is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn element_name(&self, a: usize) -> String {
        match &self.names {
            Some(names) => names[a].clone(),
            None => a.to_string(),
        }
    }

    fn lookup(&self, token: &str) -> Option<usize> {
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|n| n == token) {
                return Some(i);
            }
        }
        token.parse::<usize>().ok().filter(|&i| i < self.order())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Trivial,
    Cyclic { n: u64 },
    InfiniteCyclic,
    Free { rank: usize },
    FiniteTable(Arc<FiniteTable>),
    /// Only usable by the presentation pipeline; it has no word arithmetic.
    Presented(Presentation),
}

/// Payload of a single vertex-group element, in canonical form for its kind.
///
/// Cyclic exponents live in `[0, n)`. Free-group words are freely reduced
/// lists of signed generator numbers (`+i` is `x_i`, `-i` its inverse,
/// numbering from 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Power(i64),
    Free(Vec<i32>),
    Table(u32),
}

impl GroupKind {
    pub fn cyclic(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::input(format!("cyclic group order must be at least 2, got {n}")));
        }
        Ok(GroupKind::Cyclic { n })
    }

    pub fn free(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::input("free group rank must be at least 1"));
        }
        Ok(GroupKind::Free { rank })
    }

    pub fn has_word_arithmetic(&self) -> bool {
        !matches!(self, GroupKind::Presented(_))
    }

    pub fn identity(&self) -> Elem {
        match self {
            GroupKind::Free { .. } => Elem::Free(Vec::new()),
            GroupKind::FiniteTable(t) => Elem::Table(t.identity() as u32),
            _ => Elem::Power(0),
        }
    }

    pub fn is_identity(&self, e: &Elem) -> bool {
        *e == self.identity()
    }

    pub fn multiply(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (GroupKind::Trivial, _, _) => Elem::Power(0),
            (GroupKind::Cyclic { n }, Elem::Power(x), Elem::Power(y)) => {
                Elem::Power((x + y).rem_euclid(*n as i64))
            }
            (GroupKind::InfiniteCyclic, Elem::Power(x), Elem::Power(y)) => Elem::Power(x + y),
            (GroupKind::Free { .. }, Elem::Free(x), Elem::Free(y)) => {
                let mut out = x.clone();
                for &letter in y {
                    if out.last() == Some(&-letter) {
                        out.pop();
                    } else {
                        out.push(letter);
                    }
                }
                Elem::Free(out)
            }
            (GroupKind::FiniteTable(t), Elem::Table(x), Elem::Table(y)) => {
                Elem::Table(t.mul(*x as usize, *y as usize) as u32)
            }
            _ => panic!("element payloads {a:?}, {b:?} do not belong to {self:?}"),
        }
    }

    pub fn inverse(&self, a: &Elem) -> Elem {
        match (self, a) {
            (GroupKind::Trivial, _) => Elem::Power(0),
            (GroupKind::Cyclic { n }, Elem::Power(x)) => Elem::Power((-x).rem_euclid(*n as i64)),
            (GroupKind::InfiniteCyclic, Elem::Power(x)) => Elem::Power(-x),
            (GroupKind::Free { .. }, Elem::Free(w)) => Elem::Free(w.iter().rev().map(|l| -l).collect()),
            (GroupKind::FiniteTable(t), Elem::Table(x)) => Elem::Table(t.inv(*x as usize) as u32),
            _ => panic!("element payload {a:?} does not belong to {self:?}"),
        }
    }

    pub fn pow(&self, a: &Elem, exp: i64) -> Elem {
        let base = if exp < 0 { self.inverse(a) } else { a.clone() };
        let mut acc = self.identity();
        for _ in 0..exp.unsigned_abs() {
            acc = self.multiply(&acc, &base);
        }
        acc
    }

    /// The designated generators: `t` for cyclic kinds, `x1..xk` for free
    /// groups, every element for a table.
    pub fn generators(&self) -> Vec<Elem> {
        match self {
            GroupKind::Trivial | GroupKind::Presented(_) => Vec::new(),
            GroupKind::Cyclic { .. } | GroupKind::InfiniteCyclic => vec![Elem::Power(1)],
            GroupKind::Free { rank } => (1..=*rank as i32).map(|i| Elem::Free(vec![i])).collect(),
            GroupKind::FiniteTable(t) => (0..t.order() as u32).map(Elem::Table).collect(),
        }
    }

    /// Validates a payload and brings it into canonical form.
    pub fn canonical(&self, e: Elem) -> Result<Elem> {
        match (self, e) {
            (GroupKind::Trivial, Elem::Power(_)) => Ok(Elem::Power(0)),
            (GroupKind::Cyclic { n }, Elem::Power(x)) => Ok(Elem::Power(x.rem_euclid(*n as i64))),
            (GroupKind::InfiniteCyclic, e @ Elem::Power(_)) => Ok(e),
            (GroupKind::Free { rank }, Elem::Free(w)) => {
                if let Some(bad) = w.iter().find(|l| **l == 0 || l.unsigned_abs() as usize > *rank) {
                    return Err(Error::input(format!("free generator index {bad} out of range")));
                }
                Ok(self.multiply(&Elem::Free(Vec::new()), &Elem::Free(w)))
            }
            (GroupKind::FiniteTable(t), Elem::Table(x)) if (x as usize) < t.order() => Ok(Elem::Table(x)),
            (kind, e) => Err(Error::input(format!("{e:?} is not an element of {kind}"))),
        }
    }

    pub fn format_elem(&self, e: &Elem) -> String {
        if self.is_identity(e) {
            return "1".to_string();
        }
        match e {
            Elem::Power(1) => "t".to_string(),
            Elem::Power(k) => format!("t^{k}"),
            Elem::Free(w) => {
                let mut parts = Vec::new();
                let mut i = 0;
                while i < w.len() {
                    let g = w[i].abs();
                    let sign = w[i].signum();
                    let mut run = 0i64;
                    while i < w.len() && w[i] == g * sign {
                        run += 1;
                        i += 1;
                    }
                    let exp = run * sign as i64;
                    parts.push(if exp == 1 { format!("x{g}") } else { format!("x{g}^{exp}") });
                }
                parts.join("*")
            }
            Elem::Table(x) => match self {
                GroupKind::FiniteTable(t) => t.element_name(*x as usize),
                _ => x.to_string(),
            },
        }
    }

    /// Parses `factor ('*' factor)*` with `factor := gen ('^' int)?`.
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let mut acc = self.identity();
        for factor in text.split('*') {
            let factor = factor.trim();
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => {
                    let e: i64 = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::input(format!("bad exponent in '{factor}'")))?;
                    (b.trim(), e)
                }
                None => (factor, 1),
            };
            let g = self.parse_generator(base)?;
            acc = self.multiply(&acc, &self.pow(&g, exp));
        }
        Ok(acc)
    }

    fn parse_generator(&self, token: &str) -> Result<Elem> {
        if token == "1" && !matches!(self, GroupKind::FiniteTable(_)) {
            return Ok(self.identity());
        }
        let bad = || Error::input(format!("'{token}' is not a generator of {self}"));
        match self {
            GroupKind::Trivial => Err(bad()),
            GroupKind::Cyclic { .. } | GroupKind::InfiniteCyclic => {
                if token == "t" {
                    Ok(Elem::Power(1))
                } else {
                    Err(bad())
                }
            }
            GroupKind::Free { rank } => {
                let i: usize = token.strip_prefix('x').and_then(|s| s.parse().ok()).ok_or_else(bad)?;
                if i == 0 || i > *rank {
                    return Err(bad());
                }
                Ok(Elem::Free(vec![i as i32]))
            }
            GroupKind::FiniteTable(t) => t.lookup(token).map(|i| Elem::Table(i as u32)).ok_or_else(bad),
            GroupKind::Presented(_) => Err(Error::unsupported("presented groups have no element syntax")),
        }
    }

    /// Length of the catalog resolution, `None` when it never terminates.
    pub fn resolution_length(&self) -> Option<usize> {
        match self {
            GroupKind::Trivial => Some(0),
            GroupKind::InfiniteCyclic | GroupKind::Free { .. } => Some(1),
            GroupKind::FiniteTable(t) if t.order() == 1 => Some(0),
            _ => None,
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Trivial => write!(f, "trivial"),
            GroupKind::Cyclic { n } => write!(f, "cyclic({n})"),
            GroupKind::InfiniteCyclic => write!(f, "infinite_cyclic"),
            GroupKind::Free { rank } => write!(f, "free({rank})"),
            GroupKind::FiniteTable(t) => write!(f, "finite_table(order {})", t.order()),
            GroupKind::Presented(p) => write!(f, "presented({} generators)", p.generators().len()),
        }
    }
}

/// Catalog entry: a named vertex and the group sitting on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexGroupSpec {
    pub name: String,
    pub kind: GroupKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexElement {
    pub owner: String,
    pub elem: Elem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexOp {
    Multiply,
    Inverse,
    Identity,
    IsIdentity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexOpResult {
    Element(VertexElement),
    Flag(bool),
}

impl VertexGroupSpec {
    pub fn new(name: impl Into<String>, kind: GroupKind) -> Self {
        VertexGroupSpec {
            name: name.into(),
            kind,
        }
    }

    pub fn element(&self, elem: Elem) -> Result<VertexElement> {
        Ok(VertexElement {
            owner: self.name.clone(),
            elem: self.kind.canonical(elem)?,
        })
    }

    fn check_owner(&self, e: &VertexElement) -> Result<()> {
        if e.owner != self.name {
            return Err(Error::usage(format!(
                "element owned by '{}' used with vertex '{}'",
                e.owner, self.name
            )));
        }
        if !self.kind.has_word_arithmetic() {
            return Err(Error::unsupported(format!("vertex '{}' has no element arithmetic", self.name)));
        }
        Ok(())
    }

    pub fn op(&self, op: VertexOp, args: &[VertexElement]) -> Result<VertexOpResult> {
        for a in args {
            self.check_owner(a)?;
        }
        let arity = match op {
            VertexOp::Multiply => 2,
            VertexOp::Inverse | VertexOp::IsIdentity => 1,
            VertexOp::Identity => 0,
        };
        if args.len() != arity {
            return Err(Error::usage(format!("{op:?} takes {arity} arguments, got {}", args.len())));
        }
        let wrap = |elem| {
            VertexOpResult::Element(VertexElement {
                owner: self.name.clone(),
                elem,
            })
        };
        Ok(match op {
            VertexOp::Multiply => wrap(self.kind.multiply(&args[0].elem, &args[1].elem)),
            VertexOp::Inverse => wrap(self.kind.inverse(&args[0].elem)),
            VertexOp::Identity => wrap(self.kind.identity()),
            VertexOp::IsIdentity => VertexOpResult::Flag(self.kind.is_identity(&args[0].elem)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elem(r: VertexOpResult) -> Elem {
        match r {
            VertexOpResult::Element(e) => e.elem,
            VertexOpResult::Flag(_) => panic!("expected element"),
        }
    }

    #[test]
    fn cyclic_multiplication_wraps() {
        let spec = VertexGroupSpec::new("v", GroupKind::cyclic(5).unwrap());
        let a = spec.element(Elem::Power(3)).unwrap();
        let b = spec.element(Elem::Power(4)).unwrap();
        assert_eq!(elem(spec.op(VertexOp::Multiply, &[a, b]).unwrap()), Elem::Power(2));
    }

    #[test]
    fn free_multiplication_reduces() {
        let spec = VertexGroupSpec::new("v", GroupKind::free(2).unwrap());
        let ab = spec.element(Elem::Free(vec![1, 2])).unwrap();
        let binv_a = spec.element(Elem::Free(vec![-2, 1])).unwrap();
        assert_eq!(
            elem(spec.op(VertexOp::Multiply, &[ab, binv_a]).unwrap()),
            Elem::Free(vec![1, 1])
        );
    }

    #[test]
    fn inverse_gives_identity_for_every_kind() {
        let kinds = vec![
            GroupKind::Trivial,
            GroupKind::cyclic(4).unwrap(),
            GroupKind::InfiniteCyclic,
            GroupKind::free(3).unwrap(),
            GroupKind::FiniteTable(Arc::new(FiniteTable::cyclic(3))),
        ];
        let samples = [
            Elem::Power(0),
            Elem::Power(3),
            Elem::Power(-7),
            Elem::Free(vec![1, -3, 2]),
            Elem::Table(2),
        ];
        for (kind, x) in kinds.into_iter().zip(samples) {
            let spec = VertexGroupSpec::new("v", kind);
            let x = spec.element(x).unwrap();
            let inv = elem(spec.op(VertexOp::Inverse, std::slice::from_ref(&x)).unwrap());
            let inv = spec.element(inv).unwrap();
            let prod = spec.op(VertexOp::Multiply, &[x, inv]).unwrap();
            let prod = match prod {
                VertexOpResult::Element(e) => e,
                _ => unreachable!(),
            };
            assert_eq!(spec.op(VertexOp::IsIdentity, &[prod]).unwrap(), VertexOpResult::Flag(true));
        }
    }

    #[test]
    fn mixed_owner_is_usage_error() {
        let v = VertexGroupSpec::new("v", GroupKind::InfiniteCyclic);
        let w = VertexGroupSpec::new("w", GroupKind::InfiniteCyclic);
        let a = v.element(Elem::Power(1)).unwrap();
        let b = w.element(Elem::Power(1)).unwrap();
        assert!(matches!(v.op(VertexOp::Multiply, &[a, b]), Err(Error::Usage(_))));
    }

    #[test]
    fn invalid_tables_rejected() {
        assert!(FiniteTable::new(vec![vec![0, 1], vec![1, 1]], 0, None).is_err());
        assert!(FiniteTable::new(vec![vec![0, 1], vec![1, 2]], 0, None).is_err());
        // Latin square with identity 0 that is not associative.
        let quasigroup = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteTable::new(quasigroup, 0, None).is_err());
        assert!(GroupKind::cyclic(1).is_err());
        assert!(GroupKind::free(0).is_err());
    }

    #[test]
    fn element_syntax_round_trips() {
        let free = GroupKind::free(2).unwrap();
        let e = free.parse_elem("x1^2*x2^-1").unwrap();
        assert_eq!(e, Elem::Free(vec![1, 1, -2]));
        assert_eq!(free.format_elem(&e), "x1^2*x2^-1");
        let cyc = GroupKind::cyclic(3).unwrap();
        assert_eq!(cyc.parse_elem("t^-1").unwrap(), Elem::Power(2));
        assert_eq!(cyc.format_elem(&Elem::Power(2)), "t^2");
        let s3 = FiniteTable::new(
            vec![
                vec![0, 1, 2, 3, 4, 5],
                vec![1, 2, 0, 4, 5, 3],
                vec![2, 0, 1, 5, 3, 4],
                vec![3, 5, 4, 0, 2, 1],
                vec![4, 3, 5, 1, 0, 2],
                vec![5, 4, 3, 2, 1, 0],
            ],
            0,
            Some(["e", "r", "rr", "s", "sr", "srr"].map(String::from).to_vec()),
        )
        .unwrap();
        let kind = GroupKind::FiniteTable(Arc::new(s3));
        assert_eq!(kind.parse_elem("r*s").unwrap(), Elem::Table(4));
        assert_eq!(kind.parse_elem("3").unwrap(), Elem::Table(3));
        assert!(GroupKind::Trivial.parse_elem("t").is_err());
    }
}
