//! The two factor groups of a free product and arithmetic inside them.
//!
//! Three kinds of factor are supported: the infinite cyclic group `Z`, finite
//! cyclic groups `Z/p`, and finite groups given by an explicit Cayley table.
//! In every kind the identity is encoded by payload `0`, so a
//! [`FactorElement`] with payload `0` is the identity of its factor.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use num_traits::{FromPrimitive, Num, ToPrimitive};

use crate::error::{Error, Result};

/// Which factor of `A * B` an element belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }

    /// Letter used for this factor's generator in the word grammar.
    pub fn label(self) -> char {
        match self {
            Side::A => 'a',
            Side::B => 'b',
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::A => f.write_str("A"),
            Side::B => f.write_str("B"),
        }
    }
}

/// A finite group given by its multiplication table.
///
/// Internally the identity sits at index 0; a table declared with another
/// identity label is stored with labels `0` and `identity` swapped, and
/// [`CayleyTable::label`] / [`CayleyTable::index_of`] translate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    entries: Vec<usize>,
    inverses: Vec<usize>,
    identity: usize,
}

impl CayleyTable {
    /// Builds a table from row-major entries and runs the full group check:
    /// index 0 is a two-sided identity, the product is associative and every
    /// element has an inverse.
    pub fn new(order: usize, entries: Vec<usize>) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidTable(format!(
                "order {order}; a free product factor must be nontrivial"
            )));
        }
        if entries.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "expected {} entries, found {}",
                order * order,
                entries.len()
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e >= order) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range")));
        }
        let at = |i: usize, j: usize| entries[i * order + j];
        for i in 0..order {
            if at(0, i) != i || at(i, 0) != i {
                return Err(Error::InvalidTable("index 0 is not the identity".into()));
            }
        }
        for x in 0..order {
            for y in 0..order {
                let xy = at(x, y);
                for z in 0..order {
                    if at(xy, z) != at(x, at(y, z)) {
                        return Err(Error::InvalidTable(format!(
                            "not associative at ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(order);
        for x in 0..order {
            match (0..order).find(|&y| at(x, y) == 0 && at(y, x) == 0) {
                Some(y) => inverses.push(y),
                None => {
                    return Err(Error::InvalidTable(format!("element {x} has no inverse")));
                }
            }
        }
        Ok(CayleyTable {
            order,
            entries,
            inverses,
            identity: 0,
        })
    }

    /// Like [`CayleyTable::new`] with the identity at label `identity`.
    pub fn with_identity(order: usize, entries: Vec<usize>, identity: usize) -> Result<Self> {
        if identity >= order {
            return Err(Error::InvalidTable(format!("identity {identity} out of range")));
        }
        if entries.len() != order * order {
            return Self::new(order, entries);
        }
        let swap = |x: usize| match x {
            0 => identity,
            x if x == identity => 0,
            x => x,
        };
        let mut relabelled = vec![0; order * order];
        for i in 0..order {
            for j in 0..order {
                let e = entries[swap(i) * order + swap(j)];
                relabelled[i * order + j] = if e < order { swap(e) } else { e };
            }
        }
        let mut t = Self::new(order, relabelled).map_err(|e| match e {
            Error::InvalidTable(m) if m.starts_with("index 0") => {
                Error::InvalidTable(format!("{identity} is not the identity"))
            }
            e => e,
        })?;
        t.identity = identity;
        Ok(t)
    }

    /// Parses the plain-text format: a header line `n` or `n identity`,
    /// then `n` rows of `n` whitespace-separated element labels.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: Vec<&str> = lines
            .next()
            .ok_or_else(|| Error::InvalidTable("empty table".into()))?
            .split_whitespace()
            .collect();
        let number = |t: &str| {
            t.parse::<usize>()
                .map_err(|e| Error::InvalidTable(format!("bad entry {t:?}: {e}")))
        };
        let (order, identity) = match header.as_slice() {
            [n] => (number(n)?, 0),
            [n, e] => (number(n)?, number(e)?),
            _ => return Err(Error::InvalidTable("header must be `n` or `n identity`".into())),
        };
        let entries = lines
            .flat_map(str::split_whitespace)
            .map(number)
            .collect::<Result<Vec<_>>>()?;
        Self::with_identity(order, entries, identity)
    }

    /// Label of the identity element as declared.
    pub fn identity_label(&self) -> usize {
        self.identity
    }

    /// Declared label of the element stored at `index`.
    pub fn label(&self, index: usize) -> usize {
        match index {
            0 => self.identity,
            i if i == self.identity => 0,
            i => i,
        }
    }

    /// Stored index of the element with declared label `label` (the swap is
    /// an involution).
    pub fn index_of(&self, label: usize) -> usize {
        self.label(label)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.entries[x * self.order + y]
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverses[x]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorKind {
    InfiniteCyclic,
    FiniteCyclic { order: u32 },
    Table(Arc<CayleyTable>),
}

/// One factor of the free product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSpec {
    kind: FactorKind,
    // Original `table:<path>` source, kept so the factor prints back as parsed.
    source: Option<String>,
}

impl FactorSpec {
    pub fn infinite_cyclic() -> Self {
        FactorSpec {
            kind: FactorKind::InfiniteCyclic,
            source: None,
        }
    }

    pub fn finite_cyclic(order: u32) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidOrder(order.into()));
        }
        Ok(FactorSpec {
            kind: FactorKind::FiniteCyclic { order },
            source: None,
        })
    }

    pub fn table(table: CayleyTable) -> Self {
        FactorSpec {
            kind: FactorKind::Table(Arc::new(table)),
            source: None,
        }
    }

    /// Parses `Z`, `Z/p` or `table:<path>` (the path is read immediately).
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "Z" {
            return Ok(Self::infinite_cyclic());
        }
        if let Some(order) = text.strip_prefix("Z/") {
            let order: u32 = order
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad cyclic order in {text:?}")))?;
            return Self::finite_cyclic(order);
        }
        if let Some(path) = text.strip_prefix("table:") {
            let path = path.trim();
            let mut spec = Self::table(CayleyTable::parse(&std::fs::read_to_string(
                Path::new(path),
            )?)?);
            spec.source = Some(path.to_string());
            return Ok(spec);
        }
        Err(Error::Parse(format!(
            "unknown factor {text:?}; expected Z, Z/<p> or table:<path>"
        )))
    }

    pub fn kind(&self) -> &FactorKind {
        &self.kind
    }

    /// Number of elements, `None` for `Z`.
    pub fn order(&self) -> Option<u64> {
        match &self.kind {
            FactorKind::InfiniteCyclic => None,
            FactorKind::FiniteCyclic { order } => Some(u64::from(*order)),
            FactorKind::Table(t) => Some(t.order() as u64),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// The element with the given payload, canonicalised (exponent mod `p`
    /// for finite cyclic factors). Payload 0 gives the identity.
    pub fn element(&self, side: Side, payload: i64) -> Result<FactorElement> {
        let payload = match &self.kind {
            FactorKind::InfiniteCyclic => payload,
            FactorKind::FiniteCyclic { order } => payload.rem_euclid(i64::from(*order)),
            FactorKind::Table(t) => {
                if payload < 0 || payload as usize >= t.order() {
                    return Err(Error::Parse(format!(
                        "table element {payload} out of range 0..{}",
                        t.order()
                    )));
                }
                payload
            }
        };
        Ok(FactorElement { side, payload })
    }

    /// All non-identity elements, in payload order. `None` for `Z`.
    pub fn nontrivial_elements(&self, side: Side) -> Option<Vec<FactorElement>> {
        let n = self.order()? as i64;
        Some((1..n).map(|payload| FactorElement { side, payload }).collect())
    }

    /// Group product; `None` is the identity marker.
    pub fn mul(&self, x: FactorElement, y: FactorElement) -> Result<Option<FactorElement>> {
        if x.side != y.side {
            return Err(Error::FactorMismatch);
        }
        let payload = match &self.kind {
            FactorKind::InfiniteCyclic => x
                .payload
                .checked_add(y.payload)
                .expect("exponent overflow in Z factor"),
            FactorKind::FiniteCyclic { order } => (x.payload + y.payload) % i64::from(*order),
            FactorKind::Table(t) => t.mul(x.payload as usize, y.payload as usize) as i64,
        };
        Ok((payload != 0).then_some(FactorElement {
            side: x.side,
            payload,
        }))
    }

    pub fn inv(&self, x: FactorElement) -> FactorElement {
        let payload = match &self.kind {
            FactorKind::InfiniteCyclic => -x.payload,
            FactorKind::FiniteCyclic { order } => (i64::from(*order) - x.payload) % i64::from(*order),
            FactorKind::Table(t) => t.inverse(x.payload as usize) as i64,
        };
        FactorElement {
            side: x.side,
            payload,
        }
    }

    /// Factor-internal word-metric length of a non-identity element.
    pub fn length<T: Length>(&self, x: FactorElement, lengths: &LengthAssignment<T>) -> Result<T> {
        if x.is_identity() {
            return Err(Error::IdentityLength);
        }
        match (&self.kind, lengths) {
            (FactorKind::InfiniteCyclic, LengthAssignment::Generator(l)) => {
                Ok(scale(l, x.payload.unsigned_abs()))
            }
            (FactorKind::FiniteCyclic { order }, LengthAssignment::Generator(l)) => {
                let j = x.payload as u64;
                Ok(scale(l, j.min(u64::from(*order) - j)))
            }
            (FactorKind::Table(t), LengthAssignment::PerElement(v)) if v.len() + 1 == t.order() => {
                Ok(v[x.payload as usize - 1].clone())
            }
            _ => Err(Error::InvalidLength(
                "length assignment does not match the factor kind".into(),
            )),
        }
    }
}

fn scale<T: Length>(l: &T, k: u64) -> T {
    T::from_u64(k).expect("integer multiple representable") * l.clone()
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.kind, &self.source) {
            (FactorKind::InfiniteCyclic, _) => f.write_str("Z"),
            (FactorKind::FiniteCyclic { order }, _) => write!(f, "Z/{order}"),
            (FactorKind::Table(_), Some(path)) => write!(f, "table:{path}"),
            (FactorKind::Table(t), None) => write!(f, "table<{}>", t.order()),
        }
    }
}

/// An element of one factor. Payload is an exponent for cyclic kinds
/// (canonical in `0..p` for `Z/p`) or a table index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactorElement {
    side: Side,
    payload: i64,
}

impl FactorElement {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn payload(&self) -> i64 {
        self.payload
    }

    pub fn is_identity(&self) -> bool {
        self.payload == 0
    }
}

/// Scalar types usable as letter lengths: exact rationals or floats.
pub trait Length: Clone + PartialOrd + Num + FromPrimitive + ToPrimitive + fmt::Debug {}

impl<T> Length for T where T: Clone + PartialOrd + Num + FromPrimitive + ToPrimitive + fmt::Debug {}

/// Letter lengths for one factor.
#[derive(Clone, Debug, PartialEq)]
pub enum LengthAssignment<T> {
    /// Generator length for cyclic factors; `a^k` then has word-metric length.
    Generator(T),
    /// Explicit lengths of the non-identity table elements, by stored index
    /// `1..n` (see [`LengthAssignment::per_element`]).
    PerElement(Vec<T>),
}

impl<T: Length> LengthAssignment<T> {
    pub fn generator(length: T) -> Result<Self> {
        if length <= T::zero() {
            return Err(Error::InvalidLength("generator length must be positive".into()));
        }
        Ok(LengthAssignment::Generator(length))
    }

    /// Explicit lengths for a table factor, one per non-identity element in
    /// increasing label order; checks positivity and `length(x) == length(x^-1)`.
    pub fn per_element(factor: &FactorSpec, lengths: Vec<T>) -> Result<Self> {
        let FactorKind::Table(t) = factor.kind() else {
            return Err(Error::InvalidLength(
                "per-element lengths need a table factor".into(),
            ));
        };
        if lengths.len() + 1 != t.order() {
            return Err(Error::InvalidLength(format!(
                "expected {} lengths, got {}",
                t.order() - 1,
                lengths.len()
            )));
        }
        // label order -> stored index order
        let labels: Vec<usize> = (0..t.order()).filter(|&l| l != t.identity_label()).collect();
        let stored = (1..t.order())
            .map(|i| {
                let rank = labels.binary_search(&t.label(i)).expect("non-identity label");
                lengths[rank].clone()
            })
            .collect();
        Self::check_stored(t, stored)
    }

    // `lengths[i - 1]` is the length of stored index `i`.
    fn check_stored(t: &CayleyTable, lengths: Vec<T>) -> Result<Self> {
        if lengths.len() + 1 != t.order() {
            return Err(Error::InvalidLength(format!(
                "expected {} lengths, got {}",
                t.order() - 1,
                lengths.len()
            )));
        }
        if lengths.iter().any(|l| *l <= T::zero()) {
            return Err(Error::InvalidLength("lengths must be positive".into()));
        }
        for x in 1..t.order() {
            if lengths[x - 1] != lengths[t.inverse(x) - 1] {
                return Err(Error::InvalidLength(format!(
                    "element {} and its inverse have different lengths",
                    t.label(x)
                )));
            }
        }
        Ok(LengthAssignment::PerElement(lengths))
    }

    /// Checks the assignment against a factor (kind, count, positivity, symmetry).
    pub fn validate_for(&self, factor: &FactorSpec) -> Result<()> {
        match (self, factor.kind()) {
            (LengthAssignment::Generator(l), FactorKind::InfiniteCyclic)
            | (LengthAssignment::Generator(l), FactorKind::FiniteCyclic { .. }) => {
                if *l <= T::zero() {
                    return Err(Error::InvalidLength("generator length must be positive".into()));
                }
                Ok(())
            }
            (LengthAssignment::PerElement(v), FactorKind::Table(t)) => {
                Self::check_stored(t, v.clone()).map(|_| ())
            }
            _ => Err(Error::InvalidLength(
                "length assignment does not match the factor kind".into(),
            )),
        }
    }
}

impl<T> LengthAssignment<T> {
    /// Converts every length with `f` (e.g. rational to `f64`).
    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> LengthAssignment<U> {
        match self {
            LengthAssignment::Generator(l) => LengthAssignment::Generator(f(l)),
            LengthAssignment::PerElement(v) => LengthAssignment::PerElement(v.iter().map(f).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;
    use proptest::prelude::*;

    fn z5() -> FactorSpec {
        FactorSpec::finite_cyclic(5).unwrap()
    }

    fn el(f: &FactorSpec, k: i64) -> FactorElement {
        f.element(Side::A, k).unwrap()
    }

    fn s3() -> CayleyTable {
        // Symmetric group on 3 points: 0=id, 1=(12), 2=(13), 3=(23), 4=(123), 5=(132)
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let mut entries = Vec::new();
        for x in perms {
            for y in perms {
                // (x*y)(i) = x(y(i))
                entries.push(idx([x[y[0]], x[y[1]], x[y[2]]]));
            }
        }
        CayleyTable::new(6, entries).unwrap()
    }

    #[test]
    fn cyclic_products() {
        let z5 = z5();
        assert_eq!(z5.mul(el(&z5, 2), el(&z5, 3)).unwrap(), None);
        assert_eq!(z5.mul(el(&z5, 3), el(&z5, 4)).unwrap(), Some(el(&z5, 2)));
        let z = FactorSpec::infinite_cyclic();
        assert_eq!(z.mul(el(&z, 2), el(&z, -1)).unwrap(), Some(el(&z, 1)));
    }

    #[test]
    fn mismatched_sides_rejected() {
        let z = FactorSpec::infinite_cyclic();
        let b = z.element(Side::B, 1).unwrap();
        assert_eq!(z.mul(el(&z, 1), b), Err(Error::FactorMismatch));
    }

    #[test]
    fn inverses() {
        let z = FactorSpec::infinite_cyclic();
        assert_eq!(z.inv(el(&z, 3)), el(&z, -3));
        let z5 = z5();
        assert_eq!(z5.inv(el(&z5, 2)), el(&z5, 3));
        let s3 = FactorSpec::table(s3());
        assert_eq!(s3.inv(el(&s3, 0)), el(&s3, 0));
        assert_eq!(s3.inv(el(&s3, 4)), el(&s3, 5));
    }

    #[test]
    fn canonical_payloads() {
        let z5 = z5();
        assert_eq!(el(&z5, -1).payload(), 4);
        assert_eq!(el(&z5, 12).payload(), 2);
        assert!(el(&z5, 5).is_identity());
    }

    #[test]
    fn letter_lengths() {
        let z = FactorSpec::infinite_cyclic();
        let one = LengthAssignment::generator(1.0).unwrap();
        assert_eq!(z.length(el(&z, 3), &one).unwrap(), 3.0);
        assert_eq!(z.length(el(&z, -3), &one).unwrap(), 3.0);
        let z5 = z5();
        let half = LengthAssignment::generator(0.5).unwrap();
        assert_eq!(z5.length(el(&z5, 4), &half).unwrap(), 0.5);
        let z2 = FactorSpec::finite_cyclic(2).unwrap();
        let l = LengthAssignment::generator(2.0 * std::f64::consts::PI * 0.1).unwrap();
        assert!((z2.length(el(&z2, 1), &l).unwrap() - 0.628_318_530_717_958_6).abs() < 1e-15);
        assert_eq!(z5.length(el(&z5, 0), &half), Err(Error::IdentityLength));
    }

    #[test]
    fn rational_lengths_are_exact() {
        let z5 = z5();
        let l = LengthAssignment::generator(Rational64::new(1, 3)).unwrap();
        assert_eq!(z5.length(el(&z5, 3), &l).unwrap(), Rational64::new(2, 3));
    }

    #[test]
    fn table_group_check() {
        let t = s3();
        assert_eq!(t.order(), 6);
        // identity not at 0
        assert!(CayleyTable::new(2, vec![1, 0, 0, 1]).is_err());
        // not associative: 3 elements, Latin square with identity but no associativity
        let bad = vec![0, 1, 2, 1, 0, 0, 2, 0, 0];
        assert!(CayleyTable::new(3, bad).is_err());
        assert!(CayleyTable::parse("2\n0 1\n1 0\n").is_ok());
        assert!(CayleyTable::parse("2\n0 1\n1").is_err());
        assert!(CayleyTable::new(1, vec![0]).is_err());
    }

    // Z/3 with labels 0, 1, 2 standing for exponents 1, 2, 0.
    const Z3_SHIFTED: &str = "3 2\n1 2 0\n2 0 1\n0 1 2\n";

    #[test]
    fn declared_identity_label() {
        let t = CayleyTable::parse(Z3_SHIFTED).unwrap();
        assert_eq!(t.identity_label(), 2);
        assert_eq!(t.label(0), 2);
        assert_eq!(t.index_of(2), 0);
        let zero = t.index_of(0);
        assert_eq!(t.label(t.mul(zero, zero)), 1);
        assert_eq!(t.label(t.inverse(zero)), 1);
        // same table declared with the wrong identity
        assert!(CayleyTable::parse("3 1\n1 2 0\n2 0 1\n0 1 2\n").is_err());
        assert!(CayleyTable::parse("3 3\n1 2 0\n2 0 1\n0 1 2\n").is_err());
        let f = FactorSpec::table(t);
        assert!(LengthAssignment::per_element(&f, vec![1.0, 1.0]).is_ok());
        assert!(LengthAssignment::per_element(&f, vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn per_element_lengths_symmetric() {
        let s3 = FactorSpec::table(s3());
        assert!(LengthAssignment::per_element(&s3, vec![1.0, 1.0, 1.0, 2.0, 2.0]).is_ok());
        assert!(LengthAssignment::per_element(&s3, vec![1.0, 1.0, 1.0, 2.0, 3.0]).is_err());
        assert!(LengthAssignment::per_element(&s3, vec![1.0, 1.0, 1.0, 2.0]).is_err());
        assert!(LengthAssignment::per_element(&s3, vec![1.0, 0.0, 1.0, 2.0, 2.0]).is_err());
    }

    #[test]
    fn parse_specs() {
        assert_eq!(FactorSpec::parse("Z").unwrap(), FactorSpec::infinite_cyclic());
        assert_eq!(FactorSpec::parse(" Z/7 ").unwrap().order(), Some(7));
        assert!(FactorSpec::parse("Z/1").is_err());
        assert!(FactorSpec::parse("Q").is_err());
        assert!(FactorSpec::parse("table:/nonexistent/file").is_err());
    }

    #[test]
    fn finite_groups_exhaustive() {
        for f in [z5(), FactorSpec::table(s3())] {
            let n = f.order().unwrap() as i64;
            let all: Vec<_> = (0..n).map(|k| el(&f, k)).collect();
            let mul = |x, y| f.mul(x, y).unwrap().unwrap_or(el(&f, 0));
            for &x in &all {
                assert_eq!(mul(x, f.inv(x)), el(&f, 0));
                assert_eq!(mul(f.inv(x), x), el(&f, 0));
                for &y in &all {
                    for &z in &all {
                        assert_eq!(mul(mul(x, y), z), mul(x, mul(y, z)));
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn infinite_cyclic_group_laws(x in -1000i64..1000, y in -1000i64..1000, z in -1000i64..1000) {
            let f = FactorSpec::infinite_cyclic();
            let mul = |x, y| f.mul(x, y).unwrap().unwrap_or(el(&f, 0));
            let (x, y, z) = (el(&f, x), el(&f, y), el(&f, z));
            prop_assert_eq!(mul(mul(x, y), z), mul(x, mul(y, z)));
            prop_assert!(mul(x, f.inv(x)).is_identity());
        }

        #[test]
        fn cyclic_length_symmetric_and_subadditive(p in 2u32..12, x in 1i64..40, y in 1i64..40, l in 0.01f64..5.0) {
            let lengths = LengthAssignment::generator(l).unwrap();
            for f in [FactorSpec::finite_cyclic(p).unwrap(), FactorSpec::infinite_cyclic()] {
                let (x, y) = (el(&f, x), el(&f, y));
                if x.is_identity() || y.is_identity() { continue; }
                let lx = f.length(x, &lengths).unwrap();
                prop_assert_eq!(lx, f.length(f.inv(x), &lengths).unwrap());
                if let Some(xy) = f.mul(x, y).unwrap() {
                    let ly = f.length(y, &lengths).unwrap();
                    prop_assert!(f.length(xy, &lengths).unwrap() <= lx + ly + 1e-12);
                }
            }
        }
    }
}
