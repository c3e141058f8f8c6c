//! Normal forms of elements of a free product `A * B`.
//!
//! Every element has a unique reduced form: an alternating sequence of
//! non-identity letters. [`FreeProduct`] carries the two factors and
//! implements the group operations on [`ReducedWord`]s, cyclic reduction,
//! exact lengths of powers and primitive-root extraction.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::factors::{FactorElement, FactorKind, FactorSpec, Length, LengthAssignment, Side};

/// The reduced (alternating) normal form of an element. Empty means identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ReducedWord {
    letters: Vec<FactorElement>,
}

impl ReducedWord {
    pub fn identity() -> Self {
        ReducedWord::default()
    }

    pub fn letters(&self) -> &[FactorElement] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of letters of the normal form.
    pub fn word_length(&self) -> usize {
        self.letters.len()
    }

    pub fn first(&self) -> Option<FactorElement> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<FactorElement> {
        self.letters.last().copied()
    }
}

// Shortlex: shorter words first, then lexicographic on (side, payload).
impl Ord for ReducedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for ReducedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `x = conjugator · core · conjugator⁻¹` with `core` cyclically reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicDecomposition {
    pub conjugator: ReducedWord,
    pub core: ReducedWord,
}

/// A free product `A * B` of two nontrivial factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeProduct {
    a: FactorSpec,
    b: FactorSpec,
}

impl FreeProduct {
    pub fn new(a: FactorSpec, b: FactorSpec) -> Self {
        FreeProduct { a, b }
    }

    /// Parses `"<factor> * <factor>"`, e.g. `"Z * Z/3"`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut parts = text.split('*');
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Parse(format!(
                "expected `<factor> * <factor>`, got {text:?}"
            )));
        };
        Ok(FreeProduct::new(FactorSpec::parse(a)?, FactorSpec::parse(b)?))
    }

    pub fn factor(&self, side: Side) -> &FactorSpec {
        match side {
            Side::A => &self.a,
            Side::B => &self.b,
        }
    }

    /// Single-letter word from a factor element (identity gives the empty word).
    pub fn letter(&self, side: Side, payload: i64) -> Result<ReducedWord> {
        let x = self.factor(side).element(side, payload)?;
        Ok(self.reduce([x]))
    }

    /// Normal form of an arbitrary sequence of letters; identity letters allowed.
    pub fn reduce<I: IntoIterator<Item = FactorElement>>(&self, raw: I) -> ReducedWord {
        let mut out = ReducedWord::identity();
        for x in raw {
            self.push_letter(&mut out.letters, x);
        }
        out
    }

    // Appends with merging; the stack stays reduced.
    fn push_letter(&self, stack: &mut Vec<FactorElement>, x: FactorElement) {
        if x.is_identity() {
            return;
        }
        match stack.last().copied() {
            Some(top) if top.side() == x.side() => {
                let merged = self
                    .factor(x.side())
                    .mul(top, x)
                    .expect("letters share a side");
                match merged {
                    Some(m) => *stack.last_mut().unwrap() = m,
                    None => {
                        stack.pop();
                    }
                }
            }
            _ => stack.push(x),
        }
    }

    pub fn mul(&self, x: &ReducedWord, y: &ReducedWord) -> ReducedWord {
        let mut letters = x.letters.clone();
        letters.reserve(y.letters.len());
        for &l in &y.letters {
            self.push_letter(&mut letters, l);
        }
        ReducedWord { letters }
    }

    pub fn inv(&self, x: &ReducedWord) -> ReducedWord {
        ReducedWord {
            letters: x
                .letters
                .iter()
                .rev()
                .map(|&l| self.factor(l.side()).inv(l))
                .collect(),
        }
    }

    /// `x^k` by repeated squaring on normal forms.
    pub fn pow(&self, x: &ReducedWord, k: i64) -> ReducedWord {
        let mut base = if k < 0 { self.inv(x) } else { x.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = ReducedWord::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `g · x · g⁻¹`.
    pub fn conjugate(&self, x: &ReducedWord, g: &ReducedWord) -> ReducedWord {
        self.mul(&self.mul(g, x), &self.inv(g))
    }

    /// Sum of factor-internal letter lengths.
    pub fn weighted_length<T: Length>(
        &self,
        x: &ReducedWord,
        lengths_a: &LengthAssignment<T>,
        lengths_b: &LengthAssignment<T>,
    ) -> Result<T> {
        x.letters.iter().try_fold(T::zero(), |acc, &l| {
            let lengths = match l.side() {
                Side::A => lengths_a,
                Side::B => lengths_b,
            };
            Ok(acc + self.factor(l.side()).length(l, lengths)?)
        })
    }

    fn are_inverse(&self, x: FactorElement, y: FactorElement) -> bool {
        x.side() == y.side() && self.factor(x.side()).mul(x, y).expect("same side").is_none()
    }

    /// Strips mutually inverse end letters into the conjugator. The core is
    /// cyclically reduced: when its end letters share a factor they are not
    /// inverse to each other (odd cores are kept as such).
    pub fn cyclic_reduce(&self, x: &ReducedWord) -> Result<CyclicDecomposition> {
        if x.is_identity() {
            return Err(Error::IdentityWord);
        }
        let l = &x.letters;
        let (mut i, mut j) = (0, l.len() - 1);
        while j > i && self.are_inverse(l[i], l[j]) {
            i += 1;
            j -= 1;
        }
        Ok(CyclicDecomposition {
            conjugator: ReducedWord {
                letters: l[..i].to_vec(),
            },
            core: ReducedWord {
                letters: l[i..=j].to_vec(),
            },
        })
    }

    /// Length of the cyclic core; `<= 1` exactly when `x` lies in a
    /// conjugate of a factor.
    pub fn core_length(&self, x: &ReducedWord) -> Result<usize> {
        Ok(self.cyclic_reduce(x)?.core.word_length())
    }

    /// Exact letter count of `x^k` without expanding the power.
    ///
    /// With conjugator length `n1` and core length `m`: even cores
    /// concatenate freely, odd cores merge (never cancel) one letter at each
    /// of the `|k|-1` junctions.
    pub fn power_length(&self, x: &ReducedWord, k: i64) -> Result<u64> {
        let d = self.cyclic_reduce(x)?;
        let m = d.core.word_length() as u64;
        if m < 2 {
            return Err(Error::CoreTooShort(m as usize));
        }
        let n1 = d.conjugator.word_length() as u64;
        let k = k.unsigned_abs();
        if k == 0 {
            return Ok(0);
        }
        let core = if m % 2 == 0 { k * m } else { k * m - (k - 1) };
        Ok(2 * n1 + core)
    }

    /// Primitive root `τ` and maximal exponent `q >= 1` with `x = τ^q`.
    ///
    /// Only defined when the cyclic core has length at least 2.
    pub fn primitive_root(&self, x: &ReducedWord) -> Result<(ReducedWord, u64)> {
        let d = self.cyclic_reduce(x)?;
        if d.core.word_length() < 2 {
            return Err(Error::CoreTooShort(d.core.word_length()));
        }
        let mut sigma = d.core;
        let mut exponent = 1u64;
        loop {
            let (root, k) = self.core_root(&sigma);
            if k == 1 {
                break;
            }
            sigma = root;
            exponent *= k;
        }
        let root = self.conjugate(&sigma, &d.conjugator);
        Ok((root, exponent))
    }

    /// Primitive root normalised so that `x` and `x⁻¹` share it: the
    /// shortlex-smaller of `τ`, `τ⁻¹`, with a signed exponent.
    pub fn canonical_root(&self, x: &ReducedWord) -> Result<(ReducedWord, i64)> {
        let (root, q) = self.primitive_root(x)?;
        let inverse = self.inv(&root);
        let q = i64::try_from(q).expect("exponent fits i64");
        Ok(if inverse < root { (inverse, -q) } else { (root, q) })
    }

    // Largest-exponent root of a cyclically reduced core of length >= 2.
    fn core_root(&self, core: &ReducedWord) -> (ReducedWord, u64) {
        let l = &core.letters;
        let m = l.len();
        if m % 2 == 0 {
            for d in divisors(m) {
                if d < m && (d..m).all(|i| l[i] == l[i % d]) {
                    let root = ReducedWord {
                        letters: l[..d].to_vec(),
                    };
                    return (root, (m / d) as u64);
                }
            }
        } else {
            for k in divisors(m - 1).into_iter().rev().filter(|&k| k >= 2) {
                let t = 1 + (m - 1) / k;
                let candidate = self.reduce(l[..t - 1].iter().copied().chain([l[m - 1]]));
                if self.pow(&candidate, k as i64) == *core {
                    return (candidate, k as u64);
                }
            }
        }
        (core.clone(), 1)
    }

    /// Parses the word grammar: whitespace-separated letters `a^k`, `b^k`
    /// (`k` nonzero, default 1) for cyclic factors, `a[i]`, `b[i]` for the
    /// table element labelled `i`, and `e` for the identity.
    pub fn parse_word(&self, text: &str) -> Result<ReducedWord> {
        let mut raw = Vec::new();
        for token in text.split_whitespace() {
            if token == "e" {
                continue;
            }
            let mut chars = token.chars();
            let side = match chars.next() {
                Some('a') => Side::A,
                Some('b') => Side::B,
                _ => return Err(Error::Parse(format!("unknown letter {token:?}"))),
            };
            let rest = chars.as_str();
            let factor = self.factor(side);
            let table = match factor.kind() {
                FactorKind::Table(t) => Some(t),
                _ => None,
            };
            let payload = if let Some(idx) = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
                let Some(t) = table else {
                    return Err(Error::Parse(format!(
                        "{token:?}: indexed letters need a table factor"
                    )));
                };
                let i: usize = idx
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad element index in {token:?}")))?;
                if i >= t.order() {
                    return Err(Error::Parse(format!(
                        "{token:?}: table element out of range 0..{}",
                        t.order()
                    )));
                }
                if i == t.identity_label() {
                    return Err(Error::Parse(format!("{token:?}: use `e` for the identity")));
                }
                t.index_of(i) as i64
            } else {
                if table.is_some() {
                    return Err(Error::Parse(format!(
                        "{token:?}: table factor letters are written {}[i]",
                        side.label()
                    )));
                }
                let k = match rest {
                    "" => 1,
                    _ => rest
                        .strip_prefix('^')
                        .and_then(|k| k.parse::<i32>().ok())
                        .ok_or_else(|| Error::Parse(format!("bad exponent in {token:?}")))?,
                };
                if k == 0 {
                    return Err(Error::Parse(format!("{token:?}: exponent must be nonzero")));
                }
                i64::from(k)
            };
            raw.push(factor.element(side, payload)?);
        }
        Ok(self.reduce(raw))
    }

    /// Renders a word in the grammar accepted by [`FreeProduct::parse_word`].
    pub fn format_word(&self, x: &ReducedWord) -> String {
        if x.is_identity() {
            return "e".to_string();
        }
        x.letters
            .iter()
            .map(|l| {
                let c = l.side().label();
                match (self.factor(l.side()).kind(), l.payload()) {
                    (FactorKind::Table(t), i) => format!("{c}[{}]", t.label(i as usize)),
                    (_, 1) => c.to_string(),
                    (_, k) => format!("{c}^{k}"),
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for FreeProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * {}", self.a, self.b)
    }
}

fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
