//! Exact ball and sphere counts of free products under (weighted) word
//! metrics, the Poincaré series in closed form, and slope-fit entropy
//! estimates.
//!
//! The generating set is the set of all non-identity letters of both
//! factors. With weighted letters, counting is done on the integer lattice
//! `n · unit`, which requires all letter lengths to be commensurable.

use std::io::Write;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Float, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::factors::{FactorKind, FactorSpec, Length, LengthAssignment, Side};
use crate::words::FreeProduct;

/// Default cap on the number of lattice steps for weighted counting.
pub const DEFAULT_LATTICE_CAP: u64 = 1_000_000;

/// A free product together with letter lengths for both factors.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedFreeProduct<T> {
    group: FreeProduct,
    lengths_a: LengthAssignment<T>,
    lengths_b: LengthAssignment<T>,
}

impl<T: Length> WeightedFreeProduct<T> {
    pub fn new(group: FreeProduct, lengths_a: LengthAssignment<T>, lengths_b: LengthAssignment<T>) -> Result<Self> {
        lengths_a.validate_for(group.factor(Side::A))?;
        lengths_b.validate_for(group.factor(Side::B))?;
        Ok(WeightedFreeProduct {
            group,
            lengths_a,
            lengths_b,
        })
    }

    /// Cyclic factors with generator lengths `la`, `lb`.
    pub fn cyclic(group: FreeProduct, la: T, lb: T) -> Result<Self> {
        Self::new(
            group,
            LengthAssignment::generator(la)?,
            LengthAssignment::generator(lb)?,
        )
    }

    pub fn group(&self) -> &FreeProduct {
        &self.group
    }

    pub fn lengths(&self, side: Side) -> &LengthAssignment<T> {
        match side {
            Side::A => &self.lengths_a,
            Side::B => &self.lengths_b,
        }
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> WeightedFreeProduct<U> {
        WeightedFreeProduct {
            group: self.group.clone(),
            lengths_a: self.lengths_a.map(&f),
            lengths_b: self.lengths_b.map(&f),
        }
    }
}

impl WeightedFreeProduct<Rational64> {
    pub fn to_f64(&self) -> WeightedFreeProduct<f64> {
        self.map(|r| r.to_f64().expect("rational converts to f64"))
    }
}

/// Letter weights of one factor as integer multiples of the lattice unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorWeights {
    /// `Z` with generator weight `w`: two letters `a^{±k}` of weight `k·w`.
    Infinite { generator: u64 },
    /// `(weight, number of non-identity elements with that weight)`.
    Finite { classes: Vec<(u64, u64)> },
}

/// Integer-rescaled weights for lattice counting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGenSet {
    unit: Rational64,
    a: FactorWeights,
    b: FactorWeights,
}

impl WeightedGenSet {
    /// Exact rescaling of rational lengths by their greatest common measure.
    pub fn from_rational(g: &WeightedFreeProduct<Rational64>) -> Result<Self> {
        let raw_a = raw_lengths(g.group.factor(Side::A), &g.lengths_a);
        let raw_b = raw_lengths(g.group.factor(Side::B), &g.lengths_b);
        let all: Vec<Rational64> = raw_a.iter().chain(&raw_b).map(|(l, _)| *l).collect();
        let denom = all.iter().fold(1i64, |acc, r| acc.lcm(r.denom()));
        let numer_gcd = all.iter().fold(0i64, |acc, r| acc.gcd(&(r.numer() * (denom / r.denom()))));
        let unit = Rational64::new(numer_gcd, denom);
        let to_weights = |raw: Vec<(Rational64, u64)>, infinite: bool| -> FactorWeights {
            let mut classes: Vec<(u64, u64)> = raw
                .into_iter()
                .map(|(l, m)| ((l / unit).to_integer() as u64, m))
                .collect();
            if infinite {
                return FactorWeights::Infinite {
                    generator: classes[0].0,
                };
            }
            classes.sort_unstable();
            let mut merged: Vec<(u64, u64)> = Vec::new();
            for (w, m) in classes {
                match merged.last_mut() {
                    Some((lw, lm)) if *lw == w => *lm += m,
                    _ => merged.push((w, m)),
                }
            }
            FactorWeights::Finite { classes: merged }
        };
        Ok(WeightedGenSet {
            unit,
            a: to_weights(raw_a, !g.group.factor(Side::A).is_finite()),
            b: to_weights(raw_b, !g.group.factor(Side::B).is_finite()),
        })
    }

    /// Rescales real lengths, accepting only those within `1e-12` relative
    /// of a fraction with denominator at most `max_denominator`.
    pub fn from_real(g: &WeightedFreeProduct<f64>, max_denominator: i64) -> Result<Self> {
        let convert = |x: &f64| -> Result<Rational64> {
            let r = rational_approximation(*x, max_denominator)
                .ok_or_else(|| Error::NotRescalable(format!("{x} has no small-denominator fraction")))?;
            let back = r.to_f64().unwrap();
            if (back - x).abs() > 1e-12 * x.abs() {
                return Err(Error::NotRescalable(format!("{x} is not a ratio with denominator <= {max_denominator}")));
            }
            Ok(r)
        };
        let la = match &g.lengths_a {
            LengthAssignment::Generator(l) => LengthAssignment::Generator(convert(l)?),
            LengthAssignment::PerElement(v) => {
                LengthAssignment::PerElement(v.iter().map(convert).collect::<Result<_>>()?)
            }
        };
        let lb = match &g.lengths_b {
            LengthAssignment::Generator(l) => LengthAssignment::Generator(convert(l)?),
            LengthAssignment::PerElement(v) => {
                LengthAssignment::PerElement(v.iter().map(convert).collect::<Result<_>>()?)
            }
        };
        Self::from_rational(&WeightedFreeProduct::new(g.group.clone(), la, lb)?)
    }

    pub fn unit(&self) -> Rational64 {
        self.unit
    }

    pub fn weights(&self, side: Side) -> &FactorWeights {
        match side {
            Side::A => &self.a,
            Side::B => &self.b,
        }
    }
}

// (length, multiplicity) of the non-identity letters; for Z only the
// generator entry is listed.
fn raw_lengths(f: &FactorSpec, l: &LengthAssignment<Rational64>) -> Vec<(Rational64, u64)> {
    match (f.kind(), l) {
        (FactorKind::InfiniteCyclic, LengthAssignment::Generator(g)) => vec![(*g, 2)],
        (FactorKind::FiniteCyclic { order }, LengthAssignment::Generator(g)) => (1..*order)
            .map(|j| (*g * i64::from(j.min(order - j)), 1))
            .collect(),
        (FactorKind::Table(_), LengthAssignment::PerElement(v)) => v.iter().map(|x| (*x, 1)).collect(),
        _ => unreachable!("lengths validated against the factor"),
    }
}

/// Best rational approximation with bounded denominator (continued fractions).
fn rational_approximation(x: f64, max_denominator: i64) -> Option<Rational64> {
    if !x.is_finite() || x <= 0.0 {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a > i64::MAX as f64 / 4.0 {
            break;
        }
        let a = a as i64;
        let p2 = a.checked_mul(p1)?.checked_add(p0)?;
        let q2 = a.checked_mul(q1)?.checked_add(q0)?;
        if q2 > max_denominator {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = v - a as f64;
        if frac.abs() < 1e-15 * v.max(1.0) {
            break;
        }
        v = 1.0 / frac;
    }
    (q1 > 0 && p1 > 0).then(|| Rational64::new(p1, q1))
}

/// Sphere sizes `c(n)`: the number of elements of length exactly `n · unit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthTable {
    unit: Rational64,
    spheres: Vec<BigUint>,
    balls: Vec<BigUint>,
}

impl GrowthTable {
    fn from_spheres(unit: Rational64, spheres: Vec<BigUint>) -> Self {
        let mut acc = BigUint::zero();
        let balls = spheres
            .iter()
            .map(|c| {
                acc += c;
                acc.clone()
            })
            .collect();
        GrowthTable { unit, spheres, balls }
    }

    pub fn unit(&self) -> Rational64 {
        self.unit
    }

    /// Largest lattice index present.
    pub fn n_max(&self) -> usize {
        self.spheres.len() - 1
    }

    pub fn spheres(&self) -> &[BigUint] {
        &self.spheres
    }

    /// `c(n)`.
    pub fn sphere(&self, n: usize) -> Option<&BigUint> {
        self.spheres.get(n)
    }

    /// Number of elements of length `<= n · unit`.
    pub fn closed_ball(&self, n: usize) -> Option<&BigUint> {
        self.balls.get(n)
    }

    /// `N(R)`: number of elements of length strictly less than `radius`.
    pub fn ball_below(&self, radius: f64) -> Result<BigUint> {
        let unit = self.unit.to_f64().unwrap();
        let window_err = Error::InvalidWindow { lo: 0.0, hi: radius };
        if !(radius > 0.0) {
            return Err(window_err);
        }
        // largest n with n·unit < R
        let exact = radius / unit;
        let mut n = exact.ceil() as usize - 1;
        if (n as f64 + 1.0) * unit < radius {
            n += 1;
        }
        // Radii past the table's last full lattice step are unknown.
        if n > self.n_max() {
            return Err(window_err);
        }
        Ok(self.balls[n].clone())
    }

    /// Writes CSV with columns `n,weight,sphere_count,cumulative`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(["n", "weight", "sphere_count", "cumulative"]).map_err(io)?;
        let unit = self.unit.to_f64().unwrap();
        for (n, (c, b)) in self.spheres.iter().zip(&self.balls).enumerate() {
            w.write_record([
                n.to_string(),
                format!("{}", n as f64 * unit),
                c.to_string(),
                b.to_string(),
            ])
            .map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Sphere sizes under the unit word metric on all non-identity letters,
/// from the alternating two-state recurrence. Both factors must be finite.
pub fn sphere_counts(a: &FactorSpec, b: &FactorSpec, n_max: usize) -> Result<GrowthTable> {
    let (Some(na), Some(nb)) = (a.order(), b.order()) else {
        return Err(Error::InfiniteFactor);
    };
    let (ka, kb) = (BigUint::from(na - 1), BigUint::from(nb - 1));
    let mut spheres = vec![BigUint::one()];
    let (mut sa, mut sb) = (ka.clone(), kb.clone());
    for _ in 1..=n_max {
        spheres.push(&sa + &sb);
        (sa, sb) = (&ka * &sb, &kb * &sa);
    }
    Ok(GrowthTable::from_spheres(Rational64::one(), spheres))
}

/// Exact sphere sizes up to radius `r_max` on the lattice of `g.unit()`,
/// by dynamic programming over the factor of the last letter.
pub fn weighted_counts(g: &WeightedGenSet, r_max: f64) -> Result<GrowthTable> {
    weighted_counts_capped(g, r_max, DEFAULT_LATTICE_CAP)
}

pub fn weighted_counts_capped(g: &WeightedGenSet, r_max: f64, cap: u64) -> Result<GrowthTable> {
    if !(r_max >= 0.0) || !r_max.is_finite() {
        return Err(Error::NonPositive { name: "radius" });
    }
    let steps = (r_max / g.unit.to_f64().unwrap()).ceil();
    if steps > cap as f64 {
        return Err(Error::LatticeCapExceeded {
            steps: steps as u64,
            cap,
        });
    }
    let n_max = steps as usize;
    // ends[s][n]: words of weight n whose last letter is on side s.
    let mut ends_a: Vec<BigUint> = vec![BigUint::zero(); n_max + 1];
    let mut ends_b: Vec<BigUint> = vec![BigUint::zero(); n_max + 1];
    // Running sums for infinite factors: tail[n] = Σ_{k>=1} pred(n - k·w).
    let mut tail_a: Vec<BigUint> = vec![BigUint::zero(); n_max + 1];
    let mut tail_b: Vec<BigUint> = vec![BigUint::zero(); n_max + 1];
    let pred = |ends: &[BigUint], n: usize| -> BigUint {
        if n == 0 {
            BigUint::one()
        } else {
            ends[n].clone()
        }
    };
    for n in 1..=n_max {
        let step = |weights: &FactorWeights, other: &[BigUint], tail: &mut [BigUint]| -> BigUint {
            match weights {
                FactorWeights::Infinite { generator } => {
                    let w = *generator as usize;
                    if n < w {
                        return BigUint::zero();
                    }
                    tail[n] = pred(other, n - w) + &tail[n - w];
                    &tail[n] * 2u32
                }
                FactorWeights::Finite { classes } => classes
                    .iter()
                    .filter(|(w, _)| *w as usize <= n)
                    .map(|(w, m)| pred(other, n - *w as usize) * *m)
                    .sum(),
            }
        };
        let a = step(&g.a, &ends_b, &mut tail_a);
        let b = step(&g.b, &ends_a, &mut tail_b);
        ends_a[n] = a;
        ends_b[n] = b;
    }
    let spheres = (0..=n_max)
        .map(|n| {
            if n == 0 {
                BigUint::one()
            } else {
                &ends_a[n] + &ends_b[n]
            }
        })
        .collect();
    Ok(GrowthTable::from_spheres(g.unit, spheres))
}

/// Natural log of a big integer, valid beyond the `f64` range.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// Least-squares slope of `log N(R)` against `R`, fitted on the upper half
/// `[(R1+R2)/2, R2]` of the window to discard transients.
pub fn empirical_entropy(table: &GrowthTable, window: (f64, f64)) -> Result<f64> {
    let (lo, hi) = window;
    let unit = table.unit.to_f64().unwrap();
    let bad = Error::InvalidWindow { lo, hi };
    if !(hi > lo && lo >= 0.0) || hi > table.n_max() as f64 * unit + 1e-9 * unit {
        return Err(bad);
    }
    let start = ((lo + hi) / 2.0 / unit).ceil() as usize;
    let end = (hi / unit + 1e-9).floor() as usize;
    if end < start + 1 {
        return Err(bad);
    }
    let points: Vec<(f64, f64)> = (start..=end)
        .map(|n| (n as f64 * unit, ln_big(&table.balls[n])))
        .collect();
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}

/// Closed-form evaluation of the Poincaré series at exponent `c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoincareEvaluation<T> {
    pub c: T,
    /// `Σ_{x ∈ A∖{1}} e^{-c·len(x)}`.
    pub w_a: T,
    pub w_b: T,
    /// `None` when the series diverges (`w_a · w_b >= 1`).
    pub value: Option<T>,
}

/// `(W(c), W'(c))` for one factor, `W(c) = Σ_{x≠1} e^{-c·len(x)}`.
pub fn letter_weight_sum<T: Float + Length>(factor: &FactorSpec, lengths: &LengthAssignment<T>, c: T) -> (T, T) {
    let two = T::one() + T::one();
    match (factor.kind(), lengths) {
        (FactorKind::InfiniteCyclic, LengthAssignment::Generator(l)) => {
            let e = (c * *l).exp_m1();
            let w = two / e;
            (w, -two * *l * (e + T::one()) / (e * e))
        }
        (FactorKind::FiniteCyclic { order }, LengthAssignment::Generator(l)) => {
            (1..*order).fold((T::zero(), T::zero()), |(w, dw), j| {
                let len = T::from(j.min(order - j)).unwrap() * *l;
                let t = (-c * len).exp();
                (w + t, dw - len * t)
            })
        }
        (FactorKind::Table(_), LengthAssignment::PerElement(v)) => {
            v.iter().fold((T::zero(), T::zero()), |(w, dw), &len| {
                let t = (-c * len).exp();
                (w + t, dw - len * t)
            })
        }
        _ => unreachable!("lengths validated against the factor"),
    }
}

impl<T: Float + Length> WeightedFreeProduct<T> {
    pub fn weight_sum(&self, side: Side, c: T) -> (T, T) {
        letter_weight_sum(self.group.factor(side), self.lengths(side), c)
    }
}

/// `I(c) = Σ_γ e^{-c·|γ|} = 1 + (W_A + W_B + 2 W_A W_B) / (1 - W_A W_B)`.
pub fn poincare_series<T: Float + Length>(g: &WeightedFreeProduct<T>, c: T) -> Result<PoincareEvaluation<T>> {
    if !(c > T::zero()) {
        return Err(Error::NonPositive { name: "c" });
    }
    let (w_a, _) = g.weight_sum(Side::A, c);
    let (w_b, _) = g.weight_sum(Side::B, c);
    let prod = w_a * w_b;
    let value = (prod < T::one()).then(|| {
        let two = T::one() + T::one();
        T::one() + (w_a + w_b + two * prod) / (T::one() - prod)
    });
    Ok(PoincareEvaluation { c, w_a, w_b, value })
}
