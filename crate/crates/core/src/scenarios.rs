//! Parameter sweeps over the two counterexample families.
//!
//! * Connected sum of a thin and a fat `S^1 × S^{n-1}`: the group is `Z * Z`
//!   with generator lengths `2πε` and `2π/ε'`. Systole and diameter are
//!   known in closed form, entropy is bounded by the free-group solution.
//! * Lens space summand: `Z/p * G` where the torsion generator has length
//!   `2πε/p`. Letter lengths collapse while the entropy stays below a
//!   ceiling that does not depend on `ε`.

use std::io::Write;

use num_traits::{Float, FloatConst, ToPrimitive};
use rayon::prelude::*;

use crate::bounds::systole_lb;
use crate::entropy::{critical_exponent, solve_h_f2, weight_level};
use crate::error::{Error, Result};
use crate::factors::{FactorSpec, Length, LengthAssignment, Side};
use crate::growth::WeightedFreeProduct;
use crate::words::FreeProduct;

fn unit_interval<T: Float>(name: &'static str, x: T) -> Result<T> {
    if x > T::zero() && x <= T::one() {
        Ok(x)
    } else {
        Err(Error::OutOfRange {
            name,
            value: x.to_f64().unwrap_or(f64::NAN),
            range: "(0, 1]",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ex55Result<T> {
    pub eps: T,
    pub eps_prime: T,
    /// Homotopy systole `2πε`.
    pub sys: T,
    /// Diameter lower bound `π/ε' + 1`.
    pub diam_lo: T,
    /// Diameter upper bound `π/ε' + 1 + πε`.
    pub diam_hi: T,
    /// Entropy bound: free-group entropy for lengths `2πε`, `2π/ε'`.
    pub h: T,
    /// Systole bound evaluated at `(h, diam_hi)`.
    pub thm_bound: T,
    /// `sys / thm_bound`; uses the conservative diameter, so it overstates the gap.
    pub sharpness_ratio: T,
}

pub fn run_ex55<T: Float + FloatConst>(eps: T, eps_prime: T) -> Result<Ex55Result<T>> {
    let eps = unit_interval("eps", eps)?;
    let eps_prime = unit_interval("eps_prime", eps_prime)?;
    let two_pi = T::PI() + T::PI();
    let sys = two_pi * eps;
    let diam_lo = T::PI() / eps_prime + T::one();
    let diam_hi = diam_lo + T::PI() * eps;
    let h = solve_h_f2(sys, two_pi / eps_prime)?.h;
    let thm_bound = systole_lb(h, diam_hi)?;
    Ok(Ex55Result {
        eps,
        eps_prime,
        sys,
        diam_lo,
        diam_hi,
        h,
        thm_bound,
        sharpness_ratio: sys / thm_bound,
    })
}

/// Sweep results plus the sweep-level entropy ceiling check.
#[derive(Clone, Debug, PartialEq)]
pub struct Ex55Sweep<T> {
    pub points: Vec<Ex55Result<T>>,
    /// Largest `h` among points with `ε = ε'`, if any.
    pub diagonal_sup_h: Option<T>,
}

impl<T: Float + FloatConst> Ex55Sweep<T> {
    /// `sup h <= 1/π` over the diagonal points.
    pub fn entropy_ceiling_holds(&self) -> bool {
        self.diagonal_sup_h.is_none_or(|h| h <= T::FRAC_1_PI())
    }
}

/// Evaluates every point (in parallel); output order follows input order.
pub fn sweep_ex55<T>(points: &[(T, T)]) -> Result<Ex55Sweep<T>>
where
    T: Float + FloatConst + Send + Sync,
{
    if points.is_empty() {
        return Err(Error::EmptySweep);
    }
    let points = points
        .par_iter()
        .map(|&(e, ep)| run_ex55(e, ep))
        .collect::<Result<Vec<_>>>()?;
    let diagonal_sup_h = points
        .iter()
        .filter(|r| r.eps == r.eps_prime)
        .map(|r| r.h)
        .fold(None, |acc: Option<T>, h| Some(acc.map_or(h, |a| a.max(h))));
    Ok(Ex55Sweep {
        points,
        diagonal_sup_h,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ex54Result<T> {
    pub p: u32,
    pub eps: T,
    /// Length `2πε/p` of the torsion generator.
    pub torsion_letter_length: T,
    /// Critical exponent of `Z/p * G` under these letter lengths.
    pub h: T,
    /// Root of `W_G(c) = 1/(p-1)`; bounds `h` for every `ε`.
    pub ceiling: T,
}

/// Torsion family with `G = Z` and generator length `b_length`.
pub fn run_ex54<T: Float + FloatConst + Length>(p: u32, eps: T, b_length: T) -> Result<Ex54Result<T>> {
    run_ex54_with(
        p,
        eps,
        FactorSpec::infinite_cyclic(),
        LengthAssignment::generator(b_length)?,
    )
}

/// Torsion family with an arbitrary second factor.
pub fn run_ex54_with<T: Float + FloatConst + Length>(
    p: u32,
    eps: T,
    other: FactorSpec,
    other_lengths: LengthAssignment<T>,
) -> Result<Ex54Result<T>> {
    if p < 2 {
        return Err(Error::InvalidOrder(p.into()));
    }
    let eps = unit_interval("eps", eps)?;
    let torsion_letter_length = (T::PI() + T::PI()) * eps / T::from(p).unwrap();
    let group = FreeProduct::new(FactorSpec::finite_cyclic(p)?, other);
    let g = WeightedFreeProduct::new(
        group,
        LengthAssignment::generator(torsion_letter_length)?,
        other_lengths,
    )?;
    let h = critical_exponent(&g)?.entropy();
    let ceiling = weight_level(&g, Side::B, T::one() / T::from(p - 1).unwrap())?;
    Ok(Ex54Result {
        p,
        eps,
        torsion_letter_length,
        h,
        ceiling,
    })
}

pub fn sweep_ex54<T>(p: u32, eps: &[T], b_length: T) -> Result<Vec<Ex54Result<T>>>
where
    T: Float + FloatConst + Length + Send + Sync,
{
    if eps.is_empty() {
        return Err(Error::EmptySweep);
    }
    eps.par_iter().map(|&e| run_ex54(p, e, b_length)).collect()
}

fn csv_io(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

fn num<T: ToPrimitive>(x: T) -> String {
    x.to_f64().unwrap_or(f64::NAN).to_string()
}

/// CSV with one row per point.
pub fn write_ex55_csv<T: Float, W: Write>(out: W, rows: &[Ex55Result<T>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "eps",
        "eps_prime",
        "sys",
        "diam_lo",
        "diam_hi",
        "h",
        "thm_bound",
        "sharpness_ratio",
    ])
    .map_err(csv_io)?;
    for r in rows {
        w.write_record([
            num(r.eps),
            num(r.eps_prime),
            num(r.sys),
            num(r.diam_lo),
            num(r.diam_hi),
            num(r.h),
            num(r.thm_bound),
            num(r.sharpness_ratio),
        ])
        .map_err(csv_io)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_ex54_csv<T: Float, W: Write>(out: W, rows: &[Ex54Result<T>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["p", "eps", "torsion_letter_length", "h", "ceiling"])
        .map_err(csv_io)?;
    for r in rows {
        w.write_record([
            r.p.to_string(),
            num(r.eps),
            num(r.torsion_letter_length),
            num(r.h),
            num(r.ceiling),
        ])
        .map_err(csv_io)?;
    }
    w.flush()?;
    Ok(())
}
