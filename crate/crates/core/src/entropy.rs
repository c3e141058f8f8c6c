//! Closed-form entropy of weighted free products.
//!
//! For the free group on two generators with edge lengths `l1`, `l2` the
//! entropy `h` is the positive root of `(e^{h·l1} - 1)(e^{h·l2} - 1) = 4`.
//! For a general weighted free product it is the critical exponent of the
//! Poincaré series, the root of `W_A(c) · W_B(c) = 1`.

use num_traits::Float;

use crate::error::{Error, Result};
use crate::factors::{Length, Side};
use crate::growth::WeightedFreeProduct;
use crate::solver::monotone_root;

/// Relative residual guaranteed by the solvers in `f64`.
pub const RELATIVE_RESIDUAL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropySolution<T> {
    pub h: T,
    /// Value of the defining equation at `h`, relative to its constant term.
    pub residual: T,
    pub bracket: (T, T),
}

/// Critical exponent, or the explicit zero-entropy case (`Z/2 * Z/2`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CriticalExponent<T> {
    Positive(EntropySolution<T>),
    Zero,
}

impl<T: Float> CriticalExponent<T> {
    pub fn entropy(&self) -> T {
        match self {
            CriticalExponent::Positive(s) => s.h,
            CriticalExponent::Zero => T::zero(),
        }
    }
}

// Newton is quadratic near the root, so iterate down to rounding level.
fn tolerance<T: Float>() -> T {
    T::epsilon() * T::from(16).unwrap()
}

fn lower_start<T: Float>() -> T {
    T::from(1e-15).unwrap().max(T::min_positive_value())
}

/// Entropy of the two-generator free group with generator lengths `l1`, `l2`.
pub fn solve_h_f2<T: Float>(l1: T, l2: T) -> Result<EntropySolution<T>> {
    if !(l1 > T::zero()) {
        return Err(Error::NonPositive { name: "l1" });
    }
    if !(l2 > T::zero()) {
        return Err(Error::NonPositive { name: "l2" });
    }
    // Argument order must not matter.
    let (l1, l2) = if l1 <= l2 { (l1, l2) } else { (l2, l1) };
    let four = T::from(4).unwrap();
    let f = |h: T| {
        let (e1, e2) = ((h * l1).exp_m1(), (h * l2).exp_m1());
        let value = e1 * e2 - four;
        let slope = l1 * (e1 + T::one()) * e2 + l2 * (e2 + T::one()) * e1;
        (value, slope)
    };
    let start_hi = T::one() / l1;
    let root = monotone_root(f, lower_start(), start_hi, tolerance::<T>() * four)?;
    Ok(EntropySolution {
        h: root.x,
        residual: root.value / four,
        bracket: root.bracket,
    })
}

/// Critical exponent of the Poincaré series of a weighted free product.
pub fn critical_exponent<T: Float + Length>(g: &WeightedFreeProduct<T>) -> Result<CriticalExponent<T>> {
    let near_zero = lower_start::<T>();
    let log_product = |c: T| {
        let (wa, dwa) = g.weight_sum(Side::A, c);
        let (wb, dwb) = g.weight_sum(Side::B, c);
        (wa.ln() + wb.ln(), dwa / wa + dwb / wb)
    };
    // Both W's are decreasing; if their product is already <= 1 at 0+ the
    // series converges for every c > 0.
    if log_product(near_zero).0 <= T::zero() {
        return Ok(CriticalExponent::Zero);
    }
    let root = monotone_root(log_product, near_zero, T::one(), tolerance())?;
    Ok(CriticalExponent::Positive(EntropySolution {
        h: root.x,
        residual: root.value,
        bracket: root.bracket,
    }))
}

/// Root of `W(c) = target` for one factor's letter sum (decreasing in `c`).
pub fn weight_level<T: Float + Length>(g: &WeightedFreeProduct<T>, side: Side, target: T) -> Result<T> {
    if !(target > T::zero()) {
        return Err(Error::NonPositive { name: "target" });
    }
    let ln_target = target.ln();
    let f = |c: T| {
        let (w, dw) = g.weight_sum(side, c);
        (w.ln() - ln_target, dw / w)
    };
    if f(lower_start()).0 <= T::zero() {
        return Err(Error::OutOfRange {
            name: "target",
            value: target.to_f64().unwrap_or(f64::NAN),
            range: "(0, W(0+))",
        });
    }
    Ok(monotone_root(f, lower_start(), T::one(), tolerance())?.x)
}
