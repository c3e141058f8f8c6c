//! Safeguarded Newton iteration for monotone scalar equations.

use num_traits::Float;

use crate::error::{Error, Result};

/// Root of a monotone function together with the final bracket.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root<T> {
    pub x: T,
    /// Function value at `x`.
    pub value: T,
    pub bracket: (T, T),
}

const MAX_ITERS: usize = 400;

/// Finds the sign change of a monotone `f` starting from `lo` where
/// `f(lo)` has the sign of `f(0+)`. The upper end starts at `hi` and is
/// doubled until the sign flips. `f` returns `(value, derivative)`.
///
/// Newton steps are taken when they stay inside the bracket and the previous
/// step halved it, otherwise the bracket is bisected. Stops once `|value| <= abs_tol` or the bracket has
/// collapsed to a few ulps.
pub fn monotone_root<T, F>(f: F, lo: T, hi: T, abs_tol: T) -> Result<Root<T>>
where
    T: Float,
    F: Fn(T) -> (T, T),
{
    let (f_lo, _) = f(lo);
    let sign_lo = f_lo.is_sign_positive();
    let mut hi = hi;
    let mut steps = 0;
    while f(hi).0.is_sign_positive() == sign_lo {
        hi = hi + hi;
        steps += 1;
        if steps > 2000 || !hi.is_finite() {
            return Err(Error::NoConvergence);
        }
    }
    let mut lo = lo;
    let two = T::one() + T::one();
    let mut x = (lo + hi) / two;
    let mut width = hi - lo;
    for _ in 0..MAX_ITERS {
        let (v, dv) = f(x);
        if v.abs() <= abs_tol {
            return Ok(Root {
                x,
                value: v,
                bracket: (lo, hi),
            });
        }
        if v.is_sign_positive() == sign_lo {
            lo = x;
        } else {
            hi = x;
        }
        if hi - lo <= T::epsilon() * two * hi.abs() {
            let (v, _) = f(x);
            return Ok(Root {
                x,
                value: v,
                bracket: (lo, hi),
            });
        }
        // Newton creeps on the convex side of a steep exponential; bisect
        // whenever the last step did not halve the bracket.
        let halved = hi - lo <= width / two;
        width = hi - lo;
        let newton = x - v / dv;
        x = if halved && dv != T::zero() && newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            (lo + hi) / two
        };
    }
    Err(Error::NoConvergence)
}
