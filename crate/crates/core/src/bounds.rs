//! Closed-form lower bounds on diastole, systole and volume, and the packing
//! count used for precompactness.
//!
//! `H` is an upper bound on the volume entropy, `D` on the diameter.

use num_traits::{Float, FloatConst};

use crate::error::{Error, Result};

fn positive<T: Float>(name: &'static str, x: T) -> Result<T> {
    if x > T::zero() && x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonPositive { name })
    }
}

fn lit<T: Float>(x: f64) -> T {
    T::from(x).unwrap()
}

/// `log(3) / (6H)`, the diastole bound for free products without 2-torsion.
pub fn diastole_lb<T: Float>(entropy: T) -> Result<T> {
    let h = positive("H", entropy)?;
    Ok(lit::<T>(3.0).ln() / (lit::<T>(6.0) * h))
}

/// `(1/H) · log(1 + 4 / (e^{2DH} - 1))`, the homotopy systole bound for
/// torsion-free free products.
pub fn systole_lb<T: Float>(entropy: T, diameter: T) -> Result<T> {
    let h = positive("H", entropy)?;
    let d = positive("D", diameter)?;
    Ok(sharp_pair_term(lit::<T>(2.0) * d * h) / h)
}

// log(1 + 4/(e^x - 1)), stable for small and large x.
fn sharp_pair_term<T: Float>(x: T) -> T {
    (lit::<T>(4.0) / x.exp_m1()).ln_1p()
}

/// Both forms of the two-generator estimate at entropy bound `H` and
/// second-generator length `l2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LsePair<T> {
    /// `(1/H) · log(1 + 4 e^{-H·l2})`.
    pub displayed: T,
    /// `(1/H) · log(1 + 4 / (e^{H·l2} - 1))`, implied by the exact entropy equation.
    pub sharp: T,
}

pub fn pair_inequality_lse<T: Float>(entropy: T, l2: T) -> Result<LsePair<T>> {
    let h = positive("H", entropy)?;
    let l2 = positive("l2", l2)?;
    Ok(LsePair {
        displayed: (lit::<T>(4.0) * (-h * l2).exp()).ln_1p() / h,
        sharp: sharp_pair_term(h * l2) / h,
    })
}

/// `δ·log 2 / ((4 + δ)·H)`, the comparison bound for δ-nonabelian groups.
pub fn bcg_diastole_lb<T: Float + FloatConst>(delta: T, entropy: T) -> Result<T> {
    let delta = positive("delta", delta)?;
    let h = positive("H", entropy)?;
    Ok(delta * T::LN_2() / ((lit::<T>(4.0) + delta) * h))
}

/// The `δ` below which [`diastole_lb`] beats [`bcg_diastole_lb`]:
/// `4·log 3 / (6·log 2 - log 3)`. Independent of `H`.
pub fn bcg_crossover_delta<T: Float + FloatConst>() -> T {
    let ln3 = lit::<T>(3.0).ln();
    lit::<T>(4.0) * ln3 / (lit::<T>(6.0) * T::LN_2() - ln3)
}

/// `C_n · systole_lb(H, D)^n`.
pub fn volume_lb<T: Float>(dimension: u32, entropy: T, diameter: T, c_n: T) -> Result<T> {
    if dimension < 2 {
        return Err(Error::OutOfRange {
            name: "n",
            value: f64::from(dimension),
            range: "[2, inf)",
        });
    }
    let c_n = positive("C_n", c_n)?;
    Ok(c_n * systole_lb(entropy, diameter)?.powi(dimension as i32))
}

/// `V / (C_n · ε^n)`: upper bound on the number of disjoint ε-balls.
pub fn packing_count_ub<T: Float>(volume: T, radius: T, c_n: T, dimension: u32) -> Result<T> {
    let v = positive("V", volume)?;
    let eps = positive("epsilon", radius)?;
    let c_n = positive("C_n", c_n)?;
    if dimension == 0 {
        return Err(Error::NonPositive { name: "n" });
    }
    Ok(v / (c_n * eps.powi(dimension as i32)))
}

/// `min(l, systole_lb(H, D))`.
pub fn l0_combine<T: Float>(loop_bound: T, entropy: T, diameter: T) -> Result<T> {
    let l = positive("l", loop_bound)?;
    Ok(l.min(systole_lb(entropy, diameter)?))
}

/// Shortest geodesic loop of a quotient: `min(sys π1, sgl of the cover)`.
pub fn sgl_combine<T: Float>(systole: T, cover_loop: T) -> Result<T> {
    Ok(positive("sys", systole)?.min(positive("sgl_cover", cover_loop)?))
}
