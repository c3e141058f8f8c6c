//! Number formatting at a relative precision.

/// Significant digits implied by a relative tolerance: `1e-10` gives 10.
pub fn digits(precision: f64) -> usize {
    ((-precision.log10()).ceil() as usize).clamp(1, 17)
}

/// `x` with `sig` significant digits; plain notation for moderate
/// magnitudes, scientific otherwise.
pub fn fmt(x: f64, sig: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-5..15).contains(&mag) {
        let decimals = (sig as i32 - 1 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.*e}", sig - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(digits(1e-10), 10);
        assert_eq!(digits(0.5), 1);
        assert_eq!(digits(1e-30), 17);
        assert_eq!(fmt(3f64.ln(), 10), "1.098612289");
        assert_eq!(fmt(0.486_166_411_781_990_2, 6), "0.486166");
        assert_eq!(fmt(1234.6, 3), "1235");
        assert_eq!(fmt(1.5e-9, 3), "1.50e-9");
        assert_eq!(fmt(0.0, 3), "0");
    }
}
