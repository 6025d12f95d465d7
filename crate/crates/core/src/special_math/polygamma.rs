//! Real trigamma and the two trigamma excesses the Beurling function needs.

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// B_{2k} for k = 1..=7.
const BERNOULLI_EVEN: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

const ASYMPTOTIC_START: f64 = 12.0;

/// ψ′(y) − 1/y for y ≥ 12, without forming either term.
fn excess_asymptotic<T: Real>(y: T) -> T {
    let inv = y.recip();
    let inv2 = inv * inv;
    let mut power = inv2 * inv;
    let mut acc = lit::<T>(0.5) * inv2;
    for b in BERNOULLI_EVEN {
        acc += lit::<T>(b) * power;
        power *= inv2;
    }
    acc
}

/// Trigamma ψ′(x) for real x > 0.
pub fn trigamma_real<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::domain(format!(
            "trigamma_real: requires finite x > 0, got {x}"
        )));
    }
    let start = lit::<T>(ASYMPTOTIC_START);
    let mut y = x;
    let mut head = T::zero();
    while y < start {
        head += (y * y).recip();
        y += T::one();
    }
    Ok(head + y.recip() + excess_asymptotic(y))
}

/// ψ′(y) − 1/y for y > 0.
///
/// Positive, and behaves like 1/(2y²) for large y; evaluated without the
/// cancellation that forming ψ′(y) − 1/y literally would incur.
pub fn trigamma_minus_reciprocal<T: Real>(y: T) -> Result<T> {
    if !(y > T::zero()) || !y.is_finite() {
        return Err(Error::domain(format!(
            "trigamma_minus_reciprocal: requires finite y > 0, got {y}"
        )));
    }
    let start = lit::<T>(ASYMPTOTIC_START);
    if y >= start {
        return Ok(excess_asymptotic(y));
    }
    let mut w = y;
    let mut head = T::zero();
    while w < start {
        head += (w * w).recip();
        w += T::one();
    }
    // ψ′(y) − 1/y = Σ 1/(y+k)² + [ψ′(w) − 1/w] + 1/w − 1/y
    let steps = w - y;
    Ok(head + excess_asymptotic(w) - steps / (y * w))
}

/// 1/x − ψ′(1 + x) for x > 0, which equals 1/x − Σ_{n≥1} 1/(n + x)².
pub fn reciprocal_minus_trigamma_shifted<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::domain(format!(
            "reciprocal_minus_trigamma_shifted: requires finite x > 0, got {x}"
        )));
    }
    if x < T::one() {
        Ok(x.recip() - trigamma_real(T::one() + x)?)
    } else {
        // ψ′(1 + x) = ψ′(x) − 1/x², so the quantity is 1/x² − (ψ′(x) − 1/x).
        Ok((x * x).recip() - trigamma_minus_reciprocal(x)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn classical_values() {
        assert!((trigamma_real(1.0).unwrap() - PI * PI / 6.0).abs() < 1e-14);
        assert!((trigamma_real(2.0).unwrap() - (PI * PI / 6.0 - 1.0)).abs() < 1e-14);
        assert!((trigamma_real(0.5).unwrap() - PI * PI / 2.0).abs() < 1e-13);
    }

    #[test]
    fn nonpositive_argument_rejected() {
        assert!(trigamma_real(0.0).is_err());
        assert!(trigamma_real(-1.5).is_err());
        assert!(trigamma_minus_reciprocal(0.0).is_err());
        assert!(reciprocal_minus_trigamma_shifted(-0.1).is_err());
    }

    #[test]
    fn excesses_agree_with_direct_forms_where_stable() {
        for &x in &[0.3f64, 1.0, 2.5, 7.0, 11.5, 12.5, 40.0] {
            let direct = trigamma_real(x).unwrap() - 1.0 / x;
            let got = trigamma_minus_reciprocal(x).unwrap();
            assert!(
                (direct - got).abs() < 1e-14 * (1.0 + direct.abs()),
                "x = {x}"
            );
            let direct = 1.0 / x - trigamma_real(1.0 + x).unwrap();
            let got = reciprocal_minus_trigamma_shifted(x).unwrap();
            assert!((direct - got).abs() < 1e-14 * (1.0 + 1.0 / x), "x = {x}");
        }
    }

    #[test]
    fn excess_large_argument_leading_terms() {
        let y = 1.0e6f64;
        let got = trigamma_minus_reciprocal(y).unwrap();
        let lead = 0.5 / (y * y) + 1.0 / (6.0 * y * y * y);
        assert!(((got - lead) / lead).abs() < 1e-15);
        let got = reciprocal_minus_trigamma_shifted(y).unwrap();
        let lead = 0.5 / (y * y) - 1.0 / (6.0 * y * y * y);
        assert!(((got - lead) / lead).abs() < 1e-12);
    }
}
