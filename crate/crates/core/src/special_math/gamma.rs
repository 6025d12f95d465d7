//! Complex log-gamma and digamma.
//!
//! Both use upward recurrence into the region |z| ≥ 15, Re z ≥ 0, where the
//! Stirling / de Moivre asymptotic series with eight Bernoulli terms is
//! accurate to well below 1e-15. The left half-plane is reached through the
//! reflection formulas.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// B_{2k} for k = 1..=8.
const BERNOULLI_EVEN: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

const ASYMPTOTIC_RADIUS: f64 = 15.0;

fn check_pole<T: Real>(z: Complex<T>, name: &str) -> Result<()> {
    if z.im == T::zero() && z.re <= T::zero() && z.re == z.re.round() {
        return Err(Error::domain(format!(
            "{name}: pole of the gamma function at z = {}",
            z.re
        )));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain(format!("{name}: non-finite argument")));
    }
    Ok(())
}

fn digamma_asymptotic<T: Real>(w: Complex<T>) -> Complex<T> {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex::new(T::zero(), T::zero());
    let mut power = inv2;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let two_k = lit::<T>(2.0 * (k as f64 + 1.0));
        series += power * (lit::<T>(*b) / two_k);
        power *= inv2;
    }
    w.ln() - inv * lit::<T>(0.5) - series
}

fn log_gamma_stirling<T: Real>(w: Complex<T>) -> Complex<T> {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex::new(T::zero(), T::zero());
    let mut power = inv;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let two_k = 2.0 * (k as f64 + 1.0);
        series += power * lit::<T>(*b / (two_k * (two_k - 1.0)));
        power *= inv2;
    }
    let half_log_two_pi = lit::<T>(0.918_938_533_204_672_8);
    (w - lit::<T>(0.5)) * w.ln() - w + half_log_two_pi + series
}

/// Cotangent of πz, stable for large |Im z|.
fn cot_pi<T: Real>(z: Complex<T>) -> Complex<T> {
    let two = lit::<T>(2.0);
    let x = T::PI() * z.re * two;
    let y = T::PI() * z.im * two;
    // cot(a + ib) = (sin 2a − i sinh 2b) / (cosh 2b − cos 2a)
    if y.abs() < lit(40.0) {
        let denom = y.cosh() - x.cos();
        Complex::new(x.sin() / denom, -y.sinh() / denom)
    } else {
        let ch = y.cosh();
        let denom = T::one() - x.cos() / ch;
        Complex::new(x.sin() / ch / denom, -y.tanh() / denom)
    }
}

/// Digamma ψ(z) = Γ′(z)/Γ(z) for complex z away from the poles.
pub fn digamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    check_pole(z, "digamma")?;
    if z.re < T::zero() {
        let one = Complex::new(T::one(), T::zero());
        let reflected = digamma(one - z)?;
        return Ok(reflected - cot_pi(z) * T::PI());
    }
    let radius = lit::<T>(ASYMPTOTIC_RADIUS);
    let mut w = z;
    let mut shift = Complex::new(T::zero(), T::zero());
    while w.norm() < radius {
        shift += w.inv();
        w += T::one();
    }
    Ok(digamma_asymptotic(w) - shift)
}

/// Principal branch of log Γ(z).
///
/// The branch is the one continuous on ℂ minus the non-positive real axis
/// and real on the positive reals; on the negative real axis the value is the
/// limit from above.
pub fn log_gamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    check_pole(z, "log_gamma")?;
    let radius = lit::<T>(ASYMPTOTIC_RADIUS);
    if z.re < T::zero() && z.im.abs() < radius {
        // log Γ(z) = log π − log sin(πz) − log Γ(1 − z) + 2πi·k(z)
        let one = Complex::new(T::one(), T::zero());
        let two_pi = T::PI() * lit(2.0);
        let sign = if z.im.is_sign_negative() {
            -T::one()
        } else {
            T::one()
        };
        let branch = sign * two_pi * (lit::<T>(0.5) * z.re + lit(0.25)).floor();
        let sin_pi_z = (z * T::PI()).sin();
        let rest = log_gamma(one - z)?;
        return Ok(Complex::new(T::PI().ln(), branch) - sin_pi_z.ln() - rest);
    }
    if z.norm() >= radius {
        return Ok(log_gamma_stirling(z));
    }
    let mut w = z;
    let mut shift = Complex::new(T::zero(), T::zero());
    while w.norm() < radius {
        shift += w.ln();
        w += T::one();
    }
    Ok(log_gamma_stirling(w) - shift)
}
