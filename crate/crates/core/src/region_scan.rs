//! Classification of degree-4 spectral data μ = (iν₁, −iν₁, iν₂, −iν₂).
//!
//! Two nonnegative-side arguments are run at each point. With the Fejér
//! kernel the zero side is a sum of nonnegative terms, so a negative right
//! side rules the L-function out. With the windowed kernel, which is
//! negative outside (−t₀, t₀), a positive right side forces a zero below t₀.

use std::fmt::Write as _;
use std::io::Write;

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::explicit_formula::{
    ell_with_tol, prime_free_delta, rhs_with_tol, Convention, ELL_TOLERANCE,
};
use crate::extremal::{fejer, windowed_fejer, TestFunction};
use crate::lfunction::FunctionalEquation;
use crate::scalar::{from_usize, lit, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    /// The Fejér right side is negative: no such L-function.
    Impossible,
    /// Any such L-function has a zero with |γ| < t₀.
    ForcedLowZero,
    Unconstrained,
}

impl Verdict {
    pub fn from_sides<T: Real>(fejer_rhs: T, windowed_rhs: T) -> Self {
        if fejer_rhs < T::zero() {
            Verdict::Impossible
        } else if windowed_rhs > T::zero() {
            Verdict::ForcedLowZero
        } else {
            Verdict::Unconstrained
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Impossible => "Impossible",
            Verdict::ForcedLowZero => "ForcedLowZero",
            Verdict::Unconstrained => "Unconstrained",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegionClassification<T> {
    pub nu1: T,
    pub nu2: T,
    pub fejer_rhs: T,
    pub windowed_rhs: T,
    pub verdict: Verdict,
    pub t0: T,
    pub delta: T,
}

/// Parameters shared by every point of a scan.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScanConfig<T> {
    pub nu_max: T,
    pub step: T,
    pub t0: T,
    pub delta: T,
    pub conductor: T,
    pub convention: Convention,
    /// Quadrature tolerance of each archimedean term.
    pub tolerance: T,
}

impl<T: Real> Default for ScanConfig<T> {
    fn default() -> Self {
        ScanConfig {
            nu_max: lit(50.0),
            step: lit(0.25),
            t0: lit(14.13),
            delta: prime_free_delta(),
            conductor: T::one(),
            convention: Convention::Halved,
            tolerance: lit(ELL_TOLERANCE),
        }
    }
}

impl<T: Real> ScanConfig<T> {
    fn validate(&self) -> Result<()> {
        if !(self.t0 > T::zero()) || !self.t0.is_finite() {
            return Err(Error::domain(format!(
                "t0 must be positive, got {}",
                self.t0
            )));
        }
        let limit = prime_free_delta::<T>();
        if !(self.delta > T::zero()) || self.delta > limit * (T::one() + lit(1e-12)) {
            return Err(Error::domain(format!(
                "delta must lie in (0, log 2/2pi = {limit}], got {}",
                self.delta
            )));
        }
        if !(self.conductor >= T::one()) || !self.conductor.is_finite() {
            return Err(Error::domain(format!(
                "conductor must be >= 1, got {}",
                self.conductor
            )));
        }
        if !(self.tolerance > T::zero()) {
            return Err(Error::domain("tolerance must be positive"));
        }
        Ok(())
    }

    fn kernels(&self) -> Result<Kernels<T>> {
        self.validate()?;
        Ok(Kernels {
            fejer: fejer(self.delta)?,
            windowed: windowed_fejer(self.t0, self.delta)?,
        })
    }
}

struct Kernels<T> {
    fejer: TestFunction<T>,
    windowed: TestFunction<T>,
}

impl<T: Real> Kernels<T> {
    /// (ℓ(iν, Fejér), ℓ(iν, windowed)); ℓ(−iν) is the same for even kernels.
    fn ells(&self, nu: T, config: &ScanConfig<T>) -> Result<(T, T)> {
        if !(nu >= T::zero()) || !nu.is_finite() {
            return Err(Error::domain(format!(
                "nu must be finite and >= 0, got {nu}"
            )));
        }
        let mu = Complex::new(T::zero(), nu);
        let a = ell_with_tol(mu, &self.fejer, config.convention, config.tolerance)?.value;
        let b = ell_with_tol(mu, &self.windowed, config.convention, config.tolerance)?.value;
        Ok((a, b))
    }

    fn conductor_terms(&self, config: &ScanConfig<T>) -> (T, T) {
        let lq = config.conductor.ln() / T::PI();
        (lq * self.fejer.integral(), lq * self.windowed.integral())
    }
}

/// Assembles a classification from per-ν archimedean terms. The sum is
/// written so that swapping ν₁ and ν₂ gives bit-identical output.
fn assemble<T: Real>(
    nu1: T,
    nu2: T,
    e1: (T, T),
    e2: (T, T),
    cond: (T, T),
    config: &ScanConfig<T>,
) -> RegionClassification<T> {
    // each ν contributes two conjugate factors: 2ℓ/2π = ℓ/π
    let fejer_rhs = cond.0 + (e1.0 + e2.0) / T::PI();
    let windowed_rhs = cond.1 + (e1.1 + e2.1) / T::PI();
    RegionClassification {
        nu1,
        nu2,
        fejer_rhs,
        windowed_rhs,
        verdict: Verdict::from_sides(fejer_rhs, windowed_rhs),
        t0: config.t0,
        delta: config.delta,
    }
}

/// Classifies μ = (iν₁, −iν₁, iν₂, −iν₂).
pub fn classify_point<T: Real>(
    nu1: T,
    nu2: T,
    config: &ScanConfig<T>,
) -> Result<RegionClassification<T>> {
    let k = config.kernels()?;
    let e1 = k.ells(nu1, config)?;
    let e2 = if nu2 == nu1 { e1 } else { k.ells(nu2, config)? };
    Ok(assemble(
        nu1,
        nu2,
        e1,
        e2,
        k.conductor_terms(config),
        config,
    ))
}

/// Fejér and windowed right sides for arbitrary spectral data, with the
/// resulting verdict. Primes are excluded by the support condition on δ.
pub fn classify_spectral<T: Real>(
    fe: &FunctionalEquation<T>,
    config: &ScanConfig<T>,
) -> Result<(T, T, Verdict)> {
    let k = config.kernels()?;
    let a = rhs_with_tol(fe, &k.fejer, None, config.convention, config.tolerance)?.rhs_total;
    let b = rhs_with_tol(fe, &k.windowed, None, config.convention, config.tolerance)?.rhs_total;
    Ok((a, b, Verdict::from_sides(a, b)))
}

/// Classifies every (ν₁, ν₂) on the grid {0, step, …} ∩ [0, nu_max]²,
/// row-major with ν₁ outermost.
pub fn scan_region<T: Real>(config: &ScanConfig<T>) -> Result<Vec<RegionClassification<T>>> {
    if !(config.step > T::zero()) || !config.step.is_finite() {
        return Err(Error::domain(format!(
            "step must be positive, got {}",
            config.step
        )));
    }
    if !(config.nu_max >= T::zero()) || !config.nu_max.is_finite() {
        return Err(Error::domain(format!(
            "nu_max must be finite and >= 0, got {}",
            config.nu_max
        )));
    }
    let k = config.kernels()?;
    let n = (config.nu_max / config.step + lit(1e-9))
        .floor()
        .to_usize()
        .unwrap_or(0)
        + 1;
    let nus: Vec<T> = (0..n).map(|i| config.step * from_usize::<T>(i)).collect();
    let ells = nus
        .par_iter()
        .map(|nu| k.ells(*nu, config))
        .collect::<Result<Vec<_>>>()?;
    let cond = k.conductor_terms(config);
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(assemble(nus[i], nus[j], ells[i], ells[j], cond, config));
        }
    }
    Ok(out)
}

/// `x` with 10 significant digits, in plain decimal when the exponent is
/// moderate and scientific notation otherwise.
pub fn format_significant(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.9e}");
    let exp: i32 = sci
        .split('e')
        .nth(1)
        .and_then(|e| e.parse().ok())
        .unwrap_or(0);
    if !(-5..10).contains(&exp) {
        return sci;
    }
    let decimals = (9 - exp).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    s
}

/// Writes the scan as CSV with `#` metadata lines.
pub fn write_csv<T: Real, W: Write>(
    out: &mut W,
    config: &ScanConfig<T>,
    rows: &[RegionClassification<T>],
) -> Result<()> {
    let f = |x: T| format_significant(x.to_f64().unwrap_or(f64::NAN));
    let mut s = String::new();
    let _ = writeln!(s, "# t0={}", f(config.t0));
    let _ = writeln!(s, "# delta={}", f(config.delta));
    let _ = writeln!(s, "# Q={}", f(config.conductor));
    let _ = writeln!(s, "# step={}", f(config.step));
    let _ = writeln!(s, "# nu_max={}", f(config.nu_max));
    let _ = writeln!(s, "# convention={}", config.convention);
    let _ = writeln!(
        s,
        "# mu=(i nu1, -i nu1, i nu2, -i nu2); larger Q only raises both right sides"
    );
    s.push_str("nu1,nu2,fejer_rhs,windowed_rhs,verdict\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            f(r.nu1),
            f(r.nu2),
            f(r.fejer_rhs),
            f(r.windowed_rhs),
            r.verdict.as_str()
        );
    }
    out.write_all(s.as_bytes())?;
    Ok(())
}
