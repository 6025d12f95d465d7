//! Grid-based evidence that every window of a given length contains a zero.
//!
//! For the Selberg minorant S₋ of a window with transform support inside
//! [−log 2/2π, log 2/2π], the prime sum vanishes and the conductor term is
//! nonnegative, so the right side of the explicit formula is positive as
//! soon as ℓ(μ, S₋) > 0 for every admissible μ. A zero-free window would
//! make the left side nonpositive. The infimum over Re μ ≥ 0 is estimated
//! on a finite grid, refined locally and checked against the grid edges;
//! the result is numerical evidence, not a proof.

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::explicit_formula::{ell_with_tol, prime_free_delta, Convention, EllKernel};
use crate::extremal::{selberg_minorant, TestFunction};
use crate::scalar::{from_usize, lit, Real};

pub const EVIDENCE_LABEL: &str = "numerical evidence, grid-based";

/// Rectangle {0 ≤ Re μ ≤ re_max, 0 ≤ Im μ ≤ im_max} sampled with spacing `step`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SearchDomain<T> {
    pub re_max: T,
    pub im_max: T,
    pub step: T,
}

impl<T: Real> Default for SearchDomain<T> {
    fn default() -> Self {
        SearchDomain {
            re_max: lit(50.0),
            im_max: lit(200.0),
            step: lit(0.25),
        }
    }
}

impl<T: Real> SearchDomain<T> {
    fn validate(&self) -> Result<()> {
        if !(self.step > T::zero()) || !self.step.is_finite() {
            return Err(Error::domain(format!(
                "grid step must be positive, got {}",
                self.step
            )));
        }
        if !(self.re_max >= T::zero())
            || !(self.im_max >= T::zero())
            || !self.re_max.is_finite()
            || !self.im_max.is_finite()
        {
            return Err(Error::domain(
                "search ranges must be finite and nonnegative",
            ));
        }
        Ok(())
    }

    fn counts(&self) -> (usize, usize) {
        let n = |x: T| (x / self.step + lit(1e-9)).floor().to_usize().unwrap_or(0) + 1;
        (n(self.re_max), n(self.im_max))
    }

    /// Number of grid points.
    pub fn points(&self) -> usize {
        let (a, b) = self.counts();
        a * b
    }
}

/// Minimum of ℓ(μ, f) over a search domain.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MinEll<T> {
    /// Minimum after local refinement, re-evaluated by adaptive quadrature.
    pub value: T,
    pub argmin_re: T,
    pub argmin_im: T,
    /// Minimum over the grid points alone.
    pub grid_value: T,
    pub grid_argmin_re: T,
    pub grid_argmin_im: T,
    /// Smallest ℓ on the far edges (Re μ = re_max or Im μ = im_max) minus
    /// the minimum; positive when the minimum is interior and growth
    /// towards infinity is plausible.
    pub boundary_margin: T,
    pub boundary_ok: bool,
    pub grid_points: usize,
}

impl<T: Real> MinEll<T> {
    pub fn argmin(&self) -> Complex<T> {
        Complex::new(self.argmin_re, self.argmin_im)
    }
}

/// Minimum of ℓ(μ, f) over the grid, with ties broken towards smallest
/// Re μ and then smallest Im μ, then refined by a compass search that stays
/// inside the domain.
///
/// Only Im μ ≥ 0 is searched: for even f, ℓ(μ̄, f) = ℓ(μ, f).
pub fn min_ell_over_mu<T: Real>(
    f: &TestFunction<T>,
    domain: &SearchDomain<T>,
    convention: Convention,
) -> Result<MinEll<T>> {
    domain.validate()?;
    let kernel = EllKernel::new(f, convention, domain.re_max, domain.im_max)?;
    let (n_re, n_im) = domain.counts();
    let step = domain.step;
    let rows: Vec<Vec<T>> = (0..n_re)
        .into_par_iter()
        .map(|i| kernel.eval_row(step * from_usize::<T>(i), T::zero(), step, n_im))
        .collect();

    let mut best = (T::infinity(), 0usize, 0usize);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if v.is_nan() {
                return Err(Error::Accuracy {
                    what: "archimedean term on the grid".into(),
                    best: f64::NAN,
                    estimate: f64::NAN,
                });
            }
            if *v < best.0 {
                best = (*v, i, j);
            }
        }
    }
    let (grid_value, bi, bj) = best;
    let grid_mu = Complex::new(step * from_usize::<T>(bi), step * from_usize::<T>(bj));

    let mut edge = T::infinity();
    for (i, row) in rows.iter().enumerate() {
        if i + 1 == n_re {
            edge = row.iter().fold(edge, |m, v| m.min(*v));
        } else if let Some(v) = row.last() {
            edge = edge.min(*v);
        }
    }

    let refined = refine(&kernel, grid_mu, domain);
    let value = ell_with_tol(refined, f, convention, lit(1e-10))?.value;
    let (value, argmin) = if value <= grid_value {
        (value, refined)
    } else {
        (grid_value, grid_mu)
    };
    let boundary_margin = edge - value;
    Ok(MinEll {
        value,
        argmin_re: argmin.re,
        argmin_im: argmin.im,
        grid_value,
        grid_argmin_re: grid_mu.re,
        grid_argmin_im: grid_mu.im,
        boundary_margin,
        boundary_ok: boundary_margin > T::zero(),
        grid_points: n_re * n_im,
    })
}

/// Compass search from `start`, clamped to the domain.
fn refine<T: Real>(
    kernel: &EllKernel<T>,
    start: Complex<T>,
    domain: &SearchDomain<T>,
) -> Complex<T> {
    let clamp = |z: Complex<T>| {
        Complex::new(
            z.re.max(T::zero()).min(domain.re_max),
            z.im.max(T::zero()).min(domain.im_max),
        )
    };
    let mut x = start;
    let mut fx = kernel.eval(x);
    let mut h = domain.step * lit(0.5);
    let floor = domain.step * lit(1e-6);
    let dirs = [
        (T::one(), T::zero()),
        (-T::one(), T::zero()),
        (T::zero(), T::one()),
        (T::zero(), -T::one()),
    ];
    while h > floor {
        let mut moved = false;
        for (dr, di) in dirs {
            let y = clamp(x + Complex::new(dr * h, di * h));
            let fy = kernel.eval(y);
            if fy < fx {
                x = y;
                fx = fy;
                moved = true;
                break;
            }
        }
        if !moved {
            h *= lit(0.5);
        }
    }
    x
}

/// Outcome of a gap certification run.
#[derive(Clone, Debug, Serialize)]
pub struct GapCertificate<T> {
    pub label: &'static str,
    pub degree: usize,
    pub alpha: T,
    pub beta: T,
    pub window_length: T,
    pub delta: T,
    pub convention: Convention,
    /// degree × min ℓ / 2π: a lower bound for the right side of the explicit
    /// formula at Q = 1, over the searched μ.
    pub margin: T,
    pub min_ell: MinEll<T>,
    pub search_domain: SearchDomain<T>,
    pub asymptotic_cutoff: &'static str,
    pub positivity_confirmed: bool,
    pub certified: bool,
}

const ASYMPTOTIC_NOTE: &str = "beyond the grid, Re psi(z) ~ log|z| grows without bound; \
the far grid edges are required to exceed the interior minimum";

/// Checks that every window of length `window_length` on the critical line
/// contains a zero of any L-function of degree `degree` (Q ≥ 1, any μ with
/// Re μ ≥ 0 inside the search domain).
///
/// The verdict depends on the degree only through the sign of the margin,
/// so a certificate for degree d holds for every smaller degree.
pub fn certify_gap<T: Real>(
    degree: usize,
    window_length: T,
    delta: T,
    domain: &SearchDomain<T>,
    convention: Convention,
) -> Result<GapCertificate<T>> {
    check_parameters(degree, window_length, delta)?;
    let half = window_length * lit(0.5);
    let f = selberg_minorant(-half, half, delta)?;
    let min_ell = min_ell_over_mu(&f, domain, convention)?;
    let margin = from_usize::<T>(degree) * min_ell.value / (T::PI() * lit(2.0));
    let positivity_confirmed = f.positivity_confirmed();
    Ok(GapCertificate {
        label: EVIDENCE_LABEL,
        degree,
        alpha: -half,
        beta: half,
        window_length,
        delta,
        convention,
        margin,
        search_domain: *domain,
        asymptotic_cutoff: ASYMPTOTIC_NOTE,
        positivity_confirmed,
        certified: margin > T::zero() && positivity_confirmed && min_ell.boundary_ok,
        min_ell,
    })
}

fn check_parameters<T: Real>(degree: usize, window_length: T, delta: T) -> Result<()> {
    if degree == 0 {
        return Err(Error::domain("degree must be at least 1"));
    }
    let limit = prime_free_delta::<T>();
    if !(delta > T::zero()) || delta > limit * (T::one() + lit(1e-12)) {
        return Err(Error::domain(format!(
            "delta must lie in (0, log 2/2pi = {limit}], got {delta}"
        )));
    }
    if !(window_length > delta.recip()) || !window_length.is_finite() {
        return Err(Error::domain(format!(
            "window length must exceed 1/delta = {} for the minorant to have positive integral, got {window_length}",
            delta.recip()
        )));
    }
    Ok(())
}

/// Shortest certified window length found by bisection.
#[derive(Clone, Debug, Serialize)]
pub struct MinimalLength<T> {
    pub length: T,
    /// Largest length tried that failed; the true threshold lies in
    /// (uncertified_below, length].
    pub uncertified_below: T,
    pub precision: T,
    pub bisection_steps: usize,
    pub certificate: GapCertificate<T>,
}

/// Bisects on the window length between 1/δ and the first certified length
/// (starting at 5/δ and doubling) until the bracket is narrower than
/// `precision`.
pub fn minimal_certified_length<T: Real>(
    degree: usize,
    delta: T,
    domain: &SearchDomain<T>,
    convention: Convention,
    precision: T,
) -> Result<MinimalLength<T>> {
    if !(precision > T::zero()) {
        return Err(Error::domain(format!(
            "precision must be positive, got {precision}"
        )));
    }
    check_parameters(degree, delta.recip() * lit(2.0), delta)?;
    let mut lo = delta.recip();
    let mut hi = lo * lit(5.0);
    let mut cert = certify_gap(degree, hi, delta, domain, convention)?;
    let mut doublings = 0;
    while !cert.certified {
        doublings += 1;
        if doublings > 8 {
            return Err(Error::Accuracy {
                what: "no certified window length found below 1280/delta".into(),
                best: hi.to_f64().unwrap_or(f64::NAN),
                estimate: f64::NAN,
            });
        }
        lo = hi;
        hi *= lit(2.0);
        cert = certify_gap(degree, hi, delta, domain, convention)?;
    }
    let mut steps = 0;
    while hi - lo > precision {
        let mid = (lo + hi) * lit(0.5);
        let c = certify_gap(degree, mid, delta, domain, convention)?;
        if c.certified {
            hi = mid;
            cert = c;
        } else {
            lo = mid;
        }
        steps += 1;
    }
    Ok(MinimalLength {
        length: hi,
        uncertified_below: lo,
        precision,
        bisection_steps: steps,
        certificate: cert,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d0() -> f64 {
        prime_free_delta()
    }

    fn coarse() -> SearchDomain<f64> {
        SearchDomain {
            re_max: 10.0,
            im_max: 40.0,
            step: 0.5,
        }
    }

    #[test]
    fn grid_counts_include_endpoints() {
        let d: SearchDomain<f64> = SearchDomain::default();
        assert_eq!(d.counts(), (201, 801));
        assert_eq!(d.points(), 201 * 801);
    }

    #[test]
    fn minimum_sits_on_imaginary_axis() {
        let f = selberg_minorant(-2.5 / d0(), 2.5 / d0(), d0()).unwrap();
        let m = min_ell_over_mu(&f, &coarse(), Convention::Halved).unwrap();
        assert!(m.value > 0.0);
        assert_eq!(m.argmin_re, 0.0);
        assert!(m.boundary_ok);
        assert!(m.value <= m.grid_value);
    }

    #[test]
    fn degenerate_windows_rejected() {
        let d = d0();
        assert!(certify_gap(4, 0.9 / d, d, &coarse(), Convention::Halved).is_err());
        assert!(certify_gap(4, 45.0, 2.0 * d, &coarse(), Convention::Halved).is_err());
        assert!(certify_gap(0, 45.0, d, &coarse(), Convention::Halved).is_err());
        let bad = SearchDomain {
            step: 0.0,
            ..coarse()
        };
        assert!(certify_gap(4, 45.0, d, &bad, Convention::Halved).is_err());
    }

    #[test]
    fn verdict_is_degree_independent() {
        let d = d0();
        for length in [20.0, 5.0 / d] {
            let verdicts: Vec<bool> = [1, 2, 3, 4, 10]
                .iter()
                .map(|deg| {
                    certify_gap(*deg, length, d, &coarse(), Convention::Halved)
                        .unwrap()
                        .certified
                })
                .collect();
            assert!(
                verdicts.iter().all(|v| *v == verdicts[0]),
                "{length}: {verdicts:?}"
            );
        }
    }
}
