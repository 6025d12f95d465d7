//! Both sides of the explicit formula
//!
//!   Σ_γ f(γ) = (log Q/π)·f̂(0) + (1/2π) Σⱼ ℓ(μⱼ, f)
//!              + (1/2π) Σₙ [c(n) f̂(log n/2π) + c̄(n) f̂(−log n/2π)] / √n,
//!
//!   ℓ(μ, f) = Re ∫ ψ(a + it/2) f(t) dt − f̂(0)·log π,
//!
//! with a = 1/4 + μ/2 (the form that follows from Γ_ℝ(s + μ)) or the
//! literal a = 1/4 + μ.
//!
//! The archimedean integral is evaluated on the Fourier side. Gauss's
//! integral for ψ turns it into
//!
//!   −γ_E f̂(0) − f̂(0)·log(1 − e^{−U}) + ∫₀^U [e^{−u} f̂(0) − e^{−au} f̂(u/4π)] / (1 − e^{−u}) du
//!
//! where U = 4π·(support radius), a finite smooth integral that needs no
//! digamma evaluations. [`ell_direct`] integrates ψ against f on the t side
//! and serves as an independent cross-check.

use std::f64::consts::PI;
use std::str::FromStr;

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremal::{TestFunction, TestFunctionSummary};
use crate::lfunction::{FunctionalEquation, LFunctionData, LogDerivativeCoefficients, ZeroList};
use crate::scalar::{from_usize, lit, Real};
use crate::special_math::{
    digamma, gauss_legendre, integrate, integrate_tail, QuadratureResult, DEFAULT_BUDGET,
};

/// Per-factor tolerance of the archimedean integral.
pub const ELL_TOLERANCE: f64 = 1e-8;

/// Which argument the digamma kernel takes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// ψ(1/4 + it/2 + μ/2).
    #[default]
    Halved,
    /// ψ(1/4 + it/2 + μ).
    Literal,
}

impl Convention {
    pub fn as_str(&self) -> &'static str {
        match self {
            Convention::Halved => "halved",
            Convention::Literal => "literal",
        }
    }

    /// Factor multiplying μ inside the kernel argument.
    pub fn scale<T: Real>(&self) -> T {
        match self {
            Convention::Halved => lit(0.5),
            Convention::Literal => T::one(),
        }
    }

    /// The kernel offset a(μ) so that the argument is a + it/2.
    pub fn offset<T: Real>(&self, mu: Complex<T>) -> Complex<T> {
        mu * self.scale::<T>() + lit::<T>(0.25)
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "halved" => Ok(Convention::Halved),
            "literal" => Ok(Convention::Literal),
            other => Err(Error::domain(format!(
                "unknown convention {other:?} (expected halved or literal)"
            ))),
        }
    }
}

impl std::fmt::Display for Convention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

fn check_mu<T: Real>(mu: Complex<T>) -> Result<()> {
    if !(mu.re >= T::zero()) || !mu.im.is_finite() || !mu.re.is_finite() {
        return Err(Error::domain(format!(
            "spectral parameter must have finite Re mu >= 0, got {mu}"
        )));
    }
    Ok(())
}

fn span<T: Real>(f: &TestFunction<T>) -> T {
    T::PI() * lit(4.0) * f.support_radius()
}

/// −γ_E·f̂(0) − f̂(0)·log(1 − e^{−U}) − f̂(0)·log π: the closed-form part.
fn constant_part<T: Real>(f: &TestFunction<T>) -> T {
    let f0 = f.integral();
    let u = span(f);
    -T::euler_gamma() * f0 - f0 * (-(-u).exp_m1()).ln() - f0 * T::PI().ln()
}

/// Complex ℓ before taking the real part: I(a) − f̂(0)·log π, by adaptive
/// quadrature on the Fourier side. The imaginary part is returned so that
/// callers can measure leakage; ℓ itself is the real part.
pub fn ell_complex<T: Real>(
    mu: Complex<T>,
    f: &TestFunction<T>,
    convention: Convention,
    tol: T,
) -> Result<(Complex<T>, T)> {
    check_mu(mu)?;
    let a = convention.offset(mu);
    let f0 = f.integral();
    let quarter_inv_pi = (T::PI() * lit(4.0)).recip();
    let kernel = |u: T| -> Complex<T> {
        if u <= T::zero() {
            return Complex::new(T::zero(), T::zero());
        }
        let denom = -(-u).exp_m1();
        let e = (-(a * u)).exp() * f.transform(u * quarter_inv_pi);
        Complex::new((-u).exp() * f0 - e.re, -e.im) / denom
    };
    let pts = fourier_breakpoints(f, a.re, a.im.abs());
    let re = integrate(|u| kernel(u).re, &pts, tol, DEFAULT_BUDGET)?;
    let im = integrate(|u| kernel(u).im, &pts, tol, DEFAULT_BUDGET)?;
    Ok((
        Complex::new(re.value + constant_part(f), im.value),
        re.error_estimate,
    ))
}

/// Initial partition of [0, U]: transform kinks, panels of bounded phase
/// and geometric grading towards u = 0 for large Re a.
fn fourier_breakpoints<T: Real>(f: &TestFunction<T>, re_a: T, im_a: T) -> Vec<T> {
    let u_max = span(f);
    let scale = T::PI() * lit(4.0);
    let mut pts = vec![T::zero(), u_max];
    pts.extend(f.transform_breakpoints().into_iter().map(|x| x * scale));
    let panels = (im_a * u_max / lit(4.0))
        .ceil()
        .to_usize()
        .unwrap_or(1)
        .clamp(1, 20_000);
    for k in 1..panels {
        pts.push(u_max * from_usize::<T>(k) / from_usize::<T>(panels));
    }
    let floor = lit::<T>(0.05) / re_a.max(T::one());
    let mut x = u_max * lit(0.5);
    while x > floor {
        pts.push(x);
        x *= lit(0.5);
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    pts.dedup();
    pts
}

/// ℓ(μ, f) at the standard tolerance.
pub fn ell<T: Real>(mu: Complex<T>, f: &TestFunction<T>, convention: Convention) -> Result<T> {
    ell_with_tol(mu, f, convention, lit(ELL_TOLERANCE)).map(|r| r.value)
}

/// ℓ(μ, f) with an explicit absolute tolerance.
pub fn ell_with_tol<T: Real>(
    mu: Complex<T>,
    f: &TestFunction<T>,
    convention: Convention,
    tol: T,
) -> Result<QuadratureResult<T>> {
    let (z, err) = ell_complex(mu, f, convention, tol)?;
    Ok(QuadratureResult {
        value: z.re,
        error_estimate: err,
        evaluations: 1,
    })
}

/// ℓ(μ, f) from Re ∫ ψ(a + it/2)·f(t) dt on the t side, with the slowly
/// decaying oscillatory tails handled mode by mode. Independent of the
/// Fourier-side derivation; considerably slower.
pub fn ell_direct<T: Real>(
    mu: Complex<T>,
    f: &TestFunction<T>,
    convention: Convention,
    tol: T,
) -> Result<QuadratureResult<T>> {
    check_mu(mu)?;
    let a = convention.offset(mu);
    let weight = |t: T| {
        let z = a + Complex::new(T::zero(), t * lit(0.5));
        digamma(z).map(|p| p.re).unwrap_or_else(|_| T::nan())
    };
    let r = f.integrate_weighted(&weight, T::zero(), T::zero(), tol)?;
    Ok(QuadratureResult {
        value: r.value - f.integral() * T::PI().ln(),
        error_estimate: r.error_estimate,
        evaluations: r.evaluations,
    })
}

/// ℓ(·, f) for many μ at fixed cost per point: a composite Gauss–Legendre
/// rule on [0, U] sized for the largest |Im a| and Re a it will be asked
/// about, with the transform values folded into precomputed weights.
#[derive(Clone, Debug)]
pub struct EllKernel<T> {
    convention: Convention,
    nodes: Vec<T>,
    weights: Vec<Complex<T>>,
    constant: T,
    max_re: T,
    max_im: T,
}

impl<T: Real> EllKernel<T> {
    /// Kernel accurate for Re μ ∈ [0, max_re_mu] and |Im μ| ≤ max_im_mu.
    pub fn new(
        f: &TestFunction<T>,
        convention: Convention,
        max_re_mu: T,
        max_im_mu: T,
    ) -> Result<Self> {
        if !(max_re_mu >= T::zero()) || !(max_im_mu >= T::zero()) {
            return Err(Error::domain("EllKernel: ranges must be non-negative"));
        }
        let s = convention.scale::<T>();
        let max_re = max_re_mu * s + lit(0.25);
        let max_im = max_im_mu * s;
        let u_max = span(f);
        let scale = T::PI() * lit(4.0);
        let mut pts = vec![T::zero(), u_max];
        pts.extend(f.transform_breakpoints().into_iter().map(|x| x * scale));
        // phase per panel at most 8 radians; 20-point rules are then exact
        // far below double precision
        let panels = (max_im * u_max / lit(8.0))
            .ceil()
            .to_usize()
            .unwrap_or(1)
            .max(2);
        for k in 1..panels {
            pts.push(u_max * from_usize::<T>(k) / from_usize::<T>(panels));
        }
        let floor = lit::<T>(0.5) / max_re.max(T::one());
        let mut x = u_max * lit(0.5);
        while x > floor {
            pts.push(x);
            x *= lit(0.5);
        }
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        pts.dedup();

        let (gx, gw) = gauss_legendre(20);
        let f0 = f.integral();
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        let mut c0 = T::zero();
        for w in pts.windows(2) {
            let half = (w[1] - w[0]) * lit(0.5);
            let mid = (w[1] + w[0]) * lit(0.5);
            for (x, wt) in gx.iter().zip(&gw) {
                let u = mid + half * lit(*x);
                let wu = half * lit(*wt);
                let denom = -(-u).exp_m1();
                c0 += wu * (-u).exp() / denom;
                nodes.push(u);
                weights.push(f.transform(u / scale) * (wu / denom));
            }
        }
        Ok(EllKernel {
            convention,
            nodes,
            weights,
            constant: constant_part(f) + f0 * c0,
            max_re,
            max_im,
        })
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Number of quadrature nodes.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Complex ℓ at the kernel offset a (real part is ℓ).
    pub fn eval_offset(&self, a: Complex<T>) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for (u, w) in self.nodes.iter().zip(&self.weights) {
            acc += *w * (-(a * *u)).exp();
        }
        Complex::new(self.constant, T::zero()) - acc
    }

    /// ℓ(μ, f).
    pub fn eval(&self, mu: Complex<T>) -> T {
        self.eval_offset(self.convention.offset(mu)).re
    }

    /// ℓ(μ, f) for μ = re_mu + i(im_start + j·im_step), j < count.
    ///
    /// Successive points reuse the previous exponentials through one
    /// complex multiplication per node, re-anchored every 64 steps.
    pub fn eval_row(&self, re_mu: T, im_start: T, im_step: T, count: usize) -> Vec<T> {
        let s = self.convention.scale::<T>();
        let mut out = Vec::with_capacity(count);
        let step: Vec<Complex<T>> = self
            .nodes
            .iter()
            .map(|u| Complex::from_polar(T::one(), -(im_step * s * *u)))
            .collect();
        let mut terms: Vec<Complex<T>> = Vec::new();
        for j in 0..count {
            if j % 64 == 0 {
                let a = self
                    .convention
                    .offset(Complex::new(re_mu, im_start + im_step * from_usize::<T>(j)));
                terms = self
                    .nodes
                    .iter()
                    .zip(&self.weights)
                    .map(|(u, w)| *w * (-(a * *u)).exp())
                    .collect();
            } else {
                for (t, st) in terms.iter_mut().zip(&step) {
                    *t *= *st;
                }
            }
            let sum = terms.iter().fold(T::zero(), |acc, t| acc + t.re);
            out.push(self.constant - sum);
        }
        out
    }

    /// The (Re a, |Im a|) range the kernel was sized for.
    pub fn range(&self) -> (T, T) {
        (self.max_re, self.max_im)
    }
}

/// Right-hand side of the explicit formula, component by component.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RhsComponents<T> {
    pub rhs_conductor: T,
    /// ℓ(μⱼ, f)/2π for each spectral parameter.
    pub rhs_archimedean: Vec<T>,
    pub rhs_primes: T,
    pub rhs_total: T,
    /// Largest imaginary part discarded when forming the real components.
    pub imaginary_leakage: T,
    /// Summed quadrature tolerance of the archimedean terms, divided by 2π.
    pub tolerance_budget: T,
}

/// Conductor, archimedean and prime terms for `fe` and `f`.
///
/// `primes` may be omitted when the transform support is at most
/// log 2/2π, in which case the prime sum is empty.
pub fn rhs<T: Real>(
    fe: &FunctionalEquation<T>,
    f: &TestFunction<T>,
    primes: Option<&LogDerivativeCoefficients<T>>,
    convention: Convention,
) -> Result<RhsComponents<T>> {
    rhs_with_tol(fe, f, primes, convention, lit(ELL_TOLERANCE))
}

pub fn rhs_with_tol<T: Real>(
    fe: &FunctionalEquation<T>,
    f: &TestFunction<T>,
    primes: Option<&LogDerivativeCoefficients<T>>,
    convention: Convention,
    tol: T,
) -> Result<RhsComponents<T>> {
    let two_pi = T::PI() * lit(2.0);
    let f0 = f.integral();
    let rhs_conductor = fe.conductor().ln() / T::PI() * f0;

    let mut archimedean = Vec::with_capacity(fe.degree());
    let mut im_sum = T::zero();
    let mut budget = T::zero();
    for mu in fe.spectral() {
        let (z, err) = ell_complex(*mu, f, convention, tol)?;
        archimedean.push(z.re / two_pi);
        im_sum += z.im / two_pi;
        budget += (tol.max(err)) / two_pi;
    }

    let (rhs_primes, prime_im) = prime_sum(f, primes)?;
    let leakage = im_sum.abs().max(prime_im.abs());
    let rhs_total = archimedean.iter().fold(rhs_conductor, |acc, x| acc + *x) + rhs_primes;
    Ok(RhsComponents {
        rhs_conductor,
        rhs_archimedean: archimedean,
        rhs_primes,
        rhs_total,
        imaginary_leakage: leakage,
        tolerance_budget: budget,
    })
}

/// Largest n with log n/2π < support radius (1 when the prime sum is empty).
pub fn prime_reach<T: Real>(f: &TestFunction<T>) -> Result<u64> {
    let two_pi = T::PI() * lit(2.0);
    let reach = f.support_radius();
    let mut n: u64 = 1;
    while lit::<T>((n + 1) as f64).ln() / two_pi < reach {
        n += 1;
        if n > 10_000_000 {
            return Err(Error::domain("prime sum: transform support too wide"));
        }
    }
    Ok(n)
}

fn prime_sum<T: Real>(
    f: &TestFunction<T>,
    primes: Option<&LogDerivativeCoefficients<T>>,
) -> Result<(T, T)> {
    let two_pi = T::PI() * lit(2.0);
    let needed: Vec<u64> = (2..=prime_reach(f)?).collect();
    if needed.is_empty() {
        return Ok((T::zero(), T::zero()));
    }
    let Some(c) = primes else {
        let missing = needed
            .into_iter()
            .filter(|n| crate::lfunction::prime_power(*n).is_some())
            .collect();
        return Err(Error::Incomplete { missing });
    };
    let mut total = Complex::new(T::zero(), T::zero());
    let mut missing = Vec::new();
    for n in needed {
        match c.get(n) {
            Some(cn) => {
                let x = lit::<T>(n as f64).ln() / two_pi;
                let root = lit::<T>(n as f64).sqrt();
                total += (cn * f.transform(x) + cn.conj() * f.transform(-x)) / root;
            }
            None => missing.push(n),
        }
    }
    if !missing.is_empty() {
        return Err(Error::Incomplete { missing });
    }
    Ok((total.re / two_pi, total.im / two_pi))
}

/// Σ f(γ) over a zero list with a heuristic bound for unlisted zeros.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZeroSum<T> {
    pub value: T,
    /// ∫_{|t|>T_max} |f|-majorant × zero density: bounds the unlisted zeros'
    /// contribution under the density surrogate. Heuristic, not a proof.
    pub tail_bound: T,
    /// ∫_{|t|>T_max} f × zero density: the expected unlisted contribution.
    pub tail_estimate: T,
    pub terms: usize,
}

/// Zero-density surrogate (1/π)(log Q + (d/2)·log((|t| + 10)/2π)).
pub fn zero_density<T: Real>(fe: &FunctionalEquation<T>, t: T) -> T {
    let d = from_usize::<T>(fe.degree());
    let two_pi = T::PI() * lit(2.0);
    (fe.conductor().ln() + d * lit(0.5) * ((t.abs() + lit(10.0)) / two_pi).ln()) / T::PI()
}

/// Σ_γ f(γ) in increasing order of γ (self-dual lists mirrored), plus the
/// tail bound and estimate for zeros beyond T_max.
pub fn zero_sum<T: Real>(
    zeros: &ZeroList<T>,
    f: &TestFunction<T>,
    fe: &FunctionalEquation<T>,
) -> Result<ZeroSum<T>> {
    let ordinates = zeros.ordinates();
    let value = ordinates.iter().fold(T::zero(), |acc, g| acc + f.value(*g));
    let t_max = zeros.t_max();
    if t_max.is_infinite() {
        return Ok(ZeroSum {
            value,
            tail_bound: T::zero(),
            tail_estimate: T::zero(),
            terms: ordinates.len(),
        });
    }
    let tol = lit::<T>(1e-10);
    let density = |t: T| zero_density(fe, t);

    // majorant: both half-lines contribute equally
    let knee = t_max.max(f.envelope().from);
    let mut bound = T::zero();
    if knee > t_max {
        bound += integrate(
            |t: T| f.bound(t) * density(t),
            &[t_max, knee],
            tol,
            DEFAULT_BUDGET,
        )?
        .value;
    }
    let start = knee.max(T::min_positive_value());
    bound += integrate_tail(
        |t: T| f.bound(t) * density(t),
        T::zero(),
        T::zero(),
        start,
        tol,
    )?
    .value;
    let tail_bound = bound * lit(2.0);

    let full = f
        .integrate_weighted(&density, T::zero(), T::zero(), tol)?
        .value;
    let inner = if t_max > T::zero() {
        let n = 64;
        let pts: Vec<T> = (0..=n)
            .map(|k| -t_max + t_max * lit::<T>(2.0) * from_usize::<T>(k) / from_usize::<T>(n))
            .collect();
        integrate(|t: T| f.value(t) * density(t), &pts, tol, DEFAULT_BUDGET)?.value
    } else {
        T::zero()
    };
    Ok(ZeroSum {
        value,
        tail_bound,
        tail_estimate: full - inner,
        terms: ordinates.len(),
    })
}

/// Both sides of the explicit formula for a data set and test function.
#[derive(Clone, Debug, Serialize)]
pub struct ExplicitFormulaReport<T> {
    pub convention: Convention,
    pub degree: usize,
    pub conductor: T,
    pub conductor_assumed: bool,
    pub test_function: TestFunctionSummary<T>,
    pub zero_side: T,
    pub zero_count: usize,
    pub t_max: T,
    pub tail_bound: T,
    pub tail_estimate: T,
    pub rhs_conductor: T,
    pub rhs_archimedean: Vec<T>,
    pub rhs_primes: T,
    pub rhs_total: T,
    /// zero_side − rhs_total.
    pub residual: T,
    /// log Q that would make the residual vanish.
    pub implied_log_q: T,
    pub tolerance_budget: T,
    pub imaginary_leakage: T,
    /// Residual allowance: tail_bound + tolerance_budget.
    pub allowance: T,
    pub consistent: bool,
}

/// Evaluates both sides for `data` and reports the residual.
///
/// The prime sum uses c(n) derived from the data's coefficients; it is
/// empty when the transform support is at most log 2/2π.
pub fn verify<T: Real>(
    data: &LFunctionData<T>,
    f: &TestFunction<T>,
    convention: Convention,
) -> Result<ExplicitFormulaReport<T>> {
    verify_with_tol(data, f, convention, lit(ELL_TOLERANCE))
}

pub fn verify_with_tol<T: Real>(
    data: &LFunctionData<T>,
    f: &TestFunction<T>,
    convention: Convention,
    tol: T,
) -> Result<ExplicitFormulaReport<T>> {
    let fe = data.functional_equation();
    let bound = prime_reach(f)?;
    let coefficients = if bound >= 2 {
        Some(crate::lfunction::c_coefficients(data, bound)?)
    } else {
        None
    };
    let rhs = rhs_with_tol(fe, f, coefficients.as_ref(), convention, tol)?;
    let zs = zero_sum(data.zeros(), f, fe)?;
    let residual = zs.value - rhs.rhs_total;
    let f0 = f.integral();
    let implied = fe.conductor().ln() + T::PI() * residual / f0;
    let allowance = zs.tail_bound + rhs.tolerance_budget;
    Ok(ExplicitFormulaReport {
        convention,
        degree: fe.degree(),
        conductor: fe.conductor(),
        conductor_assumed: data.conductor_assumed(),
        test_function: f.summary(),
        zero_side: zs.value,
        zero_count: zs.terms,
        t_max: data.zeros().t_max(),
        tail_bound: zs.tail_bound,
        tail_estimate: zs.tail_estimate,
        rhs_conductor: rhs.rhs_conductor,
        rhs_archimedean: rhs.rhs_archimedean,
        rhs_primes: rhs.rhs_primes,
        rhs_total: rhs.rhs_total,
        residual,
        implied_log_q: implied,
        tolerance_budget: rhs.tolerance_budget,
        imaginary_leakage: rhs.imaginary_leakage,
        allowance,
        consistent: residual.abs() <= allowance,
    })
}

/// δ₀ = log 2/2π, the widest transform support for which the prime sum
/// vanishes.
pub fn prime_free_delta<T: Real>() -> T {
    lit(2f64.ln() / (2.0 * PI))
}
