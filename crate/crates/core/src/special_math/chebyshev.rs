//! Chebyshev interpolation on an interval, evaluated with Clenshaw's recurrence.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, Real};

/// First-kind Chebyshev interpolant of a smooth function on [lo, hi].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Chebyshev<T> {
    lo: T,
    hi: T,
    coeffs: Vec<T>,
}

impl<T: Real> Chebyshev<T> {
    /// Interpolates `f` at `n` Chebyshev points of the first kind.
    pub fn fit<F>(mut f: F, lo: T, hi: T, n: usize) -> Result<Self>
    where
        F: FnMut(T) -> Result<T>,
    {
        if n == 0 || !(hi > lo) {
            return Err(Error::domain("Chebyshev::fit: need n > 0 and lo < hi"));
        }
        let nf = from_usize::<T>(n);
        let mid = (hi + lo) * lit(0.5);
        let rad = (hi - lo) * lit(0.5);
        let mut values = Vec::with_capacity(n);
        for k in 0..n {
            let theta = T::PI() * (from_usize::<T>(k) + lit(0.5)) / nf;
            values.push(f(mid + rad * theta.cos())?);
        }
        let coeffs = (0..n)
            .map(|j| {
                let mut acc = T::zero();
                for (k, v) in values.iter().enumerate() {
                    let theta = T::PI() * from_usize::<T>(j) * (from_usize::<T>(k) + lit(0.5)) / nf;
                    acc += *v * theta.cos();
                }
                let c = acc * lit::<T>(2.0) / nf;
                if j == 0 {
                    c * lit(0.5)
                } else {
                    c
                }
            })
            .collect();
        Ok(Chebyshev { lo, hi, coeffs })
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    /// Magnitude of the last two coefficients, a cheap truncation error proxy.
    pub fn tail_magnitude(&self) -> T {
        self.coeffs
            .iter()
            .rev()
            .take(2)
            .fold(T::zero(), |a, c| a + c.abs())
    }

    /// Value at x; arguments outside [lo, hi] are clamped.
    pub fn eval(&self, x: T) -> T {
        let x = x.max(self.lo).min(self.hi);
        let u = (x * lit(2.0) - self.lo - self.hi) / (self.hi - self.lo);
        let two_u = u * lit(2.0);
        let (mut b1, mut b2) = (T::zero(), T::zero());
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = two_u * b1 - b2 + c;
            b2 = b1;
            b1 = b0;
        }
        u * b1 - b2 + self.coeffs[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_smooth_function() {
        let cheb = Chebyshev::fit(|x: f64| Ok(x.exp() * (3.0 * x).cos()), -1.0, 2.0, 40).unwrap();
        for k in 0..=30 {
            let x = -1.0 + 3.0 * k as f64 / 30.0;
            assert!((cheb.eval(x) - x.exp() * (3.0 * x).cos()).abs() < 1e-13);
        }
        assert!(cheb.tail_magnitude() < 1e-14);
    }

    #[test]
    fn low_degree_polynomial_exact() {
        let cheb = Chebyshev::fit(|x: f64| Ok(1.0 - 2.0 * x + x * x * x), 0.0, 1.0, 6).unwrap();
        assert!((cheb.eval(0.3) - (1.0 - 0.6 + 0.027)).abs() < 1e-15);
    }

    #[test]
    fn rejects_empty_interval() {
        assert!(Chebyshev::fit(|x: f64| Ok(x), 1.0, 1.0, 4).is_err());
    }
}
