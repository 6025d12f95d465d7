//! Special functions and quadrature used by the rest of the crate.

pub mod chebyshev;
pub mod gamma;
pub mod polygamma;
pub mod quadrature;

pub use chebyshev::Chebyshev;
pub use gamma::{digamma, log_gamma};
pub use polygamma::{reciprocal_minus_trigamma_shifted, trigamma_minus_reciprocal, trigamma_real};
pub use quadrature::{
    gauss_legendre, integrate, integrate_line, integrate_line_with_budget, integrate_tail,
    wynn_epsilon, Envelope, QuadratureResult, DEFAULT_BUDGET,
};
