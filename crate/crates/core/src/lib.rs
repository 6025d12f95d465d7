//! Explicit-formula tools for zero gaps of L-functions: Beurling–Selberg
//! test functions, archimedean terms, grid-based gap certificates and
//! spectral-parameter region scans.
//!
//! Everything is generic over the scalar through [`Real`]; the aliases at
//! the crate root fix it to `f64`.

// `!(x > 0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certification;
pub mod error;
pub mod explicit_formula;
pub mod extremal;
pub mod lfunction;
pub mod region_scan;
pub mod scalar;
pub mod special_math;

pub use certification::{certify_gap, min_ell_over_mu, minimal_certified_length, SearchDomain};
pub use error::{Error, Result};
pub use explicit_formula::{ell, prime_free_delta, rhs, verify, zero_sum, Convention, EllKernel};
pub use extremal::{beurling, fejer, selberg_minorant, windowed_fejer, PositivityWindow};
pub use lfunction::{bundled_example, c_coefficients, load_lfunction, load_lfunction_file};
pub use region_scan::{classify_point, scan_region, ScanConfig, Verdict};
pub use scalar::Real;

pub type TestFunction = extremal::TestFunction<f64>;
pub type FunctionalEquation = lfunction::FunctionalEquation<f64>;
pub type ZeroList = lfunction::ZeroList<f64>;
pub type LFunctionData = lfunction::LFunctionData<f64>;
pub type LogDerivativeCoefficients = lfunction::LogDerivativeCoefficients<f64>;
pub type ExplicitFormulaReport = explicit_formula::ExplicitFormulaReport<f64>;
pub type GapCertificate = certification::GapCertificate<f64>;
pub type MinEll = certification::MinEll<f64>;
pub type RegionClassification = region_scan::RegionClassification<f64>;
