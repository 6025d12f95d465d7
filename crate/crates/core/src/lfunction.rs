//! Functional-equation data, Dirichlet coefficients and zero lists, with the
//! JSON file format, multiplicative completion of coefficients and the
//! coefficients of the logarithmic derivative.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

const BUNDLED: &str = include_str!("../../../data/fkl_degree4.json");

/// Degree d, conductor Q, spectral parameters μⱼ and root number ε.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FunctionalEquation<T> {
    degree: usize,
    conductor: T,
    spectral: Vec<Complex<T>>,
    root_number: Complex<T>,
}

impl<T: Real> FunctionalEquation<T> {
    /// Validates Re μⱼ ≥ 0, Q ≥ 1, |ε| = 1 and d = number of μⱼ.
    pub fn new(conductor: T, spectral: Vec<Complex<T>>, root_number: Complex<T>) -> Result<Self> {
        if spectral.is_empty() {
            return Err(Error::validation("degree >= 1", "no spectral parameters"));
        }
        if let Some((j, mu)) = spectral
            .iter()
            .enumerate()
            .find(|(_, m)| !(m.re >= T::zero()) || !m.im.is_finite())
        {
            return Err(Error::validation(
                "Re mu_j >= 0",
                format!("spectral[{j}] = {mu}"),
            ));
        }
        if !(conductor >= T::one()) || !conductor.is_finite() {
            return Err(Error::validation(
                "Q >= 1",
                format!("conductor = {conductor}"),
            ));
        }
        let tol = lit::<T>(1e-12).max(T::epsilon() * lit(8.0));
        if !((root_number.norm() - T::one()).abs() <= tol) {
            return Err(Error::validation(
                "|epsilon| = 1",
                format!("|{root_number}| = {}", root_number.norm()),
            ));
        }
        Ok(FunctionalEquation {
            degree: spectral.len(),
            conductor,
            spectral,
            root_number,
        })
    }

    /// Degree-d data with Q = 1 and ε = 1.
    pub fn with_spectral(spectral: Vec<Complex<T>>) -> Result<Self> {
        Self::new(T::one(), spectral, Complex::new(T::one(), T::zero()))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn conductor(&self) -> T {
        self.conductor
    }

    pub fn spectral(&self) -> &[Complex<T>] {
        &self.spectral
    }

    pub fn root_number(&self) -> Complex<T> {
        self.root_number
    }

    /// Copy with a different conductor.
    pub fn with_conductor(&self, conductor: T) -> Result<Self> {
        Self::new(conductor, self.spectral.clone(), self.root_number)
    }

    /// True when the spectral multiset is closed under complex conjugation.
    pub fn conjugate_closed(&self) -> bool {
        let tol = lit::<T>(1e-12);
        let mut unused: Vec<bool> = vec![true; self.degree];
        for mu in &self.spectral {
            let target = mu.conj();
            match (0..self.degree).find(|&k| {
                unused[k] && (self.spectral[k] - target).norm() <= tol * (T::one() + mu.norm())
            }) {
                Some(k) => unused[k] = false,
                None => return false,
            }
        }
        true
    }
}

/// Ordinates of critical zeros known completely up to height `t_max`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroList<T> {
    values: Vec<T>,
    t_max: T,
    self_dual: bool,
}

impl<T: Real> ZeroList<T> {
    /// Repeated values encode multiplicity. For self-dual lists only the
    /// ordinates γ ≥ 0 are stored; −γ is implied.
    pub fn new(values: Vec<T>, t_max: T, self_dual: bool) -> Result<Self> {
        if !(t_max >= T::zero()) {
            return Err(Error::validation("t_max >= 0", format!("t_max = {t_max}")));
        }
        for (k, w) in values.windows(2).enumerate() {
            if !(w[1] >= w[0]) {
                return Err(Error::validation(
                    "zeros increasing",
                    format!("zeros[{}] = {} follows {}", k + 1, w[1], w[0]),
                ));
            }
        }
        if let Some(g) = values.iter().find(|g| !(g.abs() <= t_max)) {
            return Err(Error::validation(
                "|gamma| <= t_max",
                format!("zero {g} beyond t_max = {t_max}"),
            ));
        }
        if self_dual {
            if let Some(g) = values.iter().find(|g| **g < T::zero()) {
                return Err(Error::validation(
                    "self-dual lists hold gamma >= 0",
                    format!("negative ordinate {g} in a self-dual list"),
                ));
            }
        }
        Ok(ZeroList {
            values,
            t_max,
            self_dual,
        })
    }

    pub fn empty(t_max: T) -> Self {
        ZeroList {
            values: Vec::new(),
            t_max,
            self_dual: false,
        }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn t_max(&self) -> T {
        self.t_max
    }

    pub fn self_dual(&self) -> bool {
        self.self_dual
    }

    /// Every ordinate in [−t_max, t_max] in increasing order, mirrored for
    /// self-dual lists with γ = 0 kept once per listed multiplicity.
    pub fn ordinates(&self) -> Vec<T> {
        if !self.self_dual {
            return self.values.clone();
        }
        let mut out: Vec<T> = self
            .values
            .iter()
            .rev()
            .filter(|g| **g > T::zero())
            .map(|g| -*g)
            .collect();
        out.extend(self.values.iter().copied());
        out
    }

    /// Largest distance between consecutive ordinates in the symmetrized list.
    pub fn max_gap(&self) -> Option<T> {
        self.ordinates()
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(None, |m, g| Some(m.map_or(g, |m: T| m.max(g))))
    }

    /// Whether every closed window [a, a + length] ⊂ [lo, hi] contains an
    /// ordinate of the symmetrized list.
    pub fn every_window_contains_zero(&self, length: T, lo: T, hi: T) -> bool {
        if hi - lo < length {
            return true;
        }
        let inside: Vec<T> = self
            .ordinates()
            .into_iter()
            .filter(|g| *g >= lo && *g <= hi)
            .collect();
        let mut points = vec![lo];
        points.extend(inside);
        points.push(hi);
        // a zero-free window exists iff some gap between consecutive points
        // (including the range ends) strictly exceeds the window length
        points.windows(2).all(|w| w[1] - w[0] <= length)
    }
}

/// A functional equation with Dirichlet coefficients and known zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct LFunctionData<T> {
    name: Option<String>,
    comment: Option<String>,
    fe: FunctionalEquation<T>,
    conductor_assumed: bool,
    root_number_assumed: bool,
    coefficients: BTreeMap<u64, Complex<T>>,
    zeros: ZeroList<T>,
    warnings: Vec<String>,
    // decimal text of every numeric field as read, keyed by field path
    originals: BTreeMap<String, String>,
}

impl<T: Real> LFunctionData<T> {
    pub fn new(
        fe: FunctionalEquation<T>,
        coefficients: BTreeMap<u64, Complex<T>>,
        zeros: ZeroList<T>,
    ) -> Result<Self> {
        let mut data = LFunctionData {
            name: None,
            comment: None,
            fe,
            conductor_assumed: false,
            root_number_assumed: false,
            coefficients,
            zeros,
            warnings: Vec::new(),
            originals: BTreeMap::new(),
        };
        data.check_coefficients()?;
        Ok(data)
    }

    fn check_coefficients(&mut self) -> Result<()> {
        if self.coefficients.contains_key(&0) {
            return Err(Error::validation("n >= 1", "coefficient index 0"));
        }
        let one = Complex::new(T::one(), T::zero());
        match self.coefficients.get(&1) {
            Some(a1) if *a1 != one => {
                return Err(Error::validation("a_1 = 1", format!("a_1 = {a1}")));
            }
            Some(_) => {}
            None => {
                self.coefficients.insert(1, one);
            }
        }
        let d = crate::scalar::from_usize::<T>(self.fe.degree);
        self.warnings = self
            .coefficients
            .iter()
            .filter(|(n, a)| is_prime(**n) && a.norm() > d)
            .map(|(n, a)| {
                format!(
                    "|a_{n}| = {} exceeds the degree bound {}",
                    a.norm(),
                    self.fe.degree
                )
            })
            .collect();
        Ok(())
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn comment(&self) -> Option<&str> {
        self.comment.as_deref()
    }

    pub fn functional_equation(&self) -> &FunctionalEquation<T> {
        &self.fe
    }

    pub fn conductor_assumed(&self) -> bool {
        self.conductor_assumed
    }

    pub fn root_number_assumed(&self) -> bool {
        self.root_number_assumed
    }

    pub fn coefficients(&self) -> &BTreeMap<u64, Complex<T>> {
        &self.coefficients
    }

    pub fn coefficient(&self, n: u64) -> Option<Complex<T>> {
        self.coefficients.get(&n).copied()
    }

    pub fn zeros(&self) -> &ZeroList<T> {
        &self.zeros
    }

    /// Non-fatal findings from loading, such as |a_p| above the degree.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn self_dual(&self) -> bool {
        self.zeros.self_dual
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
enum Num {
    Text(String),
    Number(f64),
}

impl Num {
    fn text(&self) -> String {
        match self {
            Num::Text(s) => s.trim().to_string(),
            Num::Number(x) => format!("{x}"),
        }
    }
}

fn zero_num() -> Num {
    Num::Text("0".into())
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct ConductorDoc {
    value: Num,
    #[serde(default)]
    assumed: bool,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RootNumberDoc {
    re: Num,
    #[serde(default = "zero_num")]
    im: Num,
    #[serde(default)]
    assumed: bool,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    re: Num,
    #[serde(default = "zero_num")]
    im: Num,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct CoefficientDoc {
    n: u64,
    re: Num,
    #[serde(default = "zero_num")]
    im: Num,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct ZerosDoc {
    values: Vec<Num>,
    t_max: Num,
    #[serde(default)]
    self_dual: bool,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct Document {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    comment: Option<String>,
    degree: usize,
    conductor: ConductorDoc,
    root_number: RootNumberDoc,
    spectral: Vec<ComplexDoc>,
    coefficients: Vec<CoefficientDoc>,
    zeros: ZerosDoc,
}

struct Reader {
    originals: BTreeMap<String, String>,
}

impl Reader {
    fn read<T: Real>(&mut self, path: String, num: &Num) -> Result<T> {
        let text = num.text();
        let value = text.parse::<T>().map_err(|_| {
            Error::Parse(format!(
                "field `{path}`: cannot read {text:?} as a decimal number"
            ))
        })?;
        if value.is_nan() {
            return Err(Error::Parse(format!("field `{path}`: NaN is not allowed")));
        }
        self.originals.insert(path, text);
        Ok(value)
    }
}

/// Parses and validates an L-function document.
pub fn load_lfunction<T: Real>(source: &str) -> Result<LFunctionData<T>> {
    let doc: Document = serde_json::from_str(source)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let mut r = Reader {
        originals: BTreeMap::new(),
    };
    let conductor: T = r.read("conductor.value".into(), &doc.conductor.value)?;
    let eps = Complex::new(
        r.read::<T>("root_number.re".into(), &doc.root_number.re)?,
        r.read::<T>("root_number.im".into(), &doc.root_number.im)?,
    );
    let mut spectral = Vec::with_capacity(doc.spectral.len());
    for (j, mu) in doc.spectral.iter().enumerate() {
        spectral.push(Complex::new(
            r.read::<T>(format!("spectral[{j}].re"), &mu.re)?,
            r.read::<T>(format!("spectral[{j}].im"), &mu.im)?,
        ));
    }
    if doc.degree != spectral.len() {
        return Err(Error::validation(
            "degree = number of spectral parameters",
            format!(
                "degree {} but {} spectral parameters",
                doc.degree,
                spectral.len()
            ),
        ));
    }
    let fe = FunctionalEquation::new(conductor, spectral, eps)?;

    let mut coefficients = BTreeMap::new();
    for c in &doc.coefficients {
        let a = Complex::new(
            r.read::<T>(format!("coefficients[n={}].re", c.n), &c.re)?,
            r.read::<T>(format!("coefficients[n={}].im", c.n), &c.im)?,
        );
        if coefficients.insert(c.n, a).is_some() {
            return Err(Error::validation(
                "coefficient indices unique",
                format!("n = {} repeated", c.n),
            ));
        }
    }
    let mut values = Vec::with_capacity(doc.zeros.values.len());
    for (k, z) in doc.zeros.values.iter().enumerate() {
        values.push(r.read::<T>(format!("zeros.values[{k}]"), z)?);
    }
    let t_max = r.read::<T>("zeros.t_max".into(), &doc.zeros.t_max)?;
    let zeros = ZeroList::new(values, t_max, doc.zeros.self_dual)?;

    let mut data = LFunctionData::new(fe, coefficients, zeros)?;
    data.name = doc.name;
    data.comment = doc.comment;
    data.conductor_assumed = doc.conductor.assumed;
    data.root_number_assumed = doc.root_number.assumed;
    data.originals = r.originals;
    Ok(data)
}

/// Reads and loads a document from disk.
pub fn load_lfunction_file<T: Real>(path: impl AsRef<Path>) -> Result<LFunctionData<T>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })?;
    load_lfunction(&text)
}

/// The degree-4 example with Q = 1 and ε = 1 assumed.
pub fn bundled_example<T: Real>() -> LFunctionData<T> {
    load_lfunction(BUNDLED).expect("bundled data is valid")
}

/// Raw text of the bundled example file.
pub fn bundled_source() -> &'static str {
    BUNDLED
}

/// Serializes to the document format. Values still equal to what was read
/// keep their original decimal text; everything else is written with the
/// shortest representation that reads back to the same scalar.
pub fn to_json<T: Real>(data: &LFunctionData<T>) -> String {
    let text = |path: String, value: T| -> Num {
        if let Some(orig) = data.originals.get(&path) {
            if orig.parse::<T>().ok() == Some(value) {
                return Num::Text(orig.clone());
            }
        }
        Num::Text(format!("{value}"))
    };
    let fe = &data.fe;
    let doc = Document {
        name: data.name.clone(),
        comment: data.comment.clone(),
        degree: fe.degree,
        conductor: ConductorDoc {
            value: text("conductor.value".into(), fe.conductor),
            assumed: data.conductor_assumed,
        },
        root_number: RootNumberDoc {
            re: text("root_number.re".into(), fe.root_number.re),
            im: text("root_number.im".into(), fe.root_number.im),
            assumed: data.root_number_assumed,
        },
        spectral: fe
            .spectral
            .iter()
            .enumerate()
            .map(|(j, mu)| ComplexDoc {
                re: text(format!("spectral[{j}].re"), mu.re),
                im: text(format!("spectral[{j}].im"), mu.im),
            })
            .collect(),
        coefficients: data
            .coefficients
            .iter()
            .map(|(&n, a)| CoefficientDoc {
                n,
                re: text(format!("coefficients[n={n}].re"), a.re),
                im: text(format!("coefficients[n={n}].im"), a.im),
            })
            .collect(),
        zeros: ZerosDoc {
            values: data
                .zeros
                .values
                .iter()
                .enumerate()
                .map(|(k, g)| text(format!("zeros.values[{k}]"), *g))
                .collect(),
            t_max: text("zeros.t_max".into(), data.zeros.t_max),
            self_dual: data.zeros.self_dual,
        },
    };
    serde_json::to_string_pretty(&doc).expect("document serializes")
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Prime factorization as (p, k) pairs in increasing p.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut k = 0;
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// (p, k) with n = p^k, if n is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

/// Fills a_n = Π a_{p^k} for every composite n ≤ `bound` that is not a
/// prime power and is not already present.
///
/// Fails with the list of prime powers that some composite needs but the
/// data lacks; existing entries are never modified.
pub fn extend_multiplicatively<T: Real>(
    data: &LFunctionData<T>,
    bound: u64,
) -> Result<LFunctionData<T>> {
    let (out, missing) = extend_multiplicatively_partial(data, bound);
    if missing.is_empty() {
        Ok(out)
    } else {
        Err(Error::Incomplete { missing })
    }
}

/// As [`extend_multiplicatively`], filling what it can and returning the
/// missing prime powers alongside.
pub fn extend_multiplicatively_partial<T: Real>(
    data: &LFunctionData<T>,
    bound: u64,
) -> (LFunctionData<T>, Vec<u64>) {
    let mut out = data.clone();
    let mut missing = Vec::new();
    for n in 2..=bound {
        if data.coefficients.contains_key(&n) {
            continue;
        }
        let factors = factorize(n);
        if factors.len() < 2 {
            continue;
        }
        let mut product = Complex::new(T::one(), T::zero());
        let mut complete = true;
        for (p, k) in factors {
            let q = p.pow(k);
            match data.coefficients.get(&q) {
                Some(a) => product *= *a,
                None => {
                    complete = false;
                    missing.push(q);
                }
            }
        }
        if complete {
            out.coefficients.insert(n, product);
        }
    }
    missing.sort_unstable();
    missing.dedup();
    (out, missing)
}

/// Coefficients c(n) of L′/L(s) = Σ c(n) n^{−s}, supported on prime powers.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogDerivativeCoefficients<T> {
    bound: u64,
    values: BTreeMap<u64, Complex<T>>,
}

impl<T: Real> LogDerivativeCoefficients<T> {
    /// Largest n covered.
    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// c(n); zero off prime powers. `None` only when n is beyond the bound
    /// or a prime power whose local data was missing.
    pub fn get(&self, n: u64) -> Option<Complex<T>> {
        if n > self.bound || n == 0 {
            return None;
        }
        if prime_power(n).is_none() {
            return Some(Complex::new(T::zero(), T::zero()));
        }
        self.values.get(&n).copied()
    }

    /// Stored prime-power entries.
    pub fn entries(&self) -> &BTreeMap<u64, Complex<T>> {
        &self.values
    }
}

/// c(p^k) = −p_k(α)·log p, where the power sums p_k of the local roots come
/// from h_j = a_{p^j} through Newton's identities
/// p_k = k·h_k − Σ_{i<k} p_i·h_{k−i}.
///
/// Returns the coefficients that could be computed and the prime powers
/// whose local data was missing.
pub fn c_coefficients_partial<T: Real>(
    data: &LFunctionData<T>,
    bound: u64,
) -> (LogDerivativeCoefficients<T>, Vec<u64>) {
    let mut values = BTreeMap::new();
    let mut missing = Vec::new();
    let mut p = 2;
    while p <= bound {
        if is_prime(p) {
            let mut h = vec![Complex::new(T::one(), T::zero())];
            let mut sums: Vec<Complex<T>> = vec![Complex::new(T::zero(), T::zero())];
            let log_p: T = lit::<T>(p as f64).ln();
            let mut q = p;
            let mut k = 1usize;
            loop {
                match data.coefficients.get(&q) {
                    Some(a) => h.push(*a),
                    None => {
                        // higher powers depend on this one too
                        let mut r = q;
                        loop {
                            missing.push(r);
                            match r.checked_mul(p) {
                                Some(next) if next <= bound => r = next,
                                _ => break,
                            }
                        }
                        break;
                    }
                }
                let mut pk = h[k] * lit::<T>(k as f64);
                for i in 1..k {
                    pk -= sums[i] * h[k - i];
                }
                sums.push(pk);
                values.insert(q, -pk * log_p);
                match q.checked_mul(p) {
                    Some(next) if next <= bound => q = next,
                    _ => break,
                }
                k += 1;
            }
        }
        p += 1;
    }
    missing.sort_unstable();
    (LogDerivativeCoefficients { bound, values }, missing)
}

/// As [`c_coefficients_partial`], failing when any prime power up to the
/// bound lacks local data.
pub fn c_coefficients<T: Real>(
    data: &LFunctionData<T>,
    bound: u64,
) -> Result<LogDerivativeCoefficients<T>> {
    let (c, missing) = c_coefficients_partial(data, bound);
    if missing.is_empty() {
        Ok(c)
    } else {
        Err(Error::Incomplete { missing })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta_like(bound: u64) -> LFunctionData<f64> {
        let fe = FunctionalEquation::with_spectral(vec![Complex::new(0.0, 0.0)]).unwrap();
        let coefficients = (1..=bound).map(|n| (n, Complex::new(1.0, 0.0))).collect();
        LFunctionData::new(fe, coefficients, ZeroList::empty(0.0)).unwrap()
    }

    #[test]
    fn bundled_example_fields() {
        let data = bundled_example::<f64>();
        let fe = data.functional_equation();
        assert_eq!(fe.degree(), 4);
        assert_eq!(fe.spectral()[0], Complex::new(0.0, 4.720_951_036_385_653));
        assert_eq!(fe.spectral()[3], Complex::new(0.0, -12.468_752_261_513_172));
        assert_eq!(data.coefficient(2).unwrap().re, 1.342_603_241_970_216_3);
        assert_eq!(data.coefficient(13).unwrap().re, -0.8824356594477);
        let z = data.zeros();
        assert_eq!(z.values().len(), 11);
        assert_eq!(z.values()[0], 14.4960615091);
        assert_eq!(z.values()[10], 29.5857431);
        assert_eq!(z.t_max(), 30.0);
        assert!(data.conductor_assumed() && data.root_number_assumed());
        assert!(fe.conjugate_closed());
        assert!(data.warnings().is_empty());
    }

    #[test]
    fn round_trip_keeps_original_text() {
        let data = bundled_example::<f64>();
        let text = to_json(&data);
        assert!(text.contains("\"4.72095103638565339773\""));
        assert!(text.contains("\"0.4644565335271682550\""));
        let again = load_lfunction::<f64>(&text).unwrap();
        assert_eq!(again, data);
        assert_eq!(to_json(&again), text);
    }

    #[test]
    fn parse_errors_carry_location() {
        match load_lfunction::<f64>("{\n  \"degree\": 1,\n  oops\n}") {
            Err(Error::Parse(msg)) => assert!(msg.contains("line 3"), "{msg}"),
            other => panic!("{other:?}"),
        }
        let bad = bundled_source().replace("\"-0.18745190876087089719\"", "\"-0.18x\"");
        match load_lfunction::<f64>(&bad) {
            Err(Error::Parse(msg)) => assert!(msg.contains("coefficients[n=3].re"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn invariant_violations_are_named() {
        let cases = [
            ("\"value\": \"1\"", "\"value\": \"0.5\"", "Q >= 1"),
            (
                "{ \"n\": 1, \"re\": \"1\"",
                "{ \"n\": 1, \"re\": \"2\"",
                "a_1 = 1",
            ),
            (
                "\"re\": \"1\", \"im\": \"0\", \"assumed\"",
                "\"re\": \"0.9\", \"im\": \"0\", \"assumed\"",
                "|epsilon| = 1",
            ),
            (
                "\"degree\": 4",
                "\"degree\": 3",
                "degree = number of spectral parameters",
            ),
            ("\"17.1144514545\"", "\"13.0\"", "zeros increasing"),
            ("\"29.5857431\"", "\"31\"", "|gamma| <= t_max"),
        ];
        for (from, to, invariant) in cases {
            let doc = bundled_source().replacen(from, to, 1);
            assert_ne!(doc, bundled_source(), "pattern {from} not found");
            match load_lfunction::<f64>(&doc) {
                Err(Error::Validation { invariant: got, .. }) => assert_eq!(got, invariant),
                other => panic!("{invariant}: {other:?}"),
            }
        }
        let doc = bundled_source().replacen(
            "{ \"re\": \"0\", \"im\": \"4.72",
            "{ \"re\": \"-0.1\", \"im\": \"4.72",
            1,
        );
        assert!(matches!(
            load_lfunction::<f64>(&doc),
            Err(Error::Validation { .. })
        ));
    }

    #[test]
    fn large_prime_coefficient_warns() {
        let doc = bundled_source().replacen("\"1.34260324197021624329\"", "\"5.5\"", 1);
        let data = load_lfunction::<f64>(&doc).unwrap();
        assert_eq!(data.warnings().len(), 1);
    }

    #[test]
    fn multiplicative_extension() {
        let data = bundled_example::<f64>();
        let ext = extend_multiplicatively(&data, 13).unwrap();
        let a = |n| ext.coefficient(n).unwrap().re;
        assert_eq!(a(6), 1.342_603_241_970_216_3 * -0.187_451_908_760_870_9);
        assert_eq!(a(12), a(4) * a(3));
        assert_eq!(a(10), a(2) * a(5));
        assert_eq!(a(1), 1.0);
        assert!(ext.coefficient(8).is_none());
        assert_eq!(ext.coefficient(9), data.coefficient(9));
        match extend_multiplicatively(&data, 40) {
            Err(Error::Incomplete { missing }) => assert_eq!(missing, vec![8, 17, 19]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn von_mangoldt_for_zeta_like_data() {
        let c = c_coefficients(&zeta_like(64), 64).unwrap();
        for n in 1..=64u64 {
            let expected = match prime_power(n) {
                Some((p, _)) => -(p as f64).ln(),
                None => 0.0,
            };
            assert!((c.get(n).unwrap().re - expected).abs() < 1e-14, "n = {n}");
        }
        assert_eq!(c.get(6).unwrap(), Complex::new(0.0, 0.0));
        assert!(c.get(65).is_none());
    }

    #[test]
    fn degree_one_square_term() {
        let w = Complex::new(0.3, -0.7);
        let fe = FunctionalEquation::with_spectral(vec![Complex::new(0.0, 0.0)]).unwrap();
        let coefficients = [
            (1, Complex::new(1.0, 0.0)),
            (3, w),
            (9, w * w),
            (27, w * w * w),
        ]
        .into_iter()
        .collect();
        let data = LFunctionData::new(fe, coefficients, ZeroList::empty(0.0)).unwrap();
        let (c, missing) = c_coefficients_partial(&data, 27);
        assert_eq!(missing, vec![2, 4, 5, 7, 8, 11, 13, 16, 17, 19, 23, 25]);
        let l3 = 3f64.ln();
        assert!((c.get(3).unwrap() + w * l3).norm() < 1e-15);
        assert!((c.get(9).unwrap() + w * w * l3).norm() < 1e-15);
        assert!((c.get(27).unwrap() + w * w * w * l3).norm() < 1e-15);
    }

    #[test]
    fn bundled_coefficients_stop_at_missing_a8() {
        let data = bundled_example::<f64>();
        let c = c_coefficients(&data, 7).unwrap();
        let a2 = data.coefficient(2).unwrap().re;
        let a4 = data.coefficient(4).unwrap().re;
        let l2 = 2f64.ln();
        assert!((c.get(2).unwrap().re + a2 * l2).abs() < 1e-15);
        assert!((c.get(4).unwrap().re + (2.0 * a4 - a2 * a2) * l2).abs() < 1e-14);
        match c_coefficients(&data, 13) {
            Err(Error::Incomplete { missing }) => assert_eq!(missing, vec![8]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn symmetrized_zeros_and_windows() {
        let z = ZeroList::new(vec![0.0, 2.0, 2.0, 5.0], 6.0, true).unwrap();
        assert_eq!(z.ordinates(), vec![-5.0, -2.0, -2.0, 0.0, 2.0, 2.0, 5.0]);
        assert_eq!(z.max_gap(), Some(3.0));
        assert!(z.every_window_contains_zero(3.0, -6.0, 6.0));
        assert!(!z.every_window_contains_zero(2.9, -6.0, 6.0));
        assert!(ZeroList::new(vec![-1.0], 6.0, true).is_err());
    }
}
