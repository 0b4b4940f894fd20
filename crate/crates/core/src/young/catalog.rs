//! Built-in Young functions: `pnorm:<p>`, `xlog`, `cosh` and `expm`.
//!
//! | name       | Φ(x)              | Ψ(y)                          |
//! |------------|-------------------|-------------------------------|
//! | `pnorm:p`  | xᵖ/p              | y^q/q, 1/p + 1/q = 1          |
//! | `xlog`     | x ln(1+x)         | numeric (≈ cosh y − 1)        |
//! | `cosh`     | cosh x − 1        | y asinh y − √(1+y²) + 1       |
//! | `expm`     | eˣ − x − 1        | (1+y) ln(1+y) − y             |

use super::{conjugate, ComplementaryPair, ConjugateSearch, PairingMode, YoungFunction};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const CATALOG_NAMES: [&str; 4] = ["pnorm:<p>", "xlog", "cosh", "expm"];

/// `xᵖ/p` with its closed-form partner `y^q/q`.
pub fn pnorm<T: Scalar>(p: T) -> Result<YoungFunction<T>> {
    if !(p > T::one()) || !p.is_finite() {
        return Err(Error::InvalidParameter(format!("pnorm exponent must be > 1, got {p}")));
    }
    let q = p / (p - T::one());
    Ok(power(p).with_conjugate(power(q)))
}

fn power<T: Scalar>(p: T) -> YoungFunction<T> {
    YoungFunction::new(format!("pnorm:{p}"), move |x: T| x.powf(p) / p)
        .with_derivative(move |x: T| x.powf(p - T::one()))
}

/// `x ln(1 + x)`; its conjugate has no elementary closed form.
pub fn xlog<T: Scalar>() -> YoungFunction<T> {
    YoungFunction::new("xlog", |x: T| x * x.ln_1p())
        .with_derivative(|x: T| x.ln_1p() + x / (T::one() + x))
}

/// `cosh x − 1`, with partner `∫₀ʸ asinh`.
pub fn cosh<T: Scalar>() -> YoungFunction<T> {
    let partner = YoungFunction::new("asinh-integral", |y: T| {
        let s = (T::one() + y * y).sqrt();
        y * y.asinh() - y * y / (s + T::one())
    })
    .with_derivative(|y: T| y.asinh());
    YoungFunction::new("cosh", |x: T| {
        let h = (x * T::lit(0.5)).sinh();
        T::lit(2.0) * h * h
    })
    .with_derivative(|x: T| x.sinh())
    .with_conjugate(partner)
}

/// `eˣ − x − 1`, with partner `(1+y) ln(1+y) − y`.
pub fn expm<T: Scalar>() -> YoungFunction<T> {
    YoungFunction::new("expm", |x: T| {
        if x < T::lit(1e-3) {
            // Taylor tail avoids cancellation in exp_m1(x) − x.
            let x2 = x * x;
            x2 * (T::lit(0.5) + x * (T::lit(1.0 / 6.0) + x * (T::lit(1.0 / 24.0) + x / T::lit(120.0))))
        } else {
            x.exp_m1() - x
        }
    })
    .with_derivative(|x: T| x.exp_m1())
    .with_conjugate(entropy())
}

/// `(1+y) ln(1+y) − y`.
pub fn entropy<T: Scalar>() -> YoungFunction<T> {
    YoungFunction::new("entropy", |y: T| {
        if y < T::lit(1e-3) {
            let y2 = y * y;
            y2 * (T::lit(0.5) - y * (T::lit(1.0 / 6.0) - y * (T::lit(1.0 / 12.0) - y / T::lit(20.0))))
        } else {
            (T::one() + y) * y.ln_1p() - y
        }
    })
    .with_derivative(|y: T| y.ln_1p())
}

/// Resolves a catalog name: `pnorm:<p>`, `xlog`, `cosh`, `expm`, or
/// `conj:<name>` for the numeric conjugate of any of these.
pub fn parse<T: Scalar>(spec: &str) -> Result<YoungFunction<T>> {
    let spec = spec.trim();
    if let Some(inner) = spec.strip_prefix("conj:") {
        return Ok(conjugate(&parse(inner)?, ConjugateSearch::wide()));
    }
    if let Some(p) = spec.strip_prefix("pnorm:") {
        let p: f64 = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad pnorm exponent in {spec:?}")))?;
        return pnorm(T::lit(p));
    }
    match spec {
        "xlog" => Ok(xlog()),
        "cosh" => Ok(cosh()),
        "expm" => Ok(expm()),
        other => Err(Error::Parse(format!(
            "unknown Young function {other:?}; expected one of {CATALOG_NAMES:?} or conj:<name>"
        ))),
    }
}

/// The complementary pair for a catalog name. Closed-form partners are used
/// when known; `xlog` is paired with its numeric conjugate.
pub fn pair<T: Scalar>(spec: &str) -> Result<ComplementaryPair<T>> {
    Ok(ComplementaryPair::from_phi(parse(spec)?, ConjugateSearch::wide()))
}

/// Names of the catalog pairs exercised by the verification suites.
pub const DEFAULT_PAIRS: [&str; 6] = ["pnorm:1.5", "pnorm:2", "pnorm:3", "xlog", "cosh", "expm"];

pub fn default_pairs<T: Scalar>() -> Vec<ComplementaryPair<T>> {
    DEFAULT_PAIRS
        .iter()
        .map(|n| pair(n).expect("catalog names are valid"))
        .collect()
}

pub fn is_closed_form<T: Scalar>(pair: &ComplementaryPair<T>) -> bool {
    pair.mode == PairingMode::ClosedForm
}
