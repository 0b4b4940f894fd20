use std::sync::Arc;

use super::YoungFunction;
use crate::error::{Error, Result};
use crate::numeric::{bisect_increasing, golden_section_min};
use crate::scalar::Scalar;

/// Bracket policy for the supremum in `Ψ(y) = sup_x {xy − Φ(x)}`.
///
/// The bracket starts at `[0, 1]` and doubles until it contains the
/// maximizer; reaching `cap` without doing so is an error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugateSearch<T> {
    pub cap: T,
}

impl<T: Scalar> Default for ConjugateSearch<T> {
    fn default() -> Self {
        Self { cap: T::lit(1e3) }
    }
}

impl<T: Scalar> ConjugateSearch<T> {
    pub fn with_cap(cap: T) -> Self {
        Self { cap }
    }

    /// A cap wide enough for exponential-type conjugates on `[0, 50]`.
    pub fn wide() -> Self {
        Self { cap: T::lit(1e30) }
    }
}

/// The numeric complementary function of `phi`.
///
/// With a derivative available the maximizer solves `φ(x) = y` by
/// bisection; otherwise golden-section search runs on the concave objective
/// `x ↦ xy − Φ(x)`. The result carries the maximizer `y ↦ x*(y)` as its own
/// derivative, so it can be conjugated again.
pub fn conjugate<T: Scalar>(phi: &YoungFunction<T>, search: ConjugateSearch<T>) -> YoungFunction<T> {
    let phi = Arc::new(phi.clone());
    let name = format!("conj({})", phi.name());

    let argmax = {
        let phi = Arc::clone(&phi);
        Arc::new(move |y: T| maximizer(&phi, y, search.cap))
    };
    let value = {
        let phi = Arc::clone(&phi);
        let argmax = Arc::clone(&argmax);
        move |y: T| -> Result<T> {
            if y <= T::zero() {
                return Ok(T::zero());
            }
            let x = argmax(y)?;
            Ok((x * y - phi.eval(x)?).max(T::zero()))
        }
    };
    YoungFunction::try_new(name, value).with_try_derivative(move |y| argmax(y))
}

fn maximizer<T: Scalar>(phi: &YoungFunction<T>, y: T, cap: T) -> Result<T> {
    if y <= T::zero() {
        return Ok(T::zero());
    }
    let overflow = || Error::BracketOverflow {
        y: y.as_f64(),
        cap: cap.as_f64(),
    };
    let two = T::lit(2.0);
    let mut hi = T::one().min(cap);

    if phi.has_derivative() {
        let d = |x: T| phi.derivative(x).expect("derivative checked");
        while d(hi)? < y {
            if hi >= cap {
                return Err(overflow());
            }
            hi = (hi * two).min(cap);
        }
        bisect_increasing(d, T::zero(), hi, y)
    } else {
        let objective = |x: T| -> Result<T> { Ok(x * y - phi.eval(x)?) };
        while objective(hi)? > objective(hi / two)? {
            if hi >= cap {
                return Err(overflow());
            }
            hi = (hi * two).min(cap);
        }
        let (x, _) = golden_section_min(|x| objective(x).map(|v| -v), T::zero(), hi, T::epsilon())?;
        Ok(x)
    }
}
