//! Young functions, complementary pairs and their numeric calculus.
//!
//! A [`YoungFunction`] is an evaluator on `[0, ∞)` plus an optional
//! derivative (the generator `φ`). Complementary functions are either known
//! in closed form or obtained numerically through [`conjugate`].

mod analysis;
pub mod catalog;
mod conjugate;
mod generator;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerance};

pub use analysis::{delta2_estimate, strong_equivalence, Delta2, Equivalence, EquivalenceSearch};
pub use conjugate::{conjugate, ConjugateSearch};
pub use generator::{build_from_generator, GeneratorGrid};

pub(crate) type Evaluator<T> = Arc<dyn Fn(T) -> Result<T> + Send + Sync>;

/// A convex, strictly increasing function on `[0, ∞)` vanishing at zero.
#[derive(Clone)]
pub struct YoungFunction<T> {
    name: String,
    eval: Evaluator<T>,
    derivative: Option<Evaluator<T>>,
    closed_form_conjugate: Option<Arc<YoungFunction<T>>>,
}

impl<T: Scalar> YoungFunction<T> {
    pub fn new<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(T) -> T + Send + Sync + 'static,
    {
        Self::try_new(name, move |x| Ok(f(x)))
    }

    /// Builds from a fallible evaluator (numeric conjugates and quadratures).
    pub fn try_new<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(T) -> Result<T> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            eval: Arc::new(f),
            derivative: None,
            closed_form_conjugate: None,
        }
    }

    pub fn with_derivative<F>(self, d: F) -> Self
    where
        F: Fn(T) -> T + Send + Sync + 'static,
    {
        self.with_try_derivative(move |x| Ok(d(x)))
    }

    pub fn with_try_derivative<F>(mut self, d: F) -> Self
    where
        F: Fn(T) -> Result<T> + Send + Sync + 'static,
    {
        self.derivative = Some(Arc::new(d));
        self
    }

    pub fn with_conjugate(mut self, conjugate: YoungFunction<T>) -> Self {
        self.closed_form_conjugate = Some(Arc::new(conjugate));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn eval(&self, x: T) -> Result<T> {
        (self.eval)(x)
    }

    /// The generator `φ = Φ'`, when one is available.
    #[inline]
    pub fn derivative(&self, x: T) -> Option<Result<T>> {
        self.derivative.as_ref().map(|d| d(x))
    }

    pub fn has_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    pub fn closed_form_conjugate(&self) -> Option<&YoungFunction<T>> {
        self.closed_form_conjugate.as_deref()
    }

    /// Checks `Φ(0) = 0`, strict increase and midpoint convexity on a sorted grid.
    pub fn validate_on_grid(&self, grid: &[T], tol: Tolerance<T>) -> Result<()> {
        let zero = self.eval(T::zero())?;
        if zero.abs() > tol.abs {
            return Err(Error::InvalidParameter(format!(
                "{}: value at zero is {zero}, expected 0",
                self.name
            )));
        }
        let values = grid
            .iter()
            .map(|&x| self.eval(x))
            .collect::<Result<Vec<_>>>()?;
        for (i, w) in values.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(Error::NonMonotoneGenerator {
                    x1: grid[i].as_f64(),
                    x2: grid[i + 1].as_f64(),
                    v1: w[0].as_f64(),
                    v2: w[1].as_f64(),
                });
            }
        }
        for (i, w) in grid.windows(2).enumerate() {
            let mid = self.eval((w[0] + w[1]) * T::lit(0.5))?;
            let chord = (values[i] + values[i + 1]) * T::lit(0.5);
            if !tol.le(mid, chord) {
                return Err(Error::InvalidParameter(format!(
                    "{}: not convex between {} and {}",
                    self.name, w[0], w[1]
                )));
            }
        }
        Ok(())
    }
}

impl<T> fmt::Debug for YoungFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("YoungFunction")
            .field("name", &self.name)
            .field("derivative", &self.derivative.is_some())
            .field(
                "closed_form_conjugate",
                &self.closed_form_conjugate.as_ref().map(|c| c.name.clone()),
            )
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairingMode {
    ClosedForm,
    NumericConjugate,
}

/// `(Φ, Ψ)` with `Ψ(y) = sup_x {xy − Φ(x)}`.
#[derive(Debug, Clone)]
pub struct ComplementaryPair<T> {
    pub phi: YoungFunction<T>,
    pub psi: YoungFunction<T>,
    pub mode: PairingMode,
}

impl<T: Scalar> ComplementaryPair<T> {
    /// Pairs `phi` with its closed-form conjugate, falling back to the
    /// numeric conjugate when none is attached.
    pub fn from_phi(phi: YoungFunction<T>, search: ConjugateSearch<T>) -> Self {
        match phi.closed_form_conjugate().cloned() {
            Some(psi) => Self {
                phi,
                psi,
                mode: PairingMode::ClosedForm,
            },
            None => Self::numeric(phi, search),
        }
    }

    pub fn numeric(phi: YoungFunction<T>, search: ConjugateSearch<T>) -> Self {
        let psi = conjugate(&phi, search);
        Self {
            phi,
            psi,
            mode: PairingMode::NumericConjugate,
        }
    }

    /// The same pair with the roles of `Φ` and `Ψ` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            phi: self.psi.clone(),
            psi: self.phi.clone(),
            mode: self.mode,
        }
    }

    pub fn name(&self) -> String {
        format!("({}, {})", self.phi.name(), self.psi.name())
    }
}

/// `Φ(x) + Ψ(y) − xy`; nonnegative for a genuine complementary pair.
pub fn young_gap<T: Scalar>(pair: &ComplementaryPair<T>, x: T, y: T) -> Result<T> {
    Ok(pair.phi.eval(x)? + pair.psi.eval(y)? - x * y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::log_grid;

    #[test]
    fn gap_vanishes_on_equality_locus() {
        let pair = catalog::pair::<f64>("pnorm:2").unwrap();
        assert!(young_gap(&pair, 1.0, 1.0).unwrap().abs() < 1e-15);
        // x = 0 leaves Ψ(y)
        let g = young_gap(&pair, 0.0, 3.0).unwrap();
        assert!((g - 4.5).abs() < 1e-15);
    }

    #[test]
    fn validation_rejects_non_convex() {
        let bad = YoungFunction::<f64>::new("sqrt", |x| x.sqrt());
        let grid = log_grid(1e-2, 10.0, 20);
        assert!(bad.validate_on_grid(&grid, Tolerance::default()).is_err());
        let good = catalog::expm::<f64>();
        good.validate_on_grid(&grid, Tolerance::default()).unwrap();
    }

    #[test]
    fn validation_rejects_offset() {
        let bad = YoungFunction::<f64>::new("shifted", |x| x * x + 1.0);
        assert!(bad
            .validate_on_grid(&[1.0, 2.0], Tolerance::default())
            .is_err());
    }

    #[test]
    fn swapped_exchanges_roles() {
        let pair = catalog::pair::<f64>("expm").unwrap();
        let s = pair.swapped();
        assert_eq!(s.phi.name(), pair.psi.name());
        assert_eq!(s.psi.name(), pair.phi.name());
    }
}
