use std::sync::Arc;

use super::{ComplementaryPair, PairingMode, YoungFunction};
use crate::error::{Error, Result};
use crate::numeric::{adaptive_simpson, bisect_increasing, linear_grid};
use crate::scalar::Scalar;

/// Probe grid for the generator checks and the inverse-generator bracket.
#[derive(Debug, Clone, Copy)]
pub struct GeneratorGrid<T> {
    /// Upper end of the monotonicity probe `[0, upper]`.
    pub upper: T,
    pub points: usize,
    /// Largest argument searched when inverting the generator.
    pub inverse_cap: T,
    pub quadrature_tol: T,
}

impl<T: Scalar> Default for GeneratorGrid<T> {
    fn default() -> Self {
        Self {
            upper: T::lit(50.0),
            points: 501,
            inverse_cap: T::lit(1e3),
            quadrature_tol: T::lit(1e-10),
        }
    }
}

/// Builds `Φ(x) = ∫₀ˣ φ` and `Ψ(y) = ∫₀ʸ φ⁻¹` from a strictly increasing
/// generator `φ` with `φ(0) = 0`. The inverse is evaluated by bisection.
pub fn build_from_generator<T, F>(
    name: &str,
    generator: F,
    grid: GeneratorGrid<T>,
) -> Result<ComplementaryPair<T>>
where
    T: Scalar,
    F: Fn(T) -> T + Send + Sync + 'static,
{
    let at_zero = generator(T::zero());
    if at_zero != T::zero() {
        return Err(Error::GeneratorNotZeroAtOrigin(at_zero.as_f64()));
    }
    let xs = linear_grid(T::zero(), grid.upper, grid.points.max(2));
    let mut prev = (xs[0], at_zero);
    for &x in &xs[1..] {
        let v = generator(x);
        if v.is_nan() || v <= prev.1 {
            return Err(Error::NonMonotoneGenerator {
                x1: prev.0.as_f64(),
                x2: x.as_f64(),
                v1: prev.1.as_f64(),
                v2: v.as_f64(),
            });
        }
        prev = (x, v);
    }

    let generator = Arc::new(generator);
    let inverse = {
        let generator = Arc::clone(&generator);
        let cap = grid.inverse_cap;
        Arc::new(move |y: T| -> Result<T> {
            if y <= T::zero() {
                return Ok(T::zero());
            }
            let mut hi = T::one().min(cap);
            while generator(hi) < y {
                if hi >= cap {
                    return Err(Error::BracketOverflow {
                        y: y.as_f64(),
                        cap: cap.as_f64(),
                    });
                }
                hi = (hi * T::lit(2.0)).min(cap);
            }
            bisect_increasing(|x| Ok(generator(x)), T::zero(), hi, y)
        })
    };

    let tol = grid.quadrature_tol;
    let phi = {
        let g = Arc::clone(&generator);
        let d = Arc::clone(&generator);
        YoungFunction::try_new(format!("int({name})"), move |x: T| {
            adaptive_simpson(|t| Ok(g(t)), T::zero(), x.max(T::zero()), tol)
        })
        .with_derivative(move |x| d(x))
    };
    let psi = {
        let inv = Arc::clone(&inverse);
        YoungFunction::try_new(format!("int(inv({name}))"), move |y: T| {
            adaptive_simpson(|t| inv(t), T::zero(), y.max(T::zero()), tol)
        })
        .with_try_derivative(move |y| inverse(y))
    };
    Ok(ComplementaryPair {
        phi,
        psi,
        mode: PairingMode::NumericConjugate,
    })
}
