use super::YoungFunction;
use crate::error::{Error, Result};
use crate::numeric::bisect_increasing;
use crate::scalar::{Scalar, Tolerance};

/// Outcome of probing `Φ(2x) ≤ KΦ(x)` on a logarithmic grid.
#[derive(Debug, Clone, PartialEq)]
pub enum Delta2<T> {
    /// Ratios stay bounded; `k` is their supremum over the grid, attained at `at`.
    Bounded { k: T, at: T },
    /// Ratios `(x, Φ(2x)/Φ(x))` that keep growing toward the top of the grid.
    Unbounded { ratios: Vec<(T, T)> },
}

impl<T: Scalar> Delta2<T> {
    pub fn constant(&self) -> Option<T> {
        match self {
            Delta2::Bounded { k, .. } => Some(*k),
            Delta2::Unbounded { .. } => None,
        }
    }
}

/// Estimates the Δ₂ constant of `phi` on a sorted grid spanning at least
/// six decades.
///
/// The ratio sequence is declared unbounded when `Φ(2x)` overflows or when,
/// over the top decade of the grid, the ratio is nondecreasing and grows by
/// more than a factor of two.
pub fn delta2_estimate<T: Scalar>(phi: &YoungFunction<T>, grid: &[T]) -> Result<Delta2<T>> {
    let (lo, hi) = match (grid.first(), grid.last()) {
        (Some(&lo), Some(&hi)) if lo > T::zero() => (lo, hi),
        _ => {
            return Err(Error::InvalidParameter(
                "delta2 grid must be nonempty and positive".into(),
            ))
        }
    };
    let decades = (hi / lo).log10();
    if decades < T::lit(6.0 - 1e-9) {
        return Err(Error::GridTooNarrow {
            required: 6.0,
            found: decades.as_f64(),
        });
    }

    let mut ratios = Vec::with_capacity(grid.len());
    for &x in grid {
        let base = phi.eval(x)?;
        if base <= T::zero() {
            return Err(Error::ZeroAtNonzero { x: x.as_f64() });
        }
        let doubled = phi.eval(x + x)?;
        let r = doubled / base;
        ratios.push((x, r));
        if !r.is_finite() {
            return Ok(Delta2::Unbounded { ratios });
        }
    }

    let top: Vec<T> = ratios
        .iter()
        .filter(|(x, _)| *x >= hi / T::lit(10.0))
        .map(|&(_, r)| r)
        .collect();
    let rising = top.windows(2).all(|w| w[1] >= w[0]);
    if top.len() >= 2 && rising && top[top.len() - 1] > T::lit(2.0) * top[0] {
        return Ok(Delta2::Unbounded { ratios });
    }
    let (at, k) = ratios
        .iter()
        .copied()
        .fold((lo, T::neg_infinity()), |best, (x, r)| if r > best.1 { (x, r) } else { best });
    Ok(Delta2::Bounded { k, at })
}

/// Admissible range for strong-equivalence constants.
#[derive(Debug, Clone, Copy)]
pub struct EquivalenceSearch<T> {
    pub min_a: T,
    pub max_b: T,
    pub tol: Tolerance<T>,
}

impl<T: Scalar> Default for EquivalenceSearch<T> {
    fn default() -> Self {
        Self {
            min_a: T::lit(1e-6),
            max_b: T::lit(1e6),
            tol: Tolerance::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Equivalence<T> {
    /// `Φ₁(ax) ≤ Φ₂(x) ≤ Φ₁(bx)` holds at every grid point.
    Witness { a: T, b: T },
    /// Best admissible candidate and the grid points where it fails.
    Failure { a: T, b: T, violations: Vec<T> },
}

impl<T: Scalar> Equivalence<T> {
    pub fn witness(&self) -> Option<(T, T)> {
        match self {
            Equivalence::Witness { a, b } => Some((*a, *b)),
            Equivalence::Failure { .. } => None,
        }
    }
}

/// Searches constants `0 < a ≤ b` with `Φ₁(ax) ≤ Φ₂(x) ≤ Φ₁(bx)` on the grid.
///
/// For each grid point the tight scale `r(x) = Φ₁⁻¹(Φ₂(x)) / x` is solved by
/// bisection; the extreme scales over the grid are the sharpest candidates,
/// which are then clamped to `[min_a, max_b]` and verified directly.
pub fn strong_equivalence<T: Scalar>(
    phi1: &YoungFunction<T>,
    phi2: &YoungFunction<T>,
    grid: &[T],
    search: EquivalenceSearch<T>,
) -> Result<Equivalence<T>> {
    let mut a = T::infinity();
    let mut b = T::zero();
    let mut out_of_range = Vec::new();
    for &x in grid.iter().filter(|&&x| x > T::zero()) {
        let target = phi2.eval(x)?;
        match tight_scale(phi1, x, target, search.max_b)? {
            Some(r) => {
                if r < search.min_a {
                    out_of_range.push(x);
                }
                a = a.min(r);
                b = b.max(r);
            }
            None => {
                out_of_range.push(x);
                b = T::infinity();
            }
        }
    }
    if a > b {
        return Err(Error::InvalidParameter(
            "strong equivalence grid has no positive points".into(),
        ));
    }
    let a = a.max(search.min_a).min(search.max_b);
    let b = b.min(search.max_b).max(a);

    let mut violations = out_of_range;
    for &x in grid {
        let target = phi2.eval(x)?;
        let lower = phi1.eval(a * x)?;
        let upper = phi1.eval(b * x)?;
        if !search.tol.le(lower, target) || !search.tol.le(target, upper) {
            violations.push(x);
        }
    }
    violations.sort_by(|p, q| p.partial_cmp(q).unwrap());
    violations.dedup();
    Ok(if violations.is_empty() {
        Equivalence::Witness { a, b }
    } else {
        Equivalence::Failure { a, b, violations }
    })
}

/// `Φ₁⁻¹(target) / x`, or `None` when it exceeds `max_scale`.
fn tight_scale<T: Scalar>(
    phi1: &YoungFunction<T>,
    x: T,
    target: T,
    max_scale: T,
) -> Result<Option<T>> {
    let limit = x * max_scale;
    let mut hi = x;
    loop {
        let v = phi1.eval(hi)?;
        if v >= target {
            break;
        }
        if hi >= limit {
            return Ok(None);
        }
        hi = (hi * T::lit(2.0)).min(limit);
    }
    let y = bisect_increasing(|t| phi1.eval(t), T::zero(), hi, target)?;
    Ok(Some(y / x))
}
