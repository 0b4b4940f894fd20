//! Heuristic convergence check for `Σ_s Ψ(α h(s))` over growing balls.
//!
//! For each `α` the partial sums `S_R` are computed on the requested radii
//! and the shell increments `(S_{Rᵢ} − S_{Rᵢ₋₁}) / (Rᵢ − Rᵢ₋₁)` are fitted
//! against `Rᵢ` on a log-log scale. A slope below `−1` means the tail
//! behaves like a convergent `Σ R^p`; a slope above `−1` means it does not.
//! Increments that vanish exactly (a saturated finite group) count as
//! convergence.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{Group, GroupElement};
use crate::numeric::least_squares;
use crate::scalar::Scalar;
use crate::young::YoungFunction;

/// Half-width of the undecided band around slope `−1`.
pub const SLOPE_MARGIN: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Converging,
    Diverging,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Converging => "converging",
            Verdict::Diverging => "diverging",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MembershipRow<T> {
    pub alpha: T,
    /// `(R, S_R)` for each requested radius.
    pub partial_sums: Vec<(u32, T)>,
    /// Fitted log-log slope of the shell increments.
    pub slope: Option<T>,
    /// Integral estimate of `Σ_{τ > R_max}` when converging.
    pub tail_estimate: Option<T>,
    pub verdict: Verdict,
}

pub fn membership_diagnostic<T, H>(
    psi: &YoungFunction<T>,
    group: &Group,
    h: H,
    alphas: &[T],
    radii: &[u32],
) -> Result<Vec<MembershipRow<T>>>
where
    T: Scalar,
    H: Fn(&GroupElement) -> Result<T>,
{
    if radii.len() < 3 || radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(format!(
            "membership radii must be strictly increasing with at least three entries, got {radii:?}"
        )));
    }
    let r_max = *radii.last().unwrap();
    let ball = group.ball(r_max)?;
    let mut points = Vec::with_capacity(ball.len());
    for s in &ball {
        points.push((group.word_length(s)?, h(s)?));
    }

    alphas
        .iter()
        .map(|&alpha| {
            let mut sums = vec![T::zero(); radii.len()];
            for &(len, hs) in &points {
                let term = psi.eval(alpha * hs)?;
                let first = radii.partition_point(|&r| r < len);
                for s in &mut sums[first..] {
                    *s = *s + term;
                }
            }
            Ok(classify(alpha, radii, sums))
        })
        .collect()
}

fn classify<T: Scalar>(alpha: T, radii: &[u32], sums: Vec<T>) -> MembershipRow<T> {
    let partial_sums: Vec<(u32, T)> = radii.iter().copied().zip(sums.iter().copied()).collect();
    let increments: Vec<(T, T)> = partial_sums
        .windows(2)
        .map(|w| {
            let width = T::from_u32(w[1].0 - w[0].0).unwrap();
            (T::from_u32(w[1].0).unwrap(), (w[1].1 - w[0].1) / width)
        })
        .collect();
    let last = increments.last().unwrap().1;
    if last <= T::zero() {
        return MembershipRow {
            alpha,
            partial_sums,
            slope: None,
            tail_estimate: Some(T::zero()),
            verdict: Verdict::Converging,
        };
    }
    let (xs, ys): (Vec<T>, Vec<T>) = increments
        .iter()
        .filter(|(_, d)| *d > T::zero())
        .map(|(r, d)| (r.ln(), d.ln()))
        .unzip();
    if xs.len() < 2 {
        return MembershipRow { alpha, partial_sums, slope: None, tail_estimate: None, verdict: Verdict::Inconclusive };
    }
    let (slope, _, _) = least_squares(&xs, &ys);
    let margin = T::lit(SLOPE_MARGIN);
    let minus_one = -T::one();
    let (verdict, tail_estimate) = if slope < minus_one - margin {
        // ∫_R^∞ d·(x/R)^p dx = d·R / (−p − 1)
        let r = T::from_u32(*radii.last().unwrap()).unwrap();
        (Verdict::Converging, Some(last * r / (minus_one - slope)))
    } else if slope > minus_one + margin {
        (Verdict::Diverging, None)
    } else {
        (Verdict::Inconclusive, None)
    };
    MembershipRow { alpha, partial_sums, slope: Some(slope), tail_estimate, verdict }
}

/// The sufficient condition `β > d/l` for `1/ω_β` to lie in `S^Ψ`, where `d`
/// is the growth order and `Ψ(x)/x^l` has a limit at `0⁺`.
pub fn polynomial_membership_predicted<T: Scalar>(beta: T, d: T, l: T) -> bool {
    beta > d / l
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::Weight;
    use crate::young::catalog;

    fn run(group: Arc<Group>, beta: f64, alphas: &[f64]) -> Vec<MembershipRow<f64>> {
        let w = Weight::polynomial(group.clone(), beta).unwrap();
        let psi = catalog::pnorm::<f64>(2.0).unwrap();
        membership_diagnostic(&psi, &group, |s| Ok(1.0 / w.eval(s)?), alphas, &[4, 8, 16, 32, 64]).unwrap()
    }

    #[test]
    fn integrable_reciprocal_weight_converges() {
        for row in run(Arc::new(Group::free_abelian(2)), 2.0, &[1.0, 10.0]) {
            assert_eq!(row.verdict, Verdict::Converging, "{row:?}");
            assert!(row.slope.unwrap() < -2.5);
        }
    }

    #[test]
    fn slow_decay_diverges() {
        for row in run(Arc::new(Group::free_abelian(2)), 0.4, &[1.0]) {
            assert_eq!(row.verdict, Verdict::Diverging, "{row:?}");
        }
    }

    #[test]
    fn finite_group_saturates() {
        let rows = run(Arc::new(Group::cyclic(5).unwrap()), 0.4, &[1.0, 3.0]);
        for row in rows {
            assert_eq!(row.verdict, Verdict::Converging);
            assert_eq!(row.tail_estimate, Some(0.0));
        }
    }

    #[test]
    fn prediction_threshold() {
        assert!(polynomial_membership_predicted(2.5, 2.0, 2.0));
        assert!(!polynomial_membership_predicted(0.4, 2.0, 2.0));
    }

    #[test]
    fn rejects_bad_radii() {
        let g = Group::free_abelian(2);
        let psi = catalog::pnorm::<f64>(2.0).unwrap();
        assert!(membership_diagnostic(&psi, &g, |_| Ok(1.0), &[1.0], &[4, 4, 8]).is_err());
        assert!(membership_diagnostic(&psi, &g, |_| Ok(1.0), &[1.0], &[4, 8]).is_err());
    }
}
