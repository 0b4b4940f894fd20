use orlicz_core::numeric::log_grid;
use orlicz_core::scalar::relative_error;
use orlicz_core::young::{
    catalog, conjugate, delta2_estimate, young_gap, ConjugateSearch, Delta2, PairingMode, YoungFunction,
};
use orlicz_core::Error;
use rand::Rng;

use super::{pair_specs, Case, CoreResult, Sizes};
use crate::config::SuiteConfig;

fn max_rel_error<F, G>(grid: &[f64], mut value: F, mut reference: G) -> CoreResult<f64>
where
    F: FnMut(f64) -> CoreResult<f64>,
    G: FnMut(f64) -> CoreResult<f64>,
{
    let mut worst = 0.0f64;
    for &x in grid {
        worst = worst.max(relative_error(value(x)?, reference(x)?));
    }
    Ok(worst)
}

pub(super) fn cases(cfg: &SuiteConfig, sizes: Sizes) -> Vec<Case> {
    let mut out = Vec::new();
    for spec in pair_specs(cfg) {
        let s = spec.clone();
        out.push(Case::new(
            format!("catalog/{spec}"),
            "young.catalog",
            "Ψ(y) = sup_x {xy − Φ(x)}",
            1e-6,
            move |_| {
                let pair = catalog::pair::<f64>(&s)?;
                let grid = log_grid(1e-2, 10.0, 100);
                if pair.mode == PairingMode::ClosedForm {
                    let numeric = conjugate(&pair.phi, ConjugateSearch::default());
                    max_rel_error(&grid, |y| numeric.eval(y), |y| pair.psi.eval(y))
                } else {
                    // Ψ(φ(x)) = xφ(x) − Φ(x)
                    let d = |x| pair.phi.derivative(x).expect("catalog functions are differentiable");
                    max_rel_error(&grid, |x| pair.psi.eval(d(x)?), |x| Ok(x * d(x)? - pair.phi.eval(x)?))
                }
            },
        ));

        let s = spec.clone();
        out.push(Case::new(
            format!("biconjugation/{spec}"),
            "young.biconjugation",
            "Φ** = Φ",
            1e-6,
            move |_| {
                let phi = catalog::parse::<f64>(&s)?;
                let psi = conjugate(&phi, ConjugateSearch::default());
                let back = conjugate(&psi, ConjugateSearch::default());
                max_rel_error(&log_grid(1e-2, 5.0, 100), |x| back.eval(x), |x| phi.eval(x))
            },
        ));

        let s = spec.clone();
        let n = sizes.sweep * 10;
        out.push(Case::new(
            format!("inequality/{spec}"),
            "young.inequality",
            "xy ≤ Φ(x) + Ψ(y)",
            1e-9,
            move |rng| {
                let pair = catalog::pair::<f64>(&s)?;
                let mut worst = f64::NEG_INFINITY;
                for _ in 0..n {
                    let (x, y) = (rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0));
                    worst = worst.max(-young_gap(&pair, x, y)?);
                }
                Ok(worst)
            },
        ));

        let s = spec.clone();
        out.push(Case::new(
            format!("equality/{spec}"),
            "young.equality",
            "Φ(x) + Ψ(φ(x)) = xφ(x)",
            1e-8,
            move |_| {
                let pair = catalog::pair::<f64>(&s)?;
                let mut worst = 0.0f64;
                for x in log_grid(1e-3, 5.0, 100) {
                    let y = pair
                        .phi
                        .derivative(x)
                        .ok_or_else(|| Error::MissingDerivative(pair.phi.name().to_string()))??;
                    worst = worst.max(young_gap(&pair, x, y)?.abs());
                }
                Ok(worst)
            },
        ));
    }

    for (lo, hi) in [("pnorm:2", "cosh"), ("cosh", "expm"), ("pnorm:2", "expm")] {
        out.push(Case::new(
            format!("monotone/{lo}<{hi}"),
            "young.monotone",
            "Φ₁ ≤ Φ₂ ⇒ Ψ₁ ≥ Ψ₂",
            1e-12,
            move |_| monotone_residual(&catalog::parse(lo)?, &catalog::parse(hi)?),
        ));
    }

    out.push(Case::new("delta2/pnorm:3", "young.delta2", "Φ(2x) ≤ 8Φ(x) for x³/3", 1e-9, |_| {
        let phi = catalog::parse::<f64>("pnorm:3")?;
        match delta2_estimate(&phi, &log_grid(1e-3, 1e4, 200))? {
            Delta2::Bounded { k, .. } => Ok((k - 8.0).abs()),
            Delta2::Unbounded { .. } => Ok(f64::INFINITY),
        }
    }));
    out.push(Case::new("delta2/expm", "young.delta2", "sup Φ(2x)/Φ(x) = ∞ for eˣ − x − 1", 0.0, |_| {
        let phi = catalog::parse::<f64>("expm")?;
        Ok(match delta2_estimate(&phi, &log_grid(1e-3, 1e4, 200))? {
            Delta2::Unbounded { .. } => 0.0,
            Delta2::Bounded { .. } => 1.0,
        })
    }));
    out
}

/// `max (Ψ₂ − Ψ₁)` on a grid after checking `Φ₁ ≤ Φ₂` there.
fn monotone_residual(phi1: &YoungFunction<f64>, phi2: &YoungFunction<f64>) -> CoreResult<f64> {
    for x in log_grid(1e-2, 10.0, 100) {
        if phi1.eval(x)? > phi2.eval(x)? {
            return Err(Error::InvalidParameter(format!(
                "{} exceeds {} at {x}",
                phi1.name(),
                phi2.name()
            )));
        }
    }
    let psi1 = conjugate(phi1, ConjugateSearch::default());
    let psi2 = conjugate(phi2, ConjugateSearch::default());
    let mut worst = f64::NEG_INFINITY;
    for y in log_grid(1e-2, 10.0, 100) {
        worst = worst.max(psi2.eval(y)? - psi1.eval(y)?);
    }
    Ok(worst)
}
