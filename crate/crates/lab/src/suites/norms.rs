use std::sync::Arc;

use num_complex::Complex;
use orlicz_core::group::{Group, GroupElement, Weight};
use orlicz_core::orlicz::{
    abs_pairing, holder_gap, luxemburg_of, luxemburg_norm, membership_diagnostic, modular, norm_report,
    orlicz_norm, orlicz_norm_eval_of, polynomial_membership_predicted, Verdict,
};
use orlicz_core::scalar::relative_error;
use orlicz_core::young::catalog;
use rand::{Rng, RngCore};

use super::{cyclic, pair_specs, sample_vectors, z, Case, CoreResult, Sizes, V};
use crate::config::SuiteConfig;

/// `ℤ₇` in full and the radius-6 ball of `ℤ²`.
fn norm_groups() -> Vec<(&'static str, Arc<Group>, u32)> {
    vec![("z7", cyclic(7), 3), ("z2", z(2), 6)]
}

fn vectors(group: &Arc<Group>, radius: u32, n: usize, rng: &mut dyn RngCore) -> CoreResult<Vec<V>> {
    let ball = group.ball(radius)?;
    sample_vectors(group, &ball, n, rng)
}

pub(super) fn cases(cfg: &SuiteConfig, sizes: Sizes) -> Vec<Case> {
    let mut out = Vec::new();
    for spec in pair_specs(cfg) {
        for (gname, group, radius) in norm_groups() {
            let n = sizes.sweep;
            let (s, g) = (spec.clone(), Arc::clone(&group));
            out.push(Case::new(
                format!("sandwich/{spec}/{gname}"),
                "norms.sandwich",
                "N_Φ(f) ≤ ‖f‖_Φ ≤ 2N_Φ(f)",
                1e-9,
                move |rng| {
                    let pair = catalog::pair::<f64>(&s)?;
                    let mut worst = f64::NEG_INFINITY;
                    for f in vectors(&g, radius, n, rng)? {
                        let r = norm_report(&pair, &f)?;
                        worst = worst.max(r.luxemburg - r.orlicz).max(r.orlicz - 2.0 * r.luxemburg);
                    }
                    Ok(worst)
                },
            ));

            let (s, g) = (spec.clone(), Arc::clone(&group));
            out.push(Case::new(
                format!("agreement/{spec}/{gname}"),
                "norms.agreement",
                "|‖f‖_stat − ‖f‖_1d| / ‖f‖_Φ",
                1e-5,
                move |rng| {
                    let pair = catalog::pair::<f64>(&s)?;
                    let mut worst = 0.0f64;
                    for f in vectors(&g, radius, n, rng)? {
                        worst = worst.max(orlicz_norm_eval_of(&pair, &f.magnitudes())?.gap);
                    }
                    Ok(worst)
                },
            ));

            let (s, g) = (spec.clone(), Arc::clone(&group));
            out.push(Case::new(
                format!("dual-sampling/{spec}/{gname}"),
                "norms.dual-sampling",
                "Σ|fv| ≤ ‖f‖_Φ for Σ Ψ(|v|) ≤ 1",
                1e-9,
                move |rng| dual_sampling(&s, &g, radius, n, rng),
            ));

            if let Some(Ok(p)) = spec.strip_prefix("pnorm:").map(str::parse::<f64>) {
                let (s, g) = (spec.clone(), Arc::clone(&group));
                out.push(Case::new(
                    format!("pnorm/{spec}/{gname}"),
                    "norms.pnorm",
                    "N_Φ(f) = ‖f‖_p p^(−1/p)",
                    1e-8,
                    move |rng| {
                        let phi = catalog::parse::<f64>(&s)?;
                        let mut worst = 0.0f64;
                        for f in vectors(&g, radius, n, rng)? {
                            let lp = f.magnitudes().iter().map(|a| a.powf(p)).sum::<f64>().powf(1.0 / p);
                            worst = worst.max(relative_error(luxemburg_norm(&phi, &f)?, lp * p.powf(-1.0 / p)));
                        }
                        Ok(worst)
                    },
                ));
            }
        }

        let z7 = cyclic(7);
        let n = sizes.triples;
        let (s, g) = (spec.clone(), Arc::clone(&z7));
        out.push(Case::new(
            format!("homogeneity/{spec}"),
            "norms.homogeneity",
            "‖cf‖ = |c|‖f‖",
            1e-8,
            move |rng| {
                let pair = catalog::pair::<f64>(&s)?;
                let mut worst = 0.0f64;
                for f in vectors(&g, 3, n, rng)? {
                    let c = Complex::from_polar(10f64.powf(rng.gen_range(-1.0..1.0)), rng.gen_range(0.0..6.28));
                    let cf = f.scale(c);
                    let lux = relative_error(luxemburg_norm(&pair.phi, &cf)?, c.norm() * luxemburg_norm(&pair.phi, &f)?);
                    let orl = relative_error(orlicz_norm(&pair, &cf)?, c.norm() * orlicz_norm(&pair, &f)?);
                    worst = worst.max(lux).max(orl);
                }
                Ok(worst)
            },
        ));

        let (s, g) = (spec.clone(), Arc::clone(&z7));
        out.push(Case::new(
            format!("unit-ball/{spec}"),
            "norms.unit-ball",
            "N_Φ(f) ≤ 1 ⇔ Σ Φ(|f|) ≤ 1",
            1e-9,
            move |rng| {
                let phi = catalog::parse::<f64>(&s)?;
                let mut worst = 0.0f64;
                for f in vectors(&g, 3, n, rng)? {
                    let target = rng.gen_range(0.5..1.5);
                    let f = f.scale(Complex::new(target / luxemburg_norm(&phi, &f)?, 0.0));
                    let (norm, m) = (luxemburg_norm(&phi, &f)?, modular(&phi, &f)?);
                    if norm < 1.0 - 1e-9 {
                        worst = worst.max(m - 1.0);
                    } else if norm > 1.0 + 1e-9 {
                        worst = worst.max(1.0 - m);
                    }
                }
                Ok(worst)
            },
        ));

        let (s, g) = (spec.clone(), Arc::clone(&z7));
        out.push(Case::new(
            format!("triangle/{spec}"),
            "norms.triangle",
            "‖f + g‖ ≤ ‖f‖ + ‖g‖",
            1e-9,
            move |rng| {
                let pair = catalog::pair::<f64>(&s)?;
                let fs = vectors(&g, 3, 2 * n, rng)?;
                let mut worst = f64::NEG_INFINITY;
                for fg in fs.chunks(2) {
                    let sum = fg[0].add(&fg[1])?;
                    let lux = |v: &V| luxemburg_norm(&pair.phi, v);
                    let orl = |v: &V| orlicz_norm(&pair, v);
                    worst = worst
                        .max(lux(&sum)? - lux(&fg[0])? - lux(&fg[1])?)
                        .max(orl(&sum)? - orl(&fg[0])? - orl(&fg[1])?);
                }
                Ok(worst)
            },
        ));

        let (s, g, n) = (spec.clone(), Arc::clone(&z7), sizes.sweep);
        out.push(Case::new(
            format!("holder/{spec}"),
            "norms.holder",
            "Σ|fg| ≤ min{N_Φ(f)‖g‖_Ψ, ‖f‖_Φ N_Ψ(g)}",
            1e-9,
            move |rng| {
                let pair = catalog::pair::<f64>(&s)?;
                let fs = vectors(&g, 3, 2 * n, rng)?;
                let mut worst = f64::NEG_INFINITY;
                for fg in fs.chunks(2) {
                    worst = worst.max(-holder_gap(&pair, &fg[0], &fg[1])?);
                }
                Ok(worst)
            },
        ));
    }
    out
}

/// `max Σ|f v| − ‖f‖_Φ` over random `v` on `supp f` scaled into the
/// `Ψ`-modular unit ball.
fn dual_sampling(spec: &str, g: &Arc<Group>, radius: u32, n: usize, rng: &mut dyn RngCore) -> CoreResult<f64> {
    let pair = catalog::pair::<f64>(spec)?;
    let mut worst = f64::NEG_INFINITY;
    for f in vectors(g, radius, n, rng)? {
        let support: Vec<GroupElement> = f.support().cloned().collect();
        let v = sample_vectors(g, &support, 1, rng)?.remove(0);
        // a hair past the gauge keeps Σ Ψ(|v|/k) ≤ 1
        let k = luxemburg_of(&pair.psi, &v.magnitudes())? * (1.0 + 1e-9);
        let v = v.scale(Complex::new(1.0 / k, 0.0));
        if modular(&pair.psi, &v)? > 1.0 {
            return Err(orlicz_core::Error::InvalidParameter("dual sample left the unit ball".into()));
        }
        worst = worst.max(abs_pairing(&f, &v) - orlicz_norm(&pair, &f)?);
    }
    Ok(worst)
}

const MEMBERSHIP_RADII: [u32; 5] = [4, 8, 16, 32, 64];

/// Number of alphas whose verdict differs from `expected`.
fn membership_mismatches(group: Arc<Group>, beta: f64, alphas: &[f64], expected: Verdict) -> CoreResult<f64> {
    let psi = catalog::parse::<f64>("pnorm:2")?;
    let w = Weight::polynomial(Arc::clone(&group), beta)?;
    let rows = membership_diagnostic(&psi, &group, |s| Ok(1.0 / w.eval(s)?), alphas, &MEMBERSHIP_RADII)?;
    Ok(rows.iter().filter(|r| r.verdict != expected).count() as f64)
}

pub(super) fn membership_cases() -> Vec<Case> {
    let mut out = vec![
        Case::new("z2/beta-2", "norms.membership", "Σ Ψ(α/ω₂) < ∞ on ℤ²", 0.0, |_| {
            membership_mismatches(z(2), 2.0, &[1.0, 10.0], Verdict::Converging)
        }),
        Case::new("z2/beta-0.4", "norms.membership", "Σ Ψ(α/ω₀.₄) = ∞ on ℤ²", 0.0, |_| {
            membership_mismatches(z(2), 0.4, &[1.0, 10.0], Verdict::Diverging)
        }),
        Case::new("z5/beta-0.4", "norms.membership", "finite groups: every sum converges", 0.0, |_| {
            membership_mismatches(cyclic(5), 0.4, &[1.0, 10.0], Verdict::Converging)
        }),
    ];
    out.push(Case::new("z2/prediction", "norms.membership", "β > d/l with d = l = 2", 0.0, |_| {
        let mut mismatches = 0.0;
        for beta in [0.4, 0.8, 1.5, 2.0, 3.0] {
            let expected =
                if polynomial_membership_predicted(beta, 2.0, 2.0) { Verdict::Converging } else { Verdict::Diverging };
            mismatches += membership_mismatches(z(2), beta, &[1.0], expected)?;
        }
        Ok(mismatches)
    }));
    out
}
