use std::sync::Arc;

use orlicz_core::group::{growth_order_estimate, weight_axioms_report, Group, Weight};

use super::{cyclic, heis, z, Case, CoreResult};

fn groups() -> Vec<(&'static str, Arc<Group>)> {
    vec![("z2", z(2)), ("z3", z(3)), ("h3", heis())]
}

fn pair_radius(name: &str) -> u32 {
    match name {
        "z2" => 10,
        "z3" => 5,
        _ => 3,
    }
}

pub(super) fn cases() -> Vec<Case> {
    let mut out = Vec::new();
    for (name, d, max_r, tol) in [("z2", 2.0, 20, 0.2), ("z3", 3.0, 14, 0.3), ("h3", 4.0, 12, 0.4)] {
        out.push(Case::new(format!("order/{name}"), "group.order", "|d̂ − d|", tol, move |_| {
            let g = if name == "h3" { heis() } else { z(d as usize) };
            Ok((growth_order_estimate(&g, max_r)?.d_hat - d).abs())
        }));
        out.push(Case::new(
            format!("sandwich/{name}"),
            "group.sandwich",
            "max |Bₙ|/nᵈ ≤ 2 min |Bₙ|/nᵈ over n ∈ [R/2, R]",
            2.0,
            move |_| {
                let g = if name == "h3" { heis() } else { z(d as usize) };
                let est = growth_order_estimate(&g, max_r)?;
                if est.order != d as u32 {
                    return Ok(f64::INFINITY);
                }
                let ratios: Vec<f64> = est.counts[(max_r / 2) as usize..]
                    .iter()
                    .map(|&(n, c)| c as f64 / (n as f64).powf(d))
                    .collect();
                let (lo, hi) = ratios.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &r| (lo.min(r), hi.max(r)));
                Ok(hi / lo)
            },
        ));
    }
    out.push(Case::new("ball-count/z2", "group.sandwich", "|Bₙ| = 2n² + 2n + 1", 0.0, |_| {
        ball_count_error(&z(2), 20, |n| 2 * n * n + 2 * n + 1)
    }));
    out.push(Case::new("ball-count/z3", "group.sandwich", "3|Bₙ| = 4n³ + 6n² + 8n + 3", 0.0, |_| {
        ball_count_error(&z(3), 12, |n| (4 * n * n * n + 6 * n * n + 8 * n + 3) / 3)
    }));

    for (name, group) in groups() {
        let g = Arc::clone(&group);
        out.push(Case::new(format!("symmetry/{name}"), "group.symmetry", "max |τ(g) − τ(g⁻¹)|", 0.0, move |_| {
            let mut worst = 0.0f64;
            for x in g.ball(pair_radius(name) + 4)? {
                worst = worst.max((g.word_length(&x)? as f64 - g.word_length(&g.invert(&x)?)? as f64).abs());
            }
            Ok(worst)
        }));

        let g = Arc::clone(&group);
        out.push(Case::new(
            format!("subadditivity/{name}"),
            "group.subadditivity",
            "max τ(gh) − τ(g) − τ(h)",
            0.0,
            move |_| {
                let ball = g.ball(pair_radius(name))?;
                let lens = ball.iter().map(|x| g.word_length(x)).collect::<CoreResult<Vec<_>>>()?;
                let mut worst = f64::NEG_INFINITY;
                for (x, &lx) in ball.iter().zip(&lens) {
                    for (y, &ly) in ball.iter().zip(&lens) {
                        let lxy = g.word_length(&g.multiply(x, y)?)?;
                        worst = worst.max(lxy as f64 - lx as f64 - ly as f64);
                    }
                }
                Ok(worst)
            },
        ));

        let g = Arc::clone(&group);
        out.push(Case::new(format!("nesting/{name}"), "group.nesting", "#{n : Bₙ ⊄ Bₙ₊₁ or |Bₙ| = |Bₙ₊₁|}", 0.0, move |_| {
            let mut failures = 0;
            let mut prev = g.ball(0)?;
            for n in 1..=8 {
                let next = g.ball(n)?;
                if next.len() <= prev.len() || !prev.iter().all(|x| next.binary_search(x).is_ok()) {
                    failures += 1;
                }
                prev = next;
            }
            Ok(failures as f64)
        }));
    }

    out.push(Case::new("nesting/z5", "group.nesting", "Bₙ = ℤ₅ for n ≥ 2", 0.0, |_| {
        let g = cyclic(5);
        Ok((g.ball(2)?.len() as f64 - 5.0).abs() + (g.ball(9)?.len() as f64 - 5.0).abs())
    }));

    for (name, group, radius) in [("z2", z(2), 6), ("h3", heis(), 3), ("z7", cyclic(7), 3)] {
        for spec in ["poly:1", "poly:2.5", "subexp:0.5:1", "sublog:1:2"] {
            let g = Arc::clone(&group);
            out.push(Case::new(
                format!("weight/{name}/{spec}"),
                "group.weight",
                "|ω(e) − 1| + (sup 1/ω − 1)⁺ + (sup ω(st)/ω(s)ω(t) − 1)⁺",
                1e-12,
                move |_| {
                    let r = weight_axioms_report(&Weight::<f64>::parse(g, spec)?, radius)?;
                    let identity = if r.identity_ok { 0.0 } else { 1.0 };
                    Ok(identity + (r.inverse_sup - 1.0).max(0.0) + (r.submult_sup - 1.0).max(0.0))
                },
            ));
        }
    }
    out
}

fn ball_count_error(g: &Group, max_r: u32, exact: impl Fn(u64) -> u64) -> CoreResult<f64> {
    let mut worst = 0.0f64;
    for n in 0..=max_r {
        worst = worst.max((g.ball_size(n)? as f64 - exact(n as u64) as f64).abs());
    }
    Ok(worst)
}
