//! Acceptance gate: fourteen criteria, each with a tolerance and a time
//! budget. Prints one PASS/FAIL line per criterion and exits nonzero on any
//! failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_complex::Complex;
use orlicz_core::cocycle::{cocycle_identity_residual, decomposition_witness, Cocycle, WitnessFn, WitnessHint};
use orlicz_core::group::{growth_order_estimate, Group, GroupElement, Weight};
use orlicz_core::numeric::log_grid;
use orlicz_core::orlicz::{
    abs_pairing, holder_gap, luxemburg_norm, luxemburg_of, membership_diagnostic, modular, orlicz_norm,
    orlicz_norm_eval_of, polynomial_membership_predicted, weighted_norm, NormKind, OrliczVector, Verdict,
};
use orlicz_core::random::{random_vector, seeded_rng, MAX_RANDOM_SUPPORT};
use orlicz_core::twisted::{
    associativity_residual, duality_residual, lambda_intertwining_residual, lambda_transform, splitting_residual,
    unit_check, SplitFactors,
};
use orlicz_core::young::{catalog, conjugate, young_gap, ConjugateSearch};
use rand::Rng;

type V = OrliczVector<f64>;
type Check = Result<String, String>;

const SEED: u64 = 42;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

fn vectors(group: &Arc<Group>, radius: u32, n: usize, rng: &mut impl Rng) -> Result<Vec<V>, String> {
    let ball = group.ball(radius).map_err(e)?;
    (0..n).map(|_| random_vector::<f64, _>(group, &ball, MAX_RANDOM_SUPPORT, rng).map_err(e)).collect()
}

fn z(d: usize) -> Arc<Group> {
    Arc::new(Group::free_abelian(d))
}

fn cyclic(n: i64) -> Arc<Group> {
    Arc::new(Group::cyclic(n).unwrap())
}

fn cocycle(group: &Arc<Group>, spec: &str) -> Result<Cocycle<f64>, String> {
    Cocycle::parse(Arc::clone(group), spec).map_err(e)
}

// 1
fn conjugate_pairs() -> Check {
    let grid = log_grid(1e-2, 10.0, 100);
    let mut worst = 0.0f64;
    for p in [1.5f64, 2.0, 3.0] {
        let q = p / (p - 1.0);
        let psi = conjugate(&catalog::pnorm(p).map_err(e)?, ConjugateSearch::default());
        for &y in &grid {
            worst = worst.max(rel(psi.eval(y).map_err(e)?, y.powf(q) / q));
        }
    }
    let psi = conjugate(&catalog::expm::<f64>(), ConjugateSearch::default());
    for &y in &grid {
        worst = worst.max(rel(psi.eval(y).map_err(e)?, (1.0 + y) * (1.0 + y).ln() - y));
    }
    ensure(worst <= 1e-6, || format!("max relative error {worst:e}"))?;
    Ok(format!("max relative error {worst:.2e}"))
}

// 2
fn young_inequality() -> Check {
    let mut rng = seeded_rng(SEED, 2);
    let (mut min_gap, mut eq_gap) = (f64::INFINITY, 0.0f64);
    for spec in catalog::DEFAULT_PAIRS {
        let pair = catalog::pair::<f64>(spec).map_err(e)?;
        for _ in 0..10_000 {
            let (x, y) = (rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0));
            min_gap = min_gap.min(young_gap(&pair, x, y).map_err(e)?);
        }
        for x in log_grid(1e-3, 5.0, 100) {
            let y = pair.phi.derivative(x).ok_or("missing derivative")?.map_err(e)?;
            eq_gap = eq_gap.max(young_gap(&pair, x, y).map_err(e)?.abs());
        }
    }
    ensure(min_gap >= -1e-9, || format!("gap {min_gap:e}"))?;
    ensure(eq_gap <= 1e-8, || format!("equality gap {eq_gap:e}"))?;
    Ok(format!("min gap {min_gap:.2e}, equality gap {eq_gap:.2e}"))
}

fn norm_groups() -> Vec<(Arc<Group>, u32)> {
    vec![(cyclic(7), 3), (z(2), 6)]
}

// 3
fn norm_sandwich() -> Check {
    let (mut worst, mut pnorm_err) = (f64::NEG_INFINITY, 0.0f64);
    for (i, spec) in catalog::DEFAULT_PAIRS.iter().enumerate() {
        let pair = catalog::pair::<f64>(spec).map_err(e)?;
        let p = spec.strip_prefix("pnorm:").map(|p| p.parse::<f64>().unwrap());
        for (j, (group, radius)) in norm_groups().into_iter().enumerate() {
            let mut rng = seeded_rng(SEED, 300 + (10 * i + j) as u64);
            for f in vectors(&group, radius, 1000, &mut rng)? {
                let n = luxemburg_norm(&pair.phi, &f).map_err(e)?;
                let o = orlicz_norm(&pair, &f).map_err(e)?;
                worst = worst.max(n - o).max(o - 2.0 * n);
                if let Some(p) = p {
                    let lp = f.iter().map(|(_, z)| z.norm().powf(p)).sum::<f64>().powf(1.0 / p);
                    pnorm_err = pnorm_err.max(rel(n, lp * p.powf(-1.0 / p)));
                }
            }
        }
    }
    ensure(worst <= 1e-9, || format!("sandwich violated by {worst:e}"))?;
    ensure(pnorm_err <= 1e-8, || format!("p-norm closed form off by {pnorm_err:e}"))?;
    Ok(format!("worst sandwich excess {worst:.2e}, p-norm error {pnorm_err:.2e}"))
}

// 4
fn method_agreement() -> Check {
    let (mut gap, mut dual) = (0.0f64, f64::NEG_INFINITY);
    for (i, spec) in catalog::DEFAULT_PAIRS.iter().enumerate() {
        let pair = catalog::pair::<f64>(spec).map_err(e)?;
        for (j, (group, radius)) in norm_groups().into_iter().enumerate() {
            let mut rng = seeded_rng(SEED, 400 + (10 * i + j) as u64);
            for f in vectors(&group, radius, 1000, &mut rng)? {
                let eval = orlicz_norm_eval_of(&pair, &f.magnitudes()).map_err(e)?;
                gap = gap.max(eval.gap);
                // random v in the Ψ-modular unit ball
                let support: Vec<GroupElement> = f.support().cloned().collect();
                let v = random_vector::<f64, _>(&group, &support, MAX_RANDOM_SUPPORT, &mut rng).map_err(e)?;
                let k = luxemburg_of(&pair.psi, &v.magnitudes()).map_err(e)? * (1.0 + 1e-9);
                let v = v.scale(Complex::new(1.0 / k, 0.0));
                ensure(modular(&pair.psi, &v).map_err(e)? <= 1.0, || "sample outside the unit ball".into())?;
                dual = dual.max(abs_pairing(&f, &v) - eval.value);
            }
        }
    }
    ensure(gap <= 1e-5, || format!("method gap {gap:e}"))?;
    ensure(dual <= 1e-9, || format!("dual sample exceeds norm by {dual:e}"))?;
    Ok(format!("max method gap {gap:.2e}, max dual excess {dual:.2e}"))
}

// 5
fn holder() -> Check {
    let mut worst = f64::INFINITY;
    let group = cyclic(7);
    for (i, spec) in catalog::DEFAULT_PAIRS.iter().enumerate() {
        let pair = catalog::pair::<f64>(spec).map_err(e)?;
        let mut rng = seeded_rng(SEED, 500 + i as u64);
        let fs = vectors(&group, 3, 2000, &mut rng)?;
        for fg in fs.chunks(2) {
            worst = worst.min(holder_gap(&pair, &fg[0], &fg[1]).map_err(e)?);
        }
    }
    ensure(worst >= -1e-9, || format!("Hölder gap {worst:e}"))?;
    Ok(format!("min gap {worst:.2e}"))
}

// 6
fn cocycle_identity() -> Check {
    let g = z(2);
    let base = ["poly:1", "poly:2", "subexp:0.5:1", "phase:0.7"];
    let mut specs: Vec<String> = base.iter().map(|s| s.to_string()).collect();
    for (i, a) in base.iter().enumerate() {
        for b in &base[i + 1..] {
            specs.push(format!("{a}&{b}"));
        }
    }
    let mut worst = 0.0f64;
    for spec in &specs {
        worst = worst.max(cocycle_identity_residual(&cocycle(&g, spec)?, 4).map_err(e)?);
    }
    ensure(worst <= 1e-10, || format!("identity residual {worst:e}"))?;

    // cob(ω₁) built from word lengths, perturbed by 10% at one pair
    let (s0, t0) = (g.element(vec![1, 0]).map_err(e)?, g.element(vec![0, 1]).map_err(e)?);
    let gg = Arc::clone(&g);
    let broken = Cocycle::from_fn(Arc::clone(&g), "broken", move |s, t| {
        let v = ratio(&gg, s, t)?;
        Ok(Complex::new(if *s == s0 && *t == t0 { 1.1 * v } else { v }, 0.0))
    });
    let broken_res = cocycle_identity_residual(&broken, 4).map_err(e)?;
    ensure(broken_res > 1e-2, || format!("broken cocycle residual only {broken_res:e}"))?;
    Ok(format!("{} cocycles, max residual {worst:.2e}; broken residual {broken_res:.3}", specs.len()))
}

/// `ω₁(st)/(ω₁(s)ω₁(t))` with `ω₁ = 1 + τ`.
fn ratio(g: &Group, s: &GroupElement, t: &GroupElement) -> orlicz_core::Result<f64> {
    let w = |x: &GroupElement| -> orlicz_core::Result<f64> { Ok(1.0 + g.word_length(x)? as f64) };
    Ok(w(&g.multiply(s, t)?)? / (w(s)? * w(t)?))
}

fn catalog_specs(group: &Group) -> Vec<&'static str> {
    let mut specs = vec!["trivial", "poly:1", "poly:2", "subexp:0.5:1", "sublog:1:1"];
    if group.arity() == 2 && !group.kind().is_finite() {
        specs.extend(["phase:3.141592653589793", "phase:0.7", "poly:1&phase:0.7", "subexp:0.5:1&phase:3.141592653589793"]);
    }
    specs
}

// 7
fn associativity_and_unit() -> Check {
    let groups = [(cyclic(5), 2), (cyclic(7), 3), (z(2), 4), (Arc::new(Group::heisenberg()), 3)];
    let (mut assoc, mut unit, mut count) = (0.0f64, 0.0f64, 0);
    for (gi, (group, radius)) in groups.iter().enumerate() {
        for (ci, spec) in catalog_specs(group).into_iter().enumerate() {
            let om = cocycle(group, spec)?;
            let mut rng = seeded_rng(SEED, 700 + (100 * gi + ci) as u64);
            let vs = vectors(group, *radius, 300, &mut rng)?;
            for t in vs.chunks(3) {
                assoc = assoc.max(associativity_residual(&om, &t[0], &t[1], &t[2]).map_err(e)?);
            }
            let r = unit_check(&om, &vs[..100]).map_err(e)?;
            unit = unit.max(r.left).max(r.right);
            count += 1;
        }
    }
    ensure(assoc <= 1e-10, || format!("associativity residual {assoc:e}"))?;
    ensure(unit <= 1e-12, || format!("unit residual {unit:e}"))?;
    Ok(format!("{count} (group, cocycle) combinations, associativity {assoc:.2e}, unit {unit:.2e}"))
}

// 8
fn duality() -> Check {
    let mut worst = 0.0f64;
    for (i, (group, radius, spec)) in [(cyclic(7), 3, "poly:1"), (z(2), 4, "poly:1&phase:0.7")].into_iter().enumerate() {
        let om = cocycle(&group, spec)?;
        let mut rng = seeded_rng(SEED, 800 + i as u64);
        for t in vectors(&group, radius, 3000, &mut rng)?.chunks(3) {
            worst = worst.max(duality_residual(&om, &t[0], &t[1], &t[2]).map_err(e)?);
        }
    }
    ensure(worst <= 1e-10, || format!("duality residual {worst:e}"))?;
    Ok(format!("max residual {worst:.2e}"))
}

// 9
fn splitting() -> Check {
    let g = z(2);
    let w = Weight::polynomial(Arc::clone(&g), 1.0).map_err(e)?;
    let u = WitnessFn::InverseWeight { scale: 2.0, weight: w.clone() };
    let factors = SplitFactors::from_witness(Cocycle::coboundary_from_weight(&w), u.clone(), u);
    let mut rng = seeded_rng(SEED, 900);
    let mut worst = 0.0f64;
    for t in vectors(&g, 4, 300, &mut rng)?.chunks(3) {
        worst = worst.max(splitting_residual(&factors, &t[0], &t[1], &t[2]).map_err(e)?);
    }
    ensure(worst <= 1e-10, || format!("splitting residual {worst:e}"))?;
    Ok(format!("max residual {worst:.2e}"))
}

// 10
fn decomposition_witnesses() -> Check {
    let g = z(2);
    let mut lines = Vec::new();
    for beta in [1.0f64, 2.0, 3.0] {
        let w = Weight::polynomial(Arc::clone(&g), beta).map_err(e)?;
        let om = Cocycle::coboundary_from_weight(&w);
        let u = WitnessFn::InverseWeight { scale: 2f64.powf(beta), weight: w };
        let found = decomposition_witness(&om, WitnessHint::Candidate { u: u.clone(), v: u }, 20).map_err(e)?;
        ensure(found.max_violation <= 0.0, || format!("β={beta}: violation {}", found.max_violation))?;
        lines.push(format!("ω{beta}: {:.3}", found.max_violation));
    }
    let sigma = Weight::subexp_alpha(Arc::clone(&g), 0.5, 1.0).map_err(e)?;
    let om = Cocycle::coboundary_from_weight(&sigma);
    // C(2 − 2^α) with α = 1/2
    let derived = Weight::subexp_alpha(Arc::clone(&g), 0.5, 2.0 - 2f64.sqrt()).map_err(e)?;
    let u = WitnessFn::InverseWeight { scale: 1.0, weight: derived };
    let found = decomposition_witness(&om, WitnessHint::Candidate { u: u.clone(), v: u }, 20).map_err(e)?;
    ensure(found.max_violation <= 0.0, || format!("σ: violation {}", found.max_violation))?;
    let auto = decomposition_witness(&om, WitnessHint::FromWeight, 20).map_err(e)?;
    ensure(auto.max_violation <= 0.0, || "σ: derived witness failed".into())?;
    lines.push(format!("σ: {:.3}", found.max_violation));
    Ok(format!("B20 max violations {}", lines.join(", ")))
}

// 11
fn membership() -> Check {
    let g = z(2);
    let psi = catalog::pnorm::<f64>(2.0).map_err(e)?;
    let radii = [4, 8, 16, 32, 64];
    let verdict = |beta: f64| -> Result<Vec<Verdict>, String> {
        let w = Weight::polynomial(Arc::clone(&g), beta).map_err(e)?;
        let rows = membership_diagnostic(&psi, &g, |s| Ok(1.0 / w.eval(s)?), &[1.0, 10.0], &radii).map_err(e)?;
        Ok(rows.into_iter().map(|r| r.verdict).collect())
    };
    let (two, low) = (verdict(2.0)?, verdict(0.4)?);
    ensure(two.iter().all(|v| *v == Verdict::Converging), || format!("β=2: {two:?}"))?;
    ensure(low.iter().all(|v| *v == Verdict::Diverging), || format!("β=0.4: {low:?}"))?;
    ensure(
        polynomial_membership_predicted(2.0, 2.0, 2.0) && !polynomial_membership_predicted(0.4, 2.0, 2.0),
        || "prediction β > d/l disagrees".into(),
    )?;
    Ok("β=2 converging, β=0.4 diverging".into())
}

// 12
fn growth_orders() -> Check {
    let mut parts = Vec::new();
    for (name, group, max_r, d, tol) in [
        ("Z2", Group::free_abelian(2), 20, 2.0, 0.2),
        ("Z3", Group::free_abelian(3), 14, 3.0, 0.3),
        ("H3", Group::heisenberg(), 12, 4.0, 0.4),
    ] {
        let d_hat = growth_order_estimate(&group, max_r).map_err(e)?.d_hat;
        ensure((d_hat - d).abs() <= tol, || format!("{name}: d_hat {d_hat}"))?;
        parts.push(format!("{name} {d_hat:.3}"));
    }
    Ok(parts.join(", "))
}

// 13
fn lambda() -> Check {
    let g = z(2);
    let w = Weight::polynomial(Arc::clone(&g), 1.0).map_err(e)?;
    let pair = catalog::pair::<f64>("pnorm:2").map_err(e)?;
    let mut rng = seeded_rng(SEED, 1300);
    let (mut iso, mut inter) = (0.0f64, 0.0f64);
    for t in vectors(&g, 4, 2000, &mut rng)?.chunks(2) {
        let f = &t[0];
        let lf = lambda_transform(&w, f).map_err(e)?;
        let lux = weighted_norm(&pair, &w, &lf, NormKind::Luxemburg).map_err(e)?;
        let orl = weighted_norm(&pair, &w, &lf, NormKind::Orlicz).map_err(e)?;
        iso = iso
            .max(rel(lux, luxemburg_norm(&pair.phi, f).map_err(e)?))
            .max(rel(orl, orlicz_norm(&pair, f).map_err(e)?));
        inter = inter.max(lambda_intertwining_residual(&w, &t[0], &t[1]).map_err(e)?);
    }
    ensure(iso <= 1e-12, || format!("isometry error {iso:e}"))?;
    ensure(inter <= 1e-12, || format!("intertwining residual {inter:e}"))?;
    Ok(format!("isometry {iso:.2e}, intertwining {inter:.2e}"))
}

// 14
fn determinism() -> Check {
    let run = || -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_orlicz-lab"))
            .args(["verify", "--seed", "42", "--format", "lines"])
            .env_remove("ORLICZ_LAB_CONFIG")
            .output()
            .map_err(e)?;
        ensure(out.status.code().is_some(), || "verify was killed".into())?;
        Ok(out.stdout)
    };
    let (a, b) = (run()?, run()?);
    ensure(!a.is_empty(), || "empty report".into())?;
    ensure(a == b, || "reports differ".into())?;
    let lines = a.split(|&c| c == b'\n').filter(|l| !l.is_empty() && l[0] != b'#').count();
    let fails = String::from_utf8_lossy(&a).matches("\"verdict\":\"fail\"").count();
    Ok(format!("{lines} records identical across runs, {fails} failing"))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Check); 14] = [
        ("conjugate pairs", 1, conjugate_pairs),
        ("young inequality", 1, young_inequality),
        ("norm sandwich", 10, norm_sandwich),
        ("orlicz method agreement", 10, method_agreement),
        ("hölder", 5, holder),
        ("cocycle identity", 5, cocycle_identity),
        ("associativity and unit", 30, associativity_and_unit),
        ("duality", 10, duality),
        ("splitting identity", 10, splitting),
        ("decomposition witness", 60, decomposition_witnesses),
        ("membership diagnostic", 10, membership),
        ("growth orders", 60, growth_orders),
        ("lambda transform", 10, lambda),
        ("determinism", 300, determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= Duration::from_secs(budget) {
                Ok(detail)
            } else {
                Err(format!("{detail}; over time budget"))
            }
        });
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name} ({:.2}s / {budget}s): {detail}", i + 1, elapsed.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
