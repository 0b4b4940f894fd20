use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex;
use orlicz_core::cocycle::{
    cocycle_identity_residual, decomposition_witness, normalization_residual, polar_decompose, sup_norm_estimate,
    Cocycle, WitnessFn, WitnessHint,
};
use orlicz_core::group::{Group, GroupElement, Weight};
use orlicz_core::orlicz::{luxemburg_norm, orlicz_norm, weighted_norm, NormKind, OrliczVector};
use orlicz_core::scalar::relative_error;
use orlicz_core::twisted::{
    associativity_residual, augmentation, convolve, duality_residual, l1_bound_gap, lambda_intertwining_residual,
    lambda_transform, module_action_left, norm_ratio, pairing, splitting_residual, submultiplicativity_probe, twisted_convolve,
    unit_check, xi, zeta, ProbeSpec, SplitFactors,
};
use orlicz_core::numeric::bisect_decreasing;
use orlicz_core::young::{catalog, ComplementaryPair};
use rand::{Rng, RngCore};

use super::{
    broken_cocycle, catalog_cocycles, cyclic, heis, sample_vectors, sign_cocycle, swap_phase, z, Case, CoreResult,
    Sizes, V,
};
use crate::config::SuiteConfig;

type Om = Cocycle<f64>;

fn c(re: f64) -> Complex<f64> {
    Complex::new(re, 0.0)
}

fn delta(group: &Arc<Group>, s: &GroupElement) -> CoreResult<V> {
    OrliczVector::delta(Arc::clone(group), s.clone())
}

/// Samples `k` vectors per triple slot on the ball and hands them out in
/// consecutive groups.
fn tuples(group: &Arc<Group>, radius: u32, n: usize, k: usize, rng: &mut dyn RngCore) -> CoreResult<Vec<Vec<V>>> {
    let ball = group.ball(radius)?;
    let flat = sample_vectors(group, &ball, n * k, rng)?;
    Ok(flat.chunks(k).map(|c| c.to_vec()).collect())
}

fn max_over<I, F>(items: I, mut f: F) -> CoreResult<f64>
where
    I: IntoIterator,
    F: FnMut(I::Item) -> CoreResult<f64>,
{
    let mut worst = f64::NEG_INFINITY;
    for item in items {
        worst = worst.max(f(item)?);
    }
    Ok(worst)
}

fn weight(group: &Arc<Group>, spec: &str) -> CoreResult<Weight<f64>> {
    Weight::parse(Arc::clone(group), spec)
}

fn coboundary(group: &Arc<Group>, spec: &str) -> CoreResult<Om> {
    Ok(Cocycle::coboundary_from_weight(&weight(group, spec)?))
}

/// Groups for the twisted-product checks with the ball radius sampled on each.
fn algebra_groups() -> Vec<(&'static str, Arc<Group>, u32)> {
    vec![("z5", cyclic(5), 2), ("z7", cyclic(7), 3), ("z2", z(2), 4), ("h3", heis(), 3)]
}

pub(super) fn cocycle_cases(cfg: &SuiteConfig) -> Vec<Case> {
    let mut out = Vec::new();
    for (gname, group, radius) in [("z2", z(2), 4), ("z5", cyclic(5), 2), ("h3", heis(), 2)] {
        for (name, om) in catalog_cocycles(&group) {
            let o = om.clone();
            out.push(Case::new(
                format!("identity/{gname}/{name}"),
                "cocycle.identity",
                "max |Ω(r,s)Ω(rs,t) − Ω(s,t)Ω(r,st)|",
                1e-10,
                move |_| cocycle_identity_residual(&o, radius),
            ));
            out.push(Case::new(
                format!("normalized/{gname}/{name}"),
                "cocycle.normalized",
                "max |Ω(s,e) − 1| + |Ω(e,s) − 1|",
                1e-12,
                move |_| normalization_residual(&om, 6),
            ));
        }
    }
    let (gspec, cspec) = (cfg.objects.group.clone(), cfg.objects.cocycle.clone());
    out.push(Case::new(
        format!("identity/config/{gspec}/{cspec}"),
        "cocycle.identity",
        "max |Ω(r,s)Ω(rs,t) − Ω(s,t)Ω(r,st)|",
        1e-10,
        move |_| {
            let g = Arc::new(Group::parse(&gspec)?);
            let om = Cocycle::parse(Arc::clone(&g), &cspec)?;
            cocycle_identity_residual(&om, super::radius_within(&g, 4, 200)?)
        },
    ));

    out.push(Case::new("broken/z2", "cocycle.broken", "max |Ω(r,s)Ω(rs,t) − Ω(s,t)Ω(r,st)| > 10⁻²", -1e-2, |_| {
        Ok(-cocycle_identity_residual(&broken_cocycle(), 4)?)
    }));

    let products: [(&str, &str); 3] =
        [("poly:2", "subexp:0.5:1"), ("poly:1", "phase:3.141592653589793"), ("subexp:0.5:1", "phase:0.7")];
    for (a, b) in products {
        out.push(Case::new(
            format!("product/{a}*{b}"),
            "cocycle.product",
            "(Ω₁Ω₂)(s,t) = Ω₁(s,t)Ω₂(s,t)",
            1e-10,
            move |_| {
                let g = z(2);
                let (p, q): (Om, Om) = (Cocycle::parse(Arc::clone(&g), a)?, Cocycle::parse(Arc::clone(&g), b)?);
                let pq = p.product(&q)?;
                let ball = g.ball(3)?;
                let mut worst = cocycle_identity_residual(&pq, 3)?;
                for s in &ball {
                    for t in &ball {
                        worst = worst.max((pq.eval(s, t)? - p.eval(s, t)? * q.eval(s, t)?).norm());
                    }
                }
                Ok(worst)
            },
        ));
    }

    out.push(Case::new(
        "polar/z2/cob(poly:1)*phase(0.7)",
        "cocycle.polar",
        "Ω = |Ω|·Ω_T with both factors cocycles",
        1e-10,
        |_| {
            let g = z(2);
            let om = coboundary(&g, "poly:1")?.product(&swap_phase(&g, 0.7))?;
            let (modulus, phase) = polar_decompose(&om);
            let mut worst = cocycle_identity_residual(&modulus, 3)?.max(cocycle_identity_residual(&phase, 3)?);
            let ball = g.ball(4)?;
            for s in &ball {
                for t in &ball {
                    let (m, p) = (modulus.eval(s, t)?, phase.eval(s, t)?);
                    if m.re <= 0.0 {
                        return Ok(f64::INFINITY);
                    }
                    worst = worst
                        .max(m.im.abs())
                        .max((p.norm() - 1.0).abs())
                        .max((m * p - om.eval(s, t)?).norm());
                }
            }
            Ok(worst)
        },
    ));

    out.push(Case::new(
        "composition/z2/poly:1*subexp:0.5:1",
        "cocycle.composition",
        "∂(ω₁ω₂) = ∂ω₁ · ∂ω₂",
        1e-12,
        |_| {
            let g = z(2);
            let (w1, w2) = (weight(&g, "poly:1")?, weight(&g, "subexp:0.5:1")?);
            let joint = Cocycle::coboundary_from_weight(&w1.product(&w2));
            let split = Cocycle::coboundary_from_weight(&w1).product(&Cocycle::coboundary_from_weight(&w2))?;
            let ball = g.ball(6)?;
            max_over(ball.iter().flat_map(|s| ball.iter().map(move |t| (s, t))), |(s, t)| {
                Ok(relative_error(joint.eval(s, t)?.re, split.eval(s, t)?.re))
            })
        },
    ));

    for (spec, radius) in [("poly:1", 20), ("poly:2", 20), ("poly:3", 20), ("subexp:0.5:1", 20), ("sublog:1:1", 10)] {
        out.push(Case::new(
            format!("witness/z2/{spec}/B{radius}"),
            "cocycle.witness",
            "max |Ω(s,t)| − u(s) − v(t) ≤ 0",
            0.0,
            move |_| Ok(decomposition_witness(&coboundary(&z(2), spec)?, WitnessHint::FromWeight, radius)?.max_violation),
        ));
    }
    out.push(Case::new("witness/z2/phase(pi)/B20", "cocycle.witness", "|Ω| = 1 ≤ 1 + 1", 0.0, |_| {
        Ok(decomposition_witness(&swap_phase(&z(2), std::f64::consts::PI), WitnessHint::FromWeight, 20)?.max_violation)
    }));
    out.push(Case::new("witness/z5/trivial", "cocycle.witness", "|Ω| = 1 ≤ 1 + 1", 0.0, |_| {
        Ok(decomposition_witness(&Cocycle::trivial(cyclic(5)), WitnessHint::FromWeight, 2)?.max_violation)
    }));
    out
}

/// `f ⋆ g` straight from `(f ⋆ g)(t) = Σ_s f(s) g(s⁻¹t) Ω(s, s⁻¹t)`.
fn naive_convolve(om: &Om, f: &V, g: &V) -> CoreResult<V> {
    let group = om.group();
    let mut targets = Vec::new();
    for s in f.support() {
        for r in g.support() {
            targets.push(group.multiply(s, r)?);
        }
    }
    targets.sort();
    targets.dedup();
    let mut entries = BTreeMap::new();
    for t in targets {
        let mut acc = c(0.0);
        for (s, &a) in f.iter() {
            let r = group.multiply(&group.invert(s)?, &t)?;
            let b = g.get(&r);
            if b != c(0.0) {
                acc += a * b * om.eval(s, &r)?;
            }
        }
        entries.insert(t, acc);
    }
    OrliczVector::from_entries(Arc::clone(group), entries)
}

/// `max | ‖δ_r⋆δ_s⋆δ_t‖ residual − |Ω(r,s)Ω(rs,t) − Ω(s,t)Ω(r,st)| |` on a ball.
fn delta_associativity(om: &Om, radius: u32) -> CoreResult<f64> {
    let g = om.group();
    let ball = g.ball(radius)?;
    let deltas = ball.iter().map(|s| delta(g, s)).collect::<CoreResult<Vec<_>>>()?;
    let mut worst = 0.0f64;
    for (r, dr) in ball.iter().zip(&deltas) {
        for (s, ds) in ball.iter().zip(&deltas) {
            let rs = g.multiply(r, s)?;
            for (t, dt) in ball.iter().zip(&deltas) {
                let lhs = om.eval(r, s)? * om.eval(&rs, t)?;
                let rhs = om.eval(s, t)? * om.eval(r, &g.multiply(s, t)?)?;
                let expected = (lhs - rhs).norm();
                worst = worst.max((associativity_residual(om, dr, ds, dt)? - expected).abs());
            }
        }
    }
    Ok(worst)
}

/// `max ‖δ_s⋆δ_t − Ω(s,t)δ_st‖₁` on a ball.
fn delta_products(om: &Om, radius: u32) -> CoreResult<f64> {
    let g = om.group();
    let ball = g.ball(radius)?;
    max_over(ball.iter().flat_map(|s| ball.iter().map(move |t| (s, t))), |(s, t)| {
        let prod = twisted_convolve(om, &delta(g, s)?, &delta(g, t)?)?;
        let expected = delta(g, &g.multiply(s, t)?)?.scale(om.eval(s, t)?);
        Ok(prod.sub(&expected)?.l1_norm())
    })
}

pub(super) fn twisted_cases(_cfg: &SuiteConfig, sizes: Sizes) -> Vec<Case> {
    let mut out = Vec::new();
    let n = sizes.triples;
    for (gname, group, radius) in algebra_groups() {
        for (name, om) in catalog_cocycles(&group) {
            let (o, g) = (om.clone(), Arc::clone(&group));
            out.push(Case::new(
                format!("associativity/{gname}/{name}"),
                "twisted.associativity",
                "‖(f⋆g)⋆h − f⋆(g⋆h)‖₁",
                1e-10,
                move |rng| {
                    max_over(tuples(&g, radius, n, 3, rng)?, |t| associativity_residual(&o, &t[0], &t[1], &t[2]))
                },
            ));

            let (o, g) = (om.clone(), Arc::clone(&group));
            out.push(Case::new(
                format!("unit/{gname}/{name}"),
                "twisted.unit",
                "max ‖δ_e⋆f − f‖₁, ‖f⋆δ_e − f‖₁",
                1e-12,
                move |rng| {
                    let fs = sample_vectors(&g, &g.ball(radius)?, n, rng)?;
                    let r = unit_check(&o, &fs)?;
                    Ok(r.left.max(r.right))
                },
            ));

            let (o, g) = (om.clone(), Arc::clone(&group));
            out.push(Case::new(
                format!("l1/{gname}/{name}"),
                "twisted.l1",
                "‖f⋆g‖₁ ≤ sup|Ω| ‖f‖₁‖g‖₁",
                1e-12,
                move |rng| {
                    let sup = sup_norm_estimate(&o, radius)?;
                    max_over(tuples(&g, radius, n, 2, rng)?, |t| Ok(-l1_bound_gap(&o, &t[0], &t[1], sup)?))
                },
            ));

            let (o, g) = (om.clone(), Arc::clone(&group));
            out.push(Case::new(
                format!("oracle/{gname}/{name}"),
                "twisted.oracle",
                "Σ_s f(s) g(s⁻¹t) Ω(s, s⁻¹t)",
                1e-12,
                move |rng| {
                    max_over(tuples(&g, radius, n, 2, rng)?, |t| {
                        let fast = twisted_convolve(&o, &t[0], &t[1])?;
                        Ok(fast.sub(&naive_convolve(&o, &t[0], &t[1])?)?.l1_norm())
                    })
                },
            ));

            let small = radius.min(2);
            let o = om.clone();
            out.push(Case::new(
                format!("deltas/{gname}/{name}"),
                "twisted.deltas",
                "δ_s⋆δ_t = Ω(s,t)δ_st",
                1e-14,
                move |_| delta_products(&o, small),
            ));
            if gname == "z2" || gname == "h3" {
                out.push(Case::new(
                    format!("delta-associativity/{gname}/{name}"),
                    "twisted.delta-associativity",
                    "‖(δ_r⋆δ_s)⋆δ_t − δ_r⋆(δ_s⋆δ_t)‖₁ = |Ω(r,s)Ω(rs,t) − Ω(s,t)Ω(r,st)|",
                    1e-12,
                    move |_| delta_associativity(&om, small),
                ));
            }
        }
    }

    out.push(Case::new(
        "delta-associativity/z2/broken",
        "twisted.delta-associativity",
        "‖(δ_r⋆δ_s)⋆δ_t − δ_r⋆(δ_s⋆δ_t)‖₁ = |Ω(r,s)Ω(rs,t) − Ω(s,t)Ω(r,st)|",
        1e-12,
        |_| delta_associativity(&broken_cocycle(), 2),
    ));

    out.push(Case::new("deltas/z2-sign", "twisted.deltas", "δ₁⋆δ₁ = −δ₀ on ℤ₂", 1e-15, |_| {
        let om = sign_cocycle();
        let g = Arc::clone(om.group());
        let one = g.element(vec![1])?;
        let prod = twisted_convolve(&om, &delta(&g, &one)?, &delta(&g, &one)?)?;
        let expected = delta(&g, &g.identity())?.scale(c(-1.0));
        Ok(prod.sub(&expected)?.l1_norm() + delta_products(&om, 1)? + delta_associativity(&om, 1)?)
    }));

    out.push(Case::new(
        "probe/z2/cob(poly:2)/pnorm:2",
        "twisted.probe",
        "Ĉ(16) ≤ 2Ĉ(4)",
        2.0,
        move |rng| {
            let g = z(2);
            let pair = catalog::pair::<f64>("pnorm:2")?;
            let spec = ProbeSpec { radii: vec![4, 8, 16], samples: n, seed: rng.next_u64() };
            let rows = submultiplicativity_probe(&pair, &coboundary(&g, "poly:2")?, &spec)?;
            Ok(rows[2].c_hat / rows[0].c_hat)
        },
    ));
    out
}

pub(super) fn duality_cases(_cfg: &SuiteConfig, sizes: Sizes) -> Vec<Case> {
    let n = sizes.sweep;
    let mut out = Vec::new();
    let setups: Vec<(&str, Arc<Group>, u32, &str)> = vec![
        ("z7", cyclic(7), 3, "poly:1"),
        ("z2", z(2), 4, "poly:1&phase:0.7"),
        ("h3", heis(), 3, "poly:2"),
    ];
    for (gname, group, radius, spec) in setups {
        out.push(Case::new(
            format!("pairing/{gname}/{spec}"),
            "twisted.duality",
            "|⟨f⋆g,h⟩ − ⟨f,g⋆′h⟩| + |⟨f⋆g,h⟩ − ⟨g,h⋆′f⟩|",
            1e-10,
            move |rng| {
                let om = Cocycle::parse(Arc::clone(&group), spec)?;
                max_over(tuples(&group, radius, n, 3, rng)?, |t| duality_residual(&om, &t[0], &t[1], &t[2]))
            },
        ));
    }

    for spec in ["pnorm:2", "cosh"] {
        out.push(Case::new(
            format!("dual-action/z2/cob(poly:2)/{spec}"),
            "twisted.dual-action",
            "‖g⋆′h‖_Ψ ≤ 2Ĉ‖g‖_Φ N_Ψ(h)",
            1e-9,
            move |rng| dual_action(spec, sizes.triples, rng),
        ));
    }
    out
}

/// The `f` with `Σ Φ(|f|) = 1` maximizing `|⟨f, k⟩|`:
/// `f = Ψ′(|k|/λ) · k̄/|k|`, with `λ` found by bisection on `ln λ`.
fn dual_maximizer(pair: &ComplementaryPair<f64>, k: &V) -> CoreResult<V> {
    let dpsi = |y: f64| {
        pair.psi.derivative(y).ok_or_else(|| orlicz_core::Error::MissingDerivative(pair.psi.name().to_string()))?
    };
    let shape = |lambda: f64| k.map(|_, z| Ok(z.conj() / z.norm() * dpsi(z.norm() / lambda)?));
    let modular_at = |t: f64| -> CoreResult<f64> {
        let f = shape(t.exp())?;
        f.magnitudes().iter().map(|&a| pair.phi.eval(a)).sum()
    };
    let t = bisect_decreasing(modular_at, -60.0, 60.0, 1.0, 1e-14)?;
    shape(t.exp())
}

/// `‖g⋆′h‖_Ψ / (2Ĉ‖g‖_Φ N_Ψ(h)) − 1`, where `Ĉ` is the probed ratio on the
/// ball holding `supp g⋆′h`, raised to the ratio at the extremal `f` for
/// `g⋆′h` so the chain `‖g⋆′h‖_Ψ = |⟨f⋆g, h⟩| ≤ ‖f⋆g‖_Φ N_Ψ(h)` applies.
fn dual_action(spec: &str, n: usize, rng: &mut dyn RngCore) -> CoreResult<f64> {
    let g = z(2);
    let om = coboundary(&g, "poly:2")?;
    let pair = catalog::pair::<f64>(spec)?;
    let swapped = pair.swapped();
    let probe = ProbeSpec { radii: vec![8], samples: n, seed: rng.next_u64() };
    let c_probe = submultiplicativity_probe(&pair, &om, &probe)?[0].c_hat;
    max_over(tuples(&g, 4, n, 2, rng)?, |t| {
        let (gv, h) = (&t[0], &t[1]);
        let action = module_action_left(&om, gv, h)?;
        if action.is_zero() {
            return Ok(f64::NEG_INFINITY);
        }
        let f = dual_maximizer(&pair, &action)?;
        let c_hat = c_probe.max(norm_ratio(&pair, &om, &f, gv)?);
        let lhs = orlicz_norm(&swapped, &action)?;
        Ok(lhs / (2.0 * c_hat * orlicz_norm(&pair, gv)? * luxemburg_norm(&pair.psi, h)?) - 1.0)
    })
}

fn witness_factors(om: Om, radius: u32) -> CoreResult<SplitFactors<f64>> {
    let w = decomposition_witness(&om, WitnessHint::FromWeight, radius)?;
    Ok(SplitFactors::from_witness(om, w.u, w.v))
}

fn splitting_case(id: String, n: usize, radius: u32, make: impl FnOnce() -> CoreResult<SplitFactors<f64>> + Send + 'static) -> Case {
    Case::new(id, "twisted.splitting", "|⟨f⋆g,h⟩ − ⟨fu, ξ(g,h)⟩ − ⟨gv, η(f,h)⟩|", 1e-10, move |rng| {
        let factors = make()?;
        let g = Arc::clone(factors.cocycle().group());
        max_over(tuples(&g, radius, n, 3, rng)?, |t| splitting_residual(&factors, &t[0], &t[1], &t[2]))
    })
}

pub(super) fn splitting_cases(_cfg: &SuiteConfig, sizes: Sizes) -> Vec<Case> {
    let n = sizes.triples;
    let mut out = vec![splitting_case("z2/poly:1/u=v=2/ω₁".into(), n, 4, || {
        let g = z(2);
        let w = weight(&g, "poly:1")?;
        let u = WitnessFn::InverseWeight { scale: 2.0, weight: w.clone() };
        Ok(SplitFactors::from_witness(Cocycle::coboundary_from_weight(&w), u.clone(), u))
    })];
    for (name, om) in catalog_cocycles(&z(2)) {
        out.push(splitting_case(format!("z2/{name}/witness"), n, 4, move || witness_factors(om, 8)));
    }
    out.push(Case::new(
        "z5/cob(poly:1)/random-uv",
        "twisted.splitting",
        "|⟨f⋆g,h⟩ − ⟨fu, ξ(g,h)⟩ − ⟨gv, η(f,h)⟩|",
        1e-10,
        move |rng| {
            let g = cyclic(5);
            let ball = g.ball(2)?;
            let table = |rng: &mut dyn RngCore| -> BTreeMap<GroupElement, f64> {
                ball.iter().map(|s| (s.clone(), rng.gen_range(0.5..2.0))).collect()
            };
            let (tu, tv) = (table(rng), table(rng));
            let u = WitnessFn::custom("u", move |s| Ok(tu[s]));
            let v = WitnessFn::custom("v", move |s| Ok(tv[s]));
            let factors = SplitFactors::from_witness(coboundary(&g, "poly:1")?, u, v);
            max_over(tuples(&g, 2, n, 3, rng)?, |t| splitting_residual(&factors, &t[0], &t[1], &t[2]))
        },
    ));
    out.push(splitting_case("z5/cob(poly:1)/u=v=1/2".into(), n, 2, || {
        let g = cyclic(5);
        Ok(SplitFactors::from_witness(coboundary(&g, "poly:1")?, WitnessFn::Constant(0.5), WitnessFn::Constant(0.5)))
    }));

    out.push(Case::new("zeta/z2/cob(poly:1)", "twisted.zeta", "|Σ f ξ(g,h) − Σ h ζ(f,g)|", 1e-12, move |rng| {
        let factors = witness_factors(coboundary(&z(2), "poly:1")?, 8)?;
        let l = factors.kernel();
        max_over(tuples(&z(2), 4, n, 3, rng)?, |t| {
            let lhs = pairing(&t[0], &xi(&l, &t[1], &t[2])?);
            let rhs = pairing(&t[2], &zeta(&l, &t[0], &t[1])?);
            Ok((lhs - rhs).norm())
        })
    }));
    out.push(Case::new("xi-bound/z2/cob(poly:1)*phase(0.7)", "twisted.xi-bound", "max |ξ(g,h)| − |h| ∗ |ǧ|", 1e-12, move |rng| {
        let g = z(2);
        let om = coboundary(&g, "poly:1")?.product(&swap_phase(&g, 0.7))?;
        let factors = witness_factors(om, 8)?;
        let l = factors.kernel();
        max_over(tuples(&g, 4, n, 2, rng)?, |t| {
            let (gv, h) = (&t[0], &t[1]);
            let x = xi(&l, gv, h)?;
            let abs_h = h.map(|_, z| Ok(c(z.norm())))?;
            let mut check = BTreeMap::new();
            for (s, z) in gv.iter() {
                check.insert(g.invert(s)?, c(z.norm()));
            }
            let bound = convolve(&abs_h, &OrliczVector::from_entries(Arc::clone(&g), check)?)?;
            max_over(x.iter(), |(s, z)| Ok(z.norm() - bound.get(s).re))
        })
    }));
    out
}

pub(super) fn lambda_cases(_cfg: &SuiteConfig, sizes: Sizes) -> Vec<Case> {
    let n = sizes.sweep;
    let mut out = Vec::new();
    for wspec in ["poly:1", "subexp:0.5:1"] {
        for pspec in ["pnorm:2", "cosh"] {
            out.push(Case::new(
                format!("isometry/z2/{wspec}/{pspec}"),
                "twisted.lambda-isometry",
                "|‖Λ_ω f‖_{Φ,ω} − ‖f‖_Φ| / ‖f‖_Φ",
                1e-12,
                move |rng| {
                    let g = z(2);
                    let w = weight(&g, wspec)?;
                    let pair = catalog::pair::<f64>(pspec)?;
                    max_over(sample_vectors(&g, &g.ball(4)?, n, rng)?, |f| {
                        let lf = lambda_transform(&w, &f)?;
                        let lux = relative_error(
                            weighted_norm(&pair, &w, &lf, NormKind::Luxemburg)?,
                            luxemburg_norm(&pair.phi, &f)?,
                        );
                        let orl = relative_error(weighted_norm(&pair, &w, &lf, NormKind::Orlicz)?, orlicz_norm(&pair, &f)?);
                        Ok(lux.max(orl))
                    })
                },
            ));
        }
        out.push(Case::new(
            format!("intertwining/z2/{wspec}"),
            "twisted.lambda-intertwining",
            "‖Λ_ω(f⋆_Ω g) − Λ_ω f ∗ Λ_ω g‖₁",
            1e-12,
            move |rng| {
                let g = z(2);
                let w = weight(&g, wspec)?;
                max_over(tuples(&g, 4, n, 2, rng)?, |t| lambda_intertwining_residual(&w, &t[0], &t[1]))
            },
        ));
    }
    out.push(Case::new("intertwining/h3/poly:2", "twisted.lambda-intertwining", "‖Λ_ω(f⋆_Ω g) − Λ_ω f ∗ Λ_ω g‖₁", 1e-12, move |rng| {
        let g = heis();
        let w = weight(&g, "poly:2")?;
        max_over(tuples(&g, 3, n, 2, rng)?, |t| lambda_intertwining_residual(&w, &t[0], &t[1]))
    }));
    for (gname, group) in [("z5", cyclic(5)), ("z7", cyclic(7))] {
        out.push(Case::new(
            format!("augmentation/{gname}"),
            "twisted.augmentation",
            "|Σ(f∗g) − Σf·Σg|",
            1e-12,
            move |rng| {
                max_over(tuples(&group, 3, n, 2, rng)?, |t| {
                    Ok((augmentation(&convolve(&t[0], &t[1])?) - augmentation(&t[0]) * augmentation(&t[1])).norm())
                })
            },
        ));
    }
    out
}
