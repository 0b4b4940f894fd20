use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex;
use orlicz_core::cocycle::{cocycle_identity_residual, Cocycle};
use orlicz_core::group::{Group, GroupElement, Weight};
use orlicz_core::orlicz::{holder_gap, luxemburg_norm, modular, orlicz_norm, OrliczVector};
use orlicz_core::twisted::{associativity_residual, duality_residual, lambda_intertwining_residual};
use orlicz_core::young::{catalog, young_gap, ComplementaryPair};
use proptest::prelude::*;

const PAIRS: [&str; 6] = catalog::DEFAULT_PAIRS;

fn pair(i: usize) -> ComplementaryPair<f64> {
    catalog::pair(PAIRS[i]).unwrap()
}

fn vector_on(group: &Arc<Group>, entries: Vec<(Vec<i64>, f64, f64)>) -> OrliczVector<f64> {
    let mut map = BTreeMap::new();
    for (coords, re, im) in entries {
        map.insert(group.element(coords).unwrap(), Complex::new(re, im));
    }
    OrliczVector::from_entries(group.clone(), map).unwrap()
}

fn z7_entries() -> impl Strategy<Value = Vec<(Vec<i64>, f64, f64)>> {
    prop::collection::vec((0i64..7, -2.0f64..2.0, -2.0f64..2.0), 1..8)
        .prop_map(|v| v.into_iter().map(|(c, re, im)| (vec![c], re, im)).collect())
}

fn z2_entries() -> impl Strategy<Value = Vec<(Vec<i64>, f64, f64)>> {
    prop::collection::vec((-3i64..=3, -3i64..=3, -1.0f64..1.0, -1.0f64..1.0), 1..6)
        .prop_map(|v| v.into_iter().map(|(a, b, re, im)| (vec![a, b], re, im)).collect())
}

fn z7() -> Arc<Group> {
    Arc::new(Group::cyclic(7).unwrap())
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn young_inequality(i in 0usize..6, x in 0.0f64..8.0, y in 0.0f64..8.0) {
        let p = pair(i);
        prop_assert!(young_gap(&p, x, y).unwrap() >= -1e-9);
    }

    #[test]
    fn norm_sandwich(i in 0usize..6, e in z7_entries()) {
        let p = pair(i);
        let f = vector_on(&z7(), e);
        let n = luxemburg_norm(&p.phi, &f).unwrap();
        let o = orlicz_norm(&p, &f).unwrap();
        prop_assert!(n <= o + 1e-9 * o.max(1.0), "N={n} O={o}");
        prop_assert!(o <= 2.0 * n + 1e-9 * o.max(1.0), "N={n} O={o}");
    }

    #[test]
    fn unit_ball_characterization(i in 0usize..6, e in z7_entries(), c in 0.1f64..3.0) {
        let p = pair(i);
        let f = vector_on(&z7(), e);
        let f = f.scale(Complex::new(c / luxemburg_norm(&p.phi, &f).unwrap(), 0.0));
        let n = luxemburg_norm(&p.phi, &f).unwrap();
        let m = modular(&p.phi, &f).unwrap();
        if n < 1.0 - 1e-9 {
            prop_assert!(m <= 1.0 + 1e-9);
        }
        if n > 1.0 + 1e-9 {
            prop_assert!(m > 1.0 - 1e-9);
        }
    }

    #[test]
    fn homogeneity(i in 0usize..6, e in z7_entries(), re in -3.0f64..3.0, im in -3.0f64..3.0) {
        prop_assume!(re.hypot(im) > 1e-3);
        let p = pair(i);
        let f = vector_on(&z7(), e);
        let c = Complex::new(re, im);
        let cf = f.scale(c);
        let (n, cn) = (luxemburg_norm(&p.phi, &f).unwrap(), luxemburg_norm(&p.phi, &cf).unwrap());
        prop_assert!(rel_close(cn, c.norm() * n, 1e-9), "{cn} vs {}", c.norm() * n);
        let (o, co) = (orlicz_norm(&p, &f).unwrap(), orlicz_norm(&p, &cf).unwrap());
        prop_assert!(rel_close(co, c.norm() * o, 1e-8), "{co} vs {}", c.norm() * o);
    }

    #[test]
    fn triangle_inequality(i in 0usize..6, a in z7_entries(), b in z7_entries()) {
        let p = pair(i);
        let g = z7();
        let (f, h) = (vector_on(&g, a), vector_on(&g, b));
        let s = f.add(&h).unwrap();
        let lux = |v: &OrliczVector<f64>| luxemburg_norm(&p.phi, v).unwrap();
        let orl = |v: &OrliczVector<f64>| orlicz_norm(&p, v).unwrap();
        prop_assert!(lux(&s) <= lux(&f) + lux(&h) + 1e-9);
        prop_assert!(orl(&s) <= orl(&f) + orl(&h) + 1e-8);
    }

    #[test]
    fn holder(i in 0usize..6, a in z7_entries(), b in z7_entries()) {
        let p = pair(i);
        let g = z7();
        prop_assert!(holder_gap(&p, &vector_on(&g, a), &vector_on(&g, b)).unwrap() >= -1e-9);
    }

    #[test]
    fn pnorm_luxemburg_closed_form(p in 1.2f64..4.0, e in z7_entries()) {
        let phi = catalog::pnorm(p).unwrap();
        let f = vector_on(&z7(), e);
        let lp: f64 = f.magnitudes().iter().map(|a| a.powf(p)).sum::<f64>().powf(1.0 / p);
        let expect = lp * p.powf(-1.0 / p);
        prop_assert!(rel_close(luxemburg_norm(&phi, &f).unwrap(), expect, 1e-8));
    }

    #[test]
    fn bilinear_phases_are_cocycles(m in prop::collection::vec(-2i64..=2, 4), theta in -3.2f64..3.2) {
        let g = Arc::new(Group::free_abelian(2));
        let om = Cocycle::bilinear_phase(g, vec![m[..2].to_vec(), m[2..].to_vec()], theta).unwrap();
        prop_assert!(cocycle_identity_residual(&om, 2).unwrap() <= 1e-10);
    }

    #[test]
    fn duality_and_associativity_on_z2(a in z2_entries(), b in z2_entries(), c in z2_entries(), beta in 0.5f64..3.0) {
        let g = Arc::new(Group::free_abelian(2));
        let w = Weight::polynomial(g.clone(), beta).unwrap();
        let phase = Cocycle::bilinear_phase(g.clone(), vec![vec![0, 1], vec![0, 0]], 0.4).unwrap();
        let om = Cocycle::coboundary_from_weight(&w).product(&phase).unwrap();
        let (f, h, k) = (vector_on(&g, a), vector_on(&g, b), vector_on(&g, c));
        prop_assert!(duality_residual(&om, &f, &h, &k).unwrap() <= 1e-10);
        prop_assert!(associativity_residual(&om, &f, &h, &k).unwrap() <= 1e-10);
        prop_assert!(lambda_intertwining_residual(&w, &f, &h).unwrap() <= 1e-12);
    }

    #[test]
    fn word_length_is_symmetric_and_subadditive(
        x in prop::collection::vec(-3i64..=3, 3),
        y in prop::collection::vec(-3i64..=3, 3),
    ) {
        let h = Group::heisenberg();
        let (x, y): (GroupElement, GroupElement) = (h.element(x).unwrap(), h.element(y).unwrap());
        let len = |g: &GroupElement| h.word_length(g).unwrap();
        prop_assert_eq!(len(&x), len(&h.invert(&x).unwrap()));
        prop_assert!(len(&h.multiply(&x, &y).unwrap()) <= len(&x) + len(&y));
    }
}

#[test]
fn single_precision_smoke() {
    let g = Arc::new(Group::cyclic(7).unwrap());
    let pair = catalog::pair::<f32>("pnorm:2").unwrap();
    let f: orlicz_core::single::OrliczVector = OrliczVector::from_real(
        g.clone(),
        [(g.element(vec![0]).unwrap(), 3.0f32), (g.element(vec![1]).unwrap(), 4.0)],
    )
    .unwrap();
    let n = luxemburg_norm(&pair.phi, &f).unwrap();
    assert!((n - 5.0 / 2f32.sqrt()).abs() < 1e-4);
    let o = orlicz_norm(&pair, &f).unwrap();
    assert!((o - 5.0 * 2f32.sqrt()).abs() < 1e-3);
}
