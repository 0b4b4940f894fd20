//! Twisted convolution `(f ⋆ g)(t) = Σ_s f(s) g(s⁻¹t) Ω(s, s⁻¹t)`, the dual
//! module actions, the bilinear pairing and the splitting operators.

use std::sync::Arc;

use num_complex::Complex;

use crate::cocycle::{Cocycle, WitnessFn};
use crate::error::{Error, Result};
use crate::group::{Group, GroupElement, Weight};
use crate::orlicz::{check_same_group, orlicz_norm, OrliczVector};
use crate::random::{random_vector, seeded_rng, MAX_RANDOM_SUPPORT};
use crate::scalar::Scalar;
use crate::young::ComplementaryPair;

/// A two-variable kernel on a group: a cocycle, or a splitting factor `L`.
pub trait Kernel<T> {
    fn group(&self) -> &Arc<Group>;
    fn value(&self, s: &GroupElement, t: &GroupElement) -> Result<Complex<T>>;
}

impl<T: Scalar> Kernel<T> for Cocycle<T> {
    fn group(&self) -> &Arc<Group> {
        Cocycle::group(self)
    }

    fn value(&self, s: &GroupElement, t: &GroupElement) -> Result<Complex<T>> {
        self.eval(s, t)
    }
}

fn check<T: Scalar, K: Kernel<T>>(k: &K, vs: &[&OrliczVector<T>]) -> Result<()> {
    for v in vs {
        check_same_group(k.group(), v.group())?;
    }
    Ok(())
}

/// `Σ_{s,r} f(s) g(r) K(s, r) δ_{sr}`; the twisted product when `K = Ω`
/// and `ζ(f, g)` when `K = L`.
pub fn twisted_convolve<T: Scalar, K: Kernel<T>>(
    k: &K,
    f: &OrliczVector<T>,
    g: &OrliczVector<T>,
) -> Result<OrliczVector<T>> {
    check(k, &[f, g])?;
    let group = k.group();
    let mut out = OrliczVector::zero(Arc::clone(group));
    for (s, &a) in f.iter() {
        for (r, &b) in g.iter() {
            out.accumulate(group.mul(s, r), a * b * k.value(s, r)?);
        }
    }
    Ok(out)
}

/// Untwisted convolution `f ∗ g`.
pub fn convolve<T: Scalar>(f: &OrliczVector<T>, g: &OrliczVector<T>) -> Result<OrliczVector<T>> {
    twisted_convolve(&Cocycle::trivial(Arc::clone(f.group())), f, g)
}

/// `(g ⋆′ h)(s) = Σ_t g(t) h(st) K(s, t)`.
pub fn module_action_left<T: Scalar, K: Kernel<T>>(
    k: &K,
    g: &OrliczVector<T>,
    h: &OrliczVector<T>,
) -> Result<OrliczVector<T>> {
    check(k, &[g, h])?;
    let group = k.group();
    let mut out = OrliczVector::zero(Arc::clone(group));
    for (t, &a) in g.iter() {
        let t_inv = group.inv(t);
        for (r, &b) in h.iter() {
            // r = st
            let s = group.mul(r, &t_inv);
            let z = a * b * k.value(&s, t)?;
            out.accumulate(s, z);
        }
    }
    Ok(out)
}

/// `(h ⋆′ g)(s) = Σ_t g(t) h(ts) K(t, s)`.
pub fn module_action_right<T: Scalar, K: Kernel<T>>(
    k: &K,
    h: &OrliczVector<T>,
    g: &OrliczVector<T>,
) -> Result<OrliczVector<T>> {
    check(k, &[g, h])?;
    let group = k.group();
    let mut out = OrliczVector::zero(Arc::clone(group));
    for (t, &a) in g.iter() {
        let t_inv = group.inv(t);
        for (r, &b) in h.iter() {
            // r = ts
            let s = group.mul(&t_inv, r);
            let z = a * b * k.value(t, &s)?;
            out.accumulate(s, z);
        }
    }
    Ok(out)
}

/// `ξ(g, h)(s) = Σ_t g(t) h(st) L(s, t)`.
pub fn xi<T: Scalar, K: Kernel<T>>(l: &K, g: &OrliczVector<T>, h: &OrliczVector<T>) -> Result<OrliczVector<T>> {
    module_action_left(l, g, h)
}

/// `η(f, h)(t) = Σ_s f(s) h(st) L(s, t)`.
pub fn eta<T: Scalar, K: Kernel<T>>(l: &K, f: &OrliczVector<T>, h: &OrliczVector<T>) -> Result<OrliczVector<T>> {
    module_action_right(l, h, f)
}

/// `ζ(f, g)(t) = Σ_s f(s) g(s⁻¹t) L(s, s⁻¹t)`.
pub fn zeta<T: Scalar, K: Kernel<T>>(l: &K, f: &OrliczVector<T>, g: &OrliczVector<T>) -> Result<OrliczVector<T>> {
    twisted_convolve(l, f, g)
}

/// Bilinear pairing `⟨f, h⟩ = Σ_s f(s) h(s)`; no complex conjugation.
pub fn pairing<T: Scalar>(f: &OrliczVector<T>, h: &OrliczVector<T>) -> Complex<T> {
    let (small, large) = if f.len() <= h.len() { (f, h) } else { (h, f) };
    small.iter().map(|(s, z)| z * large.get(s)).fold(Complex::new(T::zero(), T::zero()), |a, b| a + b)
}

/// `sup|Ω| · ‖f‖₁ · ‖g‖₁ − ‖f ⋆ g‖₁` for a supplied bound `omega_sup`.
pub fn l1_bound_gap<T: Scalar>(
    om: &Cocycle<T>,
    f: &OrliczVector<T>,
    g: &OrliczVector<T>,
    omega_sup: T,
) -> Result<T> {
    let fg = twisted_convolve(om, f, g)?;
    Ok(omega_sup * f.l1_norm() * g.l1_norm() - fg.l1_norm())
}

/// `‖(f ⋆ g) ⋆ h − f ⋆ (g ⋆ h)‖₁`.
pub fn associativity_residual<T: Scalar>(
    om: &Cocycle<T>,
    f: &OrliczVector<T>,
    g: &OrliczVector<T>,
    h: &OrliczVector<T>,
) -> Result<T> {
    let left = twisted_convolve(om, &twisted_convolve(om, f, g)?, h)?;
    let right = twisted_convolve(om, f, &twisted_convolve(om, g, h)?)?;
    Ok(left.sub(&right)?.l1_norm())
}

/// `|⟨f⋆g, h⟩ − ⟨f, g⋆′h⟩| + |⟨f⋆g, h⟩ − ⟨g, h⋆′f⟩|`.
pub fn duality_residual<T: Scalar>(
    om: &Cocycle<T>,
    f: &OrliczVector<T>,
    g: &OrliczVector<T>,
    h: &OrliczVector<T>,
) -> Result<T> {
    let lhs = pairing(&twisted_convolve(om, f, g)?, h);
    let mid = pairing(f, &module_action_left(om, g, h)?);
    let right = pairing(g, &module_action_right(om, h, f)?);
    Ok((lhs - mid).norm() + (lhs - right).norm())
}

/// `Ω = L·(u + v)` with `|L| ≤ 1`.
#[derive(Clone)]
pub struct SplitFactors<T> {
    om: Cocycle<T>,
    l: Option<Arc<dyn Fn(&GroupElement, &GroupElement) -> Result<Complex<T>> + Send + Sync>>,
    pub u: WitnessFn<T>,
    pub v: WitnessFn<T>,
}

impl<T: Scalar> SplitFactors<T> {
    /// `L = Ω / (u + v)`.
    pub fn from_witness(om: Cocycle<T>, u: WitnessFn<T>, v: WitnessFn<T>) -> Self {
        Self { om, l: None, u, v }
    }

    /// An explicitly supplied `L`, checked against `Ω` on use.
    pub fn explicit<F>(om: Cocycle<T>, l: F, u: WitnessFn<T>, v: WitnessFn<T>) -> Self
    where
        F: Fn(&GroupElement, &GroupElement) -> Result<Complex<T>> + Send + Sync + 'static,
    {
        Self { om, l: Some(Arc::new(l)), u, v }
    }

    pub fn cocycle(&self) -> &Cocycle<T> {
        &self.om
    }

    pub fn kernel(&self) -> SplitKernel<'_, T> {
        SplitKernel(self)
    }

    fn l_value(&self, s: &GroupElement, t: &GroupElement) -> Result<Complex<T>> {
        match &self.l {
            Some(l) => l(s, t),
            None => {
                let denom = self.u.eval(s)? + self.v.eval(t)?;
                Ok(self.om.eval(s, t)? / denom)
            }
        }
    }

    /// Checks `|L| ≤ 1` and `|Ω − L(u+v)| ≤ 1e−10` on the given pairs,
    /// failing at the first offender; returns the largest defect seen.
    pub fn verify<'a, I>(&self, pairs: I) -> Result<T>
    where
        I: IntoIterator<Item = (&'a GroupElement, &'a GroupElement)>,
    {
        let tol = T::lit(1e-10);
        let mut worst = T::zero();
        for (s, t) in pairs {
            let l = self.l_value(s, t)?;
            let factor = self.om.eval(s, t)? - l * (self.u.eval(s)? + self.v.eval(t)?);
            let bad = factor.norm().max(l.norm() - T::one());
            if bad > tol {
                return Err(Error::SplitPrecondition {
                    s: s.to_string(),
                    t: t.to_string(),
                    residual: bad.as_f64(),
                });
            }
            worst = worst.max(bad);
        }
        Ok(worst)
    }
}

/// The `L` factor of a [`SplitFactors`] as a kernel.
pub struct SplitKernel<'a, T>(&'a SplitFactors<T>);

impl<T: Scalar> Kernel<T> for SplitKernel<'_, T> {
    fn group(&self) -> &Arc<Group> {
        self.0.om.group()
    }

    fn value(&self, s: &GroupElement, t: &GroupElement) -> Result<Complex<T>> {
        self.0.l_value(s, t)
    }
}

/// `|⟨f⋆g, h⟩ − ⟨f·u, ξ(g,h)⟩ − ⟨g·v, η(f,h)⟩|` after verifying the
/// factorization on `supp f × supp g`.
pub fn splitting_residual<T: Scalar>(
    factors: &SplitFactors<T>,
    f: &OrliczVector<T>,
    g: &OrliczVector<T>,
    h: &OrliczVector<T>,
) -> Result<T> {
    let support_pairs: Vec<_> = f.support().flat_map(|s| g.support().map(move |t| (s, t))).collect();
    factors.verify(support_pairs)?;
    let l = factors.kernel();
    let om = factors.cocycle();
    let lhs = pairing(&twisted_convolve(om, f, g)?, h);
    let fu = f.map(|s, z| Ok(z * factors.u.eval(s)?))?;
    let gv = g.map(|t, z| Ok(z * factors.v.eval(t)?))?;
    let rhs = pairing(&fu, &xi(&l, g, h)?) + pairing(&gv, &eta(&l, f, h)?);
    Ok((lhs - rhs).norm())
}

/// `Λ_ω(f) = f/ω`.
pub fn lambda_transform<T: Scalar>(w: &Weight<T>, f: &OrliczVector<T>) -> Result<OrliczVector<T>> {
    check_same_group(w.group(), f.group())?;
    f.map(|s, z| Ok(z / w.eval(s)?))
}

/// `Λ_ω⁻¹(f) = f·ω`.
pub fn lambda_inverse<T: Scalar>(w: &Weight<T>, f: &OrliczVector<T>) -> Result<OrliczVector<T>> {
    check_same_group(w.group(), f.group())?;
    f.map(|s, z| Ok(z * w.eval(s)?))
}

/// `‖Λ_ω(f ⋆_Ω g) − Λ_ω(f) ∗ Λ_ω(g)‖₁` with `Ω` the coboundary of `ω`.
pub fn lambda_intertwining_residual<T: Scalar>(
    w: &Weight<T>,
    f: &OrliczVector<T>,
    g: &OrliczVector<T>,
) -> Result<T> {
    let om = Cocycle::coboundary_from_weight(w);
    let left = lambda_transform(w, &twisted_convolve(&om, f, g)?)?;
    let right = convolve(&lambda_transform(w, f)?, &lambda_transform(w, g)?)?;
    Ok(left.sub(&right)?.l1_norm())
}

/// Sum of amplitudes.
pub fn augmentation<T: Scalar>(f: &OrliczVector<T>) -> Complex<T> {
    f.iter().fold(Complex::new(T::zero(), T::zero()), |a, (_, z)| a + z)
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitReport<T> {
    /// `max ‖δ_e ⋆ f − f‖₁`
    pub left: T,
    /// `max ‖f ⋆ δ_e − f‖₁`
    pub right: T,
}

/// Checks that `δ_e` is a two-sided unit on the supplied vectors.
pub fn unit_check<T: Scalar>(om: &Cocycle<T>, samples: &[OrliczVector<T>]) -> Result<UnitReport<T>> {
    let e = OrliczVector::delta(Arc::clone(om.group()), om.group().identity())?;
    let mut report = UnitReport { left: T::zero(), right: T::zero() };
    for f in samples {
        report.left = report.left.max(twisted_convolve(om, &e, f)?.sub(f)?.l1_norm());
        report.right = report.right.max(twisted_convolve(om, f, &e)?.sub(f)?.l1_norm());
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeSpec {
    pub radii: Vec<u32>,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeRow<T> {
    pub radius: u32,
    /// Largest observed `‖f⋆g‖_Φ / (‖f‖_Φ‖g‖_Φ)`: an empirical lower bound
    /// for the algebra constant, not the constant itself.
    pub c_hat: T,
    pub samples: usize,
}

/// Samples random pairs supported in each ball and records the largest norm
/// ratio. Pair `i` at radius index `j` draws from stream `j·samples + i`, so
/// the result does not depend on evaluation order.
pub fn submultiplicativity_probe<T: Scalar>(
    pair: &ComplementaryPair<T>,
    om: &Cocycle<T>,
    spec: &ProbeSpec,
) -> Result<Vec<ProbeRow<T>>> {
    let group = om.group();
    spec.radii
        .iter()
        .enumerate()
        .map(|(j, &radius)| {
            let ball = group.ball(radius)?;
            let mut c_hat = T::zero();
            for i in 0..spec.samples {
                let mut rng = seeded_rng(spec.seed, (j * spec.samples + i) as u64);
                let f = random_vector::<T, _>(group, &ball, MAX_RANDOM_SUPPORT, &mut rng)?;
                let g = random_vector::<T, _>(group, &ball, MAX_RANDOM_SUPPORT, &mut rng)?;
                let ratio = norm_ratio(pair, om, &f, &g)?;
                c_hat = c_hat.max(ratio);
            }
            Ok(ProbeRow { radius, c_hat, samples: spec.samples })
        })
        .collect()
}

/// `‖f⋆g‖_Φ / (‖f‖_Φ‖g‖_Φ)`.
pub fn norm_ratio<T: Scalar>(
    pair: &ComplementaryPair<T>,
    om: &Cocycle<T>,
    f: &OrliczVector<T>,
    g: &OrliczVector<T>,
) -> Result<T> {
    let fg = twisted_convolve(om, f, g)?;
    Ok(orlicz_norm(pair, &fg)? / (orlicz_norm(pair, f)? * orlicz_norm(pair, g)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::cocycle_identity_residual;
    use crate::young::catalog;

    type V = OrliczVector<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn sign_cocycle() -> (Arc<Group>, Cocycle<f64>) {
        let g = Arc::new(Group::cyclic(2).unwrap());
        let one = g.element(vec![1]).unwrap();
        let om = Cocycle::from_fn(g.clone(), "sign", move |s, t| {
            Ok(if *s == one && *t == one { c(-1.0, 0.0) } else { c(1.0, 0.0) })
        });
        (g, om)
    }

    fn delta(g: &Arc<Group>, coords: &[i64]) -> V {
        OrliczVector::delta(g.clone(), g.element(coords.to_vec()).unwrap()).unwrap()
    }

    fn naive_convolve(om: &Cocycle<f64>, f: &V, g: &V, ball: &[GroupElement]) -> V {
        let group = om.group();
        let mut entries = Vec::new();
        for t in ball {
            let mut acc = c(0.0, 0.0);
            for s in ball {
                let r = group.multiply(&group.invert(s).unwrap(), t).unwrap();
                acc += f.get(s) * g.get(&r) * om.eval(s, &r).unwrap();
            }
            entries.push((t.clone(), acc));
        }
        OrliczVector::from_entries(group.clone(), entries).unwrap()
    }

    #[test]
    fn sign_cocycle_examples() {
        let (g, om) = sign_cocycle();
        assert_eq!(cocycle_identity_residual(&om, 2).unwrap(), 0.0);
        let one = delta(&g, &[1]);
        let out = twisted_convolve(&om, &one, &one).unwrap();
        assert_eq!(out.get(&g.identity()), c(-1.0, 0.0));
        assert_eq!(out.len(), 1);
        let plain = convolve(&one, &one).unwrap();
        assert_eq!(plain.get(&g.identity()), c(1.0, 0.0));

        // (g ⋆′ h)(s) = h(s·1) Ω(s, 1), supported at s = 1
        let act = module_action_left(&om, &one, &delta(&g, &[0])).unwrap();
        assert_eq!(act.len(), 1);
        assert_eq!(act.get(&g.element(vec![1]).unwrap()), c(-1.0, 0.0));
    }

    #[test]
    fn deltas_multiply_through_cocycle() {
        let g = Arc::new(Group::heisenberg());
        let w = Weight::polynomial(g.clone(), 1.0).unwrap();
        let om = Cocycle::coboundary_from_weight(&w);
        let ball = g.ball(2).unwrap();
        for s in ball.iter().step_by(3) {
            for t in ball.iter().step_by(5) {
                let ds = OrliczVector::delta(g.clone(), s.clone()).unwrap();
                let dt = OrliczVector::delta(g.clone(), t.clone()).unwrap();
                let out = twisted_convolve(&om, &ds, &dt).unwrap();
                let st = g.multiply(s, t).unwrap();
                assert_eq!(out.len(), 1);
                assert!((out.get(&st) - om.eval(s, t).unwrap()).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn matches_naive_double_loop() {
        let g = Arc::new(Group::cyclic(7).unwrap());
        let ball = g.ball(4).unwrap();
        let w = Weight::polynomial(g.clone(), 2.0).unwrap();
        let om = Cocycle::coboundary_from_weight(&w);
        let mut rng = seeded_rng(5, 0);
        for _ in 0..20 {
            let f = random_vector::<f64, _>(&g, &ball, 8, &mut rng).unwrap();
            let h = random_vector::<f64, _>(&g, &ball, 8, &mut rng).unwrap();
            let fast = twisted_convolve(&om, &f, &h).unwrap();
            let slow = naive_convolve(&om, &f, &h, &ball);
            assert!(fast.sub(&slow).unwrap().l1_norm() < 1e-13);

            // naive left action: (f ⋆′ h)(s) = Σ_t f(t) h(st) Ω(s, t)
            let left = module_action_left(&om, &f, &h).unwrap();
            let right = module_action_right(&om, &h, &f).unwrap();
            for s in &ball {
                let mut l = c(0.0, 0.0);
                let mut r = c(0.0, 0.0);
                for t in &ball {
                    l += f.get(t) * h.get(&g.multiply(s, t).unwrap()) * om.eval(s, t).unwrap();
                    r += f.get(t) * h.get(&g.multiply(t, s).unwrap()) * om.eval(t, s).unwrap();
                }
                assert!((left.get(s) - l).norm() < 1e-13);
                assert!((right.get(s) - r).norm() < 1e-13);
            }
            assert!(duality_residual(&om, &f, &h, &fast).unwrap() < 1e-12);
        }
    }

    #[test]
    fn kernel_group_mismatch() {
        let (_, om) = sign_cocycle();
        let other = delta(&Arc::new(Group::cyclic(3).unwrap()), &[1]);
        assert!(matches!(twisted_convolve(&om, &other, &other), Err(Error::GroupMismatch { .. })));
    }

    #[test]
    fn l1_and_unit() {
        let g = Arc::new(Group::free_abelian(2));
        let ball = g.ball(3).unwrap();
        let phase = Cocycle::bilinear_phase(g.clone(), vec![vec![0, 0], vec![1, 0]], 0.0).unwrap();
        let mut rng = seeded_rng(9, 1);
        let f = crate::random::random_nonnegative::<f64, _>(&g, &ball, 8, &mut rng).unwrap();
        let h = crate::random::random_nonnegative::<f64, _>(&g, &ball, 8, &mut rng).unwrap();
        assert!(l1_bound_gap(&phase, &f, &h, 1.0).unwrap().abs() < 1e-12);
        assert_eq!(l1_bound_gap(&phase, &f, &V::zero(g.clone()), 1.0).unwrap(), 0.0);
        let unit = unit_check(&phase, &[f, h]).unwrap();
        assert_eq!((unit.left, unit.right), (0.0, 0.0));
    }

    #[test]
    fn splitting_trivial_half_witness() {
        let g = Arc::new(Group::cyclic(5).unwrap());
        let om = Cocycle::<f64>::trivial(g.clone());
        let factors = SplitFactors::explicit(
            om.clone(),
            move |_, _| Ok(c(1.0, 0.0)),
            WitnessFn::Constant(0.5),
            WitnessFn::Constant(0.5),
        );
        let ball = g.ball(2).unwrap();
        let mut rng = seeded_rng(3, 0);
        let f = random_vector::<f64, _>(&g, &ball, 8, &mut rng).unwrap();
        let h1 = random_vector::<f64, _>(&g, &ball, 8, &mut rng).unwrap();
        let h2 = random_vector::<f64, _>(&g, &ball, 8, &mut rng).unwrap();
        assert!(splitting_residual(&factors, &f, &h1, &h2).unwrap() < 1e-12);

        let bad = SplitFactors::explicit(om, |_, _| Ok(c(2.0, 0.0)), WitnessFn::Constant(0.25), WitnessFn::Constant(0.25));
        assert!(matches!(splitting_residual(&bad, &f, &h1, &h2), Err(Error::SplitPrecondition { .. })));
    }

    #[test]
    fn xi_with_unit_kernel() {
        let g = Arc::new(Group::cyclic(7).unwrap());
        let om = Cocycle::<f64>::trivial(g.clone());
        let h = OrliczVector::from_real(g.clone(), [(g.element(vec![2]).unwrap(), 0.5), (g.element(vec![5]).unwrap(), -1.0)]).unwrap();
        let e = delta(&g, &[0]);
        let out = xi(&om, &e, &h).unwrap();
        assert!(out.sub(&h).unwrap().is_zero());
    }

    #[test]
    fn lambda_and_augmentation() {
        let g = Arc::new(Group::free_abelian(2));
        let w = Weight::polynomial(g.clone(), 1.0).unwrap();
        let s = delta(&g, &[1, 2]);
        let e = delta(&g, &[0, 0]);
        assert_eq!(augmentation(&s.sub(&e).unwrap()), c(0.0, 0.0));
        assert_eq!(augmentation(&V::zero(g.clone())), c(0.0, 0.0));
        let f = s.scale(c(2.0, -1.0));
        let back = lambda_inverse(&w, &lambda_transform(&w, &f).unwrap()).unwrap();
        assert!(back.sub(&f).unwrap().l1_norm() < 1e-15);
        assert!(lambda_intertwining_residual(&w, &f, &s).unwrap() < 1e-15);
    }

    #[test]
    fn probe_delta_ratio() {
        let g = Arc::new(Group::cyclic(5).unwrap());
        let pair = catalog::pair::<f64>("pnorm:2").unwrap();
        let om = Cocycle::trivial(g.clone());
        let d = delta(&g, &[1]);
        // all deltas share one norm, so the ratio is |Ω|/‖δ‖
        let r = norm_ratio(&pair, &om, &d, &delta(&g, &[3])).unwrap();
        assert!((r - 1.0 / 2f64.sqrt()).abs() < 1e-10);
        let spec = ProbeSpec { radii: vec![1, 2], samples: 10, seed: 42 };
        let a = submultiplicativity_probe(&pair, &om, &spec).unwrap();
        let b = submultiplicativity_probe(&pair, &om, &spec).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|row| row.c_hat.is_finite() && row.c_hat > 0.0));
    }
}
