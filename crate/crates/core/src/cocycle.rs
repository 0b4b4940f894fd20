//! Normalized 2-cocycles `Ω: G × G → ℂ*`.
//!
//! Cocycles are evaluators tied to a group. Constructors cover the trivial
//! cocycle, coboundaries `ω(st)/(ω(s)ω(t))` of weights, bilinear phases on
//! `ℤᵈ`, pointwise products and polar factors.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::group::{Group, GroupElement, GroupKind, Weight, WeightKind};
use crate::scalar::Scalar;

pub type CocycleFn<T> = Arc<dyn Fn(&GroupElement, &GroupElement) -> Result<Complex<T>> + Send + Sync>;
pub type ElementFn<T> = Arc<dyn Fn(&GroupElement) -> Result<T> + Send + Sync>;

#[derive(Clone)]
pub enum Construction<T> {
    Trivial,
    Coboundary(Weight<T>),
    /// `exp(iθ · xᵀBy)`
    BilinearPhase { matrix: Vec<Vec<i64>>, theta: T },
    Product(Box<Cocycle<T>>, Box<Cocycle<T>>),
    /// `|Ω|`
    Modulus(Box<Cocycle<T>>),
    /// `Ω / |Ω|`
    Phase(Box<Cocycle<T>>),
    Custom { name: String, f: CocycleFn<T> },
}

#[derive(Clone)]
pub struct Cocycle<T> {
    group: Arc<Group>,
    construction: Construction<T>,
}

impl<T: Scalar> fmt::Debug for Cocycle<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cocycle({} on {})", self.describe(), self.group)
    }
}

impl<T: Scalar> Cocycle<T> {
    pub fn trivial(group: Arc<Group>) -> Self {
        Self { group, construction: Construction::Trivial }
    }

    /// The real positive coboundary `ω(st) / (ω(s) ω(t))`.
    pub fn coboundary_from_weight(w: &Weight<T>) -> Self {
        Self {
            group: Arc::clone(w.group()),
            construction: Construction::Coboundary(w.clone()),
        }
    }

    /// `Ω(x, y) = exp(iθ · xᵀBy)` on `ℤᵈ`; a cocycle because the exponent is
    /// bilinear.
    pub fn bilinear_phase(group: Arc<Group>, matrix: Vec<Vec<i64>>, theta: T) -> Result<Self> {
        let d = match group.kind() {
            GroupKind::FreeAbelian(d) => d,
            other => return Err(Error::NotFreeAbelian(other.to_string())),
        };
        if matrix.len() != d || matrix.iter().any(|row| row.len() != d) {
            return Err(Error::MatrixShape { expected: d });
        }
        Ok(Self {
            group,
            construction: Construction::BilinearPhase { matrix, theta },
        })
    }

    /// A cocycle from an arbitrary evaluator; its cocycle identity is not
    /// assumed and should be checked with [`cocycle_identity_residual`].
    pub fn from_fn<F>(group: Arc<Group>, name: impl Into<String>, f: F) -> Self
    where
        F: Fn(&GroupElement, &GroupElement) -> Result<Complex<T>> + Send + Sync + 'static,
    {
        Self {
            group,
            construction: Construction::Custom { name: name.into(), f: Arc::new(f) },
        }
    }

    /// Pointwise product `Ω₁Ω₂`.
    pub fn product(&self, other: &Cocycle<T>) -> Result<Self> {
        if self.group.kind() != other.group.kind() {
            return Err(Error::InvalidParameter(format!(
                "cannot multiply cocycles on {} and {}",
                self.group, other.group
            )));
        }
        Ok(Self {
            group: Arc::clone(&self.group),
            construction: Construction::Product(Box::new(self.clone()), Box::new(other.clone())),
        })
    }

    /// Parses `trivial`, a weight spec (its coboundary), `phase:<θ>` (the
    /// lower-triangular unit matrix on `ℤ²`), `phase:<θ>:<row;row>` with
    /// comma-separated rows, or a `&`-separated product of these.
    pub fn parse(group: Arc<Group>, spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Some((a, b)) = spec.split_once('&') {
            return Self::parse(Arc::clone(&group), a)?.product(&Self::parse(group, b)?);
        }
        if spec == "trivial" {
            return Ok(Self::trivial(group));
        }
        if let Some(rest) = spec.strip_prefix("phase:") {
            let (theta, matrix) = match rest.split_once(':') {
                Some((t, m)) => (t, Some(m)),
                None => (rest, None),
            };
            let theta: f64 = theta
                .parse()
                .map_err(|_| Error::Parse(format!("bad phase angle in {spec:?}")))?;
            let matrix = match matrix {
                Some(m) => m
                    .split(';')
                    .map(|row| {
                        row.split(',')
                            .map(|x| x.trim().parse::<i64>())
                            .collect::<std::result::Result<Vec<_>, _>>()
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::Parse(format!("bad phase matrix in {spec:?}")))?,
                None => {
                    let d = group.arity();
                    let mut m = vec![vec![0; d]; d];
                    if d >= 2 {
                        m[1][0] = 1;
                    }
                    m
                }
            };
            return Self::bilinear_phase(group, matrix, T::lit(theta));
        }
        let w = Weight::parse(Arc::clone(&group), spec)?;
        Ok(Self::coboundary_from_weight(&w))
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn construction(&self) -> &Construction<T> {
        &self.construction
    }

    pub fn describe(&self) -> String {
        match &self.construction {
            Construction::Trivial => "trivial".into(),
            Construction::Coboundary(w) => format!("coboundary({})", w.kind()),
            Construction::BilinearPhase { matrix, theta } => format!("phase({theta}, {matrix:?})"),
            Construction::Product(a, b) => format!("{} * {}", a.describe(), b.describe()),
            Construction::Modulus(a) => format!("|{}|", a.describe()),
            Construction::Phase(a) => format!("arg({})", a.describe()),
            Construction::Custom { name, .. } => name.clone(),
        }
    }

    pub fn eval(&self, s: &GroupElement, t: &GroupElement) -> Result<Complex<T>> {
        self.group.check(s)?;
        self.group.check(t)?;
        self.eval_unchecked(s, t)
    }

    fn eval_unchecked(&self, s: &GroupElement, t: &GroupElement) -> Result<Complex<T>> {
        Ok(match &self.construction {
            Construction::Trivial => Complex::new(T::one(), T::zero()),
            Construction::Coboundary(w) => {
                let st = self.group.mul(s, t);
                Complex::new(w.eval(&st)? / (w.eval(s)? * w.eval(t)?), T::zero())
            }
            Construction::BilinearPhase { matrix, theta } => {
                let (x, y) = (s.coords(), t.coords());
                let mut e = 0i64;
                for (i, row) in matrix.iter().enumerate() {
                    for (j, b) in row.iter().enumerate() {
                        e += x[i] * b * y[j];
                    }
                }
                Complex::from_polar(T::one(), *theta * T::from_i64(e).unwrap())
            }
            Construction::Product(a, b) => a.eval_unchecked(s, t)? * b.eval_unchecked(s, t)?,
            Construction::Modulus(a) => {
                let z = a.eval_unchecked(s, t)?;
                Complex::new(nonzero(z, s, t)?.norm(), T::zero())
            }
            Construction::Phase(a) => {
                let z = nonzero(a.eval_unchecked(s, t)?, s, t)?;
                z / z.norm()
            }
            Construction::Custom { f, .. } => f(s, t)?,
        })
    }

    /// The weight whose coboundary equals `|Ω|`, when the construction
    /// exposes one. `Some(None)` means `|Ω| ≡ 1`.
    pub fn modulus_weight(&self) -> Option<Option<Weight<T>>> {
        match &self.construction {
            Construction::Trivial | Construction::BilinearPhase { .. } | Construction::Phase(_) => Some(None),
            Construction::Coboundary(w) => Some(Some(w.clone())),
            Construction::Modulus(a) => a.modulus_weight(),
            Construction::Product(a, b) => match (a.modulus_weight()?, b.modulus_weight()?) {
                (None, None) => Some(None),
                (Some(w), None) | (None, Some(w)) => Some(Some(w)),
                (Some(w1), Some(w2)) => Some(Some(w1.product(&w2))),
            },
            Construction::Custom { .. } => None,
        }
    }
}

fn nonzero<T: Scalar>(z: Complex<T>, s: &GroupElement, t: &GroupElement) -> Result<Complex<T>> {
    if z.norm() == T::zero() || z.re.is_nan() || z.im.is_nan() {
        return Err(Error::ZeroCocycleValue { s: s.to_string(), t: t.to_string() });
    }
    Ok(z)
}

/// `max |Ω(r,s)Ω(rs,t) − Ω(s,t)Ω(r,st)|` over triples in the ball.
pub fn cocycle_identity_residual<T: Scalar>(om: &Cocycle<T>, radius: u32) -> Result<T> {
    let g = om.group();
    let ball = g.ball(radius)?;
    let mut worst = T::zero();
    for r in &ball {
        for s in &ball {
            let rs = g.mul(r, s);
            let lhs_head = om.eval_unchecked(r, s)?;
            for t in &ball {
                let lhs = lhs_head * om.eval_unchecked(&rs, t)?;
                let rhs = om.eval_unchecked(s, t)? * om.eval_unchecked(r, &g.mul(s, t))?;
                worst = worst.max((lhs - rhs).norm());
            }
        }
    }
    Ok(worst)
}

/// `max |Ω(g,e) − 1| + |Ω(e,g) − 1|` over the ball.
pub fn normalization_residual<T: Scalar>(om: &Cocycle<T>, radius: u32) -> Result<T> {
    let g = om.group();
    let e = g.identity();
    let one = Complex::new(T::one(), T::zero());
    let mut worst = T::zero();
    for x in g.ball(radius)? {
        let r = (om.eval_unchecked(&x, &e)? - one).norm() + (om.eval_unchecked(&e, &x)? - one).norm();
        worst = worst.max(r);
    }
    Ok(worst)
}

/// `max |Ω(s,t)|` over pairs in the ball.
pub fn sup_norm_estimate<T: Scalar>(om: &Cocycle<T>, radius: u32) -> Result<T> {
    let ball = om.group().ball(radius)?;
    let mut sup = T::zero();
    for s in &ball {
        for t in &ball {
            sup = sup.max(om.eval_unchecked(s, t)?.norm());
        }
    }
    Ok(sup)
}

/// `Ω = |Ω| · Ω_T` with `|Ω|` positive and `Ω_T` unimodular. Zero values
/// surface as [`Error::ZeroCocycleValue`] when either factor is evaluated.
pub fn polar_decompose<T: Scalar>(om: &Cocycle<T>) -> (Cocycle<T>, Cocycle<T>) {
    let modulus = Cocycle {
        group: Arc::clone(om.group()),
        construction: Construction::Modulus(Box::new(om.clone())),
    };
    let phase = Cocycle {
        group: Arc::clone(om.group()),
        construction: Construction::Phase(Box::new(om.clone())),
    };
    (modulus, phase)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CocycleReport<T> {
    pub identity_residual: T,
    pub normalization_residual: T,
    pub min_modulus: T,
    pub sup_norm: T,
    /// Continuity of the phase is automatic on discrete groups.
    pub phase_continuous: bool,
}

pub fn cocycle_report<T: Scalar>(om: &Cocycle<T>, radius: u32) -> Result<CocycleReport<T>> {
    let ball = om.group().ball(radius)?;
    let mut min_modulus = T::infinity();
    for s in &ball {
        for t in &ball {
            min_modulus = min_modulus.min(om.eval_unchecked(s, t)?.norm());
        }
    }
    Ok(CocycleReport {
        identity_residual: cocycle_identity_residual(om, radius)?,
        normalization_residual: normalization_residual(om, radius)?,
        min_modulus,
        sup_norm: sup_norm_estimate(om, radius)?,
        phase_continuous: true,
    })
}

/// A nonnegative function on the group used on one side of `|Ω(s,t)| ≤ u(s) + v(t)`.
#[derive(Clone)]
pub enum WitnessFn<T> {
    Constant(T),
    /// `scale / ω(s)`
    InverseWeight { scale: T, weight: Weight<T> },
    Custom { name: String, f: ElementFn<T> },
}

impl<T: fmt::Debug> fmt::Debug for WitnessFn<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessFn::Constant(c) => write!(f, "{c:?}"),
            WitnessFn::InverseWeight { scale, weight } => write!(f, "{scale:?}/{:?}", weight.kind()),
            WitnessFn::Custom { name, .. } => write!(f, "{name}"),
        }
    }
}

impl<T: Scalar> WitnessFn<T> {
    pub fn custom<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(&GroupElement) -> Result<T> + Send + Sync + 'static,
    {
        WitnessFn::Custom { name: name.into(), f: Arc::new(f) }
    }

    pub fn eval(&self, s: &GroupElement) -> Result<T> {
        match self {
            WitnessFn::Constant(c) => Ok(*c),
            WitnessFn::InverseWeight { scale, weight } => Ok(*scale / weight.eval(s)?),
            WitnessFn::Custom { f, .. } => f(s),
        }
    }
}

/// Functions `u, v` with `|Ω(s,t)| ≤ u(s) + v(t)` checked on every pair of
/// the verified ball.
#[derive(Debug, Clone)]
pub struct DecompositionWitness<T> {
    pub u: WitnessFn<T>,
    pub v: WitnessFn<T>,
    pub verified_radius: u32,
    /// `max |Ω(s,t)| − u(s) − v(t)` over the ball; `≤ 0` on success.
    pub max_violation: T,
}

#[derive(Debug, Clone)]
pub enum WitnessHint<T> {
    /// Derive candidates from the weight underlying `|Ω|`.
    FromWeight,
    /// Verify user-supplied functions.
    Candidate { u: WitnessFn<T>, v: WitnessFn<T> },
}

/// Finds and verifies a decomposition witness on the ball of `radius`.
///
/// From a weight: `ω_β` gives `u = v = 2^β/ω_β`; `σ_{α,C}` gives
/// `u = v = 1/σ_{α,C(2−2^α)}`; `ρ_{γ,C}` tries `u = v = κ/ρ_{γ,C'}` over
/// `κ ∈ {1,2,4,8}`, `C' ∈ C·{0.1,…,0.9}`; unimodular cocycles use `u = v = 1`.
pub fn decomposition_witness<T: Scalar>(
    om: &Cocycle<T>,
    hint: WitnessHint<T>,
    radius: u32,
) -> Result<DecompositionWitness<T>> {
    let candidates: Vec<(WitnessFn<T>, WitnessFn<T>)> = match hint {
        WitnessHint::Candidate { u, v } => vec![(u, v)],
        WitnessHint::FromWeight => {
            let weight = om.modulus_weight().ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "{} exposes no weight; supply a candidate witness",
                    om.describe()
                ))
            })?;
            weight_candidates(om.group(), weight)?
        }
    };

    let ball = om.group().ball(radius)?;
    let mut worst: Option<(T, GroupElement, GroupElement)> = None;
    for (u, v) in candidates {
        let (violation, s, t) = max_violation(om, &u, &v, &ball)?;
        if violation <= T::zero() {
            return Ok(DecompositionWitness { u, v, verified_radius: radius, max_violation: violation });
        }
        if worst.as_ref().map_or(true, |w| violation < w.0) {
            worst = Some((violation, s, t));
        }
    }
    let (violation, s, t) = worst.expect("at least one candidate");
    Err(Error::NoWitness {
        radius,
        s: s.to_string(),
        t: t.to_string(),
        violation: violation.as_f64(),
    })
}

fn weight_candidates<T: Scalar>(
    group: &Arc<Group>,
    weight: Option<Weight<T>>,
) -> Result<Vec<(WitnessFn<T>, WitnessFn<T>)>> {
    let inverse = |scale: T, kind: WeightKind<T>| -> Result<WitnessFn<T>> {
        Ok(WitnessFn::InverseWeight { scale, weight: Weight::new(Arc::clone(group), kind)? })
    };
    let Some(weight) = weight else {
        return Ok(vec![(WitnessFn::Constant(T::one()), WitnessFn::Constant(T::one()))]);
    };
    let two = T::lit(2.0);
    Ok(match weight.kind().clone() {
        WeightKind::Trivial => vec![(WitnessFn::Constant(T::one()), WitnessFn::Constant(T::one()))],
        WeightKind::Polynomial { beta } => {
            let u = inverse(two.powf(beta), WeightKind::Polynomial { beta })?;
            vec![(u.clone(), u)]
        }
        WeightKind::SubexpAlpha { alpha, c } => {
            let c2 = c * (two - two.powf(alpha));
            let u = inverse(T::one(), WeightKind::SubexpAlpha { alpha, c: c2 })?;
            vec![(u.clone(), u)]
        }
        WeightKind::SubexpLog { gamma, c } => {
            let mut out = Vec::new();
            for kappa in [1.0, 2.0, 4.0, 8.0] {
                for tenth in 1..=9 {
                    let c2 = c * T::lit(tenth as f64 / 10.0);
                    let u = inverse(T::lit(kappa), WeightKind::SubexpLog { gamma, c: c2 })?;
                    out.push((u.clone(), u));
                }
            }
            out
        }
        WeightKind::Product(..) => {
            return Err(Error::InvalidParameter(format!(
                "no automatic witness for product weight {}; supply a candidate",
                weight.kind()
            )))
        }
    })
}

fn max_violation<T: Scalar>(
    om: &Cocycle<T>,
    u: &WitnessFn<T>,
    v: &WitnessFn<T>,
    ball: &[GroupElement],
) -> Result<(T, GroupElement, GroupElement)> {
    let us = ball.iter().map(|s| u.eval(s)).collect::<Result<Vec<T>>>()?;
    let vs = ball.iter().map(|t| v.eval(t)).collect::<Result<Vec<T>>>()?;
    let mut worst = (T::neg_infinity(), ball[0].clone(), ball[0].clone());
    for (s, &us) in ball.iter().zip(&us) {
        for (t, &vt) in ball.iter().zip(&vs) {
            let gap = om.eval_unchecked(s, t)?.norm() - us - vt;
            if gap > worst.0 {
                worst = (gap, s.clone(), t.clone());
            }
        }
    }
    Ok(worst)
}
