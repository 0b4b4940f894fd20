use std::fmt;
use std::sync::Arc;

use super::{Group, GroupElement};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Weight families built from the word length `τ`.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightKind<T> {
    Trivial,
    /// `(1 + τ)^β`
    Polynomial { beta: T },
    /// `exp(C τ^α)`, `0 < α < 1`
    SubexpAlpha { alpha: T, c: T },
    /// `exp(C τ / ln(1 + τ)^γ)`, with value 1 at `τ = 0`
    SubexpLog { gamma: T, c: T },
    Product(Box<WeightKind<T>>, Box<WeightKind<T>>),
}

impl<T: Scalar> WeightKind<T> {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match self {
            WeightKind::Trivial => Ok(()),
            WeightKind::Polynomial { beta } if !(*beta > T::zero()) => {
                bad(format!("polynomial weight needs beta > 0, got {beta}"))
            }
            WeightKind::SubexpAlpha { alpha, c } if !(*alpha > T::zero() && *alpha < T::one() && *c > T::zero()) => {
                bad(format!("subexponential weight needs 0 < alpha < 1 and C > 0, got alpha={alpha}, C={c}"))
            }
            WeightKind::SubexpLog { gamma, c } if !(*gamma > T::zero() && *c > T::zero()) => {
                bad(format!("log-subexponential weight needs gamma > 0 and C > 0, got gamma={gamma}, C={c}"))
            }
            WeightKind::Product(a, b) => {
                a.validate()?;
                b.validate()
            }
            _ => Ok(()),
        }
    }

    /// Weight value as a function of the word length.
    pub fn from_length(&self, tau: u32) -> T {
        let t = T::from_u32(tau).unwrap();
        match self {
            WeightKind::Trivial => T::one(),
            WeightKind::Polynomial { beta } => (T::one() + t).powf(*beta),
            WeightKind::SubexpAlpha { alpha, c } => (*c * t.powf(*alpha)).exp(),
            WeightKind::SubexpLog { gamma, c } => {
                if tau == 0 {
                    T::one()
                } else {
                    (*c * t / t.ln_1p().powf(*gamma)).exp()
                }
            }
            WeightKind::Product(a, b) => a.from_length(tau) * b.from_length(tau),
        }
    }

    /// Parses `trivial`, `poly:<β>`, `subexp:<α>:<C>`, `sublog:<γ>:<C>`,
    /// or a `*`-separated product of these.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Some((a, b)) = spec.split_once('*') {
            return Ok(WeightKind::Product(Box::new(Self::parse(a)?), Box::new(Self::parse(b)?)));
        }
        let parts: Vec<&str> = spec.split(':').collect();
        let num = |s: &str| -> Result<T> {
            s.trim()
                .parse::<f64>()
                .map(T::lit)
                .map_err(|_| Error::Parse(format!("bad number {s:?} in weight {spec:?}")))
        };
        let kind = match parts.as_slice() {
            ["trivial"] => WeightKind::Trivial,
            ["poly", b] => WeightKind::Polynomial { beta: num(b)? },
            ["subexp", a, c] => WeightKind::SubexpAlpha { alpha: num(a)?, c: num(c)? },
            ["sublog", g, c] => WeightKind::SubexpLog { gamma: num(g)?, c: num(c)? },
            _ => {
                return Err(Error::Parse(format!(
                    "unknown weight {spec:?}; expected trivial, poly:<b>, subexp:<a>:<c> or sublog:<g>:<c>"
                )))
            }
        };
        kind.validate()?;
        Ok(kind)
    }
}

impl<T: Scalar> fmt::Display for WeightKind<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightKind::Trivial => write!(f, "trivial"),
            WeightKind::Polynomial { beta } => write!(f, "poly:{beta}"),
            WeightKind::SubexpAlpha { alpha, c } => write!(f, "subexp:{alpha}:{c}"),
            WeightKind::SubexpLog { gamma, c } => write!(f, "sublog:{gamma}:{c}"),
            WeightKind::Product(a, b) => write!(f, "{a}*{b}"),
        }
    }
}

/// A strictly positive function on the group with `ω(e) = 1`.
#[derive(Clone)]
pub struct Weight<T> {
    kind: WeightKind<T>,
    group: Arc<Group>,
}

impl<T: Scalar> fmt::Debug for Weight<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weight({} on {})", self.kind, self.group)
    }
}

impl<T> Weight<T> {
    pub fn kind(&self) -> &WeightKind<T> {
        &self.kind
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }
}

impl<T: Scalar> Weight<T> {
    pub fn new(group: Arc<Group>, kind: WeightKind<T>) -> Result<Self> {
        kind.validate()?;
        Ok(Self { kind, group })
    }

    pub fn trivial(group: Arc<Group>) -> Self {
        Self { kind: WeightKind::Trivial, group }
    }

    pub fn polynomial(group: Arc<Group>, beta: T) -> Result<Self> {
        Self::new(group, WeightKind::Polynomial { beta })
    }

    pub fn subexp_alpha(group: Arc<Group>, alpha: T, c: T) -> Result<Self> {
        Self::new(group, WeightKind::SubexpAlpha { alpha, c })
    }

    pub fn subexp_log(group: Arc<Group>, gamma: T, c: T) -> Result<Self> {
        Self::new(group, WeightKind::SubexpLog { gamma, c })
    }

    pub fn parse(group: Arc<Group>, spec: &str) -> Result<Self> {
        Ok(Self { kind: WeightKind::parse(spec)?, group })
    }

    /// Pointwise product `ω₁·ω₂`.
    pub fn product(&self, other: &Weight<T>) -> Self {
        Self {
            kind: WeightKind::Product(Box::new(self.kind.clone()), Box::new(other.kind.clone())),
            group: Arc::clone(&self.group),
        }
    }

    pub fn eval(&self, g: &GroupElement) -> Result<T> {
        if self.kind == WeightKind::Trivial {
            self.group.check(g)?;
            return Ok(T::one());
        }
        Ok(self.kind.from_length(self.group.word_length(g)?))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightReport<T> {
    pub identity_ok: bool,
    /// `1/ω ≤ 1` on the probed ball.
    pub inverse_bounded: bool,
    pub inverse_sup: T,
    /// `max ω(st) / (ω(s) ω(t))` over pairs in the ball.
    pub submult_sup: T,
}

pub fn weight_axioms_report<T: Scalar>(w: &Weight<T>, radius: u32) -> Result<WeightReport<T>> {
    let group = w.group();
    let ball = group.ball(radius)?;
    let values = ball.iter().map(|g| w.eval(g)).collect::<Result<Vec<T>>>()?;
    let identity_ok = (w.eval(&group.identity())? - T::one()).abs() <= T::epsilon();
    let inverse_sup = values.iter().map(|&v| T::one() / v).fold(T::zero(), T::max);
    let mut submult_sup = T::zero();
    for (s, &ws) in ball.iter().zip(&values) {
        for (t, &wt) in ball.iter().zip(&values) {
            let st = group.mul(s, t);
            submult_sup = submult_sup.max(w.eval(&st)? / (ws * wt));
        }
    }
    Ok(WeightReport {
        identity_ok,
        inverse_bounded: inverse_sup <= T::one(),
        inverse_sup,
        submult_sup,
    })
}
