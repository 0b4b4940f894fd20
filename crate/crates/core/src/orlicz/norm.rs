use num_complex::Complex;

use super::OrliczVector;
use crate::error::{Error, Result};
use crate::group::Weight;
use crate::numeric::{bisect_decreasing, bisect_increasing, golden_section_min, MAX_BISECTION_STEPS};
use crate::scalar::Scalar;
use crate::young::{ComplementaryPair, YoungFunction};

/// Bisection on the modular stops once `|modular − 1|` falls below this.
pub const MODULAR_STOP: f64 = 1e-12;
/// Largest relative gap tolerated between the two Orlicz-norm methods.
pub const METHOD_AGREEMENT_TOL: f64 = 1e-5;

/// Overflowing evaluations count as `+∞`.
fn saturate<T: Scalar>(r: Result<T>) -> Result<T> {
    match r {
        Err(Error::BracketOverflow { .. }) => Ok(T::infinity()),
        Ok(v) if v.is_nan() => Ok(T::infinity()),
        other => other,
    }
}

/// `Σ Φ(c·aᵢ)`, saturating at `+∞`.
pub fn modular_scaled<T: Scalar>(phi: &YoungFunction<T>, mags: &[T], c: T) -> Result<T> {
    let mut total = T::zero();
    for &a in mags {
        total = total + saturate(phi.eval(c * a))?;
        if total == T::infinity() {
            break;
        }
    }
    Ok(total)
}

/// `Σ_s Φ(|f(s)|)` for counting measure; `+∞` flags overflow.
pub fn modular<T: Scalar>(phi: &YoungFunction<T>, f: &OrliczVector<T>) -> Result<T> {
    modular_scaled(phi, &f.magnitudes(), T::one())
}

/// Finds `[lo, hi]` with `g(lo) ≥ 1 ≥ g(hi)` for a nonincreasing `g`,
/// starting from `start > 0` and doubling/halving.
fn unit_bracket<T, G>(mut g: G, start: T) -> Result<(T, T)>
where
    T: Scalar,
    G: FnMut(T) -> Result<T>,
{
    let two = T::lit(2.0);
    let mut hi = start;
    let mut steps = 0;
    while g(hi)? > T::one() {
        hi = hi * two;
        steps += 1;
        if steps > MAX_BISECTION_STEPS || !hi.is_finite() {
            return Err(Error::LuxemburgBracket(MAX_BISECTION_STEPS));
        }
    }
    let mut lo = start;
    steps = 0;
    while g(lo)? < T::one() {
        lo = lo / two;
        steps += 1;
        if steps > MAX_BISECTION_STEPS || lo == T::zero() {
            return Err(Error::LuxemburgBracket(MAX_BISECTION_STEPS));
        }
    }
    Ok((lo, hi))
}

fn max_of<T: Scalar>(mags: &[T]) -> T {
    mags.iter().copied().fold(T::zero(), T::max)
}

/// `inf{k > 0 : Σ Φ(aᵢ/k) ≤ 1}` over magnitudes `aᵢ`.
pub fn luxemburg_of<T: Scalar>(phi: &YoungFunction<T>, mags: &[T]) -> Result<T> {
    let top = max_of(mags);
    if top == T::zero() {
        return Ok(T::zero());
    }
    let m = |k: T| modular_scaled(phi, mags, T::one() / k);
    let (lo, hi) = unit_bracket(m, top)?;
    bisect_decreasing(m, lo, hi, T::one(), T::lit(MODULAR_STOP))
}

/// Luxemburg norm `N_Φ(f)`.
pub fn luxemburg_norm<T: Scalar>(phi: &YoungFunction<T>, f: &OrliczVector<T>) -> Result<T> {
    luxemburg_of(phi, &f.magnitudes())
}

/// `(Ψ′)⁻¹`, which equals `Φ′` when that is available.
fn dual_maximizer<T: Scalar>(pair: &ComplementaryPair<T>) -> Result<Box<dyn Fn(T) -> Result<T> + '_>> {
    if pair.phi.has_derivative() {
        return Ok(Box::new(|x: T| pair.phi.derivative(x).expect("checked")));
    }
    if pair.psi.has_derivative() {
        return Ok(Box::new(|x: T| {
            if x <= T::zero() {
                return Ok(T::zero());
            }
            let dpsi = |v: T| saturate(pair.psi.derivative(v).expect("checked"));
            let cap = T::lit(1e30);
            let mut hi = T::one();
            while dpsi(hi)? < x {
                if hi >= cap {
                    return Err(Error::BracketOverflow { y: x.as_f64(), cap: cap.as_f64() });
                }
                hi = hi * T::lit(2.0);
            }
            bisect_increasing(dpsi, T::zero(), hi, x)
        }));
    }
    Err(Error::MissingDerivative(pair.name()))
}

/// Orlicz norm by stationarity: the maximizing `v` has `vᵢ = (Ψ′)⁻¹(aᵢ/λ)`
/// with `λ` chosen so that `Σ Ψ(vᵢ) = 1`.
pub fn orlicz_stationarity_of<T: Scalar>(pair: &ComplementaryPair<T>, mags: &[T]) -> Result<T> {
    let top = max_of(mags);
    if top == T::zero() {
        return Ok(T::zero());
    }
    let w = dual_maximizer(pair)?;
    let constraint = |lambda: T| -> Result<T> {
        let mut total = T::zero();
        for &a in mags {
            let v = saturate(w(a / lambda))?;
            if v == T::infinity() {
                return Ok(T::infinity());
            }
            total = total + saturate(pair.psi.eval(v))?;
        }
        Ok(total)
    };
    let (lo, hi) = unit_bracket(constraint, top)?;
    let lambda = bisect_decreasing(constraint, lo, hi, T::one(), T::lit(MODULAR_STOP))?;
    let mut value = T::zero();
    for &a in mags {
        value = value + a * w(a / lambda)?;
    }
    Ok(value)
}

/// Orlicz norm as `min_{t>0} t (1 + Σ Φ(aᵢ/t))`, minimized by golden section.
pub fn orlicz_one_dimensional_of<T: Scalar>(phi: &YoungFunction<T>, mags: &[T]) -> Result<T> {
    let top = max_of(mags);
    if top == T::zero() {
        return Ok(T::zero());
    }
    let obj = |t: T| -> Result<T> {
        let v = t * (T::one() + modular_scaled(phi, mags, T::one() / t)?);
        Ok(if v.is_finite() { v } else { T::infinity() })
    };
    let two = T::lit(2.0);
    let mut t = luxemburg_of(phi, mags)?;
    let mut steps = 0;
    while steps < MAX_BISECTION_STEPS && obj(t / two)? < obj(t)? {
        t = t / two;
        steps += 1;
    }
    while steps < MAX_BISECTION_STEPS && obj(t * two)? < obj(t)? {
        t = t * two;
        steps += 1;
    }
    let (_, min) = golden_section_min(obj, t / two, t * two, T::lit(1e-10))?;
    Ok(min)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrliczNormEval<T> {
    /// `None` when neither `Φ′` nor `Ψ′` is available.
    pub stationarity: Option<T>,
    pub one_dimensional: T,
    /// The larger of the two computations.
    pub value: T,
    /// Relative gap between the methods.
    pub gap: T,
}

pub fn orlicz_norm_eval_of<T: Scalar>(pair: &ComplementaryPair<T>, mags: &[T]) -> Result<OrliczNormEval<T>> {
    let one_dimensional = orlicz_one_dimensional_of(&pair.phi, mags)?;
    let stationarity = match orlicz_stationarity_of(pair, mags) {
        Ok(v) => Some(v),
        Err(Error::MissingDerivative(_)) => None,
        Err(e) => return Err(e),
    };
    let Some(st) = stationarity else {
        return Ok(OrliczNormEval { stationarity, one_dimensional, value: one_dimensional, gap: T::zero() });
    };
    let value = st.max(one_dimensional);
    let gap = if value == T::zero() { T::zero() } else { (st - one_dimensional).abs() / value };
    if gap > T::lit(METHOD_AGREEMENT_TOL) {
        return Err(Error::MethodDisagreement {
            stationarity: st.as_f64(),
            one_dimensional: one_dimensional.as_f64(),
            gap: gap.as_f64(),
        });
    }
    Ok(OrliczNormEval { stationarity, one_dimensional, value, gap })
}

/// Orlicz norm `‖f‖_Φ = sup{Σ|f v| : Σ Ψ(|v|) ≤ 1}`, computed two ways and
/// cross-checked.
pub fn orlicz_norm<T: Scalar>(pair: &ComplementaryPair<T>, f: &OrliczVector<T>) -> Result<T> {
    Ok(orlicz_norm_eval_of(pair, &f.magnitudes())?.value)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormReport<T> {
    pub luxemburg: T,
    pub orlicz: T,
    pub method_agreement: T,
}

pub fn norm_report<T: Scalar>(pair: &ComplementaryPair<T>, f: &OrliczVector<T>) -> Result<NormReport<T>> {
    let mags = f.magnitudes();
    let eval = orlicz_norm_eval_of(pair, &mags)?;
    Ok(NormReport {
        luxemburg: luxemburg_of(&pair.phi, &mags)?,
        orlicz: eval.value,
        method_agreement: eval.gap,
    })
}

/// `Σ_s |f(s) g(s)|`.
pub fn abs_pairing<T: Scalar>(f: &OrliczVector<T>, g: &OrliczVector<T>) -> T {
    f.iter().map(|(s, z)| (z * g.get(s)).norm()).sum()
}

/// `min{N_Φ(f)‖g‖_Ψ, ‖f‖_Φ N_Ψ(g)} − Σ|f g|`.
pub fn holder_gap<T: Scalar>(pair: &ComplementaryPair<T>, f: &OrliczVector<T>, g: &OrliczVector<T>) -> Result<T> {
    f.check_same(g)?;
    let swapped = pair.swapped();
    let a = luxemburg_norm(&pair.phi, f)? * orlicz_norm(&swapped, g)?;
    let b = orlicz_norm(pair, f)? * luxemburg_norm(&pair.psi, g)?;
    Ok(a.min(b) - abs_pairing(f, g))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    Luxemburg,
    Orlicz,
}

/// `‖fω‖` in the chosen norm.
pub fn weighted_norm<T: Scalar>(
    pair: &ComplementaryPair<T>,
    w: &Weight<T>,
    f: &OrliczVector<T>,
    kind: NormKind,
) -> Result<T> {
    super::check_same_group(w.group(), f.group())?;
    let fw = f.map(|s, z| Ok(z * Complex::new(w.eval(s)?, T::zero())))?;
    match kind {
        NormKind::Luxemburg => luxemburg_norm(&pair.phi, &fw),
        NormKind::Orlicz => orlicz_norm(pair, &fw),
    }
}
