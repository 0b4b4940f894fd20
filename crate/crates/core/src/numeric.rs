//! One-dimensional root finding, minimization and quadrature.

use crate::scalar::Scalar;

pub const MAX_BISECTION_STEPS: usize = 200;

/// Finds `x` in `[lo, hi]` with `f(x) = target` for a nondecreasing `f`,
/// assuming `f(lo) <= target <= f(hi)`. Stops when the bracket stops
/// shrinking or after `MAX_BISECTION_STEPS` halvings.
pub fn bisect_increasing<T, F, E>(mut f: F, mut lo: T, mut hi: T, target: T) -> Result<T, E>
where
    T: Scalar,
    F: FnMut(T) -> Result<T, E>,
{
    let half = T::lit(0.5);
    for _ in 0..MAX_BISECTION_STEPS {
        let mid = lo + (hi - lo) * half;
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo + (hi - lo) * half)
}

/// Like [`bisect_increasing`] but for a nonincreasing function, with an
/// early exit once `|f(x) - target| <= stop`.
pub fn bisect_decreasing<T, F, E>(
    mut f: F,
    mut lo: T,
    mut hi: T,
    target: T,
    stop: T,
) -> Result<T, E>
where
    T: Scalar,
    F: FnMut(T) -> Result<T, E>,
{
    let half = T::lit(0.5);
    for _ in 0..MAX_BISECTION_STEPS {
        let mid = lo + (hi - lo) * half;
        if mid <= lo || mid >= hi {
            break;
        }
        let value = f(mid)?;
        if (value - target).abs() <= stop {
            return Ok(mid);
        }
        if value > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo + (hi - lo) * half)
}

/// Golden-section minimization of a unimodal function on `[a, b]`.
/// Returns `(argmin, min)`. Non-finite objective values are treated as `+inf`.
pub fn golden_section_min<T, F, E>(mut f: F, mut a: T, mut b: T, rel_tol: T) -> Result<(T, T), E>
where
    T: Scalar,
    F: FnMut(T) -> Result<T, E>,
{
    let mut eval = |x: T| -> Result<T, E> {
        let v = f(x)?;
        Ok(if v.is_nan() { T::infinity() } else { v })
    };
    let inv_phi = T::lit(0.618_033_988_749_894_8);
    let mut c = b - (b - a) * inv_phi;
    let mut d = a + (b - a) * inv_phi;
    let mut fc = eval(c)?;
    let mut fd = eval(d)?;
    for _ in 0..MAX_BISECTION_STEPS {
        if (b - a).abs() <= rel_tol * (a.abs() + b.abs()) {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * inv_phi;
            fc = eval(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * inv_phi;
            fd = eval(d)?;
        }
    }
    Ok(if fc <= fd { (c, fc) } else { (d, fd) })
}

/// Adaptive Simpson quadrature: each panel is halved until the two-half
/// estimate differs from the whole-panel estimate by less than the local
/// tolerance (relative to the running magnitude, floored at `abs_tol`).
pub fn adaptive_simpson<T, F, E>(mut f: F, a: T, b: T, abs_tol: T) -> Result<T, E>
where
    T: Scalar,
    F: FnMut(T) -> Result<T, E>,
{
    if a == b {
        return Ok(T::zero());
    }
    let fa = f(a)?;
    let fb = f(b)?;
    let m = (a + b) * T::lit(0.5);
    let fm = f(m)?;
    let whole = simpson(a, b, fa, fm, fb);
    let tol = abs_tol.max(whole.abs() * abs_tol);
    simpson_panel(&mut f, a, b, fa, fm, fb, whole, tol, 48)
}

#[inline]
fn simpson<T: Scalar>(a: T, b: T, fa: T, fm: T, fb: T) -> T {
    (b - a) / T::lit(6.0) * (fa + T::lit(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_panel<T, F, E>(
    f: &mut F,
    a: T,
    b: T,
    fa: T,
    fm: T,
    fb: T,
    whole: T,
    tol: T,
    depth: u32,
) -> Result<T, E>
where
    T: Scalar,
    F: FnMut(T) -> Result<T, E>,
{
    let m = (a + b) * T::lit(0.5);
    let lm = (a + m) * T::lit(0.5);
    let rm = (m + b) * T::lit(0.5);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= T::lit(15.0) * tol || m <= a || m >= b {
        return Ok(left + right + delta / T::lit(15.0));
    }
    let half = tol * T::lit(0.5);
    Ok(simpson_panel(f, a, m, fa, flm, fm, left, half, depth - 1)?
        + simpson_panel(f, m, b, fm, frm, fb, right, half, depth - 1)?)
}

/// `n` points geometrically spaced on `[lo, hi]` (inclusive).
pub fn log_grid<T: Scalar>(lo: T, hi: T, n: usize) -> Vec<T> {
    if n == 1 {
        return vec![lo];
    }
    let (llo, lhi) = (lo.ln(), hi.ln());
    let step = (lhi - llo) / T::from_usize(n - 1).unwrap();
    (0..n)
        .map(|i| (llo + step * T::from_usize(i).unwrap()).exp())
        .collect()
}

/// `n` points evenly spaced on `[lo, hi]` (inclusive).
pub fn linear_grid<T: Scalar>(lo: T, hi: T, n: usize) -> Vec<T> {
    if n == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / T::from_usize(n - 1).unwrap();
    (0..n).map(|i| lo + step * T::from_usize(i).unwrap()).collect()
}

/// Ordinary least-squares fit `y = intercept + slope * x`; returns
/// `(slope, intercept, rms_residual)`.
pub fn least_squares<T: Scalar>(xs: &[T], ys: &[T]) -> (T, T, T) {
    let n = T::from_usize(xs.len()).unwrap();
    let mx = xs.iter().copied().sum::<T>() / n;
    let my = ys.iter().copied().sum::<T>() / n;
    let sxy: T = xs.iter().zip(ys).map(|(&x, &y)| (x - mx) * (y - my)).sum();
    let sxx: T = xs.iter().map(|&x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: T = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let r = y - intercept - slope * x;
            r * r
        })
        .sum();
    (slope, intercept, (rss / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::convert::Infallible;

    fn ok<T>(x: T) -> Result<T, Infallible> {
        Ok(x)
    }

    #[test]
    fn bisection_finds_square_root() {
        let r = bisect_increasing(|x: f64| ok(x * x), 0.0, 4.0, 2.0).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn decreasing_bisection_stops_early() {
        let r = bisect_decreasing(|k: f64| ok(1.0 / k), 0.1, 10.0, 0.5, 1e-12).unwrap();
        assert!((r - 2.0).abs() < 1e-10);
    }

    #[test]
    fn golden_section_quadratic() {
        let (x, v) = golden_section_min(|x: f64| ok((x - 1.3).powi(2) + 2.0), 0.0, 5.0, 1e-12).unwrap();
        assert!((x - 1.3).abs() < 1e-7);
        assert!((v - 2.0).abs() < 1e-14);
    }

    #[test]
    fn simpson_integrates_exponential() {
        let v = adaptive_simpson(|x: f64| ok(x.exp()), 0.0, 3.0, 1e-12).unwrap();
        assert!((v - (3f64.exp() - 1.0)).abs() < 1e-10);
    }

    #[test]
    fn simpson_works_in_single_precision() {
        let v = adaptive_simpson(|x: f32| ok(x * x), 0.0, 1.0, 1e-6).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn least_squares_recovers_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x - 1.0).collect();
        let (s, i, r) = least_squares(&xs, &ys);
        assert!((s - 3.0).abs() < 1e-12 && (i + 1.0).abs() < 1e-12 && r < 1e-12);
    }

    #[test]
    fn grids_hit_endpoints() {
        let g = log_grid(1e-3f64, 1e3, 7);
        assert!((g[0] - 1e-3).abs() < 1e-15 && (g[6] - 1e3).abs() < 1e-9);
        assert!((g[3] - 1.0).abs() < 1e-12);
        let l = linear_grid(0.0f64, 1.0, 5);
        assert_eq!(l, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }
}
