use super::Group;
use crate::error::{Error, Result};
use crate::numeric::least_squares;

/// Log-log fit of ball volumes against radius.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthEstimate {
    /// Slope of `ln |Bₙ|` against `ln n` over `n ∈ [maxR/2, maxR]`.
    pub d_hat: f64,
    /// Root-mean-square residual of the fit.
    pub fit_residual: f64,
    /// `(n, |Bₙ|)` for `n = 0..=maxR`.
    pub counts: Vec<(u32, usize)>,
    /// Integer growth order closest to `d_hat`.
    pub order: u32,
    /// Sandwich constants with `c1·nᵈ ≤ |Bₙ| ≤ c2·nᵈ` for `1 ≤ n ≤ maxR`.
    pub c1: f64,
    pub c2: f64,
}

pub fn growth_order_estimate(group: &Group, max_r: u32) -> Result<GrowthEstimate> {
    if max_r < 6 {
        return Err(Error::InvalidParameter(format!("growth fit needs maxR >= 6, got {max_r}")));
    }
    let ball = group.ball(max_r)?;
    let mut counts = vec![0usize; max_r as usize + 1];
    for g in &ball {
        let r = group.word_length(g)? as usize;
        counts[r] += 1;
    }
    for r in 1..counts.len() {
        counts[r] += counts[r - 1];
    }
    let counts: Vec<(u32, usize)> = counts.into_iter().enumerate().map(|(n, c)| (n as u32, c)).collect();

    let fit: Vec<&(u32, usize)> = counts.iter().filter(|(n, _)| *n >= max_r / 2).collect();
    let xs: Vec<f64> = fit.iter().map(|(n, _)| (*n as f64).ln()).collect();
    let ys: Vec<f64> = fit.iter().map(|(_, c)| (*c as f64).ln()).collect();
    let (d_hat, _, fit_residual) = least_squares(&xs, &ys);

    let order = d_hat.round().max(0.0) as u32;
    let ratios = counts[1..]
        .iter()
        .map(|&(n, c)| c as f64 / (n as f64).powi(order as i32));
    let (c1, c2) = ratios.fold((f64::INFINITY, 0.0f64), |(lo, hi), r| (lo.min(r), hi.max(r)));
    Ok(GrowthEstimate {
        d_hat,
        fit_residual,
        counts,
        order,
        c1,
        c2,
    })
}
