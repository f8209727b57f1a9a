use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generator::chevalley_generators;
use crate::realization::TruncatedModule;
use crate::scalar::Field;

/// Largest RMS residual accepted for the log-log fit.
pub const FIT_RESIDUAL_MAX: f64 = 0.02;

#[derive(Debug, Clone, Serialize)]
pub struct GrowthFit {
    pub degree: usize,
    /// `None` when the generated submodule closed inside the window.
    pub slope: Option<f64>,
    pub residual: f64,
    /// Cumulative dimension of the generated submodule up to each level.
    pub cumulative: Vec<usize>,
}

/// Polynomial growth degree of the submodule generated by `x(0)`, graded by `|k|`.
///
/// The submodule is found by closing `x(0)` under all Chevalley generators.
/// If the closure never touches the boundary the module is finite-dimensional
/// and the degree is 0. Otherwise `ln dim_{≤L}` is fit against `ln L` on
/// `L ∈ [N/2, N]` and the slope rounded.
pub fn gk_growth_degree<S: Field>(module: &TruncatedModule<S>) -> Result<GrowthFit> {
    let n = module.rank();
    let basis = module.basis();
    let gens = chevalley_generators(n);
    let mut reached = vec![false; basis.len()];
    let mut leaked = false;
    let mut queue = VecDeque::from([0usize]);
    reached[0] = true;
    while let Some(pos) = queue.pop_front() {
        for g in &gens {
            if let Some((t, _)) = module.chevalley_image(*g, basis.get(pos)) {
                match basis.position(&t) {
                    Some(p) if !reached[p] => {
                        reached[p] = true;
                        queue.push_back(p);
                    }
                    Some(_) => {}
                    None => leaked = true,
                }
            }
        }
    }
    let cutoff = module.cutoff();
    let mut cumulative = Vec::with_capacity(cutoff + 1);
    let mut total = 0;
    for d in 0..=cutoff {
        total += basis.level_range(d).filter(|p| reached[*p]).count();
        cumulative.push(total);
    }
    if !leaked {
        return Ok(GrowthFit { degree: 0, slope: None, residual: 0.0, cumulative });
    }
    if cutoff < 2 * n {
        return Err(Error::WindowTooSmall { cutoff, needed: 2 * n });
    }
    let points: Vec<(f64, f64)> = ((cutoff / 2).max(1)..=cutoff)
        .map(|l| ((l as f64).ln(), (cumulative[l] as f64).ln()))
        .collect();
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (points.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum::<f64>() / m).sqrt();
    if residual > FIT_RESIDUAL_MAX {
        return Err(Error::FitResidual { residual, threshold: FIT_RESIDUAL_MAX });
    }
    Ok(GrowthFit { degree: slope.round() as usize, slope: Some(slope), residual, cumulative })
}
