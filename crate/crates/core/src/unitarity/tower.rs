use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::deform::deform_coeffs;
use crate::error::{Error, Result};
use crate::generator::{chevalley_generators, real_form_generators, GeneratorId};
use crate::realization::{ModuleParams, RealizationKind, Target, TruncatedModule};
use crate::scalar::Field;
use crate::sparse::SparseVector;

/// Generators entering the norm recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorSet {
    /// `{H_j, E_j, F_j}`.
    #[default]
    Chevalley,
    /// `{iH_j, X_j, Y_j}`.
    RealForm,
}

/// The norms `‖u‖_{l+1} = max{‖A u‖_l : A = Id or A ∈ S}` over a module's
/// Hilbert norm.
#[derive(Debug, Clone)]
pub struct NormTower<'m, S: Field> {
    module: &'m TruncatedModule<S>,
    set: GeneratorSet,
    gens: Vec<GeneratorId>,
}

impl<'m, S: Field> NormTower<'m, S> {
    pub fn new(module: &'m TruncatedModule<S>, set: GeneratorSet) -> Self {
        let n = module.rank();
        let gens = match set {
            GeneratorSet::Chevalley => chevalley_generators(n),
            GeneratorSet::RealForm => real_form_generators(n),
        };
        Self { module, set, gens }
    }

    pub fn module(&self) -> &TruncatedModule<S> {
        self.module
    }

    pub fn set(&self) -> GeneratorSet {
        self.set
    }

    fn rec(&self, u: &SparseVector<S>, l: usize) -> Result<f64> {
        if l == 0 {
            return Ok(self.module.norm(u));
        }
        let mut best = self.rec(u, l - 1)?;
        for g in &self.gens {
            let v = self.module.apply(*g, u)?;
            if v.boundary_mass() > 0.0 {
                return Err(Error::BoundaryLoss(v.boundary_mass()));
            }
            best = best.max(self.rec(&v, l - 1)?);
        }
        Ok(best)
    }
}

/// `‖u‖_l`. Every word of length `≤ l` applied to `u` must stay in the window.
pub fn jm_norm<S: Field>(tower: &NormTower<'_, S>, u: &SparseVector<S>, l: usize) -> Result<f64> {
    let cutoff = tower.module.cutoff();
    let top = u.max_degree().unwrap_or(0) as usize;
    if top + l > cutoff {
        return Err(Error::WindowTooSmall { cutoff, needed: top + l });
    }
    tower.rec(u, l)
}

/// Relative tower norms `‖e(k)‖_l / ‖e(k)‖` of every basis vector with
/// `|k| ≤ cutoff − l`.
///
/// Chevalley generators map basis vectors to multiples of basis vectors, so
/// the recursion closes on basis vectors and runs level by level.
fn relative_basis_norms<S: Field>(base: &TruncatedModule<S>, l: usize) -> Vec<f64> {
    let gens = chevalley_generators(base.rank());
    let dim = base.dimension();
    let mut cur = vec![1.0f64; dim];
    for level in 1..=l {
        let valid = base.basis().interior(level).len();
        let prev = &cur;
        let next: Vec<f64> = (0..dim)
            .into_par_iter()
            .map(|pos| {
                if pos >= valid {
                    return f64::NAN;
                }
                let mut best = prev[pos];
                for g in &gens {
                    if let Some(e) = base.shift(*g, pos) {
                        let Target::Inside(t) = e.target else { unreachable!("interior position") };
                        let scale = (0.5 * (base.log_norm_sq(t) - base.log_norm_sq(pos))).exp();
                        best = best.max(e.coeff.abs() * scale * prev[t]);
                    }
                }
                best
            })
            .collect();
        cur = next;
    }
    cur
}

#[derive(Debug, Clone, Serialize)]
pub struct LadderRow {
    /// Largest `|k|` in the maximization.
    pub k_max: usize,
    /// Estimated `‖f(E₀)‖_l`.
    pub e0: f64,
    /// Estimated `‖f(F₀)‖_l`.
    pub f0: f64,
    pub e0_at: Option<String>,
    pub f0_at: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PerturbationLadder {
    pub level: usize,
    pub rows: Vec<LadderRow>,
    /// `max/min − 1` across the ladder, for each operator.
    pub spread_e0: f64,
    pub spread_f0: f64,
}

fn spread(values: impl Iterator<Item = f64>) -> f64 {
    let (lo, hi) = values.fold((f64::INFINITY, 0.0f64), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if hi == 0.0 {
        0.0
    } else {
        hi / lo - 1.0
    }
}

/// Estimates the `‖·‖_l` operator norms of `f(E₀) = E₀(a) − E₀` and
/// `f(F₀) = F₀(a) − F₀` by maximizing `‖f(A)e(k)‖_l / ‖e(k)‖_l` over
/// `|k| ≤ K`, for each `K` in the ladder. The tower is built from the
/// undeformed action with `S = {H_j, E_j, F_j}`.
pub fn perturbation_bound<S: Field>(module: &TruncatedModule<S>, l: usize, ladder: &[usize]) -> Result<PerturbationLadder> {
    if module.kind() != RealizationKind::DeformedE {
        return Err(Error::InvalidParameter(format!("perturbation bounds need the deformed realization, got {}", module.kind())));
    }
    if ladder.is_empty() {
        return Err(Error::InvalidParameter("empty cutoff ladder".into()));
    }
    let n = module.rank();
    let a = module.a().clone();
    let mut rows = Vec::with_capacity(ladder.len());
    for &k_max in ladder {
        let base = TruncatedModule::<S>::build(RealizationKind::BaseP, ModuleParams::base(n, k_max + l + 1))?;
        let rel = relative_basis_norms(&base, l);
        let basis = base.basis();
        let range = basis.interior(base.cutoff() - k_max).len();
        let per_k: Vec<(f64, f64)> = (0..range)
            .into_par_iter()
            .map(|pos| -> Result<(f64, f64)> {
                let k = basis.get(pos);
                let c = deform_coeffs(n, &a, k)?;
                let ratio = |target: Option<crate::multi_index::MultiIndex>, m: &S| -> f64 {
                    let Some(t) = target else { return 0.0 };
                    let tp = basis.position(&t).expect("target inside the enlarged window");
                    let scale = (0.5 * (base.log_norm_sq(tp) - base.log_norm_sq(pos))).exp();
                    m.abs() * scale * rel[tp] / rel[pos]
                };
                Ok((ratio(k.shifted(None, Some(1)), &c.m_minus), ratio(k.shifted(Some(1), None), &c.m_plus)))
            })
            .collect::<Result<_>>()?;
        let argmax = |sel: fn(&(f64, f64)) -> f64| {
            per_k
                .iter()
                .enumerate()
                .fold((0.0, None), |(best, at), (p, v)| if sel(v) > best { (sel(v), Some(p)) } else { (best, at) })
        };
        let (e0, e_at) = argmax(|v| v.0);
        let (f0, f_at) = argmax(|v| v.1);
        rows.push(LadderRow {
            k_max,
            e0,
            f0,
            e0_at: e_at.map(|p| basis.get(p).to_string()),
            f0_at: f_at.map(|p| basis.get(p).to_string()),
        });
    }
    Ok(PerturbationLadder {
        level: l,
        spread_e0: spread(rows.iter().map(|r| r.e0)),
        spread_f0: spread(rows.iter().map(|r| r.f0)),
        rows,
    })
}

/// `sup_{1 ≤ L ≤ K} √(L(L+n−1))·|μ(L−1)/μ(L) − 1|`, the level-0 size of
/// `f(E₀)` along `k = (L,0,…,0)`.
pub fn level0_e0_bound(n: usize, a: Complex64, k_max: usize) -> f64 {
    (1..=k_max)
        .map(|l| ((l * (l + n - 1)) as f64).sqrt() * crate::deform::inv_ratio_minus_one(n, a, l).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multi_index::MultiIndex;
    use crate::scalar::GaussRational;

    fn base(n: usize, cutoff: usize) -> TruncatedModule<Complex64> {
        TruncatedModule::build(RealizationKind::BaseP, ModuleParams::base(n, cutoff)).unwrap()
    }

    #[test]
    fn level_zero_is_the_hilbert_norm() {
        let m = base(2, 5);
        let t = NormTower::new(&m, GeneratorSet::Chevalley);
        let u = SparseVector::from_terms([
            (MultiIndex::new(vec![1, 0]), Complex64::new(1.0, 2.0)),
            (MultiIndex::new(vec![0, 2]), Complex64::new(-0.5, 0.0)),
        ]);
        assert!((jm_norm(&t, &u, 0).unwrap() - m.norm(&u)).abs() < 1e-15);
    }

    #[test]
    fn origin_at_level_one() {
        // H₀e(0) = −2e(0) dominates F₀e(0) = −2e(ε₁), whose norm is √2
        let m = base(2, 4);
        let t = NormTower::new(&m, GeneratorSet::Chevalley);
        let v = jm_norm(&t, &SparseVector::basis(MultiIndex::zero(2)), 1).unwrap();
        assert!((v - 2.0).abs() < 1e-14);
    }

    #[test]
    fn monotone_in_level_for_both_sets() {
        let m = base(2, 6);
        for set in [GeneratorSet::Chevalley, GeneratorSet::RealForm] {
            let t = NormTower::new(&m, set);
            let u = SparseVector::from_terms([
                (MultiIndex::new(vec![1, 1]), Complex64::new(0.3, -1.0)),
                (MultiIndex::new(vec![0, 0]), Complex64::new(2.0, 0.0)),
            ]);
            let norms: Vec<f64> = (0..=3).map(|l| jm_norm(&t, &u, l).unwrap()).collect();
            assert!(norms.windows(2).all(|w| w[0] <= w[1] + 1e-15), "{set:?}: {norms:?}");
        }
    }

    #[test]
    fn window_exhaustion() {
        let m = base(2, 4);
        let t = NormTower::new(&m, GeneratorSet::Chevalley);
        let u = SparseVector::basis(MultiIndex::new(vec![2, 1]));
        assert!(matches!(jm_norm(&t, &u, 2), Err(Error::WindowTooSmall { .. })));
    }

    #[test]
    fn dynamic_programme_matches_recursion() {
        let m = base(2, 7);
        let t = NormTower::new(&m, GeneratorSet::Chevalley);
        let rel = relative_basis_norms(&m, 2);
        for pos in 0..m.basis().interior(2).len() {
            let k = m.basis().get(pos).clone();
            let direct = jm_norm(&t, &SparseVector::basis(k), 2).unwrap() / m.norm_sq(pos).sqrt();
            assert!((direct - rel[pos]).abs() < 1e-12 * direct, "{pos}");
        }
    }

    #[test]
    fn perturbations_vanish_at_the_base_point() {
        let m = TruncatedModule::<GaussRational>::build(RealizationKind::DeformedE, ModuleParams::base(2, 4)).unwrap();
        for l in 0..=2 {
            let r = perturbation_bound(&m, l, &[10, 20]).unwrap();
            assert!(r.rows.iter().all(|row| row.e0 == 0.0 && row.f0 == 0.0));
        }
    }

    #[test]
    fn level_zero_matches_the_closed_form() {
        let a = Complex64::new(-0.5, 0.0);
        let m = TruncatedModule::build(RealizationKind::DeformedE, ModuleParams::new(2, a, 4)).unwrap();
        let r = perturbation_bound(&m, 0, &[50]).unwrap();
        let bound = level0_e0_bound(2, a, 50);
        assert!((r.rows[0].e0 - bound).abs() < 1e-12, "{} vs {bound}", r.rows[0].e0);
        assert_eq!(r.rows[0].e0_at.as_deref(), Some("(50,0)"));
        // the literal supremum increases to (Re a + n)/2
        assert!(r.rows[0].e0 <= 0.75);
    }

    #[test]
    fn rejects_other_realizations() {
        assert!(perturbation_bound(&base(2, 4), 0, &[5]).is_err());
    }
}
