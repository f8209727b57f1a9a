//! Commutator and Serre defects measured on the interior of a window.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generator::{CartanData, GeneratorId, GeneratorKind};
use crate::multi_index::binomial;
use crate::realization::TruncatedModule;
use crate::scalar::Field;
use crate::sparse::SparseVector;

/// The expected `[g1, g2]` as a combination of Chevalley generators.
/// Real-form generators are expanded bilinearly.
pub fn expected_bracket<S: Field>(cartan: &CartanData, g1: GeneratorId, g2: GeneratorId) -> Result<Vec<(GeneratorId, S)>> {
    let mut out: Vec<(GeneratorId, S)> = Vec::new();
    for (c1, x1) in g1.chevalley_expansion::<S>() {
        for (c2, x2) in g2.chevalley_expansion::<S>() {
            let terms = cartan
                .bracket(c1, c2)
                .ok_or_else(|| Error::NoExpectedBracket(g1.to_string(), g2.to_string()))?;
            for (h, v) in terms {
                let term = x1.clone() * x2.clone() * S::from_i64(v);
                match out.iter_mut().find(|(id, _)| *id == h) {
                    Some((_, acc)) => *acc = acc.clone() + term,
                    None => out.push((h, term)),
                }
            }
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    Ok(out)
}

fn check_depth<S: Field>(module: &TruncatedModule<S>, depth: usize) -> Result<()> {
    if module.cutoff() < depth {
        return Err(Error::WindowTooSmall { cutoff: module.cutoff(), needed: depth });
    }
    Ok(())
}

/// Sweeps `residual(e(k))` over `|k| ≤ N − depth` and returns the largest
/// `‖residual‖/‖e(k)‖`. Any leakage past the window is an error.
fn sweep<S, F>(module: &TruncatedModule<S>, depth: usize, residual: F) -> Result<f64>
where
    S: Field,
    F: Fn(&SparseVector<S>) -> Result<SparseVector<S>> + Sync,
{
    check_depth(module, depth)?;
    module
        .basis()
        .interior(depth)
        .par_iter()
        .enumerate()
        .map(|(pos, k)| {
            let r = residual(&SparseVector::basis(k.clone()))?;
            if !r.is_exact() {
                return Err(Error::BoundaryLoss(r.boundary_mass()));
            }
            if r.is_zero() {
                return Ok(0.0);
            }
            Ok(module.norm(&r) / module.norm_sq(pos).sqrt())
        })
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
}

/// `max ‖([g1,g2] − expected)·v‖/‖v‖` over interior basis vectors.
pub fn commutator_defect<S: Field>(
    module: &TruncatedModule<S>,
    g1: GeneratorId,
    g2: GeneratorId,
    interior_depth: usize,
) -> Result<f64> {
    let n = module.rank();
    g1.check_rank(n)?;
    g2.check_rank(n)?;
    let expected = expected_bracket::<S>(&CartanData::type_a(n), g1, g2)?;
    sweep(module, interior_depth.max(2), |v| {
        let mut r = module.apply(g1, &module.apply(g2, v)?)?;
        r.axpy(&-S::one(), &module.apply(g2, &module.apply(g1, v)?)?);
        for (h, c) in &expected {
            r.axpy(&-c.clone(), &module.apply(*h, v)?);
        }
        Ok(r)
    })
}

/// `(ad x)^p y` applied to `v`, expanded as `Σ_r (−1)^r C(p,r) x^{p−r} y x^r`.
pub fn ad_power_apply<S: Field>(
    module: &TruncatedModule<S>,
    x: GeneratorId,
    y: GeneratorId,
    p: usize,
    v: &SparseVector<S>,
) -> Result<SparseVector<S>> {
    let mut out = SparseVector::zero();
    for r in 0..=p {
        let mut word = vec![x; p - r];
        word.push(y);
        word.extend(std::iter::repeat_n(x, r));
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let c = S::from_i64(sign * binomial(p as u64, r as u64) as i64);
        out.axpy(&c, &module.apply_word(&word, v)?);
    }
    Ok(out)
}

/// Defect of the Serre word `(ad X_i)^{1−c_ij} X_j` for `X = E` or `X = F`.
pub fn serre_defect<S: Field>(
    module: &TruncatedModule<S>,
    kind: GeneratorKind,
    i: usize,
    j: usize,
    interior_depth: usize,
) -> Result<f64> {
    let n = module.rank();
    let cartan = CartanData::type_a(n);
    let x = GeneratorId::new(kind, i);
    let y = GeneratorId::new(kind, j);
    x.check_rank(n)?;
    y.check_rank(n)?;
    if !x.is_root_vector() || i == j {
        return Err(Error::InvalidParameter(format!("no Serre word for ({x}, {y})")));
    }
    let p = (1 - cartan.entry(i, j)) as usize;
    sweep(module, interior_depth.max(p + 1), |v| ad_power_apply(module, x, y, p, v))
}
