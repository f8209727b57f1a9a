use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generator::GeneratorId;
use crate::realization::{Target, TruncatedModule};
use crate::scalar::Field;
use crate::sparse::SparseVector;

/// `Σ_k u_k·conj(v_k)·‖e(k)‖²` in the module's Hilbert weights.
pub fn inner_product<S: Field>(module: &TruncatedModule<S>, u: &SparseVector<S>, v: &SparseVector<S>) -> Result<Complex64> {
    let basis = module.basis();
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, uk) in u.iter() {
        if k.rank() != module.rank() {
            return Err(Error::RankMismatch { expected: module.rank(), got: k.rank() });
        }
        let pos = basis.position(k).ok_or_else(|| Error::OutsideWindow(k.to_string()))?;
        if let Some(vk) = v.get(k) {
            acc += uk.to_c64() * vk.to_c64().conj() * module.norm_sq(pos);
        }
    }
    for (k, _) in v.iter() {
        if basis.position(k).is_none() {
            return Err(Error::OutsideWindow(k.to_string()));
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitarityVerdict {
    Unitary,
    NotUnitary,
}

/// Largest violation of one adjointness relation.
#[derive(Debug, Clone, Serialize)]
pub struct PairDefect {
    /// e.g. `E0* = -F0`.
    pub relation: String,
    pub defect: f64,
    /// Basis label where the maximum occurs.
    pub at: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdjointReport {
    pub pairs: Vec<PairDefect>,
    /// `max |Im λ|` over the `H_j` eigenvalues.
    pub cartan_imaginary: f64,
    pub max_defect: f64,
    pub verdict: UnitarityVerdict,
}

/// Orthonormal matrix element `⟨g ê(k), ê(target)⟩` with `ê = e/‖e‖`.
fn element<S: Field>(module: &TruncatedModule<S>, g: GeneratorId, pos: usize) -> Option<(usize, Complex64)> {
    let entry = module.shift(g, pos)?;
    match entry.target {
        Target::Inside(t) => {
            let scale = (0.5 * (module.log_norm_sq(t) - module.log_norm_sq(pos))).exp();
            Some((t, entry.coeff.to_c64() * scale))
        }
        Target::Outside(_) => None,
    }
}

/// Max over in-window pairs of `|⟨A ê(k), ê(l)⟩ − sign·⟨ê(k), B ê(l)⟩|`,
/// checking `A* = sign·B` in both directions.
fn pair_defect<S: Field>(module: &TruncatedModule<S>, a: GeneratorId, b: GeneratorId, sign: f64) -> PairDefect {
    let mut worst = (0.0, None);
    for (x, y) in [(a, b), (b, a)] {
        for pos in 0..module.dimension() {
            let Some((t, ax)) = element(module, x, pos) else { continue };
            // ⟨ê(k), y ê(t)⟩ = conj(⟨y ê(t), ê(k)⟩)
            let back = match element(module, y, t) {
                Some((s, c)) if s == pos => c.conj(),
                _ => Complex64::new(0.0, 0.0),
            };
            let d = (ax - sign * back).norm();
            if d > worst.0 {
                worst = (d, Some(module.basis().get(pos).to_string()));
            }
        }
    }
    let rel = if sign < 0.0 { format!("{a}* = -{b}") } else { format!("{a}* = {b}") };
    PairDefect { relation: rel, defect: worst.0, at: worst.1 }
}

/// Tests `H_j* = H_j`, `E_j* = F_j` (`j ≥ 1`) and `E₀* = −F₀` on the window,
/// in orthonormalized matrix elements.
pub fn adjoint_defect<S: Field>(module: &TruncatedModule<S>, tol: f64) -> AdjointReport {
    let n = module.rank();
    let mut pairs = vec![pair_defect(module, GeneratorId::f(0), GeneratorId::e(0), -1.0)];
    for j in 1..n {
        pairs.push(pair_defect(module, GeneratorId::e(j), GeneratorId::f(j), 1.0));
    }
    let mut cartan_imaginary: f64 = 0.0;
    for j in 0..n {
        for pos in 0..module.dimension() {
            if let Some(e) = module.shift(GeneratorId::h(j), pos) {
                cartan_imaginary = cartan_imaginary.max(e.coeff.to_c64().im.abs());
            }
        }
    }
    let max_defect = pairs.iter().map(|p| p.defect).fold(cartan_imaginary, f64::max);
    let verdict = if max_defect <= tol { UnitarityVerdict::Unitary } else { UnitarityVerdict::NotUnitary };
    AdjointReport { pairs, cartan_imaginary, max_defect, verdict }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multi_index::MultiIndex;
    use crate::realization::{ModuleParams, RealizationKind};
    use crate::scalar::GaussRational;

    fn deformed(n: usize, a: Complex64, cutoff: usize) -> TruncatedModule<Complex64> {
        TruncatedModule::build(RealizationKind::DeformedE, ModuleParams::new(n, a, cutoff)).unwrap()
    }

    #[test]
    fn orthogonal_basis_values() {
        let m = TruncatedModule::<GaussRational>::build(RealizationKind::BaseP, ModuleParams::base(2, 4)).unwrap();
        let e = |v: &[u32]| SparseVector::basis(MultiIndex::new(v.to_vec()));
        assert_eq!(inner_product(&m, &e(&[0, 0]), &e(&[0, 0])).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(inner_product(&m, &e(&[1, 0]), &e(&[0, 1])).unwrap(), Complex64::new(0.0, 0.0));
        let v = inner_product(&m, &e(&[1, 1]), &e(&[1, 1])).unwrap();
        assert!((v.re - 1.0 / 6.0).abs() < 1e-15 && v.im == 0.0);
    }

    #[test]
    fn window_is_checked() {
        let m = deformed(2, Complex64::new(-0.5, 0.0), 3);
        let far = SparseVector::basis(MultiIndex::new(vec![4, 0]));
        assert!(matches!(inner_product(&m, &far, &far), Err(Error::OutsideWindow(_))));
    }

    #[test]
    fn negative_real_parameters_are_unitary() {
        for a in [-1.5, -0.25, -3.0] {
            let r = adjoint_defect(&deformed(2, Complex64::new(a, 0.0), 6), 1e-10);
            assert_eq!(r.verdict, UnitarityVerdict::Unitary, "{a}: {r:?}");
        }
    }

    #[test]
    fn positive_and_complex_parameters_are_not() {
        let r = adjoint_defect(&deformed(2, Complex64::new(0.5, 0.0), 6), 1e-10);
        assert_eq!(r.verdict, UnitarityVerdict::NotUnitary);
        assert!(r.pairs[0].defect > 1e-3);
        let r = adjoint_defect(&deformed(2, Complex64::new(0.0, 1.0), 6), 1e-10);
        assert_eq!(r.verdict, UnitarityVerdict::NotUnitary);
        assert!((r.cartan_imaginary - 1.0).abs() < 1e-12);
    }

    #[test]
    fn base_point_is_exactly_unitary_in_the_x_basis_too() {
        let m = TruncatedModule::<Complex64>::build(RealizationKind::BblX, ModuleParams::new(3, Complex64::new(-2.5, 0.0), 5)).unwrap();
        assert!(adjoint_defect(&m, 1e-12).max_defect < 1e-12);
    }
}
