//! The rescaling function `μ_a` and the deformation coefficients `m±_k`.
//!
//! `μ_a(l)² = ∏_{j=1}^{l} (j+n−1)/|j−a−1|`. Products are never formed
//! directly for large `l`: consecutive ratios have closed forms, and `μ`
//! itself is accumulated in log space.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::scalar::Field;

/// Distance below which `a` counts as sitting on a nonnegative integer.
pub const GUARD_EPS: f64 = 1e-12;

/// `Some(m)` if `a` lies within [`GUARD_EPS`] of the nonnegative integer `m`.
pub fn near_nonneg_integer(a: Complex64) -> Option<i64> {
    if a.im.abs() >= GUARD_EPS {
        return None;
    }
    let m = a.re.round();
    (m >= 0.0 && (a.re - m).abs() < GUARD_EPS).then_some(m as i64)
}

/// Rejects `a ∈ ℤ_{≥0}` and its `ε`-neighbourhood, where `μ_a` degenerates.
pub fn guard(a: Complex64) -> Result<()> {
    match near_nonneg_integer(a) {
        Some(m) => Err(Error::GuardedParameter {
            a: format!("{a}"),
            reason: format!("within {GUARD_EPS:e} of the nonnegative integer {m}"),
        }),
        None => Ok(()),
    }
}

/// `μ_a(l)`, the positive square root of `∏_{j=1}^{l} (j+n−1)/|j−a−1|`.
pub fn mu(n: usize, a: Complex64, l: usize) -> Result<f64> {
    guard(a)?;
    let log_sq: f64 = (1..=l)
        .map(|j| ((j + n - 1) as f64).ln() - (Complex64::new(j as f64 - 1.0, 0.0) - a).norm().ln())
        .sum();
    Ok((0.5 * log_sq).exp())
}

/// `μ(l+1)/μ(l) = √((l+n)/|l−a|)`.
pub fn mu_ratio(n: usize, a: Complex64, l: usize) -> f64 {
    (((l + n) as f64) / (Complex64::new(l as f64, 0.0) - a).norm()).sqrt()
}

/// `μ(L−1)/μ(L) − 1` for `L ≥ 1`, written to avoid cancellation at large `L`.
///
/// With `z = L−1−a` and `c = L+n−1` the value is `√(|z|/c) − 1`, and
/// `|z|² − c² = (x−c)(x+c) + y²` where `x − c = −Re(a) − n` exactly.
pub fn inv_ratio_minus_one(n: usize, a: Complex64, l: usize) -> f64 {
    assert!(l >= 1);
    let x = l as f64 - 1.0 - a.re;
    let y = a.im;
    let c = (l + n - 1) as f64;
    let z_abs = x.hypot(y);
    let diff_sq = (-a.re - n as f64) * (x + c) + y * y;
    let z_minus_c = diff_sq / (z_abs + c);
    let root = (z_abs / c).sqrt();
    z_minus_c / (c * (root + 1.0))
}

/// `(m⁻_k, m⁺_k)`: `(E₀(a)−E₀)e(k) = m⁻_k e(k−ε₁)` and
/// `(F₀(a)−F₀)e(k) = m⁺_k e(k+ε₁)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformCoeffs<S> {
    pub m_minus: S,
    pub m_plus: S,
}

fn is_base_point<S: Field>(n: usize, a: &S) -> bool {
    *a == S::from_i64(-(n as i64))
}

/// Computes both deformation coefficients at `k`. At `a = −n` both vanish
/// identically; elsewhere the square roots force the float path.
pub fn deform_coeffs<S: Field>(n: usize, a: &S, k: &MultiIndex) -> Result<DeformCoeffs<S>> {
    if k.rank() != n {
        return Err(Error::RankMismatch { expected: n, got: k.rank() });
    }
    if is_base_point(n, a) {
        return Ok(DeformCoeffs { m_minus: S::zero(), m_plus: S::zero() });
    }
    let ac = a.to_c64();
    guard(ac)?;
    if S::from_real(0.0).is_none() {
        return Err(Error::ExactUnavailable(
            "deformation coefficients involve square roots unless a = -n".into(),
        ));
    }
    let l = k.degree() as usize;
    let k1 = k.get(1) as f64;
    let m_minus = if k1 == 0.0 { 0.0 } else { k1 * inv_ratio_minus_one(n, ac, l) };
    let m_plus = (ac - l as f64) * mu_ratio(n, ac, l) + (n + l) as f64;
    let to_s = |c: Complex64| S::from_scalar(&crate::scalar::Scalar::Float(c));
    Ok(DeformCoeffs { m_minus: to_s(Complex64::new(m_minus, 0.0))?, m_plus: to_s(m_plus)? })
}
