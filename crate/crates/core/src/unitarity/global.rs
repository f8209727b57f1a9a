//! Compares the group action `ρ(g)P(k)(z) = L₀(z)^{−n−|k|} ∏ L_i(z)^{k_i}`,
//! with `L_i(z) = (g⁻¹)_{i0} + Σ_j (g⁻¹)_{ij} z_j`, against the exponential
//! of the truncated infinitesimal generator on the monomials `P(k)`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::series::PowerSeries;
use crate::error::{Error, Result};
use crate::generator::GeneratorId;
use crate::multi_index::{Basis, MultiIndex};
use crate::realization::{ModuleParams, RealizationKind, TruncatedModule};
use crate::sparse::SparseVector;

/// One-parameter subgroups `e^{itH_j}`, `e^{tX_j}`, `e^{tY_j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubgroupId {
    H(usize),
    X(usize),
    Y(usize),
}

impl SubgroupId {
    pub fn all(n: usize) -> Vec<Self> {
        (0..n).flat_map(|j| [SubgroupId::H(j), SubgroupId::X(j), SubgroupId::Y(j)]).collect()
    }

    pub fn index(&self) -> usize {
        match *self {
            SubgroupId::H(j) | SubgroupId::X(j) | SubgroupId::Y(j) => j,
        }
    }

    /// The Lie algebra element `A` with `g(t) = e^{tA}`.
    pub fn generator(&self) -> GeneratorId {
        match *self {
            SubgroupId::H(j) => GeneratorId::ih(j),
            SubgroupId::X(j) => GeneratorId::x(j),
            SubgroupId::Y(j) => GeneratorId::y(j),
        }
    }

    /// `g(t)` as an `(n+1)×(n+1)` matrix acting on `(z₀, z₁, …, z_n)`.
    pub fn matrix(&self, n: usize, t: f64) -> Vec<Vec<Complex64>> {
        let zero = Complex64::new(0.0, 0.0);
        let re = |x: f64| Complex64::new(x, 0.0);
        let im = |x: f64| Complex64::new(0.0, x);
        let mut g: Vec<Vec<Complex64>> = (0..=n).map(|i| (0..=n).map(|j| if i == j { re(1.0) } else { zero }).collect()).collect();
        let j = self.index();
        let block = match (*self, j) {
            (SubgroupId::H(_), _) => [[Complex64::from_polar(1.0, -t), zero], [zero, Complex64::from_polar(1.0, t)]],
            (SubgroupId::X(_), 0) => [[re(t.cosh()), re(-t.sinh())], [re(-t.sinh()), re(t.cosh())]],
            (SubgroupId::Y(_), 0) => [[re(t.cosh()), im(-t.sinh())], [im(t.sinh()), re(t.cosh())]],
            (SubgroupId::X(_), _) => [[re(t.cos()), re(-t.sin())], [re(t.sin()), re(t.cos())]],
            (SubgroupId::Y(_), _) => [[re(t.cos()), im(-t.sin())], [im(-t.sin()), re(t.cos())]],
        };
        for (a, row) in block.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                g[j + a][j + b] = *v;
            }
        }
        g
    }

    /// `g(t)⁻¹ = g(−t)`.
    pub fn inverse_matrix(&self, n: usize, t: f64) -> Vec<Vec<Complex64>> {
        self.matrix(n, -t)
    }
}

impl fmt::Display for SubgroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupId::H(j) => write!(f, "H{j}"),
            SubgroupId::X(j) => write!(f, "X{j}"),
            SubgroupId::Y(j) => write!(f, "Y{j}"),
        }
    }
}

impl FromStr for SubgroupId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, idx) = s.split_at(s.find(|c: char| c.is_ascii_digit()).ok_or_else(|| Error::Parse(format!("subgroup '{s}' has no index")))?);
        let j: usize = idx.parse().map_err(|_| Error::Parse(format!("bad subgroup index in '{s}'")))?;
        match head.to_ascii_lowercase().as_str() {
            "h" | "ih" => Ok(SubgroupId::H(j)),
            "x" => Ok(SubgroupId::X(j)),
            "y" => Ok(SubgroupId::Y(j)),
            _ => Err(Error::Parse(format!("unknown subgroup '{s}'"))),
        }
    }
}

impl Serialize for SubgroupId {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        s.collect_str(self)
    }
}

/// Smallest `|(g⁻¹)_{00}|` accepted before the cocycle is declared degenerate.
pub const COCYCLE_MIN: f64 = 1e-8;

#[derive(Debug, Clone, Serialize)]
pub struct GlobalComparison {
    pub subgroup: SubgroupId,
    pub t: f64,
    pub cutoff: usize,
    pub buffer: usize,
    pub discrepancy: f64,
    /// `(k, coefficient label)` where the maximum occurs.
    pub at: Option<(String, String)>,
}

/// `ρ(g)P(k)` as a power series truncated at total degree `cap`.
fn group_side(ginv: &[Vec<Complex64>], k: &MultiIndex, basis: &Arc<Basis>) -> Result<PowerSeries> {
    let n = k.rank();
    let c = ginv[0][0];
    if c.norm() < COCYCLE_MIN {
        return Err(Error::DegenerateCocycle(c.norm()));
    }
    let w = PowerSeries::linear(basis.clone(), Complex64::new(0.0, 0.0), &ginv[0][1..].iter().map(|x| x / c).collect::<Vec<_>>());
    let p = (n + k.degree() as usize) as u32;
    let mut out = PowerSeries::one_plus_pow_neg(&w, p).scale(c.powi(-(p as i32)));
    for i in 1..=n {
        let ki = k.get(i);
        if ki > 0 {
            out = out.mul(&PowerSeries::linear(basis.clone(), ginv[i][0], &ginv[i][1..]).pow(ki));
        }
    }
    Ok(out)
}

/// `exp(tA)P(k)` by its Taylor series inside the window.
fn algebra_side(module: &TruncatedModule<Complex64>, a: GeneratorId, t: f64, k: &MultiIndex) -> Result<SparseVector<Complex64>> {
    let mut sum = SparseVector::basis(k.clone());
    let mut term = sum.clone();
    for m in 1..200 {
        term = module.apply(a, &term)?.scale(&Complex64::new(t / m as f64, 0.0));
        // the truncation error is what is being measured, so boundary mass is dropped
        term = SparseVector::from_terms(term.iter().map(|(k, c)| (k.clone(), *c)));
        sum.axpy(&Complex64::new(1.0, 0.0), &term);
        if term.max_abs() < 1e-18 * sum.max_abs().max(1.0) {
            break;
        }
    }
    Ok(sum)
}

/// Max coefficient discrepancy between the two sides over `|k| ≤ N − buffer`
/// and output degrees `≤ N − buffer`.
pub fn global_vs_infinitesimal(n: usize, sub: SubgroupId, t: f64, cutoff: usize, buffer: usize) -> Result<GlobalComparison> {
    if sub.index() >= n {
        return Err(Error::GeneratorOutOfRange { index: sub.index(), rank: n });
    }
    if t.is_nan() || t.abs() > 0.25 {
        return Err(Error::InvalidParameter(format!("|t| must be at most 0.25, got {t}")));
    }
    if buffer < 2 || buffer > cutoff {
        return Err(Error::InvalidParameter(format!("buffer must lie in [2, N], got {buffer} with N = {cutoff}")));
    }
    let module = TruncatedModule::<Complex64>::build(RealizationKind::BaseP, ModuleParams::base(n, cutoff))?;
    let cap = cutoff - buffer;
    let small = Arc::new(Basis::new(n, cap));
    let ginv = sub.inverse_matrix(n, t);
    let a = sub.generator();
    let results: Vec<(f64, Option<(String, String)>)> = small
        .indices()
        .par_iter()
        .map(|k| -> Result<_> {
            let g = group_side(&ginv, k, &small)?;
            let alg = algebra_side(&module, a, t, k)?;
            let mut worst = (0.0, None);
            for (pos, out) in small.indices().iter().enumerate() {
                let d = (g.coeffs()[pos] - alg.get(out).copied().unwrap_or_default()).norm();
                if d > worst.0 {
                    worst = (d, Some((k.to_string(), out.to_string())));
                }
            }
            Ok(worst)
        })
        .collect::<Result<_>>()?;
    let (discrepancy, at) = results.into_iter().fold((0.0, None), |acc, r| if r.0 > acc.0 { r } else { acc });
    Ok(GlobalComparison { subgroup: sub, t, cutoff, buffer, discrepancy, at })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices_are_in_su_1n() {
        // g* J g = J with J = diag(−1, 1, …, 1)
        for sub in SubgroupId::all(3) {
            let g = sub.matrix(3, 0.2);
            for i in 0..4 {
                for j in 0..4 {
                    let mut s = Complex64::new(0.0, 0.0);
                    for r in 0..4 {
                        let sign = if r == 0 { -1.0 } else { 1.0 };
                        s += g[r][i].conj() * g[r][j] * sign;
                    }
                    let want = if i != j { 0.0 } else if i == 0 { -1.0 } else { 1.0 };
                    assert!((s - want).norm() < 1e-14, "{sub}: ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn diagonal_subgroups_agree_to_rounding() {
        for j in 0..2 {
            for t in [0.05, 0.25, -0.2] {
                let c = global_vs_infinitesimal(2, SubgroupId::H(j), t, 8, 2).unwrap();
                assert!(c.discrepancy <= 1e-12, "{c:?}");
            }
        }
    }

    #[test]
    fn identity_at_zero() {
        for sub in SubgroupId::all(2) {
            assert_eq!(global_vs_infinitesimal(2, sub, 0.0, 8, 3).unwrap().discrepancy, 0.0);
        }
    }

    #[test]
    fn compact_rotations_preserve_degree() {
        let c = global_vs_infinitesimal(2, SubgroupId::X(1), 0.2, 8, 2).unwrap();
        assert!(c.discrepancy <= 1e-12, "{c:?}");
        let c = global_vs_infinitesimal(2, SubgroupId::Y(1), 0.2, 8, 2).unwrap();
        assert!(c.discrepancy <= 1e-12, "{c:?}");
    }

    #[test]
    fn noncompact_directions_converge_with_buffer() {
        let d: Vec<f64> = (2..=5).map(|b| global_vs_infinitesimal(2, SubgroupId::X(0), 0.1, 10, b).unwrap().discrepancy).collect();
        assert!(d.windows(2).all(|w| w[1] <= w[0]), "{d:?}");
        assert!(d[2] <= 1e-6, "{d:?}");
    }

    #[test]
    fn parameter_checks() {
        assert!(global_vs_infinitesimal(2, SubgroupId::X(0), 0.3, 10, 4).is_err());
        assert!(global_vs_infinitesimal(2, SubgroupId::X(0), 0.1, 10, 1).is_err());
        assert!(global_vs_infinitesimal(2, SubgroupId::X(2), 0.1, 10, 4).is_err());
        assert_eq!("y0".parse::<SubgroupId>().unwrap(), SubgroupId::Y(0));
        assert_eq!("iH1".parse::<SubgroupId>().unwrap(), SubgroupId::H(1));
    }
}
