//! Truncated realizations of the degree-1 module `N(a,0,…,0)`.
//!
//! Four kinds share one basis window `|k| ≤ N`:
//!
//! * `BaseP`: the holomorphic monomials `P(k)` on the sphere, the `a = −n` point;
//! * `BblX`: the basis `x(k)` with `F₀·x(k) = (a−|k|)x(k+ε₁)`;
//! * `DeformedE`: the basis `e(k)` carrying the `μ_a`-deformed action;
//! * `Finite`: `a = m ∈ ℤ_{≥0}` with the window `|k| ≤ m`, which is invariant.
//!
//! Every Chevalley generator acts as a weighted shift, so an action table is
//! one optional `(target, coefficient)` entry per basis vector. Tables are
//! built on first use and then shared.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use serde::Serialize;

use crate::deform::{guard, mu_ratio};
use crate::error::{Error, Result};
use crate::generator::{GeneratorId, GeneratorKind};
use crate::multi_index::{Basis, MultiIndex};
use crate::scalar::{Field, Scalar};
use crate::sparse::SparseVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RealizationKind {
    BaseP,
    BblX,
    DeformedE,
    Finite,
}

impl fmt::Display for RealizationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RealizationKind::BaseP => "base",
            RealizationKind::BblX => "bbl",
            RealizationKind::DeformedE => "deformed",
            RealizationKind::Finite => "finite",
        })
    }
}

impl FromStr for RealizationKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "base" | "base_p" | "p" => Ok(Self::BaseP),
            "bbl" | "bbl_x" | "x" => Ok(Self::BblX),
            "deformed" | "deformed_e" | "e" => Ok(Self::DeformedE),
            "finite" => Ok(Self::Finite),
            _ => Err(Error::Parse(format!("unknown realization kind '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModuleParams<S> {
    /// Rank; the algebra is `sl(n+1, ℂ)`.
    pub n: usize,
    pub a: S,
    pub cutoff: usize,
}

impl<S: Field> ModuleParams<S> {
    pub fn new(n: usize, a: S, cutoff: usize) -> Self {
        Self { n, a, cutoff }
    }

    /// Parameters of the undeformed sphere action (`a = −n`).
    pub fn base(n: usize, cutoff: usize) -> Self {
        Self { n, a: S::from_i64(-(n as i64)), cutoff }
    }

    /// The finite-dimensional case `a = m`, window `|k| ≤ m`.
    pub fn finite(n: usize, m: usize) -> Self {
        Self { n, a: S::from_i64(m as i64), cutoff: m }
    }

    pub fn is_base_point(&self) -> bool {
        self.a == S::from_i64(-(self.n as i64))
    }
}

/// Where a weighted shift sends a basis vector.
#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    Inside(usize),
    Outside(MultiIndex),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftEntry<S> {
    pub target: Target,
    pub coeff: S,
}

type Table<S> = Vec<Option<ShiftEntry<S>>>;

/// A realization restricted to the window `|k| ≤ cutoff`.
#[derive(Debug, Clone)]
pub struct TruncatedModule<S: Field> {
    params: ModuleParams<S>,
    kind: RealizationKind,
    basis: Arc<Basis>,
    log_norm_sq: Arc<Vec<f64>>,
    tables: Arc<Vec<OnceLock<Table<S>>>>,
    fault: Option<(GeneratorId, S)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModuleSummary {
    pub kind: RealizationKind,
    pub n: usize,
    pub a: Scalar,
    pub cutoff: usize,
    pub dimension: usize,
}

/// One nonzero entry of an exported action matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CooEntry {
    pub row: usize,
    pub col: usize,
    pub re: f64,
    pub im: f64,
}

fn validate<S: Field>(kind: RealizationKind, p: &ModuleParams<S>) -> Result<()> {
    if p.n == 0 {
        return Err(Error::InvalidParameter("rank n must be at least 1".into()));
    }
    let ac = p.a.to_c64();
    match kind {
        RealizationKind::BaseP => {
            if !p.is_base_point() {
                return Err(Error::InvalidParameter(format!(
                    "the base realization has a = -n = {}, got {}",
                    -(p.n as i64),
                    p.a
                )));
            }
        }
        RealizationKind::Finite => {
            let m = p.a.as_integer().filter(|m| *m >= 0).ok_or_else(|| {
                Error::InvalidParameter(format!("finite realization needs a ∈ ℤ≥0, got {}", p.a))
            })?;
            if p.cutoff as i64 != m {
                return Err(Error::InvalidParameter(format!(
                    "finite realization needs cutoff = a = {m}, got {}",
                    p.cutoff
                )));
            }
        }
        RealizationKind::BblX | RealizationKind::DeformedE => {
            if let Some(m) = p.a.as_integer().filter(|m| *m >= 0) {
                return Err(Error::GuardedParameter {
                    a: p.a.to_string(),
                    reason: format!("a = {m} ∈ ℤ≥0 is only realized by the finite kind"),
                });
            }
            guard(ac)?;
            if kind == RealizationKind::DeformedE && S::from_real(0.0).is_none() && !p.is_base_point() {
                return Err(Error::ExactUnavailable(
                    "the deformed action involves √ factors; use the float path unless a = -n".into(),
                ));
            }
        }
    }
    Ok(())
}

/// `ln ‖basis vector k‖²` for every window element.
fn log_norms(kind: RealizationKind, n: usize, a: Complex64, basis: &Basis) -> Vec<f64> {
    let cutoff = basis.cutoff();
    let mut log_fact = vec![0.0; cutoff + 1];
    for j in 1..=cutoff {
        log_fact[j] = log_fact[j - 1] + (j as f64).ln();
    }
    // prefix sums of ln w_j, w_j = j+n−1 (sphere norm) or |j−a−1| (x-basis norm)
    let mut level = vec![0.0; cutoff + 1];
    for j in 1..=cutoff {
        let w = match kind {
            RealizationKind::BaseP | RealizationKind::DeformedE => (j + n - 1) as f64,
            RealizationKind::BblX | RealizationKind::Finite => (Complex64::new(j as f64 - 1.0, 0.0) - a).norm(),
        };
        level[j] = level[j - 1] + w.ln();
    }
    basis
        .indices()
        .iter()
        .map(|k| k.entries().iter().map(|&e| log_fact[e as usize]).sum::<f64>() - level[k.degree() as usize])
        .collect()
}

fn gen_slot(g: GeneratorId, n: usize) -> usize {
    let base = match g.kind {
        GeneratorKind::H => 0,
        GeneratorKind::E => 1,
        GeneratorKind::F => 2,
        _ => unreachable!("tables hold Chevalley generators only"),
    };
    base * n + g.index
}

impl<S: Field> TruncatedModule<S> {
    pub fn build(kind: RealizationKind, params: ModuleParams<S>) -> Result<Self> {
        validate(kind, &params)?;
        let basis = Arc::new(Basis::new(params.n, params.cutoff));
        let log_norm_sq = Arc::new(log_norms(kind, params.n, params.a.to_c64(), &basis));
        let tables = Arc::new((0..3 * params.n).map(|_| OnceLock::new()).collect());
        Ok(Self { params, kind, basis, log_norm_sq, tables, fault: None })
    }

    pub fn kind(&self) -> RealizationKind {
        self.kind
    }

    pub fn params(&self) -> &ModuleParams<S> {
        &self.params
    }

    pub fn rank(&self) -> usize {
        self.params.n
    }

    pub fn a(&self) -> &S {
        &self.params.a
    }

    pub fn cutoff(&self) -> usize {
        self.params.cutoff
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn summary(&self) -> ModuleSummary {
        ModuleSummary {
            kind: self.kind,
            n: self.params.n,
            a: self.params.a.to_scalar(),
            cutoff: self.params.cutoff,
            dimension: self.dimension(),
        }
    }

    /// The undeformed sphere action on the same window; its generators
    /// define the norm tower for the deformed family.
    pub fn base_module(&self) -> Result<Self> {
        Self::build(RealizationKind::BaseP, ModuleParams::base(self.params.n, self.params.cutoff))
    }

    /// A copy whose Chevalley generator `g` has `offset` added to every
    /// nonzero coefficient. Used to check that the relation sweep notices
    /// corrupted tables.
    pub fn with_fault(&self, g: GeneratorId, offset: S) -> Result<Self> {
        if !g.is_chevalley() {
            return Err(Error::InvalidParameter("faults are injected on Chevalley generators".into()));
        }
        g.check_rank(self.params.n)?;
        let mut out = self.clone();
        out.tables = Arc::new((0..3 * self.params.n).map(|_| OnceLock::new()).collect());
        out.fault = Some((g, offset));
        Ok(out)
    }

    pub fn log_norm_sq(&self, pos: usize) -> f64 {
        self.log_norm_sq[pos]
    }

    /// `‖basis vector‖²` at window position `pos`.
    pub fn norm_sq(&self, pos: usize) -> f64 {
        self.log_norm_sq[pos].exp()
    }

    pub fn norm_sq_of(&self, k: &MultiIndex) -> Option<f64> {
        self.basis.position(k).map(|p| self.norm_sq(p))
    }

    /// `μ(l+1)/μ(l)` as a field element (exactly one at the base point).
    fn ratio(&self, l: usize) -> S {
        if self.params.is_base_point() {
            S::one()
        } else {
            S::from_real(mu_ratio(self.params.n, self.params.a.to_c64(), l))
                .expect("float path checked at build time")
        }
    }

    /// The raw coefficient of Chevalley generator `g` at `k`: target label
    /// and coefficient, or `None` when the image is zero.
    pub fn chevalley_image(&self, g: GeneratorId, k: &MultiIndex) -> Option<(MultiIndex, S)> {
        let n = self.params.n;
        let j = g.index;
        let l = k.degree() as i64;
        let int = |v: i64| S::from_i64(v);
        // H₀(a) = H₀ + (n+a) on the deformed kind has the same eigenvalue as the x-basis
        let a = match self.kind {
            RealizationKind::BaseP => int(-(n as i64)),
            _ => self.params.a.clone(),
        };
        let (target, coeff) = match (g.kind, j) {
            (GeneratorKind::H, 0) => (k.clone(), a - int(k.get(1) as i64 + l)),
            (GeneratorKind::H, _) => (k.clone(), int(k.get(j) as i64 - k.get(j + 1) as i64)),
            (GeneratorKind::E, 0) => {
                let k1 = k.get(1) as i64;
                let c = match self.kind {
                    RealizationKind::DeformedE if k1 > 0 => int(k1) / self.ratio(l as usize - 1),
                    _ => int(k1),
                };
                (k.shifted(None, Some(1))?, c)
            }
            (GeneratorKind::F, 0) => {
                let c = a - int(l);
                let c = match self.kind {
                    RealizationKind::DeformedE => c * self.ratio(l as usize),
                    _ => c,
                };
                (k.shifted(Some(1), None)?, c)
            }
            (GeneratorKind::E, _) => (k.shifted(Some(j), Some(j + 1))?, int(k.get(j + 1) as i64)),
            (GeneratorKind::F, _) => (k.shifted(Some(j + 1), Some(j))?, int(k.get(j) as i64)),
            _ => unreachable!("chevalley_image takes H, E or F"),
        };
        if coeff.is_zero() {
            return None;
        }
        let coeff = match &self.fault {
            Some((fg, offset)) if *fg == g => coeff + offset.clone(),
            _ => coeff,
        };
        Some((target, coeff))
    }

    fn table(&self, g: GeneratorId) -> &Table<S> {
        self.tables[gen_slot(g, self.params.n)].get_or_init(|| {
            self.basis
                .indices()
                .iter()
                .map(|k| {
                    self.chevalley_image(g, k).map(|(t, coeff)| ShiftEntry {
                        target: match self.basis.position(&t) {
                            Some(p) => Target::Inside(p),
                            None => Target::Outside(t),
                        },
                        coeff,
                    })
                })
                .collect()
        })
    }

    /// Table entry of a Chevalley generator at window position `pos`.
    pub fn shift(&self, g: GeneratorId, pos: usize) -> Option<&ShiftEntry<S>> {
        debug_assert!(g.is_chevalley());
        self.table(g)[pos].as_ref()
    }

    fn check_vector(&self, v: &SparseVector<S>) -> Result<()> {
        for (k, _) in v.iter() {
            if k.rank() != self.params.n {
                return Err(Error::RankMismatch { expected: self.params.n, got: k.rank() });
            }
            if k.degree() as usize > self.params.cutoff {
                return Err(Error::OutsideWindow(k.to_string()));
            }
        }
        Ok(())
    }

    /// Applies `g` to `v`. Images past the window are removed and their size
    /// accumulated in the result's boundary mass (which also inherits `v`'s).
    pub fn apply(&self, g: GeneratorId, v: &SparseVector<S>) -> Result<SparseVector<S>> {
        g.check_rank(self.params.n)?;
        self.check_vector(v)?;
        let mut out = SparseVector::zero();
        out.add_boundary(v.boundary_mass());
        for (ch, c) in g.chevalley_expansion::<S>() {
            let table = self.table(ch);
            for (k, vk) in v.iter() {
                let pos = self.basis.position(k).expect("checked in window");
                if let Some(entry) = &table[pos] {
                    let term = c.clone() * vk.clone() * entry.coeff.clone();
                    match &entry.target {
                        Target::Inside(p) => out.add_term(self.basis.get(*p).clone(), term),
                        Target::Outside(_) => out.add_boundary(term.abs()),
                    }
                }
            }
        }
        Ok(out)
    }

    /// Applies a word `g_1 g_2 ⋯ g_m` (rightmost first).
    pub fn apply_word(&self, word: &[GeneratorId], v: &SparseVector<S>) -> Result<SparseVector<S>> {
        word.iter().rev().try_fold(v.clone(), |acc, g| self.apply(*g, &acc))
    }

    /// In-window action matrix of `g` in coordinate format.
    pub fn action_coo(&self, g: GeneratorId) -> Result<Vec<CooEntry>> {
        g.check_rank(self.params.n)?;
        let mut out = Vec::new();
        for (col, k) in self.basis.indices().iter().enumerate() {
            let image = self.apply(g, &SparseVector::basis(k.clone()))?;
            for (t, c) in image.iter() {
                let row = self.basis.position(t).expect("in window");
                let c = c.to_c64();
                out.push(CooEntry { row, col, re: c.re, im: c.im });
            }
        }
        out.sort_by_key(|e| (e.row, e.col));
        Ok(out)
    }

    /// `‖v‖` in the module's Hilbert weights.
    pub fn norm(&self, v: &SparseVector<S>) -> f64 {
        v.iter()
            .map(|(k, c)| {
                let p = self.basis.position(k).expect("vector in window");
                c.to_c64().norm_sqr() * self.norm_sq(p)
            })
            .sum::<f64>()
            .sqrt()
    }
}

/// Relative discrepancy between the deformed action conjugated by
/// `e(k) ↦ μ(|k|)e(k)` and the x-basis action, maximized over Chevalley
/// generators and `|k| ≤ cutoff − 1`.
pub fn change_of_basis_defect<S: Field>(params: &ModuleParams<S>) -> Result<f64> {
    let ac = params.a.to_c64();
    let deformed = TruncatedModule::build(RealizationKind::DeformedE, params.clone())?;
    let bbl = TruncatedModule::build(RealizationKind::BblX, params.clone())?;
    let n = params.n;
    let base_point = params.is_base_point();
    // μ(|t|)/μ(|k|) for |t| − |k| ∈ {−1, 0, 1}
    let mu_quot = |from: u32, to: u32| -> S {
        if base_point || from == to {
            S::one()
        } else if to == from + 1 {
            S::from_real(mu_ratio(n, ac, from as usize)).expect("float path")
        } else {
            S::from_real(1.0 / mu_ratio(n, ac, to as usize)).expect("float path")
        }
    };
    let mut worst: f64 = 0.0;
    for g in crate::generator::chevalley_generators(n) {
        for k in deformed.basis().interior(1) {
            let d = deformed.chevalley_image(g, k);
            let x = bbl.chevalley_image(g, k);
            let defect = match (d, x) {
                (None, None) => 0.0,
                (Some((td, cd)), Some((tx, cx))) if td == tx => {
                    // g·x(k) = μ(|k|)/μ(|t|)·c_e·x(t)
                    let conj = cd / mu_quot(k.degree(), td.degree());
                    let diff = conj - cx.clone();
                    if diff.is_zero() {
                        0.0
                    } else {
                        diff.abs() / cx.abs().max(f64::MIN_POSITIVE)
                    }
                }
                _ => f64::INFINITY,
            };
            worst = worst.max(defect);
        }
    }
    Ok(worst)
}
