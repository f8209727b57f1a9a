//! Highest-weight vectors, Levi branching, central characters and the
//! finite-type test.
//!
//! All Chevalley generators act as weighted shifts with injective index
//! maps, so a combination is killed by a raising operator exactly when each
//! of its basis components is. Testing basis vectors one at a time is
//! therefore the whole kernel computation.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::classify::{label_to_hw, Affine, ModuleLabel};
use crate::error::{Error, Result};
use crate::generator::{CartanData, GeneratorId, GeneratorKind};
use crate::multi_index::MultiIndex;
use crate::realization::TruncatedModule;
use crate::scalar::{Field, Scalar, ScalarMode};
use crate::sparse::SparseVector;

use super::weights::weight_of;

/// The full algebra, or the maximal Levi `l_j` obtained by deleting node `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LeviId {
    Full,
    Levi(usize),
}

impl LeviId {
    fn nodes(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        (0..n).filter(move |k| *self != LeviId::Levi(*k))
    }

    fn check(&self, n: usize) -> Result<()> {
        match self {
            LeviId::Levi(j) if *j >= n => Err(Error::GeneratorOutOfRange { index: *j, rank: n }),
            _ => Ok(()),
        }
    }

    pub fn raising(&self, n: usize) -> Vec<GeneratorId> {
        self.nodes(n).map(GeneratorId::e).collect()
    }

    pub fn lowering(&self, n: usize) -> Vec<GeneratorId> {
        self.nodes(n).map(GeneratorId::f).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ActionType {
    LocallyFinite,
    Injective,
    Undetermined,
}

/// Classifies a root vector on the window. Seeds are the basis vectors with
/// `|k| ≤ N − depth`; a chain that leaves the window is not counted as
/// terminating.
pub fn action_type<S: Field>(module: &TruncatedModule<S>, g: GeneratorId, depth: usize) -> Result<ActionType> {
    g.check_rank(module.rank())?;
    if !matches!(g.kind, GeneratorKind::E | GeneratorKind::F) {
        return Err(Error::InvalidParameter(format!("{g} is not a Chevalley root vector")));
    }
    let seeds = module.basis().interior(depth);
    let max_steps = module.cutoff() + 1;
    let terminates = |k: &MultiIndex| {
        let mut cur = k.clone();
        for _ in 0..=max_steps {
            match module.chevalley_image(g, &cur) {
                None => return true,
                Some((t, _)) if module.basis().position(&t).is_none() => return false,
                Some((t, _)) => cur = t,
            }
        }
        false
    };
    if seeds.iter().all(terminates) {
        return Ok(ActionType::LocallyFinite);
    }
    let mut targets = BTreeSet::new();
    let injective = seeds.iter().all(|k| match module.chevalley_image(g, k) {
        Some((t, _)) => targets.insert(t),
        None => false,
    });
    Ok(if injective { ActionType::Injective } else { ActionType::Undetermined })
}

#[derive(Debug, Clone, Serialize)]
pub struct HighestWeightSearch {
    pub seeds: Vec<MultiIndex>,
    /// Vectors whose raising image vanished only because it left the window.
    pub flagged: Vec<MultiIndex>,
}

impl HighestWeightSearch {
    pub fn vectors<S: Field>(&self) -> Vec<SparseVector<S>> {
        self.seeds.iter().cloned().map(SparseVector::basis).collect()
    }
}

/// Basis vectors killed by every raising operator of `levi` within the window.
pub fn highest_weight_vectors<S: Field>(module: &TruncatedModule<S>, levi: LeviId) -> Result<HighestWeightSearch> {
    let n = module.rank();
    levi.check(n)?;
    let raising = levi.raising(n);
    let mut seeds = Vec::new();
    let mut flagged = Vec::new();
    for k in module.basis().indices() {
        let mut killed = true;
        let mut leaked = false;
        for g in &raising {
            if let Some((t, _)) = module.chevalley_image(*g, k) {
                if module.basis().position(&t).is_some() {
                    killed = false;
                    break;
                }
                leaked = true;
            }
        }
        match (killed, leaked) {
            (true, false) => seeds.push(k.clone()),
            (true, true) => flagged.push(k.clone()),
            _ => {}
        }
    }
    Ok(HighestWeightSearch { seeds, flagged })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SummandStatus {
    Complete,
    /// Closure reached the window boundary.
    Undetermined,
}

#[derive(Debug, Clone, Serialize)]
pub struct BranchSummand {
    pub seed: MultiIndex,
    pub hw_weight: Vec<Scalar>,
    pub dimension: usize,
    pub span: Vec<MultiIndex>,
    pub status: SummandStatus,
}

/// Decomposes the window under `l_j`: each highest-weight vector is closed
/// under the lowering operators of `l_j`, and the spans must partition the
/// window whenever every summand is complete.
pub fn branch_levi<S: Field>(module: &TruncatedModule<S>, j: usize) -> Result<Vec<BranchSummand>> {
    let n = module.rank();
    let levi = LeviId::Levi(j);
    levi.check(n)?;
    let lowering = levi.lowering(n);
    let raising = levi.raising(n);
    let hw = highest_weight_vectors(module, levi)?;
    let mut owner: Vec<Option<usize>> = vec![None; module.dimension()];
    let mut out = Vec::with_capacity(hw.seeds.len());
    for (idx, seed) in hw.seeds.iter().enumerate() {
        let mut status = SummandStatus::Complete;
        let mut span = BTreeSet::new();
        let mut queue = VecDeque::from([seed.clone()]);
        span.insert(seed.clone());
        while let Some(k) = queue.pop_front() {
            for g in &lowering {
                if let Some((t, _)) = module.chevalley_image(*g, &k) {
                    if module.basis().position(&t).is_none() {
                        status = SummandStatus::Undetermined;
                    } else if span.insert(t.clone()) {
                        queue.push_back(t);
                    }
                }
            }
        }
        // the span must also be stable under the raising operators
        for k in &span {
            for g in &raising {
                if let Some((t, _)) = module.chevalley_image(*g, k) {
                    if !span.contains(&t) {
                        return Err(Error::PartitionFailure(format!(
                            "{g}·x{k} leaves the summand generated by x{seed}"
                        )));
                    }
                }
            }
        }
        for k in &span {
            let pos = module.basis().position(k).expect("span lies in the window");
            if let Some(other) = owner[pos] {
                return Err(Error::PartitionFailure(format!(
                    "x{k} lies in the summands of x{} and x{seed}",
                    hw.seeds[other]
                )));
            }
            owner[pos] = Some(idx);
        }
        out.push(BranchSummand {
            seed: seed.clone(),
            hw_weight: weight_of(module, seed).iter().map(Field::to_scalar).collect(),
            dimension: span.len(),
            span: span.into_iter().collect(),
            status,
        });
    }
    let complete = out.iter().all(|s| s.status == SummandStatus::Complete);
    if complete {
        if let Some(pos) = owner.iter().position(Option::is_none) {
            return Err(Error::PartitionFailure(format!(
                "x{} is not reached from any highest-weight vector",
                module.basis().get(pos)
            )));
        }
    }
    Ok(out)
}

/// Eigenvalue on `x(seed)` of the element spanning the center of `l_j`,
/// normalized as `Σ min(i,j)(n+1−max(i,j)) H_i` (1-based labels).
pub fn central_character<S: Field>(module: &TruncatedModule<S>, j: usize, seed: &MultiIndex) -> Result<S> {
    let n = module.rank();
    LeviId::Levi(j).check(n)?;
    if seed.rank() != n {
        return Err(Error::RankMismatch { expected: n, got: seed.rank() });
    }
    if module.basis().position(seed).is_none() {
        return Err(Error::OutsideWindow(seed.to_string()));
    }
    let coeffs = CartanData::type_a(n).levi_center(j);
    let v = SparseVector::basis(seed.clone());
    let mut image = SparseVector::zero();
    for (i, c) in coeffs.iter().enumerate() {
        image.axpy(&S::from_i64(*c), &module.apply(GeneratorId::h(i), &v)?);
    }
    let lambda = image.get(seed).cloned().unwrap_or_else(S::zero);
    let residual = image.sub(&v.scale(&lambda));
    if !residual.is_zero() {
        return Err(Error::NotEigenvector { seed: seed.to_string(), residual: module.norm(&residual) });
    }
    Ok(lambda)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FiniteTypeVerdict {
    FiniteType,
    NotFiniteType,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiniteTypeReport {
    pub verdict: FiniteTypeVerdict,
    pub evidence: Vec<String>,
}

fn dominant_integral<S: Field>(x: &S) -> bool {
    match S::MODE {
        ScalarMode::Exact => x.as_integer().is_some_and(|v| v >= 0),
        ScalarMode::Float => {
            let c = x.to_c64();
            c.im.abs() < 1e-9 && (c.re - c.re.round()).abs() < 1e-9 && c.re.round() >= 0.0
        }
    }
}

/// Every `l_j`-highest-weight vector in the window must have an
/// `l_j`-dominant integral weight: `λ(H_k) ∈ ℤ≥0` for all `k ≠ j`.
pub fn finite_type_check<S: Field>(module: &TruncatedModule<S>, j: usize) -> Result<FiniteTypeReport> {
    let n = module.rank();
    let levi = LeviId::Levi(j);
    let hw = highest_weight_vectors(module, levi)?;
    let mut evidence = Vec::new();
    for seed in &hw.seeds {
        let w = weight_of(module, seed);
        for k in levi.nodes(n) {
            if !dominant_integral(&w[k]) {
                evidence.push(format!("x{seed}: H{k} eigenvalue {} is not a nonnegative integer", w[k]));
            }
        }
    }
    let verdict = if evidence.is_empty() { FiniteTypeVerdict::FiniteType } else { FiniteTypeVerdict::NotFiniteType };
    Ok(FiniteTypeReport { verdict, evidence })
}

/// Label-level version for highest weight modules: the highest weight vector
/// is also `l_j`-highest, so a non-dominant-integral coefficient `λ(H_k)`,
/// `k ≠ j`, rules out finite type.
pub fn finite_type_check_label(label: &ModuleLabel, j: usize) -> Result<FiniteTypeReport> {
    let n = label.rank();
    LeviId::Levi(j).check(n)?;
    let hw = label_to_hw(label)?;
    let mut evidence = Vec::new();
    let mut undetermined = Vec::new();
    for (k, c) in hw.iter().enumerate() {
        if k == j {
            continue;
        }
        match Affine::is_nonneg_integer(c, label.a_domain) {
            Some(true) => {}
            Some(false) => evidence.push(format!("H{k} eigenvalue {c} is not a nonnegative integer")),
            None => undetermined.push(format!("H{k} eigenvalue {c}")),
        }
    }
    if evidence.is_empty() && !undetermined.is_empty() {
        return Err(Error::ParameterDependent(undetermined.join(", ")));
    }
    let verdict = if evidence.is_empty() { FiniteTypeVerdict::FiniteType } else { FiniteTypeVerdict::NotFiniteType };
    Ok(FiniteTypeReport { verdict, evidence })
}
