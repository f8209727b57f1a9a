use std::collections::HashMap;

use serde::Serialize;

use crate::generator::GeneratorId;
use crate::multi_index::MultiIndex;
use crate::realization::TruncatedModule;
use crate::scalar::{Field, Scalar, WeightKey};

/// `(λ(H₀), …, λ(H_{n−1}))` of the basis vector `k`.
pub fn weight_of<S: Field>(module: &TruncatedModule<S>, k: &MultiIndex) -> Vec<S> {
    (0..module.rank())
        .map(|j| match module.chevalley_image(GeneratorId::h(j), k) {
            Some((_, c)) => c,
            None => S::zero(),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightSpace {
    pub weight: Vec<Scalar>,
    pub members: Vec<MultiIndex>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightTable {
    /// Ordered by the first member's window position.
    pub spaces: Vec<WeightSpace>,
    pub degree: usize,
}

impl WeightTable {
    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    pub fn total(&self) -> usize {
        self.spaces.iter().map(|s| s.members.len()).sum()
    }
}

/// Groups the window basis by weight. Exact weights compare exactly, float
/// weights on a 1e-9 grid.
pub fn weight_decomposition<S: Field>(module: &TruncatedModule<S>) -> WeightTable {
    let mut index: HashMap<Vec<WeightKey>, usize> = HashMap::new();
    let mut spaces: Vec<WeightSpace> = Vec::new();
    for k in module.basis().indices() {
        let w = weight_of(module, k);
        let key: Vec<WeightKey> = w.iter().map(Field::weight_key).collect();
        match index.get(&key) {
            Some(&i) => spaces[i].members.push(k.clone()),
            None => {
                index.insert(key, spaces.len());
                spaces.push(WeightSpace { weight: w.iter().map(Field::to_scalar).collect(), members: vec![k.clone()] });
            }
        }
    }
    let degree = spaces.iter().map(|s| s.members.len()).max().unwrap_or(0);
    WeightTable { spaces, degree }
}
