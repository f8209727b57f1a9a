//! Multi-indices `k ∈ ℤ_{≥0}ⁿ` and the graded truncation window `|k| ≤ N`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    entries: Vec<u32>,
    degree: u32,
}

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        let degree = entries.iter().sum();
        Self { entries, degree }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![0; n])
    }

    /// `ε_j`, with `j` counted from 1 as in `k = (k₁, …, kₙ)`.
    pub fn unit(n: usize, j: usize) -> Self {
        assert!((1..=n).contains(&j), "unit index {j} out of 1..={n}");
        let mut e = vec![0; n];
        e[j - 1] = 1;
        Self::new(e)
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// `|k|`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `k_j`, 1-based.
    pub fn get(&self, j: usize) -> u32 {
        self.entries[j - 1]
    }

    /// `k + ε_up − ε_down` (1-based positions), `None` if an entry would go negative.
    pub fn shifted(&self, up: Option<usize>, down: Option<usize>) -> Option<MultiIndex> {
        let mut e = self.entries.clone();
        if let Some(d) = down {
            e[d - 1] = e[d - 1].checked_sub(1)?;
        }
        if let Some(u) = up {
            e[u - 1] += 1;
        }
        Some(MultiIndex::new(e))
    }
}

/// Graded lexicographic order: by degree, then lexicographically descending
/// inside a level, so `(1,0) < (0,1)` and `(2,0) < (1,1) < (0,2)`.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.entries.cmp(&self.entries))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}

/// `binom(n, k)` as f64-safe u128.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// All `k` of one level `|k| = d`, in window order.
fn level(n: usize, d: u32, out: &mut Vec<MultiIndex>) {
    fn rec(prefix: &mut Vec<u32>, n: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
        if prefix.len() + 1 == n {
            prefix.push(remaining);
            out.push(MultiIndex::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in (0..=remaining).rev() {
            prefix.push(first);
            rec(prefix, n, remaining - first, out);
            prefix.pop();
        }
    }
    rec(&mut Vec::with_capacity(n), n, d, out);
}

/// Every `k` with `|k| ≤ cutoff` in graded lexicographic order; there are
/// `binom(cutoff + n, n)` of them.
pub fn enumerate_basis(n: usize, cutoff: usize) -> Vec<MultiIndex> {
    assert!(n >= 1, "rank must be at least 1");
    let mut out = Vec::with_capacity(binomial((cutoff + n) as u64, n as u64) as usize);
    for d in 0..=cutoff as u32 {
        level(n, d, &mut out);
    }
    out
}

/// The truncation window with its position map.
#[derive(Debug, Clone)]
pub struct Basis {
    n: usize,
    cutoff: usize,
    indices: Vec<MultiIndex>,
    position: HashMap<MultiIndex, usize>,
    level_start: Vec<usize>,
}

impl Basis {
    pub fn new(n: usize, cutoff: usize) -> Self {
        let indices = enumerate_basis(n, cutoff);
        let position = indices.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        let mut level_start = vec![0; cutoff + 2];
        for d in 0..=cutoff + 1 {
            level_start[d] = binomial((d + n) as u64 - 1, n as u64) as usize;
        }
        level_start[0] = 0;
        Self { n, cutoff, indices, position, level_start }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn get(&self, pos: usize) -> &MultiIndex {
        &self.indices[pos]
    }

    pub fn position(&self, k: &MultiIndex) -> Option<usize> {
        self.position.get(k).copied()
    }

    pub fn contains(&self, k: &MultiIndex) -> bool {
        k.rank() == self.n && (k.degree() as usize) <= self.cutoff
    }

    /// Positions of the level `|k| = d`.
    pub fn level_range(&self, d: usize) -> std::ops::Range<usize> {
        assert!(d <= self.cutoff);
        self.level_start[d]..self.level_start[d + 1]
    }

    /// Basis vectors with `|k| ≤ cutoff − depth`.
    pub fn interior(&self, depth: usize) -> &[MultiIndex] {
        if depth > self.cutoff {
            return &[];
        }
        &self.indices[..self.level_start[self.cutoff - depth + 1]]
    }
}
