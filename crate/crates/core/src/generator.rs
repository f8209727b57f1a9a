//! Generator labels, real-form conversions and type-A structure constants.
//!
//! Generators are numbered `0..n` for `sl(n+1)`: `H_j`, `E_j`, `F_j` with
//! `0 ≤ j ≤ n−1`. The real-form generators satisfy
//! `E₀ = (X₀+iY₀)/2`, `F₀ = (X₀−iY₀)/2` and, for `j ≥ 1`,
//! `E_j = −(X_j+iY_j)/2`, `F_j = (X_j−iY_j)/2`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorKind {
    H,
    E,
    F,
    X,
    Y,
    /// `i·H_j`, the compact Cartan direction.
    IH,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId {
    pub kind: GeneratorKind,
    pub index: usize,
}

impl GeneratorId {
    pub const fn new(kind: GeneratorKind, index: usize) -> Self {
        Self { kind, index }
    }
    pub const fn h(j: usize) -> Self {
        Self::new(GeneratorKind::H, j)
    }
    pub const fn e(j: usize) -> Self {
        Self::new(GeneratorKind::E, j)
    }
    pub const fn f(j: usize) -> Self {
        Self::new(GeneratorKind::F, j)
    }
    pub const fn x(j: usize) -> Self {
        Self::new(GeneratorKind::X, j)
    }
    pub const fn y(j: usize) -> Self {
        Self::new(GeneratorKind::Y, j)
    }
    pub const fn ih(j: usize) -> Self {
        Self::new(GeneratorKind::IH, j)
    }

    pub fn is_chevalley(&self) -> bool {
        matches!(self.kind, GeneratorKind::H | GeneratorKind::E | GeneratorKind::F)
    }

    pub fn is_root_vector(&self) -> bool {
        matches!(self.kind, GeneratorKind::E | GeneratorKind::F)
    }

    pub fn check_rank(&self, n: usize) -> Result<()> {
        if self.index < n {
            Ok(())
        } else {
            Err(Error::GeneratorOutOfRange { index: self.index, rank: n })
        }
    }

    /// This generator as a combination of Chevalley generators.
    pub fn chevalley_expansion<S: Field>(&self) -> Vec<(GeneratorId, S)> {
        let j = self.index;
        let i = S::imag_unit();
        match self.kind {
            GeneratorKind::H | GeneratorKind::E | GeneratorKind::F => vec![(*self, S::one())],
            GeneratorKind::IH => vec![(Self::h(j), i)],
            // X₀ = E₀ + F₀, Y₀ = −i(E₀ − F₀)
            GeneratorKind::X if j == 0 => vec![(Self::e(0), S::one()), (Self::f(0), S::one())],
            GeneratorKind::Y if j == 0 => vec![(Self::e(0), -i.clone()), (Self::f(0), i)],
            // X_j = F_j − E_j, Y_j = i(E_j + F_j)
            GeneratorKind::X => vec![(Self::e(j), -S::one()), (Self::f(j), S::one())],
            GeneratorKind::Y => vec![(Self::e(j), i.clone()), (Self::f(j), i)],
        }
    }

    /// A Chevalley generator written through the real-form set `{iH_j, X_j, Y_j}`.
    pub fn real_form_expansion<S: Field>(&self) -> Vec<(GeneratorId, S)> {
        let j = self.index;
        let half = S::from_ratio(1, 2);
        let ihalf = S::imag_unit() * half.clone();
        match self.kind {
            GeneratorKind::H => vec![(Self::ih(j), -S::imag_unit())],
            GeneratorKind::E if j == 0 => vec![(Self::x(0), half), (Self::y(0), ihalf)],
            GeneratorKind::F if j == 0 => vec![(Self::x(0), half), (Self::y(0), -ihalf)],
            GeneratorKind::E => vec![(Self::x(j), -half), (Self::y(j), -ihalf)],
            GeneratorKind::F => vec![(Self::x(j), half), (Self::y(j), -ihalf)],
            _ => vec![(*self, S::one())],
        }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            GeneratorKind::H => "H",
            GeneratorKind::E => "E",
            GeneratorKind::F => "F",
            GeneratorKind::X => "X",
            GeneratorKind::Y => "Y",
            GeneratorKind::IH => "iH",
        };
        write!(f, "{name}{}", self.index)
    }
}

impl Serialize for GeneratorId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl FromStr for GeneratorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown generator '{s}'"));
        let (kind, rest) = if let Some(r) = s.strip_prefix("iH") {
            (GeneratorKind::IH, r)
        } else {
            let mut chars = s.chars();
            let kind = match chars.next().ok_or_else(bad)? {
                'H' => GeneratorKind::H,
                'E' => GeneratorKind::E,
                'F' => GeneratorKind::F,
                'X' => GeneratorKind::X,
                'Y' => GeneratorKind::Y,
                _ => return Err(bad()),
            };
            (kind, chars.as_str())
        };
        let index = rest.parse().map_err(|_| bad())?;
        Ok(Self::new(kind, index))
    }
}

/// The Chevalley generators `H_j, E_j, F_j` of rank `n`.
pub fn chevalley_generators(n: usize) -> Vec<GeneratorId> {
    let mut out = Vec::with_capacity(3 * n);
    for j in 0..n {
        out.push(GeneratorId::h(j));
    }
    for j in 0..n {
        out.push(GeneratorId::e(j));
    }
    for j in 0..n {
        out.push(GeneratorId::f(j));
    }
    out
}

/// The real-form generators `iH_j, X_j, Y_j` of rank `n`.
pub fn real_form_generators(n: usize) -> Vec<GeneratorId> {
    let mut out = Vec::with_capacity(3 * n);
    for j in 0..n {
        out.push(GeneratorId::ih(j));
    }
    for j in 0..n {
        out.push(GeneratorId::x(j));
    }
    for j in 0..n {
        out.push(GeneratorId::y(j));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Series {
    A,
    C,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    pub series: Series,
    pub rank: usize,
    pub matrix: Vec<Vec<i64>>,
}

impl CartanData {
    pub fn type_a(rank: usize) -> Self {
        let matrix = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        Self { series: Series::A, rank, matrix }
    }

    /// Type C with the long simple root last: `c_{n−2,n−1} = −2`.
    pub fn type_c(rank: usize) -> Self {
        let mut data = Self::type_a(rank);
        data.series = Series::C;
        if rank >= 2 {
            data.matrix[rank - 2][rank - 1] = -2;
        }
        data
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    /// Coefficients of the element spanning the center of the Levi `l_j`
    /// (type A), normalized to coprime integers: `(n+1)·ω_j^∨` in the `H`
    /// basis, i.e. `min(i,j)(n+1−max(i,j))` with 1-based labels. For `j = 0`
    /// this is `(n, n−1, …, 1)`.
    pub fn levi_center(&self, j: usize) -> Vec<i64> {
        assert_eq!(self.series, Series::A, "levi_center is type A only");
        let n = self.rank as i64;
        let jj = j as i64 + 1;
        (1..=n).map(|i| i.min(jj) * (n + 1 - i.max(jj))).collect()
    }

    /// Expected `[g1, g2]` for Chevalley generators, or `None` when the bracket
    /// is a non-simple root vector (adjacent `E,E` or `F,F`); those pairs are
    /// covered by the Serre relations instead.
    pub fn bracket(&self, g1: GeneratorId, g2: GeneratorId) -> Option<Vec<(GeneratorId, i64)>> {
        use GeneratorKind::*;
        let (i, j) = (g1.index, g2.index);
        let c = |a: usize, b: usize| self.entry(a, b);
        let out = match (g1.kind, g2.kind) {
            (H, H) => vec![],
            (H, E) => vec![(g2, c(i, j))],
            (E, H) => vec![(g1, -c(j, i))],
            (H, F) => vec![(g2, -c(i, j))],
            (F, H) => vec![(g1, c(j, i))],
            (E, F) => {
                if i == j {
                    vec![(GeneratorId::h(i), 1)]
                } else {
                    vec![]
                }
            }
            (F, E) => {
                if i == j {
                    vec![(GeneratorId::h(i), -1)]
                } else {
                    vec![]
                }
            }
            (E, E) | (F, F) => {
                if i == j || c(i, j) == 0 {
                    vec![]
                } else {
                    return None;
                }
            }
            _ => panic!("bracket table takes Chevalley generators only"),
        };
        Some(out.into_iter().filter(|(_, v)| *v != 0).collect())
    }

    /// `(ad X_i)^{1−c_ij} X_j = 0` words, as (i, j, exponent) with `i ≠ j` and `c_ij ≠ 0`.
    pub fn serre_pairs(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.rank {
            for j in 0..self.rank {
                if i != j && self.entry(i, j) != 0 {
                    out.push((i, j, (1 - self.entry(i, j)) as usize));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRational;

    #[test]
    fn type_a_matrix_shape() {
        let c = CartanData::type_a(4);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(c.entry(i, j), c.entry(j, i));
                let expect = match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                };
                assert_eq!(c.entry(i, j), expect);
            }
        }
    }

    #[test]
    fn levi_center_matches_known_element() {
        let c = CartanData::type_a(4);
        assert_eq!(c.levi_center(0), vec![4, 3, 2, 1]);
        assert_eq!(c.levi_center(3), vec![1, 2, 3, 4]);
        // orthogonal to every simple root but the omitted one
        for j in 0..4 {
            let z = c.levi_center(j);
            for k in 0..4 {
                let pairing: i64 = (0..4).map(|i| z[i] * c.entry(i, k)).sum();
                if k == j {
                    assert_eq!(pairing, 5);
                } else {
                    assert_eq!(pairing, 0);
                }
            }
        }
    }

    #[test]
    fn real_form_round_trip_is_exact() {
        for g in chevalley_generators(3) {
            // expand into X/Y/iH, then each of those back into Chevalley
            let mut acc: Vec<(GeneratorId, GaussRational)> = Vec::new();
            for (r, c) in g.real_form_expansion::<GaussRational>() {
                for (ch, d) in r.chevalley_expansion::<GaussRational>() {
                    let term = c.clone() * d;
                    match acc.iter_mut().find(|(id, _)| *id == ch) {
                        Some((_, v)) => *v = v.clone() + term,
                        None => acc.push((ch, term)),
                    }
                }
            }
            acc.retain(|(_, v)| !Field::is_zero(v));
            assert_eq!(acc, vec![(g, GaussRational::from_i64(1))], "{g}");
        }
    }

    #[test]
    fn parses_generator_names() {
        assert_eq!("E0".parse::<GeneratorId>().unwrap(), GeneratorId::e(0));
        assert_eq!("iH2".parse::<GeneratorId>().unwrap(), GeneratorId::ih(2));
        assert!("Z1".parse::<GeneratorId>().is_err());
    }

    #[test]
    fn serre_pairs_for_a3() {
        let pairs = CartanData::type_a(3).serre_pairs();
        assert_eq!(pairs, vec![(0, 1, 2), (1, 0, 2), (1, 2, 2), (2, 1, 2)]);
    }
}
