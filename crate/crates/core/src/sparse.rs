use std::collections::BTreeMap;

use crate::multi_index::MultiIndex;
use crate::scalar::Field;

/// A finite linear combination of basis labels.
///
/// Components pushed past the truncation window are not stored; their
/// absolute coefficient sum is kept in `boundary_mass` instead. A vector
/// with `boundary_mass == 0` is exactly represented.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVector<S> {
    coeffs: BTreeMap<MultiIndex, S>,
    boundary_mass: f64,
}

impl<S: Field> Default for SparseVector<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Field> SparseVector<S> {
    pub fn zero() -> Self {
        Self { coeffs: BTreeMap::new(), boundary_mass: 0.0 }
    }

    pub fn basis(k: MultiIndex) -> Self {
        Self::single(k, S::one())
    }

    pub fn single(k: MultiIndex, c: S) -> Self {
        let mut v = Self::zero();
        v.add_term(k, c);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (MultiIndex, S)>) -> Self {
        let mut v = Self::zero();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    /// Adds `c·e(k)`, dropping the entry if it cancels to zero.
    pub fn add_term(&mut self, k: MultiIndex, c: S) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&k) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.coeffs.insert(k, sum);
                }
            }
            None => {
                self.coeffs.insert(k, c);
            }
        }
    }

    pub fn add_boundary(&mut self, mass: f64) {
        self.boundary_mass += mass;
    }

    pub fn boundary_mass(&self) -> f64 {
        self.boundary_mass
    }

    pub fn is_exact(&self) -> bool {
        self.boundary_mass == 0.0
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, k: &MultiIndex) -> Option<&S> {
        self.coeffs.get(k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &S)> {
        self.coeffs.iter()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(MultiIndex::degree).max()
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        if !c.is_zero() {
            for (k, v) in &self.coeffs {
                out.add_term(k.clone(), v.clone() * c.clone());
            }
        }
        out.boundary_mass = self.boundary_mass * c.abs();
        out
    }

    /// `self + c·other`.
    pub fn axpy(&mut self, c: &S, other: &Self) {
        for (k, v) in &other.coeffs {
            self.add_term(k.clone(), c.clone() * v.clone());
        }
        self.boundary_mass += c.abs() * other.boundary_mass;
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(&-S::one(), other);
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().map(Field::abs).fold(0.0, f64::max)
    }

    pub fn map_coeffs<T: Field>(&self, f: impl Fn(&S) -> T) -> SparseVector<T> {
        let mut out = SparseVector::<T>::zero();
        for (k, v) in &self.coeffs {
            out.add_term(k.clone(), f(v));
        }
        out.boundary_mass = self.boundary_mass;
        out
    }
}
