//! Multivariate power series over ℂ truncated at a total degree.

use std::sync::Arc;

use num_complex::Complex64;

use crate::multi_index::{Basis, MultiIndex};

#[derive(Debug, Clone)]
pub struct PowerSeries {
    basis: Arc<Basis>,
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    pub fn zero(basis: Arc<Basis>) -> Self {
        let len = basis.len();
        Self { basis, coeffs: vec![Complex64::new(0.0, 0.0); len] }
    }

    pub fn constant(basis: Arc<Basis>, c: Complex64) -> Self {
        let mut s = Self::zero(basis);
        s.coeffs[0] = c;
        s
    }

    /// `c₀ + Σ_j c_j z_j`.
    pub fn linear(basis: Arc<Basis>, c0: Complex64, c: &[Complex64]) -> Self {
        let n = basis.rank();
        assert_eq!(c.len(), n);
        let mut s = Self::constant(basis, c0);
        if s.basis.cutoff() >= 1 {
            for (j, cj) in c.iter().enumerate() {
                let p = s.basis.position(&MultiIndex::unit(n, j + 1)).expect("degree 1 in window");
                s.coeffs[p] = *cj;
            }
        }
        s
    }

    pub fn degree_cap(&self) -> usize {
        self.basis.cutoff()
    }

    pub fn coeff(&self, k: &MultiIndex) -> Complex64 {
        self.basis.position(k).map_or(Complex64::new(0.0, 0.0), |p| self.coeffs[p])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { basis: self.basis.clone(), coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let b = &self.basis;
        let cap = b.cutoff() as u32;
        let mut out = Self::zero(b.clone());
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.norm_sqr() == 0.0 {
                continue;
            }
            let ki = b.get(i);
            for (j, y) in other.coeffs.iter().enumerate() {
                let kj = b.get(j);
                if ki.degree() + kj.degree() > cap || y.norm_sqr() == 0.0 {
                    continue;
                }
                let sum = MultiIndex::new(ki.entries().iter().zip(kj.entries()).map(|(a, b)| a + b).collect());
                out.coeffs[b.position(&sum).expect("degree checked")] += x * y;
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.basis.clone(), Complex64::new(1.0, 0.0));
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `(1 + w)^{−p}` for `w` without constant term, by the binomial series.
    pub fn one_plus_pow_neg(w: &Self, p: u32) -> Self {
        debug_assert!(w.coeffs[0].norm() == 0.0);
        let mut acc = Self::constant(w.basis.clone(), Complex64::new(1.0, 0.0));
        let mut term = acc.clone();
        let mut binom = 1.0;
        for m in 1..=w.degree_cap() {
            // binom(−p, m) = binom(−p, m−1)·(−p−m+1)/m
            binom *= -(p as f64) - (m as f64) + 1.0;
            binom /= m as f64;
            term = term.mul(w);
            acc = acc.add(&term.scale(Complex64::new(binom, 0.0)));
        }
        acc
    }
}
