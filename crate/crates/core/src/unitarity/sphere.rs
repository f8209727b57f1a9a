use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;

pub const MIN_SAMPLES: usize = 1000;
/// Independent substreams per Monte Carlo run; fixed so results do not
/// depend on the thread count.
const CHUNKS: u64 = 64;

/// The unit sphere in `ℂⁿ` and its volume `Ω_n = 2πⁿ/(n−1)!`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SphereGeometry {
    pub n: usize,
    pub omega: f64,
}

impl SphereGeometry {
    pub fn new(n: usize) -> Self {
        let fact: f64 = (1..n).map(|j| j as f64).product();
        Self { n, omega: 2.0 * std::f64::consts::PI.powi(n as i32) / fact }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "method")]
pub enum SphereMethod {
    ClosedForm,
    MonteCarlo { seed: u64, samples: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct SphereEstimate {
    pub estimate_re: f64,
    pub estimate_im: f64,
    /// Zero for the closed form.
    pub stderr: f64,
    pub samples: usize,
    pub seed: Option<u64>,
}

impl SphereEstimate {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.estimate_re, self.estimate_im)
    }
}

/// `‖P(k)‖² = ∏k_j! / ∏_{j=1}^{|k|}(j+n−1)`, the normalized sphere integral.
pub fn closed_form_norm_sq(k: &MultiIndex) -> f64 {
    let n = k.rank();
    let log: f64 = k.entries().iter().map(|&kj| (1..=kj).map(|j| (j as f64).ln()).sum::<f64>()).sum::<f64>()
        - (1..=k.degree() as usize).map(|j| ((j + n - 1) as f64).ln()).sum::<f64>();
    log.exp()
}

fn monomial(z: &[Complex64], k: &MultiIndex) -> Complex64 {
    z.iter().zip(k.entries()).map(|(zj, &e)| zj.powu(e)).product()
}

/// Running first and second moments of a block of samples. Blocks are
/// merged in chunk order so sums do not depend on scheduling.
#[derive(Clone)]
struct Moments {
    sum: Vec<Complex64>,
    sq_re: Vec<f64>,
    sq_im: Vec<f64>,
}

impl Moments {
    fn new(len: usize) -> Self {
        Self { sum: vec![Complex64::new(0.0, 0.0); len], sq_re: vec![0.0; len], sq_im: vec![0.0; len] }
    }

    fn merge(mut self, other: Self) -> Self {
        for i in 0..self.sum.len() {
            self.sum[i] += other.sum[i];
            self.sq_re[i] += other.sq_re[i];
            self.sq_im[i] += other.sq_im[i];
        }
        self
    }
}

/// Monte Carlo estimates of `(1/Ω_n)∫ P(k)·conj(P(l)) dσ` for every pair
/// of `indices`, all from one sample set. Entry `[i][j]` pairs `indices[i]`
/// with `indices[j]`.
pub fn sphere_gram(n: usize, indices: &[MultiIndex], seed: u64, samples: usize) -> Result<Vec<Vec<SphereEstimate>>> {
    if samples < MIN_SAMPLES {
        return Err(Error::TooFewSamples(samples));
    }
    if let Some(k) = indices.iter().find(|k| k.rank() != n) {
        return Err(Error::RankMismatch { expected: n, got: k.rank() });
    }
    let m = indices.len();
    let per_chunk = samples.div_ceil(CHUNKS as usize);
    let moments = (0..CHUNKS)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let count = per_chunk.min(samples.saturating_sub(chunk as usize * per_chunk));
            let mut acc = Moments::new(m * m);
            let mut z = vec![Complex64::new(0.0, 0.0); n];
            let mut mono = vec![Complex64::new(0.0, 0.0); m];
            for _ in 0..count {
                let mut r2 = 0.0;
                for zj in z.iter_mut() {
                    let x: f64 = StandardNormal.sample(&mut rng);
                    let y: f64 = StandardNormal.sample(&mut rng);
                    *zj = Complex64::new(x, y);
                    r2 += x * x + y * y;
                }
                let r = r2.sqrt();
                z.iter_mut().for_each(|zj| *zj /= r);
                for (slot, k) in mono.iter_mut().zip(indices) {
                    *slot = monomial(&z, k);
                }
                for i in 0..m {
                    for j in 0..m {
                        let v = mono[i] * mono[j].conj();
                        let p = i * m + j;
                        acc.sum[p] += v;
                        acc.sq_re[p] += v.re * v.re;
                        acc.sq_im[p] += v.im * v.im;
                    }
                }
            }
            acc
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Moments::new(m * m), Moments::merge);
    let nf = samples as f64;
    Ok((0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let p = i * m + j;
                    let mean = moments.sum[p] / nf;
                    let var_re = (moments.sq_re[p] / nf - mean.re * mean.re).max(0.0);
                    let var_im = (moments.sq_im[p] / nf - mean.im * mean.im).max(0.0);
                    SphereEstimate {
                        estimate_re: mean.re,
                        estimate_im: mean.im,
                        stderr: ((var_re + var_im) / nf).sqrt(),
                        samples,
                        seed: Some(seed),
                    }
                })
                .collect()
        })
        .collect())
}

/// `(1/Ω_n)∫_{S} P(k)·conj(P(l)) dσ` over the unit sphere of `ℂⁿ`.
pub fn sphere_inner(n: usize, k: &MultiIndex, l: &MultiIndex, method: SphereMethod) -> Result<SphereEstimate> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    for x in [k, l] {
        if x.rank() != n {
            return Err(Error::RankMismatch { expected: n, got: x.rank() });
        }
    }
    match method {
        SphereMethod::ClosedForm => {
            let v = if k == l { closed_form_norm_sq(k) } else { 0.0 };
            Ok(SphereEstimate { estimate_re: v, estimate_im: 0.0, stderr: 0.0, samples: 0, seed: None })
        }
        SphereMethod::MonteCarlo { seed, samples } => {
            let gram = sphere_gram(n, &[k.clone(), l.clone()], seed, samples)?;
            Ok(gram[0][1].clone())
        }
    }
}
