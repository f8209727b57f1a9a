use num_complex::Complex64;
use serde::Serialize;

use crate::deform::{guard, inv_ratio_minus_one};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ProfilePoint {
    #[serde(rename = "L")]
    pub l: usize,
    pub value: f64,
    pub running_sup: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundednessProfile {
    pub n: usize,
    pub k_max: usize,
    #[serde(skip)]
    pub points: Vec<ProfilePoint>,
    pub sup: f64,
    /// Max over `L ∈ [K/2, K]`.
    pub last_half_max: f64,
    /// `2b(K) − b(K/2)`, which cancels a `1/L` correction.
    pub tail_estimate: f64,
    /// `(Re a + n)²/4`.
    pub predicted_limit: f64,
}

impl BoundednessProfile {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("L,value,running_sup\n");
        for p in &self.points {
            out.push_str(&format!("{},{:e},{:e}\n", p.l, p.value, p.running_sup));
        }
        out
    }
}

/// `b(L) = L(L+n−2)(μ(L−1)/μ(L) − 1)²` for `1 ≤ L ≤ K`.
pub fn boundedness_profile(n: usize, a: Complex64, k_max: usize) -> Result<BoundednessProfile> {
    guard(a)?;
    if n == 0 || k_max < 2 {
        return Err(Error::InvalidParameter(format!("need n ≥ 1 and K ≥ 2, got n = {n}, K = {k_max}")));
    }
    let b = |l: usize| (l * (l + n - 2)) as f64 * inv_ratio_minus_one(n, a, l).powi(2);
    let mut points = Vec::with_capacity(k_max);
    let mut sup: f64 = 0.0;
    for l in 1..=k_max {
        let value = b(l);
        sup = sup.max(value);
        points.push(ProfilePoint { l, value, running_sup: sup });
    }
    let last_half_max = points[k_max / 2 - 1..].iter().map(|p| p.value).fold(0.0, f64::max);
    Ok(BoundednessProfile {
        n,
        k_max,
        sup,
        last_half_max,
        tail_estimate: 2.0 * b(k_max) - b(k_max / 2),
        predicted_limit: (a.re + n as f64).powi(2) / 4.0,
        points,
    })
}
