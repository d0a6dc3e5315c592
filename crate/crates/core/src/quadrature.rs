//! The wheel integral and the assembled anomaly coefficient.
//!
//! This is the only module that touches floating point; every float it
//! returns carries an error bound. The integrand is
//! `eps / (eps + t_1 + ... + t_d)^{d+1}` over the box `[eps, L]^d`, and
//! its value tends to `1/(d+1)!` as `eps -> 0`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::lie::{chern_character, InvariantPolynomial, Representation};
use crate::scalar::Scalar;

#[derive(Debug)]
pub enum QuadratureError {
    BadConfig(String),
    /// Subdivision limit hit before the error bound fell under the
    /// tolerance; the achieved bound is reported.
    ToleranceNotReached { achieved: f64 },
}

#[derive(Debug, Clone)]
pub struct QuadratureConfig {
    pub d: usize,
    /// Inner cutoff, an exact rational (no `tau` content).
    pub eps: Scalar,
    /// Outer cutoff, an exact rational.
    pub l: Scalar,
    pub tolerance: f64,
    pub max_subdivisions: usize,
}

impl QuadratureConfig {
    pub fn new(d: usize, eps: Scalar, l: Scalar) -> QuadratureConfig {
        QuadratureConfig {
            d,
            eps,
            l,
            tolerance: 1e-9,
            max_subdivisions: 40_000,
        }
    }

    fn validate(&self) -> Result<(f64, f64), QuadratureError> {
        if self.d == 0 || self.d > 4 {
            return Err(QuadratureError::BadConfig(format!(
                "dimension {} out of range 1..=4",
                self.d
            )));
        }
        // eps and L are rational, so the tau value is irrelevant
        let eps = self.eps.to_f64(1.0);
        let l = self.l.to_f64(1.0);
        if !(eps > 0.0 && l > eps) {
            return Err(QuadratureError::BadConfig(String::from(
                "need 0 < eps < L",
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(QuadratureError::BadConfig(String::from(
                "tolerance must be positive",
            )));
        }
        Ok((eps, l))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct WheelIntegral {
    pub value: f64,
    pub error_bound: f64,
    pub subdivisions: usize,
}

fn abs(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

fn int_pow(x: f64, e: usize) -> f64 {
    let mut acc = 1.0;
    for _ in 0..e {
        acc *= x;
    }
    acc
}

fn integrand(eps: f64, d: usize, ts: &[f64]) -> f64 {
    let mut s = eps;
    for t in ts {
        s += t;
    }
    eps / int_pow(s, d + 1)
}

// Gauss-Legendre nodes and weights on [-1, 1]
const G3: [(f64, f64); 3] = [
    (-0.774_596_669_241_483_4, 0.555_555_555_555_555_6),
    (0.0, 0.888_888_888_888_888_9),
    (0.774_596_669_241_483_4, 0.555_555_555_555_555_6),
];
const G5: [(f64, f64); 5] = [
    (-0.906_179_845_938_664, 0.236_926_885_056_189_08),
    (-0.538_469_310_105_683_1, 0.478_628_670_499_366_47),
    (0.0, 0.568_888_888_888_888_9),
    (0.538_469_310_105_683_1, 0.478_628_670_499_366_47),
    (0.906_179_845_938_664, 0.236_926_885_056_189_08),
];

/// Tensor-product Gauss rule over a box.
fn gauss_box(eps: f64, d: usize, lo: &[f64], hi: &[f64], rule: &[(f64, f64)]) -> f64 {
    let n = rule.len();
    let mut total = 0.0;
    let points = n.pow(d as u32);
    let mut ts = vec![0.0; d];
    for idx in 0..points {
        let mut rem = idx;
        let mut w = 1.0;
        for i in 0..d {
            let (x, wi) = rule[rem % n];
            rem /= n;
            let mid = 0.5 * (lo[i] + hi[i]);
            let half = 0.5 * (hi[i] - lo[i]);
            ts[i] = mid + half * x;
            w *= wi * half;
        }
        total += w * integrand(eps, d, &ts);
    }
    total
}

struct Region {
    lo: Vec<f64>,
    hi: Vec<f64>,
    value: f64,
    err: f64,
}

fn evaluate(eps: f64, d: usize, lo: Vec<f64>, hi: Vec<f64>) -> Region {
    let v5 = gauss_box(eps, d, &lo, &hi, &G5);
    let v3 = gauss_box(eps, d, &lo, &hi, &G3);
    Region {
        lo,
        hi,
        value: v5,
        err: abs(v5 - v3),
    }
}

/// Adaptive quadrature of the wheel integral: repeatedly bisects the
/// region with the largest error estimate along its widest axis.
/// Deterministic: ties break on the lowest region index.
pub fn wheel_integral(cfg: &QuadratureConfig) -> Result<WheelIntegral, QuadratureError> {
    let (eps, l) = cfg.validate()?;
    let d = cfg.d;
    let mut regions = vec![evaluate(eps, d, vec![eps; d], vec![l; d])];
    let mut subdivisions = 0;
    loop {
        let total_err: f64 = regions.iter().map(|r| r.err).sum();
        if total_err <= cfg.tolerance {
            let value = regions.iter().map(|r| r.value).sum();
            return Ok(WheelIntegral {
                value,
                error_bound: total_err,
                subdivisions,
            });
        }
        if subdivisions >= cfg.max_subdivisions {
            return Err(QuadratureError::ToleranceNotReached {
                achieved: total_err,
            });
        }
        let mut worst = 0;
        for (i, r) in regions.iter().enumerate() {
            if r.err > regions[worst].err {
                worst = i;
            }
        }
        let r = regions.swap_remove(worst);
        let mut axis = 0;
        for i in 1..d {
            if r.hi[i] - r.lo[i] > r.hi[axis] - r.lo[axis] {
                axis = i;
            }
        }
        let mid = 0.5 * (r.lo[axis] + r.hi[axis]);
        let mut hi_left = r.hi.clone();
        hi_left[axis] = mid;
        let mut lo_right = r.lo.clone();
        lo_right[axis] = mid;
        regions.push(evaluate(eps, d, r.lo, hi_left));
        regions.push(evaluate(eps, d, lo_right, r.hi));
        subdivisions += 1;
    }
}

/// Closed form at `d = 1`: `1/2 - eps/(eps + L)`, exactly.
pub fn wheel_integral_exact_d1(eps: &Scalar, l: &Scalar) -> Scalar {
    let denom = eps + l;
    &Scalar::ratio(1, 2) - &(eps * &denom.inv())
}

/// The anomaly coefficient splits into an exact invariant polynomial
/// and the prefactor `tau^{-d}`; the `1/(d+1)!` absorbed into the
/// character normalization is what `wheel_integral` certifies.
pub fn anomaly_coefficient(rep: &Representation, d: usize) -> (InvariantPolynomial, Scalar) {
    (chern_character(rep, d), Scalar::tau_pow(-(d as i32)))
}

#[cfg(test)]
mod tests;
