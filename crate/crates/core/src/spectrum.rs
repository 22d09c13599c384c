//! Eigenvalues, cosine sequences and multiplicities of a distance-regular
//! graph, all computed from its intersection array.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intersection_array::IntersectionArray;
use crate::tol;

/// The `d+1` distinct eigenvalues in descending order, the cosine matrix and
/// the multiplicities.
///
/// `cosines[j][r]` is `w_r(θ_j)`. Index `1` always means the second-largest
/// eigenvalue after sorting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    theta: Vec<f64>,
    cosines: Vec<Vec<f64>>,
    multiplicities: Vec<f64>,
    valency: f64,
}

impl Spectrum {
    pub fn diameter(&self) -> usize {
        self.theta.len() - 1
    }

    pub fn valency(&self) -> f64 {
        self.valency
    }

    /// `θ_0 > θ_1 > … > θ_d`.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.theta
    }

    pub fn theta(&self, j: usize) -> f64 {
        self.theta[j]
    }

    /// The cosine matrix, rows indexed by eigenvalue.
    pub fn cosines(&self) -> &[Vec<f64>] {
        &self.cosines
    }

    /// `w_r(θ_j)`.
    pub fn w(&self, j: usize, r: usize) -> f64 {
        self.cosines[j][r]
    }

    pub fn multiplicities(&self) -> &[f64] {
        &self.multiplicities
    }
}

/// Eigenvalues of the intersection matrix, sorted descending.
///
/// The tridiagonal matrix with diagonal `a_i`, superdiagonal `b_i` and
/// subdiagonal `c_{i+1}` is similar (via `diag(√k_i)`) to a symmetric one with
/// off-diagonal entries `√(b_i c_{i+1})`; that symmetric matrix is what gets
/// diagonalized.
pub fn eigenvalues(ia: &IntersectionArray) -> Result<Vec<f64>> {
    let d = ia.diameter();
    let k = ia.valency() as f64;
    let mut t = DMatrix::<f64>::zeros(d + 1, d + 1);
    for i in 0..=d {
        t[(i, i)] = ia.a_at(i) as f64;
        if i < d {
            let off = (ia.b_at(i) as f64 * ia.c_at(i + 1) as f64).sqrt();
            t[(i, i + 1)] = off;
            t[(i + 1, i)] = off;
        }
    }
    let mut theta: Vec<f64> = SymmetricEigen::new(t).eigenvalues.iter().copied().collect();
    theta.sort_by(|x, y| y.total_cmp(x));
    for th in theta.iter_mut() {
        *th = polish(ia, *th);
    }
    for i in 0..d {
        let gap = theta[i] - theta[i + 1];
        if gap <= tol::EIGEN_SEPARATION * k {
            return Err(Error::EigenvalueCollision { index: i, gap });
        }
    }
    if (theta[0] - k).abs() > tol::EIGEN_SEPARATION * k {
        return Err(Error::InvalidSpectrum(format!(
            "largest eigenvalue {} differs from the valency {k}",
            theta[0]
        )));
    }
    theta[0] = k;
    Ok(theta)
}

/// Newton steps on the end-of-recurrence residual, which vanishes exactly at
/// the eigenvalues. A step is kept only when it shrinks the residual.
fn polish(ia: &IntersectionArray, theta: f64) -> f64 {
    let mut best = theta;
    let mut best_res = terminal_residual(ia, theta).0.abs();
    for _ in 0..3 {
        let (res, deriv) = terminal_residual(ia, best);
        if deriv == 0.0 || !deriv.is_finite() {
            break;
        }
        let cand = best - res / deriv;
        let cand_res = terminal_residual(ia, cand).0.abs();
        if cand_res < best_res {
            best = cand;
            best_res = cand_res;
        } else {
            break;
        }
    }
    best
}

/// `(θ - a_d) w_d(θ) - c_d w_{d-1}(θ)` together with its derivative in θ,
/// where `w` runs the forward recurrence from `w_0 = 1`, `w_1 = θ/k`.
fn terminal_residual(ia: &IntersectionArray, theta: f64) -> (f64, f64) {
    let d = ia.diameter();
    let k = ia.valency() as f64;
    let (mut prev, mut cur) = (1.0, theta / k);
    let (mut dprev, mut dcur) = (0.0, 1.0 / k);
    for r in 1..d {
        let (a, b, c) = (ia.a_at(r) as f64, ia.b_at(r) as f64, ia.c_at(r) as f64);
        let next = ((theta - a) * cur - c * prev) / b;
        let dnext = (cur + (theta - a) * dcur - c * dprev) / b;
        prev = cur;
        cur = next;
        dprev = dcur;
        dcur = dnext;
    }
    let (a, c) = (ia.a_at(d) as f64, ia.c_at(d) as f64);
    let res = (theta - a) * cur - c * prev;
    let dres = cur + (theta - a) * dcur - c * dprev;
    (res, dres)
}

/// Runs `θ w_r = c_r w_{r-1} + a_r w_r + b_r w_{r+1}` forward from
/// `w_0 = 1`, `w_1 = θ/k` without checking that θ is an eigenvalue.
pub fn cosine_recurrence(ia: &IntersectionArray, theta: f64) -> Vec<f64> {
    let d = ia.diameter();
    let k = ia.valency() as f64;
    let mut w = Vec::with_capacity(d + 1);
    w.push(1.0);
    w.push(theta / k);
    for r in 1..d {
        let (a, b, c) = (ia.a_at(r) as f64, ia.b_at(r) as f64, ia.c_at(r) as f64);
        w.push(((theta - a) * w[r] - c * w[r - 1]) / b);
    }
    w
}

/// Cosine sequence `(w_0(θ),…,w_d(θ))` for an eigenvalue θ of `ia`.
///
/// θ is first snapped to the nearest computed eigenvalue; anything farther
/// than `EIGEN_MATCH * k` away is rejected.
pub fn cosine_sequence(ia: &IntersectionArray, theta: f64) -> Result<Vec<f64>> {
    let theta = match_eigenvalue(&eigenvalues(ia)?, theta, ia.valency() as f64)?;
    Ok(cosine_recurrence(ia, theta))
}

pub(crate) fn match_eigenvalue(eigs: &[f64], theta: f64, k: f64) -> Result<f64> {
    let nearest = eigs
        .iter()
        .copied()
        .min_by(|x, y| (x - theta).abs().total_cmp(&(y - theta).abs()))
        .expect("at least one eigenvalue");
    if (nearest - theta).abs() > tol::EIGEN_MATCH * k {
        return Err(Error::NotAnEigenvalue { theta, nearest });
    }
    Ok(nearest)
}

/// Full spectrum: eigenvalues, cosine matrix and multiplicities
/// `m_j = n / Σ_i k_i w_i(θ_j)²`.
pub fn spectrum(ia: &IntersectionArray) -> Result<Spectrum> {
    let theta = eigenvalues(ia)?;
    let cosines: Vec<Vec<f64>> = theta.iter().map(|&t| cosine_recurrence(ia, t)).collect();
    let kd = ia.k_dist_f64();
    let n = ia.n_f64();
    let multiplicities = cosines
        .iter()
        .map(|row| {
            let norm: f64 = row.iter().zip(&kd).map(|(w, k)| k * w * w).sum();
            n / norm
        })
        .collect();
    Ok(Spectrum {
        theta,
        cosines,
        multiplicities,
        valency: ia.valency() as f64,
    })
}
