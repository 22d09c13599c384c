#![allow(dead_code)]

use drg_distortion::families::Family;
use drg_distortion::intersection_array::parse_corpus;
use drg_distortion::tables::{other_families, classical_positive, classical_negative, SHIPPED_CORPUS};
use drg_distortion::IntersectionArray;

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

pub fn ia(s: &str) -> IntersectionArray {
    s.parse().unwrap()
}

pub fn corpus_arrays() -> Vec<IntersectionArray> {
    parse_corpus(SHIPPED_CORPUS).into_iter().map(|l| l.parsed.unwrap()).collect()
}

pub fn family_instances() -> Vec<Family> {
    classical_positive()
        .into_iter()
        .chain(classical_negative())
        .chain(other_families())
        .flat_map(|(_, fams)| fams)
        .collect()
}

pub fn family_arrays() -> Vec<IntersectionArray> {
    family_instances().iter().map(|f| f.intersection_array().unwrap()).collect()
}

/// Eigenvalues of the tridiagonal intersection matrix by bisection on the
/// Sturm count: the number of negative pivots of `T - xI` (off-diagonal
/// products `b_{i-1} c_i`) is the number of eigenvalues below `x`.
/// Independent of any dense eigensolver. Descending order.
pub fn sturm_eigenvalues(ia: &IntersectionArray) -> Vec<f64> {
    let d = ia.diameter();
    let k = ia.valency() as f64;
    // Number of eigenvalues strictly below x.
    let below = |x: f64| -> usize {
        let mut count = 0;
        let mut q = ia.a_at(0) as f64 - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..=d {
            let off = ia.b_at(i - 1) as f64 * ia.c_at(i) as f64;
            let denom = if q == 0.0 { f64::EPSILON * k } else { q };
            q = (ia.a_at(i) as f64 - x) - off / denom;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    };
    let (lo0, hi0) = (-k - 1.0, k + 1.0);
    let mut out = Vec::with_capacity(d + 1);
    for idx in 0..=d {
        // idx-th smallest eigenvalue: smallest x with below(x) > idx.
        let (mut lo, mut hi) = (lo0, hi0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if below(mid) > idx {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.push(0.5 * (lo + hi));
    }
    out.reverse();
    out
}
