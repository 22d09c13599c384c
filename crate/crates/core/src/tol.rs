//! Numerical tolerances shared across the crate.
//!
//! All arithmetic on eigen-quantities is `f64`; every comparison goes through
//! one of these constants so that the acceptance thresholds live in one place.

/// Eigenvalues closer than `EIGEN_SEPARATION * k` are treated as a collision.
pub const EIGEN_SEPARATION: f64 = 1e-7;

/// A requested eigenvalue must be within `EIGEN_MATCH * k` of a computed one.
pub const EIGEN_MATCH: f64 = 1e-6;

/// Denominators `1 - w_r` at or below this are treated as zero (term is +inf).
pub const INFINITE_DENOMINATOR: f64 = 1e-9;

/// Relative tolerance for certification and ratio comparisons.
pub const REL: f64 = 1e-9;

/// Distance from the nearest integer accepted for a multiplicity.
pub const MULTIPLICITY: f64 = 1e-6;

/// Largest denominator tried during rational reconstruction.
pub const MAX_DENOMINATOR: u64 = 10_000;

/// Relative residual at which a continued-fraction convergent counts as exact.
pub const RATIONAL_MATCH: f64 = 1e-13;

/// Relative closeness of `a` and `b`, scaled by the larger magnitude (or 1).
pub fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    let scale = a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
    (a - b).abs() <= rel * scale
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}
