//! Distortion of the canonical spectral embedding and the LLR-type lower
//! bounds `r² min_j (1 - w_1(θ_j)) / (1 - w_r(θ_j))`.
//!
//! The embedding built from the θ_1-eigenspace has expansion exactly 1, so its
//! distortion² is `max_r r² (1 - w_1(θ_1)) / (1 - w_r(θ_1))`. Whenever the best
//! lower bound meets that value, `c_2(G)²` is known exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intersection_array::IntersectionArray;
use crate::spectrum::{spectrum, Spectrum};
use crate::tol;

/// Either a certified value of `c_2(G)²` or the interval it is known to lie in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum C2Value {
    Exact(f64),
    Interval([f64; 2]),
}

impl C2Value {
    pub fn point(&self) -> Option<f64> {
        match *self {
            C2Value::Exact(v) => Some(v),
            C2Value::Interval(_) => None,
        }
    }

    pub fn bounds(&self) -> (f64, f64) {
        match *self {
            C2Value::Exact(v) => (v, v),
            C2Value::Interval([lo, hi]) => (lo, hi),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistortionReport {
    /// distortion(ρ)² for the θ_1 embedding.
    pub embedding_distortion_sq: f64,
    /// `bound_table[r-1][j-1] = r² (1 - w_1(θ_j)) / (1 - w_r(θ_j))`, with
    /// `None` standing for +∞.
    pub bound_table: Vec<Vec<Option<f64>>>,
    pub lower_bound_sq_per_r: Vec<f64>,
    pub best_lower_bound_sq: f64,
    pub best_r: usize,
    pub most_contracted_r: usize,
    pub certified: bool,
    pub c2_sq: C2Value,
    /// The classical single-distance bound, i.e. the `r = d` entry.
    pub diameter_bound_sq: f64,
    /// Set when some `r <= d - 2` beats both `d - 1` and `d` strictly.
    pub small_r_wins: bool,
}

impl DistortionReport {
    /// True when `c_2²` is certified and strictly exceeds the `r = d` bound,
    /// i.e. the single-distance lower bound is not tight.
    pub fn diameter_bound_is_loose(&self) -> bool {
        self.certified && self.best_lower_bound_sq > self.diameter_bound_sq * (1.0 + tol::REL)
    }
}

fn check_r(spec: &Spectrum, r: usize) -> Result<()> {
    let d = spec.diameter();
    if r == 0 || r > d {
        return Err(Error::DistanceOutOfRange { r, d });
    }
    Ok(())
}

/// `r² (1 - w_1(θ_j)) / (1 - w_r(θ_j))`, or `None` when the denominator is
/// (numerically) zero.
pub fn bound_entry(spec: &Spectrum, r: usize, j: usize) -> Option<f64> {
    let den = 1.0 - spec.w(j, r);
    if den <= tol::INFINITE_DENOMINATOR {
        return None;
    }
    Some((r * r) as f64 * (1.0 - spec.w(j, 1)) / den)
}

/// Index of the maximum, preferring the largest index among values within
/// `rel` of the maximum.
pub(crate) fn argmax_prefer_last(values: &[f64], rel: f64) -> usize {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    values
        .iter()
        .rposition(|&v| v >= max - rel * max.abs())
        .expect("nonempty")
}

/// distortion(ρ)² of the θ_1 embedding and the most contracted distance.
///
/// Ties between distances are broken toward the larger `r`.
pub fn embedding_distortion_sq(spec: &Spectrum) -> Result<(f64, usize)> {
    let d = spec.diameter();
    let w1 = spec.w(1, 1);
    let mut values = Vec::with_capacity(d);
    for r in 1..=d {
        let den = 1.0 - spec.w(1, r);
        if den <= tol::INFINITE_DENOMINATOR {
            return Err(Error::InvalidSpectrum(format!(
                "1 - w_{r}(θ_1) = {den:e} is not positive"
            )));
        }
        values.push((r * r) as f64 * (1.0 - w1) / den);
    }
    let idx = argmax_prefer_last(&values, tol::REL);
    Ok((values[idx], idx + 1))
}

/// Lower bound on `c_2(G)²` from distance `r`: the minimum of the `r`-th row
/// of the bound table over `j = 1..d`, skipping infinite entries.
pub fn vallentin_bound_sq(spec: &Spectrum, r: usize) -> Result<f64> {
    check_r(spec, r)?;
    (1..=spec.diameter())
        .filter_map(|j| bound_entry(spec, r, j))
        .min_by(f64::total_cmp)
        .ok_or(Error::EmptyMinimum { r })
}

pub fn analyze(ia: &IntersectionArray) -> Result<DistortionReport> {
    analyze_with_tol(ia, tol::REL)
}

/// Full report; `rel` is the relative tolerance used for certification.
pub fn analyze_with_tol(ia: &IntersectionArray, rel: f64) -> Result<DistortionReport> {
    let spec = spectrum(ia)?;
    analyze_spectrum(&spec, rel)
}

pub fn analyze_spectrum(spec: &Spectrum, rel: f64) -> Result<DistortionReport> {
    let d = spec.diameter();
    let (embedding, most_contracted_r) = embedding_distortion_sq(spec)?;
    let bound_table: Vec<Vec<Option<f64>>> = (1..=d)
        .map(|r| (1..=d).map(|j| bound_entry(spec, r, j)).collect())
        .collect();
    let per_r = (1..=d)
        .map(|r| vallentin_bound_sq(spec, r))
        .collect::<Result<Vec<f64>>>()?;
    let best_idx = argmax_prefer_last(&per_r, rel);
    let best = per_r[best_idx];
    let best_r = best_idx + 1;
    let top_two = per_r[d.saturating_sub(2)..].iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let small_r_wins = d >= 3 && per_r[..d - 2].iter().any(|&v| v > top_two * (1.0 + rel));
    let certified = tol::rel_close(best, embedding, rel);
    let c2_sq = if certified {
        C2Value::Exact(embedding)
    } else {
        C2Value::Interval([best, embedding])
    };
    Ok(DistortionReport {
        embedding_distortion_sq: embedding,
        bound_table,
        lower_bound_sq_per_r: per_r.clone(),
        best_lower_bound_sq: best,
        best_r,
        most_contracted_r,
        certified,
        c2_sq,
        diameter_bound_sq: per_r[d - 1],
        small_r_wins,
    })
}

/// For an antipodal `r`-cover: whether distance `d - 1` is strictly more
/// contracted than distance `d` under the θ_1 embedding, via
/// `θ_1/k < (d² - 2rd + r)/d²`. Always false when `d <= 2r - 1`.
pub fn antipodal_counterexample_check(ia: &IntersectionArray, spec: &Spectrum) -> Result<bool> {
    let r = ia.antipodal_cover().ok_or(Error::NotAntipodal)? as f64;
    let d = ia.diameter() as f64;
    if d <= 2.0 * r - 1.0 {
        return Ok(false);
    }
    let lhs = spec.theta(1) / spec.valency();
    let rhs = (d * d - 2.0 * r * d + r) / (d * d);
    Ok(lhs < rhs)
}

/// `c_2²` for diameter 3 from the intersection numbers and θ_0, θ_1 alone:
/// `max{4b_1/(θ_0+θ_1-a_1), 9b_1b_2/((θ_0+θ_1-a_1)(θ_0+θ_1-a_2) - θ_0θ_1 - b_1c_2 - θ_0)}`.
pub fn diameter3_closed_form(ia: &IntersectionArray) -> Result<f64> {
    if ia.diameter() != 3 {
        return Err(Error::WrongDiameter { expected: 3, got: ia.diameter() });
    }
    let spec = spectrum(ia)?;
    let (t0, t1) = (spec.theta(0), spec.theta(1));
    let (a1, a2) = (ia.a_at(1) as f64, ia.a_at(2) as f64);
    let (b1, b2, c2) = (ia.b_at(1) as f64, ia.b_at(2) as f64, ia.c_at(2) as f64);
    let s1 = t0 + t1 - a1;
    let s2 = t0 + t1 - a2;
    let two = 4.0 * b1 / s1;
    let three = 9.0 * b1 * b2 / (s1 * s2 - t0 * t1 - b1 * c2 - t0);
    Ok(two.max(three))
}

/// Best rational `p/q` with `q <= MAX_DENOMINATOR` reproducing `x` to within
/// `RATIONAL_MATCH` relative error, found by walking continued-fraction
/// convergents.
pub fn rational_reconstruction(x: f64) -> Option<(i64, u64)> {
    if !x.is_finite() {
        return None;
    }
    let target = x;
    let (mut h0, mut h1): (i128, i128) = (0, 1);
    let (mut k0, mut k1): (i128, i128) = (1, 0);
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 as u64 > tol::MAX_DENOMINATOR {
            return None;
        }
        let approx = h2 as f64 / k2 as f64;
        if (approx - target).abs() <= tol::RATIONAL_MATCH * target.abs().max(1.0) {
            return Some((h2 as i64, k2 as u64));
        }
        let frac = rest - a;
        if frac == 0.0 {
            return None;
        }
        rest = 1.0 / frac;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
    }
    None
}

/// `p/q` as text, or `p` alone when `q = 1`.
pub fn format_rational((p, q): (i64, u64)) -> String {
    if q == 1 {
        p.to_string()
    } else {
        format!("{p}/{q}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ia(s: &str) -> IntersectionArray {
        s.parse().unwrap()
    }

    fn hadamard(mu: u64) -> IntersectionArray {
        IntersectionArray::new(vec![2 * mu, 2 * mu - 1, mu, 1], vec![1, mu, 2 * mu - 1, 2 * mu]).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        tol::rel_diff(a, b)
    }

    #[test]
    fn petersen_embedding() {
        let s = spectrum(&ia("{3,2;1,1}")).unwrap();
        let (v, r) = embedding_distortion_sq(&s).unwrap();
        assert!(rel(v, 2.0) < 1e-12);
        assert_eq!(r, 2);
    }

    #[test]
    fn hadamard_bounds() {
        for mu in [2u64, 4, 34, 100] {
            let s = spectrum(&hadamard(mu)).unwrap();
            let x = ((2 * mu) as f64).sqrt();
            let r4 = vallentin_bound_sq(&s, 4).unwrap();
            let r3 = vallentin_bound_sq(&s, 3).unwrap();
            assert!(rel(r4, 8.0 * (x - 1.0) / x) < 1e-12, "mu={mu}");
            assert!(rel(r3, 9.0 * (x - 1.0) / (x + 1.0)) < 1e-12, "mu={mu}");
        }
    }

    #[test]
    fn hadamard_34_is_contracted_at_d_minus_1() {
        let s = spectrum(&hadamard(34)).unwrap();
        let (v, r) = embedding_distortion_sq(&s).unwrap();
        let x = 68f64.sqrt();
        assert!(rel(v, 9.0 * (x - 1.0) / (x + 1.0)) < 1e-12);
        assert_eq!(r, 3);
    }

    #[test]
    fn golay_r6_bound() {
        let s = spectrum(&ia("{22,21,20,3,2,1;1,2,3,20,21,22}")).unwrap();
        assert!(rel(vallentin_bound_sq(&s, 6).unwrap(), 126.0 / 11.0) < 1e-12);
    }

    #[test]
    fn certified_golay_trio() {
        for (s, want, best_r) in [
            ("{22,21,20,3,2,1;1,2,3,20,21,22}", 35.0 / 3.0, 5),
            ("{23,22,21,20,3,2,1;1,2,3,20,21,22,23}", 63.0 / 4.0, 6),
            ("{22,21,20,16,6,2,1;1,2,6,16,20,21,22}", 27.0 / 2.0, 6),
        ] {
            let rep = analyze(&ia(s)).unwrap();
            assert!(rep.certified, "{s}");
            assert!(rel(rep.c2_sq.point().unwrap(), want) < 1e-9, "{s}");
            assert_eq!(rep.best_r, best_r);
            assert!(rep.diameter_bound_is_loose());
            assert!(!rep.small_r_wins);
        }
    }

    #[test]
    fn r_equal_one_is_trivial() {
        let s = spectrum(&ia("{22,21,20,3,2,1;1,2,3,20,21,22}")).unwrap();
        assert!(rel(vallentin_bound_sq(&s, 1).unwrap(), 1.0) < 1e-12);
        assert!(matches!(vallentin_bound_sq(&s, 0), Err(Error::DistanceOutOfRange { .. })));
        assert!(matches!(vallentin_bound_sq(&s, 7), Err(Error::DistanceOutOfRange { .. })));
    }

    #[test]
    fn complete_graph_has_distortion_one() {
        let rep = analyze(&ia("{4;1}")).unwrap();
        assert!(rep.certified);
        assert_eq!(rep.c2_sq.point(), Some(1.0));
    }

    #[test]
    fn antipodal_criterion() {
        let h34 = hadamard(34);
        assert!(antipodal_counterexample_check(&h34, &spectrum(&h34).unwrap()).unwrap());
        let h2 = hadamard(2);
        assert!(!antipodal_counterexample_check(&h2, &spectrum(&h2).unwrap()).unwrap());
        let taylor = ia("{5,2,1;1,2,5}");
        assert!(!antipodal_counterexample_check(&taylor, &spectrum(&taylor).unwrap()).unwrap());
        let petersen = ia("{3,2;1,1}");
        assert_eq!(
            antipodal_counterexample_check(&petersen, &spectrum(&petersen).unwrap()),
            Err(Error::NotAntipodal)
        );
    }

    #[test]
    fn icosahedron_closed_form() {
        let v = diameter3_closed_form(&ia("{5,2,1;1,2,5}")).unwrap();
        assert!(rel(v, 9.0 * (5.0 - 5f64.sqrt()) / 10.0) < 1e-12);
        assert!(matches!(
            diameter3_closed_form(&ia("{3,2;1,1}")),
            Err(Error::WrongDiameter { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn rational_reconstruction_cases() {
        assert_eq!(rational_reconstruction(35.0 / 3.0), Some((35, 3)));
        assert_eq!(rational_reconstruction(468.0 / 29.0), Some((468, 29)));
        assert_eq!(rational_reconstruction(7.2), Some((36, 5)));
        assert_eq!(rational_reconstruction(2.0), Some((2, 1)));
        assert_eq!(rational_reconstruction(0.5), Some((1, 2)));
        assert_eq!(rational_reconstruction(2f64.sqrt()), None);
        let x = 68f64.sqrt();
        assert_eq!(rational_reconstruction(9.0 * (x - 1.0) / (x + 1.0)), None);
        assert_eq!(format_rational((35, 3)), "35/3");
        assert_eq!(format_rational((10, 1)), "10");
    }
}
