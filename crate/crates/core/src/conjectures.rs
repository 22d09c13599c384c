//! Per-instance checks of the three revised conjectures on one array or on a
//! whole corpus.
//!
//! A verdict only says whether the inequality holds for the given array; it
//! never claims anything about distance-regular graphs in general.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distortion::{analyze_spectrum, argmax_prefer_last, DistortionReport};
use crate::error::{Error, Result};
use crate::intersection_array::{parse_corpus, FeasibilityReport, IntersectionArray};
use crate::spectrum::{spectrum, Spectrum};
use crate::tol;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureVerdict {
    /// `min_r (1 - w_r(θ_1))/r²` is attained at `r ∈ {d-1, d}`.
    pub conj1_holds: bool,
    pub conj1_argmin_r: usize,
    /// For every `r ∈ 2..=d`, `j = 1` maximizes `(1 - w_r(θ_j))/(1 - w_1(θ_j))`.
    pub conj2_holds: bool,
    /// First `(r, j)` with `j != 1` strictly exceeding the `j = 1` ratio.
    pub conj2_witness: Option<(usize, usize)>,
    /// `c_2²` is certified by the `r ∈ {d-1, d}` bounds, and the embedding is
    /// most contracted at `d` unless the array is antipodal.
    pub conj3_holds: bool,
    /// The argmin above is `d` unless the array is antipodal.
    pub antipodal_consistent: bool,
}

impl ConjectureVerdict {
    pub fn all_hold(&self) -> bool {
        self.conj1_holds && self.conj2_holds && self.conj3_holds && self.antipodal_consistent
    }
}

fn require_diameter(spec: &Spectrum) -> Result<usize> {
    let d = spec.diameter();
    if d < 2 {
        return Err(Error::DiameterTooSmall(d));
    }
    Ok(d)
}

/// Compares `min_{1<=r<=d}` with `min_{r∈{d-1,d}}` of `(1 - w_r(θ_1))/r²`.
/// Returns the verdict and the argmin (ties toward larger `r`).
pub fn check_conjecture1(spec: &Spectrum) -> Result<(bool, usize)> {
    check_conjecture1_with_tol(spec, tol::REL)
}

pub fn check_conjecture1_with_tol(spec: &Spectrum, rel: f64) -> Result<(bool, usize)> {
    let d = require_diameter(spec)?;
    // Maximizing the reciprocal keeps the tie rule shared with the distortion module.
    let inv: Vec<f64> = (1..=d)
        .map(|r| (r * r) as f64 / (1.0 - spec.w(1, r)))
        .collect();
    let argmin = argmax_prefer_last(&inv, rel) + 1;
    let overall = inv[argmin - 1];
    let top = inv[d - 2].max(inv[d - 1]);
    Ok((tol::rel_close(overall, top, rel), argmin))
}

/// For each `r ∈ 2..=d`, checks that no `j != 1` gives a strictly larger
/// `(1 - w_r(θ_j))/(1 - w_1(θ_j))` than `j = 1`. Returns the first violation.
pub fn check_conjecture2(spec: &Spectrum) -> Result<(bool, Option<(usize, usize)>)> {
    check_conjecture2_with_tol(spec, tol::REL)
}

pub fn check_conjecture2_with_tol(spec: &Spectrum, rel: f64) -> Result<(bool, Option<(usize, usize)>)> {
    let d = require_diameter(spec)?;
    let ratio = |j: usize, r: usize| (1.0 - spec.w(j, r)) / (1.0 - spec.w(j, 1));
    for r in 2..=d {
        let base = ratio(1, r);
        for j in 2..=d {
            if ratio(j, r) > base + rel * base.abs() {
                return Ok((false, Some((r, j))));
            }
        }
    }
    Ok((true, None))
}

/// Evaluates all three conjectures for one array.
pub fn verdict(ia: &IntersectionArray, spec: &Spectrum, report: &DistortionReport) -> Result<ConjectureVerdict> {
    verdict_with_tol(ia, spec, report, tol::REL)
}

pub fn verdict_with_tol(
    ia: &IntersectionArray,
    spec: &Spectrum,
    report: &DistortionReport,
    rel: f64,
) -> Result<ConjectureVerdict> {
    let d = require_diameter(spec)?;
    let antipodal = ia.is_antipodal();
    let (conj1_holds, conj1_argmin_r) = check_conjecture1_with_tol(spec, rel)?;
    let (conj2_holds, conj2_witness) = check_conjecture2_with_tol(spec, rel)?;
    let top_two_bound = report.lower_bound_sq_per_r[d - 2].max(report.lower_bound_sq_per_r[d - 1]);
    let conj3_holds = report.certified
        && tol::rel_close(top_two_bound, report.embedding_distortion_sq, rel)
        && report.most_contracted_r + 1 >= d
        && (report.most_contracted_r == d || antipodal);
    let antipodal_consistent = conj1_argmin_r == d || antipodal;
    Ok(ConjectureVerdict {
        conj1_holds,
        conj1_argmin_r,
        conj2_holds,
        conj2_witness,
        conj3_holds,
        antipodal_consistent,
    })
}

/// Everything computed for one parsed corpus line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineAnalysis {
    pub array: String,
    pub n: f64,
    pub antipodal_cover: Option<u64>,
    pub bipartite: bool,
    pub feasibility: FeasibilityReport,
    pub distortion: DistortionReport,
    /// `None` for diameter 1, where the conjectures do not apply.
    pub verdict: Option<ConjectureVerdict>,
}

impl LineAnalysis {
    pub fn passes(&self) -> bool {
        self.verdict.as_ref().is_none_or(ConjectureVerdict::all_hold)
    }
}

pub fn analyze_line(ia: &IntersectionArray, rel: f64) -> Result<LineAnalysis> {
    let spec = spectrum(ia)?;
    let distortion = analyze_spectrum(&spec, rel)?;
    let verdict = if ia.diameter() >= 2 {
        Some(verdict_with_tol(ia, &spec, &distortion, rel)?)
    } else {
        None
    };
    Ok(LineAnalysis {
        array: ia.to_string(),
        n: ia.n_f64(),
        antipodal_cover: ia.antipodal_cover(),
        bipartite: ia.is_bipartite(),
        feasibility: ia.feasibility(&spec),
        distortion,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusRecord {
    pub line: usize,
    pub name: Option<String>,
    pub input: String,
    #[serde(flatten)]
    pub outcome: LineOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineOutcome {
    Analyzed(Box<LineAnalysis>),
    Error(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub lines: usize,
    pub analyzed: usize,
    pub errors: usize,
    /// Diameter-1 arrays, for which no conjecture is checked.
    pub skipped: usize,
    pub infeasible: usize,
    pub conj1_pass: usize,
    pub conj2_pass: usize,
    pub conj3_pass: usize,
    pub all_pass: usize,
    pub certified: usize,
    /// Line numbers with a failed conjecture check.
    pub failing_lines: Vec<usize>,
}

impl CorpusSummary {
    pub fn clean(&self) -> bool {
        self.errors == 0 && self.failing_lines.is_empty()
    }
}

/// Parses and checks every line of a corpus. Lines are evaluated in parallel;
/// records come back in input order.
pub fn check_corpus(text: &str) -> (Vec<CorpusRecord>, CorpusSummary) {
    check_corpus_with_tol(text, tol::REL)
}

pub fn check_corpus_with_tol(text: &str, rel: f64) -> (Vec<CorpusRecord>, CorpusSummary) {
    let lines = parse_corpus(text);
    let records: Vec<CorpusRecord> = lines
        .into_par_iter()
        .map(|line| {
            let outcome = match line.parsed.and_then(|ia| analyze_line(&ia, rel)) {
                Ok(a) => LineOutcome::Analyzed(Box::new(a)),
                Err(e) => LineOutcome::Error(e.to_string()),
            };
            CorpusRecord {
                line: line.line_no,
                name: line.name,
                input: line.text,
                outcome,
            }
        })
        .collect();
    let summary = summarize(&records);
    (records, summary)
}

pub fn summarize(records: &[CorpusRecord]) -> CorpusSummary {
    let mut s = CorpusSummary { lines: records.len(), ..Default::default() };
    for rec in records {
        match &rec.outcome {
            LineOutcome::Error(_) => s.errors += 1,
            LineOutcome::Analyzed(a) => {
                s.analyzed += 1;
                if a.distortion.certified {
                    s.certified += 1;
                }
                if !a.feasibility.passes() {
                    s.infeasible += 1;
                }
                match &a.verdict {
                    None => s.skipped += 1,
                    Some(v) => {
                        s.conj1_pass += v.conj1_holds as usize;
                        s.conj2_pass += v.conj2_holds as usize;
                        s.conj3_pass += v.conj3_holds as usize;
                        if v.all_hold() {
                            s.all_pass += 1;
                        } else {
                            s.failing_lines.push(rec.line);
                        }
                    }
                }
            }
        }
    }
    s
}
