//! The per-array report emitted by the command-line tool, in JSON or as a
//! fixed-width text table.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::conjectures::{verdict_with_tol, ConjectureVerdict};
use crate::distortion::{
    analyze_spectrum, antipodal_counterexample_check, format_rational, rational_reconstruction, C2Value,
    DistortionReport,
};
use crate::error::Result;
use crate::intersection_array::{FeasibilityReport, IntersectionArray};
use crate::spectrum::spectrum;
use crate::tables::sig6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// What was asked for: the array text, a family label or a graph id.
    pub input: String,
    pub array: String,
    pub diameter: usize,
    pub valency: u64,
    pub n: f64,
    pub antipodal_cover: Option<u64>,
    pub bipartite: bool,
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<f64>,
    pub feasibility: FeasibilityReport,
    pub distortion: DistortionReport,
    /// `None` for diameter 1.
    pub verdict: Option<ConjectureVerdict>,
    /// `c_2²` as `p/q` when certified and a small rational.
    pub c2_sq_rational: Option<String>,
    /// Certified `c_2²` strictly above the single-distance `r = d` bound.
    pub diameter_bound_loose: bool,
    /// For antipodal arrays: whether distance `d-1` is more contracted than `d`.
    pub antipodal_criterion: Option<bool>,
    /// Family closed form, when the input was a named family.
    pub closed_form_c2_sq: Option<f64>,
}

impl Report {
    pub fn build(input: impl Into<String>, ia: &IntersectionArray, rel: f64) -> Result<Report> {
        let spec = spectrum(ia)?;
        let distortion = analyze_spectrum(&spec, rel)?;
        let verdict = if ia.diameter() >= 2 {
            Some(verdict_with_tol(ia, &spec, &distortion, rel)?)
        } else {
            None
        };
        let c2_sq_rational = distortion
            .c2_sq
            .point()
            .and_then(rational_reconstruction)
            .map(format_rational);
        let antipodal_criterion = if ia.is_antipodal() {
            Some(antipodal_counterexample_check(ia, &spec)?)
        } else {
            None
        };
        Ok(Report {
            input: input.into(),
            array: ia.to_string(),
            diameter: ia.diameter(),
            valency: ia.valency(),
            n: ia.n_f64(),
            antipodal_cover: ia.antipodal_cover(),
            bipartite: ia.is_bipartite(),
            eigenvalues: spec.eigenvalues().to_vec(),
            multiplicities: spec.multiplicities().to_vec(),
            feasibility: ia.feasibility(&spec),
            diameter_bound_loose: distortion.diameter_bound_is_loose(),
            distortion,
            verdict,
            c2_sq_rational,
            antipodal_criterion,
            closed_form_c2_sq: None,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    /// Fixed-width text rendering; `all_r` adds the full `(r, j)` bound table.
    pub fn render(&self, all_r: bool) -> String {
        let mut s = String::new();
        let mut line = |key: &str, value: String| {
            let _ = writeln!(s, "{key:<24}{value}");
        };
        line("input", self.input.clone());
        line("array", self.array.clone());
        line("diameter", self.diameter.to_string());
        line("valency", self.valency.to_string());
        line("vertices", sig6_or_int(self.n));
        line(
            "antipodal cover",
            self.antipodal_cover.map_or("no".into(), |r| format!("{r}-cover")),
        );
        line("bipartite", yes_no(self.bipartite));
        line("eigenvalues", join(&self.eigenvalues));
        line("multiplicities", join(&self.multiplicities));
        let failures = self.feasibility.failures();
        line(
            "feasibility",
            if failures.is_empty() { "pass".into() } else { format!("FAIL ({})", failures.join(", ")) },
        );
        let d = &self.distortion;
        line("embedding distortion^2", sig6(d.embedding_distortion_sq));
        line("most contracted r", d.most_contracted_r.to_string());
        line("best lower bound^2", format!("{} (r = {})", sig6(d.best_lower_bound_sq), d.best_r));
        line("r = d bound^2", sig6(d.diameter_bound_sq));
        let c2 = match d.c2_sq {
            C2Value::Exact(v) => match &self.c2_sq_rational {
                Some(pq) => format!("{pq} = {} (certified)", sig6(v)),
                None => format!("{} (certified)", sig6(v)),
            },
            C2Value::Interval([lo, hi]) => format!("in [{}, {}] (not certified)", sig6(lo), sig6(hi)),
        };
        line("c2^2", c2);
        if let Some(cf) = self.closed_form_c2_sq {
            line("closed form c2^2", sig6(cf));
        }
        line("r = d bound loose", yes_no(self.diameter_bound_loose));
        if let Some(flag) = self.antipodal_criterion {
            line("antipodal criterion", yes_no(flag));
        }
        if d.small_r_wins {
            line("small r wins", "yes".into());
        }
        match &self.verdict {
            None => line("conjectures", "skipped (diameter 1)".into()),
            Some(v) => {
                line("conjecture 1", format!("{} (argmin r = {})", pass_fail(v.conj1_holds), v.conj1_argmin_r));
                let witness = v.conj2_witness.map_or(String::new(), |(r, j)| format!(" (witness r = {r}, j = {j})"));
                line("conjecture 2", format!("{}{witness}", pass_fail(v.conj2_holds)));
                line("conjecture 3", pass_fail(v.conj3_holds).into());
                line("antipodal consistency", pass_fail(v.antipodal_consistent).into());
            }
        }
        if all_r {
            s.push_str(&render_bound_table(d));
        }
        s
    }
}

/// The `(r, j)` bound table with the per-`r` minimum in the last column.
pub fn render_bound_table(d: &DistortionReport) -> String {
    let mut s = String::from("bound table r^2 (1 - w_1(theta_j)) / (1 - w_r(theta_j)):\n");
    let cols = d.bound_table.first().map_or(0, Vec::len);
    let _ = write!(s, "{:>4}", "r");
    for j in 1..=cols {
        let _ = write!(s, "{:>14}", format!("j={j}"));
    }
    let _ = writeln!(s, "{:>14}", "min");
    for (r, row) in d.bound_table.iter().enumerate() {
        let _ = write!(s, "{:>4}", r + 1);
        for entry in row {
            let _ = write!(s, "{:>14}", entry.map_or("inf".into(), sig6));
        }
        let _ = writeln!(s, "{:>14}", sig6(d.lower_bound_sq_per_r[r]));
    }
    s
}

/// Integers (to within `1e-9`) without decimals, anything else via [`sig6`].
fn sig6_or_int(x: f64) -> String {
    if (x - x.round()).abs() <= 1e-9 * x.abs().max(1.0) && x.abs() < 1e15 {
        format!("{:.0}", x.round())
    } else {
        sig6(x)
    }
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|&x| sig6_or_int(x)).collect::<Vec<_>>().join(" ")
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.into()
}

fn pass_fail(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "FAILS"
    }
}
