//! Reference tables with their expected values, and the machinery to
//! recompute and compare them.
//!
//! * `antipodal`, `antipodal-bipartite` — antipodal feasible arrays (non-bipartite, bipartite)
//!   with their known `c_2²`; also shipped as `data/antipodal_arrays.txt`.
//! * `classical`, `classical-negative` — classical-parameter families with `b >= 1` and
//!   `b <= -1`, one or more instances per row; the expected value is the
//!   family's closed form.

use serde::{Deserialize, Serialize};

use crate::distortion::{analyze_with_tol, format_rational, rational_reconstruction};
use crate::error::{Error, Result};
use crate::families::Family;
use crate::intersection_array::IntersectionArray;
use crate::tol;

/// The shipped corpus file.
pub const SHIPPED_CORPUS: &str = include_str!("../data/antipodal_arrays.txt");

pub const TABLE_IDS: &[&str] = &["antipodal", "antipodal-bipartite", "classical", "classical-negative"];

/// Tolerance for rows printed as rounded decimals.
pub const DECIMAL_TOL: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Expected {
    /// `p/q`, compared at [`tol::REL`].
    Exact(i64, u64),
    /// A value printed to a few decimals, compared at [`DECIMAL_TOL`].
    Decimal(f64),
}

impl Expected {
    pub fn value(&self) -> f64 {
        match *self {
            Expected::Exact(p, q) => p as f64 / q as f64,
            Expected::Decimal(x) => x,
        }
    }

    pub fn tolerance(&self, rel: f64) -> f64 {
        match self {
            Expected::Exact(..) => rel,
            Expected::Decimal(_) => DECIMAL_TOL,
        }
    }

    pub fn text(&self) -> String {
        match *self {
            Expected::Exact(p, q) => format_rational((p, q)),
            Expected::Decimal(x) => format!("~{x}"),
        }
    }
}

/// One array row: diameter, vertex count, array, expected `c_2²`, remark.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayRow {
    pub d: usize,
    pub v: u64,
    pub array: &'static str,
    pub expected: Expected,
    pub comment: &'static str,
}

const fn row(d: usize, v: u64, array: &'static str, expected: Expected, comment: &'static str) -> ArrayRow {
    ArrayRow { d, v, array, expected, comment }
}

use Expected::{Decimal, Exact};

pub const ANTIPODAL_NON_BIPARTITE: &[ArrayRow] = &[
    row(4, 1104, "{76,75,6,1;1,6,75,76}", Decimal(7.14773), ""),
    row(4, 1600, "{85,84,5,1;1,5,84,85}", Decimal(7.23867), ""),
    row(4, 1568, "{116,115,10,1;1,10,115,116}", Decimal(7.47073), ""),
    row(4, 1232, "{135,128,18,1;1,18,128,135}", Exact(36, 5), "G_{1,2} SRG"),
    row(4, 1850, "{154,150,15,1;1,15,150,154}", Exact(15, 2), ""),
    row(4, 2000, "{243,224,36,1;1,36,224,243}", Exact(36, 5), ""),
    row(6, 2048, "{22,21,20,3,2,1;1,2,3,20,21,22}", Exact(35, 3), "shortened Golay code"),
];

pub const ANTIPODAL_BIPARTITE: &[ArrayRow] = &[
    row(5, 704, "{26,25,24,2,1;1,2,24,25,26}", Exact(10, 1), ""),
    row(5, 420, "{33,32,27,6,1;1,6,27,32,33}", Exact(64, 7), ""),
    row(5, 704, "{36,35,32,4,1;1,4,32,35,36}", Exact(112, 11), ""),
    row(5, 1408, "{37,36,35,2,1;1,2,35,36,37}", Exact(120, 11), ""),
    row(5, 532, "{45,44,36,9,1;1,9,36,44,45}", Exact(176, 19), ""),
    row(5, 784, "{46,45,40,6,1;1,6,40,45,46}", Exact(72, 7), ""),
    row(5, 1276, "{49,48,45,4,1;1,4,45,48,49}", Exact(320, 29), ""),
    row(5, 1300, "{55,54,50,5,1;1,5,50,54,55}", Exact(144, 13), ""),
    row(5, 648, "{57,56,45,12,1;1,12,45,56,57}", Exact(28, 3), "Q-pol."),
    row(5, 1104, "{76,75,64,12,1;1,12,64,75,76}", Exact(240, 23), ""),
    row(5, 1600, "{85,84,75,10,1;1,10,75,84,85}", Exact(56, 5), ""),
    row(5, 1334, "{96,95,80,16,1;1,16,80,95,96}", Exact(304, 29), ""),
    row(5, 1568, "{116,115,96,20,1;1,20,96,115,116}", Exact(368, 35), "Q-pol."),
    row(7, 4114, "{16,15,15,14,2,1,1;1,1,2,14,15,15,16}", Exact(180, 11), ""),
    row(7, 2048, "{22,21,20,16,6,2,1;1,2,6,16,20,21,22}", Exact(27, 2), "doubly truncated Golay code"),
    row(7, 4096, "{23,22,21,20,3,2,1;1,2,3,20,21,22,23}", Exact(63, 4), "extended Golay code"),
    row(7, 19140, "{105,104,100,75,30,5,1;1,5,30,75,100,104,105}", Exact(468, 29), ""),
];

/// Family rows: display name and the instances evaluated for it.
pub type FamilyRow = (&'static str, Vec<Family>);

/// Classical families with `b >= 1`.
pub fn classical_positive() -> Vec<FamilyRow> {
    use Family::*;
    vec![
        ("Hamming graph", vec![Hamming { d: 3, q: 3 }, Hamming { d: 5, q: 2 }]),
        ("Johnson graph", vec![Johnson { n: 8, d: 3 }, Johnson { n: 10, d: 4 }]),
        ("Halved cube", vec![HalvedCube { d: 3, m: 5 }, HalvedCube { d: 3, m: 7 }]),
        ("Doob graph", vec![Doob { d: 3 }]),
        ("Grassmann graph", vec![Grassmann { d: 2, q: 2, n: 4 }, Grassmann { d: 3, q: 2, n: 7 }, Grassmann { d: 2, q: 3, n: 5 }]),
        ("Twisted Grassmann graph", vec![TwistedGrassmann { d: 3, q: 2 }]),
        ("Bilinear forms graph", vec![Bilinear { d: 2, q: 2, e: 3 }, Bilinear { d: 3, q: 2, e: 3 }]),
        (
            "Dual polar graph",
            vec![
                DualPolar { d: 3, q: 2, two_e: 0 },
                DualPolar { d: 3, q: 4, two_e: 1 },
                DualPolar { d: 3, q: 2, two_e: 2 },
                DualPolar { d: 3, q: 4, two_e: 3 },
                DualPolar { d: 3, q: 2, two_e: 4 },
            ],
        ),
        ("Alternating forms graph", vec![Alternating { d: 2, q: 2, m: 5 }]),
        ("Quadratic forms graph", vec![Quadratic { d: 2, q: 2, m: 3 }]),
        ("Half dual polar graph", vec![HalfDualPolar { d: 2, q: 2, m: 3 }]),
        ("Dist. 1-or-2 symplectic dual polar graph", vec![SymplecticDist12 { d: 2, q: 3, m: 5 }]),
        ("Pseudo D_m(q) graph", vec![PseudoDm { d: 3, q: 3 }]),
        ("Gosset graph", vec![Gosset]),
        ("Exceptional Lie graph E_7,7(q)", vec![E77 { q: 2 }]),
        ("Affine E_6(q) graph", vec![AffineE6 { q: 2 }]),
    ]
}

/// Classical families with `b <= -1`.
pub fn classical_negative() -> Vec<FamilyRow> {
    use Family::*;
    vec![
        ("Witt graph M_24", vec![WittM24]),
        ("Witt graph M_23", vec![WittM23]),
        ("Extended ternary Golay code graph", vec![TernaryGolay]),
        ("Triality graph", vec![Triality { q: 2 }, Triality { q: 3 }]),
        ("Unitary dual polar graph", vec![UnitaryDualPolar { d: 2, q: 4 }, UnitaryDualPolar { d: 3, q: 9 }]),
        (
            "Hermitian forms graph",
            vec![
                Hermitian { d: 2, q: 2 },
                Hermitian { d: 2, q: 3 },
                Hermitian { d: 3, q: 2 },
                Hermitian { d: 3, q: 3 },
                Hermitian { d: 4, q: 2 },
            ],
        ),
    ]
}

/// Non-classical families with their own closed forms.
pub fn other_families() -> Vec<FamilyRow> {
    use Family::*;
    vec![
        ("Taylor graph", vec![Taylor { k: 5, mu: 2 }, Taylor { k: 10, mu: 4 }]),
        ("Generalized hexagon", vec![Hexagon { s: 2, t: 2 }, Hexagon { s: 2, t: 8 }, Hexagon { s: 3, t: 3 }]),
        ("Generalized octagon", vec![Octagon { s: 2, t: 4 }, Octagon { s: 4, t: 2 }]),
        ("Odd graph", (2..=6).map(|d| Odd { d }).collect()),
        ("Hadamard graph", vec![Hadamard { mu: 2 }, Hadamard { mu: 34 }]),
        ("Golay code graphs", vec![GolayShortened, GolayDoubleTruncated, GolayDouble]),
    ]
}

/// One recomputed row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRowResult {
    pub label: String,
    pub array: String,
    pub expected: f64,
    pub expected_text: String,
    pub computed: f64,
    pub computed_text: String,
    pub certified: bool,
    pub rel_error: f64,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableResult {
    pub id: String,
    pub title: String,
    pub rows: Vec<TableRowResult>,
}

impl TableResult {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }
}

/// `p/q` when the value reconstructs as a small rational, else 6 significant digits.
pub fn value_text(x: f64) -> String {
    match rational_reconstruction(x) {
        Some(pq) => format_rational(pq),
        None => sig6(x).to_string(),
    }
}

/// `x` rounded to 6 significant digits; magnitudes below `1e-12` print as `0`.
pub fn sig6(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x.abs() < 1e-12 {
        return "0".into();
    }
    let digits = 6 - 1 - x.abs().log10().floor() as i32;
    if digits >= 0 {
        format!("{:.*}", digits as usize, x)
    } else {
        format!("{:.0}", x)
    }
}

fn computed_row(label: String, ia: &IntersectionArray, expected: f64, expected_text: String, tol_rel: f64, rel: f64) -> Result<TableRowResult> {
    let report = analyze_with_tol(ia, rel)?;
    let computed = report.embedding_distortion_sq;
    let rel_error = tol::rel_diff(computed, expected);
    Ok(TableRowResult {
        label,
        array: ia.to_string(),
        expected,
        expected_text,
        computed,
        computed_text: value_text(computed),
        certified: report.certified,
        rel_error,
        matches: report.certified && rel_error <= tol_rel,
    })
}

fn array_table(id: &str, title: &str, rows: &[ArrayRow], rel: f64) -> Result<TableResult> {
    let rows = rows
        .iter()
        .map(|r| {
            let ia: IntersectionArray = r.array.parse()?;
            let label = format!("d={} v={}{}", r.d, r.v, if r.comment.is_empty() { String::new() } else { format!(" ({})", r.comment) });
            computed_row(label, &ia, r.expected.value(), r.expected.text(), r.expected.tolerance(rel), rel)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TableResult { id: id.into(), title: title.into(), rows })
}

/// Evaluates every instance of every family row against its closed form.
pub fn family_table(id: &str, title: &str, rows: &[FamilyRow], rel: f64) -> Result<TableResult> {
    let mut out = Vec::new();
    for (name, instances) in rows {
        for fam in instances {
            let ia = fam.intersection_array()?;
            let expected = fam.closed_form_c2_sq()?;
            let label = format!("{name} [{}]", fam.label());
            out.push(computed_row(label, &ia, expected, value_text(expected), rel, rel)?);
        }
    }
    Ok(TableResult { id: id.into(), title: title.into(), rows: out })
}

/// Recomputes table `id`.
pub fn evaluate_table(id: &str, rel: f64) -> Result<TableResult> {
    match id {
        "antipodal" => array_table(id, "Antipodal non-bipartite feasible arrays", ANTIPODAL_NON_BIPARTITE, rel),
        "antipodal-bipartite" => array_table(id, "Antipodal bipartite feasible arrays", ANTIPODAL_BIPARTITE, rel),
        "classical" => family_table(id, "Classical parameters with b >= 1", &classical_positive(), rel),
        "classical-negative" => family_table(id, "Classical parameters with b <= -1", &classical_negative(), rel),
        other => Err(Error::InvalidParameters(format!(
            "unknown table `{other}` (known: {})",
            TABLE_IDS.join(", ")
        ))),
    }
}
