//! Named families of distance-regular graphs: intersection-array generators and
//! closed-form values of `c_2(G)²` to check the generic analysis against.
//!
//! Generators only ever produce plain [`IntersectionArray`]s, so the analysis
//! pipeline never knows which family it is looking at. The closed forms are a
//! separate evaluation path.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intersection_array::{rational_to_f64, IntersectionArray};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn ipow(base: i64, exp: i64) -> BigRational {
    rat(base).pow(exp as i32)
}

/// Gaussian binomial `[n choose m]_b`.
///
/// Zero for `m < 0`, the ordinary (generalized) binomial for `b = 1`, and
/// `Π_{h<m} (b^{n-h} - 1)/(b^{m-h} - 1)` otherwise. Negative bases are
/// allowed; `b ∈ {0, -1}` is not.
pub fn gaussian_binomial(n: i64, m: i64, b: i64) -> Result<BigRational> {
    if b == 0 || b == -1 {
        return Err(Error::InvalidBase(b));
    }
    if m < 0 {
        return Ok(BigRational::zero());
    }
    let mut acc = BigRational::one();
    if b == 1 {
        for h in 0..m {
            acc = acc * rat(n - h) / rat(h + 1);
        }
        return Ok(acc);
    }
    for h in 0..m {
        acc = acc * (ipow(b, n - h) - BigRational::one()) / (ipow(b, m - h) - BigRational::one());
    }
    Ok(acc)
}

/// `[i choose 1]_b`, written `[i]` below.
fn bracket(i: i64, b: i64) -> BigRational {
    gaussian_binomial(i, 1, b).expect("base validated by caller")
}

/// Classical parameters `(d, b, α, β)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalParameters {
    pub d: usize,
    pub b: i64,
    pub alpha: BigRational,
    pub beta: BigRational,
}

impl ClassicalParameters {
    pub fn new(d: usize, b: i64, alpha: BigRational, beta: BigRational) -> Result<Self> {
        if b == 0 || b == -1 {
            return Err(Error::InvalidBase(b));
        }
        if d == 0 {
            return Err(Error::InvalidParameters("classical parameters need d >= 1".into()));
        }
        Ok(ClassicalParameters { d, b, alpha, beta })
    }

    pub fn from_ints(d: usize, b: i64, alpha: i64, beta: i64) -> Result<Self> {
        Self::new(d, b, rat(alpha), rat(beta))
    }

    /// `b_i = ([d] - [i])(β - α[i])`, `i = 0..d-1`.
    pub fn b_numbers(&self) -> Vec<BigRational> {
        let d = self.d as i64;
        (0..d)
            .map(|i| (bracket(d, self.b) - bracket(i, self.b)) * (&self.beta - &self.alpha * bracket(i, self.b)))
            .collect()
    }

    /// `c_i = [i](1 + α[i-1])`, `i = 1..d`.
    pub fn c_numbers(&self) -> Vec<BigRational> {
        let d = self.d as i64;
        (1..=d)
            .map(|i| bracket(i, self.b) * (BigRational::one() + &self.alpha * bracket(i - 1, self.b)))
            .collect()
    }

    /// `θ_i = [d-i](β - α[i]) - [i]` in formula order (not necessarily sorted).
    pub fn eigenvalues(&self) -> Vec<BigRational> {
        let d = self.d as i64;
        (0..=d)
            .map(|i| {
                bracket(d - i, self.b) * (&self.beta - &self.alpha * bracket(i, self.b)) - bracket(i, self.b)
            })
            .collect()
    }

    /// `d² b^{d-1} / [d]_b`, the value of `c_2²` for `b >= 1`.
    pub fn positive_base_c2_sq(&self) -> Result<BigRational> {
        if self.b < 1 {
            return Err(Error::InvalidParameters(format!(
                "no general closed form for base b = {}",
                self.b
            )));
        }
        let d = self.d as i64;
        Ok(rat(d * d) * ipow(self.b, d - 1) / bracket(d, self.b))
    }
}

impl fmt::Display for ClassicalParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.d, self.b, self.alpha, self.beta)
    }
}

fn to_positive_u64(name: String, x: &BigRational) -> Result<u64> {
    let bad = || Error::NonIntegral { name: name.clone(), value: x.to_string() };
    if !x.is_integer() || !x.is_positive() {
        return Err(bad());
    }
    x.to_integer().to_u64().ok_or_else(bad)
}

/// Intersection array of a graph with classical parameters `p`.
pub fn classical_to_ia(p: &ClassicalParameters) -> Result<IntersectionArray> {
    let b = p
        .b_numbers()
        .iter()
        .enumerate()
        .map(|(i, x)| to_positive_u64(format!("b_{i}"), x))
        .collect::<Result<Vec<_>>>()?;
    let c = p
        .c_numbers()
        .iter()
        .enumerate()
        .map(|(i, x)| to_positive_u64(format!("c_{}", i + 1), x))
        .collect::<Result<Vec<_>>>()?;
    IntersectionArray::new(b, c)
}

/// Every family the crate can generate.
///
/// Parameter conventions follow the usual ones for each family; see
/// [`Family::parse`] for the command-line spelling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    Hamming { d: usize, q: u64 },
    Johnson { n: usize, d: usize },
    HalvedCube { d: usize, m: u64 },
    Doob { d: usize },
    Grassmann { d: usize, q: u64, n: usize },
    TwistedGrassmann { d: usize, q: u64 },
    Bilinear { d: usize, q: u64, e: usize },
    /// `two_e` is `2e` for `e ∈ {0, 1/2, 1, 3/2, 2}`.
    DualPolar { d: usize, q: u64, two_e: u32 },
    Alternating { d: usize, q: u64, m: u64 },
    Quadratic { d: usize, q: u64, m: u64 },
    HalfDualPolar { d: usize, q: u64, m: u64 },
    SymplecticDist12 { d: usize, q: u64, m: u64 },
    PseudoDm { d: usize, q: u64 },
    Gosset,
    E77 { q: u64 },
    AffineE6 { q: u64 },
    WittM24,
    WittM23,
    TernaryGolay,
    Triality { q: u64 },
    /// `U(2d, r)` with `q = r²`.
    UnitaryDualPolar { d: usize, q: u64 },
    Hermitian { d: usize, q: u64 },
    Hadamard { mu: u64 },
    Taylor { k: u64, mu: u64 },
    Hexagon { s: u64, t: u64 },
    Octagon { s: u64, t: u64 },
    Odd { d: usize },
    GolayShortened,
    GolayDoubleTruncated,
    GolayDouble,
}

/// Command-line names, in the order they are listed in help output.
pub const FAMILY_NAMES: &[(&str, &str)] = &[
    ("hamming", "d q"),
    ("johnson", "n d"),
    ("halved-cube", "d m   (m = 2d-1 or 2d+1)"),
    ("doob", "d"),
    ("grassmann", "d q n"),
    ("twisted-grassmann", "d q"),
    ("bilinear", "d q e"),
    ("dual-polar", "d q e   (e in 0, 0.5, 1, 1.5, 2)"),
    ("alternating", "d q m   (m = 2d-1 or 2d+1)"),
    ("quadratic", "d q m   (m = 2d-1 or 2d+1)"),
    ("half-dual-polar", "d q m   (m = 2d-1 or 2d+1)"),
    ("symplectic-12", "d q m   (m = 2d-1 or 2d+1)"),
    ("pseudo-dm", "d q"),
    ("gosset", ""),
    ("e77", "q"),
    ("affine-e6", "q"),
    ("witt-m24", ""),
    ("witt-m23", ""),
    ("ternary-golay", ""),
    ("triality", "q"),
    ("unitary-dual-polar", "d q   (q a perfect square)"),
    ("hermitian", "d q"),
    ("hadamard", "mu"),
    ("taylor", "k mu"),
    ("hexagon", "s t"),
    ("octagon", "s t"),
    ("odd", "d"),
    ("golay-shortened", ""),
    ("golay-double-truncated", ""),
    ("golay-double", ""),
];

fn isqrt_exact(q: u64) -> Option<u64> {
    let r = (q as f64).sqrt().round() as u64;
    (r.checked_mul(r) == Some(q)).then_some(r)
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}

fn parse_num<T: std::str::FromStr>(name: &str, text: &str) -> Result<T> {
    text.trim()
        .parse()
        .map_err(|_| invalid(format!("{name}: cannot parse `{text}`")))
}

fn parse_two_e(text: &str) -> Result<u32> {
    let e: f64 = parse_num("e", text)?;
    let two_e = (2.0 * e).round();
    if (2.0 * e - two_e).abs() > 1e-12 || !(0.0..=4.0).contains(&two_e) {
        return Err(invalid(format!("e must be one of 0, 0.5, 1, 1.5, 2 (got {text})")));
    }
    Ok(two_e as u32)
}

impl Family {
    /// Builds a family from its command-line name and positional parameters,
    /// then validates the parameter range.
    pub fn parse(name: &str, params: &[String]) -> Result<Family> {
        let expect = |n: usize| -> Result<()> {
            if params.len() != n {
                return Err(invalid(format!("{name} takes {n} parameter(s), got {}", params.len())));
            }
            Ok(())
        };
        let p = |i: usize| params[i].as_str();
        let fam = match name {
            "hamming" => {
                expect(2)?;
                Family::Hamming { d: parse_num("d", p(0))?, q: parse_num("q", p(1))? }
            }
            "johnson" => {
                expect(2)?;
                Family::Johnson { n: parse_num("n", p(0))?, d: parse_num("d", p(1))? }
            }
            "halved-cube" => {
                expect(2)?;
                Family::HalvedCube { d: parse_num("d", p(0))?, m: parse_num("m", p(1))? }
            }
            "doob" => {
                expect(1)?;
                Family::Doob { d: parse_num("d", p(0))? }
            }
            "grassmann" => {
                expect(3)?;
                Family::Grassmann { d: parse_num("d", p(0))?, q: parse_num("q", p(1))?, n: parse_num("n", p(2))? }
            }
            "twisted-grassmann" => {
                expect(2)?;
                Family::TwistedGrassmann { d: parse_num("d", p(0))?, q: parse_num("q", p(1))? }
            }
            "bilinear" => {
                expect(3)?;
                Family::Bilinear { d: parse_num("d", p(0))?, q: parse_num("q", p(1))?, e: parse_num("e", p(2))? }
            }
            "dual-polar" => {
                expect(3)?;
                Family::DualPolar { d: parse_num("d", p(0))?, q: parse_num("q", p(1))?, two_e: parse_two_e(p(2))? }
            }
            "alternating" | "quadratic" | "half-dual-polar" | "symplectic-12" => {
                expect(3)?;
                let (d, q, m) = (parse_num("d", p(0))?, parse_num("q", p(1))?, parse_num("m", p(2))?);
                match name {
                    "alternating" => Family::Alternating { d, q, m },
                    "quadratic" => Family::Quadratic { d, q, m },
                    "half-dual-polar" => Family::HalfDualPolar { d, q, m },
                    _ => Family::SymplecticDist12 { d, q, m },
                }
            }
            "pseudo-dm" => {
                expect(2)?;
                Family::PseudoDm { d: parse_num("d", p(0))?, q: parse_num("q", p(1))? }
            }
            "gosset" => {
                expect(0)?;
                Family::Gosset
            }
            "e77" => {
                expect(1)?;
                Family::E77 { q: parse_num("q", p(0))? }
            }
            "affine-e6" => {
                expect(1)?;
                Family::AffineE6 { q: parse_num("q", p(0))? }
            }
            "witt-m24" => {
                expect(0)?;
                Family::WittM24
            }
            "witt-m23" => {
                expect(0)?;
                Family::WittM23
            }
            "ternary-golay" => {
                expect(0)?;
                Family::TernaryGolay
            }
            "triality" => {
                expect(1)?;
                Family::Triality { q: parse_num("q", p(0))? }
            }
            "unitary-dual-polar" => {
                expect(2)?;
                Family::UnitaryDualPolar { d: parse_num("d", p(0))?, q: parse_num("q", p(1))? }
            }
            "hermitian" => {
                expect(2)?;
                Family::Hermitian { d: parse_num("d", p(0))?, q: parse_num("q", p(1))? }
            }
            "hadamard" => {
                expect(1)?;
                Family::Hadamard { mu: parse_num("mu", p(0))? }
            }
            "taylor" => {
                expect(2)?;
                Family::Taylor { k: parse_num("k", p(0))?, mu: parse_num("mu", p(1))? }
            }
            "hexagon" => {
                expect(2)?;
                Family::Hexagon { s: parse_num("s", p(0))?, t: parse_num("t", p(1))? }
            }
            "octagon" => {
                expect(2)?;
                Family::Octagon { s: parse_num("s", p(0))?, t: parse_num("t", p(1))? }
            }
            "odd" => {
                expect(1)?;
                Family::Odd { d: parse_num("d", p(0))? }
            }
            "golay-shortened" => {
                expect(0)?;
                Family::GolayShortened
            }
            "golay-double-truncated" => {
                expect(0)?;
                Family::GolayDoubleTruncated
            }
            "golay-double" => {
                expect(0)?;
                Family::GolayDouble
            }
            other => return Err(Error::UnknownFamily(other.to_string())),
        };
        fam.validate()?;
        Ok(fam)
    }

    /// Command-line name of the family.
    pub fn name(&self) -> &'static str {
        match self {
            Family::Hamming { .. } => "hamming",
            Family::Johnson { .. } => "johnson",
            Family::HalvedCube { .. } => "halved-cube",
            Family::Doob { .. } => "doob",
            Family::Grassmann { .. } => "grassmann",
            Family::TwistedGrassmann { .. } => "twisted-grassmann",
            Family::Bilinear { .. } => "bilinear",
            Family::DualPolar { .. } => "dual-polar",
            Family::Alternating { .. } => "alternating",
            Family::Quadratic { .. } => "quadratic",
            Family::HalfDualPolar { .. } => "half-dual-polar",
            Family::SymplecticDist12 { .. } => "symplectic-12",
            Family::PseudoDm { .. } => "pseudo-dm",
            Family::Gosset => "gosset",
            Family::E77 { .. } => "e77",
            Family::AffineE6 { .. } => "affine-e6",
            Family::WittM24 => "witt-m24",
            Family::WittM23 => "witt-m23",
            Family::TernaryGolay => "ternary-golay",
            Family::Triality { .. } => "triality",
            Family::UnitaryDualPolar { .. } => "unitary-dual-polar",
            Family::Hermitian { .. } => "hermitian",
            Family::Hadamard { .. } => "hadamard",
            Family::Taylor { .. } => "taylor",
            Family::Hexagon { .. } => "hexagon",
            Family::Octagon { .. } => "octagon",
            Family::Odd { .. } => "odd",
            Family::GolayShortened => "golay-shortened",
            Family::GolayDoubleTruncated => "golay-double-truncated",
            Family::GolayDouble => "golay-double",
        }
    }

    /// Parameters in command-line order.
    pub fn params(&self) -> Vec<String> {
        let s = |x: &dyn ToString| x.to_string();
        match *self {
            Family::Hamming { d, q } => vec![s(&d), s(&q)],
            Family::Johnson { n, d } => vec![s(&n), s(&d)],
            Family::HalvedCube { d, m } => vec![s(&d), s(&m)],
            Family::Doob { d } | Family::Odd { d } => vec![s(&d)],
            Family::Grassmann { d, q, n } => vec![s(&d), s(&q), s(&n)],
            Family::TwistedGrassmann { d, q }
            | Family::PseudoDm { d, q }
            | Family::UnitaryDualPolar { d, q }
            | Family::Hermitian { d, q } => vec![s(&d), s(&q)],
            Family::Bilinear { d, q, e } => vec![s(&d), s(&q), s(&e)],
            Family::DualPolar { d, q, two_e } => vec![s(&d), s(&q), s(&(two_e as f64 / 2.0))],
            Family::Alternating { d, q, m }
            | Family::Quadratic { d, q, m }
            | Family::HalfDualPolar { d, q, m }
            | Family::SymplecticDist12 { d, q, m } => vec![s(&d), s(&q), s(&m)],
            Family::E77 { q } | Family::AffineE6 { q } | Family::Triality { q } => vec![s(&q)],
            Family::Hadamard { mu } => vec![s(&mu)],
            Family::Taylor { k, mu } => vec![s(&k), s(&mu)],
            Family::Hexagon { s: a, t } | Family::Octagon { s: a, t } => vec![s(&a), s(&t)],
            Family::Gosset
            | Family::WittM24
            | Family::WittM23
            | Family::TernaryGolay
            | Family::GolayShortened
            | Family::GolayDoubleTruncated
            | Family::GolayDouble => Vec::new(),
        }
    }

    /// `name p1 p2 …`
    pub fn label(&self) -> String {
        let mut parts = vec![self.name().to_string()];
        parts.extend(self.params());
        parts.join(" ")
    }

    fn validate(&self) -> Result<()> {
        let need = |ok: bool, msg: &str| if ok { Ok(()) } else { Err(invalid(format!("{}: {msg}", self.name()))) };
        let odd_m = |d: usize, m: u64| m == 2 * d as u64 - 1 || m == 2 * d as u64 + 1;
        match *self {
            Family::Hamming { d, q } => need(d >= 1 && q >= 2, "need d >= 1, q >= 2"),
            Family::Johnson { n, d } => need(d >= 1 && n >= 2 * d, "need d >= 1, n >= 2d"),
            Family::HalvedCube { d, m } => need(d >= 1 && odd_m(d, m), "need d >= 1, m = 2d-1 or 2d+1"),
            Family::Doob { d } => need(d >= 1, "need d >= 1"),
            Family::Grassmann { d, q, n } => need(d >= 1 && q >= 2 && n >= 2 * d, "need d >= 1, q >= 2, n >= 2d"),
            Family::TwistedGrassmann { d, q } => need(d >= 2 && q >= 2, "need d >= 2, q >= 2"),
            Family::Bilinear { d, q, e } => need(d >= 1 && q >= 2 && e >= d, "need d >= 1, q >= 2, e >= d"),
            Family::DualPolar { d, q, two_e } => {
                need(d >= 1 && q >= 2 && two_e <= 4, "need d >= 1, q >= 2, e in 0..=2")?;
                need(two_e % 2 == 0 || isqrt_exact(q).is_some(), "half-integral e needs q a perfect square")
            }
            Family::Alternating { d, q, m }
            | Family::Quadratic { d, q, m }
            | Family::HalfDualPolar { d, q, m }
            | Family::SymplecticDist12 { d, q, m } => {
                need(d >= 1 && q >= 2 && odd_m(d, m), "need d >= 1, q >= 2, m = 2d-1 or 2d+1")
            }
            Family::PseudoDm { d, q } => need(d >= 1 && q >= 2, "need d >= 1, q >= 2"),
            Family::E77 { q } | Family::AffineE6 { q } | Family::Triality { q } => need(q >= 2, "need q >= 2"),
            Family::UnitaryDualPolar { d, q } => need(
                d >= 1 && q >= 4 && isqrt_exact(q).is_some(),
                "need d >= 1 and q a perfect square >= 4",
            ),
            Family::Hermitian { d, q } => need(d >= 1 && q >= 2, "need d >= 1, q >= 2"),
            Family::Hadamard { mu } => need(mu == 1 || (mu >= 2 && mu % 2 == 0), "mu must be 1 or even"),
            Family::Taylor { k, mu } => need(k >= 2 && mu >= 1 && mu < k, "need k >= 2, 1 <= mu <= k-1"),
            Family::Hexagon { s, t } => need(
                s >= 2 && t >= 2 && s <= t.pow(3) && t <= s.pow(3),
                "need s, t >= 2 with s <= t^3, t <= s^3",
            ),
            Family::Octagon { s, t } => need(
                s >= 2 && t >= 2 && s <= t * t && t <= s * s,
                "need s, t >= 2 with s <= t^2, t <= s^2",
            ),
            Family::Odd { d } => need(d >= 2, "need d >= 2"),
            _ => Ok(()),
        }
    }

    /// Classical parameters, when the family has them. The unitary dual polar
    /// graph is given its `b >= 1` parameter set.
    pub fn classical(&self) -> Option<ClassicalParameters> {
        let q_sq = |q: u64| (q * q) as i64;
        let gq = |n: i64, q: u64| bracket(n, q as i64);
        let one = BigRational::one();
        let cp = |d: usize, b: i64, alpha: BigRational, beta: BigRational| {
            ClassicalParameters::new(d, b, alpha, beta).ok()
        };
        match *self {
            Family::Hamming { d, q } => cp(d, 1, rat(0), rat(q as i64 - 1)),
            Family::Doob { d } => cp(d, 1, rat(0), rat(3)),
            Family::Johnson { n, d } => cp(d, 1, rat(1), rat((n - d) as i64)),
            Family::HalvedCube { d, m } => cp(d, 1, rat(2), rat(m as i64)),
            Family::Grassmann { d, q, n } => cp(d, q as i64, rat(q as i64), gq((n - d + 1) as i64, q) - one),
            Family::TwistedGrassmann { d, q } => cp(d, q as i64, rat(q as i64), gq((d + 2) as i64, q) - one),
            Family::Bilinear { d, q, e } => cp(d, q as i64, rat(q as i64 - 1), ipow(q as i64, e as i64) - one),
            Family::DualPolar { d, q, two_e } => {
                let beta = match isqrt_exact(q) {
                    Some(r) => ipow(r as i64, two_e as i64),
                    None => ipow(q as i64, (two_e / 2) as i64),
                };
                cp(d, q as i64, rat(0), beta)
            }
            Family::PseudoDm { d, q } => cp(d, q as i64, rat(0), rat(1)),
            Family::Alternating { d, q, m } | Family::Quadratic { d, q, m } => {
                cp(d, q_sq(q), rat(q_sq(q) - 1), ipow(q as i64, m as i64) - one)
            }
            Family::HalfDualPolar { d, q, m } | Family::SymplecticDist12 { d, q, m } => {
                cp(d, q_sq(q), rat(q_sq(q) + q as i64), gq(m as i64 + 1, q) - one)
            }
            Family::Gosset => cp(3, 1, rat(4), rat(9)),
            Family::E77 { q } => cp(3, (q as i64).pow(4), gq(5, q) - &one, gq(10, q) - one),
            Family::AffineE6 { q } => cp(3, (q as i64).pow(4), rat((q as i64).pow(4) - 1), ipow(q as i64, 9) - one),
            Family::WittM24 => cp(3, -2, rat(-4), rat(10)),
            Family::WittM23 => cp(3, -2, rat(-2), rat(5)),
            Family::TernaryGolay => cp(3, -2, rat(-3), rat(8)),
            Family::Triality { q } => {
                let q = q as i64;
                cp(3, -q, ratio(q, 1 - q), rat(q * q + q))
            }
            Family::UnitaryDualPolar { d, q } => {
                let r = isqrt_exact(q)? as i64;
                cp(d, q as i64, rat(0), rat(r))
            }
            Family::Hermitian { d, q } => {
                let q = q as i64;
                cp(d, -q, rat(-q - 1), -ipow(-q, d as i64) - one)
            }
            _ => None,
        }
    }

    /// Intersection array of the family member.
    pub fn intersection_array(&self) -> Result<IntersectionArray> {
        self.validate()?;
        if let Some(p) = self.classical() {
            return classical_to_ia(&p);
        }
        let (b, c): (Vec<u64>, Vec<u64>) = match *self {
            Family::Hadamard { mu } => (vec![2 * mu, 2 * mu - 1, mu, 1], vec![1, mu, 2 * mu - 1, 2 * mu]),
            Family::Taylor { k, mu } => (vec![k, mu, 1], vec![1, mu, k]),
            Family::Hexagon { s, t } => (vec![s * (t + 1), s * t, s * t], vec![1, 1, t + 1]),
            Family::Octagon { s, t } => (vec![s * (t + 1), s * t, s * t, s * t], vec![1, 1, 1, t + 1]),
            Family::Odd { d } => odd_graph_array(d),
            Family::GolayShortened => (vec![22, 21, 20, 3, 2, 1], vec![1, 2, 3, 20, 21, 22]),
            Family::GolayDoubleTruncated => (vec![22, 21, 20, 16, 6, 2, 1], vec![1, 2, 6, 16, 20, 21, 22]),
            Family::GolayDouble => (vec![23, 22, 21, 20, 3, 2, 1], vec![1, 2, 3, 20, 21, 22, 23]),
            _ => unreachable!("classical families handled above"),
        };
        IntersectionArray::new(b, c)
    }

    /// Closed-form `c_2(G)²` for the family.
    pub fn closed_form_c2_sq(&self) -> Result<f64> {
        self.validate()?;
        let f = |x: BigRational| rational_to_f64(&x);
        Ok(match *self {
            Family::WittM24 => 168.0 / 25.0,
            Family::WittM23 => 84.0 / 13.0,
            Family::TernaryGolay => 33.0 / 5.0,
            Family::Triality { q } => {
                let q = q as i64;
                f(rat(9) * ipow(q, 5) / ((ipow(q, 3) + rat(1)) * (ipow(q, 2) + rat(1))))
            }
            Family::UnitaryDualPolar { d, q } => {
                let (d, q) = (d as i64, q as i64);
                f(rat(d * d) * ipow(q, d - 1) / bracket(d, q))
            }
            Family::Hermitian { d, q } => f(hermitian_c2_sq(d, q)),
            Family::Hadamard { mu } => {
                let x = ((2 * mu) as f64).sqrt();
                (8.0 * (x - 1.0) / x).max(9.0 * (x - 1.0) / (x + 1.0))
            }
            Family::Taylor { k, mu } => {
                let (k, mu) = (k as f64, mu as f64);
                let p = k - 1.0 - 2.0 * mu;
                let z1 = (p + (p * p + 4.0 * k).sqrt()) / 2.0;
                9.0 * (k - z1) / (2.0 * k)
            }
            Family::Hexagon { s, t } => {
                let (s, t) = (s as f64, t as f64);
                let r = (s * t).sqrt();
                9.0 * t * r / ((r + 1.0) * (t + 1.0))
            }
            Family::Octagon { s, t } => {
                let (s, t) = (s as f64, t as f64);
                16.0 * s * t * t * (s * t - (2.0 * s * t).sqrt() + 1.0) / ((t + 1.0) * (s * s * t * t + 1.0))
            }
            Family::Odd { d } => f(odd_graph_c2_sq(d)),
            Family::GolayShortened => 35.0 / 3.0,
            Family::GolayDoubleTruncated => 27.0 / 2.0,
            Family::GolayDouble => 63.0 / 4.0,
            _ => {
                let p = self.classical().ok_or_else(|| invalid(self.label()))?;
                f(p.positive_base_c2_sq()?)
            }
        })
    }
}

/// Convenience wrapper: array for `name params…`.
pub fn family_ia(name: &str, params: &[String]) -> Result<IntersectionArray> {
    Family::parse(name, params)?.intersection_array()
}

/// Convenience wrapper: closed-form `c_2²` for `name params…`.
pub fn closed_form_c2_sq(name: &str, params: &[String]) -> Result<f64> {
    Family::parse(name, params)?.closed_form_c2_sq()
}

/// `c_2² = 4(1 + 1/s)` for a strongly regular graph with smallest eigenvalue `s`.
pub fn srg_c2_sq(s: f64) -> f64 {
    4.0 * (1.0 + 1.0 / s)
}

/// `d² (b^d + b^{d-1} + b + 1) b^{d-1} / ((b^d + b + 1)[d]_b)` with `b = -q`.
pub fn hermitian_c2_sq(d: usize, q: u64) -> BigRational {
    let d = d as i64;
    let b = -(q as i64);
    let one = BigRational::one();
    let num = (ipow(b, d) + ipow(b, d - 1) + rat(b) + &one) * ipow(b, d - 1);
    let den = (ipow(b, d) + rat(b) + one) * bracket(d, b);
    rat(d * d) * num / den
}

/// `c_2²` of the Odd graph `O_{d+1}`: `4ℓ²(4ℓ-2)/(4ℓ²+ℓ-1)` for `d = 2ℓ` and
/// `(2ℓ+1)²(4ℓ+2)/(4ℓ²+7ℓ+3)` for `d = 2ℓ+1`.
pub fn odd_graph_c2_sq(d: usize) -> BigRational {
    let l = (d / 2) as i64;
    if d.is_multiple_of(2) {
        ratio(4 * l * l * (4 * l - 2), 4 * l * l + l - 1)
    } else {
        ratio((2 * l + 1).pow(2) * (4 * l + 2), 4 * l * l + 7 * l + 3)
    }
}

/// Intersection array of the Odd graph `O_{d+1}` (diameter `d`, valency `d+1`).
///
/// Vertices at distance `r` meet in `d - r/2` points (`r` even) or
/// `(r - 1)/2` points (`r` odd); counting neighbours of each kind gives
/// `b_{2i} = d+1-i`, `b_{2i+1} = d-i`, `c_{2i} = i`, `c_{2i+1} = i+1`.
pub fn odd_graph_array(d: usize) -> (Vec<u64>, Vec<u64>) {
    let d = d as u64;
    let b = (0..d).map(|i| if i % 2 == 0 { d + 1 - i / 2 } else { d - i / 2 }).collect();
    let c = (1..=d).map(|i| if i % 2 == 0 { i / 2 } else { i / 2 + 1 }).collect();
    (b, c)
}

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Eberlein polynomial `E_j(i) = Σ_h (-1)^h C(i,h) C(d-i,j-h) C(n-d-i,j-h)`:
/// the eigenvalue of the distance-`j` graph of `J(n, d)` on eigenspace `i`.
pub fn eberlein(j: usize, i: usize, n: usize, d: usize) -> Result<BigInt> {
    if i > d || j > d || 2 * d > n {
        return Err(invalid(format!("eberlein needs 0 <= i, j <= d <= n/2 (i={i}, j={j}, n={n}, d={d})")));
    }
    let (j, i, n, d) = (j as i64, i as i64, n as i64, d as i64);
    let mut acc = BigInt::zero();
    for h in 0..=j {
        let term = binom(i, h) * binom(d - i, j - h) * binom(n - d - i, j - h);
        if h % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Second evaluation path for `E_{⌈d/2⌉}(i)` on `J(2d+1, d)`:
/// `Σ_{h<=i} (-1)^{i-h} C(i,h) C(d-h, ⌈d/2⌉) C(d-i+h+1, ⌊d/2⌋+1)`.
pub fn eberlein_half(i: usize, d: usize) -> Result<BigInt> {
    if i > d {
        return Err(invalid(format!("eberlein_half needs i <= d (i={i}, d={d})")));
    }
    let (i, d) = (i as i64, d as i64);
    let up = (d + 1) / 2;
    let down = d / 2 + 1;
    let mut acc = BigInt::zero();
    for h in 0..=i {
        let term = binom(i, h) * binom(d - h, up) * binom(d - i + h + 1, down);
        if (i - h) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Exact cosine matrix of the Odd graph `O_{d+1}` from the Johnson scheme.
///
/// Row `i` corresponds to the Johnson eigenspace `i`, whose Odd-graph
/// eigenvalue is `(-1)^i (d+1-i)`; entry `r` is `E_{j(r)}(i)/E_{j(r)}(0)`
/// where `j(r)` is the Johnson distance of a pair at Odd-graph distance `r`.
/// Rows are in Johnson order, not sorted by eigenvalue.
pub fn odd_graph_cosines(d: usize) -> Result<(Vec<i64>, Vec<Vec<BigRational>>)> {
    let n = 2 * d + 1;
    let johnson_distance = |r: usize| if r.is_multiple_of(2) { r / 2 } else { (2 * d - r).div_ceil(2) };
    let theta = (0..=d)
        .map(|i| if i % 2 == 0 { (d + 1 - i) as i64 } else { -((d + 1 - i) as i64) })
        .collect();
    let mut rows = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let row = (0..=d)
            .map(|r| {
                let j = johnson_distance(r);
                Ok(BigRational::new(eberlein(j, i, n, d)?, eberlein(j, 0, n, d)?))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok((theta, rows))
}

/// Exact eigenmatrix of the Hermitian forms graph with parameters `(d, q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianEigenmatrix {
    /// `θ_i = ((-q)^{2d-i} - 1)/(q + 1)` in formula order.
    pub theta: Vec<BigRational>,
    /// `v[i][j] = v_j(θ_i)`.
    pub v: Vec<Vec<BigRational>>,
}

impl HermitianEigenmatrix {
    /// `w_j(θ_i) = v_j(θ_i)/v_j(θ_0)`.
    pub fn cosines(&self) -> Vec<Vec<BigRational>> {
        self.v
            .iter()
            .map(|row| row.iter().zip(&self.v[0]).map(|(x, k)| x / k).collect())
            .collect()
    }
}

/// `v_j(θ_i) = (-1)^j Σ_h (-q)^{C(j-h,2) + hd} [d-h choose d-j]_b [d-i choose h]_b`
/// with `b = -q`.
pub fn hermitian_eigenmatrix(d: usize, q: u64) -> Result<HermitianEigenmatrix> {
    if d == 0 || q < 2 {
        return Err(invalid("hermitian eigenmatrix needs d >= 1, q >= 2"));
    }
    let (di, qi) = (d as i64, q as i64);
    let b = -qi;
    let theta = (0..=di)
        .map(|i| (ipow(b, 2 * di - i) - rat(1)) / rat(qi + 1))
        .collect();
    let mut v = Vec::with_capacity(d + 1);
    for i in 0..=di {
        let mut row = Vec::with_capacity(d + 1);
        for j in 0..=di {
            let mut acc = BigRational::zero();
            for h in 0..=j {
                let e = (j - h) * (j - h - 1) / 2 + h * di;
                acc += ipow(b, e) * gaussian_binomial(di - h, di - j, b)? * gaussian_binomial(di - i, h, b)?;
            }
            row.push(if j.is_odd() { -acc } else { acc });
        }
        v.push(row);
    }
    Ok(HermitianEigenmatrix { theta, v })
}
