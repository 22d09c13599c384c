//! Intersection arrays `{b_0,…,b_{d-1}; c_1,…,c_d}` and the combinatorial
//! quantities derived from them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::Spectrum;
use crate::tol;

/// A validated intersection array with its derived data.
///
/// The distance-`i` valencies `k_i` and the vertex count `n` are kept as exact
/// rationals: for infeasible arrays they need not be integers, and the
/// feasibility check has to see that exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionArray {
    b: Vec<u64>,
    c: Vec<u64>,
    a: Vec<u64>,
    k_dist: Vec<BigRational>,
    n: BigRational,
}

impl IntersectionArray {
    /// Builds an array from `b_0..b_{d-1}` and `c_1..c_d`.
    pub fn new(b: Vec<u64>, c: Vec<u64>) -> Result<Self> {
        let d = b.len();
        if d == 0 {
            return Err(Error::InvalidArray("diameter must be at least 1".into()));
        }
        if c.len() != d {
            return Err(Error::InvalidArray(format!(
                "b-part has {} entries but c-part has {}",
                d,
                c.len()
            )));
        }
        if let Some(i) = b.iter().position(|&x| x == 0) {
            return Err(Error::InvalidArray(format!("b_{i} must be positive")));
        }
        if let Some(i) = c.iter().position(|&x| x == 0) {
            return Err(Error::InvalidArray(format!("c_{} must be positive", i + 1)));
        }
        if c[0] != 1 {
            return Err(Error::InvalidArray(format!("c_1 must be 1, got {}", c[0])));
        }
        let k = b[0];
        let mut a = Vec::with_capacity(d + 1);
        for i in 0..=d {
            let bi = if i < d { b[i] } else { 0 };
            let ci = if i > 0 { c[i - 1] } else { 0 };
            match k.checked_sub(bi).and_then(|x| x.checked_sub(ci)) {
                Some(ai) => a.push(ai),
                None => {
                    return Err(Error::InvalidArray(format!(
                        "a_{i} = {k} - {bi} - {ci} is negative"
                    )))
                }
            }
        }
        let mut k_dist = Vec::with_capacity(d + 1);
        k_dist.push(BigRational::one());
        for i in 1..=d {
            let next = &k_dist[i - 1] * BigRational::new(BigInt::from(b[i - 1]), BigInt::from(c[i - 1]));
            k_dist.push(next);
        }
        let n = k_dist.iter().fold(BigRational::zero(), |acc, x| acc + x);
        Ok(IntersectionArray { b, c, a, k_dist, n })
    }

    pub fn diameter(&self) -> usize {
        self.b.len()
    }

    pub fn valency(&self) -> u64 {
        self.b[0]
    }

    /// `b_0..b_{d-1}`.
    pub fn b(&self) -> &[u64] {
        &self.b
    }

    /// `c_1..c_d`.
    pub fn c(&self) -> &[u64] {
        &self.c
    }

    /// `a_0..a_d`.
    pub fn a(&self) -> &[u64] {
        &self.a
    }

    /// `b_i` for `0 <= i <= d`, with `b_d = 0`.
    pub fn b_at(&self, i: usize) -> u64 {
        if i < self.diameter() {
            self.b[i]
        } else {
            0
        }
    }

    /// `c_i` for `0 <= i <= d`, with `c_0 = 0`.
    pub fn c_at(&self, i: usize) -> u64 {
        if i == 0 {
            0
        } else {
            self.c[i - 1]
        }
    }

    pub fn a_at(&self, i: usize) -> u64 {
        self.a[i]
    }

    /// Distance-`i` valencies `k_0..k_d`.
    pub fn k_dist(&self) -> &[BigRational] {
        &self.k_dist
    }

    pub fn k_dist_f64(&self) -> Vec<f64> {
        self.k_dist.iter().map(rational_to_f64).collect()
    }

    /// Vertex count (possibly non-integral for infeasible arrays).
    pub fn n(&self) -> &BigRational {
        &self.n
    }

    pub fn n_f64(&self) -> f64 {
        rational_to_f64(&self.n)
    }

    /// Cover index `r` when the array is antipodal.
    ///
    /// Antipodal means `b_i = c_{d-i}` for every `i` except possibly
    /// `⌊d/2⌋`; the distance-`d` graph is then a union of `(k_d + 1)`-cliques.
    pub fn antipodal_cover(&self) -> Option<u64> {
        let d = self.diameter();
        let skip = d / 2;
        let antipodal = (0..=d)
            .filter(|&i| i != skip)
            .all(|i| self.b_at(i) == self.c_at(d - i));
        if !antipodal {
            return None;
        }
        let kd = &self.k_dist[d];
        if !kd.is_integer() {
            return None;
        }
        kd.to_integer().to_u64().map(|x| x + 1)
    }

    pub fn is_antipodal(&self) -> bool {
        self.antipodal_cover().is_some()
    }

    pub fn is_bipartite(&self) -> bool {
        self.a.iter().all(|&x| x == 0)
    }

    /// Minimal feasibility battery against a spectrum computed from `self`.
    pub fn feasibility(&self, spec: &Spectrum) -> FeasibilityReport {
        let k_integral = self.k_dist.iter().all(|k| k.is_integer());
        let n_integral = self.n.is_integer();
        let b_nonincreasing = self.b.windows(2).all(|w| w[0] >= w[1]);
        let c_nondecreasing = self.c.windows(2).all(|w| w[0] <= w[1]);
        let multiplicities = spec.multiplicities().to_vec();
        let multiplicities_integral = multiplicities
            .iter()
            .all(|m| (m - m.round()).abs() <= tol::MULTIPLICITY && m.round() >= 1.0);
        FeasibilityReport {
            k_integral,
            n_integral,
            b_nonincreasing,
            c_nondecreasing,
            multiplicities_integral,
            multiplicities,
        }
    }
}

/// Outcome of [`IntersectionArray::feasibility`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub k_integral: bool,
    pub n_integral: bool,
    pub b_nonincreasing: bool,
    pub c_nondecreasing: bool,
    pub multiplicities_integral: bool,
    pub multiplicities: Vec<f64>,
}

impl FeasibilityReport {
    pub fn passes(&self) -> bool {
        self.k_integral
            && self.n_integral
            && self.b_nonincreasing
            && self.c_nondecreasing
            && self.multiplicities_integral
    }

    /// Names of the failing checks, in a fixed order.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.k_integral {
            out.push("k_i integral");
        }
        if !self.n_integral {
            out.push("n integral");
        }
        if !self.b_nonincreasing {
            out.push("b_i nonincreasing");
        }
        if !self.c_nondecreasing {
            out.push("c_i nondecreasing");
        }
        if !self.multiplicities_integral {
            out.push("multiplicities integral");
        }
        out
    }
}

pub(crate) fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[u64]| xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

impl FromStr for IntersectionArray {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_intersection_array(s)
    }
}

/// Parses `{b_0,…,b_{d-1};c_1,…,c_d}`. Whitespace between tokens is allowed.
/// Error positions are 1-based columns.
pub fn parse_intersection_array(text: &str) -> Result<IntersectionArray> {
    let mut p = Parser { src: text, pos: 0 };
    p.skip_ws();
    p.expect('{')?;
    let b = p.int_list()?;
    p.expect(';')?;
    let c = p.int_list()?;
    p.expect('}')?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("trailing characters after '}'"));
    }
    if b.len() != c.len() {
        return Err(Error::InvalidArray(format!(
            "b-part has {} entries but c-part has {}",
            b.len(),
            c.len()
        )));
    }
    IntersectionArray::new(b, c)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        self.error_at(self.pos, msg)
    }

    fn error_at(&self, pos: usize, msg: &str) -> Error {
        let col = self.src[..pos].chars().count() + 1;
        Error::Parse { pos: col, msg: msg.to_string() }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(ch) = self.peek() {
            if ch.is_whitespace() {
                self.pos += ch.len_utf8();
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(ch) if ch == want => {
                self.pos += 1;
                Ok(())
            }
            Some(ch) => Err(self.error(&format!("expected '{want}', found '{ch}'"))),
            None => Err(self.error(&format!("expected '{want}', found end of input"))),
        }
    }

    fn int(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            return Err(self.error("entries must be positive integers"));
        }
        while matches!(self.peek(), Some(ch) if ch.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let value: u64 = self.src[start..self.pos]
            .parse()
            .map_err(|_| self.error_at(start, "integer out of range"))?;
        if value == 0 {
            return Err(self.error_at(start, "entries must be positive integers"));
        }
        Ok(value)
    }

    fn int_list(&mut self) -> Result<Vec<u64>> {
        let mut out = vec![self.int()?];
        loop {
            self.skip_ws();
            if self.peek() == Some(',') {
                self.pos += 1;
                out.push(self.int()?);
            } else {
                return Ok(out);
            }
        }
    }
}

/// One non-blank line of a corpus file.
#[derive(Debug, Clone)]
pub struct CorpusLine {
    /// 1-based line number in the source.
    pub line_no: usize,
    pub name: Option<String>,
    /// The array text, without name prefix or comment.
    pub text: String,
    pub parsed: Result<IntersectionArray>,
}

/// Splits corpus text into array lines.
///
/// Each line is an optional `name :` prefix followed by an array; `#` starts a
/// comment and blank lines are skipped. LF and CRLF both work.
pub fn parse_corpus(text: &str) -> Vec<CorpusLine> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        let body = match line.find('#') {
            Some(h) => &line[..h],
            None => line,
        };
        if body.trim().is_empty() {
            continue;
        }
        let (name, array_text) = split_name(body);
        let (name, parsed) = match name {
            Err(e) => (None, Err(e)),
            Ok(name) => (name, parse_intersection_array(array_text)),
        };
        out.push(CorpusLine {
            line_no: idx + 1,
            name,
            text: array_text.trim().to_string(),
            parsed,
        });
    }
    out
}

fn split_name(body: &str) -> (Result<Option<String>>, &str) {
    let Some(brace) = body.find('{') else {
        return (Ok(None), body);
    };
    let prefix = body[..brace].trim();
    if prefix.is_empty() {
        return (Ok(None), &body[brace..]);
    }
    match prefix.strip_suffix(':') {
        Some(name) => (Ok(Some(name.trim().to_string())), &body[brace..]),
        None => (
            Err(Error::Parse {
                pos: 1,
                msg: "text before '{' must be a `name :` prefix".into(),
            }),
            &body[brace..],
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ia(s: &str) -> IntersectionArray {
        s.parse().unwrap()
    }

    #[test]
    fn petersen_derived_quantities() {
        let p = ia("{3,2;1,1}");
        assert_eq!(p.diameter(), 2);
        assert_eq!(p.valency(), 3);
        let k: Vec<f64> = p.k_dist_f64();
        assert_eq!(k, vec![1.0, 3.0, 6.0]);
        assert_eq!(p.n_f64(), 10.0);
        assert_eq!(p.a(), &[0, 0, 2]);
    }

    #[test]
    fn golay_coset_graph_has_2048_vertices() {
        let g = ia("{22,21,20,3,2,1;1,2,3,20,21,22}");
        assert_eq!(g.diameter(), 6);
        assert_eq!(g.valency(), 22);
        assert!(g.n().is_integer());
        assert_eq!(g.n_f64(), 2048.0);
    }

    #[test]
    fn triangle_is_accepted() {
        let t = ia("{2;1}");
        assert_eq!(t.diameter(), 1);
        assert_eq!(t.a(), &[0, 1]);
        assert_eq!(t.n_f64(), 3.0);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("{bad".parse::<IntersectionArray>(), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!("{3,2;1}".parse::<IntersectionArray>(), Err(Error::InvalidArray(_))));
        assert!(matches!("{3,0;1,1}".parse::<IntersectionArray>(), Err(Error::Parse { .. })));
        assert!(matches!("{3,-2;1,1}".parse::<IntersectionArray>(), Err(Error::Parse { .. })));
        assert!(matches!("{3,2;2,1}".parse::<IntersectionArray>(), Err(Error::InvalidArray(_))));
        // a_1 = 3 - 3 - 1 < 0
        assert!(matches!("{3,3;1,1}".parse::<IntersectionArray>(), Err(Error::InvalidArray(_))));
        assert!(matches!("{3,2;1,1}x".parse::<IntersectionArray>(), Err(Error::Parse { pos: 10, .. })));
    }

    #[test]
    fn whitespace_is_tolerated() {
        let p = ia("  { 3 , 2 ; 1 , 1 }  ");
        assert_eq!(p.to_string(), "{3,2;1,1}");
    }

    #[test]
    fn antipodal_classification() {
        assert_eq!(ia("{4,3,2,1;1,2,3,4}").antipodal_cover(), Some(2));
        assert_eq!(ia("{22,21,20,3,2,1;1,2,3,20,21,22}").antipodal_cover(), Some(2));
        assert_eq!(ia("{3,2;1,1}").antipodal_cover(), None);
        // Taylor graphs are double covers of complete graphs.
        assert_eq!(ia("{5,2,1;1,2,5}").antipodal_cover(), Some(2));
    }

    #[test]
    fn bipartite_classification() {
        assert!(ia("{4,3,2,1;1,2,3,4}").is_bipartite());
        assert!(!ia("{3,2;1,1}").is_bipartite());
        assert!(ia("{26,25,24,2,1;1,2,24,25,26}").is_bipartite());
    }

    #[test]
    fn double_counting_holds_exactly() {
        let g = ia("{105,104,100,75,30,5,1;1,5,30,75,100,104,105}");
        let k = g.k_dist();
        for i in 0..g.diameter() {
            let lhs = &k[i] * BigRational::from_integer(g.b_at(i).into());
            let rhs = &k[i + 1] * BigRational::from_integer(g.c_at(i + 1).into());
            assert_eq!(lhs, rhs);
        }
        assert_eq!(g.n_f64(), 19140.0);
    }

    #[test]
    fn corpus_lines() {
        let text = "# header\r\npetersen : {3,2;1,1}  # comment\r\n\n{2;1}\nbad line {3,2;1,1}\n{3,2;1\n";
        let lines = parse_corpus(text);
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0].line_no, 2);
        assert_eq!(lines[0].name.as_deref(), Some("petersen"));
        assert!(lines[0].parsed.is_ok());
        assert_eq!(lines[1].name, None);
        assert!(lines[1].parsed.is_ok());
        assert!(lines[2].parsed.is_err());
        assert!(lines[3].parsed.is_err());
    }
}
