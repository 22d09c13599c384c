//! Brute-force ground truth on small explicit graphs.
//!
//! Graphs are built vertex by vertex, their intersection arrays are read off
//! the BFS distance matrix, and the spectral embedding is formed from actual
//! adjacency eigenvectors so that its distances can be measured directly.
//! The `Q_α` certificate lives here too: it re-derives each lower bound as
//! the positive semidefiniteness of a Bose–Mesner matrix.

use std::collections::VecDeque;
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intersection_array::IntersectionArray;
use crate::spectrum::{spectrum, Spectrum};
use crate::tol;

/// Largest graph the oracle will build.
pub const SIZE_CAP: usize = 2000;

/// Connected simple graph with its all-pairs distance matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitGraph {
    adj: Vec<Vec<usize>>,
    dist: Vec<Vec<usize>>,
    diameter: usize,
}

impl ExplicitGraph {
    /// Builds a graph from adjacency lists. Lists are sorted and deduplicated;
    /// the relation must be symmetric and loop-free, and the graph connected.
    pub fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Result<Self> {
        let n = adj.len();
        if n == 0 {
            return Err(Error::InvalidParameters("graph has no vertices".into()));
        }
        if n > SIZE_CAP {
            return Err(Error::SizeCap { n, cap: SIZE_CAP });
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        for (x, list) in adj.iter().enumerate() {
            for &y in list {
                if y >= n || y == x || adj[y].binary_search(&x).is_err() {
                    return Err(Error::InvalidParameters(format!("edge {x}-{y} is not a symmetric simple edge")));
                }
            }
        }
        let dist: Vec<Vec<usize>> = (0..n).into_par_iter().map(|s| bfs(&adj, s)).collect();
        if dist[0].contains(&usize::MAX) {
            return Err(Error::Disconnected);
        }
        let diameter = dist.iter().flatten().copied().max().unwrap_or(0);
        Ok(ExplicitGraph { adj, dist, diameter })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(x, y) in edges {
            if x >= n || y >= n {
                return Err(Error::InvalidParameters(format!("edge {x}-{y} out of range")));
            }
            adj[x].push(y);
            adj[y].push(x);
        }
        Self::from_adjacency(adj)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    pub fn neighbors(&self, x: usize) -> &[usize] {
        &self.adj[x]
    }

    pub fn distance(&self, x: usize, y: usize) -> usize {
        self.dist[x][y]
    }

    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        let n = self.n();
        let mut a = DMatrix::zeros(n, n);
        for (x, list) in self.adj.iter().enumerate() {
            for &y in list {
                a[(x, y)] = 1.0;
            }
        }
        a
    }
}

fn bfs(adj: &[Vec<usize>], s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Graphs the oracle knows how to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GraphKind {
    Hypercube { d: usize },
    Hamming { d: usize, q: usize },
    /// `d`-subsets of an `n`-set, adjacent when they share `d - 1` points.
    Johnson { n: usize, d: usize },
    /// `O_{d+1}`: `d`-subsets of a `(2d+1)`-set, adjacent when disjoint.
    Odd { d: usize },
    Cycle { n: usize },
    Petersen,
}

pub const GRAPH_KINDS: &[(&str, &str)] = &[
    ("hypercube", "d"),
    ("hamming", "d q"),
    ("johnson", "n d"),
    ("odd", "d"),
    ("cycle", "n"),
    ("petersen", ""),
];

impl GraphKind {
    pub fn parse(name: &str, params: &[String]) -> Result<GraphKind> {
        let nums = params
            .iter()
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidParameters(format!("cannot parse `{p}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let arity = match name {
            "petersen" => 0,
            "hypercube" | "odd" | "cycle" => 1,
            "hamming" | "johnson" => 2,
            other => return Err(Error::UnknownFamily(other.to_string())),
        };
        if nums.len() != arity {
            return Err(Error::InvalidParameters(format!(
                "{name} takes {arity} parameter(s), got {}",
                nums.len()
            )));
        }
        Ok(match name {
            "petersen" => GraphKind::Petersen,
            "hypercube" => GraphKind::Hypercube { d: nums[0] },
            "odd" => GraphKind::Odd { d: nums[0] },
            "cycle" => GraphKind::Cycle { n: nums[0] },
            "hamming" => GraphKind::Hamming { d: nums[0], q: nums[1] },
            _ => GraphKind::Johnson { n: nums[0], d: nums[1] },
        })
    }

    /// Number of vertices, saturating on overflow.
    pub fn order(&self) -> usize {
        match *self {
            GraphKind::Hypercube { d } => checked_pow(2, d),
            GraphKind::Hamming { d, q } => checked_pow(q, d),
            GraphKind::Johnson { n, d } => binomial(n, d),
            GraphKind::Odd { d } => binomial(2 * d + 1, d),
            GraphKind::Cycle { n } => n,
            GraphKind::Petersen => 10,
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GraphKind::Hypercube { d } => write!(f, "hypercube({d})"),
            GraphKind::Hamming { d, q } => write!(f, "hamming({d},{q})"),
            GraphKind::Johnson { n, d } => write!(f, "johnson({n},{d})"),
            GraphKind::Odd { d } => write!(f, "odd({d})"),
            GraphKind::Cycle { n } => write!(f, "cycle({n})"),
            GraphKind::Petersen => write!(f, "petersen"),
        }
    }
}

fn checked_pow(base: usize, exp: usize) -> usize {
    u32::try_from(exp)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .unwrap_or(usize::MAX)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// All `d`-subsets of `{0..n-1}` as bitmasks, in lexicographic order.
fn subsets(n: usize, d: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut stack = vec![(0usize, 0u64, 0usize)];
    while let Some((start, mask, size)) = stack.pop() {
        if size == d {
            out.push(mask);
            continue;
        }
        for i in (start..n).rev() {
            if n - i >= d - size {
                stack.push((i + 1, mask | (1 << i), size + 1));
            }
        }
    }
    out
}

fn set_graph(sets: &[u64], adjacent: impl Fn(u64, u64) -> bool + Sync) -> Vec<Vec<usize>> {
    (0..sets.len())
        .into_par_iter()
        .map(|x| (0..sets.len()).filter(|&y| y != x && adjacent(sets[x], sets[y])).collect())
        .collect()
}

/// Builds the explicit graph, refusing anything above [`SIZE_CAP`] vertices.
pub fn build_graph(kind: &GraphKind) -> Result<ExplicitGraph> {
    let n = kind.order();
    if n > SIZE_CAP {
        return Err(Error::SizeCap { n, cap: SIZE_CAP });
    }
    let bad = |msg: &str| Err(Error::InvalidParameters(format!("{kind}: {msg}")));
    let adj = match *kind {
        GraphKind::Hypercube { d } => {
            if d == 0 {
                return bad("need d >= 1");
            }
            hamming_adjacency(d, 2)
        }
        GraphKind::Hamming { d, q } => {
            if d == 0 || q < 2 {
                return bad("need d >= 1, q >= 2");
            }
            hamming_adjacency(d, q)
        }
        GraphKind::Johnson { n, d } => {
            if d == 0 || 2 * d > n || n > 64 {
                return bad("need 1 <= d <= n/2, n <= 64");
            }
            set_graph(&subsets(n, d), |x, y| (x & y).count_ones() as usize == d - 1)
        }
        GraphKind::Odd { d } => {
            if d == 0 || 2 * d + 1 > 64 {
                return bad("need d >= 1");
            }
            set_graph(&subsets(2 * d + 1, d), |x, y| x & y == 0)
        }
        GraphKind::Cycle { n } => {
            if n < 3 {
                return bad("need n >= 3");
            }
            (0..n).map(|x| vec![(x + n - 1) % n, (x + 1) % n]).collect()
        }
        GraphKind::Petersen => {
            // Outer 5-cycle, inner pentagram, spokes.
            let mut adj = vec![Vec::new(); 10];
            for i in 0..5 {
                for (x, y) in [(i, (i + 1) % 5), (5 + i, 5 + (i + 2) % 5), (i, 5 + i)] {
                    adj[x].push(y);
                    adj[y].push(x);
                }
            }
            adj
        }
    };
    ExplicitGraph::from_adjacency(adj)
}

fn hamming_adjacency(d: usize, q: usize) -> Vec<Vec<usize>> {
    let n = checked_pow(q, d);
    (0..n)
        .map(|x| {
            let mut out = Vec::with_capacity(d * (q - 1));
            let mut place = 1;
            for _ in 0..d {
                let digit = (x / place) % q;
                for v in 0..q {
                    if v != digit {
                        out.push(x - digit * place + v * place);
                    }
                }
                place *= q;
            }
            out
        })
        .collect()
}

/// Reads the intersection array off the distance matrix, checking that
/// `c_i`, `a_i`, `b_i` are the same for every ordered pair at distance `i`.
pub fn extract_ia(g: &ExplicitGraph) -> Result<IntersectionArray> {
    let d = g.diameter();
    if d == 0 {
        return Err(Error::InvalidArray("a single vertex has no intersection array".into()));
    }
    let mut counts: Vec<Option<[usize; 3]>> = vec![None; d + 1];
    for x in 0..g.n() {
        let row = &g.dist[x];
        for y in 0..g.n() {
            let i = row[y];
            let mut here = [0usize; 3];
            for &z in g.neighbors(y) {
                let dz = row[z];
                if dz + 1 == i {
                    here[0] += 1;
                } else if dz == i {
                    here[1] += 1;
                } else {
                    here[2] += 1;
                }
            }
            match counts[i] {
                None => counts[i] = Some(here),
                Some(seen) if seen != here => {
                    let what = ["c", "a", "b"]
                        .iter()
                        .zip(seen.iter().zip(&here))
                        .find(|(_, (s, h))| s != h)
                        .map(|(name, (s, h))| format!("{name}_{i} = {h}, elsewhere {s}"))
                        .unwrap_or_default();
                    return Err(Error::NotDistanceRegular { x, y, distance: i, what });
                }
                Some(_) => {}
            }
        }
    }
    let counts: Vec<[usize; 3]> = counts.into_iter().map(|c| c.expect("every distance occurs")).collect();
    let b = (0..d).map(|i| counts[i][2] as u64).collect();
    let c = (1..=d).map(|i| counts[i][0] as u64).collect();
    IntersectionArray::new(b, c)
}

/// Direct measurement of the spectral embedding for one eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingCheck {
    pub graph: String,
    pub array: String,
    pub n: usize,
    pub theta_index: usize,
    pub theta: f64,
    pub multiplicity: usize,
    /// Largest measured `‖ρ(x) - ρ(y)‖` at distance `r`, for `r = 1..d`.
    pub realized_s: Vec<f64>,
    /// `√((1 - w_r)/(1 - w_1))` for `r = 1..d`.
    pub predicted_s: Vec<f64>,
    /// Worst relative gap between a measured pair distance and its prediction.
    pub max_rel_deviation: f64,
    /// `max ‖ρ(x) - ρ(y)‖ / d(x, y)` over all pairs.
    pub expansion: f64,
    /// `max d(x, y)/‖ρ(x) - ρ(y)‖` over all pairs.
    pub contraction: f64,
    pub distortion_sq: f64,
    /// Mean `(u_x, u_y)/(u_x, u_x)` per distance class, `r = 0..d`.
    pub eigen_cosines: Vec<f64>,
    pub recurrence_cosines: Vec<f64>,
    /// Largest `|eigenvector cosine - recurrence cosine|` over all pairs.
    pub cosine_deviation: f64,
}

/// Builds ρ from an orthonormal basis of the `theta_index`-th eigenspace
/// (descending order) and measures it over every pair of vertices.
pub fn spectral_embedding_check(g: &ExplicitGraph, theta_index: usize) -> Result<EmbeddingCheck> {
    let ia = extract_ia(g)?;
    let spec = spectrum(&ia)?;
    let d = spec.diameter();
    if theta_index == 0 || theta_index > d {
        return Err(Error::InvalidParameters(format!(
            "theta index {theta_index} must lie in 1..={d}"
        )));
    }
    let k = spec.valency();
    let theta = spec.theta(theta_index);
    let eig = SymmetricEigen::new(g.adjacency_matrix());
    let cols: Vec<usize> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &v)| (v - theta).abs() <= tol::EIGEN_MATCH * k)
        .map(|(i, _)| i)
        .collect();
    let expected = spec.multiplicities()[theta_index].round() as usize;
    if cols.len() != expected {
        return Err(Error::EigenspaceMismatch { expected, got: cols.len() });
    }
    let n = g.n();
    let u: Vec<Vec<f64>> = (0..n)
        .map(|x| cols.iter().map(|&c| eig.eigenvectors[(x, c)]).collect())
        .collect();
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();

    let norms: Vec<f64> = u.iter().map(|v| dot(v, v)).collect();
    let norm = norms.iter().sum::<f64>() / n as f64;
    if let Some(bad) = norms.iter().find(|&&s| !tol::rel_close(s, norm, tol::REL)) {
        return Err(Error::InvalidSpectrum(format!(
            "(u(x), u(x)) is not constant: {bad} vs mean {norm}"
        )));
    }

    let w = spec.cosines()[theta_index].clone();
    let scale = (2.0 * norm * (1.0 - w[1])).sqrt();
    let rho: Vec<Vec<f64>> = u.iter().map(|v| v.iter().map(|x| x / scale).collect()).collect();
    let predicted_s: Vec<f64> = (1..=d).map(|r| ((1.0 - w[r]) / (1.0 - w[1])).sqrt()).collect();

    #[derive(Clone)]
    struct Acc {
        realized: Vec<f64>,
        cos_sum: Vec<f64>,
        cos_count: Vec<usize>,
        deviation: f64,
        cos_dev: f64,
        expansion: f64,
        contraction: f64,
    }
    let empty = || Acc {
        realized: vec![0.0; d + 1],
        cos_sum: vec![0.0; d + 1],
        cos_count: vec![0; d + 1],
        deviation: 0.0,
        cos_dev: 0.0,
        expansion: 0.0,
        contraction: 0.0,
    };
    let acc = (0..n)
        .into_par_iter()
        .fold(empty, |mut acc, x| {
            for y in 0..n {
                let r = g.distance(x, y);
                let cos = dot(&u[x], &u[y]) / norm;
                acc.cos_sum[r] += cos;
                acc.cos_count[r] += 1;
                acc.cos_dev = acc.cos_dev.max((cos - w[r]).abs());
                if r == 0 {
                    continue;
                }
                let dist = rho[x].iter().zip(&rho[y]).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
                acc.realized[r] = acc.realized[r].max(dist);
                acc.deviation = acc.deviation.max(tol::rel_diff(dist, predicted_s[r - 1]));
                acc.expansion = acc.expansion.max(dist / r as f64);
                acc.contraction = acc.contraction.max(r as f64 / dist);
            }
            acc
        })
        .reduce(empty, |mut a, b| {
            for r in 0..=d {
                a.realized[r] = a.realized[r].max(b.realized[r]);
                a.cos_sum[r] += b.cos_sum[r];
                a.cos_count[r] += b.cos_count[r];
            }
            a.deviation = a.deviation.max(b.deviation);
            a.cos_dev = a.cos_dev.max(b.cos_dev);
            a.expansion = a.expansion.max(b.expansion);
            a.contraction = a.contraction.max(b.contraction);
            a
        });

    let distortion = acc.expansion * acc.contraction;
    Ok(EmbeddingCheck {
        graph: String::new(),
        array: ia.to_string(),
        n,
        theta_index,
        theta,
        multiplicity: cols.len(),
        realized_s: acc.realized[1..].to_vec(),
        predicted_s,
        max_rel_deviation: acc.deviation,
        expansion: acc.expansion,
        contraction: acc.contraction,
        distortion_sq: distortion * distortion,
        eigen_cosines: acc
            .cos_sum
            .iter()
            .zip(&acc.cos_count)
            .map(|(s, &c)| s / c as f64)
            .collect(),
        recurrence_cosines: w,
        cosine_deviation: acc.cos_dev,
    })
}

/// Builds `kind` and runs [`spectral_embedding_check`] on it.
pub fn check_graph(kind: &GraphKind, theta_index: usize) -> Result<EmbeddingCheck> {
    let g = build_graph(kind)?;
    let mut check = spectral_embedding_check(&g, theta_index)?;
    check.graph = kind.to_string();
    Ok(check)
}

/// The `Q_α` certificate for one distance `r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QAlphaCertificate {
    pub r: usize,
    /// Largest α for which `Q_α` stays positive semidefinite.
    pub alpha_star: f64,
    /// `r² α* k_r / k_1`.
    pub certified_bound_sq: f64,
    /// Eigenvalue of `Q_{α*}` on each eigenspace `j = 0..d`.
    pub eigenvalues: Vec<f64>,
    pub psd: bool,
}

/// `Q_α = (k_1 - α k_r) A_0 - A_1 + α A_r`, evaluated in the Bose–Mesner
/// algebra.
///
/// The coefficient of each `A_i` is affine in α; the row sums of `Q_α` vanish
/// identically, which is checked on the exact coefficients. On eigenspace `j`
/// the matrix acts as `Σ_i coef_i k_i w_i(θ_j)`; α* is the largest α keeping
/// all of those nonnegative.
pub fn qalpha_certificate(ia: &IntersectionArray, spec: &Spectrum, r: usize) -> Result<QAlphaCertificate> {
    let d = spec.diameter();
    if r == 0 || r > d {
        return Err(Error::DistanceOutOfRange { r, d });
    }
    let kd = ia.k_dist();
    // coef_i = fixed_i + α · slope_i
    let mut fixed = vec![BigRational::zero(); d + 1];
    let mut slope = vec![BigRational::zero(); d + 1];
    fixed[0] += &kd[1];
    slope[0] -= &kd[r];
    fixed[1] -= BigRational::one();
    slope[r] += BigRational::one();
    let row_fixed: BigRational = fixed.iter().zip(kd).map(|(c, k)| c * k).sum();
    let row_slope: BigRational = slope.iter().zip(kd).map(|(c, k)| c * k).sum();
    if !row_fixed.is_zero() || !row_slope.is_zero() {
        return Err(Error::InvalidSpectrum(format!(
            "row sums of Q_alpha are {row_fixed} + alpha * {row_slope}, not zero"
        )));
    }

    let kf = ia.k_dist_f64();
    let fixed_f: Vec<f64> = fixed.iter().map(crate::intersection_array::rational_to_f64).collect();
    let slope_f: Vec<f64> = slope.iter().map(crate::intersection_array::rational_to_f64).collect();
    let on_eigenspace = |j: usize, coefs: &[f64]| -> f64 {
        (0..=d).map(|i| coefs[i] * kf[i] * spec.w(j, i)).sum()
    };

    // Eigenvalue on eigenspace j is P_j - α N_j with P_j = k_1(1 - w_1), N_j = k_r(1 - w_r).
    let alpha_star = (0..=d)
        .filter_map(|j| {
            let p = on_eigenspace(j, &fixed_f);
            let neg = -on_eigenspace(j, &slope_f);
            (neg > tol::INFINITE_DENOMINATOR * kf[r]).then(|| p / neg)
        })
        .min_by(f64::total_cmp)
        .ok_or(Error::NoFiniteAlpha { r })?;

    let eigenvalues: Vec<f64> = (0..=d)
        .map(|j| on_eigenspace(j, &fixed_f) + alpha_star * on_eigenspace(j, &slope_f))
        .collect();
    let k = spec.valency();
    let psd = eigenvalues.iter().all(|&e| e >= -tol::REL * k);
    Ok(QAlphaCertificate {
        r,
        alpha_star,
        certified_bound_sq: (r * r) as f64 * alpha_star * kf[r] / kf[1],
        eigenvalues,
        psd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_two_is_petersen() {
        let g = build_graph(&GraphKind::Odd { d: 2 }).unwrap();
        assert_eq!((g.n(), g.diameter()), (10, 2));
        assert_eq!(extract_ia(&g).unwrap().to_string(), "{3,2;1,1}");
        let p = build_graph(&GraphKind::Petersen).unwrap();
        assert_eq!(extract_ia(&p).unwrap().to_string(), "{3,2;1,1}");
    }

    #[test]
    fn hypercube_and_johnson() {
        let g = build_graph(&GraphKind::Hypercube { d: 4 }).unwrap();
        assert_eq!((g.n(), g.diameter()), (16, 4));
        assert_eq!(extract_ia(&g).unwrap().to_string(), "{4,3,2,1;1,2,3,4}");
        let j = build_graph(&GraphKind::Johnson { n: 5, d: 2 }).unwrap();
        assert_eq!((j.n(), j.diameter(), j.neighbors(0).len()), (10, 2, 6));
    }

    #[test]
    fn path_is_not_distance_regular() {
        let g = ExplicitGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(matches!(extract_ia(&g), Err(Error::NotDistanceRegular { .. })));
    }

    #[test]
    fn disconnected_and_oversized() {
        assert_eq!(ExplicitGraph::from_edges(4, &[(0, 1), (2, 3)]), Err(Error::Disconnected));
        assert!(matches!(
            build_graph(&GraphKind::Hypercube { d: 11 }),
            Err(Error::SizeCap { n: 2048, cap: SIZE_CAP })
        ));
    }

    #[test]
    fn petersen_embedding_measures_two() {
        let c = check_graph(&GraphKind::Petersen, 1).unwrap();
        assert!((c.distortion_sq - 2.0).abs() < 1e-9);
        assert!((c.expansion - 1.0).abs() < 1e-9);
        assert_eq!(c.multiplicity, 5);
    }

    #[test]
    fn petersen_certificate() {
        let ia: IntersectionArray = "{3,2;1,1}".parse().unwrap();
        let spec = spectrum(&ia).unwrap();
        let cert = qalpha_certificate(&ia, &spec, 2).unwrap();
        assert!((cert.certified_bound_sq - 2.0).abs() < 1e-12);
        assert!(cert.psd);
        let one = qalpha_certificate(&ia, &spec, 1).unwrap();
        assert!((one.certified_bound_sq - 1.0).abs() < 1e-12);
    }
}
