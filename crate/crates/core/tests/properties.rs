mod common;

use common::{corpus_arrays, family_arrays, rel, sturm_eigenvalues};
use drg_distortion::families::Family;
use drg_distortion::intersection_array::parse_intersection_array;
use drg_distortion::{analyze, spectrum, IntersectionArray};
use proptest::prelude::*;

/// Arrays satisfying the structural constraints (c_1 = 1, a_i >= 0), not
/// necessarily feasible. Built directly so nothing is rejected.
fn arb_array() -> impl Strategy<Value = IntersectionArray> {
    (1usize..=7, 2u64..=60).prop_flat_map(|(d, k)| {
        let pairs = proptest::collection::vec((0u64..1 << 20, 0u64..1 << 20), d - 1);
        (Just(k), pairs, 1u64..=k).prop_map(move |(k, pairs, c_last)| {
            let mut b = vec![k];
            let mut c = Vec::with_capacity(d);
            // b_i + c_i <= k for 1 <= i < d, c_1 = 1
            for (j, (x, y)) in pairs.into_iter().enumerate() {
                let ci = if j == 0 { 1 } else { 1 + x % (k - 1) };
                c.push(ci);
                b.push(1 + y % (k - ci));
            }
            c.push(if d == 1 { 1 } else { c_last });
            IntersectionArray::new(b, c).expect("constructed array is valid")
        })
    })
}

fn arb_family() -> impl Strategy<Value = Family> {
    prop_oneof![
        (1usize..=8, 2u64..=6).prop_map(|(d, q)| Family::Hamming { d, q }),
        (1usize..=5, 0usize..=4).prop_map(|(d, extra)| Family::Johnson { n: 2 * d + extra, d }),
        (1usize..=4, 2u64..=4, 0usize..=2).prop_map(|(d, q, extra)| Family::Grassmann { d, q, n: 2 * d + extra }),
        (1usize..=4, 2u64..=4, 0usize..=2).prop_map(|(d, q, extra)| Family::Bilinear { d, q, e: d + extra }),
        (1usize..=5, 2u64..=5, 0u32..=2).prop_map(|(d, q, e)| Family::DualPolar { d, q, two_e: 2 * e }),
        (2usize..=5, 2u64..=3).prop_map(|(d, q)| Family::Hermitian { d, q }),
        (2usize..=9).prop_map(|d| Family::Odd { d }),
        (1u64..=40).prop_map(|m| Family::Hadamard { mu: if m == 1 { 1 } else { 2 * m } }),
        (3u64..=30, 1u64..=29).prop_filter_map("mu < k", |(k, mu)| (mu < k).then_some(Family::Taylor { k, mu })),
    ]
}

proptest! {
    #[test]
    fn format_then_parse_is_identity(a in arb_array()) {
        let text = a.to_string();
        let back = parse_intersection_array(&text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn whitespace_is_ignored(a in arb_array()) {
        let spaced = a.to_string().replace(',', " , ").replace(';', " ; ").replace('{', " { ");
        prop_assert_eq!(parse_intersection_array(&spaced).unwrap(), a);
    }

    #[test]
    fn double_counting(a in arb_array()) {
        // k_i b_i = k_{i+1} c_{i+1}
        let k = a.k_dist_f64();
        for i in 0..a.diameter() {
            let lhs = k[i] * a.b_at(i) as f64;
            let rhs = k[i + 1] * a.c_at(i + 1) as f64;
            prop_assert!(rel(lhs, rhs) <= 1e-12);
        }
    }

    #[test]
    fn eigenvalues_match_sturm_bisection(a in arb_array()) {
        if let Ok(spec) = spectrum(&a) {
            let k = a.valency() as f64;
            for (x, y) in spec.eigenvalues().iter().zip(sturm_eigenvalues(&a)) {
                prop_assert!((x - y).abs() <= 1e-9 * k, "{} vs {}", x, y);
            }
        }
    }

    #[test]
    fn family_spectrum_invariants(f in arb_family()) {
        let a = f.intersection_array().unwrap();
        let spec = spectrum(&a).unwrap();
        let d = a.diameter();
        let kd = a.k_dist_f64();
        let n = a.n_f64();
        // Orthogonality of the standard sequences weighted by k_i.
        for j in 0..=d {
            for l in 0..=d {
                let s: f64 = (0..=d).map(|i| kd[i] * spec.w(j, i) * spec.w(l, i)).sum();
                if j == l {
                    prop_assert!(rel(s * spec.multiplicities()[j], n) <= 1e-8);
                } else {
                    prop_assert!(s.abs() <= 1e-8 * n, "{} {} {}", j, l, s);
                }
            }
            let want = if j % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert_eq!(spec.w(j, d).signum(), want);
        }
        let total: f64 = spec.multiplicities().iter().sum();
        prop_assert!(rel(total, n) <= 1e-6);
        let rep = analyze(&a).unwrap();
        // Taylor parameters are not screened; the remaining claims need a real graph.
        prop_assume!(a.feasibility(&spec).passes());
        prop_assert!(rep.most_contracted_r >= (d + 2) / 2);
        prop_assert!(rep.best_lower_bound_sq <= rep.embedding_distortion_sq * (1.0 + 1e-9));
        let cf = f.closed_form_c2_sq().unwrap();
        prop_assert!(rep.certified, "{} not certified", f.label());
        prop_assert!(rel(rep.embedding_distortion_sq, cf) <= 1e-9, "{}: {} vs {}", f.label(), rep.embedding_distortion_sq, cf);
    }

    #[test]
    fn lower_bounds_never_exceed_embedding(a in arb_array()) {
        if let Ok(rep) = analyze(&a) {
            for &lb in &rep.lower_bound_sq_per_r {
                prop_assert!(lb <= rep.embedding_distortion_sq * (1.0 + 1e-9));
            }
            prop_assert!((rep.lower_bound_sq_per_r[0] - 1.0).abs() <= 1e-9);
        }
    }
}

#[test]
fn corpus_and_family_eigenvalues_match_sturm() {
    for a in corpus_arrays().into_iter().chain(family_arrays()) {
        let spec = spectrum(&a).unwrap();
        let k = a.valency() as f64;
        for (x, y) in spec.eigenvalues().iter().zip(sturm_eigenvalues(&a)) {
            assert!((x - y).abs() <= 1e-9 * k, "{a}: {x} vs {y}");
        }
    }
}

#[test]
fn hadamard_theta1_is_sqrt_2mu() {
    for mu in [1u64, 2, 4, 6, 34, 100] {
        let a = Family::Hadamard { mu }.intersection_array().unwrap();
        let spec = spectrum(&a).unwrap();
        assert!(rel(spec.theta(1), ((2 * mu) as f64).sqrt()) < 1e-12);
    }
}
