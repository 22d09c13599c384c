mod common;

use common::{family_instances, ia, rel};
use drg_distortion::distortion::diameter3_closed_form;
use drg_distortion::families::{
    classical_to_ia, eberlein, eberlein_half, gaussian_binomial, hermitian_c2_sq, hermitian_eigenmatrix,
    odd_graph_array, odd_graph_cosines, ClassicalParameters, Family,
};
use drg_distortion::{analyze, spectrum};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

fn r(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn f(x: &BigRational) -> f64 {
    x.to_f64().unwrap()
}

fn assert_rows(label: &str, got: &[f64], want: &[f64]) {
    assert_eq!(got.len(), want.len(), "{label}");
    for (r, (x, y)) in got.iter().zip(want).enumerate() {
        assert!((x - y).abs() <= 1e-10, "{label}: w_{r} = {x}, expected {y}");
    }
}

#[test]
fn gaussian_binomial_q_pascal() {
    for b in [-4i64, -3, -2, 2, 3, 5] {
        for n in 1..=9 {
            for m in 1..n {
                let lhs = gaussian_binomial(n, m, b).unwrap();
                let rhs = gaussian_binomial(n - 1, m - 1, b).unwrap()
                    + r(b).pow(m as i32) * gaussian_binomial(n - 1, m, b).unwrap();
                assert_eq!(lhs, rhs, "n={n} m={m} b={b}");
            }
            assert_eq!(gaussian_binomial(n, 0, b).unwrap(), BigRational::one());
            assert_eq!(gaussian_binomial(n, n, b).unwrap(), BigRational::one());
        }
    }
    // [4 choose 2]_2 = 35
    assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), r(35));
}

#[test]
fn johnson_and_grassmann_arrays_match_direct_counts() {
    for d in 1..=5usize {
        for n in 2 * d..=2 * d + 4 {
            let a = Family::Johnson { n, d }.intersection_array().unwrap();
            for i in 0..d {
                assert_eq!(a.b_at(i), ((d - i) * (n - d - i)) as u64);
                assert_eq!(a.c_at(i + 1), ((i + 1) * (i + 1)) as u64);
            }
        }
    }
    let bracket = |i: usize, q: u64| (0..i).map(|e| q.pow(e as u32)).sum::<u64>();
    for q in [2u64, 3] {
        for d in 1..=3usize {
            for n in 2 * d..=2 * d + 2 {
                let a = Family::Grassmann { d, q, n }.intersection_array().unwrap();
                for i in 0..d {
                    let b = q.pow(2 * i as u32 + 1) * bracket(d - i, q) * bracket(n - d - i, q);
                    assert_eq!(a.b_at(i), b, "J_{q}({n},{d}) b_{i}");
                    assert_eq!(a.c_at(i + 1), bracket(i + 1, q).pow(2), "J_{q}({n},{d}) c_{}", i + 1);
                }
            }
        }
    }
}

#[test]
fn classical_eigenvalues_are_the_spectrum() {
    for fam in family_instances() {
        let Some(p) = fam.classical() else { continue };
        let a = fam.intersection_array().unwrap();
        let mut exact: Vec<f64> = p.eigenvalues().iter().map(f).collect();
        exact.sort_by(|x, y| y.partial_cmp(x).unwrap());
        let spec = spectrum(&a).unwrap();
        let k = a.valency() as f64;
        for (x, y) in spec.eigenvalues().iter().zip(&exact) {
            assert!((x - y).abs() <= 1e-9 * k, "{}: {x} vs {y}", fam.label());
        }
    }
}

#[test]
fn unitary_dual_polar_has_two_parameter_sets() {
    for (root, q) in [(2i64, 4u64), (3, 9)] {
        for d in 2..=4usize {
            let de = d as i64;
            // b = -√q, α = (q + √q)/(1 - √q), β = (√q - (-√q)^{d+1})/(1 - √q)
            let alpha = BigRational::new((root * root + root).into(), (1 - root).into());
            let beta = BigRational::new((root - (-root).pow(de as u32 + 1)).into(), (1 - root).into());
            let neg = ClassicalParameters::new(d, -root, alpha, beta).unwrap();
            let want = Family::UnitaryDualPolar { d, q }.intersection_array().unwrap();
            assert_eq!(classical_to_ia(&neg).unwrap(), want, "U(2{d}, {root})");
            let pos = Family::UnitaryDualPolar { d, q }.classical().unwrap();
            assert_eq!(pos.b, q as i64);
        }
    }
}

#[test]
fn hexagon_cosines_match_closed_form() {
    for (s, t) in [(2u64, 2u64), (2, 8), (3, 3), (8, 2), (4, 4)] {
        let a = Family::Hexagon { s, t }.intersection_array().unwrap();
        let spec = spectrum(&a).unwrap();
        let (s, t) = (s as f64, t as f64);
        let rt = (s * t).sqrt();
        let rows = [
            vec![1.0, (s - 1.0 + rt) / (s * (t + 1.0)), (-s + (s - 1.0) * rt) / (s * s * t * (t + 1.0)), -1.0 / (s * t * rt)],
            vec![1.0, (s - 1.0 - rt) / (s * (t + 1.0)), (-s - (s - 1.0) * rt) / (s * s * t * (t + 1.0)), 1.0 / (s * t * rt)],
            vec![1.0, -1.0 / s, 1.0 / (s * s), -1.0 / (s * s * s)],
        ];
        for (j, row) in rows.iter().enumerate() {
            assert_rows(&format!("hexagon ({s},{t}) theta_{}", j + 1), &spec.cosines()[j + 1], row);
        }
        let want = 9.0 * t * rt / ((rt + 1.0) * (t + 1.0));
        assert!(rel(analyze(&a).unwrap().embedding_distortion_sq, want) < 1e-9);
    }
}

#[test]
fn octagon_cosines_match_closed_form() {
    for (s, t) in [(2u64, 4u64), (4, 2)] {
        let a = Family::Octagon { s, t }.intersection_array().unwrap();
        let spec = spectrum(&a).unwrap();
        let (s, t) = (s as f64, t as f64);
        let rt = (2.0 * s * t).sqrt();
        let den1 = s * (t + 1.0);
        let den2 = s * s * t * (t + 1.0);
        let den3 = s * s * s * t * t * (t + 1.0);
        let last = 1.0 / (s * s * t * t);
        let rows = [
            vec![1.0, (s - 1.0 + rt) / den1, (s * (t - 1.0) + (s - 1.0) * rt) / den2, ((s - 1.0) * s * t - s * rt) / den3, -last],
            vec![1.0, (s - 1.0) / den1, -1.0 / (s * t), -(s - 1.0) / den2, last],
            vec![1.0, (s - 1.0 - rt) / den1, (s * (t - 1.0) - (s - 1.0) * rt) / den2, ((s - 1.0) * s * t + s * rt) / den3, -last],
            vec![1.0, -1.0 / s, 1.0 / (s * s), -1.0 / (s * s * s), 1.0 / (s * s * s * s)],
        ];
        for (j, row) in rows.iter().enumerate() {
            assert_rows(&format!("octagon ({s},{t}) theta_{}", j + 1), &spec.cosines()[j + 1], row);
        }
        let want = 16.0 * s * t * t * (s * t - rt + 1.0) / ((t + 1.0) * (s * s * t * t + 1.0));
        assert!(rel(analyze(&a).unwrap().embedding_distortion_sq, want) < 1e-9);
    }
}

#[test]
fn hermitian_eigenmatrix_matches_spectrum() {
    for q in [2u64, 3, 4] {
        for d in 2..=5usize {
            let m = hermitian_eigenmatrix(d, q).unwrap();
            let a = Family::Hermitian { d, q }.intersection_array().unwrap();
            let spec = spectrum(&a).unwrap();
            let w = m.cosines();
            // Match each formula-order row to the spectrum by eigenvalue.
            for (i, theta) in m.theta.iter().enumerate() {
                let th = f(theta);
                let j = spec
                    .eigenvalues()
                    .iter()
                    .position(|x| (x - th).abs() <= 1e-9 * spec.valency())
                    .unwrap_or_else(|| panic!("H({d},{q}): theta {th} missing"));
                let row: Vec<f64> = w[i].iter().map(f).collect();
                assert_rows(&format!("H({d},{q}) theta_{i}"), &spec.cosines()[j], &row);
            }
            // Exact endpoint values.
            let b = -(q as i64);
            let bd = r(b).pow(d as i32);
            let bd1 = r(b).pow(d as i32 - 1);
            assert_eq!(w[1][d], BigRational::one() / (&bd + r(1)), "H({d},{q}) w_d(theta_1)");
            assert_eq!(w[2][d], BigRational::one() / ((&bd + r(1)) * (bd1 + r(1))), "H({d},{q}) w_d(theta_2)");
            let want = f(&hermitian_c2_sq(d, q));
            assert!(rel(analyze(&a).unwrap().embedding_distortion_sq, want) < 1e-9);
        }
    }
}

#[test]
fn eberlein_two_evaluations_agree() {
    for d in 1..=12usize {
        let j = d.div_ceil(2);
        for i in 0..=d {
            assert_eq!(eberlein(j, i, 2 * d + 1, d).unwrap(), eberlein_half(i, d).unwrap(), "d={d} i={i}");
        }
    }
    // E_1(i) on J(n, d) is (d - i)(n - d - i) - i.
    for (n, d) in [(7usize, 3usize), (10, 4), (12, 5)] {
        for i in 0..=d {
            let want = ((d - i) * (n - d - i)) as i64 - i as i64;
            assert_eq!(eberlein(1, i, n, d).unwrap(), want.into());
        }
    }
}

#[test]
fn odd_graph_cosines_match_spectrum() {
    for d in 2..=8usize {
        let (b, c) = odd_graph_array(d);
        let a = Family::Odd { d }.intersection_array().unwrap();
        assert_eq!(a.b(), b.as_slice());
        assert_eq!(a.c(), c.as_slice());
        let spec = spectrum(&a).unwrap();
        let (theta, rows) = odd_graph_cosines(d).unwrap();
        for (th, row) in theta.iter().zip(&rows) {
            let j = spec.eigenvalues().iter().position(|x| (x - *th as f64).abs() < 1e-9).unwrap();
            let row: Vec<f64> = row.iter().map(f).collect();
            assert_rows(&format!("O_{} theta {th}", d + 1), &spec.cosines()[j], &row);
        }
    }
    // O_3 is the Petersen graph, O_4 has 35 vertices.
    assert_eq!(Family::Odd { d: 2 }.intersection_array().unwrap(), ia("{3,2;1,1}"));
    assert_eq!(Family::Odd { d: 3 }.intersection_array().unwrap().n_f64(), 35.0);
}

#[test]
fn diameter3_closed_form_matches_analysis() {
    let arrays = family_instances()
        .into_iter()
        .map(|f| f.intersection_array().unwrap())
        .chain(common::corpus_arrays())
        .filter(|a| a.diameter() == 3);
    let mut seen = 0;
    for a in arrays {
        let rep = analyze(&a).unwrap();
        let cf = diameter3_closed_form(&a).unwrap();
        assert!(rel(rep.embedding_distortion_sq, cf) < 1e-9, "{a}: {} vs {cf}", rep.embedding_distortion_sq);
        seen += 1;
    }
    assert!(seen >= 10);
    assert!(diameter3_closed_form(&ia("{3,2;1,1}")).is_err());
}

#[test]
fn family_parse_round_trips() {
    for fam in family_instances() {
        let back = Family::parse(fam.name(), &fam.params()).unwrap();
        assert_eq!(back, fam);
    }
    assert!(Family::parse("hamming", &["3".into()]).is_err());
    assert!(Family::parse("no-such-family", &[]).is_err());
    assert!(Family::parse("hadamard", &["3".into()]).is_err());
}
