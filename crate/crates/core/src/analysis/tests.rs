use super::*;
use crate::examples;
use crate::lie::{abelian, free32_algebra, heisenberg};
use crate::rational::{charpoly, factor_over_q, int, RatMatrix, RatPoly, RootConfig};
use crate::Error;
use proptest::prelude::*;
use std::sync::Arc;

fn poly(c: &[i64]) -> RatPoly {
    RatPoly::from_i64(c)
}

fn mat(n: usize, data: &[i64]) -> RatMatrix {
    RatMatrix::from_i64(n, n, data).unwrap()
}

#[test]
fn identity_and_dilation_on_heisenberg() {
    let h = Arc::new(heisenberg());
    assert!(validate_automorphism(h.clone(), RatMatrix::identity(3)).is_ok());
    let dil = mat(3, &[2, 0, 0, 0, 2, 0, 0, 0, 4]);
    let check = check_automorphism(&h, &dil).unwrap();
    assert!(check.bracket_preserving());
    assert!(check.integral && !check.unimodular);
    assert_eq!(check.determinant, int(16));
    assert!(matches!(validate_automorphism(h, dil), Err(Error::LatticeNotPreserved(_))));
}

#[test]
fn bracket_violation_reported() {
    let h = Arc::new(heisenberg());
    // X -> 2X, Y -> Y, Z -> Z breaks [X, Y] = Z
    let m = mat(3, &[2, 0, 0, 0, 1, 0, 0, 0, 1]);
    let check = check_automorphism(&h, &m).unwrap();
    assert_eq!(check.bracket_violation, Some((0, 1)));
    assert!(matches!(validate_automorphism(h.clone(), m), Err(Error::NotAutomorphism(_))));
    assert!(matches!(validate_automorphism(h.clone(), RatMatrix::zeros(3, 3)), Err(Error::Singular)));
    assert!(matches!(validate_automorphism(h, RatMatrix::identity(2)), Err(Error::Dimension(_))));
}

/// `p + q√3` arithmetic, independent of the matrix machinery.
fn mul3((a, b): (i64, i64), (c, d): (i64, i64)) -> (i64, i64) {
    (a * c + 3 * b * d, a * d + b * c)
}

#[test]
fn smale_fiber_block_matches_conjugate_determinant() {
    let (alpha, gamma) = ((26, 15), (8733, 5042));
    let (beta, delta) = ((71, 41), (28901, 16686));
    let ad = mul3(alpha, delta);
    let bg = mul3(beta, gamma);
    let (p, q) = (ad.0 - bg.0, ad.1 - bg.1);
    assert_eq!((p, q), (262087, 151316));
    let a = examples::smale();
    let m = a.matrix();
    let fiber = [[m[(4, 4)].clone(), m[(4, 5)].clone()], [m[(5, 4)].clone(), m[(5, 5)].clone()]];
    assert_eq!(fiber, [[int(p), int(3 * q)], [int(q), int(p)]]);
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(m[(i, j)], int(examples::SMALE_BASE[i][j]));
        }
        assert_eq!(m[(4, i)], int(0));
        assert_eq!(m[(i, 4)], int(0));
    }
    assert!(m.det().unwrap() == int(1) || m.det().unwrap() == int(-1));
}

#[test]
fn smale_grading() {
    let g = compute_grading(&examples::smale()).unwrap();
    assert_eq!(g.dims(), vec![4, 2]);
    assert_eq!(g.grade_polys[0], poly(&[1, -10202, 525300, -57854, 1]));
    assert_eq!(g.grade_polys[1], poly(&[1, -524174, 1]));
    assert!(g.carnot_verified);
}

#[test]
fn free32_grading() {
    let a = examples::free32();
    let g = compute_grading(&a).unwrap();
    assert_eq!(g.dims(), vec![3, 3]);
    assert_eq!(g.grade_polys[0], poly(&[1, -8, 1, 1]));
    assert_eq!(g.grade_polys[1], poly(&[-1, 1, 8, 1]));
    assert!(g.carnot_verified);
    let product = g.grade_polys[0].mul(&g.grade_polys[1]);
    assert_eq!(product, charpoly(a.matrix()).unwrap());
}

#[test]
fn abelian_grading_is_single_grade() {
    let g = compute_grading(&examples::cat2()).unwrap();
    assert_eq!(g.dims(), vec![2]);
    assert!(g.carnot_verified);
}

#[test]
fn grading_not_splittable() {
    let h = Arc::new(heisenberg());
    let m = extend_from_generators(&h, &[0, 1], &[vec![int(1), int(0), int(0)], vec![int(1), int(1), int(0)]])
        .unwrap();
    let a = validate_automorphism(h, m).unwrap();
    assert!(matches!(compute_grading(&a), Err(Error::GradingNotSplittable(_))));
    let v = rigidity_verdict(&a, RootConfig::default());
    assert_eq!(v.verdict, Verdict::Inapplicable);
    assert!(!v.simple_spectrum && !v.hyperbolic);
}

#[test]
fn cat_map_spectrum() {
    let g = compute_grading(&examples::cat2()).unwrap();
    let s = compute_spectrum(&g, RootConfig::default()).unwrap();
    assert!(s.simple_spectrum && s.hyperbolic);
    let golden = (3.0 + 5f64.sqrt()) / 2.0;
    let moduli: Vec<f64> = s.eigenvalues().map(|e| e.root.modulus()).collect();
    assert!((moduli[0] - 1.0 / golden).abs() < 1e-12);
    assert!((moduli[1] - golden).abs() < 1e-12);
    assert_eq!(s.grades[0][0].stability, Stability::Stable);
    assert_eq!(s.grades[0][1].stability, Stability::Unstable);
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn smale_spectrum_matches_table() {
    let g = compute_grading(&examples::smale()).unwrap();
    let s = compute_spectrum(&g, RootConfig::default()).unwrap();
    assert!(s.simple_spectrum && s.hyperbolic);
    let base: Vec<f64> = s.grades[0].iter().map(|e| e.root.value.re).collect();
    for (x, want) in base.iter().zip([0.0000985198, 0.0193643, 9.06171, 57844.9]) {
        assert!(rel(*x, want) < 1e-3, "{x} vs {want}");
    }
    let fiber: Vec<f64> = s.grades[1].iter().map(|e| e.root.value.re).collect();
    assert!(rel(fiber[0], 1.90779e-6) < 1e-3);
    assert!(rel(fiber[1], 524174.0) < 1e-3);
    assert!(s.eigenvalues().all(|e| e.root.is_real && e.root.radius <= 1e-12));
    // escape speeds: grade 2 takes a square root
    assert!((s.grades[1][1].escape_speed - 524174f64.sqrt()).abs() < 1e-3);
}

#[test]
fn free32_spectrum_grade_membership() {
    let g = compute_grading(&examples::free32()).unwrap();
    let s = compute_spectrum(&g, RootConfig::default()).unwrap();
    let mut base: Vec<f64> = s.grades[0].iter().map(|e| e.root.value.re).collect();
    let mut fiber: Vec<f64> = s.grades[1].iter().map(|e| e.root.value.re).collect();
    base.sort_by(f64::total_cmp);
    fiber.sort_by(f64::total_cmp);
    for (x, want) in base.iter().zip([-3.4227, 0.127283, 2.29542]) {
        assert!(rel(*x, want) < 1e-3, "{x} vs {want}");
    }
    for (x, want) in fiber.iter().zip([-7.85652, -0.435651, 0.292167]) {
        assert!(rel(*x, want) < 1e-3, "{x} vs {want}");
    }
}

#[test]
fn sortedness() {
    for (a, unstable, stable) in [(examples::smale(), true, true), (examples::free32(), true, false), (examples::cat2(), true, true)] {
        let g = compute_grading(&a).unwrap();
        let s = compute_spectrum(&g, RootConfig::default()).unwrap();
        let r = check_sorted(&s);
        assert_eq!((r.sorted_unstable, r.sorted_stable), (unstable, stable));
        assert_eq!(r.witnesses.is_empty(), unstable && stable);
    }
    let g = compute_grading(&examples::free32()).unwrap();
    let s = compute_spectrum(&g, RootConfig::default()).unwrap();
    let w = &check_sorted(&s).witnesses[0];
    assert_eq!(w.stability, Stability::Stable);
    assert!((w.lower_modulus - 0.127283).abs() < 1e-5);
}

#[test]
fn irreducibility() {
    let smale = examples::smale();
    let r = check_irreducible(&smale, &compute_grading(&smale).unwrap()).unwrap();
    assert_eq!(r.flags(), vec![true, true]);
    assert_eq!(r.quotients[1].charpoly, poly(&[1, -524174, 1]));
    assert!(r.warnings.is_empty());

    let free = examples::free32();
    let r = check_irreducible(&free, &compute_grading(&free).unwrap()).unwrap();
    assert_eq!(r.flags(), vec![true, true]);
    assert_eq!(r.quotients[0].charpoly, poly(&[1, -8, 1, 1]));
    // the polynomial as quoted for the centre is irreducible as well
    assert!(factor_over_q(&poly(&[1, 1, 8, -1])).unwrap().is_irreducible());

    let sum = examples::cat_sum();
    let r = check_irreducible(&sum, &compute_grading(&sum).unwrap()).unwrap();
    assert_eq!(r.flags(), vec![false]);
    assert_eq!(r.quotients[0].factorization.factors, vec![(poly(&[1, -3, 1]), 2)]);
}

#[test]
fn verdicts() {
    let cfg = RootConfig::default();
    let v = rigidity_verdict(&examples::smale(), cfg);
    assert_eq!(v.verdict, Verdict::Rigid);
    assert!(v.witnesses.is_empty());
    let v = rigidity_verdict(&examples::free32(), cfg);
    assert_eq!(v.verdict, Verdict::NotRigid);
    assert!(v.sorted_unstable && !v.sorted_stable);
    assert!(v.witnesses[0].contains("stable spectrum unsorted"));
    assert_eq!(rigidity_verdict(&examples::cat2(), cfg).verdict, Verdict::Rigid);
    let v = rigidity_verdict(&examples::heisenberg_cat(), cfg);
    assert_eq!(v.verdict, Verdict::Inapplicable);
    assert!(v.simple_spectrum && !v.hyperbolic);
    let v = rigidity_verdict(&examples::cat_sum(), cfg);
    assert_eq!(v.verdict, Verdict::Inapplicable);
    assert!(!v.simple_spectrum && v.hyperbolic);
    assert_eq!(v.irreducible_per_grade, vec![false]);
}

#[test]
fn verdict_is_deterministic() {
    let cfg = RootConfig::default();
    for a in [examples::smale(), examples::free32()] {
        assert_eq!(rigidity_verdict(&a, cfg), rigidity_verdict(&a, cfg));
    }
}

#[test]
fn slowest_escape_speed_is_grade_one() {
    let g = compute_grading(&examples::smale()).unwrap();
    let s = compute_spectrum(&g, RootConfig::default()).unwrap();
    let unstable: Vec<&Eigenvalue> = s.eigenvalues().filter(|e| e.stability == Stability::Unstable).collect();
    let slowest = unstable.iter().min_by(|a, b| a.escape_speed.total_cmp(&b.escape_speed)).unwrap();
    let smallest_grade1 = s.grades[0]
        .iter()
        .filter(|e| e.stability == Stability::Unstable)
        .min_by(|a, b| a.root.modulus().total_cmp(&b.root.modulus()))
        .unwrap();
    assert_eq!(slowest.root, smallest_grade1.root);
    assert_eq!(unstable.iter().filter(|e| e.escape_speed <= slowest.escape_speed).count(), 1);
}

#[test]
fn inverse_swaps_stability() {
    let a = examples::free32();
    let inv = a.inverse().unwrap();
    assert_eq!(
        inv.matrix().entries()[..3].to_vec(),
        vec![int(8), int(1), int(0)],
        "first row of the base inverse"
    );
    let s = compute_spectrum(&compute_grading(&inv).unwrap(), RootConfig::default()).unwrap();
    let r = check_sorted(&s);
    assert!(!r.sorted_unstable && r.sorted_stable);
}

fn unimodular3() -> impl Strategy<Value = RatMatrix> {
    proptest::collection::vec((0usize..3, 0usize..3, -2i64..3), 1..7).prop_map(|ops| {
        let mut m = RatMatrix::identity(3);
        for (i, j, c) in ops {
            if i != j {
                let mut e = RatMatrix::identity(3);
                e = e.add(&RatMatrix::from_vec(3, 3, (0..9).map(|k| if k == 3 * i + j { int(c) } else { int(0) }).collect()).unwrap()).unwrap();
                m = m.mul(&e).unwrap();
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn grade_polys_multiply_to_charpoly(base in unimodular3()) {
        let alg = Arc::new(free32_algebra());
        let images: Vec<Vec<_>> = (0..3).map(|j| { let mut v = base.column(j); v.resize(6, int(0)); v }).collect();
        let m = extend_from_generators(&alg, &[0, 1, 2], &images).unwrap();
        let a = validate_automorphism(alg, m).unwrap();
        match compute_grading(&a) {
            Ok(g) => {
                let product = g.grade_polys.iter().fold(RatPoly::one(), |acc, p| acc.mul(p));
                prop_assert_eq!(product, charpoly(a.matrix()).unwrap());
                prop_assert_eq!(g.dims().iter().sum::<usize>(), 6);
                for (grade, p) in g.grades.iter().zip(&g.grade_polys) {
                    prop_assert_eq!(grade.dim(), p.degree());
                }
                if g.grade_polys.iter().all(|p| p.is_squarefree()) {
                    prop_assert!(g.carnot_verified);
                }
            }
            Err(e) => prop_assert!(matches!(e, Error::GradingNotSplittable(_))),
        }
    }

    #[test]
    fn abelian_verdict_never_sortedness_failure(data in proptest::collection::vec(-3i64..4, 4)) {
        let m = RatMatrix::from_i64(2, 2, &data).unwrap();
        if let Ok(a) = validate_automorphism(Arc::new(abelian(2)), m) {
            let v = rigidity_verdict(&a, RootConfig::default());
            if v.verdict != Verdict::Inapplicable {
                prop_assert!(v.sorted_unstable && v.sorted_stable);
            }
        }
    }
}
