mod common;

use common::{random_rows, rank};
use nilrigid::analysis::compute_grading;
use nilrigid::examples;
use nilrigid::lie::{
    abelian, direct_sum, free32_algebra, free_nilpotent, heisenberg, smale_algebra, strict_upper_triangular,
    LieAlgebra,
};
use nilrigid::rational::{charpoly, RatPoly, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn builders() -> Vec<LieAlgebra> {
    vec![
        abelian(3),
        heisenberg(),
        free_nilpotent(2, 2).unwrap(),
        free_nilpotent(4, 2).unwrap(),
        free32_algebra(),
        smale_algebra(),
        strict_upper_triangular(4),
        strict_upper_triangular(5),
        direct_sum(&heisenberg(), &free32_algebra()),
    ]
}

#[test]
fn jacobi_vanishes_on_every_builder() {
    for alg in builders() {
        let n = alg.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    assert!(alg.jacobi_residual(i, j, k).iter().all(num_traits::Zero::is_zero));
                }
            }
        }
        assert!(alg.validate().is_valid());
    }
}

#[test]
fn lower_central_series_dimensions() {
    let dims = |alg: &LieAlgebra| alg.lower_central_series().unwrap().iter().map(Subspace::dim).collect::<Vec<_>>();
    assert_eq!(dims(&heisenberg()), vec![3, 1, 0]);
    assert_eq!(dims(&free32_algebra()), vec![6, 3, 0]);
    assert_eq!(dims(&strict_upper_triangular(5)), vec![10, 6, 3, 1, 0]);
    assert_eq!(dims(&abelian(2)), vec![2, 0]);
}

#[test]
fn grade_polynomials_multiply_to_charpoly() {
    for a in [examples::smale(), examples::free32(), examples::cat2()] {
        let g = compute_grading(&a).unwrap();
        let product = g.grade_polys.iter().fold(RatPoly::one(), |acc, p| acc.mul(p));
        assert_eq!(product, charpoly(a.matrix()).unwrap());
    }
}

#[test]
fn carnot_identity_holds() {
    for a in [examples::smale(), examples::free32()] {
        let g = compute_grading(&a).unwrap();
        assert!(g.carnot_verified);
        let alg = a.algebra();
        for i in 1..g.grades.len() {
            let br = alg.bracket_subspaces(&g.grades[0], &g.grades[i - 1]).unwrap();
            assert!(br.contains_subspace(&g.grades[i]) && g.grades[i].contains_subspace(&br));
        }
    }
}

#[test]
fn subspace_dimension_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let n = rng.gen_range(2..=7);
        let (ka, kb) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
        let ra = random_rows(&mut rng, ka, n);
        let rb = random_rows(&mut rng, kb, n);
        let a = Subspace::span(n, &ra).unwrap();
        let b = Subspace::span(n, &rb).unwrap();
        assert_eq!(a.dim(), rank(&ra));
        assert_eq!(b.dim(), rank(&rb));
        let sum = a.sum(&b).unwrap();
        let meet = a.intersect(&b).unwrap();
        assert_eq!(sum.dim() + meet.dim(), a.dim() + b.dim());
        assert_eq!(sum.dim(), rank(&[ra.clone(), rb.clone()].concat()));
        assert!(meet.basis().iter().all(|v| a.contains(v) && b.contains(v)));
    }
}
