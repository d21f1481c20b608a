use super::*;
use crate::examples;
use crate::rational::{rat, RootConfig, Rational};
use crate::Error;
use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn cat() -> IntMatrix {
    vec![vec![BigInt::from(2), BigInt::from(1)], vec![BigInt::from(1), BigInt::from(1)]]
}

fn crat(re: Rational, im: Rational) -> Complex<Rational> {
    Complex::new(re, im)
}

fn random_real_poly(rng: &mut ChaCha8Rng, dim: usize, terms: usize) -> TrigPoly<Rational> {
    let mut p = TrigPoly::zero(dim);
    for _ in 0..terms {
        let m: Vec<i64> = (0..dim).map(|_| rng.gen_range(-3..=3)).collect();
        let c = crat(rat(rng.gen_range(-9..=9), rng.gen_range(1..=5)), rat(rng.gen_range(-9..=9), 7));
        p = p.add(&TrigPoly::real_mode(frequency(&m), c));
    }
    p
}

/// `(Bᵀ)^k m` by repeated integer matrix-vector products.
fn orbit_oracle(b: &IntMatrix, m: &[BigInt], k: usize) -> Vec<BigInt> {
    let mut v = m.to_vec();
    for _ in 0..k {
        v = (0..v.len()).map(|i| (0..v.len()).map(|j| &b[j][i] * &v[j]).sum()).collect();
    }
    v
}

#[test]
fn zero_series_and_first_term() {
    let lambda = rat(5, 2);
    let zero = TrigPoly::<Rational>::zero(2);
    assert!(conjugacy_series(&zero, &cat(), &lambda, 4).is_zero());
    let phi = TrigPoly::character(frequency(&[1, 0]), crat(rat(3, 1), rat(0, 1)));
    let psi = conjugacy_series(&phi, &cat(), &lambda, 0);
    assert_eq!(psi, phi.scale_real(&rat(2, 5)));
    assert_eq!(cohomology_residual(&zero, &zero, &cat(), &lambda), 0.0);
}

#[test]
fn telescoping_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let lambda = rat(-23, 10);
    for _ in 0..5 {
        let phi = random_real_poly(&mut rng, 2, 3);
        for n in 0..8 {
            assert!(telescoping_gap(&phi, &cat(), &lambda, n).is_zero());
            let psi = conjugacy_series(&phi, &cat(), &lambda, n);
            let defect = cohomology_defect(&phi, &psi, &cat(), &lambda);
            // independent: λ^{-(n+1)} c_m sits at (Bᵀ)^{n+1} m
            let w = num_traits::pow::pow(rat(1, 1) / lambda.clone(), n + 1);
            assert_eq!(defect.len(), phi.len());
            for (m, c) in phi.terms() {
                let target = orbit_oracle(&cat(), m, n + 1);
                assert_eq!(defect.coeff(&target), c.scale(w.clone()));
            }
        }
    }
}

#[test]
fn residual_decays_geometrically() {
    let lambda = 2.5f64;
    let phi = TrigPoly::real_mode(frequency(&[1, 2]), Complex64::new(0.5, 0.25));
    let norm = phi.l1_norm();
    let mut prev = f64::INFINITY;
    for n in 0..10 {
        let psi = conjugacy_series(&phi, &cat(), &lambda, n);
        let r = cohomology_residual(&phi, &psi, &cat(), &lambda);
        assert!((r - norm * lambda.powi(-(n as i32 + 1))).abs() < 1e-12 * norm);
        assert!(r < prev);
        prev = r;
    }
}

#[test]
fn reality_is_preserved() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let phi = random_real_poly(&mut rng, 2, 4);
    assert!(phi.is_real());
    assert!(phi.compose(&cat()).is_real());
    assert!(conjugacy_series(&phi, &cat(), &rat(3, 1), 5).is_real());
    let x = [0.3, 0.71];
    assert!(phi.to_f64().eval(&x).im.abs() < 1e-12);
}

#[test]
fn character_orthogonality_on_free_orbits() {
    let phi = TrigPoly::character(frequency(&[1, 0]), Complex64::new(1.0, 0.0));
    for j in 0..5 {
        for k in 0..5 {
            let ip = phi.compose_pow(&cat(), j).inner(&phi.compose_pow(&cat(), k));
            assert_eq!(ip.norm() > 0.5, j == k);
        }
    }
}

#[test]
fn shear_data_detection() {
    let cfg = RootConfig::default();
    let data = find_shear_data(&examples::free32(), cfg, true).unwrap().unwrap();
    assert!(data.inverted);
    assert!((data.lambda_w.abs() - 1.0 / 0.435651).abs() < 1e-3 * 2.2955);
    assert!((data.lambda_u.abs() - 1.0 / 0.127283).abs() < 1e-3 * 7.857);
    assert!((data.lambda_w_exact.clone() - rat(0, 1)) != rat(0, 1));
    assert_eq!(data.base_dim(), 3);
    data.validate().unwrap();
    let both = find_shear_data(&examples::free32(), cfg, false).unwrap().unwrap();
    assert_eq!(both, data);
    assert_eq!(find_shear_data(&examples::smale(), cfg, false).unwrap(), None);
    assert!(matches!(find_shear_data(&examples::cat2(), cfg, false), Err(Error::Unsupported(_))));
}

#[test]
fn swapped_roles_are_rejected() {
    let mut data = find_shear_data(&examples::free32(), RootConfig::default(), true).unwrap().unwrap();
    std::mem::swap(&mut data.lambda_u, &mut data.lambda_w);
    assert!(matches!(data.validate(), Err(Error::InvalidShearData(_))));
    let phi = TrigPoly::real_mode(frequency(&[1, 0, 0]), Complex64::new(0.5, 0.0));
    assert!(matches!(lipschitz_pairing_test(&phi, &data, 5), Err(Error::InvalidShearData(_))));
}

#[test]
fn pairing_witness() {
    let data = find_shear_data(&examples::free32(), RootConfig::default(), true).unwrap().unwrap();
    let m = [1i64, 0, 0];
    let c = Complex64::new(0.5, 0.0);
    let phi = TrigPoly::real_mode(frequency(&m), c);
    let res = lipschitz_pairing_test(&phi, &data, 5).unwrap();
    let mu: f64 = m.iter().zip(&data.u).map(|(a, b)| *a as f64 * b).sum();
    let expected = (data.lambda_u / data.lambda_w).powi(5) * 2.0 * (2.0 * PI * mu * c.norm()).powi(2);
    assert!((res.left.re - expected).abs() < 1e-9 * expected.abs());
    assert!(res.left.im.abs() < 1e-9 * expected.abs());
    assert_eq!(res.right, Complex64::new(0.0, 0.0));
    assert!(res.witness);

    let constant = TrigPoly::character(frequency(&[0, 0, 0]), Complex64::new(2.0, 0.0));
    let res = lipschitz_pairing_test(&constant, &data, 5).unwrap();
    assert_eq!((res.left, res.right, res.witness), (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), false));
}

#[test]
fn pairing_rejects_collisions() {
    let mut data = find_shear_data(&examples::free32(), RootConfig::default(), true).unwrap().unwrap();
    let phi = TrigPoly::character(frequency(&[1, 0, 0]), Complex64::new(1.0, 0.0));
    let both = phi.add(&phi.compose(&data.b));
    assert!(matches!(lipschitz_pairing_test(&both, &data, 5), Err(Error::PeriodicFrequency(_))));
    data.u = vec![0.0, 1.0, 0.0];
    assert!(matches!(lipschitz_pairing_test(&phi, &data, 5), Err(Error::ModeInvisible(_))));
}

#[test]
fn skew_orbits() {
    let data = find_shear_data(&examples::free32(), RootConfig::default(), true).unwrap().unwrap();
    let zero = TrigPoly::<f64>::zero(3);
    let start = SkewPoint::new(vec![0.1, 1.2, -0.3], 0.0);
    assert!(start.base.iter().all(|x| (0.0..1.0).contains(x)));
    assert!(skew_orbit(&start, &zero, &data, 6).iter().all(|p| p.fiber == 0.0));
    let orbit = skew_orbit(&SkewPoint::new(vec![0.1, 0.2, 0.3], 1.0), &zero, &data, 6);
    for (k, p) in orbit.iter().enumerate() {
        assert!((p.fiber - data.lambda_w.powi(k as i32)).abs() < 1e-12 * data.lambda_w.abs().powi(k as i32));
    }

    // t + ψ(x) is multiplied by λ_w each step up to the residual; N stays
    // moderate so the phases of ψ's high frequencies remain accurate in f64.
    let phi = TrigPoly::real_mode(frequency(&[1, -1, 0]), Complex64::new(0.4, 0.1));
    let psi = conjugacy_series(&phi, &data.b, &data.lambda_w, 12);
    let res = cohomology_residual(&phi, &psi, &data.b, &data.lambda_w);
    assert!(res < 1e-4);
    let orbit = skew_orbit(&SkewPoint::new(vec![0.13, 0.57, 0.91], 0.25), &phi, &data, 6);
    let s: Vec<f64> = orbit.iter().map(|p| p.fiber + psi.eval(&p.base).re).collect();
    for k in 1..s.len() {
        let gap = (s[k] - data.lambda_w * s[k - 1]).abs();
        assert!(gap <= res + 1e-9, "step {k}: {gap} > {res}");
    }
}
