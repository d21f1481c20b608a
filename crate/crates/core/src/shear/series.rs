use super::data::ShearData;
use super::trigpoly::{mat_vec, transpose, Frequency, IntMatrix, TrigPoly};
use crate::rational::{RatMatrix, Scalar};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_traits::{ToPrimitive, Zero};

/// `ψ_N = λ^{-1} Σ_{k=0}^{N} λ^{-k} φ∘B^k`, the truncated solution of
/// `φ + ψ∘B = λ ψ`.
pub fn conjugacy_series<F: Scalar>(phi: &TrigPoly<F>, b: &IntMatrix, lambda: &F, n: usize) -> TrigPoly<F> {
    let inv = F::one() / lambda.clone();
    let mut psi = TrigPoly::zero(phi.dim());
    let mut term = phi.clone();
    let mut weight = inv.clone();
    for k in 0..=n {
        if k > 0 {
            term = term.compose(b);
            weight = weight * inv.clone();
        }
        psi = psi.add(&term.scale_real(&weight));
    }
    psi
}

/// `φ + ψ∘B - λ ψ` in coefficient space.
pub fn cohomology_defect<F: Scalar>(phi: &TrigPoly<F>, psi: &TrigPoly<F>, b: &IntMatrix, lambda: &F) -> TrigPoly<F> {
    phi.add(&psi.compose(b)).sub(&psi.scale_real(lambda))
}

/// `ℓ¹` norm of `φ + ψ∘B - λ ψ`, an upper bound for its sup norm.
pub fn cohomology_residual<F: Scalar>(phi: &TrigPoly<F>, psi: &TrigPoly<F>, b: &IntMatrix, lambda: &F) -> f64 {
    cohomology_defect(phi, psi, b, lambda).l1_norm()
}

/// Outcome of pairing both sides of the Lipschitz condition with `φ_u∘B^K`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingResult {
    pub left: Complex64,
    pub right: Complex64,
    /// `|left - right| > 1e-9`: the shear family is not Lipschitz conjugate
    /// to the linear map along `u`.
    pub witness: bool,
    pub k: usize,
    /// `Σ_m |2π⟨m, u⟩ c_m|²`, so that `left = (λ_u/λ_w)^K` times this.
    pub mode_energy: f64,
}

/// Pairs `Σ_{k≥0} (λ_u/λ_w)^k φ_u∘B^k` and `-λ_u^{-1} Σ_{k<0} (λ_u/λ_w)^k φ_u∘B^k`
/// with `φ_u∘B^K`, where `φ_u` is the derivative of `φ` along `u`. Sums run
/// over `|k| ≤ 2K + 1`, where all frequencies are checked to be distinct.
pub fn lipschitz_pairing_test(phi: &TrigPoly<f64>, data: &ShearData, k: usize) -> Result<PairingResult> {
    if data.lambda_u.abs() <= data.lambda_w.abs() {
        return Err(Error::InvalidShearData("|λ_u| must exceed |λ_w|".into()));
    }
    let u = &data.u;
    let unorm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut mode_energy = 0.0;
    for (m, _) in phi.terms() {
        if m.iter().all(Zero::is_zero) {
            continue;
        }
        let mu: f64 = m.iter().zip(u).map(|(a, b)| a.to_f64().unwrap_or(f64::MAX) * b).sum();
        let mnorm = m.iter().map(|a| a.to_f64().unwrap_or(f64::MAX).powi(2)).sum::<f64>().sqrt();
        if mu.abs() <= 1e-12 * mnorm * unorm {
            return Err(Error::ModeInvisible(format!("frequency {m:?} is orthogonal to u")));
        }
    }
    let phi_u = phi.derivative(u);
    for (_, c) in phi_u.terms() {
        mode_energy += c.norm_sqr();
    }
    let window = 2 * k + 1;
    check_free_orbits(&phi_u, &data.b, window)?;
    let b_inv = inverse_int(&data.b)?;
    let ratio = data.lambda_u / data.lambda_w;
    let test = phi_u.compose_pow(&data.b, k);
    let mut left = Complex64::zero();
    let mut term = phi_u.clone();
    for j in 0..=window {
        if j > 0 {
            term = term.compose(&data.b);
        }
        left += term.inner(&test) * ratio.powi(j as i32);
    }
    let mut right = Complex64::zero();
    let mut term = phi_u.clone();
    for j in 1..=window {
        term = term.compose(&b_inv);
        right += term.inner(&test) * ratio.powi(-(j as i32));
    }
    right *= -1.0 / data.lambda_u;
    let witness = (left - right).norm() > 1e-9;
    Ok(PairingResult { left, right, witness, k, mode_energy })
}

/// Frequencies `(Bᵀ)^j m`, `|j| ≤ window`, over all terms must be distinct.
fn check_free_orbits(p: &TrigPoly<f64>, b: &IntMatrix, window: usize) -> Result<()> {
    let bt = transpose(b);
    let bt_inv = transpose(&inverse_int(b)?);
    let mut seen = std::collections::BTreeSet::new();
    for (m, _) in p.terms() {
        let mut fwd: Frequency = m.clone();
        let mut back: Frequency = m.clone();
        if !seen.insert(m.clone()) {
            return Err(Error::PeriodicFrequency(format!("{m:?} repeats")));
        }
        for _ in 0..window {
            fwd = mat_vec(&bt, &fwd);
            back = mat_vec(&bt_inv, &back);
            for f in [&fwd, &back] {
                if !seen.insert(f.clone()) {
                    return Err(Error::PeriodicFrequency(format!(
                        "orbit of {m:?} revisits {f:?}; choose another mode"
                    )));
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn inverse_int(b: &IntMatrix) -> Result<IntMatrix> {
    let n = b.len();
    let rows: Vec<Vec<crate::rational::Rational>> =
        b.iter().map(|r| r.iter().map(|x| crate::rational::Rational::from_integer(x.clone())).collect()).collect();
    let inv = RatMatrix::from_rows(&rows, n)?.inverse()?;
    if !inv.is_integral() {
        return Err(Error::InvalidShearData("base matrix is not unimodular".into()));
    }
    Ok((0..n).map(|i| (0..n).map(|j| inv[(i, j)].to_integer()).collect::<Vec<BigInt>>()).collect())
}

/// Point of the skew product `T^d × R`.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewPoint {
    /// Coordinates in `[0, 1)`.
    pub base: Vec<f64>,
    pub fiber: f64,
}

impl SkewPoint {
    pub fn new(base: Vec<f64>, fiber: f64) -> Self {
        Self { base: base.into_iter().map(|x| x.rem_euclid(1.0)).collect(), fiber }
    }
}

/// Orbit of `(x, t) ↦ (Bx mod 1, λ_w t + Re φ(x))`, including the start.
pub fn skew_orbit(start: &SkewPoint, phi: &TrigPoly<f64>, data: &ShearData, steps: usize) -> Vec<SkewPoint> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(start.clone());
    let mut p = start.clone();
    for _ in 0..steps {
        let fiber = data.lambda_w * p.fiber + phi.eval(&p.base).re;
        let base = data
            .b
            .iter()
            .map(|row| row.iter().zip(&p.base).map(|(a, x)| a.to_f64().unwrap_or(f64::MAX) * x).sum::<f64>())
            .collect();
        p = SkewPoint::new(base, fiber);
        out.push(p.clone());
    }
    out
}

/// Exact-coefficient helper: `φ + ψ_N∘B - λψ_N` against `λ^{-(N+1)} φ∘B^{N+1}`.
pub fn telescoping_gap<F: Scalar>(phi: &TrigPoly<F>, b: &IntMatrix, lambda: &F, n: usize) -> TrigPoly<F> {
    let psi = conjugacy_series(phi, b, lambda, n);
    let defect = cohomology_defect(phi, &psi, b, lambda);
    let mut weight = F::one();
    for _ in 0..=n {
        weight = weight / lambda.clone();
    }
    defect.sub(&phi.compose_pow(b, n + 1).scale(&Complex::new(weight, F::zero())))
}
