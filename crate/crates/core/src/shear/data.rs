use super::trigpoly::IntMatrix;
use crate::analysis::Automorphism;
use crate::rational::{charpoly, isolate_roots, RatMatrix, Rational, RootConfig, Scalar, Subspace};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::Signed;
use std::cmp::Ordering;

/// Data for shearing a fast base direction into a slower central one.
#[derive(Clone, Debug, PartialEq)]
pub struct ShearData {
    /// Action on the base torus `n / z` in the quotient basis.
    pub b: IntMatrix,
    /// Central unstable eigenvalue of smallest modulus.
    pub lambda_w: f64,
    /// Certified rational approximation of `lambda_w` used for exact coefficient arithmetic.
    pub lambda_w_exact: Rational,
    /// Unstable base eigenvalue of largest modulus.
    pub lambda_u: f64,
    /// Unit eigenvector of `b` for `lambda_u`.
    pub u: Vec<f64>,
    /// Unit central eigenvector for `lambda_w`, in the declared basis.
    pub w: Vec<f64>,
    /// The construction applies to the inverse automorphism.
    pub inverted: bool,
}

impl ShearData {
    pub fn base_dim(&self) -> usize {
        self.b.len()
    }

    /// `|λ_u| > |λ_w| > 1` and `B u = λ_u u`.
    pub fn validate(&self) -> Result<()> {
        if self.lambda_w.abs().partial_cmp(&1.0) != Some(Ordering::Greater) {
            return Err(Error::InvalidShearData("|λ_w| must exceed 1".into()));
        }
        if self.lambda_u.abs().partial_cmp(&self.lambda_w.abs()) != Some(Ordering::Greater) {
            return Err(Error::InvalidShearData("|λ_u| must exceed |λ_w|".into()));
        }
        let bu: Vec<f64> = self
            .b
            .iter()
            .map(|row| row.iter().zip(&self.u).map(|(a, x)| a.to_f64() * x).sum())
            .collect();
        let err: f64 = bu.iter().zip(&self.u).map(|(a, x)| (a - self.lambda_u * x).abs()).fold(0.0, f64::max);
        if err > 1e-9 * self.lambda_u.abs() {
            return Err(Error::InvalidShearData("u is not an eigenvector of B".into()));
        }
        Ok(())
    }
}

trait BigToF64 {
    fn to_f64(&self) -> f64;
}

impl BigToF64 for BigInt {
    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::MAX)
    }
}

/// Searches `L`, then `L^{-1}`, for a central unstable eigenvalue `λ_w` and a
/// non-central unstable eigenvalue `λ_u` with `|λ_u| > |λ_w|`. With
/// `only_inverse` only `L^{-1}` is searched.
pub fn find_shear_data(a: &Automorphism, cfg: RootConfig, only_inverse: bool) -> Result<Option<ShearData>> {
    let alg = a.algebra();
    let step = alg.step()?;
    if step != 2 {
        return Err(Error::Unsupported(format!(
            "shear data needs a two-step algebra (step is {step})"
        )));
    }
    let candidates: Vec<bool> = if only_inverse { vec![true] } else { vec![false, true] };
    for inverted in candidates {
        let m = if inverted { a.matrix().inverse()? } else { a.matrix().clone() };
        if let Some(data) = search(&m, &alg.center(), cfg, inverted)? {
            return Ok(Some(data));
        }
    }
    Ok(None)
}

fn search(m: &RatMatrix, center: &Subspace, cfg: RootConfig, inverted: bool) -> Result<Option<ShearData>> {
    let n = m.rows();
    let z = crate::analysis::restrict_matrix(m, center)?;
    let base = crate::analysis::induced_matrix(m, &Subspace::full(n), center)?;
    if !base.is_integral() {
        return Err(Error::Unsupported("base action is not integral".into()));
    }
    let fine = RootConfig { tol: cfg.tol.min(1e-30), ..cfg };
    let zp = charpoly(&z)?.squarefree_part();
    let bp = charpoly(&base)?.squarefree_part();
    let central = isolate_roots(&zp, fine)?;
    let basal = isolate_roots(&bp, fine)?;
    let unstable = |r: &&crate::rational::CertifiedRoot| r.is_real && r.compare_unit() == Some(Ordering::Greater);
    let Some(w) = central.iter().filter(unstable).min_by(|x, y| cmp(x, y)) else {
        return Ok(None);
    };
    let Some(u) = basal.iter().filter(unstable).max_by(|x, y| cmp(x, y)) else {
        return Ok(None);
    };
    if u.compare_modulus(w) != Some(Ordering::Greater) {
        return Ok(None);
    }
    let b: IntMatrix = (0..base.rows())
        .map(|i| (0..base.cols()).map(|j| base[(i, j)].to_integer()).collect())
        .collect();
    let u_vec = unit(&crate::geometry::eigenvector_from_root(&base, &bp, u.real_center(), 96)?);
    let w_local = crate::geometry::eigenvector_from_root(&z, &zp, w.real_center(), 96)?;
    // back to the declared basis
    let mut w_vec = vec![Rational::from_integer(0.into()); n];
    for (c, basis) in w_local.iter().zip(center.basis()) {
        for (t, x) in w_vec.iter_mut().zip(basis) {
            *t += c * x;
        }
    }
    let data = ShearData {
        b,
        lambda_w: w.value.re,
        lambda_w_exact: w.real_center().clone(),
        lambda_u: u.value.re,
        u: u_vec,
        w: unit(&w_vec),
        inverted,
    };
    data.validate()?;
    Ok(Some(data))
}

fn cmp(x: &crate::rational::CertifiedRoot, y: &crate::rational::CertifiedRoot) -> Ordering {
    x.compare_modulus(y).unwrap_or_else(|| x.modulus_sq().cmp(&y.modulus_sq()))
}

fn unit(v: &[Rational]) -> Vec<f64> {
    let f: Vec<f64> = v.iter().map(Scalar::to_f64).collect();
    let n = f.iter().map(|x| x * x).sum::<f64>().sqrt();
    let sign = if f.iter().find(|x| x.abs() > 1e-12).is_some_and(|x| x.is_negative()) { -1.0 } else { 1.0 };
    f.iter().map(|x| sign * x / n).collect()
}
