use super::eigen::real_eigenpairs;
use super::group::{GroupElement, NilpotentGroup};
use super::guivarch::norm;
use crate::analysis::{Automorphism, Stability};
use crate::rational::{Matrix, Rational, Scalar};
use crate::{Error, Result};
use std::sync::Arc;

/// Tolerance for the numerical ideal and coset checks.
pub const FRAME_TOL: f64 = 1e-9;

/// Splitting `s_i = span(v_i) ⊕ s_{i+1}` of a strong unstable subalgebra into
/// the weak direction and the strong ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct WeakStrongFrame<F: Scalar> {
    index: usize,
    group: Arc<NilpotentGroup>,
    weak: Vec<F>,
    strong: Vec<Vec<F>>,
    eigenvalue: Option<F>,
    /// Inverse Gram matrix of `[weak, strong...]`.
    gram_inv: Matrix<F>,
}

impl<F: Scalar> WeakStrongFrame<F> {
    /// Validates independence and that `strong` is an ideal in
    /// `span(weak) + strong` (relative tolerance [`FRAME_TOL`]).
    pub fn new(
        group: Arc<NilpotentGroup>,
        index: usize,
        weak: Vec<F>,
        strong: Vec<Vec<F>>,
        eigenvalue: Option<F>,
    ) -> Result<Self> {
        let n = group.dim();
        if weak.len() != n || strong.iter().any(|s| s.len() != n) {
            return Err(Error::Dimension("frame vectors must have the algebra dimension".into()));
        }
        let cols: Vec<&Vec<F>> = std::iter::once(&weak).chain(&strong).collect();
        let k = cols.len();
        let mut gram = Matrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                gram[(i, j)] = dot(cols[i], cols[j]);
            }
        }
        let gram_inv = gram.inverse().map_err(|_| Error::Domain("frame vectors are dependent".into()))?;
        let frame = Self { index, group, weak, strong, eigenvalue, gram_inv };
        for a in std::iter::once(&frame.weak).chain(&frame.strong) {
            for b in &frame.strong {
                let br = frame.group.algebra().bracket_coords(a, b);
                let (_, coeffs, residual) = frame.decompose(&br);
                let scale = norm_f(a) * norm_f(b);
                let leak = coeffs[0].magnitude() * norm_f(&frame.weak);
                if residual > FRAME_TOL * scale || leak > FRAME_TOL * scale {
                    return Err(Error::Domain("strong subspace is not an ideal of the frame".into()));
                }
            }
        }
        Ok(frame)
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn group(&self) -> &Arc<NilpotentGroup> {
        &self.group
    }

    pub fn weak(&self) -> &[F] {
        &self.weak
    }

    pub fn strong(&self) -> &[Vec<F>] {
        &self.strong
    }

    pub fn eigenvalue(&self) -> Option<&F> {
        self.eigenvalue.as_ref()
    }

    /// Least-squares coordinates of `x` in `[weak, strong...]`, returning the
    /// reconstruction, the coefficients and the absolute residual norm.
    fn decompose(&self, x: &[F]) -> (Vec<F>, Vec<F>, f64) {
        let cols: Vec<&Vec<F>> = std::iter::once(&self.weak).chain(&self.strong).collect();
        let rhs: Vec<F> = cols.iter().map(|c| dot(c, x)).collect();
        let coeffs = self.gram_inv.mul_vec(&rhs);
        let mut recon = vec![F::zero(); x.len()];
        for (c, v) in coeffs.iter().zip(&cols) {
            for (r, vi) in recon.iter_mut().zip(v.iter()) {
                *r = r.clone() + c.clone() * vi.clone();
            }
        }
        let diff: Vec<F> = x.iter().zip(&recon).map(|(a, b)| a.clone() - b.clone()).collect();
        (recon, coeffs, norm_f(&diff))
    }

    /// Coefficient `t` in `log x = t v + s`, `s` strong, checking that `x`
    /// lies in the frame subalgebra.
    pub fn weak_coefficient(&self, x: &[F]) -> Result<F> {
        let (_, coeffs, residual) = self.decompose(x);
        if residual > FRAME_TOL * norm_f(x).max(f64::MIN_POSITIVE) {
            return Err(Error::Domain("element is not in the frame subalgebra coset".into()));
        }
        Ok(coeffs[0].clone())
    }

    /// Weak coordinate of `r · q^{-1}`: the `t` in `r q^{-1} = exp(t v) s`.
    pub fn weak_coordinate(&self, q: &GroupElement<F>, r: &GroupElement<F>) -> Result<F> {
        let m = self.displacement(q, r)?;
        self.weak_coefficient(&m)
    }

    fn displacement(&self, q: &GroupElement<F>, r: &GroupElement<F>) -> Result<Vec<F>> {
        if **q.group() != *self.group || **r.group() != *self.group {
            return Err(Error::Domain("elements do not belong to the frame's group".into()));
        }
        Ok(self.group.product(r.log_coords(), &self.group.inverse(q.log_coords())))
    }

    /// Distance along the weak direction between `q` and `r`.
    pub fn weak_distance(&self, q: &GroupElement<F>, r: &GroupElement<F>) -> Result<f64> {
        Ok(self.weak_coordinate(q, r)?.magnitude() * norm_f(&self.weak))
    }

    /// `‖log s‖` for the strong factor of `r q^{-1} = exp(t v) s`: the length
    /// of a one-parameter path to `s`, an upper bound for the leaf distance.
    pub fn strong_distance_upper_bound(&self, q: &GroupElement<F>, r: &GroupElement<F>) -> Result<f64> {
        let m = self.displacement(q, r)?;
        let t = self.weak_coefficient(&m)?;
        let minus_tv: Vec<F> = self.weak.iter().map(|c| -(c.clone() * t.clone())).collect();
        let s = self.group.product(&minus_tv, &m);
        Ok(norm_f(&s))
    }

    pub fn to_f64(&self) -> Result<WeakStrongFrame<f64>> {
        let conv = |v: &[F]| v.iter().map(Scalar::to_f64).collect::<Vec<f64>>();
        WeakStrongFrame::new(
            self.group.clone(),
            self.index,
            conv(&self.weak),
            self.strong.iter().map(|s| conv(s)).collect(),
            self.eigenvalue.as_ref().map(Scalar::to_f64),
        )
    }
}

impl WeakStrongFrame<Rational> {
    /// Exact frame with weak direction `e_k` and strong ideal spanned by the
    /// other basis vectors; requires `[n, n]` to avoid `e_k`.
    pub fn coordinate_hyperplane(group: Arc<NilpotentGroup>, k: usize) -> Result<Self> {
        let n = group.dim();
        if k >= n {
            return Err(Error::Dimension(format!("basis index {k} out of range")));
        }
        let unit = |i| crate::rational::unit_vector(n, i);
        let strong = (0..n).filter(|&i| i != k).map(unit).collect();
        Self::new(group, 0, unit(k), strong, None)
    }

    /// Frame for the `i`-th (1-based, by increasing modulus) unstable
    /// eigenvalue, with eigenvectors accurate to about `bits` bits.
    pub fn unstable(a: &Automorphism, i: usize, bits: u32) -> Result<Self> {
        let group = Arc::new(NilpotentGroup::new(a.algebra().clone())?);
        let pairs = real_eigenpairs(a, bits)?;
        let unstable: Vec<_> = pairs.into_iter().filter(|p| p.stability == Stability::Unstable).collect();
        if i == 0 || i > unstable.len() {
            return Err(Error::Domain(format!("no unstable eigenvalue with index {i}")));
        }
        let weak = unstable[i - 1].vector.clone();
        let strong = unstable[i..].iter().map(|p| p.vector.clone()).collect();
        let lambda = unstable[i - 1].eigenvalue().clone();
        Self::new(group, i, weak, strong, Some(lambda))
    }
}

fn dot<F: Scalar>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn norm_f<F: Scalar>(v: &[F]) -> f64 {
    if F::EXACT {
        let sq = dot(v, v);
        sq.to_f64().sqrt()
    } else {
        norm(&v.iter().map(Scalar::to_f64).collect::<Vec<_>>())
    }
}

/// Result of comparing weak distances along `L^m` with `|λ|^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingReport {
    pub distances: Vec<f64>,
    /// `d_m / d_0`, empty when `d_0 = 0`.
    pub ratios: Vec<f64>,
    pub expected: Vec<f64>,
    pub max_relative_error: f64,
    pub passed: bool,
}

/// Checks `d(L^m q, L^m r) = |λ|^m d(q, r)` for `m = 0..=m_max`.
pub fn weak_distance_scaling_check<F: Scalar>(
    a: &Automorphism,
    q: &GroupElement<F>,
    r: &GroupElement<F>,
    frame: &WeakStrongFrame<F>,
    m_max: u32,
) -> Result<ScalingReport> {
    let lambda = frame
        .eigenvalue()
        .cloned()
        .ok_or_else(|| Error::Domain("frame has no eigenvalue".into()))?;
    let mat: Matrix<F> = a.matrix().map(F::from_rational);
    let t0 = frame.weak_coordinate(q, r)?;
    let (mut qm, mut rm) = (q.log_coords().to_vec(), r.log_coords().to_vec());
    let mut report = ScalingReport {
        distances: Vec::new(),
        ratios: Vec::new(),
        expected: Vec::new(),
        max_relative_error: 0.0,
        passed: true,
    };
    let mut lambda_m = F::one();
    let weak_norm = norm_f(frame.weak());
    for m in 0..=m_max {
        if m > 0 {
            qm = mat.mul_vec(&qm);
            rm = mat.mul_vec(&rm);
            lambda_m = lambda_m * lambda.clone();
        }
        let gq = GroupElement::new(frame.group().clone(), qm.clone())?;
        let gr = GroupElement::new(frame.group().clone(), rm.clone())?;
        let t = frame.weak_coordinate(&gq, &gr)?;
        report.distances.push(t.magnitude() * weak_norm);
        report.expected.push(lambda_m.magnitude());
        if !t0.is_zero() {
            let ratio = t / t0.clone();
            // relative error computed before rounding
            let err = ((ratio.clone() - lambda_m.clone()) / lambda_m.clone()).magnitude();
            report.ratios.push(ratio.magnitude());
            report.max_relative_error = report.max_relative_error.max(err);
        } else if !t.is_zero() {
            report.max_relative_error = f64::INFINITY;
        }
    }
    report.passed = report.max_relative_error <= FRAME_TOL;
    Ok(report)
}
