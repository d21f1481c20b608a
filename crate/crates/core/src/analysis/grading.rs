use super::automorphism::restrict;
use super::Automorphism;
use crate::rational::{charpoly, RatPoly, Subspace};
use crate::{Error, Result};

/// Lower central series refined into invariant complements
/// `n^(i) = n_(i) ⊕ n^(i+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradingReport {
    /// Nonzero terms `n^(1) ⊇ n^(2) ⊇ ...`.
    pub lcs: Vec<Subspace>,
    pub grades: Vec<Subspace>,
    /// Characteristic polynomial of the restriction to each grade.
    pub grade_polys: Vec<RatPoly>,
    /// `[n_(1), n_(i-1)] = n_(i)` for every `i ≥ 2`.
    pub carnot_verified: bool,
}

impl GradingReport {
    pub fn step(&self) -> usize {
        self.grades.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.grades.iter().map(Subspace::dim).collect()
    }

    /// 1-based grade whose polynomial is divisible by `p`.
    pub fn grade_of_factor(&self, p: &RatPoly) -> Option<usize> {
        self.grade_polys
            .iter()
            .position(|g| g.div_rem(p).map(|(_, r)| r.is_zero()).unwrap_or(false))
            .map(|i| i + 1)
    }

    /// Components of `v` along the grades.
    pub fn decompose(&self, v: &[crate::rational::Rational]) -> Result<Vec<Vec<crate::rational::Rational>>> {
        let n = v.len();
        let rows: Vec<_> = self.grades.iter().flat_map(|g| g.basis().iter().cloned()).collect();
        let m = crate::rational::RatMatrix::from_rows(&rows, n)?.transpose();
        let c = m.solve(v)?;
        let mut out = Vec::with_capacity(self.grades.len());
        let mut offset = 0;
        for g in &self.grades {
            let mut comp = vec![num_traits::Zero::zero(); n];
            for (b, coeff) in g.basis().iter().zip(&c[offset..offset + g.dim()]) {
                for (t, x) in comp.iter_mut().zip(b) {
                    *t += coeff * x;
                }
            }
            offset += g.dim();
            out.push(comp);
        }
        Ok(out)
    }
}

pub fn compute_grading(a: &Automorphism) -> Result<GradingReport> {
    let alg = a.algebra();
    let m = a.matrix();
    let mut lcs = alg.lower_central_series()?;
    lcs.pop();
    let polys = lcs
        .iter()
        .map(|s| charpoly(&restrict(m, s)?))
        .collect::<Result<Vec<_>>>()?;
    let mut grades = Vec::with_capacity(lcs.len());
    let mut grade_polys = Vec::with_capacity(lcs.len());
    for i in 0..lcs.len() {
        let next_poly = polys.get(i + 1).cloned().unwrap_or_else(RatPoly::one);
        let (q, r) = polys[i].div_rem(&next_poly)?;
        if !r.is_zero() {
            return Err(Error::Invariant("lower central series polynomials do not divide".into()));
        }
        if q.gcd(&next_poly).degree() > 0 {
            return Err(Error::GradingNotSplittable(format!(
                "repeated spectral factor {} across n^({}) and n^({})",
                q.gcd(&next_poly),
                i + 1,
                i + 2
            )));
        }
        let grade = Subspace::kernel(&m.eval_poly(&q)?).intersect(&lcs[i])?;
        let next = lcs.get(i + 1).cloned().unwrap_or_else(|| Subspace::zero(alg.dim()));
        if grade.dim() != q.degree() || grade.sum(&next)? != lcs[i] || !grade.intersect(&next)?.is_zero() {
            return Err(Error::Invariant(format!("grade {} is not a complement", i + 1)));
        }
        let restricted = charpoly(&restrict(m, &grade)?)?;
        if restricted != q {
            return Err(Error::Invariant(format!("grade {} polynomial mismatch", i + 1)));
        }
        grades.push(grade);
        grade_polys.push(q);
    }
    let carnot_verified = (1..grades.len()).try_fold(true, |ok, i| -> Result<bool> {
        Ok(ok && alg.bracket_subspaces(&grades[0], &grades[i - 1])? == grades[i])
    })?;
    Ok(GradingReport { lcs, grades, grade_polys, carnot_verified })
}
