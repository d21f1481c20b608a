use crate::analysis::GradingReport;
use crate::lie::AlgebraElement;
use crate::rational::{Matrix, RatMatrix, Rational};
use crate::Result;

/// Projections onto the grades of a direct-sum decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct GradeProjector {
    exact: Vec<RatMatrix>,
    numeric: Vec<Matrix<f64>>,
}

impl GradeProjector {
    pub fn new(grading: &GradingReport) -> Result<Self> {
        let n = grading.grades.first().map_or(0, |g| g.ambient_dim());
        let columns: Vec<Vec<Rational>> = grading.grades.iter().flat_map(|g| g.basis().iter().cloned()).collect();
        let basis = RatMatrix::from_columns(&columns, n)?;
        let inv = basis.inverse()?;
        let mut exact = Vec::with_capacity(grading.grades.len());
        let mut offset = 0;
        for g in &grading.grades {
            let mut keep = RatMatrix::zeros(n, n);
            for i in offset..offset + g.dim() {
                keep[(i, i)] = num_traits::One::one();
            }
            offset += g.dim();
            exact.push(basis.mul(&keep)?.mul(&inv)?);
        }
        let numeric = exact.iter().map(RatMatrix::to_f64).collect();
        Ok(Self { exact, numeric })
    }

    pub fn grade_count(&self) -> usize {
        self.exact.len()
    }

    pub fn components(&self, x: &[Rational]) -> Vec<Vec<Rational>> {
        self.exact.iter().map(|p| p.mul_vec(x)).collect()
    }

    pub fn components_f64(&self, x: &[f64]) -> Vec<Vec<f64>> {
        self.numeric.iter().map(|p| p.mul_vec(x)).collect()
    }

    /// `max_k ‖x_k‖^(1/k)` with the Euclidean norm of the declared basis.
    pub fn length_f64(&self, x: &[f64]) -> f64 {
        self.components_f64(x)
            .iter()
            .enumerate()
            .map(|(k, c)| norm(c).powf(1.0 / (k + 1) as f64))
            .fold(0.0, f64::max)
    }

    pub fn length(&self, x: &[Rational]) -> f64 {
        self.components(x)
            .iter()
            .enumerate()
            .map(|(k, c)| norm_rational(c).powf(1.0 / (k + 1) as f64))
            .fold(0.0, f64::max)
    }
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub(crate) fn norm_rational(v: &[Rational]) -> f64 {
    let sq: Rational = v.iter().map(|x| x * x).sum();
    crate::rational::sqrt_upper(&sq).min(f64::MAX)
}

/// Guivarc'h length of `x` with respect to the grading.
pub fn guivarch_length(x: &AlgebraElement, grading: &GradingReport) -> Result<f64> {
    Ok(GradeProjector::new(grading)?.length(x.coords()))
}
