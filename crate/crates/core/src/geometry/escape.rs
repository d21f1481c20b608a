use super::eigen::real_eigenpairs;
use super::guivarch::{norm, GradeProjector};
use crate::analysis::{Automorphism, GradingReport, Stability};
use crate::{Error, Result};

/// Unstable eigen-directions with their grades: coordinates in which `L^n`
/// acts diagonally.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralFrame {
    pub eigenvalues: Vec<f64>,
    pub grades: Vec<usize>,
    /// Unit eigenvectors in the declared basis.
    pub vectors: Vec<Vec<f64>>,
}

impl SpectralFrame {
    /// Unstable eigenvalues sorted by modulus.
    pub fn unstable(a: &Automorphism, grading: &GradingReport) -> Result<Self> {
        let projector = GradeProjector::new(grading)?;
        let mut frame = SpectralFrame { eigenvalues: Vec::new(), grades: Vec::new(), vectors: Vec::new() };
        for pair in real_eigenpairs(a, 128)?.into_iter().filter(|p| p.stability == Stability::Unstable) {
            let v = pair.vector_f64();
            let n = norm(&v);
            let unit: Vec<f64> = v.iter().map(|x| x / n).collect();
            let grade = projector
                .components_f64(&unit)
                .iter()
                .map(|c| norm(c))
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .map(|(k, _)| k + 1)
                .unwrap_or(1);
            frame.eigenvalues.push(pair.root.value.re);
            frame.grades.push(grade);
            frame.vectors.push(unit);
        }
        Ok(frame)
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// `log σ_j = log|λ_j| / grade_j`
    pub fn log_escape_speed(&self, j: usize) -> f64 {
        self.eigenvalues[j].abs().ln() / self.grades[j] as f64
    }

    /// Spectral coefficients of a vector lying in the span of the frame.
    pub fn coefficients(&self, x: &[f64]) -> Result<Vec<f64>> {
        let k = self.len();
        let mut gram = crate::rational::Matrix::<f64>::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                gram[(i, j)] = dot(&self.vectors[i], &self.vectors[j]);
            }
        }
        let rhs: Vec<f64> = self.vectors.iter().map(|v| dot(v, x)).collect();
        let c = gram.solve(&rhs)?;
        let mut recon = vec![0.0; x.len()];
        for (ci, v) in c.iter().zip(&self.vectors) {
            for (r, vi) in recon.iter_mut().zip(v) {
                *r += ci * vi;
            }
        }
        let resid: Vec<f64> = x.iter().zip(&recon).map(|(a, b)| a - b).collect();
        if norm(&resid) > 1e-9 * norm(x).max(f64::MIN_POSITIVE) {
            return Err(Error::Domain("vector is not in the unstable subalgebra".into()));
        }
        Ok(c)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct EscapeReport {
    /// `log φ(L^n x)` for `n = 1..=n_max`.
    pub log_phi: Vec<f64>,
    /// `log φ(L^n x) / n`.
    pub rates: Vec<f64>,
    /// Increments `log φ(L^n x) - log φ(L^(n-1) x)`, free of the constant
    /// offset that slows the convergence of `rates`.
    pub slopes: Vec<f64>,
    /// Index (into the frame) of the component with the largest escape speed.
    pub dominant: usize,
    pub dominant_log_speed: f64,
    pub slowest_log_speed: f64,
    /// Fitted rate within `tol` of the slowest escape speed.
    pub in_slow_subgroup: bool,
    pub converged_to_dominant: bool,
}

impl EscapeReport {
    pub fn final_rate(&self) -> f64 {
        *self.rates.last().unwrap_or(&f64::NAN)
    }

    pub fn fitted_rate(&self) -> f64 {
        *self.slopes.last().unwrap_or(&f64::NAN)
    }
}

/// Growth of the Guivarc'h length along the orbit of `x`, given by its
/// spectral coefficients. Computed in log space so large `n` cannot overflow.
pub fn escape_experiment(frame: &SpectralFrame, coeffs: &[f64], n_max: usize, tol: f64) -> Result<EscapeReport> {
    if coeffs.len() != frame.len() {
        return Err(Error::Dimension("one coefficient per frame direction".into()));
    }
    let active: Vec<usize> = (0..frame.len()).filter(|&j| coeffs[j] != 0.0).collect();
    if active.is_empty() {
        return Err(Error::Domain("the identity does not escape".into()));
    }
    let dominant = *active
        .iter()
        .max_by(|&&a, &&b| frame.log_escape_speed(a).total_cmp(&frame.log_escape_speed(b)))
        .unwrap();
    let slowest_log_speed = (0..frame.len()).map(|j| frame.log_escape_speed(j)).fold(f64::INFINITY, f64::min);
    let max_grade = frame.grades.iter().copied().max().unwrap_or(1);
    let dim = frame.vectors[0].len();
    let mut log_phi = Vec::with_capacity(n_max);
    let mut rates = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut best = f64::NEG_INFINITY;
        for k in 1..=max_grade {
            let members: Vec<usize> = active.iter().copied().filter(|&j| frame.grades[j] == k).collect();
            if members.is_empty() {
                continue;
            }
            let logs: Vec<f64> = members
                .iter()
                .map(|&j| coeffs[j].abs().ln() + n as f64 * frame.eigenvalues[j].abs().ln())
                .collect();
            let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let mut v = vec![0.0; dim];
            for (&j, l) in members.iter().zip(&logs) {
                let sign = coeffs[j].signum() * frame.eigenvalues[j].signum().powi(n as i32);
                let w = sign * (l - top).exp();
                for (vi, u) in v.iter_mut().zip(&frame.vectors[j]) {
                    *vi += w * u;
                }
            }
            let nv = norm(&v);
            if nv > 0.0 {
                best = best.max((top + nv.ln()) / k as f64);
            }
        }
        log_phi.push(best);
        rates.push(best / n as f64);
    }
    let slopes: Vec<f64> = log_phi.windows(2).map(|w| w[1] - w[0]).collect();
    let last = *slopes.last().or(rates.last()).unwrap_or(&f64::NAN);
    let dominant_log_speed = frame.log_escape_speed(dominant);
    Ok(EscapeReport {
        in_slow_subgroup: (last - slowest_log_speed).abs() <= tol,
        converged_to_dominant: (last - dominant_log_speed).abs() <= tol,
        log_phi,
        rates,
        slopes,
        dominant,
        dominant_log_speed,
        slowest_log_speed,
    })
}

/// [`escape_experiment`] for `x` given in the declared basis; `x` must lie
/// in the unstable subalgebra.
pub fn escape_experiment_coords(frame: &SpectralFrame, x: &[f64], n_max: usize, tol: f64) -> Result<EscapeReport> {
    let c = frame.coefficients(x)?;
    let cleaned: Vec<f64> = c.iter().map(|&v| if v.abs() < 1e-12 * norm(x) { 0.0 } else { v }).collect();
    escape_experiment(frame, &cleaned, n_max, tol)
}
