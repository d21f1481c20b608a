use super::GradingReport;
use crate::rational::{separate_moduli, unit_circle_root_count, CertifiedRoot, RootConfig};
use crate::{Error, Result};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stability {
    Unstable,
    Stable,
    /// Modulus exactly 1.
    Neutral,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stability::Unstable => "unstable",
            Stability::Stable => "stable",
            Stability::Neutral => "neutral",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenvalue {
    pub root: CertifiedRoot,
    /// 1-based grade.
    pub grade: usize,
    pub multiplicity: usize,
    pub stability: Stability,
    /// `|λ|^(1/grade)`
    pub escape_speed: f64,
}

/// Position of an eigenvalue: 1-based grade and index within the grade.
pub type EigenRef = (usize, usize);

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    /// Per grade, sorted by modulus then argument.
    pub grades: Vec<Vec<Eigenvalue>>,
    pub simple_spectrum: bool,
    pub hyperbolic: bool,
    /// A pair of eigenvalues whose moduli could not be separated, or a
    /// repeated eigenvalue reported against itself.
    pub tie: Option<(EigenRef, EigenRef)>,
}

impl SpectrumReport {
    pub fn eigenvalues(&self) -> impl Iterator<Item = &Eigenvalue> {
        self.grades.iter().flatten()
    }

    pub fn get(&self, (g, i): EigenRef) -> &Eigenvalue {
        &self.grades[g - 1][i]
    }

    /// All eigenvalues ordered by decreasing modulus.
    pub fn by_modulus_desc(&self) -> Vec<&Eigenvalue> {
        let mut all: Vec<&Eigenvalue> = self.eigenvalues().collect();
        all.sort_by(|a, b| {
            b.root
                .compare_modulus(&a.root)
                .unwrap_or_else(|| b.root.modulus().total_cmp(&a.root.modulus()))
        });
        all
    }
}

pub fn compute_spectrum(grading: &GradingReport, cfg: RootConfig) -> Result<SpectrumReport> {
    if cfg.tol.partial_cmp(&0.0) != Some(Ordering::Greater) {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    // Yun factors are pairwise coprime, so multiplicities are exact per factor.
    let mut factors = Vec::new();
    let mut owner = Vec::new();
    let mut repeated = false;
    let mut unit_roots = 0;
    for (g, p) in grading.grade_polys.iter().enumerate() {
        unit_roots += unit_circle_root_count(p)?;
        for (f, m) in p.squarefree_decomposition() {
            repeated |= m > 1;
            factors.push(f);
            owner.push((g, m));
        }
    }
    let hyperbolic = unit_roots == 0;
    let sep = separate_moduli(&factors, cfg, true)?;
    if hyperbolic {
        if let Some((f, _)) = sep.unit_undecided {
            return Err(Error::HyperbolicityUndecided(format!(
                "an eigenvalue of grade {} cannot be separated from the unit circle",
                owner[f].0 + 1
            )));
        }
    }
    let mut tagged: Vec<Vec<(Eigenvalue, (usize, usize))>> = vec![Vec::new(); grading.grade_polys.len()];
    for (f, roots) in sep.roots.into_iter().enumerate() {
        let (g, multiplicity) = owner[f];
        let grade = g + 1;
        for (r, root) in roots.into_iter().enumerate() {
            let stability = match root.compare_unit() {
                Some(Ordering::Greater) => Stability::Unstable,
                Some(Ordering::Less) => Stability::Stable,
                _ => Stability::Neutral,
            };
            let escape_speed = root.modulus().powf(1.0 / grade as f64);
            tagged[g].push((Eigenvalue { root, grade, multiplicity, stability, escape_speed }, (f, r)));
        }
    }
    for list in &mut tagged {
        list.sort_by(|(a, _), (b, _)| {
            a.root
                .modulus_sq()
                .cmp(&b.root.modulus_sq())
                .then(a.root.value.arg().total_cmp(&b.root.value.arg()))
        });
    }
    let locate = |key: (usize, usize)| -> EigenRef {
        let g = owner[key.0].0;
        (g + 1, tagged[g].iter().position(|(_, k)| *k == key).expect("root present"))
    };
    let tie = match sep.tie {
        Some((a, b)) => Some((locate(a), locate(b))),
        None if repeated => tagged
            .iter()
            .flatten()
            .find(|(e, _)| e.multiplicity > 1)
            .map(|(_, k)| (locate(*k), locate(*k))),
        None => None,
    };
    let grades = tagged.into_iter().map(|l| l.into_iter().map(|(e, _)| e).collect()).collect();
    Ok(SpectrumReport { simple_spectrum: tie.is_none(), hyperbolic, tie, grades })
}
