use super::automorphism::induced_on_quotient;
use super::spectrum::{EigenRef, Stability};
use super::{compute_grading, compute_spectrum, Automorphism, GradingReport, SpectrumReport};
use crate::rational::{charpoly, factor_over_q, Factorization, RatPoly, RootConfig};
use crate::{Error, Result};
use std::cmp::Ordering;
use std::fmt;

/// A pair of eigenvalues out of order: `lower` sits in a lower grade than
/// `higher` but is not dominated by it.
#[derive(Clone, Debug, PartialEq)]
pub struct SortWitness {
    pub stability: Stability,
    pub lower: EigenRef,
    pub higher: EigenRef,
    pub lower_modulus: f64,
    pub higher_modulus: f64,
}

impl fmt::Display for SortWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (relation, what) = match self.stability {
            Stability::Stable => ("does not contract more strongly than", "stable"),
            _ => ("does not expand faster than", "unstable"),
        };
        write!(
            f,
            "{what} spectrum unsorted: grade {} eigenvalue of modulus {:.6e} {relation} grade {} eigenvalue of modulus {:.6e}",
            self.higher.0, self.higher_modulus, self.lower.0, self.lower_modulus
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SortedReport {
    pub sorted_unstable: bool,
    pub sorted_stable: bool,
    pub witnesses: Vec<SortWitness>,
}

/// Across grades `k < j`, unstable moduli in grade `j` must exceed those in
/// grade `k`, and stable moduli in grade `j` must lie below those in grade
/// `k`. No ordering is imposed within a grade.
pub fn check_sorted(spectrum: &SpectrumReport) -> SortedReport {
    let mut witnesses = Vec::new();
    for stability in [Stability::Unstable, Stability::Stable] {
        let want = if stability == Stability::Unstable { Ordering::Greater } else { Ordering::Less };
        'pairs: for (k, lower) in spectrum.grades.iter().enumerate() {
            for (j, higher) in spectrum.grades.iter().enumerate().skip(k + 1) {
                for (vi, v) in lower.iter().enumerate().filter(|(_, e)| e.stability == stability) {
                    for (wi, w) in higher.iter().enumerate().filter(|(_, e)| e.stability == stability) {
                        if w.root.compare_modulus(&v.root) != Some(want) {
                            witnesses.push(SortWitness {
                                stability,
                                lower: (k + 1, vi),
                                higher: (j + 1, wi),
                                lower_modulus: v.root.modulus(),
                                higher_modulus: w.root.modulus(),
                            });
                            continue 'pairs;
                        }
                    }
                }
            }
        }
    }
    SortedReport {
        sorted_unstable: !witnesses.iter().any(|w| w.stability == Stability::Unstable),
        sorted_stable: !witnesses.iter().any(|w| w.stability == Stability::Stable),
        witnesses,
    }
}

/// Induced action on `N_k / [N_k, N_k]` for one term of the lower central series.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientAction {
    /// 1-based index `k`.
    pub k: usize,
    pub dim: usize,
    pub charpoly: RatPoly,
    pub factorization: Factorization,
    pub irreducible: bool,
    /// Induced matrix is integral in the quotient basis.
    pub integral: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IrreducibilityReport {
    pub quotients: Vec<QuotientAction>,
    pub warnings: Vec<String>,
}

impl IrreducibilityReport {
    pub fn flags(&self) -> Vec<bool> {
        self.quotients.iter().map(|q| q.irreducible).collect()
    }
}

pub fn check_irreducible(a: &Automorphism, grading: &GradingReport) -> Result<IrreducibilityReport> {
    let alg = a.algebra();
    let mut quotients = Vec::new();
    let mut warnings = Vec::new();
    for (i, term) in grading.lcs.iter().enumerate() {
        let derived = alg.derived_subalgebra(term)?;
        let induced = induced_on_quotient(a.matrix(), term, &derived)?;
        let poly = charpoly(&induced)?;
        let factorization = factor_over_q(&poly)?;
        let integral = induced.is_integral();
        if !integral {
            warnings.push(format!("induced action on N_{0}/[N_{0},N_{0}] is not integral", i + 1));
        }
        quotients.push(QuotientAction {
            k: i + 1,
            dim: induced.rows(),
            irreducible: factorization.is_irreducible(),
            charpoly: poly,
            factorization,
            integral,
        });
    }
    Ok(IrreducibilityReport { quotients, warnings })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Rigid,
    NotRigid,
    Inapplicable,
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Rigid => "RIGID",
            Verdict::NotRigid => "NOT RIGID",
            Verdict::Inapplicable => "INAPPLICABLE",
            Verdict::Undecided => "UNDECIDED",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RigidityVerdict {
    pub simple_spectrum: bool,
    pub hyperbolic: bool,
    pub sorted_unstable: bool,
    pub sorted_stable: bool,
    pub irreducible_per_grade: Vec<bool>,
    pub verdict: Verdict,
    pub witnesses: Vec<String>,
    pub grading: Option<GradingReport>,
    pub spectrum: Option<SpectrumReport>,
    pub sorted: Option<SortedReport>,
    pub irreducibility: Option<IrreducibilityReport>,
}

/// Runs the full pipeline: grading, spectrum, sortedness, irreducibility.
pub fn rigidity_verdict(a: &Automorphism, cfg: RootConfig) -> RigidityVerdict {
    let mut v = RigidityVerdict {
        simple_spectrum: false,
        hyperbolic: false,
        sorted_unstable: false,
        sorted_stable: false,
        irreducible_per_grade: Vec::new(),
        verdict: Verdict::Undecided,
        witnesses: Vec::new(),
        grading: None,
        spectrum: None,
        sorted: None,
        irreducibility: None,
    };
    let grading = match compute_grading(a) {
        Ok(g) => g,
        Err(Error::GradingNotSplittable(why)) => {
            // A factor shared across the filtration is a repeated eigenvalue.
            v.hyperbolic = charpoly(a.matrix())
                .and_then(|p| crate::rational::unit_circle_root_count(&p))
                .map(|c| c == 0)
                .unwrap_or(false);
            v.witnesses.push(format!("spectrum is not simple: {why}"));
            v.verdict = Verdict::Inapplicable;
            return v;
        }
        Err(e) => {
            v.witnesses.push(e.to_string());
            return v;
        }
    };
    match check_irreducible(a, &grading) {
        Ok(irr) => {
            v.irreducible_per_grade = irr.flags();
            for q in irr.quotients.iter().filter(|q| !q.irreducible) {
                let factors: Vec<String> = q
                    .factorization
                    .factors
                    .iter()
                    .map(|(f, m)| if *m > 1 { format!("({f})^{m}") } else { format!("({f})") })
                    .collect();
                v.witnesses.push(format!(
                    "action on N_{0}/[N_{0},N_{0}] is reducible: {1}",
                    q.k,
                    factors.join(" ")
                ));
            }
            v.irreducibility = Some(irr);
        }
        Err(e) => v.witnesses.push(e.to_string()),
    }
    let spectrum = match compute_spectrum(&grading, cfg) {
        Ok(s) => s,
        Err(e) => {
            v.witnesses.push(e.to_string());
            v.grading = Some(grading);
            return v;
        }
    };
    v.simple_spectrum = spectrum.simple_spectrum;
    v.hyperbolic = spectrum.hyperbolic;
    if let Some((p, q)) = spectrum.tie {
        let (x, y) = (spectrum.get(p), spectrum.get(q));
        if p == q {
            v.witnesses.push(format!(
                "spectrum is not simple: eigenvalue {:.6} of grade {} has multiplicity {}",
                x.root.value, p.0, x.multiplicity
            ));
        } else {
            v.witnesses.push(format!(
                "spectrum is not simple: moduli of {:.6} (grade {}) and {:.6} (grade {}) coincide",
                x.root.value, p.0, y.root.value, q.0
            ));
        }
    }
    if !spectrum.hyperbolic {
        v.witnesses.push("not hyperbolic: an eigenvalue has modulus 1".into());
    }
    if spectrum.simple_spectrum && spectrum.hyperbolic {
        let sorted = check_sorted(&spectrum);
        v.sorted_unstable = sorted.sorted_unstable;
        v.sorted_stable = sorted.sorted_stable;
        v.witnesses.extend(sorted.witnesses.iter().map(ToString::to_string));
        v.sorted = Some(sorted);
    }
    v.verdict = if !(v.simple_spectrum && v.hyperbolic) {
        Verdict::Inapplicable
    } else if v.irreducibility.is_none() {
        Verdict::Undecided
    } else if v.sorted_unstable && v.sorted_stable && v.irreducible_per_grade.iter().all(|&b| b) {
        Verdict::Rigid
    } else {
        Verdict::NotRigid
    };
    v.grading = Some(grading);
    v.spectrum = Some(spectrum);
    v
}
