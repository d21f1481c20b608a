//! Machine-readable reports. Every struct rejects unknown fields so that a
//! report parses back only into the schema it was written with.

use nilrigid::analysis::{
    AutomorphismCheck, Eigenvalue, GradingReport, IrreducibilityReport, RigidityVerdict, SortWitness, SortedReport,
};
use nilrigid::lie::{LieAlgebra, ValidationReport};
use nilrigid::rational::{format_rational, CertifiedRoot, RatPoly};
use serde::{Deserialize, Serialize};

pub const VERSION: &str = concat!("nilrigid ", env!("CARGO_PKG_VERSION"));

/// A number with its certification radius; `decimal` shows only the digits
/// the radius supports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certified {
    pub value: f64,
    pub radius: f64,
    pub decimal: String,
}

impl Certified {
    pub fn new(value: f64, radius: f64) -> Self {
        Self { value, radius, decimal: decimal(value, radius) }
    }
}

/// Significant digits down to the radius, at least 6 and at most 17.
fn decimal(value: f64, radius: f64) -> String {
    if value == 0.0 {
        return "0".into();
    }
    let rel = if radius > 0.0 { radius / value.abs() } else { 1e-17 };
    let digits = (-rel.log10()).ceil().clamp(6.0, 17.0) as usize;
    format!("{:.*e}", digits - 1, value)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexValue {
    pub re: Certified,
    pub im: Certified,
}

impl ComplexValue {
    pub fn from_root(r: &CertifiedRoot) -> Self {
        let radius = r.value_radius();
        Self { re: Certified::new(r.value.re, radius), im: Certified::new(r.value.im, radius) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraValidation {
    pub dim: usize,
    pub antisymmetric: bool,
    pub jacobi: bool,
    pub nilpotency_step: Option<usize>,
    pub first_violation: Option<String>,
}

impl AlgebraValidation {
    pub fn new(alg: &LieAlgebra, v: &ValidationReport) -> Self {
        Self {
            dim: alg.dim(),
            antisymmetric: v.antisymmetric,
            jacobi: v.jacobi_violations.is_empty(),
            nilpotency_step: v.nilpotency_step,
            first_violation: v.first_violation.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismValidation {
    pub determinant: String,
    pub invertible: bool,
    pub bracket_preserving: bool,
    /// Basis pair `[X, Y]` with `A[X, Y] != [AX, AY]`.
    pub bracket_violation: Option<[String; 2]>,
    pub integral: bool,
    pub unimodular: bool,
    pub lattice_preserving: bool,
}

impl AutomorphismValidation {
    pub fn new(alg: &LieAlgebra, c: &AutomorphismCheck) -> Self {
        let names = alg.basis_names();
        Self {
            determinant: format_rational(&c.determinant),
            invertible: c.invertible,
            bracket_preserving: c.bracket_preserving(),
            bracket_violation: c.bracket_violation.map(|(i, j)| [names[i].clone(), names[j].clone()]),
            integral: c.integral,
            unimodular: c.unimodular,
            lattice_preserving: c.lattice_preserving(),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.invertible && self.bracket_preserving && self.lattice_preserving
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidationBlock {
    pub algebra: AlgebraValidation,
    pub automorphism: Option<AutomorphismValidation>,
    pub valid: bool,
}

/// Polynomial with ascending rational coefficients and a readable form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyReport {
    pub coefficients: Vec<String>,
    pub text: String,
}

impl PolyReport {
    pub fn new(p: &RatPoly) -> Self {
        Self { coefficients: p.coeffs().iter().map(format_rational).collect(), text: p.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradingBlock {
    pub lcs_dims: Vec<usize>,
    pub grade_dims: Vec<usize>,
    pub grade_polys: Vec<PolyReport>,
    pub carnot_verified: bool,
}

impl GradingBlock {
    pub fn new(g: &GradingReport) -> Self {
        let mut lcs_dims: Vec<usize> = g.lcs.iter().map(|s| s.dim()).collect();
        lcs_dims.push(0);
        Self {
            lcs_dims,
            grade_dims: g.dims(),
            grade_polys: g.grade_polys.iter().map(PolyReport::new).collect(),
            carnot_verified: g.carnot_verified,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EigenvalueReport {
    pub value: ComplexValue,
    pub modulus: Certified,
    pub grade: usize,
    pub multiplicity: usize,
    pub stability: String,
    /// `|λ|^{1/grade}`.
    pub escape_speed: f64,
}

impl EigenvalueReport {
    pub fn new(e: &Eigenvalue) -> Self {
        Self {
            value: ComplexValue::from_root(&e.root),
            modulus: Certified::new(e.root.modulus(), e.root.value_radius()),
            grade: e.grade,
            multiplicity: e.multiplicity,
            stability: e.stability.to_string(),
            escape_speed: e.escape_speed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EigenRefReport {
    pub grade: usize,
    pub index: usize,
    pub modulus: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SortWitnessReport {
    pub stability: String,
    pub lower: EigenRefReport,
    pub higher: EigenRefReport,
    pub text: String,
}

impl SortWitnessReport {
    pub fn new(w: &SortWitness) -> Self {
        Self {
            stability: w.stability.to_string(),
            lower: EigenRefReport { grade: w.lower.0, index: w.lower.1, modulus: w.lower_modulus },
            higher: EigenRefReport { grade: w.higher.0, index: w.higher.1, modulus: w.higher_modulus },
            text: w.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SortednessBlock {
    pub sorted_unstable: bool,
    pub sorted_stable: bool,
    pub witnesses: Vec<SortWitnessReport>,
}

impl SortednessBlock {
    pub fn new(s: &SortedReport) -> Self {
        Self {
            sorted_unstable: s.sorted_unstable,
            sorted_stable: s.sorted_stable,
            witnesses: s.witnesses.iter().map(SortWitnessReport::new).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorReport {
    pub factor: PolyReport,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientReport {
    /// Action on `N_k / [N_k, N_k]`.
    pub k: usize,
    pub dim: usize,
    pub charpoly: PolyReport,
    pub factors: Vec<FactorReport>,
    pub irreducible: bool,
    pub integral: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrreducibilityBlock {
    pub flags: Vec<bool>,
    pub quotients: Vec<QuotientReport>,
    pub warnings: Vec<String>,
}

impl IrreducibilityBlock {
    pub fn new(r: &IrreducibilityReport) -> Self {
        Self {
            flags: r.flags(),
            quotients: r
                .quotients
                .iter()
                .map(|q| QuotientReport {
                    k: q.k,
                    dim: q.dim,
                    charpoly: PolyReport::new(&q.charpoly),
                    factors: q
                        .factorization
                        .factors
                        .iter()
                        .map(|(f, m)| FactorReport { factor: PolyReport::new(f), multiplicity: *m })
                        .collect(),
                    irreducible: q.irreducible,
                    integral: q.integral,
                })
                .collect(),
            warnings: r.warnings.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumBlock {
    pub simple_spectrum: bool,
    pub hyperbolic: bool,
    pub eigenvalues: Vec<EigenvalueReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradingDocument {
    pub version: String,
    pub input: String,
    pub grading: GradingBlock,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidateDocument {
    pub version: String,
    pub input: String,
    pub validation: ValidationBlock,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyzeDocument {
    pub version: String,
    pub input: String,
    pub grading: GradingBlock,
    pub spectrum: SpectrumBlock,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictReport {
    pub version: String,
    pub input: String,
    pub validation: ValidationBlock,
    pub grading: Option<GradingBlock>,
    pub spectrum: Option<SpectrumBlock>,
    pub sortedness: Option<SortednessBlock>,
    pub irreducibility: Option<IrreducibilityBlock>,
    pub simple_spectrum: bool,
    pub hyperbolic: bool,
    pub sorted_unstable: bool,
    pub sorted_stable: bool,
    pub irreducible_per_grade: Vec<bool>,
    pub verdict: String,
    pub witnesses: Vec<String>,
}

impl VerdictReport {
    pub fn new(input: &str, validation: ValidationBlock, v: &RigidityVerdict) -> Self {
        Self {
            version: VERSION.into(),
            input: input.into(),
            validation,
            grading: v.grading.as_ref().map(GradingBlock::new),
            spectrum: v.spectrum.as_ref().map(|s| SpectrumBlock {
                simple_spectrum: s.simple_spectrum,
                hyperbolic: s.hyperbolic,
                eigenvalues: s.eigenvalues().map(EigenvalueReport::new).collect(),
            }),
            sortedness: v.sorted.as_ref().map(SortednessBlock::new),
            irreducibility: v.irreducibility.as_ref().map(IrreducibilityBlock::new),
            simple_spectrum: v.simple_spectrum,
            hyperbolic: v.hyperbolic,
            sorted_unstable: v.sorted_unstable,
            sorted_stable: v.sorted_stable,
            irreducible_per_grade: v.irreducible_per_grade.clone(),
            verdict: v.verdict.to_string(),
            witnesses: v.witnesses.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalingEntry {
    /// 1-based index among unstable eigenvalues by increasing modulus.
    pub index: usize,
    pub eigenvalue: f64,
    pub distances: Vec<f64>,
    pub expected: Vec<f64>,
    pub max_relative_error: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EscapeEntry {
    pub label: String,
    /// Coefficients in the unstable eigenbasis.
    pub coefficients: Vec<f64>,
    pub final_rate: f64,
    pub fitted_rate: f64,
    pub dominant_log_speed: f64,
    pub slowest_log_speed: f64,
    pub in_slow_subgroup: bool,
    pub converged_to_dominant: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryDocument {
    pub version: String,
    pub input: String,
    pub scaling: Vec<ScalingEntry>,
    pub escape: Vec<EscapeEntry>,
    /// Largest `|[v_s, v_u]|` over real stable/unstable eigenvector pairs.
    pub stable_unstable_bracket_defect: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShearDataReport {
    pub b: Vec<Vec<String>>,
    pub lambda_w: f64,
    pub lambda_u: f64,
    pub u: Vec<f64>,
    pub w: Vec<f64>,
    pub inverted: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexNumber {
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerturbDocument {
    pub version: String,
    pub input: String,
    pub shear_data: Option<ShearDataReport>,
    /// Frequency `m` of `φ(x) = cos 2π⟨m, x⟩`.
    pub mode: Option<Vec<i64>>,
    #[serde(rename = "K")]
    pub k: usize,
    pub left: Option<ComplexNumber>,
    pub right: Option<ComplexNumber>,
    pub witness: bool,
}
