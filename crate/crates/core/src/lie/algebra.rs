use crate::par;
use crate::rational::{RatMatrix, Rational, Scalar, Subspace};
use crate::{Error, Result};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Finite-dimensional Lie algebra over Q. Brackets of basis vectors are
/// stored for `i < j` only; the opposite order is the negation.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    names: Vec<String>,
    structure: BTreeMap<(usize, usize), Vec<Rational>>,
    /// Nonzero structure constants `(i, j, k, c)` with `[e_i, e_j] ∋ c e_k`, `i < j`.
    terms: Vec<(usize, usize, usize, Rational)>,
}

impl LieAlgebra {
    /// Builds an algebra from basis names and brackets `[e_i, e_j] = v`.
    /// Pairs may be given in either order; `i == j`, out-of-range indices,
    /// wrong vector lengths and conflicting duplicates are rejected.
    pub fn new(
        names: Vec<String>,
        brackets: impl IntoIterator<Item = (usize, usize, Vec<Rational>)>,
    ) -> Result<Self> {
        let n = names.len();
        let mut structure = BTreeMap::new();
        for (i, j, v) in brackets {
            if i >= n || j >= n {
                return Err(Error::Dimension(format!("bracket index ({i}, {j}) out of range")));
            }
            if v.len() != n {
                return Err(Error::Dimension(format!(
                    "bracket [{}, {}] has {} coordinates, expected {n}",
                    names[i],
                    names[j],
                    v.len()
                )));
            }
            if i == j {
                if v.iter().all(Zero::is_zero) {
                    continue;
                }
                return Err(Error::Domain(format!("[{0}, {0}] must vanish", names[i])));
            }
            let (key, val) = if i < j { ((i, j), v) } else { ((j, i), v.into_iter().map(|c| -c).collect()) };
            if let Some(prev) = structure.get(&key) {
                if *prev != val {
                    return Err(Error::Domain(format!(
                        "conflicting brackets for [{}, {}]",
                        names[key.0], names[key.1]
                    )));
                }
            }
            if val.iter().any(|c| !c.is_zero()) {
                structure.insert(key, val);
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for name in &names {
            if !seen.insert(name) {
                return Err(Error::Domain(format!("duplicate basis name {name:?}")));
            }
        }
        let terms = structure
            .iter()
            .flat_map(|(&(i, j), v)| {
                v.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(move |(k, c)| (i, j, k, c.clone()))
            })
            .collect();
        Ok(Self { names, structure, terms })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Stored brackets `(i, j, [e_i, e_j])` with `i < j`, nonzero only.
    pub fn brackets(&self) -> impl Iterator<Item = (usize, usize, &[Rational])> {
        self.structure.iter().map(|(&(i, j), v)| (i, j, v.as_slice()))
    }

    /// `[e_i, e_j]`
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Rational> {
        let n = self.dim();
        match i.cmp(&j) {
            std::cmp::Ordering::Less => {
                self.structure.get(&(i, j)).cloned().unwrap_or_else(|| vec![Rational::zero(); n])
            }
            std::cmp::Ordering::Greater => self
                .structure
                .get(&(j, i))
                .map(|v| v.iter().map(|c| -c).collect())
                .unwrap_or_else(|| vec![Rational::zero(); n]),
            std::cmp::Ordering::Equal => vec![Rational::zero(); n],
        }
    }

    /// Bilinear extension of the structure constants on coordinate vectors.
    pub fn bracket_coords<F: Scalar>(&self, x: &[F], y: &[F]) -> Vec<F> {
        let n = self.dim();
        assert!(x.len() == n && y.len() == n, "coordinate length must equal the dimension");
        let mut out = vec![F::zero(); n];
        for (i, j, k, c) in &self.terms {
            let (xi, xj, yi, yj) = (&x[*i], &x[*j], &y[*i], &y[*j]);
            let w = xi.clone() * yj.clone() - xj.clone() * yi.clone();
            if !w.is_zero() {
                out[*k] = out[*k].clone() + F::from_rational(c) * w;
            }
        }
        out
    }

    /// Span of all `[a, b]` for `a` in `s`, `b` in `t`.
    pub fn bracket_subspaces(&self, s: &Subspace, t: &Subspace) -> Result<Subspace> {
        let n = self.dim();
        if s.ambient_dim() != n || t.ambient_dim() != n {
            return Err(Error::Dimension("subspace ambient must match algebra".into()));
        }
        let mut rows = Vec::new();
        for a in s.basis() {
            for b in t.basis() {
                let v = self.bracket_coords(a, b);
                if v.iter().any(|c| !c.is_zero()) {
                    rows.push(v);
                }
            }
        }
        Subspace::span(n, &rows)
    }

    /// Validation of antisymmetry (structural), the Jacobi identity on all
    /// basis triples, and nilpotency.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let triples: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
            .collect();
        let residuals = par::map(&triples, |&(i, j, k)| {
            let r = self.jacobi_residual(i, j, k);
            (!r.iter().all(Zero::is_zero)).then_some(((i, j, k), r))
        });
        let jacobi_violations: Vec<_> = residuals.into_iter().flatten().collect();
        let lcs = if jacobi_violations.is_empty() { self.lower_central_series().ok() } else { None };
        let nilpotency_step = lcs.as_ref().map(|l| l.len() - 1);
        let first_violation = jacobi_violations.first().map(|((i, j, k), _)| {
            format!(
                "Jacobi identity fails on ({}, {}, {})",
                self.names[*i], self.names[*j], self.names[*k]
            )
        });
        let first_violation = first_violation.or_else(|| {
            (jacobi_violations.is_empty() && nilpotency_step.is_none())
                .then(|| "lower central series does not reach 0".to_string())
        });
        ValidationReport {
            antisymmetric: true,
            jacobi_violations,
            nilpotency_step,
            first_violation,
        }
    }

    /// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]` on basis vectors.
    pub fn jacobi_residual(&self, i: usize, j: usize, k: usize) -> Vec<Rational> {
        let e = |a| crate::rational::unit_vector(self.dim(), a);
        let (x, y, z) = (e(i), e(j), e(k));
        let t1 = self.bracket_coords(&x, &self.basis_bracket(j, k));
        let t2 = self.bracket_coords(&y, &self.basis_bracket(k, i));
        let t3 = self.bracket_coords(&z, &self.basis_bracket(i, j));
        t1.iter().zip(&t2).zip(&t3).map(|((a, b), c)| a + b + c).collect()
    }

    /// `n^(1) = n`, `n^(i+1) = [n, n^(i)]`, ending with the zero subspace.
    pub fn lower_central_series(&self) -> Result<Vec<Subspace>> {
        let n = self.dim();
        let whole = Subspace::full(n);
        let mut series = vec![whole.clone()];
        while !series.last().unwrap().is_zero() {
            if series.len() > n {
                return Err(Error::NotNilpotent("lower central series does not reach 0".into()));
            }
            let next = self.bracket_subspaces(&whole, series.last().unwrap())?;
            if next == *series.last().unwrap() {
                return Err(Error::NotNilpotent(format!(
                    "lower central series stabilises at dimension {}",
                    next.dim()
                )));
            }
            series.push(next);
        }
        Ok(series)
    }

    /// Nilpotency step (number of nonzero lower central series terms).
    pub fn step(&self) -> Result<usize> {
        Ok(self.lower_central_series()?.len() - 1)
    }

    pub fn center(&self) -> Subspace {
        let n = self.dim();
        // x is central iff [x, e_j] = 0 for all j: stack ad(e_j) as rows.
        let mut rows = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|i| self.basis_bracket(i, j)[k].clone()).collect::<Vec<_>>());
            }
        }
        let m = RatMatrix::from_rows(&rows, n).expect("consistent rows");
        Subspace::kernel(&m)
    }

    /// `[s, s]` for a subalgebra `s`.
    pub fn derived_subalgebra(&self, s: &Subspace) -> Result<Subspace> {
        self.bracket_subspaces(s, s)
    }

    pub fn is_ideal(&self, s: &Subspace) -> Result<bool> {
        Ok(s.contains_subspace(&self.bracket_subspaces(&Subspace::full(self.dim()), s)?))
    }

    /// Quotient by an ideal, with structure constants relative to the
    /// representatives chosen by [`Subspace::quotient_basis`].
    pub fn quotient(&self, ideal: &Subspace) -> Result<(LieAlgebra, RatMatrix)> {
        if !self.is_ideal(ideal)? {
            return Err(Error::NotIdeal("[n, I] is not contained in I".into()));
        }
        let (reps, proj) = Subspace::quotient_basis(&Subspace::full(self.dim()), ideal)?;
        let names = reps
            .iter()
            .enumerate()
            .map(|(a, r)| {
                let support: Vec<usize> = (0..r.len()).filter(|&i| !r[i].is_zero()).collect();
                match support.as_slice() {
                    [i] if r[*i] == num_traits::One::one() => self.names[*i].clone(),
                    _ => format!("q{}", a + 1),
                }
            })
            .collect();
        let mut brackets = Vec::new();
        for a in 0..reps.len() {
            for b in a + 1..reps.len() {
                let v = proj.mul_vec(&self.bracket_coords(&reps[a], &reps[b]));
                brackets.push((a, b, v));
            }
        }
        Ok((LieAlgebra::new(names, brackets)?, proj))
    }
}

/// Outcome of [`LieAlgebra::validate`].
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub antisymmetric: bool,
    /// Basis triples `(i, j, k)`, `i < j < k`, with nonzero Jacobi residual.
    pub jacobi_violations: Vec<((usize, usize, usize), Vec<Rational>)>,
    pub nilpotency_step: Option<usize>,
    pub first_violation: Option<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.antisymmetric && self.jacobi_violations.is_empty() && self.nilpotency_step.is_some()
    }
}

/// Element of a specific algebra, with exact coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    algebra: Arc<LieAlgebra>,
    coords: Vec<Rational>,
}

impl AlgebraElement {
    pub fn new(algebra: Arc<LieAlgebra>, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != algebra.dim() {
            return Err(Error::Dimension(format!(
                "{} coordinates for an algebra of dimension {}",
                coords.len(),
                algebra.dim()
            )));
        }
        Ok(Self { algebra, coords })
    }

    pub fn basis(algebra: Arc<LieAlgebra>, i: usize) -> Self {
        let n = algebra.dim();
        Self { algebra, coords: crate::rational::unit_vector(n, i) }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::Domain("elements belong to different algebras".into()))
        }
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        let coords = self.algebra.bracket_coords(&self.coords, &other.coords);
        Ok(Self { algebra: self.algebra.clone(), coords })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(Self { algebra: self.algebra.clone(), coords })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self { algebra: self.algebra.clone(), coords: self.coords.iter().map(|c| c * s).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn dims(alg: &LieAlgebra) -> Vec<usize> {
        alg.lower_central_series().unwrap().iter().map(Subspace::dim).collect()
    }

    #[test]
    fn builders_validate() {
        let cases = [
            (abelian(4), 1),
            (heisenberg(), 2),
            (free32_algebra(), 2),
            (smale_algebra(), 2),
            (direct_sum(&heisenberg(), &heisenberg()), 2),
            (strict_upper_triangular(4), 3),
            (strict_upper_triangular(6), 5),
        ];
        for (alg, step) in cases {
            let report = alg.validate();
            assert!(report.is_valid(), "{report:?}");
            assert_eq!(report.nilpotency_step, Some(step));
        }
    }

    #[test]
    fn corrupted_heisenberg_fails_jacobi() {
        let h = heisenberg();
        let mut br: Vec<_> = h.brackets().map(|(i, j, v)| (i, j, v.to_vec())).collect();
        br.push((0, 2, vec![int(1), int(0), int(0)]));
        let bad = LieAlgebra::new(h.basis_names().to_vec(), br).unwrap();
        let report = bad.validate();
        assert!(!report.is_valid());
        assert_eq!(report.jacobi_violations.len(), 1);
        assert!(report.first_violation.unwrap().contains("Jacobi"));
    }

    #[test]
    fn non_nilpotent_detected() {
        // [x, y] = y is solvable but not nilpotent
        let alg = LieAlgebra::new(vec!["x".into(), "y".into()], [(0, 1, vec![int(0), int(1)])]).unwrap();
        let report = alg.validate();
        assert!(report.jacobi_violations.is_empty());
        assert_eq!(report.nilpotency_step, None);
        assert!(matches!(alg.lower_central_series(), Err(Error::NotNilpotent(_))));
    }

    #[test]
    fn rejects_malformed_brackets() {
        let n = vec!["x".to_string(), "y".to_string()];
        assert!(LieAlgebra::new(n.clone(), [(0, 2, vec![int(0), int(0)])]).is_err());
        assert!(LieAlgebra::new(n.clone(), [(0, 1, vec![int(0)])]).is_err());
        assert!(LieAlgebra::new(n.clone(), [(0, 0, vec![int(1), int(0)])]).is_err());
        assert!(LieAlgebra::new(
            n.clone(),
            [(0, 1, vec![int(1), int(0)]), (1, 0, vec![int(1), int(0)])]
        )
        .is_err());
        // consistent reversed duplicate is fine
        assert!(LieAlgebra::new(n, [(0, 1, vec![int(1), int(0)]), (1, 0, vec![int(-1), int(0)])]).is_ok());
        assert!(LieAlgebra::new(vec!["x".into(), "x".into()], []).is_err());
    }

    #[test]
    fn heisenberg_brackets() {
        let h = Arc::new(heisenberg());
        let x = AlgebraElement::basis(h.clone(), 0);
        let y = AlgebraElement::basis(h.clone(), 1);
        assert_eq!(x.bracket(&y).unwrap(), AlgebraElement::basis(h.clone(), 2));
        assert!(x.bracket(&x).unwrap().is_zero());
        let other = Arc::new(abelian(3));
        assert!(x.bracket(&AlgebraElement::basis(other, 0)).is_err());
        assert!(AlgebraElement::new(h, vec![int(1)]).is_err());
    }

    #[test]
    fn lower_central_series_dims() {
        assert_eq!(dims(&heisenberg()), vec![3, 1, 0]);
        assert_eq!(dims(&free32_algebra()), vec![6, 3, 0]);
        assert_eq!(dims(&smale_algebra()), vec![6, 2, 0]);
        assert_eq!(dims(&abelian(4)), vec![4, 0]);
        assert_eq!(dims(&strict_upper_triangular(4)), vec![6, 3, 1, 0]);
    }

    #[test]
    fn center_and_quotients() {
        let h = heisenberg();
        let z = h.center();
        assert_eq!(z, Subspace::span(3, &[vec![int(0), int(0), int(1)]]).unwrap());
        let (q, proj) = h.quotient(&z).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.step().unwrap(), 1);
        assert_eq!(proj.rows(), 2);
        assert_eq!(q.basis_names(), &["X".to_string(), "Y".to_string()]);

        let f = free32_algebra();
        let derived = f.derived_subalgebra(&Subspace::full(6)).unwrap();
        assert_eq!(derived.dim(), 3);
        assert_eq!(derived, f.center());

        let s = smale_algebra();
        assert_eq!(s.dim(), 6);
        assert_eq!(s.center().dim(), 2);

        assert_eq!(direct_sum(&abelian(2), &abelian(3)).dim(), 5);
        let hh = direct_sum(&h, &h);
        assert_eq!(hh.basis_names()[3], "X'");
        assert_eq!(hh.center().dim(), 2);
    }

    #[test]
    fn quotient_rejects_non_ideal() {
        let h = heisenberg();
        let x = Subspace::span(3, &[vec![int(1), int(0), int(0)]]).unwrap();
        assert!(matches!(h.quotient(&x), Err(Error::NotIdeal(_))));
    }

    #[test]
    fn quotients_of_lcs_terms_validate() {
        for alg in [free32_algebra(), smale_algebra(), strict_upper_triangular(5)] {
            let lcs = alg.lower_central_series().unwrap();
            for term in &lcs {
                assert!(alg.is_ideal(term).unwrap());
                let (q, _) = alg.quotient(term).unwrap();
                assert!(q.validate().is_valid());
            }
            for w in lcs.windows(2) {
                let next = alg.bracket_subspaces(&Subspace::full(alg.dim()), &w[0]).unwrap();
                assert_eq!(next, w[1]);
            }
        }
    }

    #[test]
    fn free_nilpotent_limits() {
        assert!(matches!(free_nilpotent(3, 3), Err(Error::Unimplemented(_))));
        assert!(free_nilpotent(1, 2).is_err());
        let f4 = free_nilpotent(4, 2).unwrap();
        assert_eq!(f4.dim(), 10);
        assert!(f4.validate().is_valid());
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-9i64..10, 1i64..5).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn bilinear_and_antisymmetric(
            x in proptest::collection::vec(small_rat(), 6),
            y in proptest::collection::vec(small_rat(), 6),
            z in proptest::collection::vec(small_rat(), 6),
        ) {
            let alg = smale_algebra();
            let xy: Vec<Rational> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
            let lhs = alg.bracket_coords(&xy, &z);
            let r1 = alg.bracket_coords(&x, &z);
            let r2 = alg.bracket_coords(&y, &z);
            let rhs: Vec<Rational> = r1.iter().zip(&r2).map(|(a, b)| a + b).collect();
            prop_assert_eq!(lhs, rhs);
            let zx = alg.bracket_coords(&z, &x);
            let neg: Vec<Rational> = alg.bracket_coords(&x, &z).into_iter().map(|c| -c).collect();
            prop_assert_eq!(zx, neg);
        }

        #[test]
        fn filtration_property(i in 0usize..10, j in 0usize..10) {
            let alg = strict_upper_triangular(5);
            let lcs = alg.lower_central_series().unwrap();
            let grade_of = |k: usize| (0..lcs.len()).rev().find(|&g| lcs[g].contains(&crate::rational::unit_vector(10, k))).unwrap();
            let (gi, gj) = (grade_of(i), grade_of(j));
            let v = alg.basis_bracket(i, j);
            let target = (gi + gj + 1).min(lcs.len() - 1);
            prop_assert!(lcs[target].contains(&v));
        }
    }
}
