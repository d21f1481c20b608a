use super::{RatMatrix, Rational};
use crate::{Error, Result};
use num_traits::Zero;

/// Subspace of Q^n stored as the nonzero rows of its reduced row echelon
/// form, so equal subspaces have equal representations.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient_dim: usize, rows: &[Vec<Rational>]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != ambient_dim) {
            return Err(Error::Dimension(format!(
                "spanning vectors must have length {ambient_dim}"
            )));
        }
        let m = RatMatrix::from_rows(rows, ambient_dim)?;
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(Self { ambient_dim, basis, pivots })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let rows: Vec<Vec<Rational>> = (0..ambient_dim).map(|i| unit_vector(ambient_dim, i)).collect();
        Self { ambient_dim, basis: rows, pivots: (0..ambient_dim).collect() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(&self.basis, self.ambient_dim).expect("consistent rows")
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Dimension(format!(
                "ambient dimensions {} and {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in
    /// the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if v.len() != self.ambient_dim {
            return None;
        }
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(b) {
                *r -= c * x;
            }
        }
        residual.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.ambient_dim == self.ambient_dim && other.basis.iter().all(|b| self.contains(b))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let rows: Vec<Vec<Rational>> = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::span(self.ambient_dim, &rows)
    }

    /// Annihilator under the standard dot product.
    pub fn orthogonal_complement(&self) -> Self {
        if self.is_zero() {
            return Self::full(self.ambient_dim);
        }
        let ns = self.basis_matrix().nullspace();
        Self::span(self.ambient_dim, &ns).expect("consistent lengths")
    }

    /// `a ∩ b = (a⊥ + b⊥)⊥`; exact over Q since the dot product is
    /// nondegenerate.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self
            .orthogonal_complement()
            .sum(&other.orthogonal_complement())?
            .orthogonal_complement())
    }

    /// `{ v : m v = 0 }`
    pub fn kernel(m: &RatMatrix) -> Self {
        Self::span(m.cols(), &m.nullspace()).expect("consistent lengths")
    }

    /// `m(s)` for `m` acting on column vectors.
    pub fn image_under(m: &RatMatrix, s: &Self) -> Result<Self> {
        if m.cols() != s.ambient_dim {
            return Err(Error::Dimension(format!(
                "{}x{} matrix applied to a subspace of Q^{}",
                m.rows(),
                m.cols(),
                s.ambient_dim
            )));
        }
        let rows: Vec<Vec<Rational>> = s.basis.iter().map(|b| m.mul_vec(b)).collect();
        Self::span(m.rows(), &rows)
    }

    /// Representatives of `ambient / sub` and the projection onto their
    /// coordinates. The projection is a `k x n` matrix `P` with
    /// `P * rep_j = e_j`, `P * sub = 0`, and `v - sum_j (P v)_j rep_j ∈ sub`
    /// for every `v` in `ambient`.
    pub fn quotient_basis(ambient: &Self, sub: &Self) -> Result<(Vec<Vec<Rational>>, RatMatrix)> {
        ambient.check(sub)?;
        if !ambient.contains_subspace(sub) {
            return Err(Error::Containment);
        }
        let n = ambient.ambient_dim;
        let mut current = sub.clone();
        let mut reps = Vec::new();
        for b in &ambient.basis {
            if !current.contains(b) {
                reps.push(b.clone());
                current = current.sum(&Self::span(n, std::slice::from_ref(b))?)?;
            }
        }
        // Complete [reps; sub; complement of ambient] to a basis of Q^n.
        let mut cols: Vec<Vec<Rational>> = reps.clone();
        cols.extend(sub.basis.iter().cloned());
        let mut acc = ambient.clone();
        for i in 0..n {
            let e = unit_vector(n, i);
            if !acc.contains(&e) {
                cols.push(e.clone());
                acc = acc.sum(&Self::span(n, &[e])?)?;
            }
        }
        let t = RatMatrix::from_columns(&cols, n)?;
        let tinv = t.inverse()?;
        let k = reps.len();
        let proj = RatMatrix::from_rows(&(0..k).map(|i| tinv.row(i).to_vec()).collect::<Vec<_>>(), n)?;
        Ok((reps, proj))
    }
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = num_traits::One::one();
    v
}

#[cfg(test)]
mod tests {
    use super::super::int;
    use super::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let a = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        let b = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        assert_eq!(a.intersect(&b).unwrap(), Subspace::span(3, &[v(&[0, 1, 0])]).unwrap());
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(3));
    }

    #[test]
    fn kernel_of_zero_map() {
        assert_eq!(Subspace::kernel(&RatMatrix::zeros(3, 3)), Subspace::full(3));
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[1, -1, 0])]).unwrap();
        let b = Subspace::span(3, &[v(&[2, 0, 0]), v(&[0, 3, 0]), v(&[1, 1, 0])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(Subspace::span(3, a.basis()).unwrap(), a);
    }

    #[test]
    fn quotient_by_heisenberg_center() {
        let whole = Subspace::full(3);
        let center = Subspace::span(3, &[v(&[0, 0, 1])]).unwrap();
        let (reps, proj) = Subspace::quotient_basis(&whole, &center).unwrap();
        assert_eq!(reps, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        assert_eq!(proj, RatMatrix::from_i64(2, 3, &[1, 0, 0, 0, 1, 0]).unwrap());
        assert!(Subspace::quotient_basis(&center, &whole).is_err());
    }

    #[test]
    fn mismatched_dimensions() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert!(a.intersect(&b).is_err());
        assert!(Subspace::span(2, &[v(&[1, 2, 3])]).is_err());
    }
}
