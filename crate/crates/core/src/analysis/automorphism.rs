use crate::lie::LieAlgebra;
use crate::par;
use crate::rational::{RatMatrix, Rational, Subspace};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

/// Outcome of checking a matrix against the automorphism conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct AutomorphismCheck {
    pub determinant: Rational,
    pub invertible: bool,
    /// First basis pair `(i, j)` with `A[e_i, e_j] != [Ae_i, Ae_j]`.
    pub bracket_violation: Option<(usize, usize)>,
    pub integral: bool,
    pub unimodular: bool,
}

impl AutomorphismCheck {
    pub fn bracket_preserving(&self) -> bool {
        self.bracket_violation.is_none()
    }

    /// Integer entries and `|det| = 1` in the declared basis. This is a
    /// sufficient condition for preserving the lattice.
    pub fn lattice_preserving(&self) -> bool {
        self.integral && self.unimodular
    }
}

/// A validated automorphism of a rational nilpotent Lie algebra; column `j`
/// of the matrix is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Automorphism {
    algebra: Arc<LieAlgebra>,
    matrix: RatMatrix,
    bracket_preserving: bool,
    lattice_preserving: bool,
}

pub fn check_automorphism(alg: &LieAlgebra, m: &RatMatrix) -> Result<AutomorphismCheck> {
    let n = alg.dim();
    if !m.is_square() || m.rows() != n {
        return Err(Error::Dimension(format!(
            "matrix is {}x{}, algebra has dimension {n}",
            m.rows(),
            m.cols()
        )));
    }
    let determinant = m.det()?;
    let columns: Vec<Vec<Rational>> = (0..n).map(|j| m.column(j)).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let bracket_violation = par::find_first(&pairs, |&(i, j)| {
        (m.mul_vec(&alg.basis_bracket(i, j)) != alg.bracket_coords(&columns[i], &columns[j]))
            .then_some((i, j))
    });
    let unimodular = determinant.abs().is_one();
    Ok(AutomorphismCheck {
        invertible: !determinant.is_zero(),
        determinant,
        bracket_violation,
        integral: m.is_integral(),
        unimodular,
    })
}

/// Validates `m` as a lattice-preserving automorphism of `alg`.
pub fn validate_automorphism(alg: Arc<LieAlgebra>, m: RatMatrix) -> Result<Automorphism> {
    let check = check_automorphism(&alg, &m)?;
    if !check.invertible {
        return Err(Error::Singular);
    }
    if let Some((i, j)) = check.bracket_violation {
        let names = alg.basis_names();
        return Err(Error::NotAutomorphism(format!(
            "A[{0}, {1}] != [A{0}, A{1}]",
            names[i], names[j]
        )));
    }
    if !check.lattice_preserving() {
        let why = if check.integral {
            format!("determinant {} is not ±1", check.determinant)
        } else {
            "matrix has non-integral entries".to_string()
        };
        return Err(Error::LatticeNotPreserved(why));
    }
    Ok(Automorphism { algebra: alg, matrix: m, bracket_preserving: true, lattice_preserving: true })
}

impl Automorphism {
    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn bracket_preserving(&self) -> bool {
        self.bracket_preserving
    }

    pub fn lattice_preserving(&self) -> bool {
        self.lattice_preserving
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn inverse(&self) -> Result<Automorphism> {
        Ok(Automorphism { matrix: self.matrix.inverse()?, ..self.clone() })
    }

    /// `A^k` on a coordinate vector.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_vec(v)
    }

    /// Matrix of the restriction to an invariant subspace, in the echelon basis
    /// of `s`.
    pub fn restrict(&self, s: &Subspace) -> Result<RatMatrix> {
        restrict(&self.matrix, s)
    }

    /// Matrix induced on `ambient / sub` with respect to the representatives
    /// chosen by [`Subspace::quotient_basis`].
    pub fn induced_on_quotient(&self, ambient: &Subspace, sub: &Subspace) -> Result<RatMatrix> {
        induced_on_quotient(&self.matrix, ambient, sub)
    }
}

/// Matrix of `m` restricted to an invariant subspace, in its echelon basis.
pub fn restrict_matrix(m: &RatMatrix, s: &Subspace) -> Result<RatMatrix> {
    restrict(m, s)
}

pub(crate) fn restrict(m: &RatMatrix, s: &Subspace) -> Result<RatMatrix> {
    let cols = s
        .basis()
        .iter()
        .map(|b| {
            s.coordinates(&m.mul_vec(b))
                .ok_or_else(|| Error::Invariant("subspace is not invariant".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    RatMatrix::from_columns(&cols, s.dim())
}

/// Matrix induced by `m` on `ambient / sub`.
pub fn induced_matrix(m: &RatMatrix, ambient: &Subspace, sub: &Subspace) -> Result<RatMatrix> {
    induced_on_quotient(m, ambient, sub)
}

pub(crate) fn induced_on_quotient(m: &RatMatrix, ambient: &Subspace, sub: &Subspace) -> Result<RatMatrix> {
    let (reps, proj) = Subspace::quotient_basis(ambient, sub)?;
    let cols = reps
        .iter()
        .map(|r| {
            let image = m.mul_vec(r);
            if !ambient.contains(&image) {
                return Err(Error::Invariant("ambient subspace is not invariant".into()));
            }
            Ok(proj.mul_vec(&image))
        })
        .collect::<Result<Vec<_>>>()?;
    if !Subspace::image_under(m, sub)?.eq(sub) {
        return Err(Error::Invariant("quotiented subspace is not invariant".into()));
    }
    RatMatrix::from_columns(&cols, reps.len())
}

/// Extends a linear map given on generators to the whole algebra using
/// `A[x, y] = [Ax, Ay]`. `images[k]` is the image of basis vector
/// `generators[k]`. The result is not validated.
pub fn extend_from_generators(
    alg: &LieAlgebra,
    generators: &[usize],
    images: &[Vec<Rational>],
) -> Result<RatMatrix> {
    let n = alg.dim();
    if generators.len() != images.len() || images.iter().any(|v| v.len() != n) {
        return Err(Error::Dimension("one image of length dim per generator".into()));
    }
    // Pairs (v, Av) closed under bracketing with generators.
    let basis = |i: usize| crate::rational::unit_vector(n, i);
    let gens: Vec<(Vec<Rational>, Vec<Rational>)> =
        generators.iter().map(|&g| basis(g)).zip(images.iter().cloned()).collect();
    let mut known = gens.clone();
    let mut layer = gens.clone();
    let step = alg.step()?;
    for _ in 1..step {
        let mut next = Vec::new();
        for (g, ag) in &gens {
            for (v, av) in &layer {
                let b = alg.bracket_coords(g, v);
                if b.iter().any(|c| !c.is_zero()) {
                    next.push((b, alg.bracket_coords(ag, av)));
                }
            }
        }
        known.extend(next.iter().cloned());
        layer = next;
    }
    // Express each basis vector through the known pairs.
    let sources = RatMatrix::from_columns(&known.iter().map(|(v, _)| v.clone()).collect::<Vec<_>>(), n)?;
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let coeffs = solve_any(&sources, &basis(i)).ok_or_else(|| {
            Error::Domain(format!("generators do not generate basis vector {}", alg.basis_names()[i]))
        })?;
        let mut image = vec![Rational::zero(); n];
        for (c, (_, av)) in coeffs.iter().zip(&known) {
            if !c.is_zero() {
                for (t, a) in image.iter_mut().zip(av) {
                    *t += c * a;
                }
            }
        }
        cols.push(image);
    }
    RatMatrix::from_columns(&cols, n)
}

/// Some solution of `s c = b`, free variables set to zero.
fn solve_any(s: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = s.cols();
    let rows: Vec<Vec<Rational>> = (0..s.rows())
        .map(|i| {
            let mut r = s.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let (r, pivots) = RatMatrix::from_rows(&rows, cols + 1).ok()?.rref();
    if pivots.contains(&cols) {
        return None;
    }
    let mut c = vec![Rational::zero(); cols];
    for (row, &p) in pivots.iter().enumerate() {
        c[p] = r[(row, cols)].clone();
    }
    Some(c)
}

/// `true` when every entry is an integer and `|det| = 1`.
pub fn is_unimodular_integral(m: &RatMatrix) -> Result<bool> {
    Ok(m.is_integral() && m.det()?.abs() == Rational::one())
}
