use super::{format_rational, Rational, RatPoly, Scalar};
use crate::{Error, Result};
use num_traits::{One, Zero};
use std::fmt;

/// Dense row-major matrix over a [`Scalar`] field.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RatMatrix = Matrix<Rational>;

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds from row vectors; all rows must share a length. `cols` is only
    /// consulted when `rows` is empty.
    pub fn from_rows(rows: &[Vec<T>], cols: usize) -> Result<Self> {
        let cols = rows.first().map_or(cols, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Self { rows: rows.len(), cols, data: rows.concat() })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<T>], rows: usize) -> Result<Self> {
        Ok(Self::from_rows(columns, rows)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("shape mismatch".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|a| a.clone() * s.clone())
    }

    pub fn pow(&self, mut e: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("power of a non-square matrix".into()));
        }
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Index of the pivot row for column `col` among rows `from..`.
    fn pivot(&self, col: usize, from: usize) -> Option<usize> {
        if T::EXACT {
            (from..self.rows).find(|&r| !self[(r, col)].is_zero())
        } else {
            (from..self.rows)
                .filter(|&r| !self[(r, col)].is_negligible())
                .max_by(|&a, &b| {
                    self[(a, col)].magnitude().total_cmp(&self[(b, col)].magnitude())
                })
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = m.pivot(c, r) else { continue };
            m.swap_rows(r, p);
            let inv = T::one() / m[(r, c)].clone();
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let v = m[(r, j)].clone();
                    if !v.is_zero() {
                        m[(i, j)] = m[(i, j)].clone() - f.clone() * v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis (as rows) of `{ v : self * v = 0 }`.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = T::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Solves `self * x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        Ok(self.inverse()?.mul_vec(b))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut m = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            let Some(p) = m.pivot(k, k) else { return Ok(T::zero()) };
            if p != k {
                m.swap_rows(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = m[(i, j)].clone() * m[(k, k)].clone()
                        - m[(i, k)].clone() * m[(k, j)].clone();
                    m[(i, j)] = v / prev.clone();
                }
                m[(i, k)] = T::zero();
            }
            prev = m[(k, k)].clone();
        }
        Ok(sign * m[(n - 1, n - 1)].clone())
    }

    /// Evaluates a polynomial with rational coefficients at this matrix.
    pub fn eval_poly(&self, p: &RatPoly) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self)?;
            let c = T::from_rational(c);
            for i in 0..n {
                acc[(i, i)] = acc[(i, i)].clone() + c.clone();
            }
        }
        Ok(acc)
    }
}

impl RatMatrix {
    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        Self::from_vec(rows, cols, data.iter().map(|&x| super::int(x)).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|q| q.is_integer())
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(Scalar::to_f64)
    }
}

/// Characteristic polynomial `det(xI - m)`, computed with the division-free
/// Berkowitz algorithm.
pub fn charpoly(m: &RatMatrix) -> Result<RatPoly> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "characteristic polynomial of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    // Coefficient vectors are stored highest degree first.
    let mut c: Vec<Rational> = vec![Rational::one()];
    for k in 0..n {
        // Leading principal block of size k+1: a = m[k][k], r = m[k][..k],
        // s = m[..k][k], sub = m[..k][..k].
        let a = m[(k, k)].clone();
        let mut toeplitz_col = Vec::with_capacity(k + 2);
        toeplitz_col.push(Rational::one());
        toeplitz_col.push(-a);
        let mut s: Vec<Rational> = (0..k).map(|i| m[(i, k)].clone()).collect();
        for _ in 0..k {
            // r * sub^j * s
            let v: Rational = (0..k).map(|j| &m[(k, j)] * &s[j]).sum();
            toeplitz_col.push(-v);
            s = (0..k)
                .map(|i| (0..k).map(|j| &m[(i, j)] * &s[j]).sum())
                .collect();
        }
        let mut next = vec![Rational::zero(); k + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for j in 0..=i.min(c.len() - 1) {
                if i - j < toeplitz_col.len() {
                    *slot += &toeplitz_col[i - j] * &c[j];
                }
            }
        }
        c = next;
    }
    c.reverse();
    Ok(RatPoly::new(c))
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{int, rat};
    use super::*;

    #[test]
    fn charpoly_small_cases() {
        let id = RatMatrix::identity(2);
        assert_eq!(charpoly(&id).unwrap(), RatPoly::from_i64(&[1, -2, 1]));
        let cat = RatMatrix::from_i64(2, 2, &[2, 1, 1, 1]).unwrap();
        assert_eq!(charpoly(&cat).unwrap(), RatPoly::from_i64(&[1, -3, 1]));
        assert!(charpoly(&RatMatrix::zeros(2, 3)).is_err());
        assert_eq!(charpoly(&RatMatrix::zeros(0, 0)).unwrap(), RatPoly::from_i64(&[1]));
    }

    #[test]
    fn charpoly_matches_cofactor_expansion_3x3() {
        // det(xI - m) expanded by hand for a generic rational 3x3
        let m = RatMatrix::from_vec(
            3,
            3,
            vec![rat(1, 2), int(2), int(0), int(-1), int(3), rat(1, 3), int(4), int(0), int(1)],
        )
        .unwrap();
        let trace = rat(1, 2) + int(3) + int(1);
        let minors = (rat(1, 2) * int(3) - int(2) * int(-1))
            + (rat(1, 2) * int(1) - int(0) * int(4))
            + (int(3) * int(1) - rat(1, 3) * int(0));
        let det = m.det().unwrap();
        let expected = RatPoly::new(vec![-det, minors, -trace, int(1)]);
        assert_eq!(charpoly(&m).unwrap(), expected);
    }

    #[test]
    fn inverse_and_det() {
        let m = RatMatrix::from_i64(3, 3, &[2, 0, 1, 1, 1, 0, 0, 3, 1]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RatMatrix::identity(3));
        assert_eq!(m.det().unwrap(), int(5));
        let sing = RatMatrix::from_i64(2, 2, &[1, 2, 2, 4]).unwrap();
        assert_eq!(sing.inverse(), Err(Error::Singular));
        assert_eq!(sing.det().unwrap(), int(0));
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = RatMatrix::from_i64(2, 3, &[1, 2, 3, 2, 4, 6]).unwrap();
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }
}
