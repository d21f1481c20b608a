//! Independent oracles shared by the integration suites: faithful
//! upper-triangular matrix representations with exact `exp`/`log`, and a
//! small Gaussian elimination that does not go through the library.
#![allow(dead_code)]

use nilrigid::lie::LieAlgebra;
use nilrigid::rational::{rat, Rational};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Mat = Vec<Vec<Rational>>;

pub fn zeros(n: usize) -> Mat {
    vec![vec![Rational::zero(); n]; n]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

pub fn unit(n: usize, i: usize, j: usize) -> Mat {
    let mut m = zeros(n);
    m[i][j] = Rational::one();
    m
}

pub fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn scale(a: &Mat, s: &Rational) -> Mat {
    a.iter().map(|r| r.iter().map(|x| x * s).collect()).collect()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(Rational::zero(), |acc, k| acc + &a[i][k] * &b[k][j])).collect())
        .collect()
}

pub fn commutator(a: &Mat, b: &Mat) -> Mat {
    add(&mul(a, b), &scale(&mul(b, a), &rat(-1, 1)))
}

/// Block-diagonal sum.
pub fn block_sum(blocks: &[Mat]) -> Mat {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut m = zeros(n);
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                m[off + i][off + j] = x.clone();
            }
        }
        off += b.len();
    }
    m
}

/// `exp(N) = Σ N^k / k!` for nilpotent `N`.
pub fn exp_nilpotent(a: &Mat) -> Mat {
    let n = a.len();
    let mut out = identity(n);
    let mut term = identity(n);
    for k in 1..=n {
        term = scale(&mul(&term, a), &rat(1, k as i64));
        out = add(&out, &term);
    }
    out
}

/// `log(U) = Σ (-1)^{k+1} (U - I)^k / k` for unipotent `U`.
pub fn log_unipotent(u: &Mat) -> Mat {
    let n = u.len();
    let nil = add(u, &scale(&identity(n), &rat(-1, 1)));
    let mut out = zeros(n);
    let mut power = identity(n);
    for k in 1..=n {
        power = mul(&power, &nil);
        let sign = if k % 2 == 1 { 1 } else { -1 };
        out = add(&out, &scale(&power, &rat(sign, k as i64)));
    }
    out
}

/// Faithful matrix representation of a nilpotent algebra by nilpotent matrices.
pub struct MatrixRep {
    pub images: Vec<Mat>,
}

impl MatrixRep {
    pub fn image(&self, coords: &[Rational]) -> Mat {
        let n = self.images[0].len();
        coords.iter().zip(&self.images).fold(zeros(n), |acc, (c, m)| add(&acc, &scale(m, c)))
    }

    /// Coordinates of a matrix in the span of the images, by elimination on
    /// the flattened entries. Panics if it lies outside the span.
    pub fn coordinates(&self, m: &Mat) -> Vec<Rational> {
        let cols: Vec<Vec<Rational>> = self.images.iter().map(|a| a.concat()).collect();
        solve_columns(&cols, &m.concat()).expect("matrix outside the represented algebra")
    }

    /// `ρ([e_i, e_j]) = [ρ(e_i), ρ(e_j)]` for every basis pair.
    pub fn is_homomorphism(&self, alg: &LieAlgebra) -> bool {
        let n = alg.dim();
        (0..n).all(|i| {
            (0..n).all(|j| self.image(&alg.basis_bracket(i, j)) == commutator(&self.images[i], &self.images[j]))
        })
    }

    /// `log(exp ρ(x) · exp ρ(y))` pulled back to coordinates.
    pub fn group_product(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let p = mul(&exp_nilpotent(&self.image(x)), &exp_nilpotent(&self.image(y)));
        self.coordinates(&log_unipotent(&p))
    }
}

/// `X ↦ E12, Y ↦ E23, Z ↦ E13`.
pub fn heisenberg_rep() -> MatrixRep {
    MatrixRep { images: vec![unit(3, 0, 1), unit(3, 1, 2), unit(3, 0, 2)] }
}

/// Three Heisenberg blocks, one per generator pair of the free two-step
/// algebra on `x, y, z`; basis `x, y, z, [x,y], [x,z], [y,z]`.
pub fn free32_rep() -> MatrixRep {
    let e = |i, j| unit(3, i, j);
    let z3 = zeros(3);
    let x = block_sum(&[e(0, 1), e(0, 1), z3.clone()]);
    let y = block_sum(&[e(1, 2), z3.clone(), e(0, 1)]);
    let z = block_sum(&[z3.clone(), e(1, 2), e(1, 2)]);
    let xy = commutator(&x, &y);
    let xz = commutator(&x, &z);
    let yz = commutator(&y, &z);
    MatrixRep { images: vec![x, y, z, xy, xz, yz] }
}

/// Natural representation of strictly upper triangular `n × n` matrices,
/// basis ordered by superdiagonal, then row.
pub fn upper_triangular_rep(n: usize) -> MatrixRep {
    let mut images = Vec::new();
    for d in 1..n {
        for i in 0..n - d {
            images.push(unit(n, i, i + d));
        }
    }
    MatrixRep { images }
}

/// Solves `Σ c_k cols[k] = target`; `None` when inconsistent.
pub fn solve_columns(cols: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = cols.len();
    let mut rows: Vec<Vec<Rational>> = (0..target.len())
        .map(|r| cols.iter().map(|c| c[r].clone()).chain(std::iter::once(target[r].clone())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Rational::one() / rows[r][c].clone();
        rows[r] = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut out = vec![Rational::zero(); k];
    for (i, &c) in pivots.iter().enumerate() {
        out[c] = rows[i][k].clone();
    }
    Some(out)
}

/// Rank by the same elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let n = rows[0].len();
    let mut m = rows.to_vec();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = m[i][c].clone() / m[r][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-12..=12), rng.gen_range(1..=5))
}

pub fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| random_rational(rng)).collect()
}

/// Random rows of a rank-deficient-prone span: small integer entries with
/// occasional repeated combinations.
pub fn random_rows(rng: &mut ChaCha8Rng, count: usize, n: usize) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for _ in 0..count {
        if rows.len() >= 2 && rng.gen_bool(0.3) {
            let a = rows[rng.gen_range(0..rows.len())].clone();
            let b = rows[rng.gen_range(0..rows.len())].clone();
            let s = random_rational(rng);
            rows.push(a.iter().zip(&b).map(|(x, y)| x + &s * y).collect());
        } else {
            rows.push((0..n).map(|_| rat(rng.gen_range(-3..=3), 1)).collect());
        }
    }
    rows
}
