use crate::rational::Scalar;
use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_traits::{ToPrimitive, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Integer matrix acting on frequency vectors.
pub type IntMatrix = Vec<Vec<BigInt>>;

/// Frequency vector `m ∈ Z^d`.
pub type Frequency = Vec<BigInt>;

/// Finite Fourier sum `Σ c_m e^{2πi⟨m, x⟩}` on the torus `R^d / Z^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigPoly<F: Scalar = f64> {
    dim: usize,
    coeffs: BTreeMap<Frequency, Complex<F>>,
}

pub fn frequency(m: &[i64]) -> Frequency {
    m.iter().map(|&x| BigInt::from(x)).collect()
}

pub(crate) fn mat_vec(b: &IntMatrix, m: &[BigInt]) -> Frequency {
    b.iter().map(|row| row.iter().zip(m).map(|(a, x)| a * x).sum()).collect()
}

pub(crate) fn transpose(b: &IntMatrix) -> IntMatrix {
    let n = b.len();
    (0..n).map(|j| (0..n).map(|i| b[i][j].clone()).collect()).collect()
}

impl<F: Scalar> TrigPoly<F> {
    pub fn zero(dim: usize) -> Self {
        Self { dim, coeffs: BTreeMap::new() }
    }

    /// `c e^{2πi⟨m, x⟩}`
    pub fn character(m: Frequency, c: Complex<F>) -> Self {
        let mut p = Self::zero(m.len());
        p.add_term(m, c);
        p
    }

    /// `c e_m + conj(c) e_{-m}`, a real-valued function.
    pub fn real_mode(m: Frequency, c: Complex<F>) -> Self {
        let neg: Frequency = m.iter().map(|x| -x).collect();
        let mut p = Self::character(m, c.clone());
        p.add_term(neg, c.conj());
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Frequency, &Complex<F>)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, m: &[BigInt]) -> Complex<F> {
        self.coeffs.get(m).cloned().unwrap_or_else(Complex::zero)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn add_term(&mut self, m: Frequency, c: Complex<F>) {
        assert_eq!(m.len(), self.dim, "frequency dimension");
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(m.clone(), Complex::new(-c.re.clone(), -c.im.clone()));
        }
        out
    }

    pub fn scale(&self, s: &Complex<F>) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(m, c)| (m.clone(), c.clone() * s.clone()))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self { dim: self.dim, coeffs }
    }

    pub fn scale_real(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero(self.dim);
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(m, c)| (m.clone(), Complex::new(c.re.clone() * s.clone(), c.im.clone() * s.clone())))
            .collect();
        Self { dim: self.dim, coeffs }
    }

    /// `φ ∘ B`: the frequency `m` moves to `Bᵀ m`. `B` must be invertible
    /// over the integers so distinct frequencies stay distinct.
    pub fn compose(&self, b: &IntMatrix) -> Self {
        let bt = transpose(b);
        let coeffs = self.coeffs.iter().map(|(m, c)| (mat_vec(&bt, m), c.clone())).collect();
        Self { dim: self.dim, coeffs }
    }

    pub fn compose_pow(&self, b: &IntMatrix, k: usize) -> Self {
        (0..k).fold(self.clone(), |acc, _| acc.compose(b))
    }

    /// `Σ |c_m|`, an upper bound for the sup norm.
    pub fn l1_norm(&self) -> f64 {
        self.coeffs.values().map(|c| c.re.to_f64().hypot(c.im.to_f64())).sum()
    }

    /// `⟨self, other⟩ = Σ c_m conj(d_m)` in `L²(T^d)`.
    pub fn inner(&self, other: &Self) -> Complex<F> {
        self.coeffs
            .iter()
            .filter_map(|(m, c)| other.coeffs.get(m).map(|d| c.clone() * d.conj()))
            .fold(Complex::zero(), |acc, x| acc + x)
    }

    /// `c_{-m} = conj(c_m)` for every frequency.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|(m, c)| {
            let neg: Frequency = m.iter().map(|x| -x).collect();
            self.coeffs.get(&neg).is_some_and(|d| *d == c.conj())
        })
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(m, c)| {
                // reduce ⟨m, x⟩ modulo 1 term by term to limit cancellation
                let phase: f64 = m
                    .iter()
                    .zip(x)
                    .map(|(mi, xi)| (mi.to_f64().unwrap_or(f64::MAX) * xi).rem_euclid(1.0))
                    .sum();
                Complex64::new(c.re.to_f64(), c.im.to_f64()) * Complex64::from_polar(1.0, 2.0 * PI * phase)
            })
            .sum()
    }

    /// Derivative along `u`: `Σ 2πi⟨m, u⟩ c_m e_m`.
    pub fn derivative(&self, u: &[f64]) -> TrigPoly<f64> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(m, c)| {
                let mu: f64 = m.iter().zip(u).map(|(a, b)| a.to_f64().unwrap_or(f64::MAX) * b).sum();
                let c = Complex64::new(c.re.to_f64(), c.im.to_f64());
                (m.clone(), c * Complex64::new(0.0, 2.0 * PI * mu))
            })
            .filter(|(_, c)| !c.is_zero())
            .collect();
        TrigPoly { dim: self.dim, coeffs }
    }

    pub fn to_f64(&self) -> TrigPoly<f64> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(m, c)| (m.clone(), Complex64::new(c.re.to_f64(), c.im.to_f64())))
            .collect();
        TrigPoly { dim: self.dim, coeffs }
    }
}
