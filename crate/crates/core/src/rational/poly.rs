use super::{format_rational, int, Rational};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Univariate polynomial over Q, coefficients in ascending degree. The
/// leading coefficient is nonzero unless the polynomial is zero (empty).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear(root: Rational) -> Self {
        Self::new(vec![-root, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        Self::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::Domain("division by the zero polynomial".into()));
        }
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        let lc = d.leading();
        if self.is_zero() || self.degree() < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quo = vec![Rational::zero(); self.degree() - dd + 1];
        for k in (0..quo.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quo[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quo), Self::new(rem)))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use super::Scalar;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    /// `p(-x)`
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `x^deg p(1/x)`
    pub fn reciprocal(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == 0
    }

    /// Monic squarefree part `p / gcd(p, p')`.
    pub fn squarefree_part(&self) -> Self {
        if self.degree() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("nonzero gcd").0.monic()
    }

    /// Yun's squarefree decomposition of the monic part: returns `(a_i, i)`
    /// with `p = lc * prod a_i^i`, each `a_i` monic, squarefree, pairwise
    /// coprime and nonconstant.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).unwrap().0;
        let mut c = fp.div_rem(&a0).unwrap().0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree() > 0 {
            let a = b.gcd(&d);
            b = b.div_rem(&a).unwrap().0;
            c = d.div_rem(&a).unwrap().0;
            d = c.sub(&b.derivative());
            if a.degree() > 0 {
                out.push((a.monic(), i));
            }
            i += 1;
        }
        out
    }

    /// Primitive integer polynomial with positive leading coefficient and
    /// the same roots.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let den = super::common_denominator(&self.coeffs);
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_zero() {
            for x in &mut ints {
                *x /= &g;
            }
        }
        if ints.last().is_some_and(|x| x.is_negative()) {
            for x in &mut ints {
                *x = -x.clone();
            }
        }
        ints
    }

    /// Sturm sequence `p, p', -rem(...)...`.
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let r = seq[n - 2].div_rem(&seq[n - 1]).unwrap().1;
            if r.is_zero() {
                break;
            }
            seq.push(r.scale(&-Rational::one()));
        }
        seq.retain(|p| !p.is_zero());
        seq
    }

    /// Orders by degree, then lexicographically on ascending coefficients.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

fn sign(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Number of distinct real roots, from the Sturm sequence of the
/// squarefree part.
pub fn real_root_count(p: &RatPoly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::Domain("real roots of the zero polynomial".into()));
    }
    let seq = p.squarefree_part().sturm_sequence();
    let at_pos_inf = sign_changes(seq.iter().map(|q| sign(&q.leading())));
    let at_neg_inf = sign_changes(seq.iter().map(|q| {
        let s = sign(&q.leading());
        if q.degree() % 2 == 1 {
            -s
        } else {
            s
        }
    }));
    Ok(at_neg_inf - at_pos_inf)
}

/// Number of distinct real roots in the half-open interval `(a, b]`.
pub fn real_roots_between(p: &RatPoly, a: &Rational, b: &Rational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::Domain("real roots of the zero polynomial".into()));
    }
    let seq = p.squarefree_part().sturm_sequence();
    let va = sign_changes(seq.iter().map(|q| sign(&q.eval(a))));
    let vb = sign_changes(seq.iter().map(|q| sign(&q.eval(b))));
    Ok(va.saturating_sub(vb))
}

/// Number of distinct roots of modulus exactly 1, decided exactly: such
/// roots come in pairs `z, 1/z` and map to real roots of the trace
/// polynomial `h` with `g(x) = x^d h(x + 1/x)` lying in `(-2, 2)`.
pub fn unit_circle_root_count(p: &RatPoly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::Domain("unit roots of the zero polynomial".into()));
    }
    let mut g = p.squarefree_part();
    let mut count = 0;
    for r in [1i64, -1] {
        let lin = RatPoly::linear(Rational::from_integer(r.into()));
        if g.eval(&Rational::from_integer(r.into())).is_zero() {
            count += 1;
            g = g.div_rem(&lin)?.0;
        }
    }
    let g = g.gcd(&g.reciprocal());
    if g.degree() < 1 {
        return Ok(count);
    }
    let d = g.degree() / 2;
    let y = RatPoly::from_i64(&[0, 1]);
    let (mut t_prev, mut t) = (RatPoly::constant(Rational::from_integer(2.into())), y.clone());
    let mut h = RatPoly::constant(g.coeff(d));
    for k in 1..=d {
        h = h.add(&t.scale(&g.coeff(d + k)));
        let next = y.mul(&t).sub(&t_prev);
        t_prev = std::mem::replace(&mut t, next);
    }
    let two = Rational::from_integer(2.into());
    Ok(count + 2 * real_roots_between(&h, &-two.clone(), &two)?)
}

/// The k-th cyclotomic polynomial.
pub fn cyclotomic(k: usize) -> RatPoly {
    assert!(k >= 1);
    let mut xk = vec![Rational::zero(); k + 1];
    xk[0] = -Rational::one();
    xk[k] = Rational::one();
    let mut p = RatPoly::new(xk);
    for d in (1..k).filter(|d| k.is_multiple_of(*d)) {
        p = p.div_rem(&cyclotomic(d)).unwrap().0;
    }
    p
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coef = if a.is_one() && i > 0 { String::new() } else { format_rational(&a) };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{i}")?,
            }
        }
        Ok(())
    }
}
