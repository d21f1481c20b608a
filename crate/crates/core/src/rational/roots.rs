//! Certified complex roots of squarefree rational polynomials.
//!
//! Roots are located by Aberth iteration in double precision, polished by
//! Aberth iteration in exact Gaussian-rational arithmetic rounded to a
//! dyadic grid of growing precision, and certified with Smith's inclusion
//! theorem evaluated exactly: with `w_i = p(z_i) / prod_{j != i} (z_i - z_j)`
//! for monic `p`, every connected component of the union of the disks
//! `D(z_i, n |w_i|)` holds as many roots as disks. When the disks are
//! pairwise disjoint each holds exactly one root; a disk centred on the real
//! axis then holds a real root. The real-root count from the Sturm sequence
//! fixes which approximations are kept on the real axis.

use super::{from_f64, real_root_count, round_dyadic, sqrt_upper, Rational, RatPoly, Scalar};
use crate::{Error, Result};
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Radius below which two unseparated modulus intervals are declared a tie.
pub const MODULUS_TIE_RADIUS: f64 = 1e-30;

const DEFAULT_MAX_BITS: u32 = 1024;

/// Refinement controls for root certification.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootConfig {
    /// Target certification radius.
    pub tol: f64,
    /// Cap on the dyadic precision (fractional bits) used while refining.
    pub max_bits: u32,
}

impl Default for RootConfig {
    fn default() -> Self {
        Self { tol: 1e-12, max_bits: DEFAULT_MAX_BITS }
    }
}

impl RootConfig {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }
}

/// A root known to lie within `radius` of the exact dyadic centre; `value` is
/// that centre rounded to double precision.
#[derive(Clone, Debug, PartialEq)]
pub struct CertifiedRoot {
    pub value: Complex64,
    pub radius: f64,
    pub is_real: bool,
    center_re: Rational,
    center_im: Rational,
}

impl CertifiedRoot {
    pub fn center(&self) -> (&Rational, &Rational) {
        (&self.center_re, &self.center_im)
    }

    pub fn modulus(&self) -> f64 {
        self.value.norm()
    }

    /// `|centre|^2`, exact.
    pub fn modulus_sq(&self) -> Rational {
        &self.center_re * &self.center_re + &self.center_im * &self.center_im
    }

    /// Radius that also covers the rounding of the centre to `value`.
    pub fn value_radius(&self) -> f64 {
        (self.radius + self.value.norm() * 2.3e-16 + f64::MIN_POSITIVE) * (1.0 + 1e-15)
    }

    /// Real centre; only meaningful when `is_real`.
    pub fn real_center(&self) -> &Rational {
        &self.center_re
    }

    /// Exactly decides whether the modulus interval of `self` lies strictly
    /// above (`Greater`) or below (`Less`) that of `other`; `None` when the
    /// intervals overlap.
    pub fn compare_modulus(&self, other: &Self) -> Option<Ordering> {
        let a2 = self.modulus_sq();
        let b2 = other.modulus_sq();
        let s = from_f64(self.radius) + from_f64(other.radius);
        match a2.cmp(&b2) {
            Ordering::Greater => modulus_gap_exceeds(&a2, &b2, &s).then_some(Ordering::Greater),
            Ordering::Less => modulus_gap_exceeds(&b2, &a2, &s).then_some(Ordering::Less),
            Ordering::Equal => None,
        }
    }

    /// Exactly decides the position of the modulus interval relative to 1.
    pub fn compare_unit(&self) -> Option<Ordering> {
        let a2 = self.modulus_sq();
        let r = from_f64(self.radius);
        let one = Rational::one();
        let hi = &one + &r;
        if a2 > &hi * &hi {
            return Some(Ordering::Greater);
        }
        let lo = &one - &r;
        if lo.is_positive() && a2 < &lo * &lo {
            return Some(Ordering::Less);
        }
        None
    }
}

/// With `a2 > b2`, tests `sqrt(a2) - sqrt(b2) > s` exactly.
fn modulus_gap_exceeds(a2: &Rational, b2: &Rational, s: &Rational) -> bool {
    // a > b + s  <=>  a2 - b2 - s^2 > 2 b s  (both sides squared when positive)
    let lhs = a2 - b2 - s * s;
    if !lhs.is_positive() {
        return false;
    }
    let rhs_sq = Rational::from_integer(4.into()) * b2 * s * s;
    &lhs * &lhs > rhs_sq
}

#[derive(Clone, Debug, PartialEq)]
struct Gauss {
    re: Rational,
    im: Rational,
}

impl Gauss {
    fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }
    fn add(&self, o: &Self) -> Self {
        Self { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub(&self, o: &Self) -> Self {
        Self { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul(&self, o: &Self) -> Self {
        Self {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
    fn div(&self, o: &Self) -> Self {
        let d = o.norm_sq();
        Self {
            re: (&self.re * &o.re + &self.im * &o.im) / &d,
            im: (&self.im * &o.re - &self.re * &o.im) / &d,
        }
    }
    fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }
    fn round(&self, bits: u32) -> Self {
        Self { re: round_dyadic(&self.re, bits), im: round_dyadic(&self.im, bits) }
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
    fn from_c64(z: Complex64, bits: u32) -> Self {
        Self { re: from_f64(z.re), im: from_f64(z.im) }.round(bits)
    }
}

fn eval_gauss(p: &RatPoly, z: &Gauss) -> (Gauss, Gauss) {
    let mut v = Gauss::real(Rational::zero());
    let mut d = Gauss::real(Rational::zero());
    for c in p.coeffs().iter().rev() {
        d = d.mul(z).add(&v);
        v = v.mul(z).add(&Gauss::real(c.clone()));
    }
    (v, d)
}

fn aberth_f64(p: &RatPoly) -> Vec<Complex64> {
    let n = p.degree();
    let c: Vec<f64> = p.coeffs().iter().map(Scalar::to_f64).collect();
    let eval = |z: Complex64| {
        let mut v = Complex64::zero();
        let mut d = Complex64::zero();
        for &a in c.iter().rev() {
            d = d * z + v;
            v = v * z + a;
        }
        (v, d)
    };
    // initial radius: geometric mean of the root moduli, |a0/an|^(1/n)
    let a0 = c[0].abs().max(f64::MIN_POSITIVE);
    let r = (a0 / c[n].abs()).powf(1.0 / n as f64).clamp(1e-6, 1e6);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..5000 {
        let mut done = true;
        for i in 0..n {
            let (v, d) = eval(z[i]);
            if v == Complex64::zero() {
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::one() - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                if w.norm() > 1e-15 * z[i].norm().max(1e-300) {
                    done = false;
                }
            }
        }
        if done {
            break;
        }
    }
    z
}

/// Puts the `real_count` approximations closest to the real axis on it and
/// makes the rest exact conjugate pairs. Returns representatives (real ones,
/// then upper-half ones).
fn symmetrize(approx: &[Complex64], real_count: usize) -> (Vec<Complex64>, Vec<Complex64>) {
    let mut by_im: Vec<Complex64> = approx.to_vec();
    by_im.sort_by(|a, b| a.im.abs().total_cmp(&b.im.abs()));
    let reals: Vec<Complex64> = by_im[..real_count].iter().map(|z| Complex64::new(z.re, 0.0)).collect();
    let mut upper: Vec<Complex64> =
        by_im[real_count..].iter().map(|z| Complex64::new(z.re, z.im.abs())).collect();
    upper.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    // pair nearest neighbours greedily
    let mut pairs = Vec::new();
    let mut used = vec![false; upper.len()];
    for i in 0..upper.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let j = (0..upper.len())
            .filter(|&j| !used[j])
            .min_by(|&a, &b| (upper[a] - upper[i]).norm().total_cmp(&(upper[b] - upper[i]).norm()));
        if let Some(j) = j {
            used[j] = true;
            let m = (upper[i] + upper[j]) * 0.5;
            pairs.push(Complex64::new(m.re, m.im.abs().max(1e-300)));
        }
    }
    (reals, pairs)
}

struct Refiner {
    poly: RatPoly,
    reals: Vec<Gauss>,
    uppers: Vec<Gauss>,
}

impl Refiner {
    fn all(&self) -> Vec<Gauss> {
        let mut v = self.reals.clone();
        for u in &self.uppers {
            v.push(u.clone());
            v.push(u.conj());
        }
        v
    }

    /// Aberth sweeps at the given precision.
    fn polish(&mut self, bits: u32) {
        let threshold = 2f64.powi(-(bits as i32) + 2);
        for _ in 0..80 {
            let all = self.all();
            let mut max_step = 0f64;
            let step = |z: &Gauss, skip: usize| -> Option<Gauss> {
                let (v, d) = eval_gauss(&self.poly, z);
                if v.re.is_zero() && v.im.is_zero() {
                    return Some(Gauss::real(Rational::zero()));
                }
                if d.re.is_zero() && d.im.is_zero() {
                    return None;
                }
                let ratio = v.div(&d);
                let mut s = Gauss::real(Rational::zero());
                for (j, zj) in all.iter().enumerate() {
                    if j != skip {
                        let diff = z.sub(zj);
                        if diff.re.is_zero() && diff.im.is_zero() {
                            return None;
                        }
                        s = s.add(&Gauss::real(Rational::one()).div(&diff));
                    }
                }
                let denom = Gauss::real(Rational::one()).sub(&ratio.mul(&s));
                if denom.re.is_zero() && denom.im.is_zero() {
                    return None;
                }
                Some(ratio.div(&denom))
            };
            let nr = self.reals.len();
            let mut new_reals = Vec::with_capacity(nr);
            for (i, z) in self.reals.iter().enumerate() {
                match step(z, i) {
                    Some(w) => {
                        max_step = max_step.max(w.to_c64().norm());
                        new_reals.push(Gauss::real(z.re.clone() - w.re).round(bits));
                    }
                    None => new_reals.push(z.clone()),
                }
            }
            let mut new_uppers = Vec::with_capacity(self.uppers.len());
            for (k, z) in self.uppers.iter().enumerate() {
                match step(z, nr + 2 * k) {
                    Some(w) => {
                        max_step = max_step.max(w.to_c64().norm());
                        new_uppers.push(z.sub(&w).round(bits));
                    }
                    None => new_uppers.push(z.clone()),
                }
            }
            self.reals = new_reals;
            self.uppers = new_uppers;
            if max_step <= threshold || !max_step.is_finite() {
                break;
            }
        }
    }

    /// Smith radii of the current approximations, if the disks are pairwise
    /// disjoint.
    fn certify(&self) -> Option<Vec<(Gauss, f64, bool)>> {
        let all = self.all();
        let n = all.len();
        let nr = self.reals.len();
        let mut out = Vec::with_capacity(n);
        for (i, z) in all.iter().enumerate() {
            let (v, _) = eval_gauss(&self.poly, z);
            let mut den = Gauss::real(Rational::one());
            for (j, zj) in all.iter().enumerate() {
                if j != i {
                    den = den.mul(&z.sub(zj));
                }
            }
            if den.re.is_zero() && den.im.is_zero() {
                return None;
            }
            let w2 = v.norm_sq() / den.norm_sq();
            let r2 = Rational::from_integer((n * n).into()) * w2;
            out.push((z.clone(), sqrt_upper(&r2), i < nr));
        }
        for i in 0..n {
            for j in i + 1..n {
                let s = from_f64(out[i].1) + from_f64(out[j].1);
                if out[i].0.sub(&out[j].0).norm_sq() <= &s * &s {
                    return None;
                }
            }
        }
        Some(out)
    }
}

fn bits_for(tol: f64) -> u32 {
    let b = (-tol.max(1e-300).log2()).ceil() as i64 + 24;
    b.clamp(64, 4096) as u32
}

/// Certified roots of a squarefree polynomial with radii at most `cfg.tol`,
/// sorted by modulus then argument. Moduli are not required to separate.
pub fn isolate_roots(p: &RatPoly, cfg: RootConfig) -> Result<Vec<CertifiedRoot>> {
    if p.is_zero() {
        return Err(Error::Domain("roots of the zero polynomial".into()));
    }
    if cfg.tol.partial_cmp(&0.0) != Some(Ordering::Greater) {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    if !p.is_squarefree() {
        return Err(Error::Domain(format!("polynomial {p} is not squarefree")));
    }
    let q = p.monic();
    let n = q.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    let real_count = real_root_count(&q)?;
    let mut bits = bits_for(cfg.tol);
    let approx = aberth_f64(&q);
    let (reals, uppers) = symmetrize(&approx, real_count);
    let mut refiner = Refiner {
        poly: q,
        reals: reals.into_iter().map(|z| Gauss::from_c64(z, bits)).collect(),
        uppers: uppers.into_iter().map(|z| Gauss::from_c64(z, bits)).collect(),
    };
    loop {
        refiner.polish(bits);
        if let Some(cert) = refiner.certify() {
            if cert.iter().all(|(_, r, _)| *r <= cfg.tol) {
                let mut roots: Vec<CertifiedRoot> = cert
                    .into_iter()
                    .map(|(z, radius, is_real)| CertifiedRoot {
                        value: z.to_c64(),
                        radius,
                        is_real,
                        center_re: z.re,
                        center_im: z.im,
                    })
                    .collect();
                sort_roots(&mut roots);
                return Ok(roots);
            }
        }
        if bits >= cfg.max_bits {
            return Err(Error::Certification(format!(
                "could not certify roots of {} within {} bits",
                refiner.poly, cfg.max_bits
            )));
        }
        bits = (bits * 2).min(cfg.max_bits);
    }
}

pub(crate) fn sort_roots(roots: &mut [CertifiedRoot]) {
    roots.sort_by(|a, b| {
        a.modulus_sq()
            .cmp(&b.modulus_sq())
            .then_with(|| a.value.arg().total_cmp(&b.value.arg()))
    });
}

/// Roots of several squarefree polynomials refined jointly until every pair
/// of roots (within and across polynomials) has disjoint modulus intervals,
/// optionally also separated from 1.
#[derive(Clone, Debug)]
pub struct SeparatedRoots {
    pub roots: Vec<Vec<CertifiedRoot>>,
    /// `((poly, index), (poly, index))` of an unseparable pair.
    pub tie: Option<((usize, usize), (usize, usize))>,
    /// `(poly, index)` of a root whose modulus interval still contains 1.
    pub unit_undecided: Option<(usize, usize)>,
}

pub fn separate_moduli(polys: &[RatPoly], cfg: RootConfig, avoid_unit: bool) -> Result<SeparatedRoots> {
    // Exactly shared roots can never separate.
    let forced = (0..polys.len())
        .flat_map(|i| (i + 1..polys.len()).map(move |j| (i, j)))
        .find(|&(i, j)| polys[i].gcd(&polys[j]).degree() > 0);
    let mut tol = cfg.tol;
    loop {
        let c = RootConfig { tol, ..cfg };
        let roots = polys
            .iter()
            .map(|p| isolate_roots(p, c))
            .collect::<Result<Vec<_>>>()?;
        let flat: Vec<((usize, usize), &CertifiedRoot)> = roots
            .iter()
            .enumerate()
            .flat_map(|(pi, rs)| rs.iter().enumerate().map(move |(ri, r)| ((pi, ri), r)))
            .collect();
        let mut tie = forced.map(|(i, j)| {
            let mut best = ((i, 0), (j, 0), f64::INFINITY);
            for (a, ra) in roots[i].iter().enumerate() {
                for (b, rb) in roots[j].iter().enumerate() {
                    let d = (ra.value - rb.value).norm();
                    if d < best.2 {
                        best = ((i, a), (j, b), d);
                    }
                }
            }
            (best.0, best.1)
        });
        'outer: for a in 0..flat.len() {
            if tie.is_some() {
                break;
            }
            for b in a + 1..flat.len() {
                if flat[a].1.compare_modulus(flat[b].1).is_none() {
                    tie = Some((flat[a].0, flat[b].0));
                    break 'outer;
                }
            }
        }
        let unit_undecided = if avoid_unit {
            flat.iter().find(|(_, r)| r.compare_unit().is_none()).map(|(k, _)| *k)
        } else {
            None
        };
        let at_floor = tol <= MODULUS_TIE_RADIUS;
        if ((tie.is_none() || forced.is_some()) && unit_undecided.is_none()) || at_floor {
            return Ok(SeparatedRoots { roots, tie, unit_undecided });
        }
        tol = (tol * 1e-8).max(MODULUS_TIE_RADIUS);
    }
}

/// Certified roots with pairwise-disjoint modulus intervals; a pair that
/// cannot be separated down to [`MODULUS_TIE_RADIUS`] is a modulus tie.
pub fn certified_roots(p: &RatPoly, cfg: RootConfig) -> Result<Vec<CertifiedRoot>> {
    let sep = separate_moduli(std::slice::from_ref(p), cfg, false)?;
    match sep.tie {
        Some(((_, i), (_, j))) => Err(Error::ModulusTie(i, j)),
        None => Ok(sep.roots.into_iter().next().unwrap_or_default()),
    }
}
