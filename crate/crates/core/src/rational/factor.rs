//! Factorization over Q: squarefree decomposition, then for each squarefree
//! part a Zassenhaus factorization (modular factorization at a good prime,
//! quadratic Hensel lifting, subset recombination under a Mignotte bound).

use super::modular::*;
use super::{Rational, RatPoly};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `p = content * prod factor^multiplicity`, factors monic and irreducible
/// over Q, sorted by degree then coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub content: Rational,
    pub factors: Vec<(RatPoly, usize)>,
}

impl Factorization {
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn expand(&self) -> RatPoly {
        self.factors
            .iter()
            .fold(RatPoly::constant(self.content.clone()), |acc, (f, m)| acc.mul(&f.pow(*m)))
    }
}

const PRIMES: [u64; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

pub fn factor_over_q(p: &RatPoly) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::Domain("factorization of the zero polynomial".into()));
    }
    let mut factors = Vec::new();
    for (part, mult) in p.squarefree_decomposition() {
        for f in factor_squarefree_integer(&part.primitive_integer()) {
            factors.push((RatPoly::from_bigints(&f).monic(), mult));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(Factorization { content: p.leading(), factors })
}

/// Irreducible primitive factors of a squarefree primitive integer
/// polynomial with positive leading coefficient.
fn factor_squarefree_integer(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let deg = f.len() - 1;
    if deg <= 1 {
        return vec![f.to_vec()];
    }
    // Pull out x first so the modular images keep full degree below.
    if f[0].is_zero() {
        let rest: Vec<BigInt> = f[1..].to_vec();
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        out.extend(factor_squarefree_integer(&rest));
        return out;
    }
    let lc = f.last().unwrap().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    // Among the first few good primes keep the one with fewest modular factors.
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for &p in PRIMES.iter() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = reduce(f, p);
        if fp.len() != f.len() || !fp_is_squarefree(&fp, p) {
            continue;
        }
        let facs = fp_factor_squarefree(&fp, p, &mut rng);
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried == 5 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    let (p, modular) = best.expect("some small prime keeps the polynomial squarefree");
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }

    // Mignotte: any factor g of f has |g_j| <= 2^deg * ||f||_2; recombined
    // candidates carry an extra factor lc.
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let norm_bound = isqrt_ceil(&norm2);
    let bound = (BigInt::one() << deg) * norm_bound * lc.abs() * 2 + 1;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus = &modulus * &modulus;
    }
    let lifted = hensel_lift(f, &modular, p, &modulus);
    recombine(f, lifted, &modulus)
}

fn isqrt_ceil(n: &BigInt) -> BigInt {
    let mut r = n.sqrt();
    if &(&r * &r) < n {
        r += 1;
    }
    r
}

/// Lifts `f = lc * prod g_i (mod p)` to the same identity modulo `modulus`
/// (a power of p obtained by repeated squaring); returned factors are monic.
fn hensel_lift(f: &[BigInt], factors: &[Fp], p: u64, modulus: &BigInt) -> Vec<Zm> {
    if factors.len() == 1 {
        let lc_inv = zm_inverse(f.last().unwrap(), modulus);
        return vec![zm_scale(f, &lc_inv, modulus)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let prod = |fs: &[Fp]| fs.iter().fold(vec![1u64], |acc, g| fp_mul(&acc, g, p));
    let lc = f.last().unwrap().clone();
    let lc_p = u64::try_from(lc.clone() % BigInt::from(p)).unwrap();
    let g0 = fp_mul(&prod(left), &[lc_p], p);
    let h0 = prod(right);
    let (one, s0, t0) = fp_xgcd(&g0, &h0, p);
    debug_assert_eq!(one, vec![1]);

    let (mut g, mut h) = (lift_fp(&g0), lift_fp(&h0));
    let (mut s, mut t) = (lift_fp(&s0), lift_fp(&t0));
    let mut m = BigInt::from(p);
    while &m < modulus {
        let m2 = &m * &m;
        // e = f - g h
        let e = zm_sub(f, &zm_mul(&g, &h, &m2), &m2);
        let (q, r) = zm_divrem_monic(&zm_mul(&s, &e, &m2), &h, &m2);
        let g_new = zm_add(&g, &zm_add(&zm_mul(&t, &e, &m2), &zm_mul(&q, &g, &m2), &m2), &m2);
        let h_new = zm_add(&h, &r, &m2);
        let b = zm_sub(
            &zm_add(&zm_mul(&s, &g_new, &m2), &zm_mul(&t, &h_new, &m2), &m2),
            &[BigInt::one()],
            &m2,
        );
        let (c, d) = zm_divrem_monic(&zm_mul(&s, &b, &m2), &h_new, &m2);
        s = zm_sub(&s, &d, &m2);
        t = zm_sub(&zm_sub(&t, &zm_mul(&t, &b, &m2), &m2), &zm_mul(&c, &g_new, &m2), &m2);
        g = g_new;
        h = h_new;
        m = m2;
    }
    let mut out = hensel_lift(&g, left, p, modulus);
    out.extend(hensel_lift(&h, right, p, modulus));
    out
}

fn recombine(f: &[BigInt], mut lifted: Vec<Zm>, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    let mut f = f.to_vec();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for subset in subsets(lifted.len(), size) {
            let lc = f.last().unwrap().clone();
            let cand = subset
                .iter()
                .fold(vec![lc.clone()], |acc, &i| zm_mul(&acc, &lifted[i], modulus));
            let cand = primitive(&symmetric(&cand, modulus));
            if let Some(q) = z_exact_div(&f, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                f = primitive(&q);
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => size += 1,
        }
    }
    if f.len() > 1 || f.first().is_some_and(|c| c.to_i64() != Some(1)) {
        found.push(f);
    }
    found
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
