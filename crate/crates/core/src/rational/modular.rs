//! Polynomial arithmetic over F_p (small odd p) and over Z/mZ for Hensel
//! lifting. Polynomials are ascending coefficient vectors without trailing
//! zeros.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub(crate) type Fp = Vec<u64>;

fn trim(mut p: Fp) -> Fp {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

pub(crate) fn reduce(f: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    trim(
        f.iter()
            .map(|c| {
                let r = c.mod_floor(&pb);
                u64::try_from(r).expect("residue fits")
            })
            .collect(),
    )
}

pub(crate) fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

pub(crate) fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

pub(crate) fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return (Vec::new(), trim(r));
    }
    let inv = inv_mod(*b.last().unwrap(), p);
    let db = b.len() - 1;
    let mut q = vec![0u64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = mulmod(r[k + db], inv, p);
        q[k] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mulmod(c, bj, p)) % p;
            }
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub(crate) fn fp_monic(a: &[u64], p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => {
            let inv = inv_mod(lc, p);
            a.iter().map(|&c| mulmod(c, inv, p)).collect()
        }
    }
}

pub(crate) fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Fp {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = fp_divrem(&x, &y, p).1;
        x = y;
        y = r;
    }
    fp_monic(&x, p)
}

/// Returns `(g, s, t)` with `s a + t b = g`, `g` monic.
pub(crate) fn fp_xgcd(a: &[u64], b: &[u64], p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = inv_mod(*r0.last().expect("not both zero"), p);
    let scale = |v: &[u64]| trim(v.iter().map(|&c| mulmod(c, inv, p)).collect());
    (scale(&r0), scale(&s0), scale(&t0))
}

fn fp_derivative(a: &[u64], p: u64) -> Fp {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect())
}

pub(crate) fn fp_is_squarefree(a: &[u64], p: u64) -> bool {
    fp_gcd(a, &fp_derivative(a, p), p).len() == 1
}

fn fp_powmod(base: &[u64], mut e: u128, modulus: &[u64], p: u64) -> Fp {
    let mut result = vec![1u64];
    let mut b = fp_divrem(base, modulus, p).1;
    while e > 0 {
        if e & 1 == 1 {
            result = fp_divrem(&fp_mul(&result, &b, p), modulus, p).1;
        }
        b = fp_divrem(&fp_mul(&b, &b, p), modulus, p).1;
        e >>= 1;
    }
    result
}

/// Factors a monic squarefree polynomial over F_p (p odd) into monic
/// irreducibles: distinct-degree splitting, then Cantor-Zassenhaus.
pub(crate) fn fp_factor_squarefree<R: Rng>(f: &[u64], p: u64, rng: &mut R) -> Vec<Fp> {
    let mut out = Vec::new();
    let mut rest = fp_monic(f, p);
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut d = 1usize;
    while rest.len() > 1 && 2 * d < rest.len() {
        h = fp_powmod(&h, p as u128, &rest, p);
        let g = fp_gcd(&rest, &fp_sub(&h, &x, p), p);
        if g.len() > 1 {
            equal_degree(&g, d, p, rng, &mut out);
            rest = fp_divrem(&rest, &g, p).0;
            h = fp_divrem(&h, &rest, p).1;
        }
        d += 1;
    }
    if rest.len() > 1 {
        out.push(fp_monic(&rest, p));
    }
    out.sort();
    out
}

fn equal_degree<R: Rng>(f: &[u64], d: usize, p: u64, rng: &mut R, out: &mut Vec<Fp>) {
    let n = f.len() - 1;
    if n == d {
        out.push(fp_monic(f, p));
        return;
    }
    let e = (u128::from(p).pow(d as u32) - 1) / 2;
    loop {
        let a: Fp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = fp_sub(&fp_powmod(&a, e, f, p), &[1], p);
        let g = fp_gcd(f, &b, p);
        if g.len() > 1 && g.len() < f.len() {
            let other = fp_divrem(f, &g, p).0;
            equal_degree(&g, d, p, rng, out);
            equal_degree(&other, d, p, rng, out);
            return;
        }
    }
}

// ---- arithmetic in (Z/mZ)[x] with BigInt coefficients ----

pub(crate) type Zm = Vec<BigInt>;

fn ztrim(mut p: Zm) -> Zm {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub(crate) fn zm_reduce(a: &[BigInt], m: &BigInt) -> Zm {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

pub(crate) fn zm_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Zm {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zm_reduce(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect::<Vec<_>>(),
        m,
    )
}

pub(crate) fn zm_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Zm {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zm_reduce(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect::<Vec<_>>(),
        m,
    )
}

pub(crate) fn zm_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Zm {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zm_reduce(&out, m)
}

/// Division by a monic polynomial modulo m.
pub(crate) fn zm_divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Zm, Zm) {
    debug_assert!(b.last().is_some_and(One::is_one));
    let mut r = zm_reduce(a, m);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].mod_floor(m);
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] = (&r[k + j] - &c * bj).mod_floor(m);
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    (ztrim(q), ztrim(r))
}

pub(crate) fn zm_scale(a: &[BigInt], s: &BigInt, m: &BigInt) -> Zm {
    zm_reduce(&a.iter().map(|c| c * s).collect::<Vec<_>>(), m)
}

pub(crate) fn zm_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Symmetric representative in (-m/2, m/2].
pub(crate) fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    a.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

pub(crate) fn lift_fp(a: &[u64]) -> Zm {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Exact division over Z[x]; `None` when `b` does not divide `a`.
pub(crate) fn z_exact_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let b = ztrim(b.to_vec());
    let mut r = ztrim(a.to_vec());
    if b.is_empty() {
        return None;
    }
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lc = b.last().unwrap();
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    if r.iter().all(Zero::is_zero) {
        Some(ztrim(q))
    } else {
        None
    }
}

pub(crate) fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

pub(crate) fn primitive(a: &[BigInt]) -> Vec<BigInt> {
    let c = content(a);
    let sign = if a.last().is_some_and(|x| x.is_negative()) { -BigInt::one() } else { BigInt::one() };
    a.iter().map(|x| x / &c * &sign).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factor_mod_small_prime() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        // x^2 - 1 = (x - 1)(x + 1) over F_7
        let f = vec![6u64, 0, 1];
        let fac = fp_factor_squarefree(&f, 7, &mut rng);
        assert_eq!(fac, vec![vec![1, 1], vec![6, 1]]);
        // x^2 + 1 is irreducible mod 7
        assert_eq!(fp_factor_squarefree(&[1, 0, 1], 7, &mut rng), vec![vec![1, 0, 1]]);
        // x^4 + 1 splits into two quadratics mod 7
        let g = fp_factor_squarefree(&[1, 0, 0, 0, 1], 7, &mut rng);
        assert_eq!(g.len(), 2);
        assert_eq!(fp_mul(&g[0], &g[1], 7), vec![1, 0, 0, 0, 1]);
    }

    #[test]
    fn xgcd_identity() {
        let p = 11;
        let a = vec![3u64, 0, 1];
        let b = vec![1u64, 1];
        let (g, s, t) = fp_xgcd(&a, &b, p);
        assert_eq!(g, vec![1]);
        let neg_tb = fp_sub(&[], &fp_mul(&t, &b, p), p);
        let lhs = fp_sub(&fp_mul(&s, &a, p), &neg_tb, p);
        assert_eq!(lhs, vec![1]);
    }
}
