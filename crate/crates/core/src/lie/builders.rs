use super::LieAlgebra;
use crate::rational::{int, Rational};
use crate::{Error, Result};
use num_traits::Zero;

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn basis_bracket(n: usize, terms: &[(usize, i64)]) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    for &(k, c) in terms {
        v[k] += int(c);
    }
    v
}

/// Abelian algebra of dimension `n` with basis `e1, ..., en`.
pub fn abelian(n: usize) -> LieAlgebra {
    LieAlgebra::new((1..=n).map(|i| format!("e{i}")).collect(), []).expect("abelian algebra")
}

/// Three-dimensional Heisenberg algebra, `[X, Y] = Z`.
pub fn heisenberg() -> LieAlgebra {
    LieAlgebra::new(names(&["X", "Y", "Z"]), [(0, 1, basis_bracket(3, &[(2, 1)]))])
        .expect("heisenberg algebra")
}

/// `a ⊕ b`. Names of `b` that collide with names of `a` get a `'` suffix.
pub fn direct_sum(a: &LieAlgebra, b: &LieAlgebra) -> LieAlgebra {
    let (da, db) = (a.dim(), b.dim());
    let n = da + db;
    let mut all: Vec<String> = a.basis_names().to_vec();
    for name in b.basis_names() {
        let mut candidate = name.clone();
        while all.contains(&candidate) || a.basis_names().contains(&candidate) {
            candidate.push('\'');
        }
        all.push(candidate);
    }
    let pad = |v: &[Rational], offset: usize| {
        let mut out = vec![Rational::zero(); n];
        for (k, c) in v.iter().enumerate() {
            out[k + offset] = c.clone();
        }
        out
    };
    let brackets: Vec<_> = a
        .brackets()
        .map(|(i, j, v)| (i, j, pad(v, 0)))
        .chain(b.brackets().map(|(i, j, v)| (i + da, j + da, pad(v, da))))
        .collect();
    LieAlgebra::new(all, brackets).expect("direct sum of valid algebras")
}

/// Free nilpotent algebra on `m` generators. Only step 2 is supported; the
/// basis is the generators followed by `[x_i, x_j]`, `i < j`, in
/// lexicographic order.
pub fn free_nilpotent(m: usize, step: usize) -> Result<LieAlgebra> {
    if m < 2 {
        return Err(Error::Domain("free nilpotent algebra needs at least 2 generators".into()));
    }
    match step {
        2 => {}
        1 => return Ok(abelian(m)),
        _ => return Err(Error::Unimplemented(format!("free nilpotent algebra of step {step}"))),
    }
    let gens: Vec<String> = if m <= 3 {
        ["x", "y", "z"][..m].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=m).map(|i| format!("x{i}")).collect()
    };
    let pairs: Vec<(usize, usize)> =
        (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let n = m + pairs.len();
    let mut all = gens.clone();
    all.extend(pairs.iter().map(|&(i, j)| format!("[{},{}]", gens[i], gens[j])));
    let brackets = pairs
        .iter()
        .enumerate()
        .map(|(k, &(i, j))| (i, j, basis_bracket(n, &[(m + k, 1)])));
    LieAlgebra::new(all, brackets)
}

/// Two Heisenberg algebras over `Q(√3)`, Galois-conjugate, written in the
/// rational basis `a, b, c, d, e, f` where `X = a + b√3`, `Y = c + d√3`,
/// `Z = e + f√3`.
pub fn smale_algebra() -> LieAlgebra {
    let b = |t: &[(usize, i64)]| basis_bracket(6, t);
    LieAlgebra::new(
        names(&["a", "b", "c", "d", "e", "f"]),
        [
            (0, 2, b(&[(4, 1)])),
            (0, 3, b(&[(5, 1)])),
            (1, 2, b(&[(5, 1)])),
            (1, 3, b(&[(4, 3)])),
        ],
    )
    .expect("smale algebra")
}

/// Free two-step nilpotent algebra on `x, y, z`.
pub fn free32_algebra() -> LieAlgebra {
    free_nilpotent(3, 2).expect("free nilpotent (3, 2)")
}

/// Strictly upper triangular `n × n` matrices with basis `E_ij`, `i < j`,
/// ordered by superdiagonal then row. Step `n - 1`.
pub fn strict_upper_triangular(n: usize) -> LieAlgebra {
    let mut idx = Vec::new();
    for d in 1..n {
        for i in 0..n - d {
            idx.push((i, i + d));
        }
    }
    let dim = idx.len();
    let pos = |p: (usize, usize)| idx.iter().position(|&q| q == p);
    let mut brackets = Vec::new();
    for (s, &(i, j)) in idx.iter().enumerate() {
        for (t, &(k, l)) in idx.iter().enumerate().skip(s + 1) {
            // [E_ij, E_kl] = δ_jk E_il − δ_li E_kj
            let mut terms = Vec::new();
            if j == k {
                terms.push((pos((i, l)).unwrap(), 1));
            }
            if l == i {
                terms.push((pos((k, j)).unwrap(), -1));
            }
            if !terms.is_empty() {
                brackets.push((s, t, basis_bracket(dim, &terms)));
            }
        }
    }
    let all = idx.iter().map(|&(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
    LieAlgebra::new(all, brackets).expect("strictly upper triangular algebra")
}
