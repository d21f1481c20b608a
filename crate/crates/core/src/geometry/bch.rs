use crate::rational::{Rational, Scalar};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

/// Largest nilpotency step the BCH product supports.
pub const MAX_BCH_DEPTH: usize = 6;

/// A word over `{X = 0, Y = 1}` standing for the right-nested bracket
/// `[w_1, [w_2, ..., [w_{k-1}, w_k]]]`, with its Dynkin coefficient.
pub type DynkinTerm = (Vec<u8>, Rational);

fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * Rational::from_integer(k.into()))
}

/// Aggregated Dynkin terms of total length at most `depth`, innermost
/// bracket normalised to `[X, Y]`; words ending in `[a, a]` are dropped.
pub fn dynkin_terms(depth: usize) -> &'static [DynkinTerm] {
    static TABLES: [OnceLock<Vec<DynkinTerm>>; MAX_BCH_DEPTH + 1] =
        [const { OnceLock::new() }; MAX_BCH_DEPTH + 1];
    assert!(depth <= MAX_BCH_DEPTH, "BCH depth {depth} exceeds {MAX_BCH_DEPTH}");
    TABLES[depth].get_or_init(|| build_terms(depth))
}

fn build_terms(depth: usize) -> Vec<DynkinTerm> {
    let mut acc: BTreeMap<Vec<u8>, Rational> = BTreeMap::new();
    for total in 1..=depth {
        // blocks (r_i, s_i) with r_i + s_i >= 1 summing to `total`
        let mut stack: Vec<(Vec<(usize, usize)>, usize)> = vec![(Vec::new(), 0)];
        while let Some((blocks, used)) = stack.pop() {
            if used == total {
                let n = blocks.len();
                let mut denom = Rational::from_integer((n * total).into());
                let mut word = Vec::with_capacity(total);
                for &(r, s) in &blocks {
                    denom *= factorial(r) * factorial(s);
                    word.extend(std::iter::repeat_n(0u8, r));
                    word.extend(std::iter::repeat_n(1u8, s));
                }
                let mut sign = if n % 2 == 1 { Rational::one() } else { -Rational::one() };
                // [.., [Y, X]] = -[.., [X, Y]]
                if total >= 2 && word[total - 2] == 1 && word[total - 1] == 0 {
                    word.swap(total - 2, total - 1);
                    sign = -sign;
                }
                *acc.entry(word).or_insert_with(Rational::zero) += sign / denom;
                continue;
            }
            for size in 1..=total - used {
                for r in 0..=size {
                    let mut b = blocks.clone();
                    b.push((r, size - r));
                    stack.push((b, used + size));
                }
            }
        }
    }
    acc.into_iter()
        .filter(|(w, c)| !c.is_zero() && (w.len() < 2 || w[w.len() - 1] != w[w.len() - 2]))
        .collect()
}

/// `log(exp x · exp y)` truncated at bracket depth `depth`, using `bracket`
/// for the Lie bracket on coordinate vectors.
pub fn bch<F: Scalar>(
    x: &[F],
    y: &[F],
    depth: usize,
    bracket: impl Fn(&[F], &[F]) -> Vec<F>,
) -> Vec<F> {
    let n = x.len();
    let mut out = vec![F::zero(); n];
    let mut memo: HashMap<&[u8], Vec<F>> = HashMap::new();
    let letter = |l: u8| if l == 0 { x } else { y };
    for (word, coeff) in dynkin_terms(depth) {
        let v = nested(word, &letter, &bracket, &mut memo);
        if v.iter().all(|c| c.is_zero()) {
            continue;
        }
        let c = F::from_rational(coeff);
        for (o, vi) in out.iter_mut().zip(&v) {
            *o = o.clone() + c.clone() * vi.clone();
        }
    }
    out
}

fn nested<'w, F: Scalar + 'w>(
    word: &'w [u8],
    letter: &impl Fn(u8) -> &'w [F],
    bracket: &impl Fn(&[F], &[F]) -> Vec<F>,
    memo: &mut HashMap<&'w [u8], Vec<F>>,
) -> Vec<F> {
    if word.len() == 1 {
        return letter(word[0]).to_vec();
    }
    if let Some(v) = memo.get(word) {
        return v.clone();
    }
    let inner = nested(&word[1..], letter, bracket, memo);
    let v = if inner.iter().all(|c| c.is_zero()) {
        inner
    } else {
        bracket(letter(word[0]), &inner)
    };
    memo.insert(word, v.clone());
    v
}
