use crate::analysis::{Automorphism, Stability};
use crate::rational::{
    charpoly, isolate_roots, round_dyadic, CertifiedRoot, RatMatrix, RatPoly, Rational, RootConfig,
    Scalar,
};
use crate::{Error, Result};
use num_traits::{Signed, Zero};

/// Real eigenvalue with an approximate eigenvector whose error is governed
/// by the precision of the root approximation.
#[derive(Clone, Debug, PartialEq)]
pub struct RealEigenpair {
    pub root: CertifiedRoot,
    /// Scaled so the largest entry has absolute value about 1.
    pub vector: Vec<Rational>,
    pub stability: Stability,
}

impl RealEigenpair {
    pub fn eigenvalue(&self) -> &Rational {
        self.root.real_center()
    }

    pub fn vector_f64(&self) -> Vec<f64> {
        self.vector.iter().map(Scalar::to_f64).collect()
    }
}

/// Approximate eigenvector for the real root `lambda` of the squarefree
/// polynomial `q` with `q(m) = 0`: a column of `h(m)` where
/// `q(x) = (x - lambda) h(x) + r`. Entries are rounded to `bits` fractional
/// bits after scaling.
pub fn eigenvector_from_root(m: &RatMatrix, q: &RatPoly, lambda: &Rational, bits: u32) -> Result<Vec<Rational>> {
    let (h, _) = q.div_rem(&RatPoly::linear(lambda.clone()))?;
    let hm = m.eval_poly(&h)?;
    let best = (0..hm.cols())
        .map(|j| hm.column(j))
        .max_by(|a, b| max_abs(a).cmp(&max_abs(b)))
        .ok_or_else(|| Error::Dimension("empty matrix".into()))?;
    let scale = max_abs(&best);
    if scale.is_zero() {
        return Err(Error::Certification("eigenvector projector vanished".into()));
    }
    Ok(best.iter().map(|c| round_dyadic(&(c / &scale), bits)).collect())
}

fn max_abs(v: &[Rational]) -> Rational {
    v.iter().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
}

/// All real eigenpairs of an automorphism with simple spectrum, sorted by
/// modulus. `bits` controls the precision of roots and vectors.
pub fn real_eigenpairs(a: &Automorphism, bits: u32) -> Result<Vec<RealEigenpair>> {
    let p = charpoly(a.matrix())?;
    if !p.is_squarefree() {
        return Err(Error::Domain("eigenvectors need a squarefree characteristic polynomial".into()));
    }
    let tol = 2f64.powi(-(bits as i32));
    let cfg = RootConfig { tol, max_bits: bits.max(64) * 4 };
    let roots = isolate_roots(&p, cfg)?;
    if roots.iter().any(|r| !r.is_real) {
        return Err(Error::Domain("spectrum has non-real eigenvalues".into()));
    }
    roots
        .into_iter()
        .map(|root| {
            let vector = eigenvector_from_root(a.matrix(), &p, root.real_center(), bits)?;
            let stability = match root.compare_unit() {
                Some(std::cmp::Ordering::Greater) => Stability::Unstable,
                Some(std::cmp::Ordering::Less) => Stability::Stable,
                _ => Stability::Neutral,
            };
            Ok(RealEigenpair { root, vector, stability })
        })
        .collect()
}

/// Largest `‖[u, s]‖ / (‖u‖ ‖s‖)` over unstable `u` and stable `s`
/// eigenvectors; zero when the stable and unstable parts commute.
pub fn stable_unstable_bracket_defect(a: &Automorphism, pairs: &[RealEigenpair]) -> f64 {
    let alg = a.algebra();
    let mut worst: f64 = 0.0;
    for u in pairs.iter().filter(|p| p.stability == Stability::Unstable) {
        for s in pairs.iter().filter(|p| p.stability == Stability::Stable) {
            let (uf, sf) = (u.vector_f64(), s.vector_f64());
            let b = alg.bracket_coords(&uf, &sf);
            worst = worst.max(super::guivarch::norm(&b) / (super::guivarch::norm(&uf) * super::guivarch::norm(&sf)));
        }
    }
    worst
}
