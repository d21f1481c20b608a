use super::bch::{bch, MAX_BCH_DEPTH};
use crate::lie::LieAlgebra;
use crate::rational::{Rational, Scalar};
use crate::{Error, Result};
use std::sync::Arc;

/// Simply connected nilpotent group in exponential coordinates of the first
/// kind, stored through its Lie algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentGroup {
    algebra: Arc<LieAlgebra>,
    step: usize,
}

impl NilpotentGroup {
    pub fn new(algebra: Arc<LieAlgebra>) -> Result<Self> {
        let step = algebra.step()?;
        if step > MAX_BCH_DEPTH {
            return Err(Error::Unimplemented(format!(
                "BCH product for step {step} (supported up to {MAX_BCH_DEPTH})"
            )));
        }
        Ok(Self { algebra, step })
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `log(exp x · exp y)`
    pub fn product<F: Scalar>(&self, x: &[F], y: &[F]) -> Vec<F> {
        bch(x, y, self.step, |a, b| self.algebra.bracket_coords(a, b))
    }

    /// Left-to-right product of several elements.
    pub fn product_all<F: Scalar>(&self, items: &[&[F]]) -> Vec<F> {
        let mut acc = vec![F::zero(); self.dim()];
        for x in items {
            acc = self.product(&acc, x);
        }
        acc
    }

    pub fn inverse<F: Scalar>(&self, x: &[F]) -> Vec<F> {
        x.iter().map(|c| -c.clone()).collect()
    }

    /// `x^m` for an integer `m`; powers stay on the one-parameter subgroup.
    pub fn power<F: Scalar>(&self, x: &[F], m: i64) -> Vec<F> {
        let m = F::from_i64(m);
        x.iter().map(|c| c.clone() * m.clone()).collect()
    }

    pub fn element<F: Scalar>(self: &Arc<Self>, log_coords: Vec<F>) -> Result<GroupElement<F>> {
        GroupElement::new(self.clone(), log_coords)
    }

    pub fn identity<F: Scalar>(self: &Arc<Self>) -> GroupElement<F> {
        GroupElement { group: self.clone(), log_coords: vec![F::zero(); self.dim()] }
    }
}

/// Group element given by its logarithm; `F` is `Rational` for exact work or
/// `f64`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement<F: Scalar = f64> {
    group: Arc<NilpotentGroup>,
    log_coords: Vec<F>,
}

pub type RatGroupElement = GroupElement<Rational>;

impl<F: Scalar> GroupElement<F> {
    pub fn new(group: Arc<NilpotentGroup>, log_coords: Vec<F>) -> Result<Self> {
        if log_coords.len() != group.dim() {
            return Err(Error::Dimension(format!(
                "{} coordinates for a group of dimension {}",
                log_coords.len(),
                group.dim()
            )));
        }
        Ok(Self { group, log_coords })
    }

    pub fn group(&self) -> &Arc<NilpotentGroup> {
        &self.group
    }

    pub fn log_coords(&self) -> &[F] {
        &self.log_coords
    }

    pub fn is_identity(&self) -> bool {
        self.log_coords.iter().all(|c| c.is_zero())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || self.group == other.group {
            Ok(())
        } else {
            Err(Error::Domain("elements belong to different groups".into()))
        }
    }

    pub fn inverse(&self) -> Self {
        Self { group: self.group.clone(), log_coords: self.group.inverse(&self.log_coords) }
    }

    pub fn pow(&self, m: i64) -> Self {
        Self { group: self.group.clone(), log_coords: self.group.power(&self.log_coords, m) }
    }

    pub fn to_f64(&self) -> GroupElement<f64> {
        GroupElement { group: self.group.clone(), log_coords: self.log_coords.iter().map(Scalar::to_f64).collect() }
    }
}

/// `x · y` in exponential coordinates.
pub fn bch_product<F: Scalar>(x: &GroupElement<F>, y: &GroupElement<F>) -> Result<GroupElement<F>> {
    x.check_same(y)?;
    Ok(GroupElement { group: x.group.clone(), log_coords: x.group.product(&x.log_coords, &y.log_coords) })
}

impl<F: Scalar> std::ops::Mul for &GroupElement<F> {
    type Output = GroupElement<F>;

    fn mul(self, rhs: Self) -> GroupElement<F> {
        bch_product(self, rhs).expect("elements of the same group")
    }
}
