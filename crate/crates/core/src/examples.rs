//! Ready-made automorphisms: the Smale nilmanifold example, the free
//! two-step nilpotent example on three generators, and small test cases.

use crate::analysis::{extend_from_generators, validate_automorphism, Automorphism};
use crate::lie::{abelian, direct_sum, free32_algebra, heisenberg, smale_algebra};
use crate::rational::{RatMatrix, Rational};
use crate::{Error, Result};
use num_traits::Zero;
use std::sync::Arc;

/// Names accepted by [`example`].
pub const EXAMPLE_NAMES: [&str; 4] = ["smale", "free32", "heisenberg", "cat2"];

/// Action on the generators `a, b, c, d` of [`smale_algebra`].
pub const SMALE_BASE: [[i64; 4]; 4] = [
    [26, 45, 71, 123],
    [15, 26, 41, 71],
    [8733, 15126, 28901, 50058],
    [5042, 8733, 16686, 28901],
];

/// Basis `x, y, z, [x,y], [x,z], [y,z]`.
pub const FREE32: [[i64; 6]; 6] = [
    [0, 0, -1, 0, 0, 0],
    [1, 0, 8, 0, 0, 0],
    [0, 1, -1, 0, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1],
    [0, 0, 0, 1, -1, -8],
];

pub const CAT: [[i64; 2]; 2] = [[2, 1], [1, 1]];

fn flat<const N: usize>(rows: &[[i64; N]; N]) -> RatMatrix {
    let data: Vec<i64> = rows.iter().flatten().copied().collect();
    RatMatrix::from_i64(N, N, &data).expect("square literal")
}

/// Smale example: the base block on `a, b, c, d` extended to the centre by
/// bracket compatibility.
pub fn smale() -> Automorphism {
    let alg = smale_algebra();
    let base = flat(&SMALE_BASE);
    let images: Vec<Vec<Rational>> = (0..4)
        .map(|j| {
            let mut v = base.column(j);
            v.resize(6, Rational::zero());
            v
        })
        .collect();
    let m = extend_from_generators(&alg, &[0, 1, 2, 3], &images).expect("smale extension");
    validate_automorphism(Arc::new(alg), m).expect("smale automorphism")
}

pub fn free32() -> Automorphism {
    validate_automorphism(Arc::new(free32_algebra()), flat(&FREE32)).expect("free32 automorphism")
}

/// Cat map on the Heisenberg base; the centre is fixed, so it is not hyperbolic.
pub fn heisenberg_cat() -> Automorphism {
    let alg = heisenberg();
    let cat = flat(&CAT);
    let images: Vec<Vec<Rational>> = (0..2)
        .map(|j| {
            let mut v = cat.column(j);
            v.push(Rational::zero());
            v
        })
        .collect();
    let m = extend_from_generators(&alg, &[0, 1], &images).expect("heisenberg extension");
    validate_automorphism(Arc::new(alg), m).expect("heisenberg automorphism")
}

pub fn cat2() -> Automorphism {
    validate_automorphism(Arc::new(abelian(2)), flat(&CAT)).expect("cat map")
}

/// Two copies of the cat map on `Q^4`: hyperbolic but reducible.
pub fn cat_sum() -> Automorphism {
    let mut data = [[0i64; 4]; 4];
    for (i, row) in CAT.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            data[i][j] = c;
            data[i + 2][j + 2] = c;
        }
    }
    let alg = direct_sum(&abelian(2), &abelian(2));
    validate_automorphism(Arc::new(alg), flat(&data)).expect("cat sum")
}

pub fn example(name: &str) -> Result<Automorphism> {
    match name {
        "smale" => Ok(smale()),
        "free32" => Ok(free32()),
        "heisenberg" => Ok(heisenberg_cat()),
        "cat2" => Ok(cat2()),
        _ => Err(Error::Parse(format!(
            "unknown example {name:?}; expected one of {}",
            EXAMPLE_NAMES.join(", ")
        ))),
    }
}
