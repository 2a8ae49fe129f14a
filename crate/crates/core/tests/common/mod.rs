#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use periodic_fsm::{Potential, Scalar};
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=7).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

pub fn rational_potential(max_k: usize) -> impl Strategy<Value = Potential> {
    prop::collection::vec(rational(), 1..=max_k)
        .prop_map(|w| Potential::new(w.into_iter().map(Scalar::rational).collect()).unwrap())
}

pub fn integer_potential(max_k: usize, bound: i64) -> impl Strategy<Value = Potential> {
    prop::collection::vec(-bound..=bound, 1..=max_k).prop_map(|w| Potential::from_ints(&w))
}

pub fn float_potential(max_k: usize) -> impl Strategy<Value = Potential> {
    prop::collection::vec(-4.0f64..4.0, 1..=max_k)
        .prop_map(|w| Potential::new(w.into_iter().map(Scalar::Float).collect()).unwrap())
}

/// Mixed rational and quadratic-surd entries over a common radicand.
pub fn surd_potential(max_k: usize) -> impl Strategy<Value = Potential> {
    (
        prop::sample::select(vec![2i64, 3, 5]),
        prop::collection::vec((rational(), -3i64..=3), 1..=max_k),
    )
        .prop_map(|(d, w)| {
            let root = Scalar::int(d).sqrt().unwrap();
            Potential::new(
                w.into_iter()
                    .map(|(a, b)| &Scalar::rational(a) + &(&Scalar::int(b) * &root))
                    .collect(),
            )
            .unwrap()
        })
}
