//! Fixed workloads shared by the benchmarks.

use periodic_fsm::{parse_scalar, Mode, Potential, Scalar};

/// Word with an irrational counterexample at `λ = 1/√2`.
pub const FIVE: [u8; 5] = [1, 1, 0, 1, 0];
/// Word with a rational counterexample at `λ = 1/2`.
pub const NINE: [u8; 9] = [1, 1, 0, 1, 0, 1, 0, 1, 1];

pub fn exact(text: &str) -> Scalar {
    parse_scalar(text, Mode::Exact).expect("valid literal")
}

pub fn word_potential(word: &[u8], lambda: &str) -> Potential {
    Potential::from_word(word, &exact(lambda)).expect("valid word")
}

/// `(2, 1/2, 1/2)`, invertible but not applicable.
pub fn three_periodic() -> Potential {
    Potential::new(vec![
        Scalar::int(2),
        Scalar::ratio(1, 2),
        Scalar::ratio(1, 2),
    ])
    .expect("nonempty")
}

/// A rational potential of period `k` with no special structure.
pub fn generic_rational(k: usize) -> Potential {
    Potential::new(
        (0..k as i64)
            .map(|i| Scalar::ratio((7 * i) % 11 - 5, 1 + i % 3))
            .collect(),
    )
    .expect("nonempty")
}
