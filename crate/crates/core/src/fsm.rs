//! Applicability of the finite section method to periodic operators on the
//! line and on the half-line.

use serde::{Deserialize, Serialize};

use crate::operator::{monodromy_at_zero, Mat2, Potential};
use crate::scalar::Scalar;
use crate::spectrum::is_invertible;

/// Relative tolerance for the float zero test on `M21`.
pub const FLOAT_EPS: f64 = 1e-9;

/// `M21 != 0` or `|M11| > 1`.
pub fn check_condition(m: &Mat2<Scalar>) -> bool {
    check_condition_with(m, FLOAT_EPS).0
}

/// As [`check_condition`], with an explicit float tolerance; the flag
/// reports a float decision that sat within the tolerance.
pub fn check_condition_with(m: &Mat2<Scalar>, eps: f64) -> (bool, bool) {
    if m.m21.is_exact() {
        let passes = m.m21.signum() != 0 || (&(&m.m11 * &m.m11) - &Scalar::one()).signum() > 0;
        return (passes, false);
    }
    let f = m.map(Scalar::to_f64);
    let norm = [f.m11, f.m12, f.m21, f.m22]
        .iter()
        .fold(1.0f64, |a, x| a.max(x.abs()));
    let tol = eps * norm;
    let m21_zero = f.m21.abs() <= tol;
    let ambiguous = (m21_zero && f.m21 != 0.0) || (m21_zero && (f.m11.abs() - 1.0).abs() <= tol);
    (!m21_zero || f.m11.abs() > 1.0, ambiguous)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FsmReport {
    pub period: usize,
    pub invertible_two_sided: bool,
    pub trace_at_zero: Scalar,
    pub failing_forward_shifts: Vec<usize>,
    pub failing_reversed_shifts: Vec<usize>,
    pub applicable_two_sided: bool,
    pub applicable_one_sided: bool,
    /// Left cutoffs `l` with `l mod K` in this list hit a non-invertible
    /// compression.
    pub bad_left_residues: Vec<usize>,
    /// Right cutoffs `r` with `r mod K` in this list hit a non-invertible
    /// compression.
    pub bad_right_residues: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Checks every shifted and reversed monodromy at `E = 0`.
pub fn fsm_report(p: &Potential) -> FsmReport {
    let k = p.period();
    let (invertible, trace) = is_invertible(p);
    let mut warnings = Vec::new();
    let mut failing = |reversed: bool| -> Vec<usize> {
        (0..k)
            .filter(|&j| {
                let (ok, ambiguous) =
                    check_condition_with(&monodromy_at_zero(p, j as i64, reversed), FLOAT_EPS);
                if ambiguous {
                    let name = if reversed { "reversed" } else { "forward" };
                    warnings.push(format!(
                        "{name} shift {j}: near-zero M21 decided within tolerance"
                    ));
                }
                !ok
            })
            .collect()
    };
    let failing_forward_shifts = failing(false);
    let failing_reversed_shifts = failing(true);
    let applicable_two_sided =
        invertible && failing_forward_shifts.is_empty() && failing_reversed_shifts.is_empty();
    let applicable_one_sided =
        invertible && !failing_forward_shifts.contains(&0) && failing_reversed_shifts.is_empty();
    let bad_left_residues = failing_forward_shifts.clone();
    let mut bad_right_residues: Vec<usize> = failing_reversed_shifts
        .iter()
        .map(|&j| (j + k - 1) % k)
        .collect();
    bad_right_residues.sort_unstable();
    FsmReport {
        period: k,
        invertible_two_sided: invertible,
        trace_at_zero: trace,
        failing_forward_shifts,
        failing_reversed_shifts,
        applicable_two_sided,
        applicable_one_sided,
        bad_left_residues,
        bad_right_residues,
        warnings,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Simplicity {
    FsmSimpleHere,
    NotInvertibleHere,
    CounterexampleHere,
}

/// Whether this single potential witnesses a failure of FSM-simplicity.
pub fn is_fsm_simple_at(p: &Potential) -> Simplicity {
    let r = fsm_report(p);
    if !r.invertible_two_sided {
        Simplicity::NotInvertibleHere
    } else if r.applicable_two_sided {
        Simplicity::FsmSimpleHere
    } else {
        Simplicity::CounterexampleHere
    }
}
