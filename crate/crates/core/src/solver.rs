//! Finite sections in binary64: tridiagonal solves, inverse-norm estimates,
//! cutoff plans and convergence studies.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fsm::FsmReport;
use crate::operator::Potential;

/// Relative residual accepted from a section solve.
pub const RESIDUAL_TOL: f64 = 1e-9;
/// Default ceiling on `‖A_n⁻¹‖` used by the stability verdict.
pub const DEFAULT_CEILING: f64 = 1e8;

const INVERSE_ITERATIONS: usize = 50;
const INVERSE_ITERATION_RTOL: f64 = 1e-6;

/// LU factorization with partial pivoting of a tridiagonal matrix with unit
/// off-diagonals: `U` has two superdiagonals.
#[derive(Clone, Debug)]
struct TridiagLu {
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    mult: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagLu {
    fn new(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut d = diag.to_vec();
        let mut dl = vec![1.0f64; n.saturating_sub(1)];
        let mut du = vec![1.0; n.saturating_sub(1)];
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut mult = vec![0.0; n.saturating_sub(1)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                let m = if d[i] != 0.0 { dl[i] / d[i] } else { 0.0 };
                mult[i] = m;
                d[i + 1] -= m * du[i];
            } else {
                // Swap rows i and i + 1.
                swapped[i] = true;
                let m = d[i] / dl[i];
                mult[i] = m;
                d[i] = dl[i];
                let tmp = d[i + 1];
                d[i + 1] = du[i] - m * tmp;
                du[i] = tmp;
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -m;
                }
            }
            dl[i] = 0.0;
        }
        TridiagLu {
            d,
            du,
            du2,
            mult,
            swapped,
        }
    }

    fn min_pivot(&self) -> f64 {
        self.d.iter().fold(f64::INFINITY, |m, x| m.min(x.abs()))
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.d.len();
        let mut x = b.to_vec();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                x.swap(i, i + 1);
            }
            x[i + 1] -= self.mult[i] * x[i];
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            if i + 1 < n {
                s -= self.du[i] * x[i + 1];
            }
            if i + 2 < n {
                s -= self.du2[i] * x[i + 2];
            }
            x[i] = s / self.d[i];
        }
        x
    }
}

fn section_diagonal(p: &Potential, l: i64, r: i64) -> Vec<f64> {
    (l..=r).map(|n| p.value(n).to_f64()).collect()
}

fn tridiag_apply(diag: &[f64], x: &[f64]) -> Vec<f64> {
    let n = diag.len();
    (0..n)
        .map(|i| {
            let mut s = diag[i] * x[i];
            if i > 0 {
                s += x[i - 1];
            }
            if i + 1 < n {
                s += x[i + 1];
            }
            s
        })
        .collect()
}

fn max_norm(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectionSolve {
    pub l: i64,
    pub r: i64,
    pub x: Vec<f64>,
    pub residual: f64,
    pub min_pivot: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Solves `H_{l..r} x = rhs`, reporting pivot size and residual.
pub fn solve_section_detailed(p: &Potential, rhs: &[f64], l: i64, r: i64) -> Result<SectionSolve> {
    if r < l {
        return Err(Error::EmptySection);
    }
    let n = (r - l + 1) as usize;
    if rhs.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: rhs.len(),
        });
    }
    let diag = section_diagonal(p, l, r);
    let lu = TridiagLu::new(&diag);
    let min_pivot = lu.min_pivot();
    if min_pivot == 0.0 {
        return Err(Error::Singular { pivot: 0.0 });
    }
    let x = lu.solve(rhs);
    let ax = tridiag_apply(&diag, &x);
    let residual = max_norm(&ax.iter().zip(rhs).map(|(a, b)| a - b).collect::<Vec<_>>());
    if !residual.is_finite() || residual > RESIDUAL_TOL * max_norm(rhs) {
        return Err(Error::Singular { pivot: min_pivot });
    }
    let scale = diag.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let mut warnings = Vec::new();
    if min_pivot < 1e-8 * scale {
        warnings.push(format!(
            "near-singular section [{l}, {r}]: pivot {min_pivot:e}"
        ));
    }
    Ok(SectionSolve {
        l,
        r,
        x,
        residual,
        min_pivot,
        warnings,
    })
}

pub fn solve_section(p: &Potential, rhs: &[f64], l: i64, r: i64) -> Result<Vec<f64>> {
    solve_section_detailed(p, rhs, l, r).map(|s| s.x)
}

/// Number of eigenvalues of the section below `t`, by the signs of the
/// `LDLᵀ` pivots of `A - t`.
fn count_below(diag: &[f64], t: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for (i, &d) in diag.iter().enumerate() {
        q = d - t - if i == 0 { 0.0 } else { 1.0 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (d.abs() + t.abs() + 2.0);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Smallest eigenvalue modulus by geometric bisection on Sturm counts.
fn smallest_abs_eigenvalue(diag: &[f64]) -> f64 {
    let inside = |t: f64| count_below(diag, t) > count_below(diag, -t);
    let mut hi = diag.iter().fold(0.0f64, |m, d| m.max(d.abs())) + 2.0;
    let mut lo = f64::MIN_POSITIVE;
    if inside(lo) {
        return 0.0;
    }
    while hi / lo > 1.0 + 1e-12 {
        let mid = (lo * hi).sqrt();
        if inside(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `1 / σ_min(H_{l..r})`, or `None` when the section is exactly singular.
///
/// Inverse iteration on `AᵀA`; when it has not settled, Sturm-count
/// bisection on the symmetric section gives the value instead.
pub fn inverse_norm_estimate(p: &Potential, l: i64, r: i64) -> Option<f64> {
    let diag = section_diagonal(p, l, r);
    let n = diag.len();
    let lu = TridiagLu::new(&diag);
    if lu.min_pivot() == 0.0 {
        return None;
    }
    let mut x: Vec<f64> = (0..n).map(|i| 1.0 + (i % 7) as f64 / 10.0).collect();
    let mut prev = 0.0;
    for _ in 0..INVERSE_ITERATIONS {
        let nx = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        x.iter_mut().for_each(|v| *v /= nx);
        let y = lu.solve(&x);
        // x·(AᵀA)⁻¹x = ‖A⁻¹x‖² for symmetric A.
        let est = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !est.is_finite() {
            return None;
        }
        if (est - prev).abs() <= INVERSE_ITERATION_RTOL * est {
            return Some(est);
        }
        x = lu.solve(&y);
        prev = est;
    }
    let smin = smallest_abs_eigenvalue(&diag);
    (smin > 0.0).then(|| 1.0 / smin)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlanMode {
    Symmetric,
    OneSided,
    Adapted,
}

/// Rule producing section bounds `(l_n, r_n)` for `n = 1, 2, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutoffPlan {
    pub mode: PlanMode,
    pub period: usize,
    pub avoid_left: Vec<usize>,
    pub avoid_right: Vec<usize>,
}

impl CutoffPlan {
    /// `[-n, n]`.
    pub fn symmetric() -> Self {
        CutoffPlan {
            mode: PlanMode::Symmetric,
            period: 1,
            avoid_left: Vec::new(),
            avoid_right: Vec::new(),
        }
    }

    /// `[0, n]`.
    pub fn one_sided() -> Self {
        CutoffPlan {
            mode: PlanMode::OneSided,
            period: 1,
            avoid_left: Vec::new(),
            avoid_right: Vec::new(),
        }
    }

    /// Strictly monotone cutoffs whose residues mod `period` avoid the given
    /// classes. Fails if every class is excluded on one side.
    pub fn adapted(period: usize, avoid_left: Vec<usize>, avoid_right: Vec<usize>) -> Result<Self> {
        if period == 0 {
            return Err(Error::EmptyPotential);
        }
        let full = |v: &[usize]| (0..period).all(|c| v.contains(&c));
        if full(&avoid_left) || full(&avoid_right) {
            return Err(Error::Unsupported("every residue class is excluded".into()));
        }
        Ok(CutoffPlan {
            mode: PlanMode::Adapted,
            period,
            avoid_left,
            avoid_right,
        })
    }

    /// Adapted plan from the bad residues of an FSM report.
    pub fn from_report(report: &FsmReport) -> Result<Self> {
        Self::adapted(
            report.period,
            report.bad_left_residues.clone(),
            report.bad_right_residues.clone(),
        )
    }

    fn left_ok(&self, l: i64) -> bool {
        !self
            .avoid_left
            .contains(&(l.rem_euclid(self.period as i64) as usize))
    }

    fn right_ok(&self, r: i64) -> bool {
        !self
            .avoid_right
            .contains(&(r.rem_euclid(self.period as i64) as usize))
    }

    /// Bounds for `n = 1..=count`.
    pub fn pairs(&self, count: usize) -> Vec<(i64, i64)> {
        match self.mode {
            PlanMode::Symmetric => (1..=count as i64).map(|n| (-n, n)).collect(),
            PlanMode::OneSided => (1..=count as i64).map(|n| (0, n)).collect(),
            PlanMode::Adapted => {
                let (mut l, mut r) = (0i64, 0i64);
                (0..count)
                    .map(|_| {
                        l -= 1;
                        while !self.left_ok(l) {
                            l -= 1;
                        }
                        r += 1;
                        while !self.right_ok(r) {
                            r += 1;
                        }
                        (l, r)
                    })
                    .collect()
            }
        }
    }

    pub fn pair(&self, n: usize) -> (i64, i64) {
        *self.pairs(n).last().expect("n >= 1")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Stable,
    Unstable,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub n: usize,
    pub l: i64,
    pub r: i64,
    pub size: usize,
    /// `1/σ_min`; `None` for an exactly singular section.
    pub inverse_norm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub plan: CutoffPlan,
    pub ceiling: f64,
    pub rows: Vec<ProbeRow>,
    pub verdict: Verdict,
    /// Indices `n` in the tail window whose estimate exceeds the ceiling.
    pub witness: Vec<usize>,
    pub max_tail_estimate: Option<f64>,
    pub note: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl ConvergenceReport {
    pub fn max_estimate(&self) -> Option<f64> {
        self.rows
            .iter()
            .try_fold(0.0f64, |m, r| r.inverse_norm.map(|v| m.max(v)))
    }

    pub fn final_error(&self) -> Option<f64> {
        self.rows.last().and_then(|r| r.error)
    }
}

const VERDICT_NOTE: &str =
    "heuristic: stable means the tail-window maximum of 1/sigma_min stays below the ceiling";

fn verdict(
    plan: CutoffPlan,
    rows: Vec<ProbeRow>,
    ceiling: f64,
    warnings: Vec<String>,
) -> ConvergenceReport {
    let tail = &rows[rows.len() / 2..];
    let witness: Vec<usize> = tail
        .iter()
        .filter(|r| r.inverse_norm.is_none_or(|v| v > ceiling))
        .map(|r| r.n)
        .collect();
    let max_tail_estimate = tail
        .iter()
        .try_fold(0.0f64, |m, r| r.inverse_norm.map(|v| m.max(v)));
    ConvergenceReport {
        plan,
        ceiling,
        verdict: if witness.is_empty() {
            Verdict::Stable
        } else {
            Verdict::Unstable
        },
        witness,
        max_tail_estimate,
        rows,
        note: VERDICT_NOTE.into(),
        warnings,
    }
}

pub fn stability_probe(p: &Potential, plan: &CutoffPlan, sections: usize) -> ConvergenceReport {
    stability_probe_with(p, plan, sections, DEFAULT_CEILING)
}

pub fn stability_probe_with(
    p: &Potential,
    plan: &CutoffPlan,
    sections: usize,
    ceiling: f64,
) -> ConvergenceReport {
    let pairs = plan.pairs(sections.max(1));
    let rows: Vec<ProbeRow> = pairs
        .par_iter()
        .enumerate()
        .map(|(i, &(l, r))| ProbeRow {
            n: i + 1,
            l,
            r,
            size: (r - l + 1) as usize,
            inverse_norm: inverse_norm_estimate(p, l, r),
            error: None,
        })
        .collect();
    verdict(plan.clone(), rows, ceiling, Vec::new())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rhs {
    /// Unit vector at the given site.
    Unit(i64),
    /// `b(k) = 2^{-|k|}`.
    Decaying,
}

impl Rhs {
    /// Entry at site `k`.
    pub fn at(&self, k: i64) -> f64 {
        match *self {
            Rhs::Unit(j) => {
                if k == j {
                    1.0
                } else {
                    0.0
                }
            }
            Rhs::Decaying => 0.5f64.powi(k.unsigned_abs().min(2000) as i32),
        }
    }
}

/// Compares section solutions against a reference solve on the plan's
/// section with index `4N`, on each smaller window.
pub fn convergence_study(
    p: &Potential,
    rhs: Rhs,
    plan: &CutoffPlan,
    sections: usize,
) -> Result<ConvergenceReport> {
    let sections = sections.max(1);
    let pairs = plan.pairs(4 * sections);
    let (rl, rr) = pairs[4 * sections - 1];
    let b: Vec<f64> = (rl..=rr).map(|k| rhs.at(k)).collect();
    let reference = solve_section(p, &b, rl, rr)?;
    let rows: Vec<(ProbeRow, Option<String>)> = pairs[..sections]
        .par_iter()
        .enumerate()
        .map(|(i, &(l, r))| {
            let bn: Vec<f64> = (l..=r).map(|k| rhs.at(k)).collect();
            let (error, warn) = match solve_section_detailed(p, &bn, l, r) {
                Ok(s) => {
                    let off = (l - rl) as usize;
                    let err =
                        s.x.iter()
                            .enumerate()
                            .fold(0.0f64, |m, (k, v)| m.max((v - reference[off + k]).abs()));
                    (Some(err), s.warnings.into_iter().next())
                }
                Err(e) => (None, Some(format!("section [{l}, {r}]: {e}"))),
            };
            let row = ProbeRow {
                n: i + 1,
                l,
                r,
                size: (r - l + 1) as usize,
                inverse_norm: inverse_norm_estimate(p, l, r),
                error,
            };
            (row, warn)
        })
        .collect();
    let warnings = rows.iter().filter_map(|(_, w)| w.clone()).collect();
    let rows = rows.into_iter().map(|(r, _)| r).collect();
    Ok(verdict(plan.clone(), rows, DEFAULT_CEILING, warnings))
}
