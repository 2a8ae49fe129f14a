//! Finite section analysis for periodic discrete Schrödinger operators
//! `(Hψ)(n) = ψ(n-1) + v(n)ψ(n) + ψ(n+1)`.

pub mod error;
pub mod fsm;
pub mod operator;
pub mod scalar;
pub mod search;
pub mod solver;
pub mod spectrum;

pub use error::{Error, Result};
pub use fsm::{check_condition, fsm_report, is_fsm_simple_at, FsmReport, Simplicity};
pub use operator::{
    finite_section, monodromy, monodromy_at_zero, monodromy_polynomial, monodromy_via_determinants,
    trace_polynomial, transfer_matrix, FiniteSection, Mat2, Potential,
};
pub use scalar::parse::{parse_list, parse_scalar, Mode};
pub use scalar::{
    isolate_real_roots, rational_roots, sign_at, AlgebraicReal, Interval, QPoly, Ring, Scalar,
    Surd, UniPoly, Var,
};
pub use search::{
    classify_family, counterexample_lambdas, enumerate_family, symbolic_monodromy,
    FamilyClassification, SearchRecord, SymbolicMonodromy,
};
pub use solver::{
    convergence_study, inverse_norm_estimate, solve_section, solve_section_detailed,
    stability_probe, stability_probe_with, ConvergenceReport, CutoffPlan, PlanMode, Rhs,
    SectionSolve, Verdict,
};
pub use spectrum::{
    band_diagram_sweep, check_interlacing, dirichlet_zero_crossings, floquet_eigenvalues,
    is_invertible, linear_grid, one_sided_spectrum, spectrum_bands, Band, BandSet,
    OneSidedSpectrum, SweepRow,
};
