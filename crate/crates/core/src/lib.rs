//! Distribution-level comparison of the largest claim amounts arising from
//! heterogeneous portfolios of Bernoulli-thinned risks.
//!
//! A portfolio holds n independent risks: risk i claims with probability
//! `p_i`, and a claimed amount follows `F^{alpha_i}((x - lambda_i)/theta_i)`
//! for a shared baseline CDF `F`. The crate evaluates the distribution of
//! the largest (and k-th largest) claim in closed form, implements the
//! majorization algebra that parameter comparisons are phrased in
//! (five vector preorders, two-row parameter matrices, pairwise-mixing
//! transforms and chains of them), checks stochastic and reversed-hazard
//! dominance between two portfolios on grids, and verifies named ordering
//! theorems end to end: hypothesis checks first, conclusion check second,
//! with any "hypotheses hold but conclusion fails" combination surfaced as
//! an inconsistency.
//!
//! Verdicts from grid checks are grid-relative: `Holds` means no violation
//! was found on the grid, never a proof.

mod error;
mod numeric;

pub mod baseline;
pub mod grid;
pub mod majorization;
pub mod orders;
pub mod portfolio;
pub mod theorems;

pub use baseline::{
    check_condition, psi_check, BaselineDistribution, Condition, ConditionReport, MoeqlForm,
    PsiFunction, Verdict, WindowPowerHazard,
};
pub use error::{Error, Result};
pub use grid::{GridSpec, Spacing};
pub use majorization::{
    apply_t_transform, chain_apply, in_class, is_majorized, is_p_larger, is_reciprocal,
    is_weak_sub, is_weak_super, matrix_in_class, row_means_matrix, solve_single_t, MatrixClass,
    ParamMatrix, TTransform, VectorClass,
};
pub use orders::{
    check_rh, check_st, k1, k2, monotonicity_check, schur_ostrowski_check, Curvature, Direction,
    OrderStatus, OrderVerdict, Relation, RhMethod,
};
pub use portfolio::{ks_statistic, reliability_lower_bound, Portfolio};
pub use theorems::{
    builtin, check_hypotheses, comparison_curve, generate_scenario, induced_window,
    run_counterexample, sweep_theorem, verify_scenario, ChainForm, CounterexampleId,
    CounterexampleRun, CurveRow, Dominant, HypothesisOutcome, HypothesisResult, RhChainPart,
    Scenario, StChainPart, SweepRun, SweepSummary, TheoremId, TheoremReport,
};
