//! Gridded verification of stochastic orders between two portfolios, the
//! pairwise-difference Schur curvature probe, and the scalar auxiliary
//! functions whose monotonicity the ordering results lean on.

use crate::baseline::{ConditionReport, SATURATION_EPS};
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::numeric::{scan_monotone, REL_TOL};
use crate::portfolio::Portfolio;

/// Violations beyond this slack refute an order on the grid; smaller
/// excursions are absorbed as rounding.
pub const ORDER_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    St,
    Rh,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderStatus {
    Holds,
    Fails,
    Inconclusive,
}

/// Outcome of a gridded order check between a dominant candidate (the
/// first portfolio argument) and a dominated one. `margin` is the minimal
/// signed slack seen over the grid; `Fails` carries the worst violator;
/// `Holds` is always grid-relative: no violation found on the grid, not a
/// proof.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderVerdict {
    pub relation: Relation,
    pub status: OrderStatus,
    pub margin: f64,
    pub witness: Option<f64>,
    pub points_used: usize,
    pub points_excluded: usize,
}

pub(crate) fn verdict_from_slacks(
    relation: Relation,
    slacks: &[(f64, f64)],
    excluded: usize,
) -> OrderVerdict {
    let mut margin = f64::INFINITY;
    let mut worst: Option<f64> = None;
    let mut undecided = false;
    for &(t, s) in slacks {
        if s.is_nan() {
            undecided = true;
            continue;
        }
        if s < margin {
            margin = s;
            if s < -ORDER_TOL {
                worst = Some(t);
            }
        }
    }
    if slacks.is_empty() {
        return OrderVerdict {
            relation,
            status: OrderStatus::Inconclusive,
            margin: f64::NAN,
            witness: None,
            points_used: 0,
            points_excluded: excluded,
        };
    }
    let status = if worst.is_some() {
        OrderStatus::Fails
    } else if undecided || !margin.is_finite() {
        OrderStatus::Inconclusive
    } else {
        OrderStatus::Holds
    };
    OrderVerdict {
        relation,
        status,
        margin,
        witness: worst,
        points_used: slacks.len(),
        points_excluded: excluded,
    }
}

/// Does the first portfolio dominate the second in the usual stochastic
/// order? Verified as `max_cdf(a, t) <= max_cdf(b, t)` at every grid point.
pub fn check_st(a: &Portfolio, b: &Portfolio, grid: &GridSpec) -> Result<OrderVerdict> {
    let slacks: Vec<(f64, f64)> = grid
        .values()
        .into_iter()
        .map(|t| (t, b.max_cdf(t) - a.max_cdf(t)))
        .collect();
    Ok(verdict_from_slacks(Relation::St, &slacks, 0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhMethod {
    /// Pointwise dominance of reversed hazard rates.
    RhrCompare,
    /// Nondecrease of the CDF ratio of dominant over dominated, by
    /// adjacent differences.
    RatioMonotone,
}

/// Does the first portfolio dominate the second in the reversed hazard
/// rate order? Grid points where both CDFs sit within `SATURATION_EPS` of
/// one carry no information and are excluded from the verdict.
pub fn check_rh(
    a: &Portfolio,
    b: &Portfolio,
    grid: &GridSpec,
    method: RhMethod,
) -> Result<OrderVerdict> {
    let floor = a.max_lambda().max(b.max_lambda());
    if grid.t_min <= floor {
        return Err(Error::Domain(format!(
            "reversed hazard comparison needs t_min > {floor}, got {}",
            grid.t_min
        )));
    }
    let ts = grid.values();
    let mut excluded = 0usize;
    match method {
        RhMethod::RhrCompare => {
            let mut slacks = Vec::with_capacity(ts.len());
            for t in ts {
                if a.max_cdf(t) >= 1.0 - SATURATION_EPS && b.max_cdf(t) >= 1.0 - SATURATION_EPS {
                    excluded += 1;
                    continue;
                }
                slacks.push((t, a.max_rhr(t)? - b.max_rhr(t)?));
            }
            Ok(verdict_from_slacks(Relation::Rh, &slacks, excluded))
        }
        RhMethod::RatioMonotone => {
            let mut kept: Vec<(f64, f64)> = Vec::with_capacity(ts.len());
            for t in ts {
                let (fa, fb) = (a.max_cdf(t), b.max_cdf(t));
                if fa >= 1.0 - SATURATION_EPS && fb >= 1.0 - SATURATION_EPS {
                    excluded += 1;
                    continue;
                }
                if fb <= 0.0 {
                    return Err(Error::Domain(format!(
                        "CDF ratio undefined at t = {t}: dominated CDF is zero"
                    )));
                }
                kept.push((t, fa / fb));
            }
            let slacks: Vec<(f64, f64)> = kept
                .windows(2)
                .map(|w| (w[1].0, w[1].1 - w[0].1))
                .collect();
            Ok(verdict_from_slacks(Relation::Rh, &slacks, excluded))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curvature {
    Convex,
    Concave,
}

/// Pairwise-difference probe for Schur curvature at a point: evaluates
/// `(x_i - x_j)(∂f/∂x_i - ∂f/∂x_j)` for all pairs with centered finite
/// differences (relative step 1e-6) and reports whether every product has
/// the sign the curvature class demands.
pub fn schur_ostrowski_check(
    f: impl Fn(&[f64]) -> f64,
    point: &[f64],
    curvature: Curvature,
) -> bool {
    let n = point.len();
    assert!(n >= 2, "need at least two coordinates");
    let mut grad = vec![0.0; n];
    let mut work = point.to_vec();
    for i in 0..n {
        let h = 1e-6 * point[i].abs().max(1.0);
        work[i] = point[i] + h;
        let up = f(&work);
        work[i] = point[i] - h;
        let dn = f(&work);
        work[i] = point[i];
        grad[i] = (up - dn) / (2.0 * h);
    }
    let tol = 1e-8 * (1.0 + f(point).abs());
    for i in 0..n {
        for j in (i + 1)..n {
            let s = (point[i] - point[j]) * (grad[i] - grad[j]);
            let ok = match curvature {
                Curvature::Convex => s >= -tol,
                Curvature::Concave => s <= tol,
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// `k1(alpha, t, p) = (1 - t^alpha) / (1 - p (1 - t^alpha))` on
/// `alpha > 0, t in (0,1), p in (0,1)`.
pub fn k1(alpha: f64, t: f64, p: f64) -> f64 {
    debug_assert!(alpha > 0.0 && (0.0..1.0).contains(&t) && (0.0..1.0).contains(&p));
    let z = 1.0 - t.powf(alpha);
    z / (1.0 - p * z)
}

/// `k2(alpha, t, p) = p t^alpha ln t / (1 - p (1 - t^alpha))`, negative on
/// its whole domain since `ln t < 0`.
pub fn k2(alpha: f64, t: f64, p: f64) -> f64 {
    debug_assert!(alpha > 0.0 && (0.0..1.0).contains(&t) && (0.0..1.0).contains(&p));
    let ta = t.powf(alpha);
    p * ta * t.ln() / (1.0 - p * (1.0 - ta))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// Adjacent-difference monotonicity test of a scalar function over a grid;
/// the shared engine behind the condition checkers, exposed for ad-hoc
/// checks. Non-strict, relative tolerance 1e-9.
pub fn monotonicity_check(
    f: impl Fn(f64) -> f64,
    grid: &GridSpec,
    direction: Direction,
) -> ConditionReport {
    let xs = grid.values();
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let scan = scan_monotone(&xs, &ys, direction == Direction::Increasing);
    ConditionReport {
        condition: None,
        verdict: scan.verdict,
        witness: scan.witness,
        grid: *grid,
    }
}

/// The engine's shared relative tolerance.
pub const MONOTONICITY_REL_TOL: f64 = REL_TOL;
