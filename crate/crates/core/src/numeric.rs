//! Grid scans for monotonicity and convexity, shared by the condition
//! checkers. Verdicts are non-strict with a relative tolerance; a violation
//! smaller than the absolute noise floor is reported as inconclusive rather
//! than as a refutation.

use crate::baseline::Verdict;

pub(crate) const REL_TOL: f64 = 1e-9;
pub(crate) const NOISE_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Scan {
    pub verdict: Verdict,
    pub witness: Option<f64>,
}

fn scale(a: f64, b: f64) -> f64 {
    a.abs().max(b.abs()).max(1e-300)
}

/// Adjacent-difference sign test. `increasing = false` tests for a
/// nonincreasing sequence.
pub(crate) fn scan_monotone(xs: &[f64], ys: &[f64], increasing: bool) -> Scan {
    debug_assert_eq!(xs.len(), ys.len());
    let mut worst = 0.0_f64;
    let mut witness = None;
    let mut noisy = None;
    for i in 0..ys.len().saturating_sub(1) {
        let (y0, y1) = (ys[i], ys[i + 1]);
        if !(y0.is_finite() && y1.is_finite()) {
            noisy.get_or_insert(xs[i]);
            continue;
        }
        let violation = if increasing { y0 - y1 } else { y1 - y0 };
        if violation > REL_TOL * scale(y0, y1) {
            if violation < NOISE_FLOOR {
                noisy.get_or_insert(xs[i + 1]);
            } else if violation > worst {
                worst = violation;
                witness = Some(xs[i + 1]);
            }
        }
    }
    if witness.is_some() {
        Scan {
            verdict: Verdict::Violated,
            witness,
        }
    } else if let Some(x) = noisy {
        Scan {
            verdict: Verdict::Inconclusive,
            witness: Some(x),
        }
    } else {
        Scan {
            verdict: Verdict::Satisfied,
            witness: None,
        }
    }
}

/// Convexity via nondecreasing chord slopes; valid on nonuniform grids.
pub(crate) fn scan_convex(xs: &[f64], ys: &[f64]) -> Scan {
    debug_assert_eq!(xs.len(), ys.len());
    let mut slopes = Vec::with_capacity(xs.len().saturating_sub(1));
    let mut mids = Vec::with_capacity(xs.len().saturating_sub(1));
    for i in 0..xs.len().saturating_sub(1) {
        slopes.push((ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]));
        mids.push(0.5 * (xs[i] + xs[i + 1]));
    }
    scan_monotone(&mids, &slopes, true)
}

/// Centered finite difference with a scale-aware step.
pub(crate) fn centered_diff(f: impl Fn(f64) -> f64, x: f64, rel_step: f64) -> f64 {
    let h = rel_step.max(rel_step * x.abs());
    (f(x + h) - f(x - h)) / (2.0 * h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_sequences_satisfy_both_directions() {
        let xs: Vec<f64> = (0..100).map(|i| i as f64).collect();
        let ys = vec![3.5; 100];
        assert_eq!(scan_monotone(&xs, &ys, true).verdict, Verdict::Satisfied);
        assert_eq!(scan_monotone(&xs, &ys, false).verdict, Verdict::Satisfied);
    }

    #[test]
    fn identity_is_increasing_not_decreasing() {
        let xs: Vec<f64> = (0..100).map(|i| i as f64 / 99.0).collect();
        let ys = xs.clone();
        assert_eq!(scan_monotone(&xs, &ys, true).verdict, Verdict::Satisfied);
        let s = scan_monotone(&xs, &ys, false);
        assert_eq!(s.verdict, Verdict::Violated);
        assert!(s.witness.is_some());
    }

    #[test]
    fn parabola_is_convex() {
        let xs: Vec<f64> = (0..200).map(|i| -1.0 + i as f64 / 99.5).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x * x).collect();
        assert_eq!(scan_convex(&xs, &ys).verdict, Verdict::Satisfied);
        let neg: Vec<f64> = ys.iter().map(|y| -y).collect();
        assert_eq!(scan_convex(&xs, &neg).verdict, Verdict::Violated);
    }

    #[test]
    fn non_finite_values_yield_inconclusive() {
        let xs: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let mut ys: Vec<f64> = xs.iter().map(|x| -x).collect();
        ys[4] = f64::NAN;
        assert_eq!(
            scan_monotone(&xs, &ys, false).verdict,
            Verdict::Inconclusive
        );
    }
}
