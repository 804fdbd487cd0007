//! Baseline distributions on `[0, ∞)`, their hazard machinery, the ψ
//! transform family on occurrence probabilities, and numerical checkers
//! for the hazard-shape conditions C1–C8 and the ψ conditions C9/C10.

use crate::error::{Error, Result};
use crate::grid::{GridSpec, Spacing};
use crate::numeric::{centered_diff, scan_convex, scan_monotone};

/// Survival mass below which hazard evaluation is reported as saturated.
pub const SATURATION_EPS: f64 = 1e-14;

/// Quantile accuracy contract: `|F(x) - q| <= QUANTILE_TOL`.
pub const QUANTILE_TOL: f64 = 1e-12;

const FD_REL_STEP: f64 = 1e-6;

/// Which printed form of the Marshall–Olkin extended quasi Lindley CDF to
/// evaluate. `AsPrinted` keeps the extra factor `d` inside the denominator
/// term; `WithoutDenominatorD` drops it, which matches the usual
/// `F / (1 - (1-a) * Fbar)` construction. The printed form is the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoeqlForm {
    AsPrinted,
    WithoutDenominatorD,
}

/// Hazard profile that is constant below `x_lo`, proportional to
/// `x^{-exponent}` on `[x_lo, x_hi]`, and constant beyond `x_hi`.
///
/// The constant tail keeps the cumulative hazard unbounded, so this is a
/// genuine distribution on `[0, ∞)`. Strictly inside the window the hazard
/// is a pure power law, where with `exponent >= 2` every one of C1–C8 holds
/// at once; that makes this the plug-in of choice for generators that must
/// satisfy decreasing-`x r(x)`-type hypotheses on a prescribed window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowPowerHazard {
    pub hazard_at_lo: f64,
    pub x_lo: f64,
    pub x_hi: f64,
    pub exponent: f64,
}

impl WindowPowerHazard {
    pub fn new(hazard_at_lo: f64, x_lo: f64, x_hi: f64, exponent: f64) -> Result<Self> {
        for (name, v) in [
            ("hazard_at_lo", hazard_at_lo),
            ("x_lo", x_lo),
            ("x_hi", x_hi),
            ("exponent", exponent),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter {
                    name,
                    value: v,
                    reason: "must be positive and finite",
                });
            }
        }
        if x_lo >= x_hi {
            return Err(Error::InvalidParameter {
                name: "x_hi",
                value: x_hi,
                reason: "window needs x_lo < x_hi",
            });
        }
        Ok(WindowPowerHazard {
            hazard_at_lo,
            x_lo,
            x_hi,
            exponent,
        })
    }

    fn hazard(&self, x: f64) -> f64 {
        let x = x.max(0.0);
        if x <= self.x_lo {
            self.hazard_at_lo
        } else if x <= self.x_hi {
            self.hazard_at_lo * (x / self.x_lo).powf(-self.exponent)
        } else {
            self.hazard_at_lo * (self.x_hi / self.x_lo).powf(-self.exponent)
        }
    }

    fn cum_hazard(&self, x: f64) -> f64 {
        let r0 = self.hazard_at_lo;
        let s = self.exponent;
        if x <= self.x_lo {
            return r0 * x;
        }
        let head = r0 * self.x_lo;
        let mid_to = x.min(self.x_hi);
        // integral of r0 (u/x_lo)^{-s} du from x_lo to mid_to
        let mid = if (s - 1.0).abs() < 1e-12 {
            r0 * self.x_lo * (mid_to / self.x_lo).ln()
        } else {
            r0 * self.x_lo / (s - 1.0) * (1.0 - (mid_to / self.x_lo).powf(1.0 - s))
        };
        let tail = if x > self.x_hi {
            self.hazard(self.x_hi + 1.0) * (x - self.x_hi)
        } else {
            0.0
        };
        head + mid + tail
    }
}

/// A pluggable absolutely continuous baseline distribution on `[0, ∞)`.
///
/// The CDF extends to `F(x) = 0` for `x < 0`, so composed portfolio
/// formulas stay valid for every `t >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BaselineDistribution {
    /// `F(x) = [1 - exp(-(a x + b x^2 / 2))]^d`, a, d > 0, b >= 0.
    Glfr { a: f64, b: f64, d: f64 },
    /// Extended quasi Lindley ratio form, a, d > 0, b > -1.
    Moeql {
        a: f64,
        b: f64,
        d: f64,
        form: MoeqlForm,
    },
    /// `F(x) = 1 - (1 + x^c)^{-k}`, c, k > 0.
    BurrPower { c: f64, k: f64 },
    /// `F(x) = 1 - (1 + c x)^{-k}`, c, k > 0.
    LomaxPower { c: f64, k: f64 },
    /// Designed hazard profile, see [`WindowPowerHazard`].
    Custom(WindowPowerHazard),
}

fn require_positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: v,
            reason: "must be positive and finite",
        })
    }
}

impl BaselineDistribution {
    pub fn glfr(a: f64, b: f64, d: f64) -> Result<Self> {
        require_positive("a", a)?;
        require_positive("d", d)?;
        if !(b.is_finite() && b >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "b",
                value: b,
                reason: "must be >= 0",
            });
        }
        Ok(BaselineDistribution::Glfr { a, b, d })
    }

    /// Printed-form constructor; see [`MoeqlForm`] for the variant switch.
    pub fn moeql(a: f64, b: f64, d: f64) -> Result<Self> {
        Self::moeql_with_form(a, b, d, MoeqlForm::AsPrinted)
    }

    pub fn moeql_with_form(a: f64, b: f64, d: f64, form: MoeqlForm) -> Result<Self> {
        require_positive("a", a)?;
        require_positive("d", d)?;
        if !(b.is_finite() && b > -1.0) {
            return Err(Error::InvalidParameter {
                name: "b",
                value: b,
                reason: "must be > -1",
            });
        }
        Ok(BaselineDistribution::Moeql { a, b, d, form })
    }

    pub fn burr_power(c: f64, k: f64) -> Result<Self> {
        require_positive("c", c)?;
        require_positive("k", k)?;
        Ok(BaselineDistribution::BurrPower { c, k })
    }

    pub fn lomax_power(c: f64, k: f64) -> Result<Self> {
        require_positive("c", c)?;
        require_positive("k", k)?;
        Ok(BaselineDistribution::LomaxPower { c, k })
    }

    pub fn window_power_hazard(
        hazard_at_lo: f64,
        x_lo: f64,
        x_hi: f64,
        exponent: f64,
    ) -> Result<Self> {
        Ok(BaselineDistribution::Custom(WindowPowerHazard::new(
            hazard_at_lo,
            x_lo,
            x_hi,
            exponent,
        )?))
    }

    /// CDF, extended by zero to negative arguments.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match *self {
            BaselineDistribution::Glfr { a, b, d } => {
                let g = a * x + 0.5 * b * x * x;
                (-(-g).exp_m1()).powf(d)
            }
            BaselineDistribution::Moeql { .. } => 1.0 - self.survival(x),
            BaselineDistribution::BurrPower { c, k } => -(-k * x.powf(c).ln_1p()).exp_m1(),
            BaselineDistribution::LomaxPower { c, k } => -(-k * (c * x).ln_1p()).exp_m1(),
            BaselineDistribution::Custom(w) => -(-w.cum_hazard(x)).exp_m1(),
        }
    }

    /// Survival function `1 - F(x)`, computed in a cancellation-free form
    /// where one exists.
    pub fn survival(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 1.0;
        }
        match *self {
            BaselineDistribution::Glfr { a, b, d } => {
                // 1 - (1 - e^{-g})^d without cancellation in the tail
                let g = a * x + 0.5 * b * x * x;
                -(d * (-(-g).exp()).ln_1p()).exp_m1()
            }
            BaselineDistribution::Moeql { a, b, d, form } => {
                let sbar = (b + 1.0 + d * x) / (b + 1.0) * (-d * x).exp();
                let gfac = match form {
                    MoeqlForm::AsPrinted => (1.0 - a) * d,
                    MoeqlForm::WithoutDenominatorD => 1.0 - a,
                };
                (1.0 - gfac) * sbar / (1.0 - gfac * sbar)
            }
            BaselineDistribution::BurrPower { c, k } => (-k * x.powf(c).ln_1p()).exp(),
            BaselineDistribution::LomaxPower { c, k } => (-k * (c * x).ln_1p()).exp(),
            BaselineDistribution::Custom(w) => (-w.cum_hazard(x)).exp(),
        }
    }

    /// Density, zero below the support.
    pub fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        match *self {
            BaselineDistribution::Glfr { a, b, d } => {
                let g = a * x + 0.5 * b * x * x;
                let base = -(-g).exp_m1();
                d * (a + b * x) * (-g).exp() * base.powf(d - 1.0)
            }
            BaselineDistribution::Moeql { a, b, d, form } => {
                let sbar = (b + 1.0 + d * x) / (b + 1.0) * (-d * x).exp();
                let f_ql = d * (b + d * x) / (b + 1.0) * (-d * x).exp();
                let gfac = match form {
                    MoeqlForm::AsPrinted => (1.0 - a) * d,
                    MoeqlForm::WithoutDenominatorD => 1.0 - a,
                };
                let den = 1.0 - gfac * sbar;
                f_ql * (1.0 - gfac) / (den * den)
            }
            BaselineDistribution::BurrPower { c, k } => {
                c * k * x.powf(c - 1.0) * (-(k + 1.0) * x.powf(c).ln_1p()).exp()
            }
            BaselineDistribution::LomaxPower { c, k } => {
                c * k * (-(k + 1.0) * (c * x).ln_1p()).exp()
            }
            BaselineDistribution::Custom(w) => w.hazard(x) * (-w.cum_hazard(x)).exp(),
        }
    }

    /// Hazard rate `f(x) / (1 - F(x))` from the closed-form density.
    ///
    /// Signals saturation once the survival mass falls below
    /// [`SATURATION_EPS`].
    pub fn hazard(&self, x: f64) -> Result<f64> {
        let s = self.survival(x);
        if s < SATURATION_EPS {
            return Err(Error::Saturated {
                x,
                eps: SATURATION_EPS,
            });
        }
        Ok(self.pdf(x) / s)
    }

    /// Hazard rate with the density replaced by a centered finite
    /// difference of the CDF, step `h = max(1e-6, 1e-6 x)`. The difference
    /// is taken through the survival function, which carries the same
    /// increments without tail cancellation.
    pub fn hazard_fd(&self, x: f64) -> Result<f64> {
        let s = self.survival(x);
        if s < SATURATION_EPS {
            return Err(Error::Saturated {
                x,
                eps: SATURATION_EPS,
            });
        }
        let f = -centered_diff(|u| self.survival(u), x, FD_REL_STEP);
        Ok(f / s)
    }

    /// Quantile by bisection on a geometrically grown bracket from `[0, 1]`.
    pub fn quantile(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::InvalidParameter {
                name: "q",
                value: q,
                reason: "must lie in (0, 1)",
            });
        }
        let mut lo = 0.0_f64;
        let mut hi = 1.0_f64;
        let mut doublings = 0;
        while self.cdf(hi) < q {
            lo = hi;
            hi *= 2.0;
            doublings += 1;
            if doublings > 200 {
                return Err(Error::BracketGrowth(200));
            }
        }
        let mut mid = 0.5 * (lo + hi);
        for _ in 0..2000 {
            mid = 0.5 * (lo + hi);
            let fm = self.cdf(mid);
            if (fm - q).abs() <= QUANTILE_TOL {
                return Ok(mid);
            }
            if fm < q {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= f64::EPSILON * mid.max(f64::MIN_POSITIVE) {
                break;
            }
        }
        Ok(mid)
    }
}

/// The hazard-shape conditions C1–C8 and the ψ conditions C9/C10.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
    C10,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "C{}", *self as u8 + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Satisfied,
    Violated,
    Inconclusive,
}

/// Outcome of a gridded condition check. A `Violated` verdict carries a
/// witness abscissa inside the grid where the defining inequality fails by
/// more than the tolerance; verdicts are grid-relative, never proofs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionReport {
    pub condition: Option<Condition>,
    pub verdict: Verdict,
    pub witness: Option<f64>,
    pub grid: GridSpec,
}

impl ConditionReport {
    pub fn satisfied(&self) -> bool {
        self.verdict == Verdict::Satisfied
    }
}

/// Check one of C1–C8 for a baseline hazard on a grid strictly inside the
/// support (at least 50 points). Monotonicity is decided by adjacent
/// differences, convexity by chord slopes; the hazard derivative needed by
/// C4 and C7 comes from a centered finite difference.
pub fn check_condition(
    dist: &BaselineDistribution,
    cond: Condition,
    grid: &GridSpec,
) -> Result<ConditionReport> {
    if matches!(cond, Condition::C9 | Condition::C10) {
        return Err(Error::Domain(format!(
            "{cond} constrains the psi transform; use psi_check"
        )));
    }
    if grid.points < 50 {
        return Err(Error::Domain(format!(
            "condition checks need >= 50 grid points, got {}",
            grid.points
        )));
    }
    if grid.t_min <= 0.0 {
        return Err(Error::Domain(
            "condition grid must lie strictly inside the support".into(),
        ));
    }
    let xs = grid.values();
    let hz = |x: f64| dist.hazard(x).unwrap_or(f64::NAN);
    let hz_prime = |x: f64| centered_diff(hz, x, FD_REL_STEP);
    let xr = |x: f64| x * hz(x);
    let ys: Vec<f64> = match cond {
        Condition::C1 | Condition::C8 => xs.iter().map(|&x| hz(x)).collect(),
        Condition::C2 | Condition::C5 => xs.iter().map(|&x| xr(x)).collect(),
        Condition::C3 => xs.iter().map(|&x| x * x * hz(x)).collect(),
        Condition::C4 => xs.iter().map(|&x| hz_prime(x) / hz(x)).collect(),
        Condition::C6 => {
            xs.iter()
                .map(|&x| {
                    let r = hz(x);
                    x * x * x * r * r
                })
                .collect()
        }
        Condition::C7 => {
            xs.iter()
                .map(|&x| x * x * centered_diff(xr, x, FD_REL_STEP))
                .collect()
        }
        Condition::C9 | Condition::C10 => unreachable!(),
    };
    let scan = match cond {
        Condition::C1 | Condition::C2 | Condition::C3 | Condition::C6 => {
            scan_monotone(&xs, &ys, false)
        }
        Condition::C4 | Condition::C7 => scan_monotone(&xs, &ys, true),
        Condition::C5 | Condition::C8 => scan_convex(&xs, &ys),
        Condition::C9 | Condition::C10 => unreachable!(),
    };
    Ok(ConditionReport {
        condition: Some(cond),
        verdict: scan.verdict,
        witness: scan.witness,
        grid: *grid,
    })
}

/// Strictly monotone transform of an occurrence probability, mapping
/// `(0, 1)` into `(0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PsiFunction {
    /// `p -> p^k`, k > 0.
    Power { k: f64 },
    /// `p -> exp(c p)`, c > 0.
    Exp { c: f64 },
    /// `p -> exp(-p)`.
    NegExp,
    /// `p -> -ln p`.
    NegLog,
    /// `p -> 1 - p^k`, k > 0.
    OneMinusPower { k: f64 },
}

impl PsiFunction {
    pub fn power(k: f64) -> Result<Self> {
        require_positive("k", k)?;
        Ok(PsiFunction::Power { k })
    }

    pub fn exp(c: f64) -> Result<Self> {
        require_positive("c", c)?;
        Ok(PsiFunction::Exp { c })
    }

    pub fn one_minus_power(k: f64) -> Result<Self> {
        require_positive("k", k)?;
        Ok(PsiFunction::OneMinusPower { k })
    }

    fn check_p(p: f64) -> Result<()> {
        if p > 0.0 && p < 1.0 {
            Ok(())
        } else {
            Err(Error::InvalidParameter {
                name: "p",
                value: p,
                reason: "must lie in (0, 1)",
            })
        }
    }

    pub fn eval(&self, p: f64) -> Result<f64> {
        Self::check_p(p)?;
        Ok(match *self {
            PsiFunction::Power { k } => p.powf(k),
            PsiFunction::Exp { c } => (c * p).exp(),
            PsiFunction::NegExp => (-p).exp(),
            PsiFunction::NegLog => -p.ln(),
            PsiFunction::OneMinusPower { k } => 1.0 - p.powf(k),
        })
    }

    /// Open image interval of the transform over `(0, 1)`.
    pub fn image(&self) -> (f64, f64) {
        match *self {
            PsiFunction::Power { .. } | PsiFunction::OneMinusPower { .. } => (0.0, 1.0),
            PsiFunction::Exp { c } => (1.0, c.exp()),
            PsiFunction::NegExp => ((-1.0_f64).exp(), 1.0),
            PsiFunction::NegLog => (0.0, f64::INFINITY),
        }
    }

    pub fn inverse(&self, w: f64) -> Result<f64> {
        let (lo, hi) = self.image();
        if !(w > lo && w < hi) {
            return Err(Error::Domain(format!(
                "{w} lies outside the psi image ({lo}, {hi})"
            )));
        }
        Ok(match *self {
            PsiFunction::Power { k } => w.powf(1.0 / k),
            PsiFunction::Exp { c } => w.ln() / c,
            PsiFunction::NegExp => -w.ln(),
            PsiFunction::NegLog => (-w).exp(),
            PsiFunction::OneMinusPower { k } => (1.0 - w).powf(1.0 / k),
        })
    }

    /// Map a probability vector through the transform.
    pub fn eval_vec(&self, ps: &[f64]) -> Result<Vec<f64>> {
        ps.iter().map(|&p| self.eval(p)).collect()
    }
}

/// Verify C9 (convex increasing) or C10 (convex decreasing) for a ψ
/// transform on a 1000-point grid over (0.001, 0.999).
pub fn psi_check(psi: &PsiFunction, cond: Condition) -> Result<ConditionReport> {
    let increasing = match cond {
        Condition::C9 => true,
        Condition::C10 => false,
        other => {
            return Err(Error::Domain(format!(
                "{other} constrains the baseline hazard; use check_condition"
            )))
        }
    };
    let grid = GridSpec::new(0.001, 0.999, 1000, Spacing::Linear)?;
    let xs = grid.values();
    let ys: Vec<f64> = xs
        .iter()
        .map(|&p| psi.eval(p).unwrap_or(f64::NAN))
        .collect();
    let mono = scan_monotone(&xs, &ys, increasing);
    let convex = scan_convex(&xs, &ys);
    let (verdict, witness) = match (mono.verdict, convex.verdict) {
        (Verdict::Violated, _) => (Verdict::Violated, mono.witness),
        (_, Verdict::Violated) => (Verdict::Violated, convex.witness),
        (Verdict::Satisfied, Verdict::Satisfied) => (Verdict::Satisfied, None),
        _ => (
            Verdict::Inconclusive,
            mono.witness.or(convex.witness),
        ),
    };
    Ok(ConditionReport {
        condition: Some(cond),
        verdict,
        witness,
        grid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exponential() -> BaselineDistribution {
        // GLFR with b = 0, d = 1 is the unit exponential
        BaselineDistribution::glfr(1.0, 0.0, 1.0).unwrap()
    }

    #[test]
    fn construction_rejects_bad_parameters() {
        assert!(BaselineDistribution::glfr(0.0, 0.0, 1.0).is_err());
        assert!(BaselineDistribution::glfr(1.0, -0.1, 1.0).is_err());
        assert!(BaselineDistribution::moeql(0.1, -1.0, 0.8).is_err());
        assert!(BaselineDistribution::moeql(-0.1, 0.0, 0.8).is_err());
        assert!(BaselineDistribution::burr_power(5.0, 0.0).is_err());
        assert!(BaselineDistribution::lomax_power(-5.0, 0.2).is_err());
        assert!(BaselineDistribution::window_power_hazard(1.0, 2.0, 1.0, 2.5).is_err());
    }

    #[test]
    fn exponential_cdf_at_ln2_is_half() {
        let d = exponential();
        assert!((d.cdf(std::f64::consts::LN_2) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn burr_cdf_is_zero_at_origin_and_below() {
        let d = BaselineDistribution::burr_power(5.0, 4.0).unwrap();
        assert_eq!(d.cdf(0.0), 0.0);
        assert_eq!(d.cdf(-3.0), 0.0);
    }

    #[test]
    fn moeql_printed_value_at_one() {
        // frozen reference value, 50-digit arithmetic: the printed ratio form
        // exceeds 1 here, which is exactly why the variant switch exists
        let d = BaselineDistribution::moeql(0.1, -0.9, 0.8).unwrap();
        assert!((d.cdf(1.0) - 1.592_319_718_592_817_2).abs() < 1e-12);
        let v = BaselineDistribution::moeql_with_form(0.1, -0.9, 0.8, MoeqlForm::WithoutDenominatorD)
            .unwrap();
        assert!((v.cdf(1.0) - 1.153_205_595_450_516_5).abs() < 1e-12);
    }

    #[test]
    fn moeql_with_valid_parameters_is_a_cdf() {
        let d = BaselineDistribution::moeql(0.5, 1.0, 1.0).unwrap();
        assert_eq!(d.cdf(0.0), 0.0);
        let mut prev = 0.0;
        for i in 1..=400 {
            let x = i as f64 * 0.05;
            let f = d.cdf(x);
            assert!(f >= prev - 1e-15 && f <= 1.0, "x={x} f={f}");
            prev = f;
        }
        assert!(d.cdf(60.0) > 1.0 - 1e-9);
    }

    #[test]
    fn hazards_match_known_forms() {
        // constant hazard for the exponential
        assert!((exponential().hazard(3.0).unwrap() - 1.0).abs() < 1e-10);
        // linear failure rate at d = 1: r(x) = a + b x
        let lfr = BaselineDistribution::glfr(1.0, 2.0, 1.0).unwrap();
        assert!((lfr.hazard(0.5).unwrap() - 2.0).abs() < 1e-10);
        // r(x) = 1 / (1 + 5x) for the heavy-tail ratio family
        let lx = BaselineDistribution::lomax_power(5.0, 0.2).unwrap();
        assert!((lx.hazard(0.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((lx.hazard(1.0).unwrap() - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn hazard_saturates_deep_in_the_tail() {
        let d = exponential();
        assert!(matches!(d.hazard(60.0), Err(Error::Saturated { .. })));
    }

    #[test]
    fn closed_form_and_finite_difference_hazards_agree() {
        let dists = [
            exponential(),
            BaselineDistribution::glfr(1.2, 0.7, 0.5).unwrap(),
            BaselineDistribution::burr_power(5.0, 4.0).unwrap(),
            BaselineDistribution::lomax_power(5.0, 0.2).unwrap(),
            BaselineDistribution::moeql(0.5, 1.0, 1.0).unwrap(),
            BaselineDistribution::window_power_hazard(1.0, 0.5, 8.0, 2.5).unwrap(),
        ];
        for d in &dists {
            // interior points, short of where the tails saturate
            for i in 1..26 {
                let x = 0.2 + i as f64 * 0.15;
                let a = d.hazard(x).unwrap();
                let b = d.hazard_fd(x).unwrap();
                assert!(
                    (a - b).abs() <= 1e-5 * a.abs().max(1.0),
                    "{d:?} at x={x}: closed {a} vs fd {b}"
                );
            }
        }
    }

    #[test]
    fn quantile_inverts_the_cdf() {
        let d = exponential();
        assert!((d.quantile(0.5).unwrap() - std::f64::consts::LN_2).abs() < 1e-10);
        // closed-form inversion of the Burr family at q = 0.9
        let burr = BaselineDistribution::burr_power(5.0, 4.0).unwrap();
        let expected = (10.0_f64.powf(0.25) - 1.0).powf(0.2);
        assert!((burr.quantile(0.9).unwrap() - expected).abs() < 1e-10);
        assert!(burr.quantile(0.0).is_err());
        assert!(burr.quantile(1.0).is_err());
    }

    #[test]
    fn quantile_roundtrip_across_families() {
        let dists = [
            BaselineDistribution::glfr(0.8, 1.5, 0.5).unwrap(),
            BaselineDistribution::burr_power(2.0, 1.5).unwrap(),
            BaselineDistribution::lomax_power(1.0, 2.0).unwrap(),
            BaselineDistribution::moeql(0.5, 1.0, 1.0).unwrap(),
            BaselineDistribution::window_power_hazard(0.8, 0.5, 6.0, 2.2).unwrap(),
        ];
        for d in &dists {
            for i in 1..100 {
                let q = i as f64 / 100.0;
                let x = d.quantile(q).unwrap();
                assert!((d.cdf(x) - q).abs() <= 1e-10, "{d:?} q={q}");
            }
            // the defining accuracy contract at the median
            let x = d.quantile(0.5).unwrap();
            assert!((d.cdf(x) - 0.5).abs() <= QUANTILE_TOL, "{d:?}");
        }
    }

    #[test]
    fn density_is_nonnegative_and_integrates_to_one() {
        let dists = [
            BaselineDistribution::glfr(1.2, 0.7, 0.5).unwrap(),
            BaselineDistribution::glfr(0.8, 0.0, 2.0).unwrap(),
            BaselineDistribution::burr_power(5.0, 4.0).unwrap(),
            BaselineDistribution::lomax_power(2.0, 1.5).unwrap(),
            BaselineDistribution::moeql(0.5, 1.0, 1.0).unwrap(),
            BaselineDistribution::window_power_hazard(1.0, 0.5, 8.0, 2.5).unwrap(),
        ];
        for d in &dists {
            // Simpson quadrature in u = sqrt(x): the substitution
            // integral f(x) dx = integral 2 u f(u^2) du absorbs the
            // x^{shape-1} singularity at the origin for shape >= 1/2.
            // Long flat tails are handled exactly by the survival term,
            // so the cut point is capped to keep the grid resolved.
            let hi = d.quantile(0.999999).unwrap().min(50.0);
            let u_hi = hi.sqrt();
            let n = 20_000;
            let h = u_hi / n as f64;
            let g = |u: f64| {
                let u = u.max(1e-9);
                2.0 * u * d.pdf(u * u)
            };
            let mut bulk = g(0.0) + g(u_hi);
            for i in 1..n {
                let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                let f = g(i as f64 * h);
                assert!(f >= 0.0, "{d:?} density negative near u-index {i}");
                bulk += w * f;
            }
            bulk = bulk * h / 3.0;
            // the quadrature must reproduce the CDF up to the cut point
            assert!(
                (bulk - d.cdf(hi)).abs() < 1e-6,
                "{d:?} bulk mass {bulk} vs {}",
                d.cdf(hi)
            );
            let mass = bulk + d.survival(hi);
            assert!((mass - 1.0).abs() < 1e-6, "{d:?} density mass {mass}");
        }
    }

    #[test]
    fn glfr_with_unit_shape_reduces_to_linear_failure_rate() {
        let d = BaselineDistribution::glfr(0.7, 1.3, 1.0).unwrap();
        for i in 0..=1000 {
            let x = i as f64 * 0.01;
            let direct = -(-(0.7 * x + 0.65 * x * x)).exp_m1();
            assert!((d.cdf(x) - direct).abs() <= 1e-14);
        }
    }

    #[test]
    fn cdf_is_monotone_on_dense_grids() {
        let dists = [
            BaselineDistribution::glfr(1.0, 0.5, 2.0).unwrap(),
            BaselineDistribution::burr_power(5.0, 4.0).unwrap(),
            BaselineDistribution::lomax_power(5.0, 0.2).unwrap(),
            BaselineDistribution::moeql(0.2, 0.5, 0.9).unwrap(),
            BaselineDistribution::window_power_hazard(1.0, 0.5, 8.0, 2.5).unwrap(),
        ];
        for d in &dists {
            assert_eq!(d.cdf(0.0), 0.0);
            let mut prev = -1.0;
            for i in 0..10_000 {
                let f = d.cdf(i as f64 * 0.01);
                // slack of one ulp at unit scale for ratio-form rounding
                assert!(f >= prev - 1e-15 && (-1e-15..=1.0 + 1e-15).contains(&f), "{d:?} {f}");
                prev = f;
            }
        }
    }

    #[test]
    fn condition_checks_on_reference_hazards() {
        let lx = BaselineDistribution::lomax_power(5.0, 0.2).unwrap();
        let g = GridSpec::linear(1e-3, 50.0, 400).unwrap();
        assert!(check_condition(&lx, Condition::C1, &g).unwrap().satisfied());
        assert!(check_condition(&lx, Condition::C8, &g).unwrap().satisfied());
        // increasing hazard a + b x violates C1 with a witness
        let lfr = BaselineDistribution::glfr(1.0, 1.0, 1.0).unwrap();
        let g = GridSpec::linear(1e-3, 10.0, 400).unwrap();
        let rep = check_condition(&lfr, Condition::C1, &g).unwrap();
        assert_eq!(rep.verdict, Verdict::Violated);
        let w = rep.witness.unwrap();
        assert!(w > g.t_min && w <= g.t_max);
    }

    #[test]
    fn window_power_hazard_satisfies_all_conditions_inside_its_window() {
        let d = BaselineDistribution::window_power_hazard(1.0, 0.5, 10.0, 2.5).unwrap();
        let g = GridSpec::linear(0.6, 9.0, 300).unwrap();
        for cond in [
            Condition::C1,
            Condition::C2,
            Condition::C3,
            Condition::C4,
            Condition::C5,
            Condition::C6,
            Condition::C7,
            Condition::C8,
        ] {
            let rep = check_condition(&d, cond, &g).unwrap();
            assert_eq!(rep.verdict, Verdict::Satisfied, "{cond}: {rep:?}");
        }
        // outside the window the power-law shape is gone and C2 fails
        let wide = GridSpec::linear(0.05, 30.0, 300).unwrap();
        assert_eq!(
            check_condition(&d, Condition::C2, &wide).unwrap().verdict,
            Verdict::Violated
        );
    }

    #[test]
    fn condition_check_rejects_small_or_invalid_grids() {
        let d = exponential();
        let g = GridSpec::linear(0.1, 1.0, 10).unwrap();
        assert!(check_condition(&d, Condition::C1, &g).is_err());
        let g = GridSpec::linear(-1.0, 1.0, 100).unwrap();
        assert!(check_condition(&d, Condition::C1, &g).is_err());
        let g = GridSpec::linear(0.1, 1.0, 100).unwrap();
        assert!(check_condition(&d, Condition::C9, &g).is_err());
    }

    #[test]
    fn psi_eval_and_inverse_roundtrip() {
        let psis = [
            PsiFunction::power(2.0).unwrap(),
            PsiFunction::exp(1.0).unwrap(),
            PsiFunction::NegExp,
            PsiFunction::NegLog,
            PsiFunction::one_minus_power(3.0).unwrap(),
        ];
        for psi in &psis {
            for i in 1..99 {
                let p = 0.01 + 0.98 * i as f64 / 98.0;
                let w = psi.eval(p).unwrap();
                assert!((psi.inverse(w).unwrap() - p).abs() <= 1e-10, "{psi:?} p={p}");
            }
        }
    }

    #[test]
    fn psi_square_matches_reference_point() {
        let psi = PsiFunction::power(2.0).unwrap();
        assert!((psi.eval(0.5).unwrap() - 0.25).abs() < 1e-15);
        assert!((psi.inverse(0.25).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn psi_domain_errors() {
        let psi = PsiFunction::NegExp;
        assert!(psi.eval(0.0).is_err());
        assert!(psi.eval(1.0).is_err());
        assert!(psi.inverse(2.0).is_err());
        assert!(psi.inverse(0.1).is_err());
    }

    #[test]
    fn psi_condition_verdicts() {
        // convex increasing
        let rep = psi_check(&PsiFunction::power(2.0).unwrap(), Condition::C9).unwrap();
        assert_eq!(rep.verdict, Verdict::Satisfied);
        // convex decreasing
        assert!(psi_check(&PsiFunction::NegExp, Condition::C10).unwrap().satisfied());
        assert!(psi_check(&PsiFunction::NegLog, Condition::C10).unwrap().satisfied());
        // concave decreasing fails C10
        let rep = psi_check(&PsiFunction::one_minus_power(3.0).unwrap(), Condition::C10).unwrap();
        assert_eq!(rep.verdict, Verdict::Violated);
        // decreasing transform fails the increasing half of C9
        let rep = psi_check(&PsiFunction::one_minus_power(2.0).unwrap(), Condition::C9).unwrap();
        assert_eq!(rep.verdict, Verdict::Violated);
        assert!(psi_check(&PsiFunction::NegLog, Condition::C1).is_err());
    }
}
