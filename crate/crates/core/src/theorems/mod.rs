//! Scenario harness: named ordering results, their hypothesis lists, and
//! numerical verification of both hypotheses and conclusions on grids.
//!
//! A scenario bundles a baseline, an optional ψ transform, two portfolios,
//! an optional transform chain and a comparison grid under one theorem id.
//! Verification evaluates exactly the hypothesis list that theorem states
//! (hazard conditions on the argument window the grid induces, vector and
//! matrix class memberships, majorization relations, parameter-equality
//! constraints) and then checks the concluded order on the grid. A report
//! is consistent unless every hypothesis passed while the conclusion
//! failed; that combination is surfaced, never averaged away.

pub mod fixtures;
mod generate;

pub use fixtures::{builtin, BUILTIN_IDS};
pub use generate::{generate_scenario, sweep_theorem, SweepRun, SweepSummary};

use crate::baseline::{
    check_condition, psi_check, BaselineDistribution, Condition, ConditionReport, PsiFunction,
    Verdict,
};
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::majorization::{
    chain_apply, is_majorized, is_p_larger, is_reciprocal, is_weak_sub, is_weak_super, in_class,
    matrix_in_class, solve_single_t, MatrixClass, ParamMatrix, TTransform, VectorClass,
};
use crate::orders::{
    check_rh, check_st, verdict_from_slacks, OrderStatus, OrderVerdict, Relation, RhMethod,
};
use crate::portfolio::Portfolio;

const PARAM_EQ_TOL: f64 = 1e-12;
const CHAIN_TOL: f64 = 1e-9;

/// How the transform chain of a chain-majorization scenario is shaped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChainForm {
    /// Two risks, a single transform (recoverable by the 2×2 solver).
    N2,
    /// Any dimension, exactly one transform.
    Single,
    /// A finite chain whose transforms all transpose the same column pair.
    SameStructure,
    /// A chain of length >= 2 mixing at least two distinct column pairs.
    DifferentStructure,
}

/// Which parameter rows the stochastic-order chain results mix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StChainPart {
    /// Rows (ψ(p), λ) at a common scalar scale; ψ convex increasing.
    Location,
    /// Rows (ψ(p), 1/θ) at a common scalar location; ψ convex decreasing.
    Scale,
}

/// Which parameter rows the reversed-hazard chain results mix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RhChainPart {
    /// Rows (λ, 1/θ), oppositely ordered, common scalar p.
    LocationScale,
    /// Rows (λ, ψ(p)), similarly ordered, common scalar scale.
    LocationPsi,
    /// Rows (1/θ, ψ(p)), oppositely ordered, common scalar location.
    ScalePsi,
}

/// The supported ordering results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    ChainSt { form: ChainForm, part: StChainPart },
    ChainRh { form: ChainForm, part: RhChainPart },
    ShapeSupermajorSt,
    PsiSubmajorSt,
    ScalePLargerSt,
    ScaleReciprocalSt,
    LocationSubmajorSt,
    CombinedStP,
    CombinedStRm,
    KthMajorizedSt,
    LocationSubmajorRh,
    ScaleWeakSuperRh,
    ScaleReciprocalRh,
    ComponentwiseRh,
    PsiSubmajorRh,
    CombinedRhW,
    CombinedRhRm,
}

impl ChainForm {
    fn token(self) -> &'static str {
        match self {
            ChainForm::N2 => "n2",
            ChainForm::Single => "single",
            ChainForm::SameStructure => "same",
            ChainForm::DifferentStructure => "diff",
        }
    }

    const ALL: [ChainForm; 4] = [
        ChainForm::N2,
        ChainForm::Single,
        ChainForm::SameStructure,
        ChainForm::DifferentStructure,
    ];
}

impl TheoremId {
    /// Every supported theorem id.
    pub fn all() -> Vec<TheoremId> {
        let mut out = Vec::new();
        for form in ChainForm::ALL {
            for part in [StChainPart::Location, StChainPart::Scale] {
                out.push(TheoremId::ChainSt { form, part });
            }
            for part in [
                RhChainPart::LocationScale,
                RhChainPart::LocationPsi,
                RhChainPart::ScalePsi,
            ] {
                out.push(TheoremId::ChainRh { form, part });
            }
        }
        out.extend([
            TheoremId::ShapeSupermajorSt,
            TheoremId::PsiSubmajorSt,
            TheoremId::ScalePLargerSt,
            TheoremId::ScaleReciprocalSt,
            TheoremId::LocationSubmajorSt,
            TheoremId::CombinedStP,
            TheoremId::CombinedStRm,
            TheoremId::KthMajorizedSt,
            TheoremId::LocationSubmajorRh,
            TheoremId::ScaleWeakSuperRh,
            TheoremId::ScaleReciprocalRh,
            TheoremId::ComponentwiseRh,
            TheoremId::PsiSubmajorRh,
            TheoremId::CombinedRhW,
            TheoremId::CombinedRhRm,
        ]);
        out
    }

    pub fn id(&self) -> String {
        match self {
            TheoremId::ChainSt { form, part } => {
                let part = match part {
                    StChainPart::Location => "location",
                    StChainPart::Scale => "scale",
                };
                format!("chain-st-{}-{}", form.token(), part)
            }
            TheoremId::ChainRh { form, part } => {
                let part = match part {
                    RhChainPart::LocationScale => "loc-scale",
                    RhChainPart::LocationPsi => "loc-psi",
                    RhChainPart::ScalePsi => "scale-psi",
                };
                format!("chain-rh-{}-{}", form.token(), part)
            }
            TheoremId::ShapeSupermajorSt => "shape-supermajor-st".into(),
            TheoremId::PsiSubmajorSt => "psi-submajor-st".into(),
            TheoremId::ScalePLargerSt => "scale-p-larger-st".into(),
            TheoremId::ScaleReciprocalSt => "scale-reciprocal-st".into(),
            TheoremId::LocationSubmajorSt => "location-submajor-st".into(),
            TheoremId::CombinedStP => "combined-st-p".into(),
            TheoremId::CombinedStRm => "combined-st-rm".into(),
            TheoremId::KthMajorizedSt => "kth-majorized-st".into(),
            TheoremId::LocationSubmajorRh => "location-submajor-rh".into(),
            TheoremId::ScaleWeakSuperRh => "scale-weaksuper-rh".into(),
            TheoremId::ScaleReciprocalRh => "scale-reciprocal-rh".into(),
            TheoremId::ComponentwiseRh => "componentwise-rh".into(),
            TheoremId::PsiSubmajorRh => "psi-submajor-rh".into(),
            TheoremId::CombinedRhW => "combined-rh-weaksuper".into(),
            TheoremId::CombinedRhRm => "combined-rh-reciprocal".into(),
        }
    }

    pub fn parse(s: &str) -> Result<TheoremId> {
        TheoremId::all()
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }

    /// Which order the theorem concludes.
    pub fn relation(&self) -> Relation {
        match self {
            TheoremId::ChainRh { .. }
            | TheoremId::LocationSubmajorRh
            | TheoremId::ScaleWeakSuperRh
            | TheoremId::ScaleReciprocalRh
            | TheoremId::ComponentwiseRh
            | TheoremId::PsiSubmajorRh
            | TheoremId::CombinedRhW
            | TheoremId::CombinedRhRm => Relation::Rh,
            _ => Relation::St,
        }
    }

    /// Which portfolio the conclusion puts on top.
    pub fn dominant(&self) -> Dominant {
        match self {
            TheoremId::ShapeSupermajorSt | TheoremId::KthMajorizedSt => Dominant::V,
            _ => Dominant::U,
        }
    }

    fn is_chain(&self) -> bool {
        matches!(self, TheoremId::ChainSt { .. } | TheoremId::ChainRh { .. })
    }
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominant {
    U,
    V,
}

/// A named verification instance.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub id: String,
    pub theorem: TheoremId,
    pub baseline: BaselineDistribution,
    pub psi: Option<PsiFunction>,
    pub portfolio_u: Portfolio,
    pub portfolio_v: Portfolio,
    pub transforms: Option<Vec<TTransform>>,
    pub grid: GridSpec,
    /// Order of the compared claim statistic for the k-th largest result.
    pub k: Option<usize>,
    /// Resolution of the hazard-condition window checks.
    pub condition_points: usize,
}

#[derive(Debug, Clone)]
pub enum HypothesisOutcome {
    Condition(ConditionReport),
    Relation(bool),
    Structural { ok: bool, detail: String },
}

impl HypothesisOutcome {
    pub fn passed(&self) -> bool {
        match self {
            HypothesisOutcome::Condition(rep) => rep.verdict == Verdict::Satisfied,
            HypothesisOutcome::Relation(ok) => *ok,
            HypothesisOutcome::Structural { ok, .. } => *ok,
        }
    }
}

#[derive(Debug, Clone)]
pub struct HypothesisResult {
    pub label: String,
    pub outcome: HypothesisOutcome,
}

/// Full verification record for one scenario.
#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub scenario_id: String,
    pub theorem: TheoremId,
    pub hypotheses: Vec<HypothesisResult>,
    /// Every hypothesis verified (inconclusive counts as not verified).
    pub applicable: bool,
    pub dominant: Dominant,
    pub conclusion: OrderVerdict,
    /// The ratio-monotonicity route of an rh conclusion, for
    /// cross-validation against the rate comparison.
    pub rh_cross_method: Option<OrderVerdict>,
    /// st check run whenever an rh conclusion holds: rh dominance must
    /// imply st dominance on the same grid.
    pub st_from_rh: Option<OrderVerdict>,
    pub consistent: bool,
}

impl TheoremReport {
    /// Some(false) flags an rh-holds / st-fails combination.
    pub fn hierarchy_ok(&self) -> Option<bool> {
        self.st_from_rh.map(|v| v.status == OrderStatus::Holds)
    }

    pub fn rh_methods_agree(&self) -> Option<bool> {
        self.rh_cross_method
            .map(|v| v.status == self.conclusion.status)
    }
}

/// Hull of baseline arguments `(t - lambda_i)/theta_i` the grid can touch,
/// over both portfolios and every convex mix of their parameters.
pub fn induced_window(s: &Scenario) -> (f64, f64) {
    let lam_hi = s.portfolio_u.max_lambda().max(s.portfolio_v.max_lambda());
    let lam_lo = s
        .portfolio_u
        .lambda()
        .iter()
        .chain(s.portfolio_v.lambda().iter())
        .cloned()
        .fold(f64::INFINITY, f64::min);
    let th_hi = s
        .portfolio_u
        .theta()
        .iter()
        .chain(s.portfolio_v.theta().iter())
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let th_lo = s
        .portfolio_u
        .theta()
        .iter()
        .chain(s.portfolio_v.theta().iter())
        .cloned()
        .fold(f64::INFINITY, f64::min);
    let hi = (s.grid.t_max - lam_lo) / th_lo;
    let lo = ((s.grid.t_min - lam_hi) / th_hi).max(hi * 1e-9).max(1e-12);
    (lo, hi.max(lo * (1.0 + 1e-9)))
}

fn vec_eq(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= PARAM_EQ_TOL)
}

fn common_scalar(v: &[f64]) -> Option<f64> {
    let first = v[0];
    v.iter().all(|x| (x - first).abs() <= PARAM_EQ_TOL).then_some(first)
}

fn componentwise_ge(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| *x >= *y - PARAM_EQ_TOL)
}

struct HypothesisSet<'s> {
    s: &'s Scenario,
    window: GridSpec,
    out: Vec<HypothesisResult>,
}

impl<'s> HypothesisSet<'s> {
    fn new(s: &'s Scenario) -> Result<Self> {
        let (lo, hi) = induced_window(s);
        let window = GridSpec::linear(lo, hi, s.condition_points.max(50))?;
        Ok(HypothesisSet { s, window, out: Vec::new() })
    }

    fn push(&mut self, label: impl Into<String>, outcome: HypothesisOutcome) {
        self.out.push(HypothesisResult {
            label: label.into(),
            outcome,
        });
    }

    fn relation(&mut self, label: impl Into<String>, ok: Result<bool>) -> Result<()> {
        let ok = ok?;
        self.push(label, HypothesisOutcome::Relation(ok));
        Ok(())
    }

    fn condition(&mut self, c: Condition) -> Result<()> {
        let rep = check_condition(&self.s.baseline, c, &self.window)?;
        self.push(
            format!("baseline satisfies {c} on the induced window"),
            HypothesisOutcome::Condition(rep),
        );
        Ok(())
    }

    fn psi_condition(&mut self, c: Condition) -> Result<()> {
        let psi = self.require_psi()?;
        let rep = psi_check(&psi, c)?;
        self.push(format!("psi satisfies {c}"), HypothesisOutcome::Condition(rep));
        Ok(())
    }

    fn require_psi(&self) -> Result<PsiFunction> {
        self.s
            .psi
            .ok_or_else(|| Error::ScenarioShape("theorem needs a psi transform".into()))
    }

    fn structural(&mut self, label: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.push(
            label,
            HypothesisOutcome::Structural {
                ok,
                detail: detail.into(),
            },
        );
    }

    fn alpha_common_scalar_le_one(&mut self) {
        let u = self.s.portfolio_u.alpha();
        let v = self.s.portfolio_v.alpha();
        let ok = match (common_scalar(u), common_scalar(v)) {
            (Some(a), Some(b)) => (a - b).abs() <= PARAM_EQ_TOL && a <= 1.0 + PARAM_EQ_TOL,
            _ => false,
        };
        self.structural(
            "shape parameters equal a common scalar <= 1",
            ok,
            format!("alpha_u = {u:?}, alpha_v = {v:?}"),
        );
    }

    fn alpha_all_one(&mut self) {
        let ok = self
            .s
            .portfolio_u
            .alpha()
            .iter()
            .chain(self.s.portfolio_v.alpha().iter())
            .all(|a| (a - 1.0).abs() <= PARAM_EQ_TOL);
        self.structural("shape parameters all equal one", ok, "");
    }

    fn vectors_equal(&mut self, label: &str, a: &[f64], b: &[f64]) {
        self.structural(label, vec_eq(a, b), format!("{a:?} vs {b:?}"));
    }

    fn scalar_common(&mut self, label: &str, a: &[f64], b: &[f64]) {
        let ok = match (common_scalar(a), common_scalar(b)) {
            (Some(x), Some(y)) => (x - y).abs() <= PARAM_EQ_TOL,
            _ => false,
        };
        self.structural(label, ok, format!("{a:?} vs {b:?}"));
    }

    /// All listed vectors ascending, or all descending.
    fn sorted_class(&mut self, label: &str, vecs: &[&[f64]]) {
        let asc = vecs.iter().all(|v| in_class(v, VectorClass::Eplus));
        let desc = vecs.iter().all(|v| in_class(v, VectorClass::Dplus));
        self.structural(
            label,
            asc || desc,
            if asc {
                "all ascending"
            } else if desc {
                "all descending"
            } else {
                "mixed orderings"
            },
        );
    }

    fn matrix_class(&mut self, label: &str, m: &Result<ParamMatrix>, cls: MatrixClass) {
        match m {
            Ok(m) => {
                let ok = matrix_in_class(m, cls);
                self.structural(label, ok, "");
            }
            Err(e) => self.structural(label, false, e.to_string()),
        }
    }

    /// The chain hypothesis: V's rows are U's rows times the transforms,
    /// with the chain shaped as the form demands.
    fn chain(&mut self, form: ChainForm, c: &Result<ParamMatrix>, d: &Result<ParamMatrix>) {
        let (c, d) = match (c, d) {
            (Ok(c), Ok(d)) => (c, d),
            (Err(e), _) | (_, Err(e)) => {
                let msg = e.to_string();
                self.structural("transform chain carries U onto V", false, msg);
                return;
            }
        };
        let ts = self.s.transforms.as_deref().unwrap_or(&[]);
        let shape_ok = match form {
            ChainForm::N2 => c.n() == 2 && ts.len() <= 1,
            ChainForm::Single => ts.len() == 1,
            ChainForm::SameStructure => {
                !ts.is_empty() && ts.windows(2).all(|w| w[0].structure() == w[1].structure())
            }
            ChainForm::DifferentStructure => {
                ts.len() >= 2 && ts.iter().any(|t| t.structure() != ts[0].structure())
            }
        };
        if !shape_ok {
            self.structural(
                "transform chain matches the stated form",
                false,
                format!("{} transforms for form {form:?}", ts.len()),
            );
            return;
        }
        self.structural("transform chain matches the stated form", true, "");
        let carried = if ts.is_empty() {
            // 2x2 inverse problem: recover the single weight
            solve_single_t(c, d).is_some()
        } else {
            match chain_apply(c, ts) {
                Ok(image) => image.max_abs_diff(d) <= CHAIN_TOL,
                Err(_) => false,
            }
        };
        self.structural("transform chain carries U onto V", carried, "");
    }
}

fn psi_row(psi: &PsiFunction, ps: &[f64]) -> Result<Vec<f64>> {
    psi.eval_vec(ps)
}

fn matrix(top: Result<Vec<f64>>, bottom: Vec<f64>) -> Result<ParamMatrix> {
    ParamMatrix::new(top?, bottom)
}

/// Evaluate the hypothesis list of the scenario's theorem.
pub fn check_hypotheses(s: &Scenario) -> Result<Vec<HypothesisResult>> {
    validate_shape(s)?;
    let mut set = HypothesisSet::new(s)?;
    let u = &s.portfolio_u;
    let v = &s.portfolio_v;
    match s.theorem {
        TheoremId::ChainSt { form, part } => {
            set.alpha_common_scalar_le_one();
            set.condition(Condition::C1)?;
            match part {
                StChainPart::Location => {
                    set.scalar_common("scale parameters equal a common scalar", u.theta(), v.theta());
                    set.psi_condition(Condition::C9)?;
                    let psi = set.require_psi()?;
                    let c = matrix(psi_row(&psi, u.p()), u.lambda().to_vec());
                    let d = matrix(psi_row(&psi, v.p()), v.lambda().to_vec());
                    set.matrix_class("(psi(p), lambda) similarly ordered", &c, MatrixClass::Mn);
                    set.chain(form, &c, &d);
                }
                StChainPart::Scale => {
                    set.scalar_common(
                        "location parameters equal a common scalar",
                        u.lambda(),
                        v.lambda(),
                    );
                    set.psi_condition(Condition::C10)?;
                    let psi = set.require_psi()?;
                    let c = matrix(psi_row(&psi, u.p()), u.inv_theta());
                    let d = matrix(psi_row(&psi, v.p()), v.inv_theta());
                    set.matrix_class(
                        "(psi(p), 1/theta) similarly ordered",
                        &c,
                        MatrixClass::Mn,
                    );
                    set.chain(form, &c, &d);
                }
            }
        }
        TheoremId::ChainRh { form, part } => {
            set.alpha_all_one();
            match part {
                RhChainPart::LocationScale => {
                    let pu = common_scalar(u.p());
                    let pv = common_scalar(v.p());
                    let ok = matches!((pu, pv), (Some(a), Some(b)) if (a - b).abs() <= PARAM_EQ_TOL);
                    set.structural("occurrence probabilities equal a common scalar", ok, "");
                    for c in [Condition::C2, Condition::C3, Condition::C4, Condition::C5] {
                        set.condition(c)?;
                    }
                    let c = ParamMatrix::new(u.lambda().to_vec(), u.inv_theta());
                    let d = ParamMatrix::new(v.lambda().to_vec(), v.inv_theta());
                    set.matrix_class("(lambda, 1/theta) oppositely ordered", &c, MatrixClass::Qn);
                    set.chain(form, &c, &d);
                }
                RhChainPart::LocationPsi => {
                    set.scalar_common("scale parameters equal a common scalar", u.theta(), v.theta());
                    set.psi_condition(Condition::C9)?;
                    set.condition(Condition::C1)?;
                    set.condition(Condition::C8)?;
                    let psi = set.require_psi()?;
                    let c = psi_row(&psi, u.p())
                        .and_then(|row| ParamMatrix::new(u.lambda().to_vec(), row));
                    let d = psi_row(&psi, v.p())
                        .and_then(|row| ParamMatrix::new(v.lambda().to_vec(), row));
                    set.matrix_class("(lambda, psi(p)) similarly ordered", &c, MatrixClass::Mn);
                    set.chain(form, &c, &d);
                }
                RhChainPart::ScalePsi => {
                    set.scalar_common(
                        "location parameters equal a common scalar",
                        u.lambda(),
                        v.lambda(),
                    );
                    set.psi_condition(Condition::C9)?;
                    set.condition(Condition::C2)?;
                    set.condition(Condition::C5)?;
                    let psi = set.require_psi()?;
                    let c = psi_row(&psi, u.p()).and_then(|row| ParamMatrix::new(u.inv_theta(), row));
                    let d = psi_row(&psi, v.p()).and_then(|row| ParamMatrix::new(v.inv_theta(), row));
                    set.matrix_class("(1/theta, psi(p)) oppositely ordered", &c, MatrixClass::Qn);
                    set.chain(form, &c, &d);
                }
            }
        }
        TheoremId::ShapeSupermajorSt => {
            set.scalar_common("scale parameters equal a common scalar", u.theta(), v.theta());
            set.scalar_common(
                "location parameters equal a common scalar",
                u.lambda(),
                v.lambda(),
            );
            set.vectors_equal("occurrence probabilities equal", u.p(), v.p());
            let asc = in_class(u.alpha(), VectorClass::Eplus)
                && in_class(v.alpha(), VectorClass::Eplus)
                && in_class(u.p(), VectorClass::Dplus);
            let desc = in_class(u.alpha(), VectorClass::Dplus)
                && in_class(v.alpha(), VectorClass::Dplus)
                && in_class(u.p(), VectorClass::Eplus);
            set.structural(
                "shape vectors monotone opposite to occurrence probabilities",
                asc || desc,
                "",
            );
            set.relation(
                "alpha_V weakly supermajorized by alpha_U",
                is_weak_super(v.alpha(), u.alpha()),
            )?;
        }
        TheoremId::PsiSubmajorSt => {
            let psi = set.require_psi()?;
            set.psi_condition(Condition::C9)?;
            set.vectors_equal("shape vectors equal", u.alpha(), v.alpha());
            set.vectors_equal("scale vectors equal", u.theta(), v.theta());
            set.vectors_equal("location vectors equal", u.lambda(), v.lambda());
            set.sorted_class(
                "theta, lambda, alpha, p, q share one monotone ordering",
                &[u.theta(), u.lambda(), u.alpha(), u.p(), v.p()],
            );
            set.relation(
                "psi(q) weakly submajorized by psi(p)",
                (|| is_weak_sub(&psi.eval_vec(v.p())?, &psi.eval_vec(u.p())?))(),
            )?;
        }
        TheoremId::ScalePLargerSt | TheoremId::ScaleReciprocalSt => {
            set.alpha_common_scalar_le_one();
            set.vectors_equal("occurrence probabilities equal", u.p(), v.p());
            set.vectors_equal("location vectors equal", u.lambda(), v.lambda());
            set.condition(Condition::C2)?;
            if s.theorem == TheoremId::ScaleReciprocalSt {
                set.condition(Condition::C3)?;
            }
            set.sorted_class(
                "p, theta, delta, lambda share one monotone ordering",
                &[u.p(), u.theta(), v.theta(), u.lambda()],
            );
            if s.theorem == TheoremId::ScalePLargerSt {
                set.relation(
                    "printed product relation of 1/theta over 1/delta",
                    is_p_larger(&u.inv_theta(), &v.inv_theta()),
                )?;
            } else {
                set.relation(
                    "1/delta reciprocally majorized by 1/theta",
                    is_reciprocal(&v.inv_theta(), &u.inv_theta()),
                )?;
            }
        }
        TheoremId::LocationSubmajorSt => {
            set.alpha_common_scalar_le_one();
            set.vectors_equal("scale vectors equal", u.theta(), v.theta());
            set.vectors_equal("occurrence probabilities equal", u.p(), v.p());
            set.condition(Condition::C2)?;
            set.sorted_class(
                "theta, lambda, mu, p share one monotone ordering",
                &[u.theta(), u.lambda(), v.lambda(), u.p()],
            );
            set.relation(
                "mu weakly submajorized by lambda",
                is_weak_sub(v.lambda(), u.lambda()),
            )?;
        }
        TheoremId::CombinedStP | TheoremId::CombinedStRm => {
            let psi = set.require_psi()?;
            set.alpha_common_scalar_le_one();
            set.condition(Condition::C2)?;
            if s.theorem == TheoremId::CombinedStRm {
                set.condition(Condition::C3)?;
            }
            set.psi_condition(Condition::C9)?;
            set.sorted_class(
                "theta, lambda, mu, delta, p, q share one monotone ordering",
                &[u.theta(), u.lambda(), v.lambda(), v.theta(), u.p(), v.p()],
            );
            if s.theorem == TheoremId::CombinedStP {
                set.relation(
                    "printed product relation of 1/theta over 1/delta",
                    is_p_larger(&u.inv_theta(), &v.inv_theta()),
                )?;
            } else {
                set.relation(
                    "1/delta reciprocally majorized by 1/theta",
                    is_reciprocal(&v.inv_theta(), &u.inv_theta()),
                )?;
            }
            set.relation(
                "psi(q) weakly submajorized by psi(p)",
                (|| is_weak_sub(&psi.eval_vec(v.p())?, &psi.eval_vec(u.p())?))(),
            )?;
            set.relation(
                "mu weakly submajorized by lambda",
                is_weak_sub(v.lambda(), u.lambda()),
            )?;
        }
        TheoremId::KthMajorizedSt => {
            set.scalar_common(
                "location parameters equal a common scalar",
                u.lambda(),
                v.lambda(),
            );
            set.scalar_common("scale parameters equal a common scalar", u.theta(), v.theta());
            let ok = match (common_scalar(u.p()), common_scalar(v.p())) {
                (Some(a), Some(b)) => (a - b).abs() <= PARAM_EQ_TOL,
                _ => false,
            };
            set.structural("occurrence probabilities equal a common scalar", ok, "");
            set.structural("statistic order k supplied", s.k.is_some(), "");
            set.relation(
                "alpha_V majorized by alpha_U",
                is_majorized(v.alpha(), u.alpha()),
            )?;
        }
        TheoremId::LocationSubmajorRh => {
            set.alpha_all_one();
            set.vectors_equal("occurrence probabilities equal", u.p(), v.p());
            set.vectors_equal("scale vectors equal", u.theta(), v.theta());
            for c in [Condition::C2, Condition::C3, Condition::C4] {
                set.condition(c)?;
            }
            set.sorted_class(
                "lambda, theta, mu, p share one monotone ordering",
                &[u.lambda(), u.theta(), v.lambda(), u.p()],
            );
            set.relation(
                "mu weakly submajorized by lambda",
                is_weak_sub(v.lambda(), u.lambda()),
            )?;
        }
        TheoremId::ScaleWeakSuperRh | TheoremId::ScaleReciprocalRh => {
            set.alpha_all_one();
            set.vectors_equal("occurrence probabilities equal", u.p(), v.p());
            set.vectors_equal("location vectors equal", u.lambda(), v.lambda());
            if s.theorem == TheoremId::ScaleWeakSuperRh {
                set.condition(Condition::C2)?;
                set.condition(Condition::C5)?;
            } else {
                for c in [Condition::C2, Condition::C6, Condition::C7] {
                    set.condition(c)?;
                }
            }
            set.sorted_class(
                "lambda, theta, delta, p share one monotone ordering",
                &[u.lambda(), u.theta(), v.theta(), u.p()],
            );
            if s.theorem == TheoremId::ScaleWeakSuperRh {
                set.relation(
                    "1/delta weakly supermajorized by 1/theta",
                    is_weak_super(&v.inv_theta(), &u.inv_theta()),
                )?;
            } else {
                set.relation(
                    "1/delta reciprocally majorized by 1/theta",
                    is_reciprocal(&v.inv_theta(), &u.inv_theta()),
                )?;
            }
        }
        TheoremId::ComponentwiseRh => {
            let all_one = u
                .alpha()
                .iter()
                .chain(v.alpha().iter())
                .all(|a| (a - 1.0).abs() <= PARAM_EQ_TOL);
            let common_below_one = match (common_scalar(u.alpha()), common_scalar(v.alpha())) {
                (Some(a), Some(b)) => (a - b).abs() <= PARAM_EQ_TOL && a < 1.0,
                _ => false,
            };
            set.structural(
                "shape parameters all one, or a common scalar below one",
                all_one || common_below_one,
                "",
            );
            set.condition(Condition::C2)?;
            set.structural(
                "theta dominates delta componentwise",
                componentwise_ge(u.theta(), v.theta()),
                "",
            );
            set.structural(
                "lambda dominates mu componentwise",
                componentwise_ge(u.lambda(), v.lambda()),
                "",
            );
            set.structural(
                "p dominates q componentwise",
                componentwise_ge(u.p(), v.p()),
                "",
            );
        }
        TheoremId::PsiSubmajorRh => {
            let psi = set.require_psi()?;
            set.alpha_common_scalar_le_one();
            set.vectors_equal("scale vectors equal", u.theta(), v.theta());
            set.vectors_equal("location vectors equal", u.lambda(), v.lambda());
            set.condition(Condition::C2)?;
            set.psi_condition(Condition::C9)?;
            set.sorted_class(
                "lambda, theta, p, q share one monotone ordering",
                &[u.lambda(), u.theta(), u.p(), v.p()],
            );
            set.relation(
                "psi(q) weakly submajorized by psi(p)",
                (|| is_weak_sub(&psi.eval_vec(v.p())?, &psi.eval_vec(u.p())?))(),
            )?;
        }
        TheoremId::CombinedRhW | TheoremId::CombinedRhRm => {
            let psi = set.require_psi()?;
            set.alpha_all_one();
            if s.theorem == TheoremId::CombinedRhW {
                set.condition(Condition::C2)?;
                set.condition(Condition::C5)?;
            } else {
                for c in [Condition::C2, Condition::C3, Condition::C6, Condition::C7] {
                    set.condition(c)?;
                }
            }
            set.psi_condition(Condition::C9)?;
            set.sorted_class(
                "theta, lambda, mu, delta, p, q share one monotone ordering",
                &[u.theta(), u.lambda(), v.lambda(), v.theta(), u.p(), v.p()],
            );
            if s.theorem == TheoremId::CombinedRhW {
                set.relation(
                    "1/delta weakly supermajorized by 1/theta",
                    is_weak_super(&v.inv_theta(), &u.inv_theta()),
                )?;
            } else {
                set.relation(
                    "1/delta reciprocally majorized by 1/theta",
                    is_reciprocal(&v.inv_theta(), &u.inv_theta()),
                )?;
            }
            set.relation(
                "psi(q) weakly submajorized by psi(p)",
                (|| is_weak_sub(&psi.eval_vec(v.p())?, &psi.eval_vec(u.p())?))(),
            )?;
            set.relation(
                "mu weakly submajorized by lambda",
                is_weak_sub(v.lambda(), u.lambda()),
            )?;
        }
    }
    Ok(set.out)
}

fn validate_shape(s: &Scenario) -> Result<()> {
    if s.portfolio_u.n() != s.portfolio_v.n() {
        return Err(Error::ScenarioShape(format!(
            "portfolios have {} and {} risks",
            s.portfolio_u.n(),
            s.portfolio_v.n()
        )));
    }
    if s.portfolio_u.baseline() != &s.baseline || s.portfolio_v.baseline() != &s.baseline {
        return Err(Error::ScenarioShape(
            "portfolios must share the scenario baseline".into(),
        ));
    }
    if !s.theorem.is_chain() && s.transforms.is_some() {
        return Err(Error::ScenarioShape(
            "transforms are only meaningful for chain-majorization theorems".into(),
        ));
    }
    if s.theorem == TheoremId::KthMajorizedSt {
        match s.k {
            Some(k) if k >= 1 && k <= s.portfolio_u.n() => {}
            _ => {
                return Err(Error::ScenarioShape(
                    "k-th largest comparison needs k in 1..=n".into(),
                ))
            }
        }
    }
    Ok(())
}

fn conclusion_check(s: &Scenario) -> Result<(OrderVerdict, Option<OrderVerdict>, Option<OrderVerdict>)> {
    let (winner, loser) = match s.theorem.dominant() {
        Dominant::U => (&s.portfolio_u, &s.portfolio_v),
        Dominant::V => (&s.portfolio_v, &s.portfolio_u),
    };
    match s.theorem.relation() {
        Relation::St => {
            let verdict = if s.theorem == TheoremId::KthMajorizedSt {
                let k = s.k.expect("validated");
                let slacks: Result<Vec<(f64, f64)>> = s
                    .grid
                    .values()
                    .into_iter()
                    .map(|t| Ok((t, loser.kth_cdf(k, t)? - winner.kth_cdf(k, t)?)))
                    .collect();
                verdict_from_slacks(Relation::St, &slacks?, 0)
            } else {
                check_st(winner, loser, &s.grid)?
            };
            Ok((verdict, None, None))
        }
        Relation::Rh => {
            let rate = check_rh(winner, loser, &s.grid, RhMethod::RhrCompare)?;
            let ratio = check_rh(winner, loser, &s.grid, RhMethod::RatioMonotone)?;
            let st = if rate.status == OrderStatus::Holds {
                Some(check_st(winner, loser, &s.grid)?)
            } else {
                None
            };
            Ok((rate, Some(ratio), st))
        }
    }
}

/// Check hypotheses and conclusion, and assemble the report.
pub fn verify_scenario(s: &Scenario) -> Result<TheoremReport> {
    let hypotheses = check_hypotheses(s)?;
    let applicable = hypotheses.iter().all(|h| h.outcome.passed());
    let (conclusion, rh_cross_method, st_from_rh) = conclusion_check(s)?;
    let consistent = !applicable || conclusion.status == OrderStatus::Holds;
    Ok(TheoremReport {
        scenario_id: s.id.clone(),
        theorem: s.theorem,
        hypotheses,
        applicable,
        dominant: s.theorem.dominant(),
        conclusion,
        rh_cross_method,
        st_from_rh,
        consistent,
    })
}

/// One row of a comparison curve; reversed hazards are NaN at grid points
/// not strictly above both location maxima.
#[derive(Debug, Clone, Copy)]
pub struct CurveRow {
    pub t: f64,
    pub f_u: f64,
    pub f_v: f64,
    pub diff: f64,
    pub rhr_u: f64,
    pub rhr_v: f64,
}

/// Evaluate both portfolios over a grid.
pub fn comparison_curve(u: &Portfolio, v: &Portfolio, grid: &GridSpec) -> Vec<CurveRow> {
    grid.values()
        .into_iter()
        .map(|t| {
            let f_u = u.max_cdf(t);
            let f_v = v.max_cdf(t);
            CurveRow {
                t,
                f_u,
                f_v,
                diff: f_u - f_v,
                rhr_u: u.max_rhr(t).unwrap_or(f64::NAN),
                rhr_v: v.max_rhr(t).unwrap_or(f64::NAN),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CounterexampleId {
    Ce31,
    Ce32,
    Ce33,
}

impl CounterexampleId {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "CE31" => Ok(CounterexampleId::Ce31),
            "CE32" => Ok(CounterexampleId::Ce32),
            "CE33" => Ok(CounterexampleId::Ce33),
            other => Err(Error::ScenarioShape(format!(
                "unknown counterexample id {other}; expected CE31, CE32 or CE33"
            ))),
        }
    }

    pub fn id(&self) -> &'static str {
        match self {
            CounterexampleId::Ce31 => "CE31",
            CounterexampleId::Ce32 => "CE32",
            CounterexampleId::Ce33 => "CE33",
        }
    }
}

/// One pinned sign assertion of a counterexample run.
#[derive(Debug, Clone, Copy)]
pub struct PinnedSign {
    pub t: f64,
    pub value: f64,
    pub expect_positive: bool,
}

impl PinnedSign {
    pub fn matches(&self) -> bool {
        if self.expect_positive {
            self.value > 0.0
        } else {
            self.value < 0.0
        }
    }
}

#[derive(Debug, Clone)]
pub struct CounterexampleRun {
    pub id: CounterexampleId,
    pub report: TheoremReport,
    pub curve: Vec<CurveRow>,
    pub pinned: Vec<PinnedSign>,
    pub signs_match: bool,
}

/// Re-run a built-in refutation configuration: emit its difference curve
/// and evaluate the pinned sign pattern at the reference abscissae
/// (CDF difference for the two stochastic-order cases, reversed-hazard
/// difference for the rate case).
pub fn run_counterexample(id: CounterexampleId) -> Result<CounterexampleRun> {
    let scenario = fixtures::counterexample_scenario(id);
    let report = verify_scenario(&scenario)?;
    let curve = comparison_curve(&scenario.portfolio_u, &scenario.portfolio_v, &scenario.grid);
    let (u, v) = (&scenario.portfolio_u, &scenario.portfolio_v);
    let pinned: Vec<PinnedSign> = match id {
        CounterexampleId::Ce31 => [(1.5, true), (1.6, false)]
            .into_iter()
            .map(|(t, pos)| PinnedSign {
                t,
                value: u.max_cdf(t) - v.max_cdf(t),
                expect_positive: pos,
            })
            .collect(),
        CounterexampleId::Ce32 => [(1.6, false), (1.7, true)]
            .into_iter()
            .map(|(t, pos)| PinnedSign {
                t,
                value: u.max_cdf(t) - v.max_cdf(t),
                expect_positive: pos,
            })
            .collect(),
        CounterexampleId::Ce33 => {
            let mut out = Vec::new();
            for (t, pos) in [(1.7, true), (1.8, false)] {
                out.push(PinnedSign {
                    t,
                    value: u.max_rhr(t)? - v.max_rhr(t)?,
                    expect_positive: pos,
                });
            }
            out
        }
    };
    let signs_match = pinned.iter().all(PinnedSign::matches);
    Ok(CounterexampleRun {
        id,
        report,
        curve,
        pinned,
        signs_match,
    })
}
