//! Strict JSON schema for scenario files and its mapping onto core types.
//! Unknown keys are rejected so that typos surface as input errors.

use serde::Deserialize;

use stochord::{
    BaselineDistribution, GridSpec, MoeqlForm, Portfolio, PsiFunction, Scenario, Spacing,
    TTransform, TheoremId,
};

#[derive(Debug, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum BaselineSpec {
    Glfr {
        a: f64,
        b: f64,
        d: f64,
    },
    Moeql {
        a: f64,
        b: f64,
        d: f64,
        #[serde(default)]
        form: MoeqlFormSpec,
    },
    BurrPower {
        c: f64,
        k: f64,
    },
    LomaxPower {
        c: f64,
        k: f64,
    },
    WindowPowerHazard {
        hazard_at_lo: f64,
        x_lo: f64,
        x_hi: f64,
        exponent: f64,
    },
}

#[derive(Debug, Default, Clone, Copy, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoeqlFormSpec {
    #[default]
    AsPrinted,
    WithoutDenominatorD,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PsiSpec {
    Power { k: f64 },
    Exp { c: f64 },
    NegExp,
    NegLog,
    OneMinusPower { k: f64 },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PortfolioSpec {
    pub alpha: Vec<f64>,
    pub lambda: Vec<f64>,
    pub theta: Vec<f64>,
    pub p: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformSpec {
    pub w: f64,
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpacingSpec {
    Linear,
    Log,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpecJson {
    pub t_min: f64,
    pub t_max: f64,
    pub points: usize,
    pub spacing: SpacingSpec,
    #[serde(default)]
    pub extended: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub baseline: BaselineSpec,
    #[serde(default)]
    pub psi: Option<PsiSpec>,
    pub portfolio_u: PortfolioSpec,
    pub portfolio_v: PortfolioSpec,
    #[serde(default)]
    pub transforms: Option<Vec<TransformSpec>>,
    #[serde(default)]
    pub grid: Option<GridSpecJson>,
    #[serde(default)]
    pub checks: Option<Vec<String>>,
    #[serde(default)]
    pub k: Option<usize>,
}

/// Core types assembled from a scenario file, theorem id left open.
pub struct LoadedScenario {
    pub baseline: BaselineDistribution,
    pub psi: Option<PsiFunction>,
    pub portfolio_u: Portfolio,
    pub portfolio_v: Portfolio,
    pub transforms: Option<Vec<TTransform>>,
    pub grid: GridSpec,
    pub checks: Vec<String>,
    pub k: Option<usize>,
}

impl ScenarioFile {
    pub fn load(self) -> Result<LoadedScenario, String> {
        let baseline = match self.baseline {
            BaselineSpec::Glfr { a, b, d } => BaselineDistribution::glfr(a, b, d),
            BaselineSpec::Moeql { a, b, d, form } => BaselineDistribution::moeql_with_form(
                a,
                b,
                d,
                match form {
                    MoeqlFormSpec::AsPrinted => MoeqlForm::AsPrinted,
                    MoeqlFormSpec::WithoutDenominatorD => MoeqlForm::WithoutDenominatorD,
                },
            ),
            BaselineSpec::BurrPower { c, k } => BaselineDistribution::burr_power(c, k),
            BaselineSpec::LomaxPower { c, k } => BaselineDistribution::lomax_power(c, k),
            BaselineSpec::WindowPowerHazard {
                hazard_at_lo,
                x_lo,
                x_hi,
                exponent,
            } => BaselineDistribution::window_power_hazard(hazard_at_lo, x_lo, x_hi, exponent),
        }
        .map_err(|e| format!("baseline: {e}"))?;

        let psi = match self.psi {
            None => None,
            Some(spec) => Some(
                match spec {
                    PsiSpec::Power { k } => PsiFunction::power(k),
                    PsiSpec::Exp { c } => PsiFunction::exp(c),
                    PsiSpec::NegExp => Ok(PsiFunction::NegExp),
                    PsiSpec::NegLog => Ok(PsiFunction::NegLog),
                    PsiSpec::OneMinusPower { k } => PsiFunction::one_minus_power(k),
                }
                .map_err(|e| format!("psi: {e}"))?,
            ),
        };

        let build = |name: &str, p: PortfolioSpec| {
            Portfolio::new(baseline, p.alpha, p.lambda, p.theta, p.p)
                .map_err(|e| format!("{name}: {e}"))
        };
        let portfolio_u = build("portfolio_u", self.portfolio_u)?;
        let portfolio_v = build("portfolio_v", self.portfolio_v)?;

        let n = portfolio_u.n();
        let transforms = match self.transforms {
            None => None,
            Some(ts) => Some(
                ts.into_iter()
                    .map(|t| {
                        TTransform::new(t.w, t.i, t.j, n)
                            .map_err(|e| format!("transforms: {e}"))
                    })
                    .collect::<Result<Vec<_>, String>>()?,
            ),
        };

        let grid = match self.grid {
            Some(g) => {
                let spacing = match g.spacing {
                    SpacingSpec::Linear => Spacing::Linear,
                    SpacingSpec::Log => Spacing::Log,
                };
                let grid = GridSpec::new(g.t_min, g.t_max, g.points, spacing)
                    .map_err(|e| format!("grid: {e}"))?;
                if g.extended {
                    grid.with_extended()
                } else {
                    grid
                }
            }
            None => default_grid(&portfolio_u, &portfolio_v)?,
        };

        Ok(LoadedScenario {
            baseline,
            psi,
            portfolio_u,
            portfolio_v,
            transforms,
            grid,
            checks: self.checks.unwrap_or_default(),
            k: self.k,
        })
    }
}

/// Default comparison grid: 2000 log-spaced points from just above the
/// largest location to the 0.9999 quantile of the slower-tailed portfolio.
pub fn default_grid(u: &Portfolio, v: &Portfolio) -> Result<GridSpec, String> {
    let t_min = u.max_lambda().max(v.max_lambda()) + 1e-6;
    let q = |pf: &Portfolio| pf.max_quantile(0.9999).map_err(|e| format!("grid: {e}"));
    let t_max = q(u)?.max(q(v)?).max(t_min * (1.0 + 1e-6) + 1e-6);
    GridSpec::log(t_min, t_max, 2000).map_err(|e| format!("grid: {e}"))
}

impl LoadedScenario {
    pub fn into_scenario(self, id: String, theorem: TheoremId) -> Scenario {
        Scenario {
            id,
            theorem,
            baseline: self.baseline,
            psi: self.psi,
            portfolio_u: self.portfolio_u,
            portfolio_v: self.portfolio_v,
            transforms: self.transforms,
            grid: self.grid,
            k: self.k,
            condition_points: 300,
        }
    }
}
