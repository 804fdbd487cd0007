//! The thinned claim model: per-risk claims `U_i = J_i · X_i` with
//! Bernoulli occurrence indicators `J_i` and exponentiated location-scale
//! severities `X_i`, plus distribution-level quantities of the largest and
//! k-th largest claim amounts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::baseline::BaselineDistribution;
use crate::error::{Error, Result};

/// Exact subset enumeration is exponential in the number of risks.
pub const MAX_ENUMERATED_RISKS: usize = 20;

/// A portfolio of independent risks sharing one baseline distribution.
///
/// Risk `i` claims with probability `p_i`; a claimed severity has CDF
/// `F^{alpha_i}((x - lambda_i) / theta_i)`. The per-risk claim CDF is
/// `H_i(t) = 1 - p_i [1 - F^{alpha_i}((t - lambda_i)/theta_i)]`, which the
/// zero extension of `F` makes a total function: `H_i(t) = 1 - p_i` for
/// `t < lambda_i`, covering the atom at zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Portfolio {
    baseline: BaselineDistribution,
    alpha: Vec<f64>,
    lambda: Vec<f64>,
    theta: Vec<f64>,
    p: Vec<f64>,
}

impl Portfolio {
    pub fn new(
        baseline: BaselineDistribution,
        alpha: Vec<f64>,
        lambda: Vec<f64>,
        theta: Vec<f64>,
        p: Vec<f64>,
    ) -> Result<Self> {
        let n = alpha.len();
        for (other, len) in [("lambda", lambda.len()), ("theta", theta.len()), ("p", p.len())] {
            if len != n {
                return Err(Error::Domain(format!(
                    "alpha has {n} entries but {other} has {len}"
                )));
            }
        }
        if n == 0 {
            return Err(Error::Domain("portfolio needs at least one risk".into()));
        }
        for (name, v) in [("alpha", &alpha), ("lambda", &lambda), ("theta", &theta)] {
            if v.iter().any(|&x| !(x.is_finite() && x > 0.0)) {
                return Err(Error::NonPositive { name });
            }
        }
        if p.iter().any(|&x| !(x.is_finite() && x > 0.0 && x <= 1.0)) {
            return Err(Error::Domain(
                "occurrence probabilities must lie in (0, 1]".into(),
            ));
        }
        Ok(Portfolio {
            baseline,
            alpha,
            lambda,
            theta,
            p,
        })
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn baseline(&self) -> &BaselineDistribution {
        &self.baseline
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn inv_theta(&self) -> Vec<f64> {
        self.theta.iter().map(|&t| 1.0 / t).collect()
    }

    pub fn max_lambda(&self) -> f64 {
        self.lambda.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Per-risk claim CDF `H_i(t)`.
    pub fn claim_cdf(&self, i: usize, t: f64) -> f64 {
        let x = (t - self.lambda[i]) / self.theta[i];
        let f = self.baseline.cdf(x);
        let fa = if f <= 0.0 { 0.0 } else { f.powf(self.alpha[i]) };
        1.0 - self.p[i] * (1.0 - fa)
    }

    /// CDF of the largest claim amount, `∏_i H_i(t)`, valid for all t >= 0.
    pub fn max_cdf(&self, t: f64) -> f64 {
        (0..self.n()).map(|i| self.claim_cdf(i, t)).product()
    }

    /// Reversed hazard rate of the largest claim amount,
    /// `Σ_i (alpha_i/theta_i) f(x_i) p_i F^{alpha_i - 1}(x_i) / H_i(t)`
    /// at `x_i = (t - lambda_i)/theta_i`; defined strictly above every
    /// location parameter.
    pub fn max_rhr(&self, t: f64) -> Result<f64> {
        if t <= self.max_lambda() {
            return Err(Error::Domain(format!(
                "reversed hazard needs t > max location {}, got {t}",
                self.max_lambda()
            )));
        }
        let mut sum = 0.0;
        for i in 0..self.n() {
            let x = (t - self.lambda[i]) / self.theta[i];
            let f = self.baseline.cdf(x);
            if f <= 0.0 {
                return Err(Error::Domain(format!(
                    "baseline CDF vanishes at x = {x}; largest-claim CDF is zero"
                )));
            }
            let density = self.baseline.pdf(x);
            let h = 1.0 - self.p[i] * (1.0 - f.powf(self.alpha[i]));
            sum += self.alpha[i] / self.theta[i] * density * self.p[i] * f.powf(self.alpha[i] - 1.0)
                / h;
        }
        Ok(sum)
    }

    /// CDF of the k-th smallest claim amount (`k = n` is the maximum),
    /// by exact enumeration of claim subsets.
    pub fn kth_cdf(&self, k: usize, t: f64) -> Result<f64> {
        let n = self.n();
        if n > MAX_ENUMERATED_RISKS {
            return Err(Error::TooManyRisks {
                n,
                max: MAX_ENUMERATED_RISKS,
            });
        }
        if k == 0 || k > n {
            return Err(Error::Domain(format!("k must lie in 1..={n}, got {k}")));
        }
        let h: Vec<f64> = (0..n).map(|i| self.claim_cdf(i, t)).collect();
        let mut prob = 0.0;
        for mask in 0u32..(1u32 << n) {
            if (mask.count_ones() as usize) < k {
                continue;
            }
            let mut term = 1.0;
            for (i, &hi) in h.iter().enumerate() {
                term *= if mask & (1 << i) != 0 { hi } else { 1.0 - hi };
            }
            prob += term;
        }
        Ok(prob.clamp(0.0, 1.0))
    }

    /// Draw `count` largest-claim samples. Each risk claims with its own
    /// probability; a claimed severity is `lambda_i + theta_i * Q(u^{1/alpha_i})`
    /// with `Q` the baseline quantile. Deterministic for a fixed seed; the
    /// generator is private to the call, so parallel callers must split
    /// seeds rather than share a stream.
    pub fn sample_max(&self, seed: u64, count: usize) -> Result<Vec<f64>> {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let mut m = 0.0_f64;
            for i in 0..self.n() {
                let occurs: f64 = rng.gen();
                if occurs >= self.p[i] {
                    continue;
                }
                let u: f64 = rng.gen();
                let q = u.powf(1.0 / self.alpha[i]).clamp(0.0, 1.0 - 1e-16);
                let x = if q <= 0.0 {
                    self.lambda[i]
                } else {
                    self.lambda[i] + self.theta[i] * self.baseline.quantile(q)?
                };
                m = m.max(x);
            }
            out.push(m);
        }
        Ok(out)
    }

    /// Smallest t with `max_cdf(t) >= q`, located by doubling and bisection.
    pub fn max_quantile(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::InvalidParameter {
                name: "q",
                value: q,
                reason: "must lie in (0, 1)",
            });
        }
        if self.max_cdf(0.0) >= q {
            return Ok(0.0);
        }
        let mut lo = 0.0_f64;
        let mut hi = self.max_lambda().max(0.0) + 1.0;
        let mut doublings = 0;
        while self.max_cdf(hi) < q {
            lo = hi;
            hi *= 2.0;
            doublings += 1;
            if doublings > 200 {
                return Err(Error::BracketGrowth(200));
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.max_cdf(mid) < q {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-12 * hi.max(1.0) {
                break;
            }
        }
        Ok(hi)
    }
}

/// Survival lower bound for a two-risk portfolio with common location and
/// shape, from mixing the transformed-probability and reciprocal-scale rows
/// down to their means:
/// `1 - {1 + ln((e^{-p1} + e^{-p2})/2) [1 - F^alpha((t - lambda)(th1 + th2)/(2 th1 th2))]}^2`.
#[allow(clippy::too_many_arguments)]
pub fn reliability_lower_bound(
    p1: f64,
    p2: f64,
    lambda: f64,
    theta1: f64,
    theta2: f64,
    alpha: f64,
    baseline: &BaselineDistribution,
    t: f64,
) -> f64 {
    let mean_psi = 0.5 * ((-p1).exp() + (-p2).exp());
    let x = (t - lambda) * (theta1 + theta2) / (2.0 * theta1 * theta2);
    let f = baseline.cdf(x);
    let fa = if f <= 0.0 { 0.0 } else { f.powf(alpha) };
    let bracket = 1.0 + mean_psi.ln() * (1.0 - fa);
    1.0 - bracket * bracket
}

/// Kolmogorov–Smirnov distance between a sample and a reference CDF that
/// is continuous except for an atom at zero (the no-claim mass of the
/// largest-claim model). Tied samples are collapsed so the atom is
/// compared jump-against-jump.
pub fn ks_statistic(samples: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    samples.sort_by(|a, b| a.partial_cmp(b).expect("non-finite sample"));
    let n = samples.len() as f64;
    let mut d = 0.0_f64;
    let mut i = 0usize;
    while i < samples.len() {
        let v = samples[i];
        let mut j = i + 1;
        while j < samples.len() && samples[j] == v {
            j += 1;
        }
        let f = cdf(v);
        let f_left = if v == 0.0 { 0.0 } else { f };
        d = d.max((j as f64 / n - f).abs());
        d = d.max((f_left - i as f64 / n).abs());
        i = j;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridSpec;

    fn exponential() -> BaselineDistribution {
        BaselineDistribution::glfr(1.0, 0.0, 1.0).unwrap()
    }

    fn reference_three_risk() -> Portfolio {
        Portfolio::new(
            BaselineDistribution::glfr(1.0, 0.0, 0.5).unwrap(),
            vec![1.0; 3],
            vec![1.0, 2.5, 5.0],
            vec![2.0, 5.0, 9.0],
            vec![0.2, 0.8, 0.9],
        )
        .unwrap()
    }

    #[test]
    fn construction_validates_shapes_and_ranges() {
        let b = exponential();
        assert!(Portfolio::new(b, vec![1.0], vec![1.0, 2.0], vec![1.0], vec![0.5]).is_err());
        assert!(Portfolio::new(b, vec![-1.0], vec![1.0], vec![1.0], vec![0.5]).is_err());
        assert!(Portfolio::new(b, vec![1.0], vec![1.0], vec![1.0], vec![0.0]).is_err());
        assert!(Portfolio::new(b, vec![1.0], vec![1.0], vec![1.0], vec![1.1]).is_err());
        assert!(Portfolio::new(b, vec![], vec![], vec![], vec![]).is_err());
    }

    #[test]
    fn single_unit_risk_collapses_to_the_baseline() {
        // lambda must be positive; shift the evaluation point accordingly
        let pf = Portfolio::new(exponential(), vec![1.0], vec![1e-9], vec![1.0], vec![1.0]).unwrap();
        let t = 1e-9 + std::f64::consts::LN_2;
        assert!((pf.max_cdf(t) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn vanishing_occurrence_probabilities_push_the_cdf_to_one() {
        let pf = Portfolio::new(
            exponential(),
            vec![1.0; 3],
            vec![1.0; 3],
            vec![1.0; 3],
            vec![1e-12; 3],
        )
        .unwrap();
        assert!((pf.max_cdf(2.0) - 1.0).abs() < 1e-9);
        assert!((pf.max_cdf(0.0) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn max_cdf_factorizes_over_claim_cdfs() {
        let pf = reference_three_risk();
        for t in [0.0, 0.5, 3.0, 7.0, 20.0] {
            let prod: f64 = (0..pf.n()).map(|i| pf.claim_cdf(i, t)).product();
            assert_eq!(pf.max_cdf(t), prod);
        }
    }

    #[test]
    fn max_cdf_is_monotone_with_the_claim_atom_at_zero() {
        let pf = reference_three_risk();
        // atom: with no claim at all the maximum is zero
        let atom: f64 = pf.p().iter().map(|p| 1.0 - p).product();
        assert!((pf.max_cdf(0.0) - atom).abs() < 1e-15);
        let mut prev = 0.0;
        for t in GridSpec::linear(0.0, 60.0, 2000).unwrap().values() {
            let f = pf.max_cdf(t);
            assert!(f >= prev - 1e-15 && (0.0..=1.0 + 1e-12).contains(&f));
            prev = f;
        }
        assert!(pf.max_cdf(120.0) > 0.9999);
    }

    #[test]
    fn below_every_location_the_claim_cdf_is_one_minus_p() {
        let pf = reference_three_risk();
        assert!((pf.claim_cdf(1, 2.0) - 0.2).abs() < 1e-15);
        assert!((pf.claim_cdf(2, 4.9) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn single_claim_reversed_hazard_collapses() {
        let (lam, th) = (0.4, 1.7);
        let pf = Portfolio::new(exponential(), vec![1.0], vec![lam], vec![th], vec![1.0]).unwrap();
        for t in [0.9, 2.0, 4.0] {
            let x = (t - lam) / th;
            let expect = exponential().pdf(x) / (th * exponential().cdf(x));
            assert!((pf.max_rhr(t).unwrap() - expect).abs() < 1e-12);
        }
        assert!(pf.max_rhr(0.4).is_err());
    }

    #[test]
    fn reversed_hazard_matches_log_cdf_derivative() {
        let pf = reference_three_risk();
        let grid = GridSpec::linear(5.3, 40.0, 100).unwrap();
        for t in grid.values() {
            let h = 1e-5_f64.max(1e-6 * t);
            let fd = ((pf.max_cdf(t + h)).ln() - (pf.max_cdf(t - h)).ln()) / (2.0 * h);
            let rh = pf.max_rhr(t).unwrap();
            assert!(
                (rh - fd).abs() <= 1e-5 * rh.abs().max(1e-6),
                "t={t}: {rh} vs {fd}"
            );
        }
    }

    #[test]
    fn reference_three_risk_reversed_hazard_spot_values() {
        // frozen reference values, 50-digit arithmetic
        let u = reference_three_risk();
        assert!((u.max_rhr(6.0).unwrap() - 0.429_358_405_795_522_3).abs() < 1e-12);
        let v = Portfolio::new(
            BaselineDistribution::glfr(1.0, 0.0, 0.5).unwrap(),
            vec![1.0; 3],
            vec![0.5, 2.0, 3.0],
            vec![2.0, 5.0, 9.0],
            vec![0.2, 0.8, 0.9],
        )
        .unwrap();
        assert!((v.max_rhr(6.0).unwrap() - 0.180_542_661_404_939_5).abs() < 1e-12);
    }

    #[test]
    fn kth_cdf_edge_orders() {
        let pf = reference_three_risk();
        for t in [1.2, 4.0, 9.0] {
            // k = n is the maximum
            assert!((pf.kth_cdf(3, t).unwrap() - pf.max_cdf(t)).abs() < 1e-12);
        }
        // k = 1 for two risks is the minimum-of-two formula
        let two = Portfolio::new(
            exponential(),
            vec![1.0, 2.0],
            vec![0.5, 1.0],
            vec![1.0, 2.0],
            vec![0.3, 0.9],
        )
        .unwrap();
        for t in [0.8, 2.0, 5.0] {
            let h1 = two.claim_cdf(0, t);
            let h2 = two.claim_cdf(1, t);
            assert!((two.kth_cdf(1, t).unwrap() - (h1 + h2 - h1 * h2)).abs() < 1e-12);
        }
    }

    #[test]
    fn kth_cdf_is_monotone_in_k_and_t() {
        let pf = reference_three_risk();
        for t in [2.0, 6.0, 12.0] {
            let c1 = pf.kth_cdf(1, t).unwrap();
            let c2 = pf.kth_cdf(2, t).unwrap();
            let c3 = pf.kth_cdf(3, t).unwrap();
            assert!(c1 >= c2 - 1e-12 && c2 >= c3 - 1e-12);
        }
        for k in 1..=3 {
            let mut prev = -1.0;
            for t in GridSpec::linear(0.0, 40.0, 200).unwrap().values() {
                let c = pf.kth_cdf(k, t).unwrap();
                assert!(c >= prev - 1e-12);
                prev = c;
            }
        }
    }

    #[test]
    fn kth_cdf_rejects_oversized_portfolios_and_bad_k() {
        let pf = reference_three_risk();
        assert!(pf.kth_cdf(0, 1.0).is_err());
        assert!(pf.kth_cdf(4, 1.0).is_err());
        let big = Portfolio::new(
            exponential(),
            vec![1.0; 21],
            vec![1.0; 21],
            vec![1.0; 21],
            vec![0.5; 21],
        )
        .unwrap();
        assert!(matches!(
            big.kth_cdf(1, 1.0),
            Err(Error::TooManyRisks { n: 21, .. })
        ));
    }

    #[test]
    fn sampling_is_deterministic_and_respects_the_atom() {
        let pf = reference_three_risk();
        let a = pf.sample_max(42, 500).unwrap();
        let b = pf.sample_max(42, 500).unwrap();
        assert_eq!(a, b);
        let c = pf.sample_max(43, 500).unwrap();
        assert_ne!(a, c);

        let ghost = Portfolio::new(
            exponential(),
            vec![1.0; 3],
            vec![1.0; 3],
            vec![1.0; 3],
            vec![1e-12; 3],
        )
        .unwrap();
        assert!(ghost.sample_max(7, 2000).unwrap().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn empirical_cdf_tracks_the_analytic_one() {
        let pf = reference_three_risk();
        let mut samples = pf.sample_max(1234, 100_000).unwrap();
        let d = ks_statistic(&mut samples, |t| pf.max_cdf(t));
        // 1e5 draws; the 0.005 bound is enforced at 1e6 in the acceptance run
        assert!(d < 0.015, "KS distance {d}");
    }

    #[test]
    fn max_quantile_inverts_max_cdf() {
        let pf = reference_three_risk();
        for q in [0.3, 0.9, 0.999] {
            let t = pf.max_quantile(q).unwrap();
            assert!((pf.max_cdf(t) - q).abs() < 1e-9, "q={q}");
        }
        // below the atom the quantile is the atom itself
        let atom: f64 = pf.p().iter().map(|p| 1.0 - p).product();
        assert_eq!(pf.max_quantile(atom * 0.5).unwrap(), 0.0);
    }

    #[test]
    fn reliability_bound_is_exact_for_homogeneous_pairs() {
        let baseline = BaselineDistribution::lomax_power(5.0, 0.2).unwrap();
        let (p, th, lam, al) = (0.4, 2.0, 0.7, 0.8);
        let pf = Portfolio::new(
            baseline,
            vec![al; 2],
            vec![lam; 2],
            vec![th; 2],
            vec![p; 2],
        )
        .unwrap();
        for t in [1.0, 2.3, 6.0] {
            let bound = reliability_lower_bound(p, p, lam, th, th, al, &baseline, t);
            let exact = 1.0 - pf.max_cdf(t);
            assert!((bound - exact).abs() < 1e-12, "t={t}: {bound} vs {exact}");
        }
        // frozen cross-check, 50-digit arithmetic
        let bound = reliability_lower_bound(p, p, lam, th, th, al, &baseline, 2.3);
        assert!((bound - 0.448_698_844_689_823).abs() < 1e-12);
    }

    #[test]
    fn reliability_bound_vanishes_in_the_deep_tail() {
        let baseline = BaselineDistribution::glfr(1.0, 0.0, 1.0).unwrap();
        let b = reliability_lower_bound(0.3, 0.6, 0.5, 1.0, 2.0, 1.0, &baseline, 40.0);
        assert!(b.abs() < 1e-12);
    }
}
