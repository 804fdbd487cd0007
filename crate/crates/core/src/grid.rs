//! Finite evaluation grids on the claim-amount axis.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// An inclusive grid of `points` abscissae on `[t_min, t_max]`.
///
/// Order checks against a portfolio normally keep `t_min` above every
/// location parameter; set `extended` to evaluate into the flat region
/// below the smallest location, where per-risk CDFs equal `1 - p_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub t_min: f64,
    pub t_max: f64,
    pub points: usize,
    pub spacing: Spacing,
    pub extended: bool,
}

impl GridSpec {
    pub fn new(t_min: f64, t_max: f64, points: usize, spacing: Spacing) -> Result<Self> {
        if !(t_min.is_finite() && t_max.is_finite()) || t_min >= t_max {
            return Err(Error::Domain(format!(
                "grid requires t_min < t_max, got [{t_min}, {t_max}]"
            )));
        }
        if points < 2 {
            return Err(Error::Domain(format!("grid needs >= 2 points, got {points}")));
        }
        if spacing == Spacing::Log && t_min <= 0.0 {
            return Err(Error::Domain(format!(
                "log spacing needs t_min > 0, got {t_min}"
            )));
        }
        Ok(GridSpec {
            t_min,
            t_max,
            points,
            spacing,
            extended: false,
        })
    }

    pub fn linear(t_min: f64, t_max: f64, points: usize) -> Result<Self> {
        Self::new(t_min, t_max, points, Spacing::Linear)
    }

    pub fn log(t_min: f64, t_max: f64, points: usize) -> Result<Self> {
        Self::new(t_min, t_max, points, Spacing::Log)
    }

    pub fn with_extended(mut self) -> Self {
        self.extended = true;
        self
    }

    /// Materialize the abscissae, endpoints included.
    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        let mut out = Vec::with_capacity(n);
        match self.spacing {
            Spacing::Linear => {
                let step = (self.t_max - self.t_min) / (n - 1) as f64;
                for i in 0..n {
                    out.push(self.t_min + step * i as f64);
                }
            }
            Spacing::Log => {
                let (a, b) = (self.t_min.ln(), self.t_max.ln());
                let step = (b - a) / (n - 1) as f64;
                for i in 0..n {
                    out.push((a + step * i as f64).exp());
                }
            }
        }
        // pin the endpoints exactly
        out[0] = self.t_min;
        out[n - 1] = self.t_max;
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_ranges() {
        assert!(GridSpec::linear(1.0, 1.0, 10).is_err());
        assert!(GridSpec::linear(2.0, 1.0, 10).is_err());
        assert!(GridSpec::linear(0.0, 1.0, 1).is_err());
        assert!(GridSpec::log(0.0, 1.0, 10).is_err());
    }

    #[test]
    fn linear_values_hit_endpoints() {
        let g = GridSpec::linear(1.0, 3.0, 5).unwrap();
        let v = g.values();
        assert_eq!(v.len(), 5);
        assert_eq!(v[0], 1.0);
        assert_eq!(v[4], 3.0);
        assert!((v[2] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn log_values_are_geometric() {
        let g = GridSpec::log(1.0, 100.0, 3).unwrap();
        let v = g.values();
        assert!((v[1] - 10.0).abs() < 1e-12);
    }
}
