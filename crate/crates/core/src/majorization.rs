//! Vector preorders (majorization and its weak, product and reciprocal
//! relatives), monotone vector classes, two-row parameter matrices, and the
//! doubly stochastic pairwise-mixing transforms acting on them.

use crate::error::{Error, Result};

/// Absolute slack absorbed by every preorder comparison; the relations are
/// exact but their inputs arrive through floating point.
pub const PREORDER_TOL: f64 = 1e-12;

fn sorted_ascending(x: &[f64]) -> Vec<f64> {
    let mut v = x.to_vec();
    // ties keep their input order; the relations only see the multiset
    v.sort_by(|a, b| a.partial_cmp(b).expect("non-finite entry"));
    v
}

fn check_lengths(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.is_empty() {
        return Err(Error::Domain("empty vectors".into()));
    }
    Ok(())
}

fn check_positive(name: &'static str, x: &[f64]) -> Result<()> {
    if x.iter().any(|&v| !(v.is_finite() && v > 0.0)) {
        return Err(Error::NonPositive { name });
    }
    Ok(())
}

/// `x` is majorized by `y`: equal totals with every ascending partial sum
/// of `x` at least that of `y`.
pub fn is_majorized(x: &[f64], y: &[f64]) -> Result<bool> {
    check_lengths(x, y)?;
    let (xs, ys) = (sorted_ascending(x), sorted_ascending(y));
    let (mut sx, mut sy) = (0.0, 0.0);
    for i in 0..xs.len() {
        sx += xs[i];
        sy += ys[i];
        if i + 1 < xs.len() && sx < sy - PREORDER_TOL {
            return Ok(false);
        }
    }
    Ok((sx - sy).abs() <= PREORDER_TOL)
}

/// `x` is weakly supermajorized by `y`: every ascending partial sum of `x`
/// is at least that of `y`.
pub fn is_weak_super(x: &[f64], y: &[f64]) -> Result<bool> {
    check_lengths(x, y)?;
    let (xs, ys) = (sorted_ascending(x), sorted_ascending(y));
    let (mut sx, mut sy) = (0.0, 0.0);
    for i in 0..xs.len() {
        sx += xs[i];
        sy += ys[i];
        if sx < sy - PREORDER_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `x` is weakly submajorized by `y`: every descending partial sum of `x`
/// is at most that of `y`.
pub fn is_weak_sub(x: &[f64], y: &[f64]) -> Result<bool> {
    check_lengths(x, y)?;
    let (xs, ys) = (sorted_ascending(x), sorted_ascending(y));
    let (mut sx, mut sy) = (0.0, 0.0);
    for i in (0..xs.len()).rev() {
        sx += xs[i];
        sy += ys[i];
        if sx > sy + PREORDER_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The printed product relation: every ascending partial product of `x` is
/// at most that of `y`. Positive entries required.
pub fn is_p_larger(x: &[f64], y: &[f64]) -> Result<bool> {
    check_lengths(x, y)?;
    check_positive("x", x)?;
    check_positive("y", y)?;
    let (xs, ys) = (sorted_ascending(x), sorted_ascending(y));
    let (mut px, mut py) = (1.0, 1.0);
    for i in 0..xs.len() {
        px *= xs[i];
        py *= ys[i];
        if px > py + PREORDER_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `x` is reciprocally majorized by `y`: every ascending partial sum of
/// reciprocals of `x` is at most that of `y`. Positive entries required.
pub fn is_reciprocal(x: &[f64], y: &[f64]) -> Result<bool> {
    check_lengths(x, y)?;
    check_positive("x", x)?;
    check_positive("y", y)?;
    let xs = sorted_ascending(x);
    let ys = sorted_ascending(y);
    let (mut sx, mut sy) = (0.0, 0.0);
    for i in 0..xs.len() {
        sx += 1.0 / xs[i];
        sy += 1.0 / ys[i];
        if sx > sy + PREORDER_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Monotone positive vector classes: descending (`Dplus`) or ascending
/// (`Eplus`) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorClass {
    Dplus,
    Eplus,
}

pub fn in_class(x: &[f64], cls: VectorClass) -> bool {
    if x.is_empty() || x.iter().any(|&v| !(v.is_finite() && v > 0.0)) {
        return false;
    }
    match cls {
        VectorClass::Dplus => x.windows(2).all(|w| w[0] >= w[1] - PREORDER_TOL),
        VectorClass::Eplus => x.windows(2).all(|w| w[0] <= w[1] + PREORDER_TOL),
    }
}

/// A 2×n matrix of positive parameters, stored by rows.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamMatrix {
    top: Vec<f64>,
    bottom: Vec<f64>,
}

impl ParamMatrix {
    pub fn new(top: Vec<f64>, bottom: Vec<f64>) -> Result<Self> {
        if top.len() != bottom.len() {
            return Err(Error::LengthMismatch {
                left: top.len(),
                right: bottom.len(),
            });
        }
        if top.is_empty() {
            return Err(Error::Domain("empty parameter matrix".into()));
        }
        check_positive("top row", &top)?;
        check_positive("bottom row", &bottom)?;
        Ok(ParamMatrix { top, bottom })
    }

    pub fn n(&self) -> usize {
        self.top.len()
    }

    pub fn top(&self) -> &[f64] {
        &self.top
    }

    pub fn bottom(&self) -> &[f64] {
        &self.bottom
    }

    pub fn max_abs_diff(&self, other: &ParamMatrix) -> f64 {
        self.top
            .iter()
            .chain(self.bottom.iter())
            .zip(other.top.iter().chain(other.bottom.iter()))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Similarly ordered (`Mn`) or oppositely ordered (`Qn`) row pairs, decided
/// by the sign of `(x_i - x_j)(y_i - y_j)` over all column pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixClass {
    Mn,
    Qn,
}

pub fn matrix_in_class(m: &ParamMatrix, cls: MatrixClass) -> bool {
    let n = m.n();
    for i in 0..n {
        for j in (i + 1)..n {
            let s = (m.top[i] - m.top[j]) * (m.bottom[i] - m.bottom[j]);
            let ok = match cls {
                MatrixClass::Mn => s >= -PREORDER_TOL,
                MatrixClass::Qn => s <= PREORDER_TOL,
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Mixing transform `w I + (1 - w) π` where π transposes columns `i` and
/// `j`; right-multiplication replaces those two columns by their convex
/// mixes and leaves the rest alone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TTransform {
    pub w: f64,
    pub i: usize,
    pub j: usize,
    pub n: usize,
}

impl TTransform {
    pub fn new(w: f64, i: usize, j: usize, n: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&w) || !w.is_finite() {
            return Err(Error::InvalidParameter {
                name: "w",
                value: w,
                reason: "must lie in [0, 1]",
            });
        }
        if i == j || i >= n || j >= n {
            return Err(Error::Domain(format!(
                "transform must transpose two distinct columns of 0..{n}, got ({i}, {j})"
            )));
        }
        Ok(TTransform { w, i, j, n })
    }

    /// Unordered transposed pair, the transform's permutation structure.
    pub fn structure(&self) -> (usize, usize) {
        (self.i.min(self.j), self.i.max(self.j))
    }

    /// Dense n×n expansion `w I + (1 - w) π`.
    pub fn to_matrix(&self) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; self.n]; self.n];
        for (r, row) in m.iter_mut().enumerate() {
            row[r] = 1.0;
        }
        m[self.i][self.i] = self.w;
        m[self.j][self.j] = self.w;
        m[self.i][self.j] = 1.0 - self.w;
        m[self.j][self.i] = 1.0 - self.w;
        m
    }

    pub fn apply_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: self.n,
            });
        }
        let mut out = x.to_vec();
        out[self.i] = self.w * x[self.i] + (1.0 - self.w) * x[self.j];
        out[self.j] = self.w * x[self.j] + (1.0 - self.w) * x[self.i];
        Ok(out)
    }
}

/// Right-multiply the 2×n matrix by the expanded transform.
pub fn apply_t_transform(m: &ParamMatrix, t: &TTransform) -> Result<ParamMatrix> {
    if m.n() != t.n {
        return Err(Error::LengthMismatch {
            left: m.n(),
            right: t.n,
        });
    }
    ParamMatrix::new(t.apply_vec(&m.top)?, t.apply_vec(&m.bottom)?)
}

/// Fold a transform chain left to right; the input chain majorizes the
/// output by construction.
pub fn chain_apply(m: &ParamMatrix, ts: &[TTransform]) -> Result<ParamMatrix> {
    let mut cur = m.clone();
    for t in ts {
        cur = apply_t_transform(&cur, t)?;
    }
    Ok(cur)
}

const SOLVE_TOL: f64 = 1e-9;

/// Recover the single transform carrying one 2×2 matrix onto another, if a
/// mixing weight in `[0, 1]` fits all four entries. Absence is a value, not
/// an error.
pub fn solve_single_t(c: &ParamMatrix, d: &ParamMatrix) -> Option<TTransform> {
    if c.n() != 2 || d.n() != 2 {
        return None;
    }
    // candidate w from the first row with distinct columns, then verified
    // against every entry
    let mut w = None;
    for (row_c, row_d) in [(c.top(), d.top()), (c.bottom(), d.bottom())] {
        let span = row_c[0] - row_c[1];
        if span.abs() > 1e-13 {
            w = Some((row_d[0] - row_c[1]) / span);
            break;
        }
    }
    let w = w.unwrap_or(1.0).clamp(0.0, 1.0);
    let t = TTransform::new(w, 0, 1, 2).ok()?;
    let image = apply_t_transform(c, &t).ok()?;
    if image.max_abs_diff(d) <= SOLVE_TOL {
        Some(t)
    } else {
        None
    }
}

/// Replace both columns of a 2×2 matrix by the row means, the maximally
/// mixed endpoint of the transform family.
pub fn row_means_matrix(m: &ParamMatrix) -> Result<ParamMatrix> {
    if m.n() != 2 {
        return Err(Error::Domain(format!(
            "row-means mixing is defined for 2 columns, got {}",
            m.n()
        )));
    }
    let half = TTransform::new(0.5, 0, 1, 2).expect("valid transform");
    apply_t_transform(m, &half)
}
