//! Spectra of the canonical selfadjoint extensions: the real zeros of `s_beta`.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use crate::entire::{EntireFunction, C};
use crate::error::{DbError, Result};
use crate::space::DbSpace;

/// Located zeros of `s_beta` together with the data derived from them.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumData {
    pub beta: f64,
    /// Strictly increasing.
    pub points: Vec<f64>,
    /// `s_beta'(x_k)`
    pub derivs: Vec<f64>,
    /// `k(x_k, x_k)`
    pub diag: Vec<f64>,
    /// `s0(x_k)`
    pub s0_values: Vec<f64>,
    /// Jumps of `m_beta`; `None` in the relation case `beta = 0`.
    pub jumps: Option<Vec<f64>>,
    pub window: (f64, f64),
    /// `beta = 0`: `S_0` is a relation, not an operator.
    pub relation_case: bool,
    /// Whether completeness of `points` is certified by a known zero count.
    pub certified: bool,
}

impl SpectrumData {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `m_beta(t) = sum_{x_k < t} jump_k`.
    pub fn spectral_function(&self, t: f64) -> Result<f64> {
        let jumps = self.jumps.as_ref().ok_or(DbError::RelationCase)?;
        Ok(self.points.iter().zip(jumps).filter(|(x, _)| **x < t).map(|(_, j)| j).sum())
    }
}

/// How to search the real line for zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanPlan {
    /// Densely sampled inner window.
    pub window: (f64, f64),
    /// Number of uniform cells in the inner window.
    pub cells: usize,
    /// Geometric extension of the scan out to `|x| <= outer`, if any.
    pub outer: Option<f64>,
}

/// Sign-change scan over `plan`, refined near local minima of `|f|`,
/// followed by bisection and one Newton polish per bracket.
pub fn locate_real_zeros(f: &EntireFunction, plan: &ScanPlan) -> Result<Vec<f64>> {
    let (lo, hi) = plan.window;
    if !(lo < hi) || plan.cells < 2 {
        return Err(DbError::InvalidArgument(format!("bad scan window [{lo}, {hi}]")));
    }
    let mut xs: Vec<f64> = (0..=plan.cells).map(|j| lo + (hi - lo) * j as f64 / plan.cells as f64).collect();
    let inner_len = xs.len();
    let mut left_ext = Vec::new();
    let mut right_ext = Vec::new();
    if let Some(outer) = plan.outer {
        let span = (hi - lo).max(1.0);
        let mut step = span / plan.cells as f64;
        let (mut l, mut r) = (lo, hi);
        while r < outer || -l < outer {
            step *= 1.25;
            l -= step;
            r += step;
            left_ext.push(l);
            right_ext.push(r);
        }
    }
    // Outer samples may overflow; the scan stops at the first non-finite value.
    let eval = |x: f64| f.eval_real(x);
    let left_vals: Vec<Option<f64>> = left_ext.par_iter().map(|&x| eval(x).ok()).collect();
    let right_vals: Vec<Option<f64>> = right_ext.par_iter().map(|&x| eval(x).ok()).collect();
    let inner_vals: Vec<f64> = xs.par_iter().map(|&x| eval(x)).collect::<Result<_>>()?;

    let mut left: Vec<(f64, f64)> = left_ext.iter().zip(left_vals).map_while(|(x, v)| v.map(|v| (*x, v))).collect();
    left.reverse();
    let right: Vec<(f64, f64)> = right_ext.iter().zip(right_vals).map_while(|(x, v)| v.map(|v| (*x, v))).collect();
    let offset = left.len();
    let mut samples: Vec<(f64, f64)> = left;
    samples.extend(xs.drain(..).zip(inner_vals));
    samples.extend(right);

    let cell = (hi - lo) / plan.cells as f64;

    let mut brackets: Vec<(f64, f64)> = Vec::new();
    let mut exact: Vec<f64> = Vec::new();
    for w in samples.windows(2) {
        let ((x0, v0), (x1, v1)) = (w[0], w[1]);
        if v0 == 0.0 {
            exact.push(x0);
        } else if v0 * v1 < 0.0 {
            brackets.push((x0, x1));
        }
    }
    if let Some(&(x, v)) = samples.last() {
        if v == 0.0 {
            exact.push(x);
        }
    }
    // Local minima of |f| without a sign change may hide a pair of close zeros.
    for i in offset + 1..offset + inner_len - 1 {
        let (a, b, c) = (samples[i - 1], samples[i], samples[i + 1]);
        if b.1 != 0.0 && b.1.abs() < a.1.abs() && b.1.abs() < c.1.abs() && a.1 * b.1 > 0.0 && b.1 * c.1 > 0.0 {
            let scale = a.1.abs().max(c.1.abs());
            refine_minimum(f, a.0, c.0, scale, 0, &mut brackets, &mut exact)?;
        }
    }

    let mut roots = exact;
    for (a, b) in brackets {
        roots.push(polish(f, a, b)?);
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-13 * (1.0 + a.abs()));
    // Simplicity is judged against the size of f one cell away.
    for &x in &roots {
        let d = f.derivative(C::new(x, 0.0), 1)?.re;
        let near = f.eval_real(x - cell)?.abs().max(f.eval_real(x + cell)?.abs());
        if d.abs() * cell <= 1e-12 * near.max(f64::MIN_POSITIVE) {
            return Err(DbError::NonSimpleZero { x });
        }
    }
    Ok(roots)
}

fn refine_minimum(
    f: &EntireFunction,
    a: f64,
    b: f64,
    scale: f64,
    depth: usize,
    brackets: &mut Vec<(f64, f64)>,
    exact: &mut Vec<f64>,
) -> Result<()> {
    const SUB: usize = 16;
    let xs: Vec<f64> = (0..=SUB).map(|j| a + (b - a) * j as f64 / SUB as f64).collect();
    let vs: Vec<f64> = xs.iter().map(|&x| f.eval_real(x)).collect::<Result<_>>()?;
    let mut found = false;
    for j in 0..SUB {
        if vs[j] == 0.0 && j > 0 {
            exact.push(xs[j]);
            found = true;
        } else if vs[j] * vs[j + 1] < 0.0 {
            brackets.push((xs[j], xs[j + 1]));
            found = true;
        }
    }
    if found {
        return Ok(());
    }
    let (jmin, vmin) =
        vs.iter().enumerate().min_by(|x, y| x.1.abs().total_cmp(&y.1.abs())).map(|(j, v)| (j, *v)).expect("nonempty");
    if vmin.abs() <= 1e-12 * scale {
        return Err(DbError::NonSimpleZero { x: xs[jmin] });
    }
    if depth >= 10 || jmin == 0 || jmin == SUB {
        return Ok(());
    }
    refine_minimum(f, xs[jmin - 1], xs[jmin + 1], scale, depth + 1, brackets, exact)
}

fn polish(f: &EntireFunction, mut a: f64, mut b: f64) -> Result<f64> {
    let mut fa = f.eval_real(a)?;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f.eval_real(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if fa * fm < 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    let x = 0.5 * (a + b);
    let z = C::new(x, 0.0);
    let d = f.derivative(z, 1)?.re;
    let v = f.eval_real(x)?;
    if d != 0.0 {
        let newton = x - v / d;
        if newton.is_finite()
            && (newton - x).abs() <= (b - a).max(4.0 * f64::EPSILON * x.abs())
            && f.eval_real(newton)?.abs() <= v.abs()
        {
            return Ok(newton);
        }
    }
    Ok(x)
}

/// Number of zeros `s_beta` must have, when certified.
fn expected_zero_count(space: &DbSpace, beta: f64) -> Option<usize> {
    match space.dim() {
        crate::space::Dimension::Finite(n) if beta == 0.0 => Some(n - 1),
        crate::space::Dimension::Finite(n) => Some(n),
        crate::space::Dimension::Truncated(_) => None,
    }
}

/// Locates `spec(S_beta)`. Finite models double the scan density until the
/// zero count matches the dimension; the outer scan reaches zeros that escape
/// towards infinity as `beta -> 0` or `beta -> pi`.
pub fn find_spectrum(space: &DbSpace, beta: f64, window: Option<(f64, f64)>) -> Result<SpectrumData> {
    if !(0.0..std::f64::consts::PI).contains(&beta) {
        return Err(DbError::InvalidArgument(format!("beta = {beta} not in [0, pi)")));
    }
    let s_beta = space.assoc_s(beta);
    let window = window.unwrap_or(space.numerics().window);
    let expected = expected_zero_count(space, beta);
    let dim = space.dim().size().max(1);
    let seeds = (8 * dim).max(64);

    let points = match expected {
        Some(expected) => {
            let reach = window.0.abs().max(window.1.abs()) + 1.0;
            let cot = if beta == 0.0 { 0.0 } else { (beta.cos() / beta.sin()).abs() };
            let outer = reach * 100.0 * (1.0 + cot);
            let mut found = Vec::new();
            for level in 0..7 {
                let plan = ScanPlan { window, cells: seeds << level, outer: Some(outer) };
                found = locate_real_zeros(&s_beta, &plan)?;
                if found.len() >= expected {
                    break;
                }
            }
            if found.len() != expected {
                return Err(DbError::CountMismatch { expected, found: found.len() });
            }
            found
        }
        None => locate_real_zeros(&s_beta, &ScanPlan { window, cells: seeds * 4, outer: None })?,
    };
    build_spectrum(space, beta, &s_beta, points, window, expected.is_some())
}

fn build_spectrum(
    space: &DbSpace,
    beta: f64,
    s_beta: &EntireFunction,
    points: Vec<f64>,
    window: (f64, f64),
    certified: bool,
) -> Result<SpectrumData> {
    let mut derivs = Vec::with_capacity(points.len());
    let mut diag = Vec::with_capacity(points.len());
    let mut s0_values = Vec::with_capacity(points.len());
    for &x in &points {
        let z = C::new(x, 0.0);
        derivs.push(s_beta.derivative(z, 1)?.re);
        diag.push(space.kernel_diag(x)?);
        s0_values.push(space.s0().eval_real(x)?);
    }
    let relation_case = beta == 0.0;
    let jumps = if relation_case { None } else { Some(s0_values.iter().zip(&diag).map(|(s, d)| s * s / d).collect()) };
    Ok(SpectrumData { beta, points, derivs, diag, s0_values, jumps, window, relation_case, certified })
}

/// Jumps `s0(x_k)^2 / k(x_k, x_k)` of the spectral function `m_beta`.
pub fn spectral_jumps(spec: &SpectrumData) -> Result<Vec<f64>> {
    spec.jumps.clone().ok_or(DbError::RelationCase)
}

/// Eigenfunction `s_beta(z) / (z - x_k)` of `S_beta` for the eigenvalue `x_k`.
pub fn eigenfunction(space: &DbSpace, spec: &SpectrumData, k: usize) -> Result<EntireFunction> {
    let x = *spec.points.get(k).ok_or_else(|| DbError::InvalidArgument(format!("eigen index {k} out of range")))?;
    Ok(EntireFunction::divided_difference(space.assoc_s(spec.beta), C::new(x, 0.0)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterlacingReport {
    pub interlaced: bool,
    /// Indices `i` such that `(a_i, a_{i+1})` does not hold exactly one point of `b`.
    pub violations: Vec<usize>,
}

/// Between consecutive points of `a` there is exactly one point of `b`.
pub fn check_interlacing(a: &SpectrumData, b: &SpectrumData) -> Result<InterlacingReport> {
    if a.beta == b.beta {
        return Err(DbError::SameBeta(a.beta));
    }
    let violations: Vec<usize> = a
        .points
        .windows(2)
        .enumerate()
        .filter(|(_, w)| b.points.iter().filter(|&&x| w[0] < x && x < w[1]).count() != 1)
        .map(|(i, _)| i)
        .collect();
    Ok(InterlacingReport { interlaced: violations.is_empty(), violations })
}

/// Default beta grid: `n` equispaced angles in `(lo, hi)` inclusive.
pub fn beta_grid(n: usize, lo: f64, hi: f64) -> Vec<f64> {
    if n == 1 {
        return vec![FRAC_PI_2];
    }
    (0..n).map(|j| lo + (hi - lo) * j as f64 / (n - 1) as f64).collect()
}
