//! Zero-free functions `s_beta / j_beta` and the entire gauge.
//!
//! `j_beta` is a real entire function whose zeros are exactly `spec(S_beta)`;
//! the quotient lies in the space iff
//! `sum_k |c_k|^2 |s_beta'(x_k) / s0(x_k)| < inf` with `c_k = 1 / j_beta'(x_k)`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::entire::{CanonicalProduct, EntireFunction, C};
use crate::error::{DbError, Result};
use crate::extensions::{function_of_s_apply, Multiplier};
use crate::space::{DbSpace, SampledFunction};
use crate::spectra::SpectrumData;

const ZERO_AT_ORIGIN_TOL: f64 = 1e-12;

/// Canonical product `prod (1 - z/b_k)` over `spec(S_beta)`, ordered by
/// `|b_k|`, with a leading `z` when `0` is in the spectrum. `truncation`
/// keeps only the innermost zeros.
pub fn canonical_product(space: &DbSpace, beta: f64, truncation: Option<usize>) -> Result<EntireFunction> {
    let spec = space.spectrum(beta)?;
    let mut zeros = spec.points.clone();
    zeros.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    if let Some(t) = truncation {
        zeros.truncate(t);
    }
    let tol = ZERO_AT_ORIGIN_TOL * (1.0 + zeros.last().map_or(0.0, |b| b.abs()));
    Ok(EntireFunction::canonical_product(CanonicalProduct::new(&zeros, tol)?))
}

/// Residues `c_k = 1 / j'(x_k)` of `1 / j` at the spectral points.
pub fn residues(spec: &SpectrumData, j: &EntireFunction) -> Result<Vec<f64>> {
    spec.points
        .iter()
        .map(|&x| {
            let d = j.derivative(C::new(x, 0.0), 1)?.re;
            // Against the size of j a short step away: a double zero has |j'| delta << |j(x +- delta)|.
            let delta = 1e-3 * (1.0 + x.abs());
            let near = j.eval_real(x - delta)?.abs().max(j.eval_real(x + delta)?.abs());
            if d == 0.0 || !d.is_finite() || d.abs() * delta <= 1e-6 * near {
                Err(DbError::NonSimpleZero { x })
            } else {
                Ok(1.0 / d)
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartialFractionReport {
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// `max |1/j(z) - sum_k c_k / (z - x_k)|` over `grid`.
pub fn partial_fraction_check(
    spec: &SpectrumData,
    c: &[f64],
    j: &EntireFunction,
    grid: &[C],
) -> Result<PartialFractionReport> {
    if c.len() != spec.len() {
        return Err(DbError::SampleShape { expected: spec.len(), found: c.len() });
    }
    let mut max_deviation = 0.0f64;
    let mut max_inv = 0.0f64;
    for &z in grid {
        if let Some(x) = spec.points.iter().find(|&&x| (z - x).norm() < 0.05) {
            return Err(DbError::InvalidGrid(format!("grid point {z} is within 0.05 of spectral point {x}")));
        }
        let inv = 1.0 / j.eval(z)?;
        let sum: C = spec.points.iter().zip(c).map(|(&x, &ck)| ck / (z - x)).sum();
        max_inv = max_inv.max(inv.norm());
        max_deviation = max_deviation.max((inv - sum).norm());
    }
    let tolerance = 1e-8 * (1.0 + max_inv);
    Ok(PartialFractionReport { max_deviation, tolerance, pass: max_deviation <= tolerance })
}

/// Complex test grid for partial fractions that keeps clear of the spectrum.
pub fn partial_fraction_grid(spec: &SpectrumData) -> Vec<C> {
    let (lo, hi) = spec.window;
    let mut grid: Vec<C> = (0..16).map(|k| C::new(lo + (hi - lo) * (k as f64 + 0.5) / 16.0, 0.75)).collect();
    grid.push(C::new(hi + 1.0, 0.5));
    grid.push(C::new(lo - 1.0, 0.5));
    grid.push(C::new(0.0, 2.0));
    grid
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummabilityStat {
    pub partial: f64,
    /// Extrapolated contribution of the missing terms (zero when exact).
    pub tail: f64,
    /// Fitted decay exponent of the terms against `|x_k|`, truncated models only.
    pub slope: Option<f64>,
    pub exact: bool,
    pub terms: Vec<f64>,
}

impl SummabilityStat {
    pub fn value(&self) -> f64 {
        self.partial + self.tail
    }
}

/// `sum_k |c_k|^2 |s_beta'(x_k) / s0(x_k)|`. Exact for finite models; for
/// truncated models the tail is extrapolated from the outermost decade.
pub fn summability_stat(space: &DbSpace, spec: &SpectrumData, c: &[f64]) -> Result<SummabilityStat> {
    if c.len() != spec.len() {
        return Err(DbError::SampleShape { expected: spec.len(), found: c.len() });
    }
    let mut terms = Vec::with_capacity(c.len());
    for (k, &x) in spec.points.iter().enumerate() {
        let s0 = spec.s0_values[k];
        let sh = space.s_half().eval_real(x)?;
        if s0 == 0.0 || s0.abs() <= 1e-12 * sh.abs() {
            return Err(DbError::S0VanishesOnSpectrum { x, value: s0 });
        }
        terms.push(c[k] * c[k] * (spec.derivs[k] / s0).abs());
    }
    let partial: f64 = terms.iter().sum();
    if space.dim().is_finite() {
        return Ok(SummabilityStat { partial, tail: 0.0, slope: None, exact: true, terms });
    }
    let (slope, tail) = tail_estimate(&spec.points, &terms);
    Ok(SummabilityStat { partial, tail, slope, exact: false, terms })
}

/// Least-squares fit `log t ~ p log|x|` over `|x| >= R/10`, then
/// `tail = density * C R^(p+1) / (-p-1)`; infinite when `p >= -1`.
fn tail_estimate(points: &[f64], terms: &[f64]) -> (Option<f64>, f64) {
    let r = points.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let fit: Vec<(f64, f64)> = points
        .iter()
        .zip(terms)
        .filter(|(x, t)| x.abs() >= 0.1 * r && x.abs() > 0.0 && **t > 0.0)
        .map(|(x, t)| (x.abs().ln(), t.ln()))
        .collect();
    if fit.len() < 3 {
        return (None, 0.0);
    }
    let n = fit.len() as f64;
    let (sx, sy) = fit.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let (sxy, sxx) = fit.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + (x - mx) * (y - my), b + (x - mx) * (x - mx)));
    if sxx <= 0.0 {
        return (None, 0.0);
    }
    let p = sxy / sxx;
    let log_c = my - p * mx;
    if p >= -1.0 {
        return (Some(p), f64::INFINITY);
    }
    // Points per unit length in the fitted band, both sides of the origin.
    let density = n / (0.9 * r);
    let tail = density * log_c.exp() * r.powf(p + 1.0) / (-p - 1.0);
    (Some(p), tail)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    InSpace,
    NotInSpace,
}

#[derive(Debug, Clone)]
pub struct ZeroFreeCandidate {
    pub beta: f64,
    pub j: EntireFunction,
    pub residues: Vec<f64>,
    pub partial_fractions: PartialFractionReport,
    /// `max_k |j(x_k) / j'(x_k)|`, the Newton distance from `x_k` to a zero of `j`.
    pub zero_mismatch: f64,
    pub stat: SummabilityStat,
    pub verdict: Verdict,
    pub g: Option<EntireFunction>,
    /// `||g||^2` by the Parseval form on `spec(S_pi/2)`.
    pub norm_sq: Option<f64>,
    /// `pi sin(beta) stat`, the value `||s_beta / j||^2` must take.
    pub predicted_norm_sq: f64,
    /// `min |g| / max |g|` on the test grid.
    pub zero_free_margin: Option<f64>,
    /// Max deviation of `g` from direct evaluation of `s_beta / j`, relative to `max |g|`.
    pub direct_deviation: Option<f64>,
}

impl ZeroFreeCandidate {
    /// `|norm_sq - pi sin(beta) stat| / norm_sq`
    pub fn norm_identity_residual(&self) -> Option<f64> {
        self.norm_sq.map(|n| (n - self.predicted_norm_sq).abs() / n.abs().max(f64::MIN_POSITIVE))
    }

    pub fn is_zero_free(&self) -> bool {
        self.zero_free_margin.is_some_and(|m| m > 1e-10)
    }
}

/// Uniform real test grid of `n` points over the model window.
pub fn window_grid(space: &DbSpace, n: usize) -> Vec<f64> {
    let (lo, hi) = space.numerics().window;
    (0..n).map(|k| lo + (hi - lo) * (k as f64 + 0.5) / n as f64).collect()
}

/// Membership test for `s_beta / h_beta` with the canonical product.
pub fn zero_free_membership(space: &DbSpace, beta: f64) -> Result<ZeroFreeCandidate> {
    let j = canonical_product(space, beta, None)?;
    zero_free_membership_with(space, beta, j)
}

/// Membership test for `s_beta / j`, any real entire `j` with zeros on `spec(S_beta)`.
pub fn zero_free_membership_with(space: &DbSpace, beta: f64, j: EntireFunction) -> Result<ZeroFreeCandidate> {
    if !(beta > 0.0 && beta < PI) {
        return Err(DbError::InvalidArgument(format!("beta = {beta} not in (0, pi)")));
    }
    let spec = space.spectrum(beta)?;
    let residues = residues(&spec, &j)?;
    let mut zero_mismatch = 0.0f64;
    for (&x, &ck) in spec.points.iter().zip(&residues) {
        zero_mismatch = zero_mismatch.max((j.eval_real(x)? * ck).abs());
    }
    let partial_fractions = partial_fraction_check(&spec, &residues, &j, &partial_fraction_grid(&spec))?;
    let stat = summability_stat(space, &spec, &residues)?;
    if !stat.exact && stat.tail.is_finite() && stat.tail > 0.1 * stat.partial {
        return Err(DbError::InconclusiveTruncation { partial: stat.partial, tail: stat.tail });
    }
    let predicted_norm_sq = PI * beta.sin() * stat.value();
    let mut candidate = ZeroFreeCandidate {
        beta,
        j: j.clone(),
        residues,
        partial_fractions,
        zero_mismatch,
        stat,
        verdict: Verdict::NotInSpace,
        g: None,
        norm_sq: None,
        predicted_norm_sq,
        zero_free_margin: None,
        direct_deviation: None,
    };
    let zeros_match = zero_mismatch <= 1e-9 && candidate.partial_fractions.pass;
    if !zeros_match || !candidate.stat.value().is_finite() {
        return Ok(candidate);
    }
    candidate.verdict = Verdict::InSpace;

    // g from its samples: g(x_k) = c_k s_beta'(x_k), i.e. g = a(S_beta) s0.
    let samples: Vec<C> =
        (0..spec.len()).map(|k| C::new(candidate.residues[k] * spec.derivs[k] / spec.s0_values[k], 0.0)).collect();
    let g = space.reconstruct(&SampledFunction { beta, values: samples })?;
    let guards = spec.points.iter().map(|&x| C::new(x, 0.0)).collect();
    let direct = EntireFunction::quotient(space.assoc_s(beta), j, guards);
    let (mut gmin, mut gmax, mut dev) = (f64::INFINITY, 0.0f64, 0.0f64);
    for x in window_grid(space, 200) {
        let z = C::new(x, 0.0);
        let gz = g.eval(z)?;
        gmin = gmin.min(gz.norm());
        gmax = gmax.max(gz.norm());
        dev = dev.max((gz - direct.eval(z)?).norm());
    }
    candidate.norm_sq = Some(space.norm_sq(&g)?);
    candidate.zero_free_margin = Some(if gmax > 0.0 { gmin / gmax } else { 0.0 });
    candidate.direct_deviation = Some(dev / gmax.max(f64::MIN_POSITIVE));
    candidate.g = Some(g);
    Ok(candidate)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CartwrightReport {
    /// Whether `|c_k| (1 + |x_k|) >= |s0(x_k) / s_half(x_k)|` holds at each `k`.
    pub holds: Vec<bool>,
    pub violations: Vec<usize>,
    pub pass: bool,
}

/// Krein's sufficient bound for the Cartwright class, pointwise.
pub fn cartwright_check(space: &DbSpace, spec: &SpectrumData, c: &[f64]) -> Result<CartwrightReport> {
    if c.len() != spec.len() {
        return Err(DbError::SampleShape { expected: spec.len(), found: c.len() });
    }
    let mut holds = Vec::with_capacity(c.len());
    for (k, &x) in spec.points.iter().enumerate() {
        let sh = space.s_half().eval_real(x)?;
        let s0 = spec.s0_values[k];
        if sh == 0.0 || sh.abs() <= 1e-12 * s0.abs() {
            return Err(DbError::IndeterminateBound { x });
        }
        holds.push(c[k].abs() * (1.0 + x.abs()) >= (s0 / sh).abs());
    }
    let violations: Vec<usize> = holds.iter().enumerate().filter(|(_, h)| !**h).map(|(k, _)| k).collect();
    Ok(CartwrightReport { pass: violations.is_empty(), holds, violations })
}

/// Canonical isometry `U_beta f = f(S_beta) s0`, with
/// `sum_k |f(x_k)|^2 jump_k`, the `L2(m_beta)` norm of the samples.
pub fn u_beta_apply(space: &DbSpace, samples: &SampledFunction) -> Result<(EntireFunction, f64)> {
    if !(samples.beta > 0.0 && samples.beta < PI) {
        return Err(DbError::InvalidArgument(format!("beta = {} not in (0, pi)", samples.beta)));
    }
    let spec = space.spectrum(samples.beta)?;
    let f = space.reconstruct(samples)?;
    let jumps = spec.jumps.as_ref().ok_or(DbError::RelationCase)?;
    let norm_sq = samples.values.iter().zip(jumps).map(|(v, j)| v.norm_sqr() * j).sum();
    Ok((f, norm_sq))
}

/// Angles clustering geometrically toward `pi/2`: `pi/2 - (pi/4) / 2^k`.
pub fn clustered_betas(count: usize) -> Vec<f64> {
    (0..count).map(|k| FRAC_PI_2 - (PI / 4.0) / 2f64.powi(k as i32)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossBetaReport {
    pub betas: Vec<f64>,
    /// `sum_k |1/j0(x_k)|^2 jump_k` per angle.
    pub l2_norms: Vec<f64>,
    /// Max over grid and angle pairs of `|g_beta - g_beta'|`, relative to `max |g|`.
    pub max_pair_deviation: f64,
    /// Max of `|g - s0/j0|` relative to `max |g|`, when the angles agree.
    pub direct_deviation: Option<f64>,
    /// The angle set only samples an accumulation point.
    pub finite_surrogate: bool,
    pub pass: bool,
}

/// Cross-angle criterion: `s0 / j0` is in the space iff `1/j0` is in
/// `L2(m_beta)` and `U_beta(1/j0)` does not depend on `beta`.
pub fn theorem43_consistency(space: &DbSpace, betas: &[f64], j0: &EntireFunction) -> Result<CrossBetaReport> {
    if betas.len() < 2 {
        return Err(DbError::InvalidArgument("need at least two angles".into()));
    }
    let grid = window_grid(space, 200);
    let mut l2_norms = Vec::with_capacity(betas.len());
    let mut values: Vec<Vec<C>> = Vec::with_capacity(betas.len());
    for &beta in betas {
        let spec = space.spectrum(beta)?;
        let mut samples = Vec::with_capacity(spec.len());
        for &x in &spec.points {
            let v = j0.eval_real(x)?;
            if v == 0.0 {
                return Err(DbError::InvalidModel(format!(
                    "j0 vanishes at {x}, a point of spec(S_beta) for beta = {beta}"
                )));
            }
            samples.push(C::new(1.0 / v, 0.0));
        }
        let (g, l2) = u_beta_apply(space, &SampledFunction { beta, values: samples })?;
        l2_norms.push(l2);
        values.push(grid.iter().map(|&x| g.eval(C::new(x, 0.0))).collect::<Result<_>>()?);
    }
    let gmax = values.iter().flatten().fold(0.0f64, |m, v| m.max(v.norm())).max(f64::MIN_POSITIVE);
    let mut dev = 0.0f64;
    for a in 0..values.len() {
        for b in a + 1..values.len() {
            for (u, v) in values[a].iter().zip(&values[b]) {
                dev = dev.max((u - v).norm());
            }
        }
    }
    let max_pair_deviation = dev / gmax;
    let consistent = max_pair_deviation <= 1e-8 && l2_norms.iter().all(|n| n.is_finite());
    let mut direct_deviation = None;
    if consistent {
        let spec0 = space.spectrum(0.0)?;
        let guards = spec0.points.iter().map(|&x| C::new(x, 0.0)).collect();
        let direct = EntireFunction::quotient(space.s0().clone(), j0.clone(), guards);
        let mut d = 0.0f64;
        for (&x, g) in grid.iter().zip(&values[0]) {
            d = d.max((g - direct.eval(C::new(x, 0.0))?).norm());
        }
        direct_deviation = Some(d / gmax);
    }
    let pass = consistent && direct_deviation.is_some_and(|d| d <= 1e-8);
    Ok(CrossBetaReport {
        betas: betas.to_vec(),
        l2_norms,
        max_pair_deviation,
        direct_deviation,
        finite_surrogate: true,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProportionalityReport {
    pub ratio: [f64; 2],
    /// `max |r(z) - mean| / |mean|`
    pub max_rel_deviation: f64,
    /// `|Im mean| / |mean|`
    pub imag_part: f64,
    pub pass: bool,
}

/// Test points for ratio checks: the real window grid plus a row above it.
fn ratio_grid(space: &DbSpace) -> Vec<C> {
    let mut grid: Vec<C> = window_grid(space, 200).into_iter().map(|x| C::new(x, 0.0)).collect();
    grid.extend(window_grid(space, 20).into_iter().map(|x| C::new(x, 1.0)));
    grid
}

/// Whether `f / g` is a real constant on `grid`.
pub fn proportionality(f: &EntireFunction, g: &EntireFunction, grid: &[C]) -> Result<ProportionalityReport> {
    let ratios: Vec<C> = grid.iter().map(|&z| Ok(f.eval(z)? / g.eval(z)?)).collect::<Result<_>>()?;
    let mean = ratios.iter().sum::<C>() / ratios.len().max(1) as f64;
    let scale = mean.norm().max(f64::MIN_POSITIVE);
    let max_rel_deviation = ratios.iter().fold(0.0f64, |m, r| m.max((r - mean).norm())) / scale;
    let imag_part = mean.im.abs() / scale;
    Ok(ProportionalityReport {
        ratio: [mean.re, mean.im],
        max_rel_deviation,
        imag_part,
        pass: max_rel_deviation <= 1e-8 && imag_part <= 1e-8 && max_rel_deviation.is_finite(),
    })
}

fn zero_free_function(space: &DbSpace, beta: f64) -> Result<EntireFunction> {
    let candidate = zero_free_membership(space, beta)?;
    match (candidate.verdict, candidate.g) {
        (Verdict::InSpace, Some(g)) => Ok(g),
        _ => Err(DbError::NotInDomain(format!("no zero-free function from spec(S_beta), beta = {beta}"))),
    }
}

/// Zero-free functions built from two angles agree up to a real constant.
pub fn uniqueness_check(space: &DbSpace, beta1: f64, beta2: f64) -> Result<ProportionalityReport> {
    let g1 = zero_free_function(space, beta1)?;
    let g2 = zero_free_function(space, beta2)?;
    proportionality(&g1, &g2, &ratio_grid(space))
}

/// A user-supplied `j` with the right zeros differs from the canonical
/// product only by a constant.
pub fn product_ratio_check(space: &DbSpace, beta: f64, j: &EntireFunction) -> Result<ProportionalityReport> {
    let h = canonical_product(space, beta, None)?;
    let grid: Vec<C> = window_grid(space, 20).into_iter().map(|x| C::new(x, 0.5)).collect();
    proportionality(j, &h, &grid)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaugeReport {
    /// `|g(w)| / (||g|| sqrt(k(w, w)))` per grid point.
    pub margins: Vec<f64>,
    pub failures: Vec<usize>,
    pub pass: bool,
}

/// `g` stays outside `ran(S - w)` iff `g(w) = <k(., w), g>` does not vanish.
pub fn gauge_check(space: &DbSpace, g: &EntireFunction, w_grid: &[C]) -> Result<GaugeReport> {
    if !space.in_space(g)?.in_space {
        return Err(DbError::NotInDomain("g is not in the space".into()));
    }
    let norm = space.norm_sq(g)?.sqrt();
    let mut margins = Vec::with_capacity(w_grid.len());
    for &w in w_grid {
        let kw = space.kernel(w, w)?.re.max(0.0).sqrt();
        margins.push(g.eval(w)?.norm() / (norm * kw).max(f64::MIN_POSITIVE));
    }
    let failures: Vec<usize> = margins.iter().enumerate().filter(|(_, m)| **m <= 1e-8).map(|(k, _)| k).collect();
    Ok(GaugeReport { pass: failures.is_empty(), margins, failures })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaugeIdentityReport {
    /// `h0(S) (s0 / h0) = s0`
    pub forward_residual: f64,
    /// `(1/h0)(S) s0 = s0 / h0`
    pub inverse_residual: f64,
    pub pass: bool,
}

/// Gauge identities for the product `h0` over the zeros of `s0`.
pub fn gauge_identities(space: &DbSpace) -> Result<GaugeIdentityReport> {
    let h0 = canonical_product(space, 0.0, None)?;
    let zeros: Vec<C> = space.spectrum(0.0)?.points.iter().map(|&x| C::new(x, 0.0)).collect();
    let reciprocal = Multiplier::Reciprocal { den: h0.clone(), zeros };
    let ratio = function_of_s_apply(space, &reciprocal, space.s0())?;
    let back = function_of_s_apply(space, &Multiplier::Entire(h0), &ratio)?;
    let again = function_of_s_apply(space, &reciprocal, &back)?;
    let (mut fwd, mut inv, mut s0max, mut rmax) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for z in ratio_grid(space) {
        let s0 = space.s0().eval(z)?;
        let r = ratio.eval(z)?;
        s0max = s0max.max(s0.norm());
        rmax = rmax.max(r.norm());
        fwd = fwd.max((back.eval(z)? - s0).norm());
        inv = inv.max((again.eval(z)? - r).norm());
    }
    let forward_residual = fwd / s0max.max(f64::MIN_POSITIVE);
    let inverse_residual = inv / rmax.max(f64::MIN_POSITIVE);
    Ok(GaugeIdentityReport {
        forward_residual,
        inverse_residual,
        pass: forward_residual <= 1e-9 && inverse_residual <= 1e-9,
    })
}
