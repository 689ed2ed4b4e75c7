//! Canonical selfadjoint extensions `S_beta` of the multiplication operator:
//! matrix models, the rank-one perturbation identity, the relation `S_0`,
//! resolvents applied to `s0`, generating-vector checks and `f(S)`.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{DMatrix, SymmetricEigen};

use crate::entire::{EntireFunction, C};
use crate::error::{DbError, Result};
use crate::space::{DbSpace, Dimension};
use crate::spectra::SpectrumData;

/// Default guard band `[BETA_MIN, pi - BETA_MIN]` for `cot(beta)`.
pub const BETA_MIN: f64 = 1e-3;

/// `S_beta` in the orthonormal eigenbasis `k(., x_k) / sqrt(k(x_k, x_k))`
/// of a located spectrum, together with the coordinates of `s0`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixModel {
    /// Angle of the spectrum the basis is built on.
    pub beta: f64,
    /// Ascending.
    pub base_points: Vec<f64>,
    /// `v_k = s0(x_k) / sqrt(k(x_k, x_k))`
    pub s0_coeffs: Vec<f64>,
    pub n: usize,
}

impl MatrixModel {
    /// `sum v_k^2`, the truncated `||s0||^2`.
    pub fn s0_norm_sq(&self) -> f64 {
        self.s0_coeffs.iter().map(|v| v * v).sum()
    }

    pub fn diag_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&self.base_points))
    }
}

fn model_from_spectrum(spec: &SpectrumData, n: usize) -> Result<MatrixModel> {
    if n == 0 || spec.len() < n {
        return Err(DbError::SpectrumMissing(format!(
            "need {n} points of spec(S_beta) at beta = {}, located {}",
            spec.beta,
            spec.len()
        )));
    }
    // Keep the central block, away from the truncation edges.
    let start = (spec.len() - n) / 2;
    let range = start..start + n;
    let base_points = spec.points[range.clone()].to_vec();
    let s0_coeffs = spec.s0_values[range.clone()].iter().zip(&spec.diag[range]).map(|(s, d)| s / d.sqrt()).collect();
    Ok(MatrixModel { beta: spec.beta, base_points, s0_coeffs, n })
}

/// Matrix model of `S_pi/2` truncated to `n` eigenvectors.
pub fn matrix_model(space: &DbSpace, n: usize) -> Result<MatrixModel> {
    matrix_model_at(space, FRAC_PI_2, n)
}

/// Matrix model on `spec(S_beta)`.
pub fn matrix_model_at(space: &DbSpace, beta: f64, n: usize) -> Result<MatrixModel> {
    let spec = space.spectrum(beta)?;
    model_from_spectrum(&spec, n)
}

fn check_band(beta: f64, beta_min: f64) -> Result<()> {
    if !(beta >= beta_min && beta <= PI - beta_min) {
        return Err(DbError::BetaSingular { beta, min: beta_min });
    }
    Ok(())
}

fn cot(beta: f64) -> f64 {
    if beta == FRAC_PI_2 {
        0.0
    } else {
        beta.cos() / beta.sin()
    }
}

/// `S_beta = S_pi/2 - (cot(beta) / pi) <s0, .> s0` on a matrix model of
/// `S_pi/2`.
pub fn rank_one_extension(model: &MatrixModel, beta: f64, beta_min: f64) -> Result<DMatrix<f64>> {
    check_band(beta, beta_min)?;
    if model.beta != FRAC_PI_2 {
        return Err(DbError::InvalidArgument(format!(
            "rank-one identity needs a model of S_pi/2, got beta = {}",
            model.beta
        )));
    }
    let n = model.n;
    let v = &model.s0_coeffs;
    let t = cot(beta) / PI;
    Ok(DMatrix::from_fn(n, n, |i, j| {
        let d = if i == j { model.base_points[i] } else { 0.0 };
        d - t * (v[i] * v[j])
    }))
}

/// Ascending eigenvalues of a symmetric matrix.
pub fn symmetric_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    let mut values: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankOneReport {
    pub beta: f64,
    pub eigenvalues: Vec<f64>,
    /// Located zeros of `s_beta` matched to `eigenvalues`.
    pub zeros: Vec<f64>,
    /// Indices of `eigenvalues` that were compared.
    pub compared: std::ops::Range<usize>,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Eigenvalues of [`rank_one_extension`] against the located zeros of
/// `s_beta`. Truncated models compare only the middle third.
pub fn verify_rank_one(space: &DbSpace, beta: f64, n: Option<usize>) -> Result<RankOneReport> {
    check_band(beta, space.numerics().beta_min)?;
    let base = space.spectrum(FRAC_PI_2)?;
    let n = n.unwrap_or(match space.dim() {
        Dimension::Finite(_) => base.len(),
        Dimension::Truncated(_) => space.numerics().truncation.min(base.len()),
    });
    let model = model_from_spectrum(&base, n)?;
    let eigenvalues = symmetric_eigenvalues(rank_one_extension(&model, beta, space.numerics().beta_min)?);
    let spec = space.spectrum(beta)?;
    let radius = spec.points.iter().chain(&eigenvalues).fold(0.0f64, |m, x| m.max(x.abs()));
    let tolerance = space.numerics().tol * (1.0 + radius);

    let (compared, zeros) = match space.dim() {
        Dimension::Finite(_) if n == spec.len() => (0..n, spec.points.clone()),
        Dimension::Finite(_) => {
            return Err(DbError::CountMismatch { expected: n, found: spec.len() });
        }
        Dimension::Truncated(_) => {
            let third = n / 3;
            let range = third..n - third;
            let zeros = eigenvalues[range.clone()]
                .iter()
                .map(|e| {
                    spec.points
                        .iter()
                        .copied()
                        .min_by(|a, b| (a - e).abs().total_cmp(&(b - e).abs()))
                        .unwrap_or(f64::NAN)
                })
                .collect();
            (range, zeros)
        }
    };
    let max_deviation =
        eigenvalues[compared.clone()].iter().zip(&zeros).map(|(e, x)| (e - x).abs()).fold(0.0, f64::max);
    Ok(RankOneReport { beta, eigenvalues, zeros, compared, max_deviation, tolerance, pass: max_deviation <= tolerance })
}

/// `S f = z f` on `dom(S) = {f in B : z f in B}`, which is orthogonal to `s0`.
pub fn apply_s(space: &DbSpace, f: &EntireFunction) -> Result<EntireFunction> {
    if !space.in_space(f)?.in_space {
        return Err(DbError::NotInDomain("f is not in the space".into()));
    }
    let zf = f.times_z();
    if !space.in_space(&zf)?.in_space {
        return Err(DbError::NotInDomain("z f is not in the space".into()));
    }
    let overlap = space.inner_product(space.s0(), f, FRAC_PI_2)?.norm();
    let scale = (space.norm_sq(space.s0())? * space.norm_sq(f)?).sqrt();
    if overlap > 1e-8 * (1.0 + scale) {
        return Err(DbError::NotInDomain(format!("<s0, f> = {overlap:e} does not vanish")));
    }
    Ok(zf)
}

/// Builds the domain element
/// `g = [s_beta(w) f(z) - s_beta(z) f(w)] / (sin(beta) (z - w))` of `S_beta`
/// and returns `(g, S_beta g)` with `S_beta g = z g + f(w) s_beta / sin(beta)`.
pub fn apply_s_beta(space: &DbSpace, beta: f64, f: &EntireFunction, w: C) -> Result<(EntireFunction, EntireFunction)> {
    if !(beta > 0.0 && beta < PI) {
        return Err(DbError::InvalidArgument(format!("beta = {beta} not in (0, pi)")));
    }
    if !space.in_space(f)?.in_space {
        return Err(DbError::NotInDomain("f is not in the space".into()));
    }
    let s_beta = space.assoc_s(beta);
    let sin = beta.sin();
    let fw = f.eval(w)?;
    let sw = s_beta.eval(w)?;
    let num = EntireFunction::combination(vec![(sw / sin, f.clone()), (-fw / sin, s_beta.clone())]);
    let g = EntireFunction::divided_difference(num, w);
    let sg = EntireFunction::combination(vec![(C::new(1.0, 0.0), g.times_z()), (fw / sin, s_beta)]);
    Ok((g, sg))
}

/// The relation `S_0 = {(g, z g + c s0) : g in dom(S), c in C}`; its
/// multivalued part is `Span{s0}`.
#[derive(Debug, Clone, Copy)]
pub struct RelationS0<'a> {
    space: &'a DbSpace,
}

impl<'a> RelationS0<'a> {
    pub fn new(space: &'a DbSpace) -> Self {
        RelationS0 { space }
    }

    pub fn multivalued_direction(&self) -> &EntireFunction {
        self.space.s0()
    }

    pub fn pair(&self, g: &EntireFunction, c: C) -> Result<(EntireFunction, EntireFunction)> {
        relation_pair_s0(self.space, g, c)
    }
}

/// `(g, z g + c s0)` for `g` in `dom(S)`.
pub fn relation_pair_s0(space: &DbSpace, g: &EntireFunction, c: C) -> Result<(EntireFunction, EntireFunction)> {
    let zg = apply_s(space, g)?;
    let second = EntireFunction::combination(vec![(C::new(1.0, 0.0), zg), (c, space.s0().clone())]);
    Ok((g.clone(), second))
}

/// `(S_pi/2 - w)^{-1} s0 = -pi k(z, conj w) / s_half(w)`.
pub fn resolvent_s0(space: &DbSpace, w: C) -> Result<EntireFunction> {
    let spec = space.spectrum(FRAC_PI_2)?;
    if spec.points.iter().any(|&x| (w - x).norm() <= 1e-9 * (1.0 + w.norm())) {
        return Err(DbError::ResolventPole { w });
    }
    let sh = space.s_half().eval(w)?;
    if sh.norm() == 0.0 {
        return Err(DbError::ResolventPole { w });
    }
    Ok(space.kernel_function(w.conj())?.scale(-PI / sh))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolventReport {
    /// `max_k |(x_k - w) R(x_k) - s0(x_k)|` on `spec(S_pi/2)`.
    pub matrix_residual: f64,
    /// `max |(z - w) R(z) + s0(w)/s_half(w) s_half(z) - s0(z)|` on a grid.
    pub function_residual: f64,
    pub pass: bool,
}

/// Checks `(S_pi/2 - w) R = s0` for `R = resolvent_s0(w)`, in the eigenbasis
/// of `S_pi/2` and pointwise through the boundary term along `s_half`.
pub fn verify_resolvent(space: &DbSpace, w: C) -> Result<ResolventReport> {
    let r = resolvent_s0(space, w)?;
    let spec = space.spectrum(FRAC_PI_2)?;
    let mut matrix_residual = 0.0f64;
    for (k, &x) in spec.points.iter().enumerate() {
        let lhs = (x - w) * r.eval(C::new(x, 0.0))?;
        matrix_residual = matrix_residual.max((lhs - spec.s0_values[k]).norm() / spec.diag[k].sqrt());
    }
    let t = space.s0().eval(w)? / space.s_half().eval(w)?;
    let mut function_residual = 0.0f64;
    let mut scale = 1.0f64;
    for x in space.membership_grid()? {
        for z in [C::new(x, 0.0), C::new(x, 0.5)] {
            let s0 = space.s0().eval(z)?;
            scale = scale.max(s0.norm());
            let lhs = (z - w) * r.eval(z)? + t * space.s_half().eval(z)?;
            function_residual = function_residual.max((lhs - s0).norm());
        }
    }
    function_residual /= scale;
    Ok(ResolventReport {
        matrix_residual,
        function_residual,
        pass: matrix_residual <= 1e-9 && function_residual <= 1e-9,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratingReport {
    pub beta: f64,
    pub relation_case: bool,
    /// `min_k |v_k| / max_k |v_k|`
    pub min_projection: f64,
    /// Smallest singular value of the Gram matrix of normalized resolvent vectors.
    pub gram_sigma_min: f64,
    pub w_set: Vec<C>,
    pub pass: bool,
}

const PROJECTION_TOL: f64 = 1e-8;
const GRAM_TOL: f64 = 1e-10;

/// Default resolvent points: one above each spectral point, half a gap up.
pub fn default_w_set(spec: &SpectrumData) -> Vec<C> {
    let gap = spec.points.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    let h = if gap.is_finite() { 0.5 * gap } else { 1.0 };
    spec.points.iter().map(|&x| C::new(x, h)).collect()
}

/// Whether `s0` is a generating vector for `S_beta`: every eigenspace has a
/// nonzero `s0` component and the resolvent orbit `(S_beta - w)^{-1} s0`,
/// `w` in `w_set`, spans the (truncated) space. Never true at `beta = 0`.
pub fn verify_generating(space: &DbSpace, beta: f64, w_set: Option<&[C]>) -> Result<GeneratingReport> {
    if !(0.0..PI).contains(&beta) {
        return Err(DbError::InvalidArgument(format!("beta = {beta} not in [0, pi)")));
    }
    let spec = space.spectrum(beta)?;
    let w_set: Vec<C> = match w_set {
        Some(ws) => ws.to_vec(),
        None => default_w_set(&spec),
    };
    if spec.relation_case {
        return Ok(GeneratingReport {
            beta,
            relation_case: true,
            min_projection: 0.0,
            gram_sigma_min: 0.0,
            w_set,
            pass: false,
        });
    }
    let n = spec.len();
    if w_set.len() < n {
        return Err(DbError::InvalidArgument(format!("need at least {n} resolvent points, got {}", w_set.len())));
    }
    let model = model_from_spectrum(&spec, n)?;
    let vmax = model.s0_coeffs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let vmin = model.s0_coeffs.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
    let min_projection = if vmax > 0.0 { vmin / vmax } else { 0.0 };

    let mut r = DMatrix::<C>::zeros(n, w_set.len());
    for (j, &w) in w_set.iter().enumerate() {
        let mut norm = 0.0;
        for k in 0..n {
            let den = model.base_points[k] - w;
            if den.norm() == 0.0 {
                return Err(DbError::ResolventPole { w });
            }
            let rk = model.s0_coeffs[k] / den;
            norm += rk.norm_sqr();
            r[(k, j)] = rk;
        }
        let norm = norm.sqrt();
        if norm > 0.0 {
            for k in 0..n {
                r[(k, j)] /= norm;
            }
        }
    }
    let gram = r.adjoint() * &r;
    let gram_sigma_min = gram.singular_values().iter().copied().fold(f64::INFINITY, f64::min);
    Ok(GeneratingReport {
        beta,
        relation_case: false,
        min_projection,
        gram_sigma_min,
        w_set,
        pass: min_projection > PROJECTION_TOL && gram_sigma_min > GRAM_TOL,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaReport {
    /// Primary value from quadrature (orthogonality) or Parseval (inner).
    pub value: C,
    /// Second route, when the check has one.
    pub alternate: Option<C>,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// `<s_beta, h> = 0` for `h` in `dom(S)`, by quadrature and by the Parseval
/// form on `spec(S_pi/2)`.
pub fn check_lemma_orthogonality(space: &DbSpace, beta: f64, h: &EntireFunction) -> Result<LemmaReport> {
    if !(0.0..PI).contains(&beta) {
        return Err(DbError::InvalidArgument(format!("beta = {beta} not in [0, pi)")));
    }
    apply_s(space, h)?;
    let s_beta = space.assoc_s(beta);
    let quad = space.inner_product_quadrature(&s_beta, h)?;
    let spec = space.spectrum(FRAC_PI_2)?;
    let parseval = crate::space::parseval(&spec, &s_beta, h)?;
    let residual = quad.value.norm().max(parseval.norm());
    let tolerance = 1e-8;
    Ok(LemmaReport { value: quad.value, alternate: Some(parseval), residual, tolerance, pass: residual <= tolerance })
}

/// `<s0, g> = -pi f(w)` for the domain element `g` of [`apply_s_beta`].
pub fn check_lemma_inner(space: &DbSpace, beta: f64, f: &EntireFunction, w: C) -> Result<LemmaReport> {
    let (g, _) = apply_s_beta(space, beta, f, w)?;
    let value = space.inner_product(space.s0(), &g, FRAC_PI_2)?;
    let fw = f.eval(w)?;
    let residual = (value + PI * fw).norm();
    let tolerance = 1e-8 * (1.0 + fw.norm());
    Ok(LemmaReport { value, alternate: None, residual, tolerance, pass: residual <= tolerance })
}

/// Multiplier for [`function_of_s_apply`].
#[derive(Debug, Clone)]
pub enum Multiplier {
    Entire(EntireFunction),
    /// `1 / den`; `zeros` are the zeros of `den`, where the product with `g`
    /// must have removable singularities.
    Reciprocal {
        den: EntireFunction,
        zeros: Vec<C>,
    },
}

/// `(f(S) g)(z) = f(z) g(z)`, defined when both `g` and the product are in
/// the space.
pub fn function_of_s_apply(space: &DbSpace, multiplier: &Multiplier, g: &EntireFunction) -> Result<EntireFunction> {
    if !space.in_space(g)?.in_space {
        return Err(DbError::NotInDomain("g is not in the space".into()));
    }
    let product = match multiplier {
        Multiplier::Entire(f) => f.mul(g),
        Multiplier::Reciprocal { den, zeros } => EntireFunction::quotient(g.clone(), den.clone(), zeros.clone()),
    };
    if !space.in_space(&product)?.in_space {
        return Err(DbError::NotInDomain("f(S) g is not in the space".into()));
    }
    Ok(product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::catalog;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn matrix_model_examples() {
        let m = matrix_model(&catalog("dim1").unwrap(), 1).unwrap();
        assert_eq!(m.base_points, vec![0.0]);
        assert!((m.s0_coeffs[0] - 1.0).abs() < 1e-15);
        let m = matrix_model(&catalog("cheb2").unwrap(), 2).unwrap();
        assert!((m.base_points[0] + 0.5).abs() < 1e-15 && (m.base_points[1] - 0.5).abs() < 1e-15);
        let r = 0.5f64.sqrt();
        assert!((m.s0_coeffs[0] + r).abs() < 1e-14 && (m.s0_coeffs[1] - r).abs() < 1e-14);
        assert!((m.s0_norm_sq() - 1.0).abs() < 1e-14);
        let err = matrix_model(&catalog("cheb2").unwrap(), 3).unwrap_err();
        assert_eq!(err.code(), "spectrum-missing");
    }

    #[test]
    fn rank_one_examples() {
        let cheb2 = catalog("cheb2").unwrap();
        let m = matrix_model(&cheb2, 2).unwrap();
        let s = rank_one_extension(&m, FRAC_PI_2, BETA_MIN).unwrap();
        assert_eq!(s, m.diag_matrix());
        let s = rank_one_extension(&m, PI / 4.0, BETA_MIN).unwrap();
        let p = 1.0 / (2.0 * PI);
        let expected = DMatrix::from_row_slice(2, 2, &[-0.5 - p, p, p, 0.5 - p]);
        assert!((s - expected).amax() < 1e-15);

        let dim1 = matrix_model(&catalog("dim1").unwrap(), 1).unwrap();
        let s = rank_one_extension(&dim1, PI / 4.0, BETA_MIN).unwrap();
        assert!((s[(0, 0)] + 1.0 / PI).abs() < 1e-15);

        for beta in [0.0, 5e-4, PI - 5e-4, PI] {
            let err = rank_one_extension(&m, beta, BETA_MIN).unwrap_err();
            assert_eq!(err.code(), "beta-singular");
        }
    }

    #[test]
    fn rank_one_matches_spectrum() {
        for name in ["dim1", "cheb2", "chebN:7"] {
            let space = catalog(name).unwrap();
            for beta in [0.2, PI / 4.0, FRAC_PI_2, 2.5] {
                let r = verify_rank_one(&space, beta, None).unwrap();
                assert!(r.pass, "{name} beta={beta}: {r:?}");
            }
        }
        let r = verify_rank_one(&catalog("cheb2").unwrap(), PI / 4.0, None).unwrap();
        assert!(r.max_deviation <= 1e-12);
    }

    #[test]
    fn apply_s_examples() {
        let cheb2 = catalog("cheb2").unwrap();
        let z = apply_s(&cheb2, &EntireFunction::constant(1.0)).unwrap();
        assert!((z.eval(c(0.3, 0.2)).unwrap() - c(0.3, 0.2)).norm() < 1e-15);
        let err = apply_s(&cheb2, &EntireFunction::identity()).unwrap_err();
        assert_eq!(err.code(), "not-in-domain");
        let dim1 = catalog("dim1").unwrap();
        let err = apply_s(&dim1, &EntireFunction::constant(1.0)).unwrap_err();
        assert_eq!(err.code(), "not-in-domain");
    }

    #[test]
    fn apply_s_beta_example() {
        let cheb2 = catalog("cheb2").unwrap();
        let (g, sg) = apply_s_beta(&cheb2, FRAC_PI_2, &EntireFunction::constant(1.0), c(0.0, 0.0)).unwrap();
        for z in [c(0.4, 0.0), c(-1.2, 0.7), c(1e-9, 0.0)] {
            assert!((g.eval(z).unwrap() + 2.0 * PI * z).norm() < 1e-12);
            assert!((sg.eval(z).unwrap() + PI / 2.0).norm() < 1e-12);
        }
    }

    #[test]
    fn apply_s_beta_matches_matrix_action() {
        let space = catalog("chebN:5").unwrap();
        let beta = 1.1;
        let f = EntireFunction::polynomial(vec![0.3, -1.0, 0.25, 0.7, -0.2]);
        let (g, sg) = apply_s_beta(&space, beta, &f, c(0.2, 0.6)).unwrap();
        // In the eigenbasis of S_beta the operator is diagonal.
        let spec = space.spectrum(beta).unwrap();
        for &x in &spec.points {
            let z = c(x, 0.0);
            assert!((sg.eval(z).unwrap() - x * g.eval(z).unwrap()).norm() < 1e-9);
        }
        assert!(space.in_space(&sg).unwrap().in_space);
    }

    #[test]
    fn relation_pairs() {
        let cheb2 = catalog("cheb2").unwrap();
        let (a, b) = relation_pair_s0(&cheb2, &EntireFunction::constant(0.0), c(1.0, 0.0)).unwrap();
        let z = c(0.3, -0.4);
        assert_eq!(a.eval(z).unwrap(), c(0.0, 0.0));
        assert!((b.eval(z).unwrap() - 2.0 * z).norm() < 1e-15);
        let (a, b) = RelationS0::new(&cheb2).pair(&EntireFunction::constant(1.0), c(0.0, 0.0)).unwrap();
        assert!((a.eval(z).unwrap() - 1.0).norm() < 1e-15);
        assert!((b.eval(z).unwrap() - z).norm() < 1e-15);
    }

    #[test]
    fn resolvent_examples() {
        let dim1 = catalog("dim1").unwrap();
        let r = resolvent_s0(&dim1, c(0.0, 1.0)).unwrap();
        assert!((r.eval(c(0.7, -0.3)).unwrap() - c(0.0, 1.0)).norm() < 1e-14);
        let err = resolvent_s0(&dim1, c(0.0, 0.0)).unwrap_err();
        assert_eq!(err.code(), "resolvent-pole");
        for name in ["cheb2", "chebN:6"] {
            let space = catalog(name).unwrap();
            for w in [c(0.1, 1.0), c(-0.3, 0.2), c(3.0, 0.0)] {
                let rep = verify_resolvent(&space, w).unwrap();
                assert!(rep.pass, "{name} {w}: {rep:?}");
            }
            let r = resolvent_s0(&space, c(3.0, 0.0)).unwrap();
            assert!(r.eval(c(0.4, 0.0)).unwrap().im.abs() < 1e-15);
        }
    }

    #[test]
    fn generating_examples() {
        let cheb2 = catalog("cheb2").unwrap();
        let r = verify_generating(&cheb2, FRAC_PI_2, Some(&[c(0.0, 1.0), c(0.0, 2.0)])).unwrap();
        assert!(r.pass, "{r:?}");
        let r = verify_generating(&cheb2, 0.0, None).unwrap();
        assert!(!r.pass && r.relation_case);
        for name in ["dim1", "chebN:9"] {
            let r = verify_generating(&catalog(name).unwrap(), PI / 3.0, None).unwrap();
            assert!(r.pass, "{name}: {r:?}");
        }
    }

    #[test]
    fn lemma_examples() {
        let cheb2 = catalog("cheb2").unwrap();
        let one = EntireFunction::constant(1.0);
        for beta in [FRAC_PI_2, PI / 4.0] {
            let r = check_lemma_orthogonality(&cheb2, beta, &one).unwrap();
            assert!(r.pass, "{r:?}");
        }
        let r = check_lemma_orthogonality(&cheb2, 1.0, &EntireFunction::constant(0.0)).unwrap();
        assert_eq!(r.residual, 0.0);
        let r = check_lemma_inner(&cheb2, FRAC_PI_2, &one, c(0.0, 0.0)).unwrap();
        assert!((r.value + PI).norm() < 1e-12 && r.pass);
        let f = EntireFunction::polynomial(vec![-0.25, 0.0, 1.0]);
        let r = check_lemma_inner(&catalog("chebN:4").unwrap(), 0.8, &f, c(0.5, 0.0)).unwrap();
        assert!(r.value.norm() < 1e-10 && r.pass);
    }

    #[test]
    fn function_of_s_examples() {
        let cheb2 = catalog("cheb2").unwrap();
        let one = EntireFunction::constant(1.0);
        let g = function_of_s_apply(&cheb2, &Multiplier::Entire(one.clone()), &cheb2.s0().clone()).unwrap();
        assert!((g.eval(c(0.2, 0.1)).unwrap() - c(0.4, 0.2)).norm() < 1e-15);
        let z = function_of_s_apply(&cheb2, &Multiplier::Entire(EntireFunction::identity()), &one).unwrap();
        assert!((z.eval(c(0.2, 0.1)).unwrap() - c(0.2, 0.1)).norm() < 1e-15);
        let h0 = EntireFunction::identity();
        let ratio = function_of_s_apply(
            &cheb2,
            &Multiplier::Reciprocal { den: h0.clone(), zeros: vec![c(0.0, 0.0)] },
            cheb2.s0(),
        )
        .unwrap();
        assert!((ratio.eval(c(0.0, 0.0)).unwrap() - 2.0).norm() < 1e-12);
        let back = function_of_s_apply(&cheb2, &Multiplier::Entire(h0), &ratio).unwrap();
        assert!((back.eval(c(0.3, 0.0)).unwrap() - 0.6).norm() < 1e-12);
        let err = function_of_s_apply(&cheb2, &Multiplier::Entire(EntireFunction::identity()), cheb2.s0()).unwrap_err();
        assert_eq!(err.code(), "not-in-domain");
    }
}
