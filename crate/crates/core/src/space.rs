//! The de Branges space: associated functions, the reproducing kernel, inner
//! products and membership.
//!
//! A space is determined by the real pair `(s0, s_half)`; the generating
//! Hermite-Biehler function is recovered as `e = -s_half - i s0`. Every model
//! is oriented so that the Wronskian
//! `W(x) = (s_half'(x) s0(x) - s_half(x) s0'(x)) / pi` is positive on the real
//! line; `W` is the kernel diagonal `k(x, x)`.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::{Arc, Mutex};

use crate::entire::{EntireFunction, KernelExpansion, C, REALNESS_TOL};
use crate::error::{DbError, Result};
use crate::models::Provenance;
use crate::quadrature;
use crate::spectra::{self, SpectrumData};

/// Numerical settings attached to a model.
#[derive(Debug, Clone, PartialEq)]
pub struct Numerics {
    /// Inner root-search window on the real line.
    pub window: (f64, f64),
    /// Truncation size for matrix models of truncated spaces.
    pub truncation: usize,
    /// General comparison tolerance.
    pub tol: f64,
    /// Relative radius of the kernel diagonal seam.
    pub seam: f64,
    /// Guard band for `cot(beta)` formulas.
    pub beta_min: f64,
    pub membership_tol: f64,
    pub membership_points: usize,
}

impl Default for Numerics {
    fn default() -> Self {
        Numerics {
            window: (-2.0, 2.0),
            truncation: 64,
            tol: 1e-9,
            seam: 1e-6,
            beta_min: 1e-3,
            membership_tol: 1e-8,
            membership_points: 64,
        }
    }
}

/// Dimension of a model. Finite models have a certified zero count for every
/// `s_beta`; truncated ones only report what the search window shows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Finite(usize),
    Truncated(usize),
}

impl Dimension {
    pub fn size(&self) -> usize {
        match *self {
            Dimension::Finite(n) | Dimension::Truncated(n) => n,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Dimension::Finite(_))
    }
}

/// The pair `(s0, s_half)` and the kernel it induces.
#[derive(Debug)]
pub struct AssociatedPair {
    s0: EntireFunction,
    s_half: EntireFunction,
    seam: f64,
}

impl AssociatedPair {
    pub fn new(s0: EntireFunction, s_half: EntireFunction, seam: f64) -> Self {
        AssociatedPair { s0, s_half, seam }
    }

    pub fn s0(&self) -> &EntireFunction {
        &self.s0
    }

    pub fn s_half(&self) -> &EntireFunction {
        &self.s_half
    }

    pub(crate) fn seam_radius(&self, z: C) -> f64 {
        self.seam * (1.0 + z.norm())
    }

    /// `(s_half'(z) s0(z) - s_half(z) s0'(z)) / pi`
    pub fn wronskian(&self, z: C) -> Result<C> {
        let s0 = self.s0.eval(z)?;
        let sh = self.s_half.eval(z)?;
        let d0 = self.s0.derivative(z, 1)?;
        let dh = self.s_half.derivative(z, 1)?;
        Ok((dh * s0 - sh * d0) / PI)
    }

    /// Reproducing kernel `k(z, w)`. Inside the seam `|z - conj w| <= delta`
    /// the difference quotient is replaced by the Wronskian at the midpoint.
    pub fn kernel(&self, z: C, w: C) -> Result<C> {
        let wc = w.conj();
        if (z - wc).norm() <= self.seam_radius(z) {
            return self.wronskian(0.5 * (z + wc));
        }
        let num = self.s_half.eval(z)? * self.s0.eval(wc)? - self.s0.eval(z)? * self.s_half.eval(wc)?;
        Ok(num / (PI * (z - wc)))
    }
}

/// Values of a function on `spec(S_beta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    pub beta: f64,
    pub values: Vec<C>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipReport {
    pub in_space: bool,
    /// Max deviation of the kernel-basis reconstruction, relative to `max |f|`.
    pub max_rel_deviation: f64,
    pub parseval_norm_sq: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureInnerProduct {
    pub value: C,
    pub error: f64,
    /// Estimated contribution outside a hard window (zero for full-line maps).
    pub tail_residual: f64,
}

/// A de Branges space model. Immutable; located spectra are memoized.
pub struct DbSpace {
    name: String,
    pair: Arc<AssociatedPair>,
    dim: Dimension,
    numerics: Numerics,
    provenance: Provenance,
    spectra: Mutex<BTreeMap<u64, Arc<SpectrumData>>>,
}

impl std::fmt::Debug for DbSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DbSpace")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("s0", &self.pair.s0)
            .field("s_half", &self.pair.s_half)
            .finish()
    }
}

impl DbSpace {
    /// Builds and validates a model: realness of both associated functions,
    /// positive orientation on the window, and `s0` in the space.
    pub fn new(
        name: impl Into<String>,
        s0: EntireFunction,
        s_half: EntireFunction,
        dim: Dimension,
        numerics: Numerics,
        provenance: Provenance,
    ) -> Result<Self> {
        let pair = Arc::new(AssociatedPair::new(s0, s_half, numerics.seam));
        let space =
            DbSpace { name: name.into(), pair, dim, numerics, provenance, spectra: Mutex::new(BTreeMap::new()) };
        space.validate()?;
        Ok(space)
    }

    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.numerics.window;
        let grid: Vec<C> =
            (0..16).map(|j| C::new(lo + (hi - lo) * (j as f64 + 0.37) / 16.0, 0.25 + 0.1 * j as f64)).collect();
        for f in [self.s0(), self.s_half()] {
            let report = f.is_real_entire(&grid, REALNESS_TOL)?;
            if !report.pass {
                return Err(DbError::InvalidModel(format!(
                    "associated function is not real entire (deviation {:e} at {})",
                    report.worst_deviation, report.worst_point
                )));
            }
        }
        for j in 0..100 {
            let x = lo + (hi - lo) * (j as f64 + 0.5) / 100.0;
            self.kernel_diag(x)?;
        }
        let membership = self.in_space(self.s0())?;
        if !membership.in_space {
            return Err(DbError::InvalidModel(format!(
                "s0 is not in the space (reconstruction deviation {:e})",
                membership.max_rel_deviation
            )));
        }
        Ok(())
    }

    /// Same model under different numerical settings, revalidated.
    pub fn with_numerics(&self, numerics: Numerics) -> Result<DbSpace> {
        DbSpace::new(
            self.name.clone(),
            self.s0().clone(),
            self.s_half().clone(),
            self.dim,
            numerics,
            self.provenance.clone(),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn numerics(&self) -> &Numerics {
        &self.numerics
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn pair(&self) -> &Arc<AssociatedPair> {
        &self.pair
    }

    pub fn s0(&self) -> &EntireFunction {
        &self.pair.s0
    }

    pub fn s_half(&self) -> &EntireFunction {
        &self.pair.s_half
    }

    /// Hermite-Biehler function `e = -s_half - i s0`.
    pub fn e(&self) -> EntireFunction {
        EntireFunction::combination(vec![
            (C::new(-1.0, 0.0), self.s_half().clone()),
            (C::new(0.0, -1.0), self.s0().clone()),
        ])
    }

    /// `s_beta = sin(beta) s_half + cos(beta) s0`.
    pub fn assoc_s(&self, beta: f64) -> EntireFunction {
        if beta == 0.0 {
            return self.s0().clone();
        }
        if beta == FRAC_PI_2 {
            return self.s_half().clone();
        }
        EntireFunction::combination(vec![
            (C::new(beta.sin(), 0.0), self.s_half().clone()),
            (C::new(beta.cos(), 0.0), self.s0().clone()),
        ])
    }

    pub fn kernel(&self, z: C, w: C) -> Result<C> {
        self.pair.kernel(z, w)
    }

    /// `k(x, x)` on the real line; must be positive.
    pub fn kernel_diag(&self, x: f64) -> Result<f64> {
        let value = self.pair.wronskian(C::new(x, 0.0))?.re;
        if value > 0.0 {
            Ok(value)
        } else {
            Err(DbError::OrientationViolation { x, value })
        }
    }

    /// `k(., w)` as an element of the space.
    pub fn kernel_function(&self, w: C) -> Result<EntireFunction> {
        Ok(EntireFunction::kernel_expansion(KernelExpansion::new(self.pair.clone(), vec![w], vec![C::new(1.0, 0.0)])?))
    }

    /// Memoized spectrum of `S_beta` on the default window.
    pub fn spectrum(&self, beta: f64) -> Result<Arc<SpectrumData>> {
        let key = beta.to_bits();
        if let Some(s) = self.spectra.lock().expect("spectrum cache poisoned").get(&key) {
            return Ok(s.clone());
        }
        let located = Arc::new(spectra::find_spectrum(self, beta, None)?);
        self.spectra.lock().expect("spectrum cache poisoned").insert(key, located.clone());
        Ok(located)
    }

    /// Parseval form `sum_k conj(f(x_k)) g(x_k) / k(x_k, x_k)` over
    /// `spec(S_basis_beta)`; conjugate-linear in `f`.
    pub fn inner_product(&self, f: &EntireFunction, g: &EntireFunction, basis_beta: f64) -> Result<C> {
        let spec = self.spectrum(basis_beta)?;
        parseval(&spec, f, g)
    }

    pub fn norm_sq(&self, f: &EntireFunction) -> Result<f64> {
        Ok(self.inner_product(f, f, FRAC_PI_2)?.re)
    }

    /// `int conj(f(x)) g(x) / |e(x)|^2 dx` by adaptive quadrature.
    ///
    /// Finite models integrate over the whole line through `x = c tan(t)`;
    /// truncated models use a hard window and report the tail residual.
    pub fn inner_product_quadrature(&self, f: &EntireFunction, g: &EntireFunction) -> Result<QuadratureInnerProduct> {
        let integrand = |x: f64| -> Result<C> {
            let z = C::new(x, 0.0);
            let sh = self.s_half().eval(z)?.re;
            let s0 = self.s0().eval(z)?.re;
            Ok(f.eval(z)?.conj() * g.eval(z)? / (sh * sh + s0 * s0))
        };
        let (lo, hi) = self.numerics.window;
        let scale = lo.abs().max(hi.abs()).max(1.0);

        // Decay probe: |F(x)| x^2 must not grow between 10c and 100c.
        let probe = |x: f64| -> Result<f64> { Ok(x * x * (integrand(x)?.norm() + integrand(-x)?.norm())) };
        let (near, far) = (probe(10.0 * scale)?, probe(100.0 * scale)?);
        if far > 3.0 * near && far > 1e-300 {
            return Err(DbError::DivergentIntegrand { ratio: far / near.max(1e-300) });
        }

        if self.dim.is_finite() {
            let mapped = |t: f64| -> Result<C> {
                let (s, c) = t.sin_cos();
                let x = scale * s / c;
                Ok(integrand(x)? * (scale / (c * c)))
            };
            let r = quadrature::integrate(mapped, -FRAC_PI_2, FRAC_PI_2, 1e-15, 1e-13, 4000)?;
            Ok(QuadratureInnerProduct { value: r.value, error: r.error, tail_residual: 0.0 })
        } else {
            let edge = 4.0 * scale;
            let r = quadrature::integrate(integrand, -edge, edge, 1e-15, 1e-12, 4000)?;
            let tail = edge * (integrand(edge)?.norm() + integrand(-edge)?.norm());
            Ok(QuadratureInnerProduct { value: r.value, error: r.error, tail_residual: tail })
        }
    }

    /// Test grid for membership: `membership_points` points on
    /// `[-R, R]`, `R = max(2 * spectral radius, 1)`.
    pub fn membership_grid(&self) -> Result<Vec<f64>> {
        let spec = self.spectrum(FRAC_PI_2)?;
        let radius = spec.points.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let r = (2.0 * radius).max(1.0);
        let n = self.numerics.membership_points;
        Ok((0..n).map(|j| -r + 2.0 * r * (j as f64 + 0.5) / n as f64).collect())
    }

    /// Reconstructs `f` from its samples on `spec(S_pi/2)` in the orthogonal
    /// kernel basis and compares with `f` on an independent grid.
    pub fn in_space(&self, f: &EntireFunction) -> Result<MembershipReport> {
        let spec = self.spectrum(FRAC_PI_2)?;
        let mut coeffs = Vec::with_capacity(spec.points.len());
        let mut norm_sq = 0.0;
        for (k, &x) in spec.points.iter().enumerate() {
            let v = f.eval(C::new(x, 0.0))?;
            norm_sq += v.norm_sqr() / spec.diag[k];
            coeffs.push(v / spec.diag[k]);
        }
        let nodes = spec.points.iter().map(|&x| C::new(x, 0.0)).collect();
        let rebuilt = EntireFunction::kernel_expansion(KernelExpansion::new(self.pair.clone(), nodes, coeffs)?);
        let mut max_f = 0.0f64;
        let mut max_dev = 0.0f64;
        for x in self.membership_grid()? {
            let z = C::new(x, 0.0);
            let fz = f.eval(z)?;
            max_f = max_f.max(fz.norm());
            max_dev = max_dev.max((rebuilt.eval(z)? - fz).norm());
        }
        let rel = if max_f > 0.0 { max_dev / max_f } else { max_dev };
        Ok(MembershipReport {
            in_space: rel <= self.numerics.membership_tol && norm_sq.is_finite(),
            max_rel_deviation: rel,
            parseval_norm_sq: norm_sq,
        })
    }

    /// `z -> sum_k samples_k s0(x_k) / k(x_k, x_k) * k(z, x_k)` over
    /// `spec(S_beta)`, i.e. `f(S_beta) s0` for `f(x_k) = samples_k`.
    pub fn reconstruct(&self, samples: &SampledFunction) -> Result<EntireFunction> {
        let spec = self.spectrum(samples.beta)?;
        if spec.points.len() != samples.values.len() {
            return Err(DbError::SampleShape { expected: spec.points.len(), found: samples.values.len() });
        }
        let coeffs =
            samples.values.iter().zip(spec.s0_values.iter().zip(&spec.diag)).map(|(v, (s0, d))| v * (s0 / d)).collect();
        let nodes = spec.points.iter().map(|&x| C::new(x, 0.0)).collect();
        Ok(EntireFunction::kernel_expansion(KernelExpansion::new(self.pair.clone(), nodes, coeffs)?))
    }
}

/// Discrete inner product against a located spectrum.
pub fn parseval(spec: &SpectrumData, f: &EntireFunction, g: &EntireFunction) -> Result<C> {
    let mut sum = C::new(0.0, 0.0);
    for (k, &x) in spec.points.iter().enumerate() {
        let z = C::new(x, 0.0);
        sum += f.eval(z)?.conj() * g.eval(z)? / spec.diag[k];
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::catalog;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn assoc_functions_at_special_angles() {
        let cheb2 = catalog("cheb2").unwrap();
        let s = cheb2.assoc_s(0.0);
        let z = c(0.3, -0.2);
        assert_eq!(s.eval(z).unwrap(), cheb2.s0().eval(z).unwrap());
        let s = cheb2.assoc_s(FRAC_PI_2);
        assert_eq!(s.eval(z).unwrap(), cheb2.s_half().eval(z).unwrap());
        let v = cheb2.assoc_s(PI / 4.0).eval(c(0.0, 0.0)).unwrap();
        // (sqrt2/2) ((pi/2)(-1) + 0)
        assert!((v.re - (-PI * 2f64.sqrt() / 4.0)).abs() < 1e-14);
        assert!((v.re - (-1.11072)).abs() < 1e-5);
    }

    #[test]
    fn closed_form_kernels() {
        let dim1 = catalog("dim1").unwrap();
        let cheb2 = catalog("cheb2").unwrap();
        for (z, w) in [(c(0.3, 0.1), c(-1.2, 0.4)), (c(2.0, 0.0), c(2.0, 0.0)), (c(0.1, 0.5), c(0.1, -0.5))] {
            assert!((dim1.kernel(z, w).unwrap() - 1.0).norm() < 1e-12);
            let expected = 1.0 + 4.0 * z * w.conj();
            assert!((cheb2.kernel(z, w).unwrap() - expected).norm() < 1e-12);
        }
        assert!((cheb2.kernel(c(0.5, 0.0), c(0.5, 0.0)).unwrap() - 2.0).norm() < 1e-14);
    }

    #[test]
    fn kernel_diagonal_values() {
        let cheb2 = catalog("cheb2").unwrap();
        assert!((cheb2.kernel_diag(0.5).unwrap() - 2.0).abs() < 1e-14);
        assert!((cheb2.kernel_diag(0.0).unwrap() - 1.0).abs() < 1e-14);
        let dim1 = catalog("dim1").unwrap();
        assert!((dim1.kernel_diag(-3.7).unwrap() - 1.0).abs() < 1e-14);
        // at zeros of s_half: |s_half'(x) s0(x)| / pi
        let x = 0.5;
        let alt = (cheb2.s_half().derivative(c(x, 0.0), 1).unwrap() * cheb2.s0().eval(c(x, 0.0)).unwrap()).norm() / PI;
        assert!((alt - cheb2.kernel_diag(x).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn flipped_orientation_is_rejected() {
        let err = DbSpace::new(
            "flipped",
            EntireFunction::constant(-1.0),
            EntireFunction::polynomial(vec![0.0, PI]),
            Dimension::Finite(1),
            Numerics::default(),
            Provenance::Custom("test".into()),
        )
        .unwrap_err();
        assert_eq!(err.code(), "orientation-violation");
    }

    #[test]
    fn parseval_inner_products() {
        let cheb2 = catalog("cheb2").unwrap();
        let one = EntireFunction::constant(1.0);
        let two_z = EntireFunction::polynomial(vec![0.0, 2.0]);
        assert!((cheb2.inner_product(&one, &one, FRAC_PI_2).unwrap() - 1.0).norm() < 1e-14);
        assert!(cheb2.inner_product(&one, &two_z, FRAC_PI_2).unwrap().norm() < 1e-14);
        let w = c(0.3, 0.0);
        let k = cheb2.kernel_function(w).unwrap();
        let kk = cheb2.inner_product(&k, &k, FRAC_PI_2).unwrap();
        assert!((kk - cheb2.kernel(w, w).unwrap()).norm() < 1e-13);
    }

    #[test]
    fn quadrature_inner_products() {
        let cheb2 = catalog("cheb2").unwrap();
        let dim1 = catalog("dim1").unwrap();
        let one = EntireFunction::constant(1.0);
        let two_z = EntireFunction::polynomial(vec![0.0, 2.0]);
        assert!((cheb2.inner_product_quadrature(&one, &one).unwrap().value - 1.0).norm() < 1e-6);
        assert!((dim1.inner_product_quadrature(&one, &one).unwrap().value - 1.0).norm() < 1e-6);
        assert!(cheb2.inner_product_quadrature(&one, &two_z).unwrap().value.norm() < 1e-6);
        let err = dim1.inner_product_quadrature(&one, &EntireFunction::identity()).unwrap_err();
        assert_eq!(err.code(), "divergent-integrand");
    }

    #[test]
    fn membership_examples() {
        let cheb2 = catalog("cheb2").unwrap();
        assert!(cheb2.in_space(&EntireFunction::polynomial(vec![1.0, 1.0])).unwrap().in_space);
        assert!(!cheb2.in_space(&EntireFunction::polynomial(vec![0.0, 0.0, 1.0])).unwrap().in_space);
        assert!(cheb2.in_space(cheb2.s0()).unwrap().in_space);
        assert!(!cheb2.in_space(cheb2.s_half()).unwrap().in_space);
    }

    #[test]
    fn reconstruct_examples() {
        let cheb2 = catalog("cheb2").unwrap();
        let zero = cheb2.reconstruct(&SampledFunction { beta: FRAC_PI_2, values: vec![c(0.0, 0.0); 2] }).unwrap();
        assert_eq!(zero.eval(c(0.7, 0.2)).unwrap(), c(0.0, 0.0));
        let s0 = cheb2.reconstruct(&SampledFunction { beta: FRAC_PI_2, values: vec![c(1.0, 0.0); 2] }).unwrap();
        for z in [c(0.1, 0.0), c(-1.3, 0.4)] {
            assert!((s0.eval(z).unwrap() - cheb2.s0().eval(z).unwrap()).norm() < 1e-13);
        }
        let err = cheb2.reconstruct(&SampledFunction { beta: FRAC_PI_2, values: vec![c(1.0, 0.0); 3] }).unwrap_err();
        assert_eq!(err.code(), "sample-shape");
    }

    #[test]
    fn kernel_seam_is_continuous() {
        // chebN:5 kernel is sum_{k<5} U_k(z) U_k(conj w)
        fn direct(z: C, w: C) -> C {
            let (mut a0, mut a1) = (c(1.0, 0.0), 2.0 * z);
            let (mut b0, mut b1) = (c(1.0, 0.0), 2.0 * w.conj());
            let mut sum = a0 * b0 + a1 * b1;
            for _ in 2..5 {
                let a2 = 2.0 * z * a1 - a0;
                let b2 = 2.0 * w.conj() * b1 - b0;
                sum += a2 * b2;
                (a0, a1, b0, b1) = (a1, a2, b1, b2);
            }
            sum
        }
        let m = catalog("chebN:5").unwrap();
        let z = c(0.37, 0.0);
        let delta = m.numerics().seam * (1.0 + z.norm());
        for t in [0.5, 0.99, 1.01, 2.0] {
            let zz = z + delta * t;
            let k = m.kernel(zz, z).unwrap();
            assert!((k - direct(zz, z)).norm() <= 1e-8 * k.norm(), "t = {t}");
        }
    }

    #[test]
    fn hermite_biehler_of_models() {
        use crate::entire::{upper_half_plane_grid, validate_hb};
        let cheb2 = catalog("cheb2").unwrap();
        let report = validate_hb(&cheb2.e(), &upper_half_plane_grid(100, 2.0)).unwrap();
        assert!(report.pass);
        // sharp(e)(i) = conj(e(-i)), with e = -s_half - i s0 evaluated by hand
        let z = c(0.0, 1.0);
        let zc = z.conj();
        let e_at = -(PI / 2.0) * (4.0 * zc * zc - 1.0) - c(0.0, 1.0) * 2.0 * zc;
        assert!((cheb2.e().sharp_eval(z).unwrap() - e_at.conj()).norm() < 1e-13);
        assert!(!cheb2.e().is_real_entire(&[z], REALNESS_TOL).unwrap().pass);
    }
}
