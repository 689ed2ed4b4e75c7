//! Concrete model spaces in which `S` is not densely defined, and the
//! brute-force Jacobi-matrix oracle.
//!
//! A Jacobi model of size `n` is the space of polynomials of degree `< n`
//! with reproducing kernel `sum_{k<n} p_k(z) conj(p_k(w))`, where `p_k` are the
//! orthonormal polynomials of the recurrence. It carries
//! `s0 = p_{n-1}` and `s_half = pi * b_next * p_n`.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::entire::{CanonicalProduct, EntireFunction, RecurrencePoly, C};
use crate::error::{DbError, Result};
use crate::space::{DbSpace, Dimension, Numerics};

/// Recurrence coefficients of a finite Jacobi matrix plus the free next
/// off-diagonal entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JacobiData {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
    #[serde(default = "default_b_next")]
    pub b_next: f64,
}

fn default_b_next() -> f64 {
    0.5
}

impl JacobiData {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>, b_next: f64) -> Result<Self> {
        let data = JacobiData { diag, offdiag, b_next };
        data.check()?;
        Ok(data)
    }

    /// Chebyshev-U family: `a_k = 0`, `b_k = 1/2`.
    pub fn chebyshev(n: usize) -> Result<Self> {
        Self::new(vec![0.0; n], vec![0.5; n.saturating_sub(1)], 0.5)
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    fn check(&self) -> Result<()> {
        let n = self.diag.len();
        if n == 0 {
            return Err(DbError::InvalidModel("jacobi data needs n >= 1".into()));
        }
        if self.offdiag.len() != n - 1 {
            return Err(DbError::InvalidModel(format!(
                "jacobi data with n = {n} needs {} off-diagonal entries, got {}",
                n - 1,
                self.offdiag.len()
            )));
        }
        if self.offdiag.iter().chain(std::iter::once(&self.b_next)).any(|b| !(*b > 0.0 && b.is_finite())) {
            return Err(DbError::InvalidModel("off-diagonal entries must be positive".into()));
        }
        if self.diag.iter().any(|a| !a.is_finite()) {
            return Err(DbError::InvalidModel("diagonal entries must be finite".into()));
        }
        Ok(())
    }

    /// Gershgorin radius of the `n x n` Jacobi matrix.
    fn gershgorin(&self) -> f64 {
        let n = self.diag.len();
        (0..n)
            .map(|i| {
                let left = if i > 0 { self.offdiag[i - 1] } else { 0.0 };
                let right = if i + 1 < n { self.offdiag[i] } else { 0.0 };
                self.diag[i].abs() + left + right
            })
            .fold(0.0, f64::max)
    }
}

/// Zero data for [`from_zero_data`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroData {
    pub zeros0: Vec<f64>,
    pub zeros_half: Vec<f64>,
    #[serde(default = "default_scale")]
    pub scale: f64,
}

fn default_scale() -> f64 {
    1.0
}

/// Which builder produced a model.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    Jacobi(JacobiData),
    ZeroData(ZeroData),
    Custom(String),
}

impl Provenance {
    pub fn tag(&self) -> &'static str {
        match self {
            Provenance::Jacobi(_) => "jacobi",
            Provenance::ZeroData(_) => "zero-data (truncated)",
            Provenance::Custom(_) => "custom",
        }
    }

    pub fn jacobi(&self) -> Option<&JacobiData> {
        match self {
            Provenance::Jacobi(j) => Some(j),
            _ => None,
        }
    }
}

pub fn from_jacobi(name: impl Into<String>, data: JacobiData) -> Result<DbSpace> {
    data.check()?;
    let n = data.len();
    let mut offdiag = data.offdiag.clone();
    offdiag.push(data.b_next);
    let s0 = EntireFunction::recurrence(RecurrencePoly {
        diag: data.diag.clone(),
        offdiag: offdiag.clone(),
        degree: n - 1,
        scale: 1.0,
    });
    let s_half = EntireFunction::recurrence(RecurrencePoly {
        diag: data.diag.clone(),
        offdiag,
        degree: n,
        scale: PI * data.b_next,
    });
    let reach = data.gershgorin() + 0.5;
    let numerics = Numerics { window: (-reach, reach), truncation: n, ..Numerics::default() };
    DbSpace::new(name, s0, s_half, Dimension::Finite(n), numerics, Provenance::Jacobi(data))
}

/// Builds `s0 = +-prod(1 - z/a)` and `s_half = scale * prod(1 - z/b)` from
/// zeros that strictly interlace as `b_0 < a_0 < b_1 < ... < a_{m-1} < b_m`.
/// The sign of `s0` is chosen to make the kernel diagonal positive.
pub fn from_zero_data(name: impl Into<String>, data: ZeroData) -> Result<DbSpace> {
    let ZeroData { zeros0, zeros_half, scale } = &data;
    if !(*scale > 0.0 && scale.is_finite()) {
        return Err(DbError::InvalidModel(format!("scale {scale} must be positive")));
    }
    if zeros_half.len() != zeros0.len() + 1 {
        return Err(DbError::InterlacingViolation(format!(
            "need |zeros_half| = |zeros0| + 1, got {} and {}",
            zeros_half.len(),
            zeros0.len()
        )));
    }
    for (i, a) in zeros0.iter().enumerate() {
        if !(zeros_half[i] < *a && *a < zeros_half[i + 1]) {
            return Err(DbError::InterlacingViolation(format!(
                "zeros0[{i}] = {a} is not strictly between {} and {}",
                zeros_half[i],
                zeros_half[i + 1]
            )));
        }
    }
    let zero_tol = 1e-14;
    let s0 = EntireFunction::canonical_product(CanonicalProduct::new(zeros0, zero_tol)?);
    let mut half = CanonicalProduct::new(zeros_half, zero_tol)?;
    half.scale = *scale;
    let s_half = EntireFunction::canonical_product(half);

    let lo = zeros_half[0];
    let hi = zeros_half[zeros_half.len() - 1];
    let probe = C::new(0.5 * (zeros_half[0] + zeros_half[1]), 0.0);
    let w = (s_half.derivative(probe, 1)? * s0.eval(probe)? - s_half.eval(probe)? * s0.derivative(probe, 1)?).re;
    let s0 = if w < 0.0 { s0.scale_real(-1.0) } else { s0 };
    let margin = 0.5 * (hi - lo).max(1.0) / zeros_half.len() as f64 + 0.5;
    let numerics = Numerics { window: (lo - margin, hi + margin), truncation: zeros_half.len(), ..Numerics::default() };
    DbSpace::new(name, s0, s_half, Dimension::Truncated(zeros_half.len()), numerics, Provenance::ZeroData(data))
}

/// Catalog entries understood by [`catalog`].
pub const CATALOG: &[(&str, &str)] = &[
    ("dim1", "1-dimensional Jacobi model: s0 = 1, s_half = pi z, kernel = 1"),
    ("cheb2", "2-dimensional Chebyshev-U model: s0 = 2z, s_half = (pi/2)(4z^2 - 1)"),
    ("chebN:<n>", "n-dimensional Chebyshev-U model: s0 = U_{n-1}, s_half = (pi/2) U_n"),
    ("jacobi:<json>", "inline {\"diag\": [...], \"offdiag\": [...], \"b_next\": b}"),
    ("zerodata:<json>", "inline {\"zeros0\": [...], \"zeros_half\": [...], \"scale\": c}"),
];

/// Builds a model from its catalog name.
pub fn catalog(name: &str) -> Result<DbSpace> {
    let name = name.trim();
    match name {
        "dim1" => from_jacobi("dim1", JacobiData::new(vec![0.0], vec![], 1.0)?),
        "cheb2" => from_jacobi("cheb2", JacobiData::chebyshev(2)?),
        _ => {
            if let Some(n) = name.strip_prefix("chebN:") {
                let n: usize =
                    n.trim().parse().map_err(|_| DbError::InvalidModel(format!("bad dimension in {name:?}")))?;
                if n == 0 {
                    return Err(DbError::InvalidModel("chebN needs n >= 1".into()));
                }
                from_jacobi(name, JacobiData::chebyshev(n)?)
            } else if let Some(json) = name.strip_prefix("jacobi:") {
                let data: JacobiData =
                    serde_json::from_str(json).map_err(|e| DbError::InvalidModel(format!("jacobi json: {e}")))?;
                from_jacobi(name, JacobiData::new(data.diag, data.offdiag, data.b_next)?)
            } else if let Some(json) = name.strip_prefix("zerodata:") {
                let data: ZeroData =
                    serde_json::from_str(json).map_err(|e| DbError::InvalidModel(format!("zerodata json: {e}")))?;
                from_zero_data(name, data)
            } else {
                Err(DbError::InvalidModel(format!("unknown model {name:?}")))
            }
        }
    }
}

/// Eigen-decomposition of the Jacobi matrix with the boundary condition of
/// `S_beta` imposed on the last diagonal entry.
#[derive(Debug, Clone)]
pub struct OracleEigensystem {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` belongs to `values[k]`.
    pub vectors: DMatrix<f64>,
}

/// Boundary coupling: the characteristic polynomial of the modified matrix is
/// `b_1 ... b_n (p_n + cot(beta) / (pi b_next) p_{n-1})`, proportional to
/// `s_beta`, exactly when the last diagonal entry shifts by `-cot(beta)/pi`.
pub const ORACLE_KAPPA: f64 = 1.0;

/// Dense symmetric eigensolve of the `n x n` Jacobi matrix with
/// `a_n -> a_n - kappa cot(beta) / pi`. Shares no code with the rank-one path.
pub fn oracle_eigensystem(data: &JacobiData, beta: f64) -> Result<OracleEigensystem> {
    if !(beta > 0.0 && beta < PI) {
        return Err(DbError::InvalidArgument(format!("oracle needs beta in (0, pi), got {beta}")));
    }
    data.check()?;
    let n = data.len();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = data.diag[i];
        if i + 1 < n {
            m[(i, i + 1)] = data.offdiag[i];
            m[(i + 1, i)] = data.offdiag[i];
        }
    }
    let cot = if beta == FRAC_PI_2 { 0.0 } else { beta.cos() / beta.sin() };
    m[(n - 1, n - 1)] -= ORACLE_KAPPA * cot / PI;
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(OracleEigensystem { values, vectors })
}

/// Self-test of the oracle coupling: recovers `kappa` from the trace of the
/// `beta = pi/4` matrix, whose eigenvalues must be the located zeros of
/// `s_{pi/4}`. Fails unless `kappa` equals [`ORACLE_KAPPA`].
pub fn calibrate_oracle(space: &DbSpace) -> Result<f64> {
    let data =
        space.provenance().jacobi().ok_or_else(|| DbError::InvalidArgument("oracle needs a Jacobi model".into()))?;
    let beta = PI / 4.0;
    let spec = space.spectrum(beta)?;
    let trace_a: f64 = data.diag.iter().sum();
    let trace_roots: f64 = spec.points.iter().sum();
    let kappa = PI * (trace_a - trace_roots) / (beta.cos() / beta.sin());
    if (kappa - ORACLE_KAPPA).abs() > 1e-8 {
        return Err(DbError::OracleCalibrationFailure { kappa });
    }
    Ok(kappa)
}
