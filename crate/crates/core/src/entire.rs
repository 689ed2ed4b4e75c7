//! Entire functions: representations, evaluation, the `#` involution,
//! derivatives and Hermite-Biehler validation.
//!
//! An [`EntireFunction`] is an immutable, cheaply clonable handle. Values are
//! pure functions of the representation, so handles may be shared freely
//! between threads.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{DbError, Result};
use crate::space::AssociatedPair;

pub type C = Complex64;

pub const DEFAULT_DERIVATIVE_RADIUS: f64 = 0.5;
pub const DEFAULT_CONTOUR_POINTS: usize = 32;
/// Relative radius below which a removable singularity is resolved by
/// L'Hopital instead of direct division.
pub const REMOVABLE_GUARD: f64 = 1e-6;
pub const REALNESS_TOL: f64 = 1e-12;

/// Named closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Builtin {
    Const(f64),
    Exp,
    Sin,
    Cos,
    /// `sin(pi z) / (pi z)`
    Sinc,
}

impl Builtin {
    /// Parses `const(<real>)`, `exp`, `sin`, `cos` or `sinc`.
    pub fn parse(name: &str) -> Result<Self> {
        let name = name.trim();
        if let Some(arg) = name.strip_prefix("const(").and_then(|s| s.strip_suffix(')')) {
            let c: f64 =
                arg.trim().parse().map_err(|_| DbError::InvalidArgument(format!("bad constant in {name:?}")))?;
            return Ok(Builtin::Const(c));
        }
        match name {
            "exp" => Ok(Builtin::Exp),
            "sin" => Ok(Builtin::Sin),
            "cos" => Ok(Builtin::Cos),
            "sinc" => Ok(Builtin::Sinc),
            _ => Err(DbError::InvalidArgument(format!("unknown builtin {name:?}"))),
        }
    }

    fn jet(&self, z: C) -> Jet {
        match *self {
            Builtin::Const(c) => Jet::constant(C::new(c, 0.0)),
            Builtin::Exp => {
                let e = z.exp();
                Jet([e, e, e])
            }
            Builtin::Sin => Jet([z.sin(), z.cos(), -z.sin()]),
            Builtin::Cos => Jet([z.cos(), -z.sin(), -z.cos()]),
            Builtin::Sinc => sinc_jet(z),
        }
    }
}

fn sinc_jet(z: C) -> Jet {
    let u = z * PI;
    if u.norm() < 1e-3 {
        // Taylor series 1 - u^2/6 + u^4/120 - u^6/5040
        let u2 = u * u;
        let v = 1.0 - u2 / 6.0 + u2 * u2 / 120.0 - u2 * u2 * u2 / 5040.0;
        let d1 = (-u / 3.0 + u2 * u / 30.0 - u2 * u2 * u / 840.0) * PI;
        let d2 = (C::new(-1.0 / 3.0, 0.0) + u2 / 10.0 - u2 * u2 / 168.0) * (PI * PI);
        return Jet([v, d1, d2]);
    }
    let (s, c) = (u.sin(), u.cos());
    let v = s / u;
    let d1 = (c / u - s / (u * u)) * PI;
    let d2 = (-s / u - 2.0 * c / (u * u) + 2.0 * s / (u * u * u)) * (PI * PI);
    Jet([v, d1, d2])
}

/// Orthonormal polynomial `p_degree` generated by the three-term recurrence
/// `b_k p_k = (z - a_k) p_{k-1} - b_{k-1} p_{k-2}`, `p_0 = 1`, times `scale`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrencePoly {
    pub diag: Vec<f64>,
    /// `b_1, ..., b_degree`
    pub offdiag: Vec<f64>,
    pub degree: usize,
    pub scale: f64,
}

impl RecurrencePoly {
    fn jet(&self, z: C) -> Jet {
        let mut prev = Jet::zero();
        let mut cur = Jet::constant(C::new(1.0, 0.0));
        let mut b_prev = 0.0;
        for k in 0..self.degree {
            let a = self.diag[k];
            let b = self.offdiag[k];
            let shift = z - a;
            let next = Jet([
                (shift * cur.0[0] - b_prev * prev.0[0]) / b,
                (shift * cur.0[1] + cur.0[0] - b_prev * prev.0[1]) / b,
                (shift * cur.0[2] + 2.0 * cur.0[1] - b_prev * prev.0[2]) / b,
            ]);
            prev = cur;
            cur = next;
            b_prev = b;
        }
        cur.scale(C::new(self.scale, 0.0))
    }
}

/// Genus-zero canonical product `scale * z^[leading_z] * prod (1 - z/b_k)`.
///
/// Factors are stored in order of increasing `|b_k|`; the truncation order is
/// the number of stored factors.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalProduct {
    pub zeros: Vec<f64>,
    pub leading_z: bool,
    pub scale: f64,
}

impl CanonicalProduct {
    /// Builds the product over `zeros`. A zero within `zero_tol` of the origin
    /// becomes the leading factor `z`; at most one such zero is allowed.
    pub fn new(zeros: &[f64], zero_tol: f64) -> Result<Self> {
        let mut leading_z = false;
        let mut rest = Vec::with_capacity(zeros.len());
        for &b in zeros {
            if b.abs() <= zero_tol {
                if leading_z {
                    return Err(DbError::NonSimpleZero { x: b });
                }
                leading_z = true;
            } else {
                rest.push(b);
            }
        }
        rest.sort_by(|a, b| a.abs().total_cmp(&b.abs()).then(a.total_cmp(b)));
        Ok(CanonicalProduct { zeros: rest, leading_z, scale: 1.0 })
    }

    pub fn truncation_order(&self) -> usize {
        self.zeros.len() + usize::from(self.leading_z)
    }

    fn jet(&self, z: C) -> Jet {
        let mut acc = Jet::constant(C::new(self.scale, 0.0));
        if self.leading_z {
            acc = acc.mul(&Jet([z, C::new(1.0, 0.0), C::new(0.0, 0.0)]));
        }
        for &b in &self.zeros {
            acc = acc.mul(&Jet([1.0 - z / b, C::new(-1.0 / b, 0.0), C::new(0.0, 0.0)]));
        }
        acc
    }
}

/// Finite expansion `sum_k c_k k(z, w_k)` over reproducing kernels of a space.
#[derive(Debug, Clone)]
pub struct KernelExpansion {
    pair: Arc<AssociatedPair>,
    nodes: Vec<C>,
    coeffs: Vec<C>,
    s0_conj_nodes: Vec<C>,
    sh_conj_nodes: Vec<C>,
}

impl KernelExpansion {
    pub fn new(pair: Arc<AssociatedPair>, nodes: Vec<C>, coeffs: Vec<C>) -> Result<Self> {
        if nodes.len() != coeffs.len() {
            return Err(DbError::SampleShape { expected: nodes.len(), found: coeffs.len() });
        }
        let mut s0_conj_nodes = Vec::with_capacity(nodes.len());
        let mut sh_conj_nodes = Vec::with_capacity(nodes.len());
        for w in &nodes {
            s0_conj_nodes.push(pair.s0().eval(w.conj())?);
            sh_conj_nodes.push(pair.s_half().eval(w.conj())?);
        }
        Ok(KernelExpansion { pair, nodes, coeffs, s0_conj_nodes, sh_conj_nodes })
    }

    pub fn nodes(&self) -> &[C] {
        &self.nodes
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    fn eval(&self, z: C) -> Result<C> {
        let s0_z = self.pair.s0().eval(z)?;
        let sh_z = self.pair.s_half().eval(z)?;
        let mut sum = C::new(0.0, 0.0);
        for (k, (&w, &c)) in self.nodes.iter().zip(&self.coeffs).enumerate() {
            if c == C::new(0.0, 0.0) {
                continue;
            }
            let wc = w.conj();
            let kz = if (z - wc).norm() <= self.pair.seam_radius(z) {
                self.pair.wronskian(0.5 * (z + wc))?
            } else {
                (sh_z * self.s0_conj_nodes[k] - s0_z * self.sh_conj_nodes[k]) / (PI * (z - wc))
            };
            sum += c * kz;
        }
        Ok(sum)
    }
}

#[derive(Debug)]
pub enum Repr {
    /// Real coefficients, ascending powers.
    Polynomial(Vec<f64>),
    Builtin(Builtin),
    Recurrence(RecurrencePoly),
    Product(CanonicalProduct),
    Kernel(KernelExpansion),
    /// `sum_i a_i f_i`
    Combination(Vec<(C, EntireFunction)>),
    /// `prod_i f_i`
    Multiply(Vec<EntireFunction>),
    /// `num / den`, entire by assumption. `guards` lists known zeros of `den`
    /// where the quotient is resolved as a removable singularity.
    Quotient {
        num: EntireFunction,
        den: EntireFunction,
        guards: Vec<C>,
    },
    /// `num(z) / (z - pole)` where `num(pole) = 0`.
    DividedDifference {
        num: EntireFunction,
        pole: C,
    },
}

/// Three-term Taylor jet `(f, f', f'')`.
#[derive(Debug, Clone, Copy)]
struct Jet([C; 3]);

impl Jet {
    fn zero() -> Self {
        Jet([C::new(0.0, 0.0); 3])
    }

    fn constant(c: C) -> Self {
        Jet([c, C::new(0.0, 0.0), C::new(0.0, 0.0)])
    }

    fn scale(self, c: C) -> Self {
        Jet([self.0[0] * c, self.0[1] * c, self.0[2] * c])
    }

    fn add(self, other: &Jet) -> Self {
        Jet([self.0[0] + other.0[0], self.0[1] + other.0[1], self.0[2] + other.0[2]])
    }

    fn mul(self, o: &Jet) -> Self {
        let [a0, a1, a2] = self.0;
        let [b0, b1, b2] = o.0;
        Jet([a0 * b0, a1 * b0 + a0 * b1, a2 * b0 + 2.0 * a1 * b1 + a0 * b2])
    }
}

/// Handle to an entire function together with its realness claim.
#[derive(Clone)]
pub struct EntireFunction {
    repr: Arc<Repr>,
    is_real: bool,
    derivative_radius: f64,
}

impl fmt::Debug for EntireFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EntireFunction({}, real={})", self, self.is_real)
    }
}

impl fmt::Display for EntireFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.repr {
            Repr::Polynomial(c) => write!(f, "poly{c:?}"),
            Repr::Builtin(b) => write!(f, "{b:?}"),
            Repr::Recurrence(r) => write!(f, "{}*p_{}", r.scale, r.degree),
            Repr::Product(p) => {
                write!(f, "{}*", p.scale)?;
                if p.leading_z {
                    write!(f, "z*")?;
                }
                write!(f, "prod[{} factors]", p.zeros.len())
            }
            Repr::Kernel(k) => write!(f, "kernel-expansion[{} terms]", k.nodes.len()),
            Repr::Combination(terms) => {
                write!(f, "(")?;
                for (i, (a, g)) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{a}*{g}")?;
                }
                write!(f, ")")
            }
            Repr::Multiply(fs) => {
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
            Repr::Quotient { num, den, .. } => write!(f, "({num})/({den})"),
            Repr::DividedDifference { num, pole } => write!(f, "({num})/(z - {pole})"),
        }
    }
}

fn is_real_scalar(c: C) -> bool {
    c.im == 0.0
}

impl EntireFunction {
    fn from_repr(repr: Repr, is_real: bool) -> Self {
        EntireFunction { repr: Arc::new(repr), is_real, derivative_radius: DEFAULT_DERIVATIVE_RADIUS }
    }

    /// Real polynomial with coefficients in ascending powers.
    pub fn polynomial(coeffs: Vec<f64>) -> Self {
        Self::from_repr(Repr::Polynomial(coeffs), true)
    }

    pub fn constant(c: f64) -> Self {
        Self::from_repr(Repr::Builtin(Builtin::Const(c)), true)
    }

    pub fn identity() -> Self {
        Self::polynomial(vec![0.0, 1.0])
    }

    pub fn builtin(b: Builtin) -> Self {
        Self::from_repr(Repr::Builtin(b), true)
    }

    pub fn recurrence(poly: RecurrencePoly) -> Self {
        Self::from_repr(Repr::Recurrence(poly), true)
    }

    pub fn canonical_product(product: CanonicalProduct) -> Self {
        Self::from_repr(Repr::Product(product), true)
    }

    /// `sum_k c_k k(z, w_k)`; real when nodes are real and coefficients real.
    pub fn kernel_expansion(expansion: KernelExpansion) -> Self {
        let is_real =
            expansion.nodes.iter().all(|w| w.im == 0.0) && expansion.coeffs.iter().all(|c| is_real_scalar(*c));
        Self::from_repr(Repr::Kernel(expansion), is_real)
    }

    /// Linear combination `sum a_i f_i`.
    pub fn combination(terms: Vec<(C, EntireFunction)>) -> Self {
        let is_real = terms.iter().all(|(a, f)| is_real_scalar(*a) && f.is_real);
        Self::from_repr(Repr::Combination(terms), is_real)
    }

    pub fn product(factors: Vec<EntireFunction>) -> Self {
        let is_real = factors.iter().all(|f| f.is_real);
        Self::from_repr(Repr::Multiply(factors), is_real)
    }

    /// `num / den` with the zeros of `den` in `guards` treated as removable.
    pub fn quotient(num: EntireFunction, den: EntireFunction, guards: Vec<C>) -> Self {
        let is_real = num.is_real && den.is_real;
        Self::from_repr(Repr::Quotient { num, den, guards }, is_real)
    }

    /// `num(z) / (z - pole)`; the caller guarantees `num(pole) = 0`.
    pub fn divided_difference(num: EntireFunction, pole: C) -> Self {
        let is_real = num.is_real && pole.im == 0.0;
        Self::from_repr(Repr::DividedDifference { num, pole }, is_real)
    }

    pub fn scale(&self, a: C) -> Self {
        Self::combination(vec![(a, self.clone())])
    }

    pub fn scale_real(&self, a: f64) -> Self {
        self.scale(C::new(a, 0.0))
    }

    pub fn add(&self, other: &EntireFunction) -> Self {
        Self::combination(vec![(C::new(1.0, 0.0), self.clone()), (C::new(1.0, 0.0), other.clone())])
    }

    pub fn sub(&self, other: &EntireFunction) -> Self {
        Self::combination(vec![(C::new(1.0, 0.0), self.clone()), (C::new(-1.0, 0.0), other.clone())])
    }

    pub fn mul(&self, other: &EntireFunction) -> Self {
        Self::product(vec![self.clone(), other.clone()])
    }

    /// `z * f(z)`
    pub fn times_z(&self) -> Self {
        Self::product(vec![Self::identity(), self.clone()])
    }

    /// Overrides the realness claim. Realness is validated on demand with
    /// [`EntireFunction::is_real_entire`], never at construction.
    pub fn with_real_claim(mut self, is_real: bool) -> Self {
        self.is_real = is_real;
        self
    }

    pub fn with_derivative_radius(mut self, r: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(DbError::InvalidArgument(format!("derivative radius {r} must be positive")));
        }
        self.derivative_radius = r;
        Ok(self)
    }

    pub fn is_real(&self) -> bool {
        self.is_real
    }

    pub fn derivative_radius(&self) -> f64 {
        self.derivative_radius
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    /// Truncation order for canonical products, `None` otherwise.
    pub fn truncation_order(&self) -> Option<usize> {
        match &*self.repr {
            Repr::Product(p) => Some(p.truncation_order()),
            _ => None,
        }
    }

    pub fn eval(&self, z: C) -> Result<C> {
        let v = self.eval_unchecked(z)?;
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(DbError::MagnitudeOverflow { z })
        }
    }

    pub fn eval_real(&self, x: f64) -> Result<f64> {
        Ok(self.eval(C::new(x, 0.0))?.re)
    }

    fn eval_unchecked(&self, z: C) -> Result<C> {
        Ok(match &*self.repr {
            Repr::Polynomial(c) => horner(c, z),
            Repr::Builtin(b) => b.jet(z).0[0],
            Repr::Recurrence(r) => r.jet(z).0[0],
            Repr::Product(p) => p.jet(z).0[0],
            Repr::Kernel(k) => k.eval(z)?,
            Repr::Combination(terms) => {
                let mut s = C::new(0.0, 0.0);
                for (a, f) in terms {
                    s += a * f.eval(z)?;
                }
                s
            }
            Repr::Multiply(fs) => {
                let mut p = C::new(1.0, 0.0);
                for f in fs {
                    p *= f.eval(z)?;
                }
                p
            }
            Repr::Quotient { num, den, guards } => {
                match guards.iter().find(|p| (z - **p).norm() < REMOVABLE_GUARD * (1.0 + p.norm())) {
                    Some(&p) => {
                        let h = z - p;
                        let n = num.derivative(p, 1)? + 0.5 * h * num.derivative(p, 2)?;
                        let d = den.derivative(p, 1)? + 0.5 * h * den.derivative(p, 2)?;
                        n / d
                    }
                    None => num.eval(z)? / den.eval(z)?,
                }
            }
            Repr::DividedDifference { num, pole } => {
                let h = z - pole;
                if h.norm() < REMOVABLE_GUARD * (1.0 + pole.norm()) {
                    num.derivative(*pole, 1)? + 0.5 * h * num.derivative(*pole, 2)?
                } else {
                    num.eval(z)? / h
                }
            }
        })
    }

    /// `conj(f(conj(z)))`
    pub fn sharp_eval(&self, z: C) -> Result<C> {
        Ok(self.eval(z.conj())?.conj())
    }

    /// Exact jet when every part of the representation admits one.
    fn jet(&self, z: C) -> Option<Jet> {
        match &*self.repr {
            Repr::Polynomial(c) => Some(poly_jet(c, z)),
            Repr::Builtin(b) => Some(b.jet(z)),
            Repr::Recurrence(r) => Some(r.jet(z)),
            Repr::Product(p) => Some(p.jet(z)),
            Repr::Combination(terms) => {
                let mut acc = Jet::zero();
                for (a, f) in terms {
                    acc = acc.add(&f.jet(z)?.scale(*a));
                }
                Some(acc)
            }
            Repr::Multiply(fs) => {
                let mut acc = Jet::constant(C::new(1.0, 0.0));
                for f in fs {
                    acc = acc.mul(&f.jet(z)?);
                }
                Some(acc)
            }
            Repr::Kernel(_) | Repr::Quotient { .. } | Repr::DividedDifference { .. } => None,
        }
    }

    /// Derivative of order 1 or 2.
    ///
    /// Polynomial-like representations are differentiated exactly; everything
    /// else uses the equispaced contour average on the circle of radius
    /// `derivative_radius` about `z`.
    pub fn derivative(&self, z: C, order: usize) -> Result<C> {
        self.derivative_with(z, order, DEFAULT_CONTOUR_POINTS)
    }

    pub fn derivative_with(&self, z: C, order: usize, points: usize) -> Result<C> {
        if !(order == 1 || order == 2) {
            return Err(DbError::InvalidArgument(format!("derivative order {order} not in {{1, 2}}")));
        }
        if let Some(j) = self.jet(z) {
            let v = j.0[order];
            return if v.re.is_finite() && v.im.is_finite() { Ok(v) } else { Err(DbError::MagnitudeOverflow { z }) };
        }
        self.contour_derivative(z, order, points)
    }

    /// `f^(n)(z) ~ n! / (M r^n) * sum_j f(z + r w_j) w_j^(-n)`.
    pub fn contour_derivative(&self, z: C, order: usize, points: usize) -> Result<C> {
        let r = self.derivative_radius;
        let m = points.max(4);
        let mut acc = C::new(0.0, 0.0);
        for j in 0..m {
            let theta = 2.0 * PI * j as f64 / m as f64;
            let w = C::from_polar(1.0, theta);
            acc += self.eval(z + r * w)? * w.powi(-(order as i32));
        }
        let factorial = if order == 2 { 2.0 } else { 1.0 };
        Ok(acc * factorial / (m as f64 * r.powi(order as i32)))
    }

    /// Checks `|f(conj z) - conj f(z)| <= tol (1 + |f(z)|)` on every grid point.
    pub fn is_real_entire(&self, grid: &[C], tol: f64) -> Result<RealnessReport> {
        if grid.is_empty() {
            return Err(DbError::InvalidGrid("empty grid".into()));
        }
        let mut worst = RealnessReport { pass: true, worst_point: grid[0], worst_deviation: 0.0 };
        for &z in grid {
            let fz = self.eval(z)?;
            let dev = (self.eval(z.conj())? - fz.conj()).norm() / (1.0 + fz.norm());
            if dev > worst.worst_deviation {
                worst.worst_deviation = dev;
                worst.worst_point = z;
            }
        }
        worst.pass = worst.worst_deviation <= tol;
        Ok(worst)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealnessReport {
    pub pass: bool,
    pub worst_point: C,
    pub worst_deviation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiteBiehlerReport {
    pub pass: bool,
    /// `min_z |e(z)| - |e(conj z)|` over the grid.
    pub min_margin: f64,
    pub argmin: C,
}

/// Checks the strict inequality `|e(z)| > |e(conj z)|` on upper half-plane
/// grid points.
pub fn validate_hb(e: &EntireFunction, grid: &[C]) -> Result<HermiteBiehlerReport> {
    if grid.is_empty() {
        return Err(DbError::InvalidGrid("empty grid".into()));
    }
    if let Some(z) = grid.iter().find(|z| !(z.im > 0.0)) {
        return Err(DbError::InvalidGrid(format!("point {z} is not in the open upper half-plane")));
    }
    let mut report = HermiteBiehlerReport { pass: false, min_margin: f64::INFINITY, argmin: grid[0] };
    for &z in grid {
        let margin = e.eval(z)?.norm() - e.eval(z.conj())?.norm();
        if margin < report.min_margin {
            report.min_margin = margin;
            report.argmin = z;
        }
    }
    report.pass = report.min_margin > 0.0;
    Ok(report)
}

/// Deterministic upper half-plane grid: `n` points on a spiral-like lattice
/// covering `|Re z| <= radius`, `0 < Im z <= radius`.
pub fn upper_half_plane_grid(n: usize, radius: f64) -> Vec<C> {
    let side = (n as f64).sqrt().ceil() as usize;
    let mut grid = Vec::with_capacity(n);
    'outer: for i in 0..side {
        for j in 0..side {
            if grid.len() == n {
                break 'outer;
            }
            let x = -radius + 2.0 * radius * (i as f64 + 0.5) / side as f64;
            let y = radius * (j as f64 + 0.5) / side as f64;
            grid.push(C::new(x, y));
        }
    }
    grid
}

fn horner(coeffs: &[f64], z: C) -> C {
    coeffs.iter().rev().fold(C::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn poly_jet(coeffs: &[f64], z: C) -> Jet {
    let mut v = C::new(0.0, 0.0);
    let mut d1 = C::new(0.0, 0.0);
    let mut d2 = C::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        d2 = d2 * z + 2.0 * d1;
        d1 = d1 * z + v;
        v = v * z + c;
    }
    Jet([v, d1, d2])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn polynomial_root_and_derivative() {
        let f = EntireFunction::polynomial(vec![-1.0, 0.0, 4.0]);
        assert_eq!(f.eval(c(0.5, 0.0)).unwrap(), c(0.0, 0.0));
        assert_eq!(f.derivative(c(0.5, 0.0), 1).unwrap(), c(4.0, 0.0));
        assert_eq!(f.derivative(c(0.5, 0.0), 2).unwrap(), c(8.0, 0.0));
    }

    #[test]
    fn builtin_constant_is_flat() {
        let f = EntireFunction::builtin(Builtin::parse("const(1)").unwrap());
        assert_eq!(f.eval(c(3.0, 4.0)).unwrap(), c(1.0, 0.0));
        assert_eq!(f.derivative(c(-2.0, 1.0), 1).unwrap(), c(0.0, 0.0));
        assert!(Builtin::parse("frobnicate").is_err());
    }

    #[test]
    fn product_normalized_at_origin() {
        let p = CanonicalProduct::new(&[-0.5, 0.5], 1e-12).unwrap();
        let f = EntireFunction::canonical_product(p);
        assert_eq!(f.eval(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert_eq!(f.truncation_order(), Some(2));
        // (1 - 2z)(1 + 2z) = 1 - 4z^2
        let v = f.eval(c(0.3, 0.2)).unwrap();
        let z = c(0.3, 0.2);
        assert!((v - (1.0 - 4.0 * z * z)).norm() < 1e-15);
    }

    #[test]
    fn product_with_zero_at_origin_has_leading_z() {
        let p = CanonicalProduct::new(&[0.0, 2.0], 1e-12).unwrap();
        assert!(p.leading_z);
        let f = EntireFunction::canonical_product(p);
        assert!((f.derivative(c(0.0, 0.0), 1).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert!(CanonicalProduct::new(&[0.0, 1e-15], 1e-12).is_err());
    }

    #[test]
    fn sharp_of_iz() {
        let f = EntireFunction::identity().scale(c(0.0, 1.0));
        assert!(!f.is_real());
        // conj(f(-i)) = conj(1) = 1
        assert_eq!(f.sharp_eval(c(0.0, 1.0)).unwrap(), c(1.0, 0.0));
        let report = f.is_real_entire(&[c(0.0, 1.0)], REALNESS_TOL).unwrap();
        assert!(!report.pass);
    }

    #[test]
    fn realness_matches_on_real_axis() {
        let f = EntireFunction::builtin(Builtin::Sinc).mul(&EntireFunction::polynomial(vec![1.0, -2.0, 0.5]));
        for x in [-2.5, -0.1, 0.0, 0.7, 3.0] {
            let z = c(x, 0.0);
            assert_eq!(f.sharp_eval(z).unwrap(), f.eval(z).unwrap());
        }
        let grid = upper_half_plane_grid(30, 2.0);
        assert!(f.is_real_entire(&grid, REALNESS_TOL).unwrap().pass);
    }

    #[test]
    fn contour_derivative_matches_exact() {
        let f = EntireFunction::builtin(Builtin::Sin);
        let z = c(0.4, -0.3);
        let exact = z.cos();
        let contour = f.contour_derivative(z, 1, 32).unwrap();
        assert!((contour - exact).norm() < 1e-13, "{contour} vs {exact}");
        let exact2 = -z.sin();
        let contour2 = f.contour_derivative(z, 2, 32).unwrap();
        assert!((contour2 - exact2).norm() < 1e-12);
    }

    #[test]
    fn derivative_order_is_checked() {
        let f = EntireFunction::identity();
        assert!(f.derivative(c(0.0, 0.0), 3).is_err());
        assert!(f.clone().with_derivative_radius(0.0).is_err());
    }

    #[test]
    fn sinc_jet_is_continuous_at_taylor_switch() {
        let f = EntireFunction::builtin(Builtin::Sinc);
        for x in [0.0, 1e-5, 3.1e-4, 3.2e-4, 0.25, 1.5] {
            let z = c(x, 0.0);
            let exact = if x == 0.0 { 1.0 } else { (PI * x).sin() / (PI * x) };
            assert!((f.eval(z).unwrap().re - exact).abs() < 1e-14);
            let d = f.derivative(z, 1).unwrap();
            let contour = f.contour_derivative(z, 1, 32).unwrap();
            assert!((d - contour).norm() < 1e-11, "x={x}: {d} vs {contour}");
        }
    }

    #[test]
    fn quotient_resolves_removable_singularity() {
        // (z^2 - 1) / (z - 1) = z + 1
        let num = EntireFunction::polynomial(vec![-1.0, 0.0, 1.0]);
        let den = EntireFunction::polynomial(vec![-1.0, 1.0]);
        let q = EntireFunction::quotient(num.clone(), den, vec![c(1.0, 0.0)]);
        for z in [c(1.0, 0.0), c(1.0 + 1e-9, 0.0), c(0.3, 0.1)] {
            assert!((q.eval(z).unwrap() - (z + 1.0)).norm() < 1e-12);
        }
        let dd = EntireFunction::divided_difference(num, c(1.0, 0.0));
        assert!((dd.eval(c(1.0, 0.0)).unwrap() - c(2.0, 0.0)).norm() < 1e-12);
        assert!((dd.derivative(c(1.0, 0.0), 1).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn overflow_is_reported() {
        let f = EntireFunction::builtin(Builtin::Exp);
        let err = f.eval(c(1000.0, 0.0)).unwrap_err();
        assert_eq!(err.code(), "magnitude-overflow");
    }

    #[test]
    fn hermite_biehler_checks() {
        // e = -pi z - i
        let e = EntireFunction::combination(vec![
            (c(-PI, 0.0), EntireFunction::identity()),
            (c(0.0, -1.0), EntireFunction::constant(1.0)),
        ]);
        let r = validate_hb(&e, &[c(0.0, 1.0)]).unwrap();
        // |-pi i - i| - |pi i - i| = (pi + 1) - (pi - 1)
        assert!((r.min_margin - 2.0).abs() < 1e-14);
        assert!(r.pass);
        let one = EntireFunction::constant(1.0);
        assert!(!validate_hb(&one, &upper_half_plane_grid(10, 1.0)).unwrap().pass);
        assert_eq!(validate_hb(&one, &[c(1.0, 0.0)]).unwrap_err().code(), "invalid-grid");
    }

    #[test]
    fn recurrence_matches_chebyshev_u() {
        // a = 0, b = 1/2 gives U_n
        let r = RecurrencePoly { diag: vec![0.0; 3], offdiag: vec![0.5; 3], degree: 3, scale: 1.0 };
        let f = EntireFunction::recurrence(r);
        let z = c(0.3, 0.7);
        let u3 = 8.0 * z * z * z - 4.0 * z;
        assert!((f.eval(z).unwrap() - u3).norm() < 1e-14);
        assert!((f.derivative(z, 1).unwrap() - (24.0 * z * z - 4.0)).norm() < 1e-13);
        assert!((f.derivative(z, 2).unwrap() - 48.0 * z).norm() < 1e-13);
    }
}
