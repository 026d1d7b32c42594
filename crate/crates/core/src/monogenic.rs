//! Monogenic functions built from holomorphic data by contour integration
//! against the resolvent, plus finite-difference monogenicity checks.
//!
//! ```text
//! Phi(zeta) = sum_u I_u (2 pi i)^-1 oint_{G_u} F_u(t) (t - zeta)^-1 dt
//!           + sum_s I_s (2 pi i)^-1 oint_{G_{u_s}} G_s(t) (t - zeta)^-1 dt
//! ```

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgElement, AlgebraSpec};
use crate::error::{Error, Result};
use crate::geometry::{E3Frame, Point3};
use crate::integration::{partials, Field};
use crate::resolvent::compute_coeffs;

pub const DEFAULT_CONTOUR_NODES: usize = 1024;

/// Relative spread of the default contour: `0.4 * min_{l != u} |xi_l - xi_u|`.
pub const DEFAULT_RADIUS_FRACTION: f64 = 0.4;

/// Scalar holomorphic data `F_u`, `G_s`.
#[derive(Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum HoloFunction {
    /// `sum_k coeffs[k] (t - center)^k`
    Polynomial {
        coeffs: Vec<Complex64>,
        #[serde(default)]
        center: Complex64,
    },
    /// `num(t - center) / den(t - center)` with both given by coefficients.
    Rational {
        num: Vec<Complex64>,
        den: Vec<Complex64>,
        #[serde(default)]
        center: Complex64,
    },
    /// Truncated `exp(rate (t - center))` with `terms` Taylor terms.
    Exp {
        rate: Complex64,
        terms: usize,
        #[serde(default)]
        center: Complex64,
    },
    /// Opaque callback; holomorphy is not verified.
    #[serde(skip)]
    Custom(Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>),
}

impl fmt::Debug for HoloFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HoloFunction::Polynomial { coeffs, center } => f
                .debug_struct("Polynomial")
                .field("coeffs", coeffs)
                .field("center", center)
                .finish(),
            HoloFunction::Rational { num, den, center } => f
                .debug_struct("Rational")
                .field("num", num)
                .field("den", den)
                .field("center", center)
                .finish(),
            HoloFunction::Exp {
                rate,
                terms,
                center,
            } => f
                .debug_struct("Exp")
                .field("rate", rate)
                .field("terms", terms)
                .field("center", center)
                .finish(),
            HoloFunction::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

fn horner(coeffs: &[Complex64], w: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * w + c)
}

impl HoloFunction {
    /// Polynomial about the origin.
    pub fn polynomial(coeffs: Vec<Complex64>) -> Self {
        HoloFunction::Polynomial {
            coeffs,
            center: Complex64::new(0.0, 0.0),
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::polynomial(vec![c])
    }

    pub fn zero() -> Self {
        Self::polynomial(vec![])
    }

    /// `t^k`
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k + 1];
        coeffs[k] = Complex64::new(1.0, 0.0);
        Self::polynomial(coeffs)
    }

    pub fn custom(f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        HoloFunction::Custom(Arc::new(f))
    }

    pub fn is_verified(&self) -> bool {
        !matches!(self, HoloFunction::Custom(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            HoloFunction::Polynomial { coeffs, .. } => coeffs.iter().all(|c| c.norm() == 0.0),
            HoloFunction::Rational { num, .. } => num.iter().all(|c| c.norm() == 0.0),
            _ => false,
        }
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        match self {
            HoloFunction::Polynomial { coeffs, center } => horner(coeffs, t - center),
            HoloFunction::Rational { num, den, center } => {
                horner(num, t - center) / horner(den, t - center)
            }
            HoloFunction::Exp {
                rate,
                terms,
                center,
            } => {
                // Horner form of sum_{k < terms} w^k / k!
                let w = rate * (t - center);
                let mut acc = Complex64::new(1.0, 0.0);
                for k in (1..*terms).rev() {
                    acc = 1.0 + w * acc / k as f64;
                }
                if *terms == 0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    acc
                }
            }
            HoloFunction::Custom(f) => f(t),
        }
    }

    /// Rejects a rational function with a pole on or inside the circle,
    /// using the argument principle on the denominator at the nodes.
    fn check_contour(&self, u: usize, nodes: &[Complex64]) -> Result<()> {
        let HoloFunction::Rational { den, center, .. } = self else {
            return Ok(());
        };
        let values: Vec<Complex64> = nodes.iter().map(|&t| horner(den, t - center)).collect();
        let scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if values.iter().any(|v| v.norm() <= 1e-12 * scale) || scale == 0.0 {
            return Err(Error::ContourPole { u });
        }
        let mut turn = 0.0;
        for i in 0..values.len() {
            let next = values[(i + 1) % values.len()];
            turn += (next / values[i]).arg();
        }
        if (turn / (2.0 * PI)).round() != 0.0 {
            return Err(Error::ContourPole { u });
        }
        Ok(())
    }
}

/// A circle `|t - center| = radius` in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Contour {
    pub center: Complex64,
    pub radius: f64,
}

/// Holomorphic data for the representation formula.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonogenicSpec {
    /// `F_1 .. F_m`
    #[serde(rename = "F")]
    pub f: Vec<HoloFunction>,
    /// `G_s` for nilpotent indices `s`; missing entries are zero.
    #[serde(rename = "G", default)]
    pub g: BTreeMap<usize, HoloFunction>,
    /// Fixed contours per idempotent index; others use the default circle.
    #[serde(default)]
    pub contours: BTreeMap<usize, Contour>,
    #[serde(default = "default_nodes")]
    pub contour_nodes: usize,
}

fn default_nodes() -> usize {
    DEFAULT_CONTOUR_NODES
}

impl MonogenicSpec {
    /// `F_u = f` for all `u`, no `G` terms.
    pub fn uniform(m: usize, f: HoloFunction) -> Self {
        MonogenicSpec {
            f: vec![f; m],
            g: BTreeMap::new(),
            contours: BTreeMap::new(),
            contour_nodes: DEFAULT_CONTOUR_NODES,
        }
    }

    pub fn with_g(mut self, s: usize, g: HoloFunction) -> Self {
        self.g.insert(s, g);
        self
    }

    pub fn with_contour(mut self, u: usize, c: Contour) -> Self {
        self.contours.insert(u, c);
        self
    }

    pub fn with_nodes(mut self, nodes: usize) -> Self {
        self.contour_nodes = nodes;
        self
    }

    pub fn is_verified(&self) -> bool {
        self.f.iter().chain(self.g.values()).all(|h| h.is_verified())
    }

    fn check_shape(&self, spec: &AlgebraSpec) -> Result<()> {
        if self.f.len() != spec.m() {
            return Err(Error::DimensionMismatch {
                expected: spec.m(),
                found: self.f.len(),
            });
        }
        if let Some(&s) = self.g.keys().find(|&&s| s <= spec.m() || s > spec.n()) {
            return Err(Error::IndexOutOfRange {
                what: "G",
                index: s,
                max: spec.n(),
            });
        }
        if self.contour_nodes < 3 {
            return Err(Error::InvalidInput("contour needs at least 3 nodes".into()));
        }
        Ok(())
    }
}

/// Default contour around `xi_u`.
pub fn default_contour(xi: &[Complex64], u: usize) -> Contour {
    let c = xi[u - 1];
    let gap = xi
        .iter()
        .enumerate()
        .filter(|&(l, _)| l != u - 1)
        .map(|(_, x)| (x - c).norm())
        .fold(f64::INFINITY, f64::min);
    let radius = if gap.is_finite() {
        DEFAULT_RADIUS_FRACTION * gap
    } else {
        1.0
    };
    Contour { center: c, radius }
}

fn check_enclosure(xi: &[Complex64], u: usize, c: &Contour) -> Result<()> {
    if !(c.radius > 0.0) || !c.radius.is_finite() {
        return Err(Error::Contour {
            u,
            reason: format!("radius {} is not positive (xi values coincide?)", c.radius),
        });
    }
    let margin = 1e-9 * c.radius;
    if (xi[u - 1] - c.center).norm() >= c.radius - margin {
        return Err(Error::Contour {
            u,
            reason: format!("xi_{u} is not strictly inside"),
        });
    }
    for (l, x) in xi.iter().enumerate() {
        if l != u - 1 && (x - c.center).norm() <= c.radius + margin {
            return Err(Error::Contour {
                u,
                reason: format!("xi_{} also lies inside or on the contour", l + 1),
            });
        }
    }
    Ok(())
}

/// `Phi(zeta(p))` by trapezoid quadrature on each contour.
pub fn eval_representation(
    mspec: &MonogenicSpec,
    frame: &E3Frame,
    p: Point3,
    spec: &AlgebraSpec,
) -> Result<AlgElement> {
    mspec.check_shape(spec)?;
    let coeffs = compute_coeffs(frame, p, spec);
    let xi = coeffs.xi();
    let count = mspec.contour_nodes;
    let mut total = spec.zero();
    for u in 1..=spec.m() {
        let contour = match mspec.contours.get(&u) {
            Some(c) => *c,
            None => default_contour(xi, u),
        };
        check_enclosure(xi, u, &contour)?;
        let g_terms: Vec<(usize, &HoloFunction)> = mspec
            .g
            .iter()
            .filter(|&(&s, h)| spec.u(s) == u && !h.is_zero())
            .map(|(&s, h)| (s, h))
            .collect();
        let f_u = &mspec.f[u - 1];
        if f_u.is_zero() && g_terms.is_empty() {
            continue;
        }
        let nodes: Vec<Complex64> = (0..count)
            .map(|j| {
                let theta = 2.0 * PI * j as f64 / count as f64;
                contour.center + Complex64::from_polar(contour.radius, theta)
            })
            .collect();
        f_u.check_contour(u, &nodes)?;
        for (_, g) in &g_terms {
            g.check_contour(u, &nodes)?;
        }
        // dt / (2 pi i) at node t_j is (t_j - c) / N
        let dt: Vec<Complex64> = nodes.iter().map(|&t| (t - contour.center) / count as f64).collect();
        let weighted = |h: &HoloFunction| -> Result<AlgElement> {
            let w: Vec<Complex64> = nodes.iter().zip(&dt).map(|(&t, &d)| h.eval(t) * d).collect();
            coeffs.resolvent_sum(&nodes, &w)
        };
        if !f_u.is_zero() {
            total += &spec.mul(&spec.basis(u), &weighted(f_u)?);
        }
        for (s, g) in &g_terms {
            total += &spec.mul(&spec.basis(*s), &weighted(g)?);
        }
    }
    Ok(total)
}

/// The representation as a [`Field`] over the parameter space.
pub struct RepresentationField<'a> {
    pub mspec: &'a MonogenicSpec,
    pub frame: &'a E3Frame,
    pub spec: &'a AlgebraSpec,
}

impl<'a> RepresentationField<'a> {
    pub fn new(mspec: &'a MonogenicSpec, frame: &'a E3Frame, spec: &'a AlgebraSpec) -> Self {
        RepresentationField { mspec, frame, spec }
    }
}

impl Field for RepresentationField<'_> {
    fn eval(&self, p: Point3) -> Result<AlgElement> {
        eval_representation(self.mspec, self.frame, p, self.spec)
    }
}

/// `(Phi(zeta + eps h) - Phi(zeta)) / eps` for `h = dzeta(direction)`.
pub fn gateaux_derivative_fd(
    phi: &dyn Field,
    p: Point3,
    direction: Point3,
    eps: f64,
) -> Result<AlgElement> {
    if !(eps > 0.0) {
        return Err(Error::InvalidInput("eps must be positive".into()));
    }
    let moved = phi.eval(p + direction * eps)?;
    let here = phi.eval(p)?;
    Ok((&moved - &here).scale_re(1.0 / eps))
}

/// Estimates `Phi'(zeta)` by dividing the Gateaux quotient by `h`.
pub fn recover_derivative(
    phi: &dyn Field,
    frame: &E3Frame,
    spec: &AlgebraSpec,
    p: Point3,
    direction: Point3,
    eps: f64,
) -> Result<AlgElement> {
    let h = frame.dzeta(direction);
    let h_inv = spec.invert_direct(&h)?;
    let quotient = gateaux_derivative_fd(phi, p, direction, eps)?;
    Ok(spec.mul(&quotient, &h_inv))
}

/// `(||Phi_y - Phi_x e_2||, ||Phi_z - Phi_x e_3||)` by central differences
/// with absolute step `h`.
pub fn cauchy_riemann_residual(
    phi: &dyn Field,
    frame: &E3Frame,
    spec: &AlgebraSpec,
    p: Point3,
    h: f64,
) -> Result<(f64, f64)> {
    let [px, py, pz] = partials(phi, p, Some(h))?;
    let r2 = (&py - &spec.mul(&px, &frame.e2())).norm();
    let r3 = (&pz - &spec.mul(&px, &frame.e3())).norm();
    Ok((r2, r3))
}
