//! The constant `lambda = oint zeta^-1 dzeta` of the Cauchy integral formula,
//! its per-coefficient decomposition into 1-forms `sigma_k`, the closed
//! forms of the inverse for the first four nilpotent indices, and the
//! algebraic conditions under which `lambda = 2 pi i`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgElement, AlgebraSpec};
use crate::error::{Error, Result};
use crate::geometry::{E3Frame, Point3};
use crate::integration::{curvilinear_integral, eval_nodes, Curve3, Field, Plane};
use crate::monogenic::{MonogenicSpec, RepresentationField};
use crate::resolvent::{compute_coeffs, zeta_inverse_closed, ResolventCoeffs};

pub const DEFAULT_LAMBDA_NODES: usize = 4096;
pub const DEFAULT_LAMBDA_TOL: f64 = 1e-6;

/// Threshold below which a structure-constant product counts as zero.
pub const PRODUCT_ZERO_TOL: f64 = 1e-14;

const TWO_PI_I: Complex64 = Complex64::new(0.0, 2.0 * PI);

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Circle `x = R cos t, y = R sin t, z = 0`.
pub fn default_lambda_circle(radius: f64, nodes: usize) -> Result<Curve3> {
    Curve3::circle(Point3::ORIGIN, radius, Plane::XY, nodes)
}

#[derive(Debug, Clone, Serialize)]
pub struct LambdaResult {
    pub lambda: AlgElement,
    /// `(k, oint sigma_k)` for nilpotent indices `k`.
    pub sigma_integrals: Vec<(usize, Complex64)>,
    /// Mean distance of the nodes from their centroid.
    pub radius: f64,
    pub node_count: usize,
    pub is_2pi_i: bool,
    /// Relative tolerance: `||lambda - 2 pi i|| <= tol (1 + ||lambda||)`.
    pub tolerance: f64,
    /// `||lambda - 2 pi i||`
    pub deviation: f64,
}

impl LambdaResult {
    pub fn sigma(&self, k: usize) -> Option<Complex64> {
        self.sigma_integrals
            .iter()
            .find(|(j, _)| *j == k)
            .map(|(_, v)| *v)
    }
}

/// Winding of `t -> xi_u(curve(t)) - around` by accumulated argument.
pub fn winding_number(
    frame: &E3Frame,
    curve: &Curve3,
    u: usize,
    around: Complex64,
) -> Result<i64> {
    let w: Vec<Complex64> = curve
        .samples()
        .iter()
        .map(|&p| frame.xi(u, p) - around)
        .collect();
    if let Some((node, v)) = w.iter().enumerate().find(|(_, v)| v.norm() < 1e-10) {
        return Err(Error::IndeterminateWinding {
            node,
            distance: v.norm(),
        });
    }
    let turn: f64 = w.windows(2).map(|p| (p[1] / p[0]).arg()).sum();
    Ok((turn / (2.0 * PI)).round() as i64)
}

fn require_embrace(
    frame: &E3Frame,
    curve: &Curve3,
    spec: &AlgebraSpec,
    around: &[Complex64],
) -> Result<()> {
    if !curve.is_closed() {
        return Err(Error::InvalidCurve("curve must be closed".into()));
    }
    for u in 1..=spec.m() {
        let winding = winding_number(frame, curve, u, around[u - 1])?;
        if winding != 1 {
            return Err(Error::DoesNotEmbrace { u, winding });
        }
    }
    Ok(())
}

fn require_invertible_nodes(
    frame: &E3Frame,
    curve: &Curve3,
    spec: &AlgebraSpec,
    origin: Point3,
) -> Result<()> {
    for &p in curve.samples() {
        let q = p - origin;
        for u in 1..=spec.m() {
            if frame.xi(u, q).norm() < 1e-10 * (1.0 + q.norm()) {
                return Err(Error::NonInvertible { u }.at(p));
            }
        }
    }
    Ok(())
}

/// `I_k`-coefficient of `zeta^-1 dzeta` for every `k`, given the
/// coefficients of `zeta^-1` and the tangent `dp`.
pub fn sigma_from_inverse(
    frame: &E3Frame,
    spec: &AlgebraSpec,
    coeffs: &ResolventCoeffs,
    inverse: &[Complex64],
    dp: Point3,
) -> Vec<Complex64> {
    let (m, n) = (spec.m(), spec.n());
    let xi = coeffs.xi();
    let dxi: Vec<Complex64> = (1..=m)
        .map(|u| dp.x + frame.a(u) * dp.y + frame.b(u) * dp.z)
        .collect();
    let dt = |s: usize| frame.a(s) * dp.y + frame.b(s) * dp.z;
    let mut sigma = vec![czero(); n];
    for u in 1..=m {
        sigma[u - 1] = inverse[u - 1] * dxi[u - 1];
    }
    for k in m + 1..=n {
        let u = spec.u(k);
        let mut acc = dt(k) / xi[u - 1] + inverse[k - 1] * dxi[u - 1];
        for r in m + 1..k {
            for s in m + 1..k {
                let g = spec.gamma(r, s, k);
                if g.norm() != 0.0 {
                    acc += inverse[r - 1] * dt(s) * g;
                }
            }
        }
        sigma[k - 1] = acc;
    }
    sigma
}

#[derive(Debug, Clone, Copy)]
pub struct LambdaOptions {
    pub tol: f64,
}

impl Default for LambdaOptions {
    fn default() -> Self {
        LambdaOptions {
            tol: DEFAULT_LAMBDA_TOL,
        }
    }
}

/// `lambda` over a closed curve that embraces every `L_u` once.
pub fn lambda_numeric(
    frame: &E3Frame,
    curve: &Curve3,
    spec: &AlgebraSpec,
    opts: LambdaOptions,
) -> Result<LambdaResult> {
    if !curve.is_closed() {
        return Err(Error::InvalidCurve("curve must be closed".into()));
    }
    require_invertible_nodes(frame, curve, spec, Point3::ORIGIN)?;
    require_embrace(frame, curve, spec, &vec![czero(); spec.m()])?;

    let inverse = |p: Point3| spec.invert_direct(&frame.zeta(p));
    let lambda = curvilinear_integral(&inverse, curve, frame, spec)?;

    let pts = curve.samples();
    let nodes = pts
        .par_iter()
        .map(|&p| {
            let coeffs = compute_coeffs(frame, p, spec);
            let inv = zeta_inverse_closed(frame, p, spec).map_err(|e| e.at(p))?;
            let dirs = [
                Point3::new(1.0, 0.0, 0.0),
                Point3::new(0.0, 1.0, 0.0),
                Point3::new(0.0, 0.0, 1.0),
            ];
            Ok(dirs.map(|d| sigma_from_inverse(frame, spec, &coeffs, inv.coeffs(), d)))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut sigma_integrals = Vec::new();
    for k in spec.m() + 1..=spec.n() {
        let parts: Vec<Complex64> = curve
            .quadrature()
            .iter()
            .map(|&(i, j, d)| {
                let avg = |axis: usize| 0.5 * (nodes[i][axis][k - 1] + nodes[j][axis][k - 1]);
                avg(0) * d.x + avg(1) * d.y + avg(2) * d.z
            })
            .collect();
        sigma_integrals.push((k, pairwise_sum_c(&parts)));
    }

    let centroid = curve.centroid();
    let distinct = &pts[..pts.len() - 1];
    let radius = distinct.iter().map(|&p| (p - centroid).norm()).sum::<f64>() / distinct.len() as f64;
    let deviation = (&lambda - &spec.unit().scale(TWO_PI_I)).norm();
    let is_2pi_i = deviation <= opts.tol * (1.0 + lambda.norm());
    Ok(LambdaResult {
        lambda,
        sigma_integrals,
        radius,
        node_count: curve.segments(),
        is_2pi_i,
        tolerance: opts.tol,
        deviation,
    })
}

fn pairwise_sum_c(items: &[Complex64]) -> Complex64 {
    if items.len() <= 8 {
        return items.iter().sum();
    }
    let (lo, hi) = items.split_at(items.len() / 2);
    pairwise_sum_c(lo) + pairwise_sum_c(hi)
}

/// Structure constants relative to the first nilpotent index:
/// `ups(a, b, c)` is the coefficient `Upsilon_{m+a,m+b}^{m+c}`, zero when an
/// index does not exist.
struct Relative<'a> {
    spec: &'a AlgebraSpec,
}

impl Relative<'_> {
    fn ups(&self, a: usize, b: usize, c: usize) -> Complex64 {
        let m = self.spec.m();
        if m + a.max(b).max(c) > self.spec.n() {
            return czero();
        }
        self.spec.upsilon(m + a, m + b, m + c)
    }
}

/// `coeff * T_1^e1 ... T_4^e4 / xi^k` with `T_j` the `j`-th nilpotent coefficient.
#[derive(Debug, Clone, Copy)]
struct Monomial {
    coeff: Complex64,
    t_pow: [u32; 4],
    xi_pow: i32,
}

fn mono(coeff: Complex64, t_pow: [u32; 4], xi_pow: i32) -> Monomial {
    Monomial {
        coeff,
        t_pow,
        xi_pow,
    }
}

fn eval_terms(terms: &[Monomial], t: &[Complex64; 4], xi: Complex64) -> Complex64 {
    terms
        .iter()
        .map(|m| {
            let mut v = m.coeff;
            for j in 0..4 {
                v *= t[j].powu(m.t_pow[j]);
            }
            v / xi.powi(m.xi_pow)
        })
        .sum()
}

/// Differential of `sum terms` applied to `(dT_1..dT_4, dxi)`.
fn diff_terms(
    terms: &[Monomial],
    t: &[Complex64; 4],
    xi: Complex64,
    dt: &[Complex64; 4],
    dxi: Complex64,
) -> Complex64 {
    let mut acc = czero();
    for m in terms {
        if m.coeff.norm() == 0.0 {
            continue;
        }
        for j in 0..4 {
            if m.t_pow[j] == 0 {
                continue;
            }
            let mut v = m.coeff * m.t_pow[j] as f64;
            for i in 0..4 {
                let e = if i == j { m.t_pow[i] - 1 } else { m.t_pow[i] };
                v *= t[i].powu(e);
            }
            acc += v * dt[j] / xi.powi(m.xi_pow);
        }
        let mut v = m.coeff;
        for i in 0..4 {
            v *= t[i].powu(m.t_pow[i]);
        }
        acc -= v * m.xi_pow as f64 * dxi / xi.powi(m.xi_pow + 1);
    }
    acc
}

fn c(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Closed-form coefficient of `I_{m+j}` in `zeta^-1`, `j = 1..4`.
fn atilde_terms(r: &Relative, j: usize) -> Vec<Monomial> {
    let u = |a, b, cc| r.ups(a, b, cc);
    match j {
        1 => vec![mono(c(-1.0), [1, 0, 0, 0], 2)],
        2 => vec![
            mono(c(-1.0), [0, 1, 0, 0], 2),
            mono(u(1, 2, 1), [2, 0, 0, 0], 3),
        ],
        3 => vec![
            mono(c(-1.0), [0, 0, 1, 0], 2),
            mono(u(1, 3, 1), [2, 0, 0, 0], 3),
            mono(2.0 * u(2, 3, 1), [1, 1, 0, 0], 3),
            mono(-u(1, 2, 1) * u(2, 3, 1), [3, 0, 0, 0], 4),
            mono(u(2, 3, 2), [0, 2, 0, 0], 3),
            mono(-u(2, 3, 2) * u(1, 2, 1), [2, 1, 0, 0], 4),
        ],
        4 => vec![
            mono(c(-1.0), [0, 0, 0, 1], 2),
            mono(u(1, 4, 1), [2, 0, 0, 0], 3),
            mono(2.0 * u(3, 4, 1), [1, 0, 1, 0], 3),
            mono(2.0 * u(2, 4, 1), [1, 1, 0, 0], 3),
            mono(2.0 * u(3, 4, 2), [0, 1, 1, 0], 3),
            mono(u(2, 4, 2), [0, 2, 0, 0], 3),
            mono(-u(1, 2, 1) * u(2, 4, 1), [3, 0, 0, 0], 4),
            mono(-u(1, 2, 1) * u(2, 4, 2), [2, 1, 0, 0], 4),
            mono(-u(1, 2, 1) * u(3, 4, 2), [2, 0, 1, 0], 4),
            mono(u(3, 4, 3), [0, 0, 2, 0], 3),
            mono(-u(1, 3, 1) * u(3, 4, 1), [3, 0, 0, 0], 4),
            mono(-u(1, 3, 1) * u(3, 4, 2), [2, 1, 0, 0], 4),
            mono(-u(1, 3, 1) * u(3, 4, 3), [2, 0, 1, 0], 4),
            mono(-2.0 * u(2, 3, 1) * u(3, 4, 1), [2, 1, 0, 0], 4),
            mono(-2.0 * u(2, 3, 1) * u(3, 4, 2), [1, 2, 0, 0], 4),
            mono(-2.0 * u(2, 3, 1) * u(3, 4, 3), [1, 1, 1, 0], 4),
            mono(u(1, 2, 1) * u(2, 3, 1) * u(3, 4, 1), [4, 0, 0, 0], 5),
            mono(u(1, 2, 1) * u(2, 3, 1) * u(3, 4, 2), [3, 1, 0, 0], 5),
            mono(u(1, 2, 1) * u(2, 3, 1) * u(3, 4, 3), [3, 0, 1, 0], 5),
            mono(-u(2, 3, 2) * u(3, 4, 1), [1, 2, 0, 0], 4),
            mono(-u(2, 3, 2) * u(3, 4, 2), [0, 3, 0, 0], 4),
            mono(-u(2, 3, 2) * u(3, 4, 3), [0, 2, 1, 0], 4),
            mono(u(2, 3, 2) * u(1, 2, 1) * u(3, 4, 1), [3, 1, 0, 0], 5),
            mono(u(2, 3, 2) * u(1, 2, 1) * u(3, 4, 2), [2, 2, 0, 0], 5),
            // printed with T_1^3; the recurrence gives T_1^2
            mono(u(2, 3, 2) * u(1, 2, 1) * u(3, 4, 3), [3, 1, 1, 0], 5),
        ],
        _ => unreachable!("closed forms exist for four nilpotent indices"),
    }
}

/// Potential whose differential is the exact part of `sigma_{m+j}`.
fn potential_terms(r: &Relative, j: usize) -> Vec<Monomial> {
    let u = |a, b, cc| r.ups(a, b, cc);
    match j {
        1 => vec![mono(c(1.0), [1, 0, 0, 0], 1)],
        2 => vec![
            mono(c(1.0), [0, 1, 0, 0], 1),
            mono(-0.5 * u(1, 2, 1), [2, 0, 0, 0], 2),
        ],
        3 => vec![
            mono(c(1.0), [0, 0, 1, 0], 1),
            mono(-0.5 * u(1, 3, 1), [2, 0, 0, 0], 2),
            mono(-u(2, 3, 1), [1, 1, 0, 0], 2),
            mono(-0.5 * u(2, 3, 2), [0, 2, 0, 0], 2),
            mono(u(1, 2, 1) * u(2, 3, 1) / 3.0, [3, 0, 0, 0], 3),
        ],
        4 => vec![
            mono(c(1.0), [0, 0, 0, 1], 1),
            mono(-0.5 * u(1, 4, 1), [2, 0, 0, 0], 2),
            mono(-u(3, 4, 1), [1, 0, 1, 0], 2),
            mono(-u(2, 4, 1), [1, 1, 0, 0], 2),
            mono(-0.5 * u(2, 4, 2), [0, 2, 0, 0], 2),
            mono(-u(3, 4, 2), [0, 1, 1, 0], 2),
            mono(u(1, 2, 1) * u(2, 4, 1) / 3.0, [3, 0, 0, 0], 3),
            mono(-0.5 * u(3, 4, 3), [0, 0, 2, 0], 2),
            mono(u(1, 3, 1) * u(3, 4, 1) / 3.0, [3, 0, 0, 0], 3),
            mono(-0.25 * u(1, 2, 1) * u(2, 3, 1) * u(3, 4, 1), [4, 0, 0, 0], 4),
            mono(u(2, 3, 2) * u(3, 4, 2) / 3.0, [0, 3, 0, 0], 3),
        ],
        _ => unreachable!("closed forms exist for four nilpotent indices"),
    }
}

/// One remainder term `weight * prefactor * (dT_r - T_r/xi dxi)`.
struct Remainder {
    weight: Complex64,
    prefactor: Monomial,
    r: usize,
}

fn remainder_terms(rel: &Relative, j: usize) -> Vec<Remainder> {
    let u = |a, b, cc| rel.ups(a, b, cc);
    let rem = |weight: Complex64, prefactor: Monomial, r: usize| Remainder {
        weight,
        prefactor,
        r,
    };
    let one = c(1.0);
    let p1 = mono(one, [2, 0, 0, 0], 3);
    let p2 = mono(c(2.0), [1, 1, 0, 0], 3);
    let p3 = mono(one, [3, 0, 0, 0], 4);
    let p4 = mono(one, [0, 2, 0, 0], 3);
    let p5 = mono(one, [2, 1, 0, 0], 4);
    match j {
        1 | 2 => vec![],
        3 => vec![rem(u(1, 2, 1) * u(2, 3, 2), p1, 2)],
        4 => vec![
            rem(u(1, 2, 1) * u(2, 4, 2), p1, 2),
            // printed with g(2); matching the direct assembly needs g(3)
            rem(u(1, 2, 1) * u(3, 4, 2), p1, 2),
            rem(u(1, 3, 1) * u(3, 4, 2), p1, 2),
            rem(u(3, 4, 3) * u(1, 3, 1), p1, 3),
            rem(u(2, 3, 1) * u(3, 4, 1), p2, 1),
            rem(u(2, 3, 1) * u(3, 4, 2), p2, 2),
            rem(u(2, 3, 1) * u(3, 4, 3), p2, 3),
            rem(-u(1, 2, 1) * u(2, 3, 1) * u(3, 4, 2), p3, 2),
            rem(-u(1, 2, 1) * u(2, 3, 1) * u(3, 4, 3), p3, 3),
            rem(u(2, 3, 2) * u(3, 4, 1), p4, 1),
            rem(u(2, 3, 2) * u(3, 4, 3), p4, 3),
            rem(-u(2, 3, 2) * u(1, 2, 1) * u(3, 4, 1), p5, 1),
            rem(-u(2, 3, 2) * u(1, 2, 1) * u(3, 4, 2), p5, 2),
            rem(-u(2, 3, 2) * u(1, 2, 1) * u(3, 4, 3), p5, 3),
        ],
        _ => unreachable!("closed forms exist for four nilpotent indices"),
    }
}

struct Local {
    t: [Complex64; 4],
    dt: [Complex64; 4],
}

fn local_values(frame: &E3Frame, spec: &AlgebraSpec, p: Point3, dp: Point3) -> Local {
    let mut t = [czero(); 4];
    let mut dt = [czero(); 4];
    for j in 1..=4 {
        let s = spec.m() + j;
        if s <= spec.n() {
            t[j - 1] = frame.t_value(s, p);
            dt[j - 1] = frame.a(s) * dp.y + frame.b(s) * dp.z;
        }
    }
    Local { t, dt }
}

fn closed_indices(spec: &AlgebraSpec) -> std::ops::RangeInclusive<usize> {
    1..=(spec.n() - spec.m()).min(4)
}

fn owner_xi(frame: &E3Frame, spec: &AlgebraSpec, s: usize, p: Point3) -> Result<Complex64> {
    let xi = frame.xi(spec.u(s), p);
    if xi.norm() == 0.0 {
        return Err(Error::Singular(format!("xi_{} vanishes", spec.u(s))));
    }
    Ok(xi)
}

/// Closed-form coefficients `(s, A~_s)` of `zeta^-1` for the first four
/// nilpotent indices `s`.
pub fn atilde_closed(
    frame: &E3Frame,
    p: Point3,
    spec: &AlgebraSpec,
) -> Result<Vec<(usize, Complex64)>> {
    let rel = Relative { spec };
    let loc = local_values(frame, spec, p, Point3::ORIGIN);
    closed_indices(spec)
        .map(|j| {
            let s = spec.m() + j;
            let xi = owner_xi(frame, spec, s, p)?;
            Ok((s, eval_terms(&atilde_terms(&rel, j), &loc.t, xi)))
        })
        .collect()
}

/// `sigma_k` on a tangent, split into its exact part and the remainders.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SigmaSplit {
    pub k: usize,
    pub exact: Complex64,
    pub remainder: Complex64,
}

impl SigmaSplit {
    pub fn total(&self) -> Complex64 {
        self.exact + self.remainder
    }
}

/// Split-form `sigma_k(p; dp)` for the first four nilpotent indices.
pub fn sigma_closed(
    frame: &E3Frame,
    p: Point3,
    dp: Point3,
    spec: &AlgebraSpec,
) -> Result<Vec<SigmaSplit>> {
    let rel = Relative { spec };
    let loc = local_values(frame, spec, p, dp);
    closed_indices(spec)
        .map(|j| {
            let k = spec.m() + j;
            let u = spec.u(k);
            let xi = owner_xi(frame, spec, k, p)?;
            let dxi = dp.x + frame.a(u) * dp.y + frame.b(u) * dp.z;
            let exact = diff_terms(&potential_terms(&rel, j), &loc.t, xi, &loc.dt, dxi);
            let remainder = remainder_terms(&rel, j)
                .iter()
                .filter(|r| r.weight.norm() != 0.0)
                .map(|r| {
                    let g = loc.dt[r.r - 1] - loc.t[r.r - 1] / xi * dxi;
                    r.weight * eval_terms(&[r.prefactor], &loc.t, xi) * g
                })
                .sum();
            Ok(SigmaSplit {
                k,
                exact,
                remainder,
            })
        })
        .collect()
}

/// Value of the potential whose differential is the exact part of `sigma_k`.
pub fn sigma_potential(
    frame: &E3Frame,
    p: Point3,
    spec: &AlgebraSpec,
) -> Result<Vec<(usize, Complex64)>> {
    let rel = Relative { spec };
    let loc = local_values(frame, spec, p, Point3::ORIGIN);
    closed_indices(spec)
        .map(|j| {
            let k = spec.m() + j;
            let xi = owner_xi(frame, spec, k, p)?;
            Ok((k, eval_terms(&potential_terms(&rel, j), &loc.t, xi)))
        })
        .collect()
}

/// `sigma_k(p; dp)` for the first four nilpotent indices, assembled
/// directly from the closed-form inverse coefficients.
pub fn sigma_assembled(
    frame: &E3Frame,
    p: Point3,
    dp: Point3,
    spec: &AlgebraSpec,
) -> Result<Vec<(usize, Complex64)>> {
    let closed = atilde_closed(frame, p, spec)?;
    let coeffs = compute_coeffs(frame, p, spec);
    let mut inverse = vec![czero(); spec.n()];
    for u in 1..=spec.m() {
        let xi = coeffs.xi()[u - 1];
        if xi.norm() == 0.0 {
            return Err(Error::Singular(format!("xi_{u} vanishes")));
        }
        inverse[u - 1] = 1.0 / xi;
    }
    for &(s, v) in &closed {
        inverse[s - 1] = v;
    }
    let sigma = sigma_from_inverse(frame, spec, &coeffs, &inverse, dp);
    Ok(closed.iter().map(|&(k, _)| (k, sigma[k - 1])).collect())
}

/// One of the fourteen vanishing conditions on structure-constant products.
#[derive(Debug, Clone, Serialize)]
pub struct ProductCondition {
    /// Position `1..=14` in the list.
    pub index: usize,
    /// The product written with absolute indices, `gamma(r,s,k)` being the
    /// coefficient of `I_k` in `I_r I_s`.
    pub label: String,
    pub value: Complex64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactnessReport {
    /// Semisimple algebra.
    pub theorem5: bool,
    /// All nilpotent products vanish.
    pub theorem6: bool,
    /// At most three nilpotent dimensions.
    pub theorem7: bool,
    /// Four nilpotent dimensions and every product condition holds.
    pub theorem8: bool,
    pub theorem8_violations: Vec<ProductCondition>,
    /// Frame lies in the semisimple part.
    pub theorem9: bool,
    /// Four nilpotent dimensions and both frame conditions hold.
    pub theorem10: bool,
    /// `a_{m+1} = b_{m+1} = 0`
    pub theorem10_condition1: bool,
    /// `a_{m+2} = b_{m+2} = 0` or `a_{m+3} = b_{m+3} = 0`
    pub theorem10_condition2: bool,
    pub predicted_2pi_i: bool,
}

/// Factors `(a, b, c)` of `Upsilon_{m+a,m+b}^{m+c}` for each product condition.
const PRODUCT_CONDITIONS: [&[(usize, usize, usize)]; 14] = [
    &[(1, 2, 1), (2, 3, 2)],
    &[(1, 2, 1), (2, 4, 2)],
    &[(1, 3, 1), (3, 4, 2)],
    &[(3, 4, 3), (1, 3, 1)],
    &[(2, 3, 1), (3, 4, 1)],
    &[(2, 3, 1), (3, 4, 2)],
    &[(2, 3, 1), (3, 4, 3)],
    &[(1, 2, 1), (2, 3, 1), (3, 4, 2)],
    &[(1, 2, 1), (2, 3, 1), (3, 4, 3)],
    &[(2, 3, 2), (3, 4, 1)],
    &[(2, 3, 2), (3, 4, 3)],
    &[(2, 3, 2), (1, 2, 1), (3, 4, 1)],
    &[(2, 3, 2), (1, 2, 1), (3, 4, 2)],
    &[(2, 3, 2), (1, 2, 1), (3, 4, 3)],
];

/// Evaluates all fourteen product conditions (requires four nilpotent
/// dimensions to be meaningful; missing indices count as zero).
pub fn product_conditions(spec: &AlgebraSpec) -> Vec<ProductCondition> {
    let rel = Relative { spec };
    let m = spec.m();
    PRODUCT_CONDITIONS
        .iter()
        .enumerate()
        .map(|(i, factors)| {
            let value = factors
                .iter()
                .map(|&(a, b, cc)| rel.ups(a, b, cc))
                .product();
            let label = factors
                .iter()
                .map(|&(a, b, cc)| format!("gamma({},{},{})", m + a, m + cc, m + b))
                .collect::<Vec<_>>()
                .join("*");
            ProductCondition {
                index: i + 1,
                label,
                value,
            }
        })
        .collect()
}

pub fn exactness_conditions(frame: &E3Frame, spec: &AlgebraSpec) -> ExactnessReport {
    let (m, n) = (spec.m(), spec.n());
    let zero_component = |k: usize| frame.a(k).norm() == 0.0 && frame.b(k).norm() == 0.0;
    let four = n - m == 4;
    let theorem8_violations: Vec<ProductCondition> = if four {
        product_conditions(spec)
            .into_iter()
            .filter(|p| p.value.norm() > PRODUCT_ZERO_TOL)
            .collect()
    } else {
        Vec::new()
    };
    let theorem5 = n == m;
    let theorem6 = spec.has_zero_nilpotent_products();
    let theorem7 = n - m <= 3;
    let theorem8 = four && theorem8_violations.is_empty();
    let theorem9 = (m + 1..=n).all(zero_component);
    let theorem10_condition1 = four && zero_component(m + 1);
    let theorem10_condition2 = four && (zero_component(m + 2) || zero_component(m + 3));
    let theorem10 = theorem10_condition1 && theorem10_condition2;
    ExactnessReport {
        theorem5,
        theorem6,
        theorem7,
        theorem8,
        theorem8_violations,
        theorem9,
        theorem10,
        theorem10_condition1,
        theorem10_condition2,
        predicted_2pi_i: theorem5 || theorem6 || theorem7 || theorem8 || theorem9 || theorem10,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CauchyFormulaResidual {
    pub residual: f64,
    pub lambda: AlgElement,
    /// `lambda Phi(zeta_0)`
    pub lhs: AlgElement,
    /// `oint Phi(zeta) (zeta - zeta_0)^-1 dzeta`
    pub rhs: AlgElement,
}

/// Residual of `lambda Phi(zeta_0) = oint Phi(zeta) (zeta - zeta_0)^-1 dzeta`,
/// with `lambda` taken over the curve translated by `-p0`.
pub fn cauchy_formula_residual_field(
    phi: &dyn Field,
    frame: &E3Frame,
    p0: Point3,
    curve: &Curve3,
    spec: &AlgebraSpec,
) -> Result<CauchyFormulaResidual> {
    let centers = frame.xi_values(p0);
    require_invertible_nodes(frame, curve, spec, p0)?;
    require_embrace(frame, curve, spec, &centers)?;
    let shifted = curve.translated(Point3::ORIGIN - p0);
    let lambda = lambda_numeric(frame, &shifted, spec, LambdaOptions::default())?.lambda;
    let kernel = |p: Point3| {
        let inv = spec.invert_direct(&frame.zeta(p - p0))?;
        Ok(spec.mul(&phi.eval(p)?, &inv))
    };
    let rhs = curvilinear_integral(&kernel, curve, frame, spec)?;
    let lhs = spec.mul(&lambda, &phi.eval(p0).map_err(|e| e.at(p0))?);
    Ok(CauchyFormulaResidual {
        residual: (&lhs - &rhs).norm(),
        lambda,
        lhs,
        rhs,
    })
}

pub fn cauchy_formula_residual(
    mspec: &MonogenicSpec,
    frame: &E3Frame,
    p0: Point3,
    curve: &Curve3,
    spec: &AlgebraSpec,
) -> Result<CauchyFormulaResidual> {
    let phi = RepresentationField::new(mspec, frame, spec);
    cauchy_formula_residual_field(&phi, frame, p0, curve, spec)
}

/// `|| oint Phi dzeta ||` over a closed curve.
pub fn cauchy_theorem_residual_field(
    phi: &dyn Field,
    frame: &E3Frame,
    curve: &Curve3,
    spec: &AlgebraSpec,
) -> Result<f64> {
    if !curve.is_closed() {
        return Err(Error::InvalidCurve("curve must be closed".into()));
    }
    Ok(curvilinear_integral(phi, curve, frame, spec)?.norm())
}

pub fn cauchy_theorem_residual(
    mspec: &MonogenicSpec,
    frame: &E3Frame,
    curve: &Curve3,
    spec: &AlgebraSpec,
) -> Result<f64> {
    let phi = RepresentationField::new(mspec, frame, spec);
    cauchy_theorem_residual_field(&phi, frame, curve, spec)
}

/// Integral of the exact part of each `sigma_k` along a closed curve.
pub fn exact_part_integrals(
    frame: &E3Frame,
    curve: &Curve3,
    spec: &AlgebraSpec,
) -> Result<Vec<(usize, Complex64)>> {
    let pts = curve.samples();
    let per_segment = curve
        .quadrature()
        .into_par_iter()
        .map(|(i, j, d)| {
            let a = sigma_closed(frame, pts[i], d, spec)?;
            let b = sigma_closed(frame, pts[j], d, spec)?;
            Ok(a.iter()
                .zip(&b)
                .map(|(x, y)| 0.5 * (x.exact + y.exact))
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(closed_indices(spec)
        .enumerate()
        .map(|(idx, j)| {
            let parts: Vec<Complex64> = per_segment.iter().map(|v| v[idx]).collect();
            (spec.m() + j, pairwise_sum_c(&parts))
        })
        .collect())
}

/// Node values of `zeta^-1` on a curve, for callers that need them.
pub fn inverse_on_curve(
    frame: &E3Frame,
    curve: &Curve3,
    spec: &AlgebraSpec,
) -> Result<Vec<AlgElement>> {
    let inverse = |p: Point3| spec.invert_direct(&frame.zeta(p));
    eval_nodes(&inverse, curve)
}
