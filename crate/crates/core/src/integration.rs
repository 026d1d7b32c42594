//! Curvilinear and surface integrals of algebra-valued fields over `E_3`.
//!
//! For `Psi = sum_k (U_k + i V_k) I_k` along a curve `gamma` in R^3,
//!
//! ```text
//! int Psi dzeta = int Psi dx + e_2 int Psi dy + e_3 int Psi dz
//! ```
//!
//! Curves are polylines and the three coordinate integrals use the composite
//! trapezoid rule per segment. Node evaluations run in parallel; sums are
//! pairwise in a fixed order so results are reproducible.

use std::collections::HashMap;
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgElement, AlgebraSpec};
use crate::error::{Error, Result};
use crate::geometry::{E3Frame, Point3};

/// A field `Point3 -> A_n^m` sampled by the quadrature rules.
pub trait Field: Sync {
    fn eval(&self, p: Point3) -> Result<AlgElement>;
}

impl<F> Field for F
where
    F: Fn(Point3) -> Result<AlgElement> + Sync,
{
    fn eval(&self, p: Point3) -> Result<AlgElement> {
        self(p)
    }
}

/// Pairwise (cascade) summation; deterministic for a given input order.
pub fn pairwise_sum(items: &[AlgElement], n: usize) -> AlgElement {
    const LEAF: usize = 8;
    if items.len() <= LEAF {
        let mut acc = AlgElement::zero(n);
        for it in items {
            acc += it;
        }
        return acc;
    }
    let (lo, hi) = items.split_at(items.len() / 2);
    pairwise_sum(lo, n) + pairwise_sum(hi, n)
}

fn pairwise_sum_f64(items: &[f64]) -> f64 {
    if items.len() <= 8 {
        return items.iter().sum();
    }
    let (lo, hi) = items.split_at(items.len() / 2);
    pairwise_sum_f64(lo) + pairwise_sum_f64(hi)
}

/// A polyline in R^3, optionally carrying the parametric differential
/// `gamma'(theta_j) dtheta` at each node of a uniformly sampled closed curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CurveFile", into = "CurveFile")]
pub struct Curve3 {
    samples: Vec<Point3>,
    closed: bool,
    tangents: Option<Vec<Point3>>,
}

#[derive(Serialize, Deserialize)]
struct CurveFile {
    points: Vec<[f64; 3]>,
    closed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tangents: Option<Vec<[f64; 3]>>,
}

impl TryFrom<CurveFile> for Curve3 {
    type Error = Error;
    fn try_from(f: CurveFile) -> Result<Self> {
        let curve = Curve3::new(f.points.into_iter().map(Point3::from).collect(), f.closed)?;
        match f.tangents {
            Some(t) => curve.with_tangents(t.into_iter().map(Point3::from).collect()),
            None => Ok(curve),
        }
    }
}

impl From<Curve3> for CurveFile {
    fn from(c: Curve3) -> Self {
        CurveFile {
            points: c.samples.iter().map(|p| p.to_array()).collect(),
            closed: c.closed,
            tangents: c
                .tangents
                .map(|t| t.iter().map(|p| p.to_array()).collect()),
        }
    }
}

/// Coordinate plane for circle generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Plane {
    /// `x`, `y` (the `e_1`, `e_2` directions).
    XY,
    YZ,
    ZX,
}

impl Plane {
    fn axes(self) -> (Point3, Point3) {
        let ex = Point3::new(1.0, 0.0, 0.0);
        let ey = Point3::new(0.0, 1.0, 0.0);
        let ez = Point3::new(0.0, 0.0, 1.0);
        match self {
            Plane::XY => (ex, ey),
            Plane::YZ => (ey, ez),
            Plane::ZX => (ez, ex),
        }
    }
}

impl Curve3 {
    pub fn new(samples: Vec<Point3>, closed: bool) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidCurve("need at least two samples".into()));
        }
        if let Some(i) = samples.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidCurve(format!("sample {i} is not finite")));
        }
        if let Some(i) = samples.windows(2).position(|w| w[0] == w[1]) {
            return Err(Error::InvalidCurve(format!(
                "samples {i} and {} coincide",
                i + 1
            )));
        }
        if closed {
            let (first, last) = (samples[0], samples[samples.len() - 1]);
            if (first - last).norm() > 1e-14 * (1.0 + first.norm()) {
                return Err(Error::InvalidCurve(
                    "closed curve must end at its first sample".into(),
                ));
            }
        }
        Ok(Curve3 {
            samples,
            closed,
            tangents: None,
        })
    }

    /// Attaches per-node differentials to a closed curve; integrals then
    /// use the periodic trapezoid rule `sum_j Psi(p_j) d_j`.
    pub fn with_tangents(mut self, tangents: Vec<Point3>) -> Result<Self> {
        if !self.closed || tangents.len() != self.samples.len() - 1 {
            return Err(Error::InvalidCurve(
                "tangents need a closed curve and one entry per distinct sample".into(),
            ));
        }
        if tangents.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidCurve("tangent is not finite".into()));
        }
        self.tangents = Some(tangents);
        Ok(self)
    }

    pub fn tangents(&self) -> Option<&[Point3]> {
        self.tangents.as_deref()
    }

    /// Quadrature terms `(i, j, d)` contributing `(Psi_i + Psi_j) / 2 * d`.
    pub fn quadrature(&self) -> Vec<(usize, usize, Point3)> {
        match &self.tangents {
            Some(t) => t.iter().enumerate().map(|(j, &d)| (j, j, d)).collect(),
            None => (0..self.samples.len() - 1)
                .map(|i| (i, i + 1, self.samples[i + 1] - self.samples[i]))
                .collect(),
        }
    }

    /// Uniformly sampled circle, counter-clockwise in the given plane.
    pub fn circle(center: Point3, radius: f64, plane: Plane, nodes: usize) -> Result<Self> {
        let (u, v) = plane.axes();
        Self::circle_in(center, radius, u, v, nodes)
    }

    /// Circle `center + r (cos t u + sin t v)`; `u`, `v` need not be unit.
    pub fn circle_in(
        center: Point3,
        radius: f64,
        u: Point3,
        v: Point3,
        nodes: usize,
    ) -> Result<Self> {
        if nodes < 3 || !(radius > 0.0) {
            return Err(Error::InvalidCurve(
                "circle needs radius > 0 and at least 3 nodes".into(),
            ));
        }
        let step = 2.0 * PI / nodes as f64;
        let mut samples = Vec::with_capacity(nodes + 1);
        let mut tangents = Vec::with_capacity(nodes);
        for j in 0..nodes {
            let t = step * j as f64;
            samples.push(center + u * (radius * t.cos()) + v * (radius * t.sin()));
            tangents.push((v * t.cos() - u * t.sin()) * (radius * step));
        }
        samples.push(samples[0]);
        Self::new(samples, true)?.with_tangents(tangents)
    }

    /// Straight segment from `p` to `q` split into `pieces` equal parts.
    pub fn segment(p: Point3, q: Point3, pieces: usize) -> Result<Self> {
        let pieces = pieces.max(1);
        let samples = (0..=pieces)
            .map(|j| {
                let t = j as f64 / pieces as f64;
                p + (q - p) * t
            })
            .collect();
        Self::new(samples, false)
    }

    /// Closed boundary `p1 -> p2 -> p3 -> p1`, each edge split into
    /// `per_edge` equal parts.
    pub fn triangle(p1: Point3, p2: Point3, p3: Point3, per_edge: usize) -> Result<Self> {
        Self::polygon(&[p1, p2, p3], per_edge)
    }

    /// Closed polygon through `vertices`, each edge split into `per_edge` parts.
    pub fn polygon(vertices: &[Point3], per_edge: usize) -> Result<Self> {
        let per_edge = per_edge.max(1);
        let mut samples = Vec::with_capacity(vertices.len() * per_edge + 1);
        for (i, &a) in vertices.iter().enumerate() {
            let b = vertices[(i + 1) % vertices.len()];
            for j in 0..per_edge {
                samples.push(a + (b - a) * (j as f64 / per_edge as f64));
            }
        }
        samples.push(vertices[0]);
        Self::new(samples, true)
    }

    pub fn samples(&self) -> &[Point3] {
        &self.samples
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn segments(&self) -> usize {
        self.samples.len() - 1
    }

    pub fn reversed(&self) -> Self {
        let mut samples = self.samples.clone();
        samples.reverse();
        // new node k is old node N - k (mod N), traversed backwards
        let tangents = self.tangents.as_ref().map(|t| {
            let len = t.len();
            (0..len).map(|k| t[(len - k) % len] * -1.0).collect()
        });
        Curve3 {
            samples,
            closed: self.closed,
            tangents,
        }
    }

    /// Splits at vertex `i` into `[0..=i]` and `[i..]`, both open.
    pub fn split_at(&self, i: usize) -> Result<(Curve3, Curve3)> {
        if i == 0 || i >= self.segments() {
            return Err(Error::InvalidCurve(format!("cannot split at vertex {i}")));
        }
        Ok((
            Curve3::new(self.samples[..=i].to_vec(), false)?,
            Curve3::new(self.samples[i..].to_vec(), false)?,
        ))
    }

    /// Rigid translation by `-p`.
    pub fn translated(&self, by: Point3) -> Self {
        Curve3 {
            samples: self.samples.iter().map(|&p| p + by).collect(),
            closed: self.closed,
            tangents: self.tangents.clone(),
        }
    }

    pub fn length(&self) -> f64 {
        self.quadrature().iter().map(|(_, _, d)| d.norm()).sum()
    }

    pub fn centroid(&self) -> Point3 {
        let pts = if self.closed {
            &self.samples[..self.samples.len() - 1]
        } else {
            &self.samples[..]
        };
        let sum = pts.iter().fold(Point3::ORIGIN, |acc, &p| acc + p);
        sum * (1.0 / pts.len() as f64)
    }
}

/// Evaluates `psi` at every sample, in parallel, keeping sample order.
pub(crate) fn eval_nodes(psi: &dyn Field, curve: &Curve3) -> Result<Vec<AlgElement>> {
    let pts = curve.samples();
    let distinct = if curve.is_closed() { pts.len() - 1 } else { pts.len() };
    let mut values = pts[..distinct]
        .par_iter()
        .map(|&p| psi.eval(p).map_err(|e| e.at(p)))
        .collect::<Result<Vec<_>>>()?;
    if curve.is_closed() {
        values.push(values[0].clone());
    }
    Ok(values)
}

/// The three coordinate integrals `int Psi dx`, `int Psi dy`, `int Psi dz`.
#[derive(Debug, Clone)]
pub struct CoordinateIntegrals {
    pub dx: AlgElement,
    pub dy: AlgElement,
    pub dz: AlgElement,
}

impl CoordinateIntegrals {
    /// Combines into `int Psi dzeta`.
    pub fn combine(&self, frame: &E3Frame, spec: &AlgebraSpec) -> AlgElement {
        &(&self.dx + &spec.mul(&frame.e2(), &self.dy)) + &spec.mul(&frame.e3(), &self.dz)
    }
}

pub(crate) fn coordinate_integrals(
    values: &[AlgElement],
    curve: &Curve3,
    n: usize,
) -> CoordinateIntegrals {
    let rule = curve.quadrature();
    let mut sx = Vec::with_capacity(rule.len());
    let mut sy = Vec::with_capacity(rule.len());
    let mut sz = Vec::with_capacity(rule.len());
    for &(i, j, d) in &rule {
        let mid = (&values[i] + &values[j]).scale_re(0.5);
        sx.push(mid.scale_re(d.x));
        sy.push(mid.scale_re(d.y));
        sz.push(mid.scale_re(d.z));
    }
    CoordinateIntegrals {
        dx: pairwise_sum(&sx, n),
        dy: pairwise_sum(&sy, n),
        dz: pairwise_sum(&sz, n),
    }
}

/// `int_gamma Psi dzeta` by the composite trapezoid rule on the polyline,
/// or the periodic parameter rule when the curve carries tangents.
pub fn curvilinear_integral(
    psi: &dyn Field,
    curve: &Curve3,
    frame: &E3Frame,
    spec: &AlgebraSpec,
) -> Result<AlgElement> {
    let values = eval_nodes(psi, curve)?;
    Ok(coordinate_integrals(&values, curve, spec.n()).combine(frame, spec))
}

/// The 2-forms available for surface integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceForm {
    DxDy,
    DyDz,
    DzDx,
}

impl SurfaceForm {
    /// Signed projected area of the oriented triangle.
    fn area(self, t: &[Point3; 3]) -> f64 {
        let n = (t[1] - t[0]).cross(&(t[2] - t[0]));
        0.5 * match self {
            SurfaceForm::DxDy => n.z,
            SurfaceForm::DyDz => n.x,
            SurfaceForm::DzDx => n.y,
        }
    }
}

/// An oriented triangulated surface; the boundary is read off the mesh.
#[derive(Debug, Clone)]
pub struct Surface3 {
    triangles: Vec<[Point3; 3]>,
    boundary: Vec<Point3>,
}

type VertexKey = [i64; 3];

fn vertex_key(p: Point3) -> VertexKey {
    let q = |v: f64| (v * 1e12).round() as i64;
    [q(p.x), q(p.y), q(p.z)]
}

impl Surface3 {
    /// Checks edge parity (every interior edge used once in each direction)
    /// and that the boundary edges form a single closed loop.
    pub fn new(triangles: Vec<[Point3; 3]>) -> Result<Self> {
        if triangles.is_empty() {
            return Err(Error::InvalidSurface("no triangles".into()));
        }
        let mut directed: HashMap<(VertexKey, VertexKey), usize> = HashMap::new();
        let mut coords: HashMap<VertexKey, Point3> = HashMap::new();
        for t in &triangles {
            for i in 0..3 {
                let (a, b) = (t[i], t[(i + 1) % 3]);
                let (ka, kb) = (vertex_key(a), vertex_key(b));
                coords.entry(ka).or_insert(a);
                coords.entry(kb).or_insert(b);
                *directed.entry((ka, kb)).or_insert(0) += 1;
            }
        }
        let mut next: HashMap<VertexKey, VertexKey> = HashMap::new();
        for (&(a, b), &count) in &directed {
            if count > 1 {
                return Err(Error::InvalidSurface(
                    "edge used twice with the same orientation".into(),
                ));
            }
            if !directed.contains_key(&(b, a)) && next.insert(a, b).is_some() {
                return Err(Error::InvalidSurface(
                    "boundary is not a simple loop".into(),
                ));
            }
        }
        if next.is_empty() {
            return Err(Error::InvalidSurface("surface has no boundary".into()));
        }
        // start from the smallest key so the loop is reproducible
        let start = *next.keys().min().expect("nonempty");
        let mut boundary = vec![coords[&start]];
        let mut cur = start;
        loop {
            cur = *next
                .get(&cur)
                .ok_or_else(|| Error::InvalidSurface("boundary loop is open".into()))?;
            boundary.push(coords[&cur]);
            if cur == start {
                break;
            }
            if boundary.len() > next.len() + 1 {
                return Err(Error::InvalidSurface("boundary loop does not close".into()));
            }
        }
        if boundary.len() != next.len() + 1 {
            return Err(Error::InvalidSurface(
                "boundary splits into several loops".into(),
            ));
        }
        Ok(Surface3 {
            triangles,
            boundary,
        })
    }

    /// Triangle `(p1, p2, p3)` subdivided into `k^2` congruent triangles with
    /// the same orientation.
    pub fn triangle(p1: Point3, p2: Point3, p3: Point3, k: usize) -> Result<Self> {
        let k = k.max(1);
        let v = |i: usize, j: usize| {
            p1 + (p2 - p1) * (i as f64 / k as f64) + (p3 - p1) * (j as f64 / k as f64)
        };
        let mut tris = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k - i {
                tris.push([v(i, j), v(i + 1, j), v(i, j + 1)]);
                if i + j + 2 <= k {
                    tris.push([v(i + 1, j), v(i + 1, j + 1), v(i, j + 1)]);
                }
            }
        }
        Self::new(tris)
    }

    pub fn triangles(&self) -> &[[Point3; 3]] {
        &self.triangles
    }

    /// Boundary vertices in order, first repeated at the end.
    pub fn boundary_vertices(&self) -> &[Point3] {
        &self.boundary
    }

    /// Boundary loop with each mesh edge further split into `refine` parts.
    pub fn boundary_curve(&self, refine: usize) -> Result<Curve3> {
        let verts = &self.boundary[..self.boundary.len() - 1];
        Curve3::polygon(verts, refine)
    }
}

#[derive(Debug, Clone)]
pub struct SurfaceIntegral {
    pub value: AlgElement,
    /// Zero-area triangles that were skipped.
    pub skipped_degenerate: usize,
}

/// `int_Sigma Psi dx dy` (or `dy dz`, `dz dx`) by the midpoint rule per triangle.
pub fn surface_integral(
    psi: &dyn Field,
    surf: &Surface3,
    form: SurfaceForm,
    spec: &AlgebraSpec,
) -> Result<SurfaceIntegral> {
    let parts = surf
        .triangles()
        .par_iter()
        .map(|t| {
            let full = (t[1] - t[0]).cross(&(t[2] - t[0])).norm();
            if full == 0.0 {
                return Ok(None);
            }
            let c = (t[0] + t[1] + t[2]) * (1.0 / 3.0);
            let area = form.area(t);
            psi.eval(c).map(|v| Some(v.scale_re(area))).map_err(|e| e.at(c))
        })
        .collect::<Result<Vec<_>>>()?;
    let skipped = parts.iter().filter(|p| p.is_none()).count();
    let values: Vec<AlgElement> = parts.into_iter().flatten().collect();
    Ok(SurfaceIntegral {
        value: pairwise_sum(&values, spec.n()),
        skipped_degenerate: skipped,
    })
}

/// Default central-difference step at `p`.
pub fn default_step(p: Point3) -> f64 {
    1e-5 * (1.0 + p.norm())
}

/// Partial derivatives `(d/dx, d/dy, d/dz)` by central differences with
/// step `h * (1 + |p|)`; `None` uses [`default_step`].
pub fn partials(
    phi: &dyn Field,
    p: Point3,
    h: Option<f64>,
) -> Result<[AlgElement; 3]> {
    let step = match h {
        Some(h) => h,
        None => default_step(p),
    };
    let dirs = [
        Point3::new(step, 0.0, 0.0),
        Point3::new(0.0, step, 0.0),
        Point3::new(0.0, 0.0, step),
    ];
    let mut out = Vec::with_capacity(3);
    for d in dirs {
        let eval = |q: Point3| {
            phi.eval(q).map_err(|e| {
                Error::Domain(format!(
                    "stencil point ({}, {}, {}) is not evaluable: {e}",
                    q.x, q.y, q.z
                ))
            })
        };
        let fp = eval(p + d)?;
        let fm = eval(p - d)?;
        out.push((&fp - &fm).scale_re(0.5 / step));
    }
    let [a, b, c]: [AlgElement; 3] = out.try_into().expect("three partials");
    Ok([a, b, c])
}

#[derive(Debug, Clone)]
pub struct StokesSides {
    /// `int_{d Sigma} Phi dzeta`
    pub boundary: AlgElement,
    /// The surface side: `(Phi_x e_2 - Phi_y) dxdy + (Phi_y e_3 - Phi_z e_2) dydz + (Phi_z - Phi_x e_3) dzdx`.
    pub surface: AlgElement,
}

impl StokesSides {
    pub fn residual(&self) -> f64 {
        (&self.boundary - &self.surface).norm()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct StokesOptions {
    /// Pieces per mesh boundary edge for the curvilinear side.
    pub boundary_refine: usize,
    /// Absolute difference step; `None` uses [`default_step`] per point.
    pub step: Option<f64>,
}

impl Default for StokesOptions {
    fn default() -> Self {
        StokesOptions {
            boundary_refine: 64,
            step: None,
        }
    }
}

/// Both sides of the Stokes analogue over `surf`.
pub fn stokes_sides(
    phi: &dyn Field,
    surf: &Surface3,
    frame: &E3Frame,
    spec: &AlgebraSpec,
    opts: StokesOptions,
) -> Result<StokesSides> {
    let boundary_curve = surf.boundary_curve(opts.boundary_refine)?;
    let boundary = curvilinear_integral(phi, &boundary_curve, frame, spec)?;
    let (e2, e3) = (frame.e2(), frame.e3());
    let pieces = surf
        .triangles()
        .par_iter()
        .map(|t| {
            let c = (t[0] + t[1] + t[2]) * (1.0 / 3.0);
            let [px, py, pz] = partials(phi, c, opts.step)?;
            let wxy = &spec.mul(&px, &e2) - &py;
            let wyz = &spec.mul(&py, &e3) - &spec.mul(&pz, &e2);
            let wzx = &pz - &spec.mul(&px, &e3);
            Ok(&(&wxy.scale_re(SurfaceForm::DxDy.area(t))
                + &wyz.scale_re(SurfaceForm::DyDz.area(t)))
                + &wzx.scale_re(SurfaceForm::DzDx.area(t)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StokesSides {
        boundary,
        surface: pairwise_sum(&pieces, spec.n()),
    })
}

/// `|| LHS - RHS ||` of the Stokes analogue.
pub fn stokes_residual(
    phi: &dyn Field,
    surf: &Surface3,
    frame: &E3Frame,
    spec: &AlgebraSpec,
    opts: StokesOptions,
) -> Result<f64> {
    Ok(stokes_sides(phi, surf, frame, spec, opts)?.residual())
}

/// `int_{d Delta} Phi dzeta` over the oriented triangle boundary.
pub fn morera_functional(
    phi: &dyn Field,
    triangle: [Point3; 3],
    frame: &E3Frame,
    spec: &AlgebraSpec,
    per_edge: usize,
) -> Result<AlgElement> {
    let [a, b, c] = triangle;
    if a == b || b == c || c == a {
        return Ok(spec.zero());
    }
    let curve = Curve3::triangle(a, b, c, per_edge)?;
    curvilinear_integral(phi, &curve, frame, spec)
}

#[derive(Debug, Clone, Serialize)]
pub struct MoreraScan {
    pub max_norm: f64,
    pub worst_triangle: usize,
    pub triangles: usize,
}

/// Evaluates the Morera functional on every triangle and reports the maximum.
pub fn morera_scan(
    phi: &dyn Field,
    triangles: &[[Point3; 3]],
    frame: &E3Frame,
    spec: &AlgebraSpec,
    per_edge: usize,
) -> Result<MoreraScan> {
    let mut scan = MoreraScan {
        max_norm: 0.0,
        worst_triangle: 0,
        triangles: triangles.len(),
    };
    for (i, t) in triangles.iter().enumerate() {
        let norm = morera_functional(phi, *t, frame, spec, per_edge)?.norm();
        if norm > scan.max_norm {
            scan.max_norm = norm;
            scan.worst_triangle = i;
        }
    }
    Ok(scan)
}

/// Certified constant for `|| int Psi dzeta || <= c int ||Psi|| |dp|`.
///
/// `c = sqrt(3n) * max(1, c_2, c_3)` with `c_s = max_k ||e_s I_k||`: the
/// coordinate sums are bounded by `sqrt(n) ||Psi||` (Cauchy-Schwarz) and
/// `|dx| + |dy| + |dz| <= sqrt(3) |dp|`.
pub fn norm_bound_constant(frame: &E3Frame, spec: &AlgebraSpec) -> f64 {
    let cs = |e: &AlgElement| {
        (1..=spec.n())
            .map(|k| spec.mul(e, &spec.basis(k)).norm())
            .fold(0.0, f64::max)
    };
    let c = 1f64.max(cs(&frame.e2())).max(cs(&frame.e3()));
    (3.0 * spec.n() as f64).sqrt() * c
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct NormInequality {
    pub lhs: f64,
    pub rhs: f64,
    pub c_used: f64,
}

impl NormInequality {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs * (1.0 + 1e-12) + 1e-300
    }
}

/// Both sides of the norm inequality, with `|dzeta|` measured as the
/// parameter-space arc length.
pub fn norm_inequality_check(
    psi: &dyn Field,
    curve: &Curve3,
    frame: &E3Frame,
    spec: &AlgebraSpec,
) -> Result<NormInequality> {
    let values = eval_nodes(psi, curve)?;
    let lhs = coordinate_integrals(&values, curve, spec.n())
        .combine(frame, spec)
        .norm();
    let weights: Vec<f64> = curve
        .quadrature()
        .iter()
        .map(|&(i, j, d)| 0.5 * (values[i].norm() + values[j].norm()) * d.norm())
        .collect();
    let c = norm_bound_constant(frame, spec);
    Ok(NormInequality {
        lhs,
        rhs: c * pairwise_sum_f64(&weights),
        c_used: c,
    })
}
