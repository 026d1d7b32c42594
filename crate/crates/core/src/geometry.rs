//! The real subspace `E_3 = span_R{1, e_2, e_3}` and the parameter space R^3.

use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, Matrix2x3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgElement, AlgebraSpec};
use crate::error::{Error, Result};

/// Relative singular-value cutoff for rank decisions.
const RANK_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3 {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn dot(&self, other: &Point3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Point3) -> Point3 {
        Point3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[f64; 3]> for Point3 {
    fn from(v: [f64; 3]) -> Self {
        Point3::new(v[0], v[1], v[2])
    }
}

impl Add for Point3 {
    type Output = Point3;
    fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;
    fn mul(self, s: f64) -> Point3 {
        Point3::new(self.x * s, self.y * s, self.z * s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "warning", rename_all = "snake_case")]
pub enum FrameWarning {
    /// `{1, e_2, e_3}` is not linearly independent over R.
    RankDeficient { rank: usize },
    /// `f_u(E_3) != C`: both `a_u` and `b_u` are real.
    NotSurjective { u: usize },
}

/// The generators `e_2 = sum a_k I_k` and `e_3 = sum b_k I_k`; `e_1` is the unit.
#[derive(Debug, Clone)]
pub struct E3Frame {
    algebra: String,
    n: usize,
    m: usize,
    a: Vec<Complex64>,
    b: Vec<Complex64>,
    warnings: Vec<FrameWarning>,
}

impl E3Frame {
    /// Builds a frame over `spec`, recording independence and surjectivity
    /// problems as warnings.
    pub fn new(spec: &AlgebraSpec, a: Vec<Complex64>, b: Vec<Complex64>) -> Result<Self> {
        for v in [&a, &b] {
            if v.len() != spec.n() {
                return Err(Error::DimensionMismatch {
                    expected: spec.n(),
                    found: v.len(),
                });
            }
        }
        let mut frame = E3Frame {
            algebra: spec.name().to_string(),
            n: spec.n(),
            m: spec.m(),
            a,
            b,
            warnings: Vec::new(),
        };
        let rank = frame.real_rank();
        if rank < 3 {
            frame.warnings.push(FrameWarning::RankDeficient { rank });
        }
        for (u, ok) in frame.check_surjectivity().into_iter().enumerate() {
            if !ok {
                frame.warnings.push(FrameWarning::NotSurjective { u: u + 1 });
            }
        }
        Ok(frame)
    }

    pub fn algebra_name(&self) -> &str {
        &self.algebra
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Coefficient `a_k` of `e_2` (1-based).
    pub fn a(&self, k: usize) -> Complex64 {
        self.a[k - 1]
    }

    /// Coefficient `b_k` of `e_3` (1-based).
    pub fn b(&self, k: usize) -> Complex64 {
        self.b[k - 1]
    }

    pub fn a_coeffs(&self) -> &[Complex64] {
        &self.a
    }

    pub fn b_coeffs(&self) -> &[Complex64] {
        &self.b
    }

    pub fn warnings(&self) -> &[FrameWarning] {
        &self.warnings
    }

    pub fn e1(&self) -> AlgElement {
        let mut e = AlgElement::zero(self.n);
        for u in 1..=self.m {
            e.set_coeff(u, Complex64::new(1.0, 0.0));
        }
        e
    }

    pub fn e2(&self) -> AlgElement {
        AlgElement::from_coeffs(self.a.clone())
    }

    pub fn e3(&self) -> AlgElement {
        AlgElement::from_coeffs(self.b.clone())
    }

    /// Strict independence check: an error when `{e_1, e_2, e_3}` has real
    /// rank below 3. Construction only records this as a warning.
    pub fn check_independence(&self) -> Result<()> {
        let rank = self.real_rank();
        if rank < 3 {
            return Err(Error::InvalidInput(format!(
                "e_1, e_2, e_3 are linearly dependent over R (rank {rank})"
            )));
        }
        Ok(())
    }

    /// Rank over R of the `2n x 3` coordinate matrix of `{e_1, e_2, e_3}`.
    pub fn real_rank(&self) -> usize {
        let cols = [self.e1(), self.e2(), self.e3()];
        let mat = DMatrix::from_fn(2 * self.n, 3, |row, col| {
            let c = cols[col].coeffs()[row / 2];
            if row % 2 == 0 {
                c.re
            } else {
                c.im
            }
        });
        let sv = mat.singular_values();
        let max = sv.max();
        sv.iter().filter(|&&s| s > RANK_TOL * max).count()
    }

    /// `zeta = x e_1 + y e_2 + z e_3`.
    pub fn zeta(&self, p: Point3) -> AlgElement {
        let mut coeffs: Vec<Complex64> = self
            .a
            .iter()
            .zip(&self.b)
            .map(|(&a, &b)| a * p.y + b * p.z)
            .collect();
        for c in coeffs.iter_mut().take(self.m) {
            *c += p.x;
        }
        AlgElement::from_coeffs(coeffs)
    }

    /// `dzeta = dx + e_2 dy + e_3 dz` for a displacement.
    pub fn dzeta(&self, d: Point3) -> AlgElement {
        self.zeta(d)
    }

    /// `xi_u = f_u(zeta) = x + y a_u + z b_u` for `u = 1..=m`.
    pub fn xi_values(&self, p: Point3) -> Vec<Complex64> {
        (1..=self.m).map(|u| self.xi(u, p)).collect()
    }

    pub fn xi(&self, u: usize, p: Point3) -> Complex64 {
        p.x + self.a(u) * p.y + self.b(u) * p.z
    }

    /// `T_s = y a_s + z b_s`.
    pub fn t_value(&self, s: usize, p: Point3) -> Complex64 {
        self.a(s) * p.y + self.b(s) * p.z
    }

    /// Per `u`, whether `f_u(E_3) = C`, i.e. `a_u` or `b_u` is non-real.
    pub fn check_surjectivity(&self) -> Vec<bool> {
        (1..=self.m)
            .map(|u| self.a(u).im != 0.0 || self.b(u).im != 0.0)
            .collect()
    }

    /// The sets `L_u = {p : xi_u(p) = 0}`, lines through the origin when
    /// `f_u(E_3) = C`.
    pub fn noninvertibility_lines(&self) -> Vec<NonInvertibleSet> {
        (1..=self.m)
            .map(|u| {
                let (a, b) = (self.a(u), self.b(u));
                let sys = Matrix2x3::new(1.0, a.re, b.re, 0.0, a.im, b.im);
                let sv = sys.singular_values();
                let (smax, smin) = (sv.max(), sv.min());
                let r1 = Point3::new(1.0, a.re, b.re);
                if smin <= RANK_TOL * smax {
                    let normal = r1 * (1.0 / r1.norm());
                    NonInvertibleSet::Plane { u, normal }
                } else {
                    let r2 = Point3::new(0.0, a.im, b.im);
                    let d = r1.cross(&r2);
                    let d = d * (1.0 / d.norm());
                    NonInvertibleSet::Line(Line3 { u, direction: d })
                }
            })
            .collect()
    }

    /// Whether `zeta(p)` is invertible, with `min_u |xi_u|` as a margin.
    pub fn point_invertible(&self, p: Point3) -> (bool, f64) {
        let min = self
            .xi_values(p)
            .iter()
            .map(|x| x.norm())
            .fold(f64::INFINITY, f64::min);
        (min > 0.0, min)
    }
}

/// A line through the origin along which `xi_u` vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Line3 {
    pub u: usize,
    pub direction: Point3,
}

impl Line3 {
    pub fn point(&self, t: f64) -> Point3 {
        self.direction * t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NonInvertibleSet {
    Line(Line3),
    /// Both defining equations are dependent; `xi_u` vanishes on a plane.
    Plane { u: usize, normal: Point3 },
}

impl NonInvertibleSet {
    pub fn line(&self) -> Option<&Line3> {
        match self {
            NonInvertibleSet::Line(l) => Some(l),
            NonInvertibleSet::Plane { .. } => None,
        }
    }
}
