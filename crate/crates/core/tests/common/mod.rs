#![allow(dead_code)]

use e3calc::{AlgElement, AlgebraSpec, Complex64, E3Frame, Point3, Result};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_complex(rng: &mut ChaCha8Rng, scale: f64) -> Complex64 {
    c(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

/// Uniform point in `[-r, r]^3` with every `|xi_u| >= margin`.
pub fn random_point(rng: &mut ChaCha8Rng, frame: &E3Frame, r: f64, margin: f64) -> Point3 {
    loop {
        let p = Point3::new(
            rng.gen_range(-r..r),
            rng.gen_range(-r..r),
            rng.gen_range(-r..r),
        );
        if frame.xi_values(p).iter().all(|x| x.norm() >= margin) {
            return p;
        }
    }
}

pub fn random_element(rng: &mut ChaCha8Rng, spec: &AlgebraSpec) -> AlgElement {
    AlgElement::from_coeffs((0..spec.n()).map(|_| random_complex(rng, 1.0)).collect())
}

/// Random frame with `b_u = 0` and `Im a_u` in `[0.5, 1.5]`, so the unit
/// circle in the `(x, y)`-plane embraces every `L_u` once. Nilpotent
/// components are random, or zero where `zero_nilpotent(k)` holds.
pub fn random_frame(
    rng: &mut ChaCha8Rng,
    spec: &AlgebraSpec,
    zero_nilpotent: impl Fn(usize) -> bool,
) -> E3Frame {
    let mut a = Vec::with_capacity(spec.n());
    let mut b = Vec::with_capacity(spec.n());
    for k in 1..=spec.n() {
        if k <= spec.m() {
            a.push(c(rng.gen_range(-0.3..0.3), rng.gen_range(0.5..1.5)));
            b.push(c(0.0, 0.0));
        } else if zero_nilpotent(k) {
            a.push(c(0.0, 0.0));
            b.push(c(0.0, 0.0));
        } else {
            a.push(random_complex(rng, 1.0));
            b.push(random_complex(rng, 1.0));
        }
    }
    E3Frame::new(spec, a, b).expect("frame dimensions")
}

pub fn rel_err(a: &AlgElement, b: &AlgElement) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

pub fn zeta_power(frame: &E3Frame, spec: &AlgebraSpec, p: Point3, k: usize) -> AlgElement {
    let z = frame.zeta(p);
    let mut out = spec.unit();
    for _ in 0..k {
        out = spec.mul(&out, &z);
    }
    out
}

/// `zeta^k` as a field.
pub fn power_field<'a>(
    frame: &'a E3Frame,
    spec: &'a AlgebraSpec,
    k: usize,
) -> impl Fn(Point3) -> Result<AlgElement> + Sync + 'a {
    move |p| Ok(zeta_power(frame, spec, p, k))
}

pub fn inverse_field<'a>(
    frame: &'a E3Frame,
    spec: &'a AlgebraSpec,
) -> impl Fn(Point3) -> Result<AlgElement> + Sync + 'a {
    move |p| spec.invert_direct(&frame.zeta(p))
}
