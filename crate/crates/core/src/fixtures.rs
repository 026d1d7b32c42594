//! Bundled algebras, frames and holomorphic data.
//!
//! Tables used (other products of nilpotent basis vectors are zero; each
//! idempotent acts as the identity on the nilpotents it owns):
//!
//! | name             | n | m | nilpotent products            |
//! |------------------|---|---|-------------------------------|
//! | `C2`             | 2 | 2 | none                          |
//! | `A2_radical`     | 3 | 2 | none, `I_3` owned by `I_2`    |
//! | `A3`             | 3 | 1 | `I_2^2 = I_3` (`1, rho, rho^2`) |
//! | `A5`             | 5 | 1 | `I_{j+1} = rho^j`, `rho^5 = 0` |
//! | `J69`            | 5 | 1 | `I_2^2 = I_3`, `I_2 I_4 = I_5` |
//! | `A12_plus_A01sq` | 5 | 1 | `I_2^2 = I_3`                 |
//! | `A12_plus_A12`   | 5 | 1 | `I_2^2 = I_3`, `I_4^2 = I_5`  |
//! | `J71`            | 5 | 1 | `I_2^2 = I_3`, `I_2 I_3 = I_4` |

use num_complex::Complex64;

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::geometry::{E3Frame, Point3};
use crate::integration::{Curve3, Plane};
use crate::io::{parse_algebra, parse_frame, parse_holo};
use crate::monogenic::{HoloFunction, MonogenicSpec};

const ALGEBRAS: &[(&str, &str)] = &[
    ("A12_plus_A01sq", include_str!("../fixtures/v1/algebras/A12_plus_A01sq.json")),
    ("A12_plus_A12", include_str!("../fixtures/v1/algebras/A12_plus_A12.json")),
    ("A2_radical", include_str!("../fixtures/v1/algebras/A2_radical.json")),
    ("A3", include_str!("../fixtures/v1/algebras/A3.json")),
    ("A5", include_str!("../fixtures/v1/algebras/A5.json")),
    ("C2", include_str!("../fixtures/v1/algebras/C2.json")),
    ("J69", include_str!("../fixtures/v1/algebras/J69.json")),
    ("J71", include_str!("../fixtures/v1/algebras/J71.json")),
];

const FRAMES: &[(&str, &str)] = &[
    ("A12_plus_A01sq_frame", include_str!("../fixtures/v1/frames/A12_plus_A01sq_frame.json")),
    ("A12_plus_A12_frame", include_str!("../fixtures/v1/frames/A12_plus_A12_frame.json")),
    ("A2_radical_frame", include_str!("../fixtures/v1/frames/A2_radical_frame.json")),
    ("A3_frame", include_str!("../fixtures/v1/frames/A3_frame.json")),
    ("A5_in_S_frame", include_str!("../fixtures/v1/frames/A5_in_S_frame.json")),
    ("A5_paper_frame", include_str!("../fixtures/v1/frames/A5_paper_frame.json")),
    ("C2_frame", include_str!("../fixtures/v1/frames/C2_frame.json")),
    ("J69_frame", include_str!("../fixtures/v1/frames/J69_frame.json")),
    ("J71_frame", include_str!("../fixtures/v1/frames/J71_frame.json")),
];

const FUNCTIONS: &[(&str, &str)] = &[
    ("exp", include_str!("../fixtures/v1/monogenic/exp.json")),
    ("identity", include_str!("../fixtures/v1/monogenic/identity.json")),
    ("rational", include_str!("../fixtures/v1/monogenic/rational.json")),
    ("square", include_str!("../fixtures/v1/monogenic/square.json")),
    ("unit", include_str!("../fixtures/v1/monogenic/unit.json")),
];

/// Frame used when a fixture is loaded by algebra name.
const DEFAULT_FRAMES: &[(&str, &str)] = &[
    ("A12_plus_A01sq", "A12_plus_A01sq_frame"),
    ("A12_plus_A12", "A12_plus_A12_frame"),
    ("A2_radical", "A2_radical_frame"),
    ("A3", "A3_frame"),
    ("A5", "A5_paper_frame"),
    ("C2", "C2_frame"),
    ("J69", "J69_frame"),
    ("J71", "J71_frame"),
];

/// The four five-dimensional algebras satisfying all product conditions.
pub const FIVE_DIM_EXAMPLES: [&str; 4] = ["J69", "A12_plus_A01sq", "A12_plus_A12", "J71"];

/// Point away from every `L_u` and from `xi_u = xi_l` for all bundled frames.
pub const BASE_POINT: Point3 = Point3 {
    x: 0.3,
    y: 0.2,
    z: 0.5,
};

fn lookup<'a>(table: &'a [(&str, &str)], name: &str) -> Result<&'a str> {
    table
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

pub fn algebra_names() -> Vec<&'static str> {
    ALGEBRAS.iter().map(|(n, _)| *n).collect()
}

pub fn frame_names() -> Vec<&'static str> {
    FRAMES.iter().map(|(n, _)| *n).collect()
}

pub fn function_names() -> Vec<&'static str> {
    FUNCTIONS.iter().map(|(n, _)| *n).collect()
}

/// Bundled algebra, rejected if its table fails validation.
pub fn load_algebra(name: &str) -> Result<AlgebraSpec> {
    let spec = parse_algebra(lookup(ALGEBRAS, name)?)?;
    let report = spec.validate();
    if !report.is_valid() {
        return Err(Error::InvalidInput(format!(
            "bundled algebra '{name}' fails validation: {}",
            report.violations[0]
        )));
    }
    Ok(spec)
}

/// Bundled frame for its algebra.
pub fn load_frame(name: &str, spec: &AlgebraSpec) -> Result<E3Frame> {
    parse_frame(lookup(FRAMES, name)?, spec)
}

/// Algebra that a bundled frame was written for.
pub fn frame_algebra(name: &str) -> Result<&'static str> {
    let text = lookup(FRAMES, name)?;
    let file: crate::io::FrameFile = serde_json::from_str(text)?;
    let algebra = file
        .algebra
        .ok_or_else(|| Error::InvalidInput(format!("frame '{name}' names no algebra")))?;
    ALGEBRAS
        .iter()
        .map(|(n, _)| *n)
        .find(|n| *n == algebra)
        .ok_or(Error::UnknownFixture(algebra))
}

/// Bundled scalar holomorphic function.
pub fn load_function(name: &str) -> Result<HoloFunction> {
    parse_holo(lookup(FUNCTIONS, name)?)
}

/// `F_u = f` for every idempotent, no nilpotent terms.
pub fn uniform_function(spec: &AlgebraSpec, name: &str) -> Result<MonogenicSpec> {
    Ok(MonogenicSpec::uniform(spec.m(), load_function(name)?))
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub frame_name: String,
    pub spec: AlgebraSpec,
    pub frame: E3Frame,
}

impl Fixture {
    /// Representation-built function with the named `F` for every idempotent.
    pub fn monogenic(&self, function: &str) -> Result<MonogenicSpec> {
        uniform_function(&self.spec, function)
    }

    /// The same function with an added nilpotent term `G_{m+1}(t) = t / 2`.
    pub fn monogenic_with_g(&self, function: &str) -> Result<MonogenicSpec> {
        let mut mspec = self.monogenic(function)?;
        if self.spec.n() > self.spec.m() {
            let half = Complex64::new(0.5, 0.0);
            mspec = mspec.with_g(
                self.spec.m() + 1,
                HoloFunction::polynomial(vec![Complex64::new(0.0, 0.0), half]),
            );
        }
        Ok(mspec)
    }
}

/// Loads by algebra name (with its default frame) or by frame name.
pub fn load_fixture(name: &str) -> Result<Fixture> {
    let (algebra, frame_name) = match lookup(DEFAULT_FRAMES, name) {
        Ok(frame) => (name, frame),
        Err(_) => {
            lookup(FRAMES, name)?;
            (frame_algebra(name)?, name)
        }
    };
    let spec = load_algebra(algebra)?;
    let frame = load_frame(frame_name, &spec)?;
    Ok(Fixture {
        name: name.to_string(),
        frame_name: frame_name.to_string(),
        spec,
        frame,
    })
}

/// Every algebra fixture with its default frame, ordered by name.
pub fn all_fixtures() -> Result<Vec<Fixture>> {
    DEFAULT_FRAMES.iter().map(|(n, _)| load_fixture(n)).collect()
}

/// Small triangles near [`BASE_POINT`] in three different orientations,
/// each contractible in the domain of every bundled frame.
pub fn contractible_triangles(size: f64) -> Vec<[Point3; 3]> {
    let b = BASE_POINT;
    let p = |x: f64, y: f64, z: f64| b + Point3::new(x, y, z) * size;
    vec![
        [p(0.0, 0.0, 0.0), p(1.0, 0.0, 0.0), p(0.0, 1.0, 0.0)],
        [p(0.0, 0.0, 0.0), p(0.0, 0.8, 0.3), p(0.2, 0.1, 1.0)],
        [p(-0.5, -0.4, 0.1), p(0.6, -0.2, 0.4), p(0.1, 0.7, -0.5)],
    ]
}

/// Closed triangle loop with `per_edge` pieces per side, see
/// [`contractible_triangles`].
pub fn contractible_loop(size: f64, per_edge: usize) -> Result<Curve3> {
    let [a, b, c] = contractible_triangles(size)[2];
    Curve3::triangle(a, b, c, per_edge)
}

/// Circle in the `(x, y)`-plane around `center`; embraces every `L_u`
/// through `center` once for all bundled frames.
pub fn embracing_circle(center: Point3, radius: f64, nodes: usize) -> Result<Curve3> {
    Curve3::circle(center, radius, Plane::XY, nodes)
}
