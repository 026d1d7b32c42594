//! JSON file formats for algebras, frames, curves and monogenic data.
//! Complex numbers are always `[re, im]` pairs.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraSpec, GammaEntry};
use crate::error::{Error, Result};
use crate::geometry::E3Frame;
use crate::integration::Curve3;
use crate::monogenic::{HoloFunction, MonogenicSpec};

/// `{"name", "n", "m", "u_map", "gamma": [[r, s, k, re, im], ...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    #[serde(default)]
    pub name: String,
    pub n: usize,
    pub m: usize,
    #[serde(default)]
    pub u_map: Vec<usize>,
    #[serde(default)]
    pub gamma: Vec<(usize, usize, usize, f64, f64)>,
}

impl AlgebraFile {
    pub fn into_spec(self) -> Result<AlgebraSpec> {
        let entries = self.gamma.into_iter().map(|(r, s, k, re, im)| GammaEntry {
            r,
            s,
            k,
            value: Complex64::new(re, im),
        });
        AlgebraSpec::new(self.name, self.n, self.m, self.u_map, entries)
    }

    pub fn from_spec(spec: &AlgebraSpec) -> Self {
        AlgebraFile {
            name: spec.name().to_string(),
            n: spec.n(),
            m: spec.m(),
            u_map: spec.u_map().to_vec(),
            gamma: spec
                .gamma_entries()
                .map(|g| (g.r, g.s, g.k, g.value.re, g.value.im))
                .collect(),
        }
    }
}

/// `{"algebra"?, "a": [[re, im], ...], "b": [[re, im], ...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrameFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
}

impl FrameFile {
    /// Builds the frame, rejecting a file written for a different algebra.
    pub fn into_frame(self, spec: &AlgebraSpec) -> Result<E3Frame> {
        if let Some(name) = &self.algebra {
            if name != spec.name() {
                return Err(Error::InvalidInput(format!(
                    "frame is for algebra '{name}', not '{}'",
                    spec.name()
                )));
            }
        }
        E3Frame::new(spec, self.a, self.b)
    }

    pub fn from_frame(frame: &E3Frame) -> Self {
        FrameFile {
            algebra: Some(frame.algebra_name().to_string()),
            a: frame.a_coeffs().to_vec(),
            b: frame.b_coeffs().to_vec(),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::InvalidInput(format!("cannot read {}: {e}", path.display()))
    })
}

pub fn parse_algebra(text: &str) -> Result<AlgebraSpec> {
    serde_json::from_str::<AlgebraFile>(text)?.into_spec()
}

pub fn read_algebra(path: &Path) -> Result<AlgebraSpec> {
    parse_algebra(&read(path)?)
}

pub fn parse_frame(text: &str, spec: &AlgebraSpec) -> Result<E3Frame> {
    serde_json::from_str::<FrameFile>(text)?.into_frame(spec)
}

pub fn read_frame(path: &Path, spec: &AlgebraSpec) -> Result<E3Frame> {
    parse_frame(&read(path)?, spec)
}

pub fn read_curve(path: &Path) -> Result<Curve3> {
    Ok(serde_json::from_str(&read(path)?)?)
}

pub fn read_monogenic(path: &Path) -> Result<MonogenicSpec> {
    Ok(serde_json::from_str(&read(path)?)?)
}

pub fn parse_holo(text: &str) -> Result<HoloFunction> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_round_trip() {
        let text = r#"{"name": "D", "n": 2, "m": 1, "u_map": [1], "gamma": []}"#;
        let spec = parse_algebra(text).unwrap();
        assert_eq!((spec.n(), spec.m()), (2, 1));
        let back = serde_json::to_string(&AlgebraFile::from_spec(&spec)).unwrap();
        let again = parse_algebra(&back).unwrap();
        assert_eq!(again.name(), "D");
    }

    #[test]
    fn frame_checks_algebra_name() {
        let spec = parse_algebra(r#"{"name": "C2", "n": 2, "m": 2}"#).unwrap();
        let ok = r#"{"algebra": "C2", "a": [[0, 1], [0, 1]], "b": [[1, 0], [-1, 0]]}"#;
        assert!(parse_frame(ok, &spec).is_ok());
        let wrong = r#"{"algebra": "A5", "a": [[0, 1], [0, 1]], "b": [[1, 0], [-1, 0]]}"#;
        assert!(matches!(parse_frame(wrong, &spec), Err(Error::InvalidInput(_))));
        let short = r#"{"a": [[0, 1]], "b": [[1, 0]]}"#;
        assert!(parse_frame(short, &spec).is_err());
    }

    #[test]
    fn curve_file_is_validated() {
        let ok: Curve3 =
            serde_json::from_str(r#"{"points": [[0,0,0],[1,0,0],[0,1,0],[0,0,0]], "closed": true}"#)
                .unwrap();
        assert_eq!(ok.segments(), 3);
        let bad = serde_json::from_str::<Curve3>(r#"{"points": [[0,0,0],[1,0,0]], "closed": true}"#);
        assert!(bad.is_err());
    }
}
