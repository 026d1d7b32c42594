//! Numerical calculus of monogenic functions on three-dimensional real
//! subspaces `E_3` of commutative associative algebras over C.
//!
//! The crate covers algebra arithmetic from structure constants, two
//! independent inversion paths (linear solve and the resolvent recurrence),
//! curvilinear and surface integrals over `E_3`, monogenic functions built
//! from holomorphic data by contour integration, and the analysis of the
//! constant `lambda` appearing in the Cauchy integral formula.

pub mod algebra;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod integration;
pub mod io;
pub mod lambda;
pub mod monogenic;
pub mod resolvent;

pub use algebra::{AlgElement, AlgebraSpec, GammaEntry, ValidationReport, Violation};
pub use error::{Error, Result};
pub use geometry::{E3Frame, Point3};
pub use integration::{Curve3, Field, Plane, Surface3};
pub use monogenic::{HoloFunction, MonogenicSpec};
pub use num_complex::Complex64;
