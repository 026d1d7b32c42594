//! Commutative associative algebras `A_n^m` over C given by a Cartan basis.
//!
//! The basis `I_1, ..., I_n` splits into `m` idempotents (`I_u I_u = I_u`,
//! `I_u I_v = 0` for `u != v`) and `n - m` nilpotents. Each nilpotent `I_s`
//! belongs to exactly one idempotent `I_{u_s}` (`I_{u_s} I_s = I_s`, other
//! idempotents annihilate it), and nilpotents multiply through structure
//! constants that only reach strictly higher indices:
//!
//! ```text
//! I_r I_s = sum_{k > max(r, s)} gamma(r, s, k) I_k
//! ```
//!
//! `gamma(a, c, b)` is the coefficient of `I_b` in `I_a I_c`. All indices
//! are 1-based.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Defect above which an associativity or unit check is reported.
const RULE_TOL: f64 = 1e-12;

/// An element `sum_k c_k I_k` of `A_n^m`.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlgElement {
    coeffs: Vec<Complex64>,
}

impl AlgElement {
    pub fn zero(n: usize) -> Self {
        AlgElement {
            coeffs: vec![ZERO; n],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Self {
        AlgElement { coeffs }
    }

    /// Basis vector `I_k` (1-based).
    pub fn basis(n: usize, k: usize) -> Self {
        let mut e = Self::zero(n);
        e.coeffs[k - 1] = ONE;
        e
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of `I_k` (1-based).
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs[k - 1]
    }

    pub fn set_coeff(&mut self, k: usize, value: Complex64) {
        self.coeffs[k - 1] = value;
    }

    pub fn scale(&self, c: Complex64) -> Self {
        AlgElement {
            coeffs: self.coeffs.iter().map(|&x| x * c).collect(),
        }
    }

    pub fn scale_re(&self, c: f64) -> Self {
        AlgElement {
            coeffs: self.coeffs.iter().map(|&x| x * c).collect(),
        }
    }

    /// Euclidean norm over the `2n` real coordinates w.r.t. `{I_k, i I_k}`.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest coordinate modulus.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    fn check_dim(&self, other: &AlgElement) {
        assert_eq!(
            self.dim(),
            other.dim(),
            "algebra elements of different dimension"
        );
    }
}

impl fmt::Debug for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("AlgElement[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}{:+}i", c.re, c.im)?;
        }
        f.write_str("]")
    }
}

impl Add for &AlgElement {
    type Output = AlgElement;
    fn add(self, rhs: &AlgElement) -> AlgElement {
        self.check_dim(rhs);
        AlgElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Add for AlgElement {
    type Output = AlgElement;
    fn add(self, rhs: AlgElement) -> AlgElement {
        &self + &rhs
    }
}

impl Sub for &AlgElement {
    type Output = AlgElement;
    fn sub(self, rhs: &AlgElement) -> AlgElement {
        self.check_dim(rhs);
        AlgElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Sub for AlgElement {
    type Output = AlgElement;
    fn sub(self, rhs: AlgElement) -> AlgElement {
        &self - &rhs
    }
}

impl AddAssign<&AlgElement> for AlgElement {
    fn add_assign(&mut self, rhs: &AlgElement) {
        self.check_dim(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&AlgElement> for AlgElement {
    fn sub_assign(&mut self, rhs: &AlgElement) {
        self.check_dim(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Neg for &AlgElement {
    type Output = AlgElement;
    fn neg(self) -> AlgElement {
        AlgElement {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for AlgElement {
    type Output = AlgElement;
    fn neg(self) -> AlgElement {
        -&self
    }
}

impl Mul<Complex64> for &AlgElement {
    type Output = AlgElement;
    fn mul(self, rhs: Complex64) -> AlgElement {
        self.scale(rhs)
    }
}

impl Mul<f64> for &AlgElement {
    type Output = AlgElement;
    fn mul(self, rhs: f64) -> AlgElement {
        self.scale_re(rhs)
    }
}

/// One entry of the structure-constant table, `gamma(r, s, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaEntry {
    pub r: usize,
    pub s: usize,
    pub k: usize,
    pub value: Complex64,
}

/// Multiplication table of `A_n^m`.
///
/// Construction only checks structure (index ranges). Whether the table
/// actually defines a commutative associative algebra is answered by
/// [`AlgebraSpec::validate`].
#[derive(Debug, Clone)]
pub struct AlgebraSpec {
    name: String,
    n: usize,
    m: usize,
    u_map: Vec<usize>,
    gamma: BTreeMap<(usize, usize, usize), Complex64>,
    // products[i][j] = sparse expansion of I_{i+1} I_{j+1}
    products: Vec<Vec<Vec<(usize, Complex64)>>>,
}

impl AlgebraSpec {
    /// `u_map[s - m - 1] = u_s` for `s = m+1..=n`.
    pub fn new(
        name: impl Into<String>,
        n: usize,
        m: usize,
        u_map: Vec<usize>,
        gamma: impl IntoIterator<Item = GammaEntry>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Structural("n must be at least 1".into()));
        }
        if m == 0 || m > n {
            return Err(Error::Structural(format!(
                "m = {m} must satisfy 1 <= m <= n = {n}"
            )));
        }
        if u_map.len() != n - m {
            return Err(Error::Structural(format!(
                "u_map has {} entries, expected n - m = {}",
                u_map.len(),
                n - m
            )));
        }
        if let Some(&u) = u_map.iter().find(|&&u| u == 0 || u > m) {
            return Err(Error::Structural(format!(
                "u_map value {u} outside 1..={m}"
            )));
        }
        let mut table = BTreeMap::new();
        for g in gamma {
            for (label, idx) in [("r", g.r), ("s", g.s), ("k", g.k)] {
                if idx == 0 || idx > n {
                    return Err(Error::Structural(format!(
                        "gamma index {label} = {idx} outside 1..={n}"
                    )));
                }
            }
            if g.value != ZERO {
                *table.entry((g.r, g.s, g.k)).or_insert(ZERO) += g.value;
            }
        }
        let mut spec = AlgebraSpec {
            name: name.into(),
            n,
            m,
            u_map,
            gamma: table,
            products: Vec::new(),
        };
        spec.products = spec.build_products();
        Ok(spec)
    }

    /// Adds `gamma(r, s, k)` and `gamma(s, r, k)` for each listed product.
    pub fn symmetric_entries(
        list: &[(usize, usize, usize, Complex64)],
    ) -> Vec<GammaEntry> {
        let mut out = Vec::new();
        for &(r, s, k, value) in list {
            out.push(GammaEntry { r, s, k, value });
            if r != s {
                out.push(GammaEntry {
                    r: s,
                    s: r,
                    k,
                    value,
                });
            }
        }
        out
    }

    fn build_products(&self) -> Vec<Vec<Vec<(usize, Complex64)>>> {
        let (n, m) = (self.n, self.m);
        let mut products = vec![vec![Vec::new(); n]; n];
        for r in 1..=n {
            for s in 1..=n {
                let entry = &mut products[r - 1][s - 1];
                match (r <= m, s <= m) {
                    (true, true) => {
                        if r == s {
                            entry.push((r, ONE));
                        }
                    }
                    (true, false) => {
                        if self.u(s) == r {
                            entry.push((s, ONE));
                        }
                    }
                    (false, true) => {
                        if self.u(r) == s {
                            entry.push((r, ONE));
                        }
                    }
                    (false, false) => {
                        for (&(_, _, k), &v) in self.gamma.range((r, s, 1)..=(r, s, n)) {
                            entry.push((k, v));
                        }
                    }
                }
            }
        }
        products
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Range of nilpotent indices `m+1..=n`.
    pub fn nilpotents(&self) -> std::ops::RangeInclusive<usize> {
        self.m + 1..=self.n
    }

    /// `u_s` for a nilpotent index `s`.
    pub fn u(&self, s: usize) -> usize {
        self.u_map[s - self.m - 1]
    }

    pub fn u_map(&self) -> &[usize] {
        &self.u_map
    }

    /// Idempotent owning basis index `k`: `k` itself for `k <= m`, else `u_k`.
    pub fn owner(&self, k: usize) -> usize {
        if k <= self.m {
            k
        } else {
            self.u(k)
        }
    }

    /// Structure constant `gamma(r, s, k)`; zero if absent.
    pub fn gamma(&self, r: usize, s: usize, k: usize) -> Complex64 {
        self.gamma.get(&(r, s, k)).copied().unwrap_or(ZERO)
    }

    /// `Upsilon_{a,b}^c`, the coefficient of `I_b` in `I_a I_c`.
    pub fn upsilon(&self, a: usize, b: usize, c: usize) -> Complex64 {
        self.gamma(a, c, b)
    }

    pub fn gamma_entries(&self) -> impl Iterator<Item = GammaEntry> + '_ {
        self.gamma
            .iter()
            .map(|(&(r, s, k), &value)| GammaEntry { r, s, k, value })
    }

    pub fn has_zero_nilpotent_products(&self) -> bool {
        let nil = self.nilpotents();
        self.gamma
            .keys()
            .all(|&(r, s, _)| !(nil.contains(&r) && nil.contains(&s)))
    }

    /// The unit `sum_{u <= m} I_u`.
    pub fn unit(&self) -> AlgElement {
        let mut e = AlgElement::zero(self.n);
        for u in 1..=self.m {
            e.set_coeff(u, ONE);
        }
        e
    }

    pub fn zero(&self) -> AlgElement {
        AlgElement::zero(self.n)
    }

    pub fn basis(&self, k: usize) -> AlgElement {
        AlgElement::basis(self.n, k)
    }

    pub fn element(&self, coeffs: Vec<Complex64>) -> Result<AlgElement> {
        if coeffs.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: coeffs.len(),
            });
        }
        Ok(AlgElement::from_coeffs(coeffs))
    }

    /// Bilinear product, checking dimensions.
    pub fn multiply(&self, a: &AlgElement, b: &AlgElement) -> Result<AlgElement> {
        for x in [a, b] {
            if x.dim() != self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    found: x.dim(),
                });
            }
        }
        Ok(self.mul(a, b))
    }

    /// Bilinear product. Panics if the operands have the wrong dimension.
    pub fn mul(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        assert!(a.dim() == self.n && b.dim() == self.n);
        let mut out = vec![ZERO; self.n];
        for (i, &ai) in a.coeffs.iter().enumerate() {
            if ai == ZERO {
                continue;
            }
            for (j, &bj) in b.coeffs.iter().enumerate() {
                if bj == ZERO {
                    continue;
                }
                let ab = ai * bj;
                for &(k, g) in &self.products[i][j] {
                    out[k - 1] += ab * g;
                }
            }
        }
        AlgElement::from_coeffs(out)
    }

    /// `I_r I_s` as an element.
    pub fn basis_product(&self, r: usize, s: usize) -> AlgElement {
        let mut e = self.zero();
        for &(k, g) in &self.products[r - 1][s - 1] {
            let c = e.coeff(k) + g;
            e.set_coeff(k, c);
        }
        e
    }

    /// The functional `f_u`: coefficient of `I_u`.
    pub fn functional(&self, u: usize, a: &AlgElement) -> Result<Complex64> {
        if u == 0 || u > self.m {
            return Err(Error::IndexOutOfRange {
                what: "functional",
                index: u,
                max: self.m,
            });
        }
        if a.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: a.dim(),
            });
        }
        Ok(a.coeff(u))
    }

    /// Matrix of `x -> a x` in the basis `{I_k}`.
    pub fn multiplication_matrix(&self, a: &AlgElement) -> DMatrix<Complex64> {
        let n = self.n;
        let mut mat = DMatrix::from_element(n, n, ZERO);
        for (i, &ai) in a.coeffs.iter().enumerate() {
            if ai == ZERO {
                continue;
            }
            for j in 0..n {
                for &(k, g) in &self.products[i][j] {
                    mat[(k - 1, j)] += ai * g;
                }
            }
        }
        mat
    }

    /// Inverse by a dense LU solve of `L_a x = 1`.
    ///
    /// This path knows nothing about the closed-form resolvent and serves as
    /// the reference for it.
    pub fn invert_direct(&self, a: &AlgElement) -> Result<AlgElement> {
        if a.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: a.dim(),
            });
        }
        let scale = a.max_abs().max(f64::MIN_POSITIVE);
        for u in 1..=self.m {
            if a.coeff(u).norm() <= 1e-14 * scale {
                return Err(Error::NonInvertible { u });
            }
        }
        let mat = self.multiplication_matrix(a);
        let rhs = DVector::from_vec(self.unit().into_coeffs());
        let x = mat
            .lu()
            .solve(&rhs)
            .ok_or_else(|| Error::Singular("multiplication matrix is singular".into()))?;
        Ok(AlgElement::from_coeffs(x.iter().copied().collect()))
    }

    /// Checks every multiplication rule and lists all violations.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let (n, m) = (self.n, self.m);

        for (&(r, s, k), &v) in &self.gamma {
            if r <= m || s <= m {
                violations.push(Violation::NonNilpotentIndex { r, s, k });
                continue;
            }
            if k <= r.max(s) {
                violations.push(Violation::NonIncreasingIndex { r, s, k });
            }
            if r != s && (self.gamma(s, r, k) - v).norm() > 0.0 {
                // report each unordered pair once
                if r < s || !self.gamma.contains_key(&(s, r, k)) {
                    violations.push(Violation::AsymmetricGamma {
                        r,
                        s,
                        k,
                        forward: v,
                        backward: self.gamma(s, r, k),
                    });
                }
            }
        }

        let unit = self.unit();
        for k in 1..=n {
            let e = self.basis(k);
            let left = (&self.mul(&unit, &e) - &e).norm();
            let right = (&self.mul(&e, &unit) - &e).norm();
            if left.max(right) > RULE_TOL {
                violations.push(Violation::UnitFailure {
                    k,
                    defect: left.max(right),
                });
            }
        }

        let nil: Vec<usize> = self.nilpotents().collect();
        for &r in &nil {
            for &s in &nil {
                let rs = self.basis_product(r, s);
                for &p in &nil {
                    let left = self.mul(&rs, &self.basis(p));
                    let right = self.mul(&self.basis(r), &self.basis_product(s, p));
                    let defect = (&left - &right).norm();
                    if defect > RULE_TOL {
                        violations.push(Violation::AssociativityA1 { r, s, p, defect });
                    }
                }
            }
        }
        for u in 1..=m {
            for &s in &nil {
                let us = self.basis_product(u, s);
                for &p in &nil {
                    let left = self.mul(&us, &self.basis(p));
                    let right = self.mul(&self.basis(u), &self.basis_product(s, p));
                    let defect = (&left - &right).norm();
                    if defect > RULE_TOL {
                        violations.push(Violation::AssociativityA2 { u, s, p, defect });
                    }
                }
            }
        }

        if let Some(length) = self.nilpotency_defect() {
            violations.push(Violation::NilpotencyFailure { length });
        }

        ValidationReport { violations }
    }

    /// Returns `Some(n - m + 1)` if some product of that many nilpotent basis
    /// vectors is nonzero.
    fn nilpotency_defect(&self) -> Option<usize> {
        let nil: Vec<usize> = self.nilpotents().collect();
        if nil.is_empty() {
            return None;
        }
        let length = nil.len() + 1;
        // spanning set of N^j, kept reduced
        let mut span: Vec<AlgElement> = nil.iter().map(|&s| self.basis(s)).collect();
        for _ in 1..length {
            let next: Vec<AlgElement> = span
                .iter()
                .flat_map(|v| nil.iter().map(move |&s| (v, s)))
                .map(|(v, s)| self.mul(v, &self.basis(s)))
                .collect();
            span = reduce_span(next, 1e-12);
            if span.is_empty() {
                return None;
            }
        }
        Some(length)
    }

    /// Proposition checks on `u_map`.
    pub fn check_propositions(&self) -> PropositionReport {
        let prop1_applies = self.u_map.windows(2).all(|w| w[0] == w[1]);
        let mut sorted = self.u_map.clone();
        sorted.sort_unstable();
        let prop2_applies = sorted.windows(2).all(|w| w[0] != w[1]);
        let mut contradictions = Vec::new();
        if prop2_applies {
            for r in self.nilpotents() {
                for s in self.nilpotents() {
                    if r <= s && self.basis_product(r, s).norm() > 0.0 {
                        contradictions.push((r, s));
                    }
                }
            }
        }
        PropositionReport {
            prop1_applies,
            prop2_applies,
            contradictions,
        }
    }
}

/// Gaussian elimination on coefficient vectors; returns a basis of their span.
fn reduce_span(vectors: Vec<AlgElement>, tol: f64) -> Vec<AlgElement> {
    let mut basis: Vec<(usize, AlgElement)> = Vec::new();
    for mut v in vectors {
        for (pivot, b) in &basis {
            let c = v.coeffs[*pivot];
            if c != ZERO {
                v -= &b.scale(c);
            }
        }
        let (pivot, c) = v
            .coeffs
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .map(|(i, c)| (i, *c))
            .expect("nonempty vector");
        if c.norm() > tol {
            let v = v.scale(c.inv());
            for (_, b) in basis.iter_mut() {
                let bc = b.coeffs[pivot];
                if bc != ZERO {
                    *b -= &v.scale(bc);
                }
            }
            basis.push((pivot, v));
        }
    }
    basis.into_iter().map(|(_, v)| v).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Violation {
    AsymmetricGamma {
        r: usize,
        s: usize,
        k: usize,
        forward: Complex64,
        backward: Complex64,
    },
    /// `gamma(r, s, k)` with `k <= max(r, s)`.
    NonIncreasingIndex { r: usize, s: usize, k: usize },
    /// `gamma(r, s, k)` with `r` or `s` an idempotent index.
    NonNilpotentIndex { r: usize, s: usize, k: usize },
    AssociativityA1 {
        r: usize,
        s: usize,
        p: usize,
        defect: f64,
    },
    AssociativityA2 {
        u: usize,
        s: usize,
        p: usize,
        defect: f64,
    },
    UnitFailure { k: usize, defect: f64 },
    NilpotencyFailure { length: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::AsymmetricGamma {
                r,
                s,
                k,
                forward,
                backward,
            } => write!(
                f,
                "gamma({r},{s},{k}) = {forward} but gamma({s},{r},{k}) = {backward}"
            ),
            Violation::NonIncreasingIndex { r, s, k } => {
                write!(f, "gamma({r},{s},{k}) has k <= max(r, s)")
            }
            Violation::NonNilpotentIndex { r, s, k } => {
                write!(f, "gamma({r},{s},{k}) uses an idempotent index")
            }
            Violation::AssociativityA1 { r, s, p, defect } => {
                write!(f, "(A1) fails for ({r},{s},{p}), defect {defect:e}")
            }
            Violation::AssociativityA2 { u, s, p, defect } => {
                write!(f, "(A2) fails for ({u},{s},{p}), defect {defect:e}")
            }
            Violation::UnitFailure { k, defect } => {
                write!(f, "unit does not fix I_{k}, defect {defect:e}")
            }
            Violation::NilpotencyFailure { length } => {
                write!(f, "a product of {length} nilpotent basis vectors is nonzero")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropositionReport {
    /// All nilpotents share one idempotent, so (A2) holds automatically.
    pub prop1_applies: bool,
    /// All `u_s` are distinct, so every nilpotent product must vanish.
    pub prop2_applies: bool,
    /// Nilpotent pairs `(r, s)` with `I_r I_s != 0` although all owners differ.
    pub contradictions: Vec<(usize, usize)>,
}
