//! Closed-form inversion in `E_3`: the resolvent `(t e_1 - zeta)^{-1}` and
//! `zeta^{-1}` expanded over the basis with the `Q` / `Q~` recurrences.
//!
//! With `T_s = y a_s + z b_s` and `B_{r,s} = sum_{k=m+1}^{s-1} T_k Upsilon_{r,s}^k`,
//!
//! ```text
//! Q_{2,s} = T_s,   Q_{k,s} = sum_{r=k+m-2}^{s-1} Q_{k-1,r} B_{r,s}
//! Q~_{2,s} = -T_s, Q~_{k,s} = -sum_{r=k+m-2}^{s-1} Q~_{k-1,r} B_{r,s}
//! ```
//!
//! for `k = 3..=s-m+1`.

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{AlgElement, AlgebraSpec};
use crate::error::{Error, Result};
use crate::geometry::{E3Frame, Point3};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Poles closer than `POLE_TOL * (1 + |t|)` are treated as hits.
pub const POLE_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Serialize)]
pub struct ResolventCoeffs {
    m: usize,
    n: usize,
    xi: Vec<Complex64>,
    t: Vec<Complex64>,
    // b[r - m - 1][s - m - 1]
    b: Vec<Vec<Complex64>>,
    // q[s - m - 1][k - 2] for k = 2..=s-m+1
    q: Vec<Vec<Complex64>>,
    qtilde: Vec<Vec<Complex64>>,
    // owning idempotent of each nilpotent
    owner: Vec<usize>,
}

impl ResolventCoeffs {
    pub fn compute(frame: &E3Frame, p: Point3, spec: &AlgebraSpec) -> Self {
        let (n, m) = (spec.n(), spec.m());
        let nil = n - m;
        let xi = frame.xi_values(p);
        let t: Vec<Complex64> = spec.nilpotents().map(|s| frame.t_value(s, p)).collect();

        let mut b = vec![vec![ZERO; nil]; nil];
        for r in spec.nilpotents() {
            for s in spec.nilpotents() {
                let mut acc = ZERO;
                for k in m + 1..s {
                    let g = spec.upsilon(r, s, k);
                    if g != ZERO {
                        acc += t[k - m - 1] * g;
                    }
                }
                b[r - m - 1][s - m - 1] = acc;
            }
        }

        let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(nil);
        let mut qtilde: Vec<Vec<Complex64>> = Vec::with_capacity(nil);
        for s in spec.nilpotents() {
            let top = s - m + 1;
            let mut qs = vec![ZERO; top - 1];
            let mut qts = vec![ZERO; top - 1];
            qs[0] = t[s - m - 1];
            qts[0] = -t[s - m - 1];
            for k in 3..=top {
                let mut acc = ZERO;
                let mut acc_t = ZERO;
                for r in k + m - 2..s {
                    let brs = b[r - m - 1][s - m - 1];
                    acc += q[r - m - 1][k - 3] * brs;
                    acc_t += qtilde[r - m - 1][k - 3] * brs;
                }
                qs[k - 2] = acc;
                qts[k - 2] = -acc_t;
            }
            q.push(qs);
            qtilde.push(qts);
        }

        ResolventCoeffs {
            m,
            n,
            xi,
            t,
            b,
            q,
            qtilde,
            owner: spec.u_map().to_vec(),
        }
    }

    pub fn xi(&self) -> &[Complex64] {
        &self.xi
    }

    pub fn t(&self, s: usize) -> Complex64 {
        self.t[s - self.m - 1]
    }

    pub fn b(&self, r: usize, s: usize) -> Complex64 {
        self.b[r - self.m - 1][s - self.m - 1]
    }

    /// `Q_{k,s}`, defined for `2 <= k <= s - m + 1`.
    pub fn q(&self, k: usize, s: usize) -> Option<Complex64> {
        self.q
            .get(s.checked_sub(self.m + 1)?)?
            .get(k.checked_sub(2)?)
            .copied()
    }

    /// `Q~_{k,s}`, defined for `2 <= k <= s - m + 1`.
    pub fn qtilde(&self, k: usize, s: usize) -> Option<Complex64> {
        self.qtilde
            .get(s.checked_sub(self.m + 1)?)?
            .get(k.checked_sub(2)?)
            .copied()
    }

    /// `(t e_1 - zeta)^{-1}` from the already computed coefficients.
    pub fn resolvent(&self, t: Complex64) -> Result<AlgElement> {
        let tol = POLE_TOL * (1.0 + t.norm());
        let mut inv_d = Vec::with_capacity(self.m);
        for (u, &xi) in self.xi.iter().enumerate() {
            let d = t - xi;
            if d.norm() < tol {
                return Err(Error::Pole { u: u + 1 });
            }
            inv_d.push(d.inv());
        }
        let mut coeffs = vec![ZERO; self.n];
        coeffs[..self.m].copy_from_slice(&inv_d);
        for (j, qs) in self.q.iter().enumerate() {
            let w = inv_d[self.owner[j] - 1];
            // sum_k Q_{k,s} w^k, k from 2
            let mut pow = w * w;
            let mut acc = ZERO;
            for &qk in qs {
                acc += qk * pow;
                pow *= w;
            }
            coeffs[self.m + j] = acc;
        }
        Ok(AlgElement::from_coeffs(coeffs))
    }

    /// `sum_j weights[j] (nodes[j] e_1 - zeta)^{-1}` in one pass through
    /// scalar moments `sum_j weights[j] (nodes[j] - xi_u)^{-k}`.
    pub fn resolvent_sum(&self, nodes: &[Complex64], weights: &[Complex64]) -> Result<AlgElement> {
        let top = self.q.iter().map(|qs| qs.len() + 1).max().unwrap_or(1);
        // moments[u][k - 1] = sum_j w_j (t_j - xi_u)^{-k}
        let mut moments = vec![vec![ZERO; top]; self.m];
        for (&t, &wt) in nodes.iter().zip(weights) {
            let tol = POLE_TOL * (1.0 + t.norm());
            for (u, &xi) in self.xi.iter().enumerate() {
                let d = t - xi;
                if d.norm() < tol {
                    return Err(Error::Pole { u: u + 1 });
                }
                let inv = d.inv();
                let mut pow = inv;
                for slot in moments[u].iter_mut() {
                    *slot += wt * pow;
                    pow *= inv;
                }
            }
        }
        let mut coeffs = vec![ZERO; self.n];
        for u in 0..self.m {
            coeffs[u] = moments[u][0];
        }
        for (j, qs) in self.q.iter().enumerate() {
            let mom = &moments[self.owner[j] - 1];
            coeffs[self.m + j] = qs.iter().enumerate().map(|(i, &qk)| qk * mom[i + 1]).sum();
        }
        Ok(AlgElement::from_coeffs(coeffs))
    }

    /// `zeta^{-1}` from `A~_u = 1/xi_u` and `A~_s = sum_k Q~_{k,s} / xi_{u_s}^k`.
    pub fn zeta_inverse(&self, scale: f64) -> Result<AlgElement> {
        let tol = POLE_TOL * (1.0 + scale);
        let mut inv_xi = Vec::with_capacity(self.m);
        for (u, &xi) in self.xi.iter().enumerate() {
            if xi.norm() < tol {
                return Err(Error::NonInvertible { u: u + 1 });
            }
            inv_xi.push(xi.inv());
        }
        let mut coeffs = vec![ZERO; self.n];
        coeffs[..self.m].copy_from_slice(&inv_xi);
        for (j, qs) in self.qtilde.iter().enumerate() {
            let w = inv_xi[self.owner[j] - 1];
            let mut pow = w * w;
            let mut acc = ZERO;
            for &qk in qs {
                acc += qk * pow;
                pow *= w;
            }
            coeffs[self.m + j] = acc;
        }
        Ok(AlgElement::from_coeffs(coeffs))
    }
}

pub fn compute_coeffs(frame: &E3Frame, p: Point3, spec: &AlgebraSpec) -> ResolventCoeffs {
    ResolventCoeffs::compute(frame, p, spec)
}

pub fn resolvent_at(
    t: Complex64,
    frame: &E3Frame,
    p: Point3,
    spec: &AlgebraSpec,
) -> Result<AlgElement> {
    ResolventCoeffs::compute(frame, p, spec).resolvent(t)
}

/// `zeta(p)^{-1}`; fails with the offending `u` on the lines `L_u`.
pub fn zeta_inverse_closed(frame: &E3Frame, p: Point3, spec: &AlgebraSpec) -> Result<AlgElement> {
    ResolventCoeffs::compute(frame, p, spec).zeta_inverse(p.norm())
}
