//! Boundary-value recurrences
//! `b(k)·x(k+1) + a(k)·x(k) + b(k−1)·x(k−1) = x(k)·λ`, `k = 1..N`, with
//! `x(0) = −h₁·x(1)` and `x(N+1) = −h₂·x(N)`.
//!
//! The solution with `x(1) = s` is `φ(k, λ, s) = Σ_j c(j, k)·s·λ^j`; its
//! coefficients do not depend on `s` and are stored in a [`PhiTable`].

mod expansion;

pub use expansion::{alternate_expansion, reconstruct, transform, SamplingExpansion, TOL_ORTH};

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{QMatrix, QVector};
use crate::poly::QPoly;
use crate::quaternion::{Quaternion, TOL_ZERO};

/// Coefficients `a(1..N)`, `b(0..N)` and boundary parameters `h₁`, `h₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct BvpSpec {
    a: Vec<Quaternion>,
    b: Vec<Quaternion>,
    h1: Quaternion,
    h2: Quaternion,
}

impl BvpSpec {
    /// `a` holds `a(1)..a(N)` and `b` holds `b(0)..b(N)`.
    pub fn new(a: Vec<Quaternion>, b: Vec<Quaternion>, h1: Quaternion, h2: Quaternion) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidInput("N must be positive".into()));
        }
        if b.len() != a.len() + 1 {
            return Err(Error::DimensionMismatch { expected: a.len() + 1, found: b.len() });
        }
        if let Some(bad) = b.iter().find(|q| q.norm() <= TOL_ZERO) {
            return Err(Error::ZeroDivision { norm: bad.norm() });
        }
        Ok(Self { a, b, h1, h2 })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[Quaternion] {
        &self.a
    }

    pub fn b(&self) -> &[Quaternion] {
        &self.b
    }

    pub fn h1(&self) -> Quaternion {
        self.h1
    }

    pub fn h2(&self) -> Quaternion {
        self.h2
    }

    /// `a(k)` for `1 ≤ k ≤ N`.
    fn a_at(&self, k: usize) -> Quaternion {
        self.a[k - 1]
    }

    /// The matrix `L` of the operator: tridiagonal, symmetric, with
    /// diagonal `(a(1) − b(0)h₁, a(2), …, a(N) − b(N)h₂)` and off-diagonal
    /// `b(1..N−1)`.
    pub fn operator_matrix(&self) -> QMatrix {
        let n = self.n();
        let mut diag = self.a.clone();
        diag[0] -= self.b[0] * self.h1;
        diag[n - 1] -= self.b[n] * self.h2;
        QMatrix::tridiagonal(&diag, &self.b[1..n]).expect("consistent lengths")
    }

    /// Residual of the recurrence and both boundary conditions for a
    /// candidate solution `x(1..N)` padded with `x(0) = −h₁x(1)` and
    /// `x(N+1) = −h₂x(N)`.
    pub fn recurrence_residual(&self, x: &QVector, lambda: Quaternion) -> Result<f64> {
        let n = self.n();
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: x.len() });
        }
        let mut pad = Vec::with_capacity(n + 2);
        pad.push(-(self.h1 * x[0]));
        pad.extend_from_slice(x);
        pad.push(-(self.h2 * x[n - 1]));
        let mut worst = 0.0f64;
        for k in 1..=n {
            let lhs = self.b[k] * pad[k + 1] + self.a_at(k) * pad[k] + self.b[k - 1] * pad[k - 1];
            worst = worst.max((lhs - pad[k] * lambda).norm());
        }
        Ok(worst)
    }
}

/// `L` for the given spec.
pub fn build_l(spec: &BvpSpec) -> QMatrix {
    spec.operator_matrix()
}

/// s-free coefficients `c(j, k)` of `φ(k, λ, s)` for `0 ≤ k ≤ N+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiTable {
    spec: BvpSpec,
    /// `c[k][j]`; row `k` has degree `k − 1` (row 0 holds `−h₁`).
    c: Vec<Vec<Quaternion>>,
    /// `b(k)⁻¹`.
    binv: Vec<Quaternion>,
}

/// Runs the forward recurrence on coefficient arrays:
/// `c(·, k+1) = b(k)⁻¹·(shift c(·, k) − a(k)·c(·, k) − b(k−1)·c(·, k−1))`.
pub fn build_phi(spec: &BvpSpec) -> Result<PhiTable> {
    let n = spec.n();
    let mut c: Vec<Vec<Quaternion>> = Vec::with_capacity(n + 2);
    c.push(vec![-spec.h1]);
    c.push(vec![Quaternion::ONE]);
    let binv = spec.b.iter().map(|b| b.inverse()).collect::<Result<Vec<_>>>()?;
    for k in 1..=n {
        let mut next = vec![Quaternion::ZERO; k + 1];
        for (j, slot) in next.iter_mut().enumerate() {
            let mut acc = Quaternion::ZERO;
            if j >= 1 {
                acc += c[k][j - 1];
            }
            if j < c[k].len() {
                acc -= spec.a_at(k) * c[k][j];
            }
            if j < c[k - 1].len() {
                acc -= spec.b[k - 1] * c[k - 1][j];
            }
            *slot = binv[k] * acc;
        }
        c.push(next);
    }
    Ok(PhiTable { spec: spec.clone(), c, binv })
}

impl PhiTable {
    pub fn spec(&self) -> &BvpSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    /// `c(·, k)` in ascending powers of `λ`.
    pub fn coeffs(&self, k: usize) -> &[Quaternion] {
        &self.c[k]
    }

    /// `φ(k, λ, s)` for `0 ≤ k ≤ N+1`, from the coefficient table.
    pub fn phi(&self, k: usize, lambda: Quaternion, s: Quaternion) -> Quaternion {
        let mut acc = Quaternion::ZERO;
        for c in self.c[k].iter().rev() {
            acc = acc * lambda + *c * s;
        }
        acc
    }

    /// `φ(0..=N+1, λ, s)` by running the recurrence on values, which avoids
    /// the cancellation between large coefficients of the expanded form.
    pub fn phi_values(&self, lambda: Quaternion, s: Quaternion) -> Vec<Quaternion> {
        let n = self.n();
        let spec = &self.spec;
        let mut v = Vec::with_capacity(n + 2);
        v.push(-(spec.h1 * s));
        v.push(s);
        for k in 1..=n {
            let rhs = v[k] * lambda - spec.a_at(k) * v[k] - spec.b[k - 1] * v[k - 1];
            v.push(self.binv[k] * rhs);
        }
        v
    }

    /// `φ(λ, s) = (φ(1), …, φ(N))ᵀ`, evaluated through the recurrence.
    pub fn phi_vector(&self, lambda: Quaternion, s: Quaternion) -> QVector {
        let mut v = self.phi_values(lambda, s);
        v.pop();
        v.remove(0);
        QVector(v)
    }

    /// `φ(N+1) + h₂·φ(N)` at `λ`, through the recurrence.
    fn boundary_value(&self, lambda: Quaternion, s: Quaternion) -> Quaternion {
        let v = self.phi_values(lambda, s);
        let n = self.n();
        v[n + 1] + self.spec.h2 * v[n]
    }

    /// Newton refinement of a zero of `p_N(·, s)`, with the function and its
    /// derivative evaluated by the recurrence. Returns the best iterate.
    pub fn refine_zero(&self, lambda: Quaternion, s: Quaternion) -> Quaternion {
        let n = self.n();
        let spec = &self.spec;
        let basis = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];
        let mut z = lambda;
        let mut best = (self.boundary_value(z, s).norm(), z);
        for _ in 0..8 {
            let v = self.phi_values(z, s);
            let g = v[n + 1] + spec.h2 * v[n];
            let mut jac = [[0.0; 4]; 4];
            for (col, h) in basis.iter().enumerate() {
                let mut d = vec![Quaternion::ZERO; n + 2];
                for k in 1..=n {
                    let rhs = d[k] * z + v[k] * *h - spec.a_at(k) * d[k] - spec.b[k - 1] * d[k - 1];
                    d[k + 1] = self.binv[k] * rhs;
                }
                let dg = d[n + 1] + spec.h2 * d[n];
                for (row, x) in dg.components().into_iter().enumerate() {
                    jac[row][col] = x;
                }
            }
            let Some(step) = crate::poly::solve4(jac, g.components()) else { break };
            z -= Quaternion::new(step[0], step[1], step[2], step[3]);
            let r = self.boundary_value(z, s).norm();
            if !(r < best.0) {
                break;
            }
            best = (r, z);
        }
        best.1
    }

    /// `φ(k, ·, s)` as a polynomial in `λ`.
    pub fn phi_poly(&self, k: usize, s: Quaternion) -> QPoly {
        QPoly::from_raw(self.c[k].iter().map(|c| *c * s).collect())
    }

    /// `p_N(λ, s) = φ(N+1, λ, s) + h₂·φ(N, λ, s)`, of degree `N`.
    pub fn boundary_poly(&self, s: Quaternion) -> Result<QPoly> {
        if s.norm() <= TOL_ZERO {
            return Err(Error::ZeroDivision { norm: s.norm() });
        }
        let n = self.n();
        let h2 = self.spec.h2;
        let coeffs = (0..=n)
            .map(|j| {
                let mut c = self.c[n + 1][j];
                if j < n {
                    c += h2 * self.c[n][j];
                }
                c * s
            })
            .collect();
        Ok(QPoly::from_raw(coeffs))
    }

    /// `⟨φ(μ, s), φ(λ, s)⟩` as a polynomial in `λ` of degree `≤ N − 1`.
    pub fn inner_poly(&self, mu: Quaternion, s: Quaternion) -> QPoly {
        let n = self.n();
        let left = self.phi_vector(mu, s);
        let coeffs = (0..n)
            .map(|j| (1..=n).filter(|m| j < self.c[*m].len()).map(|m| left[m - 1].conj() * self.c[m][j] * s).sum())
            .collect();
        QPoly::from_raw(coeffs)
    }
}

/// Random spec whose operator is normal: `L = c₀·T + c₁·I` with random
/// quaternions `c₀`, `c₁` and a real symmetric tridiagonal `T`. That is
/// `b(k) = c₀·β(k)`, `a(k) = c₀·τ(k) + c₁` and real `h₁`, `h₂`, with
/// `|c₀| ∈ [0.8, 1.25]` and `|β(k)| ∈ [0.5, 1.5]` to keep the coefficient
/// growth of `φ` moderate.
pub fn random_normal_spec<R: Rng + ?Sized>(rng: &mut R, n: usize) -> BvpSpec {
    let quat = |rng: &mut R| {
        Quaternion::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        )
    };
    let c0 = loop {
        let q = quat(rng);
        if q.norm() > 0.3 {
            break q * (rng.gen_range(0.8..1.25) / q.norm());
        }
    };
    let c1 = quat(rng);
    let mut beta = || {
        let m: f64 = rng.gen_range(0.5..1.5);
        if rng.gen_bool(0.5) {
            m
        } else {
            -m
        }
    };
    let b: Vec<Quaternion> = (0..=n).map(|_| c0 * beta()).collect();
    let a: Vec<Quaternion> = (0..n).map(|_| c0 * rng.gen_range(-2.0..2.0) + c1).collect();
    let (h1, h2) = if rng.gen_bool(0.5) {
        (Quaternion::ZERO, Quaternion::ZERO)
    } else {
        (Quaternion::real(rng.gen_range(-1.0..1.0)), Quaternion::real(rng.gen_range(-1.0..1.0)))
    };
    BvpSpec::new(a, b, h1, h2).expect("nonzero b by construction")
}
