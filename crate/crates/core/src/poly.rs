//! Simple quaternion polynomials `p(z) = Σ c_k·z^k` (coefficients on the
//! left) and their zero sets.
//!
//! Zeros come in two flavours: isolated zeros, and spherical zeros where a
//! whole similarity orbit `{a⁻¹ z a}` vanishes. Every zero orbit of `p`
//! shows up as a complex root pair of the real polynomial
//! `q(x) = Σ_j Σ_{k+l=j} conj(c_k)·c_l·x^j`; each candidate orbit is then
//! resolved by dividing `p` on the right by the real quadratic that vanishes
//! on that orbit.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{complex_eigenvalues, CMatrix};
use crate::quaternion::{OrbitClass, Quaternion};

/// Trailing coefficients below this fraction of the largest are dropped.
const TRIM_REL: f64 = 1e-13;

/// Polynomial with quaternion coefficients on the left of the powers,
/// stored in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct QPoly {
    coeffs: Vec<Quaternion>,
}

impl QPoly {
    /// Builds a polynomial, trimming negligible leading coefficients.
    pub fn new(mut coeffs: Vec<Quaternion>) -> Self {
        let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() <= TRIM_REL * max) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Quaternion::ZERO);
        }
        Self { coeffs }
    }

    /// Keeps every coefficient as given, including a zero leading term.
    pub fn from_raw(coeffs: Vec<Quaternion>) -> Self {
        if coeffs.is_empty() {
            return Self { coeffs: vec![Quaternion::ZERO] };
        }
        Self { coeffs }
    }

    pub fn constant(c: Quaternion) -> Self {
        Self { coeffs: vec![c] }
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Quaternion {
        self.coeffs.get(k).copied().unwrap_or(Quaternion::ZERO)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Quaternion {
        *self.coeffs.last().expect("at least one coefficient")
    }

    /// `Σ c_k·z^k`, Horner form with coefficients kept on the left.
    pub fn eval(&self, z: Quaternion) -> Quaternion {
        let mut acc = Quaternion::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = acc * z + *c;
        }
        acc
    }

    /// `Σ |c_k|`.
    pub fn coeff_norm_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// `Σ |c_k|·max(1, |z|)^k`, the natural size of `p(z)`.
    pub fn scale_at(&self, z: Quaternion) -> f64 {
        let m = z.norm().max(1.0);
        let mut pow = 1.0;
        let mut acc = 0.0;
        for c in &self.coeffs {
            acc += c.norm() * pow;
            pow *= m;
        }
        acc
    }

    /// `Σ c_k·s·z^k`.
    pub fn with_s(&self, s: Quaternion) -> QPoly {
        QPoly::from_raw(self.coeffs.iter().map(|c| *c * s).collect())
    }

    /// Product with a real-coefficient polynomial (ascending), which commutes
    /// with the quaternion coefficients.
    pub fn mul_real(&self, r: &[f64]) -> QPoly {
        let mut out = vec![Quaternion::ZERO; self.coeffs.len() + r.len().max(1) - 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            for (l, x) in r.iter().enumerate() {
                out[k + l] += *c * *x;
            }
        }
        QPoly::from_raw(out)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        QPoly::from_raw((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    /// Right division by `z² − t·z + n` with real `t`, `n`:
    /// `p(z) = quotient(z)·(z² − t·z + n) + B·z + C`.
    pub fn div_real_quadratic(&self, t: f64, n: f64) -> (QPoly, Quaternion, Quaternion) {
        let mut r = self.coeffs.clone();
        let d = self.degree();
        if d < 2 {
            return (QPoly::constant(Quaternion::ZERO), self.coeff(1), self.coeff(0));
        }
        let mut quot = vec![Quaternion::ZERO; d - 1];
        for k in (2..=d).rev() {
            let q = r[k];
            r[k] = Quaternion::ZERO;
            r[k - 1] += q * t;
            r[k - 2] -= q * n;
            quot[k - 2] = q;
        }
        (QPoly::from_raw(quot), r[1], r[0])
    }

    /// Real Jacobian of `z ↦ p(z)` in the basis `1, i, j, k`; column `m` is
    /// the directional derivative along basis element `m`.
    fn jacobian(&self, z: Quaternion) -> [[f64; 4]; 4] {
        let d = self.degree();
        let mut pows = vec![Quaternion::ONE; d.max(1)];
        for k in 1..pows.len() {
            pows[k] = pows[k - 1] * z;
        }
        let basis = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];
        let mut jac = [[0.0; 4]; 4];
        for (m, h) in basis.iter().enumerate() {
            let mut dv = Quaternion::ZERO;
            for (k, c) in self.coeffs.iter().enumerate().skip(1) {
                let mut term = Quaternion::ZERO;
                for a in 0..k {
                    term += pows[a] * *h * pows[k - 1 - a];
                }
                dv += *c * term;
            }
            for (row, v) in dv.components().into_iter().enumerate() {
                jac[row][m] = v;
            }
        }
        jac
    }

    /// `Σ k·c_k·x^{k−1}` at real `x`.
    fn derivative_at_real(&self, x: f64) -> Quaternion {
        let mut acc = Quaternion::ZERO;
        for (k, c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * x + *c * k as f64;
        }
        acc
    }
}

/// Real polynomial in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPoly {
    pub coeffs: Vec<f64>,
}

impl RealPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c)
    }

    /// All complex roots from the eigenvalues of the balanced companion
    /// matrix.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        let max = self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let mut hi = self.coeffs.len();
        while hi > 0 && self.coeffs[hi - 1].abs() <= TRIM_REL * max {
            hi -= 1;
        }
        let lo = self.coeffs[..hi].iter().take_while(|c| **c == 0.0).count();
        if hi == 0 {
            return Err(Error::DegenerateInput("zero polynomial".into()));
        }
        let mut roots = vec![Complex64::new(0.0, 0.0); lo];
        let c = &self.coeffs[lo..hi];
        let n = c.len() - 1;
        if n == 0 {
            return Ok(roots);
        }
        let lead = c[n];
        let comp = CMatrix::from_fn(n, n, |r, col| {
            if col == n - 1 {
                Complex64::new(-c[r] / lead, 0.0)
            } else if r == col + 1 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let eig = complex_eigenvalues(&comp, true).map_err(|_| Error::RootSolverFailure)?;
        roots.extend(eig);
        Ok(roots)
    }
}

/// `q(x) = Σ_j Σ_{k+l=j} conj(c_k)·c_l·x^j`, a real polynomial of degree `2n`
/// whose complex roots mark the zero orbits of `p`.
pub fn companion_real(p: &QPoly) -> Result<RealPoly> {
    let p = QPoly::new(p.coeffs.clone());
    if p.coeffs.iter().all(|c| c.norm() <= crate::quaternion::TOL_ZERO) {
        return Err(Error::DegenerateInput("all coefficients vanish".into()));
    }
    if p.degree() < 1 {
        return Err(Error::DegenerateInput("constant polynomial has no zeros".into()));
    }
    let (coeffs, _) = companion_parts(&p);
    Ok(RealPoly { coeffs })
}

/// Largest imaginary part discarded by [`companion_real`]; round-off only.
pub fn companion_residue(p: &QPoly) -> f64 {
    companion_parts(p).1
}

fn companion_parts(p: &QPoly) -> (Vec<f64>, f64) {
    let n = p.degree();
    let mut out = vec![0.0; 2 * n + 1];
    let mut residue = 0.0f64;
    for (j, slot) in out.iter_mut().enumerate() {
        let mut acc = Quaternion::ZERO;
        for k in j.saturating_sub(n)..=j.min(n) {
            acc += p.coeffs[k].conj() * p.coeffs[j - k];
        }
        residue = residue.max(acc.imag_norm());
        *slot = acc.re();
    }
    (out, residue)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ZeroKind {
    RealIsolated,
    NonrealIsolated,
    Spherical,
}

impl ZeroKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ZeroKind::RealIsolated => "real_isolated",
            ZeroKind::NonrealIsolated => "nonreal_isolated",
            ZeroKind::Spherical => "spherical",
        }
    }
}

/// One zero orbit of a polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroReport {
    pub kind: ZeroKind,
    /// The zero itself when isolated; the standard representative when
    /// spherical.
    pub representative: Quaternion,
    pub orbit: OrbitClass,
    /// False when the spherical/isolated decision was close to the threshold.
    pub confident: bool,
}

impl ZeroReport {
    fn new(kind: ZeroKind, representative: Quaternion, confident: bool) -> Self {
        let orbit = match kind {
            ZeroKind::RealIsolated => OrbitClass::new(representative.re(), 0.0),
            _ => OrbitClass::of(representative),
        };
        Self { kind, representative, orbit, confident }
    }

    /// Does `z` belong to this zero set entry?
    pub fn contains(&self, z: Quaternion, tol: f64) -> bool {
        match self.kind {
            ZeroKind::Spherical => self.orbit.contains(z, tol),
            _ => (z - self.representative).norm() <= tol,
        }
    }
}

/// `tol_rem = 1e-8·Σ|c_k|`.
fn tol_rem(p: &QPoly) -> f64 {
    1e-8 * p.coeff_norm_sum()
}

/// `tol_eval = 1e-8·scale(p, z)`.
pub fn tol_eval(p: &QPoly, z: Quaternion) -> f64 {
    1e-8 * p.scale_at(z)
}

pub(crate) fn solve4(mut a: [[f64; 4]; 4], mut b: [f64; 4]) -> Option<[f64; 4]> {
    for k in 0..4 {
        let p = (k..4).max_by(|&x, &y| a[x][k].abs().total_cmp(&a[y][k].abs()))?;
        if a[p][k].abs() < 1e-300 {
            return None;
        }
        a.swap(k, p);
        b.swap(k, p);
        for r in k + 1..4 {
            let f = a[r][k] / a[k][k];
            let pivot = a[k];
            for (x, y) in a[r][k..].iter_mut().zip(&pivot[k..]) {
                *x -= f * y;
            }
            b[r] -= f * b[k];
        }
    }
    let mut x = [0.0; 4];
    for r in (0..4).rev() {
        let s: f64 = (r + 1..4).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

/// Newton iteration for `p(z) = 0` on `R⁴`; returns the best iterate.
pub(crate) fn polish_isolated(p: &QPoly, z0: Quaternion) -> Quaternion {
    let mut z = z0;
    let mut best = (p.eval(z).norm(), z);
    for _ in 0..40 {
        let v = p.eval(z);
        let Some(step) = solve4(p.jacobian(z), v.components()) else { break };
        let step = Quaternion::new(step[0], step[1], step[2], step[3]);
        z -= step;
        let r = p.eval(z).norm();
        if r < best.0 {
            best = (r, z);
        }
        if step.norm() <= 4.0 * f64::EPSILON * (1.0 + z.norm()) {
            break;
        }
    }
    best.1
}

/// Gauss-Newton on `|p(x)|²` along the real line.
fn polish_real(p: &QPoly, x0: f64) -> f64 {
    let mut x = x0;
    let mut best = (p.eval(Quaternion::real(x)).norm(), x);
    for _ in 0..60 {
        let v = p.eval(Quaternion::real(x));
        let d = p.derivative_at_real(x);
        let denom = d.norm_sqr();
        if denom == 0.0 {
            break;
        }
        let step = (d.conj() * v).re() / denom;
        x -= step;
        let r = p.eval(Quaternion::real(x)).norm();
        if r < best.0 {
            best = (r, x);
        }
        if step.abs() <= 2.0 * f64::EPSILON * (1.0 + x.abs()) {
            break;
        }
    }
    best.1
}

fn remainder_vec(b: Quaternion, c: Quaternion) -> [f64; 8] {
    let [b0, b1, b2, b3] = b.components();
    let [c0, c1, c2, c3] = c.components();
    [b0, b1, b2, b3, c0, c1, c2, c3]
}

/// Gauss-Newton (Bairstow derivatives) on the quadratic `z² − t·z + n` to
/// drive the right-division remainder to zero. Returns the refined orbit and
/// the remainder size `max(|B|, |C|)`.
fn polish_spherical(p: &QPoly, orbit: OrbitClass) -> Option<(OrbitClass, f64)> {
    let (mut t, mut n) = orbit.quadratic();
    let (t0, n0) = (t, n);
    let size = |b: Quaternion, c: Quaternion| b.norm().max(c.norm());
    let (_, b, c) = p.div_real_quadratic(t, n);
    let mut best = (size(b, c), t, n);
    for _ in 0..40 {
        let (quot, b, c) = p.div_real_quadratic(t, n);
        let res = remainder_vec(b, c);
        // ∂R/∂n = −rem(quot), ∂R/∂t = rem(z·quot)
        let (_, qb, qc) = quot.div_real_quadratic(t, n);
        let mut shifted = vec![Quaternion::ZERO];
        shifted.extend_from_slice(quot.coeffs());
        let (_, zb, zc) = QPoly::from_raw(shifted).div_real_quadratic(t, n);
        let jt = remainder_vec(zb, zc);
        let jn = remainder_vec(-qb, -qc);
        let (mut a11, mut a12, mut a22, mut g1, mut g2) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for k in 0..8 {
            a11 += jt[k] * jt[k];
            a12 += jt[k] * jn[k];
            a22 += jn[k] * jn[k];
            g1 += jt[k] * res[k];
            g2 += jn[k] * res[k];
        }
        let det = a11 * a22 - a12 * a12;
        if !(det.abs() > 1e-300) {
            break;
        }
        let dt = (a22 * g1 - a12 * g2) / det;
        let dn = (a11 * g2 - a12 * g1) / det;
        t -= dt;
        n -= dn;
        let (_, b, c) = p.div_real_quadratic(t, n);
        let s = size(b, c);
        if s < best.0 {
            best = (s, t, n);
        }
        if dt.abs() + dn.abs() <= 4.0 * f64::EPSILON * (1.0 + t.abs() + n.abs()) {
            break;
        }
    }
    let (s, t, n) = best;
    let drift = (t - t0).abs() + (n - n0).abs();
    if drift > 1e-3 * (1.0 + t0.abs() + n0.abs()) {
        return None;
    }
    let re = 0.5 * t;
    let r2 = n - re * re;
    if r2 <= 0.0 {
        return None;
    }
    Some((OrbitClass::new(re, r2.sqrt()), s))
}

/// Candidate orbits `(re, |im|)` from complex roots, merged when
/// `|re₁ − re₂| + |r₁ − r₂| ≤ 1e-7·(1 + |re₁| + r₁)`.
fn candidate_orbits(roots: &[Complex64]) -> Vec<OrbitClass> {
    let mut pts: Vec<OrbitClass> = roots.iter().map(|z| OrbitClass::new(z.re, z.im.abs())).collect();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.r.total_cmp(&b.r)));
    let mut groups: Vec<Vec<OrbitClass>> = Vec::new();
    for p in pts {
        let near = groups.iter_mut().find(|g| g.iter().any(|q| q.distance(p) <= 1e-7 * (1.0 + q.re.abs() + q.r)));
        match near {
            Some(g) => g.push(p),
            None => groups.push(vec![p]),
        }
    }
    groups
        .into_iter()
        .map(|g| {
            let m = g.len() as f64;
            OrbitClass::new(g.iter().map(|o| o.re).sum::<f64>() / m, g.iter().map(|o| o.r).sum::<f64>() / m)
        })
        .collect()
}

/// All zero orbits of `p`, classified as real isolated, non-real isolated
/// or spherical, sorted by `(re, r)`.
pub fn zeros(p: &QPoly) -> Result<Vec<ZeroReport>> {
    let p = QPoly::new(p.coeffs.clone());
    if p.degree() < 1 || p.coeffs.iter().all(|c| c.norm() <= crate::quaternion::TOL_ZERO) {
        return Err(Error::DegenerateInput("polynomial of degree < 1".into()));
    }
    let max = p.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let shift = p.coeffs.iter().take_while(|c| c.norm() <= TRIM_REL * max).count();
    let mut reports = Vec::new();
    if shift > 0 {
        // p(z) = p̃(z)·z^m
        reports.push(ZeroReport::new(ZeroKind::RealIsolated, Quaternion::ZERO, true));
    }
    let p = QPoly::from_raw(p.coeffs[shift..].to_vec());
    if p.degree() == 0 {
        return Ok(reports);
    }

    let q = companion_real(&p)?;
    let roots = q.roots()?;
    let rem_tol = tol_rem(&p);

    for cand in candidate_orbits(&roots) {
        if cand.r <= 1e-6 * (1.0 + cand.re.abs()) {
            let x = polish_real(&p, cand.re);
            let zx = Quaternion::real(x);
            if p.eval(zx).norm() <= tol_eval(&p, zx) {
                reports.push(ZeroReport::new(ZeroKind::RealIsolated, zx, true));
                continue;
            }
            if cand.r == 0.0 {
                return Err(Error::RootSolverFailure);
            }
        }
        if let Some((orbit, rem)) = polish_spherical(&p, cand) {
            if rem <= rem_tol {
                let confident = rem <= 1e-2 * rem_tol;
                reports.push(ZeroReport::new(ZeroKind::Spherical, orbit.representative(), confident));
                continue;
            }
        }
        let (t, n) = cand.quadratic();
        let (_, b, c) = p.div_real_quadratic(t, n);
        let Ok(binv) = b.inverse() else {
            return Err(Error::RootSolverFailure);
        };
        let z = polish_isolated(&p, -(binv * c));
        if !(p.eval(z).norm() <= tol_eval(&p, z)) {
            return Err(Error::RootSolverFailure);
        }
        let orbit = OrbitClass::of(z);
        let (t, n) = orbit.quadratic();
        let (_, b, c) = p.div_real_quadratic(t, n);
        let confident = b.norm().max(c.norm()) >= 1e2 * rem_tol;
        let kind = if orbit.is_real() { ZeroKind::RealIsolated } else { ZeroKind::NonrealIsolated };
        reports.push(ZeroReport::new(kind, z, confident));
    }

    // distinct orbits only; a spherical entry wins over an isolated one
    reports.sort_by_key(|r| std::cmp::Reverse(r.kind));
    let mut unique: Vec<ZeroReport> = Vec::new();
    for r in reports {
        let dup = unique.iter().any(|u| u.orbit.distance(r.orbit) <= 1e-7 * (1.0 + u.orbit.modulus()));
        if !dup {
            unique.push(r);
        }
    }
    sort_reports(&mut unique);
    Ok(unique)
}

/// Deterministic order: by real part, then imaginary magnitude, then the
/// representative's components.
pub fn sort_reports(reports: &mut [ZeroReport]) {
    reports.sort_by(|a, b| {
        a.orbit
            .re
            .total_cmp(&b.orbit.re)
            .then(a.orbit.r.total_cmp(&b.orbit.r))
            .then(a.representative.y.total_cmp(&b.representative.y))
            .then(a.representative.z.total_cmp(&b.representative.z))
    });
}

/// Maps each non-real isolated zero `z ↦ s⁻¹·z·s`; real and spherical
/// entries are unchanged.
///
/// With `s = s₁⁻¹·s₂`, this turns the zero set of `Σ c_k·s₁·z^k` into that
/// of `Σ c_k·s₂·z^k`.
pub fn conjugate_zero_set(reports: &[ZeroReport], s: Quaternion) -> Result<Vec<ZeroReport>> {
    let inv = s.inverse()?;
    Ok(reports
        .iter()
        .map(|r| match r.kind {
            ZeroKind::NonrealIsolated => ZeroReport { representative: inv * r.representative * s, ..r.clone() },
            _ => r.clone(),
        })
        .collect())
}
