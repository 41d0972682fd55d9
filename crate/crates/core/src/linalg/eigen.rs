//! Right eigenvalues of quaternion matrices through the complex adjoint.
//!
//! Writing `A = A₁ + A₂·j` with complex `A₁`, `A₂`, the complex adjoint is
//! `χ_A = [[A₁, A₂], [−conj(A₂), conj(A₁)]]`. A vector `(u; w)` with
//! `χ_A (u; w) = μ (u; w)` gives the quaternion vector `ξ = u − conj(w)·j`
//! with `A ξ = ξ μ`. Eigenvalues of `χ_A` come in conjugate pairs; each pair
//! contributes one standard eigenvalue with nonnegative imaginary part.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::complex::{complex_eigenvalues, CMatrix, ComplexLu};
use super::{QMatrix, QVector};
use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

/// Relative residual bound for returned eigenpairs.
pub const TOL_EIG: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A right eigenpair `A·vector = vector·value` with a standard eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: Quaternion,
    pub vector: QVector,
}

impl EigenPair {
    /// `‖A·ξ − ξ·λ‖`.
    pub fn residual(&self, a: &QMatrix) -> Result<f64> {
        let av = a.mul_vec(&self.vector)?;
        Ok(av.sub(&self.vector.mul_right(self.value)).norm())
    }
}

/// The `2n×2n` complex adjoint matrix.
pub fn complex_adjoint(a: &QMatrix) -> Result<CMatrix> {
    let n = a.require_square()?;
    Ok(CMatrix::from_fn(2 * n, 2 * n, |r, c| {
        let (rb, cb) = (r / n, c / n);
        let (a1, a2) = a[(r % n, c % n)].parts();
        match (rb, cb) {
            (0, 0) => a1,
            (0, 1) => a2,
            (1, 0) => -a2.conj(),
            _ => a1.conj(),
        }
    }))
}

fn to_quaternion_vector(x: &[Complex64], n: usize) -> QVector {
    QVector((0..n).map(|l| Quaternion::from_parts(x[l], -x[n + l].conj())).collect())
}

/// Pairs the `2n` eigenvalues of `χ_A` into `n` standard values, sorted by
/// real part then imaginary part.
fn pair_conjugates(mut mus: Vec<Complex64>) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(mus.len() / 2);
    while !mus.is_empty() {
        let top = (0..mus.len()).max_by(|&a, &b| mus[a].im.total_cmp(&mus[b].im)).expect("nonempty");
        let mu = mus.swap_remove(top);
        let Some(partner) =
            (0..mus.len()).min_by(|&a, &b| (mus[a] - mu.conj()).norm().total_cmp(&(mus[b] - mu.conj()).norm()))
        else {
            out.push(Complex64::new(mu.re, mu.im.abs()));
            break;
        };
        let nu = mus.swap_remove(partner);
        out.push(Complex64::new(0.5 * (mu.re + nu.re), (0.5 * (mu.im - nu.im)).abs()));
    }
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    out
}

/// Standard eigenvalues only, sorted by real then imaginary part.
pub fn standard_eigenvalues(a: &QMatrix) -> Result<Vec<Quaternion>> {
    let chi = complex_adjoint(a)?;
    let mus = complex_eigenvalues(&chi, true)?;
    Ok(pair_conjugates(mus).into_iter().map(Quaternion::from_complex).collect())
}

/// Groups sorted standard values whose mutual distance is below `tol`.
fn clusters(values: &[Complex64], tol: f64) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut assigned = vec![false; values.len()];
    for i in 0..values.len() {
        if assigned[i] {
            continue;
        }
        let mut group = vec![i];
        assigned[i] = true;
        let mut t = 0;
        while t < group.len() {
            let g = group[t];
            for j in 0..values.len() {
                if !assigned[j] && (values[j] - values[g]).norm() <= tol {
                    assigned[j] = true;
                    group.push(j);
                }
            }
            t += 1;
        }
        group.sort_unstable();
        groups.push(group);
    }
    groups
}

fn cdot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

fn cnorm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthonormalizes columns in place (two-pass modified Gram-Schmidt) and
/// drops columns that collapse.
fn orthonormalize(cols: &mut Vec<Vec<Complex64>>) {
    let mut out: Vec<Vec<Complex64>> = Vec::with_capacity(cols.len());
    for mut v in cols.drain(..) {
        let before = cnorm(&v);
        for _ in 0..2 {
            for q in &out {
                let d = cdot(q, &v);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= qi * d;
                }
            }
        }
        let nrm = cnorm(&v);
        if nrm > 1e-10 * before && nrm > 0.0 {
            v.iter_mut().for_each(|z| *z /= nrm);
            out.push(v);
        }
    }
    *cols = out;
}

/// Orthonormal basis (complex, in `χ`-space) of the eigenspace near `mu`,
/// by subspace inverse iteration from deterministic random starts.
fn eigenspace(chi: &CMatrix, mu: Complex64, dim: usize, scale: f64) -> Result<Vec<Vec<Complex64>>> {
    let size = chi.rows();
    let delta = Complex64::new(1.0, 0.7) * (1e-12 * scale);
    let lu = ComplexLu::new(&chi.shifted(mu + delta))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_u64 ^ (size as u64) << 8 ^ dim as u64);
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| (0..size).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
        .collect();
    orthonormalize(&mut cols);
    for _ in 0..3 {
        let mut next: Vec<Vec<Complex64>> = cols.iter().map(|c| lu.solve(c)).collect();
        orthonormalize(&mut next);
        cols = next;
    }
    Ok(cols)
}

/// Picks `count` orthonormal vectors from the span of `basis` by projecting
/// the standard unit vectors and greedily keeping the largest residuals
/// (ties go to the lower index). Depends only on the span, not the basis.
fn canonical_complex(basis: &[Vec<Complex64>], count: usize) -> Vec<Vec<Complex64>> {
    let size = basis.first().map_or(0, Vec::len);
    let mut cands: Vec<Vec<Complex64>> = (0..size)
        .map(|l| {
            let mut v = vec![ZERO; size];
            for b in basis {
                let coef = b[l].conj();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi += bi * coef;
                }
            }
            v
        })
        .collect();
    let mut chosen: Vec<Vec<Complex64>> = Vec::with_capacity(count);
    while chosen.len() < count {
        let norms: Vec<f64> = cands.iter().map(|c| cnorm(c)).collect();
        let best = pick_largest(&norms);
        let nrm = norms[best];
        if nrm <= 1e-8 {
            break;
        }
        let q: Vec<Complex64> = cands[best].iter().map(|z| z / nrm).collect();
        for c in cands.iter_mut() {
            for _ in 0..2 {
                let d = cdot(&q, c);
                for (ci, qi) in c.iter_mut().zip(&q) {
                    *ci -= qi * d;
                }
            }
        }
        chosen.push(q);
    }
    chosen
}

/// Same as [`canonical_complex`] over `H^n` with right scalars.
fn canonical_quaternion(basis: &[QVector], count: usize) -> Vec<QVector> {
    let n = basis.first().map_or(0, |b| b.len());
    let mut cands: Vec<QVector> = (0..n)
        .map(|l| {
            let mut v = QVector::zeros(n);
            for b in basis {
                let coef = b[l].conj();
                for (vi, bi) in v.iter_mut().zip(b.iter()) {
                    *vi += *bi * coef;
                }
            }
            v
        })
        .collect();
    let mut chosen: Vec<QVector> = Vec::with_capacity(count);
    while chosen.len() < count {
        let norms: Vec<f64> = cands.iter().map(QVector::norm).collect();
        let best = pick_largest(&norms);
        let nrm = norms[best];
        if nrm <= 1e-8 {
            break;
        }
        let q = cands[best].scale(1.0 / nrm);
        for c in cands.iter_mut() {
            for _ in 0..2 {
                let d = q.inner(c).expect("equal lengths");
                *c = c.sub(&q.mul_right(d));
            }
        }
        chosen.push(q);
    }
    chosen
}

fn pick_largest(norms: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in norms.iter().enumerate() {
        if v > norms[best] * (1.0 + 1e-9) {
            best = i;
        }
    }
    best
}

/// Right-multiplies by a unit scalar commuting with `value` so the first
/// non-negligible entry has a real nonnegative complex part (or, failing
/// that, a real nonnegative `j`-part).
fn fix_phase(v: &QVector, real: bool) -> QVector {
    let Some(first) = v.iter().find(|q| q.norm() > 1e-8) else {
        return v.clone();
    };
    if real {
        let unit = first.conj() / first.norm();
        return v.mul_right(unit);
    }
    let (c1, c2) = first.parts();
    let phase = if c1.norm() > 1e-8 { c1.conj() / c1.norm() } else { c2 / c2.norm() };
    v.mul_right(Quaternion::from_complex(phase))
}

fn recover(a: &QMatrix, chi: &CMatrix, mu: Complex64, mult: usize, real: bool, scale: f64) -> Result<Vec<QVector>> {
    let n = a.rows();
    let vectors = if real {
        let basis = eigenspace(chi, mu, 2 * mult, scale)?;
        let qbasis: Vec<QVector> = basis.iter().map(|b| to_quaternion_vector(b, n)).collect();
        // the 2m complex vectors span an m-dimensional right H-space
        let span = canonical_quaternion(&orthonormal_quaternion(&qbasis), mult);
        span.iter().map(|v| fix_phase(v, true)).collect::<Vec<_>>()
    } else {
        let basis = eigenspace(chi, mu, mult, scale)?;
        canonical_complex(&basis, mult)
            .iter()
            .map(|b| fix_phase(&to_quaternion_vector(b, n), false))
            .collect::<Vec<_>>()
    };
    Ok(vectors)
}

/// Pivoted quaternion Gram-Schmidt keeping independent directions only.
fn orthonormal_quaternion(vs: &[QVector]) -> Vec<QVector> {
    let mut rest: Vec<QVector> = vs.to_vec();
    let mut out: Vec<QVector> = Vec::new();
    loop {
        let norms: Vec<f64> = rest.iter().map(QVector::norm).collect();
        if norms.is_empty() {
            break;
        }
        let best = pick_largest(&norms);
        if norms[best] <= 1e-6 {
            break;
        }
        let q = rest.swap_remove(best).scale(1.0 / norms[best]);
        for r in rest.iter_mut() {
            for _ in 0..2 {
                let d = q.inner(r).expect("equal lengths");
                *r = r.sub(&q.mul_right(d));
            }
        }
        out.push(q);
    }
    out
}

/// Returns exactly `n` right eigenpairs with standard eigenvalues sorted by
/// real then imaginary part and unit-norm eigenvectors.
///
/// Vectors sharing a repeated eigenvalue are orthonormalized inside their
/// eigenspace, so a normal matrix yields an orthonormal eigenbasis. Each
/// pair is verified against `‖Aξ − ξλ‖ ≤ TOL_EIG·‖A‖_F·‖ξ‖`.
pub fn right_eigen(a: &QMatrix) -> Result<Vec<EigenPair>> {
    let n = a.require_square()?;
    let chi = complex_adjoint(a)?;
    let norm = a.frobenius();
    let scale = norm.max(f64::MIN_POSITIVE);
    if norm == 0.0 {
        return Ok((0..n).map(|k| EigenPair { value: Quaternion::ZERO, vector: QVector::unit(n, k) }).collect());
    }
    let values = pair_conjugates(complex_eigenvalues(&chi, true)?);
    let groups = clusters(&values, 1e-8 * scale.max(1.0));
    let real_tol = 1e-9 * scale.max(1.0);

    let mut pairs: Vec<EigenPair> = Vec::with_capacity(n);
    for group in groups {
        let mult = group.len();
        let mean: Complex64 = group.iter().map(|&g| values[g]).sum::<Complex64>() / mult as f64;
        let real = mean.im.abs() <= real_tol;
        let mu = if real { Complex64::new(mean.re, 0.0) } else { mean };
        let value = Quaternion::from_complex(mu);

        let mut vectors = recover(a, &chi, mu, mult, real, scale)?;
        let bad = vectors.len() < mult || vectors.iter().any(|v| residual(a, v, value) > TOL_EIG * scale * v.norm());
        if bad {
            // defective cluster: fall back to one eigen-direction repeated
            let single = recover(a, &chi, mu, 1, real, scale)?;
            let Some(v) = single.into_iter().next() else {
                return Err(Error::RecoveryFailure { value: value.to_string(), residual: f64::INFINITY });
            };
            vectors = vec![v; mult];
        }
        for v in vectors {
            let r = residual(a, &v, value);
            if !(r <= TOL_EIG * scale * v.norm()) {
                return Err(Error::RecoveryFailure { value: value.to_string(), residual: r });
            }
            pairs.push(EigenPair { value, vector: v });
        }
    }
    pairs.sort_by(|p, q| p.value.w.total_cmp(&q.value.w).then(p.value.x.total_cmp(&q.value.x)));
    Ok(pairs)
}

fn residual(a: &QMatrix, v: &QVector, value: Quaternion) -> f64 {
    match a.mul_vec(v) {
        Ok(av) => av.sub(&v.mul_right(value)).norm(),
        Err(_) => f64::INFINITY,
    }
}
