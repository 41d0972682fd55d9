//! Dense complex matrices, Hessenberg QR eigenvalues and LU solves.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        Ok(Self::from_fn(self.rows, other.cols, |r, c| (0..self.cols).map(|m| self[(r, m)] * other[(m, c)]).sum()))
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self[(r, c)] * v[c]).sum()).collect()
    }

    pub fn sub(&self, other: &CMatrix) -> Result<CMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        Ok(CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `self − shift·I`.
    pub fn shifted(&self, shift: Complex64) -> CMatrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] -= shift;
        }
        m
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

#[inline]
fn abs1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// Diagonal similarity scaling by powers of two so row and column norms are
/// comparable.
fn balance(a: &mut CMatrix) {
    const RADIX: f64 = 2.0;
    let n = a.rows;
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += abs1(a[(j, i)]);
                    r += abs1(a[(i, j)]);
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut g = r / RADIX;
            let mut f = 1.0;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let g = 1.0 / f;
                for j in 0..n {
                    a[(i, j)] *= g;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// Householder reduction to upper Hessenberg form, in place.
fn hessenberg(a: &mut CMatrix) {
    let n = a.rows;
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let alpha_norm = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if alpha_norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * alpha_norm;
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // A ← (I − 2vvᴴ) A
        for c in 0..n {
            let dot: Complex64 = v.iter().enumerate().map(|(t, vt)| vt.conj() * a[(k + 1 + t, c)]).sum();
            for (t, vt) in v.iter().enumerate() {
                a[(k + 1 + t, c)] -= *vt * dot * 2.0;
            }
        }
        // A ← A (I − 2vvᴴ)
        for r in 0..n {
            let dot: Complex64 = v.iter().enumerate().map(|(t, vt)| a[(r, k + 1 + t)] * vt).sum();
            for (t, vt) in v.iter().enumerate() {
                a[(r, k + 1 + t)] -= dot * vt.conj() * 2.0;
            }
        }
        for i in k + 2..n {
            a[(i, k)] = ZERO;
        }
    }
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let m1 = (a + d) * 0.5 + disc;
    let m2 = (a + d) * 0.5 - disc;
    if (m1 - d).norm() <= (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

/// All eigenvalues of a square complex matrix, via optional balancing,
/// Hessenberg reduction and single-shift implicit QR with deflation.
pub fn complex_eigenvalues(m: &CMatrix, balanced: bool) -> Result<Vec<Complex64>> {
    if m.rows != m.cols {
        return Err(Error::DimensionMismatch { expected: m.rows, found: m.cols });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Vec::new());
    }
    if m.data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::EigenSolverFailure);
    }
    let mut h = m.clone();
    if balanced {
        balance(&mut h);
    }
    hessenberg(&mut h);

    let norm = h.frobenius();
    let mut eig = vec![ZERO; n];
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    let max_total = 100 * n.max(4);
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let mut s = abs1(h[(l - 1, l - 1)]) + abs1(h[(l, l)]);
            if s == 0.0 {
                s = norm;
            }
            if abs1(h[(l, l - 1)]) <= f64::EPSILON * s {
                h[(l, l - 1)] = ZERO;
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig[hi] = h[(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > max_total {
            return Err(Error::EigenSolverFailure);
        }
        let mu = if iter.is_multiple_of(10) {
            // exceptional shift to break cycles
            h[(hi, hi)] + Complex64::new(h[(hi, hi - 1)].norm() * 0.75, h[(hi, hi - 1)].norm() * 0.43)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        let mut x = h[(l, l)] - mu;
        let mut y = h[(l + 1, l)];
        for k in l..hi {
            let (c, s) = givens(x, y);
            let col_start = if k > l { k - 1 } else { l };
            for j in col_start..=hi {
                let a = h[(k, j)];
                let b = h[(k + 1, j)];
                h[(k, j)] = a * c + s * b;
                h[(k + 1, j)] = -s.conj() * a + b * c;
            }
            let row_end = (k + 2).min(hi);
            for i in l..=row_end {
                let a = h[(i, k)];
                let b = h[(i, k + 1)];
                h[(i, k)] = a * c + b * s.conj();
                h[(i, k + 1)] = -a * s + b * c;
            }
            if k + 1 < hi {
                x = h[(k + 1, k)];
                y = h[(k + 2, k)];
            }
        }
    }
    eig[0] = h[(0, 0)];
    Ok(eig)
}

/// Unitary `[[c, s], [−s̄, c]]` (real `c`) mapping `(x, y)` to `(r, 0)`.
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, ZERO);
    }
    if ax == 0.0 {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let nrm = ax.hypot(ay);
    let alpha = x / ax;
    (ax / nrm, alpha * y.conj() / nrm)
}

/// LU factorization with partial pivoting; near-zero pivots are replaced by
/// a tiny multiple of the matrix norm so inverse iteration can proceed.
#[derive(Debug, Clone)]
pub struct ComplexLu {
    n: usize,
    lu: CMatrix,
    perm: Vec<usize>,
}

impl ComplexLu {
    pub fn new(m: &CMatrix) -> Result<Self> {
        if m.rows != m.cols {
            return Err(Error::DimensionMismatch { expected: m.rows, found: m.cols });
        }
        let n = m.rows;
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let floor = f64::EPSILON * m.frobenius().max(f64::MIN_POSITIVE);
        for k in 0..n {
            let p = (k..n).max_by(|&a, &b| lu[(a, k)].norm().total_cmp(&lu[(b, k)].norm())).unwrap_or(k);
            if p != k {
                for c in 0..n {
                    let t = lu[(k, c)];
                    lu[(k, c)] = lu[(p, c)];
                    lu[(p, c)] = t;
                }
                perm.swap(k, p);
            }
            if lu[(k, k)].norm() < floor {
                lu[(k, k)] = Complex64::new(floor, 0.0);
            }
            let pivot = lu[(k, k)];
            for r in k + 1..n {
                let f = lu[(r, k)] / pivot;
                lu[(r, k)] = f;
                if f != ZERO {
                    for c in k + 1..n {
                        let t = lu[(k, c)];
                        lu[(r, c)] -= f * t;
                    }
                }
            }
        }
        Ok(Self { n, lu, perm })
    }

    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for r in 0..n {
            for c in 0..r {
                let t = x[c];
                x[r] -= self.lu[(r, c)] * t;
            }
        }
        for r in (0..n).rev() {
            for c in r + 1..n {
                let t = x[c];
                x[r] -= self.lu[(r, c)] * t;
            }
            x[r] /= self.lu[(r, r)];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn diagonal_and_triangular() {
        let m = CMatrix::from_fn(3, 3, |r, col| {
            if r == col {
                c(r as f64, 1.0)
            } else if r < col {
                c(1.0, 1.0)
            } else {
                ZERO
            }
        });
        let ev = sorted(complex_eigenvalues(&m, true).unwrap());
        for (k, z) in ev.iter().enumerate() {
            assert!((z - c(k as f64, 1.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn rotation_has_imaginary_pair() {
        let m = CMatrix::from_fn(2, 2, |r, col| match (r, col) {
            (0, 1) => c(-1.0, 0.0),
            (1, 0) => c(1.0, 0.0),
            _ => ZERO,
        });
        let ev = sorted(complex_eigenvalues(&m, false).unwrap());
        assert!((ev[0] - c(0.0, -1.0)).norm() < 1e-14);
        assert!((ev[1] - c(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn companion_of_known_roots() {
        // (x−1)(x−2)(x−3)(x+4) = x⁴ − 2x³ − 13x² + 38x − 24
        let coeffs = [-24.0, 38.0, -13.0, -2.0];
        let n = 4;
        let m = CMatrix::from_fn(n, n, |r, col| {
            if col == n - 1 {
                c(-coeffs[r], 0.0)
            } else if r == col + 1 {
                c(1.0, 0.0)
            } else {
                ZERO
            }
        });
        let ev = sorted(complex_eigenvalues(&m, true).unwrap());
        for (z, want) in ev.iter().zip([-4.0, 1.0, 2.0, 3.0]) {
            assert!((z - c(want, 0.0)).norm() < 1e-12, "{z} vs {want}");
        }
    }

    #[test]
    fn trace_and_determinant_preserved() {
        let m =
            CMatrix::from_fn(6, 6, |r, col| c(((r * 7 + col * 3) % 5) as f64 - 2.0, ((r + 2 * col) % 3) as f64 - 1.0));
        let ev = complex_eigenvalues(&m, true).unwrap();
        let tr: Complex64 = (0..6).map(|i| m[(i, i)]).sum();
        let sum: Complex64 = ev.iter().sum();
        assert!((tr - sum).norm() < 1e-11);
        // each eigenvalue makes m − μI singular
        for mu in ev {
            let lu = ComplexLu::new(&m.shifted(mu)).unwrap();
            let min_pivot = (0..6).map(|i| lu.lu[(i, i)].norm()).fold(f64::INFINITY, f64::min);
            assert!(min_pivot < 1e-10 * m.frobenius(), "pivot {min_pivot}");
        }
    }

    #[test]
    fn lu_solves() {
        let m = CMatrix::from_fn(3, 3, |r, col| {
            c((r + col) as f64 + if r == col { 3.0 } else { 0.0 }, (r as f64) - (col as f64))
        });
        let x = vec![c(1.0, 2.0), c(-1.0, 0.5), c(0.0, -3.0)];
        let b = m.mul_vec(&x);
        let got = ComplexLu::new(&m).unwrap().solve(&b);
        for (g, w) in got.iter().zip(&x) {
            assert!((g - w).norm() < 1e-13);
        }
    }
}
