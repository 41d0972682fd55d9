//! Characteristic polynomials of tridiagonal symmetric quaternion matrices.
//!
//! `A` is read as the operator matrix of a recurrence with `a(k) = A[k,k]`,
//! `b(k) = A[k,k+1]`, `b(0) = b(n) = 1` and `h₁ = h₂ = 0`; the boundary
//! polynomial of that recurrence has the right spectrum of `A` as the
//! similarity closure of its zeros.

use crate::bvp::{build_phi, BvpSpec};
use crate::error::{Error, Result};
use crate::linalg::{standard_eigenvalues, QMatrix};
use crate::poly::{zeros, QPoly, ZeroReport};
use crate::quaternion::{OrbitClass, Quaternion, TOL_ZERO};

const TOL_STRUCTURE: f64 = 1e-13;
/// Relative tolerance for matching zero orbits against eigenvalue orbits.
pub const TOL_SPECTRUM: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct CharPolyResult {
    pub poly: QPoly,
    pub zero_classes: Vec<ZeroReport>,
    /// Distinct orbits of the standard eigenvalues.
    pub spectrum_classes: Vec<OrbitClass>,
}

fn as_spec(a: &QMatrix) -> Result<BvpSpec> {
    let n = a.rows();
    if !a.is_square() || n == 0 {
        return Err(Error::NotTridiagonalSymmetric);
    }
    let tol = TOL_STRUCTURE * a.frobenius().max(1.0);
    for r in 0..n {
        for c in 0..n {
            let off_band = r.abs_diff(c) > 1 && a[(r, c)].norm() > tol;
            if off_band || (a[(r, c)] - a[(c, r)]).norm() > tol {
                return Err(Error::NotTridiagonalSymmetric);
            }
        }
    }
    let mut b = vec![Quaternion::ONE; n + 1];
    for k in 1..n {
        b[k] = a[(k - 1, k)];
        if b[k].norm() <= TOL_ZERO {
            return Err(Error::ZeroOffDiagonal(k));
        }
    }
    let diag = (0..n).map(|k| a[(k, k)]).collect();
    BvpSpec::new(diag, b, Quaternion::ZERO, Quaternion::ZERO)
}

/// Degree-`n` polynomial `p_n(A, λ, s)` whose zero orbits are the
/// eigenvalue orbits of `A`.
pub fn char_poly(a: &QMatrix, s: Quaternion) -> Result<QPoly> {
    let spec = as_spec(a)?;
    build_phi(&spec)?.boundary_poly(s)
}

/// Zeros of `char_poly(A, s)` cross-checked against the standard
/// eigenvalues of `A` as sets of similarity orbits.
///
/// Returns [`Error::SpectrumMismatch`] when the two sets differ.
pub fn spectrum_check(a: &QMatrix, s: Quaternion) -> Result<CharPolyResult> {
    let poly = char_poly(a, s)?;
    let zero_classes = zeros(&poly)?;
    let mut spectrum_classes: Vec<OrbitClass> = Vec::new();
    for v in standard_eigenvalues(a)? {
        let o = OrbitClass::of(v);
        if !spectrum_classes.iter().any(|p| p.distance(o) <= TOL_SPECTRUM * (1.0 + p.modulus())) {
            spectrum_classes.push(o);
        }
    }
    let zero_orbits: Vec<OrbitClass> = zero_classes.iter().map(|z| z.orbit).collect();
    let matched =
        |o: &OrbitClass, set: &[OrbitClass]| set.iter().any(|p| p.distance(*o) <= TOL_SPECTRUM * (1.0 + o.modulus()));
    if let Some(z) = zero_orbits.iter().find(|z| !matched(z, &spectrum_classes)) {
        return Err(Error::SpectrumMismatch(format!("zero orbit {z} has no matching eigenvalue")));
    }
    if let Some(o) = spectrum_classes.iter().find(|o| !matched(o, &zero_orbits)) {
        return Err(Error::SpectrumMismatch(format!("eigenvalue orbit {o} has no matching zero")));
    }
    Ok(CharPolyResult { poly, zero_classes, spectrum_classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::Quaternion as Q;

    #[test]
    fn one_by_one() {
        let a = QMatrix::from_rows(&[vec![Q::J]]).unwrap();
        assert_eq!(char_poly(&a, Q::ONE).unwrap().coeffs(), &[-Q::J, Q::ONE]);
    }

    #[test]
    fn real_two_by_two() {
        let a = QMatrix::from_rows(&[vec![Q::ZERO, Q::ONE], vec![Q::ONE, Q::ZERO]]).unwrap();
        let r = spectrum_check(&a, Q::ONE).unwrap();
        let re: Vec<f64> = r.zero_classes.iter().map(|z| z.orbit.re).collect();
        assert_eq!(r.zero_classes.len(), 2);
        assert!((re[0] + 1.0).abs() < 1e-12 && (re[1] - 1.0).abs() < 1e-12);
        assert_eq!(r.spectrum_classes.len(), 2);
    }

    #[test]
    fn structure_errors() {
        let full = QMatrix::from_fn(3, 3, |_, _| Q::ONE);
        assert!(matches!(char_poly(&full, Q::ONE), Err(Error::NotTridiagonalSymmetric)));
        let asym = QMatrix::from_rows(&[vec![Q::ZERO, Q::ONE], vec![Q::I, Q::ZERO]]).unwrap();
        assert!(matches!(char_poly(&asym, Q::ONE), Err(Error::NotTridiagonalSymmetric)));
        let split = QMatrix::tridiagonal(&[Q::ONE; 3], &[Q::ONE, Q::ZERO]).unwrap();
        assert!(matches!(char_poly(&split, Q::ONE), Err(Error::ZeroOffDiagonal(2))));
    }

    #[test]
    fn four_by_four_with_real_scale() {
        let a =
            QMatrix::tridiagonal(&[Q::ONE, Q::I, Q::J, Q::K], &[Q::ONE + Q::I, Q::ONE + Q::J, Q::ONE + Q::K]).unwrap();
        let p = char_poly(&a, Q::real(-4.0)).unwrap();
        let want = [
            Q::new(1.0, -4.0, 1.0, 0.0),
            Q::new(-3.0, -3.0, 1.0, -3.0),
            Q::new(3.0, -1.0, -1.0, -1.0),
            Q::new(3.0, -1.0, -1.0, -1.0),
            Q::new(0.0, 1.0, 0.0, 1.0),
        ];
        for (g, w) in p.coeffs().iter().zip(want) {
            assert!((*g - w).norm() < 1e-13, "{g} vs {w}");
        }
    }

    #[test]
    fn leading_coefficient() {
        let off = [Q::new(1.0, 2.0, 0.0, 0.0), Q::J * 0.5];
        let a = QMatrix::tridiagonal(&[Q::I, Q::ONE, Q::K], &off).unwrap();
        let s = Q::new(0.0, 1.0, 1.0, 0.0);
        let p = char_poly(&a, s).unwrap();
        assert_eq!(p.degree(), 3);
        let want = s.norm() / (off[0].norm() * off[1].norm());
        assert!((p.leading().norm() - want).abs() < 1e-14);
    }
}
