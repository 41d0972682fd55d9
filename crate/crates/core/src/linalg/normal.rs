use super::QMatrix;
use crate::error::{Error, Result};

/// `‖A·A* − A*·A‖_F ≤ tol·‖A‖_F²`.
pub fn is_normal(a: &QMatrix, tol: f64) -> Result<bool> {
    a.require_square()?;
    let adj = a.adjoint();
    let comm = a.matmul(&adj)?.sub(&adj.matmul(a)?)?;
    let norm = a.frobenius();
    Ok(comm.frobenius() <= tol * norm * norm)
}

/// Real components `[L₀, L₁, L₂, L₃]` with `A = L₀ + i·L₁ + j·L₂ + k·L₃`,
/// each as a row-major `n×n` array.
pub fn real_parts(a: &QMatrix) -> [Vec<f64>; 4] {
    let comp = |m: usize| a.entries().iter().map(|q| q.components()[m]).collect::<Vec<_>>();
    [comp(0), comp(1), comp(2), comp(3)]
}

fn commutator_norm(x: &[f64], y: &[f64], n: usize) -> f64 {
    let mut acc = 0.0;
    for r in 0..n {
        for c in 0..n {
            let mut v = 0.0;
            for m in 0..n {
                v += x[r * n + m] * y[m * n + c] - y[r * n + m] * x[m * n + c];
            }
            acc += v * v;
        }
    }
    acc.sqrt()
}

/// Normality test for symmetric (`A = Aᵀ`) matrices through the real-part
/// decomposition: `A` is normal iff `L₀` commutes with `L₁`, `L₂` and `L₃`.
pub fn normality_by_parts(a: &QMatrix, tol: f64) -> Result<bool> {
    let n = a.require_square()?;
    let norm = a.frobenius();
    let asym = a.asymmetry();
    if asym > tol * norm {
        return Err(Error::NotSymmetric(asym));
    }
    let [l0, l1, l2, l3] = real_parts(a);
    let bound = tol * norm * norm;
    Ok([&l1, &l2, &l3].iter().all(|lm| commutator_norm(&l0, lm, n) <= bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::Quaternion as Q;

    #[test]
    fn example_operator_is_normal() {
        let l = QMatrix::tridiagonal(&[Q::J; 3], &[-Q::I; 2]).unwrap();
        assert!(is_normal(&l, 1e-12).unwrap());
        assert!(normality_by_parts(&l, 1e-12).unwrap());
    }

    #[test]
    fn real_symmetric_is_normal() {
        let a = QMatrix::from_fn(3, 3, |r, c| Q::real((r + c) as f64 * 0.5 - (r * c) as f64));
        assert!(is_normal(&a, 1e-12).unwrap());
    }

    #[test]
    fn jordan_like_is_not_normal() {
        let a = QMatrix::from_rows(&[vec![Q::I, Q::ONE], vec![Q::ZERO, Q::I]]).unwrap();
        assert!(!is_normal(&a, 1e-10).unwrap());
    }

    #[test]
    fn scalar_plus_imaginary_symmetric() {
        let s = [[1.0, 2.0, 0.0], [2.0, -1.0, 0.5], [0.0, 0.5, 3.0]];
        let a = QMatrix::from_fn(3, 3, |r, c| Q::real(if r == c { 1.5 } else { 0.0 }) + Q::I * s[r][c]);
        assert!(normality_by_parts(&a, 1e-12).unwrap());
        assert!(is_normal(&a, 1e-12).unwrap());
    }

    #[test]
    fn noncommuting_parts() {
        let a = QMatrix::from_rows(&[vec![Q::real(1.0), Q::I], vec![Q::I, Q::real(2.0)]]).unwrap();
        assert!(!normality_by_parts(&a, 1e-10).unwrap());
        assert!(!is_normal(&a, 1e-10).unwrap());
    }

    #[test]
    fn rejects_asymmetric() {
        let a = QMatrix::from_rows(&[vec![Q::ONE, Q::I], vec![Q::J, Q::ONE]]).unwrap();
        assert!(matches!(normality_by_parts(&a, 1e-10), Err(Error::NotSymmetric(_))));
    }
}
