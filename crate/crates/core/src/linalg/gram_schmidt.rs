use super::QVector;
use crate::error::{Error, Result};

/// Relative residual below which a vector counts as dependent.
pub const TOL_DEP: f64 = 1e-10;

/// Quaternion Gram-Schmidt with right scalars: `v ← v − Σ uᵢ·⟨uᵢ, v⟩`.
///
/// Returns an orthonormal sequence with the same right span. A vector whose
/// residual falls below `TOL_DEP` times its own norm raises
/// [`Error::DependentInput`] carrying its 1-based position.
pub fn gram_schmidt(vs: &[QVector]) -> Result<Vec<QVector>> {
    let len = vs.first().map_or(0, |v| v.len());
    let mut out: Vec<QVector> = Vec::with_capacity(vs.len());
    for (idx, v) in vs.iter().enumerate() {
        if v.len() != len {
            return Err(Error::DimensionMismatch { expected: len, found: v.len() });
        }
        let scale = v.norm();
        let mut w = v.clone();
        // second pass recovers orthogonality lost to cancellation
        for _ in 0..2 {
            for u in &out {
                let c = u.inner(&w)?;
                w = w.sub(&u.mul_right(c));
            }
        }
        let nrm = w.norm();
        if scale == 0.0 || nrm <= TOL_DEP * scale {
            return Err(Error::DependentInput { index: idx + 1 });
        }
        out.push(w.scale(1.0 / nrm));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::Quaternion as Q;

    #[test]
    fn reproduces_example_direction() {
        let r3 = 3f64.sqrt();
        let xi1 = QVector(vec![Q::I, -Q::I * r3 - Q::J, Q::I]);
        let xi2 = QVector(vec![-Q::I * r3 - Q::J, Q::I * 2.0, -Q::I * r3 - Q::J]);
        let xi3 = QVector(vec![-Q::I / r3 - Q::J, -Q::J * (2.0 / r3), -Q::I / r3 - Q::J]);
        let out = gram_schmidt(&[xi1, xi2]).unwrap();
        // second output is ξ₃ up to a positive real factor
        let scaled = xi3.scale(1.0 / xi3.norm());
        assert!(out[1].max_diff(&scaled) < 1e-13);
    }

    #[test]
    fn orthonormal_input_unchanged() {
        let vs = vec![QVector::unit(3, 0), QVector(vec![Q::ZERO, Q::J, Q::ZERO]), QVector::unit(3, 2)];
        let out = gram_schmidt(&vs).unwrap();
        for (a, b) in out.iter().zip(&vs) {
            assert!(a.max_diff(b) < 1e-13);
        }
    }

    #[test]
    fn right_dependent_pair() {
        let v = QVector(vec![Q::new(1.0, 2.0, 0.0, -1.0), Q::new(0.0, 0.5, 1.0, 0.0)]);
        let w = v.mul_right(Q::new(0.3, -1.0, 2.0, 0.5));
        assert_eq!(gram_schmidt(&[v, w]), Err(Error::DependentInput { index: 2 }));
    }
}
