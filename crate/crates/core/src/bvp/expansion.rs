//! Orthogonal sample-point sets, interpolation polynomials `ψ_k`, and the
//! sampling reconstruction `f_s(λ) = Σ f_s(λ_k)·ψ_k(λ, s)`.

use std::cmp::Ordering;

use super::PhiTable;
use crate::error::{Error, Result};
use crate::linalg::{is_normal, right_eigen, QVector};
use crate::poly::{polish_isolated, tol_eval, zeros, QPoly, ZeroKind};
use crate::quaternion::{OrbitClass, Quaternion, TOL_ZERO};

/// Relative tolerance for `|⟨φ_j, φ_k⟩| ≤ TOL_ORTH·‖φ_j‖‖φ_k‖`.
pub const TOL_ORTH: f64 = 1e-8;

const TOL_NORMAL: f64 = 1e-9;
const TOL_IN_ORBIT: f64 = 1e-7;
const MIN_SEPARATION: f64 = 1e-6;

/// Sample points `λ_k`, basis vectors `φ(λ_k, s)` and interpolants `ψ_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingExpansion {
    s: Quaternion,
    points: Vec<Quaternion>,
    basis: Vec<QVector>,
    interpolants: Vec<QPoly>,
}

impl SamplingExpansion {
    /// Builds the expansion for the given points, in the given order.
    ///
    /// Fails with [`Error::InvalidSamplePoints`] unless there are exactly
    /// `N` distinct zeros of `p_N(·, s)` with pairwise orthogonal `φ(λ_k, s)`.
    pub fn from_points(table: &PhiTable, s: Quaternion, points: Vec<Quaternion>) -> Result<Self> {
        let basis = points.iter().map(|p| table.phi_vector(*p, s)).collect();
        Self::assemble(table, s, points, basis)
    }

    /// Sample points from the eigenpairs `(α_k, u_k)` of the (normal)
    /// operator matrix: `t_k = u_{1k}⁻¹·s`, `λ_k = t_k⁻¹·α_k·t_k`, with
    /// basis vectors `u_k·t_k`.
    pub fn method1(table: &PhiTable, s: Quaternion) -> Result<Self> {
        check_s(s)?;
        let l = table.spec().operator_matrix();
        require_normal(&l)?;
        let mut points = Vec::new();
        let mut basis = Vec::new();
        for (k, pair) in right_eigen(&l)?.into_iter().enumerate() {
            let u1 = pair.vector[0];
            if u1.norm() <= 1e-12 * pair.vector.norm() {
                return Err(Error::FirstEntryZero { index: k + 1, norm: u1.norm() });
            }
            let t = u1.inverse()? * s;
            points.push(t.inverse()? * pair.value * t);
            basis.push(pair.vector.mul_right(t));
        }
        let (points, basis) = sorted(points, basis);
        Self::assemble(table, s, points, basis)
    }

    /// Sample points from the zeros of `p_N(·, s)`: one per isolated zero,
    /// and for a spherical orbit holding `m` points, the standard
    /// representative followed by in-orbit solutions of
    /// `⟨φ(λ_prev, s), φ(λ, s)⟩ = 0`.
    pub fn method2(table: &PhiTable, s: Quaternion) -> Result<Self> {
        check_s(s)?;
        let l = table.spec().operator_matrix();
        require_normal(&l)?;
        let p = table.boundary_poly(s)?;
        let eig = right_eigen(&l)?;
        let mut points = Vec::new();
        for report in zeros(&p)? {
            match report.kind {
                ZeroKind::Spherical => {
                    let tol = 1e-6 * (1.0 + report.orbit.modulus());
                    let m = eig.iter().filter(|e| report.orbit.contains(e.value, tol)).count().max(1);
                    points.extend(orbit_points(table, s, report.orbit, report.representative, m)?);
                }
                ZeroKind::RealIsolated => {
                    points.push(Quaternion::real(table.refine_zero(report.representative, s).re()))
                }
                ZeroKind::NonrealIsolated => points.push(table.refine_zero(report.representative, s)),
            }
        }
        let basis = points.iter().map(|p| table.phi_vector(*p, s)).collect();
        let (points, basis) = sorted(points, basis);
        Self::assemble(table, s, points, basis)
    }

    pub fn s(&self) -> Quaternion {
        self.s
    }

    pub fn points(&self) -> &[Quaternion] {
        &self.points
    }

    pub fn basis(&self) -> &[QVector] {
        &self.basis
    }

    pub fn interpolants(&self) -> &[QPoly] {
        &self.interpolants
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn assemble(table: &PhiTable, s: Quaternion, points: Vec<Quaternion>, basis: Vec<QVector>) -> Result<Self> {
        check_s(s)?;
        let n = table.n();
        if points.len() != n {
            return Err(Error::InvalidSamplePoints(format!("expected {n} points, got {}", points.len())));
        }
        let p = table.boundary_poly(s)?;
        for (k, lam) in points.iter().enumerate() {
            let v = p.eval(*lam).norm();
            if !(v <= tol_eval(&p, *lam)) {
                return Err(Error::InvalidSamplePoints(format!("point {} is not a zero (|p_N| = {v:.3e})", k + 1)));
            }
            for (j, other) in points.iter().enumerate().take(k) {
                if (*lam - *other).norm() <= MIN_SEPARATION {
                    return Err(Error::InvalidSamplePoints(format!("points {} and {} coincide", j + 1, k + 1)));
                }
                let ip = basis[j].inner(&basis[k])?.norm();
                if !(ip <= TOL_ORTH * basis[j].norm() * basis[k].norm()) {
                    return Err(Error::InvalidSamplePoints(format!(
                        "basis vectors {} and {} are not orthogonal ({ip:.3e})",
                        j + 1,
                        k + 1
                    )));
                }
            }
        }
        let interpolants = interpolants(table, s, &basis);
        Ok(Self { s, points, basis, interpolants })
    }
}

/// `ψ_k(λ, s) = ⟨φ(λ_k, s), φ(λ, s)⟩ / ‖φ(λ_k, s)‖²` as polynomials: the
/// coefficient of `λ^j` is `‖φ_k‖⁻²·Σ_m conj(φ_k[m])·c(j, m)·s`.
fn interpolants(table: &PhiTable, s: Quaternion, basis: &[QVector]) -> Vec<QPoly> {
    let n = table.n();
    basis
        .iter()
        .map(|phi| {
            let w = 1.0 / phi.norm_sqr();
            let coeffs = (0..n)
                .map(|j| {
                    let acc: Quaternion = (1..=n)
                        .filter(|m| j < table.coeffs(*m).len())
                        .map(|m| phi[m - 1].conj() * table.coeffs(m)[j] * s)
                        .sum();
                    acc * w
                })
                .collect();
            QPoly::from_raw(coeffs)
        })
        .collect()
}

/// `f_s(λ) = Σ_k conj(F(k))·φ(k, λ, s)`.
pub fn transform(f: &[Quaternion], table: &PhiTable, s: Quaternion, lambda: Quaternion) -> Result<Quaternion> {
    if f.len() != table.n() {
        return Err(Error::DimensionMismatch { expected: table.n(), found: f.len() });
    }
    Ok(f.iter().enumerate().map(|(k, fk)| fk.conj() * table.phi(k + 1, lambda, s)).sum())
}

/// `Σ_k f_s(λ_k)·ψ_k(λ, s)` with the samples on the left.
pub fn reconstruct(samples: &[Quaternion], exp: &SamplingExpansion, lambda: Quaternion) -> Result<Quaternion> {
    if samples.len() != exp.len() {
        return Err(Error::DimensionMismatch { expected: exp.len(), found: samples.len() });
    }
    Ok(samples.iter().zip(&exp.interpolants).map(|(f, psi)| *f * psi.eval(lambda)).sum())
}

/// Another valid expansion obtained by re-choosing the sample points inside
/// one spherical zero orbit, starting from `seed`.
///
/// A lone in-orbit point is replaced by `seed`; several in-orbit points are
/// rebuilt from `seed` by the orthogonality procedure. Points outside the
/// orbit are kept.
pub fn alternate_expansion(
    exp: &SamplingExpansion,
    table: &PhiTable,
    orbit: OrbitClass,
    seed: Quaternion,
) -> Result<SamplingExpansion> {
    let s = exp.s;
    let p = table.boundary_poly(s)?;
    let tol = TOL_IN_ORBIT * (1.0 + orbit.modulus());
    let spherical = zeros(&p)?.into_iter().any(|z| z.kind == ZeroKind::Spherical && z.orbit.distance(orbit) <= tol);
    if !spherical {
        return Err(Error::NotSpherical { re: orbit.re, r: orbit.r });
    }
    if !orbit.contains(seed, tol) {
        return Err(Error::SeedNotInOrbit(format!("{seed} is not in the orbit of {}", orbit.representative())));
    }
    let seed = project(orbit, seed);
    let (inside, outside): (Vec<usize>, Vec<usize>) = (0..exp.len()).partition(|&k| orbit.contains(exp.points[k], tol));
    if inside.is_empty() {
        return Err(Error::InvalidSamplePoints("no sample point lies in the orbit".into()));
    }
    let mut points: Vec<Quaternion> = outside.iter().map(|&k| exp.points[k]).collect();
    let mut basis: Vec<QVector> = outside.iter().map(|&k| exp.basis[k].clone()).collect();
    let fresh = orbit_points(table, s, orbit, seed, inside.len())?;
    for f in fresh {
        basis.push(table.phi_vector(f, s));
        points.push(f);
    }
    let (points, basis) = sorted(points, basis);
    SamplingExpansion::assemble(table, s, points, basis)
}

fn check_s(s: Quaternion) -> Result<()> {
    if s.norm() <= TOL_ZERO {
        return Err(Error::ZeroDivision { norm: s.norm() });
    }
    Ok(())
}

fn require_normal(l: &crate::linalg::QMatrix) -> Result<()> {
    if !is_normal(l, TOL_NORMAL)? {
        let adj = l.adjoint();
        let comm = l.matmul(&adj)?.sub(&adj.matmul(l)?)?.frobenius();
        let norm = l.frobenius();
        return Err(Error::NotNormal(comm / (norm * norm)));
    }
    Ok(())
}

fn project(orbit: OrbitClass, q: Quaternion) -> Quaternion {
    match q.axis() {
        Some(u) => orbit.point(u),
        None => orbit.representative(),
    }
}

/// `m` points of a spherical zero orbit with pairwise orthogonal
/// `φ(·, s)`, beginning with `seed`.
fn orbit_points(
    table: &PhiTable,
    s: Quaternion,
    orbit: OrbitClass,
    seed: Quaternion,
    m: usize,
) -> Result<Vec<Quaternion>> {
    let mut chosen = vec![seed];
    while chosen.len() < m {
        let next = match next_in_orbit(table, s, orbit, &chosen) {
            Some(q) => q,
            None => sphere_search(table, s, orbit, &chosen)?,
        };
        chosen.push(next);
    }
    Ok(chosen)
}

/// Normalized orthogonality defect of `λ` against the chosen points.
fn defect(table: &PhiTable, s: Quaternion, chosen: &[Quaternion], lambda: Quaternion) -> f64 {
    let v = table.phi_vector(lambda, s);
    let vn = v.norm();
    chosen
        .iter()
        .map(|c| {
            let u = table.phi_vector(*c, s);
            let ip = u.inner(&v).expect("equal lengths").norm() / (u.norm() * vn);
            ip * ip
        })
        .sum::<f64>()
        .sqrt()
}

fn acceptable(table: &PhiTable, s: Quaternion, chosen: &[Quaternion], lambda: Quaternion) -> bool {
    let distinct = chosen.iter().all(|c| (*c - lambda).norm() > MIN_SEPARATION);
    distinct && defect(table, s, chosen, lambda) <= 0.1 * TOL_ORTH
}

/// In-orbit zeros of `⟨φ(λ_last, s), φ(λ, s)⟩` that are also orthogonal to
/// every earlier point.
fn next_in_orbit(table: &PhiTable, s: Quaternion, orbit: OrbitClass, chosen: &[Quaternion]) -> Option<Quaternion> {
    let last = *chosen.last()?;
    let g = table.inner_poly(last, s);
    let tol = TOL_IN_ORBIT * (1.0 + orbit.modulus());
    let reports = zeros(&g).ok()?;
    reports
        .into_iter()
        .filter(|z| z.kind != ZeroKind::Spherical && orbit.contains(z.representative, tol))
        .map(|z| project(orbit, z.representative))
        .find(|q| acceptable(table, s, chosen, *q))
}

/// Fallback: minimize the orthogonality defect over an icosahedral grid of
/// the orbit's 2-sphere, refine locally, then polish with Newton on the
/// last inner-product polynomial.
fn sphere_search(table: &PhiTable, s: Quaternion, orbit: OrbitClass, chosen: &[Quaternion]) -> Result<Quaternion> {
    let f = |u: [f64; 3]| {
        let q = orbit.point(Quaternion::new(0.0, u[0], u[1], u[2]));
        if chosen.iter().any(|c| (*c - q).norm() <= MIN_SEPARATION) {
            f64::INFINITY
        } else {
            defect(table, s, chosen, q)
        }
    };
    let mut best = icosphere(2)
        .into_iter()
        .map(|u| (f(u), u))
        .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal))
        .expect("non-empty grid");
    let mut h = 0.2;
    while h > 1e-13 {
        let (t1, t2) = tangent_basis(best.1);
        let mut improved = false;
        for (d, sign) in [(t1, 1.0), (t1, -1.0), (t2, 1.0), (t2, -1.0)] {
            let cand =
                normalize([best.1[0] + sign * h * d[0], best.1[1] + sign * h * d[1], best.1[2] + sign * h * d[2]]);
            let v = f(cand);
            if v < best.0 {
                best = (v, cand);
                improved = true;
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    let mut q = orbit.point(Quaternion::new(0.0, best.1[0], best.1[1], best.1[2]));
    let g = table.inner_poly(*chosen.last().expect("seeded"), s);
    let polished = project(orbit, polish_isolated(&g, q));
    if defect(table, s, chosen, polished) < defect(table, s, chosen, q) {
        q = polished;
    }
    if acceptable(table, s, chosen, q) {
        Ok(q)
    } else {
        Err(Error::OrbitSelectionFailure { re: orbit.re, r: orbit.r, residual: defect(table, s, chosen, q) })
    }
}

fn normalize(u: [f64; 3]) -> [f64; 3] {
    let n = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
    [u[0] / n, u[1] / n, u[2] / n]
}

fn tangent_basis(u: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let helper = if u[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let cross =
        |a: [f64; 3], b: [f64; 3]| [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
    let t1 = normalize(cross(u, helper));
    (t1, cross(u, t1))
}

/// Vertices of an icosahedron subdivided `levels` times, on the unit sphere.
fn icosphere(levels: usize) -> Vec<[f64; 3]> {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let mut verts: Vec<[f64; 3]> = [
        [-1.0, t, 0.0],
        [1.0, t, 0.0],
        [-1.0, -t, 0.0],
        [1.0, -t, 0.0],
        [0.0, -1.0, t],
        [0.0, 1.0, t],
        [0.0, -1.0, -t],
        [0.0, 1.0, -t],
        [t, 0.0, -1.0],
        [t, 0.0, 1.0],
        [-t, 0.0, -1.0],
        [-t, 0.0, 1.0],
    ]
    .into_iter()
    .map(normalize)
    .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..levels {
        let mut cache = std::collections::HashMap::new();
        let mut mid = |a: usize, b: usize, verts: &mut Vec<[f64; 3]>| {
            *cache.entry((a.min(b), a.max(b))).or_insert_with(|| {
                let (p, q) = (verts[a], verts[b]);
                verts.push(normalize([p[0] + q[0], p[1] + q[1], p[2] + q[2]]));
                verts.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let ab = mid(a, b, &mut verts);
            let bc = mid(b, c, &mut verts);
            let ca = mid(c, a, &mut verts);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }
    verts
}

/// Orders points by real part, imaginary magnitude, then axis (descending,
/// so the standard representative `re + r·i` leads its orbit). Keys are
/// rounded to `1e-8` relative so round-off cannot reorder equal values.
fn sorted(points: Vec<Quaternion>, basis: Vec<QVector>) -> (Vec<Quaternion>, Vec<QVector>) {
    let unit = 1e-8 * (1.0 + points.iter().map(|q| q.norm()).fold(0.0, f64::max));
    let key = |q: &Quaternion| {
        let o = OrbitClass::of(*q);
        let u = q.axis().unwrap_or(Quaternion::ZERO);
        let round = |v: f64| (v / unit).round() as i64;
        (round(o.re), round(o.r), -round(u.x), -round(u.y), -round(u.z))
    };
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by_key(|&k| key(&points[k]));
    let pts = idx.iter().map(|&k| points[k]).collect();
    let bas = idx.iter().map(|&k| basis[k].clone()).collect();
    (pts, bas)
}

#[cfg(test)]
mod tests {
    use super::super::{build_phi, random_normal_spec, BvpSpec};
    use super::*;
    use crate::quaternion::Quaternion as Q;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r3() -> f64 {
        3f64.sqrt()
    }

    fn example_31() -> PhiTable {
        build_phi(&BvpSpec::new(vec![Q::J; 3], vec![-Q::I; 4], Q::ZERO, Q::ZERO).unwrap()).unwrap()
    }

    fn assert_poly(got: &QPoly, want: &[Q], tol: f64) {
        for k in 0..want.len().max(got.coeffs().len()) {
            let w = want.get(k).copied().unwrap_or(Q::ZERO);
            assert!((got.coeff(k) - w).norm() <= tol, "coeff {k}: {} vs {w}", got.coeff(k));
        }
    }

    #[test]
    fn fixed_points_give_known_interpolants() {
        let t = example_31();
        let pts = vec![Q::I, -Q::J * r3(), Q::new(0.0, 1.5, r3() / 2.0, 0.0)];
        let e = SamplingExpansion::from_points(&t, Q::ONE + Q::K, pts).unwrap();
        let psi = e.interpolants();
        assert_poly(&psi[0], &[Q::real(1.5), Q::ZERO, Q::real(0.5)], 1e-12);
        let ij = Q::I + Q::J * r3();
        assert_poly(&psi[1], &[Q::K * (r3() / 6.0), ij / 6.0, Q::real(-1.0 / 6.0)], 1e-12);
        assert_poly(&psi[2], &[(Q::K * r3() + Q::real(3.0)) / -6.0, ij / -6.0, Q::real(-2.0 / 6.0)], 1e-12);
    }

    #[test]
    fn method2_on_example() {
        let t = example_31();
        let e = SamplingExpansion::method2(&t, Q::ONE + Q::K).unwrap();
        let want = [Q::I, Q::I * r3(), -Q::I * r3()];
        for (g, w) in e.points().iter().zip(want) {
            assert!((*g - w).norm() < 1e-10, "{:?}", e.points());
        }
    }

    #[test]
    fn method1_on_example() {
        let t = example_31();
        let s = Q::ONE + Q::K;
        let e = SamplingExpansion::method1(&t, s).unwrap();
        assert_eq!(e.len(), 3);
        assert!((e.points()[0] - Q::I).norm() < 1e-10, "{:?}", e.points());
        for p in &e.points()[1..] {
            assert!(OrbitClass::new(0.0, r3()).contains(*p, 1e-10));
        }
        for b in e.basis() {
            assert!((b[0] - s).norm() < 1e-10);
        }
    }

    #[test]
    fn non_normal_rejected() {
        let spec = BvpSpec::new(vec![Q::ONE, Q::I], vec![Q::ONE; 3], Q::ZERO, Q::ZERO).unwrap();
        let t = build_phi(&spec).unwrap();
        assert!(matches!(SamplingExpansion::method1(&t, Q::ONE), Err(Error::NotNormal(_))));
    }

    #[test]
    fn alternate_replaces_orbit_points() {
        let t = example_31();
        let s = Q::ONE + Q::K;
        let e = SamplingExpansion::method1(&t, s).unwrap();
        let orbit = OrbitClass::new(0.0, r3());
        let alt = alternate_expansion(&e, &t, orbit, Q::I * r3()).unwrap();
        assert!((alt.points()[1] - Q::I * r3()).norm() < 1e-10);
        assert!((alt.points()[2] + Q::I * r3()).norm() < 1e-10);
        let seed = Q::new(0.0, 0.0, 1.0, 1.0) * (r3() / 2f64.sqrt());
        let alt = alternate_expansion(&e, &t, orbit, seed).unwrap();
        assert!(alt.points().iter().any(|p| (*p - seed).norm() < 1e-12));
        assert!(matches!(alternate_expansion(&e, &t, orbit, Q::J), Err(Error::SeedNotInOrbit(_))));
        assert!(matches!(
            alternate_expansion(&e, &t, OrbitClass::new(0.0, 1.0), Q::I),
            Err(Error::NotSpherical { .. })
        ));
    }

    #[test]
    fn sphere_search_finds_partner() {
        let t = example_31();
        let s = Q::ONE + Q::K;
        let orbit = OrbitClass::new(0.0, r3());
        let q = sphere_search(&t, s, orbit, &[Q::I * r3()]).unwrap();
        assert!((q + Q::I * r3()).norm() < 1e-8, "{q}");
    }

    #[test]
    fn random_specs_reconstruct() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..7 {
            let spec = random_normal_spec(&mut rng, n);
            let t = build_phi(&spec).unwrap();
            let s = Q::new(0.4, -1.0, 0.3, 0.2);
            for e in [SamplingExpansion::method1(&t, s).unwrap(), SamplingExpansion::method2(&t, s).unwrap()] {
                let f: Vec<Q> = (0..n).map(|k| Q::new(k as f64, 1.0, -0.5, 0.25 * k as f64)).collect();
                let samples: Vec<Q> = e.points().iter().map(|p| transform(&f, &t, s, *p).unwrap()).collect();
                let lam = Q::new(0.2, 0.7, -0.1, 0.5);
                let want = transform(&f, &t, s, lam).unwrap();
                let got = reconstruct(&samples, &e, lam).unwrap();
                assert!((want - got).norm() < 1e-8 * (1.0 + want.norm()), "n={n}");
            }
        }
    }

    #[test]
    fn transform_basics() {
        let t = example_31();
        let s = Q::ONE + Q::K;
        let e1 = [Q::ONE, Q::ZERO, Q::ZERO];
        assert_eq!(transform(&e1, &t, s, Q::new(0.3, 1.0, 2.0, -1.0)).unwrap(), s);
        let e2 = [Q::ZERO, Q::ONE, Q::ZERO];
        assert!(transform(&e2, &t, s, Q::I).unwrap().norm() < 1e-15);
        assert!(matches!(transform(&[Q::ONE], &t, s, Q::I), Err(Error::DimensionMismatch { .. })));
    }
}
