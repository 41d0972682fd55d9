use proptest::prelude::*;
use qsampling::linalg::{complex_adjoint, gram_schmidt, right_eigen, QMatrix, QVector};
use qsampling::poly::{companion_residue as residue, tol_eval};
use qsampling::verify::{
    random_matrix, random_nonzero, random_poly, random_quaternion, random_tridiagonal, same_zero_sets,
};
use qsampling::{
    build_phi, char_poly, conjugate_zero_set, random_normal_spec, reconstruct, spectrum_check, transform, zeros,
    OrbitClass, Quaternion as Q, SamplingExpansion, ZeroKind,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn quat() -> impl Strategy<Value = Q> {
    (-10.0..10.0f64, -10.0..10.0f64, -10.0..10.0f64, -10.0..10.0f64).prop_map(|(w, x, y, z)| Q::new(w, x, y, z))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn unit_axis(r: &mut ChaCha8Rng) -> Q {
    loop {
        let q = random_quaternion(r).imag();
        if q.norm() > 0.1 {
            return q / q.norm();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_is_multiplicative_and_conjugate_gives_norm(p in quat(), q in quat()) {
        prop_assert!(((p * q).norm() - p.norm() * q.norm()).abs() <= 1e-12 * (1.0 + p.norm() * q.norm()));
        let n = q * q.conj();
        prop_assert!((n - Q::real(q.norm_sqr())).norm() <= 1e-13 * (1.0 + q.norm_sqr()));
        prop_assert!((q.conj() * q - n).norm() <= 1e-13 * (1.0 + q.norm_sqr()));
    }

    #[test]
    fn inverse_is_two_sided(q in quat()) {
        prop_assume!(q.norm() > 1e-3);
        let inv = q.inverse().unwrap();
        prop_assert!((q * inv - Q::ONE).norm() <= 1e-14 * 10.0);
        prop_assert!((inv * q - Q::ONE).norm() <= 1e-14 * 10.0);
    }

    #[test]
    fn conjugates_share_orbit(q in quat(), a in quat()) {
        prop_assume!(a.norm() > 1e-2);
        let c = a.inverse().unwrap() * q * a;
        prop_assert!(qsampling::is_similar(c, q, 1e-10 * (1.0 + q.norm())));
        prop_assert!(OrbitClass::of(c).distance(OrbitClass::of(q)) <= 1e-10 * (1.0 + q.norm()));
    }

    #[test]
    fn inner_product_axioms(seed in any::<u64>(), n in 1usize..7, alpha in quat()) {
        let mut r = rng(seed);
        let x = QVector((0..n).map(|_| random_quaternion(&mut r)).collect());
        let y = QVector((0..n).map(|_| random_quaternion(&mut r)).collect());
        prop_assert!((x.inner(&y).unwrap() - y.inner(&x).unwrap().conj()).norm() <= 1e-13 * 10.0);
        let lhs = x.inner(&y.mul_right(alpha)).unwrap();
        let rhs = x.inner(&y).unwrap() * alpha;
        prop_assert!((lhs - rhs).norm() <= 1e-13 * (1.0 + alpha.norm()) * 10.0);
        let xx = x.inner(&x).unwrap();
        prop_assert!(xx.imag_norm() <= 1e-15 * xx.re() && xx.re() >= 0.0);
    }

    #[test]
    fn adjoint_reverses_products(seed in any::<u64>(), n in 1usize..6) {
        let mut r = rng(seed);
        let a = random_matrix(&mut r, n);
        let b = random_matrix(&mut r, n);
        prop_assert_eq!(a.adjoint().adjoint(), a.clone());
        let lhs = a.matmul(&b).unwrap().adjoint();
        let rhs = b.adjoint().matmul(&a.adjoint()).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().frobenius() <= 1e-12 * a.frobenius() * b.frobenius());
    }

    #[test]
    fn gram_schmidt_is_orthonormal(seed in any::<u64>(), n in 1usize..7, m in 1usize..7) {
        let m = m.min(n);
        let mut r = rng(seed);
        let vs: Vec<QVector> = (0..m).map(|_| QVector((0..n).map(|_| random_quaternion(&mut r)).collect())).collect();
        let us = gram_schmidt(&vs).unwrap();
        for (i, u) in us.iter().enumerate() {
            prop_assert!((u.norm() - 1.0).abs() <= 1e-12);
            for v in &us[..i] {
                prop_assert!(u.inner(v).unwrap().norm() <= 1e-10);
            }
        }
    }

    #[test]
    fn complex_adjoint_is_multiplicative(seed in any::<u64>(), n in 1usize..7) {
        let mut r = rng(seed);
        let a = random_matrix(&mut r, n);
        let b = random_matrix(&mut r, n);
        let lhs = complex_adjoint(&a.matmul(&b).unwrap()).unwrap();
        let rhs = complex_adjoint(&a).unwrap().matmul(&complex_adjoint(&b).unwrap()).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().frobenius() <= 1e-10 * a.frobenius() * b.frobenius());
    }

    #[test]
    fn conjugated_eigenpairs_stay_eigenpairs(seed in any::<u64>(), n in 1usize..6) {
        let mut r = rng(seed);
        let a = random_matrix(&mut r, n);
        for p in right_eigen(&a).unwrap() {
            prop_assert!(p.residual(&a).unwrap() <= 1e-9 * a.frobenius());
            prop_assert!((p.vector.norm() - 1.0).abs() <= 1e-12);
            let alpha = random_nonzero(&mut r);
            let alpha = alpha / alpha.norm();
            let v = p.vector.mul_right(alpha);
            let lam = alpha.inverse().unwrap() * p.value * alpha;
            let res = a.mul_vec(&v).unwrap().sub(&v.mul_right(lam)).norm();
            prop_assert!(res <= 1e-9 * a.frobenius());
        }
    }

    #[test]
    fn normal_matrices_have_orthonormal_eigenbases(seed in any::<u64>(), n in 1usize..7) {
        let mut r = rng(seed);
        let l = random_normal_spec(&mut r, n).operator_matrix();
        let pairs = right_eigen(&l).unwrap();
        for (i, p) in pairs.iter().enumerate() {
            for q in &pairs[..i] {
                prop_assert!(p.vector.inner(&q.vector).unwrap().norm() <= 1e-8);
            }
        }
    }

    #[test]
    fn right_quadratic_division_reassembles(seed in any::<u64>(), deg in 0usize..8, re in -2.0..2.0f64, im in 0.0..2.0f64) {
        let mut r = rng(seed);
        let p = qsampling::QPoly::new((0..=deg).map(|_| random_quaternion(&mut r)).collect());
        let (t, n) = OrbitClass::new(re, im).quadratic();
        let (quot, b, c) = p.div_real_quadratic(t, n);
        let back = quot.mul_real(&[n, -t, 1.0]).add(&qsampling::QPoly::new(vec![c, b]));
        for k in 0..=p.degree() {
            prop_assert!((back.coeff(k) - p.coeff(k)).norm() <= 1e-12 * (1.0 + p.coeff_norm_sum()));
        }
    }

    #[test]
    fn companion_polynomial_is_real(seed in any::<u64>(), deg in 1usize..7) {
        let mut r = rng(seed);
        let p = random_poly(&mut r, deg, false);
        let total = p.coeff_norm_sum();
        prop_assert!(residue(&p) <= 1e-12 * total * total);
    }

    #[test]
    fn zero_reports_are_sound(seed in any::<u64>(), deg in 1usize..7, spherical in any::<bool>()) {
        let mut r = rng(seed);
        let p = random_poly(&mut r, deg, spherical);
        let zs = zeros(&p).unwrap();
        prop_assert!(!zs.is_empty() && zs.len() <= p.degree());
        for z in &zs {
            match z.kind {
                ZeroKind::Spherical => {
                    prop_assert!(z.orbit.r > 0.0);
                    for _ in 0..16 {
                        let q = z.orbit.point(unit_axis(&mut r));
                        prop_assert!(p.eval(q).norm() <= tol_eval(&p, q));
                    }
                }
                _ => prop_assert!(p.eval(z.representative).norm() <= tol_eval(&p, z.representative)),
            }
        }
        if spherical && deg >= 2 {
            prop_assert!(zs.iter().any(|z| z.kind == ZeroKind::Spherical));
        }
    }

    #[test]
    fn zero_sets_conjugate_with_s(seed in any::<u64>(), deg in 1usize..7, spherical in any::<bool>()) {
        let mut r = rng(seed);
        let p = random_poly(&mut r, deg, spherical);
        let (s1, s2) = (random_nonzero(&mut r), random_nonzero(&mut r));
        let z1 = zeros(&p.with_s(s1)).unwrap();
        let z2 = zeros(&p.with_s(s2)).unwrap();
        let moved = conjugate_zero_set(&z1, s1.inverse().unwrap() * s2).unwrap();
        prop_assert!(same_zero_sets(&moved, &z2, 1e-8));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sampling_invariants(seed in any::<u64>(), n in 1usize..8, method in 1u8..3) {
        let mut r = rng(seed);
        let spec = random_normal_spec(&mut r, n);
        let t = build_phi(&spec).unwrap();
        let s = random_nonzero(&mut r);
        let e = if method == 1 { SamplingExpansion::method1(&t, s) } else { SamplingExpansion::method2(&t, s) }.unwrap();
        prop_assert_eq!(e.len(), n);
        for (j, lj) in e.points().iter().enumerate() {
            for (k, psi) in e.interpolants().iter().enumerate() {
                let want = if j == k { Q::ONE } else { Q::ZERO };
                prop_assert!((psi.eval(*lj) - want).norm() <= 1e-9);
            }
            for lk in &e.points()[..j] {
                prop_assert!((*lj - *lk).norm() > 1e-6);
            }
        }
        // Method 2 evaluates φ at polynomial zeros rather than taking
        // eigenvectors, so its interpolants inherit the coefficient growth of φ.
        let size = e.interpolants().iter().flat_map(|p| p.coeffs().iter().map(|c| c.norm())).fold(0.0, f64::max);
        let tol = if method == 1 { 1e-10 } else { 1e-10 * (1.0 + size) };
        let sum = e.interpolants().iter().fold(qsampling::QPoly::constant(Q::ZERO), |acc, p| acc.add(p));
        prop_assert!((sum.coeff(0) - Q::ONE).norm() <= tol);
        for k in 1..n {
            prop_assert!(sum.coeff(k).norm() <= tol);
        }
        let f: Vec<Q> = (0..n).map(|_| random_quaternion(&mut r)).collect();
        let samples: Vec<Q> = e.points().iter().map(|p| transform(&f, &t, s, *p).unwrap()).collect();
        let lam = random_quaternion(&mut r) * 2.0;
        let err = (transform(&f, &t, s, lam).unwrap() - reconstruct(&samples, &e, lam).unwrap()).norm();
        let scale = f.iter().map(|x| x.norm()).sum::<f64>()
            * (1..=n).map(|k| t.phi_poly(k, s).scale_at(lam)).fold(0.0, f64::max);
        prop_assert!(err <= 1e-8 * scale);
    }

    #[test]
    fn boundary_zeros_are_eigenvalues(seed in any::<u64>(), n in 1usize..9) {
        let mut r = rng(seed);
        let spec = random_normal_spec(&mut r, n);
        let t = build_phi(&spec).unwrap();
        let s = random_nonzero(&mut r);
        let l = spec.operator_matrix();
        let p = t.boundary_poly(s).unwrap();
        for lam in SamplingExpansion::method1(&t, s).unwrap().points() {
            let phi = t.phi_vector(*lam, s);
            let res = l.mul_vec(&phi).unwrap().sub(&phi.mul_right(*lam)).norm();
            prop_assert!(res <= 1e-9 * (1.0 + l.frobenius()) * phi.norm());
            prop_assert!(p.eval(*lam).norm() <= tol_eval(&p, *lam));
            prop_assert!(spec.recurrence_residual(&phi, *lam).unwrap() <= 1e-10 * phi.norm() * (1.0 + l.frobenius()));
        }
    }

    #[test]
    fn phi_vectors_conjugate_with_s(seed in any::<u64>(), n in 1usize..8) {
        let mut r = rng(seed);
        let spec = random_normal_spec(&mut r, n);
        let t = build_phi(&spec).unwrap();
        let (s0, s1) = (random_nonzero(&mut r), random_nonzero(&mut r));
        let zs = zeros(&t.boundary_poly(s0).unwrap()).unwrap();
        for z in zs {
            let lhs = t.phi_vector(z.representative, s0).mul_right(s1);
            let moved = s1.inverse().unwrap() * z.representative * s1;
            let rhs = t.phi_vector(moved, s0 * s1);
            prop_assert!(lhs.max_diff(&rhs) <= 1e-10 * (1.0 + lhs.norm()));
        }
    }

    #[test]
    fn spectrum_matches_zero_classes(seed in any::<u64>(), n in 1usize..7) {
        let mut r = rng(seed);
        let a = random_tridiagonal(&mut r, n);
        let s = random_nonzero(&mut r);
        let res = spectrum_check(&a, s).unwrap();
        prop_assert!(!res.zero_classes.is_empty());
        let p = char_poly(&a, s).unwrap();
        prop_assert_eq!(p.degree(), n);
        let off: f64 = (1..n).map(|k| a[(k - 1, k)].norm()).product();
        prop_assert!((p.leading().norm() - s.norm() / off).abs() <= 1e-10 * s.norm() / off);
    }

    #[test]
    fn charpoly_orbits_do_not_depend_on_s(seed in any::<u64>(), n in 1usize..7) {
        let mut r = rng(seed);
        let a = random_tridiagonal(&mut r, n);
        let (s1, s2) = (random_nonzero(&mut r), random_nonzero(&mut r));
        let z1 = zeros(&char_poly(&a, s1).unwrap()).unwrap();
        let z2 = zeros(&char_poly(&a, s2).unwrap()).unwrap();
        let moved = conjugate_zero_set(&z1, s1.inverse().unwrap() * s2).unwrap();
        prop_assert!(same_zero_sets(&moved, &z2, 1e-8));
    }

    #[test]
    fn tridiagonal_builder_is_symmetric(seed in any::<u64>(), n in 1usize..7) {
        let mut r = rng(seed);
        let a: QMatrix = random_tridiagonal(&mut r, n);
        prop_assert_eq!(a.transpose(), a);
    }
}
