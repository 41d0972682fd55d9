//! Self-checks behind `qsample verify`: golden cases with known closed-form
//! answers, and seeded random trials of the structural identities.
//!
//! Random trial `t` of a suite draws from `ChaCha8Rng` seeded with the user
//! seed on stream `t`, so any single trial can be replayed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bvp::{build_phi, random_normal_spec, reconstruct, transform, BvpSpec, SamplingExpansion};
use crate::charpoly::spectrum_check;
use crate::error::Result;
use crate::linalg::{complex_adjoint, is_normal, normality_by_parts, right_eigen, QMatrix, TOL_EIG};
use crate::poly::{conjugate_zero_set, zeros, QPoly, ZeroKind, ZeroReport};
use crate::quaternion::{is_similar, Quaternion as Q};

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(suite: &'static str, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { suite, name: name.into(), passed, detail: detail.into() }
    }

    fn from_result(suite: &'static str, name: impl Into<String>, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((ok, d)) => Self::new(suite, name, ok, d),
            Err(e) => Self::new(suite, name, false, format!("{}: {e}", e.kind())),
        }
    }
}

/// `a ≡ j`, `b ≡ −i`, zero boundary parameters, `N = 3`.
pub fn spherical_spec() -> BvpSpec {
    BvpSpec::new(vec![Q::J; 3], vec![-Q::I; 4], Q::ZERO, Q::ZERO).expect("valid")
}

/// A three-point spec whose boundary polynomial has only isolated zeros.
pub fn isolated_spec() -> BvpSpec {
    let r3 = 3f64.sqrt();
    BvpSpec::new(vec![Q::J, Q::I, -Q::K], vec![Q::I + Q::J, Q::J * r3, Q::J - Q::K, Q::ONE + Q::J], -Q::K, -Q::I)
        .expect("valid")
}

/// 4×4 tridiagonal symmetric matrix with diagonal `1, i, j, k` and
/// off-diagonal `1+i, 1+j, 1+k`.
pub fn tridiagonal_matrix() -> QMatrix {
    QMatrix::tridiagonal(&[Q::ONE, Q::I, Q::J, Q::K], &[Q::ONE + Q::I, Q::ONE + Q::J, Q::ONE + Q::K]).expect("valid")
}

/// Standard eigenvalues of [`tridiagonal_matrix`] to six significant digits.
pub const TRIDIAGONAL_EIGENVALUES: [(f64, f64); 4] =
    [(-1.12826, 0.544285), (-0.208978, 0.611905), (1.03613, 1.13233), (1.3011, 2.0323)];

pub fn random_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Q {
    Q::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Q {
    loop {
        let q = random_quaternion(rng);
        if q.norm() > 0.2 {
            return q;
        }
    }
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QMatrix {
    QMatrix::from_fn(n, n, |_, _| random_quaternion(rng))
}

/// Random symmetric matrix; when `normal`, its real parts are polynomials
/// in one real symmetric matrix and therefore commute.
pub fn random_symmetric<R: Rng + ?Sized>(rng: &mut R, n: usize, normal: bool) -> QMatrix {
    let sym = |rng: &mut R| {
        let mut m = vec![0.0; n * n];
        for r in 0..n {
            for c in r..n {
                let v = rng.gen_range(-1.0..1.0);
                m[r * n + c] = v;
                m[c * n + r] = v;
            }
        }
        m
    };
    let base = sym(rng);
    let sq: Vec<f64> =
        (0..n * n).map(|idx| (0..n).map(|m| base[(idx / n) * n + m] * base[m * n + idx % n]).sum()).collect();
    let mut parts = [vec![0.0; n * n], vec![0.0; n * n], vec![0.0; n * n], vec![0.0; n * n]];
    for part in parts.iter_mut() {
        let (x, y, z): (f64, f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        for idx in 0..n * n {
            let diag = if idx / n == idx % n { z } else { 0.0 };
            part[idx] = x * base[idx] + y * sq[idx] + diag;
        }
    }
    if !normal {
        let noise = sym(rng);
        for (p, e) in parts[1].iter_mut().zip(noise) {
            *p += 0.5 * e;
        }
    }
    QMatrix::from_fn(n, n, |r, c| {
        let idx = r * n + c;
        Q::new(parts[0][idx], parts[1][idx], parts[2][idx], parts[3][idx])
    })
}

/// Random tridiagonal symmetric matrix with off-diagonal entries bounded
/// away from zero; not normal in general.
pub fn random_tridiagonal<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QMatrix {
    let diag: Vec<Q> = (0..n).map(|_| random_quaternion(rng)).collect();
    let off: Vec<Q> = (1..n).map(|_| random_nonzero(rng)).collect();
    QMatrix::tridiagonal(&diag, &off).expect("consistent lengths")
}

/// Random polynomial of the given degree; with `spherical`, one factor is
/// a random real quadratic with complex roots.
pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, degree: usize, spherical: bool) -> QPoly {
    if spherical && degree >= 2 {
        let base = QPoly::new((0..degree - 1).map(|_| random_nonzero(rng)).collect());
        let re: f64 = rng.gen_range(-1.0..1.0);
        let r: f64 = rng.gen_range(0.3..1.5);
        return base.mul_real(&[re * re + r * r, -2.0 * re, 1.0]);
    }
    QPoly::new((0..=degree).map(|_| random_nonzero(rng)).collect())
}

/// Zero sets agree: same number of entries, and every entry of `a` has a
/// counterpart in `b` (same orbit for spherical entries, same point for
/// isolated ones) within `tol·(1 + |z|)`.
pub fn same_zero_sets(a: &[ZeroReport], b: &[ZeroReport], tol: f64) -> bool {
    let matches = |x: &ZeroReport, y: &ZeroReport| {
        let t = tol * (1.0 + x.representative.norm());
        match (x.kind, y.kind) {
            (ZeroKind::Spherical, ZeroKind::Spherical) => x.orbit.distance(y.orbit) <= t,
            (ZeroKind::Spherical, _) | (_, ZeroKind::Spherical) => false,
            _ => (x.representative - y.representative).norm() <= t,
        }
    };
    a.len() == b.len() && a.iter().all(|x| b.iter().any(|y| matches(x, y)))
}

fn rng_for(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn close(a: Q, b: Q, tol: f64) -> bool {
    (a - b).norm() <= tol
}

fn coeffs_match(p: &QPoly, want: &[Q], tol: f64) -> bool {
    (0..want.len().max(p.coeffs().len())).all(|k| close(p.coeff(k), want.get(k).copied().unwrap_or(Q::ZERO), tol))
}

/// Golden cases with closed-form answers.
pub fn golden() -> Vec<Check> {
    let r3 = 3f64.sqrt();
    let mut out = Vec::new();
    let suite = "golden";

    out.push(Check::from_result(
        suite,
        "spherical-spec recurrence",
        (|| {
            let t = build_phi(&spherical_spec())?;
            let p2 = QPoly::from_raw(t.coeffs(2).to_vec());
            let p3 = QPoly::from_raw(t.coeffs(3).to_vec());
            let p4 = QPoly::from_raw(t.coeffs(4).to_vec());
            let ok = coeffs_match(&p2, &[-Q::K, Q::I], 1e-12)
                && coeffs_match(&p3, &[Q::real(-2.0), Q::ZERO, Q::real(-1.0)], 1e-12)
                && coeffs_match(&p4, &[Q::K * 3.0, -Q::I * 3.0, Q::K, -Q::I], 1e-12);
            Ok((ok, "integer coefficients".to_string()))
        })(),
    ));

    out.push(Check::from_result(
        suite,
        "spherical-spec zeros",
        (|| {
            let p = build_phi(&spherical_spec())?.boundary_poly(Q::ONE + Q::K)?;
            let zs = zeros(&p)?;
            let iso =
                zs.iter().filter(|z| z.kind == ZeroKind::NonrealIsolated).all(|z| close(z.representative, Q::I, 1e-9));
            let sph = zs
                .iter()
                .filter(|z| z.kind == ZeroKind::Spherical)
                .all(|z| z.orbit.re.abs() <= 1e-9 && (z.orbit.r - r3).abs() <= 1e-9);
            Ok((zs.len() == 2 && iso && sph, format!("{} orbits", zs.len())))
        })(),
    ));

    out.push(Check::from_result(
        suite,
        "spherical-spec expansions",
        (|| {
            let t = build_phi(&spherical_spec())?;
            let s = Q::ONE + Q::K;
            let pts = vec![Q::I, -Q::J * r3, Q::new(0.0, 1.5, r3 / 2.0, 0.0)];
            let e = SamplingExpansion::from_points(&t, s, pts)?;
            let ij = Q::I + Q::J * r3;
            let psi = e.interpolants();
            let m1 = coeffs_match(&psi[0], &[Q::real(1.5), Q::ZERO, Q::real(0.5)], 1e-9)
                && coeffs_match(&psi[1], &[Q::K * (r3 / 6.0), ij / 6.0, Q::real(-1.0 / 6.0)], 1e-9)
                && coeffs_match(&psi[2], &[(Q::K * r3 + Q::real(3.0)) / -6.0, ij / -6.0, Q::real(-1.0 / 3.0)], 1e-9);
            let e2 = SamplingExpansion::method2(&t, s)?;
            let want = [Q::I, Q::I * r3, -Q::I * r3];
            let pts_ok = e2.points().iter().zip(want).all(|(g, w)| close(*g, w, 1e-9));
            let psi = e2.interpolants();
            let m2 = coeffs_match(
                &psi[1],
                &[Q::real(-3.0 * (1.0 + r3) / 12.0), -Q::I * (2.0 * r3 / 12.0), Q::real(-(3.0 + r3) / 12.0)],
                1e-9,
            ) && coeffs_match(
                &psi[2],
                &[Q::real(3.0 * (r3 - 1.0) / 12.0), Q::I * (2.0 * r3 / 12.0), Q::real((r3 - 3.0) / 12.0)],
                1e-9,
            );
            Ok((m1 && pts_ok && m2, "method 1 with fixed points, method 2".to_string()))
        })(),
    ));

    out.push(Check::from_result(
        suite,
        "isolated-spec zeros and interpolants",
        (|| {
            let t = build_phi(&isolated_spec())?;
            let s = -Q::K;
            let zs = zeros(&t.boundary_poly(s)?)?;
            let want = [-Q::I - Q::J, -Q::I + Q::J * 2.0, -Q::I - Q::J * 3.0];
            let zeros_ok = zs.len() == 3
                && zs.iter().all(|z| z.kind == ZeroKind::NonrealIsolated)
                && want.iter().all(|w| zs.iter().any(|z| close(z.representative, *w, 1e-9)));
            let e = SamplingExpansion::method1(&t, s)?;
            let psi = e.interpolants();
            let ok = coeffs_match(&psi[0], &[(Q::real(7.0) - Q::K) / 6.0, Q::J / 6.0, Q::real(1.0 / 6.0)], 1e-9)
                && coeffs_match(
                    &psi[1],
                    &[(Q::K * 4.0 + Q::real(2.0)) / 15.0, Q::J * (-4.0 / 15.0), Q::real(-1.0 / 15.0)],
                    1e-9,
                )
                && coeffs_match(&psi[2], &[(Q::K + Q::real(3.0)) / -10.0, Q::J / 10.0, Q::real(-0.1)], 1e-9);
            Ok((zeros_ok && ok, "three isolated zeros".to_string()))
        })(),
    ));

    out.push(Check::from_result(
        suite,
        "tridiagonal spectrum",
        (|| {
            let a = tridiagonal_matrix();
            let eig = right_eigen(&a)?;
            let vals_ok = eig.len() == 4
                && eig
                    .iter()
                    .zip(TRIDIAGONAL_EIGENVALUES)
                    .all(|(e, (re, im))| close(e.value, Q::new(re, im, 0.0, 0.0), 1e-4));
            let res = spectrum_check(&a, Q::ONE)?;
            let zeros_ok = res.zero_classes.len() == 4
                && res.zero_classes.iter().zip(&eig).all(|(z, e)| is_similar(z.representative, e.value, 1e-6));
            Ok((vals_ok && zeros_ok, "standard eigenvalues and zero classes".to_string()))
        })(),
    ));

    out
}

/// Seeded random trials; `trials` is the count per suite.
pub fn random(seed: u64, trials: u64) -> Vec<Check> {
    let mut out = Vec::new();
    for t in 0..trials {
        let mut rng = rng_for(seed, t);
        let n = rng.gen_range(2..=6);
        let spec = random_normal_spec(&mut rng, n);
        let s = random_nonzero(&mut rng);
        let f: Vec<Q> = (0..n).map(|_| random_quaternion(&mut rng)).collect();
        let lam = random_quaternion(&mut rng) * 2.0;
        out.push(Check::from_result(
            "reconstruction",
            format!("trial {t} (N={n})"),
            (|| {
                let table = build_phi(&spec)?;
                let e = SamplingExpansion::method1(&table, s)?;
                let samples: Vec<Q> = e.points().iter().map(|p| transform(&f, &table, s, *p)).collect::<Result<_>>()?;
                let err = (transform(&f, &table, s, lam)? - reconstruct(&samples, &e, lam)?).norm();
                let scale: f64 = f.iter().map(|x| x.norm()).sum::<f64>()
                    * (1..=n).map(|k| table.phi_poly(k, s).scale_at(lam)).fold(0.0, f64::max);
                Ok((err <= 1e-8 * scale, format!("error {err:.2e}")))
            })(),
        ));
    }
    for t in 0..trials {
        let mut rng = rng_for(seed, 1000 + t);
        let n = rng.gen_range(1..=6);
        let normal = t % 2 == 0;
        let a = random_symmetric(&mut rng, n, normal);
        out.push(Check::from_result(
            "normality",
            format!("trial {t} (n={n})"),
            (|| {
                let direct = is_normal(&a, 1e-10)?;
                let parts = normality_by_parts(&a, 1e-10)?;
                Ok((direct == parts && (n == 1 || direct == normal), format!("direct {direct}, by parts {parts}")))
            })(),
        ));
    }
    for t in 0..trials {
        let mut rng = rng_for(seed, 2000 + t);
        let deg = rng.gen_range(1..=6);
        let p = random_poly(&mut rng, deg, t % 3 == 0);
        let (s1, s2) = (random_nonzero(&mut rng), random_nonzero(&mut rng));
        out.push(Check::from_result(
            "zero-conjugation",
            format!("trial {t} (degree {deg})"),
            (|| {
                let z1 = zeros(&p.with_s(s1))?;
                let z2 = zeros(&p.with_s(s2))?;
                let moved = conjugate_zero_set(&z1, s1.inverse()? * s2)?;
                Ok((same_zero_sets(&moved, &z2, 1e-8), format!("{} orbits", z2.len())))
            })(),
        ));
    }
    for t in 0..trials {
        let mut rng = rng_for(seed, 3000 + t);
        let n = rng.gen_range(1..=6);
        let a = random_matrix(&mut rng, n);
        let b = random_matrix(&mut rng, n);
        out.push(Check::from_result(
            "adjoint",
            format!("trial {t} (n={n})"),
            (|| {
                let lhs = complex_adjoint(&a.matmul(&b)?)?;
                let rhs = complex_adjoint(&a)?.matmul(&complex_adjoint(&b)?)?;
                let defect = lhs.sub(&rhs)?.frobenius();
                let mut worst = 0.0f64;
                for pair in right_eigen(&a)? {
                    worst = worst.max(pair.residual(&a)? / a.frobenius());
                }
                Ok((
                    defect <= 1e-10 && worst <= TOL_EIG,
                    format!("multiplicativity {defect:.2e}, residual {worst:.2e}"),
                ))
            })(),
        ));
    }
    for t in 0..trials {
        let mut rng = rng_for(seed, 4000 + t);
        let n = rng.gen_range(1..=6);
        let a = random_tridiagonal(&mut rng, n);
        out.push(Check::from_result(
            "spectrum",
            format!("trial {t} (n={n})"),
            (|| {
                let r = spectrum_check(&a, random_nonzero(&mut rng))?;
                Ok((true, format!("{} orbits", r.spectrum_classes.len())))
            })(),
        ));
    }
    out
}

/// Golden cases followed by `trials` random trials per suite.
pub fn run(seed: u64, trials: u64) -> Vec<Check> {
    let mut out = golden();
    out.extend(random(seed, trials));
    out
}
