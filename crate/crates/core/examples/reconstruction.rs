//! Recover the transform of a sequence from its values at the sample points.

use qsampling::text::format_clean as fmt;
use qsampling::{build_phi, random_normal_spec, reconstruct, transform, Quaternion as Q, SamplingExpansion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let spec = random_normal_spec(&mut rng, 5);
    let table = build_phi(&spec).unwrap();
    let s = Q::new(0.5, -1.0, 0.0, 2.0);
    let exp = SamplingExpansion::method1(&table, s).unwrap();

    let f: Vec<Q> = (0..5).map(|k| Q::new(1.0, k as f64, -0.5, 0.25 * k as f64)).collect();
    let samples: Vec<Q> = exp.points().iter().map(|p| transform(&f, &table, s, *p).unwrap()).collect();

    for lam in [Q::ZERO, Q::I, Q::new(0.3, -0.2, 1.1, 0.4), Q::new(-2.0, 0.0, 0.0, 1.5)] {
        let want = transform(&f, &table, s, lam).unwrap();
        let got = reconstruct(&samples, &exp, lam).unwrap();
        println!(
            "λ = {}\n  f_s(λ)   = {}\n  sampled  = {}\n  error    = {:.2e}",
            fmt(lam, 6),
            fmt(want, 12),
            fmt(got, 12),
            (want - got).norm()
        );
    }
}
