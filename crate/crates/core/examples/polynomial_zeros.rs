//! Zeros of a left-coefficient quaternion polynomial, isolated and spherical.

use qsampling::text::format_clean as fmt;
use qsampling::{companion_real, conjugate_zero_set, zeros, QPoly, Quaternion as Q};

fn main() {
    // (z² + 3)·(z - i) with the i on the left: an isolated zero at i plus the
    // whole sphere of imaginary quaternions of norm √3
    let p = QPoly::new(vec![-Q::I * 3.0, Q::real(3.0), -Q::I, Q::ONE]);
    println!("real companion: {:?}", companion_real(&p).unwrap().coeffs);

    let reports = zeros(&p).unwrap();
    for z in &reports {
        println!(
            "{:<17} {}  (re {:.6}, r {:.6}, confident {})",
            z.kind.as_str(),
            fmt(z.representative, 6),
            z.orbit.re,
            z.orbit.r,
            z.confident
        );
    }

    // right-multiplying the coefficients by s conjugates the zero set by s
    let s = Q::new(1.0, 0.0, 0.0, 1.0);
    let moved = conjugate_zero_set(&reports, s).unwrap();
    let direct = zeros(&p.with_s(s)).unwrap();
    for (a, b) in moved.iter().zip(&direct) {
        println!("s⁻¹zs = {}   zero of p·s = {}", fmt(a.representative, 6), fmt(b.representative, 6));
    }
}
