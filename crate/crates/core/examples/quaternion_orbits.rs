//! Similarity orbits: conjugates share real part and norm.

use qsampling::text::format_clean as fmt;
use qsampling::{is_similar, OrbitClass, Quaternion as Q};

fn main() {
    let q = Q::new(1.0, 2.0, -1.0, 0.5);
    let alpha = Q::new(0.3, 0.0, 1.0, -2.0);
    let c = alpha.inverse().unwrap() * q * alpha;

    let orbit = q.orbit();
    println!("q             = {}", fmt(q, 6));
    println!("α⁻¹qα         = {}", fmt(c, 6));
    println!("orbit         = re {:.6}, r {:.6}", orbit.re, orbit.r);
    println!("standard form = {}", fmt(q.standardize(), 6));
    println!("similar       = {}", is_similar(q, c, 1e-12));

    // every unit imaginary axis gives a point of the orbit
    let unit = OrbitClass::new(0.0, 1.0);
    for axis in [Q::I, Q::J, (Q::J + Q::K) / 2f64.sqrt()] {
        let p = unit.point(axis);
        println!("point on axis {}: {}, square {}", fmt(axis, 6), fmt(p, 6), fmt(p * p, 6));
    }
}
