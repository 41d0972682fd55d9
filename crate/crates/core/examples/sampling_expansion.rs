//! Sample points, orthogonal basis and interpolants for a boundary value
//! problem with a spherical eigenvalue orbit.

use qsampling::text::format_clean as fmt;
use qsampling::{build_phi, BvpSpec, Quaternion as Q, SamplingExpansion};

fn main() {
    let spec = BvpSpec::new(vec![Q::J; 3], vec![-Q::I; 4], Q::ZERO, Q::ZERO).unwrap();
    let table = build_phi(&spec).unwrap();
    let s = Q::ONE + Q::K;

    println!(
        "p_N(λ, s) coefficients: {:?}",
        table.boundary_poly(s).unwrap().coeffs().iter().map(|c| fmt(*c, 6)).collect::<Vec<_>>()
    );

    for (name, exp) in [
        ("eigenvectors", SamplingExpansion::method1(&table, s).unwrap()),
        ("polynomial zeros", SamplingExpansion::method2(&table, s).unwrap()),
    ] {
        println!("\n{name}:");
        for (k, (point, psi)) in exp.points().iter().zip(exp.interpolants()).enumerate() {
            let coeffs: Vec<String> = psi.coeffs().iter().map(|c| fmt(*c, 6)).collect();
            println!("  λ{} = {}   ψ{} coefficients {coeffs:?}", k + 1, fmt(*point, 6), k + 1);
        }
    }
}
