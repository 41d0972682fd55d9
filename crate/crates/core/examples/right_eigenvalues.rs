//! Right eigenpairs of a quaternion matrix through its complex adjoint.

use qsampling::linalg::standard_eigenvalues;
use qsampling::text::format_clean as fmt;
use qsampling::{complex_adjoint, is_normal, right_eigen, QMatrix, Quaternion as Q};

fn main() {
    let a = QMatrix::from_rows(&[
        vec![Q::new(1.0, 0.0, 1.0, 0.0), Q::new(0.0, 2.0, 0.0, -1.0)],
        vec![Q::new(0.5, 0.0, 0.0, 1.0), Q::new(-1.0, 1.0, 1.0, 1.0)],
    ])
    .unwrap();

    let chi = complex_adjoint(&a).unwrap();
    println!("χ_A is {}×{}", chi.rows(), chi.cols());
    println!(
        "standard eigenvalues: {:?}",
        standard_eigenvalues(&a).unwrap().iter().map(|q| fmt(*q, 6)).collect::<Vec<_>>()
    );

    for pair in right_eigen(&a).unwrap() {
        println!("λ = {}   ‖Aξ - ξλ‖ = {:.2e}", fmt(pair.value, 6), pair.residual(&a).unwrap());
    }
    println!("normal: {}", is_normal(&a, 1e-10).unwrap());
}
