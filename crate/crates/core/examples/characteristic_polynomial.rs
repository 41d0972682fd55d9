//! Characteristic polynomial of a tridiagonal symmetric quaternion matrix and
//! its agreement with the right spectrum.

use qsampling::text::format_clean as fmt;
use qsampling::{spectrum_check, QMatrix, Quaternion as Q};

fn main() {
    let a = QMatrix::tridiagonal(&[Q::ONE, Q::I, Q::J, Q::K], &[Q::ONE + Q::I, Q::ONE + Q::J, Q::ONE + Q::K]).unwrap();
    let res = spectrum_check(&a, Q::real(-4.0)).unwrap();

    for (k, c) in res.poly.coeffs().iter().enumerate() {
        println!("z^{k}: {}", fmt(*c, 6));
    }
    println!();
    for (z, e) in res.zero_classes.iter().zip(&res.spectrum_classes) {
        println!("zero {}   eigen orbit {}", fmt(z.representative, 6), fmt(e.representative(), 6));
    }
}
