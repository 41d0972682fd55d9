//! Sample points inside a spherical orbit are not unique: any seed in the
//! orbit gives another valid expansion.

use qsampling::text::format_clean as fmt;
use qsampling::{alternate_expansion, build_phi, BvpSpec, OrbitClass, Quaternion as Q, SamplingExpansion};

fn main() {
    let spec = BvpSpec::new(vec![Q::J; 3], vec![-Q::I; 4], Q::ZERO, Q::ZERO).unwrap();
    let table = build_phi(&spec).unwrap();
    let s = Q::ONE + Q::K;
    let base = SamplingExpansion::method1(&table, s).unwrap();
    let orbit = OrbitClass::new(0.0, 3f64.sqrt());

    for seed in [Q::I * 3f64.sqrt(), Q::J * 3f64.sqrt(), (Q::I + Q::K) * (1.5f64).sqrt()] {
        let alt = alternate_expansion(&base, &table, orbit, seed).unwrap();
        let pts: Vec<String> = alt.points().iter().map(|p| fmt(*p, 6)).collect();
        println!("seed {}: {pts:?}", fmt(seed, 6));
    }
}
