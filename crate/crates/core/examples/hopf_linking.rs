//! Linking number of two Hopf fibres, from a bounding chain.

use hopfian::algebra::H1Structure;
use hopfian::extraction::preimage_link;
use hopfian::fields::{builtin, normalize, Builtin, BuiltinConfig};
use hopfian::linking::linking_number;

fn main() {
    let cfg = BuiltinConfig { refine: 1, ..BuiltinConfig::default() };
    let (model, f) = builtin(&Builtin::S3Hopf, &cfg).expect("builtin");
    let t = model.mesh();
    let h = H1Structure::new(t);
    let y = normalize([0.3137, -0.2291, 0.9011]);
    let k = preimage_link(t, &f, y).expect("regular");
    let l = preimage_link(t, &f, [-y[0], -y[1], -y[2]]).expect("regular");
    println!("lk(f^-1(y), f^-1(-y)) = {}", linking_number(t, &h, &k, &l).expect("null-homologous"));
}
