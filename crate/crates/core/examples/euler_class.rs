//! Euler class of the plane field orthogonal to each builtin field.

use hopfian::algebra::H1Structure;
use hopfian::extraction::Genericity;
use hopfian::fields::{builtin, Builtin, BuiltinConfig};
use hopfian::linking::euler_class;

fn main() {
    let cfg = BuiltinConfig { refine: 1, ..BuiltinConfig::default() };
    for name in ["s3_hopf", "s2s1_proj", "s2s1_rot:3", "t3_const"] {
        let (model, f) = builtin(&name.parse::<Builtin>().unwrap(), &cfg).expect("builtin");
        let t = model.mesh();
        let h = H1Structure::new(t);
        let e = euler_class(t, &h, &f, &Genericity::default()).expect("regular value");
        println!("{name}: characteristic class {}, Euler class {}", e.characteristic, e.euler);
    }
}
