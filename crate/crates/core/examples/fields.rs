//! Non-singular fields: the modulus comes from the Euler class, and a field
//! is never homotopic to its negative on S2 x S1.

use hopfian::algebra::H1Structure;
use hopfian::decide::{decide_fields, DecideOptions};
use hopfian::fields::{builtin, Builtin, BuiltinConfig};

fn main() {
    let cfg = BuiltinConfig { refine: 1, ..BuiltinConfig::default() };
    let (model, x) = builtin(&Builtin::S2S1Proj, &cfg).expect("builtin");
    let t = model.mesh();
    let h = H1Structure::new(t);
    let opts = DecideOptions::default();
    for (name, y) in [("rot:2", Builtin::S2S1Rot(2).field(&model, &cfg).unwrap()), ("-X", x.negated())] {
        let c = decide_fields(t, &h, &x, &y, &opts).expect("decision");
        println!(
            "X vs {name}: {:?}, Euler classes {} / {}, modulus {}",
            c.verdict,
            c.euler_x.as_ref().unwrap(),
            c.euler_y.as_ref().unwrap(),
            c.modulus
        );
    }
}
