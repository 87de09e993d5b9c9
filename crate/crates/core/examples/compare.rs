//! Coincidence links of the rotation family against the projection on
//! S2 x S1, with their classes and normalized linking number.

use hopfian::algebra::H1Structure;
use hopfian::decide::{compare, DecideOptions};
use hopfian::fields::{builtin, Builtin, BuiltinConfig};

fn main() {
    let cfg = BuiltinConfig::default();
    for n in 1..=3 {
        let (model, f) = builtin(&Builtin::S2S1Rot(n), &cfg).expect("builtin");
        let g = Builtin::S2S1Proj.field(&model, &cfg).expect("builtin");
        let t = model.mesh();
        let h = H1Structure::new(t);
        let c = compare(t, &h, &f, &g, &DecideOptions::default()).expect("generic pair");
        println!(
            "n = {n}: C+ has {} components of class {}, C- has {} of class {}, Enl = {}",
            c.coincidence.plus.component_count(),
            c.class_plus,
            c.coincidence.minus.component_count(),
            c.class_minus,
            c.linking.map(|l| l.to_string()).unwrap_or_else(|| "undefined".into())
        );
    }
}
