//! Extract a Hopf fibre as a preimage link and print it as OBJ.

use hopfian::extraction::{generic_preimage, Genericity};
use hopfian::fields::{builtin, Builtin, BuiltinConfig};

fn main() {
    let cfg = BuiltinConfig { refine: 1, ..BuiltinConfig::default() };
    let (model, f) = builtin(&Builtin::S3Hopf, &cfg).expect("builtin");
    let t = model.mesh();
    let (y, link) = generic_preimage(t, &f, &Genericity { seed: 3, ..Genericity::default() }).expect("regular value");
    eprintln!("y = {y:?}: {} component(s), {} segments", link.component_count(), link.segment_count());
    print!("{}", link.to_obj(t));
}
