//! Decide a pair of maps and print the JSON certificate.

use hopfian::algebra::H1Structure;
use hopfian::decide::{decide_maps, DecideOptions};
use hopfian::fields::{builtin, Builtin, BuiltinConfig};

fn main() {
    let n: i64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(2);
    let cfg = BuiltinConfig::default();
    let (model, f) = builtin(&Builtin::S2S1Rot(n), &cfg).expect("builtin");
    let g = Builtin::S2S1Proj.field(&model, &cfg).expect("builtin");
    let t = model.mesh();
    let h = H1Structure::new(t);
    let cert = decide_maps(t, &h, &f, &g, &DecideOptions::with_seed(1)).expect("decision");
    eprintln!("s2s1_rot:{n} vs s2s1_proj: {:?}", cert.verdict);
    print!("{}", cert.to_json());
}
