//! Pontryagin models on T3 around a 2-cable of an axis: twists agree
//! modulo 2p = 4.

use hopfian::algebra::H1Structure;
use hopfian::decide::{decide_maps, DecideOptions, Verdict};
use hopfian::fields::{pontryagin_model, Manifold, TubeChart};

fn main() {
    let model = Manifold::t3(2).build(1_000_000).expect("mesh fits");
    let t = model.mesh();
    let h = H1Structure::new(t);
    let chart = TubeChart::for_model(&model, &[2, 0, 0]).expect("cable core");
    println!("core: {}", chart.description());
    let base = pontryagin_model(t, &chart, 0).expect("model");
    for n in 0..=4 {
        let p = pontryagin_model(t, &chart, n).expect("model");
        let c = decide_maps(t, &h, &base, &p, &DecideOptions::default()).expect("decision");
        let mark = if c.verdict == Verdict::Homotopic { "~" } else { "!~" };
        println!("P0 {mark} P{n}  (Enl = {}, modulus {})", c.linking.unwrap_or_default(), c.modulus);
    }
}
