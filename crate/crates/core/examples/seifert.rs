//! Seifert homology and an explicit Morse-Smale field in a prescribed
//! homotopy class.

use num_bigint::BigInt;

use hopfian::seifert::{construct, h1_of_seifert, orbit_bound, SeifertData};

fn main() {
    let poincare = SeifertData::new(0, vec![(2, 1), (3, 1), (5, 1)], -1).unwrap();
    let torus = SeifertData::new(1, vec![], 0).unwrap();
    for s in [&poincare, &torus] {
        println!("{s:?}: H1 = {}", h1_of_seifert(s).group().describe());
    }
    let h = h1_of_seifert(&torus);
    let x: Vec<BigInt> = [4, -7, 3].into_iter().map(BigInt::from).collect();
    let c = h.classify(&x);
    println!("decomposition of {c}: {:?}", h.decompose(&c).unwrap());
    let m = construct(&torus, &c, &BigInt::from(5)).expect("construction");
    println!(
        "field with class {} and degree {}: {} orbits (bound {}), index counts {:?}",
        m.class,
        m.degree,
        m.orbit_count(),
        orbit_bound(&torus),
        m.index_counts()
    );
}
