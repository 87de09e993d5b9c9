//! Load a triangulation from text, define a field on it and classify it.

use hopfian::algebra::H1Structure;
use hopfian::decide::characteristic_class;
use hopfian::extraction::Genericity;
use hopfian::fields::{normalize, SphereField};
use hopfian::mesh::parse_mesh;

const MESH: &str = "mesh3 5 5
v 0 0 0
v 1 0 0
v 0 1 0
v 0 0 1
v 1 1 1
t 1 2 3 4
t 0 2 3 4
t 0 1 3 4
t 0 1 2 4
t 0 1 2 3
";

fn main() {
    let t = parse_mesh(MESH).expect("valid mesh");
    let h = H1Structure::new(&t);
    println!("{} tets, H1 = {}", t.tet_count(), h.group().describe());
    let f = SphereField::from_fn(&t, |v| normalize([1.0, v as f64 * 0.3, 0.2 - v as f64 * 0.1])).unwrap();
    let (y, c) = characteristic_class(&t, &h, &f, &Genericity::default()).expect("regular value");
    println!("regular value {y:?}, class {c}");
}
