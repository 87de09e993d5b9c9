//! First homology of the builtin lattice manifolds.

use hopfian::algebra::H1Structure;
use hopfian::fields::Manifold;

fn main() {
    for manifold in [Manifold::s3(1), Manifold::s2s1(1), Manifold::t3(0)] {
        let model = manifold.build(1_000_000).expect("mesh fits");
        let t = model.mesh();
        let h = H1Structure::new(t);
        println!(
            "{manifold}: {} vertices, {} tets, chi = {}, H1 = {}",
            t.vertex_count(),
            t.tet_count(),
            t.euler_characteristic(),
            h.group().describe()
        );
    }
}
