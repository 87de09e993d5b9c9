use std::collections::HashMap;

use super::{parity, sorted, MeshError, Triangulation};

pub const DEFAULT_MAX_TETS: usize = 4_000_000;

/// Tet cap from `HOPFIAN_MAX_TETS`, or the built-in default.
pub fn max_tets_from_env() -> usize {
    std::env::var("HOPFIAN_MAX_TETS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_TETS)
}

/// Parent data for one level of barycentric subdivision.
#[derive(Clone, Debug)]
pub struct Ancestry {
    /// Parent tet of every child tet.
    pub tet_parent: Vec<usize>,
    /// For every new vertex, the dimension and id of the parent simplex it
    /// is the barycenter of (0: vertex, 1: edge, 2: triangle, 3: tet).
    pub vertex_origin: Vec<(u8, usize)>,
}

#[derive(Clone, Debug)]
pub struct Subdivision {
    pub mesh: Triangulation,
    /// One entry per level, outermost (applied to the original mesh) first.
    pub levels: Vec<Ancestry>,
}

impl Subdivision {
    /// Tet of the original mesh containing child tet `t`.
    pub fn original_tet(&self, mut t: usize) -> usize {
        for a in self.levels.iter().rev() {
            t = a.tet_parent[t];
        }
        t
    }
}

/// All 24 orderings of `0..4`, identity first.
fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if sorted(p) == [0, 1, 2, 3] {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn subdivide_once(t: &Triangulation) -> (Triangulation, Ancestry) {
    let nv = t.vertex_count();
    let ne = t.edges().len();
    let nf = t.triangles().len();
    let mut verts = t.vertices().to_vec();
    let mut origin: Vec<(u8, usize)> = (0..nv).map(|v| (0u8, v)).collect();
    let avg = |ids: &[usize]| {
        let mut p = [0.0; 3];
        for &i in ids {
            for k in 0..3 {
                p[k] += t.vertices()[i][k];
            }
        }
        p.map(|x| x / ids.len() as f64)
    };
    for (i, e) in t.edges().iter().enumerate() {
        verts.push(avg(e));
        origin.push((1, i));
    }
    for (i, f) in t.triangles().iter().enumerate() {
        verts.push(avg(f));
        origin.push((2, i));
    }
    for (i, tet) in t.tets().iter().enumerate() {
        verts.push(avg(tet));
        origin.push((3, i));
    }
    let edge_vertex = |a: usize, b: usize| nv + t.edge_id(a, b).unwrap();
    let tri_vertex = |f: [usize; 3]| nv + ne + t.triangle_id(f).unwrap();

    let perms = permutations4();
    let mut tets = Vec::with_capacity(t.tet_count() * 24);
    let mut parent = Vec::with_capacity(t.tet_count() * 24);
    let mut memo: HashMap<[usize; 3], usize> = HashMap::new();
    for (ti, tet) in t.tets().iter().enumerate() {
        let center = nv + ne + nf + ti;
        for p in &perms {
            let v = tet[p[0]];
            let e = edge_vertex(tet[p[0]], tet[p[1]]);
            let key = [tet[p[0]], tet[p[1]], tet[p[2]]];
            let f = *memo.entry(sorted(key)).or_insert_with(|| tri_vertex(key));
            let mut child = [v, e, f, center];
            if parity(p) < 0 {
                child.swap(0, 1);
            }
            tets.push(child);
            parent.push(ti);
        }
    }
    let mesh = Triangulation::new(verts, tets)
        .expect("barycentric subdivision of a closed manifold is valid");
    (
        mesh,
        Ancestry {
            tet_parent: parent,
            vertex_origin: origin,
        },
    )
}

/// Barycentric subdivision applied `levels` times.
pub fn barycentric_subdivide(
    t: &Triangulation,
    levels: usize,
    max_tets: usize,
) -> Result<Subdivision, MeshError> {
    assert!(levels >= 1, "subdivision needs at least one level");
    let count = t
        .tet_count()
        .saturating_mul(24usize.saturating_pow(levels as u32));
    if count > max_tets {
        return Err(MeshError::ResourceLimit {
            count,
            cap: max_tets,
        });
    }
    let mut current = t.clone();
    let mut anc = Vec::new();
    for _ in 0..levels {
        let (m, a) = subdivide_once(&current);
        current = m;
        anc.push(a);
    }
    Ok(Subdivision {
        mesh: current,
        levels: anc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::boundary_of_4_simplex;

    #[test]
    fn one_level_counts() {
        let s3 = boundary_of_4_simplex();
        let sd = barycentric_subdivide(&s3, 1, 1_000_000).unwrap();
        assert_eq!(sd.mesh.tet_count(), 120);
        assert_eq!(sd.mesh.vertex_count(), 5 + 10 + 10 + 5);
    }

    #[test]
    fn volume_is_preserved() {
        let s3 = boundary_of_4_simplex();
        let before = s3.total_signed_volume();
        let sd = barycentric_subdivide(&s3, 1, 1_000_000).unwrap();
        // per-parent sums match, so the total does too
        let mut per_parent = vec![0.0; s3.tet_count()];
        for (c, &p) in sd.levels[0].tet_parent.iter().enumerate() {
            per_parent[p] += sd.mesh.signed_volume(c);
        }
        for (t, v) in per_parent.iter().enumerate() {
            assert!(
                (v - s3.signed_volume(t)).abs() < 1e-12,
                "tet {t}: {v} vs {}",
                s3.signed_volume(t)
            );
        }
        assert!((sd.mesh.total_signed_volume() - before).abs() < 1e-12);
    }

    #[test]
    fn two_levels_compose_ancestry() {
        let s3 = boundary_of_4_simplex();
        let sd = barycentric_subdivide(&s3, 2, 1_000_000).unwrap();
        assert_eq!(sd.mesh.tet_count(), 5 * 24 * 24);
        for c in 0..sd.mesh.tet_count() {
            assert!(sd.original_tet(c) < 5);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let s3 = boundary_of_4_simplex();
        assert!(matches!(
            barycentric_subdivide(&s3, 2, 1000),
            Err(MeshError::ResourceLimit { count: 2880, .. })
        ));
    }
}
