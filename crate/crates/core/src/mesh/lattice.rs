//! Closed 3-manifolds built from unit cubes of the integer lattice `Z^4`,
//! each cube split into six tetrahedra by the Freudenthal (Kuhn) rule.
//!
//! The Freudenthal triangulation of a cube restricts to the Freudenthal
//! triangulation of each of its faces, so cubes glued along faces give a
//! consistent simplicial complex. Identifications (periodic coordinates)
//! are applied through a canonicalization of lattice points.

use std::collections::HashMap;

use super::{MeshError, Triangulation};

pub type LatticePoint = [i64; 4];

#[derive(Clone, Debug)]
pub struct LatticeMesh {
    pub mesh: Triangulation,
    /// Canonical lattice point of every mesh vertex.
    pub points: Vec<LatticePoint>,
}

const AXIS_PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn unit(axis: usize) -> LatticePoint {
    let mut e = [0; 4];
    e[axis] = 1;
    e
}

fn add(a: LatticePoint, b: LatticePoint) -> LatticePoint {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

/// Assemble a triangulation from 3-cubes given as `(base corner, free axes)`.
pub fn from_cubes(
    cubes: impl IntoIterator<Item = (LatticePoint, [usize; 3])>,
    canon: impl Fn(LatticePoint) -> LatticePoint,
    coord: impl Fn(LatticePoint) -> [f64; 3],
) -> Result<LatticeMesh, MeshError> {
    let mut ids: HashMap<LatticePoint, usize> = HashMap::new();
    let mut points = Vec::new();
    let mut tets = Vec::new();
    let mut vid = |p: LatticePoint, points: &mut Vec<LatticePoint>| {
        let c = canon(p);
        *ids.entry(c).or_insert_with(|| {
            points.push(c);
            points.len() - 1
        })
    };
    for (base, axes) in cubes {
        for perm in AXIS_PERMS {
            let mut p = base;
            let mut tet = [0; 4];
            tet[0] = vid(p, &mut points);
            for (k, &slot) in perm.iter().enumerate() {
                p = add(p, unit(axes[slot]));
                tet[k + 1] = vid(p, &mut points);
            }
            tets.push(tet);
        }
    }
    let verts = points.iter().map(|&p| coord(p)).collect();
    let mesh = Triangulation::new(verts, tets)?;
    Ok(LatticeMesh { mesh, points })
}

/// Boundary of the 4-cube `[-k, k]^4`, a 3-sphere with `384 k^3` tets.
pub fn sphere_s3(k: i64) -> Result<LatticeMesh, MeshError> {
    assert!(k >= 1);
    let mut cubes = Vec::new();
    for fixed in 0..4 {
        let free: Vec<usize> = (0..4).filter(|&a| a != fixed).collect();
        for side in [-k, k] {
            for a in -k..k {
                for b in -k..k {
                    for c in -k..k {
                        let mut base = [0; 4];
                        base[fixed] = side;
                        base[free[0]] = a;
                        base[free[1]] = b;
                        base[free[2]] = c;
                        cubes.push((base, [free[0], free[1], free[2]]));
                    }
                }
            }
        }
    }
    from_cubes(cubes, |p| p, move |p| s3_stereo(s3_point(p)))
}

/// Unit-sphere point of a lattice vertex of the 4-cube boundary.
pub fn s3_point(p: LatticePoint) -> [f64; 4] {
    let v = p.map(|x| x as f64);
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.map(|x| x / n)
}

/// Stereographic projection from a pole that is not a lattice direction.
fn s3_stereo(q: [f64; 4]) -> [f64; 3] {
    let pole = [0.1, -0.2, 0.3, 0.927_361_849_549_570_4];
    let d = q.iter().zip(&pole).map(|(a, b)| a * b).sum::<f64>();
    let s = 1.0 / (1.0 - d).max(1e-9);
    // coordinates in an orthonormal frame of the pole's complement
    let frame = orthonormal_complement(pole);
    let mut out = [0.0; 3];
    for (k, f) in frame.iter().enumerate() {
        out[k] = s * q.iter().zip(f).map(|(a, b)| a * b).sum::<f64>();
    }
    out
}

fn orthonormal_complement(n: [f64; 4]) -> [[f64; 4]; 3] {
    let mut basis: Vec<[f64; 4]> = Vec::new();
    let norm = n.iter().map(|x| x * x).sum::<f64>().sqrt();
    let n = n.map(|x| x / norm);
    for axis in 0..4 {
        let mut v = [0.0; 4];
        v[axis] = 1.0;
        for b in std::iter::once(&n).chain(basis.iter()) {
            let d: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            for k in 0..4 {
                v[k] -= d * b[k];
            }
        }
        let l = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if l > 1e-6 && basis.len() < 3 {
            basis.push(v.map(|x| x / l));
        }
    }
    [basis[0], basis[1], basis[2]]
}

/// `S^2 x S^1` as (boundary of the 3-cube `[-k,k]^3`) x (cycle of length `m`).
pub fn sphere_times_circle(k: i64, m: i64) -> Result<LatticeMesh, MeshError> {
    assert!(k >= 1 && m >= 3);
    let mut cubes = Vec::new();
    for fixed in 0..3 {
        let free: Vec<usize> = (0..3).filter(|&a| a != fixed).collect();
        for side in [-k, k] {
            for a in -k..k {
                for b in -k..k {
                    for w in 0..m {
                        let mut base = [0; 4];
                        base[fixed] = side;
                        base[free[0]] = a;
                        base[free[1]] = b;
                        base[3] = w;
                        cubes.push((base, [free[0], free[1], 3]));
                    }
                }
            }
        }
    }
    from_cubes(
        cubes,
        move |p| [p[0], p[1], p[2], p[3].rem_euclid(m)],
        move |p| {
            let s = 1.0 + p[3] as f64 / m as f64;
            [p[0] as f64 * s, p[1] as f64 * s, p[2] as f64 * s]
        },
    )
}

/// The 3-torus `R^3 / (kx Z x ky Z x kz Z)` with `6 kx ky kz` tets.
pub fn torus_t3(kx: i64, ky: i64, kz: i64) -> Result<LatticeMesh, MeshError> {
    assert!(
        kx >= 3 && ky >= 3 && kz >= 3,
        "periods below 3 do not give a simplicial complex"
    );
    let mut cubes = Vec::new();
    for x in 0..kx {
        for y in 0..ky {
            for z in 0..kz {
                cubes.push(([x, y, z, 0], [0, 1, 2]));
            }
        }
    }
    from_cubes(
        cubes,
        move |p| {
            [
                p[0].rem_euclid(kx),
                p[1].rem_euclid(ky),
                p[2].rem_euclid(kz),
                0,
            ]
        },
        |p| [p[0] as f64, p[1] as f64, p[2] as f64],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_counts() {
        let s = sphere_s3(1).unwrap();
        assert_eq!(s.mesh.tet_count(), 384);
        assert_eq!(s.mesh.euler_characteristic(), 0);
        assert_eq!(s.mesh.component_count(), 1);
    }

    #[test]
    fn s2s1_counts() {
        let s = sphere_times_circle(1, 3).unwrap();
        assert_eq!(s.mesh.tet_count(), 6 * 4 * 3 * 6);
        assert_eq!(s.mesh.euler_characteristic(), 0);
    }

    #[test]
    fn t3_counts() {
        let t = torus_t3(3, 3, 4).unwrap();
        assert_eq!(t.mesh.tet_count(), 6 * 36);
        assert_eq!(t.mesh.vertex_count(), 36);
        assert_eq!(t.mesh.euler_characteristic(), 0);
    }
}
