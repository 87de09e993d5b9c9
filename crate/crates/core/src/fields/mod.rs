//! PL maps `M -> S^2`, stored as one unit vector per mesh vertex.
//!
//! Inside a tet the raw vectors are interpolated affinely and the direction
//! of the interpolant is the value of the map, so the map is defined as
//! long as no tet has the origin in the convex hull of its four vectors.

mod builtin;
mod pontryagin;

use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::mesh::{MeshError, Triangulation};

pub use builtin::{builtin, hopf, s2s1_rotation, Builtin, BuiltinConfig, Manifold, Model};
pub use pontryagin::{pontryagin_model, CoreCurve, TubeChart, TubeCoords};

pub type Vec3 = [f64; 3];

pub const NORTH: Vec3 = [0.0, 0.0, 1.0];
pub const SOUTH: Vec3 = [0.0, 0.0, -1.0];

#[derive(Debug, thiserror::Error)]
pub enum FieldError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("field has {found} vectors but the mesh has {expected} vertices")]
    WrongLength { expected: usize, found: usize },
    #[error("vector at vertex {vertex} is (numerically) zero")]
    ZeroVector { vertex: usize },
    #[error("tet {tet} has the origin in the convex hull of its vectors")]
    SingularTet { tet: usize },
    #[error("tube chart covers {found} vertices but the mesh has {expected}")]
    ChartMismatch { expected: usize, found: usize },
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SphereField {
    values: Vec<Vec3>,
    seed: u64,
}

pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub fn normalize(a: Vec3) -> Vec3 {
    let n = norm(a);
    a.map(|x| x / n)
}

pub fn scale(a: Vec3, s: f64) -> Vec3 {
    a.map(|x| x * s)
}

pub fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn det(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    dot(a, cross(b, c))
}

/// Rotation of `v` by `angle` about the unit `axis` (Rodrigues).
pub fn rotate(v: Vec3, axis: Vec3, angle: f64) -> Vec3 {
    let (s, c) = angle.sin_cos();
    let kv = cross(axis, v);
    let kd = dot(axis, v);
    [0, 1, 2].map(|i| v[i] * c + kv[i] * s + axis[i] * kd * (1.0 - c))
}

/// Does the convex hull of `pts` contain the origin (up to `tol`)?
pub fn origin_in_hull(pts: &[Vec3], tol: f64) -> bool {
    match pts.len() {
        0 => false,
        1 => norm(pts[0]) <= tol,
        2 => {
            let d = sub(pts[1], pts[0]);
            let dd = dot(d, d);
            if dd <= tol * tol {
                return norm(pts[0]) <= tol;
            }
            let s = (-dot(pts[0], d) / dd).clamp(0.0, 1.0);
            norm(add(pts[0], scale(d, s))) <= tol
        }
        3 => {
            let u = sub(pts[1], pts[0]);
            let v = sub(pts[2], pts[0]);
            let n = cross(u, v);
            let nn = norm(n);
            let scale_ref = norm(u).max(norm(v)).max(1.0);
            if nn <= 1e-12 * scale_ref * scale_ref {
                return (0..3).any(|i| origin_in_hull(&[pts[i], pts[(i + 1) % 3]], tol));
            }
            if dot(pts[0], n).abs() / nn > tol {
                return false;
            }
            // barycentrics of the projection of the origin
            let w = scale(pts[0], -1.0);
            let d00 = dot(u, u);
            let d01 = dot(u, v);
            let d11 = dot(v, v);
            let d20 = dot(w, u);
            let d21 = dot(w, v);
            let den = d00 * d11 - d01 * d01;
            let b1 = (d11 * d20 - d01 * d21) / den;
            let b2 = (d00 * d21 - d01 * d20) / den;
            let eps = 1e-12;
            if b1 >= -eps && b2 >= -eps && b1 + b2 <= 1.0 + eps {
                return true;
            }
            (0..3).any(|i| origin_in_hull(&[pts[i], pts[(i + 1) % 3]], tol))
        }
        _ => {
            let [a, b, c, d] = [pts[0], pts[1], pts[2], pts[3]];
            let m = [sub(b, a), sub(c, a), sub(d, a)];
            let dm = det(m[0], m[1], m[2]);
            let scale_ref = m.iter().map(|x| norm(*x)).fold(1.0, f64::max);
            if dm.abs() > 1e-12 * scale_ref.powi(3) {
                let rhs = scale(a, -1.0);
                let mu = [
                    det(rhs, m[1], m[2]) / dm,
                    det(m[0], rhs, m[2]) / dm,
                    det(m[0], m[1], rhs) / dm,
                ];
                let l0 = 1.0 - mu[0] - mu[1] - mu[2];
                if l0 >= -1e-12 && mu.iter().all(|&x| x >= -1e-12) {
                    return true;
                }
            }
            [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
                .iter()
                .any(|f| origin_in_hull(&[pts[f[0]], pts[f[1]], pts[f[2]]], tol))
        }
    }
}

pub(crate) fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic generator for a `(seed, stream)` pair.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix(seed ^ splitmix(stream)))
}

/// Uniform random unit vector.
pub fn random_unit(rng: &mut impl Rng) -> Vec3 {
    loop {
        let v = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let n = norm(v);
        if n > 0.1 && n <= 1.0 {
            return scale(v, 1.0 / n);
        }
    }
}

impl SphereField {
    /// Normalize `raw` and validate it against `t`.
    pub fn new(t: &Triangulation, raw: Vec<Vec3>) -> Result<Self, FieldError> {
        if raw.len() != t.vertex_count() {
            return Err(FieldError::WrongLength {
                expected: t.vertex_count(),
                found: raw.len(),
            });
        }
        let mut values = Vec::with_capacity(raw.len());
        for (i, v) in raw.into_iter().enumerate() {
            let n = norm(v);
            if n.is_nan() || n < 1e-9 {
                return Err(FieldError::ZeroVector { vertex: i });
            }
            values.push(if (n - 1.0).abs() <= 1e-12 {
                v
            } else {
                scale(v, 1.0 / n)
            });
        }
        let f = SphereField { values, seed: 0 };
        f.check_nonsingular(t)?;
        Ok(f)
    }

    pub fn from_fn(t: &Triangulation, f: impl Fn(usize) -> Vec3) -> Result<Self, FieldError> {
        Self::new(t, (0..t.vertex_count()).map(f).collect())
    }

    pub fn constant(t: &Triangulation, y: Vec3) -> Result<Self, FieldError> {
        Self::from_fn(t, |_| y)
    }

    pub fn values(&self) -> &[Vec3] {
        &self.values
    }

    pub fn value(&self, v: usize) -> Vec3 {
        self.values[v]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Seed of the last perturbation applied (0 if none).
    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn negated(&self) -> SphereField {
        SphereField {
            values: self.values.iter().map(|v| scale(*v, -1.0)).collect(),
            seed: self.seed,
        }
    }

    /// Tets whose interpolant can vanish.
    pub fn singular_tets(&self, t: &Triangulation) -> Vec<usize> {
        (0..t.tet_count())
            .filter(|&k| {
                let pts = t.tets()[k].map(|v| self.values[v]);
                origin_in_hull(&pts, 1e-12)
            })
            .collect()
    }

    pub fn check_nonsingular(&self, t: &Triangulation) -> Result<(), FieldError> {
        match self.singular_tets(t).first() {
            Some(&tet) => Err(FieldError::SingularTet { tet }),
            None => Ok(()),
        }
    }

    /// Small deterministic perturbation.
    ///
    /// Every vector is turned by one common rotation of angle `0.999 eps`
    /// about a seeded random axis, followed by an independent rotation of
    /// angle at most `1e-3 eps` drawn from the `(seed, vertex)` stream. The
    /// total angle never exceeds `eps`.
    pub fn perturb(&self, seed: u64, eps: f64) -> SphereField {
        if eps == 0.0 {
            return self.clone();
        }
        let mut rng = rng_for(seed, u64::MAX);
        let axis = random_unit(&mut rng);
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let mut local = rng_for(seed, i as u64);
                let jitter_axis = random_unit(&mut local);
                let jitter = local.gen_range(0.0..=1e-3 * eps);
                normalize(rotate(rotate(v, axis, 0.999 * eps), jitter_axis, jitter))
            })
            .collect();
        SphereField { values, seed }
    }

    /// SHA-256 of the little-endian bytes of every coordinate.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        for v in &self.values {
            for x in v {
                h.update(x.to_le_bytes());
            }
        }
        hex::encode(h.finalize())
    }
}

/// Parse the `field3` format: `field3 <nv>` then `f <x> <y> <z>` per vertex.
pub fn parse_field(t: &Triangulation, text: &str) -> Result<SphereField, FieldError> {
    let mut expected: Option<usize> = None;
    let mut raw = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        let err = |msg: &str| FieldError::Parse {
            line: no + 1,
            msg: msg.to_string(),
        };
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        match (tok[0], expected) {
            ("field3", None) => {
                if tok.len() != 2 {
                    return Err(err("header must be `field3 <nv>`"));
                }
                expected = Some(tok[1].parse().map_err(|_| err("bad vertex count"))?);
            }
            (_, None) => return Err(err("missing `field3` header")),
            ("f", Some(_)) => {
                if tok.len() != 4 {
                    return Err(err("vector line needs 3 components"));
                }
                let mut v = [0.0f64; 3];
                for k in 0..3 {
                    v[k] = tok[k + 1].parse().map_err(|_| err("bad component"))?;
                    if !v[k].is_finite() {
                        return Err(err("non-finite component"));
                    }
                }
                raw.push(v);
            }
            _ => return Err(err(&format!("unknown record `{}`", tok[0]))),
        }
    }
    let Some(nv) = expected else {
        return Err(FieldError::Parse {
            line: 0,
            msg: "empty field file".into(),
        });
    };
    if nv != raw.len() {
        return Err(FieldError::Parse {
            line: 0,
            msg: format!("header announces {nv} vectors, found {}", raw.len()),
        });
    }
    SphereField::new(t, raw)
}

pub fn load_field(t: &Triangulation, path: impl AsRef<Path>) -> Result<SphereField, FieldError> {
    parse_field(t, &std::fs::read_to_string(path)?)
}

pub fn write_field(f: &SphereField) -> String {
    let mut s = String::new();
    writeln!(s, "field3 {}", f.len()).unwrap();
    for v in f.values() {
        writeln!(s, "f {:?} {:?} {:?}", v[0], v[1], v[2]).unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::boundary_of_4_simplex;

    #[test]
    fn constant_field_is_valid() {
        let t = boundary_of_4_simplex();
        let f = SphereField::constant(&t, NORTH).unwrap();
        assert!(f.values().iter().all(|v| *v == NORTH));
    }

    #[test]
    fn zero_vector_rejected() {
        let t = boundary_of_4_simplex();
        let text = "field3 5\nf 0 0 1\nf 0 0 1\nf 0 0 0\nf 0 0 1\nf 0 0 1\n";
        assert!(matches!(
            parse_field(&t, text),
            Err(FieldError::ZeroVector { vertex: 2 })
        ));
    }

    #[test]
    fn antipodal_vectors_are_singular() {
        let t = boundary_of_4_simplex();
        let r = SphereField::new(&t, vec![NORTH, SOUTH, NORTH, NORTH, NORTH]);
        assert!(matches!(r, Err(FieldError::SingularTet { .. })));
    }

    #[test]
    fn hull_cases() {
        let e = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        assert!(!origin_in_hull(&[e[0], e[1], e[2], [0.5, 0.5, 0.5]], 1e-12));
        assert!(origin_in_hull(
            &[e[0], e[1], e[2], [-1.0, -1.0, -1.0]],
            1e-12
        ));
        assert!(origin_in_hull(&[e[0], e[1], [-1.0, -1.0, 0.0]], 1e-12));
        assert!(!origin_in_hull(&[e[0], e[1], [-1.0, 0.5, 0.0]], 1e-12));
    }

    #[test]
    fn round_trip() {
        let t = boundary_of_4_simplex();
        let f = SphereField::from_fn(&t, |v| normalize([1.0, v as f64 * 0.1, 0.3])).unwrap();
        let g = parse_field(&t, &write_field(&f)).unwrap();
        assert_eq!(f.values(), g.values());
    }

    #[test]
    fn perturbation_is_deterministic_and_small() {
        let t = boundary_of_4_simplex();
        let f = SphereField::from_fn(&t, |v| normalize([1.0, v as f64 * 0.1, 0.3])).unwrap();
        assert_eq!(f.perturb(7, 0.0), f);
        let a = f.perturb(7, 0.01);
        assert_eq!(a, f.perturb(7, 0.01));
        assert_ne!(a, f.perturb(8, 0.01));
        for (u, v) in f.values().iter().zip(a.values()) {
            assert!(dot(*u, *v).clamp(-1.0, 1.0).acos() <= 0.01 + 1e-12);
        }
    }
}
