use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use super::{normalize, FieldError, SphereField, Vec3, NORTH};
use crate::mesh::lattice::{self, s3_point, LatticeMesh};
use crate::mesh::{max_tets_from_env, MeshError, Triangulation};

/// The lattice manifolds the builtins live on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Manifold {
    /// Boundary of `[-k,k]^4`.
    S3 { k: i64 },
    /// Boundary of `[-k,k]^3` times a cycle of length `m`.
    S2S1 { k: i64, m: i64 },
    /// Periodic `k[0] x k[1] x k[2]` grid.
    T3 { k: [i64; 3] },
}

impl Manifold {
    pub fn tet_count(&self) -> usize {
        match *self {
            Manifold::S3 { k } => 384 * (k * k * k) as usize,
            Manifold::S2S1 { k, m } => 144 * (k * k * m) as usize,
            Manifold::T3 { k } => 6 * (k[0] * k[1] * k[2]) as usize,
        }
    }

    pub fn s3(refine: u32) -> Self {
        Manifold::S3 {
            k: refine as i64 + 1,
        }
    }

    pub fn s2s1(refine: u32) -> Self {
        let k = (refine as i64).max(1);
        Manifold::S2S1 { k, m: 24 * k }
    }

    pub fn t3(refine: u32) -> Self {
        let k = 4 * (refine as i64 + 1);
        Manifold::T3 { k: [k; 3] }
    }

    pub fn build(&self, max_tets: usize) -> Result<Model, MeshError> {
        let count = self.tet_count();
        if count > max_tets {
            return Err(MeshError::ResourceLimit {
                count,
                cap: max_tets,
            });
        }
        let lattice = match *self {
            Manifold::S3 { k } => lattice::sphere_s3(k)?,
            Manifold::S2S1 { k, m } => lattice::sphere_times_circle(k, m)?,
            Manifold::T3 { k } => lattice::torus_t3(k[0], k[1], k[2])?,
        };
        Ok(Model {
            manifold: *self,
            lattice,
        })
    }
}

impl fmt::Display for Manifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Manifold::S3 { k } => write!(f, "S3(k={k})"),
            Manifold::S2S1 { k, m } => write!(f, "S2xS1(k={k},m={m})"),
            Manifold::T3 { k } => write!(f, "T3({}x{}x{})", k[0], k[1], k[2]),
        }
    }
}

/// A lattice manifold together with its triangulation.
#[derive(Clone, Debug)]
pub struct Model {
    pub manifold: Manifold,
    pub lattice: LatticeMesh,
}

impl Model {
    pub fn mesh(&self) -> &Triangulation {
        &self.lattice.mesh
    }

    /// `(S^2 direction, circle parameter in [0,1))` of an `S^2 x S^1` vertex.
    pub fn s2s1_coords(&self, v: usize) -> (Vec3, f64) {
        let Manifold::S2S1 { m, .. } = self.manifold else {
            panic!("not an S2xS1 model")
        };
        let p = self.lattice.points[v];
        (
            normalize([p[0] as f64, p[1] as f64, p[2] as f64]),
            p[3] as f64 / m as f64,
        )
    }

    /// Unit quaternion `(a, b, c, d)` of an `S^3` vertex.
    pub fn s3_coords(&self, v: usize) -> [f64; 4] {
        assert!(
            matches!(self.manifold, Manifold::S3 { .. }),
            "not an S3 model"
        );
        s3_point(self.lattice.points[v])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    S3Hopf,
    S2S1Proj,
    S2S1Rot(i64),
    T3Const,
    CustomSeifert {
        genus: u32,
        fibers: Vec<(i64, i64)>,
        b: i64,
    },
}

#[derive(Clone, Debug)]
pub struct BuiltinConfig {
    /// Lattice refinement; the default keeps every builtin under 35k tets.
    pub refine: u32,
    /// Strength of the pole-fixing pull in `s2s1_rot`.
    pub eps: f64,
    pub max_tets: usize,
}

impl Default for BuiltinConfig {
    fn default() -> Self {
        BuiltinConfig {
            refine: 2,
            eps: 0.35,
            max_tets: max_tets_from_env(),
        }
    }
}

impl FromStr for Builtin {
    type Err = FieldError;

    /// `s3_hopf`, `s2s1_proj`, `s2s1_rot:<n>`, `t3_const` or
    /// `custom_seifert:<g>:<b>[:<a1>/<b1>,...]`.
    fn from_str(s: &str) -> Result<Self, FieldError> {
        let unknown = || FieldError::UnknownBuiltin(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["s3_hopf"] => Ok(Builtin::S3Hopf),
            ["s2s1_proj"] => Ok(Builtin::S2S1Proj),
            ["s2s1_rot", n] => Ok(Builtin::S2S1Rot(n.parse().map_err(|_| unknown())?)),
            ["t3_const"] => Ok(Builtin::T3Const),
            ["custom_seifert", g, b, rest @ ..] if rest.len() <= 1 => {
                let mut fibers = Vec::new();
                if let Some(list) = rest.first().filter(|l| !l.is_empty()) {
                    for item in list.split(',') {
                        let (a, c) = item.split_once('/').ok_or_else(unknown)?;
                        fibers.push((
                            a.parse().map_err(|_| unknown())?,
                            c.parse().map_err(|_| unknown())?,
                        ));
                    }
                }
                Ok(Builtin::CustomSeifert {
                    genus: g.parse().map_err(|_| unknown())?,
                    fibers,
                    b: b.parse().map_err(|_| unknown())?,
                })
            }
            _ => Err(unknown()),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::S3Hopf => write!(f, "s3_hopf"),
            Builtin::S2S1Proj => write!(f, "s2s1_proj"),
            Builtin::S2S1Rot(n) => write!(f, "s2s1_rot:{n}"),
            Builtin::T3Const => write!(f, "t3_const"),
            Builtin::CustomSeifert { genus, fibers, b } => {
                let list: Vec<String> = fibers.iter().map(|(a, c)| format!("{a}/{c}")).collect();
                write!(f, "custom_seifert:{genus}:{b}:{}", list.join(","))
            }
        }
    }
}

/// The Hopf map `q -> q i q^-1` on unit quaternions.
pub fn hopf(q: [f64; 4]) -> Vec3 {
    let [a, b, c, d] = q;
    [
        a * a + b * b - c * c - d * d,
        2.0 * (b * c + a * d),
        2.0 * (b * d - a * c),
    ]
}

/// `R_z(2 pi n t)` applied to `w` after pulling it towards the north pole:
/// colatitude `theta` becomes `theta - eps sin(theta)`.
///
/// The pull fixes only the poles, so for `eps != 0` the map agrees with
/// the projection exactly along the two pole fibres and is opposite to it
/// along `n` circles near the equator.
pub fn s2s1_rotation(w: Vec3, t: f64, n: i64, eps: f64) -> Vec3 {
    let theta = w[2].clamp(-1.0, 1.0).acos();
    let phi = w[1].atan2(w[0]) + 2.0 * PI * n as f64 * t;
    let pulled = theta - eps * theta.sin();
    [
        pulled.sin() * phi.cos(),
        pulled.sin() * phi.sin(),
        pulled.cos(),
    ]
}

impl Builtin {
    pub fn manifold(&self, refine: u32) -> Result<Manifold, FieldError> {
        match self {
            Builtin::S3Hopf => Ok(Manifold::s3(refine)),
            Builtin::S2S1Proj | Builtin::S2S1Rot(_) => Ok(Manifold::s2s1(refine)),
            Builtin::T3Const => Ok(Manifold::t3(refine)),
            Builtin::CustomSeifert { genus, fibers, b } => match (genus, fibers.is_empty(), b) {
                (0, true, 0) => Ok(Manifold::s2s1(refine)),
                (1, true, 0) => Ok(Manifold::t3(refine)),
                _ => Err(FieldError::Unsupported(format!(
                    "custom_seifert has a lattice model only for product manifolds (genus 0 or 1, no exceptional fibers, b = 0); got {self}"
                ))),
            },
        }
    }

    /// The builtin field on an already built model of the right manifold.
    pub fn field(&self, model: &Model, cfg: &BuiltinConfig) -> Result<SphereField, FieldError> {
        let t = model.mesh();
        let wrong =
            || FieldError::Unsupported(format!("{self} is not defined on {}", model.manifold));
        match (self, model.manifold) {
            (Builtin::S3Hopf, Manifold::S3 { .. }) => {
                SphereField::from_fn(t, |v| hopf(model.s3_coords(v)))
            }
            (Builtin::S2S1Proj, Manifold::S2S1 { .. }) => {
                SphereField::from_fn(t, |v| model.s2s1_coords(v).0)
            }
            (Builtin::S2S1Rot(n), Manifold::S2S1 { .. }) => SphereField::from_fn(t, |v| {
                let (w, s) = model.s2s1_coords(v);
                s2s1_rotation(w, s, *n, cfg.eps)
            }),
            (Builtin::T3Const, Manifold::T3 { .. }) => SphereField::constant(t, NORTH),
            (Builtin::CustomSeifert { genus: 0, .. }, Manifold::S2S1 { .. }) => {
                SphereField::from_fn(t, |v| model.s2s1_coords(v).0)
            }
            (Builtin::CustomSeifert { genus: 1, .. }, Manifold::T3 { .. }) => {
                SphereField::constant(t, NORTH)
            }
            _ => Err(wrong()),
        }
    }
}

/// Build the named builtin mesh and field.
pub fn builtin(name: &Builtin, cfg: &BuiltinConfig) -> Result<(Model, SphereField), FieldError> {
    let model = name.manifold(cfg.refine)?.build(cfg.max_tets)?;
    let field = name.field(&model, cfg)?;
    Ok((model, field))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::norm;

    fn small() -> BuiltinConfig {
        BuiltinConfig {
            refine: 1,
            eps: 0.35,
            max_tets: 1_000_000,
        }
    }

    #[test]
    fn names_round_trip() {
        for s in [
            "s3_hopf",
            "s2s1_proj",
            "s2s1_rot:-3",
            "t3_const",
            "custom_seifert:0:-1:2/1,3/1,5/1",
        ] {
            assert_eq!(s.parse::<Builtin>().unwrap().to_string(), s);
        }
        assert!("s2s1_rot".parse::<Builtin>().is_err());
        assert!("lens".parse::<Builtin>().is_err());
    }

    #[test]
    fn hopf_is_unit_and_fibres_are_circles() {
        for q in [
            [1.0, 0.0, 0.0, 0.0],
            [0.5, 0.5, 0.5, 0.5],
            [0.0, 0.6, 0.0, 0.8],
        ] {
            assert!((norm(hopf(q)) - 1.0).abs() < 1e-12);
        }
        // e^{i t} is the fibre over (1,0,0)
        for t in [0.1f64, 1.0, 2.5] {
            let h = hopf([t.cos(), t.sin(), 0.0, 0.0]);
            assert!((h[0] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn every_builtin_validates() {
        let cfg = small();
        for b in [
            "s3_hopf",
            "s2s1_proj",
            "s2s1_rot:1",
            "s2s1_rot:3",
            "t3_const",
            "custom_seifert:1:0",
        ] {
            let (m, f) = builtin(&b.parse().unwrap(), &cfg).unwrap();
            assert_eq!(f.len(), m.mesh().vertex_count());
            assert!(f.singular_tets(m.mesh()).is_empty(), "{b}");
        }
    }

    #[test]
    fn poincare_sphere_is_not_modelled() {
        let b: Builtin = "custom_seifert:0:-1:2/1,3/1,5/1".parse().unwrap();
        assert!(matches!(
            builtin(&b, &small()),
            Err(FieldError::Unsupported(_))
        ));
    }

    #[test]
    fn resource_cap() {
        let cfg = BuiltinConfig {
            refine: 3,
            eps: 0.1,
            max_tets: 1000,
        };
        assert!(matches!(
            builtin(&Builtin::S3Hopf, &cfg),
            Err(FieldError::Mesh(MeshError::ResourceLimit { .. }))
        ));
    }
}
