//! Links as simplicial cycles: homology classes, bounding chains and
//! linking numbers.
//!
//! A link is snapped to the 1-skeleton by sending every point to the
//! vertex of largest barycentric weight of the face (or tet) containing it.
//! The straight-line homotopy between a segment and its snapped edge is a
//! bilinear patch inside one tet, so a 2-chain `sigma` with boundary the
//! snapped cycle, plus the patches, is a surface with boundary the link
//! itself. Linking numbers count signed crossings of the other link with
//! that surface.

mod reference;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::{H1Structure, HomologyClass, HomologyError};
use crate::extraction::{
    generic_preimage, preimage_link, ExtractionError, Genericity, PolyLink, Segment,
};
use crate::fields::{cross, det, dot, norm, scale, sub, SphereField, Vec3};
use crate::mesh::{ChainVector, Triangulation};

pub use reference::{reference_cycles, reference_cycles_preferring, ReferenceCycles};

/// Relative tolerance for crossings near the edge of a patch or segment.
pub const GRAZING_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LinkingError {
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Extraction(#[from] ExtractionError),
    #[error("link passes within tolerance of the spanning surface boundary in tet {tet}")]
    GrazingIntersection { tet: usize },
    #[error("no unimodular family of reference cycles found among {tried} candidates")]
    NoReferenceBasis { tried: usize },
}

/// A link pushed onto the 1-skeleton.
#[derive(Clone, Debug, PartialEq)]
pub struct SnappedCycle {
    pub cycle: ChainVector,
    /// Subdivision level the cycle lives on (always the input mesh here).
    pub level: u32,
    pub components: usize,
}

/// Global vertex a link point snaps to, and its local index in `tet`.
fn snap_vertex(t: &Triangulation, tet: usize, bary: &[f64; 4]) -> (usize, usize) {
    let verts = t.tets()[tet];
    let best = (0..4)
        .max_by(|&a, &b| bary[a].total_cmp(&bary[b]).then(verts[b].cmp(&verts[a])))
        .unwrap();
    (verts[best], best)
}

pub fn snap_to_skeleton(t: &Triangulation, link: &PolyLink) -> SnappedCycle {
    let mut cycle = ChainVector::zero(1);
    for s in link.oriented_segments() {
        let (a, _) = snap_vertex(t, s.tet, &s.from);
        let (b, _) = snap_vertex(t, s.tet, &s.to);
        if a != b {
            cycle = cycle + ChainVector::edge(t, a, b).expect("vertices of one tet");
        }
    }
    SnappedCycle {
        cycle,
        level: 0,
        components: link.component_count(),
    }
}

pub fn class_of_link(
    t: &Triangulation,
    h: &H1Structure,
    link: &PolyLink,
) -> Result<HomologyClass, LinkingError> {
    Ok(h.class_of_cycle(t, &snap_to_skeleton(t, link).cycle)?)
}

pub fn bounding_chain(
    t: &Triangulation,
    h: &H1Structure,
    z: &SnappedCycle,
) -> Result<ChainVector, LinkingError> {
    Ok(h.bounding_chain(t, &z.cycle)?)
}

/// Bilinear patch `H(s, l) = (1-l)((1-s)p + s q) + l((1-s)P + s Q)` in
/// reference coordinates of `tet`, with `P`, `Q` the snapped corners.
#[derive(Clone, Copy, Debug)]
struct Patch {
    tet: usize,
    p: Vec3,
    a: Vec3,
    b: Vec3,
    c: Vec3,
}

fn reference(b: &[f64; 4]) -> Vec3 {
    [b[1], b[2], b[3]]
}

fn corner(i: usize) -> Vec3 {
    let mut x = [0.0; 3];
    if i > 0 {
        x[i - 1] = 1.0;
    }
    x
}

impl Patch {
    fn new(t: &Triangulation, s: &Segment) -> Self {
        let p = reference(&s.from);
        let q = reference(&s.to);
        let pp = corner(snap_vertex(t, s.tet, &s.from).1);
        let qq = corner(snap_vertex(t, s.tet, &s.to).1);
        let a = sub(q, p);
        let b = sub(pp, p);
        let c = sub(sub(qq, pp), a);
        Patch {
            tet: s.tet,
            p,
            a,
            b,
            c,
        }
    }

    fn at(&self, s: f64, l: f64) -> Vec3 {
        std::array::from_fn(|k| self.p[k] + s * self.a[k] + l * self.b[k] + s * l * self.c[k])
    }

    /// Signed crossings of the segment `x0 -> x1` with the patch.
    fn crossings(&self, x0: Vec3, x1: Vec3) -> Result<i64, LinkingError> {
        let grazing = || LinkingError::GrazingIntersection { tet: self.tet };
        let d = sub(x1, x0);
        let dn = norm(d);
        if dn == 0.0 {
            return Ok(0);
        }
        let helper = if d[0].abs() < 0.5 * dn {
            [1.0, 0.0, 0.0]
        } else {
            [0.0, 1.0, 0.0]
        };
        let e1 = {
            let v = cross(d, helper);
            scale(v, 1.0 / norm(v))
        };
        let e2 = {
            let v = cross(d, e1);
            scale(v, 1.0 / norm(v))
        };
        let w = sub(self.p, x0);
        // alpha . (1, s, l, s l) = 0 and beta . (1, s, l, s l) = 0
        let al = [
            dot(w, e1),
            dot(self.a, e1),
            dot(self.b, e1),
            dot(self.c, e1),
        ];
        let be = [
            dot(w, e2),
            dot(self.a, e2),
            dot(self.b, e2),
            dot(self.c, e2),
        ];
        // eliminate l: (a0 + a1 s)(b2 + b3 s) - (b0 + b1 s)(a2 + a3 s) = 0
        let q2 = al[1] * be[3] - be[1] * al[3];
        let q1 = al[0] * be[3] + al[1] * be[2] - be[0] * al[3] - be[1] * al[2];
        let q0 = al[0] * be[2] - be[0] * al[2];
        let size = q2.abs().max(q1.abs()).max(q0.abs());
        if size == 0.0 {
            return Err(grazing());
        }
        let mut roots = Vec::new();
        if q2.abs() <= 1e-14 * size {
            if q1.abs() <= 1e-14 * size {
                return if q0.abs() <= 1e-14 * size {
                    Err(grazing())
                } else {
                    Ok(0)
                };
            }
            roots.push(-q0 / q1);
        } else {
            let disc = q1 * q1 - 4.0 * q2 * q0;
            if disc < 0.0 {
                if disc > -1e-12 * q1 * q1 {
                    let r = -q1 / (2.0 * q2);
                    if (-GRAZING_TOL..=1.0 + GRAZING_TOL).contains(&r) {
                        return Err(grazing());
                    }
                }
                return Ok(0);
            }
            let sq = disc.sqrt();
            if sq <= 1e-9 * q1.abs().max(size) {
                let r = -q1 / (2.0 * q2);
                if (-GRAZING_TOL..=1.0 + GRAZING_TOL).contains(&r) {
                    return Err(grazing());
                }
            }
            let tq = -0.5 * (q1 + q1.signum() * sq);
            if tq != 0.0 {
                roots.push(tq / q2);
                roots.push(q0 / tq);
            } else {
                roots.push(0.0);
            }
        }
        let mut total = 0;
        for s in roots {
            if !(-GRAZING_TOL..=1.0 + GRAZING_TOL).contains(&s) {
                continue;
            }
            let da = al[2] + al[3] * s;
            let db = be[2] + be[3] * s;
            let l = if da.abs() >= db.abs() {
                if da == 0.0 {
                    return Err(grazing());
                }
                -(al[0] + al[1] * s) / da
            } else {
                -(be[0] + be[1] * s) / db
            };
            if !(-GRAZING_TOL..=1.0 + GRAZING_TOL).contains(&l) {
                continue;
            }
            let x = self.at(s, l);
            let u = dot(sub(x, x0), d) / (dn * dn);
            if !(-GRAZING_TOL..=1.0 + GRAZING_TOL).contains(&u) {
                continue;
            }
            let near = |v: f64| v.abs() <= GRAZING_TOL || (v - 1.0).abs() <= GRAZING_TOL;
            if near(s) || near(l) || near(u) {
                return Err(grazing());
            }
            let hs: Vec3 = std::array::from_fn(|k| self.a[k] + l * self.c[k]);
            let hl: Vec3 = std::array::from_fn(|k| self.b[k] + s * self.c[k]);
            let o = det(hs, hl, d);
            if o.abs() <= 1e-12 * norm(hs) * norm(hl) * dn {
                return Err(grazing());
            }
            total += if o > 0.0 { 1 } else { -1 };
        }
        Ok(total)
    }
}

/// 2-chain plus homotopy patches with boundary a given link.
#[derive(Clone, Debug)]
pub struct SpanningSurface {
    pub sigma: ChainVector,
    patches: Vec<Patch>,
}

impl SpanningSurface {
    /// Surface bounded by a null-homologous `link`.
    pub fn new(t: &Triangulation, h: &H1Structure, link: &PolyLink) -> Result<Self, LinkingError> {
        let z = snap_to_skeleton(t, link);
        let sigma = bounding_chain(t, h, &z)?;
        let patches = link
            .oriented_segments()
            .map(|s| Patch::new(t, &s))
            .collect();
        Ok(SpanningSurface { sigma, patches })
    }

    pub fn patch_count(&self) -> usize {
        self.patches.len()
    }

    /// Signed intersection number with `other` (which must avoid the
    /// surface boundary).
    pub fn intersect(&self, t: &Triangulation, other: &PolyLink) -> Result<BigInt, LinkingError> {
        let mut total = BigInt::zero();
        let mut by_tet: std::collections::HashMap<usize, Vec<&Patch>> =
            std::collections::HashMap::new();
        for p in &self.patches {
            by_tet.entry(p.tet).or_default().push(p);
        }
        for s in other.oriented_segments() {
            let zeros: Vec<usize> = (0..4).filter(|&i| s.to[i] == 0.0).collect();
            match zeros.as_slice() {
                [] => {}
                [i] => {
                    let tri = t.tet_triangle(s.tet, *i);
                    let c = self.sigma.get(tri);
                    if !c.is_zero() {
                        total += c * t.boundary_sign(s.tet, *i);
                    }
                }
                _ => return Err(LinkingError::GrazingIntersection { tet: s.tet }),
            }
            if let Some(ps) = by_tet.get(&s.tet) {
                let x0 = reference(&s.from);
                let x1 = reference(&s.to);
                for p in ps {
                    total += p.crossings(x0, x1)?;
                }
            }
        }
        Ok(total)
    }
}

/// `Enl(K, L)` for null-homologous `K` and `L`.
pub fn linking_number(
    t: &Triangulation,
    h: &H1Structure,
    k: &PolyLink,
    l: &PolyLink,
) -> Result<BigInt, LinkingError> {
    let cl = class_of_link(t, h, l)?;
    if !cl.is_zero() {
        return Err(HomologyError::NotNullHomologous(cl).into());
    }
    SpanningSurface::new(t, h, k)?.intersect(t, l)
}

/// Linking of a null-homologous `k` with an arbitrary `l`, made independent
/// of the bounding chain by subtracting the linking of `k` with reference
/// cycles carrying the free part of `[l]`.
pub fn normalized_linking(
    t: &Triangulation,
    h: &H1Structure,
    k: &PolyLink,
    l: &PolyLink,
    refs: &ReferenceCycles,
) -> Result<BigInt, LinkingError> {
    let surface = SpanningSurface::new(t, h, k)?;
    let mut total = surface.intersect(t, l)?;
    let cl = class_of_link(t, h, l)?;
    let coeffs = refs.coefficients(&cl);
    for (a, rho) in coeffs.iter().zip(&refs.links) {
        if !a.is_zero() {
            total -= a * surface.intersect(t, rho)?;
        }
    }
    Ok(total)
}

/// Euler class of the plane field orthogonal to `f`, computed as the class
/// of `f^-1(y) + f^-1(-y)`, together with `y` and the characteristic class.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerClass {
    pub y: Vec3,
    pub euler: HomologyClass,
    pub characteristic: HomologyClass,
}

pub fn euler_class(
    t: &Triangulation,
    h: &H1Structure,
    f: &SphereField,
    gen: &Genericity,
) -> Result<EulerClass, LinkingError> {
    let mut last = None;
    for attempt in 0..gen.attempts.max(1) {
        let seed = if attempt == 0 {
            gen.seed
        } else {
            gen.attempt_seed(attempt)
        };
        let g = Genericity { seed, ..*gen };
        let (y, up) = generic_preimage(t, f, &g)?;
        let ny = [-y[0], -y[1], -y[2]];
        match preimage_link(t, f, ny) {
            Ok(down) => {
                let characteristic = class_of_link(t, h, &up)?;
                let euler = characteristic.clone() + class_of_link(t, h, &down)?;
                return Ok(EulerClass {
                    y,
                    euler,
                    characteristic,
                });
            }
            Err(e) => last = Some(e),
        }
    }
    Err(ExtractionError::GenericityExhausted {
        attempts: gen.attempts,
        last: last.map(|e| e.to_string()).unwrap_or_default(),
    }
    .into())
}

/// Linking number as `i64` when it fits.
pub fn to_i64(x: &BigInt) -> Option<i64> {
    x.to_i64()
}

#[cfg(test)]
mod tests;
