//! Oriented polygonal links: preimages `f^-1(y)` and the coincidence links
//! `C+(f,g) = {f = g}`, `C-(f,g) = {f = -g}`.
//!
//! Every triangle is solved for the points where the two interpolants are
//! parallel; inside a tet the points of one sign are joined pairwise. The
//! link is oriented by the tangent `adj(Dw) f`, `w = f x g`, computed in
//! the reference coordinates of the tet, i.e. `(a, b, tau)` is positive
//! exactly when `det[w_a, w_b, f] > 0`.

mod link;
mod solve;

use std::collections::BTreeMap;

use crate::fields::{cross, det, dot, norm, random_unit, rng_for, splitmix, SphereField, Vec3};
use crate::mesh::Triangulation;

pub use link::{
    position, vertex_weights, Component, LinkFormatError, LinkPoint, PolyLink, Segment,
};
pub use solve::{face_roots, real_cubic_roots, FaceRoot, BARY_TOL, DOUBLE_ROOT_TOL, IMAG_TOL};

/// Angular distance from `±y` below which a vertex makes `y` irregular.
pub const REGULARITY_DELTA: f64 = 1e-4;
/// `|f x g|` below which a vertex counts as a coincidence.
pub const PARALLEL_TOL: f64 = 1e-10;
/// Minimal separation of `C+` and `C-`, relative to the reference tet.
pub const SEPARATION_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExtractionError {
    #[error("field has {found} values, mesh has {expected} vertices")]
    WrongLength { expected: usize, found: usize },
    #[error("value is not regular: vertex {vertex} maps within {delta} rad of it or its antipode")]
    NotRegular { vertex: usize, delta: f64 },
    #[error("fields are parallel on all of triangle {tri:?}")]
    DegeneratePair { tri: [usize; 3] },
    #[error("non-transverse configuration in {place}: {reason}")]
    NonTransverse { place: String, reason: String },
    #[error("no generic configuration after {attempts} attempts (last: {last})")]
    GenericityExhausted { attempts: u32, last: String },
}

/// Retry policy shared by every randomized extraction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Genericity {
    pub seed: u64,
    /// Perturbation angle for retries.
    pub eps: f64,
    pub attempts: u32,
}

impl Default for Genericity {
    fn default() -> Self {
        Genericity {
            seed: 0,
            eps: 1e-2,
            attempts: 8,
        }
    }
}

impl Genericity {
    /// Seed used by retry `attempt` (1-based).
    pub fn attempt_seed(&self, attempt: u32) -> u64 {
        splitmix(self.seed ^ splitmix(0xC01D ^ attempt as u64))
    }
}

/// Oriented coincidence links of a pair, with the (possibly perturbed)
/// second field they were extracted from.
#[derive(Clone, Debug)]
pub struct Coincidence {
    pub plus: PolyLink,
    pub minus: PolyLink,
    pub g: SphereField,
    /// 0 when the unperturbed pair was generic.
    pub attempt: u32,
    /// Whether some crossing points were paired by tangent tracing, after
    /// every attempt without it failed.
    pub traced: bool,
}

fn non_transverse(place: impl Into<String>, reason: impl Into<String>) -> ExtractionError {
    ExtractionError::NonTransverse {
        place: place.into(),
        reason: reason.into(),
    }
}

fn check_len(t: &Triangulation, f: &SphereField) -> Result<(), ExtractionError> {
    if f.len() != t.vertex_count() {
        return Err(ExtractionError::WrongLength {
            expected: t.vertex_count(),
            found: f.len(),
        });
    }
    Ok(())
}

/// `f^-1(y)`, oriented so that `(tau, u, v)` is positive when
/// `(df u, df v)` is a positive basis of `T_y S^2`.
pub fn preimage_link(
    t: &Triangulation,
    f: &SphereField,
    y: Vec3,
) -> Result<PolyLink, ExtractionError> {
    check_len(t, f)?;
    let y = crate::fields::normalize(y);
    let cos_delta = REGULARITY_DELTA.cos();
    for (v, val) in f.values().iter().enumerate() {
        if dot(*val, y).abs() >= cos_delta {
            return Err(ExtractionError::NotRegular {
                vertex: v,
                delta: REGULARITY_DELTA,
            });
        }
    }
    let (plus, _) = extract(
        t,
        f.values(),
        &vec![y; t.vertex_count()],
        true,
        false,
        false,
    )?;
    Ok(plus)
}

/// `f^-1(y)` for the first regular `y` drawn from the seed.
pub fn generic_preimage(
    t: &Triangulation,
    f: &SphereField,
    gen: &Genericity,
) -> Result<(Vec3, PolyLink), ExtractionError> {
    let mut last = String::new();
    for attempt in 0..gen.attempts.max(1) {
        let y = random_unit(&mut rng_for(gen.seed, 0x9E0_0000 + attempt as u64));
        match preimage_link(t, f, y) {
            Ok(l) => return Ok((y, l)),
            Err(
                e @ (ExtractionError::NotRegular { .. } | ExtractionError::NonTransverse { .. }),
            ) => last = e.to_string(),
            Err(e) => return Err(e),
        }
    }
    Err(ExtractionError::GenericityExhausted {
        attempts: gen.attempts,
        last,
    })
}

/// Oriented `C+(f,g)` and `C-(f,g)` of a generic pair.
pub fn coincidence_links(
    t: &Triangulation,
    f: &SphereField,
    g: &SphereField,
) -> Result<(PolyLink, PolyLink), ExtractionError> {
    check_len(t, f)?;
    check_len(t, g)?;
    extract(t, f.values(), g.values(), true, true, false)
}

pub fn retry_eps(eps: f64, attempt: u32) -> f64 {
    (eps * 3f64.powi(attempt.saturating_sub(1) as i32)).min(eps.max(1.0))
}

/// [`coincidence_links`] with perturb-and-retry of `g`.
///
/// A pair that already has a vertex where `f` and `g` are parallel is
/// perturbed before the first attempt. Retry `k` turns `g` by
/// `eps * 3^(k-1)`, capped at one radian unless `eps` itself is larger.
/// When every attempt fails, the attempts are repeated with tangent
/// tracing for simplices that splitting cannot resolve.
pub fn generic_coincidence(
    t: &Triangulation,
    f: &SphereField,
    g: &SphereField,
    gen: &Genericity,
) -> Result<Coincidence, ExtractionError> {
    check_len(t, f)?;
    check_len(t, g)?;
    let touching = f
        .values()
        .iter()
        .zip(g.values())
        .any(|(a, b)| norm(cross(*a, *b)) < PARALLEL_TOL);
    let mut last = String::new();
    let first = if touching { 1 } else { 0 };
    for trace in [false, true] {
        for attempt in first..=gen.attempts {
            let gg = if attempt == 0 {
                g.clone()
            } else {
                g.perturb(gen.attempt_seed(attempt), retry_eps(gen.eps, attempt))
            };
            match extract(t, f.values(), gg.values(), true, true, trace) {
                Ok((plus, minus)) => {
                    return Ok(Coincidence {
                        plus,
                        minus,
                        g: gg,
                        attempt,
                        traced: trace,
                    })
                }
                Err(
                    e @ (ExtractionError::NonTransverse { .. }
                    | ExtractionError::DegeneratePair { .. }),
                ) => last = e.to_string(),
                Err(e) => return Err(e),
            }
        }
    }
    Err(ExtractionError::GenericityExhausted {
        attempts: gen.attempts,
        last,
    })
}

/// Recompute component orientation flags of links extracted from `(f, g)`
/// (for links read back from files).
pub fn orient_links(
    t: &Triangulation,
    plus: &PolyLink,
    minus: &PolyLink,
    f: &SphereField,
    g: &SphereField,
) -> Result<(PolyLink, PolyLink), ExtractionError> {
    let fix = |l: &PolyLink| -> Result<PolyLink, ExtractionError> {
        let mut out = l.clone();
        for (ci, c) in out.components.iter_mut().enumerate() {
            let mut vote = 0.0;
            for s in &c.segments {
                let tet = t.tets()[s.tet];
                let fv = tet.map(|v| f.value(v));
                let gv = tet.map(|v| g.value(v));
                let tau = tangent(&fv, &gv, &s.from);
                let d = [
                    s.to[1] - s.from[1],
                    s.to[2] - s.from[2],
                    s.to[3] - s.from[3],
                ];
                vote += dot(tau, d).signum();
            }
            if vote == 0.0 {
                return Err(ExtractionError::NonTransverse {
                    place: format!("component {ci}"),
                    reason: "orientation undetermined".into(),
                });
            }
            c.orientation = if vote > 0.0 { 1 } else { -1 };
        }
        Ok(out)
    };
    Ok((fix(plus)?, fix(minus)?))
}

fn interp(v: &[Vec3; 4], l: &[f64; 4]) -> Vec3 {
    std::array::from_fn(|k| (0..4).map(|i| l[i] * v[i][k]).sum())
}

/// Oriented tangent of `{f || g}` at `l`, in reference coordinates
/// `(l1, l2, l3)` of the tet.
fn tangent(f: &[Vec3; 4], g: &[Vec3; 4], l: &[f64; 4]) -> Vec3 {
    let fx = interp(f, l);
    let gx = interp(g, l);
    let c: [Vec3; 3] = std::array::from_fn(|k| {
        let df = crate::fields::sub(f[k + 1], f[0]);
        let dg = crate::fields::sub(g[k + 1], g[0]);
        crate::fields::add(cross(df, gx), cross(fx, dg))
    });
    [
        det(c[1], c[2], fx),
        det(c[2], c[0], fx),
        det(c[0], c[1], fx),
    ]
}

#[derive(Clone, Copy, Debug)]
struct RawPoint {
    /// Tet owning an interior point, `None` for face points.
    tet: Option<usize>,
    /// Face points: triangle id and barycentrics on its sorted vertices.
    tri: usize,
    bary3: [f64; 3],
    bary4: [f64; 4],
}

/// Point of one sign inside a simplex of the current tet, with the local
/// face of that simplex it lies on.
#[derive(Clone, Copy, Debug)]
struct SimplexPoint {
    id: usize,
    face: usize,
    bary: [f64; 4],
}

struct Extractor<'a> {
    t: &'a Triangulation,
    f: &'a [Vec3],
    g: &'a [Vec3],
    points: [Vec<RawPoint>; 2],
    /// Per triangle and sign, ids of its points.
    face_points: Vec<[Vec<usize>; 2]>,
    segments: [Vec<(usize, usize, Segment)>; 2],
    /// Pair crossing points by tangent tracing where splitting fails.
    trace: bool,
}

fn sign_slot(s: f64) -> usize {
    if s > 0.0 {
        0
    } else {
        1
    }
}

impl<'a> Extractor<'a> {
    fn solve_faces(&mut self, want: [bool; 2]) -> Result<(), ExtractionError> {
        let t = self.t;
        for (tri_id, tri) in t.triangles().iter().enumerate() {
            let fv = tri.map(|v| self.f[v]);
            let gv = tri.map(|v| self.g[v]);
            let par: Vec<f64> = (0..3)
                .filter(|&i| norm(cross(fv[i], gv[i])) < PARALLEL_TOL)
                .map(|i| dot(fv[i], gv[i]).signum())
                .collect();
            if par.len() == 3 && par.iter().all(|&s| s == par[0]) {
                return Err(ExtractionError::DegeneratePair { tri: *tri });
            }
            if !par.is_empty() {
                return Err(non_transverse(
                    format!("triangle {tri:?}"),
                    "fields are parallel at a vertex",
                ));
            }
            let roots = face_roots(&fv, &gv).map_err(|_| {
                non_transverse(
                    format!("triangle {tri:?}"),
                    "near-double root or point on an edge",
                )
            })?;
            for r in roots {
                let slot = sign_slot(r.s);
                if !want[slot] {
                    continue;
                }
                let id = self.points[slot].len();
                self.points[slot].push(RawPoint {
                    tet: None,
                    tri: tri_id,
                    bary3: r.bary,
                    bary4: [0.0; 4],
                });
                self.face_points[tri_id][slot].push(id);
            }
        }
        Ok(())
    }

    fn tet_local(&self, tet: usize, p: &RawPoint) -> [f64; 4] {
        if p.tet.is_some() {
            return p.bary4;
        }
        let verts = self.t.tets()[tet];
        let tri = self.t.triangles()[p.tri];
        let mut out = [0.0; 4];
        for (k, v) in tri.iter().enumerate() {
            let i = verts.iter().position(|x| x == v).expect("face of tet");
            out[i] = p.bary3[k];
        }
        out
    }

    fn join_tets(&mut self, slot: usize) -> Result<(), ExtractionError> {
        let t = self.t;
        for tet in 0..t.tet_count() {
            let mut pts = Vec::new();
            for i in 0..4 {
                let tri = t.tet_triangle(tet, i);
                for &id in &self.face_points[tri][slot] {
                    let bary = self.tet_local(tet, &self.points[slot][id]);
                    pts.push(SimplexPoint { id, face: i, bary });
                }
            }
            if pts.is_empty() {
                continue;
            }
            let verts = t.tets()[tet];
            let fv = verts.map(|v| self.f[v]);
            let gv = verts.map(|v| self.g[v]);
            let place = || format!("tet {tet}");
            match pts.len() {
                2 => {
                    let (a, b) =
                        orient_pair(&fv, &gv, &IDENTITY, &pts[0], &pts[1]).ok_or_else(|| {
                            non_transverse(
                                place(),
                                "crossing points do not enter and leave the tet",
                            )
                        })?;
                    self.segments[slot].push((
                        a.id,
                        b.id,
                        Segment {
                            tet,
                            from: a.bary,
                            to: b.bary,
                        },
                    ));
                }
                4 => self.split_simplex(tet, slot, &fv, &gv, &IDENTITY, &pts, 1)?,
                n => {
                    return Err(non_transverse(
                        place(),
                        format!("{n} crossing points of one sign"),
                    ))
                }
            }
        }
        Ok(())
    }

    /// Resolve four crossing points by splitting the simplex at its
    /// centroid, recursing into sub-simplices that still hold four.
    #[allow(clippy::too_many_arguments)]
    fn split_simplex(
        &mut self,
        tet: usize,
        slot: usize,
        fv: &[Vec3; 4],
        gv: &[Vec3; 4],
        simplex: &[[f64; 4]; 4],
        outer: &[SimplexPoint],
        depth: u32,
    ) -> Result<(), ExtractionError> {
        let place = || format!("tet {tet} (split)");
        let centroid: [f64; 4] =
            std::array::from_fn(|m| simplex.iter().map(|c| c[m]).sum::<f64>() / 4.0);
        let fc = interp(fv, &centroid);
        let gc = interp(gv, &centroid);
        // sub-simplex k replaces corner k by the centroid
        let mut inner: Vec<Vec<SimplexPoint>> = vec![Vec::new(); 4];
        for p in outer {
            inner[p.face].push(SimplexPoint {
                id: p.id,
                face: p.face,
                bary: p.bary,
            });
        }
        for k in 0..4 {
            for l in k + 1..4 {
                let others: Vec<usize> = (0..4).filter(|&m| m != k && m != l).collect();
                let fvals = [
                    fc,
                    interp(fv, &simplex[others[0]]),
                    interp(fv, &simplex[others[1]]),
                ];
                let gvals = [
                    gc,
                    interp(gv, &simplex[others[0]]),
                    interp(gv, &simplex[others[1]]),
                ];
                let roots = face_roots(&fvals, &gvals)
                    .map_err(|_| non_transverse(place(), "degenerate inner face"))?;
                for r in roots.into_iter().filter(|r| sign_slot(r.s) == slot) {
                    let bary: [f64; 4] = std::array::from_fn(|m| {
                        r.bary[0] * centroid[m]
                            + r.bary[1] * simplex[others[0]][m]
                            + r.bary[2] * simplex[others[1]][m]
                    });
                    let id = self.points[slot].len();
                    self.points[slot].push(RawPoint {
                        tet: Some(tet),
                        tri: usize::MAX,
                        bary3: r.bary,
                        bary4: bary,
                    });
                    // the face {c, others} is opposite corner l in sub-simplex k and vice versa
                    inner[k].push(SimplexPoint { id, face: l, bary });
                    inner[l].push(SimplexPoint { id, face: k, bary });
                }
            }
        }
        for k in 0..4 {
            let pts = &inner[k];
            let sub: [[f64; 4]; 4] =
                std::array::from_fn(|i| if i == k { centroid } else { simplex[i] });
            match pts.len() {
                0 => {}
                2 => {
                    let (a, b) = orient_pair(fv, gv, &sub, &pts[0], &pts[1]).ok_or_else(|| {
                        non_transverse(place(), "crossing points do not enter and leave")
                    })?;
                    self.segments[slot].push((
                        a.id,
                        b.id,
                        Segment {
                            tet,
                            from: a.bary,
                            to: b.bary,
                        },
                    ));
                }
                4 if depth < MAX_SPLIT_DEPTH => {
                    let pts = pts.clone();
                    self.split_simplex(tet, slot, fv, gv, &sub, &pts, depth + 1)?;
                }
                4 if self.trace => {
                    let pairs = pair_by_tracing(fv, gv, &sub, pts).ok_or_else(|| {
                        non_transverse(place(), "4 crossing points in a sub-simplex")
                    })?;
                    for (a, b) in pairs {
                        self.segments[slot].push((
                            a.id,
                            b.id,
                            Segment {
                                tet,
                                from: a.bary,
                                to: b.bary,
                            },
                        ));
                    }
                }
                n => {
                    return Err(non_transverse(
                        place(),
                        format!("{n} crossing points in a sub-simplex"),
                    ))
                }
            }
        }
        Ok(())
    }

    fn assemble(&self, slot: usize) -> Result<PolyLink, ExtractionError> {
        let n = self.points[slot].len();
        let mut next: Vec<Option<usize>> = vec![None; n];
        let mut indeg = vec![0u8; n];
        for (k, (a, b, _)) in self.segments[slot].iter().enumerate() {
            if next[*a].replace(k).is_some() {
                return Err(non_transverse(
                    format!("link point {a}"),
                    "two outgoing segments",
                ));
            }
            indeg[*b] += 1;
        }
        if let Some(p) = (0..n).find(|&p| next[p].is_none() || indeg[p] != 1) {
            return Err(non_transverse(
                format!("link point {p}"),
                "link is not a closed 1-manifold",
            ));
        }
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut segments = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                let k = next[p].unwrap();
                let (_, b, seg) = &self.segments[slot][k];
                segments.push(seg.clone());
                p = *b;
            }
            if p != start {
                return Err(non_transverse(
                    format!("link point {p}"),
                    "component does not close",
                ));
            }
            components.push(Component {
                segments,
                orientation: 1,
            });
        }
        Ok(PolyLink { components })
    }
}

const MAX_SPLIT_DEPTH: u32 = 4;

const IDENTITY: [[f64; 4]; 4] = [
    [1.0, 0.0, 0.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
];

/// Order two points of a simplex (given by its vertices in tet
/// barycentrics) as (entering, leaving) along the oriented tangent.
fn orient_pair<'p>(
    fv: &[Vec3; 4],
    gv: &[Vec3; 4],
    simplex: &[[f64; 4]; 4],
    p: &'p SimplexPoint,
    q: &'p SimplexPoint,
) -> Option<(&'p SimplexPoint, &'p SimplexPoint)> {
    let grads = simplex_gradients(simplex)?;
    let enters = |x: &SimplexPoint| -> Option<bool> {
        let tau = tangent(fv, gv, &x.bary);
        let gr = grads[x.face];
        let d = dot(tau, gr);
        if norm(tau) == 0.0 || d.abs() <= 1e-12 * norm(tau) * norm(gr) {
            return None;
        }
        Some(d > 0.0)
    };
    match (enters(p)?, enters(q)?) {
        (true, false) => Some((p, q)),
        (false, true) => Some((q, p)),
        _ => None,
    }
}

/// Pair two entering with two leaving points by following the oriented
/// tangent from each entry until it leaves the simplex.
fn pair_by_tracing(
    fv: &[Vec3; 4],
    gv: &[Vec3; 4],
    simplex: &[[f64; 4]; 4],
    pts: &[SimplexPoint],
) -> Option<[(SimplexPoint, SimplexPoint); 2]> {
    let grads = simplex_gradients(simplex)?;
    let r = |b: &[f64; 4]| -> Vec3 { [b[1], b[2], b[3]] };
    let origin = r(&simplex[0]);
    let local = |x: Vec3, i: usize| -> f64 {
        let base = if i == 0 { 1.0 } else { 0.0 };
        base + dot(grads[i], crate::fields::sub(x, origin))
    };
    let to_bary = |x: Vec3| -> [f64; 4] { [1.0 - x[0] - x[1] - x[2], x[0], x[1], x[2]] };
    let direction = |x: Vec3| -> Option<Vec3> {
        let tau = tangent(fv, gv, &to_bary(x));
        let n = norm(tau);
        (n > 0.0).then(|| crate::fields::scale(tau, 1.0 / n))
    };
    let (mut entering, mut leaving) = (Vec::new(), Vec::new());
    for p in pts {
        let tau = tangent(fv, gv, &p.bary);
        let d = dot(tau, grads[p.face]);
        if norm(tau) == 0.0 || d.abs() <= 1e-12 * norm(tau) * norm(grads[p.face]) {
            return None;
        }
        if d > 0.0 {
            entering.push(*p)
        } else {
            leaving.push(*p)
        }
    }
    if entering.len() != 2 || leaving.len() != 2 {
        return None;
    }
    let size = (1..4)
        .map(|i| norm(crate::fields::sub(r(&simplex[i]), origin)))
        .fold(0.0, f64::max);
    let h = size / 2000.0;
    let mut pairs = Vec::new();
    for a in &entering {
        let mut x = r(&a.bary);
        let mut steps = 0;
        while (0..4).all(|i| local(x, i) >= 0.0) || steps == 0 {
            let k1 = direction(x)?;
            let mid = crate::fields::add(x, crate::fields::scale(k1, h / 2.0));
            x = crate::fields::add(x, crate::fields::scale(direction(mid)?, h));
            steps += 1;
            if steps > 20_000 {
                return None;
            }
        }
        let dist = |b: &SimplexPoint| norm(crate::fields::sub(r(&b.bary), x));
        let (d0, d1) = (dist(&leaving[0]), dist(&leaving[1]));
        let (near, far) = if d0 < d1 { (0, d1) } else { (1, d0) };
        if dist(&leaving[near]) * 4.0 > far {
            return None;
        }
        pairs.push((*a, leaving[near]));
    }
    (pairs[0].1.id != pairs[1].1.id).then(|| [pairs[0], pairs[1]])
}

/// Gradients (in reference coordinates) of the barycentric coordinates of
/// a simplex with the given vertices.
fn simplex_gradients(s: &[[f64; 4]; 4]) -> Option<[Vec3; 4]> {
    let r = |i: usize| -> Vec3 { [s[i][1], s[i][2], s[i][3]] };
    let cols = [
        crate::fields::sub(r(1), r(0)),
        crate::fields::sub(r(2), r(0)),
        crate::fields::sub(r(3), r(0)),
    ];
    let d = det(cols[0], cols[1], cols[2]);
    if d.abs() < 1e-300 {
        return None;
    }
    // rows of the inverse
    let inv = [
        crate::fields::scale(cross(cols[1], cols[2]), 1.0 / d),
        crate::fields::scale(cross(cols[2], cols[0]), 1.0 / d),
        crate::fields::scale(cross(cols[0], cols[1]), 1.0 / d),
    ];
    let g0 = crate::fields::scale(
        crate::fields::add(crate::fields::add(inv[0], inv[1]), inv[2]),
        -1.0,
    );
    Some([g0, inv[0], inv[1], inv[2]])
}

fn extract(
    t: &Triangulation,
    f: &[Vec3],
    g: &[Vec3],
    want_plus: bool,
    want_minus: bool,
    trace: bool,
) -> Result<(PolyLink, PolyLink), ExtractionError> {
    let mut ex = Extractor {
        t,
        f,
        g,
        trace,
        points: [Vec::new(), Vec::new()],
        face_points: vec![[Vec::new(), Vec::new()]; t.triangles().len()],
        segments: [Vec::new(), Vec::new()],
    };
    let want = [want_plus, want_minus];
    ex.solve_faces(want)?;
    for slot in 0..2 {
        if want[slot] {
            ex.join_tets(slot)?;
        }
    }
    if want_plus && want_minus {
        check_separation(&ex)?;
    }
    let plus = if want_plus {
        ex.assemble(0)?
    } else {
        PolyLink::empty()
    };
    let minus = if want_minus {
        ex.assemble(1)?
    } else {
        PolyLink::empty()
    };
    Ok((plus, minus))
}

fn check_separation(ex: &Extractor) -> Result<(), ExtractionError> {
    let mut by_tet: BTreeMap<usize, Vec<&Segment>> = BTreeMap::new();
    for (_, _, s) in &ex.segments[0] {
        by_tet.entry(s.tet).or_default().push(s);
    }
    for (_, _, s) in &ex.segments[1] {
        if let Some(others) = by_tet.get(&s.tet) {
            for o in others {
                if segment_distance(&o.from, &o.to, &s.from, &s.to) < SEPARATION_TOL {
                    return Err(non_transverse(
                        format!("tet {}", s.tet),
                        "C+ and C- come too close",
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Euclidean distance of two segments given in barycentric 4-vectors.
pub(crate) fn segment_distance(a0: &[f64; 4], a1: &[f64; 4], b0: &[f64; 4], b1: &[f64; 4]) -> f64 {
    let v = |x: &[f64; 4]| -> Vec3 { [x[1], x[2], x[3]] };
    let (p, q, r, s) = (v(a0), v(a1), v(b0), v(b1));
    let d1 = crate::fields::sub(q, p);
    let d2 = crate::fields::sub(s, r);
    let w = crate::fields::sub(p, r);
    let (a, b, c, d, e) = (
        dot(d1, d1),
        dot(d1, d2),
        dot(d2, d2),
        dot(d1, w),
        dot(d2, w),
    );
    let den = a * c - b * b;
    let mut sc = if den > 1e-300 {
        ((b * e - c * d) / den).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let mut tc = if c > 1e-300 {
        ((b * sc + e) / c).clamp(0.0, 1.0)
    } else {
        0.0
    };
    if a > 1e-300 {
        sc = ((b * tc - d) / a).clamp(0.0, 1.0);
    }
    if c > 1e-300 {
        tc = ((b * sc + e) / c).clamp(0.0, 1.0);
    }
    let x = crate::fields::add(p, crate::fields::scale(d1, sc));
    let y = crate::fields::add(r, crate::fields::scale(d2, tc));
    norm(crate::fields::sub(x, y))
}
