use std::f64::consts::PI;

use super::builtin::{Manifold, Model};
use super::{
    add, cross, dot, norm, normalize, rotate, scale, sub, FieldError, SphereField, Vec3, SOUTH,
};
use crate::mesh::Triangulation;

/// Solid-torus coordinates of a vertex inside the tube.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TubeCoords {
    /// Position along the core, in `[0, 2 pi)`.
    pub omega: f64,
    /// Normalized distance from the core, in `[0, 1)`.
    pub r: f64,
    /// Angle around the core, in radians.
    pub theta: f64,
}

/// Tube coordinates for every vertex; `None` marks vertices outside.
#[derive(Clone, Debug)]
pub struct TubeChart {
    coords: Vec<Option<TubeCoords>>,
    description: String,
}

/// Closed polyline in an ambient `R^3`, optionally periodic per axis.
#[derive(Clone, Debug)]
pub struct CoreCurve {
    pub points: Vec<Vec3>,
    pub period: [Option<f64>; 3],
}

fn min_image(mut d: Vec3, period: &[Option<f64>; 3]) -> Vec3 {
    for k in 0..3 {
        if let Some(p) = period[k] {
            d[k] -= p * (d[k] / p).round();
        }
    }
    d
}

/// Parallel transport of the normal `u` across a corner from `t0` to `t1`.
fn transport(u: Vec3, t0: Vec3, t1: Vec3) -> Vec3 {
    let axis = cross(t0, t1);
    let s = norm(axis);
    if s < 1e-14 {
        return u;
    }
    let angle = s.atan2(dot(t0, t1));
    rotate(u, scale(axis, 1.0 / s), angle)
}

fn wrap_angle(a: f64) -> f64 {
    a.rem_euclid(2.0 * PI)
}

impl TubeChart {
    pub fn coords(&self) -> &[Option<TubeCoords>] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// Vertices lying on the core (`r = 0`).
    pub fn core_vertices(&self) -> Vec<usize> {
        (0..self.coords.len())
            .filter(|&v| matches!(self.coords[v], Some(c) if c.r == 0.0))
            .collect()
    }

    /// Vertices inside the tube.
    pub fn tube_vertices(&self) -> Vec<usize> {
        (0..self.coords.len())
            .filter(|&v| self.coords[v].is_some())
            .collect()
    }

    /// Chart of the tube of `radius` about `core`, for vertices with ambient
    /// coordinates (`None` vertices are outside by fiat).
    ///
    /// The normal frame is transported along the polyline and the closing
    /// holonomy is spread linearly over the arclength, so `theta` is
    /// continuous around the whole core.
    pub fn from_polyline(
        ambient: &[Option<Vec3>],
        core: &CoreCurve,
        radius: f64,
        description: &str,
    ) -> Self {
        let n = core.points.len();
        assert!(n >= 2, "core needs at least two points");
        let segs: Vec<Vec3> = (0..n)
            .map(|i| min_image(sub(core.points[(i + 1) % n], core.points[i]), &core.period))
            .collect();
        let lens: Vec<f64> = segs.iter().map(|s| norm(*s)).collect();
        let tans: Vec<Vec3> = segs
            .iter()
            .zip(&lens)
            .map(|(s, l)| scale(*s, 1.0 / l))
            .collect();
        let mut starts = vec![0.0; n];
        for i in 1..n {
            starts[i] = starts[i - 1] + lens[i - 1];
        }
        let total = starts[n - 1] + lens[n - 1];

        let t0 = tans[0];
        let axis = (0..3)
            .min_by(|&a, &b| t0[a].abs().total_cmp(&t0[b].abs()))
            .unwrap();
        let mut e = [0.0; 3];
        e[axis] = 1.0;
        let mut frames = Vec::with_capacity(n);
        frames.push(normalize(cross(t0, e)));
        for i in 1..n {
            frames.push(normalize(transport(frames[i - 1], tans[i - 1], tans[i])));
        }
        let closed = transport(frames[n - 1], tans[n - 1], t0);
        let holonomy = dot(t0, cross(frames[0], closed)).atan2(dot(frames[0], closed));

        let coords = ambient
            .iter()
            .map(|x| {
                let x = (*x)?;
                let mut best: Option<(f64, usize, f64, Vec3)> = None;
                for i in 0..n {
                    let d = min_image(sub(x, core.points[i]), &core.period);
                    let lam = (dot(d, segs[i]) / (lens[i] * lens[i])).clamp(0.0, 1.0);
                    let perp = sub(d, scale(segs[i], lam));
                    let dist = norm(perp);
                    if best.as_ref().is_none_or(|b| dist < b.0) {
                        best = Some((dist, i, lam, perp));
                    }
                }
                let (dist, i, lam, perp) = best.unwrap();
                if dist >= radius {
                    return None;
                }
                let s = starts[i] + lam * lens[i];
                let v = cross(tans[i], frames[i]);
                let theta = if dist == 0.0 {
                    0.0
                } else {
                    dot(perp, v).atan2(dot(perp, frames[i])) + holonomy * s / total
                };
                Some(TubeCoords {
                    omega: wrap_angle(2.0 * PI * s / total),
                    r: dist / radius,
                    theta: wrap_angle(theta),
                })
            })
            .collect();
        TubeChart {
            coords,
            description: description.to_string(),
        }
    }

    /// Chart around the vertex path `verts` (closed) using mesh coordinates.
    pub fn from_edge_path(
        t: &Triangulation,
        verts: &[usize],
        radius: f64,
    ) -> Result<Self, FieldError> {
        for k in 0..verts.len() {
            let (a, b) = (verts[k], verts[(k + 1) % verts.len()]);
            if a >= t.vertex_count() || t.edge_id(a, b).is_none() {
                return Err(FieldError::Unsupported(format!(
                    "core vertices {a} and {b} are not joined by an edge"
                )));
            }
        }
        let core = CoreCurve {
            points: verts.iter().map(|&v| t.vertices()[v]).collect(),
            period: [None; 3],
        };
        let ambient: Vec<Option<Vec3>> = t.vertices().iter().map(|p| Some(*p)).collect();
        Ok(Self::from_polyline(
            &ambient,
            &core,
            radius,
            &format!("edge path of {} vertices", verts.len()),
        ))
    }

    /// Chart around a knot of class `class` on a builtin lattice manifold.
    ///
    /// * `S^3`: the great circle `{c = d = 0}` (class must be empty or zero);
    /// * `S^2 x S^1`: the fibre through the centre of the top cube face,
    ///   class `[1]` or `[-1]`;
    /// * `T^3`: a straight line for primitive classes, and the `m`-cable of
    ///   an axis line for `m` times an axis class (`m = 2, 3`).
    pub fn for_model(model: &Model, class: &[i64]) -> Result<Self, FieldError> {
        let unsupported = |why: &str| {
            FieldError::Unsupported(format!("{} core of class {class:?}: {why}", model.manifold))
        };
        match model.manifold {
            Manifold::S3 { .. } => {
                if class.iter().any(|&c| c != 0) {
                    return Err(unsupported("H1(S3) = 0"));
                }
                let radius = 1.0;
                let coords = (0..model.mesh().vertex_count())
                    .map(|v| {
                        let [a, b, c, d] = model.s3_coords(v);
                        let rho = (c * c + d * d).sqrt().atan2((a * a + b * b).sqrt());
                        (rho < radius).then(|| TubeCoords {
                            omega: wrap_angle(b.atan2(a)),
                            r: rho / radius,
                            theta: if rho == 0.0 {
                                0.0
                            } else {
                                wrap_angle(d.atan2(c))
                            },
                        })
                    })
                    .collect();
                Ok(TubeChart {
                    coords,
                    description: "great circle c = d = 0".into(),
                })
            }
            Manifold::S2S1 { k, m } => {
                let sign = match class {
                    [1] => 1,
                    [-1] => -1,
                    _ => return Err(unsupported("only the fibre classes +-1 have a model core")),
                };
                let ambient: Vec<Option<Vec3>> = model
                    .lattice
                    .points
                    .iter()
                    .map(|p| (p[2] == k).then(|| [p[0] as f64, p[1] as f64, p[3] as f64]))
                    .collect();
                let mut points: Vec<Vec3> = (0..m).map(|w| [0.0, 0.0, w as f64]).collect();
                if sign < 0 {
                    points.reverse();
                }
                let core = CoreCurve {
                    points,
                    period: [None, None, Some(m as f64)],
                };
                Ok(Self::from_polyline(
                    &ambient,
                    &core,
                    0.75 * k as f64,
                    &format!("fibre of class {sign}"),
                ))
            }
            Manifold::T3 { k } => {
                let [a, b, c] = match class {
                    [a, b, c] => [*a, *b, *c],
                    _ => return Err(unsupported("expected three coordinates")),
                };
                let mult = num_integer::gcd(num_integer::gcd(a, b), c);
                if mult == 0 {
                    return Err(unsupported("the zero class has no straight core"));
                }
                let dir = [a / mult, b / mult, c / mult];
                let span = [0, 1, 2].map(|i| (dir[i] * k[i]) as f64);
                let kmin = *k.iter().min().unwrap() as f64;
                let base = [0, 1, 2].map(|i| (k[i] / 2) as f64);
                let period = k.map(|x| Some(x as f64));
                let ambient: Vec<Option<Vec3>> = model
                    .lattice
                    .points
                    .iter()
                    .map(|p| Some([p[0] as f64, p[1] as f64, p[2] as f64]))
                    .collect();
                if mult == 1 {
                    let steps = span.iter().map(|x| x.abs()).fold(0.0, f64::max) as usize;
                    let points = (0..steps)
                        .map(|j| add(base, scale(span, j as f64 / steps as f64)))
                        .collect();
                    let core = CoreCurve { points, period };
                    return Ok(Self::from_polyline(
                        &ambient,
                        &core,
                        kmin / 4.0,
                        &format!("line of class {class:?}"),
                    ));
                }
                if mult.abs() > 3 || dir.iter().filter(|&&x| x != 0).count() != 1 {
                    return Err(unsupported(
                        "cables exist only for 2 or 3 times an axis class",
                    ));
                }
                let m = mult.unsigned_abs() as usize;
                let sign = mult.signum() as f64;
                let axis = dir.iter().position(|&x| x != 0).unwrap();
                let (n1, n2) = ((axis + 1) % 3, (axis + 2) % 3);
                let r0 = kmin / 4.0;
                let samples = 64 * m;
                let points = (0..samples)
                    .map(|j| {
                        let s = j as f64 / samples as f64;
                        let mut p = base;
                        p[axis] += sign * m as f64 * s * span[axis].abs();
                        p[n1] += r0 * (2.0 * PI * s).cos();
                        p[n2] += r0 * (2.0 * PI * s).sin();
                        p
                    })
                    .collect();
                let core = CoreCurve { points, period };
                let radius = 0.7 * r0 * (PI / m as f64).sin();
                Ok(Self::from_polyline(
                    &ambient,
                    &core,
                    radius,
                    &format!("{m}-cable of class {class:?}"),
                ))
            }
        }
    }
}

/// Value of `P_{c,n}` at tube coordinates: the meridian disk is sent over
/// the sphere with its centre at the north pole and its rim at the south
/// pole, rotated by `n omega`.
pub fn tube_value(c: TubeCoords, n: i64) -> Vec3 {
    let phi = n as f64 * c.omega + c.theta;
    let (s, z) = (PI * c.r).sin_cos();
    [s * phi.cos(), s * phi.sin(), z]
}

/// The Pontryagin model `P_{c,n}`: `S` outside the tube, and `n` extra
/// twists along the core inside it.
pub fn pontryagin_model(
    t: &Triangulation,
    chart: &TubeChart,
    n: i64,
) -> Result<SphereField, FieldError> {
    if chart.len() != t.vertex_count() {
        return Err(FieldError::ChartMismatch {
            expected: t.vertex_count(),
            found: chart.len(),
        });
    }
    SphereField::from_fn(t, |v| match chart.coords[v] {
        Some(c) => tube_value(c, n),
        None => SOUTH,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::NORTH;

    fn model(m: Manifold) -> Model {
        m.build(1_000_000).unwrap()
    }

    #[test]
    fn outside_is_south_and_core_is_north() {
        let md = model(Manifold::s2s1(2));
        let chart = TubeChart::for_model(&md, &[1]).unwrap();
        let f = pontryagin_model(md.mesh(), &chart, 0).unwrap();
        for v in 0..md.mesh().vertex_count() {
            if chart.coords()[v].is_none() {
                assert_eq!(f.value(v), SOUTH);
            }
        }
        let core = chart.core_vertices();
        let Manifold::S2S1 { m, .. } = md.manifold else {
            unreachable!()
        };
        assert_eq!(core.len(), m as usize);
        for v in core {
            assert!((f.value(v)[2] - NORTH[2]).abs() < 1e-12);
        }
    }

    #[test]
    fn models_are_nonsingular() {
        for (m, class) in [
            (Manifold::s3(2), vec![]),
            (Manifold::s2s1(2), vec![1]),
            (Manifold::t3(2), vec![1, 0, 0]),
            (Manifold::t3(2), vec![2, 0, 0]),
        ] {
            let md = model(m);
            let chart = TubeChart::for_model(&md, &class).unwrap();
            assert!(!chart.tube_vertices().is_empty());
            for n in -2..=3 {
                pontryagin_model(md.mesh(), &chart, n)
                    .unwrap_or_else(|e| panic!("{m} {class:?} n={n}: {e}"));
            }
        }
    }

    #[test]
    fn chart_mismatch() {
        let md = model(Manifold::s2s1(0));
        let other = model(Manifold::s3(1));
        let chart = TubeChart::for_model(&md, &[1]).unwrap();
        assert!(matches!(
            pontryagin_model(other.mesh(), &chart, 1),
            Err(FieldError::ChartMismatch { .. })
        ));
    }

    #[test]
    fn holonomy_closes_the_frame() {
        // a planar square has no holonomy; theta of a fixed offset is constant
        let core = CoreCurve {
            points: vec![
                [0.0, 0.0, 0.0],
                [4.0, 0.0, 0.0],
                [4.0, 4.0, 0.0],
                [0.0, 4.0, 0.0],
            ],
            period: [None; 3],
        };
        let pts: Vec<Option<Vec3>> = vec![
            Some([2.0, 0.0, 0.5]),
            Some([4.0, 2.0, 0.5]),
            Some([2.0, 4.0, 0.5]),
        ];
        let chart = TubeChart::from_polyline(&pts, &core, 1.0, "square");
        let th: Vec<f64> = chart.coords().iter().map(|c| c.unwrap().theta).collect();
        assert!(
            (th[0] - th[1]).abs() < 1e-9 && (th[1] - th[2]).abs() < 1e-9,
            "{th:?}"
        );
    }
}
