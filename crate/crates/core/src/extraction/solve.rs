//! Parallel-vector points on a triangle: barycentric `l` and scalar `s`
//! with `F l = s G l`.

use crate::fields::{cross, det, dot, norm, Vec3};

/// Accepted barycentric tolerance.
pub const BARY_TOL: f64 = 1e-9;
/// Accepted imaginary part of a root.
pub const IMAG_TOL: f64 = 1e-9;
/// Roots closer than this (relative) count as a double root.
pub const DOUBLE_ROOT_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FaceRoot {
    pub bary: [f64; 3],
    pub s: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceIssue {
    /// Near-double root, rank drop or a point on an edge of the face.
    NearDegenerate,
}

/// `[c0, c1, c2, c3]` with `det(F - sG) = c0 + c1 s + c2 s^2 + c3 s^3`.
pub fn det_pencil(f: &[Vec3; 3], g: &[Vec3; 3]) -> [f64; 4] {
    let c0 = det(f[0], f[1], f[2]);
    let c1 = -(det(g[0], f[1], f[2]) + det(f[0], g[1], f[2]) + det(f[0], f[1], g[2]));
    let c2 = det(f[0], g[1], g[2]) + det(g[0], f[1], g[2]) + det(g[0], g[1], f[2]);
    let c3 = -det(g[0], g[1], g[2]);
    [c0, c1, c2, c3]
}

fn horner(c: &[f64; 4], x: f64) -> f64 {
    ((c[3] * x + c[2]) * x + c[1]) * x + c[0]
}

fn polish(c: &[f64; 4], mut x: f64) -> f64 {
    for _ in 0..4 {
        let p = horner(c, x);
        let dp = (3.0 * c[3] * x + 2.0 * c[2]) * x + c[1];
        if dp == 0.0 {
            break;
        }
        let step = p / dp;
        if !step.is_finite() {
            break;
        }
        x -= step;
    }
    x
}

/// Real roots of `c0 + c1 x + c2 x^2 + c3 x^3` (`c3 != 0`), plus a flag set
/// when a complex pair is closer than [`IMAG_TOL`] to the real axis (its
/// real part is then returned twice).
pub fn real_cubic_roots(c: &[f64; 4]) -> (Vec<f64>, bool) {
    let m = [c[0] / c[3], c[1] / c[3], c[2] / c[3], 1.0];
    let bound = 1.0 + m[0].abs().max(m[1].abs()).max(m[2].abs());
    let (mut lo, mut hi) = (-bound, bound);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if horner(&m, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let r = polish(&m, 0.5 * (lo + hi));
    let p = m[2] + r;
    let q = m[1] + r * p;
    let disc = p * p - 4.0 * q;
    let mut roots = vec![r];
    let mut near_complex = false;
    if disc >= 0.0 {
        let sq = disc.sqrt();
        let t = -0.5 * (p + p.signum() * sq);
        if t != 0.0 {
            roots.push(polish(&m, t));
            roots.push(polish(&m, q / t));
        } else {
            roots.push(0.0);
            roots.push(0.0);
        }
    } else if 0.5 * (-disc).sqrt() < IMAG_TOL {
        near_complex = true;
        roots.push(-0.5 * p);
        roots.push(-0.5 * p);
    }
    roots.sort_by(f64::total_cmp);
    (roots, near_complex)
}

fn null_vector(a: &[Vec3; 3]) -> Option<Vec3> {
    let cands = [cross(a[0], a[1]), cross(a[1], a[2]), cross(a[2], a[0])];
    let best = cands
        .iter()
        .copied()
        .max_by(|x, y| norm(*x).total_cmp(&norm(*y)))?;
    let scale = a.iter().map(|r| norm(*r)).fold(0.0, f64::max);
    if norm(best) <= 1e-10 * scale * scale {
        None
    } else {
        Some(best)
    }
}

fn columns_equal(v: &[Vec3; 3]) -> bool {
    (1..3).all(|i| (0..3).all(|k| (v[i][k] - v[0][k]).abs() <= 1e-14))
}

fn valid_bary(v: Vec3) -> Result<Option<[f64; 3]>, FaceIssue> {
    let sum = v[0] + v[1] + v[2];
    if sum.abs() <= 1e-12 * (v[0].abs() + v[1].abs() + v[2].abs()) {
        return Ok(None);
    }
    let l = [v[0] / sum, v[1] / sum, v[2] / sum];
    if l.iter().any(|&x| x < -BARY_TOL) {
        return Ok(None);
    }
    if l.iter().any(|&x| x < BARY_TOL) {
        return Err(FaceIssue::NearDegenerate);
    }
    Ok(Some(l))
}

fn make_root(f: &[Vec3; 3], g: &[Vec3; 3], l: [f64; 3]) -> FaceRoot {
    let fl = comb(f, &l);
    let gl = comb(g, &l);
    FaceRoot {
        bary: l,
        s: dot(fl, gl).signum() * norm(fl) / norm(gl),
    }
}

/// Points where the varying field `v` is parallel to the constant `c`.
fn against_constant(v: &[Vec3; 3], c: Vec3) -> Result<Option<[f64; 3]>, FaceIssue> {
    let cols = [cross(v[0], c), cross(v[1], c), cross(v[2], c)];
    let rows: [Vec3; 3] = std::array::from_fn(|i| [cols[0][i], cols[1][i], cols[2][i]]);
    match null_vector(&rows) {
        Some(n) => valid_bary(n),
        None => Err(FaceIssue::NearDegenerate),
    }
}

/// Angles of the pencil rotations tried.
const ROTATIONS: [f64; 5] = [0.0, std::f64::consts::FRAC_PI_2, 0.7, -0.7, 1.9];

/// Conditioning, rotated pair and rotation of a candidate pencil.
type Pencil = (f64, [Vec3; 3], [Vec3; 3], [f64; 4]);

/// All points of the closed triangle where the interpolants of `f` and `g`
/// are parallel (nonzero). Vertex values are columns.
///
/// The pencil `(F, G)` is rotated to `(cF + sG, cG - sF)` so that the
/// second matrix is as well conditioned as possible; a face on which one
/// field is constant is solved linearly.
pub fn face_roots(f: &[Vec3; 3], g: &[Vec3; 3]) -> Result<Vec<FaceRoot>, FaceIssue> {
    match (columns_equal(f), columns_equal(g)) {
        (true, true) => {
            return if norm(cross(f[0], g[0])) <= 1e-14 {
                Err(FaceIssue::NearDegenerate)
            } else {
                Ok(Vec::new())
            };
        }
        (true, false) => {
            return Ok(against_constant(g, f[0])?
                .map(|l| make_root(f, g, l))
                .into_iter()
                .collect())
        }
        (false, true) => {
            return Ok(against_constant(f, g[0])?
                .map(|l| make_root(f, g, l))
                .into_iter()
                .collect())
        }
        _ => {}
    }
    let mut best: Option<Pencil> = None;
    for theta in ROTATIONS {
        let (sn, cs) = theta.sin_cos();
        let a: [Vec3; 3] =
            std::array::from_fn(|j| std::array::from_fn(|k| cs * f[j][k] + sn * g[j][k]));
        let b: [Vec3; 3] =
            std::array::from_fn(|j| std::array::from_fn(|k| cs * g[j][k] - sn * f[j][k]));
        let poly = det_pencil(&a, &b);
        let quality = poly[3].abs();
        if best.as_ref().is_none_or(|x| quality > x.0) {
            best = Some((quality, a, b, poly));
        }
    }
    let (quality, a, b, poly) = best.unwrap();
    let scale = (0..3).map(|j| norm(f[j]) + norm(g[j])).fold(0.0, f64::max);
    if quality <= 1e-12 * scale.powi(3) {
        return Err(FaceIssue::NearDegenerate);
    }
    let (roots, near_complex) = real_cubic_roots(&poly);
    let mut out = Vec::new();
    for &x in &roots {
        let m: [Vec3; 3] = std::array::from_fn(|i| std::array::from_fn(|j| a[j][i] - x * b[j][i]));
        let Some(v) = null_vector(&m) else {
            return Err(FaceIssue::NearDegenerate);
        };
        if let Some(l) = valid_bary(v)? {
            out.push(make_root(f, g, l));
        }
    }
    if !out.is_empty() {
        if near_complex {
            return Err(FaceIssue::NearDegenerate);
        }
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                if (roots[i] - roots[j]).abs() < DOUBLE_ROOT_TOL * roots[i].abs().max(1.0) {
                    return Err(FaceIssue::NearDegenerate);
                }
            }
        }
    }
    Ok(out)
}

pub fn comb(v: &[Vec3; 3], l: &[f64; 3]) -> Vec3 {
    std::array::from_fn(|k| l[0] * v[0][k] + l[1] * v[1][k] + l[2] * v[2][k])
}
