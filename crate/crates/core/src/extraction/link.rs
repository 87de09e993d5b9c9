use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::mesh::Triangulation;

/// One straight piece of a link inside a tet, in barycentric coordinates
/// of the stored (positively oriented) vertex tuple.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub tet: usize,
    pub from: [f64; 4],
    pub to: [f64; 4],
}

/// Closed oriented polyline. `orientation = -1` means the segments are
/// traversed backwards.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub segments: Vec<Segment>,
    pub orientation: i8,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PolyLink {
    pub components: Vec<Component>,
}

/// A point of a link expressed in one of its tets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinkPoint {
    pub tet: usize,
    pub bary: [f64; 4],
}

#[derive(Debug, thiserror::Error)]
pub enum LinkFormatError {
    #[error("malformed link JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("segment in tet {tet} is outside the mesh or has bad barycentrics")]
    BadSegment { tet: usize },
    #[error("component {0} is not closed")]
    NotClosed(usize),
}

impl Component {
    /// Segments in traversal order with the orientation applied.
    pub fn oriented_segments(&self) -> Vec<Segment> {
        if self.orientation >= 0 {
            self.segments.clone()
        } else {
            self.segments
                .iter()
                .rev()
                .map(|s| Segment {
                    tet: s.tet,
                    from: s.to,
                    to: s.from,
                })
                .collect()
        }
    }
}

impl PolyLink {
    pub fn empty() -> Self {
        PolyLink::default()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn segment_count(&self) -> usize {
        self.components.iter().map(|c| c.segments.len()).sum()
    }

    /// Same point set with every component reversed.
    pub fn reversed(&self) -> PolyLink {
        PolyLink {
            components: self
                .components
                .iter()
                .map(|c| Component {
                    segments: c.segments.clone(),
                    orientation: -c.orientation,
                })
                .collect(),
        }
    }

    /// Disjoint union.
    pub fn union(&self, other: &PolyLink) -> PolyLink {
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        PolyLink { components }
    }

    /// Oriented segments of every component, in order.
    pub fn oriented_segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.components.iter().flat_map(|c| c.oriented_segments())
    }

    /// Check tets and barycentrics against `t` and that consecutive segments
    /// meet in a common point.
    pub fn validate(&self, t: &Triangulation) -> Result<(), LinkFormatError> {
        for (ci, c) in self.components.iter().enumerate() {
            for s in &c.segments {
                let ok = s.tet < t.tet_count()
                    && [s.from, s.to].iter().all(|b| {
                        b.iter().all(|x| x.is_finite() && *x >= -1e-9)
                            && (b.iter().sum::<f64>() - 1.0).abs() < 1e-9
                    });
                if !ok {
                    return Err(LinkFormatError::BadSegment { tet: s.tet });
                }
            }
            let n = c.segments.len();
            if n == 0 {
                return Err(LinkFormatError::NotClosed(ci));
            }
            for k in 0..n {
                let a = &c.segments[k];
                let b = &c.segments[(k + 1) % n];
                let p = position(
                    t,
                    &LinkPoint {
                        tet: a.tet,
                        bary: a.to,
                    },
                );
                let q = position(
                    t,
                    &LinkPoint {
                        tet: b.tet,
                        bary: b.from,
                    },
                );
                let scale = t.diameter().max(1.0);
                let gap =
                    ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2)).sqrt();
                if gap > 1e-7 * scale && !same_point_by_vertices(t, a.tet, &a.to, b.tet, &b.from) {
                    return Err(LinkFormatError::NotClosed(ci));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("link serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, LinkFormatError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Wavefront OBJ with one `l` record per component.
    pub fn to_obj(&self, t: &Triangulation) -> String {
        let mut out = String::from("# hopfian link\n");
        let mut next = 1;
        for c in &self.components {
            let segs = c.oriented_segments();
            for s in &segs {
                let p = position(
                    t,
                    &LinkPoint {
                        tet: s.tet,
                        bary: s.from,
                    },
                );
                writeln!(out, "v {} {} {}", p[0], p[1], p[2]).unwrap();
            }
            let ids: Vec<String> = (0..segs.len()).map(|k| (next + k).to_string()).collect();
            writeln!(out, "l {} {}", ids.join(" "), next).unwrap();
            next += segs.len();
        }
        out
    }

    /// Legacy VTK polydata with one polyline per component.
    pub fn to_vtk(&self, t: &Triangulation) -> String {
        let comps: Vec<Vec<Segment>> = self
            .components
            .iter()
            .map(|c| c.oriented_segments())
            .collect();
        let npts: usize = comps.iter().map(|c| c.len()).sum();
        let mut out =
            String::from("# vtk DataFile Version 3.0\nhopfian link\nASCII\nDATASET POLYDATA\n");
        writeln!(out, "POINTS {npts} double").unwrap();
        for s in comps.iter().flatten() {
            let p = position(
                t,
                &LinkPoint {
                    tet: s.tet,
                    bary: s.from,
                },
            );
            writeln!(out, "{} {} {}", p[0], p[1], p[2]).unwrap();
        }
        let size: usize = comps.iter().map(|c| c.len() + 2).sum();
        writeln!(out, "LINES {} {size}", comps.len()).unwrap();
        let mut next = 0;
        for c in &comps {
            let mut line = format!("{}", c.len() + 1);
            for k in 0..c.len() {
                write!(line, " {}", next + k).unwrap();
            }
            write!(line, " {next}").unwrap();
            writeln!(out, "{line}").unwrap();
            next += c.len();
        }
        out
    }
}

/// Mesh coordinates of a link point.
pub fn position(t: &Triangulation, p: &LinkPoint) -> [f64; 3] {
    let tet = t.tets()[p.tet];
    let mut x = [0.0; 3];
    for i in 0..4 {
        let v = t.vertices()[tet[i]];
        for k in 0..3 {
            x[k] += p.bary[i] * v[k];
        }
    }
    x
}

/// Vertex-weight form of a point: sorted `(global vertex, weight)` pairs
/// with weight above `1e-12`.
pub fn vertex_weights(t: &Triangulation, p: &LinkPoint) -> Vec<(usize, f64)> {
    let tet = t.tets()[p.tet];
    let mut w: Vec<(usize, f64)> = (0..4)
        .filter(|&i| p.bary[i] > 1e-12)
        .map(|i| (tet[i], p.bary[i]))
        .collect();
    w.sort_by_key(|x| x.0);
    w
}

fn same_point_by_vertices(
    t: &Triangulation,
    ta: usize,
    a: &[f64; 4],
    tb: usize,
    b: &[f64; 4],
) -> bool {
    let wa = vertex_weights(t, &LinkPoint { tet: ta, bary: *a });
    let wb = vertex_weights(t, &LinkPoint { tet: tb, bary: *b });
    wa.len() == wb.len()
        && wa
            .iter()
            .zip(&wb)
            .all(|(x, y)| x.0 == y.0 && (x.1 - y.1).abs() < 1e-9)
}
