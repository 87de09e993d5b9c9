//! Closed oriented triangulated 3-manifolds.
//!
//! A [`Triangulation`] stores its tetrahedra as positively oriented vertex
//! 4-tuples. Orientation is combinatorial: neighbouring tetrahedra induce
//! opposite orientations on their shared triangle. Vertex coordinates are
//! carried along for export and volume bookkeeping but never used to decide
//! orientation, since a closed manifold mapped into R^3 cannot have all of
//! its tetrahedra positively embedded.

mod chain;
mod io;
pub mod lattice;
mod subdivide;

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;

use crate::algebra::IntMatrix;

pub use chain::ChainVector;
pub use io::{load_mesh, parse_mesh, write_mesh};
pub use subdivide::{barycentric_subdivide, max_tets_from_env, Ancestry, Subdivision};

#[derive(Debug, thiserror::Error)]
pub enum MeshError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("triangle {tri:?} has {count} cofaces (expected 2)")]
    NotClosed { tri: [usize; 3], count: usize },
    #[error("no coherent orientation exists (conflict at triangle {tri:?})")]
    NotOrientable { tri: [usize; 3] },
    #[error("vertex {vertex} is not a manifold point: {reason}")]
    NotManifold { vertex: usize, reason: String },
    #[error("resulting tetrahedron count {count} exceeds the cap {cap}")]
    ResourceLimit { count: usize, cap: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One incidence of a triangle in the boundary of a tetrahedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Coface {
    pub tet: usize,
    /// Local index (0..4) of the tet vertex opposite the triangle.
    pub opposite: u8,
}

#[derive(Clone, Debug)]
pub struct Triangulation {
    vertices: Vec<[f64; 3]>,
    tets: Vec<[usize; 4]>,
    edges: Vec<[usize; 2]>,
    edge_index: HashMap<[usize; 2], usize>,
    triangles: Vec<[usize; 3]>,
    tri_index: HashMap<[usize; 3], usize>,
    /// `tet_tris[t][i]` is the triangle opposite local vertex `i`.
    tet_tris: Vec<[usize; 4]>,
    tri_cofaces: Vec<[Coface; 2]>,
}

/// Sign of the permutation sorting `v` (all entries distinct).
pub fn parity<const N: usize>(v: &[usize; N]) -> i32 {
    let mut s = 1;
    for i in 0..N {
        for j in i + 1..N {
            if v[i] > v[j] {
                s = -s;
            }
        }
    }
    s
}

pub fn sorted<const N: usize>(mut v: [usize; N]) -> [usize; N] {
    v.sort_unstable();
    v
}

/// Vertices of a tet with local vertex `i` removed, in order.
pub fn face_of(tet: &[usize; 4], i: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut k = 0;
    for (j, &v) in tet.iter().enumerate() {
        if j != i {
            out[k] = v;
            k += 1;
        }
    }
    out
}

impl Triangulation {
    /// Build, validate and coherently orient a closed triangulation.
    ///
    /// The first tetrahedron of each connected component keeps its given
    /// vertex order; all others are reordered to agree with it.
    pub fn new(vertices: Vec<[f64; 3]>, tets: Vec<[usize; 4]>) -> Result<Self, MeshError> {
        let nv = vertices.len();
        for (t, tet) in tets.iter().enumerate() {
            for &v in tet {
                if v >= nv {
                    return Err(MeshError::Parse {
                        line: 0,
                        msg: format!("tet {t} references vertex {v} >= {nv}"),
                    });
                }
            }
            let s = sorted(*tet);
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(MeshError::Parse {
                    line: 0,
                    msg: format!("tet {t} has repeated vertices"),
                });
            }
        }
        let mut tets = tets;

        let mut triangles = Vec::new();
        let mut tri_index: HashMap<[usize; 3], usize> = HashMap::new();
        let mut tet_tris = Vec::with_capacity(tets.len());
        let mut incid: Vec<Vec<Coface>> = Vec::new();
        for (t, tet) in tets.iter().enumerate() {
            let mut tt = [0; 4];
            for i in 0..4 {
                let key = sorted(face_of(tet, i));
                let id = *tri_index.entry(key).or_insert_with(|| {
                    triangles.push(key);
                    incid.push(Vec::new());
                    triangles.len() - 1
                });
                incid[id].push(Coface {
                    tet: t,
                    opposite: i as u8,
                });
                tt[i] = id;
            }
            tet_tris.push(tt);
        }
        let mut tri_cofaces = Vec::with_capacity(triangles.len());
        for (id, cof) in incid.iter().enumerate() {
            if cof.len() != 2 {
                return Err(MeshError::NotClosed {
                    tri: triangles[id],
                    count: cof.len(),
                });
            }
            tri_cofaces.push([cof[0], cof[1]]);
        }

        // coherent orientation by breadth-first propagation
        let mut state: Vec<Option<bool>> = vec![None; tets.len()];
        for root in 0..tets.len() {
            if state[root].is_some() {
                continue;
            }
            state[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(t) = queue.pop_front() {
                for i in 0..4 {
                    let tri = tet_tris[t][i];
                    let other = tri_cofaces[tri]
                        .iter()
                        .find(|c| c.tet != t)
                        .copied()
                        .unwrap();
                    let flip_t = state[t].unwrap();
                    let st = induced_sign(&tets[t], i) * if flip_t { -1 } else { 1 };
                    let so = induced_sign(&tets[other.tet], other.opposite as usize);
                    match state[other.tet] {
                        None => {
                            // neighbour must induce the opposite sign
                            state[other.tet] = Some(so == st);
                            queue.push_back(other.tet);
                        }
                        Some(flip_o) => {
                            let so = so * if flip_o { -1 } else { 1 };
                            if so == st {
                                return Err(MeshError::NotOrientable {
                                    tri: triangles[tri],
                                });
                            }
                        }
                    }
                }
            }
        }
        for (t, s) in state.iter().enumerate() {
            if s == &Some(true) {
                tets[t].swap(2, 3);
            }
        }
        // swapping local vertices 2 and 3 relabels the opposite-face slots
        for (t, s) in state.iter().enumerate() {
            if s == &Some(true) {
                tet_tris[t].swap(2, 3);
            }
        }
        for cof in tri_cofaces.iter_mut() {
            for c in cof.iter_mut() {
                if state[c.tet] == Some(true) && c.opposite >= 2 {
                    c.opposite = 5 - c.opposite;
                }
            }
        }

        let mut edges = Vec::new();
        let mut edge_index = HashMap::new();
        for tri in &triangles {
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                let key = [tri[a], tri[b]];
                edge_index.entry(key).or_insert_with(|| {
                    edges.push(key);
                    edges.len() - 1
                });
            }
        }

        let mesh = Triangulation {
            vertices,
            tets,
            edges,
            edge_index,
            triangles,
            tri_index,
            tet_tris,
            tri_cofaces,
        };
        mesh.check_vertex_links()?;
        Ok(mesh)
    }

    fn check_vertex_links(&self) -> Result<(), MeshError> {
        let nv = self.vertices.len();
        let mut star: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (t, tet) in self.tets.iter().enumerate() {
            for &v in tet {
                star[v].push(t);
            }
        }
        for (v, tets) in star.iter().enumerate() {
            if tets.is_empty() {
                return Err(MeshError::NotManifold {
                    vertex: v,
                    reason: "isolated vertex".into(),
                });
            }
            let mut lverts: Vec<usize> = Vec::new();
            let mut ledges: Vec<[usize; 2]> = Vec::new();
            for &t in tets {
                let i = self.tets[t].iter().position(|&x| x == v).unwrap();
                let f = sorted(face_of(&self.tets[t], i));
                lverts.extend_from_slice(&f);
                ledges.extend_from_slice(&[[f[0], f[1]], [f[0], f[2]], [f[1], f[2]]]);
            }
            lverts.sort_unstable();
            lverts.dedup();
            ledges.sort_unstable();
            ledges.dedup();
            let chi = lverts.len() as i64 - ledges.len() as i64 + tets.len() as i64;
            if chi != 2 {
                return Err(MeshError::NotManifold {
                    vertex: v,
                    reason: format!("vertex link has Euler characteristic {chi}"),
                });
            }
            // connectivity of the link
            let idx: HashMap<usize, usize> =
                lverts.iter().enumerate().map(|(i, &x)| (x, i)).collect();
            let mut uf = UnionFind::new(lverts.len());
            for e in &ledges {
                uf.union(idx[&e[0]], idx[&e[1]]);
            }
            if uf.count() != 1 {
                return Err(MeshError::NotManifold {
                    vertex: v,
                    reason: "vertex link is disconnected".into(),
                });
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[[f64; 3]] {
        &self.vertices
    }

    pub fn tets(&self) -> &[[usize; 4]] {
        &self.tets
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn tet_count(&self) -> usize {
        self.tets.len()
    }

    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&sorted([a, b])).copied()
    }

    pub fn triangle_id(&self, tri: [usize; 3]) -> Option<usize> {
        self.tri_index.get(&sorted(tri)).copied()
    }

    /// Triangle opposite local vertex `i` of tet `t`.
    pub fn tet_triangle(&self, t: usize, i: usize) -> usize {
        self.tet_tris[t][i]
    }

    pub fn cofaces(&self, tri: usize) -> [Coface; 2] {
        self.tri_cofaces[tri]
    }

    /// Tet across the triangle opposite local vertex `i` of `t`, with the
    /// local index of the opposite vertex on that side.
    pub fn neighbor(&self, t: usize, i: usize) -> Coface {
        let tri = self.tet_tris[t][i];
        let c = self.tri_cofaces[tri];
        if c[0].tet == t && c[0].opposite as usize == i {
            c[1]
        } else {
            c[0]
        }
    }

    /// Sign with which the (sorted) triangle opposite local vertex `i`
    /// appears in the boundary of tet `t`.
    pub fn boundary_sign(&self, t: usize, i: usize) -> i32 {
        induced_sign(&self.tets[t], i)
    }

    /// Number of connected components of the 1-skeleton.
    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e[0], e[1]);
        }
        uf.count()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
            - self.tets.len() as i64
    }

    /// Signed volume of tet `t` from the stored coordinates.
    pub fn signed_volume(&self, t: usize) -> f64 {
        let [a, b, c, d] = self.tets[t].map(|v| self.vertices[v]);
        let u = sub3(b, a);
        let v = sub3(c, a);
        let w = sub3(d, a);
        det3(u, v, w) / 6.0
    }

    pub fn total_signed_volume(&self) -> f64 {
        (0..self.tets.len()).map(|t| self.signed_volume(t)).sum()
    }

    /// Bounding-box diagonal of the stored coordinates.
    pub fn diameter(&self) -> f64 {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for p in &self.vertices {
            for k in 0..3 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        norm3(sub3(hi, lo))
    }

    /// Sparse boundary operator, as `(row, col, coefficient)` triples:
    /// rows are (k-1)-simplices and columns are k-simplices.
    pub fn boundary_entries(&self, k: usize) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        match k {
            1 => {
                for (j, e) in self.edges.iter().enumerate() {
                    out.push((e[0], j, -1));
                    out.push((e[1], j, 1));
                }
            }
            2 => {
                for (j, f) in self.triangles.iter().enumerate() {
                    for (i, s) in triangle_boundary(f) {
                        out.push((self.edge_index[&i], j, s));
                    }
                }
            }
            3 => {
                for (j, _) in self.tets.iter().enumerate() {
                    for i in 0..4 {
                        out.push((self.tet_tris[j][i], j, self.boundary_sign(j, i) as i64));
                    }
                }
            }
            _ => panic!("boundary operator index must be 1, 2 or 3"),
        }
        out
    }

    /// Shape of the k-th boundary operator.
    pub fn boundary_shape(&self, k: usize) -> (usize, usize) {
        match k {
            1 => (self.vertices.len(), self.edges.len()),
            2 => (self.edges.len(), self.triangles.len()),
            3 => (self.triangles.len(), self.tets.len()),
            _ => panic!("boundary operator index must be 1, 2 or 3"),
        }
    }

    /// Dense integer boundary matrix. Intended for small complexes.
    pub fn boundary_matrix(&self, k: usize) -> IntMatrix {
        let (r, c) = self.boundary_shape(k);
        let mut m = IntMatrix::zeros(r, c);
        for (i, j, v) in self.boundary_entries(k) {
            m[(i, j)] += BigInt::from(v);
        }
        m
    }
}

/// Oriented boundary of a sorted triangle `[a,b,c]`: `[b,c] - [a,c] + [a,b]`.
pub fn triangle_boundary(f: &[usize; 3]) -> [([usize; 2], i64); 3] {
    [([f[1], f[2]], 1), ([f[0], f[2]], -1), ([f[0], f[1]], 1)]
}

/// `(-1)^i` times the parity of the face tuple relative to its sorted order.
fn induced_sign(tet: &[usize; 4], i: usize) -> i32 {
    let f = face_of(tet, i);
    let s = if i.is_multiple_of(2) { 1 } else { -1 };
    s * parity(&f)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    count: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            count: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.count -= 1;
        true
    }

    pub fn count(&self) -> usize {
        self.count
    }
}

pub(crate) fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn det3(u: [f64; 3], v: [f64; 3], w: [f64; 3]) -> f64 {
    u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0])
}

pub(crate) fn norm3(u: [f64; 3]) -> f64 {
    (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt()
}

/// Boundary of the 4-simplex: the smallest closed triangulated 3-manifold (S^3).
pub fn boundary_of_4_simplex() -> Triangulation {
    let vertices = vec![
        [0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.3, 0.3, 0.3],
    ];
    let tets = (0..5).map(|skip| {
        let mut t = [0; 4];
        let mut k = 0;
        for v in 0..5 {
            if v != skip {
                t[k] = v;
                k += 1;
            }
        }
        t
    });
    Triangulation::new(vertices, tets.collect())
        .expect("boundary of the 4-simplex is a closed 3-manifold")
}
