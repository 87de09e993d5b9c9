//! Reference cycles dual to the free part of H1.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use super::{class_of_link, LinkingError};
use crate::algebra::{smith_normal_form, solve_integer, H1Structure, HomologyClass, IntMatrix};
use crate::extraction::{Component, PolyLink, Segment};
use crate::fields::rng_for;
use crate::mesh::Triangulation;

/// Polylines through face points of the dual graph whose classes form a
/// basis of the free part of H1.
#[derive(Clone, Debug)]
pub struct ReferenceCycles {
    pub links: Vec<PolyLink>,
    pub classes: Vec<HomologyClass>,
    basis: IntMatrix,
}

impl ReferenceCycles {
    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    /// Integers `a` with `free(c) = sum a_j free(rho_j)`.
    pub fn coefficients(&self, c: &HomologyClass) -> Vec<BigInt> {
        if self.links.is_empty() {
            return Vec::new();
        }
        solve_integer(&self.basis.transpose(), &c.free).expect("reference basis is unimodular")
    }
}

struct DualTree {
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
}

fn dual_tree(t: &Triangulation) -> DualTree {
    let n = t.tet_count();
    let mut parent = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    if n > 0 {
        depth[0] = 0;
        queue.push_back(0);
    }
    while let Some(a) = queue.pop_front() {
        for i in 0..4 {
            let b = t.neighbor(a, i).tet;
            if depth[b] == usize::MAX {
                depth[b] = depth[a] + 1;
                parent[b] = Some((a, t.tet_triangle(a, i)));
                queue.push_back(b);
            }
        }
    }
    DualTree { parent, depth }
}

/// Tets and faces of the dual cycle closed by the non-tree face `tri`
/// between `a` and `b`: `tets[k]` is left through `faces[k]`.
fn dual_cycle(tree: &DualTree, a: usize, b: usize, tri: usize) -> (Vec<usize>, Vec<usize>) {
    let (mut x, mut y) = (a, b);
    let mut up: Vec<(usize, usize)> = Vec::new();
    let mut down: Vec<(usize, usize)> = Vec::new();
    while x != y {
        if tree.depth[x] >= tree.depth[y] {
            let (p, f) = tree.parent[x].unwrap();
            up.push((x, f));
            x = p;
        } else {
            let (p, f) = tree.parent[y].unwrap();
            down.push((p, f));
            y = p;
        }
    }
    let mut tets = Vec::new();
    let mut faces = Vec::new();
    for (tet, f) in up {
        tets.push(tet);
        faces.push(f);
    }
    for (tet, f) in down.into_iter().rev() {
        tets.push(tet);
        faces.push(f);
    }
    tets.push(b);
    faces.push(tri);
    (tets, faces)
}

fn face_point(t: &Triangulation, seed: u64, tri: usize, tet: usize) -> [f64; 4] {
    let mut rng = rng_for(seed, 0x5EF_0000_0000 + tri as u64);
    let w: [f64; 3] = std::array::from_fn(|_| rng.gen_range(0.2..1.0));
    let sum: f64 = w.iter().sum();
    let verts = t.triangles()[tri];
    let tv = t.tets()[tet];
    std::array::from_fn(|i| {
        verts
            .iter()
            .position(|&v| v == tv[i])
            .map_or(0.0, |k| w[k] / sum)
    })
}

fn polyline(t: &Triangulation, seed: u64, tets: &[usize], faces: &[usize]) -> PolyLink {
    let n = tets.len();
    let segments = (0..n)
        .map(|k| {
            let tet = tets[k];
            let entry = faces[(k + n - 1) % n];
            Segment {
                tet,
                from: face_point(t, seed, entry, tet),
                to: face_point(t, seed, faces[k], tet),
            }
        })
        .collect();
    PolyLink {
        components: vec![Component {
            segments,
            orientation: 1,
        }],
    }
}

fn saturated(rows: &[Vec<BigInt>]) -> bool {
    let m = IntMatrix::from_rows(rows);
    let d = smith_normal_form(&m).diagonal();
    d.len() == rows.len() && d.iter().all(One::is_one)
}

/// Reference cycles for `h`, scanning dual-graph cycles deepest first and
/// keeping those that extend a primitive family.
pub fn reference_cycles(
    t: &Triangulation,
    h: &H1Structure,
    seed: u64,
) -> Result<ReferenceCycles, LinkingError> {
    reference_cycles_preferring(t, h, seed, &PolyLink::empty())
}

/// As [`reference_cycles`], but components of `preferred` are tried first.
pub fn reference_cycles_preferring(
    t: &Triangulation,
    h: &H1Structure,
    seed: u64,
    preferred: &PolyLink,
) -> Result<ReferenceCycles, LinkingError> {
    let r = h.free_rank();
    let mut family = Family {
        links: Vec::new(),
        classes: Vec::new(),
        rows: Vec::new(),
    };
    if r == 0 {
        return Ok(family.finish());
    }
    let mut tried = 0;
    for c in &preferred.components {
        tried += 1;
        let link = PolyLink {
            components: vec![c.clone()],
        };
        if family.offer(t, h, link)? && family.links.len() == r {
            return Ok(family.finish());
        }
    }
    let tree = dual_tree(t);
    let mut candidates: Vec<(usize, usize, usize)> = (0..t.triangles().len())
        .filter_map(|tri| {
            let [c0, c1] = t.cofaces(tri);
            let (a, b) = (c0.tet, c1.tet);
            let tree_edge = tree.parent[a].is_some_and(|p| p.1 == tri)
                || tree.parent[b].is_some_and(|p| p.1 == tri);
            (!tree_edge).then_some((tri, a, b))
        })
        .collect();
    candidates.sort_by_key(|&(tri, a, b)| (std::cmp::Reverse(tree.depth[a] + tree.depth[b]), tri));
    for &(tri, a, b) in &candidates {
        tried += 1;
        // a is left through tri into b, so the cycle runs b -> ... -> a.
        let (tets, faces) = dual_cycle(&tree, b, a, tri);
        if family.offer(t, h, polyline(t, seed, &tets, &faces))? && family.links.len() == r {
            return Ok(family.finish());
        }
    }
    Err(LinkingError::NoReferenceBasis { tried })
}

struct Family {
    links: Vec<PolyLink>,
    classes: Vec<HomologyClass>,
    rows: Vec<Vec<BigInt>>,
}

impl Family {
    fn offer(
        &mut self,
        t: &Triangulation,
        h: &H1Structure,
        link: PolyLink,
    ) -> Result<bool, LinkingError> {
        let class = class_of_link(t, h, &link)?;
        if class.free.iter().all(Zero::is_zero) {
            return Ok(false);
        }
        self.rows.push(class.free.clone());
        if saturated(&self.rows) {
            self.links.push(link);
            self.classes.push(class);
            Ok(true)
        } else {
            self.rows.pop();
            Ok(false)
        }
    }

    fn finish(self) -> ReferenceCycles {
        let basis = if self.rows.is_empty() {
            IntMatrix::zeros(0, 0)
        } else {
            IntMatrix::from_rows(&self.rows)
        };
        ReferenceCycles {
            links: self.links,
            classes: self.classes,
            basis,
        }
    }
}
