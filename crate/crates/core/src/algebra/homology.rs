//! First homology of a closed triangulated 3-manifold.
//!
//! Generators are the edges outside a spanning tree of the 1-skeleton, and
//! every triangle gives one relation. Relations with a unit coefficient are
//! eliminated sparsely (shortest first); only the small remainder goes
//! through a dense Smith normal form. Each surviving relation remembers
//! which triangles it is a combination of, so a null-homologous cycle can
//! be filled with an explicit 2-chain.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{solve_integer, AbelianGroup, HomologyClass, IntMatrix};
use crate::mesh::{triangle_boundary, ChainVector, Triangulation};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error("expected a 1-chain, got a {0}-chain")]
    WrongDimension(usize),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("cycle is not null-homologous (class {0})")]
    NotNullHomologous(HomologyClass),
}

/// Choices that change the internal basis but never the group.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct H1Options {
    /// Root vertex of the spanning tree.
    pub root: usize,
    /// Tie-breaking salt for the elimination order.
    pub salt: u64,
}

type Row = BTreeMap<usize, BigInt>;

#[derive(Clone, Debug)]
struct Step {
    row: usize,
    gen: usize,
    unit: BigInt,
    entries: Row,
}

#[derive(Clone, Debug)]
pub struct H1Structure {
    group: AbelianGroup,
    edge_gen: Vec<Option<usize>>,
    gen_step: Vec<Option<usize>>,
    gen_col: Vec<Option<usize>>,
    steps: Vec<Step>,
    residual_rows: Vec<usize>,
    residual_matrix: IntMatrix,
    /// `chain(r) = triangle r + sum m * chain(j)` for every pivot or residual row.
    deps: BTreeMap<usize, Vec<(usize, BigInt)>>,
    /// Elimination order of every pivot or residual row.
    order: BTreeMap<usize, usize>,
}

fn mix(x: u64, salt: u64) -> u64 {
    if salt == 0 {
        return x;
    }
    let mut z = x.wrapping_add(salt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn spanning_tree(t: &Triangulation, root: usize) -> Vec<bool> {
    let nv = t.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for (i, e) in t.edges().iter().enumerate() {
        adj[e[0]].push((e[1], i));
        adj[e[1]].push((e[0], i));
    }
    let mut in_tree = vec![false; t.edges().len()];
    let mut seen = vec![false; nv];
    for start in std::iter::once(root % nv.max(1)).chain(0..nv) {
        if nv == 0 || seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    in_tree[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    in_tree
}

impl H1Structure {
    pub fn new(t: &Triangulation) -> Self {
        Self::with_options(t, H1Options::default())
    }

    pub fn with_options(t: &Triangulation, opts: H1Options) -> Self {
        let in_tree = spanning_tree(t, opts.root);
        let mut edge_gen = vec![None; in_tree.len()];
        let mut ngen = 0;
        for (e, &tree) in in_tree.iter().enumerate() {
            if !tree {
                edge_gen[e] = Some(ngen);
                ngen += 1;
            }
        }

        let ntri = t.triangles().len();
        let mut rows: Vec<Option<Row>> = Vec::with_capacity(ntri);
        let mut occ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ngen];
        for (r, f) in t.triangles().iter().enumerate() {
            let mut row = Row::new();
            for (e, s) in triangle_boundary(f) {
                if let Some(g) = edge_gen[t.edge_id(e[0], e[1]).expect("triangle edge")] {
                    row.insert(g, BigInt::from(s));
                    occ[g].insert(r);
                }
            }
            rows.push(if row.is_empty() { None } else { Some(row) });
        }

        let mut heap = BinaryHeap::new();
        for (r, row) in rows.iter().enumerate() {
            if let Some(row) = row {
                heap.push(Reverse((row.len(), mix(r as u64, opts.salt), r)));
            }
        }

        let mut deps: BTreeMap<usize, Vec<(usize, BigInt)>> = BTreeMap::new();
        let mut steps: Vec<Step> = Vec::new();
        let mut gen_step = vec![None; ngen];
        while let Some(Reverse((len, _, r))) = heap.pop() {
            let Some(row) = &rows[r] else { continue };
            if row.len() != len {
                continue;
            }
            let pivot = row
                .iter()
                .filter(|(_, v)| v.abs().is_one())
                .min_by_key(|(&g, _)| (occ[g].len(), mix(g as u64, opts.salt), g))
                .map(|(&g, v)| (g, v.clone()));
            let Some((g, unit)) = pivot else { continue };
            let row = rows[r].take().unwrap();
            for h in row.keys() {
                occ[*h].remove(&r);
            }
            let users: Vec<usize> = occ[g].iter().copied().collect();
            for u in users {
                let target = rows[u].as_mut().unwrap();
                let a = target[&g].clone();
                let mult = &a * &unit;
                for (h, v) in &row {
                    let entry = target.entry(*h).or_default();
                    *entry -= &mult * v;
                    if entry.is_zero() {
                        target.remove(h);
                        occ[*h].remove(&u);
                    } else {
                        occ[*h].insert(u);
                    }
                }
                deps.entry(u).or_default().push((r, -mult));
                if target.is_empty() {
                    rows[u] = None;
                    deps.remove(&u);
                } else {
                    heap.push(Reverse((target.len(), mix(u as u64, opts.salt), u)));
                }
            }
            gen_step[g] = Some(steps.len());
            steps.push(Step {
                row: r,
                gen: g,
                unit,
                entries: row,
            });
        }

        let mut gen_col = vec![None; ngen];
        let mut ncol = 0;
        for g in 0..ngen {
            if gen_step[g].is_none() {
                gen_col[g] = Some(ncol);
                ncol += 1;
            }
        }
        let residual_rows: Vec<usize> = (0..ntri).filter(|&r| rows[r].is_some()).collect();
        let mut residual_matrix = IntMatrix::zeros(residual_rows.len(), ncol);
        for (i, &r) in residual_rows.iter().enumerate() {
            for (g, v) in rows[r].as_ref().unwrap() {
                residual_matrix[(
                    i,
                    gen_col[*g].expect("residual row mentions an eliminated generator"),
                )] = v.clone();
            }
        }
        let group = AbelianGroup::from_relations(&residual_matrix);

        let mut order = BTreeMap::new();
        for (k, s) in steps.iter().enumerate() {
            order.insert(s.row, k);
        }
        for (i, &r) in residual_rows.iter().enumerate() {
            order.insert(r, steps.len() + i);
        }
        deps.retain(|r, _| order.contains_key(r));

        H1Structure {
            group,
            edge_gen,
            gen_step,
            gen_col,
            steps,
            residual_rows,
            residual_matrix,
            deps,
            order,
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn free_rank(&self) -> usize {
        self.group.free_rank()
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.group.torsion()
    }

    pub fn zero(&self) -> HomologyClass {
        self.group.zero()
    }

    /// Size of the relation matrix left after sparse elimination.
    pub fn residual_shape(&self) -> (usize, usize) {
        self.residual_matrix.shape()
    }

    /// Reduce a cycle to residual generator coordinates, recording how many
    /// times each pivot relation was subtracted.
    fn reduce(
        &self,
        z: &ChainVector,
        t: &Triangulation,
    ) -> Result<(Vec<BigInt>, BTreeMap<usize, BigInt>), HomologyError> {
        if z.dim() != 1 {
            return Err(HomologyError::WrongDimension(z.dim()));
        }
        if !z.is_cycle(t) {
            return Err(HomologyError::NotACycle);
        }
        let mut work: BTreeMap<usize, BigInt> = BTreeMap::new();
        let mut queue: BTreeSet<usize> = BTreeSet::new();
        for (e, v) in z.iter() {
            if let Some(g) = self.edge_gen[e] {
                *work.entry(g).or_default() += v;
                if let Some(k) = self.gen_step[g] {
                    queue.insert(k);
                }
            }
        }
        let mut used: BTreeMap<usize, BigInt> = BTreeMap::new();
        while let Some(k) = queue.pop_first() {
            let step = &self.steps[k];
            let Some(a) = work.remove(&step.gen) else {
                continue;
            };
            if a.is_zero() {
                continue;
            }
            let mult = &a * &step.unit;
            for (h, v) in &step.entries {
                if *h == step.gen {
                    continue;
                }
                let entry = work.entry(*h).or_default();
                *entry -= &mult * v;
                if let Some(j) = self.gen_step[*h] {
                    queue.insert(j);
                }
            }
            *used.entry(step.row).or_default() += mult;
        }
        let mut x = vec![BigInt::zero(); self.residual_matrix.cols()];
        for (g, v) in work {
            if v.is_zero() {
                continue;
            }
            let col = self.gen_col[g].expect("eliminated generator survived reduction");
            x[col] += v;
        }
        Ok((x, used))
    }

    pub fn class_of_cycle(
        &self,
        t: &Triangulation,
        z: &ChainVector,
    ) -> Result<HomologyClass, HomologyError> {
        let (x, _) = self.reduce(z, t)?;
        Ok(self.group.classify(&x))
    }

    /// A 2-chain whose boundary is `z`.
    pub fn bounding_chain(
        &self,
        t: &Triangulation,
        z: &ChainVector,
    ) -> Result<ChainVector, HomologyError> {
        let (x, mut used) = self.reduce(z, t)?;
        let class = self.group.classify(&x);
        if !class.is_zero() {
            return Err(HomologyError::NotNullHomologous(class));
        }
        if !x.iter().all(Zero::is_zero) {
            let y = solve_integer(&self.residual_matrix.transpose(), &x)
                .expect("zero class lies in the relation lattice");
            for (i, v) in y.into_iter().enumerate() {
                if !v.is_zero() {
                    *used.entry(self.residual_rows[i]).or_default() += v;
                }
            }
        }
        let mut pending: BTreeMap<usize, (usize, BigInt)> = BTreeMap::new();
        for (r, v) in used {
            let o = self.order[&r];
            pending.entry(o).or_insert((r, BigInt::zero())).1 += v;
        }
        let mut sigma = ChainVector::zero(2);
        while let Some((_, (r, v))) = pending.pop_last() {
            if v.is_zero() {
                continue;
            }
            if let Some(ds) = self.deps.get(&r) {
                for (j, m) in ds {
                    let o = self.order[j];
                    pending.entry(o).or_insert((*j, BigInt::zero())).1 += &v * m;
                }
            }
            sigma.add_term(r, v);
        }
        debug_assert!(sigma.boundary(t) == *z, "bounding chain does not bound");
        Ok(sigma)
    }

    /// A 1-cycle in class `c`.
    pub fn representative_cycle(&self, t: &Triangulation, c: &HomologyClass) -> ChainVector {
        let x = self.group.representative(c);
        let mut edges: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (g, col) in self.gen_col.iter().enumerate() {
            if let Some(col) = col {
                if !x[*col].is_zero() {
                    let e = self.edge_gen.iter().position(|&q| q == Some(g)).unwrap();
                    edges.insert(e, x[*col].clone());
                }
            }
        }
        close_with_tree(t, &self.edge_gen, edges)
    }
}

/// Complete a combination of non-tree edges to a cycle with tree edges.
fn close_with_tree(
    t: &Triangulation,
    edge_gen: &[Option<usize>],
    edges: BTreeMap<usize, BigInt>,
) -> ChainVector {
    let nv = t.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for (i, e) in t.edges().iter().enumerate() {
        if edge_gen[i].is_none() {
            adj[e[0]].push((e[1], i));
            adj[e[1]].push((e[0], i));
        }
    }
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; nv];
    let mut order = Vec::with_capacity(nv);
    let mut seen = vec![false; nv];
    for s in 0..nv {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &(w, e) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((v, e));
                    queue.push_back(w);
                }
            }
        }
    }
    let mut chain = ChainVector::from_terms(1, edges);
    // push the boundary of the non-tree part up the tree, leaves first
    let mut excess: Vec<BigInt> = vec![BigInt::zero(); nv];
    for (v, c) in chain.boundary(t).iter() {
        excess[v] = c.clone();
    }
    for &v in order.iter().rev() {
        if let Some((p, e)) = parent[v] {
            let c = std::mem::take(&mut excess[v]);
            if c.is_zero() {
                continue;
            }
            // an edge p -> v adds +1 at v; cancel the excess at v
            let sign = if t.edges()[e][1] == v {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            chain.add_term(e, -(&c * &sign));
            excess[p] += c;
        }
    }
    chain
}

pub fn homology_h1(t: &Triangulation) -> H1Structure {
    H1Structure::new(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::smith_normal_form;
    use crate::mesh::{boundary_of_4_simplex, lattice};

    fn rank(m: &IntMatrix) -> usize {
        smith_normal_form(m).rank()
    }

    #[test]
    fn sphere_has_trivial_h1() {
        let t = boundary_of_4_simplex();
        let h = H1Structure::new(&t);
        assert!(h.group().is_trivial());
        let l = lattice::sphere_s3(1).unwrap();
        assert!(H1Structure::new(&l.mesh).group().is_trivial());
    }

    #[test]
    fn s2s1_and_t3_ranks() {
        let s = lattice::sphere_times_circle(1, 3).unwrap();
        let h = H1Structure::new(&s.mesh);
        assert_eq!((h.free_rank(), h.torsion().len()), (1, 0));
        let t3 = lattice::torus_t3(3, 3, 3).unwrap();
        let h = H1Structure::new(&t3.mesh);
        assert_eq!((h.free_rank(), h.torsion().len()), (3, 0));
        assert!(h.residual_shape().1 <= 6);
    }

    #[test]
    fn free_rank_matches_rational_rank() {
        let s = lattice::sphere_times_circle(1, 3).unwrap();
        let t = &s.mesh;
        let d1 = t.boundary_matrix(1);
        let d2 = t.boundary_matrix(2);
        let betti = t.edges().len() - rank(&d1) - rank(&d2);
        assert_eq!(H1Structure::new(t).free_rank(), betti);
    }

    fn fiber(s: &lattice::LatticeMesh, m: i64) -> ChainVector {
        let verts: Vec<usize> = (0..m)
            .map(|w| s.points.iter().position(|p| *p == [1, 1, 1, w]).unwrap())
            .collect();
        ChainVector::closed_path(&s.mesh, &verts).unwrap()
    }

    #[test]
    fn fiber_generates_s2s1() {
        let s = lattice::sphere_times_circle(1, 4).unwrap();
        for opts in [H1Options::default(), H1Options { root: 7, salt: 99 }] {
            let h = H1Structure::with_options(&s.mesh, opts);
            let c = h.class_of_cycle(&s.mesh, &fiber(&s, 4)).unwrap();
            assert_eq!(c.free.len(), 1);
            assert!(c.free[0].abs().is_one(), "{c}");
            assert!(matches!(
                h.bounding_chain(&s.mesh, &fiber(&s, 4)),
                Err(HomologyError::NotNullHomologous(_))
            ));
        }
    }

    #[test]
    fn boundaries_are_zero_and_fill() {
        let s = lattice::sphere_times_circle(1, 3).unwrap();
        let t = &s.mesh;
        let h = H1Structure::with_options(t, H1Options { root: 3, salt: 5 });
        let mut sigma = ChainVector::zero(2);
        for f in (0..t.triangles().len()).step_by(7) {
            sigma.add_term(f, (f % 5) as i64 - 2);
        }
        let z = sigma.boundary(t);
        assert!(h.class_of_cycle(t, &z).unwrap().is_zero());
        let filled = h.bounding_chain(t, &z).unwrap();
        assert_eq!(filled.boundary(t), z);
        let zf = fiber(&s, 3);
        assert_eq!(
            h.class_of_cycle(t, &(zf.clone() + z)).unwrap(),
            h.class_of_cycle(t, &zf).unwrap()
        );
    }

    #[test]
    fn not_a_cycle() {
        let t = boundary_of_4_simplex();
        let h = H1Structure::new(&t);
        let e = ChainVector::edge(&t, 0, 1).unwrap();
        assert_eq!(h.class_of_cycle(&t, &e), Err(HomologyError::NotACycle));
    }

    #[test]
    fn equator_of_four_simplex_bounds() {
        let t = boundary_of_4_simplex();
        let h = H1Structure::new(&t);
        let z = ChainVector::closed_path(&t, &[0, 1, 2]).unwrap();
        let sigma = h.bounding_chain(&t, &z).unwrap();
        assert_eq!(sigma.boundary(&t), z);
    }

    #[test]
    fn representatives_round_trip() {
        let t3 = lattice::torus_t3(3, 3, 3).unwrap();
        let h = H1Structure::new(&t3.mesh);
        let c = HomologyClass::from_free(&[2, -1, 5]);
        let z = h.representative_cycle(&t3.mesh, &c);
        assert!(z.is_cycle(&t3.mesh));
        assert_eq!(h.class_of_cycle(&t3.mesh, &z).unwrap(), c);
    }
}
