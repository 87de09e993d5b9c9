use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use super::{triangle_boundary, Triangulation};

/// Sparse integer chain on the oriented simplices of one dimension.
///
/// Edges and triangles are oriented by their sorted vertex tuples, tets by
/// the stored (coherently oriented) tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainVector {
    dim: usize,
    coeffs: BTreeMap<usize, BigInt>,
}

impl ChainVector {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= 3, "chain dimension must be 0..=3");
        ChainVector {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (usize, BigInt)>) -> Self {
        let mut c = ChainVector::zero(dim);
        for (i, v) in terms {
            c.add_term(i, v);
        }
        c
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize) -> BigInt {
        self.coeffs.get(&i).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, i: usize, v: impl Into<BigInt>) {
        let v = v.into();
        if v.is_zero() {
            return;
        }
        let e = self.coeffs.entry(i).or_default();
        *e += v;
        if e.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().map(|(&i, v)| (i, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of simplices with a nonzero coefficient.
    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return ChainVector::zero(self.dim);
        }
        ChainVector {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|(&i, v)| (i, v * k)).collect(),
        }
    }

    pub fn boundary(&self, t: &Triangulation) -> ChainVector {
        assert!(self.dim >= 1, "boundary of a 0-chain");
        let mut out = ChainVector::zero(self.dim - 1);
        for (&i, v) in &self.coeffs {
            match self.dim {
                1 => {
                    let [a, b] = t.edges()[i];
                    out.add_term(b, v.clone());
                    out.add_term(a, -v);
                }
                2 => {
                    for (e, s) in triangle_boundary(&t.triangles()[i]) {
                        let id = t.edge_id(e[0], e[1]).expect("triangle edge");
                        out.add_term(id, v * s);
                    }
                }
                _ => {
                    for k in 0..4 {
                        out.add_term(t.tet_triangle(i, k), v * t.boundary_sign(i, k));
                    }
                }
            }
        }
        out
    }

    pub fn is_cycle(&self, t: &Triangulation) -> bool {
        self.dim == 0 || self.boundary(t).is_zero()
    }

    /// Oriented edge `a -> b` as a 1-chain.
    pub fn edge(t: &Triangulation, a: usize, b: usize) -> Option<ChainVector> {
        let id = t.edge_id(a, b)?;
        let s = if a < b { 1 } else { -1 };
        Some(ChainVector::from_terms(1, [(id, BigInt::from(s))]))
    }

    /// 1-chain of a closed vertex path (last vertex joined back to the first).
    pub fn closed_path(t: &Triangulation, verts: &[usize]) -> Option<ChainVector> {
        let mut c = ChainVector::zero(1);
        for k in 0..verts.len() {
            let (a, b) = (verts[k], verts[(k + 1) % verts.len()]);
            c = c + ChainVector::edge(t, a, b)?;
        }
        Some(c)
    }
}

impl Add for ChainVector {
    type Output = ChainVector;
    fn add(mut self, rhs: ChainVector) -> ChainVector {
        assert_eq!(self.dim, rhs.dim, "adding chains of different dimension");
        for (i, v) in rhs.coeffs {
            self.add_term(i, v);
        }
        self
    }
}

impl Neg for ChainVector {
    type Output = ChainVector;
    fn neg(self) -> ChainVector {
        ChainVector {
            dim: self.dim,
            coeffs: self.coeffs.into_iter().map(|(i, v)| (i, -v)).collect(),
        }
    }
}

impl Sub for ChainVector {
    type Output = ChainVector;
    fn sub(self, rhs: ChainVector) -> ChainVector {
        self + (-rhs)
    }
}
