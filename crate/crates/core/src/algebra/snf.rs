//! Smith normal form over the integers and exact integer linear solving.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `u * a * v == d` with `u`, `v` unimodular and `d` diagonal with a
/// divisibility chain `d[0] | d[1] | ...` of non-negative entries.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `d[i][i]` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("no integer solution")]
    NoSolution,
    #[error("shape mismatch: matrix has {rows} rows, right-hand side has {len} entries")]
    Shape { rows: usize, len: usize },
}

fn min_nonzero(a: &IntMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in from..a.rows() {
        for j in from..a.cols() {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            let m = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| m < *b) {
                best = Some((i, j, m));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Smith normal form with smallest-magnitude pivoting.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = a.shape();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_nonzero(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;

            // clear column t
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = &d[(i, t)] / &d[(t, t)];
                let nq = -q;
                d.add_row_multiple(i, t, &nq);
                u.add_row_multiple(i, t, &nq);
                if !d[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            // clear row t
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = &d[(t, j)] / &d[(t, t)];
                let nq = -q;
                d.add_col_multiple(j, t, &nq);
                v.add_col_multiple(j, t, &nq);
                if !d[(t, j)].is_zero() {
                    dirty = true;
                }
            }

            if dirty {
                // a strictly smaller remainder survived; bring it to the pivot
                let mut best = (t, t);
                let mut bv = d[(t, t)].abs();
                for i in t + 1..m {
                    let x = d[(i, t)].abs();
                    if !x.is_zero() && x < bv {
                        bv = x;
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    let x = d[(t, j)].abs();
                    if !x.is_zero() && x < bv {
                        bv = x;
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    d.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                } else if best.1 != t {
                    d.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                }
                continue;
            }

            // divisibility: every remaining entry must be a multiple of the pivot
            let p = d[(t, t)].clone();
            let mut offender = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !(&d[(i, j)] % &p).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    SmithDecomposition { d, u, v }
}

/// Exact integer solution of `a * x = b`, or `NoSolution`.
///
/// Free directions of the kernel are set to zero, so the zero right-hand
/// side always yields the zero vector.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Vec<BigInt>, SolveError> {
    if a.rows() != b.len() {
        return Err(SolveError::Shape {
            rows: a.rows(),
            len: b.len(),
        });
    }
    let snf = smith_normal_form(a);
    solve_with(&snf, b)
}

/// Solve using a precomputed decomposition of the coefficient matrix.
pub fn solve_with(snf: &SmithDecomposition, b: &[BigInt]) -> Result<Vec<BigInt>, SolveError> {
    let (m, n) = snf.d.shape();
    if m != b.len() {
        return Err(SolveError::Shape {
            rows: m,
            len: b.len(),
        });
    }
    let ub = snf.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); n];
    for (i, ubi) in ub.iter().enumerate() {
        let di = if i < n {
            snf.d[(i, i)].clone()
        } else {
            BigInt::zero()
        };
        if di.is_zero() {
            if !ubi.is_zero() {
                return Err(SolveError::NoSolution);
            }
            continue;
        }
        if !(ubi % &di).is_zero() {
            return Err(SolveError::NoSolution);
        }
        y[i] = ubi / &di;
    }
    Ok(snf.v.mul_vec(&y))
}
