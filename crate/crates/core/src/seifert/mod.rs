//! Seifert fibered spaces over orientable bases: first homology from the
//! Seifert invariants and a symbolic calculus of non-singular Morse-Smale
//! fields described by their indexed orbit links.

mod calculus;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{bigint, AbelianGroup, HomologyClass, IntMatrix};

pub use calculus::{
    adjust_degree, construct, flip_orientation, initial_lift, orbit_bound, realize_class,
    torus_insertion, wada5, wada5_with, Cable, CminusRecord, MSField, Orbit, OrbitSite, Parentage,
    WadaOptions,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SeifertError {
    #[error("exceptional fiber ({alpha}, {beta}) needs alpha >= 2 and gcd(alpha, beta) = 1")]
    BadFiber { alpha: i64, beta: i64 },
    #[error("orbit {id} has index {index}; the operation needs {wanted}")]
    BadIndex {
        id: usize,
        index: u8,
        wanted: &'static str,
    },
    #[error("a (p, q)-cable needs a null-homologous parent; orbit {id} has class {class}")]
    CableUndefined { id: usize, class: String },
    #[error("cable multiplicity must be positive, got {0}")]
    BadMultiplicity(String),
    #[error("no orbit with id {0}")]
    NoSuchOrbit(usize),
    #[error("handle {handle} does not exist on a genus {genus} base")]
    NoSuchHandle { handle: usize, genus: u32 },
    #[error("class has the wrong shape for this manifold: {0}")]
    WrongGroup(String),
    #[error("the field has no attractor")]
    NoAttractor,
}

/// Base genus `g`, exceptional fibers `(alpha_j, beta_j)` and Euler number `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertData {
    pub genus: u32,
    pub fibers: Vec<(i64, i64)>,
    pub b: i64,
}

impl SeifertData {
    pub fn new(genus: u32, fibers: Vec<(i64, i64)>, b: i64) -> Result<Self, SeifertError> {
        for &(alpha, beta) in &fibers {
            if alpha < 2 || alpha.gcd(&beta) != 1 {
                return Err(SeifertError::BadFiber { alpha, beta });
            }
        }
        Ok(SeifertData { genus, fibers, b })
    }

    pub fn exceptional_count(&self) -> usize {
        self.fibers.len()
    }

    /// Euler characteristic of the base surface.
    pub fn base_euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64
    }
}

/// First homology of a Seifert space with its presentation on
/// `a_1, b_1, .., a_g, b_g, q_1, .., q_n, h`: relations
/// `alpha_j q_j + beta_j h = 0` and `q_1 + .. + q_n = b h`.
#[derive(Clone, Debug)]
pub struct SeifertHomology {
    pub data: SeifertData,
    pub relations: IntMatrix,
    group: AbelianGroup,
}

/// Coefficients of a class over base handle curves, the generic fiber
/// and the exceptional fibers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    /// Per handle: multiplicity and primitive slope `(x, y)` of the curve
    /// `x a_i + y b_i`.
    pub handles: Vec<HandleTerm>,
    #[serde(with = "bigint")]
    pub fiber: BigInt,
    #[serde(with = "crate::algebra::bigvec")]
    pub exceptional: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HandleTerm {
    #[serde(with = "bigint")]
    pub coefficient: BigInt,
    #[serde(with = "crate::algebra::bigvec")]
    pub slope: Vec<BigInt>,
}

impl Decomposition {
    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.handles
            .iter()
            .filter(|h| !h.coefficient.is_zero())
            .count()
            + usize::from(!self.fiber.is_zero())
            + self.exceptional.iter().filter(|c| !c.is_zero()).count()
    }
}

/// `(rho, sigma)` with `alpha sigma - beta rho = 1`.
fn fiber_coefficients(alpha: i64, beta: i64) -> (BigInt, BigInt) {
    let e = BigInt::from(alpha).extended_gcd(&BigInt::from(beta));
    // alpha x + beta y = 1
    let (x, y) = if e.gcd.is_negative() {
        (-e.x, -e.y)
    } else {
        (e.x, e.y)
    };
    (-y, x)
}

impl SeifertHomology {
    pub fn generator_count(&self) -> usize {
        2 * self.data.genus as usize + self.data.fibers.len() + 1
    }

    pub fn generator_names(&self) -> Vec<String> {
        let mut names = Vec::new();
        for i in 1..=self.data.genus {
            names.push(format!("a{i}"));
            names.push(format!("b{i}"));
        }
        for j in 1..=self.data.fibers.len() {
            names.push(format!("q{j}"));
        }
        names.push("h".into());
        names
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn zero(&self) -> HomologyClass {
        self.group.zero()
    }

    pub fn classify(&self, x: &[BigInt]) -> HomologyClass {
        self.group.classify(x)
    }

    fn unit(&self, k: usize) -> Vec<BigInt> {
        let mut x = vec![BigInt::zero(); self.generator_count()];
        x[k] = BigInt::one();
        x
    }

    fn h_index(&self) -> usize {
        self.generator_count() - 1
    }

    fn q_index(&self, j: usize) -> usize {
        2 * self.data.genus as usize + j
    }

    /// Class of the generic fiber, also the reference class `e` of the field
    /// tangent to the fibers.
    pub fn fiber(&self) -> HomologyClass {
        self.classify(&self.unit(self.h_index()))
    }

    /// Class of the `j`-th exceptional fiber, `rho q_j + sigma h`.
    pub fn exceptional_fiber(&self, j: usize) -> HomologyClass {
        let (alpha, beta) = self.data.fibers[j];
        let (rho, sigma) = fiber_coefficients(alpha, beta);
        let mut x = vec![BigInt::zero(); self.generator_count()];
        x[self.q_index(j)] = rho;
        x[self.h_index()] = sigma;
        self.classify(&x)
    }

    /// Class of the lift of the base curve `x a_i + y b_i`.
    pub fn handle_curve(
        &self,
        handle: usize,
        slope: &[BigInt],
    ) -> Result<HomologyClass, SeifertError> {
        if handle >= self.data.genus as usize {
            return Err(SeifertError::NoSuchHandle {
                handle,
                genus: self.data.genus,
            });
        }
        let mut x = vec![BigInt::zero(); self.generator_count()];
        x[2 * handle] = slope[0].clone();
        x[2 * handle + 1] = slope[1].clone();
        Ok(self.classify(&x))
    }

    fn check(&self, c: &HomologyClass) -> Result<(), SeifertError> {
        if c.same_group(&self.zero()) {
            Ok(())
        } else {
            Err(SeifertError::WrongGroup(c.to_string()))
        }
    }

    /// Write `c` as `sum lambda_i [gamma_i] + lambda [F] + sum mu_j [F_j]`
    /// with at most one base curve per handle.
    pub fn decompose(&self, c: &HomologyClass) -> Result<Decomposition, SeifertError> {
        self.check(c)?;
        let x = self.group.representative(c);
        let handles = (0..self.data.genus as usize)
            .map(|i| {
                let (u, v) = (&x[2 * i], &x[2 * i + 1]);
                let d = u.gcd(v);
                if d.is_zero() {
                    HandleTerm {
                        coefficient: d,
                        slope: vec![BigInt::one(), BigInt::zero()],
                    }
                } else {
                    HandleTerm {
                        slope: vec![u / &d, v / &d],
                        coefficient: d,
                    }
                }
            })
            .collect();
        // modulo alpha q + beta h, q = -beta F_j
        let exceptional = (0..self.data.fibers.len())
            .map(|j| -BigInt::from(self.data.fibers[j].1) * &x[self.q_index(j)])
            .collect();
        let dec = Decomposition {
            handles,
            fiber: x[self.h_index()].clone(),
            exceptional,
        };
        debug_assert_eq!(&self.recompose(&dec)?, c);
        Ok(dec)
    }

    pub fn recompose(&self, d: &Decomposition) -> Result<HomologyClass, SeifertError> {
        let mut c = self.fiber().scaled(&d.fiber);
        for (i, term) in d.handles.iter().enumerate() {
            c = c + self.handle_curve(i, &term.slope)?.scaled(&term.coefficient);
        }
        for (j, mu) in d.exceptional.iter().enumerate() {
            c = c + self.exceptional_fiber(j).scaled(mu);
        }
        Ok(c)
    }
}

/// H1 from the abelianized Seifert presentation.
pub fn h1_of_seifert(s: &SeifertData) -> SeifertHomology {
    let g = s.genus as usize;
    let n = s.fibers.len();
    let cols = 2 * g + n + 1;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (j, &(alpha, beta)) in s.fibers.iter().enumerate() {
        let mut r = vec![BigInt::zero(); cols];
        r[2 * g + j] = alpha.into();
        r[cols - 1] = beta.into();
        rows.push(r);
    }
    let mut r = vec![BigInt::zero(); cols];
    for j in 0..n {
        r[2 * g + j] = BigInt::one();
    }
    r[cols - 1] = (-s.b).into();
    rows.push(r);
    let relations = IntMatrix::from_rows(&rows);
    let group = AbelianGroup::from_relations(&relations);
    SeifertHomology {
        data: s.clone(),
        relations,
        group,
    }
}
