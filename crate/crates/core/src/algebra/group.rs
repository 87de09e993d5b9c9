//! Finitely generated abelian groups given by presentations, and their
//! elements in Smith coordinates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::snf::{smith_normal_form, SmithDecomposition};

/// Element of `Z^r (+) Z_{t1} (+) ... (+) Z_{tk}`.
///
/// Torsion residues are always reduced into `[0, t_i)`, so equality is a
/// plain comparison of components.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyClass {
    #[serde(with = "bigvec")]
    pub free: Vec<BigInt>,
    #[serde(with = "bigvec")]
    pub tors: Vec<BigInt>,
    #[serde(with = "bigvec")]
    pub moduli: Vec<BigInt>,
}

impl HomologyClass {
    pub fn zero(free_rank: usize, moduli: &[BigInt]) -> Self {
        HomologyClass {
            free: vec![BigInt::zero(); free_rank],
            tors: vec![BigInt::zero(); moduli.len()],
            moduli: moduli.to_vec(),
        }
    }

    pub fn new(free: Vec<BigInt>, tors: Vec<BigInt>, moduli: Vec<BigInt>) -> Self {
        assert_eq!(tors.len(), moduli.len());
        let tors = tors
            .iter()
            .zip(&moduli)
            .map(|(r, m)| r.mod_floor(m))
            .collect();
        HomologyClass { free, tors, moduli }
    }

    pub fn from_free(free: &[i64]) -> Self {
        HomologyClass {
            free: free.iter().map(|&v| v.into()).collect(),
            tors: vec![],
            moduli: vec![],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.tors.iter().all(Zero::is_zero)
    }

    /// Zero free part (the class has finite order).
    pub fn is_torsion(&self) -> bool {
        self.free.iter().all(Zero::is_zero)
    }

    pub fn same_group(&self, other: &HomologyClass) -> bool {
        self.free.len() == other.free.len() && self.moduli == other.moduli
    }

    /// Equal up to one global sign.
    pub fn eq_up_to_sign(&self, other: &HomologyClass) -> bool {
        self == other || *self == -other.clone()
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        HomologyClass::new(
            self.free.iter().map(|v| v * k).collect(),
            self.tors.iter().map(|v| v * k).collect(),
            self.moduli.clone(),
        )
    }
}

/// Largest `p` with `c = p * g` for a free class `g`: the gcd of the free
/// coordinates, zero when the class is torsion.
pub fn maximal_divisor(c: &HomologyClass) -> BigInt {
    c.free.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

impl Add for HomologyClass {
    type Output = HomologyClass;
    fn add(self, rhs: HomologyClass) -> HomologyClass {
        assert!(self.same_group(&rhs), "classes from different groups");
        HomologyClass::new(
            self.free
                .iter()
                .zip(&rhs.free)
                .map(|(a, b)| a + b)
                .collect(),
            self.tors
                .iter()
                .zip(&rhs.tors)
                .map(|(a, b)| a + b)
                .collect(),
            self.moduli,
        )
    }
}

impl Neg for HomologyClass {
    type Output = HomologyClass;
    fn neg(self) -> HomologyClass {
        HomologyClass::new(
            self.free.iter().map(|a| -a).collect(),
            self.tors.iter().map(|a| -a).collect(),
            self.moduli,
        )
    }
}

impl Sub for HomologyClass {
    type Output = HomologyClass;
    fn sub(self, rhs: HomologyClass) -> HomologyClass {
        self + (-rhs)
    }
}

impl Mul<i64> for &HomologyClass {
    type Output = HomologyClass;
    fn mul(self, k: i64) -> HomologyClass {
        self.scaled(&BigInt::from(k))
    }
}

impl fmt::Debug for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free: Vec<String> = self.free.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", free.join(", "))?;
        if !self.tors.is_empty() {
            let t: Vec<String> = self
                .tors
                .iter()
                .zip(&self.moduli)
                .map(|(r, m)| format!("{r} mod {m}"))
                .collect();
            write!(f, " [{}]", t.join(", "))?;
        }
        Ok(())
    }
}

/// Abelian group `Z^g / rowspace(R)` for an integer relation matrix `R`.
#[derive(Clone, Debug)]
pub struct AbelianGroup {
    generators: usize,
    snf: SmithDecomposition,
    /// Smith coordinate index and modulus for every torsion factor.
    torsion_idx: Vec<(usize, BigInt)>,
    free_idx: Vec<usize>,
}

impl AbelianGroup {
    /// `relations` has one row per relation and one column per generator.
    pub fn from_relations(relations: &IntMatrix) -> Self {
        let g = relations.cols();
        let snf = smith_normal_form(relations);
        let diag = snf.diagonal();
        let mut torsion_idx = Vec::new();
        let mut free_idx = Vec::new();
        for i in 0..g {
            let d = diag.get(i).cloned().unwrap_or_default();
            if d.is_zero() {
                free_idx.push(i);
            } else if !d.is_one() {
                torsion_idx.push((i, d));
            }
        }
        AbelianGroup {
            generators: g,
            snf,
            torsion_idx,
            free_idx,
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn free_rank(&self) -> usize {
        self.free_idx.len()
    }

    /// Invariant factors greater than one, as a divisibility chain.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.torsion_idx.iter().map(|(_, d)| d.clone()).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_idx.is_empty() && self.torsion_idx.is_empty()
    }

    pub fn zero(&self) -> HomologyClass {
        HomologyClass::zero(self.free_rank(), &self.torsion())
    }

    /// Class of the generator combination `x` (length = generator count).
    pub fn classify(&self, x: &[BigInt]) -> HomologyClass {
        assert_eq!(
            x.len(),
            self.generators,
            "coordinate vector has wrong length"
        );
        let y = self.snf.v.vec_mul(x);
        HomologyClass::new(
            self.free_idx.iter().map(|&i| y[i].clone()).collect(),
            self.torsion_idx
                .iter()
                .map(|(i, _)| y[*i].clone())
                .collect(),
            self.torsion(),
        )
    }

    /// A generator combination representing `c`.
    pub fn representative(&self, c: &HomologyClass) -> Vec<BigInt> {
        let mut y = vec![BigInt::zero(); self.generators];
        for (k, &i) in self.free_idx.iter().enumerate() {
            y[i] = c.free[k].clone();
        }
        for (k, (i, _)) in self.torsion_idx.iter().enumerate() {
            y[*i] = c.tors[k].clone();
        }
        // V is unimodular; x = y * V^{-1}
        let vinv = unimodular_inverse(&self.snf.v);
        vinv.vec_mul(&y)
    }

    /// Smith invariants of the presentation, as `Z^r (+) Z_t...` text.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if self.free_rank() > 0 {
            parts.push(if self.free_rank() == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank())
            });
        }
        for t in self.torsion() {
            parts.push(format!("Z_{t}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(v: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(v);
    debug_assert!(
        s.diagonal().iter().all(|d| d.is_one()),
        "matrix is not unimodular"
    );
    // u v w = I  =>  v^{-1} = w u
    s.v.mul(&s.u)
}

pub(crate) fn big_to_json(v: &BigInt) -> serde_json::Value {
    match i64::try_from(v) {
        Ok(x) => serde_json::Value::from(x),
        Err(_) => serde_json::Value::String(v.to_string()),
    }
}

/// Serialize big integers as JSON numbers when they fit in i64, strings otherwise.
pub(crate) mod bigvec {
    use num_bigint::BigInt;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let vals: Vec<serde_json::Value> = v.iter().map(super::big_to_json).collect();
        vals.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let vals = Vec::<serde_json::Value>::deserialize(d)?;
        vals.into_iter()
            .map(|v| match v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| D::Error::custom("non-integer number")),
                serde_json::Value::String(s) => s.parse().map_err(D::Error::custom),
                _ => Err(D::Error::custom("expected integer")),
            })
            .collect()
    }
}

pub(crate) mod bigint {
    use num_bigint::BigInt;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        super::big_to_json(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| D::Error::custom("non-integer")),
            serde_json::Value::String(s) => s.parse().map_err(D::Error::custom),
            _ => Err(D::Error::custom("expected integer")),
        }
    }
}

pub(crate) mod bigopt {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(super::big_to_json).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "super::bigint")] BigInt);
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}
