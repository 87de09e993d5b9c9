//! Pairwise homotopy decision for maps `M -> S^2` and for trivialized
//! non-singular fields, with a JSON certificate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{bigint, bigopt, maximal_divisor, H1Structure, HomologyClass};
use crate::extraction::{
    generic_coincidence, generic_preimage, Coincidence, ExtractionError, Genericity, BARY_TOL,
    REGULARITY_DELTA,
};
use crate::fields::{SphereField, Vec3};
use crate::linking::{
    class_of_link, euler_class, normalized_linking, reference_cycles_preferring, LinkingError,
    GRAZING_TOL,
};
use crate::mesh::{write_mesh, Triangulation};

pub const CERTIFICATE_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Homotopic,
    NotHomotopic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SufficientVerdict {
    Homotopic,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairKind {
    Maps,
    Fields,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DecideError {
    #[error(transparent)]
    Extraction(#[from] ExtractionError),
    #[error(transparent)]
    Linking(#[from] LinkingError),
}

impl DecideError {
    pub fn is_genericity_exhausted(&self) -> bool {
        matches!(
            self,
            DecideError::Extraction(ExtractionError::GenericityExhausted { .. })
                | DecideError::Linking(LinkingError::Extraction(
                    ExtractionError::GenericityExhausted { .. }
                ))
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Seeds {
    pub seed: u64,
    /// Round of the decision (a new coincidence perturbation each round).
    pub round: u32,
    /// Perturbation attempt inside the round; 0 means `g` was used as given.
    pub coincidence_attempt: u32,
    /// Crossing points were paired by tangent tracing.
    pub traced: bool,
    pub regular_value: Vec3,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub perturbation_eps: f64,
    pub attempts: u32,
    pub regularity_delta: f64,
    pub barycentric: f64,
    pub grazing: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Digests {
    pub mesh: String,
    pub f: String,
    pub g: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomotopyCertificate {
    pub tool: String,
    pub version: u32,
    pub kind: PairKind,
    pub verdict: Verdict,
    pub class_cminus: HomologyClass,
    pub class_cplus: HomologyClass,
    pub components_cplus: usize,
    pub components_cminus: usize,
    pub class_f: HomologyClass,
    pub class_g: HomologyClass,
    #[serde(with = "bigopt")]
    pub linking: Option<BigInt>,
    #[serde(with = "bigint")]
    pub divisor_p: BigInt,
    #[serde(with = "bigint")]
    pub modulus: BigInt,
    /// `linking mod modulus` in `[0, modulus)`, or the linking itself when
    /// the modulus is 0.
    #[serde(with = "bigopt")]
    pub residue: Option<BigInt>,
    /// Residue up to sign: `min(r, modulus - r)`, or `|linking|`.
    #[serde(with = "bigopt")]
    pub residue_unsigned: Option<BigInt>,
    pub euler_x: Option<HomologyClass>,
    pub euler_y: Option<HomologyClass>,
    pub euler_agree: Option<bool>,
    pub seeds: Seeds,
    pub tolerances: Tolerances,
    pub digests: Digests,
}

impl HomotopyCertificate {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DecideOptions {
    pub genericity: Genericity,
}

impl DecideOptions {
    pub fn with_seed(seed: u64) -> Self {
        DecideOptions {
            genericity: Genericity {
                seed,
                ..Genericity::default()
            },
        }
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn mesh_digest(t: &Triangulation) -> String {
    sha256_hex(write_mesh(t).as_bytes())
}

/// Coincidence links with their classes and normalized linking number.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub coincidence: Coincidence,
    pub round: u32,
    pub class_plus: HomologyClass,
    pub class_minus: HomologyClass,
    /// Absent when `[C-] != 0`.
    pub linking: Option<BigInt>,
}

/// Extract `C+` and `C-`, classify them and, when `[C-] = 0`, compute
/// `Enl(C+, C-)`. A grazing intersection starts a new round with a fresh
/// perturbation.
pub fn compare(
    t: &Triangulation,
    h: &H1Structure,
    f: &SphereField,
    g: &SphereField,
    opts: &DecideOptions,
) -> Result<Comparison, DecideError> {
    let gen = opts.genericity;
    let mut last = String::new();
    for round in 0..=gen.attempts {
        let seed = if round == 0 {
            gen.seed
        } else {
            gen.attempt_seed(1000 + round)
        };
        let coincidence = generic_coincidence(t, f, g, &Genericity { seed, ..gen })?;
        let class_plus = class_of_link(t, h, &coincidence.plus)?;
        let class_minus = class_of_link(t, h, &coincidence.minus)?;
        if !class_minus.is_zero() {
            return Ok(Comparison {
                coincidence,
                round,
                class_plus,
                class_minus,
                linking: None,
            });
        }
        let linking =
            reference_cycles_preferring(t, h, gen.seed, &coincidence.plus).and_then(|refs| {
                normalized_linking(t, h, &coincidence.minus, &coincidence.plus, &refs)
            });
        match linking {
            Ok(l) => {
                return Ok(Comparison {
                    coincidence,
                    round,
                    class_plus,
                    class_minus,
                    linking: Some(l),
                })
            }
            Err(e @ LinkingError::GrazingIntersection { .. }) => last = e.to_string(),
            Err(e) => return Err(e.into()),
        }
    }
    Err(ExtractionError::GenericityExhausted {
        attempts: gen.attempts,
        last,
    }
    .into())
}

fn residues(linking: &BigInt, modulus: &BigInt) -> (BigInt, BigInt) {
    if modulus.is_zero() {
        (linking.clone(), linking.abs())
    } else {
        let r = linking.mod_floor(modulus);
        let s = (modulus - &r).min(r.clone());
        (r, s)
    }
}

#[allow(clippy::too_many_arguments)]
fn certificate(
    kind: PairKind,
    t: &Triangulation,
    f: &SphereField,
    g: &SphereField,
    opts: &DecideOptions,
    cmp: &Comparison,
    class_f: HomologyClass,
    class_g: HomologyClass,
    y: Vec3,
    divisor_p: BigInt,
    modulus: BigInt,
) -> HomotopyCertificate {
    let (residue, residue_unsigned) = match &cmp.linking {
        Some(l) => {
            let (r, s) = residues(l, &modulus);
            (Some(r), Some(s))
        }
        None => (None, None),
    };
    let verdict = if cmp.class_minus.is_zero() && residue.as_ref().is_some_and(Zero::is_zero) {
        Verdict::Homotopic
    } else {
        Verdict::NotHomotopic
    };
    let gen = opts.genericity;
    HomotopyCertificate {
        tool: format!("hopfian {}", env!("CARGO_PKG_VERSION")),
        version: CERTIFICATE_VERSION,
        kind,
        verdict,
        class_cminus: cmp.class_minus.clone(),
        class_cplus: cmp.class_plus.clone(),
        components_cplus: cmp.coincidence.plus.component_count(),
        components_cminus: cmp.coincidence.minus.component_count(),
        class_f,
        class_g,
        linking: cmp.linking.clone(),
        divisor_p,
        modulus,
        residue,
        residue_unsigned,
        euler_x: None,
        euler_y: None,
        euler_agree: None,
        seeds: Seeds {
            seed: gen.seed,
            round: cmp.round,
            coincidence_attempt: cmp.coincidence.attempt,
            traced: cmp.coincidence.traced,
            regular_value: y,
        },
        tolerances: Tolerances {
            perturbation_eps: gen.eps,
            attempts: gen.attempts,
            regularity_delta: REGULARITY_DELTA,
            barycentric: BARY_TOL,
            grazing: GRAZING_TOL,
        },
        digests: Digests {
            mesh: mesh_digest(t),
            f: f.digest(),
            g: g.digest(),
        },
    }
}

/// Characteristic class of `f` from a seeded regular value.
pub fn characteristic_class(
    t: &Triangulation,
    h: &H1Structure,
    f: &SphereField,
    gen: &Genericity,
) -> Result<(Vec3, HomologyClass), DecideError> {
    let (y, link) = generic_preimage(t, f, gen)?;
    Ok((y, class_of_link(t, h, &link)?))
}

/// Decide whether the maps `f, g: M -> S^2` are homotopic.
pub fn decide_maps(
    t: &Triangulation,
    h: &H1Structure,
    f: &SphereField,
    g: &SphereField,
    opts: &DecideOptions,
) -> Result<HomotopyCertificate, DecideError> {
    let (y, class_f) = characteristic_class(t, h, f, &opts.genericity)?;
    let (_, class_g) = characteristic_class(t, h, g, &opts.genericity)?;
    let p = maximal_divisor(&class_f);
    let modulus = &p * 2;
    let cmp = compare(t, h, f, g, opts)?;
    Ok(certificate(
        PairKind::Maps,
        t,
        f,
        g,
        opts,
        &cmp,
        class_f,
        class_g,
        y,
        p,
        modulus,
    ))
}

/// Decide whether the trivialized non-singular fields `x, y` are homotopic
/// through non-singular fields. The modulus is the maximal divisor of the
/// Euler class of `x`.
pub fn decide_fields(
    t: &Triangulation,
    h: &H1Structure,
    x: &SphereField,
    y: &SphereField,
    opts: &DecideOptions,
) -> Result<HomotopyCertificate, DecideError> {
    let ex = euler_class(t, h, x, &opts.genericity)?;
    let ey = euler_class(t, h, y, &opts.genericity)?;
    let modulus = maximal_divisor(&ex.euler);
    let cmp = compare(t, h, x, y, opts)?;
    let p = maximal_divisor(&ex.characteristic);
    let mut cert = certificate(
        PairKind::Fields,
        t,
        x,
        y,
        opts,
        &cmp,
        ex.characteristic.clone(),
        ey.characteristic.clone(),
        ex.y,
        p,
        modulus,
    );
    if cmp.class_minus.is_zero() {
        let agree = ex.euler == ey.euler;
        cert.euler_agree = Some(agree);
        if !agree {
            cert.verdict = Verdict::NotHomotopic;
        }
    }
    cert.euler_x = Some(ex.euler);
    cert.euler_y = Some(ey.euler);
    Ok(cert)
}

/// One-sided test: homotopic when `[C-] = 0` and `Enl(C+, C-) = 0` in `Z`.
pub fn sufficient_check(
    t: &Triangulation,
    h: &H1Structure,
    f: &SphereField,
    g: &SphereField,
    opts: &DecideOptions,
) -> Result<SufficientVerdict, DecideError> {
    let cmp = compare(t, h, f, g, opts)?;
    Ok(
        if cmp.class_minus.is_zero() && cmp.linking.as_ref().is_some_and(Zero::is_zero) {
            SufficientVerdict::Homotopic
        } else {
            SufficientVerdict::Inconclusive
        },
    )
}

#[cfg(test)]
mod tests;
