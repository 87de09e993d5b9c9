use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{h1_of_seifert, SeifertData, SeifertError, SeifertHomology};
use crate::algebra::{bigint, maximal_divisor, HomologyClass};

/// How a child orbit winds around its parent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cable {
    /// `n` parallel strands.
    Parallel {
        #[serde(with = "bigint")]
        n: BigInt,
    },
    /// `(p, q)`-cable of a null-homologous parent.
    Torus {
        #[serde(with = "bigint")]
        p: BigInt,
        #[serde(with = "bigint")]
        q: BigInt,
    },
    /// Push-off with framing `q`, a `(1, q)`-cable measured against the
    /// previous push-off.
    Framed {
        #[serde(with = "bigint")]
        q: BigInt,
    },
}

impl Cable {
    pub fn parallel(n: impl Into<BigInt>) -> Self {
        Cable::Parallel { n: n.into() }
    }

    fn strands(&self) -> BigInt {
        match self {
            Cable::Parallel { n } => n.clone(),
            Cable::Torus { p, .. } => p.clone(),
            Cable::Framed { .. } => BigInt::one(),
        }
    }
}

/// Where an orbit comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitSite {
    /// Fiber over a sink of the base field, at an exceptional point or not.
    Sink {
        exceptional: Option<usize>,
    },
    Source,
    Saddle,
    /// Orbits over the invariant torus above a periodic base orbit.
    TorusAttractor {
        handle: usize,
    },
    TorusSaddle {
        handle: usize,
    },
    /// Produced by a Wada operation: role 1 is the core, 2 the saddle cable
    /// and 3 the other cable.
    Wada {
        role: u8,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parentage {
    pub parent: usize,
    pub cable: Cable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub id: usize,
    /// 0 repeller, 1 saddle, 2 attractor.
    pub index: u8,
    /// Class of the orbit with its flow orientation.
    pub homology: HomologyClass,
    pub sign: i8,
    pub site: OrbitSite,
    pub ancestry: Vec<Parentage>,
}

/// The anti-coincidence link between a field and its modification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CminusRecord {
    pub operation: String,
    pub orbits: Vec<usize>,
    pub class: HomologyClass,
}

/// A non-singular Morse-Smale field known through its orbit link, its
/// characteristic class and its degree relative to the initial lift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MSField {
    pub seifert: SeifertData,
    pub orbits: Vec<Orbit>,
    pub class: HomologyClass,
    #[serde(with = "bigint")]
    pub degree: BigInt,
    /// Attractors realizing a class in [`realize_class`].
    pub realized: Vec<usize>,
    pub records: Vec<CminusRecord>,
    next_id: usize,
}

impl MSField {
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn orbit(&self, id: usize) -> Result<&Orbit, SeifertError> {
        self.orbits
            .iter()
            .find(|o| o.id == id)
            .ok_or(SeifertError::NoSuchOrbit(id))
    }

    /// Number of orbits of index 0, 1 and 2.
    pub fn index_counts(&self) -> [usize; 3] {
        let mut c = [0; 3];
        for o in &self.orbits {
            c[o.index as usize] += 1;
        }
        c
    }

    pub fn attractors(&self) -> impl Iterator<Item = &Orbit> {
        self.orbits.iter().filter(|o| o.index == 2)
    }

    /// Total class of the realized attractor sub-link.
    pub fn realized_class(&self) -> HomologyClass {
        let h = h1_of_seifert(&self.seifert);
        self.realized
            .iter()
            .filter_map(|id| self.orbit(*id).ok())
            .fold(h.zero(), |acc, o| acc + o.homology.clone())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("field serializes");
        s.push('\n');
        s
    }

    fn push(
        &mut self,
        index: u8,
        homology: HomologyClass,
        sign: i8,
        site: OrbitSite,
        ancestry: Vec<Parentage>,
    ) -> usize {
        let id = self.next_id;
        self.next_id += 1;
        self.orbits.push(Orbit {
            id,
            index,
            homology,
            sign,
            site,
            ancestry,
        });
        id
    }

    fn take(&mut self, id: usize) -> Result<Orbit, SeifertError> {
        let pos = self
            .orbits
            .iter()
            .position(|o| o.id == id)
            .ok_or(SeifertError::NoSuchOrbit(id))?;
        Ok(self.orbits.remove(pos))
    }
}

/// Orbit-count bound `n(M)` reached by [`construct`]: the initial lift,
/// two orbits per torus insertion (at most `g + 1`), two per Wada operation
/// in the realization (at most `g + n + 1`) and six for the degree.
pub fn orbit_bound(s: &SeifertData) -> usize {
    let g = s.genus as usize;
    let n = s.fibers.len();
    initial_count(s) + 2 * (g + 1) + 2 * (g + n + 1) + 6
}

fn initial_count(s: &SeifertData) -> usize {
    let n = s.fibers.len();
    (n + 1) + 1 + (n + 2 * s.genus as usize)
}

/// Lift of a Morse-Smale base field with a sink at every exceptional point,
/// one more sink, one source and the saddles forced by the Euler
/// characteristic.
pub fn initial_lift(s: &SeifertData) -> MSField {
    let h = h1_of_seifert(s);
    let e = h.fiber();
    let mut m = MSField {
        seifert: s.clone(),
        orbits: Vec::new(),
        class: e.clone(),
        degree: BigInt::zero(),
        realized: Vec::new(),
        records: Vec::new(),
        next_id: 0,
    };
    for j in 0..s.fibers.len() {
        m.push(
            2,
            h.exceptional_fiber(j),
            1,
            OrbitSite::Sink {
                exceptional: Some(j),
            },
            Vec::new(),
        );
    }
    m.push(
        2,
        e.clone(),
        1,
        OrbitSite::Sink { exceptional: None },
        Vec::new(),
    );
    m.push(0, e.clone(), 1, OrbitSite::Source, Vec::new());
    let saddles = s.fibers.len() as i64 + 2 - s.base_euler_characteristic();
    for _ in 0..saddles {
        m.push(1, e.clone(), 1, OrbitSite::Saddle, Vec::new());
    }
    m
}

/// Options of a Wada operation beyond the cable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WadaOptions {
    /// Index of the third orbit; the core keeps the parent's index.
    pub k3_index: Option<u8>,
    /// Run the third orbit against the parent's direction.
    pub reverse_k3: bool,
}

/// Wada's fifth operation on an attractor or repeller: the orbit is replaced
/// by a core `K1` and two parallel cables `K2` (saddle) and `K3`.
pub fn wada5(m: &MSField, id: usize, cable: Cable) -> Result<MSField, SeifertError> {
    wada5_with(
        m,
        id,
        cable,
        WadaOptions {
            k3_index: None,
            reverse_k3: false,
        },
    )
    .map(|(m, _)| m)
}

/// [`wada5`] returning the ids of `K1, K2, K3`.
pub fn wada5_with(
    m: &MSField,
    id: usize,
    cable: Cable,
    opts: WadaOptions,
) -> Result<(MSField, [usize; 3]), SeifertError> {
    let parent = m.orbit(id)?;
    if parent.index == 1 {
        return Err(SeifertError::BadIndex {
            id,
            index: 1,
            wanted: "0 or 2",
        });
    }
    let strands = cable.strands();
    if !strands.is_positive() {
        return Err(SeifertError::BadMultiplicity(strands.to_string()));
    }
    if matches!(cable, Cable::Torus { .. }) && !parent.homology.is_zero() {
        return Err(SeifertError::CableUndefined {
            id,
            class: parent.homology.to_string(),
        });
    }
    let k3_index = opts.k3_index.unwrap_or(parent.index);
    if k3_index == 1 {
        return Err(SeifertError::BadIndex {
            id,
            index: 1,
            wanted: "0 or 2 for the third orbit",
        });
    }
    let mut out = m.clone();
    let parent = out.take(id)?;
    let mut ancestry = parent.ancestry.clone();
    ancestry.push(Parentage {
        parent: id,
        cable: cable.clone(),
    });
    let cable_class = parent.homology.scaled(&strands);
    let (k3_class, k3_sign) = if opts.reverse_k3 {
        (-cable_class.clone(), -parent.sign)
    } else {
        (cable_class.clone(), parent.sign)
    };
    let k1 = out.push(
        parent.index,
        parent.homology.clone(),
        parent.sign,
        OrbitSite::Wada { role: 1 },
        ancestry.clone(),
    );
    let k2 = out.push(
        1,
        cable_class,
        parent.sign,
        OrbitSite::Wada { role: 2 },
        ancestry.clone(),
    );
    let k3 = out.push(
        k3_index,
        k3_class,
        k3_sign,
        OrbitSite::Wada { role: 3 },
        ancestry,
    );
    for r in out.realized.iter_mut() {
        if *r == id {
            *r = k1;
        }
    }
    Ok((out, [k1, k2, k3]))
}

/// Reverse an attractor: the class of the field drops by the class of the
/// orbit, which becomes the anti-coincidence link.
pub fn flip_orientation(m: &MSField, id: usize) -> Result<MSField, SeifertError> {
    let o = m.orbit(id)?;
    if o.index != 2 {
        return Err(SeifertError::BadIndex {
            id,
            index: o.index,
            wanted: "2",
        });
    }
    let gamma = o.homology.clone();
    let mut out = m.clone();
    let o = out.orbits.iter_mut().find(|o| o.id == id).unwrap();
    o.sign = -o.sign;
    o.homology = -gamma.clone();
    out.class = out.class.clone() - gamma.clone();
    out.records.push(CminusRecord {
        operation: format!("flip {id}"),
        orbits: vec![id],
        class: gamma,
    });
    Ok(out)
}

/// Attractor and saddle over the invariant torus above the periodic base
/// orbit `x a_i + y b_i`.
pub fn torus_insertion(
    m: &MSField,
    handle: usize,
    slope: [i64; 2],
) -> Result<MSField, SeifertError> {
    torus_insertion_big(m, handle, &[slope[0].into(), slope[1].into()]).map(|(m, _)| m)
}

fn torus_insertion_big(
    m: &MSField,
    handle: usize,
    slope: &[BigInt],
) -> Result<(MSField, usize), SeifertError> {
    let h = h1_of_seifert(&m.seifert);
    let class = h.handle_curve(handle, slope)?;
    let mut out = m.clone();
    let a = out.push(
        2,
        class.clone(),
        1,
        OrbitSite::TorusAttractor { handle },
        Vec::new(),
    );
    out.push(1, class, 1, OrbitSite::TorusSaddle { handle }, Vec::new());
    Ok((out, a))
}

fn sink_for(m: &MSField, exceptional: Option<usize>) -> usize {
    m.orbits
        .iter()
        .find(|o| o.site == OrbitSite::Sink { exceptional })
        .map(|o| o.id)
        .expect("initial lift has the sink")
}

fn cable_onto(m: MSField, id: usize, coefficient: &BigInt) -> Result<MSField, SeifertError> {
    let opts = WadaOptions {
        k3_index: Some(2),
        reverse_k3: coefficient.is_negative(),
    };
    let (mut out, [_, _, k3]) = wada5_with(
        &m,
        id,
        Cable::Parallel {
            n: coefficient.abs(),
        },
        opts,
    )?;
    out.realized.push(k3);
    Ok(out)
}

/// A field whose realized attractor link has class `c`.
pub fn realize_class(s: &SeifertData, c: &HomologyClass) -> Result<MSField, SeifertError> {
    let h = h1_of_seifert(s);
    realize_with(&h, c)
}

fn realize_with(h: &SeifertHomology, c: &HomologyClass) -> Result<MSField, SeifertError> {
    let dec = h.decompose(c)?;
    let mut m = initial_lift(&h.data);
    for (i, term) in dec.handles.iter().enumerate() {
        if term.coefficient.is_zero() {
            continue;
        }
        let (next, a) = torus_insertion_big(&m, i, &term.slope)?;
        m = cable_onto(next, a, &term.coefficient)?;
    }
    for (j, mu) in dec.exceptional.iter().enumerate() {
        if !mu.is_zero() {
            let id = sink_for(&m, Some(j));
            m = cable_onto(m, id, mu)?;
        }
    }
    if !dec.fiber.is_zero() {
        let id = sink_for(&m, None);
        m = cable_onto(m, id, &dec.fiber)?;
    }
    debug_assert_eq!(&m.realized_class(), c);
    Ok(m)
}

/// Raise the relative degree by `lambda` without changing the class.
pub fn adjust_degree(m: &MSField, lambda: &BigInt) -> Result<MSField, SeifertError> {
    let a = m
        .attractors()
        .map(|o| o.id)
        .min()
        .ok_or(SeifertError::NoAttractor)?;
    let keep = WadaOptions {
        k3_index: Some(2),
        reverse_k3: false,
    };
    let (m1, [core, _, _]) = wada5_with(m, a, Cable::parallel(1), keep)?;
    let (m2, [core, _, gamma0]) = wada5_with(&m1, core, Cable::Framed { q: BigInt::zero() }, keep)?;
    let reverse = WadaOptions {
        k3_index: Some(2),
        reverse_k3: true,
    };
    let (m3, [_, _, gamma1]) = wada5_with(&m2, core, Cable::Framed { q: lambda.clone() }, reverse)?;
    let mut out = flip_orientation(&flip_orientation(&m3, gamma0)?, gamma1)?;
    out.records.truncate(m.records.len());
    let class = m3.orbit(gamma0)?.homology.clone() + m3.orbit(gamma1)?.homology.clone();
    out.records.push(CminusRecord {
        operation: format!("degree {lambda}"),
        orbits: vec![gamma0, gamma1],
        class,
    });
    out.degree += lambda;
    Ok(out)
}

/// A field of class `target_c` and relative degree `target_d` (reduced
/// modulo `2p`, `p` the maximal divisor of `target_c`).
pub fn construct(
    s: &SeifertData,
    target_c: &HomologyClass,
    target_d: &BigInt,
) -> Result<MSField, SeifertError> {
    let h = h1_of_seifert(s);
    h.decompose(target_c)?;
    let p = maximal_divisor(target_c);
    let d = if p.is_zero() {
        target_d.clone()
    } else {
        target_d.mod_floor(&(p * 2))
    };
    let mut m = realize_with(&h, &(h.fiber() - target_c.clone()))?;
    for id in m.realized.clone() {
        m = flip_orientation(&m, id)?;
    }
    if !d.is_zero() {
        m = adjust_degree(&m, &d)?;
    }
    debug_assert_eq!(&m.class, target_c);
    Ok(m)
}
