use num_bigint::BigInt;

use super::*;
use crate::algebra::H1Options;
use crate::extraction::{generic_coincidence, Genericity};
use crate::fields::{builtin, normalize, Builtin, BuiltinConfig};
use crate::mesh::boundary_of_4_simplex;

fn cfg(refine: u32) -> BuiltinConfig {
    BuiltinConfig {
        refine,
        eps: 0.35,
        max_tets: 1_000_000,
    }
}

fn abs(x: &BigInt) -> BigInt {
    if x.sign() == num_bigint::Sign::Minus {
        -x.clone()
    } else {
        x.clone()
    }
}

#[test]
fn hopf_fibres_link_once() {
    let (model, f) = builtin(&Builtin::S3Hopf, &cfg(1)).unwrap();
    let t = model.mesh();
    let h = H1Structure::new(t);
    let y = normalize([0.3137, -0.2291, 0.9011]);
    let k = preimage_link(t, &f, y).unwrap();
    let l = preimage_link(t, &f, [-y[0], -y[1], -y[2]]).unwrap();
    let kl = linking_number(t, &h, &k, &l).unwrap();
    let lk = linking_number(t, &h, &l, &k).unwrap();
    assert_eq!(abs(&kl), BigInt::from(1));
    assert_eq!(kl, lk);
    assert_eq!(linking_number(t, &h, &k.reversed(), &l).unwrap(), -kl);
}

#[test]
fn hopf_linking_independent_of_chain_choice() {
    let (model, f) = builtin(&Builtin::S3Hopf, &cfg(1)).unwrap();
    let t = model.mesh();
    let y = normalize([-0.4412, 0.1873, 0.8771]);
    let k = preimage_link(t, &f, y).unwrap();
    let l = preimage_link(t, &f, normalize([0.5, 0.61, -0.2])).unwrap();
    let a = linking_number(t, &H1Structure::new(t), &k, &l).unwrap();
    let h2 = H1Structure::with_options(t, H1Options { root: 17, salt: 99 });
    assert_eq!(a, linking_number(t, &h2, &k, &l).unwrap());
}

#[test]
fn snapped_cycle_is_a_cycle() {
    let (model, f) = builtin(&Builtin::S3Hopf, &cfg(1)).unwrap();
    let t = model.mesh();
    let link = preimage_link(t, &f, normalize([0.1213, 0.7093, 0.3319])).unwrap();
    let z = snap_to_skeleton(t, &link);
    assert!(z.cycle.is_cycle(t));
    assert_eq!(z.level, 0);
}

#[test]
fn s2s1_fibre_generates() {
    let (model, f) = builtin(&Builtin::S2S1Proj, &cfg(1)).unwrap();
    let t = model.mesh();
    let h = H1Structure::new(t);
    assert_eq!(h.free_rank(), 1);
    let link = preimage_link(t, &f, normalize([0.23, -0.31, 0.92])).unwrap();
    let c = class_of_link(t, &h, &link).unwrap();
    assert_eq!(abs(&c.free[0]), BigInt::from(1));
    let refs = reference_cycles(t, &h, 7).unwrap();
    assert_eq!(refs.links.len(), 1);
    assert_eq!(abs(&refs.classes[0].free[0]), BigInt::from(1));
    assert_eq!(abs(&refs.coefficients(&c)[0]), BigInt::from(1));
}

#[test]
fn t3_reference_cycles_span() {
    let (model, _) = builtin(&Builtin::T3Const, &cfg(1)).unwrap();
    let t = model.mesh();
    let h = H1Structure::new(t);
    let refs = reference_cycles(t, &h, 3).unwrap();
    assert_eq!(refs.links.len(), 3);
    for r in &refs.links {
        r.validate(t).unwrap();
    }
}

#[test]
fn normalized_linking_independent_of_chain_choice() {
    for n in 1..=3 {
        let (model, f) = builtin(&Builtin::S2S1Rot(n), &cfg(1)).unwrap();
        let (_, g) = builtin(&Builtin::S2S1Proj, &cfg(1)).unwrap();
        let t = model.mesh();
        let c = generic_coincidence(t, &f, &g, &Genericity::default()).unwrap();
        let mut values = Vec::new();
        for (root, salt) in [(0, 0), (11, 5), (200, 1234)] {
            let h = H1Structure::with_options(t, H1Options { root, salt });
            assert!(class_of_link(t, &h, &c.minus).unwrap().is_zero());
            let refs = reference_cycles(t, &h, 1).unwrap();
            values.push(normalized_linking(t, &h, &c.minus, &c.plus, &refs).unwrap());
            let own = reference_cycles_preferring(t, &h, 1, &c.plus).unwrap();
            let v = normalized_linking(t, &h, &c.minus, &c.plus, &own).unwrap();
            assert_eq!(abs(&v), BigInt::from(n));
        }
        assert!(values.windows(2).all(|w| w[0] == w[1]), "{values:?}");
        assert_eq!(abs(&values[0]) % 2u32, BigInt::from(n % 2));
    }
}

#[test]
fn euler_class_of_constant_is_zero() {
    let t = boundary_of_4_simplex();
    let f = crate::fields::SphereField::from_fn(&t, |v| {
        normalize([1.0, v as f64 * 0.37 - 0.6, 0.4 + 0.1 * v as f64])
    })
    .unwrap();
    let h = H1Structure::new(&t);
    let e = euler_class(&t, &h, &f, &Genericity::default()).unwrap();
    assert!(e.euler.is_zero());
}
