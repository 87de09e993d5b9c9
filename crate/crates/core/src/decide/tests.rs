use super::*;
use crate::fields::{builtin, pontryagin_model, Builtin, BuiltinConfig, TubeChart};

fn cfg() -> BuiltinConfig {
    BuiltinConfig {
        refine: 1,
        eps: 0.35,
        max_tets: 1_000_000,
    }
}

fn pair(n: i64) -> (crate::fields::Model, SphereField, SphereField) {
    let (model, f) = builtin(&Builtin::S2S1Rot(n), &cfg()).unwrap();
    let (_, g) = builtin(&Builtin::S2S1Proj, &cfg()).unwrap();
    (model, f, g)
}

#[test]
fn rotation_family_parity() {
    for n in 1..=3 {
        let (model, f, g) = pair(n);
        let t = model.mesh();
        let h = H1Structure::new(t);
        let c = decide_maps(t, &h, &f, &g, &DecideOptions::default()).unwrap();
        assert_eq!(c.divisor_p, BigInt::from(1));
        assert_eq!(c.modulus, BigInt::from(2));
        assert_eq!(c.linking.as_ref().unwrap().abs(), BigInt::from(n));
        let expect = if n % 2 == 0 {
            Verdict::Homotopic
        } else {
            Verdict::NotHomotopic
        };
        assert_eq!(c.verdict, expect, "n = {n}");
        assert_eq!(c.components_cplus, 2);
        assert_eq!(c.components_cminus, n as usize);
    }
}

#[test]
fn hopf_against_constant() {
    let (model, f) = builtin(&Builtin::S3Hopf, &cfg()).unwrap();
    let t = model.mesh();
    let g = SphereField::constant(t, crate::fields::normalize([0.2, 0.3, 0.9])).unwrap();
    let h = H1Structure::new(t);
    let c = decide_maps(t, &h, &f, &g, &DecideOptions::default()).unwrap();
    assert_eq!(c.modulus, BigInt::zero());
    assert_eq!(c.residue_unsigned, Some(BigInt::from(1)));
    assert_eq!(c.verdict, Verdict::NotHomotopic);
}

#[test]
fn perturbation_is_homotopic() {
    let (model, f, _) = pair(1);
    let t = model.mesh();
    let h = H1Structure::new(t);
    let g = f.perturb(5, 0.02);
    let c = decide_maps(t, &h, &f, &g, &DecideOptions::default()).unwrap();
    assert_eq!(c.verdict, Verdict::Homotopic);
    assert_eq!(c.components_cminus, 0);
    assert_eq!(
        sufficient_check(t, &h, &f, &g, &DecideOptions::default()).unwrap(),
        SufficientVerdict::Homotopic
    );
}

#[test]
fn fields_use_euler_divisor() {
    let (model, f, g) = pair(1);
    let t = model.mesh();
    let h = H1Structure::new(t);
    let c = decide_fields(t, &h, &f, &g, &DecideOptions::default()).unwrap();
    assert_eq!(c.kind, PairKind::Fields);
    assert_eq!(c.modulus, BigInt::from(2));
    assert_eq!(c.euler_agree, Some(true));
    assert_eq!(c.verdict, Verdict::NotHomotopic);
}

#[test]
fn field_against_its_negative() {
    let (model, _, g) = pair(1);
    let t = model.mesh();
    let h = H1Structure::new(t);
    let c = decide_fields(t, &h, &g, &g.negated(), &DecideOptions::default()).unwrap();
    assert_eq!(c.verdict, Verdict::NotHomotopic);
    assert!(!c.class_cminus.is_zero());
    assert!(c.linking.is_none());
}

#[test]
fn odd_linking_is_inconclusive_for_sufficient_check() {
    let (model, f, g) = pair(1);
    let t = model.mesh();
    let h = H1Structure::new(t);
    assert_eq!(
        sufficient_check(t, &h, &f, &g, &DecideOptions::default()).unwrap(),
        SufficientVerdict::Inconclusive
    );
}

#[test]
fn symmetric_verdict_and_json_round_trip() {
    let (model, f, g) = pair(3);
    let t = model.mesh();
    let h = H1Structure::new(t);
    let opts = DecideOptions::with_seed(42);
    let a = decide_maps(t, &h, &f, &g, &opts).unwrap();
    let b = decide_maps(t, &h, &g, &f, &opts).unwrap();
    assert_eq!(a.verdict, b.verdict);
    assert_eq!(a.residue_unsigned, b.residue_unsigned);
    let text = a.to_json();
    assert_eq!(HomotopyCertificate::from_json(&text).unwrap(), a);
    assert_eq!(decide_maps(t, &h, &f, &g, &opts).unwrap().to_json(), text);
}

#[test]
fn pontryagin_twists_mod_two() {
    let model = crate::fields::Manifold::s2s1(2).build(1_000_000).unwrap();
    let t = model.mesh();
    let h = H1Structure::new(t);
    let chart = TubeChart::for_model(&model, &[1]).unwrap();
    let p0 = pontryagin_model(t, &chart, 0).unwrap();
    for n in [1, 2] {
        let pn = pontryagin_model(t, &chart, n).unwrap();
        let c = decide_maps(t, &h, &p0, &pn, &DecideOptions::default()).unwrap();
        let expect = if n % 2 == 0 {
            Verdict::Homotopic
        } else {
            Verdict::NotHomotopic
        };
        assert_eq!(c.verdict, expect, "n = {n}: {}", c.to_json());
    }
}
