use proptest::prelude::*;

use super::*;
use crate::exactfield::PrimeField;
use crate::fixtures;
use crate::modules::ext;

const CAP: usize = 32;

fn field() -> PrimeField {
    PrimeField::default()
}

/// Kupisch-formula projective dimension of M(v, l): None when the syzygy
/// walk revisits a non-projective uniserial.
fn kupisch_pd(c: &[usize], v: usize, l: usize) -> Option<usize> {
    let n = c.len();
    let (mut v, mut l) = (v, l);
    for steps in 0..=c.iter().sum::<usize>() + n {
        if l == c[v] {
            return Some(steps);
        }
        let (nv, nl) = ((v + l) % n, c[v] - l);
        v = nv;
        l = nl;
    }
    None
}

fn kupisch_gl_dim(c: &[usize]) -> Option<usize> {
    (0..c.len())
        .map(|v| kupisch_pd(c, v, 1))
        .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
}

/// Largest i <= bound with Ext^i(S, A) nonzero for some simple S, computed
/// straight from projective resolutions over A.
fn ext_injective_dimension(a: &Arc<Algebra>, bound: usize) -> Option<usize> {
    let reg = Module::regular(a);
    let mut last = None;
    for i in 0..=bound {
        let nonzero = (0..a.vertex_count()).any(|v| ext(&Module::simple(a, v), &reg, i).unwrap() > 0);
        if nonzero {
            last = Some(i);
        }
    }
    last
}

fn witness(s: &DimStatus) -> &InfinityWitness {
    match s {
        DimStatus::CertifiedInfinite(w) => w,
        other => panic!("expected certified infinity, got {other:?}"),
    }
}

#[test]
fn a2_hereditary() {
    let a = fixtures::a2(field());
    assert_eq!(global_dimension(&a, CAP).unwrap(), DimStatus::Finite(1));
    let g = gorenstein_status(&a, CAP).unwrap();
    assert!(g.left.finite().unwrap() <= 1);
    assert_eq!(g.gorenstein, TriBool::True);
    assert_eq!(g.left, g.right);
    assert_eq!(sg_trivial(&a, CAP).unwrap(), TriBool::True);
}

#[test]
fn dual_numbers_self_injective_infinite_gl_dim() {
    let a = fixtures::dual_numbers(field());
    let gl = global_dimension(&a, CAP).unwrap();
    let w = witness(&gl);
    assert_eq!(w.period, 1);
    w.validate().unwrap();
    assert_eq!(injective_dimension(&a, Side::Left, CAP).unwrap(), DimStatus::Finite(0));
    assert_eq!(injective_dimension(&a, Side::Right, CAP).unwrap(), DimStatus::Finite(0));
    assert_eq!(is_gorenstein(&a, CAP).unwrap(), TriBool::True);
    assert_eq!(sg_trivial(&a, CAP).unwrap(), TriBool::False);
}

#[test]
fn forged_witness_rejected() {
    let a = fixtures::dual_numbers(field());
    let gl = global_dimension(&a, CAP).unwrap();
    let mut w = witness(&gl).clone();
    w.summand = Module::projective(&a, 0);
    assert!(w.validate().is_err());
    let b = fixtures::a2(field());
    let w2 = InfinityWitness {
        depth: 0,
        period: 1,
        module: "S1".into(),
        dims: vec![0, 1],
        start: Module::simple(&b, 1),
        summand: Module::simple(&b, 1),
    };
    assert!(w2.validate().is_err());
}

#[test]
fn ringel_fixtures_are_not_gorenstein() {
    for i in 0..3 {
        let a = fixtures::ringel(i, field());
        let g = gorenstein_status(&a, CAP).unwrap();
        assert_eq!(g.gorenstein, TriBool::False, "{}", a.label());
        for s in [&g.left, &g.right] {
            if let DimStatus::CertifiedInfinite(w) = s {
                w.validate().unwrap();
            }
        }
        // the oracle sees Ext^i(-, A) nonzero far out
        assert!(ext_injective_dimension(&a, 10).unwrap() >= 8, "{}", a.label());
        assert_eq!(defect_trivial(&a, CAP).unwrap(), TriBool::False);
    }
}

#[test]
fn self_injective_444() {
    let a = fixtures::cyclic_444(field());
    assert_eq!(is_gorenstein(&a, CAP).unwrap(), TriBool::True);
    assert_eq!(injective_dimension(&a, Side::Left, CAP).unwrap(), DimStatus::Finite(0));
    assert!(global_dimension(&a, CAP).unwrap().is_infinite());
}

#[test]
fn linear_nakayama_dimensions() {
    // k(1 -> 2 -> 3) modulo paths of length 2
    let a = fixtures::linear_nakayama(&[2, 2, 1], field()).unwrap();
    assert_eq!(global_dimension(&a, CAP).unwrap(), DimStatus::Finite(2));
    let g = gorenstein_status(&a, CAP).unwrap();
    assert_eq!(g.left, DimStatus::Finite(ext_injective_dimension(&a, 6).unwrap()));
    assert!(g.sides_agree);
}

#[test]
fn depth_cap_reports_unknown() {
    let a = fixtures::linear_nakayama(&[2, 2, 2, 2, 1], field()).unwrap();
    assert_eq!(global_dimension(&a, 1).unwrap(), DimStatus::Unknown(1));
    assert_eq!(global_dimension(&a, CAP).unwrap(), DimStatus::Finite(4));
}

#[test]
fn dif_on_small_algebras() {
    for a in [
        fixtures::a2(field()),
        fixtures::dual_numbers(field()),
        fixtures::ringel(0, field()),
    ] {
        let ctx = GpContext::new(&a);
        let aus = AuslanderAlgebra::new(GpGenerator::new(&ctx, CAP).unwrap()).unwrap();
        let r = verify_dif(&a, &aus.gamma, CAP).unwrap();
        assert!(r.passed(), "{}: {r:?}", a.label());
    }
}

#[test]
fn dif_report_logic() {
    assert!(dif_report(TriBool::True, TriBool::True).passed());
    assert!(dif_report(TriBool::True, TriBool::False).contradiction);
    let u = dif_report(TriBool::Unknown, TriBool::False);
    assert!(!u.decided && !u.contradiction && !u.passed());
}

#[test]
fn tribool_serialization() {
    let v = serde_json::to_value([TriBool::True, TriBool::False, TriBool::Unknown]).unwrap();
    assert_eq!(v, serde_json::json!([true, false, "unknown"]));
    let d = serde_json::to_value(DimStatus::Finite(3)).unwrap();
    assert_eq!(d, serde_json::json!({"finite": 3}));
}

#[test]
fn classify_ringel_665() {
    let a = fixtures::ringel(0, field());
    let r = classify(&a, Caps::default()).unwrap();
    assert!(r.checks_failed.is_empty(), "{:?}", r.checks_failed);
    assert_eq!(r.cm_finite, TriBool::True);
    assert_eq!(r.cm_free, TriBool::False);
    // three projectives and M(0,3)
    assert_eq!(r.gp_count, Some(4));
    assert_eq!(r.gorenstein, TriBool::False);
    let aus = r.aus_summary.as_ref().unwrap();
    assert!(aus.cm_free_refutation_empty);
    assert!(aus.gl_dim.is_infinite());
    assert!(aus.dif.passed());
    assert!(r.gl_dim.is_infinite());
}

#[test]
fn classify_a2_is_cm_free() {
    let a = fixtures::a2(field());
    let r = classify(&a, Caps::default()).unwrap();
    assert_eq!(r.cm_free, TriBool::True);
    assert_eq!(r.gl_dim, DimStatus::Finite(1));
    assert!(r.checks_passed.contains(&"finiteGlobalDimensionIsCmFree".to_string()));
    assert!(r.checks_failed.is_empty());
}

#[test]
fn small_characteristic() {
    let a = fixtures::ringel(0, PrimeField::new(7).unwrap());
    assert!(matches!(
        classify(&a, Caps::default()),
        Err(Error::CharacteristicTooSmall { .. })
    ));
    // the base algebra fits in GF(101) but its Auslander algebra does not
    let b = fixtures::ringel(1, PrimeField::new(101).unwrap());
    let r = classify(&b, Caps::default()).unwrap();
    assert!(r.aus_summary.is_none());
    assert!(r.aus_error.as_deref().unwrap().contains("too small"));
    assert_eq!(r.gp_count, Some(10));
    assert!(r.checks_failed.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gl_dim_matches_kupisch(c in prop::collection::vec(2usize..5, 2..4)) {
        if let Ok(a) = fixtures::cyclic_nakayama(&c, field()) {
            let gl = global_dimension(&a, CAP).unwrap();
            match kupisch_gl_dim(&c) {
                Some(d) => prop_assert_eq!(gl, DimStatus::Finite(d)),
                None => {
                    prop_assert!(gl.is_infinite());
                    witness(&gl).validate().unwrap();
                }
            }
            let g = gorenstein_status(&a, CAP).unwrap();
            prop_assert!(g.sides_agree);
            if let DimStatus::Finite(d) = g.left {
                prop_assert_eq!(ext_injective_dimension(&a, d + 3), Some(d));
            }
        }
    }
}
