use super::*;
use crate::exactfield::PrimeField;
use crate::fixtures;
use crate::gorenstein::candidate_universe;
use crate::modules::syzygy;

const DEPTH: usize = 32;

fn field() -> PrimeField {
    PrimeField::default()
}

fn aus_of(a: &Arc<Algebra>) -> AuslanderAlgebra {
    let ctx = GpContext::new(a);
    AuslanderAlgebra::new(GpGenerator::new(&ctx, DEPTH).unwrap()).unwrap()
}

#[test]
fn dual_numbers_generator_and_gamma() {
    let a = fixtures::dual_numbers(field());
    let aus = aus_of(&a);
    let e = &aus.generator;
    assert_eq!(e.len(), 2);
    assert_eq!(e.projective_count, 1);
    assert_eq!(e.total.dim(), 3);
    assert!(e.validate(&GpContext::new(&a), DEPTH).unwrap());
    // dim End(Λ + k) = 2 + 1 + 1 + 1
    assert_eq!(aus.gamma.dim(), 5);
    assert_eq!(aus.gamma.dim(), hom_dim(&e.total, &e.total).unwrap());
    assert_eq!(aus.gamma.vertex_count(), 2);
    let k = Module::simple(&a, 0);
    assert_eq!(aus.yoneda(&k).unwrap().dim(), 2);
    let report = verify_equivalence_exp(&aus, 16).unwrap();
    assert!(report.passed(), "{report:?}");
}

#[test]
fn cm_free_algebra_is_its_own_auslander_algebra() {
    let a = fixtures::a2(field());
    let aus = aus_of(&a);
    assert_eq!(aus.generator.len(), 2);
    assert!(cartan_equivalent(&a, &aus.gamma));
    assert!(aus.gamma.is_monomial());
    let report = verify_equivalence_exp(&aus, DEPTH).unwrap();
    assert!(report.passed());
    let samples = vec![Module::simple(&a, 0), Module::simple(&a, 1), Module::projective(&a, 0)];
    assert!(verify_fully_faithful(&aus, &samples).unwrap().passed());
}

#[test]
fn cartan_comparison() {
    let a = fixtures::a2(field());
    // A2 with its vertices listed the other way round
    let (c, _) =
        Algebra::from_constants(&a.constants(), Some(a.idempotents().into_iter().rev().collect()), "A2'").unwrap();
    assert_ne!(c.cartan(), a.cartan());
    assert!(cartan_equivalent(&a, &c));
    let semisimple = fixtures::linear_nakayama(&[1, 1], field()).unwrap();
    assert!(!cartan_equivalent(&a, &semisimple));
    let b = fixtures::cyclic_nakayama(&[2, 2], field()).unwrap();
    assert!(!cartan_equivalent(&a, &b));
}

#[test]
fn ringel_665_auslander_algebra() {
    let a = fixtures::ringel(0, field());
    let aus = aus_of(&a);
    let e = &aus.generator;
    assert!(e.len() > 3);
    let mut dim = 0;
    for x in &e.summands {
        for y in &e.summands {
            dim += hom_dim(x, y).unwrap();
        }
    }
    assert_eq!(aus.gamma.dim(), dim);
    assert_eq!(aus.gamma.vertex_count(), e.len());
    let samples = candidate_universe(&a).unwrap();
    let report = verify_fully_faithful(&aus, &samples).unwrap();
    assert_eq!(report.pairs, 17 * 17);
    assert!(report.passed(), "{:?}", report.mismatches);
    let exp = verify_equivalence_exp(&aus, DEPTH).unwrap();
    assert!(exp.passed(), "{exp:?}");
}

#[test]
fn yoneda_is_a_functor() {
    let a = fixtures::ringel(0, field());
    let aus = aus_of(&a);
    let m = Module::uniserial(&a, 0, 4).unwrap();
    let (omega, inc) = syzygy(&m);
    let p = inc.target().clone();
    let pi = crate::modules::projective_cover(&m);
    let f_inc = aus.yoneda_map(&inc).unwrap();
    let f_pi = aus.yoneda_map(&pi).unwrap();
    // F(pi ∘ inc) = F(pi) ∘ F(inc) = 0
    assert!(f_pi.compose(&f_inc).is_zero());
    assert_eq!(aus.yoneda_map(&pi.compose(&inc)).unwrap(), f_pi.compose(&f_inc));
    assert_eq!(
        aus.yoneda_map(&ModuleMap::identity(&p)).unwrap(),
        ModuleMap::identity(&aus.yoneda(&p).unwrap())
    );
    // left exact: F(inc) is injective
    assert_eq!(f_inc.rank(), aus.yoneda(&omega).unwrap().dim());
    for x in candidate_universe(&a).unwrap() {
        assert_eq!(aus.yoneda(&x).unwrap().dim(), hom_dim(&e_total(&aus), &x).unwrap());
    }
}

fn e_total(aus: &AuslanderAlgebra) -> Module {
    aus.generator.total.clone()
}

#[test]
fn yoneda_rejects_foreign_modules() {
    let a = fixtures::a2(field());
    let aus = aus_of(&a);
    let other = Module::simple(&fixtures::dual_numbers(field()), 0);
    assert!(matches!(aus.yoneda(&other), Err(Error::AlgebraMismatch)));
}

#[test]
fn self_injective_444() {
    let a = fixtures::cyclic_444(field());
    let aus = aus_of(&a);
    // every indecomposable is GP: 3 projectives and 9 others
    assert_eq!(aus.generator.len(), 12);
    let exp = verify_equivalence_exp(&aus, 8).unwrap();
    assert!(exp.passed(), "{exp:?}");
}
