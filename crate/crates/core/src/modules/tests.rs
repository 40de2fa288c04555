use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::Algebra;
use crate::fixtures;

fn field() -> PrimeField {
    PrimeField::default()
}

/// dim Hom(M, N) by solving the intertwining equations on all vertex blocks
/// at once, without any presentation.
fn hom_dim_oracle(m: &Module, n: &Module) -> usize {
    let alg = m.algebra();
    let f = m.field();
    let nv = alg.vertex_count();
    let mut offs = Vec::new();
    let mut total = 0;
    for v in 0..nv {
        offs.push(total);
        total += n.dims()[v] * m.dims()[v];
    }
    let var = |v: usize, r: usize, c: usize| offs[v] + r * m.dims()[v] + c;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (a, arrow) in alg.arrows().iter().enumerate() {
        let (s, t) = (arrow.source, arrow.target);
        // (B_t rho_M(a))_{rc} - (rho_N(a) B_s)_{rc} = 0
        for r in 0..n.dims()[t] {
            for c in 0..m.dims()[s] {
                let mut row = vec![0u32; total];
                for k in 0..m.dims()[t] {
                    let x = m.arrow(a).get(k, c);
                    let i = var(t, r, k);
                    row[i] = f.add(row[i], x);
                }
                for k in 0..n.dims()[s] {
                    let x = n.arrow(a).get(r, k);
                    let i = var(s, k, c);
                    row[i] = f.sub(row[i], x);
                }
                rows.push(row);
            }
        }
    }
    let mut mat = Mat::zeros(f, rows.len(), total);
    for (i, r) in rows.iter().enumerate() {
        mat.row_mut(i).copy_from_slice(r);
    }
    total - mat.rank()
}

fn random_invertible(f: PrimeField, d: usize, rng: &mut ChaCha8Rng) -> Mat {
    loop {
        let data = (0..d * d).map(|_| rng.gen_range(0..f.characteristic())).collect();
        let t = Mat::from_data(f, d, d, data);
        if t.rank() == d {
            return t;
        }
    }
}

fn scramble(m: &Module, seed: u64) -> Module {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases: Vec<Mat> = m
        .dims()
        .iter()
        .map(|&d| random_invertible(m.field(), d, &mut rng))
        .collect();
    m.change_basis(&bases).unwrap()
}

fn uniserials(alg: &Arc<Algebra>) -> Vec<Module> {
    let mut out = Vec::new();
    for v in 0..alg.vertex_count() {
        let len = Module::projective(alg, v).dim();
        for l in 1..=len {
            out.push(Module::uniserial(alg, v, l).unwrap());
        }
    }
    out
}

#[test]
fn projectives_of_a_nakayama_algebra_are_uniserial_of_length_c() {
    let a = fixtures::ringel(0, field());
    for (v, &c) in [6usize, 6, 5].iter().enumerate() {
        let p = Module::projective(&a, v);
        assert_eq!(p.dim(), c);
        assert!(p.is_projective());
        // top at v, then one dimension per step around the cycle
        let mut expect = vec![0; 3];
        for k in 0..c {
            expect[(v + k) % 3] += 1;
        }
        assert_eq!(p.dims(), expect.as_slice());
        assert!(is_indecomposable(&p).unwrap());
    }
}

#[test]
fn invalid_actions_are_rejected() {
    let a = fixtures::dual_numbers(field());
    // x acting as the identity on a line violates x^2 = 0
    let bad = Module::new(a.clone(), vec![1], vec![Mat::identity(field(), 1)], "bad");
    assert!(matches!(bad, Err(Error::InvalidModule(_))));
    let wrong_shape = Module::new(a.clone(), vec![2], vec![Mat::zeros(field(), 1, 2)], "bad");
    assert!(wrong_shape.is_err());
    let ok = Module::new(
        a,
        vec![2],
        vec![Mat::from_rows(field(), &[vec![0, 0], vec![1, 0]])],
        "ok",
    );
    assert!(ok.is_ok());
}

#[test]
fn hom_matches_the_intertwiner_oracle() {
    let a = fixtures::cyclic_nakayama(&[3, 2], field()).unwrap();
    let us = uniserials(&a);
    for x in &us {
        for y in &us {
            let basis = hom(x, y).unwrap();
            assert_eq!(basis.len(), hom_dim_oracle(x, y), "{x:?} -> {y:?}");
            assert_eq!(hom_dim(x, y).unwrap(), basis.len());
            for f in &basis {
                assert!(f.is_homomorphism());
            }
        }
    }
}

#[test]
fn hom_from_a_projective_is_the_vertex_space() {
    let a = fixtures::ringel(0, field());
    let us = uniserials(&a);
    for v in 0..3 {
        let p = Module::projective(&a, v);
        for n in &us {
            assert_eq!(hom_dim(&p, n).unwrap(), n.dims()[v]);
        }
    }
}

#[test]
fn syzygies_of_uniserials_follow_the_kupisch_series() {
    let c = [6usize, 6, 5];
    let a = fixtures::ringel(0, field());
    for v in 0..3 {
        for l in 1..c[v] {
            let m = Module::uniserial(&a, v, l).unwrap();
            let omega = syzygy(&m).0;
            let expect = Module::uniserial(&a, (v + l) % 3, c[v] - l).unwrap();
            assert!(isomorphism(&omega, &expect).unwrap().is_some(), "Ω M({v},{l})");
        }
        assert!(syzygy(&Module::projective(&a, v)).0.is_zero());
    }
}

#[test]
fn ext_over_dual_numbers() {
    let a = fixtures::dual_numbers(field());
    let k = Module::simple(&a, 0);
    for i in 0..5 {
        assert_eq!(ext(&k, &k, i).unwrap(), 1);
        assert_eq!(ext_via_resolution(&k, &k, i).unwrap(), 1);
        assert_eq!(ext_via_injectives(&k, &k, i).unwrap(), 1);
    }
    let reg = Module::regular(&a);
    for i in 1..4 {
        assert_eq!(ext(&k, &reg, i).unwrap(), 0);
    }
}

#[test]
fn ext_on_a2() {
    let a = fixtures::a2(field());
    // S0 has projective resolution 0 -> P1 -> P0 -> S0
    let s0 = Module::simple(&a, 0);
    let s1 = Module::simple(&a, 1);
    assert_eq!(ext(&s0, &s1, 1).unwrap(), 1);
    assert_eq!(ext(&s1, &s0, 1).unwrap(), 0);
    assert_eq!(ext(&s0, &s1, 2).unwrap(), 0);
    assert_eq!(ext_via_injectives(&s0, &s1, 1).unwrap(), 1);
}

#[test]
fn decomposition_of_the_regular_module() {
    let a = fixtures::ringel(0, field());
    let d = decompose(&Module::regular(&a)).unwrap();
    assert_eq!(d.len(), 3);
    for s in &d.summands {
        assert!(s.module.is_projective());
        assert!(s.projection.compose(&s.inclusion) == ModuleMap::identity(&s.module));
    }
}

#[test]
fn decomposition_survives_a_change_of_basis() {
    let a = fixtures::cyclic_nakayama(&[3, 3, 2], field()).unwrap();
    let parts = vec![
        Module::uniserial(&a, 0, 2).unwrap(),
        Module::uniserial(&a, 0, 2).unwrap(),
        Module::uniserial(&a, 1, 3).unwrap(),
        Module::simple(&a, 2),
    ];
    let sum = scramble(&direct_sum(&a, &parts), 11);
    let d = decompose(&sum).unwrap();
    assert_eq!(d.len(), 4);
    let mut remaining = parts.clone();
    for s in d.modules() {
        let i = remaining
            .iter()
            .position(|p| isomorphism(p, &s).unwrap().is_some())
            .expect("summand matches one of the parts");
        remaining.swap_remove(i);
    }
    assert!(is_isomorphic(&sum, &direct_sum(&a, &parts)).unwrap());
    assert!(!is_isomorphic(&sum, &direct_sum(&a, &parts[..3])).unwrap());
}

#[test]
fn endomorphism_ring_of_regular_plus_simple() {
    let a = fixtures::dual_numbers(field());
    let m = direct_sum(&a, &[Module::regular(&a), Module::simple(&a, 0)]);
    let (end, _) = endomorphism_algebra(&m).unwrap();
    // Hom(A,A)=2, Hom(A,k)=1, Hom(k,A)=1, Hom(k,k)=1
    assert_eq!(end.dim(), 5);
    assert_eq!(end.primitive_idempotents().unwrap().len(), 2);
}

#[test]
fn dual_is_an_involution_and_injectives_are_dual_projectives() {
    let a = fixtures::ringel(0, field());
    for m in uniserials(&a) {
        let dd = dual(&dual(&m));
        assert!(Arc::ptr_eq(dd.algebra(), &a));
        assert_eq!(dd.arrows(), m.arrows());
    }
    for v in 0..3 {
        let i = Module::injective(&a, v);
        assert_eq!(i.dims()[v] >= 1, true);
        assert!(Arc::ptr_eq(i.algebra(), &a));
        // socle is S_v: Hom(S_v, I_v) = 1 and Hom(S_w, I_v) = 0 otherwise
        for w in 0..3 {
            assert_eq!(hom_dim(&Module::simple(&a, w), &i).unwrap(), usize::from(v == w));
        }
        // injective: Ext^1(-, I_v) vanishes on all uniserials
        for m in uniserials(&a) {
            assert_eq!(ext(&m, &i, 1).unwrap(), 0);
        }
    }
}

#[test]
fn star_of_projectives_and_biduality() {
    let a = fixtures::ringel(0, field());
    let op = a.opposite();
    for v in 0..3 {
        let p = Module::projective(&a, v);
        let ps = star(&p).unwrap();
        assert!(Arc::ptr_eq(ps.algebra(), &op));
        assert!(isomorphism(&ps, &Module::projective(&op, v)).unwrap().is_some());
        let ev = biduality_map(&p).unwrap();
        assert!(ev.is_homomorphism());
        assert!(ev.is_isomorphism());
        assert!(transpose(&p).unwrap().is_zero());
    }
}

#[test]
fn biduality_on_dual_numbers_and_a2() {
    let a = fixtures::dual_numbers(field());
    let k = Module::simple(&a, 0);
    let ev = biduality_map(&k).unwrap();
    assert!(ev.is_isomorphism());
    // over A2 the simple S0 = P0 / P1 has S0* = 0
    let a2 = fixtures::a2(field());
    let s0 = Module::simple(&a2, 0);
    assert!(star(&s0).unwrap().is_zero());
    assert!(!biduality_map(&s0).unwrap().is_isomorphism());
}

#[test]
fn transpose_of_a_simple_over_dual_numbers() {
    let a = fixtures::dual_numbers(field());
    let tr = transpose(&Module::simple(&a, 0)).unwrap();
    assert_eq!(tr.dim(), 1);
}

#[test]
fn from_action_matrices_round_trip() {
    let a = fixtures::cyclic_nakayama(&[3, 2], field()).unwrap();
    let m = Module::uniserial(&a, 0, 3).unwrap();
    let idems: Vec<Mat> = (0..2).map(|v| m.action_matrix(a.vertex_word(v))).collect();
    let arrows: Vec<Mat> = (0..2).map(|g| m.action_matrix(a.arrow_word(g))).collect();
    let back = Module::from_action_matrices(a.clone(), &idems, &arrows, "M").unwrap();
    assert!(isomorphism(&back, &m).unwrap().is_some());
    let mut broken = arrows.clone();
    broken[0] = Mat::identity(field(), 3);
    assert!(Module::from_action_matrices(a, &idems, &broken, "M").is_err());
}

#[test]
fn class_cache_memoizes_syzygy_orbits() {
    let a = fixtures::dual_numbers(field());
    let cache = ClassCache::new(a.clone());
    let k = Module::simple(&a, 0);
    let orbit = cache.syzygy_orbit(&k, 8).unwrap();
    assert!(orbit.closed);
    assert_eq!(orbit.classes.len(), 1);
    assert_eq!(orbit.edges, vec![(0, 0)]);
    assert_eq!(cache.class_of(&scramble(&k, 3)).unwrap(), 0);
    assert_eq!(cache.len(), 1);
}

#[test]
fn module_maps_kernel_image_cokernel() {
    let a = fixtures::ringel(0, field());
    let pi = projective_cover(&Module::uniserial(&a, 1, 4).unwrap());
    let (k, _) = pi.kernel();
    let (im, _) = pi.image();
    let (ck, _) = pi.cokernel();
    assert_eq!(k.dim(), 2);
    assert_eq!(im.dim(), 4);
    assert!(ck.is_zero());
    assert!(ModuleMap::new(pi.source().clone(), pi.target().clone(), pi.blocks().to_vec()).is_ok());
}

fn admissible(seed: &[usize]) -> Vec<usize> {
    let mut c = seed.to_vec();
    let n = c.len();
    for _ in 0..n {
        for i in 0..n {
            let next = (i + 1) % n;
            if c[next] + 1 < c[i] {
                c[next] = c[i] - 1;
            }
        }
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn ext_routes_agree(seed in prop::collection::vec(2usize..5, 1..4), pick in any::<u64>(), i in 1usize..4) {
        let c = admissible(&seed);
        let a = fixtures::cyclic_nakayama(&c, field()).unwrap();
        let us = uniserials(&a);
        let mut rng = ChaCha8Rng::seed_from_u64(pick);
        let x = &us[rng.gen_range(0..us.len())];
        let y = &us[rng.gen_range(0..us.len())];
        let e1 = ext(x, y, i).unwrap();
        prop_assert_eq!(e1, ext_via_resolution(x, y, i).unwrap());
        prop_assert_eq!(e1, ext_via_injectives(x, y, i).unwrap());
    }

    #[test]
    fn hom_dimension_is_basis_invariant(seed in prop::collection::vec(2usize..5, 1..4), pick in any::<u64>()) {
        let c = admissible(&seed);
        let a = fixtures::cyclic_nakayama(&c, field()).unwrap();
        let us = uniserials(&a);
        let mut rng = ChaCha8Rng::seed_from_u64(pick);
        let x = &us[rng.gen_range(0..us.len())];
        let y = &us[rng.gen_range(0..us.len())];
        let d = hom_dim(x, y).unwrap();
        prop_assert_eq!(d, hom_dim_oracle(x, y));
        prop_assert_eq!(d, hom_dim(&scramble(x, pick), &scramble(y, pick ^ 1)).unwrap());
    }

    #[test]
    fn decomposition_is_basis_independent(seed in prop::collection::vec(2usize..5, 1..4), pick in any::<u64>()) {
        let c = admissible(&seed);
        let a = fixtures::cyclic_nakayama(&c, field()).unwrap();
        let us = uniserials(&a);
        let mut rng = ChaCha8Rng::seed_from_u64(pick);
        let parts: Vec<Module> = (0..3).map(|_| us[rng.gen_range(0..us.len())].clone()).collect();
        let sum = direct_sum(&a, &parts);
        let d1 = decompose(&sum).unwrap();
        let d2 = decompose(&scramble(&sum, pick)).unwrap();
        prop_assert_eq!(d1.len(), 3);
        prop_assert_eq!(d2.len(), 3);
        let dims1: Vec<Vec<usize>> = d1.modules().iter().map(|m| m.dims().to_vec()).collect();
        let dims2: Vec<Vec<usize>> = d2.modules().iter().map(|m| m.dims().to_vec()).collect();
        prop_assert_eq!(dims1, dims2);
    }
}
