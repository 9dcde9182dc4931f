//! Gradings and quasitori coming from the tensor, a5⊕a1, c4 and Z4 models.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use e6core::catalog::Context;
use e6core::exactfield::std36;
use e6core::gradings::{census_signature, diagonalize, GradingType, QuasitorusSpec};
use e6core::liecore::{AutoClass, LieAlgebra};
use e6core::linalg::LinMap;
use e6core::models::c4::{XiSet, ODD, SP};
use e6core::models::Matrix;

fn context() -> &'static Context {
    static CONTEXT: OnceLock<Context> = OnceLock::new();
    CONTEXT.get_or_init(Context::new)
}

fn grading_type(spec: &QuasitorusSpec) -> GradingType {
    diagonalize(spec).unwrap().type_of()
}

fn ty(counts: &[usize], identity_dim: usize) -> GradingType {
    GradingType::new(counts, identity_dim)
}

/// Classes of every nonidentity element, computed directly from the maps.
fn direct_census(spec: &QuasitorusSpec) -> BTreeMap<AutoClass, usize> {
    let mut elements = vec![LinMap::identity(spec.dim)];
    for g in &spec.finite {
        let powers: Vec<LinMap> = (0..g.order).map(|e| g.map.pow(e)).collect();
        elements = elements.iter().flat_map(|x| powers.iter().map(move |p| x.compose(p))).collect();
    }
    let mut census = BTreeMap::new();
    for x in elements.iter().filter(|x| !x.is_identity()) {
        *census.entry(AutoClass::of(x)).or_insert(0) += 1;
    }
    census
}

fn toral(algebra: &LieAlgebra, spec: &QuasitorusSpec) -> (bool, usize) {
    let maps: Vec<LinMap> = spec.finite.iter().map(|g| g.map.clone()).collect();
    let (is_toral, profile) = algebra.is_toral(&maps, 6).unwrap();
    (is_toral, profile.dim)
}

#[test]
fn tensor_model_quasitori_have_the_stated_classes() {
    let m = context().adams().unwrap();
    let cases = [
        ("P2", m.p2().unwrap(), "D^8"),
        ("P1", m.p1().unwrap(), "C^6 D^2"),
        ("Jordan", m.jordan().unwrap(), "C^26"),
    ];
    for (name, spec, signature) in cases {
        let grading = diagonalize(&spec).unwrap();
        assert_eq!(census_signature(&grading.census()), signature, "{name}");
        assert_eq!(grading.census(), direct_census(&spec), "{name} by direct computation");
    }
    let q1 = diagonalize(&m.q1().unwrap()).unwrap();
    assert_eq!(census_signature(&q1.census()), "C^62 D^18");
}

#[test]
fn a5a1_quasitori_have_the_stated_classes() {
    let m = context().a5a1().unwrap();
    let p3 = m.p3().unwrap();
    assert_eq!(census_signature(&diagonalize(&p3).unwrap().census()), "A^7");
    assert_eq!(diagonalize(&p3).unwrap().census(), direct_census(&p3));
    assert_eq!(AutoClass::of(&m.g1().unwrap().map), AutoClass::Labeled("2A"));
}

#[test]
fn coarse_gradings_of_the_tensor_and_a5a1_models() {
    let adams = context().adams().unwrap();
    assert_eq!(grading_type(&adams.p2().unwrap()), ty(&[0, 0, 0, 0, 0, 0, 0, 8, 0, 0, 0, 0, 0, 1], 14));
    let m = context().a5a1().unwrap();
    assert_eq!(grading_type(&m.p4().unwrap()), ty(&[0, 0, 0, 0, 0, 0, 0, 8, 0, 0, 0, 0, 0, 1], 14));
}

#[test]
fn torality_of_finite_subgroups() {
    let adams = context().adams().unwrap();
    let jordan_group = QuasitorusSpec::finite_only(
        78,
        ["F2", "F3", "F4"].iter().map(|n| adams.named(n).unwrap().generator()).collect(),
    );
    let (is_toral, dim) = toral(adams.algebra(), &jordan_group);
    assert!(is_toral);
    assert_eq!(dim, 6);
    assert!(!toral(adams.algebra(), &adams.p1().unwrap()).0);
    assert!(!toral(adams.algebra(), &adams.p2().unwrap()).0);
    let a5a1 = context().a5a1().unwrap();
    assert!(!toral(a5a1.algebra(), &a5a1.p3().unwrap()).0);
    assert!(!toral(a5a1.algebra(), &a5a1.p4().unwrap()).0);
}

#[test]
fn z4_model_scalars_are_forced_by_jacobi() {
    let m = context().z4().unwrap();
    let expected = [std36::rational(2, 3), std36::rational(2, 3), std36::rational(4, 3), std36::rational(-4, 3)];
    assert_eq!(m.scalars(), expected);
    assert_eq!(m.wedge_square_basis().len(), 20);
}

#[test]
fn z4_generators_commute_and_have_order_four() {
    let m = context().z4().unwrap();
    let (u1, u2, u3) = (m.named("U1").unwrap(), m.named("U2").unwrap(), m.named("U3").unwrap());
    for u in [&u1, &u2, &u3] {
        m.model().check_automorphism(u).unwrap();
        assert_eq!(u.order, 4, "{}", u.name);
    }
    for (a, b) in [(&u1, &u2), (&u1, &u3), (&u2, &u3)] {
        assert_eq!(a.map.compose(&b.map), b.map.compose(&a.map), "{} and {}", a.name, b.name);
    }
    assert_eq!(AutoClass::of(&u1.map), AutoClass::Other { order: Some(4), fixed_dim: 18 });
    assert!(m.named("U4").is_err());
}

#[test]
fn z4_generators_act_functorially_up_to_sign() {
    let m = context().z4().unwrap();
    let cycle = Matrix::from_ints(&[&[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
    let swap = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
    let scalars = m.functorial_scalars(&m.named("U2").unwrap(), &cycle, &swap).unwrap();
    assert_eq!(scalars, [cycle.det(), std36::one()]);
    assert_eq!(scalars[0], std36::int(-1));
}

#[test]
fn torality_of_z4_subgroups() {
    let m = context().z4().unwrap();
    let (u1, u2, u3) = (m.u1().unwrap(), m.u2().unwrap(), m.u3().unwrap());
    let spec = |maps: Vec<e6core::models::NamedAutomorphism>| {
        QuasitorusSpec::finite_only(78, maps.iter().map(|a| a.generator()).collect())
    };
    let alg = m.algebra();
    assert_eq!(toral(alg, &spec(vec![u2.clone(), u3.clone()])), (true, 6));
    let u1_sq = u1.pow(2).unwrap();
    assert_eq!(toral(alg, &spec(vec![u1_sq.clone(), u2.clone(), u3.clone()])), (false, 2));
    assert_eq!(toral(alg, &spec(vec![u1_sq, u2.pow(2).unwrap(), u3])), (true, 6));
}

#[test]
fn z4_model_grading_is_the_q14_grading() {
    let m = context().z4().unwrap();
    let grading = diagonalize(&m.q14().unwrap()).unwrap();
    assert_eq!(grading.type_of(), ty(&[48, 15], 0));
    assert_eq!(grading.universal_group(m.algebra()).unwrap().as_lattice_group(), "Z4^3");
}

#[test]
fn symplectic_forms_and_their_finite_groups() {
    for k in 1..=7 {
        let xi = XiSet::get(k).unwrap();
        for g in &xi.generators {
            assert!(g.form_multiplier(&xi.gram).is_some(), "Xi{k} generator is a similitude");
        }
        for (a, b) in xi.generators.iter().zip(xi.generators.iter().skip(1)) {
            let (ab, ba) = (a.mul(b), b.mul(a));
            assert!(ab == ba || ab == ba.scale(&std36::int(-1)), "Xi{k} generators commute up to sign");
        }
    }
    assert!(XiSet::get(0).is_err());
    assert!(XiSet::get(8).is_err());
}

#[test]
fn symplectic_gradings_of_the_seven_quasitori() {
    let expected = [
        (1, ty(&[32, 0, 0, 1], 4)),
        (2, ty(&[28, 4], 2)),
        (3, ty(&[27, 0, 3], 1)),
        (4, ty(&[24, 0, 0, 3], 0)),
        (5, ty(&[24, 6], 0)),
        (6, ty(&[36], 1)),
        (7, ty(&[36], 0)),
    ];
    for (k, want) in expected {
        let m = context().c4(k).unwrap();
        let xi = XiSet::get(k).unwrap();
        let grading = diagonalize(&m.quasitorus(&xi, false, Some(SP)).unwrap()).unwrap();
        assert_eq!(grading.type_of().counts, want.counts, "Xi{k} on sp(8)");
        assert_eq!(grading.identity_dim(), want.identity_dim, "Xi{k} identity on sp(8)");
        for gen in m.xi_generators(&xi).unwrap() {
            m.model().check_automorphism(&gen).unwrap();
        }
    }
}

#[test]
fn restrictions_to_the_forty_two_dimensional_module() {
    let expected = [(2, vec![32, 3, 0, 1]), (5, vec![24, 7, 0, 1]), (6, vec![37, 0, 0, 0, 1]), (7, vec![36, 0, 0, 0, 0, 1])];
    for (k, counts) in expected {
        let m = context().c4(k).unwrap();
        let xi = XiSet::get(k).unwrap();
        let grading = diagonalize(&m.quasitorus(&xi, true, Some(ODD)).unwrap()).unwrap();
        assert_eq!(grading.type_of().counts, counts, "Xi{k} on the module");
        assert_eq!(grading.total_dim(), 42);
    }
}

#[test]
fn xi6_torus_fixes_a_five_dimensional_subspace_of_the_module() {
    let m = context().c4(6).unwrap();
    let xi = XiSet::get(6).unwrap();
    let grading = diagonalize(&m.quasitorus(&xi, false, Some(ODD)).unwrap()).unwrap();
    let fixed: usize = grading.components.iter().filter(|c| c.degree.is_identity()).map(|c| c.space.dim()).sum();
    assert_eq!(fixed, 5);
}

#[test]
fn xi2_grading_has_a_single_four_dimensional_component() {
    let m = context().c4(2).unwrap();
    let xi = XiSet::get(2).unwrap();
    let grading = diagonalize(&m.quasitorus(&xi, true, None).unwrap()).unwrap();
    let big: Vec<_> = grading.components.iter().filter(|c| c.space.dim() == 4).collect();
    assert_eq!(big.len(), 1);
    assert!(big[0].space.basis().iter().all(|v| v.support().all(|i| i >= 36)), "it lies in the module");
}

#[test]
fn g5_is_the_parity_automorphism() {
    let m = context().c4(1).unwrap();
    let g5 = m.g5().unwrap();
    assert_eq!(g5.order, 2);
    let fixed = m.model().structure().fixed_subalgebra(std::slice::from_ref(&g5.map)).unwrap();
    assert_eq!(fixed.dim(), 36);
    assert!(m.named("G5").is_ok());
    assert!(m.named("Xi1.gen1").is_err(), "Xi1 has no finite generators");
    assert!(m.named("Xi5.gen1").is_err(), "Xi5 generators do not preserve the Xi1 form");
    assert!(context().c4(5).unwrap().named("Xi5.gen1").is_ok());
    assert!(m.named("Xi9.gen1").is_err());
}
