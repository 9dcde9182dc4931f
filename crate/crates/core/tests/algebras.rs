//! Structure checks for every model of e6 and for the Albert algebra, and the
//! classes of the named automorphisms.

use std::sync::OnceLock;

use e6core::catalog::Context;
use e6core::liecore::{AutoClass, ChevalleyE6, LieAlgebra};
use e6core::exactfield::std36;
use e6core::linalg::{LinMap, SparseVec};
use e6core::models::albert::AlbertModel;
use e6core::weyl::{TorusExp, RANK};
use proptest::prelude::*;

fn context() -> &'static Context {
    static CONTEXT: OnceLock<Context> = OnceLock::new();
    CONTEXT.get_or_init(Context::new)
}

fn albert() -> &'static AlbertModel {
    static MODEL: OnceLock<AlbertModel> = OnceLock::new();
    MODEL.get_or_init(|| AlbertModel::new().unwrap())
}

fn assert_simple_e6(algebra: &LieAlgebra) {
    assert_eq!(algebra.dim(), 78, "{}", algebra.name());
    algebra.check_jacobi().unwrap();
    assert_eq!(algebra.killing_rank(), 78, "{} has a nondegenerate Killing form", algebra.name());
}

#[test]
fn chevalley_model_is_a_lie_algebra_with_nondegenerate_killing_form() {
    let chev = context().chevalley().unwrap();
    assert_simple_e6(chev.algebra());
    assert_eq!(chev.roots().len(), 72);
}

#[test]
fn adams_model_is_a_lie_algebra_with_nondegenerate_killing_form() {
    let m = context().adams().unwrap();
    m.model().check_structure().unwrap();
    assert_simple_e6(m.algebra());
}

#[test]
fn a5a1_model_is_a_lie_algebra_with_nondegenerate_killing_form() {
    let m = context().a5a1().unwrap();
    m.model().check_structure().unwrap();
    assert_simple_e6(m.algebra());
}

#[test]
fn z4_model_is_a_lie_algebra_with_nondegenerate_killing_form() {
    let m = context().z4().unwrap();
    m.model().check_structure().unwrap();
    assert_simple_e6(m.algebra());
}

#[test]
fn albert_model_is_a_lie_algebra_with_nondegenerate_killing_form() {
    let m = albert();
    m.model().check_structure().unwrap();
    assert_simple_e6(m.algebra());
}

#[test]
fn derivations_of_the_albert_algebra_form_f4() {
    let m = albert();
    assert_eq!(m.derivation_dim(), 52);
    m.model().check_automorphism(&m.g4().unwrap()).unwrap();
    assert!(m.is_jordan_automorphism(&m.cycle()));
    assert!(m.is_jordan_automorphism(&m.sign_change([1, -1, -1])));
}

/// Jordan product of two coordinate vectors.
fn jordan(m: &AlbertModel, x: &SparseVec, y: &SparseVec) -> SparseVec {
    let mut out = SparseVec::zero();
    for (i, a) in x.entries() {
        for (j, b) in y.entries() {
            out = out.axpy(&(a * b), m.jordan_product(*i, *j));
        }
    }
    out
}

fn small_vector() -> impl Strategy<Value = SparseVec> {
    prop::collection::vec(-2i64..=2, 27).prop_map(|c| SparseVec::from_dense(&c.into_iter().map(std36::int).collect::<Vec<_>>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn albert_product_satisfies_the_jordan_identity(
        x in small_vector(),
        y in small_vector(),
    ) {
        let m = albert();
        prop_assert_eq!(jordan(m, &x, &y), jordan(m, &y, &x));
        let xx = jordan(m, &x, &x);
        prop_assert_eq!(jordan(m, &jordan(m, &x, &y), &xx), jordan(m, &x, &jordan(m, &y, &xx)));
    }
}

#[test]
fn c4_models_are_equivariant_for_every_form() {
    for k in 1..=7 {
        let m = context().c4(k).unwrap();
        m.model().check_structure().unwrap();
        assert_eq!(m.kernel_dim(), 42, "kernel of the contraction for Xi{k}");
        assert_eq!(m.odd_basis().len(), 42);
        assert!(!m.model().has_full_bracket());
    }
}

/// `f T_t f^{-1} = T_{w·t}` for a lift `f` of `w`, which pins down the
/// convention for the torus action.
#[test]
fn lifts_conjugate_torus_elements_by_the_weyl_action() {
    let ctx = context();
    let chev = ctx.chevalley().unwrap();
    let g = ctx.weyl();
    for name in ["19", "96", "292", "3819", "eta1", "eta3", "mu4"] {
        let w = g.matrix(g.parse_name(name).unwrap());
        let f = chev.weyl_lift(&w).unwrap();
        let f_inv = f.inverse().unwrap();
        for exps in [[1, 0, 0, 0, 0, 0], [0, 5, 0, 7, 0, 1], [3, 1, 4, 1, 5, 9]] {
            let t = TorusExp::new(36, exps);
            let conj = f.compose(&chev.torus_auto(&t)).compose(&f_inv);
            assert_eq!(conj, chev.torus_auto(&t.act(&w)), "{name}");
        }
        assert_eq!(chev.weyl_projection(&f).unwrap(), w, "{name}");
    }
}

fn profile(map: &LinMap) -> (usize, usize, usize) {
    let alg = context().chevalley().unwrap().algebra();
    let fix = alg.fixed_subalgebra(std::slice::from_ref(map)).unwrap();
    let p = alg.reductive_profile(&fix);
    assert_eq!(p.rank, RANK, "inner automorphisms of finite order fix a full-rank subalgebra");
    (p.dim, p.derived_dim, p.center_dim)
}

/// Kac coordinates `(p_0, …, p_6)` in this crate's labelling, in which the two
/// mark-2 nodes next to the branch node are numbered the other way round from
/// the extended-diagram picture the class table was transcribed from.
fn kac(chev: &ChevalleyE6, table_coords: [u32; 7]) -> LinMap {
    let mut coords = table_coords;
    coords.swap(2, 3);
    chev.kac_automorphism(coords).unwrap()
}

#[test]
fn kac_representatives_have_the_tabulated_fixed_subalgebras() {
    let chev = context().chevalley().unwrap();
    let table: [(&str, [u32; 7], usize, usize, usize); 7] = [
        ("3B", [0, 0, 0, 0, 0, 1, 1], 36, 35, 1),
        ("3C", [0, 0, 0, 0, 1, 0, 0], 24, 24, 0),
        ("3D", [1, 1, 0, 0, 0, 0, 1], 30, 28, 2),
        ("3E", [1, 0, 1, 0, 0, 0, 0], 28, 27, 1),
        ("3F", [2, 1, 0, 0, 0, 0, 0], 46, 45, 1),
        ("2A", [0, 0, 1, 0, 0, 0, 0], 38, 38, 0),
        ("2B", [1, 1, 0, 0, 0, 0, 0], 46, 45, 1),
    ];
    for (label, coords, dim, derived, center) in table {
        let f = kac(chev, coords);
        chev.algebra().check_automorphism(&f).unwrap();
        assert_eq!(AutoClass::of(&f), AutoClass::Labeled(label));
        assert_eq!(profile(&f), (dim, derived, center), "{label}");
    }
}

#[test]
fn kac_coordinates_must_give_an_order_dividing_the_level() {
    let chev = context().chevalley().unwrap();
    assert!(chev.kac_automorphism([0; 7]).is_err());
    assert!(chev.kac_automorphism([0, 0, 0, 0, 0, 0, 5]).is_err());
}

#[test]
fn named_adams_automorphisms_fall_in_the_expected_classes() {
    let m = context().adams().unwrap();
    let expected = [
        ("F1", "3C"),
        ("F2", "3D"),
        ("F3", "3C"),
        ("F4", "3C"),
        ("phi1", "2A"),
        ("phi2", "2A"),
        ("phi3", "2A"),
        ("phi4", "2D"),
        ("phi5", "2C"),
    ];
    for (name, label) in expected {
        let f = m.named(name).unwrap();
        m.model().check_automorphism(&f).unwrap();
        assert_eq!(AutoClass::of(&f.map), AutoClass::Labeled(label), "{name}");
    }
}

#[test]
fn outer_order_four_representative_fixes_eighteen_dimensions() {
    let m = context().adams().unwrap();
    let f = m.named("G4''").unwrap().compose(&m.named("T(1,i)").unwrap()).unwrap();
    m.model().check_automorphism(&f).unwrap();
    assert_eq!(f.order, 4);
    assert_eq!(AutoClass::of(&f.map), AutoClass::Other { order: Some(4), fixed_dim: 18 });
}

#[test]
fn outer_involutions_fix_f4_or_c4() {
    let ctx = context();
    let chev = ctx.chevalley().unwrap();
    let g = ctx.weyl();
    let lift = |name: &str| chev.minimized_lift(&g.matrix(g.parse_name(name).unwrap())).unwrap().map;
    assert_eq!(AutoClass::of(&lift("eta1")), AutoClass::Labeled("2C"));
    assert_eq!(AutoClass::of(&lift("eta5")), AutoClass::Labeled("2D"));
    let g5 = ctx.c4(1).unwrap().g5().unwrap();
    assert_eq!(AutoClass::of(&g5.map), AutoClass::Labeled("2D"));
    let alg = chev.algebra();
    let fix = alg.fixed_subalgebra(&[lift("eta1")]).unwrap();
    let p = alg.reductive_profile(&fix);
    assert_eq!((p.dim, p.derived_dim, p.center_dim, p.rank), (52, 52, 0, 4));
}
