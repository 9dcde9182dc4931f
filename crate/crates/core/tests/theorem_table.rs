//! The fourteen fine gradings: types, identity components and universal
//! groups along every realization route, plus the lifts they rely on.

use std::sync::OnceLock;

use e6core::catalog::{all_routes, routes, Context, Route, JORDAN, PAIR_BUDGET, THEOREM};
use e6core::gradings::{diagonalize, realize_pair};
use e6core::weyl::TorusSubgroup;

fn context() -> &'static Context {
    static CONTEXT: OnceLock<Context> = OnceLock::new();
    CONTEXT.get_or_init(Context::new)
}

#[test]
fn table_rows_are_consistent() {
    let mut total_groups = 0;
    for row in THEOREM.iter().chain([&JORDAN]) {
        let t = row.expected_type();
        assert_eq!(t.total_dim(), 78, "{}", row.name);
        assert_eq!(t.identity_dim, row.expected_group().free_rank, "{}: the identity component is a Cartan of the torus part", row.name);
        assert!(!routes(row.name).is_empty(), "{} has a route", row.name);
        total_groups += 1;
    }
    assert_eq!(total_groups, 15);
    assert!(routes("Q15").is_empty());
}

#[test]
fn every_route_realizes_its_row() {
    let ctx = context();
    for (row, route) in all_routes() {
        let outcome = ctx.realize(route);
        assert_eq!(outcome.grading_type.as_ref(), Ok(&row.expected_type()), "{} via {route}", row.name);
        match &outcome.universal_group {
            Some(group) => assert_eq!(group.as_ref(), Ok(&row.expected_group()), "{} via {route}", row.name),
            None => assert!(!route.has_full_bracket()),
        }
        assert!(outcome.matches(&row));
    }
}

#[test]
fn every_full_bracket_row_has_a_universal_group() {
    let covered: Vec<&str> = all_routes().iter().filter(|(_, r)| r.has_full_bracket()).map(|(row, _)| row.name).collect();
    for row in THEOREM {
        assert!(covered.contains(&row.name), "{} has a full-bracket route", row.name);
    }
}

#[test]
fn minimized_lifts_reach_the_stated_orders() {
    let ctx = context();
    let chev = ctx.chevalley().unwrap();
    let g = ctx.weyl();
    for (name, order) in [("eta1", 2), ("eta2", 2), ("eta3", 2), ("eta4", 2), ("eta5", 2), ("mu4", 4), ("3819", 3)] {
        let w = g.matrix(g.parse_name(name).unwrap());
        let lift = chev.minimized_lift(&w).unwrap();
        assert_eq!(lift.order, order, "{name}");
        assert_eq!(lift.map.order(72), Some(order), "{name}");
        chev.algebra().check_automorphism(&lift.map).unwrap();
        assert_eq!(chev.weyl_projection(&lift.map).unwrap(), w, "{name}");
    }
}

#[test]
fn commuting_involutions_over_eta3_and_the_sigma96_class() {
    let ctx = context();
    let chev = ctx.chevalley().unwrap();
    let g = ctx.weyl();
    let eta3 = g.matrix(g.parse_name("eta3").unwrap());
    let s = g.matrix(g.parse_name("10850").unwrap());
    assert!(g.orbit(g.parse_name("96").unwrap(), true).contains(&g.parse_name("10850").unwrap()));
    let pair = realize_pair(chev, [&eta3, &s], &[eta3, s], PAIR_BUDGET).unwrap();
    assert_eq!(pair.orders, [2, 2]);
    let (a, b) = (&pair.spec.finite[0].map, &pair.spec.finite[1].map);
    assert_eq!(a.compose(b), b.compose(a));
    assert_eq!(chev.weyl_projection(a).unwrap(), eta3);
    assert_eq!(chev.weyl_projection(b).unwrap(), s);
    assert!(pair.attempts <= PAIR_BUDGET);
}

/// The pairing of σ̃10850 with the torus fixed by η3 and σ11104 does not give
/// a quasitorus, which is reported rather than papered over.
#[test]
fn mismatched_pairing_is_reported() {
    let ctx = context();
    let chev = ctx.chevalley().unwrap();
    let g = ctx.weyl();
    let m = |n: &str| g.matrix(g.parse_name(n).unwrap());
    let outcome = realize_pair(chev, [&m("eta3"), &m("10850")], &[m("eta3"), m("11104")], PAIR_BUDGET).and_then(|p| diagonalize(&p.spec));
    assert!(outcome.is_err());
    let torus = TorusSubgroup::fixed_by_all(&[m("eta3"), m("11104")], 36).unwrap();
    assert_eq!(torus.dimension(), THEOREM[7].identity_dim);
}

#[test]
fn route_names() {
    assert_eq!(Route::C4(5).to_string(), "c4:Xi5+G5");
    assert_eq!(Route::Pair("eta1", "25470").to_string(), "lift:eta1+25470");
    assert_eq!(Route::Adams("Q1").to_string(), "adams:Q1");
    assert!(!Route::C4(2).has_full_bracket());
    assert!(Route::Z4Model.has_full_bracket());
}

#[test]
fn unknown_routes_fail_cleanly() {
    let ctx = context();
    assert!(ctx.realize(Route::Adams("Q7")).grading_type.is_err());
    assert!(ctx.realize(Route::Lift("eta9")).grading_type.is_err());
    assert!(ctx.c4(8).is_err());
}
