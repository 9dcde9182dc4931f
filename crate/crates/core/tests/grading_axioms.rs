//! Grading axioms on every computed grading, and equivariance of every
//! automorphism of the action-only models.

use std::sync::OnceLock;

use e6core::catalog::{all_routes, Context};
use e6core::exactfield::{std36, DEFAULT_LEVEL};
use e6core::gradings::{diagonalize, Grading, QuasitorusSpec};
use e6core::liecore::LieAlgebra;
use e6core::linalg::SparseVec;
use e6core::models::c4::XiSet;
use proptest::prelude::*;

fn context() -> &'static Context {
    static CONTEXT: OnceLock<Context> = OnceLock::new();
    CONTEXT.get_or_init(Context::new)
}

struct Case {
    name: String,
    spec: QuasitorusSpec,
    grading: Grading,
    algebra: &'static LieAlgebra,
}

/// Every grading produced by a route, plus the intermediate coarse ones.
fn cases() -> &'static [Case] {
    static CASES: OnceLock<Vec<Case>> = OnceLock::new();
    CASES.get_or_init(|| {
        let ctx = context();
        let mut out = Vec::new();
        for (row, route) in all_routes() {
            let (spec, algebra) = ctx.spec(route).unwrap();
            let algebra = match (algebra, route) {
                (Some(a), _) => a,
                (None, e6core::catalog::Route::C4(k)) => ctx.c4(k).unwrap().model().structure(),
                (None, _) => unreachable!("only the c4 model is action-only"),
            };
            let grading = diagonalize(&spec).unwrap();
            out.push(Case { name: format!("{} via {route}", row.name), spec, grading, algebra });
        }
        let adams = ctx.adams().unwrap();
        for (name, spec) in [("P1", adams.p1()), ("P2", adams.p2()), ("R1", adams.r1())] {
            let spec = spec.unwrap();
            out.push(Case { name: name.into(), grading: diagonalize(&spec).unwrap(), spec, algebra: adams.algebra() });
        }
        let a5a1 = ctx.a5a1().unwrap();
        for (name, spec) in [("P3", a5a1.p3()), ("P4", a5a1.p4())] {
            let spec = spec.unwrap();
            out.push(Case { name: name.into(), grading: diagonalize(&spec).unwrap(), spec, algebra: a5a1.algebra() });
        }
        out
    })
}

/// `f v = ζ_m^c v` for each finite generator, and the torus weight of every
/// coordinate in the support equals the component weight.
fn check_eigenvector(case: &Case, degree: &e6core::gradings::Degree, v: &SparseVec) -> Result<(), String> {
    for (gen, &c) in case.spec.finite.iter().zip(&degree.chars) {
        let step = (DEFAULT_LEVEL / gen.order) as i64;
        let eigenvalue = std36::zeta(step * c as i64);
        if gen.map.apply(v) != v.scale(&eigenvalue) {
            return Err(format!("{}: {} does not act by a scalar on degree {degree}", case.name, gen.name));
        }
    }
    if let Some(i) = v.support().find(|&i| case.spec.weights[i] != degree.weight) {
        return Err(format!("{}: coordinate {i} has the wrong torus weight for degree {degree}", case.name));
    }
    Ok(())
}

#[test]
fn components_are_common_eigenspaces_spanning_the_model() {
    for case in cases() {
        assert!(case.grading.is_direct_sum(), "{}", case.name);
        assert_eq!(case.grading.total_dim(), case.spec.dim, "{}", case.name);
        for comp in &case.grading.components {
            for v in comp.space.basis() {
                check_eigenvector(case, &comp.degree, v).unwrap();
            }
        }
        let degrees: std::collections::BTreeSet<_> = case.grading.components.iter().map(|c| &c.degree).collect();
        assert_eq!(degrees.len(), case.grading.components.len(), "{}: degrees are distinct", case.name);
    }
}

#[test]
fn brackets_respect_degrees_and_killing_form_pairs_opposite_degrees() {
    for case in cases() {
        case.grading.bracket_relations(case.algebra).unwrap_or_else(|e| panic!("{}: {e}", case.name));
        if case.algebra.killing_rank() == case.algebra.dim() {
            case.grading.check_killing_orthogonality(&case.algebra.killing_matrix()).unwrap_or_else(|e| panic!("{}: {e}", case.name));
        }
    }
}

#[test]
fn identity_component_is_a_subalgebra_and_is_fixed() {
    for case in cases() {
        let Some(identity) = case.grading.components.iter().find(|c| c.degree.is_identity()) else { continue };
        for x in identity.space.basis() {
            for y in identity.space.basis() {
                assert!(identity.space.contains(&case.algebra.bracket(x, y)), "{}", case.name);
            }
        }
    }
}

#[test]
fn action_only_automorphisms_are_equivariant() {
    let ctx = context();
    for k in 1..=7 {
        let m = ctx.c4(k).unwrap();
        let xi = XiSet::get(k).unwrap();
        let mut autos = m.xi_generators(&xi).unwrap();
        autos.push(m.g5().unwrap());
        for a in &autos {
            m.model().check_automorphism(a).unwrap_or_else(|e| panic!("Xi{k} {}: {e}", a.name));
        }
        for a in &autos {
            for b in &autos {
                assert_eq!(a.map.compose(&b.map), b.map.compose(&a.map), "Xi{k}: {} and {} commute", a.name, b.name);
            }
        }
    }
}

fn combination(basis: &[SparseVec], coeffs: &[i64]) -> SparseVec {
    basis.iter().zip(coeffs.iter().cycle()).fold(SparseVec::zero(), |acc, (v, &c)| acc.axpy(&std36::int(c), v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn brackets_of_homogeneous_elements_are_homogeneous(
        pick in any::<prop::sample::Index>(),
        first in any::<prop::sample::Index>(),
        second in any::<prop::sample::Index>(),
        coeffs in prop::collection::vec(-3i64..=3, 1..6),
    ) {
        let case = pick.get(cases());
        let comps = &case.grading.components;
        let (a, b) = (first.get(comps), second.get(comps));
        let x = combination(a.space.basis(), &coeffs);
        let y = combination(b.space.basis(), &coeffs[1..].iter().chain(&coeffs[..1]).copied().collect::<Vec<_>>());
        prop_assert!(check_eigenvector(case, &a.degree, &x).is_ok());
        let z = case.algebra.bracket(&x, &y);
        let sum = a.degree.add(&b.degree, &case.grading.orders);
        prop_assert!(check_eigenvector(case, &sum, &z).is_ok(), "{}: [{}, {}]", case.name, a.degree, b.degree);
        if !z.is_zero() {
            let target = comps.iter().find(|c| c.degree == sum);
            prop_assert!(target.is_some_and(|c| c.space.contains(&z)), "{}", case.name);
        }
    }
}
