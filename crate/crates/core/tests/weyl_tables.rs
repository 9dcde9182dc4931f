//! The Weyl group listing, its class table and the torus stabilizers of the
//! class representatives.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use e6core::smith::AbelianGroup;
use e6core::weyl::{
    positive_roots, torus_action, RootMatrix, TorusExp, TorusSubgroup, VElement, WeylGroup, WeylIndex, IDENTITY_INDEX, RANK, WEYL_ORDER,
};
use proptest::prelude::*;

fn group() -> &'static WeylGroup {
    static GROUP: OnceLock<WeylGroup> = OnceLock::new();
    GROUP.get_or_init(WeylGroup::build)
}

/// Inner class table: representative index, element order, class size, stabilizer.
const INNER_TABLE: [(u32, u32, usize, &str); 25] = [
    (40843, 1, 1, "(F*)^6"),
    (19, 2, 270, "(F*)^4"),
    (21, 2, 540, "(F*)^3"),
    (96, 2, 45, "(F*)^2 x Z2^2"),
    (11323, 2, 36, "(F*)^5"),
    (2, 4, 3240, "(F*)^2"),
    (20, 4, 1620, "(F*)^3"),
    (75, 4, 540, "F* x Z2^2"),
    (140, 4, 540, "(F*)^2"),
    (1, 8, 6480, "F*"),
    (292, 3, 480, "(F*)^2 x Z3"),
    (3819, 3, 80, "Z3^3"),
    (4079, 3, 240, "(F*)^4"),
    (5, 6, 1440, "(F*)^3"),
    (15, 6, 2160, "(F*)^2"),
    (22, 6, 1440, "(F*)^2"),
    (122, 6, 4320, "F* x Z3"),
    (124, 6, 720, "Z3"),
    (195, 6, 1440, "Z3 x Z2^2"),
    (435, 6, 1440, "F* x Z3"),
    (121, 9, 5760, "Z3"),
    (4, 12, 4320, "F*"),
    (218, 12, 4320, "Z3"),
    (3, 5, 5184, "(F*)^2"),
    (135, 10, 5184, "F*"),
];

/// Outer representatives of 2-power order: name, order, stabilizer.
const OUTER_TABLE: [(&str, u32, &str); 10] = [
    ("eta1", 2, "(F*)^4"),
    ("eta2", 2, "(F*)^3"),
    ("eta3", 2, "(F*)^2 x Z2^2"),
    ("eta4", 2, "F* x Z2^4"),
    ("eta5", 2, "Z2^6"),
    ("mu1", 4, "(F*)^2"),
    ("mu2", 4, "(F*)^3"),
    ("mu3", 4, "F* x Z2^2"),
    ("mu4", 4, "Z4^2"),
    ("nu", 8, "F*"),
];

fn inner(i: u32) -> VElement {
    VElement::Inner(WeylIndex(i))
}

fn stabilizer(v: VElement) -> AbelianGroup {
    TorusSubgroup::fixed_by(&group().matrix(v), 36).unwrap().shape
}

#[test]
fn listing_has_the_right_size_and_identity_position() {
    let g = group();
    assert_eq!(g.len(), WEYL_ORDER);
    assert_eq!(WEYL_ORDER, 51840);
    assert!(g.get(IDENTITY_INDEX).unwrap().is_identity());
    assert_eq!(IDENTITY_INDEX, 40843);
    assert!(g.validate());
    assert!(g.get(0).is_err());
    assert!(g.get(51841).is_err());
}

#[test]
fn every_element_has_determinant_one_or_minus_one() {
    let g = group();
    let dets: BTreeMap<i64, usize> = g.elements().iter().fold(BTreeMap::new(), |mut m, e| {
        *m.entry(e.det()).or_default() += 1;
        m
    });
    assert_eq!(dets, BTreeMap::from([(-1, 25920), (1, 25920)]));
}

#[test]
fn class_table_matches_representatives_orders_and_sizes() {
    let g = group();
    let classes = g.classes(false);
    let computed: BTreeMap<u32, (u32, usize)> = classes.iter().map(|c| (c.representative.index(), (c.order, c.size))).collect();
    assert_eq!(classes.len(), 25);
    let mut reps: BTreeMap<u32, u32> = BTreeMap::new();
    for &(rep, order, size, _) in &INNER_TABLE {
        let class = g.orbit(inner(rep), true);
        assert_eq!(class.len(), size, "class of {rep}");
        assert_eq!(g.order_of(inner(rep)), order, "order of {rep}");
        let smallest = class.iter().next().unwrap().index();
        reps.insert(smallest, rep);
        assert_eq!(computed[&smallest], (order, size));
    }
    assert_eq!(reps.len(), 25, "the table representatives lie in distinct classes");
    assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), WEYL_ORDER);
}

#[test]
fn order_two_three_and_five_class_sizes() {
    let g = group();
    let sizes = |order: u32| -> Vec<usize> {
        let mut s: Vec<usize> = g.classes(false).iter().filter(|c| c.order == order).map(|c| c.size).collect();
        s.sort_unstable();
        s
    };
    assert_eq!(sizes(2), vec![36, 45, 270, 540]);
    assert_eq!(sizes(3), vec![80, 240, 480]);
    assert_eq!(sizes(5), vec![5184]);
}

#[test]
fn inner_stabilizers_match_the_table() {
    for &(rep, _, _, shape) in &INNER_TABLE {
        assert_eq!(stabilizer(inner(rep)), AbelianGroup::parse(shape).unwrap(), "stabilizer of {rep}");
    }
}

#[test]
fn outer_stabilizers_match_the_table() {
    let g = group();
    for &(name, order, shape) in &OUTER_TABLE {
        let v = g.parse_name(name).unwrap();
        assert!(v.is_outer());
        assert_eq!(g.order_of(v), order, "order of {name}");
        assert_eq!(stabilizer(v), AbelianGroup::parse(shape).unwrap(), "stabilizer of {name}");
    }
}

#[test]
fn outer_coset_has_ten_two_power_classes() {
    let g = group();
    let outer = g.classes(true);
    let two_power: Vec<_> = outer.iter().filter(|c| c.order.is_power_of_two()).collect();
    assert_eq!(two_power.len(), 10);
    assert_eq!(outer.iter().map(|c| c.size).sum::<usize>(), WEYL_ORDER);
    for &(name, _, _) in &OUTER_TABLE {
        let v = g.parse_name(name).unwrap();
        let class = g.orbit(v, true);
        assert!(two_power.iter().any(|c| class.contains(&c.representative)), "{name} represents a listed class");
    }
}

/// Explicit stabilizer parametrizations, written as exponent vectors over
/// cube and square roots of unity, must be fixed pointwise.
#[test]
fn explicit_parametrizations_are_fixed() {
    let g = group();
    let m3819 = g.matrix(inner(3819));
    for (x, y, z) in (0..27).map(|k| (12 * (k % 3), 12 * (k / 3 % 3), 12 * (k / 9))) {
        let t = TorusExp::new(36, [x, y, z, y, 2 * y + z, x + 2 * y]);
        assert_eq!(t.act(&m3819), t);
    }
    let m96 = g.matrix(inner(96));
    for (x, y, u, v) in [(1, 2, 0, 18), (5, 7, 18, 0), (3, 11, 18, 18)] {
        let t = TorusExp::new(36, [x, y, -x - y, u, v, u]);
        assert_eq!(t.act(&m96), t);
    }
    let mu4 = g.matrix(g.parse_name("mu4").unwrap());
    for (x, y) in (0..16).map(|k| (9 * (k % 4), 9 * (k / 4))) {
        let t = TorusExp::new(36, [x, y, x, x, x + y, 2 * x]);
        assert_eq!(t.act(&mu4), t);
    }
}

#[test]
fn fixed_points_inside_the_twisted_image() {
    let g = group();
    let shape = |i: u32| TorusSubgroup::fixed_in_image(&g.matrix(inner(i)), 36).unwrap().shape;
    assert_eq!(shape(292), AbelianGroup::parse("Z3^2").unwrap());
    assert_eq!(shape(96), AbelianGroup::parse("Z2^4").unwrap());
}

#[test]
fn names_resolve() {
    let g = group();
    assert_eq!(g.parse_name("sigma").unwrap(), g.parse_name("eta1").unwrap());
    assert_eq!(g.parse_name("s96").unwrap(), inner(96));
    assert_eq!(g.parse_name("ss484").unwrap(), g.parse_name("mu4").unwrap());
    let minus = g.matrix(g.parse_name("-id").unwrap());
    assert!(minus.mul(&minus).is_identity());
    assert!(g.parse_name("eta9").is_err());
    assert!(g.parse_name("99999").is_err());
}

fn roots_with_negatives() -> Vec<[i64; RANK]> {
    let pos = positive_roots();
    pos.iter().copied().chain(pos.iter().map(|r| r.map(|c| -c))).collect()
}

fn index() -> impl Strategy<Value = u32> {
    1u32..=WEYL_ORDER as u32
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn torus_action_composes(a in index(), b in index(), exps in prop::array::uniform6(0i64..36)) {
        let g = group();
        let (ma, mb) = (g.get(a).unwrap(), g.get(b).unwrap());
        let t = TorusExp::new(36, exps);
        prop_assert_eq!(t.act(&ma).act(&mb), t.act(&ma.mul(&mb)));
    }

    #[test]
    fn torus_action_permutes_root_characters(a in index()) {
        let w = group().get(a).unwrap();
        let action = torus_action(&w);
        let roots = roots_with_negatives();
        let mut images: Vec<[i64; RANK]> = roots
            .iter()
            .map(|r| {
                let mut out = [0i64; RANK];
                for (j, o) in out.iter_mut().enumerate() {
                    *o = (0..RANK).map(|i| r[i] * action[i][j]).sum();
                }
                out
            })
            .collect();
        images.sort_unstable();
        let mut expected = roots.clone();
        expected.sort_unstable();
        prop_assert_eq!(images, expected);
    }

    #[test]
    fn conjugation_preserves_order_and_stabilizer(g_idx in index(), x_idx in index()) {
        let g = group();
        let y = g.conjugate(inner(g_idx), inner(x_idx));
        prop_assert_eq!(g.order_of(y), g.order_of(inner(x_idx)));
        prop_assert_eq!(stabilizer(y), stabilizer(inner(x_idx)));
    }
}

#[test]
fn reflections_generate_a_group_of_the_right_order() {
    let mut seen = std::collections::BTreeSet::from([RootMatrix::IDENTITY]);
    let mut frontier = vec![RootMatrix::IDENTITY];
    while let Some(m) = frontier.pop() {
        for i in 0..RANK {
            let next = m.mul(&RootMatrix::reflection(i));
            if seen.insert(next) {
                frontier.push(next);
            }
        }
    }
    assert_eq!(seen.len(), WEYL_ORDER);
    assert!(seen.iter().eq(group().elements().iter().collect::<std::collections::BTreeSet<_>>().into_iter()));
}
