//! Commuting-element censuses, checked against an independent model of the
//! Weyl group as permutations of the 72 roots.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::OnceLock;

use e6core::weyl::{RootMatrix, VElement, WeylGroup, WeylIndex, RANK};

struct Fixture {
    group: WeylGroup,
    classes: BTreeMap<VElement, VElement>,
}

fn fixture() -> &'static Fixture {
    static FIXTURE: OnceLock<Fixture> = OnceLock::new();
    FIXTURE.get_or_init(|| {
        let group = WeylGroup::build();
        let classes = group.class_map();
        Fixture { group, classes }
    })
}

fn inner(i: u32) -> VElement {
    VElement::Inner(WeylIndex(i))
}

type Perm = Vec<u8>;

/// The Weyl group and its extension by the diagram flip, built from scratch as
/// permutations of the root system.
struct RootPermutations {
    roots: Vec<[i64; RANK]>,
    inner: Vec<Perm>,
    outer: Vec<Perm>,
}

impl RootPermutations {
    fn build() -> RootPermutations {
        let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)];
        let mut cartan = [[0i64; RANK]; RANK];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(a, b) in &edges {
            cartan[a][b] = -1;
            cartan[b][a] = -1;
        }
        let reflect = |r: &[i64; RANK], i: usize| {
            let pairing: i64 = (0..RANK).map(|j| r[j] * cartan[j][i]).sum();
            let mut out = *r;
            out[i] -= pairing;
            out
        };
        let mut roots: BTreeSet<[i64; RANK]> = (0..RANK)
            .map(|i| {
                let mut e = [0; RANK];
                e[i] = 1;
                e
            })
            .collect();
        loop {
            let next: BTreeSet<_> = roots.iter().flat_map(|r| (0..RANK).map(move |i| reflect(r, i))).collect();
            let grown: BTreeSet<_> = roots.union(&next).copied().collect();
            if grown.len() == roots.len() {
                break;
            }
            roots = grown;
        }
        let roots: Vec<_> = roots.into_iter().collect();
        assert_eq!(roots.len(), 72);
        let position = |r: &[i64; RANK]| roots.iter().position(|x| x == r).unwrap() as u8;
        let gens: Vec<Perm> = (0..RANK).map(|i| roots.iter().map(|r| position(&reflect(r, i))).collect()).collect();
        let flip_coords = [5, 1, 4, 3, 2, 0];
        let flip: Perm = roots
            .iter()
            .map(|r| {
                let mut out = [0; RANK];
                for (i, &p) in flip_coords.iter().enumerate() {
                    out[p] = r[i];
                }
                position(&out)
            })
            .collect();
        let identity: Perm = (0..72).collect();
        let mut seen: HashSet<Perm> = HashSet::from([identity.clone()]);
        let mut frontier = vec![identity];
        while let Some(p) = frontier.pop() {
            for g in &gens {
                let q = compose(&p, g);
                if seen.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        let inner: Vec<Perm> = seen.into_iter().collect();
        let outer = inner.iter().map(|p| compose(p, &flip)).collect();
        RootPermutations { roots, inner, outer }
    }

    fn of_matrix(&self, m: &RootMatrix) -> Perm {
        self.roots.iter().map(|r| self.roots.iter().position(|x| *x == m.apply(r)).unwrap() as u8).collect()
    }
}

fn oracle() -> &'static RootPermutations {
    static ORACLE: OnceLock<RootPermutations> = OnceLock::new();
    ORACLE.get_or_init(RootPermutations::build)
}

/// `p` then `q`.
fn compose(p: &Perm, q: &Perm) -> Perm {
    p.iter().map(|&i| q[i as usize]).collect()
}

fn inverse(p: &Perm) -> Perm {
    let mut out = vec![0u8; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j as usize] = i as u8;
    }
    out
}

fn order(p: &Perm) -> u32 {
    let mut q = p.clone();
    let mut n = 1;
    while q.iter().enumerate().any(|(i, &j)| i != j as usize) {
        q = compose(&q, p);
        n += 1;
    }
    n
}

fn commute(p: &Perm, q: &Perm) -> bool {
    compose(p, q) == compose(q, p)
}

fn class_in_w(x: &Perm) -> HashSet<Perm> {
    oracle().inner.iter().map(|g| compose(&compose(&inverse(g), x), g)).collect()
}

#[test]
fn oracle_group_matches_the_listing() {
    let o = oracle();
    let g = &fixture().group;
    assert_eq!(o.inner.len(), 51840);
    let perms: HashSet<Perm> = o.inner.iter().cloned().collect();
    for m in g.elements().iter().step_by(97) {
        assert!(perms.contains(&o.of_matrix(m)));
    }
    let outer: HashSet<Perm> = o.outer.iter().cloned().collect();
    for name in ["eta1", "eta2", "eta3", "eta4", "eta5", "mu4"] {
        assert!(outer.contains(&o.of_matrix(&g.matrix(g.parse_name(name).unwrap()))), "{name}");
    }
}

#[test]
fn involutions_commuting_with_sigma96_agree_with_the_oracle() {
    let f = fixture();
    let census = f.group.commuting_census(inner(96), 2, &f.classes);
    let x = oracle().of_matrix(&f.group.matrix(inner(96)));
    let independent = oracle().inner.iter().filter(|p| order(p) == 2 && commute(p, &x)).count();
    assert_eq!(census.total(), independent);
    assert_eq!(independent, 139);
    assert_eq!(
        census.by_class,
        vec![(inner(19), 30), (inner(21), 84), (inner(96), 13), (inner(11323), 12)]
    );
}

#[test]
fn sigma96_has_thirteen_commuting_conjugates_whose_products_leave_the_class() {
    let f = fixture();
    let census = f.group.commuting_census(inner(96), 2, &f.classes);
    let in_class: Vec<VElement> = census.elements.iter().copied().filter(|v| f.classes[v] == inner(96)).collect();
    assert_eq!(in_class.len(), 13);
    assert!(in_class.contains(&inner(96)));
    for y in in_class.iter().filter(|&&y| y != inner(96)) {
        assert_ne!(f.classes[&f.group.compose(inner(96), *y)], inner(96), "product with {y:?}");
    }
    let x = oracle().of_matrix(&f.group.matrix(inner(96)));
    let independent = class_in_w(&x).iter().filter(|p| commute(p, &x)).count();
    assert_eq!(independent, 13);
}

#[test]
fn order_three_elements_commuting_with_sigma292() {
    let f = fixture();
    let census = f.group.commuting_census(inner(292), 3, &f.classes);
    assert_eq!(census.total(), 26);
    assert_eq!(census.count_in(inner(3819)), 8);
    assert_eq!(census.count_in(inner(292)), 12);
    assert_eq!(census.count_in(inner(4079)), 6);
    let x = oracle().of_matrix(&f.group.matrix(inner(292)));
    assert_eq!(oracle().inner.iter().filter(|p| order(p) == 3 && commute(p, &x)).count(), 26);
}

/// Suborbit sizes of the σ96-class elements commuting with an outer element,
/// recomputed in the permutation model.
fn oracle_suborbit_sizes(target: &Perm, class_rep: &Perm) -> Vec<usize> {
    let members: Vec<Perm> = class_in_w(class_rep).into_iter().filter(|p| commute(p, target)).collect();
    let centralizer: Vec<&Perm> = oracle().inner.iter().filter(|g| commute(g, target)).collect();
    let mut left: HashSet<Perm> = members.into_iter().collect();
    let mut sizes = Vec::new();
    while let Some(start) = left.iter().next().cloned() {
        let orbit: HashSet<Perm> = centralizer.iter().map(|g| compose(&compose(&inverse(g), &start), g)).collect();
        left.retain(|p| !orbit.contains(p));
        sizes.push(orbit.len());
    }
    sizes.sort_unstable();
    sizes
}

fn check_suborbits(name: &str, total: usize, groups: &[&[u32]], sizes: &[usize]) {
    let g = &fixture().group;
    let target = g.parse_name(name).unwrap();
    let sub = g.suborbits(target, inner(96));
    assert_eq!(sub.total(), total, "{name}");
    assert_eq!(sub.orbits.len(), sizes.len(), "{name}");
    for group in groups {
        let ids: BTreeSet<usize> = group.iter().map(|&i| sub.orbit_of(inner(i)).expect("member commutes")).collect();
        assert_eq!(ids.len(), 1, "{name}: {group:?} lie in one suborbit");
    }
    let mut computed: Vec<usize> = sub.orbits.iter().map(Vec::len).collect();
    computed.sort_unstable();
    assert_eq!(computed, sizes, "{name}");
    let o = oracle();
    assert_eq!(oracle_suborbit_sizes(&o.of_matrix(&g.matrix(target)), &o.of_matrix(&g.matrix(inner(96)))), sizes, "{name} oracle");
}

#[test]
fn eta4_has_fifteen_in_one_suborbit() {
    check_suborbits("eta4", 15, &[], &[15]);
}

#[test]
fn eta2_splits_off_11127() {
    check_suborbits("eta2", 7, &[&[11127], &[11104]], &[1, 6]);
    let g = &fixture().group;
    let sub = g.suborbits(g.parse_name("eta2").unwrap(), inner(96));
    assert_ne!(sub.orbit_of(inner(11127)), sub.orbit_of(inner(11104)));
}

#[test]
fn eta1_splits_off_25470() {
    check_suborbits("eta1", 13, &[&[25470], &[2416]], &[1, 12]);
    let g = &fixture().group;
    let sub = g.suborbits(g.parse_name("eta1").unwrap(), inner(96));
    assert_ne!(sub.orbit_of(inner(25470)), sub.orbit_of(inner(2416)));
}

#[test]
fn eta3_splits_two_and_three() {
    check_suborbits("eta3", 5, &[&[10850, 11104], &[11127, 23234, 28154]], &[2, 3]);
}
