//! Counting elements that commute with a reference element.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{VElement, WeylGroup};

/// Elements of `W` of a given order commuting with a reference element,
/// tallied by conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CommutingCensus {
    pub reference: VElement,
    pub order: u32,
    pub elements: Vec<VElement>,
    /// `(class representative, count)` in increasing representative order.
    pub by_class: Vec<(VElement, usize)>,
}

impl CommutingCensus {
    pub fn total(&self) -> usize {
        self.elements.len()
    }

    pub fn count_in(&self, class: VElement) -> usize {
        self.by_class.iter().find(|(c, _)| *c == class).map_or(0, |(_, n)| *n)
    }
}

/// Elements of one conjugacy class commuting with a target, split into orbits
/// under conjugation by the centralizer of the target in `W`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Suborbits {
    pub target: VElement,
    pub class: VElement,
    pub orbits: Vec<Vec<VElement>>,
}

impl Suborbits {
    pub fn total(&self) -> usize {
        self.orbits.iter().map(Vec::len).sum()
    }

    /// Index of the suborbit containing `x`.
    pub fn orbit_of(&self, x: VElement) -> Option<usize> {
        self.orbits.iter().position(|o| o.contains(&x))
    }
}

impl WeylGroup {
    /// All `y ∈ W` with `y` of the given order commuting with `x`.
    pub fn commuting_census(&self, x: VElement, order: u32, classes: &BTreeMap<VElement, VElement>) -> CommutingCensus {
        let xm = self.matrix(x);
        let mut elements = Vec::new();
        let mut tally: BTreeMap<VElement, usize> = BTreeMap::new();
        for (i, m) in self.elements().iter().enumerate() {
            if m.mul(&xm) != xm.mul(m) || m.order() != order {
                continue;
            }
            let v = VElement::Inner(super::WeylIndex(i as u32 + 1));
            *tally.entry(classes[&v]).or_default() += 1;
            elements.push(v);
        }
        CommutingCensus { reference: x, order, elements, by_class: tally.into_iter().collect() }
    }

    /// Members of the class of `class_rep` commuting with `target`, split
    /// into orbits under the centralizer of `target` in `W`.
    pub fn suborbits(&self, target: VElement, class_rep: VElement) -> Suborbits {
        let tm = self.matrix(target);
        let members: Vec<VElement> = self
            .orbit(class_rep, true)
            .into_iter()
            .filter(|&v| {
                let m = self.matrix(v);
                m.mul(&tm) == tm.mul(&m)
            })
            .collect();
        let cent: Vec<_> = self.centralizer(target).into_iter().map(|c| self.matrix(c)).collect();
        let mut left: BTreeSet<VElement> = members.iter().copied().collect();
        let mut orbits = Vec::new();
        while let Some(&start) = left.iter().next() {
            let sm = self.matrix(start);
            let orbit: BTreeSet<VElement> = cent
                .iter()
                .map(|g| self.locate(&g.mul(&sm).mul(&g.inverse())).expect("group is closed"))
                .collect();
            for o in &orbit {
                left.remove(o);
            }
            orbits.push(orbit.into_iter().collect());
        }
        Suborbits { target, class: class_rep, orbits }
    }
}
