//! The Weyl group of E6, its extension by the diagram flip, and their action
//! on the maximal torus.
//!
//! Elements are integer matrices in the basis of simple roots. Row `i` holds
//! the coordinates of the image of the `i`-th simple root, and the group is
//! listed in increasing lexicographic order of the 36 entries read row by row.
//! Indices are 1-based.

mod census;
mod torus;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use census::{CommutingCensus, Suborbits};
pub use torus::{norm_apply, norm_matrix, project_onto, solve_norm_equation, torus_action, IntSquare, TorusExp, TorusPoint, TorusSubgroup};

/// Rank of E6.
pub const RANK: usize = 6;

/// Cartan matrix with the branch node in second position.
pub const CARTAN: [[i64; RANK]; RANK] = [
    [2, 0, -1, 0, 0, 0],
    [0, 2, 0, -1, 0, 0],
    [-1, 0, 2, -1, 0, 0],
    [0, -1, -1, 2, -1, 0],
    [0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, -1, 2],
];

pub const WEYL_ORDER: usize = 51840;

/// Position of the identity in the lexicographic listing.
pub const IDENTITY_INDEX: u32 = 40843;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeylError {
    #[error("index {0} is outside 1..={WEYL_ORDER}")]
    IndexOutOfRange(u32),
    #[error("matrix is not an element of the extended Weyl group")]
    NotInGroup,
    #[error("unknown element name {0:?}")]
    UnknownName(String),
    #[error("lattice computation failed: {0}")]
    Lattice(#[from] crate::smith::LatticeError),
    #[error("field computation failed: {0}")]
    Field(#[from] crate::exactfield::FieldError),
    #[error("no torus point of order dividing {level} solves the equation")]
    NoTorusSolution { level: u32 },
}

/// An integer matrix on the root lattice, rows are images of simple roots.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootMatrix(pub [i8; RANK * RANK]);

impl RootMatrix {
    pub const IDENTITY: RootMatrix = {
        let mut m = [0i8; 36];
        let mut i = 0;
        while i < RANK {
            m[i * RANK + i] = 1;
            i += 1;
        }
        RootMatrix(m)
    };

    pub fn from_rows(rows: [[i64; RANK]; RANK]) -> RootMatrix {
        let mut m = [0i8; 36];
        for i in 0..RANK {
            for j in 0..RANK {
                m[i * RANK + j] = rows[i][j] as i8;
            }
        }
        RootMatrix(m)
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.0[i * RANK + j] as i64
    }

    pub fn rows(&self) -> [[i64; RANK]; RANK] {
        let mut r = [[0i64; RANK]; RANK];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.entry(i, j);
            }
        }
        r
    }

    /// Simple reflection `s_i`, 0-based: `α_j -> α_j - <α_j, α_i> α_i`.
    pub fn reflection(i: usize) -> RootMatrix {
        let mut m = RootMatrix::IDENTITY.0;
        for j in 0..RANK {
            m[j * RANK + i] -= CARTAN[j][i] as i8;
        }
        RootMatrix(m)
    }

    /// The diagram flip exchanging `α1, α6` and `α3, α5`.
    pub fn flip() -> RootMatrix {
        let perm = [5, 1, 4, 3, 2, 0];
        let mut m = [0i8; 36];
        for (i, &p) in perm.iter().enumerate() {
            m[i * RANK + p] = 1;
        }
        RootMatrix(m)
    }

    /// Matrix product; as maps on row vectors, `self` acts first.
    pub fn mul(&self, other: &RootMatrix) -> RootMatrix {
        let mut out = [0i8; 36];
        for i in 0..RANK {
            for j in 0..RANK {
                let mut s = 0i32;
                for k in 0..RANK {
                    s += self.0[i * RANK + k] as i32 * other.0[k * RANK + j] as i32;
                }
                out[i * RANK + j] = s as i8;
            }
        }
        RootMatrix(out)
    }

    pub fn transpose(&self) -> RootMatrix {
        let mut out = [0i8; 36];
        for i in 0..RANK {
            for j in 0..RANK {
                out[i * RANK + j] = self.0[j * RANK + i];
            }
        }
        RootMatrix(out)
    }

    pub fn is_identity(&self) -> bool {
        *self == RootMatrix::IDENTITY
    }

    /// Multiplicative order; every element of the extended group has order at most 12.
    pub fn order(&self) -> u32 {
        let mut p = *self;
        let mut n = 1;
        while !p.is_identity() {
            p = p.mul(self);
            n += 1;
            assert!(n <= 64, "matrix of infinite order");
        }
        n
    }

    pub fn inverse(&self) -> RootMatrix {
        let mut p = *self;
        let mut prev = RootMatrix::IDENTITY;
        while !p.is_identity() {
            prev = p;
            p = p.mul(self);
        }
        prev
    }

    pub fn pow(&self, e: u32) -> RootMatrix {
        (0..e).fold(RootMatrix::IDENTITY, |acc, _| acc.mul(self))
    }

    /// Image of a root given by simple-root coordinates.
    pub fn apply(&self, root: &[i64; RANK]) -> [i64; RANK] {
        let mut out = [0i64; RANK];
        for (i, &c) in root.iter().enumerate() {
            if c != 0 {
                for (j, o) in out.iter_mut().enumerate() {
                    *o += c * self.entry(i, j);
                }
            }
        }
        out
    }

    pub fn det(&self) -> i64 {
        let mut m: Vec<Vec<i64>> = self.rows().iter().map(|r| r.to_vec()).collect();
        let mut det = 1i64;
        for c in 0..RANK {
            let Some(p) = (c..RANK).find(|&r| m[r][c] != 0) else { return 0 };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            for r in c + 1..RANK {
                while m[r][c] != 0 {
                    let q = m[c][c] / m[r][c];
                    for k in c..RANK {
                        m[c][k] -= q * m[r][k];
                    }
                    m.swap(r, c);
                    det = -det;
                }
            }
            det *= m[c][c];
        }
        det
    }
}

impl fmt::Debug for RootMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows();
        f.debug_list().entries(rows.iter()).finish()
    }
}

/// 1-based position in the lexicographic listing of the Weyl group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct WeylIndex(pub u32);

/// An element of `W ∪ Wσ`: either `σ_i` or `σ·σ_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum VElement {
    Inner(WeylIndex),
    Outer(WeylIndex),
}

impl VElement {
    pub fn is_outer(&self) -> bool {
        matches!(self, VElement::Outer(_))
    }

    pub fn index(&self) -> u32 {
        match self {
            VElement::Inner(i) | VElement::Outer(i) => i.0,
        }
    }
}

impl fmt::Display for VElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VElement::Inner(i) => write!(f, "s{}", i.0),
            VElement::Outer(i) => write!(f, "ss{}", i.0),
        }
    }
}

/// Conjugacy class data for one class.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ClassInfo {
    pub representative: VElement,
    pub order: u32,
    pub size: usize,
}

/// Named outer classes, power-of-two orders.
pub const OUTER_NAMES: [(&str, u32); 10] = [
    ("eta1", IDENTITY_INDEX),
    ("eta2", 555),
    ("eta3", 458),
    ("eta4", 2402),
    ("eta5", 0),
    ("mu1", 15),
    ("mu2", 52),
    ("mu3", 460),
    ("mu4", 484),
    ("nu", 17),
];

/// The Weyl group together with its coset `Wσ`.
pub struct WeylGroup {
    elements: Vec<RootMatrix>,
    lookup: BTreeMap<RootMatrix, VElement>,
    flip: RootMatrix,
}

impl WeylGroup {
    /// Enumerates `W` from the six reflections and sorts it.
    pub fn build() -> WeylGroup {
        let gens: Vec<RootMatrix> = (0..RANK).map(RootMatrix::reflection).collect();
        let mut seen = BTreeSet::new();
        seen.insert(RootMatrix::IDENTITY);
        let mut stack = vec![RootMatrix::IDENTITY];
        while let Some(x) = stack.pop() {
            for g in &gens {
                let y = x.mul(g);
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        let elements: Vec<RootMatrix> = seen.into_iter().collect();
        WeylGroup::from_sorted(elements)
    }

    /// Wraps an already sorted listing, as read back from a cache.
    pub fn from_sorted(elements: Vec<RootMatrix>) -> WeylGroup {
        let flip = RootMatrix::flip();
        let mut lookup = BTreeMap::new();
        for (i, m) in elements.iter().enumerate() {
            let idx = WeylIndex(i as u32 + 1);
            lookup.insert(*m, VElement::Inner(idx));
            lookup.insert(flip.mul(m), VElement::Outer(idx));
        }
        WeylGroup { elements, lookup, flip }
    }

    /// Checks that a listing is the sorted Weyl group.
    pub fn validate(&self) -> bool {
        self.elements.len() == WEYL_ORDER
            && self.elements.windows(2).all(|w| w[0] < w[1])
            && self.elements[IDENTITY_INDEX as usize - 1].is_identity()
            && (0..RANK).all(|i| self.lookup.contains_key(&RootMatrix::reflection(i)))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[RootMatrix] {
        &self.elements
    }

    pub fn flip(&self) -> RootMatrix {
        self.flip
    }

    pub fn get(&self, index: u32) -> Result<RootMatrix, WeylError> {
        if index == 0 || index as usize > self.elements.len() {
            return Err(WeylError::IndexOutOfRange(index));
        }
        Ok(self.elements[index as usize - 1])
    }

    pub fn matrix(&self, v: VElement) -> RootMatrix {
        match v {
            VElement::Inner(i) => self.elements[i.0 as usize - 1],
            VElement::Outer(i) => self.flip.mul(&self.elements[i.0 as usize - 1]),
        }
    }

    pub fn locate(&self, m: &RootMatrix) -> Result<VElement, WeylError> {
        self.lookup.get(m).copied().ok_or(WeylError::NotInGroup)
    }

    /// Iterates over `W` followed by `Wσ`.
    pub fn all(&self) -> impl Iterator<Item = VElement> + '_ {
        let n = self.elements.len() as u32;
        (1..=n)
            .map(|i| VElement::Inner(WeylIndex(i)))
            .chain((1..=n).map(|i| VElement::Outer(WeylIndex(i))))
    }

    /// Resolves `123`, `s123`, `ss123`, `sigma`, `-id`, `eta1`…`eta5`, `mu1`…`mu4`, `nu`.
    pub fn parse_name(&self, name: &str) -> Result<VElement, WeylError> {
        let bad = || WeylError::UnknownName(String::from(name));
        let n = name.trim();
        if n == "sigma" || n == "σ" {
            return Ok(VElement::Outer(WeylIndex(IDENTITY_INDEX)));
        }
        if n == "-id" || n == "eta5" || n == "η5" {
            let mut neg = RootMatrix::IDENTITY;
            for x in neg.0.iter_mut() {
                *x = -*x;
            }
            return self.locate(&neg);
        }
        let n = n.replace('η', "eta").replace('μ', "mu");
        if let Some(&(_, idx)) = OUTER_NAMES.iter().find(|(k, _)| *k == n) {
            return Ok(VElement::Outer(WeylIndex(idx)));
        }
        let parse = |s: &str| -> Result<u32, WeylError> {
            let i: u32 = s.parse().map_err(|_| bad())?;
            self.get(i)?;
            Ok(i)
        };
        if let Some(rest) = n.strip_prefix("ss").or_else(|| n.strip_prefix("σσ")) {
            return Ok(VElement::Outer(WeylIndex(parse(rest)?)));
        }
        if let Some(rest) = n.strip_prefix('s').or_else(|| n.strip_prefix('σ')) {
            return Ok(VElement::Inner(WeylIndex(parse(rest)?)));
        }
        Ok(VElement::Inner(WeylIndex(parse(&n)?)))
    }

    pub fn order_of(&self, v: VElement) -> u32 {
        self.matrix(v).order()
    }

    pub fn compose(&self, a: VElement, b: VElement) -> VElement {
        self.locate(&self.matrix(a).mul(&self.matrix(b))).expect("group is closed")
    }

    /// `g x g^{-1}`.
    pub fn conjugate(&self, g: VElement, x: VElement) -> VElement {
        let gm = self.matrix(g);
        self.locate(&gm.mul(&self.matrix(x)).mul(&gm.inverse())).expect("group is closed")
    }

    fn conjugators(&self, extended: bool) -> Vec<RootMatrix> {
        let mut gens: Vec<RootMatrix> = (0..RANK).map(RootMatrix::reflection).collect();
        if extended {
            gens.push(self.flip);
        }
        gens
    }

    /// The class of `x` under conjugation by `W` (or by `W ∪ Wσ` when `extended`).
    pub fn orbit(&self, x: VElement, extended: bool) -> BTreeSet<VElement> {
        let gens = self.conjugators(extended);
        let start = self.matrix(x);
        let mut seen = BTreeSet::new();
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(m) = stack.pop() {
            for g in &gens {
                let y = g.mul(&m).mul(&g.inverse());
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen.iter().map(|m| self.locate(m).expect("group is closed")).collect()
    }

    /// Conjugacy classes of `W` (or of the outer coset when `outer`), each
    /// represented by its smallest index, ordered by that index.
    pub fn classes(&self, outer: bool) -> Vec<ClassInfo> {
        let mut assigned = BTreeSet::new();
        let mut out = Vec::new();
        for i in 1..=self.elements.len() as u32 {
            let v = if outer { VElement::Outer(WeylIndex(i)) } else { VElement::Inner(WeylIndex(i)) };
            if assigned.contains(&v) {
                continue;
            }
            let orb = self.orbit(v, true);
            let size = orb.len();
            assigned.extend(orb);
            out.push(ClassInfo { representative: v, order: self.order_of(v), size });
        }
        out
    }

    /// Maps every element to the smallest-index representative of its class.
    pub fn class_map(&self) -> BTreeMap<VElement, VElement> {
        let mut map = BTreeMap::new();
        for v in self.all() {
            if map.contains_key(&v) {
                continue;
            }
            for m in self.orbit(v, true) {
                map.insert(m, v);
            }
        }
        map
    }

    pub fn commutes(&self, a: VElement, b: VElement) -> bool {
        let (x, y) = (self.matrix(a), self.matrix(b));
        x.mul(&y) == y.mul(&x)
    }

    /// Elements of `W` commuting with `x` under conjugation, i.e. its centralizer in `W`.
    pub fn centralizer(&self, x: VElement) -> Vec<VElement> {
        let xm = self.matrix(x);
        self.elements
            .iter()
            .enumerate()
            .filter(|(_, m)| m.mul(&xm) == xm.mul(m))
            .map(|(i, _)| VElement::Inner(WeylIndex(i as u32 + 1)))
            .collect()
    }
}

/// Positive roots of E6 in simple-root coordinates, by height then lexicographically.
pub fn positive_roots() -> Vec<[i64; RANK]> {
    let mut roots: Vec<[i64; RANK]> = Vec::new();
    let mut layer: Vec<[i64; RANK]> = (0..RANK)
        .map(|i| {
            let mut r = [0; RANK];
            r[i] = 1;
            r
        })
        .collect();
    while !layer.is_empty() {
        layer.sort();
        roots.extend(layer.iter().copied());
        let mut next = BTreeSet::new();
        for r in &layer {
            for i in 0..RANK {
                let pairing: i64 = (0..RANK).map(|j| r[j] * CARTAN[j][i]).sum();
                let mut down = *r;
                down[i] -= 1;
                let mut p = 0;
                while down.iter().all(|&c| c >= 0) && down.iter().any(|&c| c > 0) && roots.contains(&down) {
                    p += 1;
                    down[i] -= 1;
                }
                if p - pairing > 0 {
                    let mut up = *r;
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        layer = next.into_iter().collect();
    }
    roots
}

/// `<a, b>` for roots in simple-root coordinates.
pub fn root_pairing(a: &[i64; RANK], b: &[i64; RANK]) -> i64 {
    let mut s = 0;
    for i in 0..RANK {
        for j in 0..RANK {
            s += a[i] * CARTAN[i][j] * b[j];
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflections_are_involutions() {
        for i in 0..RANK {
            let s = RootMatrix::reflection(i);
            assert!(s.mul(&s).is_identity());
            assert_eq!(s.det(), -1);
        }
        let s1 = RootMatrix::reflection(0);
        assert_eq!(s1.apply(&[1, 0, 0, 0, 0, 0]), [-1, 0, 0, 0, 0, 0]);
        assert_eq!(s1.apply(&[0, 0, 1, 0, 0, 0]), [1, 0, 1, 0, 0, 0]);
        assert_eq!(s1.apply(&[0, 1, 0, 0, 0, 0]), [0, 1, 0, 0, 0, 0]);
        let s13 = s1.mul(&RootMatrix::reflection(2));
        assert!(s13.pow(3).is_identity());
    }

    #[test]
    fn root_system() {
        let roots = positive_roots();
        assert_eq!(roots.len(), 36);
        assert_eq!(roots[35], [1, 2, 2, 3, 2, 1]);
        for r in &roots {
            assert_eq!(root_pairing(r, r), 2);
        }
    }
}
