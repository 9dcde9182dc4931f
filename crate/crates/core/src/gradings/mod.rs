//! Simultaneous diagonalization of quasitori and the invariants of the
//! resulting gradings.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

mod lifts;

pub use lifts::{lift_quasitorus, realize_pair, PairRealization};

use num_integer::Integer;

use crate::exactfield::{CycField, CycNum, FieldError, DEFAULT_LEVEL};
use crate::liecore::{check_commuting, AutoClass, LieAlgebra, LieError, ORDER_BOUND};
use crate::linalg::{LinMap, SparseVec, Subspace};
use crate::smith::{AbelianGroup, HermiteBasis, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GradingError {
    #[error("generator {0} does not have order {1} on the model")]
    WrongOrder(usize, u32),
    #[error("generator {0} does not preserve the torus weight spaces")]
    NotTorusEquivariant(usize),
    #[error("weight table has {found} rows, expected {expected}")]
    WeightShape { expected: usize, found: usize },
    #[error("bracket of components {0} and {1} leaves the expected component")]
    BracketIncompatible(usize, usize),
    #[error("Killing form pairs components {0} and {1} whose degrees do not cancel")]
    KillingNotOrthogonal(usize, usize),
    #[error("the order {0} does not divide the field level")]
    OrderNotSupported(u32),
    #[error("no commuting corrections found after {attempts} attempts; last commutator {commutator}")]
    SearchExhausted { attempts: u32, commutator: crate::weyl::TorusExp },
    #[error(transparent)]
    Weyl(#[from] crate::weyl::WeylError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A finite-order generator of a quasitorus.
#[derive(Debug, Clone)]
pub struct FiniteGenerator {
    pub name: String,
    pub map: LinMap,
    pub order: u32,
}

/// A quasitorus acting on a model: commuting finite-order maps together with
/// a torus acting diagonally on the model basis through integer weights.
#[derive(Debug, Clone)]
pub struct QuasitorusSpec {
    pub dim: usize,
    pub finite: Vec<FiniteGenerator>,
    pub torus_rank: usize,
    pub weights: Vec<Vec<i64>>,
}

impl QuasitorusSpec {
    pub fn finite_only(dim: usize, finite: Vec<FiniteGenerator>) -> Self {
        QuasitorusSpec { dim, finite, torus_rank: 0, weights: vec![Vec::new(); dim] }
    }

    pub fn with_torus(dim: usize, finite: Vec<FiniteGenerator>, weights: Vec<Vec<i64>>) -> Self {
        let torus_rank = weights.first().map_or(0, Vec::len);
        QuasitorusSpec { dim, finite, torus_rank, weights }
    }

    pub fn orders(&self) -> Vec<u32> {
        self.finite.iter().map(|g| g.order).collect()
    }
}

/// Degree of a homogeneous component: torus weight plus eigenvalue exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Degree {
    pub weight: Vec<i64>,
    pub chars: Vec<u32>,
}

impl Degree {
    pub fn is_identity(&self) -> bool {
        self.weight.iter().all(|&w| w == 0) && self.chars.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Degree, orders: &[u32]) -> Degree {
        Degree {
            weight: self.weight.iter().zip(&other.weight).map(|(a, b)| a + b).collect(),
            chars: self.chars.iter().zip(&other.chars).zip(orders).map(|((a, b), m)| (a + b) % m).collect(),
        }
    }

    pub fn neg(&self, orders: &[u32]) -> Degree {
        Degree {
            weight: self.weight.iter().map(|w| -w).collect(),
            chars: self.chars.iter().zip(orders).map(|(c, m)| (m - c) % m).collect(),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut first = true;
        for w in &self.weight {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
            first = false;
        }
        if !self.weight.is_empty() && !self.chars.is_empty() {
            write!(f, ";")?;
            first = true;
        }
        for c in &self.chars {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone)]
pub struct Component {
    pub degree: Degree,
    pub space: Subspace,
}

/// A decomposition of the model into homogeneous components.
#[derive(Debug, Clone)]
pub struct Grading {
    pub dim: usize,
    pub orders: Vec<u32>,
    pub components: Vec<Component>,
}

/// Numbers of components of each dimension, and the identity dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct GradingType {
    pub counts: Vec<usize>,
    pub identity_dim: usize,
}

impl GradingType {
    pub fn new(counts: &[usize], identity_dim: usize) -> Self {
        let mut counts = counts.to_vec();
        while counts.last() == Some(&0) {
            counts.pop();
        }
        GradingType { counts, identity_dim }
    }

    pub fn total_dim(&self) -> usize {
        self.counts.iter().enumerate().map(|(i, h)| (i + 1) * h).sum()
    }
}

impl fmt::Display for GradingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, h) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{h}")?;
        }
        write!(f, ")/{}", self.identity_dim)
    }
}

fn components_of_support(dim: usize, maps: &[&LinMap]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..dim).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for f in maps {
        for j in 0..dim {
            for i in f.column(j).support() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..dim {
        let r = find(&mut parent, x);
        groups.entry(r).or_default().push(x);
    }
    groups.into_values().collect()
}

/// Splits a space into the eigenspaces of a map of order dividing `order`.
fn eigen_split(f: &LinMap, order: u32, space: &[SparseVec]) -> Result<Vec<(u32, Subspace)>, GradingError> {
    if !DEFAULT_LEVEL.is_multiple_of(order) {
        return Err(GradingError::OrderNotSupported(order));
    }
    let field = CycField::standard();
    let step = (DEFAULT_LEVEL / order) as i64;
    let mut orbits: Vec<Vec<SparseVec>> = Vec::with_capacity(space.len());
    for v in space {
        let mut out = Vec::with_capacity(order as usize);
        let mut cur = v.clone();
        for _ in 0..order {
            out.push(cur.clone());
            cur = f.apply(&cur);
        }
        if &cur != v {
            return Err(GradingError::WrongOrder(0, order));
        }
        orbits.push(out);
    }
    let mut parts = Vec::new();
    let mut total = 0;
    for k in 0..order {
        let mut sub = Subspace::new();
        for orbit in &orbits {
            let mut acc = SparseVec::zero();
            for (j, x) in orbit.iter().enumerate() {
                let c: CycNum = field.zeta(-(k as i64) * (j as i64) * step);
                acc = acc.axpy(&c, x);
            }
            sub.insert(&acc);
        }
        if sub.dim() > 0 {
            total += sub.dim();
            parts.push((k, sub));
        }
    }
    if total != space.len() {
        return Err(GradingError::WrongOrder(0, order));
    }
    Ok(parts)
}

/// The grading induced by a quasitorus.
pub fn diagonalize(spec: &QuasitorusSpec) -> Result<Grading, GradingError> {
    if spec.weights.len() != spec.dim {
        return Err(GradingError::WeightShape { expected: spec.dim, found: spec.weights.len() });
    }
    let maps: Vec<LinMap> = spec.finite.iter().map(|g| g.map.clone()).collect();
    check_commuting(&maps)?;
    let refs: Vec<&LinMap> = maps.iter().collect();
    let orders = spec.orders();
    let mut components: BTreeMap<Degree, Subspace> = BTreeMap::new();
    for block in components_of_support(spec.dim, &refs) {
        let weight = spec.weights[block[0]].clone();
        if let Some(&bad) = block.iter().find(|&&i| spec.weights[i] != weight) {
            let gen = spec.finite.iter().position(|g| g.map.column(bad).support().any(|i| spec.weights[i] != spec.weights[bad]));
            return Err(GradingError::NotTorusEquivariant(gen.unwrap_or(0)));
        }
        let mut pieces: Vec<(Vec<u32>, Vec<SparseVec>)> = vec![(Vec::new(), block.iter().map(|&i| SparseVec::unit(i)).collect())];
        for (g, gen) in spec.finite.iter().enumerate() {
            let mut next = Vec::new();
            for (chars, basis) in pieces {
                let split = eigen_split(&gen.map, gen.order, &basis).map_err(|e| match e {
                    GradingError::WrongOrder(_, m) => GradingError::WrongOrder(g, m),
                    other => other,
                })?;
                for (k, sub) in split {
                    let mut c = chars.clone();
                    c.push(k);
                    next.push((c, sub.basis().to_vec()));
                }
            }
            pieces = next;
        }
        for (chars, basis) in pieces {
            let entry = components.entry(Degree { weight: weight.clone(), chars }).or_default();
            for v in &basis {
                entry.insert(v);
            }
        }
    }
    Ok(Grading {
        dim: spec.dim,
        orders,
        components: components.into_iter().map(|(degree, space)| Component { degree, space }).collect(),
    })
}

impl Grading {
    pub fn type_of(&self) -> GradingType {
        let max = self.components.iter().map(|c| c.space.dim()).max().unwrap_or(0);
        let mut counts = vec![0; max];
        for c in &self.components {
            counts[c.space.dim() - 1] += 1;
        }
        GradingType::new(&counts, self.identity_dim())
    }

    pub fn identity_dim(&self) -> usize {
        self.components.iter().find(|c| c.degree.is_identity()).map_or(0, |c| c.space.dim())
    }

    pub fn component_index(&self) -> BTreeMap<&Degree, usize> {
        self.components.iter().enumerate().map(|(i, c)| (&c.degree, i)).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.components.iter().map(|c| c.space.dim()).sum()
    }

    /// Whether the components span the model independently.
    pub fn is_direct_sum(&self) -> bool {
        let mut all = Subspace::new();
        let mut grown = 0;
        for c in &self.components {
            for v in c.space.basis() {
                if all.insert(v) {
                    grown += 1;
                }
            }
        }
        grown == self.dim && self.total_dim() == self.dim
    }

    /// Checks `[L_g, L_h] ⊆ L_{g+h}` and returns the relations `g + h = k`
    /// realized by nonzero brackets.
    pub fn bracket_relations(&self, algebra: &LieAlgebra) -> Result<Vec<(usize, usize, usize)>, GradingError> {
        let index = self.component_index();
        let mut relations = Vec::new();
        for (a, ca) in self.components.iter().enumerate() {
            for (b, cb) in self.components.iter().enumerate().skip(a) {
                let target = ca.degree.add(&cb.degree, &self.orders);
                let target_idx = index.get(&target).copied();
                let mut nonzero = false;
                for x in ca.space.basis() {
                    for y in cb.space.basis() {
                        let z = algebra.bracket(x, y);
                        if z.is_zero() {
                            continue;
                        }
                        match target_idx {
                            Some(t) if self.components[t].space.contains(&z) => nonzero = true,
                            _ => return Err(GradingError::BracketIncompatible(a, b)),
                        }
                    }
                }
                if nonzero {
                    relations.push((a, b, target_idx.expect("nonzero bracket has a target")));
                }
            }
        }
        Ok(relations)
    }

    /// Checks that the Killing form pairs `L_g` only with `L_{-g}`.
    pub fn check_killing_orthogonality(&self, killing: &[SparseVec]) -> Result<(), GradingError> {
        for (a, ca) in self.components.iter().enumerate() {
            let neg = ca.degree.neg(&self.orders);
            let images: Vec<SparseVec> = ca
                .space
                .basis()
                .iter()
                .map(|x| {
                    let mut acc = SparseVec::zero();
                    for (i, c) in x.entries() {
                        acc = acc.axpy(c, &killing[*i]);
                    }
                    acc
                })
                .collect();
            for (b, cb) in self.components.iter().enumerate().skip(a) {
                if cb.degree == neg {
                    continue;
                }
                for kx in &images {
                    for y in cb.space.basis() {
                        if !kx.dot(y).is_zero() {
                            return Err(GradingError::KillingNotOrthogonal(a, b));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The universal group: free abelian group on the support modulo the
    /// relations coming from nonzero brackets.
    pub fn universal_group(&self, algebra: &LieAlgebra) -> Result<AbelianGroup, GradingError> {
        let relations = self.bracket_relations(algebra)?;
        let n = self.components.len();
        let mut lattice = HermiteBasis::new(n);
        if let Some(e) = self.components.iter().position(|c| c.degree.is_identity()) {
            let mut row = vec![0i64; n];
            row[e] = 1;
            lattice.insert(&row);
        }
        for (a, b, c) in relations {
            let mut row = vec![0i64; n];
            row[a] += 1;
            row[b] += 1;
            row[c] -= 1;
            lattice.insert(&row);
        }
        Ok(lattice.quotient())
    }

    /// Classes of all nonidentity elements of the finite group generated by the
    /// finite generators, computed from their eigenvalues on the components.
    pub fn census(&self) -> BTreeMap<AutoClass, usize> {
        let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
        let mut out = BTreeMap::new();
        let total: u64 = self.orders.iter().map(|&m| m as u64).product();
        let lcm = self.orders.iter().fold(1u64, |acc, &m| acc.lcm(&(m as u64)));
        for code in 1..total {
            let mut rest = code;
            let exps: Vec<u64> = self
                .orders
                .iter()
                .map(|&m| {
                    let e = rest % m as u64;
                    rest /= m as u64;
                    e
                })
                .collect();
            let values: Vec<u64> = self
                .components
                .iter()
                .map(|c| c.degree.chars.iter().zip(&exps).zip(&self.orders).map(|((&ch, &e), &m)| ch as u64 * e * (lcm / m as u64)).sum::<u64>() % lcm)
                .collect();
            if values.iter().all(|&v| v == 0) || !seen.insert(values.clone()) {
                continue;
            }
            let order = values.iter().fold(1u64, |acc, &v| acc.lcm(&(lcm / v.gcd(&lcm))));
            let fixed: usize = self.components.iter().zip(&values).filter(|(_, &v)| v == 0).map(|(c, _)| c.space.dim()).sum();
            let order = u32::try_from(order).ok().filter(|&o| o <= ORDER_BOUND);
            *out.entry(AutoClass::from_invariants(order, fixed)).or_insert(0) += 1;
        }
        out
    }

    /// Merges components that agree on the torus weight and on the chosen finite characters.
    pub fn coarsen(&self, keep: &[usize]) -> BTreeMap<Degree, usize> {
        let mut out = BTreeMap::new();
        for c in &self.components {
            let d = Degree { weight: c.degree.weight.clone(), chars: keep.iter().map(|&k| c.degree.chars[k]).collect() };
            *out.entry(d).or_insert(0) += c.space.dim();
        }
        out
    }
}

/// Renders a census as `C^6 D^2`-style text, omitting the `3`/`2` prefix.
pub fn census_signature(census: &BTreeMap<AutoClass, usize>) -> String {
    let mut parts = Vec::new();
    for (class, n) in census {
        let name = match class {
            AutoClass::Labeled(s) => String::from(&s[1..]),
            other => other.label(),
        };
        parts.push(if *n == 1 { name } else { alloc::format!("{name}^{n}") });
    }
    parts.join(" ")
}
