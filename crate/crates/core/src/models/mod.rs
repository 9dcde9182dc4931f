//! Concrete realizations of e6 carrying named automorphisms.
//!
//! Every model is an [`ActionModel`]: a 78-dimensional space split into
//! labeled summands, the first few of which form a reductive Lie algebra
//! acting on the rest. Models with a full bracket carry the complete e6
//! structure table; action-only models carry the semidirect product of the
//! Lie part with its module, so that automorphism checks on them amount to
//! equivariance.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

pub mod a5a1;
pub mod adams;
pub mod albert;
pub mod c4;
mod matrix;
pub mod q14;
mod solve;

pub use matrix::{direct_sum, matrix_map, sort_with_sign, tensor_maps, ExteriorPower, Matrix, SlBasis, SymmetricSquare};
pub use solve::{equivariant_maps, linear_extension, solve_scalars, BilinearMap, Rep};

use crate::gradings::FiniteGenerator;
use crate::liecore::{LieAlgebra, LieError, ORDER_BOUND};
use crate::linalg::{LinMap, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("the {0} model carries no e6 bracket; use a full-bracket realization")]
    ActionOnly(&'static str),
    #[error("the bracket ansatz has no consistent scalars: {0}")]
    Unsolvable(String),
    #[error("the bracket ansatz leaves {0} free scalars")]
    Underdetermined(usize),
    #[error("equivariant map space has dimension {found}, expected {expected}")]
    EquivariantDimension { expected: usize, found: usize },
    #[error("the prescribed action does not extend to a linear map: {0}")]
    NoExtension(String),
    #[error("matrix does not preserve the declared form: {0}")]
    NotSymplectic(String),
    #[error("{0} needs a determinant condition that fails: {1}")]
    Determinant(String, String),
    #[error("unknown automorphism {0}")]
    UnknownAutomorphism(String),
    #[error("{name}: {source}")]
    Automorphism { name: String, source: LieError },
    #[error("order of {0} exceeds the search bound")]
    OrderUnbounded(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// A labeled block of consecutive basis vectors.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Summand {
    pub name: String,
    pub start: usize,
    pub dim: usize,
}

impl Summand {
    pub fn new(name: &str, start: usize, dim: usize) -> Summand {
        Summand { name: name.into(), start, dim }
    }

    pub fn range(&self) -> Range<usize> {
        self.start..self.start + self.dim
    }
}

/// How a summand is recovered from two others: `target = [left, right]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpanRule {
    pub target: usize,
    pub left: usize,
    pub right: usize,
}

/// A model of e6, or of a reductive algebra together with a module.
#[derive(Debug, Clone)]
pub struct ActionModel {
    name: &'static str,
    algebra: LieAlgebra,
    summands: Vec<Summand>,
    lie_summands: usize,
    full_bracket: bool,
    span_rules: Vec<SpanRule>,
}

impl ActionModel {
    pub fn new(name: &'static str, algebra: LieAlgebra, summands: Vec<Summand>, lie_summands: usize, full_bracket: bool) -> ActionModel {
        ActionModel { name, algebra, summands, lie_summands, full_bracket, span_rules: Vec::new() }
    }

    /// Records how summands are generated by brackets, used by [`ActionModel::extend`].
    pub fn with_span_rules(mut self, rules: Vec<SpanRule>) -> ActionModel {
        self.span_rules = rules;
        self
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn summand(&self, name: &str) -> Option<&Summand> {
        self.summands.iter().find(|s| s.name == name)
    }

    /// Dimension of the Lie part.
    pub fn lie_dim(&self) -> usize {
        self.summands[..self.lie_summands].iter().map(|s| s.dim).sum()
    }

    pub fn has_full_bracket(&self) -> bool {
        self.full_bracket
    }

    /// The structure table: the e6 bracket, or the semidirect product for action-only models.
    pub fn structure(&self) -> &LieAlgebra {
        &self.algebra
    }

    /// The e6 bracket, when the model has one.
    pub fn bracket_algebra(&self) -> Result<&LieAlgebra, ModelError> {
        if self.full_bracket {
            Ok(&self.algebra)
        } else {
            Err(ModelError::ActionOnly(self.name))
        }
    }

    /// Exhaustive Jacobi check. On action-only models this is the module axiom
    /// `[g,h]·x = g·(h·x) − h·(g·x)` together with the Jacobi identity of the Lie part.
    pub fn check_structure(&self) -> Result<(), ModelError> {
        Ok(self.algebra.check_jacobi()?)
    }

    /// Bracket automorphism on full models, Lie-part equivariance on action-only ones.
    pub fn check_automorphism(&self, auto: &NamedAutomorphism) -> Result<(), ModelError> {
        self.algebra.check_automorphism(&auto.map).map_err(|source| ModelError::Automorphism { name: auto.name.clone(), source })
    }

    /// The unique linear map agreeing with `seed` on the generating summand and
    /// compatible with the bracket, following the recorded span rules.
    /// `seed` gives the images of the basis vectors of summand `generator`.
    pub fn extend(&self, generator: usize, seed: &[SparseVec]) -> Result<LinMap, ModelError> {
        let n = self.dim();
        let mut cols: Vec<Option<SparseVec>> = alloc::vec![None; n];
        for (k, v) in self.summands[generator].range().zip(seed) {
            cols[k] = Some(v.clone());
        }
        for rule in &self.span_rules {
            let left = self.summands[rule.left].range();
            let right = self.summands[rule.right].range();
            let target = &self.summands[rule.target];
            let mut samples = Vec::new();
            for i in left.clone() {
                for j in right.clone() {
                    let z = self.algebra.basis_bracket(i, j);
                    if z.is_zero() {
                        continue;
                    }
                    let (Some(fi), Some(fj)) = (&cols[i], &cols[j]) else {
                        return Err(ModelError::NoExtension(format!("{} is needed before it is known", target.name)));
                    };
                    samples.push((z.remap(|k| k - target.start), self.algebra.bracket(fi, fj)));
                }
            }
            let part = linear_extension(target.dim, &samples).map_err(|e| match e {
                ModelError::NoExtension(msg) => ModelError::NoExtension(format!("{}: {msg}", target.name)),
                other => other,
            })?;
            for (k, col) in target.range().zip(part) {
                cols[k] = Some(col);
            }
        }
        let cols = cols
            .into_iter()
            .enumerate()
            .map(|(k, c)| c.ok_or_else(|| ModelError::NoExtension(format!("basis vector {} is not reached", self.algebra.labels()[k]))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LinMap::from_columns(cols))
    }

    /// Restriction of a map preserving summand `index` to that summand.
    pub fn restrict(&self, map: &LinMap, index: usize) -> Option<LinMap> {
        let range = self.summands[index].range();
        let mut cols = Vec::with_capacity(range.len());
        for k in range.clone() {
            let col = map.column(k);
            if col.support().any(|i| !range.contains(&i)) {
                return None;
            }
            cols.push(col.remap(|i| i - range.start));
        }
        Some(LinMap::from_columns(cols))
    }
}

/// An automorphism of a model together with its name and order.
#[derive(Debug, Clone)]
pub struct NamedAutomorphism {
    pub name: String,
    pub map: LinMap,
    pub order: u32,
}

impl NamedAutomorphism {
    pub fn new(name: impl Into<String>, map: LinMap) -> Result<NamedAutomorphism, ModelError> {
        let name = name.into();
        let order = map.order(ORDER_BOUND).ok_or_else(|| ModelError::OrderUnbounded(name.clone()))?;
        Ok(NamedAutomorphism { name, map, order })
    }

    pub fn compose(&self, other: &NamedAutomorphism) -> Result<NamedAutomorphism, ModelError> {
        NamedAutomorphism::new(format!("{}*{}", self.name, other.name), self.map.compose(&other.map))
    }

    pub fn pow(&self, e: u32) -> Result<NamedAutomorphism, ModelError> {
        NamedAutomorphism::new(format!("{}^{e}", self.name), self.map.pow(e))
    }

    pub fn generator(&self) -> FiniteGenerator {
        FiniteGenerator { name: self.name.clone(), map: self.map.clone(), order: self.order }
    }

    /// The same automorphism restricted to an invariant summand of a model.
    pub fn restricted(&self, model: &ActionModel, index: usize) -> Option<NamedAutomorphism> {
        let map = model.restrict(&self.map, index)?;
        Some(NamedAutomorphism { name: self.name.clone(), order: map.order(ORDER_BOUND)?, map })
    }
}

/// Generators of a quasitorus with their names, ready for diagonalization.
pub fn generators(autos: &[&NamedAutomorphism]) -> Vec<FiniteGenerator> {
    autos.iter().map(|a| a.generator()).collect()
}
