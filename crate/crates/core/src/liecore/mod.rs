//! Lie algebras given by structure constants, their automorphisms, fixed
//! subalgebras and reductive invariants.

mod chevalley;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::exactfield::{CycField, CycNum, FieldError};
use crate::linalg::{kernel, rank, LinMap, SparseVec, Subspace};
use crate::weyl::WeylError;

pub use chevalley::{ChevalleyE6, MinimizedLift};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("bracket is not antisymmetric on basis pair ({0}, {1})")]
    Antisymmetry(usize, usize),
    #[error("map does not preserve the bracket on basis pair ({0}, {1})")]
    NotAutomorphism(usize, usize),
    #[error("expected a map of dimension {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("automorphisms {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("order exceeds the search bound {0}")]
    OrderUnbounded(u32),
    #[error("map does not normalize the Cartan subalgebra")]
    NotNormalizing,
    #[error("{0}")]
    Inconsistent(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// A finite-dimensional Lie algebra with a full table of basis brackets.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<SparseVec>>,
}

impl LieAlgebra {
    /// Builds the table from a function computing `[b_i, b_j]` for `i < j`.
    pub fn from_brackets(name: &str, labels: Vec<String>, mut bracket: impl FnMut(usize, usize) -> SparseVec) -> Self {
        let n = labels.len();
        let mut table = alloc::vec![alloc::vec![SparseVec::zero(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = bracket(i, j);
                table[j][i] = v.neg();
                table[i][j] = v;
            }
        }
        LieAlgebra { name: name.into(), labels, table }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (i, a) in x.entries() {
            for (j, b) in y.entries() {
                let t = &self.table[*i][*j];
                if t.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in t.entries() {
                    pairs.push((*k, c * &ab));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// Exhaustive Jacobi identity on basis triples.
    pub fn check_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                if self.table[i][j] != self.table[j][i].neg() {
                    return Err(LieError::Antisymmetry(i, j));
                }
                for k in j + 1..n {
                    if !self.jacobiator(i, j, k).is_zero() {
                        return Err(LieError::Jacobi(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// `[[b_i,b_j],b_k] + [[b_j,b_k],b_i] + [[b_k,b_i],b_j]`.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> SparseVec {
        self.bracket(&self.table[i][j], &SparseVec::unit(k))
            .add(&self.bracket(&self.table[j][k], &SparseVec::unit(i)))
            .add(&self.bracket(&self.table[k][i], &SparseVec::unit(j)))
    }

    /// Matrix of the Killing form `tr(ad b_i ad b_j)`, one sparse row per basis vector.
    pub fn killing_matrix(&self) -> Vec<SparseVec> {
        let n = self.dim();
        let mut rows: Vec<Vec<(usize, CycNum)>> = alloc::vec![Vec::new(); n];
        for i in 0..n {
            for j in i..n {
                let mut acc = CycField::standard().zero();
                for l in 0..n {
                    for (k, c) in self.table[i][l].entries() {
                        if let Some(d) = self.table[j][*k].get(l) {
                            acc += &(c * d);
                        }
                    }
                }
                if !acc.is_zero() {
                    rows[i].push((j, acc.clone()));
                    if i != j {
                        rows[j].push((i, acc));
                    }
                }
            }
        }
        rows.into_iter().map(SparseVec::from_pairs).collect()
    }

    pub fn killing_rank(&self) -> usize {
        rank(self.killing_matrix().iter())
    }

    pub fn check_dim(&self, f: &LinMap) -> Result<(), LieError> {
        if f.dim() != self.dim() {
            return Err(LieError::DimensionMismatch { expected: self.dim(), found: f.dim() });
        }
        Ok(())
    }

    /// Exhaustive check `f[b_i,b_j] = [f b_i, f b_j]`.
    pub fn check_automorphism(&self, f: &LinMap) -> Result<(), LieError> {
        self.check_dim(f)?;
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = f.apply(&self.table[i][j]);
                let rhs = self.bracket(f.column(i), f.column(j));
                if lhs != rhs {
                    return Err(LieError::NotAutomorphism(i, j));
                }
            }
        }
        Ok(())
    }

    /// The adjoint map of `x`.
    pub fn ad(&self, x: &SparseVec) -> LinMap {
        LinMap::from_columns((0..self.dim()).map(|j| self.bracket(x, &SparseVec::unit(j))).collect())
    }

    /// Invariants of a subalgebra given by a basis.
    pub fn reductive_profile(&self, sub: &Subspace) -> ReductiveProfile {
        let basis = sub.basis();
        let k = basis.len();
        let mut derived = Subspace::new();
        'outer: for i in 0..k {
            for j in i + 1..k {
                derived.insert(&self.bracket(&basis[i], &basis[j]));
                if derived.dim() == k {
                    break 'outer;
                }
            }
        }
        let center_dim = if derived.dim() == k { 0 } else { self.center_dim(basis) };
        let (rank, witness) = self.generic_rank(basis);
        ReductiveProfile { dim: k, derived_dim: derived.dim(), center_dim, rank, witness }
    }

    fn center_dim(&self, basis: &[SparseVec]) -> usize {
        let n = self.dim();
        let cols: Vec<SparseVec> = basis
            .iter()
            .map(|x| {
                let mut pairs = Vec::new();
                for (j, y) in basis.iter().enumerate() {
                    for (idx, c) in self.bracket(x, y).entries() {
                        pairs.push((j * n + idx, c.clone()));
                    }
                }
                SparseVec::from_pairs(pairs)
            })
            .collect();
        kernel(&cols).len()
    }

    /// Minimum centralizer dimension over a few seeded draws of a generic element.
    fn generic_rank(&self, basis: &[SparseVec]) -> (usize, Vec<i64>) {
        let k = basis.len();
        if k == 0 {
            return (0, Vec::new());
        }
        let mut rng = SplitMix(0x5eed_e6e6 ^ k as u64);
        let mut best: Option<(usize, Vec<i64>)> = None;
        for _ in 0..GENERIC_DRAWS {
            let coeffs: Vec<i64> = (0..k).map(|_| 1 + (rng.next() % 97) as i64).collect();
            let mut x = SparseVec::zero();
            for (c, b) in coeffs.iter().zip(basis) {
                x = x.axpy(&CycField::standard().int(*c), b);
            }
            let images: Vec<SparseVec> = basis.iter().map(|b| self.bracket(&x, b)).collect();
            let dim = k - rank(images.iter());
            let improved = best.as_ref().is_none_or(|(d, _)| dim < *d);
            let settled = best.as_ref().is_some_and(|(d, _)| dim == *d);
            if improved {
                best = Some((dim, coeffs));
            }
            if settled {
                break;
            }
        }
        best.expect("at least one draw")
    }

    /// Common fixed points of a family of commuting automorphisms.
    pub fn fixed_subalgebra(&self, auts: &[LinMap]) -> Result<Subspace, LieError> {
        for f in auts {
            self.check_dim(f)?;
        }
        check_commuting(auts)?;
        Ok(fixed_subspace(self.dim(), auts))
    }

    /// Whether the fixed subalgebra of the family has full rank.
    pub fn is_toral(&self, auts: &[LinMap], full_rank: usize) -> Result<(bool, ReductiveProfile), LieError> {
        let fix = self.fixed_subalgebra(auts)?;
        let profile = self.reductive_profile(&fix);
        Ok((profile.rank == full_rank, profile))
    }
}

const GENERIC_DRAWS: usize = 5;

/// Deterministic generator for generic-element draws.
struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
}

/// `(dim, dim [S,S], dim Z(S), rank)` of a reductive subalgebra, with the
/// coefficients of the generic element that realized the rank.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ReductiveProfile {
    pub dim: usize,
    pub derived_dim: usize,
    pub center_dim: usize,
    pub rank: usize,
    pub witness: Vec<i64>,
}

pub fn check_commuting(auts: &[LinMap]) -> Result<(), LieError> {
    for i in 0..auts.len() {
        for j in i + 1..auts.len() {
            if auts[i].compose(&auts[j]) != auts[j].compose(&auts[i]) {
                return Err(LieError::NotCommuting(i, j));
            }
        }
    }
    Ok(())
}

/// Common 1-eigenspace of a family of linear maps.
pub fn fixed_subspace(dim: usize, maps: &[LinMap]) -> Subspace {
    let one = CycField::standard().one();
    let shifted: Vec<LinMap> = maps.iter().map(|f| f.minus_scalar(&one)).collect();
    let cols: Vec<SparseVec> = (0..dim)
        .map(|j| {
            let mut pairs = Vec::new();
            for (m, g) in shifted.iter().enumerate() {
                for (i, c) in g.column(j).entries() {
                    pairs.push((m * dim + i, c.clone()));
                }
            }
            SparseVec::from_pairs(pairs)
        })
        .collect();
    Subspace::spanned_by(kernel(&cols).iter())
}

/// Conjugacy class label of an automorphism of order 2 or 3 of e6, read off
/// from its order and the dimension of its fixed subalgebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum AutoClass {
    Labeled(&'static str),
    Other { order: Option<u32>, fixed_dim: usize },
}

impl core::fmt::Display for AutoClass {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            AutoClass::Labeled(s) => f.write_str(s),
            AutoClass::Other { order: Some(o), fixed_dim } => write!(f, "other(order {o}, fix {fixed_dim})"),
            AutoClass::Other { order: None, fixed_dim } => write!(f, "other(fix {fixed_dim})"),
        }
    }
}

impl AutoClass {
    pub fn from_invariants(order: Option<u32>, fixed_dim: usize) -> AutoClass {
        let label = match (order, fixed_dim) {
            (Some(2), 38) => "2A",
            (Some(2), 46) => "2B",
            (Some(2), 52) => "2C",
            (Some(2), 36) => "2D",
            (Some(3), 36) => "3B",
            (Some(3), 24) => "3C",
            (Some(3), 30) => "3D",
            (Some(3), 28) => "3E",
            (Some(3), 46) => "3F",
            _ => return AutoClass::Other { order, fixed_dim },
        };
        AutoClass::Labeled(label)
    }

    /// Classifies a linear map of a 78-dimensional model.
    pub fn of(f: &LinMap) -> AutoClass {
        let order = f.order(ORDER_BOUND);
        let fixed = fixed_subspace(f.dim(), core::slice::from_ref(f)).dim();
        AutoClass::from_invariants(order, fixed)
    }

    pub fn label(&self) -> String {
        format!("{self}")
    }
}

/// Bound used when computing orders of automorphisms.
pub const ORDER_BOUND: u32 = 72;
