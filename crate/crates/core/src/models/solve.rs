//! Solvers used to assemble model brackets: scalars fixed by the Jacobi
//! identity, equivariant bilinear maps between weight modules, and linear
//! maps determined by their values on a spanning family.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::ModelError;
use crate::exactfield::std36::{one, zero};
use crate::exactfield::CycNum;
use crate::liecore::LieAlgebra;
use crate::linalg::{kernel, LinMap, SparseVec, Subspace};

/// Solves for the scalars `s` making the Jacobi identity hold on `triples`,
/// assuming the Jacobiator of each triple is affine in `s`. The solution must
/// be unique.
pub fn solve_scalars(unknowns: usize, build: impl Fn(&[CycNum]) -> LieAlgebra, triples: &[(usize, usize, usize)]) -> Result<Vec<CycNum>, ModelError> {
    let stacked = |alg: &LieAlgebra| -> SparseVec {
        let n = alg.dim();
        let mut pairs = Vec::new();
        for (t, &(i, j, k)) in triples.iter().enumerate() {
            pairs.extend(alg.jacobiator(i, j, k).entries().iter().map(|(r, c)| (t * n + r, c.clone())));
        }
        SparseVec::from_pairs(pairs)
    };
    let mut point: Vec<CycNum> = (0..unknowns).map(|_| zero()).collect();
    let base = stacked(&build(&point));
    let mut cols = Vec::with_capacity(unknowns + 1);
    for k in 0..unknowns {
        point[k] = one();
        cols.push(stacked(&build(&point)).sub(&base));
        point[k] = zero();
    }
    cols.push(base);
    let ker = kernel(&cols);
    let solutions: Vec<&SparseVec> = ker.iter().filter(|v| v.get(unknowns).is_some()).collect();
    match (ker.len(), solutions.first()) {
        (_, None) => Err(ModelError::Unsolvable(format!("{} triples admit no solution", triples.len()))),
        (1, Some(v)) => {
            let last = v.get(unknowns).expect("filtered on this entry").inv().expect("nonzero entry");
            Ok((0..unknowns).map(|k| v.get(k).map_or_else(zero, |c| c * &last)).collect())
        }
        (dim, _) => Err(ModelError::Underdetermined(dim - 1)),
    }
}

/// A module with a weight basis over a set of Lie algebra generators.
#[derive(Debug, Clone)]
pub struct Rep {
    pub weights: Vec<Vec<i64>>,
    /// The matrix of each generator on the module.
    pub action: Vec<LinMap>,
}

impl Rep {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// The submodule spanned by `basis`, whose vectors must be weight vectors
    /// with the given weights; the action is re-expressed in that basis.
    pub fn sub(&self, basis: &[SparseVec], weights: Vec<Vec<i64>>) -> Result<Rep, ModelError> {
        let space = Subspace::spanned_by(basis.iter());
        if space.dim() != basis.len() {
            return Err(ModelError::NoExtension("submodule basis is dependent".into()));
        }
        let coords = |v: &SparseVec| -> Result<SparseVec, ModelError> {
            let echelon = space.coordinates(v).ok_or_else(|| ModelError::NoExtension("subspace is not invariant".into()))?;
            Ok(to_basis(&space, basis, &echelon))
        };
        let action = self
            .action
            .iter()
            .map(|g| Ok(LinMap::from_columns(basis.iter().map(|b| coords(&g.apply(b))).collect::<Result<Vec<_>, ModelError>>()?)))
            .collect::<Result<Vec<_>, ModelError>>()?;
        Ok(Rep { weights, action })
    }
}

/// Converts echelon coordinates into coordinates relative to an arbitrary basis of the same space.
fn to_basis(space: &Subspace, basis: &[SparseVec], echelon: &[CycNum]) -> SparseVec {
    let pivots = space.pivots();
    let cols: Vec<SparseVec> = basis.iter().map(|b| SparseVec::from_pairs(pivots.iter().enumerate().filter_map(|(r, &p)| b.get(p).map(|c| (r, c.clone()))).collect())).collect();
    let mut all = cols.clone();
    all.push(SparseVec::from_pairs(echelon.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(r, c)| (r, -c)).collect()));
    let ker = kernel(&all);
    let v = ker.iter().find(|v| v.get(basis.len()).is_some()).expect("member vectors have coordinates");
    let s = v.get(basis.len()).expect("checked above").inv().expect("nonzero");
    SparseVec::from_pairs((0..basis.len()).filter_map(|k| v.get(k).map(|c| (k, c * &s))).collect())
}

/// A bilinear map `B(x, y)` given on basis pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BilinearMap {
    pub table: BTreeMap<(usize, usize), SparseVec>,
}

impl BilinearMap {
    pub fn get(&self, x: usize, y: usize) -> SparseVec {
        self.table.get(&(x, y)).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &CycNum) -> BilinearMap {
        BilinearMap { table: self.table.iter().map(|(k, v)| (*k, v.scale(c))).collect() }
    }
}

/// Basis of the space of bilinear maps `a × b → c` commuting with every
/// generator, supported on weight-compatible triples; antisymmetric maps only
/// when `antisymmetric` (then `a` and `b` must be the same module).
pub fn equivariant_maps(a: &Rep, b: &Rep, c: &Rep, antisymmetric: bool) -> Vec<BilinearMap> {
    let mut by_weight: BTreeMap<&Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (z, w) in c.weights.iter().enumerate() {
        by_weight.entry(w).or_default().push(z);
    }
    let mut unknowns: Vec<(usize, usize, usize)> = Vec::new();
    let mut index: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    for x in 0..a.dim() {
        for y in 0..b.dim() {
            let w: Vec<i64> = a.weights[x].iter().zip(&b.weights[y]).map(|(p, q)| p + q).collect();
            for &z in by_weight.get(&w).map_or(&[][..], Vec::as_slice) {
                index.insert((x, y, z), unknowns.len());
                unknowns.push((x, y, z));
            }
        }
    }
    let a_t: Vec<LinMap> = a.action.iter().map(LinMap::transpose).collect();
    let b_t: Vec<LinMap> = b.action.iter().map(LinMap::transpose).collect();
    let mut rows: BTreeMap<(usize, usize, usize, usize), usize> = BTreeMap::new();
    let mut row_of = |key: (usize, usize, usize, usize)| -> usize {
        let next = rows.len();
        *rows.entry(key).or_insert(next)
    };
    let mut cols: Vec<Vec<(usize, CycNum)>> = alloc::vec![Vec::new(); unknowns.len()];
    for (u, &(x, y, z)) in unknowns.iter().enumerate() {
        for g in 0..c.action.len() {
            for (zz, coef) in c.action[g].column(z).entries() {
                cols[u].push((row_of((g, x, y, *zz)), coef.clone()));
            }
            for (x0, coef) in a_t[g].column(x).entries() {
                cols[u].push((row_of((g, *x0, y, z)), -coef));
            }
            for (y0, coef) in b_t[g].column(y).entries() {
                cols[u].push((row_of((g, x, *y0, z)), -coef));
            }
        }
    }
    if antisymmetric {
        let offset = usize::MAX / 2;
        for (u, &(x, y, z)) in unknowns.iter().enumerate() {
            let key = (offset, x.min(y), x.max(y), z);
            cols[u].push((row_of(key), one()));
        }
    }
    let cols: Vec<SparseVec> = cols.into_iter().map(SparseVec::from_pairs).collect();
    kernel(&cols)
        .into_iter()
        .map(|v| {
            let mut table: BTreeMap<(usize, usize), Vec<(usize, CycNum)>> = BTreeMap::new();
            for (u, coef) in v.entries() {
                let (x, y, z) = unknowns[*u];
                table.entry((x, y)).or_default().push((z, coef.clone()));
            }
            BilinearMap { table: table.into_iter().map(|(k, p)| (k, SparseVec::from_pairs(p))).collect() }
        })
        .collect()
}

/// The linear map on a space of dimension `dim` sending each `v_i` to `w_i`.
/// Returns its columns; fails when the `v_i` do not span or the data is inconsistent.
pub fn linear_extension(dim: usize, samples: &[(SparseVec, SparseVec)]) -> Result<Vec<SparseVec>, ModelError> {
    let mut rows: Vec<(SparseVec, SparseVec)> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for (v, w) in samples {
        let (mut v, mut w) = (v.clone(), w.clone());
        for ((rv, rw), &p) in rows.iter().zip(&pivots) {
            if let Some(c) = v.get(p).cloned() {
                v = v.axpy(&-&c, rv);
                w = w.axpy(&-&c, rw);
            }
        }
        match v.entries().first().cloned() {
            None if w.is_zero() => {}
            None => return Err(ModelError::NoExtension("images of dependent vectors disagree".into())),
            Some((p, c)) => {
                let inv = c.inv().expect("pivot is nonzero");
                let (v, w) = (v.scale(&inv), w.scale(&inv));
                for ((rv, rw), _) in rows.iter_mut().zip(&pivots) {
                    if let Some(x) = rv.get(p).cloned() {
                        *rv = rv.axpy(&-&x, &v);
                        *rw = rw.axpy(&-&x, &w);
                    }
                }
                rows.push((v, w));
                pivots.push(p);
            }
        }
    }
    if rows.len() != dim {
        return Err(ModelError::NoExtension(format!("samples span {} of {dim} dimensions", rows.len())));
    }
    let mut out: Vec<SparseVec> = alloc::vec![SparseVec::zero(); dim];
    for ((rv, rw), &p) in rows.iter().zip(&pivots) {
        if rv.nnz() != 1 {
            return Err(ModelError::NoExtension("reduction did not reach unit vectors".into()));
        }
        out[p] = rw.clone();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::std36::int;

    #[test]
    fn linear_extension_recovers_a_map() {
        let samples = alloc::vec![
            (SparseVec::from_pairs(alloc::vec![(0, int(1)), (1, int(1))]), SparseVec::unit(2)),
            (SparseVec::from_pairs(alloc::vec![(0, int(1)), (1, int(-1))]), SparseVec::unit(0)),
            (SparseVec::unit(0).scale(&int(2)), SparseVec::unit(0).add(&SparseVec::unit(2))),
        ];
        let cols = linear_extension(2, &samples).unwrap();
        assert_eq!(cols[0], SparseVec::from_pairs(alloc::vec![(0, crate::exactfield::std36::rational(1, 2)), (2, crate::exactfield::std36::rational(1, 2))]));
        let bad = alloc::vec![(SparseVec::unit(0), SparseVec::unit(0)), (SparseVec::unit(0), SparseVec::unit(1))];
        assert!(linear_extension(1, &bad).is_err());
    }
}
