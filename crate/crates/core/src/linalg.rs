//! Sparse exact linear algebra over `Q(ζ_N)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::exactfield::{CycField, CycNum};

/// A vector stored as `(index, value)` pairs with increasing indices and no zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, CycNum)>,
}

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, CycField::standard().one())] }
    }

    pub fn single(i: usize, c: CycNum) -> Self {
        if c.is_zero() {
            SparseVec::zero()
        } else {
            SparseVec { entries: vec![(i, c)] }
        }
    }

    /// Builds from unsorted pairs, summing duplicates.
    pub fn from_pairs(mut pairs: Vec<(usize, CycNum)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, CycNum)> = Vec::with_capacity(pairs.len());
        for (i, c) in pairs {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc += &c,
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|(_, c)| !c.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(v: &[CycNum]) -> Self {
        SparseVec { entries: v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect() }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<CycNum> {
        let mut out = vec![CycField::standard().zero(); dim];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, CycNum)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Option<&CycNum> {
        self.entries.binary_search_by_key(&i, |(j, _)| *j).ok().map(|k| &self.entries[k].1)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &CycNum) -> SparseVec {
        if c.is_zero() {
            return SparseVec::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &CycNum, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let s = x + &(y * c);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&CycField::standard().one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&CycField::standard().int(-1), other)
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect() }
    }

    pub fn dot(&self, other: &SparseVec) -> CycNum {
        let mut acc = CycField::standard().zero();
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (i, x) = &self.entries[a];
            let (j, y) = &other.entries[b];
            if i < j {
                a += 1;
            } else if j < i {
                b += 1;
            } else {
                acc += &(x * y);
                a += 1;
                b += 1;
            }
        }
        acc
    }

    /// Reindexes entries through `map`, which must be injective on the support.
    pub fn remap(&self, map: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().map(|(i, c)| (map(*i), c.clone())).collect())
    }

    pub fn map_values(&self, f: impl Fn(&CycNum) -> CycNum) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().map(|(i, c)| (*i, f(c))).collect())
    }

    /// Index and value of the cheapest nonzero entry, used as an elimination pivot.
    fn cheapest(&self) -> Option<(usize, &CycNum)> {
        self.entries.iter().min_by_key(|(i, c)| (c.weight(), *i)).map(|(i, c)| (*i, c))
    }
}

/// A square linear map given by the images of the basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinMap {
    cols: Vec<SparseVec>,
}

impl LinMap {
    pub fn identity(dim: usize) -> Self {
        LinMap { cols: (0..dim).map(SparseVec::unit).collect() }
    }

    pub fn from_columns(cols: Vec<SparseVec>) -> Self {
        LinMap { cols }
    }

    /// A diagonal map.
    pub fn diagonal(diag: Vec<CycNum>) -> Self {
        LinMap { cols: diag.into_iter().enumerate().map(|(i, c)| SparseVec::single(i, c)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    /// The sum of two maps of the same dimension.
    pub fn add(&self, other: &LinMap) -> LinMap {
        LinMap { cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (j, c) in v.entries() {
            for (i, x) in self.cols[*j].entries() {
                pairs.push((*i, x * c));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinMap) -> LinMap {
        LinMap { cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.cols.iter().enumerate().all(|(j, c)| c.nnz() == 1 && c.entries()[0].0 == j && c.entries()[0].1.is_one())
    }

    pub fn pow(&self, e: u32) -> LinMap {
        let mut acc = LinMap::identity(self.dim());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base);
            }
        }
        acc
    }

    /// Multiplicative order up to `bound`.
    pub fn order(&self, bound: u32) -> Option<u32> {
        let mut p = self.clone();
        for n in 1..=bound {
            if p.is_identity() {
                return Some(n);
            }
            p = p.compose(self);
        }
        None
    }

    /// `self - c·I`.
    pub fn minus_scalar(&self, c: &CycNum) -> LinMap {
        LinMap {
            cols: self.cols.iter().enumerate().map(|(j, col)| col.axpy(&-c, &SparseVec::unit(j))).collect(),
        }
    }

    pub fn transpose(&self) -> LinMap {
        let mut rows: Vec<Vec<(usize, CycNum)>> = vec![Vec::new(); self.dim()];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, x) in col.entries() {
                rows[*i].push((j, x.clone()));
            }
        }
        LinMap { cols: rows.into_iter().map(SparseVec::from_pairs).collect() }
    }

    /// Inverse of an invertible map.
    pub fn inverse(&self) -> Option<LinMap> {
        let n = self.dim();
        let mut rows: Vec<(SparseVec, SparseVec)> =
            self.transpose().cols.into_iter().enumerate().map(|(i, r)| (r, SparseVec::unit(i))).collect();
        let mut pivots: Vec<Option<usize>> = vec![None; n];
        for k in 0..n {
            let (idx, _) = rows
                .iter()
                .enumerate()
                .filter(|(i, (r, _))| !pivots.contains(&Some(*i)) && r.get(k).is_some())
                .min_by_key(|(_, (r, _))| r.get(k).map(CycNum::weight))?;
            let inv = rows[idx].0.get(k).expect("pivot present").inv().ok()?;
            let (pr, pa) = (rows[idx].0.scale(&inv), rows[idx].1.scale(&inv));
            for (i, (r, a)) in rows.iter_mut().enumerate() {
                if i == idx {
                    continue;
                }
                if let Some(c) = r.get(k).cloned() {
                    *r = r.axpy(&-&c, &pr);
                    *a = a.axpy(&-&c, &pa);
                }
            }
            rows[idx] = (pr, pa);
            pivots[k] = Some(idx);
        }
        let inv_rows: Vec<SparseVec> = (0..n).map(|k| rows[pivots[k].expect("full rank")].1.clone()).collect();
        Some(LinMap { cols: inv_rows }.transpose())
    }
}

/// A subspace kept in fully reduced echelon form: each basis row has a
/// pivot coordinate equal to one where every other row vanishes.
#[derive(Debug, Clone, Default)]
pub struct Subspace {
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new() -> Self {
        Subspace::default()
    }

    pub fn spanned_by<'a>(vectors: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut s = Subspace::new();
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its component along the subspace, relative to the pivot coordinates.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Some(c) = r.get(p).cloned() {
                r = r.axpy(&-&c, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of a member vector in the echelon basis.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<CycNum>> {
        if !self.contains(v) {
            return None;
        }
        let zero = CycField::standard().zero();
        Some(self.pivots.iter().map(|&p| v.get(p).cloned().unwrap_or_else(|| zero.clone())).collect())
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((p, c)) = r.cheapest() else { return false };
        let inv = c.inv().expect("pivot is nonzero");
        let r = r.scale(&inv);
        for row in self.rows.iter_mut() {
            if let Some(x) = row.get(p).cloned() {
                *row = row.axpy(&-&x, &r);
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        let mut sum = self.clone();
        let grown = other.rows.iter().filter(|v| sum.insert(v)).count();
        other.dim() - grown
    }
}

/// Basis of `{x : Σ x_j cols_j = 0}`.
pub fn kernel(cols: &[SparseVec]) -> Vec<SparseVec> {
    let mut rows: Vec<(SparseVec, SparseVec)> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    for (j, col) in cols.iter().enumerate() {
        let mut v = col.clone();
        let mut comb = SparseVec::unit(j);
        for ((row, rc), &p) in rows.iter().zip(&pivots) {
            if let Some(c) = v.get(p).cloned() {
                v = v.axpy(&-&c, row);
                comb = comb.axpy(&-&c, rc);
            }
        }
        match v.cheapest() {
            None => out.push(comb),
            Some((p, c)) => {
                let inv = c.inv().expect("pivot is nonzero");
                let (v, comb) = (v.scale(&inv), comb.scale(&inv));
                for ((row, rc), _) in rows.iter_mut().zip(&pivots) {
                    if let Some(x) = row.get(p).cloned() {
                        *row = row.axpy(&-&x, &v);
                        *rc = rc.axpy(&-&x, &comb);
                    }
                }
                rows.push((v, comb));
                pivots.push(p);
            }
        }
    }
    out
}

/// Rank of a family of vectors.
pub fn rank<'a>(vectors: impl IntoIterator<Item = &'a SparseVec>) -> usize {
    Subspace::spanned_by(vectors).dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::std36::*;

    #[test]
    fn kernel_and_rank() {
        let a = SparseVec::from_pairs(vec![(0, int(1)), (1, int(2))]);
        let b = SparseVec::from_pairs(vec![(0, int(2)), (1, int(4))]);
        let c = SparseVec::from_pairs(vec![(2, zeta(3))]);
        let k = kernel(&[a.clone(), b.clone(), c.clone()]);
        assert_eq!(k.len(), 1);
        assert_eq!(rank([&a, &b, &c]), 2);
        let s = Subspace::spanned_by([&a, &c]);
        assert!(s.contains(&b));
        assert_eq!(s.coordinates(&c.scale(&int(5))).map(|v| v.len()), Some(2));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = LinMap::from_columns(vec![
            SparseVec::from_pairs(vec![(0, int(1)), (1, zeta(1))]),
            SparseVec::from_pairs(vec![(1, int(2))]),
        ]);
        let inv = m.inverse().unwrap();
        assert!(m.compose(&inv).is_identity());
        assert_eq!(m.pow(0), LinMap::identity(2));
    }
}
