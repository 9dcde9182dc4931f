//! Small dense matrices over the cyclotomic field, and the linear-algebra
//! gadgets the models are assembled from: bases of `sl(n)`, exterior powers
//! and symmetric squares.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactfield::std36::{int, one, zero};
use crate::exactfield::CycNum;
use crate::linalg::{LinMap, SparseVec};

/// A dense `rows × cols` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<CycNum>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        Matrix::diagonal((0..n).map(|_| one()).collect())
    }

    pub fn diagonal(diag: Vec<CycNum>) -> Matrix {
        let n = diag.len();
        let mut m = Matrix::zeros(n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// The matrix unit with a one at `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        m.set(i, j, one());
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|row| row.iter().map(|&v| int(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&CycNum, &CycNum) -> CycNum) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shapes differ");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn scale(&self, c: &CycNum) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> CycNum {
        (0..self.rows.min(self.cols)).fold(zero(), |acc, i| &acc + self.get(i, i))
    }

    /// Kronecker product: the block matrix `(a_ij · other)`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Block matrix `((a, b), (c, d))` from four square blocks of equal size.
    pub fn blocks(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
        let n = a.rows;
        let mut out = Matrix::zeros(2 * n, 2 * n);
        for (block, (r0, c0)) in [(a, (0, 0)), (b, (0, n)), (c, (n, 0)), (d, (n, n))] {
            for i in 0..n {
                for j in 0..n {
                    out.set(r0 + i, c0 + j, block.get(i, j).clone());
                }
            }
        }
        out
    }

    pub fn block_diagonal(a: &Matrix, d: &Matrix) -> Matrix {
        let z = Matrix::zeros(a.rows, a.rows);
        Matrix::blocks(a, &z, &z, d)
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> CycNum {
        let sub = Matrix::from_rows(rows.iter().map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect()).collect());
        sub.det()
    }

    pub fn det(&self) -> CycNum {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else { return zero() };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("pivot is nonzero");
            for r in col + 1..n {
                let f = m.get(r, col) * &inv;
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m.get(r, c) - &(&f * m.get(col, c));
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !m.get(r, col).is_zero())?;
            m.swap_rows(p, col);
            inv.swap_rows(p, col);
            let s = m.get(col, col).inv().ok()?;
            for c in 0..n {
                m.set(col, c, m.get(col, c) * &s);
                inv.set(col, c, inv.get(col, c) * &s);
            }
            for r in 0..n {
                if r == col || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for c in 0..n {
                    m.set(r, c, m.get(r, c) - &(&f * m.get(col, c)));
                    inv.set(r, c, inv.get(r, c) - &(&f * inv.get(col, c)));
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Whether `self` preserves the bilinear form with Gram matrix `gram`.
    pub fn preserves_form(&self, gram: &Matrix) -> bool {
        self.transpose().mul(gram).mul(self) == *gram
    }

    /// The scalar `λ` with `selfᵀ·gram·self = λ·gram`, if there is one.
    pub fn form_multiplier(&self, gram: &Matrix) -> Option<CycNum> {
        let image = self.transpose().mul(gram).mul(self);
        let (i, j) = (0..gram.rows).flat_map(|i| (0..gram.cols).map(move |j| (i, j))).find(|&(i, j)| !gram.get(i, j).is_zero())?;
        let ratio = image.get(i, j) * &gram.get(i, j).inv().ok()?;
        (image == gram.scale(&ratio) && !ratio.is_zero()).then_some(ratio)
    }

    /// The multiplicative order, if it is at most `bound`.
    pub fn order(&self, bound: u32) -> Option<u32> {
        let id = Matrix::identity(self.rows);
        let mut p = self.clone();
        for k in 1..=bound {
            if p == id {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }
}

/// The basis of `sl(n)`: the off-diagonal units `E_ij` in row-major order,
/// then `h_k = E_kk − E_{k+1,k+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlBasis {
    pub n: usize,
}

impl SlBasis {
    pub fn dim(&self) -> usize {
        self.n * self.n - 1
    }

    fn off_diagonal(&self) -> usize {
        self.n * (self.n - 1)
    }

    /// `(i, j)` of the `k`-th off-diagonal basis element.
    pub fn position(&self, k: usize) -> Option<(usize, usize)> {
        if k >= self.off_diagonal() {
            return None;
        }
        let i = k / (self.n - 1);
        let r = k % (self.n - 1);
        Some((i, if r < i { r } else { r + 1 }))
    }

    /// Index of `E_ij` for `i ≠ j`.
    pub fn index_of(&self, i: usize, j: usize) -> usize {
        i * (self.n - 1) + if j < i { j } else { j - 1 }
    }

    pub fn matrix(&self, k: usize) -> Matrix {
        match self.position(k) {
            Some((i, j)) => Matrix::unit(self.n, i, j),
            None => {
                let h = k - self.off_diagonal();
                Matrix::unit(self.n, h, h).sub(&Matrix::unit(self.n, h + 1, h + 1))
            }
        }
    }

    /// Coordinates of a traceless matrix, placed at `offset`.
    pub fn coords(&self, m: &Matrix, offset: usize) -> SparseVec {
        let mut pairs = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && !m.get(i, j).is_zero() {
                    pairs.push((offset + self.index_of(i, j), m.get(i, j).clone()));
                }
            }
        }
        let mut running = zero();
        for h in 0..self.n - 1 {
            running = &running + m.get(h, h);
            if !running.is_zero() {
                pairs.push((offset + self.off_diagonal() + h, running.clone()));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// The matrix with the given coordinates, read from `offset`.
    pub fn from_coords(&self, v: &SparseVec, offset: usize) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for (k, c) in v.entries() {
            if *k < offset || *k >= offset + self.dim() {
                continue;
            }
            m = m.add(&self.matrix(k - offset).scale(c));
        }
        m
    }

    /// The traceless part `m − tr(m)/n · I`.
    pub fn traceless(&self, m: &Matrix) -> Matrix {
        let t = &m.trace() * &crate::exactfield::std36::rational(1, self.n as i64);
        m.sub(&Matrix::identity(self.n).scale(&t))
    }

    /// Conjugation `x ↦ g x g⁻¹` as a map on `sl(n)` coordinates.
    pub fn adjoint(&self, g: &Matrix, g_inv: &Matrix) -> Vec<SparseVec> {
        (0..self.dim()).map(|k| self.coords(&g.mul(&self.matrix(k)).mul(g_inv), 0)).collect()
    }

    /// Weight of a basis element under the diagonal torus, given per-coordinate weights.
    pub fn weight(&self, k: usize, coord_weights: &[Vec<i64>]) -> Vec<i64> {
        match self.position(k) {
            Some((i, j)) => coord_weights[i].iter().zip(&coord_weights[j]).map(|(a, b)| a - b).collect(),
            None => vec![0; coord_weights[0].len()],
        }
    }
}

/// The exterior power `Λ^k F^n` with basis the increasing `k`-subsets.
#[derive(Debug, Clone)]
pub struct ExteriorPower {
    pub n: usize,
    pub k: usize,
    subsets: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
}

impl ExteriorPower {
    pub fn new(n: usize, k: usize) -> ExteriorPower {
        let mut subsets = Vec::new();
        let mut current = Vec::new();
        fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if current.len() == k {
                out.push(current.clone());
                return;
            }
            for i in start..n {
                current.push(i);
                rec(i + 1, n, k, current, out);
                current.pop();
            }
        }
        rec(0, n, k, &mut current, &mut subsets);
        let index = subsets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        ExteriorPower { n, k, subsets, index }
    }

    pub fn dim(&self) -> usize {
        self.subsets.len()
    }

    pub fn subset(&self, i: usize) -> &[usize] {
        &self.subsets[i]
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// The basis index and sign of the wedge of the given (unsorted) indices.
    pub fn index_of(&self, indices: &[usize]) -> Option<(usize, i64)> {
        let (sorted, sign) = sort_with_sign(indices)?;
        self.index.get(&sorted).map(|&i| (i, sign))
    }

    /// The action of `x ∈ gl(n)` as a derivation on basis element `i`.
    pub fn derivation(&self, x: &Matrix, i: usize) -> SparseVec {
        let set = &self.subsets[i];
        let mut acc: BTreeMap<usize, CycNum> = BTreeMap::new();
        for (pos, &s) in set.iter().enumerate() {
            for r in 0..self.n {
                let c = x.get(r, s);
                if c.is_zero() {
                    continue;
                }
                let mut replaced = set.clone();
                replaced[pos] = r;
                if let Some((j, sign)) = self.index_of(&replaced) {
                    let e = acc.entry(j).or_insert_with(zero);
                    *e = &*e + &(c * &int(sign));
                }
            }
        }
        SparseVec::from_pairs(acc.into_iter().collect())
    }

    /// `Λ^k g` as a linear map, through `k × k` minors.
    pub fn power(&self, g: &Matrix) -> LinMap {
        let cols = self
            .subsets
            .iter()
            .map(|src| SparseVec::from_pairs(self.subsets.iter().enumerate().map(|(j, dst)| (j, g.minor(dst, src))).collect()))
            .collect();
        LinMap::from_columns(cols)
    }
}

/// Sorts distinct indices and returns the permutation sign; `None` on repeats.
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// The symmetric square `S^2 F^n` with basis the products `w_j w_k`, `j ≤ k`.
#[derive(Debug, Clone)]
pub struct SymmetricSquare {
    pub n: usize,
    pairs: Vec<(usize, usize)>,
}

impl SymmetricSquare {
    pub fn new(n: usize) -> SymmetricSquare {
        let pairs = (0..n).flat_map(|j| (j..n).map(move |k| (j, k))).collect();
        SymmetricSquare { n, pairs }
    }

    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    pub fn pair(&self, i: usize) -> (usize, usize) {
        self.pairs[i]
    }

    pub fn index_of(&self, a: usize, b: usize) -> usize {
        let (j, k) = if a <= b { (a, b) } else { (b, a) };
        self.pairs.iter().position(|&p| p == (j, k)).expect("indices are in range")
    }

    /// The action of `x ∈ gl(n)` as a derivation on basis element `i`.
    pub fn derivation(&self, x: &Matrix, i: usize) -> SparseVec {
        let (j, k) = self.pairs[i];
        let mut acc: BTreeMap<usize, CycNum> = BTreeMap::new();
        for r in 0..self.n {
            for (moved, kept) in [(j, k), (k, j)] {
                let c = x.get(r, moved);
                if !c.is_zero() {
                    let e = acc.entry(self.index_of(r, kept)).or_insert_with(zero);
                    *e = &*e + c;
                }
            }
        }
        SparseVec::from_pairs(acc.into_iter().collect())
    }

    /// `S^2 g` as a linear map.
    pub fn power(&self, g: &Matrix) -> LinMap {
        let cols = self
            .pairs
            .iter()
            .map(|&(j, k)| {
                let mut acc: BTreeMap<usize, CycNum> = BTreeMap::new();
                for r in 0..self.n {
                    for s in 0..self.n {
                        let c = g.get(r, j) * g.get(s, k);
                        if c.is_zero() {
                            continue;
                        }
                        let e = acc.entry(self.index_of(r, s)).or_insert_with(zero);
                        *e = &*e + &c;
                    }
                }
                SparseVec::from_pairs(acc.into_iter().collect())
            })
            .collect();
        LinMap::from_columns(cols)
    }
}

/// The Kronecker product of two linear maps, with basis `a·dim(b) + b`.
pub fn tensor_maps(a: &LinMap, b: &LinMap) -> LinMap {
    let nb = b.dim();
    let mut cols = Vec::with_capacity(a.dim() * nb);
    for i in 0..a.dim() {
        for j in 0..nb {
            let mut pairs = Vec::new();
            for (p, x) in a.column(i).entries() {
                for (q, y) in b.column(j).entries() {
                    pairs.push((p * nb + q, x * y));
                }
            }
            cols.push(SparseVec::from_pairs(pairs));
        }
    }
    LinMap::from_columns(cols)
}

/// A matrix as a linear map on coordinate vectors.
pub fn matrix_map(m: &Matrix) -> LinMap {
    LinMap::from_columns((0..m.cols()).map(|j| SparseVec::from_pairs((0..m.rows()).map(|i| (i, m.get(i, j).clone())).collect())).collect())
}

/// Assembles a block-diagonal map from maps on consecutive summands.
pub fn direct_sum(parts: &[LinMap]) -> LinMap {
    let mut cols = Vec::new();
    let mut offset = 0;
    for p in parts {
        cols.extend(p.columns().iter().map(|c| c.remap(|i| i + offset)));
        offset += p.dim();
    }
    LinMap::from_columns(cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::std36::root;

    #[test]
    fn determinant_and_inverse() {
        let m = Matrix::from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det(), int(18));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
        let w = root(1, 3);
        let b = Matrix::diagonal(vec![one(), w.clone(), w.pow(2)]);
        let c = Matrix::from_ints(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(b.mul(&c), c.mul(&b).scale(&w));
        assert_eq!(b.det(), one());
    }

    #[test]
    fn sl_coordinates_roundtrip() {
        let sl = SlBasis { n: 4 };
        for k in 0..sl.dim() {
            let m = sl.matrix(k);
            assert_eq!(sl.coords(&m, 0), SparseVec::unit(k));
            assert_eq!(sl.from_coords(&SparseVec::unit(k), 0), m);
        }
    }

    #[test]
    fn exterior_power_is_multiplicative() {
        let ext = ExteriorPower::new(6, 3);
        assert_eq!(ext.dim(), 20);
        let g = Matrix::from_ints(&[
            &[1, 2, 0, 0, 0, 1],
            &[0, 1, 0, 3, 0, 0],
            &[0, 0, 1, 0, 0, 0],
            &[1, 0, 0, 1, 0, 0],
            &[0, 0, 2, 0, 1, 0],
            &[0, 0, 0, 0, 0, 1],
        ]);
        let h = Matrix::from_ints(&[
            &[0, 1, 0, 0, 0, 0],
            &[1, 0, 0, 0, 0, 0],
            &[0, 0, 1, 1, 0, 0],
            &[0, 0, 0, 1, 0, 0],
            &[0, 0, 0, 0, 0, 1],
            &[0, 0, 0, 0, 1, 0],
        ]);
        assert_eq!(ext.power(&g.mul(&h)), ext.power(&g).compose(&ext.power(&h)));
    }

    #[test]
    fn symmetric_square_derivation_matches_group_action() {
        let s2 = SymmetricSquare::new(3);
        let x = Matrix::from_ints(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let d = LinMap::from_columns((0..s2.dim()).map(|i| s2.derivation(&x, i)).collect());
        let dd = d.compose(&d);
        let half = crate::exactfield::std36::rational(1, 2);
        let group = s2.power(&Matrix::identity(3).add(&x));
        for i in 0..s2.dim() {
            let expected = SparseVec::unit(i).add(d.column(i)).axpy(&half, dd.column(i));
            assert_eq!(group.column(i), &expected);
        }
    }
}
