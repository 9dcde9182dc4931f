//! e6 as `der J ⊕ J0` for the Albert algebra `J = H3(O)`.
//!
//! The Lie algebra is realized inside `gl(J)`: derivations together with the
//! multiplication operators `R_x` of trace-zero elements, under the commutator.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{ActionModel, ModelError, NamedAutomorphism, Summand};
use crate::exactfield::std36::{int, rational};
use crate::exactfield::CycNum;
use crate::liecore::LieAlgebra;
use crate::linalg::{kernel, LinMap, SparseVec, Subspace};

/// Dimension of the Albert algebra.
pub const ALBERT_DIM: usize = 27;
const DER_DIM: usize = 52;

/// Summand indices.
pub const DERIVATIONS: usize = 0;
pub const TRACELESS: usize = 1;

/// The split-free octonions over the rationals, from the Cayley–Dickson doubling of the quaternions.
/// Basis vector `e_m` has degree `m ∈ Z2³` and `e_a e_b = ±e_{a⊕b}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Octonions {
    signs: [[i64; 8]; 8],
}

impl Octonions {
    pub fn new() -> Octonions {
        let mut signs = [[0i64; 8]; 8];
        for (i, row) in signs.iter_mut().enumerate() {
            for (j, s) in row.iter_mut().enumerate() {
                *s = doubling_sign(3, i, j);
            }
        }
        Octonions { signs }
    }

    /// `e_i e_j = sign(i, j)·e_{i⊕j}`.
    pub fn sign(&self, i: usize, j: usize) -> i64 {
        self.signs[i][j]
    }

    pub fn mul(&self, x: &[i64; 8], y: &[i64; 8]) -> [i64; 8] {
        let mut out = [0i64; 8];
        for i in 0..8 {
            if x[i] == 0 {
                continue;
            }
            for j in 0..8 {
                out[i ^ j] += x[i] * y[j] * self.signs[i][j];
            }
        }
        out
    }

    pub fn conj(x: &[i64; 8]) -> [i64; 8] {
        let mut out = x.map(|c| -c);
        out[0] = x[0];
        out
    }

    pub fn norm(x: &[i64; 8]) -> i64 {
        x.iter().map(|c| c * c).sum()
    }

    /// The derivation algebra, as a basis of 8×8 matrices acting on coordinates.
    pub fn derivations(&self) -> Vec<LinMap> {
        let unknown = |r: usize, c: usize| 8 * c + r;
        let mut equations: Vec<Vec<(usize, CycNum)>> = alloc::vec![Vec::new(); 64];
        let mut row = 0;
        let mut rows: Vec<(usize, usize, CycNum)> = Vec::new();
        for i in 0..8 {
            for j in 0..8 {
                let k = i ^ j;
                for out in 0..8 {
                    rows.extend([(row + out, unknown(out, k), int(self.signs[i][j]))]);
                    for p in 0..8 {
                        if p ^ j == out {
                            rows.push((row + out, unknown(p, i), int(-self.signs[p][j])));
                        }
                        if i ^ p == out {
                            rows.push((row + out, unknown(p, j), int(-self.signs[i][p])));
                        }
                    }
                }
                row += 8;
            }
        }
        for (r, u, c) in rows {
            equations[u].push((r, c));
        }
        kernel(&equations.into_iter().map(SparseVec::from_pairs).collect::<Vec<_>>())
            .into_iter()
            .map(|v| LinMap::from_columns((0..8).map(|c| SparseVec::from_pairs((0..8).filter_map(|r| v.get(8 * c + r).map(|x| (r, x.clone()))).collect())).collect()))
            .collect()
    }
}

impl Default for Octonions {
    fn default() -> Self {
        Octonions::new()
    }
}

fn doubling_sign(level: u32, i: usize, j: usize) -> i64 {
    if level == 0 {
        return 1;
    }
    let half = 1usize << (level - 1);
    let conj_sign = |k: usize| if k == 0 { 1 } else { -1 };
    match (i < half, j < half) {
        (true, true) => doubling_sign(level - 1, i, j),
        (true, false) => doubling_sign(level - 1, j - half, i),
        (false, true) => doubling_sign(level - 1, i - half, j) * conj_sign(j),
        (false, false) => -conj_sign(j - half) * doubling_sign(level - 1, j - half, i - half),
    }
}

type OctMatrix = [[[i64; 8]; 3]; 3];

/// Position of the off-diagonal slot `k`: `ι_k(a)` has `a` at `(k+1, k+2)` and `ā` at `(k+2, k+1)`.
fn slot(k: usize) -> (usize, usize) {
    ((k + 1) % 3, (k + 2) % 3)
}

fn basis_matrix(b: usize) -> OctMatrix {
    let mut m = [[[0i64; 8]; 3]; 3];
    if b < 3 {
        m[b][b][0] = 1;
    } else {
        let (k, e) = ((b - 3) / 8, (b - 3) % 8);
        let (p, q) = slot(k);
        let mut a = [0i64; 8];
        a[e] = 1;
        m[p][q] = a;
        m[q][p] = Octonions::conj(&a);
    }
    m
}

fn albert_product(oct: &Octonions, x: &OctMatrix, y: &OctMatrix) -> SparseVec {
    let mut sum = [[[0i64; 8]; 3]; 3];
    for i in 0..3 {
        for k in 0..3 {
            for j in 0..3 {
                let a = oct.mul(&x[i][j], &y[j][k]);
                let b = oct.mul(&y[i][j], &x[j][k]);
                for c in 0..8 {
                    sum[i][k][c] += a[c] + b[c];
                }
            }
        }
    }
    let half = rational(1, 2);
    let mut pairs = Vec::new();
    for i in 0..3 {
        pairs.push((i, &int(sum[i][i][0]) * &half));
    }
    for k in 0..3 {
        let (p, q) = slot(k);
        for c in 0..8 {
            pairs.push((3 + 8 * k + c, &int(sum[p][q][c]) * &half));
        }
    }
    SparseVec::from_pairs(pairs)
}

fn flatten(op: &LinMap) -> SparseVec {
    SparseVec::from_pairs(op.columns().iter().enumerate().flat_map(|(c, col)| col.entries().iter().map(move |(r, x)| (ALBERT_DIM * c + r, x.clone()))).collect())
}

fn unflatten(v: &SparseVec) -> LinMap {
    let mut cols: Vec<Vec<(usize, CycNum)>> = alloc::vec![Vec::new(); ALBERT_DIM];
    for (k, x) in v.entries() {
        cols[k / ALBERT_DIM].push((k % ALBERT_DIM, x.clone()));
    }
    LinMap::from_columns(cols.into_iter().map(SparseVec::from_pairs).collect())
}

fn commutator(a: &LinMap, b: &LinMap) -> LinMap {
    let ab = a.compose(b);
    let ba = b.compose(a);
    LinMap::from_columns(ab.columns().iter().zip(ba.columns()).map(|(x, y)| x.sub(y)).collect())
}

/// Coordinates of a trace-zero element of `J` in the basis `E0 − E1`, `E1 − E2`, off-diagonal slots.
fn traceless_coords(v: &SparseVec) -> Option<SparseVec> {
    let d: Vec<CycNum> = (0..3).map(|i| v.get(i).cloned().unwrap_or_else(|| int(0))).collect();
    if !(&(&d[0] + &d[1]) + &d[2]).is_zero() {
        return None;
    }
    let mut pairs = alloc::vec![(0, d[0].clone()), (1, &d[0] + &d[1])];
    pairs.extend(v.entries().iter().filter(|(k, _)| *k >= 3).map(|(k, x)| (k - 1, x.clone())));
    Some(SparseVec::from_pairs(pairs))
}

fn traceless_vector(k: usize) -> SparseVec {
    match k {
        0 => SparseVec::from_pairs(alloc::vec![(0, int(1)), (1, int(-1))]),
        1 => SparseVec::from_pairs(alloc::vec![(1, int(1)), (2, int(-1))]),
        _ => SparseVec::unit(k + 1),
    }
}

/// The Albert model of e6.
#[derive(Debug, Clone)]
pub struct AlbertModel {
    model: ActionModel,
    octonions: Octonions,
    products: Vec<Vec<SparseVec>>,
    derivations: Subspace,
}

impl AlbertModel {
    pub fn new() -> Result<AlbertModel, ModelError> {
        let octonions = Octonions::new();
        let mats: Vec<OctMatrix> = (0..ALBERT_DIM).map(basis_matrix).collect();
        let products: Vec<Vec<SparseVec>> = (0..ALBERT_DIM).map(|i| (0..ALBERT_DIM).map(|j| albert_product(&octonions, &mats[i], &mats[j])).collect()).collect();
        let mult = |i: usize| LinMap::from_columns(products[i].clone());
        let mults: Vec<LinMap> = (0..ALBERT_DIM).map(mult).collect();
        let mut derivations = Subspace::new();
        for i in 0..ALBERT_DIM {
            for j in i + 1..ALBERT_DIM {
                derivations.insert(&flatten(&commutator(&mults[i], &mults[j])));
            }
        }
        if derivations.dim() != DER_DIM {
            return Err(ModelError::Unsolvable(format!("derivations span {} dimensions", derivations.dim())));
        }
        let der_ops: Vec<LinMap> = derivations.basis().iter().map(unflatten).collect();
        let trace_ops: Vec<LinMap> = (0..26).map(|k| apply_mult(&mults, &traceless_vector(k))).collect();
        let der_coords = |op: &LinMap| -> SparseVec {
            let c = derivations.coordinates(&flatten(op)).expect("commutators of derivations and multiplications are derivations");
            SparseVec::from_dense(&c)
        };
        let labels: Vec<String> = (0..DER_DIM)
            .map(|k| format!("D{k}"))
            .chain(["E0-E1".into(), "E1-E2".into()])
            .chain((0..3).flat_map(|k| (0..8).map(move |c| format!("i{}(e{c})", k + 1))))
            .collect();
        let algebra = LieAlgebra::from_brackets("e6 (Albert model)", labels, |i, j| match (i < DER_DIM, j < DER_DIM) {
            (true, true) => der_coords(&commutator(&der_ops[i], &der_ops[j])),
            (true, false) => {
                let image = der_ops[i].apply(&traceless_vector(j - DER_DIM));
                traceless_coords(&image).expect("derivations preserve the trace").remap(|k| k + DER_DIM)
            }
            (false, false) => der_coords(&commutator(&trace_ops[i - DER_DIM], &trace_ops[j - DER_DIM])),
            (false, true) => unreachable!("brackets are built for i < j"),
        });
        let summands = alloc::vec![Summand::new("der J", 0, DER_DIM), Summand::new("J0", DER_DIM, 26)];
        let model = ActionModel::new("albert", algebra, summands, 1, true);
        Ok(AlbertModel { model, octonions, products, derivations })
    }

    pub fn model(&self) -> &ActionModel {
        &self.model
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.model.structure()
    }

    pub fn octonions(&self) -> &Octonions {
        &self.octonions
    }

    pub fn derivation_dim(&self) -> usize {
        self.derivations.dim()
    }

    /// The Jordan product of basis elements.
    pub fn jordan_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i][j]
    }

    /// Whether a linear map of `J` preserves the Jordan product on all basis pairs.
    pub fn is_jordan_automorphism(&self, f: &LinMap) -> bool {
        (0..ALBERT_DIM).all(|i| {
            (0..ALBERT_DIM).all(|j| {
                let lhs = f.apply(&self.products[i][j]);
                let (fi, fj) = (f.column(i), f.column(j));
                let mut rhs = SparseVec::zero();
                for (a, x) in fi.entries() {
                    for (b, y) in fj.entries() {
                        rhs = rhs.axpy(&(x * y), &self.products[*a][*b]);
                    }
                }
                lhs == rhs
            })
        })
    }

    /// The order two automorphism `+1` on `der J`, `−1` on `J0`.
    pub fn g4(&self) -> Result<NamedAutomorphism, ModelError> {
        let diag = (0..78).map(|k| if k < DER_DIM { int(1) } else { int(-1) }).collect();
        let auto = NamedAutomorphism::new("G4", LinMap::diagonal(diag))?;
        self.model.check_automorphism(&auto)?;
        Ok(auto)
    }

    /// `f•`: conjugation by `f` on `der J` and `f` itself on `J0`.
    pub fn extend(&self, name: &str, f: &LinMap) -> Result<NamedAutomorphism, ModelError> {
        if !self.is_jordan_automorphism(f) {
            return Err(ModelError::NoExtension(format!("{name} is not an automorphism of J")));
        }
        let f_inv = f.inverse().ok_or_else(|| ModelError::NoExtension(format!("{name} is singular")))?;
        let mut cols = Vec::with_capacity(78);
        for d in self.derivations.basis() {
            let conj = f.compose(&unflatten(d)).compose(&f_inv);
            let c = self.derivations.coordinates(&flatten(&conj)).ok_or_else(|| ModelError::NoExtension(format!("{name} does not normalize der J")))?;
            cols.push(SparseVec::from_dense(&c));
        }
        for k in 0..26 {
            let image = f.apply(&traceless_vector(k));
            cols.push(traceless_coords(&image).ok_or_else(|| ModelError::NoExtension(format!("{name} does not preserve J0")))?.remap(|i| i + DER_DIM));
        }
        let auto = NamedAutomorphism::new(name, LinMap::from_columns(cols))?;
        self.model.check_automorphism(&auto)?;
        Ok(auto)
    }

    /// Conjugation by `diag(s0, s1, s2)` with signs `±1`.
    pub fn sign_change(&self, signs: [i64; 3]) -> LinMap {
        let diag = (0..ALBERT_DIM)
            .map(|b| {
                if b < 3 {
                    int(1)
                } else {
                    let (p, q) = slot((b - 3) / 8);
                    int(signs[p] * signs[q])
                }
            })
            .collect();
        LinMap::diagonal(diag)
    }

    /// The cyclic relabeling of the three diagonal idempotents.
    pub fn cycle(&self) -> LinMap {
        LinMap::from_columns((0..ALBERT_DIM).map(|b| if b < 3 { SparseVec::unit((b + 1) % 3) } else { SparseVec::unit(3 + (b - 3 + 8) % 24) }).collect())
    }

    /// The octonion automorphism `e_m ↦ (−1)^{⟨m, c⟩} e_m` applied entrywise.
    pub fn octonion_character(&self, c: usize) -> LinMap {
        let diag = (0..ALBERT_DIM)
            .map(|b| if b < 3 { int(1) } else { int(if (((b - 3) % 8) & c).count_ones().is_multiple_of(2) { 1 } else { -1 }) })
            .collect();
        LinMap::diagonal(diag)
    }
}

fn apply_mult(mults: &[LinMap], x: &SparseVec) -> LinMap {
    let n = mults[0].dim();
    let mut cols: Vec<SparseVec> = alloc::vec![SparseVec::zero(); n];
    for (i, c) in x.entries() {
        for (col, m) in cols.iter_mut().zip(mults[*i].columns()) {
            *col = col.axpy(c, m);
        }
    }
    LinMap::from_columns(cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octonions_are_alternative_and_normed() {
        let oct = Octonions::new();
        let unit = |i: usize| {
            let mut v = [0i64; 8];
            v[i] = 1;
            v
        };
        for i in 0..8 {
            for j in 0..8 {
                let (x, y) = (unit(i), unit(j));
                assert_eq!(oct.mul(&x, &oct.mul(&x, &y)), oct.mul(&oct.mul(&x, &x), &y));
                assert_eq!(oct.mul(&oct.mul(&y, &x), &x), oct.mul(&y, &oct.mul(&x, &x)));
            }
        }
        let x = [1, 2, 0, -1, 3, 0, 1, 1];
        let y = [0, 1, 1, 2, -1, 1, 0, 2];
        assert_eq!(Octonions::norm(&oct.mul(&x, &y)), Octonions::norm(&x) * Octonions::norm(&y));
    }

    #[test]
    fn octonion_derivations_form_g2() {
        assert_eq!(Octonions::new().derivations().len(), 14);
    }
}
