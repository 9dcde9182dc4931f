//! The `c4` model: `sp(V, b) ⊕ L1` with `dim V = 8`, where `L1 ⊂ Λ⁴V` is the
//! 42-dimensional irreducible module. Only the Lie part and its action are
//! carried, so automorphism checks here are equivariance checks.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{ActionModel, ExteriorPower, Matrix, ModelError, NamedAutomorphism, Summand};
use crate::exactfield::std36::{int, one, root, zero};
use crate::gradings::{FiniteGenerator, QuasitorusSpec};
use crate::liecore::LieAlgebra;
use crate::linalg::{kernel, LinMap, SparseVec, Subspace};

const N: usize = 8;
/// Dimension of `sp(8)`.
pub const SP_DIM: usize = 36;
/// Dimension of the odd summand.
pub const ODD_DIM: usize = 42;

/// Summand indices.
pub const SP: usize = 0;
pub const ODD: usize = 1;

fn theta1() -> Matrix {
    Matrix::from_ints(&[&[0, 1], &[1, 0]])
}

fn theta2() -> Matrix {
    Matrix::from_ints(&[&[0, 1], &[-1, 0]])
}

fn theta3() -> Matrix {
    Matrix::from_ints(&[&[1, 0], &[0, -1]])
}

fn id(n: usize) -> Matrix {
    Matrix::identity(n)
}

fn kron3(a: &Matrix, b: &Matrix, c: &Matrix) -> Matrix {
    a.kron(b).kron(c)
}

fn diag_ints(d: &[i64]) -> Matrix {
    Matrix::diagonal(d.iter().map(|&x| int(x)).collect())
}

/// One of the seven maximal abelian diagonalizable subgroups of `Sp(8)`:
/// the form it preserves, its finite generators and the weights of its torus
/// on the coordinates of `V` (empty when there is no torus).
#[derive(Debug, Clone)]
pub struct XiSet {
    pub index: usize,
    pub gram: Matrix,
    pub generators: Vec<Matrix>,
    pub coord_weights: Vec<Vec<i64>>,
}

impl XiSet {
    pub fn torus_rank(&self) -> usize {
        self.coord_weights.first().map_or(0, Vec::len)
    }

    /// The set `Ξ_index`, `1 ≤ index ≤ 7`.
    pub fn get(index: usize) -> Result<XiSet, ModelError> {
        let no_torus = || alloc::vec![Vec::new(); N];
        let (gram, generators, coord_weights) = match index {
            1 => {
                let weights = (0..N).map(|i| (0..4).map(|k| if k == i / 2 { if i % 2 == 0 { 1 } else { -1 } } else { 0 }).collect()).collect();
                (id(4).kron(&theta2()), Vec::new(), weights)
            }
            2 => {
                let table = [[1, 0], [-1, 0], [0, 1], [0, -1]];
                let weights = (0..N).map(|i| table[i / 2].to_vec()).collect();
                (kron3(&id(2), &theta1(), &theta2()), alloc::vec![id(4).kron(&theta1()), id(4).kron(&theta3())], weights)
            }
            3 => {
                let weights = (0..N).map(|i| alloc::vec![[0, 0, 1, -1][i / 2]]).collect();
                let gram = Matrix::block_diagonal(&id(2), &theta1()).kron(&theta2());
                (gram, alloc::vec![id(4).kron(&theta1()), id(4).kron(&theta3()), diag_ints(&[-1, -1, 1, 1, 1, 1, 1, 1])], weights)
            }
            4 => {
                let gens = alloc::vec![
                    id(4).kron(&theta1()),
                    id(4).kron(&theta3()),
                    diag_ints(&[-1, 1, 1, 1]).kron(&id(2)),
                    diag_ints(&[1, -1, 1, 1]).kron(&id(2)),
                    diag_ints(&[1, 1, -1, 1]).kron(&id(2)),
                ];
                (id(4).kron(&theta2()), gens, no_torus())
            }
            5 => {
                let i = root(1, 4);
                let twist = Matrix::diagonal(alloc::vec![one(), i]);
                let gram = Matrix::block_diagonal(&theta2().kron(&id(2)), &theta2().kron(&theta1()));
                let gens = alloc::vec![kron3(&twist, &id(2), &theta3()), kron3(&id(2), &theta1(), &id(2)), kron3(&id(2), &theta3(), &id(2)), id(4).kron(&theta1())];
                (gram, gens, no_torus())
            }
            6 => {
                let weights = (0..N).map(|i| alloc::vec![if i < 4 { 1 } else { -1 }]).collect();
                let gens = alloc::vec![id(4).kron(&theta1()), id(4).kron(&theta3()), kron3(&id(2), &theta1(), &id(2)), kron3(&id(2), &theta3(), &id(2))];
                (kron3(&theta1(), &theta2(), &id(2)), gens, weights)
            }
            7 => {
                let gens = alloc::vec![
                    id(4).kron(&theta1()),
                    id(4).kron(&theta3()),
                    kron3(&id(2), &theta1(), &id(2)),
                    kron3(&id(2), &theta3(), &id(2)),
                    theta1().kron(&id(4)),
                    theta3().kron(&id(4)),
                ];
                (theta2().kron(&id(4)), gens, no_torus())
            }
            _ => return Err(ModelError::UnknownAutomorphism(format!("Xi{index}"))),
        };
        Ok(XiSet { index, gram, generators, coord_weights })
    }
}

/// The `c4` model for a fixed symplectic form.
#[derive(Debug, Clone)]
pub struct C4Model {
    model: ActionModel,
    gram: Matrix,
    coord_weights: Vec<Vec<i64>>,
    sp: Subspace,
    odd: Subspace,
    wedge: ExteriorPower,
    kernel_dim: usize,
    invariant: SparseVec,
}

fn flat_to_matrix(v: &SparseVec) -> Matrix {
    let mut m = Matrix::zeros(N, N);
    for (k, c) in v.entries() {
        m.set(k / N, k % N, c.clone());
    }
    m
}

fn matrix_to_flat(m: &Matrix) -> SparseVec {
    SparseVec::from_pairs((0..N * N).filter(|&k| !m.get(k / N, k % N).is_zero()).map(|k| (k, m.get(k / N, k % N).clone())).collect())
}

fn weight_of(coord_weights: &[Vec<i64>], indices: &[usize], signs: &[i64]) -> Vec<i64> {
    let rank = coord_weights[0].len();
    (0..rank).map(|c| indices.iter().zip(signs).map(|(&i, &s)| s * coord_weights[i][c]).sum()).collect()
}

impl C4Model {
    /// Builds the model for `Ξ_index`, using its form and torus.
    pub fn for_xi(index: usize) -> Result<C4Model, ModelError> {
        let xi = XiSet::get(index)?;
        C4Model::new(xi.gram, xi.coord_weights)
    }

    /// Builds `sp(V, b)` and `L1` for the Gram matrix `gram`, with bases of
    /// weight vectors for the diagonal torus given by `coord_weights`.
    pub fn new(gram: Matrix, coord_weights: Vec<Vec<i64>>) -> Result<C4Model, ModelError> {
        let mut gl_blocks: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for i in 0..N {
            for j in 0..N {
                gl_blocks.entry(weight_of(&coord_weights, &[i, j], &[1, -1])).or_default().push(N * i + j);
            }
        }
        let mut sp_vectors = Vec::new();
        for unknowns in gl_blocks.values() {
            let cols: Vec<SparseVec> = unknowns
                .iter()
                .map(|&k| {
                    let (i, j) = (k / N, k % N);
                    let mut pairs = Vec::new();
                    for q in 0..N {
                        pairs.push((N * j + q, gram.get(i, q).clone()));
                    }
                    for p in 0..N {
                        pairs.push((N * p + j, gram.get(p, i).clone()));
                    }
                    SparseVec::from_pairs(pairs)
                })
                .collect();
            for v in kernel(&cols) {
                sp_vectors.push(v.remap(|u| unknowns[u]));
            }
        }
        let sp = Subspace::spanned_by(sp_vectors.iter());
        if sp.dim() != SP_DIM {
            return Err(ModelError::NotSymplectic(format!("form is degenerate: sp has dimension {}", sp.dim())));
        }

        let wedge = ExteriorPower::new(N, 4);
        let pairs2 = ExteriorPower::new(N, 2);
        let top = ExteriorPower::new(N, 8);
        let contraction = |s: usize| -> SparseVec {
            let set = wedge.subset(s);
            let mut out = Vec::new();
            for a in 0..4 {
                for b in a + 1..4 {
                    let rest: Vec<usize> = (0..4).filter(|&k| k != a && k != b).collect();
                    let order = [a, b, rest[0], rest[1]];
                    let (_, sign) = super::sort_with_sign(&order).expect("distinct positions");
                    let form = gram.get(set[a], set[b]);
                    if form.is_zero() {
                        continue;
                    }
                    let (idx, s2) = pairs2.index_of(&[set[rest[0]], set[rest[1]]]).expect("distinct indices");
                    out.push((idx, form * &int(sign * s2)));
                }
            }
            SparseVec::from_pairs(out)
        };
        let pairing = |s: usize, t: usize| -> i64 {
            let mut all = wedge.subset(s).to_vec();
            all.extend_from_slice(wedge.subset(t));
            top.index_of(&all).map_or(0, |(_, sign)| sign)
        };
        let mut wedge_blocks: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for s in 0..wedge.dim() {
            wedge_blocks.entry(weight_of(&coord_weights, wedge.subset(s), &[1, 1, 1, 1])).or_default().push(s);
        }
        let sp_mats: Vec<Matrix> = sp.basis().iter().map(flat_to_matrix).collect();
        let act = |m: &Matrix, v: &SparseVec| -> SparseVec { v.entries().iter().fold(SparseVec::zero(), |acc, (s, c)| acc.axpy(c, &wedge.derivation(m, *s))) };

        let mut kernel_dim = 0;
        let mut kernel_vectors = Vec::new();
        let mut odd_vectors = Vec::new();
        let mut invariant = SparseVec::zero();
        let zero_weight = alloc::vec![0i64; coord_weights[0].len()];
        for (weight, members) in &wedge_blocks {
            let cols: Vec<SparseVec> = members.iter().map(|&s| contraction(s)).collect();
            let ker: Vec<SparseVec> = kernel(&cols).into_iter().map(|v| v.remap(|u| members[u])).collect();
            kernel_dim += ker.len();
            kernel_vectors.extend(ker.iter().cloned());
            if *weight != zero_weight {
                odd_vectors.extend(ker);
                continue;
            }
            let invariants: Vec<SparseVec> = {
                let cols: Vec<SparseVec> = members
                    .iter()
                    .map(|&s| {
                        let mut stacked = Vec::new();
                        for (g, m) in sp_mats.iter().enumerate() {
                            stacked.extend(wedge.derivation(m, s).entries().iter().map(|(k, c)| (g * wedge.dim() + k, c.clone())));
                        }
                        SparseVec::from_pairs(stacked)
                    })
                    .collect();
                kernel(&cols).into_iter().map(|v| v.remap(|u| members[u])).collect()
            };
            if invariants.len() != 1 {
                return Err(ModelError::Unsolvable(format!("{} invariant vectors in the fourth exterior power", invariants.len())));
            }
            invariant = invariants[0].clone();
            let functional: Vec<SparseVec> = ker
                .iter()
                .map(|v| {
                    let value = v.entries().iter().fold(zero(), |acc, (s, c)| {
                        invariant.entries().iter().fold(acc, |acc, (t, d)| &acc + &(&(c * d) * &int(pairing(*s, *t))))
                    });
                    SparseVec::from_pairs(alloc::vec![(0, value)])
                })
                .collect();
            for c in kernel(&functional) {
                odd_vectors.push(c.entries().iter().fold(SparseVec::zero(), |acc, (u, x)| acc.axpy(x, &ker[*u])));
            }
        }
        let odd = Subspace::spanned_by(odd_vectors.iter());
        if odd.dim() != ODD_DIM {
            return Err(ModelError::Unsolvable(format!("odd summand has dimension {}", odd.dim())));
        }
        let generated = Subspace::spanned_by(sp_mats.iter().flat_map(|m| kernel_vectors.iter().map(move |v| act(m, v))).collect::<Vec<_>>().iter());
        if generated.dim() != ODD_DIM || !odd.basis().iter().all(|v| generated.contains(v)) {
            return Err(ModelError::Unsolvable("sp·ker c differs from the invariant complement".into()));
        }

        let labels: Vec<String> = (0..SP_DIM).map(|k| format!("x{k}")).chain((0..ODD_DIM).map(|k| format!("v{k}"))).collect();
        let odd_mats: Vec<SparseVec> = odd.basis().to_vec();
        let algebra = LieAlgebra::from_brackets("sp(8) + L1 (semidirect)", labels, |i, j| match (i < SP_DIM, j < SP_DIM) {
            (true, true) => SparseVec::from_dense(&sp.coordinates(&matrix_to_flat(&sp_mats[i].commutator(&sp_mats[j]))).expect("sp is closed")),
            (true, false) => SparseVec::from_dense(&odd.coordinates(&act(&sp_mats[i], &odd_mats[j - SP_DIM])).expect("L1 is a submodule")).remap(|k| k + SP_DIM),
            _ => SparseVec::zero(),
        });
        let summands = alloc::vec![Summand::new("sp(V)", 0, SP_DIM), Summand::new("L1", SP_DIM, ODD_DIM)];
        let model = ActionModel::new("c4", algebra, summands, 1, false);
        Ok(C4Model { model, gram, coord_weights, sp, odd, wedge, kernel_dim, invariant })
    }

    pub fn model(&self) -> &ActionModel {
        &self.model
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// Dimension of the kernel of the contraction `Λ⁴V → Λ²V`.
    pub fn kernel_dim(&self) -> usize {
        self.kernel_dim
    }

    /// The `sp`-invariant vector of `Λ⁴V`, in the basis of 4-subsets.
    pub fn invariant(&self) -> &SparseVec {
        &self.invariant
    }

    /// Basis of `L1` in the basis of 4-subsets.
    pub fn odd_basis(&self) -> &[SparseVec] {
        self.odd.basis()
    }

    pub fn wedge(&self) -> &ExteriorPower {
        &self.wedge
    }

    /// `f♦`: conjugation `g ↦ f g f⁻¹` on `sp` and `Λ⁴f` on `L1`. A similitude
    /// with multiplier `λ` acts as its symplectic rescaling, i.e. by `λ⁻²Λ⁴f` on `L1`.
    pub fn diamond(&self, name: &str, f: &Matrix) -> Result<NamedAutomorphism, ModelError> {
        let multiplier = f.form_multiplier(&self.gram).ok_or_else(|| ModelError::NotSymplectic(name.into()))?;
        let f_inv = f.inverse().ok_or_else(|| ModelError::NotSymplectic(name.into()))?;
        let mut cols = Vec::with_capacity(SP_DIM + ODD_DIM);
        for v in self.sp.basis() {
            let image = matrix_to_flat(&f.mul(&flat_to_matrix(v)).mul(&f_inv));
            cols.push(SparseVec::from_dense(&self.sp.coordinates(&image).ok_or_else(|| ModelError::NotSymplectic(name.into()))?));
        }
        let power = self.wedge.power(f);
        let normalizer = (&multiplier * &multiplier).inv().expect("multiplier is nonzero");
        for v in self.odd.basis() {
            let image = power.apply(v).scale(&normalizer);
            let c = self.odd.coordinates(&image).ok_or_else(|| ModelError::NoExtension(format!("{name} does not preserve L1")))?;
            cols.push(SparseVec::from_dense(&c).remap(|k| k + SP_DIM));
        }
        let auto = NamedAutomorphism::new(name, LinMap::from_columns(cols))?;
        self.model.check_automorphism(&auto)?;
        Ok(auto)
    }

    /// `+1` on `sp`, `−1` on `L1`.
    pub fn g5(&self) -> Result<NamedAutomorphism, ModelError> {
        let diag = (0..SP_DIM + ODD_DIM).map(|k| if k < SP_DIM { one() } else { int(-1) }).collect();
        NamedAutomorphism::new("G5", LinMap::diagonal(diag))
    }

    /// Torus weights of the model basis.
    pub fn torus_weights(&self) -> Vec<Vec<i64>> {
        let sp = self.sp.basis().iter().map(|v| {
            let k = v.entries()[0].0;
            weight_of(&self.coord_weights, &[k / N, k % N], &[1, -1])
        });
        let odd = self.odd.basis().iter().map(|v| weight_of(&self.coord_weights, self.wedge.subset(v.entries()[0].0), &[1, 1, 1, 1]));
        sp.chain(odd).collect()
    }

    /// The extended generators of `Ξ_index`, named `Xi{index}.gen{k}`.
    pub fn xi_generators(&self, xi: &XiSet) -> Result<Vec<NamedAutomorphism>, ModelError> {
        xi.generators.iter().enumerate().map(|(k, f)| self.diamond(&format!("Xi{}.gen{}", xi.index, k + 1), f)).collect()
    }

    /// The quasitorus `Ξ♦`, optionally together with `G5`, acting on the summand `restrict_to`
    /// or on the whole model.
    pub fn quasitorus(&self, xi: &XiSet, with_g5: bool, restrict_to: Option<usize>) -> Result<QuasitorusSpec, ModelError> {
        let mut autos = self.xi_generators(xi)?;
        if with_g5 {
            autos.push(self.g5()?);
        }
        let weights = self.torus_weights();
        let (dim, gens, weights): (usize, Vec<FiniteGenerator>, Vec<Vec<i64>>) = match restrict_to {
            None => (self.model.dim(), autos.iter().map(NamedAutomorphism::generator).collect(), weights),
            Some(s) => {
                let range = self.model.summands()[s].range();
                let gens = autos
                    .iter()
                    .map(|a| a.restricted(&self.model, s).map(|r| r.generator()).ok_or_else(|| ModelError::NoExtension(format!("{} does not preserve the summand", a.name))))
                    .collect::<Result<Vec<_>, _>>()?;
                (range.len(), gens, weights[range].to_vec())
            }
        };
        Ok(QuasitorusSpec::with_torus(dim, gens, weights))
    }

    /// Looks up `G5` or `Xi{i}.gen{k}`; the form must match that of `Ξ_i`.
    pub fn named(&self, name: &str) -> Result<NamedAutomorphism, ModelError> {
        if name == "G5" {
            return self.g5();
        }
        let unknown = || ModelError::UnknownAutomorphism(name.into());
        let (set, gen) = name.strip_prefix("Xi").and_then(|s| s.split_once(".gen")).ok_or_else(unknown)?;
        let xi = XiSet::get(set.parse().map_err(|_| unknown())?)?;
        let k: usize = gen.parse().map_err(|_| unknown())?;
        let f = xi.generators.get(k.wrapping_sub(1)).ok_or_else(unknown)?;
        self.diamond(name, f)
    }
}
