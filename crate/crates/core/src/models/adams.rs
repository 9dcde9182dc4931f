//! e6 as `sl(V)³ ⊕ V⊗V⊗V ⊕ V*⊗V*⊗V*` with `dim V = 3`, graded by Z3.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{solve_scalars, ActionModel, Matrix, ModelError, NamedAutomorphism, SlBasis, SpanRule, Summand};
use crate::exactfield::std36::{int, one, root};
use crate::exactfield::CycNum;
use crate::gradings::QuasitorusSpec;
use crate::liecore::{LieAlgebra, LieError};
use crate::linalg::{LinMap, SparseVec};
use crate::weyl::{positive_roots, RootMatrix, RANK};

const SL3: SlBasis = SlBasis { n: 3 };
const BLOCK: usize = 8;
const TENSOR_START: usize = 24;
const DUAL_START: usize = 51;

/// Summand indices.
pub const EVEN: usize = 0;
pub const TENSOR: usize = 1;
pub const DUAL: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Element {
    Block(usize, usize),
    Tensor([usize; 3]),
    Dual([usize; 3]),
}

fn element(i: usize) -> Element {
    let triple = |k: usize| [k / 9, (k / 3) % 3, k % 3];
    match i {
        _ if i < TENSOR_START => Element::Block(i / BLOCK, i % BLOCK),
        _ if i < DUAL_START => Element::Tensor(triple(i - TENSOR_START)),
        _ => Element::Dual(triple(i - DUAL_START)),
    }
}

fn triple_index(start: usize, t: [usize; 3]) -> usize {
    start + 9 * t[0] + 3 * t[1] + t[2]
}

fn levi_civita(a: usize, b: usize, c: usize) -> i64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// `[x, y]` for the contraction `V⊗V⊗V × V⊗V⊗V → V*⊗V*⊗V*` (or its dual).
fn contraction(s: [usize; 3], t: [usize; 3], target: usize) -> SparseVec {
    let mut pairs = Vec::new();
    for x in 0..3 {
        for y in 0..3 {
            for z in 0..3 {
                let e = levi_civita(s[0], t[0], x) * levi_civita(s[1], t[1], y) * levi_civita(s[2], t[2], z);
                if e != 0 {
                    pairs.push((triple_index(target, [x, y, z]), int(e)));
                }
            }
        }
    }
    SparseVec::from_pairs(pairs)
}

fn bracket(i: usize, j: usize, pairing: &CycNum) -> SparseVec {
    match (element(i), element(j)) {
        (Element::Block(k, p), Element::Block(l, q)) if k == l => SL3.coords(&SL3.matrix(p).commutator(&SL3.matrix(q)), BLOCK * k),
        (Element::Block(..), Element::Block(..)) => SparseVec::zero(),
        (Element::Block(k, p), Element::Tensor(t)) => {
            let x = SL3.matrix(p);
            SparseVec::from_pairs((0..3).map(|r| {
                let mut moved = t;
                moved[k] = r;
                (triple_index(TENSOR_START, moved), x.get(r, t[k]).clone())
            }).collect())
        }
        (Element::Block(k, p), Element::Dual(t)) => {
            let x = SL3.matrix(p);
            SparseVec::from_pairs((0..3).map(|r| {
                let mut moved = t;
                moved[k] = r;
                (triple_index(DUAL_START, moved), -x.get(t[k], r))
            }).collect())
        }
        (Element::Tensor(s), Element::Tensor(t)) => contraction(s, t, DUAL_START),
        (Element::Dual(s), Element::Dual(t)) => contraction(s, t, TENSOR_START),
        (Element::Tensor(s), Element::Dual(t)) => {
            let mut acc = SparseVec::zero();
            for k in 0..3 {
                let others_match = (0..3).filter(|&m| m != k).all(|m| s[m] == t[m]);
                if others_match {
                    acc = acc.add(&SL3.coords(&SL3.traceless(&Matrix::unit(3, s[k], t[k])), BLOCK * k));
                }
            }
            acc.scale(pairing)
        }
        (a, b) => unreachable!("brackets are built for i < j, got {a:?} and {b:?}"),
    }
}

fn labels() -> Vec<String> {
    (0..78)
        .map(|i| match element(i) {
            Element::Block(k, p) => match SL3.position(p) {
                Some((a, b)) => format!("e{a}{b}.{}", k + 1),
                None => format!("h{}.{}", p - 6, k + 1),
            },
            Element::Tensor(t) => format!("u{}{}{}", t[0], t[1], t[2]),
            Element::Dual(t) => format!("d{}{}{}", t[0], t[1], t[2]),
        })
        .collect()
}

fn build(pairing: &CycNum) -> LieAlgebra {
    LieAlgebra::from_brackets("e6 (Adams model)", labels(), |i, j| bracket(i, j, pairing))
}

/// Primitive cube root of unity.
pub fn omega() -> CycNum {
    root(1, 3)
}

/// The ninth root of unity whose cube is `ω²`.
pub fn xi() -> CycNum {
    root(2, 9)
}

/// The Adams model together with its named automorphisms.
#[derive(Debug, Clone)]
pub struct AdamsModel {
    model: ActionModel,
    pairing: CycNum,
}

impl AdamsModel {
    /// Builds the model, fixing the scalar of `[V⊗V⊗V, V*⊗V*⊗V*]` by the Jacobi identity.
    pub fn new() -> Result<AdamsModel, ModelError> {
        let u = |t: [usize; 3]| triple_index(TENSOR_START, t);
        let d = |t: [usize; 3]| triple_index(DUAL_START, t);
        let triples = [(u([0, 0, 0]), u([1, 1, 1]), d([0, 0, 1])), (u([0, 1, 2]), u([1, 2, 0]), d([2, 0, 1])), (u([0, 0, 0]), d([1, 1, 1]), d([0, 2, 2]))];
        let solved = solve_scalars(1, |s| build(&s[0]), &triples)?;
        let pairing = solved.into_iter().next().expect("one scalar");
        let algebra = build(&pairing);
        let summands = alloc::vec![Summand::new("sl(V)^3", 0, 24), Summand::new("V(x)V(x)V", TENSOR_START, 27), Summand::new("V*(x)V*(x)V*", DUAL_START, 27)];
        let rules = alloc::vec![SpanRule { target: DUAL, left: TENSOR, right: TENSOR }, SpanRule { target: EVEN, left: TENSOR, right: DUAL }];
        let model = ActionModel::new("adams", algebra, summands, 1, true).with_span_rules(rules);
        Ok(AdamsModel { model, pairing })
    }

    pub fn model(&self) -> &ActionModel {
        &self.model
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.model.structure()
    }

    /// The scalar `γ` in `[u, d] = γ·(projection to sl(V)³)`.
    pub fn pairing(&self) -> &CycNum {
        &self.pairing
    }

    /// The automorphism acting on `V⊗V⊗V` by `f ⊗ g ⊗ h`, extended through the bracket.
    pub fn tensor(&self, name: &str, f: &Matrix, g: &Matrix, h: &Matrix) -> Result<NamedAutomorphism, ModelError> {
        let seed: Vec<SparseVec> = (0..27)
            .map(|k| {
                let t = [k / 9, (k / 3) % 3, k % 3];
                let mut pairs = Vec::new();
                for p in 0..3 {
                    for q in 0..3 {
                        for r in 0..3 {
                            let c = &(f.get(p, t[0]) * g.get(q, t[1])) * h.get(r, t[2]);
                            if !c.is_zero() {
                                pairs.push((triple_index(TENSOR_START, [p, q, r]), c));
                            }
                        }
                    }
                }
                SparseVec::from_pairs(pairs)
            })
            .collect();
        self.extend_seed(name, &seed)
    }

    /// `Ψ(A)`: the automorphism acting on `V⊗V⊗V` as `A ⊗ A ⊗ A`.
    pub fn psi(&self, name: &str, a: &Matrix) -> Result<NamedAutomorphism, ModelError> {
        self.tensor(name, a, a, a)
    }

    /// The automorphism moving tensor factor `k` to position `perm[k]`.
    pub fn permute_factors(&self, name: &str, perm: [usize; 3]) -> Result<NamedAutomorphism, ModelError> {
        let seed: Vec<SparseVec> = (0..27)
            .map(|k| {
                let t = [k / 9, (k / 3) % 3, k % 3];
                let mut moved = [0; 3];
                for f in 0..3 {
                    moved[perm[f]] = t[f];
                }
                SparseVec::unit(triple_index(TENSOR_START, moved))
            })
            .collect();
        self.extend_seed(name, &seed)
    }

    fn extend_seed(&self, name: &str, seed: &[SparseVec]) -> Result<NamedAutomorphism, ModelError> {
        let map = self.model.extend(TENSOR, seed).map_err(|e| match e {
            ModelError::NoExtension(msg) => ModelError::NoExtension(format!("{name}: {msg}")),
            other => other,
        })?;
        let auto = NamedAutomorphism::new(name, map)?;
        self.model.check_automorphism(&auto)?;
        Ok(auto)
    }

    /// The grading automorphism: `ω^k` on the degree-`k` summand.
    pub fn grade_automorphism(&self) -> Result<NamedAutomorphism, ModelError> {
        let w = omega();
        let diag = (0..78).map(|i| if i < TENSOR_START { one() } else if i < DUAL_START { w.clone() } else { &w * &w }).collect();
        let auto = NamedAutomorphism::new("F1", LinMap::diagonal(diag))?;
        self.model.check_automorphism(&auto)?;
        Ok(auto)
    }

    /// The automorphism sending `u ⊗ v ⊗ w` to `v ⊗ w ⊗ u`.
    pub fn cyclic_shift(&self) -> Result<NamedAutomorphism, ModelError> {
        self.permute_factors("F2", [2, 0, 1])
    }

    /// `Ψ(diag(1, ω, ω²))`.
    pub fn diagonal_order_three(&self) -> Result<NamedAutomorphism, ModelError> {
        let w = omega();
        self.psi("F3", &Matrix::diagonal(alloc::vec![one(), w.clone(), &w * &w]))
    }

    /// `Ψ` of the cyclic permutation matrix.
    pub fn cyclic_order_three(&self) -> Result<NamedAutomorphism, ModelError> {
        self.psi("F4", &Matrix::from_ints(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]))
    }

    /// `T_{α,β} = Ψ(diag(α, β, 1/(αβ)))`.
    pub fn torus_element(&self, alpha: &CycNum, beta: &CycNum) -> Result<NamedAutomorphism, ModelError> {
        let last = (alpha * beta).inv().map_err(|_| ModelError::Determinant("T".into(), "zero parameter".into()))?;
        self.psi(&format!("T({alpha},{beta})"), &Matrix::diagonal(alloc::vec![alpha.clone(), beta.clone(), last]))
    }

    /// Torus weights of the basis for `T_{α,β}`: `α ↦ (1,0)`, `β ↦ (0,1)`.
    pub fn torus_weights(&self) -> Vec<Vec<i64>> {
        let coord = [[1i64, 0], [0, 1], [-1, -1]];
        let sum = |t: [usize; 3], sign: i64| (0..2).map(|c| sign * t.iter().map(|&a| coord[a][c]).sum::<i64>()).collect();
        (0..78)
            .map(|i| match element(i) {
                Element::Block(_, p) => match SL3.position(p) {
                    Some((a, b)) => (0..2).map(|c| coord[a][c] - coord[b][c]).collect(),
                    None => alloc::vec![0, 0],
                },
                Element::Tensor(t) => sum(t, 1),
                Element::Dual(t) => sum(t, -1),
            })
            .collect()
    }

    /// The order two automorphism exchanging two tensor factors.
    pub fn swap_factors(&self, first: usize, second: usize) -> Result<NamedAutomorphism, ModelError> {
        let mut perm = [0, 1, 2];
        perm.swap(first, second);
        let name = match (first.min(second), first.max(second)) {
            (0, 1) => "G4'",
            (0, 2) => "phi5",
            _ => "swap23",
        };
        self.permute_factors(name, perm)
    }

    /// `−P ⊗ I ⊗ I` and its analogues on the other factors, where `P` swaps the last two basis vectors.
    pub fn factor_reflection(&self, factor: usize) -> Result<NamedAutomorphism, ModelError> {
        let reflection = Matrix::from_ints(&[&[-1, 0, 0], &[0, 0, -1], &[0, -1, 0]]);
        let id = Matrix::identity(3);
        let mut mats = [&id, &id, &id];
        mats[factor] = &reflection;
        self.tensor(&format!("phi{}", factor + 1), mats[0], mats[1], mats[2])
    }

    /// The outer automorphism exchanging `u_{ijk}` with `d_{ijk}` and acting by `x ↦ −xᵀ` on each block.
    pub fn duality(&self) -> Result<NamedAutomorphism, ModelError> {
        let cols = (0..78)
            .map(|i| match element(i) {
                Element::Block(k, p) => SL3.coords(&SL3.matrix(p).transpose().scale(&int(-1)), BLOCK * k),
                Element::Tensor(t) => SparseVec::unit(triple_index(DUAL_START, t)),
                Element::Dual(t) => SparseVec::unit(triple_index(TENSOR_START, t)),
            })
            .collect();
        let auto = NamedAutomorphism::new("phi4", LinMap::from_columns(cols))?;
        self.model.check_automorphism(&auto)?;
        Ok(auto)
    }

    /// `Ψ(diag(1, i, −i))`.
    pub fn torus_one_i(&self) -> Result<NamedAutomorphism, ModelError> {
        let i = root(1, 4);
        self.psi("T(1,i)", &Matrix::diagonal(alloc::vec![one(), i.clone(), -&i]))
    }

    /// Looks up an automorphism by name: `F1`–`F4`, `G4'`, `G4''`, `phi1`–`phi5`,
    /// `T(1,i)`, or `T(k,m)` for `T_{ζ^k, ζ^m}` with `ζ` a primitive 36th root of unity.
    pub fn named(&self, name: &str) -> Result<NamedAutomorphism, ModelError> {
        match name {
            "F1" => self.grade_automorphism(),
            "F2" => self.cyclic_shift(),
            "F3" => self.diagonal_order_three(),
            "F4" => self.cyclic_order_three(),
            "G4'" => self.swap_factors(0, 1),
            "G4''" | "phi5" => self.swap_factors(0, 2),
            "phi1" => self.factor_reflection(0),
            "phi2" => self.factor_reflection(1),
            "phi3" => self.factor_reflection(2),
            "phi4" => self.duality(),
            "T(1,i)" => self.torus_one_i(),
            _ => {
                let inner = name.strip_prefix("T(").and_then(|s| s.strip_suffix(')')).ok_or_else(|| ModelError::UnknownAutomorphism(name.into()))?;
                let (k, m) = inner.split_once(',').ok_or_else(|| ModelError::UnknownAutomorphism(name.into()))?;
                let parse = |s: &str| s.trim().parse::<i64>().map_err(|_| ModelError::UnknownAutomorphism(name.into()));
                self.torus_element(&root(parse(k)?, 36), &root(parse(m)?, 36))
            }
        }
    }

    /// `⟨F1, F2, F3, F4⟩`.
    pub fn q1(&self) -> Result<QuasitorusSpec, ModelError> {
        let gens = [self.grade_automorphism()?, self.cyclic_shift()?, self.diagonal_order_three()?, self.cyclic_order_three()?];
        Ok(QuasitorusSpec::finite_only(78, gens.iter().map(NamedAutomorphism::generator).collect()))
    }

    /// `⟨F1, F2⟩` together with the torus `{T_{α,β}}`.
    pub fn q2(&self) -> Result<QuasitorusSpec, ModelError> {
        let gens = [self.grade_automorphism()?, self.cyclic_shift()?];
        Ok(QuasitorusSpec::with_torus(78, gens.iter().map(NamedAutomorphism::generator).collect(), self.torus_weights()))
    }

    /// `⟨F1, F3, F4⟩`.
    pub fn jordan(&self) -> Result<QuasitorusSpec, ModelError> {
        let gens = [self.grade_automorphism()?, self.diagonal_order_three()?, self.cyclic_order_three()?];
        Ok(QuasitorusSpec::finite_only(78, gens.iter().map(NamedAutomorphism::generator).collect()))
    }

    /// `⟨F1, F2⟩`.
    pub fn p1(&self) -> Result<QuasitorusSpec, ModelError> {
        let gens = [self.grade_automorphism()?, self.cyclic_shift()?];
        Ok(QuasitorusSpec::finite_only(78, gens.iter().map(NamedAutomorphism::generator).collect()))
    }

    /// `⟨F1·T_{ξ,ξ}, F2⟩`.
    pub fn p2(&self) -> Result<QuasitorusSpec, ModelError> {
        let twisted = self.grade_automorphism()?.compose(&self.torus_element(&xi(), &xi())?)?;
        let gens = [twisted, self.cyclic_shift()?];
        Ok(QuasitorusSpec::finite_only(78, gens.iter().map(NamedAutomorphism::generator).collect()))
    }

    /// `⟨F1, F2, T_{ω,1}, T_{ξ,ξ}⟩`.
    pub fn r1(&self) -> Result<QuasitorusSpec, ModelError> {
        let gens = [self.grade_automorphism()?, self.cyclic_shift()?, self.torus_element(&omega(), &one())?, self.torus_element(&xi(), &xi())?];
        Ok(QuasitorusSpec::finite_only(78, gens.iter().map(NamedAutomorphism::generator).collect()))
    }

    /// `⟨G4', F1, F3, F4⟩`.
    pub fn swap_jordan(&self) -> Result<QuasitorusSpec, ModelError> {
        let gens = [self.swap_factors(0, 1)?, self.grade_automorphism()?, self.diagonal_order_three()?, self.cyclic_order_three()?];
        Ok(QuasitorusSpec::finite_only(78, gens.iter().map(NamedAutomorphism::generator).collect()))
    }
}

/// Root data of the diagonal Cartan subalgebra, with the simple system
/// `α1 = w1 − w2`, `α2 = 2w3 + w4`, `α3 = w1 + 2w2`, `α4 = −Σ w`, `α5 = w5 + 2w6`,
/// `α6 = w5 − w6`, where `h = Σ w_k h_k` and `h_{2l−1}`, `h_{2l}` are
/// `e11 − e33` and `e22 − e33` in block `l`.
#[derive(Debug, Clone)]
pub struct RootBridge {
    roots: Vec<Option<[i64; RANK]>>,
    simple_vectors: [usize; RANK],
}

impl RootBridge {
    /// Root of every basis vector, `None` on the Cartan subalgebra.
    pub fn roots(&self) -> &[Option<[i64; RANK]>] {
        &self.roots
    }

    /// Basis indices spanning the simple root spaces.
    pub fn simple_vectors(&self) -> [usize; RANK] {
        self.simple_vectors
    }

    /// True when the roots found are exactly the E6 root system in the chosen simple basis.
    pub fn matches_root_system(&self) -> bool {
        let mut found: Vec<[i64; RANK]> = self.roots.iter().flatten().copied().collect();
        found.sort();
        let mut expected: Vec<[i64; RANK]> = positive_roots().into_iter().flat_map(|r| [r, r.map(|c| -c)]).collect();
        expected.sort();
        found == expected
    }

    /// The element of the extended Weyl group induced by an automorphism
    /// normalizing the torus: row `i` is the root of the image of the `i`-th simple root space.
    pub fn project(&self, f: &LinMap) -> Result<RootMatrix, ModelError> {
        let mut rows = [[0i64; RANK]; RANK];
        for (row, &v) in rows.iter_mut().zip(&self.simple_vectors) {
            let image = f.column(v);
            let mut roots = image.support().map(|k| self.roots[k]);
            let first = roots.next().flatten().ok_or(ModelError::Lie(LieError::NotNormalizing))?;
            if roots.any(|r| r != Some(first)) {
                return Err(ModelError::Lie(LieError::NotNormalizing));
            }
            *row = first;
        }
        Ok(RootMatrix::from_rows(rows))
    }
}

impl AdamsModel {
    /// Root decomposition relative to the diagonal Cartan subalgebra.
    pub fn root_bridge(&self) -> Result<RootBridge, ModelError> {
        let alg = self.algebra();
        let cartan: Vec<SparseVec> = (0..3)
            .flat_map(|k| {
                [[1, 0, -1], [0, 1, -1]].map(|d| SL3.coords(&Matrix::diagonal(d.iter().map(|&x| int(x)).collect()), BLOCK * k))
            })
            .collect();
        let simple_coeffs: [[i64; RANK]; RANK] = [[1, -1, 0, 0, 0, 0], [0, 0, 2, 1, 0, 0], [1, 2, 0, 0, 0, 0], [-1, -1, -1, -1, -1, -1], [0, 0, 0, 0, 1, 2], [0, 0, 0, 0, 1, -1]];
        let values = Matrix::from_rows(simple_coeffs.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect());
        let to_simple = values.inverse().ok_or_else(|| ModelError::Unsolvable("simple roots are dependent".into()))?;
        let as_int = |c: &CycNum| (-3..=3).find(|&k| int(k) == *c);
        let mut roots = Vec::with_capacity(78);
        for b in 0..78 {
            let eigen: Vec<CycNum> = cartan.iter().map(|h| alg.bracket(h, &SparseVec::unit(b)).get(b).cloned().unwrap_or_else(|| int(0))).collect();
            if eigen.iter().all(CycNum::is_zero) {
                roots.push(None);
                continue;
            }
            let mut root = [0i64; RANK];
            for (i, slot) in root.iter_mut().enumerate() {
                let c = (0..RANK).fold(int(0), |acc, m| &acc + &(&eigen[m] * to_simple.get(m, i)));
                *slot = as_int(&c).ok_or_else(|| ModelError::Unsolvable(format!("non-integral root at {}", alg.labels()[b])))?;
            }
            roots.push(Some(root));
        }
        let e = |k: usize, i: usize, j: usize| BLOCK * k + SL3.index_of(i, j);
        let simple_vectors = [e(0, 0, 1), e(1, 0, 2), e(0, 1, 2), triple_index(TENSOR_START, [2, 2, 2]), e(2, 1, 2), e(2, 0, 1)];
        Ok(RootBridge { roots, simple_vectors })
    }
}
