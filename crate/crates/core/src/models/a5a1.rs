//! e6 as `sl(W) ⊕ sl(U) ⊕ Λ³W⊗U` with `dim W = 6`, `dim U = 2`, graded by Z2.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{solve_scalars, ActionModel, ExteriorPower, Matrix, ModelError, NamedAutomorphism, SlBasis, SpanRule, Summand};
use crate::exactfield::std36::{int, one, root};
use crate::exactfield::CycNum;
use crate::gradings::QuasitorusSpec;
use crate::liecore::LieAlgebra;
use crate::linalg::SparseVec;

const SLW: SlBasis = SlBasis { n: 6 };
const SLU: SlBasis = SlBasis { n: 2 };
const U_START: usize = 35;
const ODD_START: usize = 38;

/// Summand indices.
pub const EVEN: usize = 0;
pub const ODD: usize = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Element {
    Outer(usize),
    Inner(usize),
    Odd(usize, usize),
}

fn element(i: usize) -> Element {
    match i {
        _ if i < U_START => Element::Outer(i),
        _ if i < ODD_START => Element::Inner(i - U_START),
        _ => Element::Odd((i - ODD_START) / 2, (i - ODD_START) % 2),
    }
}

fn odd_index(t: usize, l: usize) -> usize {
    ODD_START + 2 * t + l
}

/// The symplectic form on `U`: `ε(u0, u1) = 1`.
fn form_u(l: usize, m: usize) -> i64 {
    match (l, m) {
        (0, 1) => 1,
        (1, 0) => -1,
        _ => 0,
    }
}

struct Tables {
    wedge: ExteriorPower,
    top: ExteriorPower,
}

impl Tables {
    fn new() -> Tables {
        Tables { wedge: ExteriorPower::new(6, 3), top: ExteriorPower::new(6, 6) }
    }

    /// `a ∧ b ∈ Λ⁶W ≅ F` on basis vectors.
    fn pairing(&self, s: usize, t: usize) -> i64 {
        let mut all = self.wedge.subset(s).to_vec();
        all.extend_from_slice(self.wedge.subset(t));
        self.top.index_of(&all).map_or(0, |(_, sign)| sign)
    }

    /// `⟨x·a, b⟩` extended linearly over a vector `x·a` in `Λ³W`.
    fn pairing_vec(&self, v: &SparseVec, t: usize) -> CycNum {
        v.entries().iter().fold(int(0), |acc, (s, c)| &acc + &(c * &int(self.pairing(*s, t))))
    }

    /// The traceless matrix `μ` with `tr(x μ) = ⟨x·a, b⟩` for `x ∈ gl(W)`.
    fn moment_w(&self, s: usize, t: usize) -> Matrix {
        let mut m = Matrix::zeros(6, 6);
        for p in 0..6 {
            for q in 0..6 {
                let moved = self.wedge.derivation(&Matrix::unit(6, p, q), s);
                m.set(q, p, self.pairing_vec(&moved, t));
            }
        }
        SLW.traceless(&m)
    }
}

/// The traceless matrix `ν` with `tr(x ν) = ε(x·u, u')` for `x ∈ gl(U)`.
fn moment_u(l: usize, m: usize) -> Matrix {
    let mut out = Matrix::zeros(2, 2);
    for p in 0..2 {
        for q in 0..2 {
            if q == l {
                out.set(q, p, int(form_u(p, m)));
            }
        }
    }
    SLU.traceless(&out)
}

fn bracket(tables: &Tables, i: usize, j: usize, ratio: &CycNum) -> SparseVec {
    match (element(i), element(j)) {
        (Element::Outer(p), Element::Outer(q)) => SLW.coords(&SLW.matrix(p).commutator(&SLW.matrix(q)), 0),
        (Element::Inner(p), Element::Inner(q)) => SLU.coords(&SLU.matrix(p).commutator(&SLU.matrix(q)), U_START),
        (Element::Outer(_), Element::Inner(_)) => SparseVec::zero(),
        (Element::Outer(p), Element::Odd(t, l)) => tables.wedge.derivation(&SLW.matrix(p), t).remap(|s| odd_index(s, l)),
        (Element::Inner(p), Element::Odd(t, l)) => {
            let x = SLU.matrix(p);
            SparseVec::from_pairs((0..2).map(|r| (odd_index(t, r), x.get(r, l).clone())).collect())
        }
        (Element::Odd(s, l), Element::Odd(t, m)) => {
            let mut acc = SparseVec::zero();
            let e = form_u(l, m);
            if e != 0 {
                acc = SLW.coords(&tables.moment_w(s, t), 0).scale(&int(e));
            }
            let w = tables.pairing(s, t);
            if w != 0 {
                acc = acc.add(&SLU.coords(&moment_u(l, m), U_START).scale(&(ratio * &int(w))));
            }
            acc
        }
        (a, b) => unreachable!("brackets are built for i < j, got {a:?} and {b:?}"),
    }
}

fn labels(tables: &Tables) -> Vec<String> {
    (0..78)
        .map(|i| match element(i) {
            Element::Outer(p) => match SLW.position(p) {
                Some((a, b)) => format!("E{a}{b}"),
                None => format!("H{}", p - 30),
            },
            Element::Inner(p) => match SLU.position(p) {
                Some((a, b)) => format!("e{a}{b}"),
                None => String::from("h"),
            },
            Element::Odd(t, l) => {
                let s = tables.wedge.subset(t);
                format!("w{}{}{}.u{l}", s[0], s[1], s[2])
            }
        })
        .collect()
}

fn build(tables: &Tables, ratio: &CycNum) -> LieAlgebra {
    LieAlgebra::from_brackets("e6 (sl6 + sl2 model)", labels(tables), |i, j| bracket(tables, i, j, ratio))
}

/// The model with its named automorphisms.
#[derive(Debug, Clone)]
pub struct A5A1Model {
    model: ActionModel,
    wedge: ExteriorPower,
    ratio: CycNum,
}

impl A5A1Model {
    /// Builds the model, fixing the relative scale of the `sl(U)` part of `[M1, M1]` by the Jacobi identity.
    pub fn new() -> Result<A5A1Model, ModelError> {
        let tables = Tables::new();
        let x = |s: &[usize], l: usize| odd_index(tables.wedge.index_of(s).expect("valid subset").0, l);
        let triples = [(x(&[0, 1, 2], 0), x(&[3, 4, 5], 1), x(&[0, 1, 3], 0)), (x(&[0, 1, 2], 0), x(&[3, 4, 5], 0), x(&[0, 1, 2], 1))];
        let ratio = solve_scalars(1, |s| build(&tables, &s[0]), &triples)?.into_iter().next().expect("one scalar");
        let algebra = build(&tables, &ratio);
        let summands = alloc::vec![Summand::new("sl(W)+sl(U)", 0, ODD_START), Summand::new("L3W(x)U", ODD_START, 40)];
        let model = ActionModel::new("a5a1", algebra, summands, 1, true).with_span_rules(alloc::vec![SpanRule { target: EVEN, left: ODD, right: ODD }]);
        Ok(A5A1Model { model, wedge: tables.wedge, ratio })
    }

    pub fn model(&self) -> &ActionModel {
        &self.model
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.model.structure()
    }

    /// The scalar in front of the `sl(U)` component of `[M1, M1]`.
    pub fn ratio(&self) -> &CycNum {
        &self.ratio
    }

    /// The automorphism acting on `Λ³W⊗U` by `Λ³g ⊗ h`, extended through the bracket.
    pub fn from_pair(&self, name: &str, g: &Matrix, h: &Matrix) -> Result<NamedAutomorphism, ModelError> {
        let cube = self.wedge.power(g);
        let seed: Vec<SparseVec> = (0..40)
            .map(|k| {
                let (t, l) = (k / 2, k % 2);
                let mut pairs = Vec::new();
                for (s, c) in cube.column(t).entries() {
                    for r in 0..2 {
                        let v = c * h.get(r, l);
                        if !v.is_zero() {
                            pairs.push((odd_index(*s, r), v));
                        }
                    }
                }
                SparseVec::from_pairs(pairs)
            })
            .collect();
        let map = self.model.extend(ODD, &seed).map_err(|e| match e {
            ModelError::NoExtension(msg) => ModelError::NoExtension(format!("{name}: {msg}")),
            other => other,
        })?;
        let auto = NamedAutomorphism::new(name, map)?;
        self.model.check_automorphism(&auto)?;
        Ok(auto)
    }

    /// `(diag(b, −b), diag(1, −1))` with `b = diag(1, ω, ω²)`.
    pub fn h1(&self) -> Result<NamedAutomorphism, ModelError> {
        let w = root(1, 3);
        let b = [one(), w.clone(), &w * &w];
        let diag = b.iter().cloned().chain(b.iter().map(|x| -x)).collect();
        self.from_pair("H1", &Matrix::diagonal(diag), &Matrix::from_ints(&[&[1, 0], &[0, -1]]))
    }

    /// `([[0, c], [c, 0]], swap)` with `c` the cyclic permutation matrix.
    pub fn h2(&self) -> Result<NamedAutomorphism, ModelError> {
        let c = Matrix::from_ints(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let zero = Matrix::zeros(3, 3);
        self.from_pair("H2", &Matrix::blocks(&zero, &c, &c, &zero), &Matrix::from_ints(&[&[0, 1], &[1, 0]]))
    }

    /// `−1` on `Λ³W⊗U`.
    pub fn g1(&self) -> Result<NamedAutomorphism, ModelError> {
        self.from_pair("G1", &Matrix::identity(6), &Matrix::identity(2).scale(&int(-1)))
    }

    /// `Ψ'(A) = (diag(A, A), I)`.
    pub fn psi_prime(&self, name: &str, a: &Matrix) -> Result<NamedAutomorphism, ModelError> {
        self.from_pair(name, &Matrix::block_diagonal(a, a), &Matrix::identity(2))
    }

    /// Weights of the torus `{S_{α,β} = Ψ'(diag(α, β, 1/(αβ)))}`.
    pub fn torus_weights(&self) -> Vec<Vec<i64>> {
        let coord = |i: usize| -> [i64; 2] { [[1, 0], [0, 1], [-1, -1]][i % 3] };
        (0..78)
            .map(|i| match element(i) {
                Element::Outer(p) => match SLW.position(p) {
                    Some((a, b)) => (0..2).map(|c| coord(a)[c] - coord(b)[c]).collect(),
                    None => alloc::vec![0, 0],
                },
                Element::Inner(_) => alloc::vec![0, 0],
                Element::Odd(t, _) => (0..2).map(|c| self.wedge.subset(t).iter().map(|&a| coord(a)[c]).sum()).collect(),
            })
            .collect()
    }

    /// Looks up `H1`, `H2`, `G1`, `G2 = H1³`, `G3 = H2³`.
    pub fn named(&self, name: &str) -> Result<NamedAutomorphism, ModelError> {
        let renamed = |a: NamedAutomorphism| NamedAutomorphism { name: name.into(), ..a };
        match name {
            "H1" => self.h1(),
            "H2" => self.h2(),
            "G1" => self.g1(),
            "G2" => Ok(renamed(self.h1()?.pow(3)?)),
            "G3" => Ok(renamed(self.h2()?.pow(3)?)),
            _ => Err(ModelError::UnknownAutomorphism(name.into())),
        }
    }

    fn finite(&self, gens: &[NamedAutomorphism]) -> QuasitorusSpec {
        QuasitorusSpec::finite_only(78, gens.iter().map(NamedAutomorphism::generator).collect())
    }

    /// `⟨H1, H2, G1⟩`.
    pub fn q3(&self) -> Result<QuasitorusSpec, ModelError> {
        Ok(self.finite(&[self.h1()?, self.h2()?, self.g1()?]))
    }

    /// `⟨H1³, H2³, G1⟩`.
    pub fn p3(&self) -> Result<QuasitorusSpec, ModelError> {
        Ok(self.finite(&[self.named("G2")?, self.named("G3")?, self.g1()?]))
    }

    /// `⟨H1², H2²⟩`.
    pub fn p4(&self) -> Result<QuasitorusSpec, ModelError> {
        Ok(self.finite(&[self.h1()?.pow(2)?, self.h2()?.pow(2)?]))
    }

    /// `⟨G1, G2, G3⟩` together with the torus `{S_{α,β}}`.
    pub fn q4(&self) -> Result<QuasitorusSpec, ModelError> {
        let gens = [self.g1()?, self.named("G2")?, self.named("G3")?];
        Ok(QuasitorusSpec::with_torus(78, gens.iter().map(NamedAutomorphism::generator).collect(), self.torus_weights()))
    }
}
