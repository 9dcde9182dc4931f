//! e6 as the Z4-graded algebra `sl(W) ⊕ sl(V) ⊕ S²W⊗V ⊕ S²(Λ²W)' ⊕ S²W*⊗V*`
//! with `dim W = 4`, `dim V = 2`. Every bracket is an equivariant bilinear map,
//! unique up to scale; the relative scalars are fixed by Jacobi.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{
    equivariant_maps, matrix_map, solve_scalars, tensor_maps, ActionModel, BilinearMap, ExteriorPower, Matrix, ModelError, NamedAutomorphism, Rep, SlBasis, SpanRule, Summand, SymmetricSquare,
};
use crate::exactfield::std36::{int, one, root};
use crate::exactfield::CycNum;
use crate::gradings::QuasitorusSpec;
use crate::liecore::LieAlgebra;
use crate::linalg::{kernel, LinMap, SparseVec};

const SLW: SlBasis = SlBasis { n: 4 };
const SLV: SlBasis = SlBasis { n: 2 };
const SLV_START: usize = 15;
const N1_START: usize = 18;
const N2_START: usize = 38;
const N3_START: usize = 58;
const PART: usize = 20;

/// Summand indices: the even part and the components of degree 1, 2, 3.
pub const EVEN: usize = 0;
pub const N1: usize = 1;
pub const N2: usize = 2;
pub const N3: usize = 3;

fn w_weight(i: usize) -> Vec<i64> {
    let mut u = [0i64; 4];
    u[i] = 1;
    (0..3).map(|k| u[k] - u[3]).collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

fn linmap_to_matrix(m: &LinMap) -> Matrix {
    let mut out = Matrix::zeros(m.dim(), m.dim());
    for (j, col) in m.columns().iter().enumerate() {
        for (i, c) in col.entries() {
            out.set(*i, j, c.clone());
        }
    }
    out
}

/// The even part as `sl(W) ⊕ sl(V)`: basis element `k` as a pair of matrices.
fn even_matrices(k: usize) -> (Matrix, Matrix) {
    if k < SLV_START {
        (SLW.matrix(k), Matrix::zeros(2, 2))
    } else {
        (Matrix::zeros(4, 4), SLV.matrix(k - SLV_START))
    }
}

/// The modules of the even part, each with the action of all 18 basis elements.
struct Modules {
    adjoint_w: Rep,
    adjoint_v: Rep,
    parts: [Rep; 3],
    /// Basis of `S²(Λ²W)'` inside `S²(Λ²W)`.
    wedge_square_basis: Vec<SparseVec>,
}

fn derivation_map(dim: usize, f: impl Fn(usize) -> SparseVec) -> LinMap {
    LinMap::from_columns((0..dim).map(f).collect())
}

impl Modules {
    fn new() -> Modules {
        let sym_w = SymmetricSquare::new(4);
        let sym_wedge = SymmetricSquare::new(6);
        let wedge = ExteriorPower::new(4, 2);
        let top = ExteriorPower::new(4, 4);
        let even: Vec<(Matrix, Matrix)> = (0..18).map(even_matrices).collect();

        let adjoint = |basis: SlBasis, pick: fn(&(Matrix, Matrix)) -> &Matrix| {
            let weights = (0..basis.dim())
                .map(|k| match basis.position(k) {
                    Some((i, j)) if basis.n == 4 => {
                        let mut w = add(&w_weight(i), &neg(&w_weight(j)));
                        w.push(0);
                        w
                    }
                    Some((i, _)) => alloc::vec![0, 0, 0, if i == 0 { 2 } else { -2 }],
                    None => alloc::vec![0; 4],
                })
                .collect();
            let action = even
                .iter()
                .map(|pair| {
                    let x = pick(pair);
                    derivation_map(basis.dim(), |k| basis.coords(&x.commutator(&basis.matrix(k)), 0))
                })
                .collect();
            Rep { weights, action }
        };
        let adjoint_w = adjoint(SLW, |p| &p.0);
        let adjoint_v = adjoint(SLV, |p| &p.1);

        let v_weight = |l: usize| if l == 0 { 1 } else { -1 };
        let sym_weights = |dual: bool| -> Vec<Vec<i64>> {
            let sign = if dual { -1 } else { 1 };
            (0..sym_w.dim())
                .flat_map(|p| {
                    let (a, b) = sym_w.pair(p);
                    let w: Vec<i64> = add(&w_weight(a), &w_weight(b)).iter().map(|x| sign * x).collect();
                    (0..2).map(move |l| {
                        let mut full = w.clone();
                        full.push(sign * v_weight(l));
                        full
                    })
                })
                .collect()
        };
        let sym_action = |dual: bool| -> Vec<LinMap> {
            even.iter()
                .map(|(x, y)| {
                    let (x, y) = if dual { (x.transpose().scale(&int(-1)), y.transpose().scale(&int(-1))) } else { (x.clone(), y.clone()) };
                    let on_w = derivation_map(sym_w.dim(), |p| sym_w.derivation(&x, p));
                    tensor_maps(&on_w, &LinMap::identity(2)).add(&tensor_maps(&LinMap::identity(sym_w.dim()), &matrix_map(&y)))
                })
                .collect()
        };
        let first = Rep { weights: sym_weights(false), action: sym_action(false) };
        let third = Rep { weights: sym_weights(true), action: sym_action(true) };

        let wedge_weight = |s: usize| {
            let set = wedge.subset(s);
            add(&w_weight(set[0]), &w_weight(set[1]))
        };
        let full_square = Rep {
            weights: (0..sym_wedge.dim())
                .map(|p| {
                    let (a, b) = sym_wedge.pair(p);
                    let mut w = add(&wedge_weight(a), &wedge_weight(b));
                    w.push(0);
                    w
                })
                .collect(),
            action: even
                .iter()
                .map(|(x, _)| {
                    let on_wedge = linmap_to_matrix(&derivation_map(6, |s| wedge.derivation(x, s)));
                    derivation_map(sym_wedge.dim(), |p| sym_wedge.derivation(&on_wedge, p))
                })
                .collect(),
        };
        let product: Vec<SparseVec> = (0..sym_wedge.dim())
            .map(|p| {
                let (a, b) = sym_wedge.pair(p);
                let mut all = wedge.subset(a).to_vec();
                all.extend_from_slice(wedge.subset(b));
                top.index_of(&all).map_or_else(SparseVec::zero, |(_, sign)| SparseVec::single(0, int(sign)))
            })
            .collect();
        let wedge_square_basis = kernel(&product);
        let weights = wedge_square_basis.iter().map(|v| full_square.weights[v.entries()[0].0].clone()).collect();
        let second = full_square.sub(&wedge_square_basis, weights).expect("the kernel of the wedge product is a submodule");

        Modules { adjoint_w, adjoint_v, parts: [first, second, third], wedge_square_basis }
    }
}

/// Equivariant maps of each bracket pair, normalized so that each space is one-dimensional.
struct Brackets {
    one_one: BilinearMap,
    one_two: BilinearMap,
    one_three_w: BilinearMap,
    one_three_v: BilinearMap,
    two_two: BilinearMap,
    two_three: BilinearMap,
    three_three: BilinearMap,
}

fn unique(mut maps: Vec<BilinearMap>, what: &str) -> Result<BilinearMap, ModelError> {
    if maps.len() != 1 {
        return Err(ModelError::Unsolvable(format!("{what}: {} equivariant maps", maps.len())));
    }
    Ok(maps.remove(0))
}

impl Brackets {
    fn new(m: &Modules) -> Result<Brackets, ModelError> {
        let [p1, p2, p3] = &m.parts;
        Ok(Brackets {
            one_one: unique(equivariant_maps(p1, p1, p2, true), "[N1, N1]")?,
            one_two: unique(equivariant_maps(p1, p2, p3, false), "[N1, N2]")?,
            one_three_w: unique(equivariant_maps(p1, p3, &m.adjoint_w, false), "[N1, N3] in sl(W)")?,
            one_three_v: unique(equivariant_maps(p1, p3, &m.adjoint_v, false), "[N1, N3] in sl(V)")?,
            two_two: unique(equivariant_maps(p2, p2, &m.adjoint_w, true), "[N2, N2]")?,
            two_three: unique(equivariant_maps(p2, p3, p1, false), "[N2, N3]")?,
            three_three: unique(equivariant_maps(p3, p3, p2, true), "[N3, N3]")?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Place {
    Even(usize),
    Part(usize, usize),
}

fn place(i: usize) -> Place {
    match i {
        _ if i < N1_START => Place::Even(i),
        _ => Place::Part((i - N1_START) / PART + 1, (i - N1_START) % PART),
    }
}

fn start(part: usize) -> usize {
    [0, N1_START, N2_START, N3_START][part]
}

/// Scalars of the brackets `[N1,N3]→sl(V)`, `[N2,N2]`, `[N2,N3]` and `[N3,N3]`,
/// relative to the normalized `[N1,N1]`, `[N1,N2]` and `[N1,N3]→sl(W)`.
fn build(modules: &Modules, brackets: &Brackets, scalars: &[CycNum]) -> LieAlgebra {
    let labels: Vec<String> = (0..15)
        .map(|k| format!("w{k}"))
        .chain((0..3).map(|k| format!("v{k}")))
        .chain((1..=3).flat_map(|p| (0..PART).map(move |k| format!("n{p}.{k}"))))
        .collect();
    let (c_v, d, e, f) = (&scalars[0], &scalars[1], &scalars[2], &scalars[3]);
    LieAlgebra::from_brackets("e6 (Z4 model)", labels, |i, j| match (place(i), place(j)) {
        (Place::Even(a), Place::Even(b)) => {
            let (xa, ya) = even_matrices(a);
            let (xb, yb) = even_matrices(b);
            SLW.coords(&xa.commutator(&xb), 0).add(&SLV.coords(&ya.commutator(&yb), SLV_START))
        }
        (Place::Even(a), Place::Part(p, y)) => modules.parts[p - 1].action[a].column(y).remap(|k| k + start(p)),
        (Place::Part(1, x), Place::Part(1, y)) => brackets.one_one.get(x, y).remap(|k| k + N2_START),
        (Place::Part(1, x), Place::Part(2, y)) => brackets.one_two.get(x, y).remap(|k| k + N3_START),
        (Place::Part(1, x), Place::Part(3, y)) => brackets.one_three_w.get(x, y).add(&brackets.one_three_v.get(x, y).scale(c_v).remap(|k| k + SLV_START)),
        (Place::Part(2, x), Place::Part(2, y)) => brackets.two_two.get(x, y).scale(d),
        (Place::Part(2, x), Place::Part(3, y)) => brackets.two_three.get(x, y).scale(e).remap(|k| k + N1_START),
        (Place::Part(3, x), Place::Part(3, y)) => brackets.three_three.get(x, y).scale(f).remap(|k| k + N2_START),
        _ => unreachable!("brackets are built for i < j"),
    })
}

/// The Z4 model together with its solved bracket scalars.
#[derive(Debug, Clone)]
pub struct Q14Model {
    model: ActionModel,
    scalars: Vec<CycNum>,
    wedge_square_basis: Vec<SparseVec>,
}

impl Q14Model {
    pub fn new() -> Result<Q14Model, ModelError> {
        let modules = Modules::new();
        let brackets = Brackets::new(&modules)?;
        let mut triples = Vec::new();
        for k in 0..4 {
            let n1 = |o: usize| N1_START + (5 * k + o) % PART;
            let n2 = |o: usize| N2_START + (6 * k + o) % PART;
            let n3 = |o: usize| N3_START + (7 * k + o) % PART;
            triples.push((n1(0), n1(3), n3(1)));
            triples.push((n1(0), n1(3), n2(2)));
            triples.push((n1(0), n3(4), n3(9)));
            triples.push((n1(1), n2(0), n2(5)));
        }
        let scalars = solve_scalars(4, |s| build(&modules, &brackets, s), &triples)?;
        let algebra = build(&modules, &brackets, &scalars);
        let summands = alloc::vec![
            Summand::new("sl(W)+sl(V)", 0, N1_START),
            Summand::new("S2(W)*V", N1_START, PART),
            Summand::new("S2(L2W)'", N2_START, PART),
            Summand::new("S2(W*)*V*", N3_START, PART),
        ];
        let rules = alloc::vec![
            SpanRule { target: N2, left: N1, right: N1 },
            SpanRule { target: N3, left: N1, right: N2 },
            SpanRule { target: EVEN, left: N1, right: N3 },
        ];
        let model = ActionModel::new("q14", algebra, summands, 1, true).with_span_rules(rules);
        Ok(Q14Model { model, scalars, wedge_square_basis: modules.wedge_square_basis })
    }

    pub fn model(&self) -> &ActionModel {
        &self.model
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.model.structure()
    }

    /// The solved scalars of `[N1,N3]→sl(V)`, `[N2,N2]`, `[N2,N3]`, `[N3,N3]`.
    pub fn scalars(&self) -> &[CycNum] {
        &self.scalars
    }

    /// Basis of `S²(Λ²W)'` in the pair basis of `S²(Λ²W)`.
    pub fn wedge_square_basis(&self) -> &[SparseVec] {
        &self.wedge_square_basis
    }

    /// The automorphism extending `S²f ⊗ g` on `S²W⊗V`.
    pub fn from_pair(&self, name: &str, f: &Matrix, g: &Matrix) -> Result<NamedAutomorphism, ModelError> {
        let seed = tensor_maps(&SymmetricSquare::new(4).power(f), &matrix_map(g));
        let seed: Vec<SparseVec> = seed.columns().iter().map(|c| c.remap(|k| k + N1_START)).collect();
        let map = self.model.extend(N1, &seed).map_err(|e| match e {
            ModelError::NoExtension(msg) => ModelError::NoExtension(format!("{name}: {msg}")),
            other => other,
        })?;
        let auto = NamedAutomorphism::new(name, map)?;
        self.model.check_automorphism(&auto)?;
        Ok(auto)
    }

    /// `i^k` on the degree-`k` component.
    pub fn u1(&self) -> Result<NamedAutomorphism, ModelError> {
        let i = root(1, 4);
        let powers = [one(), i.clone(), &i * &i, &(&i * &i) * &i];
        let diag = (0..self.model.dim()).map(|k| if k < N1_START { one() } else { powers[(k - N1_START) / PART + 1].clone() }).collect();
        NamedAutomorphism::new("U1", LinMap::diagonal(diag))
    }

    /// Extension of the 4-cycle on `W` and the swap on `V`.
    pub fn u2(&self) -> Result<NamedAutomorphism, ModelError> {
        let cycle = Matrix::from_ints(&[&[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        let swap = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        self.from_pair("U2", &cycle, &swap)
    }

    /// Extension of `diag(1, i, −1, −i)` on `W` and `diag(1, −1)` on `V`.
    pub fn u3(&self) -> Result<NamedAutomorphism, ModelError> {
        let i = root(1, 4);
        let f = Matrix::diagonal(alloc::vec![one(), i.clone(), int(-1), -&i]);
        let g = Matrix::from_ints(&[&[1, 0], &[0, -1]]);
        self.from_pair("U3", &f, &g)
    }

    pub fn named(&self, name: &str) -> Result<NamedAutomorphism, ModelError> {
        match name {
            "U1" => self.u1(),
            "U2" => self.u2(),
            "U3" => self.u3(),
            _ => Err(ModelError::UnknownAutomorphism(name.into())),
        }
    }

    /// The quasitorus `⟨U1, U2, U3⟩`.
    pub fn q14(&self) -> Result<QuasitorusSpec, ModelError> {
        let autos = [self.u1()?, self.u2()?, self.u3()?];
        Ok(QuasitorusSpec::finite_only(self.model.dim(), autos.iter().map(NamedAutomorphism::generator).collect()))
    }

    /// For an automorphism of the form `S²f⊗g` on `N1`, the scalars by which
    /// it differs from the functorial action on `N2` (`S²Λ²f`) and on `N3`
    /// (`S²f^{-T} ⊗ g^{-T}`); `None` when it is not a multiple.
    pub fn functorial_scalars(&self, auto: &NamedAutomorphism, f: &Matrix, g: &Matrix) -> Option<[CycNum; 2]> {
        let wedge = ExteriorPower::new(4, 2);
        let on_wedge = linmap_to_matrix(&wedge.power(f));
        let square = SymmetricSquare::new(6).power(&on_wedge);
        let f_dual = f.inverse()?.transpose();
        let g_dual = g.inverse()?.transpose();
        let third = tensor_maps(&SymmetricSquare::new(4).power(&f_dual), &matrix_map(&g_dual));
        let ratio = |part: usize, expected: &dyn Fn(usize) -> SparseVec| -> Option<CycNum> {
            let mut found: Option<CycNum> = None;
            for k in 0..PART {
                let actual = auto.map.column(start(part) + k).remap(|r| r - start(part));
                let want = expected(k);
                let (p, c) = want.entries().first()?.clone();
                let s = &actual.get(p)?.clone() * &c.inv().ok()?;
                if actual != want.scale(&s) || found.as_ref().is_some_and(|x| *x != s) {
                    return None;
                }
                found = Some(s);
            }
            found
        };
        let on_second = |k: usize| {
            let image = square.apply(&self.wedge_square_basis[k]);
            coordinates_in(&self.wedge_square_basis, &image)
        };
        let on_third = |k: usize| third.column(k).clone();
        Some([ratio(N2, &on_second)?, ratio(N3, &on_third)?])
    }
}

/// Coordinates of `v` in the basis `basis`, whose vectors have distinct leading entries.
fn coordinates_in(basis: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut cols = basis.to_vec();
    cols.push(v.neg());
    let ker = kernel(&cols);
    let solution = ker.iter().find(|k| k.get(basis.len()).is_some()).expect("vector lies in the span");
    let s = solution.get(basis.len()).expect("checked above").inv().expect("nonzero");
    SparseVec::from_pairs((0..basis.len()).filter_map(|k| solution.get(k).map(|c| (k, c * &s))).collect())
}
