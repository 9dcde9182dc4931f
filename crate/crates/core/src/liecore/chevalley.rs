//! The Chevalley form of e6 and its torus and Weyl-lift automorphisms.
//!
//! Basis order: the simple coroots `h_1..h_6`, then `e_β` for the 36 positive
//! roots by height, then `e_{-β}` in the same order. Signs come from the
//! bimultiplicative cocycle `ε` on the root lattice with `ε(α_i, α_i) = -1`
//! and, for `i < j`, `ε(α_i, α_j) = -1` exactly when the nodes are joined.
//! Negative root vectors are rescaled by `-1` so that `[e_α, e_{-α}] = h_α`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{LieAlgebra, LieError, ORDER_BOUND};
use crate::exactfield::{CycField, DEFAULT_LEVEL};
use crate::linalg::{LinMap, SparseVec};
use crate::weyl::{positive_roots, root_pairing, solve_norm_equation, RootMatrix, TorusExp, TorusPoint, CARTAN, RANK};

type Root = [i64; RANK];

/// How to obtain a non-simple root vector from smaller ones:
/// `[e_{±α_i}, e_γ] = sign · e_β`.
#[derive(Debug, Clone, Copy)]
struct Recipe {
    simple: usize,
    other: usize,
    sign: i64,
}

/// e6 in a Chevalley basis together with its root bookkeeping.
#[derive(Debug, Clone)]
pub struct ChevalleyE6 {
    algebra: LieAlgebra,
    roots: Vec<Root>,
    index: BTreeMap<Root, usize>,
    recipes: Vec<Option<Recipe>>,
}

/// A lift of a Weyl element composed with a torus correction of minimal order.
#[derive(Debug, Clone)]
pub struct MinimizedLift {
    pub map: LinMap,
    pub correction: TorusExp,
    pub order: u32,
    pub minimized: bool,
}

fn cocycle(a: &Root, b: &Root) -> i64 {
    let mut parity = 0;
    for i in 0..RANK {
        parity += a[i] * b[i];
        for j in i + 1..RANK {
            if CARTAN[i][j] == -1 {
                parity += a[i] * b[j];
            }
        }
    }
    if parity.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn is_positive(r: &Root) -> bool {
    r.iter().all(|&c| c >= 0)
}

fn root_label(r: &Root) -> String {
    let sign = if is_positive(r) { "+" } else { "-" };
    let digits: String = r.iter().map(|c| char::from(b'0' + c.unsigned_abs() as u8)).collect();
    format!("e{sign}{digits}")
}

fn add(a: &Root, b: &Root) -> Root {
    let mut s = *a;
    for i in 0..RANK {
        s[i] += b[i];
    }
    s
}

fn neg(a: &Root) -> Root {
    a.map(|c| -c)
}

impl ChevalleyE6 {
    pub const DIM: usize = 78;
    pub const CARTAN_DIM: usize = RANK;

    /// Builds the algebra and certifies it with the exhaustive Jacobi check.
    pub fn build() -> Result<ChevalleyE6, LieError> {
        let c = ChevalleyE6::construct();
        c.algebra.check_jacobi()?;
        Ok(c)
    }

    /// Builds the algebra without the Jacobi certificate.
    pub fn construct() -> ChevalleyE6 {
        let positive = positive_roots();
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(neg));
        let index: BTreeMap<Root, usize> = roots.iter().enumerate().map(|(k, r)| (*r, RANK + k)).collect();
        let mut labels: Vec<String> = (1..=RANK).map(|i| format!("h{i}")).collect();
        labels.extend(roots.iter().map(root_label));
        let field = CycField::standard();
        let scale = |r: &Root| if is_positive(r) { 1 } else { -1 };
        let algebra = LieAlgebra::from_brackets("chevalley-e6", labels, |i, j| {
            if j < RANK {
                return SparseVec::zero();
            }
            let b = roots[j - RANK];
            if i < RANK {
                let mut simple = [0; RANK];
                simple[i] = 1;
                return SparseVec::single(j, field.int(root_pairing(&b, &simple)));
            }
            let a = roots[i - RANK];
            let s = add(&a, &b);
            if s.iter().all(|&x| x == 0) {
                return SparseVec::from_pairs((0..RANK).map(|k| (k, field.int(a[k]))).collect());
            }
            match index.get(&s) {
                Some(&k) => SparseVec::single(k, field.int(scale(&a) * scale(&b) * scale(&s) * cocycle(&a, &b))),
                None => SparseVec::zero(),
            }
        });
        let mut recipes = alloc::vec![None; Self::DIM];
        for (k, beta) in roots.iter().enumerate() {
            if beta.iter().map(|c| c.abs()).sum::<i64>() == 1 {
                continue;
            }
            let sign = if is_positive(beta) { 1 } else { -1 };
            for i in 0..RANK {
                let mut gamma = *beta;
                gamma[i] -= sign;
                if let Some(&other) = index.get(&gamma) {
                    let mut simple = [0; RANK];
                    simple[i] = sign;
                    let simple_idx = index[&simple];
                    let bracket = algebra.basis_bracket(simple_idx, other);
                    let coeff = bracket.get(RANK + k).expect("root strings in E6 are unbroken");
                    let sign = if coeff.is_one() { 1 } else { -1 };
                    recipes[RANK + k] = Some(Recipe { simple: simple_idx, other, sign });
                    break;
                }
            }
        }
        ChevalleyE6 { algebra, roots, index, recipes }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    /// Root of a basis vector, `None` on the Cartan part.
    pub fn root_of(&self, basis: usize) -> Option<Root> {
        basis.checked_sub(RANK).map(|k| self.roots[k])
    }

    pub fn basis_of_root(&self, root: &Root) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// The diagonal automorphism of a torus point with root-of-unity coordinates.
    pub fn torus_auto(&self, t: &TorusExp) -> LinMap {
        let field = CycField::get(t.level).expect("torus levels are supported");
        let mut diag: Vec<_> = (0..RANK).map(|_| field.one()).collect();
        diag.extend(self.roots.iter().map(|r| field.zeta(t.root_exponent(r))));
        LinMap::diagonal(diag)
    }

    /// The inner automorphism with Kac coordinates `(p_0, …, p_6)` on the
    /// extended diagram: `e_{α_i}` is scaled by `ζ_m^{p_i}` where
    /// `m = Σ n_i p_i` with marks `n = (1, 1, 2, 2, 3, 2, 1)`.
    pub fn kac_automorphism(&self, coords: [u32; RANK + 1]) -> Result<LinMap, LieError> {
        const MARKS: [u32; RANK + 1] = [1, 1, 2, 2, 3, 2, 1];
        let order: u32 = coords.iter().zip(MARKS).map(|(p, n)| p * n).sum();
        if order == 0 || !DEFAULT_LEVEL.is_multiple_of(order) {
            return Err(LieError::Inconsistent(format!("Kac coordinates {coords:?} give order {order}, which does not divide {DEFAULT_LEVEL}")));
        }
        let step = (DEFAULT_LEVEL / order) as i64;
        let mut exps = [0i64; RANK];
        for (e, p) in exps.iter_mut().zip(&coords[1..]) {
            *e = step * *p as i64;
        }
        Ok(self.torus_auto(&TorusExp { level: DEFAULT_LEVEL, exps }))
    }

    /// The diagonal automorphism of an arbitrary torus point.
    pub fn torus_point_auto(&self, t: &TorusPoint) -> Result<LinMap, LieError> {
        let mut diag: Vec<_> = (0..RANK).map(|_| CycField::standard().one()).collect();
        for r in &self.roots {
            diag.push(t.eval(r)?);
        }
        Ok(LinMap::diagonal(diag))
    }

    /// The lift sending `e_{±α_i}` to `e_{±w(α_i)}`, extended through brackets.
    pub fn weyl_lift(&self, w: &RootMatrix) -> Result<LinMap, LieError> {
        let field = CycField::standard();
        let mut cols: Vec<SparseVec> = alloc::vec![SparseVec::zero(); Self::DIM];
        for i in 0..RANK {
            let image: Root = core::array::from_fn(|j| w.entry(i, j));
            cols[i] = SparseVec::from_pairs((0..RANK).map(|k| (k, field.int(image[k]))).collect());
            let up = self.index.get(&image).ok_or(LieError::NotNormalizing)?;
            let down = self.index.get(&neg(&image)).ok_or(LieError::NotNormalizing)?;
            let mut simple = [0; RANK];
            simple[i] = 1;
            cols[self.index[&simple]] = SparseVec::unit(*up);
            cols[self.index[&neg(&simple)]] = SparseVec::unit(*down);
        }
        for k in RANK..Self::DIM {
            if let Some(r) = self.recipes[k] {
                let v = self.algebra.bracket(&cols[r.simple], &cols[r.other]);
                cols[k] = if r.sign == 1 { v } else { v.neg() };
            }
        }
        let f = LinMap::from_columns(cols);
        self.algebra.check_automorphism(&f)?;
        Ok(f)
    }

    /// The torus point of a diagonal automorphism that is trivial on the Cartan part.
    pub fn torus_part(&self, f: &LinMap) -> Option<TorusExp> {
        let mut exps = [0i64; RANK];
        for i in 0..RANK {
            if f.column(i) != &SparseVec::unit(i) {
                return None;
            }
            let mut simple = [0; RANK];
            simple[i] = 1;
            let k = self.index[&simple];
            let col = f.column(k);
            if col.nnz() != 1 || col.entries()[0].0 != k {
                return None;
            }
            exps[i] = col.entries()[0].1.zeta_exponent()? as i64;
        }
        let t = TorusExp::new(DEFAULT_LEVEL, exps);
        (self.torus_auto(&t) == *f).then_some(t)
    }

    /// The element of the extended Weyl group induced by an automorphism
    /// normalizing the Cartan subalgebra.
    pub fn weyl_projection(&self, f: &LinMap) -> Result<RootMatrix, LieError> {
        let mut rows = [[0i64; RANK]; RANK];
        for (i, row) in rows.iter_mut().enumerate() {
            let mut simple = [0; RANK];
            simple[i] = 1;
            let col = f.column(self.index[&simple]);
            if col.nnz() != 1 {
                return Err(LieError::NotNormalizing);
            }
            *row = self.root_of(col.entries()[0].0).ok_or(LieError::NotNormalizing)?;
        }
        Ok(RootMatrix::from_rows(rows))
    }

    /// The lift of `w` corrected by a torus point so that its order is as small
    /// as possible among corrections with coordinates in `μ_N`.
    pub fn minimized_lift(&self, w: &RootMatrix) -> Result<MinimizedLift, LieError> {
        let lift = self.weyl_lift(w)?;
        let r = w.order();
        let power = lift.pow(r);
        let base = self.torus_part(&power).ok_or(LieError::Inconsistent("power of a lift is not a torus point".into()))?;
        let level = DEFAULT_LEVEL as i64;
        for d in (1..=level).filter(|d| level % d == 0) {
            let modulus = level / d;
            let target = TorusExp::new(modulus as u32, base.exps.map(|e| -e));
            let Ok(x) = solve_norm_equation(w, &target) else { continue };
            let correction = TorusExp::new(DEFAULT_LEVEL, x.exps.map(|e| e * d));
            let map = lift.compose(&self.torus_auto(&correction));
            let order = map.order(ORDER_BOUND).ok_or(LieError::OrderUnbounded(ORDER_BOUND))?;
            return Ok(MinimizedLift { map, correction, order, minimized: true });
        }
        let order = lift.order(ORDER_BOUND).ok_or(LieError::OrderUnbounded(ORDER_BOUND))?;
        Ok(MinimizedLift { map: lift, correction: TorusExp::identity(DEFAULT_LEVEL), order, minimized: false })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cocycle_squares_match_root_norms() {
        let c = ChevalleyE6::construct();
        for r in c.roots() {
            assert_eq!(cocycle(r, r), -1);
        }
    }

    #[test]
    fn opposite_root_vectors_bracket_to_coroots() {
        let c = ChevalleyE6::construct();
        for (k, r) in c.roots().iter().enumerate() {
            let opp = c.basis_of_root(&neg(r)).unwrap();
            let h = c.algebra().basis_bracket(RANK + k, opp);
            assert!(h.support().all(|i| i < RANK));
            assert_eq!(h.nnz(), r.iter().filter(|&&x| x != 0).count());
        }
    }
}
