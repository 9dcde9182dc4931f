//! Torus points `t_{x,y,z,u,v,w}` and the Weyl action on them.
//!
//! The coordinates of a torus point are its eigenvalues on the six simple root
//! spaces. For a Weyl element with root matrix `M`, the action is
//! `(w·t)_i = Π_j t_j^{A_ij}` with `A = M^{-1}`, which is the convention under
//! which a lift `f` of `w` satisfies `f t f^{-1} = w·t`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{RootMatrix, WeylError, RANK};
use crate::exactfield::{CycField, CycNum};
use crate::smith::{cokernel, smith_form, solve_congruence, AbelianGroup};

pub type IntSquare = [[i64; RANK]; RANK];

/// The exponent matrix `A(w)` of the action of `w` on the torus.
pub fn torus_action(w: &RootMatrix) -> IntSquare {
    w.inverse().rows()
}

fn mat_mul(a: &IntSquare, b: &IntSquare) -> IntSquare {
    let mut c = [[0i64; RANK]; RANK];
    for i in 0..RANK {
        for j in 0..RANK {
            c[i][j] = (0..RANK).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn mat_vec(a: &IntSquare, v: &[i64; RANK]) -> [i64; RANK] {
    let mut out = [0i64; RANK];
    for i in 0..RANK {
        out[i] = (0..RANK).map(|j| a[i][j] * v[j]).sum();
    }
    out
}

/// A torus point whose coordinates are the roots of unity `ζ_N^{e_i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct TorusExp {
    pub level: u32,
    pub exps: [i64; RANK],
}

impl TorusExp {
    pub fn identity(level: u32) -> TorusExp {
        TorusExp { level, exps: [0; RANK] }
    }

    pub fn new(level: u32, exps: [i64; RANK]) -> TorusExp {
        let n = level as i64;
        TorusExp { level, exps: exps.map(|e| e.rem_euclid(n)) }
    }

    pub fn mul(&self, other: &TorusExp) -> TorusExp {
        let mut e = self.exps;
        for (a, b) in e.iter_mut().zip(&other.exps) {
            *a += b;
        }
        TorusExp::new(self.level, e)
    }

    pub fn inv(&self) -> TorusExp {
        TorusExp::new(self.level, self.exps.map(|e| -e))
    }

    pub fn pow(&self, k: i64) -> TorusExp {
        TorusExp::new(self.level, self.exps.map(|e| e * k))
    }

    pub fn act(&self, w: &RootMatrix) -> TorusExp {
        TorusExp::new(self.level, mat_vec(&torus_action(w), &self.exps))
    }

    pub fn order(&self) -> u32 {
        let n = self.level as i64;
        let g = self.exps.iter().fold(n, |g, &e| num_integer::gcd(g, e));
        (n / g) as u32
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn point(&self) -> Result<TorusPoint, WeylError> {
        let field = CycField::get(self.level)?;
        Ok(TorusPoint(self.exps.map(|e| field.zeta(e))))
    }

    /// Exponent of the eigenvalue on the root space of `root`.
    pub fn root_exponent(&self, root: &[i64; RANK]) -> i64 {
        root.iter().zip(&self.exps).map(|(a, b)| a * b).sum::<i64>().rem_euclid(self.level as i64)
    }
}

impl fmt::Display for TorusExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|&e| if e == 0 { String::from("1") } else { alloc::format!("z{}^{e}", self.level) })
            .collect();
        write!(f, "t({})", parts.join(","))
    }
}

/// A torus point with arbitrary nonzero cyclotomic coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusPoint(pub [CycNum; RANK]);

impl TorusPoint {
    pub fn identity() -> TorusPoint {
        let one = CycField::standard().one();
        TorusPoint([(); RANK].map(|_| one.clone()))
    }

    pub fn mul(&self, other: &TorusPoint) -> TorusPoint {
        TorusPoint(core::array::from_fn(|i| &self.0[i] * &other.0[i]))
    }

    /// Eigenvalue on the root space of `root`.
    pub fn eval(&self, root: &[i64; RANK]) -> Result<CycNum, WeylError> {
        let mut acc = self.0[0].field().one();
        for (c, &e) in self.0.iter().zip(root) {
            if e != 0 {
                acc = &acc * &c.powi(e)?;
            }
        }
        Ok(acc)
    }

    /// `w·t`.
    pub fn act(&self, w: &RootMatrix) -> Result<TorusPoint, WeylError> {
        let a = torus_action(w);
        let mut out = Vec::with_capacity(RANK);
        for row in &a {
            out.push(self.eval(row)?);
        }
        Ok(TorusPoint(out.try_into().expect("six coordinates")))
    }

    /// Exponents when all coordinates are powers of `ζ_N`.
    pub fn exponents(&self) -> Option<TorusExp> {
        let level = self.0[0].level();
        let mut e = [0i64; RANK];
        for (slot, c) in e.iter_mut().zip(&self.0) {
            *slot = c.zeta_exponent()? as i64;
        }
        Some(TorusExp::new(level, e))
    }
}

/// A closed subgroup `S × H` of the torus: a subtorus given by cocharacters
/// and a finite part given by generators.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct TorusSubgroup {
    pub cocharacters: Vec<[i64; RANK]>,
    pub finite: Vec<TorusExp>,
    pub finite_orders: Vec<u32>,
    pub shape: AbelianGroup,
    /// Characters `χ_k` whose values on a point give its coordinates in the
    /// decomposition: the first `finite.len()` select the finite part.
    pub coordinates: Vec<[i64; RANK]>,
}

fn big_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("small integer")
}

fn unimodular_inverse(v: &[Vec<BigInt>]) -> Vec<Vec<i64>> {
    let m: Vec<Vec<i64>> = v.iter().map(|r| r.iter().map(big_i64).collect()).collect();
    let n = m.len();
    let s = smith_form(&m, n).expect("square");
    let (u, w) = (s.u_i64().expect("small"), s.v_i64().expect("small"));
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| w[i][k] * u[k][j]).sum()).collect()).collect()
}

impl TorusSubgroup {
    /// Points of the subtorus spanned by the columns of `within` (the whole
    /// torus when `None`) on which every character in `chars` is trivial.
    pub fn cut_out(chars: &[[i64; RANK]], within: Option<&[[i64; RANK]]>, level: u32) -> Result<TorusSubgroup, WeylError> {
        let basis: Vec<[i64; RANK]> = match within {
            Some(b) => b.to_vec(),
            None => (0..RANK)
                .map(|k| {
                    let mut e = [0; RANK];
                    e[k] = 1;
                    e
                })
                .collect(),
        };
        let r = basis.len();
        let rows: Vec<Vec<i64>> = chars
            .iter()
            .map(|c| basis.iter().map(|col| c.iter().zip(col).map(|(a, b)| a * b).sum()).collect())
            .collect();
        let shape = if rows.is_empty() {
            AbelianGroup { free_rank: r, torsion: Vec::new() }
        } else {
            cokernel(&rows, r)?
        };
        let (snf_inv, v) = if rows.is_empty() || r == 0 {
            (Vec::new(), (0..r).map(|i| (0..r).map(|j| BigInt::from((i == j) as i64)).collect()).collect())
        } else {
            let s = smith_form(&rows, r)?;
            (s.invariants, s.v)
        };
        let vinv = if r == 0 { Vec::new() } else { unimodular_inverse(&v) };
        let lift = |col: &[i64]| -> [i64; RANK] {
            let mut t = [0i64; RANK];
            for (k, &c) in col.iter().enumerate() {
                for j in 0..RANK {
                    t[j] += c * basis[k][j];
                }
            }
            t
        };
        let mut cocharacters = Vec::new();
        let mut finite = Vec::new();
        let mut finite_orders = Vec::new();
        let mut coordinates = Vec::new();
        for k in 0..r {
            let col: Vec<i64> = (0..r).map(|i| big_i64(&v[i][k])).collect();
            let d = snf_inv.get(k).map(big_i64).unwrap_or(0);
            if d == 1 {
                continue;
            }
            let cochar = lift(&col);
            if d == 0 {
                cocharacters.push(cochar);
            } else {
                if level as i64 % d != 0 {
                    return Err(WeylError::NoTorusSolution { level });
                }
                finite.push(TorusExp::new(level, cochar.map(|c| c * (level as i64 / d))));
                finite_orders.push(d as u32);
                if within.is_none() {
                    let mut ch = [0i64; RANK];
                    ch.copy_from_slice(&vinv[k]);
                    coordinates.push(ch);
                }
            }
        }
        Ok(TorusSubgroup { cocharacters, finite, finite_orders, shape, coordinates })
    }

    /// Fixed points `T^w`.
    pub fn fixed_by(w: &RootMatrix, level: u32) -> Result<TorusSubgroup, WeylError> {
        TorusSubgroup::fixed_by_all(core::slice::from_ref(w), level)
    }

    /// Common fixed points of several Weyl elements.
    pub fn fixed_by_all(ws: &[RootMatrix], level: u32) -> Result<TorusSubgroup, WeylError> {
        let mut chars = Vec::new();
        for w in ws {
            let mut a = torus_action(w);
            for (i, row) in a.iter_mut().enumerate() {
                row[i] -= 1;
            }
            chars.extend(a);
        }
        TorusSubgroup::cut_out(&chars, None, level)
    }

    /// `T^w ∩ K^w`, where `K^w = {(w·t) t^{-1}}` is the image of `A(w) - 1`.
    pub fn fixed_in_image(w: &RootMatrix, level: u32) -> Result<TorusSubgroup, WeylError> {
        let mut b = torus_action(w);
        for (i, row) in b.iter_mut().enumerate() {
            row[i] -= 1;
        }
        let rows: Vec<Vec<i64>> = b.iter().map(|r| r.to_vec()).collect();
        let s = smith_form(&rows, RANK)?;
        let uinv = unimodular_inverse(&s.u);
        let within: Vec<[i64; RANK]> = (0..s.rank())
            .map(|k| {
                let mut c = [0i64; RANK];
                for (j, slot) in c.iter_mut().enumerate() {
                    *slot = uinv[j][k];
                }
                c
            })
            .collect();
        TorusSubgroup::cut_out(&b, Some(&within), level)
    }

    pub fn dimension(&self) -> usize {
        self.cocharacters.len()
    }

    pub fn contains(&self, t: &TorusExp, chars: &[[i64; RANK]]) -> bool {
        chars.iter().all(|c| t.root_exponent(c) == 0)
    }

    /// All elements of the finite part.
    pub fn finite_elements(&self) -> Vec<TorusExp> {
        let level = self.finite.first().map_or(36, |t| t.level);
        let mut out = vec![TorusExp::identity(level)];
        for (g, &d) in self.finite.iter().zip(&self.finite_orders) {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for x in &out {
                for k in 0..d as i64 {
                    next.push(x.mul(&g.pow(k)));
                }
            }
            out = next;
        }
        out
    }

    /// Human-readable parametrization: each coordinate as a monomial in the
    /// free parameters times a product of finite generators.
    pub fn describe(&self) -> String {
        let names = ["a", "b", "c", "d", "e", "f"];
        let mut coords = Vec::new();
        for j in 0..RANK {
            let mut num = Vec::new();
            let mut den = Vec::new();
            for (k, c) in self.cocharacters.iter().enumerate() {
                let e = c[j];
                let term = if e.abs() == 1 { String::from(names[k]) } else { alloc::format!("{}^{}", names[k], e.abs()) };
                if e > 0 {
                    num.push(term);
                } else if e < 0 {
                    den.push(term);
                }
            }
            let body = match (num.is_empty(), den.is_empty()) {
                (true, true) => String::from("1"),
                (false, true) => num.join(""),
                (true, false) => alloc::format!("1/{}", den.join("")),
                (false, false) => alloc::format!("{}/{}", num.join(""), den.join("")),
            };
            coords.push(body);
        }
        let mut s = alloc::format!("{} = {{ t({}) }}", self.shape.as_torus_group(), coords.join(","));
        if !self.finite.is_empty() {
            let gens: Vec<String> = self
                .finite
                .iter()
                .zip(&self.finite_orders)
                .map(|(g, d)| alloc::format!("{g} of order {d}"))
                .collect();
            s.push_str(&alloc::format!(" x < {} >", gens.join(", ")));
        }
        s
    }

    /// The finite-part component of `t` in the decomposition `S × H`
    /// induced by the Smith change of basis; `t` must lie in the subgroup.
    pub fn project_finite(&self, t: &TorusExp) -> TorusExp {
        let mut out = TorusExp::identity(t.level);
        for ((g, &d), ch) in self.finite.iter().zip(&self.finite_orders).zip(&self.coordinates) {
            let val = t.root_exponent(ch);
            let step = t.level as i64 / d as i64;
            out = out.mul(&g.pow(val / step));
        }
        out
    }
}

/// Projection onto a user-supplied finite complement `H` of the identity
/// component: the unique `h ∈ H` with `t h^{-1}` in the subtorus.
pub fn project_onto(group: &TorusSubgroup, complement: &[TorusExp], t: &TorusExp) -> Option<TorusExp> {
    let target = group.project_finite(t);
    complement.iter().copied().find(|h| group.project_finite(h) == target)
}

/// Solves `Π_{i<r} (w^i · s) = target` for `s` with coordinates in `μ_N`,
/// where `r` is the order of `w`.
pub fn solve_norm_equation(w: &RootMatrix, target: &TorusExp) -> Result<TorusExp, WeylError> {
    let m = norm_matrix(w);
    let rows: Vec<Vec<i64>> = m.iter().map(|r| r.to_vec()).collect();
    let x = solve_congruence(&rows, &target.exps, target.level as i64)
        .map_err(|_| WeylError::NoTorusSolution { level: target.level })?;
    let mut e = [0i64; RANK];
    e.copy_from_slice(&x);
    Ok(TorusExp::new(target.level, e))
}

/// `Σ_{i<r} A(w)^i`, the exponent matrix of the norm map of `w`.
pub fn norm_matrix(w: &RootMatrix) -> IntSquare {
    let a = torus_action(w);
    let mut acc = [[0i64; RANK]; RANK];
    let mut p = RootMatrix::IDENTITY.rows();
    for _ in 0..w.order() {
        for i in 0..RANK {
            for j in 0..RANK {
                acc[i][j] += p[i][j];
            }
        }
        p = mat_mul(&a, &p);
    }
    acc
}

pub fn norm_apply(w: &RootMatrix, s: &TorusExp) -> TorusExp {
    TorusExp::new(s.level, mat_vec(&norm_matrix(w), &s.exps))
}
