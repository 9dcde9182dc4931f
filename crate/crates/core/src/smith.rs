//! Integer lattices: Smith and Hermite normal forms, finitely generated
//! abelian groups and linear congruences.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("matrix rows have inconsistent lengths")]
    Ragged,
    #[error("the congruence system has no solution")]
    NoSolution,
    #[error("integer overflow while converting a result to 64 bits")]
    Overflow,
}

type Big = Vec<Vec<BigInt>>;

fn to_big(a: &[Vec<i64>]) -> Big {
    a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn identity(n: usize) -> Big {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn small(a: &Big) -> Result<IntMatrix, LatticeError> {
    a.iter()
        .map(|r| r.iter().map(|x| x.to_i64().ok_or(LatticeError::Overflow)).collect())
        .collect()
}

/// `u * a * v = diag(invariants, 0, …)` with `u`, `v` unimodular.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub invariants: Vec<BigInt>,
    pub u: Big,
    pub v: Big,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    pub fn u_i64(&self) -> Result<IntMatrix, LatticeError> {
        small(&self.u)
    }

    pub fn v_i64(&self) -> Result<IntMatrix, LatticeError> {
        small(&self.v)
    }
}

fn check_shape(a: &[Vec<i64>], cols: usize) -> Result<(), LatticeError> {
    if a.iter().any(|r| r.len() != cols) {
        Err(LatticeError::Ragged)
    } else {
        Ok(())
    }
}

/// Smith normal form of an `rows x cols` integer matrix with transforms.
pub fn smith_form(a: &[Vec<i64>], cols: usize) -> Result<SmithForm, LatticeError> {
    check_shape(a, cols)?;
    let rows = a.len();
    let mut m = to_big(a);
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut invariants = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        u.swap(t, pi);
        for r in m.iter_mut() {
            r.swap(t, pj);
        }
        for r in v.iter_mut() {
            r.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                for j in t..cols {
                    let d = &q * &m[t][j];
                    m[i][j] -= d;
                }
                for j in 0..rows {
                    let d = &q * &u[t][j];
                    u[i][j] -= d;
                }
                if !m[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for i in t..rows {
                    let d = &q * &m[i][t];
                    m[i][j] -= d;
                }
                for i in 0..cols {
                    let d = &q * &v[i][t];
                    v[i][j] -= d;
                }
                if !m[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                let mut bad = None;
                'scan: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if !m[i][j].is_multiple_of(&m[t][t]) {
                            bad = Some(i);
                            break 'scan;
                        }
                    }
                }
                match bad {
                    None => break,
                    Some(i) => {
                        for j in t..cols {
                            let x = m[i][j].clone();
                            m[t][j] += x;
                        }
                        for j in 0..rows {
                            let x = u[i][j].clone();
                            u[t][j] += x;
                        }
                        continue;
                    }
                }
            }
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                if !m[i][t].is_zero() && best.is_none_or(|(bi, bj)| m[i][t].abs() < m[bi][bj].abs()) {
                    best = Some((i, t));
                }
            }
            for j in t..cols {
                if !m[t][j].is_zero() && best.is_none_or(|(bi, bj)| m[t][j].abs() < m[bi][bj].abs()) {
                    best = Some((t, j));
                }
            }
            let (bi, bj) = best.expect("pivot row or column is nonzero");
            if bi != t {
                m.swap(t, bi);
                u.swap(t, bi);
            }
            if bj != t {
                for r in m.iter_mut() {
                    r.swap(t, bj);
                }
                for r in v.iter_mut() {
                    r.swap(t, bj);
                }
            }
        }
        if m[t][t].is_negative() {
            for j in t..cols {
                m[t][j] = -m[t][j].clone();
            }
            for j in 0..rows {
                u[t][j] = -u[t][j].clone();
            }
        }
        invariants.push(m[t][t].clone());
        t += 1;
    }
    Ok(SmithForm { invariants, u, v, rows, cols })
}

/// Row-style Hermite basis of the lattice spanned by `rows`, built incrementally
/// so arbitrarily many relations can be absorbed with memory bounded by the
/// number of columns.
#[derive(Debug, Clone)]
pub struct HermiteBasis {
    cols: usize,
    pivots: Vec<Option<Vec<BigInt>>>,
}

impl HermiteBasis {
    pub fn new(cols: usize) -> Self {
        HermiteBasis { cols, pivots: vec![None; cols] }
    }

    pub fn insert(&mut self, row: &[i64]) {
        let mut r: Vec<BigInt> = row.iter().map(|&x| BigInt::from(x)).collect();
        self.insert_big(&mut r);
    }

    fn insert_big(&mut self, r: &mut Vec<BigInt>) {
        for c in 0..self.cols {
            if r[c].is_zero() {
                continue;
            }
            match self.pivots[c].take() {
                None => {
                    if r[c].is_negative() {
                        for x in r.iter_mut() {
                            *x = -x.clone();
                        }
                    }
                    self.pivots[c] = Some(core::mem::take(r));
                    return;
                }
                Some(p) => {
                    let eg = p[c].extended_gcd(&r[c]);
                    let (a, b) = (p[c].div_floor(&eg.gcd), r[c].div_floor(&eg.gcd));
                    let mut np = Vec::with_capacity(self.cols);
                    let mut nr = Vec::with_capacity(self.cols);
                    for j in 0..self.cols {
                        np.push(&eg.x * &p[j] + &eg.y * &r[j]);
                        nr.push(&a * &r[j] - &b * &p[j]);
                    }
                    self.pivots[c] = Some(np);
                    *r = nr;
                }
            }
        }
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.pivots.iter().flatten().cloned().collect()
    }

    pub fn rank(&self) -> usize {
        self.pivots.iter().flatten().count()
    }

    /// The quotient `Z^cols / lattice`.
    pub fn quotient(&self) -> AbelianGroup {
        let rows = self.rows();
        let mut m: Vec<Vec<i64>> = Vec::new();
        let fits = rows.iter().all(|r| r.iter().all(|x| x.to_i64().is_some()));
        if fits {
            m = rows.iter().map(|r| r.iter().map(|x| x.to_i64().unwrap_or(0)).collect()).collect();
        }
        if fits {
            let snf = smith_form(&m, self.cols).expect("rows have equal length");
            return AbelianGroup::from_invariants(self.cols, &snf.invariants);
        }
        let snf = smith_big(rows, self.cols);
        AbelianGroup::from_invariants(self.cols, &snf)
    }
}

fn smith_big(mut m: Big, cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let mut inv = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for r in m.iter_mut() {
            r.swap(t, pj);
        }
        let mut done = false;
        while !done {
            done = true;
            for i in t + 1..rows {
                let q = m[i][t].div_floor(&m[t][t]);
                if !q.is_zero() {
                    for j in t..cols {
                        let d = &q * &m[t][j];
                        m[i][j] -= d;
                    }
                }
            }
            for j in t + 1..cols {
                let q = m[t][j].div_floor(&m[t][t]);
                if !q.is_zero() {
                    for i in t..rows {
                        let d = &q * &m[i][t];
                        m[i][j] -= d;
                    }
                }
            }
            let mut best: Option<(usize, usize)> = None;
            for i in t + 1..rows {
                if !m[i][t].is_zero() && best.is_none_or(|(bi, bj)| m[i][t].abs() < m[bi][bj].abs()) {
                    best = Some((i, t));
                }
            }
            for j in t + 1..cols {
                if !m[t][j].is_zero() && best.is_none_or(|(bi, bj)| m[t][j].abs() < m[bi][bj].abs()) {
                    best = Some((t, j));
                }
            }
            if let Some((bi, bj)) = best {
                done = false;
                m.swap(t, bi);
                for r in m.iter_mut() {
                    r.swap(t, bj);
                }
                continue;
            }
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !m[i][j].is_multiple_of(&m[t][t]) {
                        for k in t..cols {
                            let x = m[i][k].clone();
                            m[t][k] += x;
                        }
                        done = false;
                        break 'scan;
                    }
                }
            }
        }
        inv.push(m[t][t].abs());
        t += 1;
    }
    inv
}

/// A finitely generated abelian group `Z^free ⊕ Z_{d1} ⊕ …` stored by invariant
/// factors `d1 | d2 | …`, all greater than one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl AbelianGroup {
    pub fn from_invariants(gens: usize, invariants: &[BigInt]) -> Self {
        let torsion: Vec<u64> = invariants
            .iter()
            .map(|d| d.abs().to_u64().expect("invariant factor fits in 64 bits"))
            .filter(|&d| d > 1)
            .collect();
        AbelianGroup { free_rank: gens - invariants.len(), torsion }.canonical()
    }

    /// Builds the group from any list of cyclic orders (0 means infinite cyclic).
    pub fn from_cyclic(orders: &[u64]) -> Self {
        let free_rank = orders.iter().filter(|&&d| d == 0).count();
        let diag: Vec<BigInt> = orders.iter().filter(|&&d| d > 1).map(|&d| BigInt::from(d)).collect();
        let k = diag.len();
        let mut m = vec![vec![BigInt::zero(); k]; k];
        for (i, d) in diag.into_iter().enumerate() {
            m[i][i] = d;
        }
        let inv = smith_big(m, k);
        let torsion = inv.iter().map(|d| d.to_u64().expect("small")).filter(|&d| d > 1).collect();
        AbelianGroup { free_rank, torsion }.canonical()
    }

    fn canonical(mut self) -> Self {
        let parts = self.primary_parts();
        let mut by_prime: Vec<(u64, Vec<u64>)> = Vec::new();
        for q in parts {
            let p = factor(q)[0].0;
            match by_prime.iter_mut().find(|(pp, _)| *pp == p) {
                Some((_, v)) => v.push(q),
                None => by_prime.push((p, vec![q])),
            }
        }
        let mut inv: Vec<u64> = Vec::new();
        let len = by_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
        for (_, v) in by_prime.iter_mut() {
            v.sort_unstable();
            while v.len() < len {
                v.insert(0, 1);
            }
        }
        for k in 0..len {
            inv.push(by_prime.iter().map(|(_, v)| v[k]).product());
        }
        self.torsion = inv.into_iter().filter(|&d| d > 1).collect();
        self
    }

    /// Prime-power cyclic factors, sorted.
    pub fn primary_parts(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .torsion
            .iter()
            .flat_map(|&d| factor(d).into_iter().map(|(p, e)| p.pow(e)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn order(&self) -> Option<u64> {
        if self.free_rank > 0 {
            None
        } else {
            Some(self.torsion.iter().product())
        }
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn trivial() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    fn render(&self, free: &str) -> String {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank == 1 {
            parts.push(String::from(free));
        } else if self.free_rank > 1 {
            parts.push(alloc::format!("{free}^{}", self.free_rank));
        }
        let prim = self.primary_parts();
        let mut i = 0;
        while i < prim.len() {
            let q = prim[i];
            let n = prim[i..].iter().take_while(|&&x| x == q).count();
            if n == 1 {
                parts.push(alloc::format!("Z{q}"));
            } else {
                parts.push(alloc::format!("Z{q}^{n}"));
            }
            i += n;
        }
        if parts.is_empty() {
            String::from("1")
        } else {
            parts.join(" x ")
        }
    }

    /// Rendering as a group of torus points, e.g. `(F*)^2 x Z2^2`.
    pub fn as_torus_group(&self) -> String {
        let s = self.render("F*");
        if self.free_rank > 1 {
            s.replacen("F*^", "(F*)^", 1)
        } else {
            s
        }
    }

    /// Rendering as a lattice quotient, e.g. `Z^2 x Z3^2`.
    pub fn as_lattice_group(&self) -> String {
        self.render("Z")
    }

    /// Parses strings such as `(F*)^2 x Z2^2`, `F* x Z3`, `Z^6`, `Z4 x Z2^4` or `1`.
    pub fn parse(text: &str) -> Option<AbelianGroup> {
        let mut orders: Vec<u64> = Vec::new();
        let cleaned = text.replace(['(', ')', ' '], "").replace('×', "x");
        if cleaned == "1" {
            return Some(AbelianGroup::trivial());
        }
        for part in cleaned.split('x') {
            let (base, exp) = match part.split_once('^') {
                Some((b, e)) => (b, e.parse::<usize>().ok()?),
                None => (part, 1),
            };
            let order = if base == "F*" || base == "Z" {
                0
            } else {
                base.strip_prefix('Z')?.parse::<u64>().ok()?
            };
            orders.extend(core::iter::repeat_n(order, exp));
        }
        Some(AbelianGroup::from_cyclic(&orders))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_lattice_group())
    }
}

/// Quotient `Z^cols / rowspace(rows)`.
pub fn cokernel(rows: &[Vec<i64>], cols: usize) -> Result<AbelianGroup, LatticeError> {
    check_shape(rows, cols)?;
    let mut h = HermiteBasis::new(cols);
    for r in rows {
        h.insert(r);
    }
    Ok(h.quotient())
}

/// One solution `x` of `a x ≡ b (mod modulus)`, entries reduced to `0..modulus`.
pub fn solve_congruence(a: &[Vec<i64>], b: &[i64], modulus: i64) -> Result<Vec<i64>, LatticeError> {
    let cols = a.first().map_or(0, Vec::len);
    check_shape(a, cols)?;
    if b.len() != a.len() {
        return Err(LatticeError::Ragged);
    }
    let n = BigInt::from(modulus);
    if modulus == 1 {
        return Ok(vec![0; cols]);
    }
    let snf = smith_form(a, cols)?;
    let c: Vec<BigInt> = snf
        .u
        .iter()
        .map(|row| row.iter().zip(b).map(|(x, &y)| x * BigInt::from(y)).sum::<BigInt>().mod_floor(&n))
        .collect();
    let mut y = vec![BigInt::zero(); cols];
    for (i, ci) in c.iter().enumerate() {
        let d = snf.invariants.get(i).cloned().unwrap_or_else(BigInt::zero);
        let g = d.gcd(&n);
        if !ci.is_multiple_of(&g) {
            return Err(LatticeError::NoSolution);
        }
        if i >= cols || d.is_zero() {
            continue;
        }
        let (dg, ng, cg) = (&d / &g, &n / &g, ci / &g);
        let inv = dg.extended_gcd(&ng).x.mod_floor(&ng);
        y[i] = (cg * inv).mod_floor(&ng);
    }
    let x: Vec<i64> = snf
        .v
        .iter()
        .map(|row| {
            row.iter().zip(&y).map(|(p, q)| p * q).sum::<BigInt>().mod_floor(&n).to_i64().expect("reduced below modulus")
        })
        .collect();
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> IntMatrix {
        let m = b[0].len();
        a.iter().map(|r| (0..m).map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum()).collect()).collect()
    }

    #[test]
    fn smith_of_small_matrix() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith_form(&a, 3).unwrap();
        let inv: Vec<i64> = s.invariants.iter().map(|d| d.to_i64().unwrap()).collect();
        assert_eq!(inv, vec![2, 6, 12]);
        let d = mat_mul(&mat_mul(&s.u_i64().unwrap(), &a), &s.v_i64().unwrap());
        for (i, r) in d.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                assert_eq!(x, if i == j { inv[i] } else { 0 });
            }
        }
    }

    #[test]
    fn groups_and_rendering() {
        let g = AbelianGroup::from_cyclic(&[0, 0, 2, 2]);
        assert_eq!(g.as_torus_group(), "(F*)^2 x Z2^2");
        assert_eq!(AbelianGroup::parse("F* x Z2^2").unwrap(), AbelianGroup::from_cyclic(&[0, 2, 2]));
        assert_eq!(AbelianGroup::from_cyclic(&[6, 2]).primary_parts(), vec![2, 2, 3]);
        assert_eq!(AbelianGroup::from_cyclic(&[6, 2]).torsion, vec![2, 6]);
        assert_eq!(AbelianGroup::parse("Z3^3").unwrap().order(), Some(27));
    }

    #[test]
    fn cokernel_and_congruences() {
        let g = cokernel(&[vec![2, 0], vec![0, 3], vec![4, 3]], 2).unwrap();
        assert_eq!(g, AbelianGroup::from_cyclic(&[6]));
        let x = solve_congruence(&[vec![2, 1], vec![0, 3]], &[4, 0], 6).unwrap();
        assert_eq!((2 * x[0] + x[1]).rem_euclid(6), 4);
        assert_eq!((3 * x[1]).rem_euclid(6), 0);
        assert_eq!(solve_congruence(&[vec![2]], &[1], 4), Err(LatticeError::NoSolution));
    }
}
