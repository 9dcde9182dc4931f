//! Quasitori built from torus-normalizing automorphisms of the Chevalley model.

use alloc::format;
use alloc::vec::Vec;

use super::{FiniteGenerator, GradingError, QuasitorusSpec};
use crate::exactfield::DEFAULT_LEVEL;
use crate::liecore::{ChevalleyE6, LieError, ORDER_BOUND};
use crate::linalg::LinMap;
use crate::smith::solve_congruence;
use crate::weyl::{RootMatrix, TorusExp, TorusSubgroup, RANK};

/// The quasitorus generated by the given commuting automorphisms together with
/// a closed subgroup of the maximal torus that they centralize.
pub fn lift_quasitorus(chev: &ChevalleyE6, gens: Vec<FiniteGenerator>, torus: &TorusSubgroup) -> QuasitorusSpec {
    let mut finite = gens;
    for (k, (t, &d)) in torus.finite.iter().zip(&torus.finite_orders).enumerate() {
        finite.push(FiniteGenerator { name: format!("torus{}", k + 1), map: chev.torus_auto(t), order: d });
    }
    let weights: Vec<Vec<i64>> = (0..ChevalleyE6::DIM)
        .map(|b| match chev.root_of(b) {
            None => alloc::vec![0; torus.cocharacters.len()],
            Some(root) => torus.cocharacters.iter().map(|c| (0..RANK).map(|i| root[i] * c[i]).sum()).collect(),
        })
        .collect();
    QuasitorusSpec::with_torus(ChevalleyE6::DIM, finite, weights)
}

/// Two commuting lifts of commuting Weyl elements together with the torus
/// subgroup they centralize.
#[derive(Debug, Clone)]
pub struct PairRealization {
    pub spec: QuasitorusSpec,
    pub corrections: [TorusExp; 2],
    pub orders: [u32; 2],
    pub torus: TorusSubgroup,
    pub attempts: u32,
}

fn exponent_basis(k: usize) -> [i64; 2 * RANK] {
    let mut e = [0i64; 2 * RANK];
    e[k] = 1;
    e
}

fn split(x: &[i64; 2 * RANK]) -> (TorusExp, TorusExp) {
    let mut a = [0i64; RANK];
    let mut b = [0i64; RANK];
    a.copy_from_slice(&x[..RANK]);
    b.copy_from_slice(&x[RANK..]);
    (TorusExp::new(DEFAULT_LEVEL, a), TorusExp::new(DEFAULT_LEVEL, b))
}

struct PairProblem<'a> {
    chev: &'a ChevalleyE6,
    lifts: [LinMap; 2],
    weyl_orders: [u32; 2],
}

impl PairProblem<'_> {
    fn corrected(&self, x: &[i64; 2 * RANK]) -> [LinMap; 2] {
        let (s, t) = split(x);
        [self.lifts[0].compose(&self.chev.torus_auto(&s)), self.lifts[1].compose(&self.chev.torus_auto(&t))]
    }

    /// Exponents of the commutator and of the two powers landing in the torus.
    fn evaluate(&self, x: &[i64; 2 * RANK]) -> Result<Vec<i64>, GradingError> {
        let [f, g] = self.corrected(x);
        let inv = |m: &LinMap| m.inverse().ok_or(GradingError::Lie(LieError::Inconsistent("lift is not invertible".into())));
        let comm = f.compose(&g).compose(&inv(&f)?).compose(&inv(&g)?);
        let mut out = Vec::with_capacity(3 * RANK);
        for m in [comm, f.pow(self.weyl_orders[0]), g.pow(self.weyl_orders[1])] {
            let t = self.chev.torus_part(&m).ok_or(GradingError::Lie(LieError::Inconsistent("expected a torus element".into())))?;
            out.extend(t.exps);
        }
        Ok(out)
    }
}

/// Corrects lifts of two commuting Weyl elements by torus points so that they
/// commute and have the smallest orders found within the search budget, then
/// adds the common fixed torus of the elements in `torus_from`.
pub fn realize_pair(
    chev: &ChevalleyE6,
    weyl: [&RootMatrix; 2],
    torus_from: &[RootMatrix],
    budget: u32,
) -> Result<PairRealization, GradingError> {
    let problem = PairProblem {
        chev,
        lifts: [chev.weyl_lift(weyl[0])?, chev.weyl_lift(weyl[1])?],
        weyl_orders: [weyl[0].order(), weyl[1].order()],
    };
    let level = DEFAULT_LEVEL as i64;
    let base = problem.evaluate(&[0; 2 * RANK])?;
    let mut jac: Vec<Vec<i64>> = alloc::vec![alloc::vec![0; 2 * RANK]; 3 * RANK];
    for k in 0..2 * RANK {
        let v = problem.evaluate(&exponent_basis(k))?;
        for (row, (a, b)) in jac.iter_mut().zip(v.iter().zip(&base)) {
            row[k] = (a - b).rem_euclid(level);
        }
    }
    let divisors: Vec<i64> = (1..=level).filter(|d| level % d == 0).collect();
    let mut candidates: Vec<(i64, i64)> = divisors.iter().flat_map(|&a| divisors.iter().map(move |&b| (a, b))).collect();
    candidates.sort_by_key(|&(a, b)| (a * b, a, b));
    let mut attempts = 0;
    let mut last_commutator = TorusExp::new(DEFAULT_LEVEL, core::array::from_fn(|i| base[i]));
    for (d1, d2) in candidates {
        if attempts >= budget {
            break;
        }
        attempts += 1;
        let scale = |r: usize| if r < RANK { 1 } else if r < 2 * RANK { d1 } else { d2 };
        let rows: Vec<Vec<i64>> = jac.iter().enumerate().map(|(r, row)| row.iter().map(|c| c * scale(r)).collect()).collect();
        let rhs: Vec<i64> = base.iter().enumerate().map(|(r, b)| (-b * scale(r)).rem_euclid(level)).collect();
        let Ok(sol) = solve_congruence(&rows, &rhs, level) else { continue };
        let mut x = [0i64; 2 * RANK];
        x.copy_from_slice(&sol);
        let check = problem.evaluate(&x)?;
        last_commutator = TorusExp::new(DEFAULT_LEVEL, core::array::from_fn(|i| check[i]));
        if !last_commutator.is_identity() {
            continue;
        }
        let [f, g] = problem.corrected(&x);
        let orders = [f.order(ORDER_BOUND).ok_or(LieError::OrderUnbounded(ORDER_BOUND))?, g.order(ORDER_BOUND).ok_or(LieError::OrderUnbounded(ORDER_BOUND))?];
        let torus = TorusSubgroup::fixed_by_all(torus_from, DEFAULT_LEVEL)?;
        let gens = alloc::vec![
            FiniteGenerator { name: "first".into(), map: f, order: orders[0] },
            FiniteGenerator { name: "second".into(), map: g, order: orders[1] },
        ];
        let spec = lift_quasitorus(chev, gens, &torus);
        let (s, t) = split(&x);
        return Ok(PairRealization { spec, corrections: [s, t], orders, torus, attempts });
    }
    Err(GradingError::SearchExhausted { attempts, commutator: last_commutator })
}
