//! The fourteen fine gradings with their expected invariants, and every route
//! by which the crate realizes each of them.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use crate::exactfield::DEFAULT_LEVEL;
use crate::gradings::{diagonalize, lift_quasitorus, realize_pair, FiniteGenerator, GradingType, QuasitorusSpec};
use crate::liecore::{ChevalleyE6, LieAlgebra};
use crate::models::a5a1::A5A1Model;
use crate::models::adams::AdamsModel;
use crate::models::c4::{C4Model, XiSet};
use crate::models::q14::Q14Model;
use crate::smith::AbelianGroup;
use crate::weyl::{RootMatrix, TorusSubgroup, WeylGroup};

/// Number of correction systems the pair search may try.
pub const PAIR_BUDGET: u32 = 64;

/// A row of the classification: the quasitorus, its isomorphism type and the
/// expected type and identity-component dimension of its grading.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheoremRow {
    pub name: &'static str,
    pub group: &'static str,
    pub counts: &'static [usize],
    pub identity_dim: usize,
}

impl TheoremRow {
    pub fn expected_type(&self) -> GradingType {
        GradingType::new(self.counts, self.identity_dim)
    }

    pub fn expected_group(&self) -> AbelianGroup {
        AbelianGroup::parse(self.group).expect("table groups are well formed")
    }
}

const fn row(name: &'static str, group: &'static str, counts: &'static [usize], identity_dim: usize) -> TheoremRow {
    TheoremRow { name, group, counts, identity_dim }
}

/// The fourteen fine gradings.
pub const THEOREM: [TheoremRow; 14] = [
    row("Q1", "Z3^4", &[72, 0, 2], 0),
    row("Q2", "(F*)^2 x Z3^2", &[60, 9], 2),
    row("Q3", "Z3^2 x Z2^3", &[64, 7], 0),
    row("Q4", "(F*)^2 x Z2^3", &[48, 1, 0, 7], 2),
    row("Q5", "(F*)^6", &[72, 0, 0, 0, 0, 1], 6),
    row("Q6", "(F*)^4 x Z2", &[72, 1, 0, 1], 4),
    row("Q7", "Z2^6", &[48, 1, 0, 7], 0),
    row("Q8", "F* x Z2^4", &[57, 0, 7], 1),
    row("Q9", "Z3^3 x Z2", &[26, 26], 0),
    row("Q10", "(F*)^2 x Z2^3", &[60, 7, 0, 1], 2),
    row("Q11", "Z4 x Z2^4", &[48, 13, 0, 1], 0),
    row("Q12", "F* x Z2^5", &[73, 0, 0, 0, 1], 1),
    row("Q13", "Z2^7", &[72, 0, 0, 0, 0, 1], 0),
    row("Q14", "Z4^3", &[48, 15], 0),
];

/// The Z3³ grading coming from the Albert algebra, which is not fine.
pub const JORDAN: TheoremRow = row("Jordan", "Z3^3", &[0, 0, 26], 0);

/// How a quasitorus is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// A named quasitorus of the Adams model.
    Adams(&'static str),
    /// A named quasitorus of the a5⊕a1 model.
    A5A1(&'static str),
    /// `Ξ_k♦ · ⟨G5⟩` on the c4 model (action only).
    C4(usize),
    /// `⟨Υ1, Υ2, Υ3⟩` on the Z4 model.
    Z4Model,
    /// A minimized lift of one (extended) Weyl element with its fixed torus.
    Lift(&'static str),
    /// Commuting lifts of two Weyl elements with the torus fixed by both.
    Pair(&'static str, &'static str),
}

impl Route {
    /// Whether the route's model carries a full Lie bracket.
    pub fn has_full_bracket(&self) -> bool {
        !matches!(self, Route::C4(_))
    }
}

impl core::fmt::Display for Route {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Route::Adams(q) => write!(f, "adams:{q}"),
            Route::A5A1(q) => write!(f, "a5a1:{q}"),
            Route::C4(k) => write!(f, "c4:Xi{k}+G5"),
            Route::Z4Model => write!(f, "q14:U1,U2,U3"),
            Route::Lift(w) => write!(f, "lift:{w}"),
            Route::Pair(a, b) => write!(f, "lift:{a}+{b}"),
        }
    }
}

/// Every route used for the quasitorus `name`.
pub fn routes(name: &str) -> Vec<Route> {
    match name {
        "Q1" => vec![Route::Adams("Q1")],
        "Q2" => vec![Route::Adams("Q2")],
        "Q3" => vec![Route::A5A1("Q3")],
        "Q4" => vec![Route::A5A1("Q4")],
        "Q5" => vec![Route::Lift("id")],
        "Q6" => vec![Route::Lift("eta1")],
        "Q7" => vec![Route::Pair("eta1", "25470")],
        "Q8" => vec![Route::Pair("eta3", "10850")],
        "Q9" => vec![Route::Adams("Q9"), Route::Pair("eta1", "3826")],
        "Q10" => vec![Route::C4(2), Route::Lift("eta3")],
        "Q11" => vec![Route::C4(5), Route::Pair("eta3", "11127")],
        "Q12" => vec![Route::C4(6), Route::Lift("eta4")],
        "Q13" => vec![Route::C4(7), Route::Lift("eta5")],
        "Q14" => vec![Route::Z4Model, Route::Lift("mu4")],
        "Jordan" => vec![Route::Adams("Jordan")],
        _ => Vec::new(),
    }
}

/// The result of one route: the grading type, and the universal group when
/// the route carries a full bracket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub route: Route,
    pub grading_type: Result<GradingType, String>,
    pub universal_group: Option<Result<AbelianGroup, String>>,
}

impl Outcome {
    /// Whether the outcome agrees with `row`; the universal group is compared when it was computed.
    pub fn matches(&self, row: &TheoremRow) -> bool {
        let type_ok = self.grading_type.as_ref().is_ok_and(|t| *t == row.expected_type());
        let group_ok = match &self.universal_group {
            None => true,
            Some(g) => g.as_ref().is_ok_and(|g| *g == row.expected_group()),
        };
        type_ok && group_ok
    }
}

/// Lazily built models shared by all routes; safe to use from several threads.
#[derive(Default)]
pub struct Context {
    weyl: OnceBox<WeylGroup>,
    chevalley: OnceBox<ChevalleyE6>,
    adams: OnceBox<AdamsModel>,
    a5a1: OnceBox<A5A1Model>,
    z4: OnceBox<Q14Model>,
    c4: [OnceBox<C4Model>; 7],
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    /// A context around an existing Weyl group listing, for example one read from a cache.
    pub fn with_weyl(group: WeylGroup) -> Context {
        let context = Context::default();
        let _ = context.weyl.set(Box::new(group));
        context
    }

    pub fn weyl(&self) -> &WeylGroup {
        self.weyl.get_or_init(|| Box::new(WeylGroup::build()))
    }

    pub fn chevalley(&self) -> Result<&ChevalleyE6, String> {
        self.chevalley.get_or_try_init(|| ChevalleyE6::build().map(Box::new).map_err(|e| e.to_string()))
    }

    pub fn adams(&self) -> Result<&AdamsModel, String> {
        self.adams.get_or_try_init(|| AdamsModel::new().map(Box::new).map_err(|e| e.to_string()))
    }

    pub fn a5a1(&self) -> Result<&A5A1Model, String> {
        self.a5a1.get_or_try_init(|| A5A1Model::new().map(Box::new).map_err(|e| e.to_string()))
    }

    pub fn z4(&self) -> Result<&Q14Model, String> {
        self.z4.get_or_try_init(|| Q14Model::new().map(Box::new).map_err(|e| e.to_string()))
    }

    /// The c4 model for the form of `Ξ_k`.
    pub fn c4(&self, k: usize) -> Result<&C4Model, String> {
        let slot = self.c4.get(k.wrapping_sub(1)).ok_or_else(|| format!("no set Xi{k}"))?;
        slot.get_or_try_init(|| C4Model::for_xi(k).map(Box::new).map_err(|e| e.to_string()))
    }

    fn weyl_matrix(&self, name: &str) -> Result<RootMatrix, String> {
        if name == "id" {
            return Ok(RootMatrix::IDENTITY);
        }
        let g = self.weyl();
        g.parse_name(name).map(|v| g.matrix(v)).map_err(|e| e.to_string())
    }

    /// The quasitorus of a route, together with the algebra when it has a full bracket.
    pub fn spec(&self, route: Route) -> Result<(QuasitorusSpec, Option<&LieAlgebra>), String> {
        let err = |e: &dyn core::fmt::Display| e.to_string();
        match route {
            Route::Adams(q) => {
                let m = self.adams()?;
                let spec = match q {
                    "Q1" => m.q1(),
                    "Q2" => m.q2(),
                    "Q9" => m.swap_jordan(),
                    "Jordan" => m.jordan(),
                    _ => return Err(format!("no Adams quasitorus {q}")),
                };
                Ok((spec.map_err(|e| err(&e))?, Some(m.algebra())))
            }
            Route::A5A1(q) => {
                let m = self.a5a1()?;
                let spec = match q {
                    "Q3" => m.q3(),
                    "Q4" => m.q4(),
                    _ => return Err(format!("no a5+a1 quasitorus {q}")),
                };
                Ok((spec.map_err(|e| err(&e))?, Some(m.algebra())))
            }
            Route::C4(k) => {
                let m = self.c4(k)?;
                let xi = XiSet::get(k).map_err(|e| err(&e))?;
                Ok((m.quasitorus(&xi, true, None).map_err(|e| err(&e))?, None))
            }
            Route::Z4Model => {
                let m = self.z4()?;
                Ok((m.q14().map_err(|e| err(&e))?, Some(m.algebra())))
            }
            Route::Lift(w) => {
                let chev = self.chevalley()?;
                let m = self.weyl_matrix(w)?;
                let lift = chev.minimized_lift(&m).map_err(|e| err(&e))?;
                let torus = TorusSubgroup::fixed_by(&m, DEFAULT_LEVEL).map_err(|e| err(&e))?;
                let gens = vec![FiniteGenerator { name: w.into(), map: lift.map, order: lift.order }];
                Ok((lift_quasitorus(chev, gens, &torus), Some(chev.algebra())))
            }
            Route::Pair(a, b) => {
                let chev = self.chevalley()?;
                let (ma, mb) = (self.weyl_matrix(a)?, self.weyl_matrix(b)?);
                let pair = realize_pair(chev, [&ma, &mb], &[ma, mb], PAIR_BUDGET).map_err(|e| err(&e))?;
                Ok((pair.spec, Some(chev.algebra())))
            }
        }
    }

    /// Realizes one route: diagonalizes and, with a full bracket, computes the universal group.
    pub fn realize(&self, route: Route) -> Outcome {
        let (spec, algebra) = match self.spec(route) {
            Ok(x) => x,
            Err(e) => {
                let universal_group = route.has_full_bracket().then(|| Err(e.clone()));
                return Outcome { route, grading_type: Err(e), universal_group };
            }
        };
        match diagonalize(&spec) {
            Err(e) => Outcome { route, grading_type: Err(e.to_string()), universal_group: algebra.map(|_| Err(e.to_string())) },
            Ok(grading) => Outcome {
                route,
                grading_type: Ok(grading.type_of()),
                universal_group: algebra.map(|alg| grading.universal_group(alg).map_err(|e| e.to_string())),
            },
        }
    }
}

/// All (row, route) pairs of the theorem table followed by the Jordan grading.
pub fn all_routes() -> Vec<(TheoremRow, Route)> {
    THEOREM.iter().chain(core::iter::once(&JORDAN)).flat_map(|r| routes(r.name).into_iter().map(move |route| (*r, route))).collect()
}
