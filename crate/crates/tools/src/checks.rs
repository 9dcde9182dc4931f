//! The verification checks, grouped by acceptance criterion and by suite.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use e6core::catalog::{all_routes, Route, PAIR_BUDGET, THEOREM};
use e6core::exactfield::{std36, CycField, CycNum, DEFAULT_LEVEL};
use e6core::gradings::{diagonalize, realize_pair, Degree, GradingType, QuasitorusSpec};
use e6core::liecore::LieAlgebra;
use e6core::linalg::{LinMap, SparseVec};
use e6core::models::c4::{XiSet, ODD, SP};
use e6core::models::NamedAutomorphism;
use e6core::smith::AbelianGroup;
use e6core::weyl::{RootMatrix, TorusSubgroup, VElement, WeylIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::ToolError;
use crate::report::{CheckRecord, Provenance, Status};
use crate::session::Session;
use crate::tables::{INNER_CLASSES, KAC_CLASSES, LIFT_ORDERS, MODULE_TYPES, OUTER_CLASSES, SP_TYPES};

/// Seed of the randomized field-axiom check.
pub const FIELD_SEED: u64 = 0x00e6_5eed;
pub const FIELD_CASES: usize = 10_000;

/// Acceptance criteria by number.
pub const CRITERIA: [(u8, &str); 12] = [
    (1, "Weyl enumeration and class table"),
    (2, "torus stabilizer shapes"),
    (3, "fixed points in the twisted image"),
    (4, "commuting-element censuses"),
    (5, "Lie algebra models"),
    (6, "automorphism class table"),
    (7, "grading types of the fine gradings"),
    (8, "symplectic quasitori"),
    (9, "universal grading groups"),
    (10, "lift orders"),
    (11, "torality"),
    (12, "property suites"),
];

/// Groups of checks selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Theorem1,
    Tables,
    Counts,
    Properties,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem1 => "theorem1",
            Suite::Tables => "tables",
            Suite::Counts => "counts",
            Suite::Properties => "properties",
            Suite::All => "all",
        }
    }

    pub fn contains(self, criterion: u8) -> bool {
        match self {
            Suite::All => true,
            Suite::Theorem1 => matches!(criterion, 7 | 9),
            Suite::Tables => matches!(criterion, 1 | 2 | 3 | 6),
            Suite::Counts => matches!(criterion, 4 | 8 | 10 | 11),
            Suite::Properties => matches!(criterion, 5 | 12),
        }
    }
}

/// A computed value with an optional explanatory note.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Computed {
    pub value: String,
    pub detail: Option<String>,
}

impl Computed {
    pub fn new(value: impl ToString) -> Computed {
        Computed { value: value.to_string(), detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Computed {
        self.detail = Some(detail.into());
        self
    }
}

type RunFn = Box<dyn Fn(&Session) -> Result<Computed, String> + Send + Sync>;

pub struct Check {
    pub id: String,
    pub criterion: u8,
    pub location: String,
    pub provenance: Provenance,
    pub expected: String,
    /// Recorded but not asserted, with the reason.
    pub informational: Option<&'static str>,
    run: RunFn,
}

impl Check {
    fn new(
        id: impl Into<String>,
        criterion: u8,
        location: impl Into<String>,
        provenance: Provenance,
        expected: impl ToString,
        run: impl Fn(&Session) -> Result<Computed, String> + Send + Sync + 'static,
    ) -> Check {
        Check {
            id: id.into(),
            criterion,
            location: location.into(),
            provenance,
            expected: expected.to_string(),
            informational: None,
            run: Box::new(run),
        }
    }

    fn informational(mut self, reason: &'static str) -> Check {
        self.informational = Some(reason);
        self
    }

    pub fn execute(&self, session: &Session, timings: bool) -> CheckRecord {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(|| (self.run)(session))).unwrap_or_else(|panic| {
            let msg = panic.downcast_ref::<String>().cloned().or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let runtime_ms = timings.then(|| start.elapsed().as_millis() as u64);
        let (computed, detail, ok) = match result {
            Ok(c) => {
                let ok = c.value == self.expected;
                (c.value, c.detail, ok)
            }
            Err(e) => (format!("error: {e}"), None, false),
        };
        let status = match (self.informational, ok) {
            (Some(reason), _) => Status::Skipped { reason: reason.into() },
            (None, true) => Status::Pass,
            (None, false) => Status::Fail,
        };
        CheckRecord {
            id: self.id.clone(),
            criterion: self.criterion,
            location: self.location.clone(),
            provenance: self.provenance,
            expected: self.expected.clone(),
            computed,
            status,
            detail,
            runtime_ms,
        }
    }
}

/// Every check, ordered by criterion.
pub fn registry() -> Vec<Check> {
    let mut out = Vec::new();
    weyl_enumeration(&mut out);
    stabilizers(&mut out);
    fixed_in_image(&mut out);
    censuses(&mut out);
    models(&mut out);
    class_table(&mut out);
    theorem_table(&mut out);
    symplectic(&mut out);
    lifts(&mut out);
    torality(&mut out);
    properties(&mut out);
    out.sort_by_key(|c| c.criterion);
    out
}

pub fn select(suite: Suite) -> Vec<Check> {
    registry().into_iter().filter(|c| suite.contains(c.criterion)).collect()
}

/// Runs the checks on up to `jobs` threads; records come back in registry order.
pub fn run(checks: &[Check], session: &Session, jobs: usize, timings: bool) -> Result<Vec<CheckRecord>, ToolError> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| ToolError::Computation(e.to_string()))?;
    Ok(pool.install(|| checks.par_iter().map(|c| c.execute(session, timings)).collect()))
}

fn inner(i: u32) -> VElement {
    VElement::Inner(WeylIndex(i))
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn weyl_matrix(s: &Session, name: &str) -> Result<RootMatrix, String> {
    let g = s.weyl();
    g.parse_name(name).map(|v| g.matrix(v)).map_err(err)
}

fn class_multiset(pairs: impl Iterator<Item = (u32, usize)>) -> String {
    let mut v: Vec<(u32, usize)> = pairs.collect();
    v.sort_unstable();
    v.iter().map(|(o, s)| format!("{o}:{s}")).collect::<Vec<_>>().join(" ")
}

fn torus_group(text: &str) -> String {
    AbelianGroup::parse(text).expect("table entries parse").as_torus_group()
}

/// The type without the identity dimension, e.g. `(28,4)`.
fn counts(t: &GradingType) -> String {
    let parts: Vec<String> = t.counts.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

fn weyl_enumeration(out: &mut Vec<Check>) {
    use Provenance::Paper;
    out.push(Check::new("weyl.order", 1, "Weyl group listing", Paper, 51840, |s| Ok(Computed::new(s.weyl().len()))));
    out.push(Check::new("weyl.identity-index", 1, "Weyl group listing", Paper, 40843, |s| {
        s.weyl().locate(&RootMatrix::IDENTITY).map(|v| Computed::new(v.index())).map_err(err)
    }));
    out.push(Check::new("weyl.class-count", 1, "class table", Paper, 25, |s| Ok(Computed::new(s.weyl().classes(false).len()))));
    let expected = class_multiset(INNER_CLASSES.iter().map(|c| (c.order, c.size)));
    out.push(Check::new("weyl.class-orders-and-sizes", 1, "class table", Paper, expected, |s| {
        Ok(Computed::new(class_multiset(s.weyl().classes(false).iter().map(|c| (c.order, c.size)))))
    }));
    let expected = INNER_CLASSES.iter().map(|c| format!("{}:{}:{}", c.rep, c.order, c.size)).collect::<Vec<_>>().join(" ");
    out.push(Check::new("weyl.representatives", 1, "class table", Paper, expected, |s| {
        let g = s.weyl();
        let mut smallest = BTreeSet::new();
        let rows: Vec<String> = INNER_CLASSES
            .iter()
            .map(|c| {
                let orbit = g.orbit(inner(c.rep), true);
                smallest.insert(*orbit.iter().next().expect("orbits are nonempty"));
                format!("{}:{}:{}", c.rep, g.order_of(inner(c.rep)), orbit.len())
            })
            .collect();
        Ok(Computed::new(rows.join(" ")).with_detail(format!("{} distinct classes", smallest.len())))
    }));
}

fn stabilizers(out: &mut Vec<Check>) {
    for c in INNER_CLASSES {
        out.push(Check::new(format!("stabilizer.{}", c.rep), 2, format!("class table, row {}", c.rep), Provenance::Paper, torus_group(c.stabilizer), move |s| {
            let m = s.weyl().matrix(inner(c.rep));
            TorusSubgroup::fixed_by(&m, DEFAULT_LEVEL).map(|t| Computed::new(t.shape.as_torus_group())).map_err(err)
        }));
    }
    for (name, _, shape) in OUTER_CLASSES {
        out.push(Check::new(format!("stabilizer.{name}"), 2, format!("outer class table, {name}"), Provenance::Paper, torus_group(shape), move |s| {
            let m = weyl_matrix(s, name)?;
            TorusSubgroup::fixed_by(&m, DEFAULT_LEVEL).map(|t| Computed::new(t.shape.as_torus_group())).map_err(err)
        }));
    }
}

fn fixed_in_image(out: &mut Vec<Check>) {
    for (rep, shape) in [(292, "Z3^2"), (96, "Z2^4")] {
        out.push(Check::new(format!("fixed-in-image.{rep}"), 3, format!("twisted image, row {rep}"), Provenance::Paper, torus_group(shape), move |s| {
            let m = s.weyl().matrix(inner(rep));
            TorusSubgroup::fixed_in_image(&m, DEFAULT_LEVEL).map(|t| Computed::new(t.shape.as_torus_group())).map_err(err)
        }));
    }
}

fn censuses(out: &mut Vec<Check>) {
    use Provenance::Paper;
    out.push(Check::new("census.sigma96.involutions", 4, "census around row 96", Paper, 113, |s| {
        let census = s.weyl().commuting_census(inner(96), 2, s.class_map());
        let by_class: Vec<String> = census.by_class.iter().map(|(c, n)| format!("{}:{n}", c.index())).collect();
        Ok(Computed::new(census.total()).with_detail(format!("by class {}", by_class.join(" "))))
    }));
    out.push(Check::new("census.sigma96.in-class", 4, "census around row 96", Paper, 13, |s| {
        let classes = s.class_map();
        let census = s.weyl().commuting_census(inner(96), 2, classes);
        Ok(Computed::new(census.elements.iter().filter(|v| classes[v] == inner(96)).count()))
    }));
    out.push(Check::new("census.sigma96.products-leave-class", 4, "census around row 96", Paper, 13, |s| {
        let classes = s.class_map();
        let census = s.weyl().commuting_census(inner(96), 2, classes);
        let left = census
            .elements
            .iter()
            .filter(|v| classes[v] == inner(96))
            .filter(|&&y| classes[&s.weyl().compose(inner(96), y)] != inner(96))
            .count();
        Ok(Computed::new(left))
    }));
    out.push(Check::new("census.sigma292.order-three", 4, "census around row 292", Paper, 26, |s| {
        Ok(Computed::new(s.weyl().commuting_census(inner(292), 3, s.class_map()).total()))
    }));
    out.push(Check::new("census.sigma292.split", 4, "census around row 292", Paper, "3819:8 292:12 4079:6", |s| {
        let census = s.weyl().commuting_census(inner(292), 3, s.class_map());
        let split: Vec<String> = [3819, 292, 4079].iter().map(|&c| format!("{c}:{}", census.count_in(inner(c)))).collect();
        Ok(Computed::new(split.join(" ")))
    }));
    for (name, expected) in [("eta4", "15 = 15"), ("eta2", "7 = 1+6"), ("eta1", "13 = 1+12"), ("eta3", "5 = 2+3")] {
        out.push(Check::new(format!("suborbits.{name}"), 4, format!("suborbits of row 96 under {name}"), Paper, expected, move |s| {
            let g = s.weyl();
            let sub = g.suborbits(g.parse_name(name).map_err(err)?, inner(96));
            let mut sizes: Vec<usize> = sub.orbits.iter().map(Vec::len).collect();
            sizes.sort_unstable();
            let sizes: Vec<String> = sizes.iter().map(usize::to_string).collect();
            Ok(Computed::new(format!("{} = {}", sub.total(), sizes.join("+"))))
        }));
    }
    for (name, a, b) in [("eta2", 11127, 11104), ("eta1", 25470, 2416)] {
        out.push(Check::new(format!("suborbits.{name}.split"), 4, format!("suborbits of row 96 under {name}"), Paper, format!("{{{a}}} apart from {b}"), move |s| {
            let g = s.weyl();
            let sub = g.suborbits(g.parse_name(name).map_err(err)?, inner(96));
            let (oa, ob) = (sub.orbit_of(inner(a)).ok_or("first element does not commute")?, sub.orbit_of(inner(b)).ok_or("second element does not commute")?);
            let own: Vec<String> = sub.orbits[oa].iter().map(|v| v.index().to_string()).collect();
            let relation = if oa == ob { "together with" } else { "apart from" };
            Ok(Computed::new(format!("{{{}}} {relation} {b}", own.join(","))))
        }));
    }
    out.push(Check::new("suborbits.eta3.split", 4, "suborbits of row 96 under eta3", Paper, "{10850,11104} {11127,23234,28154}", |s| {
        let g = s.weyl();
        let sub = g.suborbits(g.parse_name("eta3").map_err(err)?, inner(96));
        let mut orbits: Vec<Vec<u32>> = sub.orbits.iter().map(|o| o.iter().map(|v| v.index()).collect()).collect();
        for o in &mut orbits {
            o.sort_unstable();
        }
        orbits.sort_by_key(|o| (o.len(), o.clone()));
        let text: Vec<String> = orbits.iter().map(|o| format!("{{{}}}", o.iter().map(u32::to_string).collect::<Vec<_>>().join(","))).collect();
        Ok(Computed::new(text.join(" ")))
    }));
}

fn killing_orthogonal(spec: &QuasitorusSpec, algebra: &LieAlgebra) -> Result<Computed, String> {
    let grading = diagonalize(spec).map_err(err)?;
    grading.check_killing_orthogonality(&algebra.killing_matrix()).map_err(err)?;
    Ok(Computed::new("orthogonal").with_detail(format!("{} components", grading.components.len())))
}

fn models(out: &mut Vec<Check>) {
    use Provenance::{Paper, Trivial};
    type AlgebraOf = fn(&Session) -> Result<&LieAlgebra, String>;
    let algebras: [(&str, AlgebraOf); 5] = [
        ("chevalley", |s| s.context().chevalley().map(|c| c.algebra())),
        ("adams", |s| s.context().adams().map(|m| m.algebra())),
        ("a5a1", |s| s.context().a5a1().map(|m| m.algebra())),
        ("q14", |s| s.context().z4().map(|m| m.algebra())),
        ("albert", |s| s.albert().map(|m| m.algebra())),
    ];
    for (name, algebra) in algebras {
        out.push(Check::new(format!("model.{name}.jacobi"), 5, format!("{name} model"), Trivial, "holds", move |s| {
            algebra(s)?.check_jacobi().map(|_| Computed::new("holds")).map_err(err)
        }));
        out.push(Check::new(format!("model.{name}.killing-rank"), 5, format!("{name} model"), Trivial, 78, move |s| {
            Ok(Computed::new(algebra(s)?.killing_rank()))
        }));
    }
    out.push(Check::new("model.chevalley.killing-orthogonality", 5, "chevalley model, root grading", Trivial, "orthogonal", |s| {
        let (spec, algebra) = s.context().spec(Route::Lift("id"))?;
        killing_orthogonal(&spec, algebra.ok_or("no bracket")?)
    }));
    out.push(Check::new("model.adams.killing-orthogonality", 5, "adams model, Q1 grading", Trivial, "orthogonal", |s| {
        let (spec, algebra) = s.context().spec(Route::Adams("Q1"))?;
        killing_orthogonal(&spec, algebra.ok_or("no bracket")?)
    }));
    out.push(Check::new("model.albert.killing-orthogonality", 5, "albert model, grading by G4", Trivial, "orthogonal", |s| {
        let m = s.albert()?;
        let spec = QuasitorusSpec::finite_only(78, vec![m.g4().map_err(err)?.generator()]);
        killing_orthogonal(&spec, m.algebra())
    }));
    out.push(Check::new("model.albert.derivations", 5, "albert model", Paper, 52, |s| Ok(Computed::new(s.albert()?.derivation_dim()))));
}

fn fixed_dim(algebra: &LieAlgebra, map: &LinMap) -> Result<Computed, String> {
    algebra.check_automorphism(map).map_err(err)?;
    Ok(Computed::new(algebra.fixed_subalgebra(std::slice::from_ref(map)).map_err(err)?.dim()))
}

fn class_table(out: &mut Vec<Check>) {
    use Provenance::Paper;
    for (label, coords, dim) in KAC_CLASSES {
        out.push(Check::new(format!("class.{label}"), 6, format!("automorphism class table, {label}"), Paper, dim, move |s| {
            let chev = s.context().chevalley()?;
            fixed_dim(chev.algebra(), &chev.kac_automorphism(coords).map_err(err)?)
        }));
    }
    for (label, name, dim) in [("2C", "eta1", 52), ("2D", "eta5", 36)] {
        out.push(Check::new(format!("class.{label}.{name}"), 6, format!("automorphism class table, {label}"), Paper, dim, move |s| {
            let chev = s.context().chevalley()?;
            let lift = chev.minimized_lift(&weyl_matrix(s, name)?).map_err(err)?;
            fixed_dim(chev.algebra(), &lift.map)
        }));
    }
    out.push(Check::new("class.2D.G5", 6, "automorphism class table, 2D", Paper, 36, |s| {
        let m = s.context().c4(1)?;
        let g5 = m.g5().map_err(err)?;
        Ok(Computed::new(m.model().structure().fixed_subalgebra(&[g5.map]).map_err(err)?.dim()))
    }));
    out.push(Check::new("class.outer-order-four", 6, "automorphism class table, G4''T(1,i)", Paper, 18, |s| {
        let m = s.context().adams()?;
        let f = m.named("G4''").and_then(|a| a.compose(&m.named("T(1,i)")?)).map_err(err)?;
        fixed_dim(m.algebra(), &f.map)
    }));
}

fn theorem_table(out: &mut Vec<Check>) {
    use Provenance::Paper;
    for (row, route) in all_routes() {
        out.push(Check::new(format!("theorem.{}.{route}.type", row.name), 7, format!("classification table, row {}", row.name), Paper, row.expected_type(), move |s| {
            s.outcome(route).grading_type.map(Computed::new)
        }));
        if route.has_full_bracket() {
            let expected = row.expected_group().as_lattice_group();
            out.push(Check::new(format!("theorem.{}.{route}.group", row.name), 9, format!("classification table, row {}", row.name), Paper, expected, move |s| {
                match s.outcome(route).universal_group {
                    Some(g) => g.map(|g| Computed::new(g.as_lattice_group())),
                    None => Err("no bracket".into()),
                }
            }));
        }
    }
    let q8 = THEOREM[7];
    out.push(Check::new("theorem.Q8.lift:eta3+11104.type", 7, "classification table, row Q8", Paper, q8.expected_type(), |s| {
        let chev = s.context().chevalley()?;
        let (eta3, other) = (weyl_matrix(s, "eta3")?, weyl_matrix(s, "11104")?);
        let pair = realize_pair(chev, [&eta3, &other], &[eta3, other], PAIR_BUDGET).map_err(err)?;
        diagonalize(&pair.spec).map(|g| Computed::new(g.type_of())).map_err(err)
    }));
    out.push(
        Check::new("theorem.Q8.mixed-pairing", 7, "classification table, row Q8", Provenance::Derived, "recorded", |s| {
            let chev = s.context().chevalley()?;
            let (eta3, a, b) = (weyl_matrix(s, "eta3")?, weyl_matrix(s, "10850")?, weyl_matrix(s, "11104")?);
            let outcome = realize_pair(chev, [&eta3, &a], &[eta3, b], PAIR_BUDGET).and_then(|p| diagonalize(&p.spec));
            Ok(match outcome {
                Ok(g) => Computed::new(g.type_of()),
                Err(e) => Computed::new("not a quasitorus").with_detail(e.to_string()),
            })
        })
        .informational("lift of 10850 paired with the torus fixed by eta3 and 11104; both indices are tried"),
    );
}

fn symplectic(out: &mut Vec<Check>) {
    use Provenance::Paper;
    for (k, want) in SP_TYPES {
        out.push(Check::new(format!("symplectic.Xi{k}.sp8"), 8, format!("symplectic quasitori, Xi{k}"), Paper, counts(&GradingType::new(want, 0)), move |s| {
            let m = s.context().c4(k)?;
            let xi = XiSet::get(k).map_err(err)?;
            let grading = diagonalize(&m.quasitorus(&xi, false, Some(SP)).map_err(err)?).map_err(err)?;
            Ok(Computed::new(counts(&grading.type_of())))
        }));
    }
    for (k, want) in MODULE_TYPES {
        out.push(Check::new(format!("symplectic.Xi{k}.module"), 8, format!("symplectic quasitori, Xi{k} on the module"), Paper, counts(&GradingType::new(want, 0)), move |s| {
            let m = s.context().c4(k)?;
            let xi = XiSet::get(k).map_err(err)?;
            let grading = diagonalize(&m.quasitorus(&xi, true, Some(ODD)).map_err(err)?).map_err(err)?;
            Ok(Computed::new(counts(&grading.type_of())))
        }));
    }
}

fn lifts(out: &mut Vec<Check>) {
    use Provenance::Paper;
    for (name, order) in LIFT_ORDERS {
        out.push(Check::new(format!("lift.{name}"), 10, format!("lift orders, {name}"), Paper, order, move |s| {
            let chev = s.context().chevalley()?;
            let w = weyl_matrix(s, name)?;
            let lift = chev.minimized_lift(&w).map_err(err)?;
            chev.algebra().check_automorphism(&lift.map).map_err(err)?;
            if chev.weyl_projection(&lift.map).map_err(err)? != w {
                return Err("lift projects to a different Weyl element".into());
            }
            lift.map.order(72).map(Computed::new).ok_or_else(|| "order exceeds the bound".into())
        }));
    }
    out.push(Check::new("lift.eta3+10850.pair", 10, "commuting lifts over eta3", Paper, "orders 2,2 commuting", |s| {
        let chev = s.context().chevalley()?;
        let g = s.weyl();
        if !g.orbit(inner(96), true).contains(&inner(10850)) {
            return Err("10850 is not conjugate to 96".into());
        }
        let (eta3, other) = (weyl_matrix(s, "eta3")?, weyl_matrix(s, "10850")?);
        let pair = realize_pair(chev, [&eta3, &other], &[eta3, other], PAIR_BUDGET).map_err(err)?;
        let (a, b) = (&pair.spec.finite[0].map, &pair.spec.finite[1].map);
        let commuting = if a.compose(b) == b.compose(a) { "commuting" } else { "not commuting" };
        let projections = chev.weyl_projection(a).map_err(err)? == eta3 && chev.weyl_projection(b).map_err(err)? == other;
        if !projections {
            return Err("lifts project to different Weyl elements".into());
        }
        Ok(Computed::new(format!("orders {},{} {commuting}", pair.orders[0], pair.orders[1])).with_detail(format!("{} correction systems tried", pair.attempts)))
    }));
}

fn toral(algebra: &LieAlgebra, autos: &[NamedAutomorphism], with_dim: bool) -> Result<Computed, String> {
    let maps: Vec<LinMap> = autos.iter().map(|a| a.map.clone()).collect();
    let (is_toral, profile) = algebra.is_toral(&maps, 6).map_err(err)?;
    let word = if is_toral { "toral" } else { "nontoral" };
    Ok(if with_dim { Computed::new(format!("{word}, fix {}", profile.dim)) } else { Computed::new(word).with_detail(format!("fix {}", profile.dim)) })
}

fn spec_autos(spec: QuasitorusSpec) -> Vec<NamedAutomorphism> {
    spec.finite.into_iter().map(|g| NamedAutomorphism { name: g.name, map: g.map, order: g.order }).collect()
}

fn torality(out: &mut Vec<Check>) {
    use Provenance::Paper;
    out.push(Check::new("torality.F2F3F4", 11, "torality, <F2,F3,F4>", Paper, "toral, fix 6", |s| {
        let m = s.context().adams()?;
        let autos = ["F2", "F3", "F4"].iter().map(|n| m.named(n)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        toral(m.algebra(), &autos, true)
    }));
    type SpecOf = fn(&Session) -> Result<(QuasitorusSpec, &LieAlgebra), String>;
    let coarse: [(&str, SpecOf); 4] = [
        ("P1", |s| s.context().adams().and_then(|m| Ok((m.p1().map_err(err)?, m.algebra())))),
        ("P2", |s| s.context().adams().and_then(|m| Ok((m.p2().map_err(err)?, m.algebra())))),
        ("P3", |s| s.context().a5a1().and_then(|m| Ok((m.p3().map_err(err)?, m.algebra())))),
        ("P4", |s| s.context().a5a1().and_then(|m| Ok((m.p4().map_err(err)?, m.algebra())))),
    ];
    for (name, spec) in coarse {
        out.push(Check::new(format!("torality.{name}"), 11, format!("torality, {name}"), Paper, "nontoral", move |s| {
            let (spec, algebra) = spec(s)?;
            toral(algebra, &spec_autos(spec), false)
        }));
    }
    let z4_cases: [(&str, [u32; 3], &str); 3] = [("U2U3", [0, 1, 1], "toral, fix 6"), ("U1sqU2U3", [2, 1, 1], "nontoral, fix 2"), ("U1sqU2sqU3", [2, 2, 1], "toral, fix 6")];
    for (name, powers, expected) in z4_cases {
        out.push(Check::new(format!("torality.{name}"), 11, format!("torality, {name}"), Paper, expected, move |s| {
            let m = s.context().z4()?;
            let base = [m.u1(), m.u2(), m.u3()];
            let mut autos = Vec::new();
            for (a, p) in base.into_iter().zip(powers) {
                if p > 0 {
                    autos.push(a.and_then(|a| a.pow(p)).map_err(err)?);
                }
            }
            toral(m.algebra(), &autos, true)
        }));
    }
}

/// A quasitorus under test, with the bracket when one is available.
type NamedGrading<'a> = (String, QuasitorusSpec, Option<&'a LieAlgebra>);

/// The gradings examined by the property suite: every route, the coarse
/// gradings of the tensor and a5⊕a1 models, and the symplectic restrictions.
fn computed_gradings(s: &Session) -> Result<Vec<NamedGrading<'_>>, String> {
    let ctx = s.context();
    let mut out = Vec::new();
    for (row, route) in all_routes() {
        let (spec, algebra) = ctx.spec(route)?;
        let algebra = match (algebra, route) {
            (Some(a), _) => Some(a),
            (None, Route::C4(k)) => Some(ctx.c4(k)?.model().structure()),
            (None, _) => None,
        };
        out.push((format!("{} via {route}", row.name), spec, algebra));
    }
    let adams = ctx.adams()?;
    for (name, spec) in [("P1", adams.p1()), ("P2", adams.p2()), ("R1", adams.r1())] {
        out.push((name.into(), spec.map_err(err)?, Some(adams.algebra())));
    }
    let a5a1 = ctx.a5a1()?;
    for (name, spec) in [("P3", a5a1.p3()), ("P4", a5a1.p4())] {
        out.push((name.into(), spec.map_err(err)?, Some(a5a1.algebra())));
    }
    for k in 1..=7 {
        let m = ctx.c4(k)?;
        let xi = XiSet::get(k).map_err(err)?;
        out.push((format!("Xi{k} on sp(8)"), m.quasitorus(&xi, false, Some(SP)).map_err(err)?, None));
        out.push((format!("Xi{k} on the module"), m.quasitorus(&xi, true, Some(ODD)).map_err(err)?, None));
    }
    Ok(out)
}

/// Direct sum of common eigenspaces with the declared eigenvalues and weights,
/// distinct degrees, and bracket and Killing compatibility where a bracket exists.
fn grading_violations(name: &str, spec: &QuasitorusSpec, algebra: Option<&LieAlgebra>) -> Vec<String> {
    let grading = match diagonalize(spec) {
        Ok(g) => g,
        Err(e) => return vec![format!("{name}: {e}")],
    };
    let mut bad = Vec::new();
    if !grading.is_direct_sum() || grading.total_dim() != spec.dim {
        bad.push(format!("{name}: components do not form a direct sum of the whole space"));
    }
    let degrees: BTreeSet<&Degree> = grading.components.iter().map(|c| &c.degree).collect();
    if degrees.len() != grading.components.len() {
        bad.push(format!("{name}: repeated degree"));
    }
    for comp in &grading.components {
        for v in comp.space.basis() {
            if let Some(problem) = eigen_violation(spec, &comp.degree, v) {
                bad.push(format!("{name}: {problem}"));
            }
        }
    }
    if let Some(algebra) = algebra {
        if let Err(e) = grading.bracket_relations(algebra) {
            bad.push(format!("{name}: {e}"));
        }
        if algebra.killing_rank() == algebra.dim() {
            if let Err(e) = grading.check_killing_orthogonality(&algebra.killing_matrix()) {
                bad.push(format!("{name}: {e}"));
            }
        }
    }
    bad
}

fn eigen_violation(spec: &QuasitorusSpec, degree: &Degree, v: &SparseVec) -> Option<String> {
    for (gen, &c) in spec.finite.iter().zip(&degree.chars) {
        let eigenvalue = std36::zeta((DEFAULT_LEVEL / gen.order) as i64 * c as i64);
        if gen.map.apply(v) != v.scale(&eigenvalue) {
            return Some(format!("{} is not scalar on degree {degree}", gen.name));
        }
    }
    v.support().find(|&i| spec.weights[i] != degree.weight).map(|i| format!("coordinate {i} has the wrong weight for degree {degree}"))
}

fn random_element(rng: &mut ChaCha8Rng) -> CycNum {
    let len = rng.gen_range(0..18);
    let coeffs: Vec<(i64, i64)> = (0..len).map(|_| (rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect();
    CycField::standard().from_coefficients(&coeffs).expect("small coefficients")
}

fn field_violations(cases: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for _ in 0..cases {
        let (a, b, c) = (random_element(&mut rng), random_element(&mut rng), random_element(&mut rng));
        let ring = &a + &b == &b + &a
            && &(&a + &b) + &c == &a + &(&b + &c)
            && &a * &b == &b * &a
            && &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && &(&a + &b) - &b == a
            && &a * &std36::one() == a;
        let inverse = a.is_zero() || a.inv().is_ok_and(|inv| (&a * &inv).is_one());
        if !(ring && inverse) {
            bad += 1;
        }
    }
    bad
}

fn properties(out: &mut Vec<Check>) {
    use Provenance::Trivial;
    out.push(Check::new("properties.field-axioms", 12, "property suites, field axioms", Trivial, "0 violations", |_| {
        let bad = field_violations(FIELD_CASES, FIELD_SEED);
        Ok(Computed::new(format!("{bad} violations")).with_detail(format!("{FIELD_CASES} random triples, seed {FIELD_SEED:#x}")))
    }));
    out.push(Check::new("properties.grading-axioms", 12, "property suites, grading axioms", Trivial, "0 violations", |s| {
        let gradings = computed_gradings(s)?;
        let bad: Vec<String> = gradings.par_iter().flat_map_iter(|(name, spec, algebra)| grading_violations(name, spec, *algebra)).collect();
        let detail = if bad.is_empty() { format!("{} gradings", gradings.len()) } else { bad.join("; ") };
        Ok(Computed::new(format!("{} violations", bad.len())).with_detail(detail))
    }));
    out.push(Check::new("properties.equivariance", 12, "property suites, action-only automorphisms", Trivial, "0 violations", |s| {
        let mut bad = Vec::new();
        let mut total = 0;
        for k in 1..=7 {
            let m = s.context().c4(k)?;
            let xi = XiSet::get(k).map_err(err)?;
            let mut autos = m.xi_generators(&xi).map_err(err)?;
            autos.push(m.g5().map_err(err)?);
            for a in &autos {
                total += 1;
                if let Err(e) = m.model().check_automorphism(a) {
                    bad.push(format!("Xi{k} {}: {e}", a.name));
                }
            }
        }
        let detail = if bad.is_empty() { format!("{total} automorphisms") } else { bad.join("; ") };
        Ok(Computed::new(format!("{} violations", bad.len())).with_detail(detail))
    }));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_every_criterion_is_covered() {
        let checks = registry();
        let ids: BTreeSet<&str> = checks.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids.len(), checks.len());
        for (n, _) in CRITERIA {
            assert!(checks.iter().any(|c| c.criterion == n), "criterion {n}");
        }
    }

    #[test]
    fn suites_partition_the_criteria() {
        for (n, _) in CRITERIA {
            let owners = [Suite::Theorem1, Suite::Tables, Suite::Counts, Suite::Properties].iter().filter(|s| s.contains(n)).count();
            assert_eq!(owners, 1, "criterion {n}");
            assert!(Suite::All.contains(n));
        }
    }

    #[test]
    fn field_axioms_hold_on_a_small_sample() {
        assert_eq!(field_violations(200, 1), 0);
    }

    #[test]
    fn counts_drop_the_identity_dimension() {
        assert_eq!(counts(&GradingType::new(&[32, 0, 0, 1], 4)), "(32,0,0,1)");
        assert_eq!(counts(&GradingType::new(&[36], 0)), "(36)");
    }

    #[test]
    fn a_failing_check_reports_both_values() {
        let check = Check::new("t", 1, "here", Provenance::Trivial, 2, |_| Ok(Computed::new(3)));
        let session = Session::new(e6core::weyl::WeylGroup::build());
        let record = check.execute(&session, false);
        assert_eq!(record.status, Status::Fail);
        assert_eq!((record.expected.as_str(), record.computed.as_str()), ("2", "3"));
    }
}
