//! Quasitorus spec files for `grade`.
//!
//! ```json
//! { "model": "c4", "form": 5, "automorphisms": ["Xi5.gen1", "Xi5.gen2", "G5"], "torus": "model" }
//! ```
//!
//! Automorphisms are names known to the model, optionally raised to a power
//! (`"U1^2"` or `{"name": "U1", "power": 2}`). On the Chevalley model the
//! names are Weyl group elements, realized by minimized lifts; two names are
//! realized as a commuting pair. `torus` is `"model"` for the model's own
//! torus, `"fixed"` for the torus fixed by the Weyl elements (Chevalley model
//! only), or an explicit table with one integer weight vector per basis vector.

use std::path::Path;

use e6core::catalog::PAIR_BUDGET;
use e6core::exactfield::DEFAULT_LEVEL;
use e6core::gradings::{diagonalize, lift_quasitorus, realize_pair, FiniteGenerator, QuasitorusSpec};
use e6core::liecore::LieAlgebra;
use e6core::models::{ModelError, NamedAutomorphism};
use e6core::weyl::{RootMatrix, TorusSubgroup};
use serde::Deserialize;

use crate::error::ToolError;
use crate::report::{ComponentRow, GeneratorRow, GradingReport};
use crate::session::Session;

pub const MODELS: [&str; 6] = ["chevalley", "adams", "a5a1", "c4", "albert", "q14"];

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradeSpec {
    pub model: String,
    #[serde(default)]
    pub form: Option<usize>,
    #[serde(default)]
    pub automorphisms: Vec<AutoRef>,
    #[serde(default)]
    pub torus: Option<TorusRef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum AutoRef {
    Name(String),
    Power {
        name: String,
        #[serde(default = "one")]
        power: u32,
    },
}

fn one() -> u32 {
    1
}

impl AutoRef {
    /// Name and exponent; a trailing `^k` in a plain name is read as a power.
    fn parts(&self) -> Result<(&str, u32), String> {
        match self {
            AutoRef::Power { name, power } => Ok((name, *power)),
            AutoRef::Name(text) => match text.rsplit_once('^') {
                Some((name, k)) => k.parse().map(|k| (name, k)).map_err(|_| format!("bad exponent in `{text}`")),
                None => Ok((text, 1)),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum TorusRef {
    Named(String),
    Weights(Vec<Vec<i64>>),
}

/// Automorphisms, bracket and torus weights of a non-Chevalley model.
type ModelParts<'a> = (Vec<NamedAutomorphism>, Option<&'a LieAlgebra>, Option<Vec<Vec<i64>>>);

/// A resolved spec: the quasitorus and, for full-bracket models, the bracket.
pub struct Resolved<'a> {
    pub model: String,
    pub spec: QuasitorusSpec,
    pub algebra: Option<&'a LieAlgebra>,
}

impl GradeSpec {
    pub fn parse(text: &str, path: &Path) -> Result<GradeSpec, ToolError> {
        serde_json::from_str(text).map_err(|e| ToolError::MalformedSpec { path: path.to_path_buf(), reason: e.to_string() })
    }

    pub fn read(path: &Path) -> Result<GradeSpec, ToolError> {
        let text = std::fs::read_to_string(path).map_err(|e| ToolError::io(path, e))?;
        GradeSpec::parse(&text, path)
    }

    pub fn resolve<'a>(&self, session: &'a Session, path: &Path) -> Result<Resolved<'a>, ToolError> {
        let malformed = |reason: String| ToolError::MalformedSpec { path: path.to_path_buf(), reason };
        let refs = self.automorphisms.iter().map(AutoRef::parts).collect::<Result<Vec<_>, _>>().map_err(malformed)?;
        let ctx = session.context();
        let computation = |e: String| ToolError::Computation(e);
        if self.model == "chevalley" {
            return self.resolve_chevalley(session, &refs, path);
        }
        let (autos, algebra, model_torus): ModelParts<'a> = match self.model.as_str() {
            "adams" => {
                let m = ctx.adams().map_err(computation)?;
                (named_all(&refs, |n| m.named(n))?, Some(m.algebra()), Some(m.torus_weights()))
            }
            "a5a1" => {
                let m = ctx.a5a1().map_err(computation)?;
                (named_all(&refs, |n| m.named(n))?, Some(m.algebra()), Some(m.torus_weights()))
            }
            "q14" => {
                let m = ctx.z4().map_err(computation)?;
                (named_all(&refs, |n| m.named(n))?, Some(m.algebra()), None)
            }
            "c4" => {
                let form = self.form.ok_or_else(|| malformed("the c4 model needs a `form` between 1 and 7".into()))?;
                if !(1..=7).contains(&form) {
                    return Err(malformed(format!("form {form} is not between 1 and 7")));
                }
                let m = ctx.c4(form).map_err(computation)?;
                (named_all(&refs, |n| m.named(n))?, None, Some(m.torus_weights()))
            }
            "albert" => {
                let m = session.albert().map_err(computation)?;
                let lookup = |n: &str| if n == "G4" { m.g4() } else { Err(ModelError::UnknownAutomorphism(n.into())) };
                (named_all(&refs, lookup)?, Some(m.algebra()), None)
            }
            other => return Err(ToolError::unknown("model", other)),
        };
        let gens: Vec<FiniteGenerator> = autos.iter().map(NamedAutomorphism::generator).collect();
        let spec = match &self.torus {
            None => QuasitorusSpec::finite_only(78, gens),
            Some(TorusRef::Named(n)) if n == "model" => {
                let weights = model_torus.ok_or_else(|| malformed(format!("the {} model has no torus", self.model)))?;
                QuasitorusSpec::with_torus(78, gens, weights)
            }
            Some(TorusRef::Named(n)) => return Err(malformed(format!("torus `{n}` is not available on the {} model", self.model))),
            Some(TorusRef::Weights(w)) => QuasitorusSpec::with_torus(78, gens, check_weights(w).map_err(malformed)?),
        };
        Ok(Resolved { model: self.model.clone(), spec, algebra })
    }

    fn resolve_chevalley<'a>(&self, session: &'a Session, refs: &[(&str, u32)], path: &Path) -> Result<Resolved<'a>, ToolError> {
        let malformed = |reason: String| ToolError::MalformedSpec { path: path.to_path_buf(), reason };
        let chev = session.context().chevalley().map_err(ToolError::Computation)?;
        let g = session.weyl();
        let mut matrices = Vec::new();
        for (name, _) in refs {
            let m = if *name == "id" { RootMatrix::IDENTITY } else { g.matrix(g.parse_name(name).map_err(|_| ToolError::unknown("Weyl element", *name))?) };
            matrices.push(m);
        }
        let fixed_torus = match &self.torus {
            None => false,
            Some(TorusRef::Named(n)) if n == "fixed" => true,
            Some(TorusRef::Named(n)) => return Err(malformed(format!("torus `{n}` is not available on the chevalley model; use \"fixed\""))),
            Some(TorusRef::Weights(_)) => return Err(malformed("explicit weights are not supported on the chevalley model".into())),
        };
        let computation = |e: &dyn std::fmt::Display| ToolError::Computation(e.to_string());
        let gens: Vec<FiniteGenerator> = match matrices.as_slice() {
            [] => Vec::new(),
            [w] => {
                let lift = chev.minimized_lift(w).map_err(|e| computation(&e))?;
                vec![FiniteGenerator { name: refs[0].0.into(), map: lift.map, order: lift.order }]
            }
            [a, b] => {
                let pair = realize_pair(chev, [a, b], &[*a, *b], PAIR_BUDGET).map_err(|e| computation(&e))?;
                pair.spec.finite
            }
            _ => return Err(malformed("the chevalley model takes at most two Weyl elements".into())),
        };
        let gens = gens
            .into_iter()
            .zip(refs)
            .map(|(g, (_, power))| {
                let map = g.map.pow(*power);
                NamedAutomorphism::new(if *power == 1 { g.name } else { format!("{}^{power}", g.name) }, map).map(|a| a.generator())
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| computation(&e))?;
        let spec = if fixed_torus {
            let torus = TorusSubgroup::fixed_by_all(&matrices, DEFAULT_LEVEL).map_err(|e| computation(&e))?;
            lift_quasitorus(chev, gens, &torus)
        } else {
            QuasitorusSpec::finite_only(78, gens)
        };
        Ok(Resolved { model: self.model.clone(), spec, algebra: Some(chev.algebra()) })
    }
}

fn named_all(refs: &[(&str, u32)], lookup: impl Fn(&str) -> Result<NamedAutomorphism, ModelError>) -> Result<Vec<NamedAutomorphism>, ToolError> {
    refs.iter()
        .map(|&(name, power)| {
            let a = lookup(name).map_err(|e| match e {
                ModelError::UnknownAutomorphism(n) => ToolError::unknown("automorphism", n),
                other => ToolError::Computation(format!("{name}: {other}")),
            })?;
            if power == 1 {
                Ok(a)
            } else {
                a.pow(power).map_err(|e| ToolError::Computation(e.to_string()))
            }
        })
        .collect()
}

fn check_weights(w: &[Vec<i64>]) -> Result<Vec<Vec<i64>>, String> {
    if w.len() != 78 {
        return Err(format!("the weight table has {} rows, expected 78", w.len()));
    }
    let rank = w[0].len();
    if w.iter().any(|r| r.len() != rank) {
        return Err("weight vectors have different lengths".into());
    }
    Ok(w.to_vec())
}

/// Diagonalizes a resolved spec and collects the report.
pub fn grade(resolved: &Resolved<'_>) -> Result<GradingReport, ToolError> {
    let grading = diagonalize(&resolved.spec).map_err(|e| ToolError::Computation(e.to_string()))?;
    let t = grading.type_of();
    let (universal_group, universal_group_note) = match resolved.algebra {
        Some(algebra) => match grading.universal_group(algebra) {
            Ok(g) => (Some(g.as_lattice_group()), None),
            Err(e) => (None, Some(e.to_string())),
        },
        None => (None, Some(format!("the {} model carries no e6 bracket", resolved.model))),
    };
    let census = (resolved.spec.torus_rank == 0).then(|| e6core::gradings::census_signature(&grading.census()));
    Ok(GradingReport {
        model: resolved.model.clone(),
        generators: resolved.spec.finite.iter().map(|g| GeneratorRow { name: g.name.clone(), order: g.order }).collect(),
        torus_rank: resolved.spec.torus_rank,
        grading_type: t.to_string(),
        counts: t.counts.clone(),
        identity_dim: t.identity_dim,
        universal_group,
        universal_group_note,
        census,
        components: grading.components.iter().map(|c| ComponentRow { degree: c.degree.to_string(), dim: c.space.dim() }).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers_parse_in_both_forms() {
        let spec = GradeSpec::parse(r#"{"model":"q14","automorphisms":["U1^2",{"name":"U2","power":3},"U3"]}"#, Path::new("x")).unwrap();
        let parts: Vec<_> = spec.automorphisms.iter().map(|a| a.parts().unwrap()).collect();
        assert_eq!(parts, vec![("U1", 2), ("U2", 3), ("U3", 1)]);
    }

    #[test]
    fn unknown_fields_and_bad_json_are_malformed() {
        for text in [r#"{"model":"q14","automorphisms":[],"extra":1}"#, "{", r#"{"automorphisms":[]}"#] {
            assert!(matches!(GradeSpec::parse(text, Path::new("x")), Err(ToolError::MalformedSpec { .. })), "{text}");
        }
    }

    #[test]
    fn torus_forms() {
        let spec = GradeSpec::parse(r#"{"model":"adams","automorphisms":["F1"],"torus":"model"}"#, Path::new("x")).unwrap();
        assert_eq!(spec.torus, Some(TorusRef::Named("model".into())));
        assert!(check_weights(&vec![vec![0]; 77]).is_err());
        assert!(check_weights(&vec![vec![0, 1]; 78]).is_ok());
    }
}
