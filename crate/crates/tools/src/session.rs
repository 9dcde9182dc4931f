//! Models and derived tables shared by every command and check.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use e6core::catalog::{all_routes, Context, Outcome, Route};
use e6core::models::albert::AlbertModel;
use e6core::weyl::{VElement, WeylGroup};

pub struct Session {
    context: Context,
    classes: OnceLock<BTreeMap<VElement, VElement>>,
    outcomes: Vec<(Route, OnceLock<Outcome>)>,
    albert: OnceLock<Result<AlbertModel, String>>,
}

impl Session {
    pub fn new(group: WeylGroup) -> Session {
        Session {
            context: Context::with_weyl(group),
            classes: OnceLock::new(),
            outcomes: all_routes().into_iter().map(|(_, route)| (route, OnceLock::new())).collect(),
            albert: OnceLock::new(),
        }
    }

    pub fn context(&self) -> &Context {
        &self.context
    }

    pub fn weyl(&self) -> &WeylGroup {
        self.context.weyl()
    }

    pub fn albert(&self) -> Result<&AlbertModel, String> {
        self.albert.get_or_init(|| AlbertModel::new().map_err(|e| e.to_string())).as_ref().map_err(Clone::clone)
    }

    /// Smallest-index class representative of every element.
    pub fn class_map(&self) -> &BTreeMap<VElement, VElement> {
        self.classes.get_or_init(|| self.weyl().class_map())
    }

    /// The realized route, computed once per session.
    pub fn outcome(&self, route: Route) -> Outcome {
        match self.outcomes.iter().find(|(r, _)| *r == route) {
            Some((_, slot)) => slot.get_or_init(|| self.context.realize(route)).clone(),
            None => self.context.realize(route),
        }
    }
}
