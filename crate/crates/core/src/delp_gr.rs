//! DeLP arguments and defeaters evaluated under grounded semantics.

use std::collections::BTreeSet;

use crate::af::{self, Extension, Framework};
use crate::delp::Delp;
use crate::error::EngineError;
use crate::game::{self, Strategy};
use crate::program::{Literal, Program};

/// One node per DeLP argument; `a` defeats `b` iff `a` is a proper or a
/// blocking defeater of `b`.
pub fn delp_framework(delp: &Delp<'_>) -> Framework {
    let labels = (0..delp.len()).map(|i| delp.render(i)).collect();
    let mut defeats = Vec::new();
    for b in 0..delp.len() {
        for (a, _) in delp.defeaters(b) {
            defeats.push((a, b));
        }
    }
    Framework::new(labels, defeats).expect("defeaters index existing arguments")
}

/// Result of a grounded-semantics query over DeLP arguments.
#[derive(Clone, Debug)]
pub struct GrWarrant {
    pub warranted: bool,
    /// The first argument for the goal with a winning strategy, if any.
    pub strategy: Option<(usize, Strategy)>,
}

pub fn warrant_gr(p: &Program, goal: &Literal) -> Result<GrWarrant, EngineError> {
    let delp = Delp::new(p)?;
    let f = delp_framework(&delp);
    Ok(warrant_in(&delp, &f, goal))
}

pub fn warrant_in(delp: &Delp<'_>, f: &Framework, goal: &Literal) -> GrWarrant {
    let strategy = delp
        .for_conclusion(goal)
        .iter()
        .find_map(|&a| game::provably_justified(f, a).map(|s| (a, s)));
    GrWarrant {
        warranted: strategy.is_some(),
        strategy,
    }
}

/// The grounded extension of the DeLP framework.
pub fn warranted_arguments(delp: &Delp<'_>) -> Extension {
    af::grounded(&delp_framework(delp))
}

pub fn warranted_literals(delp: &Delp<'_>) -> BTreeSet<Literal> {
    warranted_arguments(delp)
        .into_iter()
        .map(|a| delp.get(a).conclusion().clone())
        .collect()
}
