//! Argument comparators shared by the ASPIC+ and DeLP engines.
//!
//! Both engines hand the comparator the same two facts about an argument:
//! its defeasible rules and its last defeasible rules.

use std::fmt;

use crate::error::EngineError;
use crate::program::{OrderingMode, Program, RuleSet};

/// What a comparator needs to know about an argument.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArgumentKey {
    pub def_rules: RuleSet,
    pub last_def_rules: RuleSet,
}

impl ArgumentKey {
    pub fn is_strict(&self) -> bool {
        self.def_rules.is_empty()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    /// Left is strictly weaker.
    Less,
    /// Left is strictly stronger.
    Greater,
    /// Neither is strictly preferred.
    Incomparable,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::Less => "<",
            Comparison::Greater => ">",
            Comparison::Incomparable => "~",
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Comparator<'p> {
    program: &'p Program,
    mode: OrderingMode,
}

impl<'p> Comparator<'p> {
    /// Comparator for the program's declared ordering mode.
    pub fn new(program: &'p Program) -> Result<Self, EngineError> {
        Self::with_mode(program, program.ordering())
    }

    /// Last-link needs a rank for every defeasible rule.
    pub fn with_mode(program: &'p Program, mode: OrderingMode) -> Result<Self, EngineError> {
        if mode == OrderingMode::LastLink {
            if let Some(r) = program
                .defeasible_rules()
                .iter()
                .find(|r| !program.priorities().contains_key(r.id()))
            {
                return Err(EngineError::PriorityMissing(r.id().to_string()));
            }
        }
        Ok(Comparator { program, mode })
    }

    pub fn mode(&self) -> OrderingMode {
        self.mode
    }

    /// `a ≺ b`: `b` is strictly preferred to `a`.
    pub fn less(&self, a: &ArgumentKey, b: &ArgumentKey) -> bool {
        match self.mode {
            OrderingMode::Simple => !a.is_strict() && b.is_strict(),
            OrderingMode::Explicit => self.program.declared_below(&a.def_rules, &b.def_rules),
            OrderingMode::LastLink => {
                match (
                    self.weakest(&a.last_def_rules),
                    self.weakest(&b.last_def_rules),
                ) {
                    (_, None) => !a.last_def_rules.is_empty(),
                    (None, Some(_)) => false,
                    (Some(x), Some(y)) => x < y,
                }
            }
        }
    }

    pub fn compare(&self, a: &ArgumentKey, b: &ArgumentKey) -> Comparison {
        if self.less(a, b) {
            Comparison::Less
        } else if self.less(b, a) {
            Comparison::Greater
        } else {
            Comparison::Incomparable
        }
    }

    // Elitist set comparison: a set is as strong as its weakest rule.
    fn weakest(&self, set: &RuleSet) -> Option<i64> {
        set.iter()
            .map(|i| self.program.priorities()[self.program.defeasible_rule(i).id()])
            .min()
    }
}
