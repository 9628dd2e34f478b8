//! Rationality-postulate audits: direct consistency, indirect consistency and
//! strict closure of a set of conclusions. The auditor reports; it does not judge.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use crate::af::{self, Semantics};
use crate::aspic::{
    conclusions, construct_arguments_with_budget, AttackKind, Saf, DEFAULT_ARGUMENT_BUDGET,
};
use crate::delp::Delp;
use crate::delp_gr;
use crate::error::EngineError;
use crate::program::{first_conflict, Literal, Program};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Audit {
    /// A complementary pair inside the set itself.
    pub direct: Option<(Literal, Literal)>,
    /// A complementary pair inside its strict closure.
    pub indirect: Option<(Literal, Literal)>,
    /// A strictly derivable literal the set lacks.
    pub missing: Option<Literal>,
}

impl Audit {
    pub fn direct_consistent(&self) -> bool {
        self.direct.is_none()
    }

    pub fn indirect_consistent(&self) -> bool {
        self.indirect.is_none()
    }

    pub fn strictly_closed(&self) -> bool {
        self.missing.is_none()
    }

    pub fn is_clean(&self) -> bool {
        self.direct_consistent() && self.indirect_consistent() && self.strictly_closed()
    }

    fn cells(&self) -> [String; 3] {
        let pair = |c: &Option<(Literal, Literal)>| match c {
            None => "pass".to_string(),
            Some((a, b)) => format!("fail({a},{b})"),
        };
        [
            pair(&self.direct),
            pair(&self.indirect),
            match &self.missing {
                None => "pass".into(),
                Some(l) => format!("fail({l})"),
            },
        ]
    }
}

pub fn audit(conclusions: &BTreeSet<Literal>, p: &Program) -> Audit {
    let closure = p.strict_closure_of(conclusions);
    Audit {
        direct: first_conflict(conclusions),
        indirect: first_conflict(&closure),
        missing: closure.difference(conclusions).next().cloned(),
    }
}

/// What produces the audited conclusion sets.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Engine {
    Aspic(AttackKind, Semantics),
    Delp,
    DelpGr,
}

impl Engine {
    /// Every configuration the auditor knows about.
    pub fn all() -> Vec<Engine> {
        let mut out = Vec::new();
        for k in AttackKind::ALL {
            for s in [
                Semantics::Grounded,
                Semantics::Complete,
                Semantics::Preferred,
                Semantics::Stable,
            ] {
                out.push(Engine::Aspic(k, s));
            }
        }
        out.push(Engine::Delp);
        out.push(Engine::DelpGr);
        out
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Engine::Aspic(k, s) => write!(f, "aspic/{k}/{s}"),
            Engine::Delp => f.write_str("delp"),
            Engine::DelpGr => f.write_str("delp-gr"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConfigurationReport {
    pub engine: Engine,
    /// One audit per extension (a single one for the DeLP engines).
    pub audits: Vec<(BTreeSet<Literal>, Audit)>,
}

impl ConfigurationReport {
    pub fn is_clean(&self) -> bool {
        self.audits.iter().all(|(_, a)| a.is_clean())
    }
}

pub fn audit_configuration(
    p: &Program,
    engine: Engine,
) -> Result<ConfigurationReport, EngineError> {
    audit_configuration_with_budget(p, engine, DEFAULT_ARGUMENT_BUDGET)
}

pub fn audit_configuration_with_budget(
    p: &Program,
    engine: Engine,
    budget: usize,
) -> Result<ConfigurationReport, EngineError> {
    let sets: Vec<BTreeSet<Literal>> = match engine {
        Engine::Aspic(kind, semantics) => {
            let saf = Saf::new(construct_arguments_with_budget(p, budget)?, kind)?;
            let f = saf.framework();
            af::extensions(&f, semantics)?
                .iter()
                .map(|e| conclusions(saf.arguments(), e))
                .collect()
        }
        Engine::Delp => vec![Delp::new(p)?.warranted_literals()],
        Engine::DelpGr => vec![delp_gr::warranted_literals(&Delp::new(p)?)],
    };
    Ok(ConfigurationReport {
        engine,
        audits: sets
            .into_iter()
            .map(|s| {
                let a = audit(&s, p);
                (s, a)
            })
            .collect(),
    })
}

/// `configuration × {DC, IC, SC}` table; failing configurations are listed
/// with an error instead of aborting the whole run.
pub fn audit_table(p: &Program, engines: &[Engine], budget: usize) -> String {
    let mut out = String::from("configuration\tDC\tIC\tSC\n");
    for &e in engines {
        match audit_configuration_with_budget(p, e, budget) {
            Err(err) => {
                let _ = writeln!(out, "{e}\terror: {err}");
            }
            Ok(r) if r.audits.is_empty() => {
                let _ = writeln!(out, "{e}\t(no extensions)");
            }
            Ok(r) => {
                let many = r.audits.len() > 1;
                for (i, (_, a)) in r.audits.iter().enumerate() {
                    let name = if many {
                        format!("{e}#{}", i + 1)
                    } else {
                        e.to_string()
                    };
                    let [dc, ic, sc] = a.cells();
                    let _ = writeln!(out, "{name}\t{dc}\t{ic}\t{sc}");
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_program;

    fn lits(s: &[&str]) -> BTreeSet<Literal> {
        s.iter().map(|l| l.parse().unwrap()).collect()
    }

    #[test]
    fn empty_set_passes() {
        let p = parse_program("a.\nb <- a.").unwrap();
        assert!(audit(&BTreeSet::new(), &p).is_clean());
    }

    #[test]
    fn witnesses() {
        let p = parse_program("r <- p, q.\n~q <- p, ~r.").unwrap();
        let a = audit(&lits(&["p", "q", "~r"]), &p);
        assert!(a.direct_consistent());
        // the closure adds r and ~q, clashing with ~r and q
        let (x, y) = a.indirect.clone().unwrap();
        assert!(x.is_complement_of(&y));
        assert!(lits(&["r", "~q"]).contains(a.missing.as_ref().unwrap()));
        let a = audit(&lits(&["p", "~p"]), &p);
        assert!(!a.direct_consistent());
    }

    #[test]
    fn facts_only_is_clean_everywhere() {
        let p = parse_program("a.\nb <- a.").unwrap();
        for e in Engine::all() {
            assert!(audit_configuration(&p, e).unwrap().is_clean(), "{e}");
        }
    }

    #[test]
    fn table_lists_every_configuration() {
        let p = parse_program("a.").unwrap();
        let t = audit_table(&p, &Engine::all(), DEFAULT_ARGUMENT_BUDGET);
        assert_eq!(t.lines().count(), 1 + Engine::all().len());
        assert!(t.contains("delp-gr\tpass\tpass\tpass"));
    }
}
