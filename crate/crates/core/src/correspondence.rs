//! Translating between ASPIC+ and DeLP arguments on simplified theories, and
//! checking that grounded justification agrees across the two.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use crate::af::{self, Framework};
use crate::aspic::{construct_arguments, Arguments, AttackKind, Saf};
use crate::delp::{Delp, DelpAttack};
use crate::error::EngineError;
use crate::program::{is_directly_consistent, Program};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Another argument for the same conclusion uses strictly fewer defeasible rules.
    NotMinimal { argument: String, smaller: String },
    /// `Conc(Sub(A)) ∪ K` is not indirectly consistent.
    Inconsistent { argument: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotMinimal { argument, smaller } => {
                write!(
                    f,
                    "{argument} is not minimal: {smaller} has fewer defeasible rules"
                )
            }
            Violation::Inconsistent { argument } => {
                write!(f, "{argument} is inconsistent with the facts")
            }
        }
    }
}

/// Every violation of the simplified-theory conditions; empty means simplified.
pub fn simplification_violations(args: &Arguments<'_>) -> Vec<Violation> {
    violating_arguments(args)
        .into_iter()
        .map(|(a, smaller)| match smaller {
            Some(b) => Violation::NotMinimal {
                argument: args.render(a),
                smaller: args.render(b),
            },
            None => Violation::Inconsistent {
                argument: args.render(a),
            },
        })
        .collect()
}

/// `(argument, None)` for an inconsistent argument, `(argument, Some(smaller))`
/// for a non-minimal one.
pub fn violating_arguments(args: &Arguments<'_>) -> Vec<(usize, Option<usize>)> {
    let p = args.program();
    let mut out = Vec::new();
    for a in args.iter() {
        let mut s = a.sub_conclusions().clone();
        s.extend(p.facts().iter().cloned());
        if !is_directly_consistent(&p.strict_closure_of(&s)) {
            out.push((a.id(), None));
        }
        if let Some(&b) = args
            .with_conclusion(a.conc())
            .iter()
            .find(|&&b| args.get(b).def_rules().is_proper_subset(a.def_rules()))
        {
            out.push((a.id(), Some(b)));
        }
    }
    out
}

pub fn is_simplified(p: &Program) -> Result<bool, EngineError> {
    Ok(simplification_violations(&construct_arguments(p)?).is_empty())
}

/// The DeLP argument with the same defeasible rules and conclusion.
pub fn aspic_to_delp(
    args: &Arguments<'_>,
    delp: &Delp<'_>,
    a: usize,
) -> Result<usize, EngineError> {
    let x = args.get(a);
    delp.find(x.def_rules(), x.conc()).ok_or_else(|| {
        EngineError::NotSimplified(format!("{} has no DeLP counterpart", args.render(a)))
    })
}

/// Every ASPIC+ argument with the same defeasible rules and conclusion.
pub fn delp_to_aspic(args: &Arguments<'_>, delp: &Delp<'_>, d: usize) -> Vec<usize> {
    let x = delp.get(d);
    args.with_conclusion(x.conclusion())
        .iter()
        .copied()
        .filter(|&a| args.get(a).def_rules() == x.rules())
        .collect()
}

pub fn a_rebuts(delp: &Delp<'_>, attacker: usize, target: usize) -> Vec<usize> {
    delp.attack_points_as(DelpAttack::ARebut, attacker, target)
}

pub fn ua_rebuts(delp: &Delp<'_>, attacker: usize, target: usize) -> Vec<usize> {
    delp.attack_points_as(DelpAttack::UaRebut, attacker, target)
}

/// The DeLP attack that mirrors an ASPIC+ attack.
pub fn paired(kind: AttackKind) -> DelpAttack {
    match kind {
        AttackKind::Rebut => DelpAttack::ARebut,
        AttackKind::URebut => DelpAttack::UaRebut,
        AttackKind::DlpRebut => DelpAttack::Rebut,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportLine {
    pub argument: String,
    pub warranted: bool,
    pub justified: bool,
}

impl ReportLine {
    pub fn agrees(&self) -> bool {
        self.warranted == self.justified
    }
}

impl fmt::Display for ReportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "Y" } else { "N" };
        write!(
            f,
            "ARG {} warrant={} justified={} agree={}",
            self.argument,
            if self.warranted { "U" } else { "D" },
            yn(self.justified),
            yn(self.agrees())
        )
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub attack: AttackKind,
    pub lines: Vec<ReportLine>,
    /// ASPIC+ arguments whose status differs from their DeLP counterpart.
    /// Only possible when one DeLP argument has several images; informational.
    pub aspic_mismatches: Vec<String>,
}

impl Report {
    /// DeLP arguments whose warrant differs from the joint status of their images.
    pub fn discrepancies(&self) -> usize {
        self.lines.iter().filter(|l| !l.agrees()).count()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "pairing: aspic {} <-> delp {}",
            self.attack,
            paired(self.attack)
        );
        for l in &self.lines {
            let _ = writeln!(out, "{l}");
        }
        for m in &self.aspic_mismatches {
            let _ = writeln!(out, "MISMATCH {m}");
        }
        let _ = writeln!(out, "discrepancies: {}", self.discrepancies());
        out
    }
}

/// Which sub-arguments of a DeLP argument count as attack points.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum PointScope {
    /// The engine's own points, read off its derivation trees.
    #[default]
    Native,
    /// Any argument whose rules are a subset.
    Subsets,
    /// Counterparts of ASPIC+ sub-arguments of the argument's images; should
    /// agree with `Native` and is computed independently of it.
    Conclusions,
}

/// The DeLP defeat graph under `kind`, with points restricted by `scope`.
pub fn scoped_framework(
    args: &Arguments<'_>,
    delp: &Delp<'_>,
    kind: DelpAttack,
    scope: PointScope,
) -> Result<Framework, EngineError> {
    let mut points: Vec<BTreeSet<usize>> = Vec::with_capacity(delp.len());
    for d in 0..delp.len() {
        points.push(match scope {
            PointScope::Subsets => delp.subarguments(d).iter().copied().collect(),
            PointScope::Native => delp.points(d).iter().copied().collect(),
            PointScope::Conclusions => {
                let mut s = BTreeSet::new();
                for a in delp_to_aspic(args, delp, d) {
                    for &sub in args.get(a).sub() {
                        s.insert(aspic_to_delp(args, delp, sub)?);
                    }
                }
                s
            }
        });
    }
    let mut defeats = Vec::new();
    for (target, pts) in points.iter().enumerate() {
        for attacker in 0..delp.len() {
            if pts
                .iter()
                .any(|&pt| delp.attacks_at(kind, attacker, pt) && !delp.less(attacker, pt))
            {
                defeats.push((attacker, target));
            }
        }
    }
    Framework::new((0..delp.len()).map(|d| delp.render(d)).collect(), defeats)
}

/// Compares grounded DeLP warrant with grounded ASPIC+ justification under
/// one attack pairing. Both sides use the program's comparator, which is keyed
/// on defeasible-rule sets and so treats corresponding arguments alike.
pub fn verify_equivalence(p: &Program, attack: AttackKind) -> Result<Report, EngineError> {
    verify_equivalence_scoped(p, attack, PointScope::default())
}

pub fn verify_equivalence_scoped(
    p: &Program,
    attack: AttackKind,
    scope: PointScope,
) -> Result<Report, EngineError> {
    let args = construct_arguments(p)?;
    if let Some(v) = simplification_violations(&args).first() {
        return Err(EngineError::NotSimplified(v.to_string()));
    }
    let delp = Delp::with_attack(p, paired(attack))?;
    let gd = af::grounded(&scoped_framework(&args, &delp, paired(attack), scope)?);
    let saf = Saf::new(args, attack)?;
    let ga = af::grounded(&saf.framework());
    let args = saf.arguments();

    let lines = (0..delp.len())
        .map(|d| ReportLine {
            argument: delp.render(d),
            warranted: gd.contains(&d),
            justified: delp_to_aspic(args, &delp, d).iter().all(|a| ga.contains(a)),
        })
        .collect();
    let mut aspic_mismatches = Vec::new();
    for a in 0..args.len() {
        let d = aspic_to_delp(args, &delp, a)?;
        if ga.contains(&a) != gd.contains(&d) {
            aspic_mismatches.push(args.render(a));
        }
    }
    Ok(Report {
        attack,
        lines,
        aspic_mismatches,
    })
}

/// Images of every ASPIC+ argument, for checking the many-to-one property.
pub fn image_sets(
    args: &Arguments<'_>,
    delp: &Delp<'_>,
) -> Result<Vec<BTreeSet<usize>>, EngineError> {
    let mut out = vec![BTreeSet::new(); delp.len()];
    for a in 0..args.len() {
        out[aspic_to_delp(args, delp, a)?].insert(a);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_program;

    #[test]
    fn inconsistent_presumption_is_not_simplified() {
        let p = parse_program("p.\n~p -< .").unwrap();
        let v = simplification_violations(&construct_arguments(&p).unwrap());
        assert_eq!(
            v,
            vec![Violation::Inconsistent {
                argument: "[=> ~p]".into()
            }]
        );
    }

    #[test]
    fn redundant_presumption_is_not_simplified() {
        let p = parse_program("p.\nq <- p.\nq -< .").unwrap();
        let v = simplification_violations(&construct_arguments(&p).unwrap());
        assert!(matches!(&v[..], [Violation::NotMinimal { argument, .. }] if argument == "[=> q]"));
        assert!(!is_simplified(&p).unwrap());
    }

    #[test]
    fn strict_only_program_is_simplified() {
        let p = parse_program("a.\nb <- a.").unwrap();
        assert!(is_simplified(&p).unwrap());
        let r = verify_equivalence(&p, AttackKind::Rebut).unwrap();
        assert!(r.lines.iter().all(|l| l.warranted && l.justified));
    }

    #[test]
    fn many_to_one() {
        let p = parse_program("p. r.\nq <- p.\nq <- r.\ns -< q.").unwrap();
        let args = construct_arguments(&p).unwrap();
        let delp = Delp::new(&p).unwrap();
        let s = delp.for_conclusion(&"s".parse().unwrap())[0];
        let images = delp_to_aspic(&args, &delp, s);
        assert_eq!(images.len(), 2);
        for a in images {
            assert_eq!(aspic_to_delp(&args, &delp, a).unwrap(), s);
        }
        let sets = image_sets(&args, &delp).unwrap();
        assert!(sets.iter().all(|s| !s.is_empty()));
    }

    #[test]
    fn premise_maps_to_empty_argument() {
        let p = parse_program("f.").unwrap();
        let args = construct_arguments(&p).unwrap();
        let delp = Delp::new(&p).unwrap();
        let d = aspic_to_delp(&args, &delp, 0).unwrap();
        assert!(delp.get(d).rules().is_empty());
        assert_eq!(delp_to_aspic(&args, &delp, d), vec![0]);
    }

    #[test]
    fn a_rebut_needs_a_defeasible_point() {
        let p = parse_program("a -< .\nq <- a.\n~q -< .\nb.\nr <- b.").unwrap();
        let delp = Delp::new(&p).unwrap();
        let find = |l: &str| delp.for_conclusion(&l.parse().unwrap())[0];
        let (q, nq) = (find("q"), find("~q"));
        // q is concluded by a strict rule on top of a defeasible one
        // disagreement also reaches the premise-like point a, since a gives q
        let a = find("a");
        assert_eq!(delp.attack_points(nq, q), vec![a, q]);
        assert!(a_rebuts(&delp, nq, q).is_empty());
        assert_eq!(ua_rebuts(&delp, nq, q), vec![q]);
        assert_eq!(a_rebuts(&delp, q, nq), vec![nq]);
        let r = find("r");
        assert!((0..delp.len()).all(|x| ua_rebuts(&delp, x, r).is_empty()));
    }

    #[test]
    fn married_john_agrees_under_every_pairing() {
        let p = parse_program("wr. go.\n~hw <- b.\nhw <- m.\nm -< wr.\nb -< go.").unwrap();
        for kind in AttackKind::ALL {
            let r = verify_equivalence(&p, kind).unwrap();
            assert_eq!(r.discrepancies(), 0, "{}", r.to_text());
        }
        let r = verify_equivalence(&p, AttackKind::DlpRebut).unwrap();
        let m = r.lines.iter().find(|l| l.argument == "<{d1},m>").unwrap();
        assert!(!m.warranted && !m.justified);
        assert_eq!(m.to_string(), "ARG <{d1},m> warrant=D justified=N agree=Y");
    }

    #[test]
    fn subset_points_break_the_undercut_free_pairing() {
        // <{d2},~hw> has the rules of <{d2},b> but b's derivation never reaches ~hw
        let p = parse_program("wr. go.\n~hw <- b.\nhw <- m.\nm -< wr.\nb -< go.").unwrap();
        let r = verify_equivalence_scoped(&p, AttackKind::URebut, PointScope::Subsets).unwrap();
        let b = r.lines.iter().find(|l| l.argument == "<{d2},b>").unwrap();
        assert!(!b.warranted && b.justified);
        let r = verify_equivalence_scoped(&p, AttackKind::DlpRebut, PointScope::Subsets).unwrap();
        assert_eq!(r.discrepancies(), 0);
    }
}
