//! ASPIC+ arguments, rebutting attacks and preference-based defeat.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::af::Framework;
use crate::error::EngineError;
use crate::ordering::{ArgumentKey, Comparator};
pub use crate::program::RuleRef;
use crate::program::{Literal, Program, RuleSet};

pub const DEFAULT_ARGUMENT_BUDGET: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Premise(Literal),
    /// Sub-argument ids in rule-body order.
    Inference {
        rule: RuleRef,
        subs: Vec<usize>,
    },
}

/// One node of the argument arena; sub-arguments are referenced by id.
#[derive(Clone, Debug)]
pub struct AspicArgument {
    id: usize,
    shape: Shape,
    conc: Literal,
    prem: BTreeSet<Literal>,
    sub: BTreeSet<usize>,
    sub_concs: BTreeSet<Literal>,
    ldr: RuleSet,
    strict_rules: BTreeSet<usize>,
    def_rules: RuleSet,
}

impl AspicArgument {
    pub fn id(&self) -> usize {
        self.id
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn conc(&self) -> &Literal {
        &self.conc
    }

    pub fn prem(&self) -> &BTreeSet<Literal> {
        &self.prem
    }

    /// Includes the argument itself.
    pub fn sub(&self) -> &BTreeSet<usize> {
        &self.sub
    }

    /// `Conc(Sub(A))`.
    pub fn sub_conclusions(&self) -> &BTreeSet<Literal> {
        &self.sub_concs
    }

    pub fn ldr(&self) -> &RuleSet {
        &self.ldr
    }

    pub fn strict_rules(&self) -> &BTreeSet<usize> {
        &self.strict_rules
    }

    pub fn def_rules(&self) -> &RuleSet {
        &self.def_rules
    }

    pub fn rules(&self) -> Vec<RuleRef> {
        self.strict_rules
            .iter()
            .map(|&i| RuleRef::Strict(i))
            .chain(self.def_rules.iter().map(RuleRef::Defeasible))
            .collect()
    }

    pub fn top_rule(&self) -> Option<RuleRef> {
        match &self.shape {
            Shape::Premise(_) => None,
            Shape::Inference { rule, .. } => Some(*rule),
        }
    }

    pub fn has_defeasible_top(&self) -> bool {
        self.top_rule().is_some_and(|r| r.is_defeasible())
    }

    pub fn is_strict(&self) -> bool {
        self.def_rules.is_empty()
    }

    pub fn key(&self) -> ArgumentKey {
        ArgumentKey {
            def_rules: self.def_rules.clone(),
            last_def_rules: self.ldr.clone(),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum AttackKind {
    Rebut,
    URebut,
    DlpRebut,
}

impl AttackKind {
    pub const ALL: [AttackKind; 3] = [AttackKind::Rebut, AttackKind::URebut, AttackKind::DlpRebut];
}

impl fmt::Display for AttackKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AttackKind::Rebut => "rebut",
            AttackKind::URebut => "urebut",
            AttackKind::DlpRebut => "dlprebut",
        })
    }
}

impl FromStr for AttackKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rebut" => Ok(AttackKind::Rebut),
            "urebut" | "u-rebut" => Ok(AttackKind::URebut),
            "dlprebut" | "dlp-rebut" => Ok(AttackKind::DlpRebut),
            _ => Err(format!("unknown attack `{s}`")),
        }
    }
}

/// Every argument over a program, in construction order.
#[derive(Clone, Debug)]
pub struct Arguments<'p> {
    program: &'p Program,
    args: Vec<AspicArgument>,
    by_conc: HashMap<Literal, Vec<usize>>,
}

pub fn construct_arguments(p: &Program) -> Result<Arguments<'_>, EngineError> {
    construct_arguments_with_budget(p, DEFAULT_ARGUMENT_BUDGET)
}

/// Semi-naive closure under rule application. Arguments whose conclusion
/// already occurs among their proper sub-arguments are not formed, which
/// keeps cyclic rule sets finite.
pub fn construct_arguments_with_budget(
    p: &Program,
    budget: usize,
) -> Result<Arguments<'_>, EngineError> {
    let mut out = Arguments {
        program: p,
        args: Vec::new(),
        by_conc: HashMap::new(),
    };
    for f in p.facts() {
        out.push(Shape::Premise(f.clone()), budget)?;
    }
    for (i, r) in p.defeasible_rules().iter().enumerate() {
        if r.body().is_empty() {
            out.push(
                Shape::Inference {
                    rule: RuleRef::Defeasible(i),
                    subs: vec![],
                },
                budget,
            )?;
        }
    }
    let rules: Vec<RuleRef> = (0..p.strict_rules().len())
        .map(RuleRef::Strict)
        .chain((0..p.defeasible_rules().len()).map(RuleRef::Defeasible))
        .filter(|r| !r.resolve(p).body().is_empty())
        .collect();

    let mut old_end = 0;
    let mut new_end = out.args.len();
    while old_end < new_end {
        for &rule in &rules {
            let body = rule.resolve(p).body().to_vec();
            let candidates: Vec<Vec<usize>> = body
                .iter()
                .map(|l| {
                    out.by_conc
                        .get(l)
                        .map(|v| v.iter().copied().filter(|&i| i < new_end).collect())
                        .unwrap_or_default()
                })
                .collect();
            // The first body position drawing from the newest round fixes
            // which earlier positions are restricted to older arguments.
            for pivot in 0..body.len() {
                let mut combos: Vec<Vec<usize>> = vec![vec![]];
                for (pos, cands) in candidates.iter().enumerate() {
                    let allowed = cands.iter().copied().filter(|&i| {
                        if pos < pivot {
                            i < old_end
                        } else if pos == pivot {
                            i >= old_end
                        } else {
                            true
                        }
                    });
                    let allowed: Vec<usize> = allowed.collect();
                    combos = combos
                        .into_iter()
                        .flat_map(|c| {
                            allowed.iter().map(move |&a| {
                                let mut c = c.clone();
                                c.push(a);
                                c
                            })
                        })
                        .collect();
                    if combos.is_empty() {
                        break;
                    }
                }
                for subs in combos {
                    let head = rule.resolve(p).head();
                    if subs.iter().any(|&s| out.args[s].sub_concs.contains(head)) {
                        continue;
                    }
                    out.push(Shape::Inference { rule, subs }, budget)?;
                }
            }
        }
        old_end = new_end;
        new_end = out.args.len();
    }
    Ok(out)
}

impl<'p> Arguments<'p> {
    fn push(&mut self, shape: Shape, budget: usize) -> Result<(), EngineError> {
        if self.args.len() >= budget {
            return Err(EngineError::ArgumentBudget(budget));
        }
        let id = self.args.len();
        let mut arg = AspicArgument {
            id,
            conc: Literal::pos("x"),
            shape: shape.clone(),
            prem: BTreeSet::new(),
            sub: BTreeSet::from([id]),
            sub_concs: BTreeSet::new(),
            ldr: RuleSet::new(),
            strict_rules: BTreeSet::new(),
            def_rules: RuleSet::new(),
        };
        match shape {
            Shape::Premise(l) => {
                arg.prem.insert(l.clone());
                arg.conc = l;
            }
            Shape::Inference { rule, subs } => {
                arg.conc = rule.resolve(self.program).head().clone();
                for &s in &subs {
                    let s = &self.args[s];
                    arg.prem.extend(s.prem.iter().cloned());
                    arg.sub.extend(s.sub.iter().copied());
                    arg.sub_concs.extend(s.sub_concs.iter().cloned());
                    arg.strict_rules.extend(s.strict_rules.iter().copied());
                    arg.def_rules.extend(&s.def_rules);
                    if !rule.is_defeasible() {
                        arg.ldr.extend(&s.ldr);
                    }
                }
                match rule {
                    RuleRef::Strict(i) => {
                        arg.strict_rules.insert(i);
                    }
                    RuleRef::Defeasible(i) => {
                        arg.def_rules.insert(i);
                        arg.ldr = RuleSet::singleton(i);
                    }
                }
            }
        }
        arg.sub_concs.insert(arg.conc.clone());
        self.by_conc.entry(arg.conc.clone()).or_default().push(id);
        self.args.push(arg);
        Ok(())
    }

    pub fn program(&self) -> &'p Program {
        self.program
    }

    pub fn len(&self) -> usize {
        self.args.len()
    }

    pub fn is_empty(&self) -> bool {
        self.args.is_empty()
    }

    pub fn get(&self, id: usize) -> &AspicArgument {
        &self.args[id]
    }

    pub fn iter(&self) -> impl Iterator<Item = &AspicArgument> {
        self.args.iter()
    }

    pub fn with_conclusion(&self, l: &Literal) -> &[usize] {
        self.by_conc.get(l).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn label(&self, id: usize) -> String {
        format!("A{}", id + 1)
    }

    /// Bracket notation, e.g. `[p, [p => q] -> r]`.
    pub fn render(&self, id: usize) -> String {
        let a = &self.args[id];
        match &a.shape {
            Shape::Premise(l) => l.to_string(),
            Shape::Inference { rule, subs } => {
                let arrow = if rule.is_defeasible() { "=>" } else { "->" };
                let parts: Vec<String> = subs.iter().map(|&s| self.render(s)).collect();
                if parts.is_empty() {
                    format!("[{arrow} {}]", a.conc)
                } else {
                    format!("[{} {arrow} {}]", parts.join(", "), a.conc)
                }
            }
        }
    }

    /// Witnesses `B'` in `Sub(b)` on which `a` rebuts `b`.
    pub fn rebuts(&self, a: usize, b: usize) -> Vec<usize> {
        let target = self.args[a].conc.complement();
        self.witnesses(b, |s| s.has_defeasible_top() && s.conc == target)
    }

    pub fn u_rebuts(&self, a: usize, b: usize) -> Vec<usize> {
        let target = self.args[a].conc.complement();
        self.witnesses(b, |s| !s.is_strict() && s.conc == target)
    }

    /// `{Conc(a), Conc(B')} ∪ K` strictly derives a complementary pair.
    pub fn dlp_rebuts(&self, a: usize, b: usize) -> Vec<usize> {
        let ca = &self.args[a].conc;
        self.witnesses(b, |s| self.program.disagree(ca, &s.conc))
    }

    pub fn attacks(&self, kind: AttackKind, a: usize, b: usize) -> Vec<usize> {
        match kind {
            AttackKind::Rebut => self.rebuts(a, b),
            AttackKind::URebut => self.u_rebuts(a, b),
            AttackKind::DlpRebut => self.dlp_rebuts(a, b),
        }
    }

    fn witnesses(&self, b: usize, pred: impl Fn(&AspicArgument) -> bool) -> Vec<usize> {
        self.args[b]
            .sub
            .iter()
            .copied()
            .filter(|&s| pred(&self.args[s]))
            .collect()
    }
}

/// An attack of `attacker` on `target` at the sub-argument `on`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Attack {
    pub attacker: usize,
    pub target: usize,
    pub on: usize,
}

/// Arguments, attack triples and the ordering that turns attacks into defeats.
#[derive(Clone, Debug)]
pub struct Saf<'p> {
    arguments: Arguments<'p>,
    kind: AttackKind,
    attacks: Vec<Attack>,
    comparator: Comparator<'p>,
}

impl<'p> Saf<'p> {
    pub fn new(arguments: Arguments<'p>, kind: AttackKind) -> Result<Self, EngineError> {
        let comparator = Comparator::new(arguments.program)?;
        let attacks = compute_attacks(&arguments, kind);
        Ok(Saf {
            arguments,
            kind,
            attacks,
            comparator,
        })
    }

    pub fn arguments(&self) -> &Arguments<'p> {
        &self.arguments
    }

    pub fn kind(&self) -> AttackKind {
        self.kind
    }

    pub fn attacks(&self) -> &[Attack] {
        &self.attacks
    }

    pub fn comparator(&self) -> &Comparator<'p> {
        &self.comparator
    }

    /// `a ≺ b`.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.comparator
            .less(&self.arguments.get(a).key(), &self.arguments.get(b).key())
    }

    /// Attack triples that survive the preference test against the attacked
    /// sub-argument.
    pub fn defeat_witnesses(&self, a: usize, b: usize) -> Vec<usize> {
        self.attacks
            .iter()
            .filter(|t| t.attacker == a && t.target == b && !self.less(a, t.on))
            .map(|t| t.on)
            .collect()
    }

    pub fn defeats(&self) -> BTreeSet<(usize, usize)> {
        self.attacks
            .iter()
            .filter(|t| !self.less(t.attacker, t.on))
            .map(|t| (t.attacker, t.target))
            .collect()
    }

    pub fn framework(&self) -> Framework {
        let labels = (0..self.arguments.len())
            .map(|i| self.arguments.label(i))
            .collect();
        Framework::new(labels, self.defeats()).expect("defeats reference constructed arguments")
    }
}

fn compute_attacks(args: &Arguments<'_>, kind: AttackKind) -> Vec<Attack> {
    // Attacker conclusions that hit each literal, computed once per literal.
    let mut hitting: HashMap<Literal, Vec<Literal>> = HashMap::new();
    let concs: Vec<Literal> = {
        let mut v: Vec<Literal> = args.by_conc.keys().cloned().collect();
        v.sort();
        v
    };
    let mut out = Vec::new();
    for b in 0..args.len() {
        for &s in &args.args[b].sub {
            let sa = &args.args[s];
            let eligible = match kind {
                AttackKind::Rebut => sa.has_defeasible_top(),
                AttackKind::URebut => !sa.is_strict(),
                AttackKind::DlpRebut => true,
            };
            if !eligible {
                continue;
            }
            let hits = hitting
                .entry(sa.conc.clone())
                .or_insert_with(|| match kind {
                    AttackKind::DlpRebut => concs
                        .iter()
                        .filter(|c| args.program.disagree(c, &sa.conc))
                        .cloned()
                        .collect(),
                    _ => vec![sa.conc.complement()],
                });
            for c in hits.iter() {
                for &a in args.with_conclusion(c) {
                    out.push(Attack {
                        attacker: a,
                        target: b,
                        on: s,
                    });
                }
            }
        }
    }
    out.sort();
    out
}

pub fn build_framework(p: &Program, kind: AttackKind) -> Result<Framework, EngineError> {
    build_framework_with_budget(p, kind, DEFAULT_ARGUMENT_BUDGET)
}

pub fn build_framework_with_budget(
    p: &Program,
    kind: AttackKind,
    budget: usize,
) -> Result<Framework, EngineError> {
    Ok(Saf::new(construct_arguments_with_budget(p, budget)?, kind)?.framework())
}

/// Conclusions of a set of arguments.
pub fn conclusions<'a>(
    args: &Arguments<'_>,
    set: impl IntoIterator<Item = &'a usize>,
) -> BTreeSet<Literal> {
    set.into_iter()
        .map(|&i| args.get(i).conc().clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::af::{self, Mode, Semantics};
    use crate::parse::parse_program;

    const RUNNING: &str = "p. u. x.
        [d1] q -< p.
        [d2] t -< .
        [d3] ~t -< v, x.
        [s1] r <- p, q.
        [s2] ~q <- t.
        [s3] v <- u.";

    fn find(args: &Arguments<'_>, rendered: &str) -> usize {
        (0..args.len())
            .find(|&i| args.render(i) == rendered)
            .unwrap_or_else(|| panic!("no argument {rendered}"))
    }

    #[test]
    fn running_example_arguments() {
        let p = parse_program(RUNNING).unwrap();
        let args = construct_arguments(&p).unwrap();
        assert_eq!(args.len(), 9);
        let a3 = find(&args, "[p, [p => q] -> r]");
        let a = args.get(a3);
        assert_eq!(a.prem(), &BTreeSet::from([Literal::pos("p")]));
        assert_eq!(p.format_rule_set(a.def_rules()), "{d1}");
        assert_eq!(p.format_rule_set(a.ldr()), "{d1}");
        assert_eq!(a.top_rule(), Some(RuleRef::Strict(0)));
        assert_eq!(a.sub().len(), 3);
        assert_eq!(a.rules().len(), 2);
    }

    #[test]
    fn single_fact_single_argument() {
        let p = parse_program("f.").unwrap();
        let args = construct_arguments(&p).unwrap();
        assert_eq!(args.len(), 1);
        assert_eq!(args.render(0), "f");
        assert!(args.get(0).top_rule().is_none());
    }

    #[test]
    fn rebut_needs_defeasible_top() {
        let p = parse_program(RUNNING).unwrap();
        let args = construct_arguments(&p).unwrap();
        let a2 = find(&args, "[p => q]");
        let a3 = find(&args, "[p, [p => q] -> r]");
        let b2 = find(&args, "[[=> t] -> ~q]");
        let b1 = find(&args, "[=> t]");
        let c4 = find(&args, "[[u -> v], x => ~t]");
        assert_eq!(args.rebuts(b2, a3), vec![a2]);
        assert!(args.rebuts(a2, b2).is_empty());
        assert_eq!(args.u_rebuts(a2, b2), vec![b2]);
        assert_eq!(args.rebuts(c4, b2), vec![b1]);
        assert_eq!(args.rebuts(b1, c4), vec![c4]);
        let c2 = find(&args, "[u -> v]");
        assert!((0..args.len()).all(|a| args.u_rebuts(a, c2).is_empty()));
        let p0 = find(&args, "p");
        assert!((0..args.len()).all(|a| args.rebuts(a, p0).is_empty()));
    }

    #[test]
    fn attack_strength_chain() {
        let p = parse_program(RUNNING).unwrap();
        let args = construct_arguments(&p).unwrap();
        for a in 0..args.len() {
            for b in 0..args.len() {
                let r: BTreeSet<_> = args.rebuts(a, b).into_iter().collect();
                let u: BTreeSet<_> = args.u_rebuts(a, b).into_iter().collect();
                let d: BTreeSet<_> = args.dlp_rebuts(a, b).into_iter().collect();
                assert!(r.is_subset(&u) && u.is_subset(&d));
            }
        }
    }

    #[test]
    fn saf_attacks_match_pairwise_definitions() {
        let p = parse_program(RUNNING).unwrap();
        for kind in AttackKind::ALL {
            let saf = Saf::new(construct_arguments(&p).unwrap(), kind).unwrap();
            let args = saf.arguments();
            let mut expected = Vec::new();
            for a in 0..args.len() {
                for b in 0..args.len() {
                    for on in args.attacks(kind, a, b) {
                        expected.push(Attack {
                            attacker: a,
                            target: b,
                            on,
                        });
                    }
                }
            }
            expected.sort();
            assert_eq!(saf.attacks(), expected.as_slice(), "{kind}");
        }
    }

    #[test]
    fn incomparable_b1_c4_gives_two_preferred_extensions() {
        let p = parse_program(RUNNING).unwrap();
        let saf = Saf::new(construct_arguments(&p).unwrap(), AttackKind::Rebut).unwrap();
        let f = saf.framework();
        let args = saf.arguments();
        let names =
            |s: &af::Extension| -> BTreeSet<String> { s.iter().map(|&i| args.render(i)).collect() };
        let g = names(&af::grounded(&f));
        assert_eq!(
            g,
            ["p", "u", "x", "[u -> v]"]
                .iter()
                .map(|s| s.to_string())
                .collect()
        );
        let prefs = af::extensions(&f, Semantics::Preferred).unwrap();
        assert_eq!(prefs.len(), 2);
        let a3 = find(args, "[p, [p => q] -> r]");
        assert!(af::justified(&f, a3, Semantics::Preferred, Mode::Credulous).unwrap());
        assert!(!af::justified(&f, a3, Semantics::Preferred, Mode::Sceptical).unwrap());
    }

    #[test]
    fn preferring_c4_gives_unique_extension() {
        let src = format!("{RUNNING}\n#prefer {{d3}} > {{d2}}");
        let p = parse_program(&src).unwrap();
        let saf = Saf::new(construct_arguments(&p).unwrap(), AttackKind::Rebut).unwrap();
        let f = saf.framework();
        let expected = af::grounded(&f);
        assert_eq!(expected.len(), 7);
        for sem in [Semantics::Complete, Semantics::Preferred, Semantics::Stable] {
            assert_eq!(af::extensions(&f, sem).unwrap(), vec![expected.clone()]);
        }
        let b1 = find(saf.arguments(), "[=> t]");
        assert!(!expected.contains(&b1));
    }

    #[test]
    fn cyclic_rules_terminate() {
        let p = parse_program("p.\nq -< p.\np -< q.\nr <- q.\nq <- r.").unwrap();
        let args = construct_arguments(&p).unwrap();
        for a in args.iter() {
            let below: BTreeSet<&Literal> = a
                .sub()
                .iter()
                .filter(|&&s| s != a.id())
                .map(|&s| args.get(s).conc())
                .collect();
            // no argument repeats its own conclusion below itself
            if let Shape::Inference { subs, .. } = a.shape() {
                for &s in subs {
                    assert!(!args.get(s).sub_conclusions().contains(a.conc()));
                }
            }
            assert!(below.len() < a.sub().len());
        }
        assert_eq!(args.len(), 3);
    }

    #[test]
    fn budget_is_enforced() {
        let p = parse_program(RUNNING).unwrap();
        assert_eq!(
            construct_arguments_with_budget(&p, 5).unwrap_err(),
            EngineError::ArgumentBudget(5)
        );
    }

    #[test]
    fn empty_program_empty_framework() {
        let p = parse_program("").unwrap();
        assert!(build_framework(&p, AttackKind::Rebut).unwrap().is_empty());
    }

    #[test]
    fn sub_conclusions_are_rule_literals() {
        let p = parse_program(RUNNING).unwrap();
        let args = construct_arguments(&p).unwrap();
        for a in args.iter().filter(|a| a.top_rule().is_some()) {
            let mut lits = BTreeSet::new();
            for r in a.rules() {
                let r = r.resolve(&p);
                lits.insert(r.head().clone());
                lits.extend(r.body().iter().cloned());
            }
            assert_eq!(&lits, a.sub_conclusions());
        }
    }
}
