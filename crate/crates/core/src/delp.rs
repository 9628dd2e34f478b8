//! DeLP: defeasible derivations, minimal consistent arguments, defeaters,
//! acceptable argumentation lines and marked dialectical trees.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::{self, Write as _};

use crate::af::escape;
use crate::error::EngineError;
use crate::ordering::{ArgumentKey, Comparator};
use crate::program::{Literal, Program, RuleRef, RuleSet};

/// Why a literal appears in a derivation.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Justification {
    Fact,
    Presumption(usize),
    Rule(RuleRef),
}

/// A defeasible derivation: every rule body occurs earlier in the sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    steps: Vec<(Literal, Justification)>,
}

impl Derivation {
    pub fn steps(&self) -> &[(Literal, Justification)] {
        &self.steps
    }

    pub fn literals(&self) -> Vec<&Literal> {
        self.steps.iter().map(|(l, _)| l).collect()
    }

    pub fn conclusion(&self) -> &Literal {
        &self.steps.last().expect("derivations are non-empty").0
    }

    pub fn defeasible_rules(&self) -> RuleSet {
        self.steps
            .iter()
            .filter_map(|(_, j)| match j {
                Justification::Presumption(i) | Justification::Rule(RuleRef::Defeasible(i)) => {
                    Some(*i)
                }
                _ => None,
            })
            .collect()
    }

    pub fn is_strict(&self) -> bool {
        self.defeasible_rules().is_empty()
    }

    /// Checks the derivation conditions against the program.
    pub fn is_valid(&self, p: &Program) -> bool {
        let mut seen = HashSet::new();
        for (l, j) in &self.steps {
            let ok = match *j {
                Justification::Fact => p.facts().contains(l),
                Justification::Presumption(i) => {
                    let r = p.defeasible_rule(i);
                    r.is_presumption() && r.head() == l
                }
                Justification::Rule(r) => {
                    let r = r.resolve(p);
                    r.head() == l && r.body().iter().all(|b| seen.contains(b))
                }
            };
            if !ok {
                return false;
            }
            seen.insert(l.clone());
        }
        !self.steps.is_empty()
    }

    /// Last defeasible rules along the derivation of the conclusion.
    pub fn last_defeasible_rules(&self, p: &Program) -> RuleSet {
        let mut ldr: HashMap<&Literal, RuleSet> = HashMap::new();
        for (l, j) in &self.steps {
            let set = match *j {
                Justification::Fact => RuleSet::new(),
                Justification::Presumption(i) => RuleSet::singleton(i),
                Justification::Rule(RuleRef::Defeasible(i)) => RuleSet::singleton(i),
                Justification::Rule(r @ RuleRef::Strict(_)) => {
                    let mut s = RuleSet::new();
                    for b in r.resolve(p).body() {
                        s.extend(&ldr[b]);
                    }
                    s
                }
            };
            ldr.insert(l, set);
        }
        ldr.remove(self.conclusion()).unwrap_or_default()
    }
}

/// Derivation of `goal` from the facts, strict rules and `extra`.
///
/// Each literal is justified by a rule from the earliest forward-chaining
/// round that reaches it; the sequence keeps only the literals the goal
/// depends on, bodies before heads.
pub fn derive(p: &Program, extra: &RuleSet, goal: &Literal) -> Option<Derivation> {
    let mut just: HashMap<Literal, Justification> = HashMap::new();
    for f in p.facts() {
        just.insert(f.clone(), Justification::Fact);
    }
    let rules: Vec<RuleRef> = (0..p.strict_rules().len())
        .map(RuleRef::Strict)
        .chain(extra.iter().map(RuleRef::Defeasible))
        .collect();
    loop {
        let mut fresh = Vec::new();
        for &r in &rules {
            let rule = r.resolve(p);
            if !just.contains_key(rule.head())
                && !fresh.iter().any(|(h, _)| h == rule.head())
                && rule.body().iter().all(|b| just.contains_key(b))
            {
                let j = if rule.is_presumption() {
                    match r {
                        RuleRef::Defeasible(i) => Justification::Presumption(i),
                        RuleRef::Strict(_) => unreachable!("strict rules have bodies"),
                    }
                } else {
                    Justification::Rule(r)
                };
                fresh.push((rule.head().clone(), j));
            }
        }
        if fresh.is_empty() {
            break;
        }
        just.extend(fresh);
    }
    if !just.contains_key(goal) {
        return None;
    }
    let mut steps = Vec::new();
    let mut emitted = HashSet::new();
    emit(p, &just, goal, &mut emitted, &mut steps);
    Some(Derivation { steps })
}

fn emit(
    p: &Program,
    just: &HashMap<Literal, Justification>,
    l: &Literal,
    emitted: &mut HashSet<Literal>,
    out: &mut Vec<(Literal, Justification)>,
) {
    if emitted.contains(l) {
        return;
    }
    let j = just[l];
    if let Justification::Rule(r) = j {
        for b in r.resolve(p).body() {
            emit(p, just, b, emitted, out);
        }
    }
    emitted.insert(l.clone());
    out.push((l.clone(), j));
}

pub fn has_strict_derivation(p: &Program, goal: &Literal) -> bool {
    p.closure_with(&RuleSet::new()).contains(goal)
}

/// `⟨A, L⟩` with the derivation that witnesses it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelpArgument {
    rules: RuleSet,
    conclusion: Literal,
    witness: Derivation,
    ldr: RuleSet,
}

impl DelpArgument {
    pub fn rules(&self) -> &RuleSet {
        &self.rules
    }

    pub fn conclusion(&self) -> &Literal {
        &self.conclusion
    }

    pub fn witness(&self) -> &Derivation {
        &self.witness
    }

    pub fn last_defeasible_rules(&self) -> &RuleSet {
        &self.ldr
    }

    pub fn key(&self) -> ArgumentKey {
        ArgumentKey {
            def_rules: self.rules.clone(),
            last_def_rules: self.ldr.clone(),
        }
    }

    /// `B ⊆ A`.
    pub fn is_subargument_of(&self, other: &DelpArgument) -> bool {
        self.rules.is_subset(&other.rules)
    }

    /// `<{d1,d2},r>`: no spaces, so it doubles as a framework label.
    pub fn render(&self, p: &Program) -> String {
        format!(
            "<{{{}}},{}>",
            p.rule_ids(&self.rules).join(","),
            self.conclusion
        )
    }

    fn sort_key(&self, p: &Program) -> (Literal, Vec<String>) {
        (
            self.conclusion.clone(),
            p.rule_ids(&self.rules)
                .iter()
                .map(|s| s.to_string())
                .collect(),
        )
    }
}

type Node = (Literal, RuleSet);

/// Every `(literal, defeasible rules)` labelling some node of a derivation
/// tree for `goal` that uses exactly `rules`, no literal repeating below itself.
fn tree_nodes(p: &Program, rules: &RuleSet, goal: &Literal) -> BTreeSet<Node> {
    // a tree, summarised: its root, its defeasible rules and its nodes
    type Tree = (Literal, RuleSet, BTreeSet<Node>);
    let mut by_root: HashMap<Literal, Vec<Tree>> = HashMap::new();
    let mut seen: HashSet<Tree> = HashSet::new();
    let mut add = |t: Tree, by_root: &mut HashMap<Literal, Vec<Tree>>| {
        if seen.insert(t.clone()) {
            by_root.entry(t.0.clone()).or_default().push(t);
            true
        } else {
            false
        }
    };
    for f in p.facts() {
        let t = (
            f.clone(),
            RuleSet::new(),
            BTreeSet::from([(f.clone(), RuleSet::new())]),
        );
        add(t, &mut by_root);
    }
    let usable: Vec<RuleRef> = (0..p.strict_rules().len())
        .map(RuleRef::Strict)
        .chain(rules.iter().map(RuleRef::Defeasible))
        .collect();
    loop {
        let mut grew = false;
        for &r in &usable {
            let rule = r.resolve(p);
            let head = rule.head();
            let mut combos: Vec<(RuleSet, BTreeSet<Node>)> = vec![(
                match r {
                    RuleRef::Defeasible(i) => RuleSet::singleton(i),
                    RuleRef::Strict(_) => RuleSet::new(),
                },
                BTreeSet::new(),
            )];
            for b in rule.body() {
                let subs = by_root.get(b).map(Vec::as_slice).unwrap_or(&[]);
                combos = combos
                    .iter()
                    .flat_map(|(rs, nodes)| {
                        subs.iter()
                            .filter(|t| t.2.iter().all(|(l, _)| l != head))
                            .map(move |t| (rs.union(&t.1), nodes.union(&t.2).cloned().collect()))
                    })
                    .collect();
            }
            for (rs, mut nodes) in combos {
                nodes.insert((head.clone(), rs.clone()));
                grew |= add((head.clone(), rs, nodes), &mut by_root);
            }
        }
        if !grew {
            break;
        }
    }
    by_root
        .remove(goal)
        .unwrap_or_default()
        .into_iter()
        .filter(|t| &t.1 == rules)
        .flat_map(|t| t.2)
        .collect()
}

/// Minimal rule sets from which each literal is derivable, ignoring consistency.
fn minimal_supports(p: &Program) -> HashMap<Literal, Vec<RuleSet>> {
    let mut supports: HashMap<Literal, Vec<RuleSet>> = HashMap::new();
    for f in p.facts() {
        supports.insert(f.clone(), vec![RuleSet::new()]);
    }
    let rules: Vec<RuleRef> = (0..p.strict_rules().len())
        .map(RuleRef::Strict)
        .chain((0..p.defeasible_rules().len()).map(RuleRef::Defeasible))
        .collect();
    let mut changed: Option<HashSet<Literal>> = None;
    loop {
        let mut now_changed = HashSet::new();
        for &r in &rules {
            let rule = r.resolve(p);
            if let Some(ch) = &changed {
                if !rule.body().iter().any(|b| ch.contains(b)) {
                    continue;
                }
            }
            let mut combos = vec![match r {
                RuleRef::Defeasible(i) => RuleSet::singleton(i),
                RuleRef::Strict(_) => RuleSet::new(),
            }];
            for b in rule.body() {
                let Some(bs) = supports.get(b) else {
                    combos.clear();
                    break;
                };
                let mut next: Vec<RuleSet> = Vec::new();
                for c in &combos {
                    for s in bs {
                        add_minimal(&mut next, c.union(s));
                    }
                }
                combos = next;
            }
            let entry = supports.entry(rule.head().clone()).or_default();
            for c in combos {
                if add_minimal(entry, c) {
                    now_changed.insert(rule.head().clone());
                }
            }
        }
        if now_changed.is_empty() {
            break;
        }
        changed = Some(now_changed);
    }
    supports.retain(|_, v| !v.is_empty());
    supports
}

// Keeps `sets` an antichain; reports whether `s` was added.
fn add_minimal(sets: &mut Vec<RuleSet>, s: RuleSet) -> bool {
    if sets.iter().any(|t| t.is_subset(&s)) {
        return false;
    }
    sets.retain(|t| !s.is_subset(t));
    sets.push(s);
    true
}

fn make_argument(p: &Program, rules: RuleSet, conclusion: Literal) -> DelpArgument {
    let witness = derive(p, &rules, &conclusion).expect("support derives its conclusion");
    debug_assert_eq!(witness.defeasible_rules(), rules);
    let ldr = witness.last_defeasible_rules(p);
    DelpArgument {
        rules,
        conclusion,
        witness,
        ldr,
    }
}

/// All arguments for `goal`: minimal supports that are consistent with the
/// strict part. A consistent support with a smaller support below it cannot
/// be minimal, since consistency is inherited by subsets.
pub fn delp_arguments(p: &Program, goal: &Literal) -> Vec<DelpArgument> {
    let supports = minimal_supports(p);
    arguments_from(
        p,
        goal,
        supports.get(goal).map(Vec::as_slice).unwrap_or(&[]),
    )
}

fn arguments_from(p: &Program, goal: &Literal, sets: &[RuleSet]) -> Vec<DelpArgument> {
    let mut out: Vec<DelpArgument> = sets
        .iter()
        .filter(|s| p.is_consistent_with(s))
        .map(|s| make_argument(p, s.clone(), goal.clone()))
        .collect();
    out.sort_by_key(|a| a.sort_key(p));
    out
}

pub fn disagree(p: &Program, l1: &Literal, l2: &Literal) -> bool {
    p.disagree(l1, l2)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum DefeatKind {
    Proper,
    Blocking,
}

impl fmt::Display for DefeatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DefeatKind::Proper => "proper",
            DefeatKind::Blocking => "blocking",
        })
    }
}

/// Which conflicts count as attacks between DeLP arguments.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum DelpAttack {
    /// The attacker's conclusion disagrees with the point.
    #[default]
    Rebut,
    /// Complementary point concluded by a defeasible rule of the sub-argument.
    ARebut,
    /// Complementary point with a non-empty sub-argument.
    UaRebut,
}

impl fmt::Display for DelpAttack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DelpAttack::Rebut => "rebut",
            DelpAttack::ARebut => "a-rebut",
            DelpAttack::UaRebut => "ua-rebut",
        })
    }
}

/// `attacker` counter-argues `target` at the conclusion of `sub`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Counter {
    pub attacker: usize,
    pub target: usize,
    pub sub: usize,
}

/// Every DeLP argument of a program, plus the relations between them.
#[derive(Debug)]
pub struct Delp<'p> {
    program: &'p Program,
    comparator: Comparator<'p>,
    attack: DelpAttack,
    args: Vec<DelpArgument>,
    by_conc: BTreeMap<Literal, Vec<usize>>,
    subs: Vec<Vec<usize>>,
    points: Vec<Vec<usize>>,
    disagreeing: HashMap<Literal, Vec<Literal>>,
}

impl<'p> Delp<'p> {
    /// Arguments for every literal that is a fact or a rule head; any
    /// sub-argument conclusion lies in that set.
    pub fn new(program: &'p Program) -> Result<Self, EngineError> {
        Self::with_attack(program, DelpAttack::Rebut)
    }

    pub fn with_attack(program: &'p Program, attack: DelpAttack) -> Result<Self, EngineError> {
        let comparator = Comparator::new(program)?;
        let supports = minimal_supports(program);
        let mut goals: Vec<&Literal> = supports.keys().collect();
        goals.sort();
        let mut args = Vec::new();
        for g in goals {
            args.extend(arguments_from(program, g, &supports[g]));
        }
        let mut by_conc: BTreeMap<Literal, Vec<usize>> = BTreeMap::new();
        for (i, a) in args.iter().enumerate() {
            by_conc.entry(a.conclusion.clone()).or_default().push(i);
        }
        let subs = args
            .iter()
            .map(|a| {
                (0..args.len())
                    .filter(|&j| args[j].is_subargument_of(a))
                    .collect()
            })
            .collect();
        let points = args
            .iter()
            .map(|a| {
                let mut v: Vec<usize> = tree_nodes(program, &a.rules, &a.conclusion)
                    .iter()
                    .filter_map(|(l, rs)| {
                        by_conc
                            .get(l)?
                            .iter()
                            .copied()
                            .find(|&j| &args[j].rules == rs)
                    })
                    .collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        let concs: Vec<&Literal> = by_conc.keys().collect();
        let disagreeing = concs
            .iter()
            .map(|&l| {
                let d = concs
                    .iter()
                    .filter(|&&m| program.disagree(l, m))
                    .map(|&m| m.clone())
                    .collect();
                (l.clone(), d)
            })
            .collect();
        Ok(Delp {
            program,
            comparator,
            attack,
            args,
            by_conc,
            subs,
            points,
            disagreeing,
        })
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

    pub fn get(&self, i: usize) -> &DelpArgument {
        &self.args[i]
    }

    pub fn arguments(&self) -> &[DelpArgument] {
        &self.args
    }

    pub fn render(&self, i: usize) -> String {
        self.args[i].render(self.program)
    }

    pub fn for_conclusion(&self, l: &Literal) -> &[usize] {
        self.by_conc.get(l).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Index of the argument with exactly these rules and conclusion.
    pub fn find(&self, rules: &RuleSet, conclusion: &Literal) -> Option<usize> {
        self.for_conclusion(conclusion)
            .iter()
            .copied()
            .find(|&i| &self.args[i].rules == rules)
    }

    /// Sub-arguments of `a` (including `a`).
    pub fn subarguments(&self, a: usize) -> &[usize] {
        &self.subs[a]
    }

    /// Where `a` can be attacked: the arguments standing at some node of a
    /// derivation tree of `a` (including `a`). Narrower than
    /// [`Delp::subarguments`]: a subset concluding a literal the conclusion
    /// never passes through is not a point.
    pub fn points(&self, a: usize) -> &[usize] {
        &self.points[a]
    }

    /// `a ≺ b`.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.comparator
            .less(&self.args[a].key(), &self.args[b].key())
    }

    pub fn attack(&self) -> DelpAttack {
        self.attack
    }

    /// Disagreement sub-arguments of `target` on which `attacker` attacks it.
    pub fn attack_points(&self, attacker: usize, target: usize) -> Vec<usize> {
        self.attack_points_as(self.attack, attacker, target)
    }

    pub fn attack_points_as(&self, kind: DelpAttack, attacker: usize, target: usize) -> Vec<usize> {
        self.points[target]
            .iter()
            .copied()
            .filter(|&s| self.attacks_at(kind, attacker, s))
            .collect()
    }

    /// Whether `attacker` attacks the argument `point` itself under `kind`.
    pub fn attacks_at(&self, kind: DelpAttack, attacker: usize, point: usize) -> bool {
        let q = &self.args[attacker].conclusion;
        let point = &self.args[point];
        match kind {
            DelpAttack::Rebut => self.disagreeing[q].contains(&point.conclusion),
            DelpAttack::ARebut => {
                point.conclusion == q.complement()
                    && point
                        .rules
                        .iter()
                        .any(|r| self.program.defeasible_rule(r).head() == &point.conclusion)
            }
            DelpAttack::UaRebut => point.conclusion == q.complement() && !point.rules.is_empty(),
        }
    }

    pub fn counterarguments(&self, target: usize) -> Vec<Counter> {
        let mut out = Vec::new();
        for attacker in 0..self.args.len() {
            for sub in self.attack_points(attacker, target) {
                out.push(Counter {
                    attacker,
                    target,
                    sub,
                });
            }
        }
        out
    }

    /// Kind of defeat at one disagreement sub-argument.
    pub fn defeater_kind_at(&self, attacker: usize, sub: usize) -> Option<DefeatKind> {
        if self.less(sub, attacker) {
            Some(DefeatKind::Proper)
        } else if self.less(attacker, sub) {
            None
        } else {
            Some(DefeatKind::Blocking)
        }
    }

    /// Proper if some attacked point is strictly weaker than the attacker,
    /// blocking if none is but some is incomparable.
    pub fn defeater_kind(&self, attacker: usize, target: usize) -> Option<DefeatKind> {
        let mut best = None;
        for sub in self.attack_points(attacker, target) {
            match self.defeater_kind_at(attacker, sub) {
                Some(DefeatKind::Proper) => return Some(DefeatKind::Proper),
                Some(DefeatKind::Blocking) => best = Some(DefeatKind::Blocking),
                None => {}
            }
        }
        best
    }

    /// Defeaters of `target`, ordered by rule-id set, then conclusion.
    pub fn defeaters(&self, target: usize) -> Vec<(usize, DefeatKind)> {
        let mut out: Vec<(usize, DefeatKind)> = (0..self.args.len())
            .filter_map(|a| self.defeater_kind(a, target).map(|k| (a, k)))
            .collect();
        out.sort_by_key(|&(a, _)| {
            let ids: Vec<String> = self
                .program
                .rule_ids(&self.args[a].rules)
                .iter()
                .map(|s| s.to_string())
                .collect();
            (ids, self.args[a].conclusion.clone())
        });
        out
    }

    pub fn is_concordant(&self, set: impl IntoIterator<Item = usize>) -> bool {
        let mut rules = RuleSet::new();
        for a in set {
            rules.extend(&self.args[a].rules);
        }
        self.program.is_consistent_with(&rules)
    }

    /// Whether appending `candidate` keeps `line` acceptable. The candidate
    /// must already be a defeater of the last element.
    pub fn acceptable_extension(&self, line: &Line, candidate: usize) -> bool {
        let Some(&last) = line.arguments.last() else {
            return true;
        };
        let Some(kind) = self.defeater_kind(candidate, last) else {
            return false;
        };
        let pos = line.arguments.len();
        let same_side = line.arguments.iter().copied().skip(pos % 2).step_by(2);
        if !self.is_concordant(same_side.chain([candidate])) {
            return false;
        }
        if line
            .arguments
            .iter()
            .any(|&a| self.args[candidate].is_subargument_of(&self.args[a]))
        {
            return false;
        }
        if line.kinds.last() == Some(&DefeatKind::Blocking) && kind != DefeatKind::Proper {
            return false;
        }
        true
    }

    pub fn build_tree(&self, root: usize) -> DialecticalTree {
        let mut nodes = Vec::new();
        let line = Line::new(root);
        self.grow(&line, None, &mut nodes);
        let mut tree = DialecticalTree { nodes };
        tree.mark();
        tree
    }

    fn grow(&self, line: &Line, kind: Option<DefeatKind>, nodes: &mut Vec<TreeNode>) -> usize {
        let id = nodes.len();
        let arg = *line.arguments.last().expect("non-empty line");
        nodes.push(TreeNode {
            argument: arg,
            kind,
            children: Vec::new(),
            mark: Mark::Undefeated,
        });
        for (d, k) in self.defeaters(arg) {
            if self.acceptable_extension(line, d) {
                let child = self.grow(&line.extended(d, k), Some(k), nodes);
                nodes[id].children.push(child);
            }
        }
        id
    }

    /// Every argument for `goal` with its marked tree; warranted iff some
    /// root is undefeated.
    pub fn warrant(&self, goal: &Literal) -> Warrant {
        let trees: Vec<DialecticalTree> = self
            .for_conclusion(goal)
            .iter()
            .map(|&a| self.build_tree(a))
            .collect();
        Warrant {
            warranted: trees.iter().any(|t| t.root_mark() == Mark::Undefeated),
            trees,
        }
    }

    /// Conclusions with an undefeated tree.
    pub fn warranted_literals(&self) -> BTreeSet<Literal> {
        self.by_conc
            .keys()
            .filter(|l| self.warrant(l).warranted)
            .cloned()
            .collect()
    }

    /// Arguments whose own tree root is undefeated.
    pub fn undefeated_arguments(&self) -> BTreeSet<usize> {
        (0..self.args.len())
            .filter(|&a| self.build_tree(a).root_mark() == Mark::Undefeated)
            .collect()
    }
}

/// An argumentation line with the defeat kind of each step after the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub arguments: Vec<usize>,
    pub kinds: Vec<DefeatKind>,
}

impl Line {
    pub fn new(root: usize) -> Self {
        Line {
            arguments: vec![root],
            kinds: Vec::new(),
        }
    }

    pub fn extended(&self, arg: usize, kind: DefeatKind) -> Line {
        let mut l = self.clone();
        l.arguments.push(arg);
        l.kinds.push(kind);
        l
    }

    pub fn supporting(&self) -> impl Iterator<Item = usize> + '_ {
        self.arguments.iter().copied().step_by(2)
    }

    pub fn interfering(&self) -> impl Iterator<Item = usize> + '_ {
        self.arguments.iter().copied().skip(1).step_by(2)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Mark {
    Undefeated,
    Defeated,
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mark::Undefeated => "U",
            Mark::Defeated => "D",
        })
    }
}

#[derive(Clone, Debug)]
pub struct TreeNode {
    pub argument: usize,
    /// How this node defeats its parent; `None` at the root.
    pub kind: Option<DefeatKind>,
    pub children: Vec<usize>,
    pub mark: Mark,
}

/// Nodes in pre-order; node 0 is the root.
#[derive(Clone, Debug)]
pub struct DialecticalTree {
    nodes: Vec<TreeNode>,
}

impl DialecticalTree {
    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.nodes[0].argument
    }

    pub fn root_mark(&self) -> Mark {
        self.nodes[0].mark
    }

    // Children come after parents in pre-order, so one backward pass suffices.
    fn mark(&mut self) {
        for i in (0..self.nodes.len()).rev() {
            let undefeated = self.nodes[i]
                .children
                .iter()
                .all(|&c| self.nodes[c].mark == Mark::Defeated);
            self.nodes[i].mark = if undefeated {
                Mark::Undefeated
            } else {
                Mark::Defeated
            };
        }
    }

    /// Root-to-leaf lines.
    pub fn lines(&self) -> Vec<Line> {
        let mut out = Vec::new();
        self.collect_lines(0, Line::new(self.nodes[0].argument), &mut out);
        out
    }

    fn collect_lines(&self, n: usize, line: Line, out: &mut Vec<Line>) {
        if self.nodes[n].children.is_empty() {
            out.push(line);
            return;
        }
        for &c in &self.nodes[n].children {
            let node = &self.nodes[c];
            let kind = node.kind.expect("non-root nodes have a kind");
            self.collect_lines(c, line.extended(node.argument, kind), out);
        }
    }

    pub fn to_text(&self, delp: &Delp<'_>) -> String {
        let mut out = String::new();
        self.write_text(delp, 0, 0, &mut out);
        out
    }

    fn write_text(&self, delp: &Delp<'_>, n: usize, depth: usize, out: &mut String) {
        let node = &self.nodes[n];
        let kind = node.kind.map(|k| format!(" ({k})")).unwrap_or_default();
        let _ = writeln!(
            out,
            "{}{} {}{}",
            "  ".repeat(depth),
            delp.render(node.argument),
            node.mark,
            kind
        );
        for &c in &node.children {
            self.write_text(delp, c, depth + 1, out);
        }
    }

    pub fn to_dot(&self, delp: &Delp<'_>) -> String {
        let mut out = String::from("digraph tree {\n  rankdir=BT;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(
                out,
                "  n{i} [label=\"{} {}\"];",
                escape(&delp.render(n.argument)),
                n.mark
            );
        }
        for (i, n) in self.nodes.iter().enumerate() {
            for &c in &n.children {
                let style = match self.nodes[c].kind {
                    Some(DefeatKind::Blocking) => " [style=dashed]",
                    _ => "",
                };
                let _ = writeln!(out, "  n{c} -> n{i}{style};");
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug)]
pub struct Warrant {
    pub warranted: bool,
    pub trees: Vec<DialecticalTree>,
}
