//! The shared logical language: literals with strong negation, strict and
//! defeasible rules, and programs built from facts, rules and declared
//! preference information.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

/// A ground atom, possibly under strong negation (`~`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    atom: Arc<str>,
    negated: bool,
}

impl Literal {
    pub fn new(atom: &str, negated: bool) -> Result<Self, ProgramError> {
        if !is_identifier(atom) {
            return Err(ProgramError::InvalidAtom(atom.to_string()));
        }
        Ok(Literal {
            atom: Arc::from(atom),
            negated,
        })
    }

    /// Positive literal; panics on a malformed atom. Meant for tests and fixtures.
    pub fn pos(atom: &str) -> Self {
        Literal::new(atom, false).expect("valid atom")
    }

    /// Negative literal; panics on a malformed atom.
    pub fn neg(atom: &str) -> Self {
        Literal::new(atom, true).expect("valid atom")
    }

    pub fn atom(&self) -> &str {
        &self.atom
    }

    pub fn is_negated(&self) -> bool {
        self.negated
    }

    pub fn complement(&self) -> Literal {
        Literal {
            atom: self.atom.clone(),
            negated: !self.negated,
        }
    }

    pub fn is_complement_of(&self, other: &Literal) -> bool {
        self.atom == other.atom && self.negated != other.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "~{}", self.atom)
        } else {
            write!(f, "{}", self.atom)
        }
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Literal {
    type Err = ProgramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s.strip_prefix('~') {
            Some(rest) => Literal::new(rest.trim_start(), true),
            None => Literal::new(s, false),
        }
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleKind {
    Strict,
    Defeasible,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    id: String,
    head: Literal,
    body: Vec<Literal>,
    kind: RuleKind,
}

impl Rule {
    pub fn new(id: impl Into<String>, kind: RuleKind, head: Literal, body: Vec<Literal>) -> Self {
        Rule {
            id: id.into(),
            head,
            body,
            kind,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn head(&self) -> &Literal {
        &self.head
    }

    pub fn body(&self) -> &[Literal] {
        &self.body
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn is_presumption(&self) -> bool {
        self.kind == RuleKind::Defeasible && self.body.is_empty()
    }

    fn body_set(&self) -> BTreeSet<Literal> {
        self.body.iter().cloned().collect()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrow = match self.kind {
            RuleKind::Strict => "<-",
            RuleKind::Defeasible => "-<",
        };
        write!(f, "[{}] {} {}", self.id, self.head, arrow)?;
        for (i, b) in self.body.iter().enumerate() {
            if i == 0 {
                write!(f, " {b}")?;
            } else {
                write!(f, ", {b}")?;
            }
        }
        write!(f, ".")
    }
}

/// A rule of a program, by kind and position.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleRef {
    Strict(usize),
    Defeasible(usize),
}

impl RuleRef {
    pub fn resolve<'p>(&self, p: &'p Program) -> &'p Rule {
        match *self {
            RuleRef::Strict(i) => &p.strict_rules()[i],
            RuleRef::Defeasible(i) => p.defeasible_rule(i),
        }
    }

    pub fn is_defeasible(&self) -> bool {
        matches!(self, RuleRef::Defeasible(_))
    }
}

/// How arguments are compared when an attack has to be resolved.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum OrderingMode {
    /// Only declared `#prefer` pairs (and their transitive closure).
    #[default]
    Explicit,
    /// Defeasible arguments are strictly weaker than strict ones; nothing else.
    Simple,
    /// Last defeasible rules compared on their weakest elements.
    LastLink,
}

impl OrderingMode {
    pub fn keyword(&self) -> &'static str {
        match self {
            OrderingMode::Explicit => "explicit",
            OrderingMode::Simple => "simple",
            OrderingMode::LastLink => "lastlink",
        }
    }
}

impl FromStr for OrderingMode {
    type Err = ProgramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "explicit" => Ok(OrderingMode::Explicit),
            "simple" => Ok(OrderingMode::Simple),
            "lastlink" => Ok(OrderingMode::LastLink),
            other => Err(ProgramError::UnknownOrdering(other.to_string())),
        }
    }
}

/// Indices into [`Program::defeasible_rules`]. Arguments of both engines are
/// compared and identified through these sets.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleSet(BTreeSet<usize>);

impl RuleSet {
    pub fn new() -> Self {
        RuleSet(BTreeSet::new())
    }

    pub fn singleton(idx: usize) -> Self {
        RuleSet(BTreeSet::from([idx]))
    }

    pub fn insert(&mut self, idx: usize) -> bool {
        self.0.insert(idx)
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.0.contains(&idx)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &RuleSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_proper_subset(&self, other: &RuleSet) -> bool {
        self.0.len() < other.0.len() && self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &RuleSet) -> RuleSet {
        RuleSet(self.0.union(&other.0).copied().collect())
    }

    pub fn extend(&mut self, other: &RuleSet) {
        self.0.extend(other.0.iter().copied());
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<usize> for RuleSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        RuleSet(iter.into_iter().collect())
    }
}

impl fmt::Debug for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// `#prefer {better} > {worse}`: arguments whose defeasible rules are exactly
/// `worse` are strictly weaker than those whose defeasible rules are `better`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Preference {
    pub better: BTreeSet<String>,
    pub worse: BTreeSet<String>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProgramError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("contradictory strict part: both {0} and {1} follow from the facts and strict rules")]
    Contradictory(Literal, Literal),
    #[error("duplicate rule label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("`{0}` names a strict rule; preferences are declared over defeasible rules")]
    NotDefeasible(String),
    #[error("invalid atom `{0}`")]
    InvalidAtom(String),
    #[error("unknown ordering `{0}` (expected explicit, simple or lastlink)")]
    UnknownOrdering(String),
    #[error("strict rule `{0}` has an empty body; state facts as facts")]
    EmptyStrictBody(String),
    #[error("declared preferences are cyclic around {{{0}}}")]
    CyclicPreference(String),
}

/// A ground defeasible logic program / ASPIC+ argumentation theory.
///
/// Values are immutable once built; construction goes through
/// [`ProgramBuilder`], which checks that the strict part is non-contradictory.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    facts: BTreeSet<Literal>,
    strict: Vec<Rule>,
    defeasible: Vec<Rule>,
    priorities: BTreeMap<String, i64>,
    preferences: Vec<Preference>,
    ordering: OrderingMode,
    // (worse, better) pairs over defeasible-rule sets, transitively closed
    explicit_order: BTreeSet<(RuleSet, RuleSet)>,
}

impl Program {
    pub fn builder() -> ProgramBuilder {
        ProgramBuilder::default()
    }

    pub fn facts(&self) -> &BTreeSet<Literal> {
        &self.facts
    }

    pub fn strict_rules(&self) -> &[Rule] {
        &self.strict
    }

    pub fn defeasible_rules(&self) -> &[Rule] {
        &self.defeasible
    }

    pub fn defeasible_rule(&self, idx: usize) -> &Rule {
        &self.defeasible[idx]
    }

    pub fn priorities(&self) -> &BTreeMap<String, i64> {
        &self.priorities
    }

    pub fn preferences(&self) -> &[Preference] {
        &self.preferences
    }

    pub fn ordering(&self) -> OrderingMode {
        self.ordering
    }

    /// Same program under a different ordering mode.
    pub fn with_ordering(&self, ordering: OrderingMode) -> Program {
        Program {
            ordering,
            ..self.clone()
        }
    }

    /// `worse` is strictly below `better` by a declared (transitively closed) preference.
    pub fn declared_below(&self, worse: &RuleSet, better: &RuleSet) -> bool {
        self.explicit_order
            .contains(&(worse.clone(), better.clone()))
    }

    pub fn defeasible_index(&self, id: &str) -> Option<usize> {
        self.defeasible.iter().position(|r| r.id == id)
    }

    /// Rule ids of a set, in index order.
    pub fn rule_ids(&self, set: &RuleSet) -> Vec<&str> {
        set.iter().map(|i| self.defeasible[i].id.as_str()).collect()
    }

    /// `{id1, id2}` rendering of a rule set, ids sorted lexicographically.
    pub fn format_rule_set(&self, set: &RuleSet) -> String {
        let mut ids = self.rule_ids(set);
        ids.sort_unstable();
        format!("{{{}}}", ids.join(", "))
    }

    /// Every literal occurring as a fact, rule head or rule body literal.
    pub fn literals(&self) -> BTreeSet<Literal> {
        let mut out = self.facts.clone();
        for r in self.strict.iter().chain(&self.defeasible) {
            out.insert(r.head.clone());
            out.extend(r.body.iter().cloned());
        }
        out
    }

    pub fn strict_closure_of(&self, s: &BTreeSet<Literal>) -> BTreeSet<Literal> {
        strict_closure(s, &self.strict)
    }

    /// Closure of the facts under the strict rules and the chosen defeasible rules.
    pub fn closure_with(&self, rules: &RuleSet) -> BTreeSet<Literal> {
        let selected: Vec<&Rule> = rules.iter().map(|i| &self.defeasible[i]).collect();
        forward_closure(
            self.facts.iter().cloned(),
            self.strict.iter().chain(selected.iter().copied()),
        )
    }

    /// The defeasible rules in `rules` together with facts and strict rules
    /// derive no complementary pair.
    pub fn is_consistent_with(&self, rules: &RuleSet) -> bool {
        first_conflict(&self.closure_with(rules)).is_none()
    }

    /// Two literals disagree iff the facts, the strict rules and both literals
    /// together strictly derive a complementary pair.
    pub fn disagree(&self, l1: &Literal, l2: &Literal) -> bool {
        let mut s = self.facts.clone();
        s.insert(l1.clone());
        s.insert(l2.clone());
        !is_indirectly_consistent(&s, &self.strict)
    }
}

/// Incremental construction of a [`Program`].
#[derive(Debug, Default)]
pub struct ProgramBuilder {
    facts: BTreeSet<Literal>,
    rules: Vec<(Option<String>, RuleKind, Literal, Vec<Literal>)>,
    priorities: Vec<(String, i64)>,
    preferences: Vec<Preference>,
    ordering: OrderingMode,
}

impl ProgramBuilder {
    pub fn fact(mut self, lit: Literal) -> Self {
        self.facts.insert(lit);
        self
    }

    pub fn strict(mut self, label: Option<&str>, head: Literal, body: Vec<Literal>) -> Self {
        self.rules
            .push((label.map(str::to_string), RuleKind::Strict, head, body));
        self
    }

    pub fn defeasible(mut self, label: Option<&str>, head: Literal, body: Vec<Literal>) -> Self {
        self.rules
            .push((label.map(str::to_string), RuleKind::Defeasible, head, body));
        self
    }

    pub fn priority(mut self, rule: &str, rank: i64) -> Self {
        self.priorities.push((rule.to_string(), rank));
        self
    }

    pub fn prefer<S: AsRef<str>>(mut self, better: &[S], worse: &[S]) -> Self {
        self.preferences.push(Preference {
            better: better.iter().map(|s| s.as_ref().to_string()).collect(),
            worse: worse.iter().map(|s| s.as_ref().to_string()).collect(),
        });
        self
    }

    pub fn ordering(mut self, mode: OrderingMode) -> Self {
        self.ordering = mode;
        self
    }

    pub(crate) fn push_rule(
        &mut self,
        label: Option<String>,
        kind: RuleKind,
        head: Literal,
        body: Vec<Literal>,
    ) {
        self.rules.push((label, kind, head, body));
    }

    pub(crate) fn push_fact(&mut self, lit: Literal) {
        self.facts.insert(lit);
    }

    pub(crate) fn push_priority(&mut self, rule: String, rank: i64) {
        self.priorities.push((rule, rank));
    }

    pub(crate) fn push_preference(&mut self, pref: Preference) {
        self.preferences.push(pref);
    }

    pub(crate) fn set_ordering(&mut self, mode: OrderingMode) {
        self.ordering = mode;
    }

    pub fn build(self) -> Result<Program, ProgramError> {
        let mut strict = Vec::new();
        let mut defeasible = Vec::new();
        let mut seen = HashSet::new();
        for (label, kind, head, body) in self.rules {
            let id = match (label, kind) {
                (Some(l), _) => l,
                (None, RuleKind::Strict) => format!("s{}", strict.len() + 1),
                (None, RuleKind::Defeasible) => format!("d{}", defeasible.len() + 1),
            };
            if !is_identifier(&id) {
                return Err(ProgramError::InvalidAtom(id));
            }
            if !seen.insert(id.clone()) {
                return Err(ProgramError::DuplicateLabel(id));
            }
            if kind == RuleKind::Strict && body.is_empty() {
                return Err(ProgramError::EmptyStrictBody(id));
            }
            let rule = Rule::new(id, kind, head, body);
            match kind {
                RuleKind::Strict => strict.push(rule),
                RuleKind::Defeasible => defeasible.push(rule),
            }
        }

        let closure = strict_closure(&self.facts, &strict);
        if let Some((a, b)) = first_conflict(&closure) {
            return Err(ProgramError::Contradictory(a, b));
        }

        let mut priorities = BTreeMap::new();
        for (rule, rank) in self.priorities {
            if !seen.contains(&rule) {
                return Err(ProgramError::UnknownRule(rule));
            }
            priorities.insert(rule, rank);
        }

        let index: HashMap<&str, usize> = defeasible
            .iter()
            .enumerate()
            .map(|(i, r)| (r.id.as_str(), i))
            .collect();
        let resolve = |ids: &BTreeSet<String>| -> Result<RuleSet, ProgramError> {
            ids.iter()
                .map(|id| match index.get(id.as_str()) {
                    Some(&i) => Ok(i),
                    None if seen.contains(id) => Err(ProgramError::NotDefeasible(id.clone())),
                    None => Err(ProgramError::UnknownRule(id.clone())),
                })
                .collect()
        };
        let mut pairs = BTreeSet::new();
        for pref in &self.preferences {
            pairs.insert((resolve(&pref.worse)?, resolve(&pref.better)?));
        }
        let explicit_order = transitive_closure(pairs);
        if let Some((a, _)) = explicit_order.iter().find(|(a, b)| a == b) {
            let ids: Vec<&str> = a.iter().map(|i| defeasible[i].id.as_str()).collect();
            return Err(ProgramError::CyclicPreference(ids.join(", ")));
        }

        Ok(Program {
            facts: self.facts,
            strict,
            defeasible,
            priorities,
            preferences: self.preferences,
            ordering: self.ordering,
            explicit_order,
        })
    }
}

fn transitive_closure(mut pairs: BTreeSet<(RuleSet, RuleSet)>) -> BTreeSet<(RuleSet, RuleSet)> {
    loop {
        let mut added = Vec::new();
        for (a, b) in &pairs {
            for (c, d) in &pairs {
                if b == c && !pairs.contains(&(a.clone(), d.clone())) {
                    added.push((a.clone(), d.clone()));
                }
            }
        }
        if added.is_empty() {
            return pairs;
        }
        pairs.extend(added);
    }
}

/// Forward chaining to a fixpoint.
pub(crate) fn forward_closure<'a>(
    start: impl IntoIterator<Item = Literal>,
    rules: impl Iterator<Item = &'a Rule>,
) -> BTreeSet<Literal> {
    let rules: Vec<&Rule> = rules.collect();
    let mut known: HashSet<Literal> = start.into_iter().collect();
    let mut fired = vec![false; rules.len()];
    loop {
        let mut changed = false;
        for (i, r) in rules.iter().enumerate() {
            if !fired[i] && r.body.iter().all(|b| known.contains(b)) {
                fired[i] = true;
                changed |= known.insert(r.head.clone());
            }
        }
        if !changed {
            return known.into_iter().collect();
        }
    }
}

/// Smallest superset of `s` closed under the strict rules `rs`.
pub fn strict_closure(s: &BTreeSet<Literal>, rs: &[Rule]) -> BTreeSet<Literal> {
    forward_closure(s.iter().cloned(), rs.iter())
}

/// First complementary pair in `s`, positive literal first.
pub fn first_conflict(s: &BTreeSet<Literal>) -> Option<(Literal, Literal)> {
    s.iter()
        .filter(|l| !l.is_negated())
        .find(|l| s.contains(&l.complement()))
        .map(|l| (l.clone(), l.complement()))
}

pub fn is_directly_consistent(s: &BTreeSet<Literal>) -> bool {
    first_conflict(s).is_none()
}

pub fn is_indirectly_consistent(s: &BTreeSet<Literal>, rs: &[Rule]) -> bool {
    is_directly_consistent(&strict_closure(s, rs))
}

/// Smallest superset of `rs` closed under transposition: for every rule
/// `S -> h` and `s` in `S`, the rule `(S \ {s}) ∪ {-h} -> -s` is present.
/// Rules are identified by head and body set; added rules get ids derived
/// from the rule they were transposed from.
pub fn transpose(rs: &[Rule]) -> Vec<Rule> {
    let mut out: Vec<Rule> = rs.to_vec();
    let mut keys: HashSet<(Literal, BTreeSet<Literal>)> =
        out.iter().map(|r| (r.head.clone(), r.body_set())).collect();
    let mut ids: HashSet<String> = out.iter().map(|r| r.id.clone()).collect();
    let mut frontier = 0;
    while frontier < out.len() {
        let end = out.len();
        for i in frontier..end {
            let rule = out[i].clone();
            for (k, s) in rule.body.iter().enumerate() {
                let mut body: Vec<Literal> = rule
                    .body
                    .iter()
                    .enumerate()
                    .filter(|(j, b)| *j != k && *b != s)
                    .map(|(_, b)| b.clone())
                    .collect();
                body.insert(k.min(body.len()), rule.head.complement());
                let head = s.complement();
                let key = (head.clone(), body.iter().cloned().collect());
                if keys.insert(key) {
                    let mut id = format!("{}_t{}", rule.id, k + 1);
                    while !ids.insert(id.clone()) {
                        id.push('x');
                    }
                    out.push(Rule::new(id, RuleKind::Strict, head, body));
                }
            }
        }
        frontier = end;
    }
    out
}

pub fn is_closed_under_transposition(rs: &[Rule]) -> bool {
    transpose(rs).len() == rs.len()
}
