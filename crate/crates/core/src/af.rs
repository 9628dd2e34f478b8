//! Abstract argumentation frameworks and their extension semantics.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::EngineError;

/// Default cap on the number of arguments for extension enumeration.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 24;

/// A set of argument indices.
pub type Extension = BTreeSet<usize>;

/// Arguments are opaque labelled handles `0..len()`; the relation is defeat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Framework {
    labels: Vec<String>,
    defeats: BTreeSet<(usize, usize)>,
    attackers: Vec<Vec<usize>>,
    targets: Vec<Vec<usize>>,
}

impl Framework {
    pub fn new(
        labels: Vec<String>,
        defeats: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, EngineError> {
        let n = labels.len();
        let defeats: BTreeSet<(usize, usize)> = defeats.into_iter().collect();
        let mut attackers = vec![Vec::new(); n];
        let mut targets = vec![Vec::new(); n];
        for &(a, b) in &defeats {
            if a >= n || b >= n {
                return Err(EngineError::UnknownArgument(format!("#{}", a.max(b))));
            }
            attackers[b].push(a);
            targets[a].push(b);
        }
        Ok(Framework {
            labels,
            defeats,
            attackers,
            targets,
        })
    }

    /// Framework with arguments labelled `0`, `1`, ...
    pub fn unlabelled(n: usize, defeats: impl IntoIterator<Item = (usize, usize)>) -> Self {
        Framework::new((0..n).map(|i| i.to_string()).collect(), defeats).expect("edges in range")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn defeat_pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.defeats
    }

    pub fn defeats(&self, a: usize, b: usize) -> bool {
        self.defeats.contains(&(a, b))
    }

    /// `a` defeats `b` and `b` does not defeat `a`.
    pub fn strictly_defeats(&self, a: usize, b: usize) -> bool {
        self.defeats(a, b) && !self.defeats(b, a)
    }

    pub fn attackers_of(&self, a: usize) -> &[usize] {
        &self.attackers[a]
    }

    pub fn targets_of(&self, a: usize) -> &[usize] {
        &self.targets[a]
    }

    pub fn format_set(&self, s: &Extension) -> String {
        let names: Vec<&str> = s.iter().map(|&a| self.label(a)).collect();
        format!("{{{}}}", names.join(", "))
    }

    /// `arg <id>` / `att <id> <id>` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for l in &self.labels {
            let _ = writeln!(out, "arg {l}");
        }
        for &(a, b) in &self.defeats {
            let _ = writeln!(out, "att {} {}", self.labels[a], self.labels[b]);
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph framework {\n  rankdir=BT;\n");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(l));
        }
        for &(a, b) in &self.defeats {
            let style = if self.defeats(b, a) {
                " [dir=both]"
            } else {
                ""
            };
            if self.defeats(b, a) && b < a {
                continue;
            }
            let _ = writeln!(out, "  n{a} -> n{b}{style};");
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\")
        .replace('"', "\\\"")
        .replace('\n', "\\n")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameworkParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FrameworkParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for FrameworkParseError {}

impl FromStr for Framework {
    type Err = FrameworkParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut labels = Vec::new();
        let mut index = HashMap::new();
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('%').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| FrameworkParseError {
                line: i + 1,
                message,
            };
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                ["arg", id] => {
                    if index.insert(id.to_string(), labels.len()).is_some() {
                        return Err(err(format!("duplicate argument `{id}`")));
                    }
                    labels.push(id.to_string());
                }
                ["att", a, b] => edges.push((i + 1, a.to_string(), b.to_string())),
                _ => {
                    return Err(err(format!(
                        "expected `arg <id>` or `att <id> <id>`, found `{line}`"
                    )))
                }
            }
        }
        let mut defeats = Vec::new();
        for (line, a, b) in edges {
            let look = |x: &str| {
                index.get(x).copied().ok_or_else(|| FrameworkParseError {
                    line,
                    message: format!("unknown argument `{x}`"),
                })
            };
            defeats.push((look(&a)?, look(&b)?));
        }
        Ok(Framework::new(labels, defeats).expect("indices resolved above"))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Semantics {
    Grounded,
    Complete,
    Preferred,
    Stable,
}

impl FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "grounded" => Ok(Semantics::Grounded),
            "complete" => Ok(Semantics::Complete),
            "preferred" => Ok(Semantics::Preferred),
            "stable" => Ok(Semantics::Stable),
            _ => Err(format!("unknown semantics `{s}`")),
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::Grounded => "grounded",
            Semantics::Complete => "complete",
            Semantics::Preferred => "preferred",
            Semantics::Stable => "stable",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Sceptical,
    Credulous,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sceptical" | "skeptical" => Ok(Mode::Sceptical),
            "credulous" => Ok(Mode::Credulous),
            _ => Err(format!("unknown mode `{s}`")),
        }
    }
}

pub fn is_conflict_free(f: &Framework, s: &Extension) -> bool {
    s.iter()
        .all(|&a| f.targets_of(a).iter().all(|b| !s.contains(b)))
}

/// Every attacker of `a` is defeated by some member of `s`.
pub fn defends(f: &Framework, s: &Extension, a: usize) -> bool {
    f.attackers_of(a)
        .iter()
        .all(|&b| f.attackers_of(b).iter().any(|c| s.contains(c)))
}

pub fn is_admissible(f: &Framework, s: &Extension) -> bool {
    is_conflict_free(f, s) && s.iter().all(|&a| defends(f, s, a))
}

pub fn is_complete(f: &Framework, s: &Extension) -> bool {
    is_admissible(f, s) && (0..f.len()).all(|a| s.contains(&a) == defends(f, s, a))
}

pub fn is_stable(f: &Framework, s: &Extension) -> bool {
    is_conflict_free(f, s)
        && (0..f.len())
            .filter(|a| !s.contains(a))
            .all(|a| f.attackers_of(a).iter().any(|b| s.contains(b)))
}

/// Least fixpoint of the characteristic function, iterated from the empty set.
pub fn grounded(f: &Framework) -> Extension {
    let mut s = Extension::new();
    loop {
        let next: Extension = (0..f.len()).filter(|&a| defends(f, &s, a)).collect();
        if next == s {
            return s;
        }
        s = next;
    }
}

pub fn extensions(f: &Framework, semantics: Semantics) -> Result<Vec<Extension>, EngineError> {
    extensions_with_limit(f, semantics, DEFAULT_ENUMERATION_LIMIT)
}

/// Exact enumeration. Grounded is computed directly; the other semantics
/// search conflict-free sets and refuse frameworks larger than `limit`.
pub fn extensions_with_limit(
    f: &Framework,
    semantics: Semantics,
    limit: usize,
) -> Result<Vec<Extension>, EngineError> {
    if semantics == Semantics::Grounded {
        return Ok(vec![grounded(f)]);
    }
    let limit = limit.min(63);
    if f.len() > limit {
        return Err(EngineError::FrameworkTooLarge {
            size: f.len(),
            limit,
        });
    }
    let masks = Masks::new(f);
    let mut found = Vec::new();
    masks.search(0, 0, &mut |s| {
        let keep = match semantics {
            Semantics::Stable => masks.stable(s),
            Semantics::Complete => masks.admissible(s) && masks.complete(s),
            Semantics::Preferred => masks.admissible(s),
            Semantics::Grounded => unreachable!(),
        };
        if keep {
            found.push(s);
        }
    });
    if semantics == Semantics::Preferred {
        let all = found.clone();
        found.retain(|&s| !all.iter().any(|&t| t != s && t & s == s));
    }
    let mut out: Vec<Extension> = found.into_iter().map(|m| masks.to_set(m)).collect();
    out.sort();
    Ok(out)
}

struct Masks {
    n: usize,
    attackers: Vec<u64>,
    targets: Vec<u64>,
}

impl Masks {
    fn new(f: &Framework) -> Self {
        let n = f.len();
        let mut attackers = vec![0u64; n];
        let mut targets = vec![0u64; n];
        for &(a, b) in f.defeat_pairs() {
            attackers[b] |= 1 << a;
            targets[a] |= 1 << b;
        }
        Masks {
            n,
            attackers,
            targets,
        }
    }

    fn to_set(&self, m: u64) -> Extension {
        (0..self.n).filter(|i| m >> i & 1 == 1).collect()
    }

    fn defeated_by(&self, s: u64) -> u64 {
        (0..self.n)
            .filter(|i| s >> i & 1 == 1)
            .fold(0, |acc, i| acc | self.targets[i])
    }

    fn admissible(&self, s: u64) -> bool {
        let out = self.defeated_by(s);
        (0..self.n)
            .filter(|i| s >> i & 1 == 1)
            .all(|i| self.attackers[i] & !out == 0)
    }

    fn complete(&self, s: u64) -> bool {
        let out = self.defeated_by(s);
        (0..self.n)
            .filter(|i| s >> i & 1 == 0)
            .all(|i| self.attackers[i] & !out != 0)
    }

    fn stable(&self, s: u64) -> bool {
        let full = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        self.defeated_by(s) | s == full
    }

    // Depth-first over conflict-free sets.
    fn search(&self, i: usize, s: u64, visit: &mut impl FnMut(u64)) {
        if i == self.n {
            visit(s);
            return;
        }
        self.search(i + 1, s, visit);
        let bit = 1u64 << i;
        if self.targets[i] & (s | bit) == 0 && self.attackers[i] & s == 0 {
            self.search(i + 1, s | bit, visit);
        }
    }
}

/// Membership of `a` in all (sceptical) or some (credulous) extensions.
pub fn justified(
    f: &Framework,
    a: usize,
    semantics: Semantics,
    mode: Mode,
) -> Result<bool, EngineError> {
    let exts = extensions(f, semantics)?;
    Ok(match mode {
        Mode::Sceptical => exts.iter().all(|e| e.contains(&a)),
        Mode::Credulous => exts.iter().any(|e| e.contains(&a)),
    })
}
