//! Slow, obviously-correct reference implementations. They share nothing
//! with the engines beyond the program and framework accessors.
#![allow(dead_code)]

use std::collections::BTreeSet;

use argeo::af::{Extension, Framework, Semantics};
use argeo::program::{Literal, Program, Rule};

pub fn closure<'a>(
    start: impl IntoIterator<Item = Literal>,
    rules: impl IntoIterator<Item = &'a Rule> + Clone,
) -> BTreeSet<Literal> {
    let mut s: BTreeSet<Literal> = start.into_iter().collect();
    loop {
        let before = s.len();
        for r in rules.clone() {
            if r.body().iter().all(|b| s.contains(b)) {
                s.insert(r.head().clone());
            }
        }
        if s.len() == before {
            return s;
        }
    }
}

fn contradictory(s: &BTreeSet<Literal>) -> bool {
    s.iter().any(|l| s.contains(&l.complement()))
}

fn derived_by(p: &Program, chosen: &[usize]) -> BTreeSet<Literal> {
    let rules: Vec<&Rule> = p
        .strict_rules()
        .iter()
        .chain(chosen.iter().map(|&i| &p.defeasible_rules()[i]))
        .collect();
    closure(p.facts().iter().cloned(), rules.iter().copied())
}

/// Every `(rules, conclusion)` with the rules a minimal subset of the
/// defeasible rules deriving the conclusion, consistent with the facts and
/// strict rules. Exponential in the number of defeasible rules.
pub fn delp_arguments(p: &Program) -> BTreeSet<(Vec<usize>, Literal)> {
    let n = p.defeasible_rules().len();
    assert!(n <= 16, "oracle is exponential");
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let chosen: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let all = derived_by(p, &chosen);
        if contradictory(&all) {
            continue;
        }
        for l in &all {
            let minimal = chosen.iter().all(|&drop| {
                let fewer: Vec<usize> = chosen.iter().copied().filter(|&i| i != drop).collect();
                !derived_by(p, &fewer).contains(l)
            });
            if minimal {
                out.insert((chosen.clone(), l.clone()));
            }
        }
    }
    out
}

fn conflict_free(f: &Framework, s: &Extension) -> bool {
    s.iter().all(|&a| s.iter().all(|&b| !f.defeats(a, b)))
}

fn acceptable(f: &Framework, s: &Extension, a: usize) -> bool {
    (0..f.len())
        .filter(|&b| f.defeats(b, a))
        .all(|b| s.iter().any(|&c| f.defeats(c, b)))
}

fn admissible(f: &Framework, s: &Extension) -> bool {
    conflict_free(f, s) && s.iter().all(|&a| acceptable(f, s, a))
}

fn complete(f: &Framework, s: &Extension) -> bool {
    admissible(f, s) && (0..f.len()).all(|a| !acceptable(f, s, a) || s.contains(&a))
}

fn stable(f: &Framework, s: &Extension) -> bool {
    conflict_free(f, s)
        && (0..f.len()).all(|a| s.contains(&a) || s.iter().any(|&b| f.defeats(b, a)))
}

pub fn subsets(n: usize) -> impl Iterator<Item = Extension> {
    (0u32..(1 << n)).map(move |m| (0..n).filter(|i| m & (1 << i) != 0).collect())
}

/// Extensions straight from the definitions, by checking every subset.
pub fn extensions(f: &Framework, semantics: Semantics) -> BTreeSet<Extension> {
    assert!(f.len() <= 16, "oracle is exponential");
    let all = || subsets(f.len());
    match semantics {
        Semantics::Complete => all().filter(|s| complete(f, s)).collect(),
        Semantics::Stable => all().filter(|s| stable(f, s)).collect(),
        Semantics::Preferred => {
            let adm: Vec<Extension> = all().filter(|s| admissible(f, s)).collect();
            adm.iter()
                .filter(|s| !adm.iter().any(|t| t.len() > s.len() && s.is_subset(t)))
                .cloned()
                .collect()
        }
        Semantics::Grounded => {
            // the complete extension contained in all others
            let comp: Vec<Extension> = all().filter(|s| complete(f, s)).collect();
            comp.iter()
                .filter(|s| comp.iter().all(|t| s.is_subset(t)))
                .cloned()
                .collect()
        }
    }
}
