//! Seeded generators for programs and frameworks, used by the property tests
//! and the acceptance runs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::af::Framework;
use crate::aspic::construct_arguments;
use crate::correspondence::violating_arguments;
use crate::program::{Literal, OrderingMode, Program};

pub use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng as Rng8;

/// Upper bounds for generated programs.
#[derive(Clone, Debug)]
pub struct Shape {
    pub atoms: usize,
    pub facts: usize,
    pub strict: usize,
    pub defeasible: usize,
    pub body: usize,
    /// Chance that a literal is negated.
    pub negation: f64,
    /// Chance that a rule head contradicts an earlier head.
    pub conflict: f64,
    /// Number of random `#prefer` pairs between single defeasible rules.
    pub preferences: usize,
    pub ordering: OrderingMode,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            atoms: 8,
            facts: 3,
            strict: 4,
            defeasible: 6,
            body: 2,
            negation: 0.35,
            conflict: 0.4,
            preferences: 0,
            ordering: OrderingMode::Explicit,
        }
    }
}

const ATOMS: [&str; 12] = ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"];

fn literal(rng: &mut impl Rng, atoms: usize, negation: f64) -> Literal {
    let a = ATOMS[rng.gen_range(0..atoms)];
    if rng.gen_bool(negation) {
        Literal::neg(a)
    } else {
        Literal::pos(a)
    }
}

fn body(
    rng: &mut impl Rng,
    shape: &Shape,
    atoms: usize,
    min: usize,
    reachable: &[Literal],
) -> Vec<Literal> {
    let n = rng.gen_range(min..=shape.body.max(min));
    let mut b: Vec<Literal> = Vec::new();
    while b.len() < n {
        // mostly reuse literals something already concludes, so rules chain
        let l = match reachable.choose(rng) {
            Some(l) if rng.gen_bool(0.8) => l.clone(),
            _ => literal(rng, atoms, shape.negation),
        };
        if !b.contains(&l) {
            b.push(l);
        }
    }
    b
}

/// A program before it is built; rules can still be removed.
#[derive(Clone, Debug)]
pub struct Draft {
    pub facts: Vec<Literal>,
    pub strict: Vec<(Literal, Vec<Literal>)>,
    pub defeasible: Vec<(Literal, Vec<Literal>)>,
    /// `(better, worse)` positions in `defeasible`.
    pub preferences: Vec<(usize, usize)>,
    pub ordering: OrderingMode,
}

impl Draft {
    pub fn build(&self) -> Option<Program> {
        let mut b = Program::builder().ordering(self.ordering);
        for f in &self.facts {
            b = b.fact(f.clone());
        }
        for (h, body) in &self.strict {
            b = b.strict(None, h.clone(), body.clone());
        }
        for (h, body) in &self.defeasible {
            b = b.defeasible(None, h.clone(), body.clone());
        }
        for &(x, y) in &self.preferences {
            b = b.prefer(&[format!("d{}", x + 1)], &[format!("d{}", y + 1)]);
        }
        b.build().ok()
    }

    pub fn remove_defeasible(&mut self, i: usize) {
        self.defeasible.remove(i);
        self.preferences.retain(|&(x, y)| x != i && y != i);
        let shift = |k: usize| if k > i { k - 1 } else { k };
        for (x, y) in &mut self.preferences {
            *x = shift(*x);
            *y = shift(*y);
        }
    }
}

pub fn draft(rng: &mut impl Rng, shape: &Shape) -> Draft {
    let atoms = rng.gen_range(2..=shape.atoms.clamp(2, ATOMS.len()));
    let mut d = Draft {
        facts: Vec::new(),
        strict: Vec::new(),
        defeasible: Vec::new(),
        preferences: Vec::new(),
        ordering: shape.ordering,
    };
    for _ in 0..rng.gen_range(0..=shape.facts) {
        d.facts.push(literal(rng, atoms, shape.negation));
    }
    let mut reachable = d.facts.clone();
    let ns = rng.gen_range(0..=shape.strict);
    let nd = rng.gen_range(1..=shape.defeasible.max(1));
    let mut kinds: Vec<bool> = (0..ns)
        .map(|_| true)
        .chain((0..nd).map(|_| false))
        .collect();
    kinds.shuffle(rng);
    for strict in kinds {
        let (head, body) = loop {
            let body = body(rng, shape, atoms, usize::from(strict), &reachable);
            // some heads contradict something already derivable, to breed conflict
            let heads = &reachable[d.facts.len()..];
            let head = match heads.choose(rng) {
                Some(l) if rng.gen_bool(shape.conflict) => l.complement(),
                _ => literal(rng, atoms, shape.negation),
            };
            if !body.contains(&head) && !body.contains(&head.complement()) {
                break (head, body);
            }
        };
        if body.iter().all(|l| reachable.contains(l)) && !reachable.contains(&head) {
            reachable.push(head.clone());
        }
        if strict {
            d.strict.push((head, body));
        } else {
            d.defeasible.push((head, body));
        }
    }
    // preferences point from lower to higher rule numbers, so they never cycle
    let n = d.defeasible.len();
    if n >= 2 {
        for _ in 0..shape.preferences {
            let x = rng.gen_range(0..n);
            let y = rng.gen_range(0..n);
            if x != y {
                d.preferences.push((x.max(y), x.min(y)));
            }
        }
    }
    d
}

/// One attempt; `None` when the strict part came out contradictory.
pub fn try_program(rng: &mut impl Rng, shape: &Shape) -> Option<Program> {
    draft(rng, shape).build()
}

/// A program whose strict part is consistent.
pub fn program(rng: &mut impl Rng, shape: &Shape) -> Program {
    loop {
        if let Some(p) = try_program(rng, shape) {
            return p;
        }
    }
}

/// A simplified program: drafts with a contradictory strict part are
/// rejected; otherwise defeasible rules behind a non-minimal or inconsistent
/// argument are dropped (latest first) until none is left. At least one
/// defeasible rule survives.
pub fn simplified_program(rng: &mut impl Rng, shape: &Shape) -> Program {
    loop {
        let mut d = draft(rng, shape);
        while let Some(p) = d.build() {
            let Ok(args) = construct_arguments(&p) else {
                break;
            };
            let Some(&(a, smaller)) = violating_arguments(&args).first() else {
                if p.defeasible_rules().is_empty() {
                    break;
                }
                return p;
            };
            let mut culprits = args.get(a).def_rules().clone();
            if let Some(b) = smaller {
                culprits = culprits
                    .iter()
                    .filter(|&r| !args.get(b).def_rules().contains(r))
                    .collect();
            }
            match culprits.iter().last() {
                Some(r) => d.remove_defeasible(r),
                None => break,
            }
        }
    }
}

/// A framework with at most `max` arguments and edge density drawn per call.
pub fn framework(rng: &mut impl Rng, max: usize) -> Framework {
    let n = rng.gen_range(1..=max.max(1));
    let density: f64 = rng.gen_range(0.05..0.45);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if rng.gen_bool(density) {
                edges.push((a, b));
            }
        }
    }
    Framework::unlabelled(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::is_simplified;
    use crate::parse::print_program;

    #[test]
    fn same_seed_same_program() {
        let s = Shape::default();
        let a = program(&mut Rng8::seed_from_u64(7), &s);
        let b = program(&mut Rng8::seed_from_u64(7), &s);
        assert_eq!(print_program(&a), print_program(&b));
    }

    #[test]
    fn respects_bounds() {
        let s = Shape::default();
        let mut rng = Rng8::seed_from_u64(1);
        for _ in 0..50 {
            let p = program(&mut rng, &s);
            assert!(p.strict_rules().len() <= s.strict);
            assert!(p.defeasible_rules().len() <= s.defeasible);
            assert!(p
                .literals()
                .iter()
                .all(|l| ATOMS[..s.atoms].contains(&l.atom())));
        }
    }

    #[test]
    fn simplified_programs_are_simplified() {
        let mut rng = Rng8::seed_from_u64(3);
        let p = simplified_program(&mut rng, &Shape::default());
        assert!(is_simplified(&p).unwrap());
    }
}
