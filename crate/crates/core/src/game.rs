//! The argument game for grounded semantics.
//!
//! The proponent opens, players alternate, the proponent must strictly
//! defeat the previous move and may not repeat itself; the opponent may
//! move any defeater. Whoever cannot move loses.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};
use std::rc::Rc;

use crate::af::{escape, Framework};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    Proponent,
    Opponent,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Proponent => "P",
            Player::Opponent => "O",
        })
    }
}

/// A sequence of moves; even positions belong to the proponent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Game {
    pub moves: Vec<usize>,
}

impl Game {
    pub fn new(moves: Vec<usize>) -> Self {
        Game { moves }
    }

    pub fn to_move(&self) -> Player {
        if self.moves.len().is_multiple_of(2) {
            Player::Proponent
        } else {
            Player::Opponent
        }
    }

    pub fn proponent_moves(&self) -> impl Iterator<Item = usize> + '_ {
        self.moves.iter().copied().step_by(2)
    }
}

/// Arguments the player to move may play next.
pub fn legal_moves(f: &Framework, game: &Game) -> Vec<usize> {
    let Some(&last) = game.moves.last() else {
        return (0..f.len()).collect();
    };
    match game.to_move() {
        Player::Opponent => f.attackers_of(last).to_vec(),
        Player::Proponent => {
            let used: BTreeSet<usize> = game.proponent_moves().collect();
            f.attackers_of(last)
                .iter()
                .copied()
                .filter(|&a| f.strictly_defeats(a, last) && !used.contains(&a))
                .collect()
        }
    }
}

/// A proponent move together with a winning reply to every opponent move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strategy {
    pub argument: usize,
    pub replies: Vec<(usize, Rc<Strategy>)>,
}

impl Strategy {
    /// Every game in the tree, each ending with a proponent move.
    pub fn games(&self) -> Vec<Game> {
        let mut out = Vec::new();
        self.collect(Vec::new(), &mut out);
        out
    }

    fn collect(&self, mut prefix: Vec<usize>, out: &mut Vec<Game>) {
        prefix.push(self.argument);
        if self.replies.is_empty() {
            out.push(Game::new(prefix));
            return;
        }
        for (o, s) in &self.replies {
            let mut p = prefix.clone();
            p.push(*o);
            s.collect(p, out);
        }
    }

    pub fn to_text(&self, f: &Framework) -> String {
        let mut out = String::new();
        self.write_text(f, 0, &mut out);
        out
    }

    fn write_text(&self, f: &Framework, depth: usize, out: &mut String) {
        let _ = writeln!(
            out,
            "{}P: {}",
            "  ".repeat(2 * depth),
            f.label(self.argument)
        );
        for (o, s) in &self.replies {
            let _ = writeln!(out, "{}O: {}", "  ".repeat(2 * depth + 1), f.label(*o));
            s.write_text(f, depth + 1, out);
        }
    }

    pub fn to_dot(&self, f: &Framework) -> String {
        let mut out = String::from("digraph strategy {\n");
        let mut next = 0;
        self.write_dot(f, &mut next, &mut out);
        out.push_str("}\n");
        out
    }

    fn write_dot(&self, f: &Framework, next: &mut usize, out: &mut String) -> usize {
        let me = *next;
        *next += 1;
        let _ = writeln!(
            out,
            "  n{me} [label=\"P: {}\", shape=box];",
            escape(f.label(self.argument))
        );
        for (o, s) in &self.replies {
            let on = *next;
            *next += 1;
            let _ = writeln!(out, "  n{on} [label=\"O: {}\"];", escape(f.label(*o)));
            let _ = writeln!(out, "  n{me} -> n{on};");
            let child = s.write_dot(f, next, out);
            let _ = writeln!(out, "  n{on} -> n{child};");
        }
        me
    }
}

type Memo = HashMap<(usize, BTreeSet<usize>), Option<Rc<Strategy>>>;

/// A winning strategy for the proponent starting with `a`, if one exists.
pub fn provably_justified(f: &Framework, a: usize) -> Option<Strategy> {
    let mut memo = Memo::new();
    let history = BTreeSet::from([a]);
    win(f, a, &history, &mut memo).map(|s| (*s).clone())
}

// The proponent has just moved `last`; positions are identified by the last
// proponent move and the set of proponent moves so far.
fn win(
    f: &Framework,
    last: usize,
    history: &BTreeSet<usize>,
    memo: &mut Memo,
) -> Option<Rc<Strategy>> {
    let key = (last, history.clone());
    if let Some(r) = memo.get(&key) {
        return r.clone();
    }
    let mut replies = Vec::new();
    let mut ok = true;
    for &o in f.attackers_of(last) {
        let answer = f
            .attackers_of(o)
            .iter()
            .copied()
            .filter(|&p| f.strictly_defeats(p, o) && !history.contains(&p))
            .find_map(|p| {
                let mut h = history.clone();
                h.insert(p);
                win(f, p, &h, memo)
            });
        match answer {
            Some(s) => replies.push((o, s)),
            None => {
                ok = false;
                break;
            }
        }
    }
    let result = ok.then(|| {
        Rc::new(Strategy {
            argument: last,
            replies,
        })
    });
    memo.insert(key, result.clone());
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::af::grounded;

    #[test]
    fn unattacked_argument_wins_in_one_move() {
        let f = Framework::unlabelled(2, [(0, 1)]);
        let s = provably_justified(&f, 0).unwrap();
        assert!(s.replies.is_empty());
        assert_eq!(s.games(), vec![Game::new(vec![0])]);
        assert!(provably_justified(&f, 1).is_none());
    }

    #[test]
    fn proponent_cannot_repeat() {
        // 0 and 1 defeat each other
        let f = Framework::unlabelled(2, [(0, 1), (1, 0)]);
        assert!(legal_moves(&f, &Game::new(vec![0, 1])).is_empty());
        assert_eq!(legal_moves(&f, &Game::new(vec![0])), vec![1]);
        assert!(provably_justified(&f, 0).is_none());
    }

    #[test]
    fn reinstatement_strategy() {
        // c -> b -> a
        let f = Framework::unlabelled(3, [(1, 0), (2, 1)]);
        let s = provably_justified(&f, 0).unwrap();
        assert_eq!(s.games(), vec![Game::new(vec![0, 1, 2])]);
        assert_eq!(s.to_text(&f), "P: 0\n  O: 1\n    P: 2\n");
        assert!(s.to_dot(&f).starts_with("digraph strategy"));
    }

    #[test]
    fn weak_defeat_needs_outside_help() {
        // 0 and 1 defeat each other; 2 strictly defeats 1 but is itself beaten by 3
        let f = Framework::unlabelled(4, [(1, 0), (0, 1), (2, 1), (3, 2)]);
        assert_eq!(
            provably_justified(&f, 0).is_some(),
            grounded(&f).contains(&0)
        );
    }

    #[test]
    fn matches_grounded_on_small_frameworks() {
        // every framework over 3 arguments
        for bits in 0u32..(1 << 9) {
            let edges: Vec<(usize, usize)> = (0..9)
                .filter(|i| bits >> i & 1 == 1)
                .map(|i| (i / 3, i % 3))
                .collect();
            let f = Framework::unlabelled(3, edges);
            let g = grounded(&f);
            for a in 0..3 {
                assert_eq!(
                    provably_justified(&f, a).is_some(),
                    g.contains(&a),
                    "{bits:b} {a}"
                );
            }
        }
    }
}
