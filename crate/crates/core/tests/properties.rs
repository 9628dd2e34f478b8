mod common;

use argeo::af::{self, Semantics};
use argeo::aspic::{construct_arguments, AttackKind, Saf};
use argeo::delp::{derive, Delp};
use argeo::delp_gr::delp_framework;
use argeo::game::provably_justified;
use argeo::parse::{parse_program, print_program};
use argeo::program::RuleSet;
use argeo::random::{self, Rng8, SeedableRng, Shape};
use proptest::prelude::*;

fn rng(seed: u64) -> Rng8 {
    Rng8::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn grounded_is_the_least_complete_extension(seed in any::<u64>()) {
        let f = random::framework(&mut rng(seed), 10);
        let g = af::grounded(&f);
        prop_assert!(af::is_complete(&f, &g));
        for e in af::extensions(&f, Semantics::Complete).unwrap() {
            prop_assert!(g.is_subset(&e));
        }
        let preferred = af::extensions(&f, Semantics::Preferred).unwrap();
        for s in af::extensions(&f, Semantics::Stable).unwrap() {
            prop_assert!(preferred.contains(&s));
        }
    }

    #[test]
    fn games_decide_grounded_membership(seed in any::<u64>()) {
        let f = random::framework(&mut rng(seed), 8);
        let g = af::grounded(&f);
        for a in 0..f.len() {
            prop_assert_eq!(provably_justified(&f, a).is_some(), g.contains(&a));
        }
    }

    #[test]
    fn grounded_aspic_extensions_are_sub_closed(seed in any::<u64>()) {
        let p = random::program(&mut rng(seed), &Shape::default());
        for kind in AttackKind::ALL {
            let saf = Saf::new(construct_arguments(&p).unwrap(), kind).unwrap();
            let g = af::grounded(&saf.framework());
            for &a in &g {
                prop_assert!(saf.arguments().get(a).sub().is_subset(&g));
            }
        }
    }

    #[test]
    fn delp_arguments_are_minimal_derivations(seed in any::<u64>()) {
        let p = random::program(&mut rng(seed), &Shape::default());
        let delp = Delp::new(&p).unwrap();
        for a in delp.arguments() {
            prop_assert!(a.witness().is_valid(&p));
            prop_assert_eq!(&a.witness().defeasible_rules(), a.rules());
            prop_assert_eq!(a.witness().conclusion(), a.conclusion());
            prop_assert!(p.is_consistent_with(a.rules()));
            for r in a.rules().iter() {
                let fewer: RuleSet = a.rules().iter().filter(|&i| i != r).collect();
                prop_assert!(derive(&p, &fewer, a.conclusion()).is_none());
            }
        }
    }

    #[test]
    fn delp_arguments_match_the_oracle(seed in any::<u64>()) {
        let p = random::program(&mut rng(seed), &Shape { defeasible: 8, ..Shape::default() });
        let got: std::collections::BTreeSet<_> = Delp::new(&p)
            .unwrap()
            .arguments()
            .iter()
            .map(|a| (a.rules().iter().collect(), a.conclusion().clone()))
            .collect();
        prop_assert_eq!(got, common::delp_arguments(&p));
    }

    /// Attacking a point of an argument attacks everything built on it.
    #[test]
    fn attack_is_monotone_in_points(seed in any::<u64>()) {
        let p = random::simplified_program(&mut rng(seed), &Shape::default());
        let delp = Delp::new(&p).unwrap();
        for e in 0..delp.len() {
            for &d in delp.points(e) {
                prop_assert!(delp.points(d).iter().all(|x| delp.points(e).contains(x)));
                for x in 0..delp.len() {
                    if !delp.attack_points(x, d).is_empty() {
                        prop_assert!(!delp.attack_points(x, e).is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn points_are_subsets(seed in any::<u64>()) {
        let p = random::program(&mut rng(seed), &Shape::default());
        let delp = Delp::new(&p).unwrap();
        for a in 0..delp.len() {
            prop_assert!(delp.points(a).contains(&a));
            for &s in delp.points(a) {
                prop_assert!(delp.subarguments(a).contains(&s));
            }
        }
    }

    #[test]
    fn marked_trees_agree_with_their_lines(seed in any::<u64>()) {
        let p = random::program(&mut rng(seed), &Shape { preferences: 3, ..Shape::default() });
        let delp = Delp::new(&p).unwrap();
        for a in 0..delp.len() {
            let t = delp.build_tree(a);
            for line in t.lines() {
                for (i, &x) in line.arguments.iter().enumerate().skip(1) {
                    prop_assert!(delp.defeater_kind(x, line.arguments[i - 1]).is_some());
                }
            }
        }
    }

    #[test]
    fn delp_gr_framework_has_defeats_only(seed in any::<u64>()) {
        let p = random::program(&mut rng(seed), &Shape::default());
        let delp = Delp::new(&p).unwrap();
        let f = delp_framework(&delp);
        for &(x, y) in f.defeat_pairs() {
            prop_assert!(delp.defeater_kind(x, y).is_some());
        }
    }

    #[test]
    fn printing_round_trips(seed in any::<u64>()) {
        let p = random::program(&mut rng(seed), &Shape { preferences: 2, ..Shape::default() });
        let text = print_program(&p);
        let q = parse_program(&text).unwrap();
        prop_assert_eq!(print_program(&q), text);
    }
}
