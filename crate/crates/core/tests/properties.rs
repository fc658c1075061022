//! Algebraic invariants on random games with small integer worths.

use num_traits::Zero;
use proptest::prelude::*;

use synergy_core::group_values::{self, full_table_with, worth_form, GroupEvaluator};
use synergy_core::rational::int;
use synergy_core::{player_values, transforms, Coalition, Execution, Game, GroupValue, Rational, SemivalueWeights};

fn game_strategy(max_n: usize) -> impl Strategy<Value = Game> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-20i64..=20, (1 << n) - 1).prop_map(move |ws| {
            Game::from_fn(n, |c| if c.is_empty() { Rational::zero() } else { int(ws[c.index() - 1]) }).unwrap()
        })
    })
}

fn nonempty(g: &Game) -> impl Iterator<Item = Coalition> {
    (1..1u64 << g.n()).map(Coalition)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dividends_round_trip(g in game_strategy(7)) {
        let d = transforms::dividends(&g);
        prop_assert_eq!(transforms::game_from_dividends(&d), g.clone());
        let total: Rational = d.values().iter().sum();
        prop_assert_eq!(&total, g.worth(g.grand()));
    }

    #[test]
    fn dividend_and_worth_forms_agree(g in game_strategy(5)) {
        let ev = GroupEvaluator::new(&g);
        for s in nonempty(&g) {
            prop_assert_eq!(ev.union_shapley(s).unwrap(), worth_form::union_shapley(&g, s).unwrap());
            prop_assert_eq!(ev.intersection_shapley(s).unwrap(), worth_form::intersection_shapley(&g, s).unwrap());
            prop_assert_eq!(ev.merge_shapley(s).unwrap(), worth_form::merge_shapley(&g, s).unwrap());
            prop_assert_eq!(ev.interaction_index(s).unwrap(), worth_form::interaction_index(&g, s).unwrap());
            prop_assert_eq!(ev.sum_of_shapley(s).unwrap(), worth_form::sum_of_shapley(&g, s).unwrap());
            prop_assert_eq!(ev.dividend(s).unwrap(), worth_form::dividend(&g, s).unwrap());
        }
    }

    #[test]
    fn merge_shapley_is_shapley_of_merged_player(g in game_strategy(5)) {
        for s in nonempty(&g) {
            prop_assert_eq!(
                group_values::merge_shapley_via_merged_game(&g, s).unwrap(),
                group_values::merge_shapley(&g, s).unwrap()
            );
        }
    }

    #[test]
    fn union_is_inclusion_exclusion_of_intersection(g in game_strategy(6)) {
        let ev = GroupEvaluator::new(&g);
        for s in nonempty(&g) {
            prop_assert_eq!(ev.union_via_inclusion_exclusion(s).unwrap(), ev.union_shapley(s).unwrap());
        }
    }

    #[test]
    fn pairwise_union_intersection_relation(g in game_strategy(6)) {
        prop_assume!(g.n() >= 2);
        let sv = player_values::shapley(&g);
        for i in 0..g.n() {
            for j in i + 1..g.n() {
                let pair = Coalition::from_players([i, j]);
                let lhs = group_values::union_shapley(&g, pair).unwrap();
                let rhs = &sv[i] + &sv[j] - group_values::intersection_shapley(&g, pair).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn union_shapley_is_a_potential_difference(g in game_strategy(6)) {
        for s in nonempty(&g) {
            prop_assert_eq!(
                group_values::union_shapley_via_potential(&g, s).unwrap(),
                group_values::union_shapley(&g, s).unwrap()
            );
        }
    }

    #[test]
    fn shapley_paths_agree_and_are_efficient(g in game_strategy(7)) {
        let fast = player_values::shapley(&g);
        prop_assert_eq!(&fast, &player_values::shapley_marginal(&g));
        prop_assert_eq!(&fast.total(), g.worth(g.grand()));
        let beta = player_values::BetaWeights::shapley(g.n());
        prop_assert_eq!(&player_values::semivalue(&g, &beta).unwrap(), &fast);
    }

    #[test]
    fn preset_weights_reproduce_named_values(g in game_strategy(5)) {
        let n = g.n();
        let ev = GroupEvaluator::new(&g);
        let cases = [
            (SemivalueWeights::union_shapley(n), GroupValue::UnionShapley, GroupValue::IntersectionShapley),
            (SemivalueWeights::merge_shapley(n), GroupValue::MergeShapley, GroupValue::InteractionIndex),
            (SemivalueWeights::sum_of_shapley(n), GroupValue::SumShapley, GroupValue::ScaledIntersectionShapley),
            (SemivalueWeights::worth(n), GroupValue::Worth, GroupValue::Dividend),
        ];
        for (w, group, synergistic) in cases {
            for s in nonempty(&g) {
                prop_assert_eq!(ev.group_semivalue(s, &w).unwrap(), ev.value(&group, s).unwrap());
                prop_assert_eq!(ev.synergistic_semivalue(s, &w).unwrap(), ev.value(&synergistic, s).unwrap());
            }
        }
    }

    #[test]
    fn tables_match_pointwise_and_across_execution(g in game_strategy(6)) {
        let values = GroupValue::DUAL_PAIRS.into_iter().flat_map(|(a, b)| [a, b]).chain([GroupValue::Shapley, GroupValue::Banzhaf]);
        for value in values {
            let par = full_table_with(&g, &value, Execution::Parallel).unwrap();
            let seq = full_table_with(&g, &value, Execution::Sequential).unwrap();
            prop_assert_eq!(&par, &seq);
            for s in nonempty(&g) {
                prop_assert_eq!(par.get(s), &value.evaluate(&g, s).unwrap());
            }
        }
    }

    #[test]
    fn permuting_twice_by_inverse_is_identity(g in game_strategy(6), rot in 0usize..6) {
        let n = g.n();
        let perm: Vec<usize> = (0..n).map(|i| (i + rot) % n).collect();
        let inv = synergy_core::game::invert_permutation(&perm);
        prop_assert_eq!(g.permute(&perm).unwrap().permute(&inv).unwrap(), g);
    }
}
