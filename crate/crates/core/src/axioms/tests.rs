use super::*;
use crate::rational::{frac, int};

fn c(players: &[usize]) -> Coalition {
    Coalition::from_players(players.iter().map(|p| p - 1))
}

fn unanimity_sum(n: usize, terms: &[(i64, &[usize])]) -> Game {
    let games: Vec<(Rational, Game)> =
        terms.iter().map(|(k, s)| (int(*k), Game::unanimity(n, c(s)).unwrap())).collect();
    let refs: Vec<(Rational, &Game)> = games.iter().map(|(k, g)| (k.clone(), g)).collect();
    Game::linear_combine(&refs).unwrap()
}

fn two_pairs_game() -> Game {
    unanimity_sum(4, &[(1, &[1, 2]), (1, &[3, 4])])
}

fn three_player_game() -> Game {
    unanimity_sum(3, &[(2, &[1]), (3, &[2]), (5, &[3]), (2, &[1, 3]), (2, &[2, 3]), (3, &[1, 2, 3])])
}

fn all_ones(n: usize) -> Game {
    Game::from_fn(n, |s| int(!s.is_empty() as i64)).unwrap()
}

fn assert_fails(report: &AxiomReport, f: &dyn GroupValueFn) {
    assert_eq!(report.verdict, Verdict::Fail, "{report:?}");
    assert!(report.witness.is_some());
    assert!(recheck(report, f).unwrap(), "witness does not reproduce: {report:?}");
}

const US: GroupValue = GroupValue::UnionShapley;
const II: GroupValue = GroupValue::InteractionIndex;

#[test]
fn efficiency() {
    let r = check_efficiency(&GroupValue::Shapley, &three_player_game()).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    let r = check_efficiency(&GroupValue::Banzhaf, &Game::unanimity(3, c(&[1, 2, 3])).unwrap()).unwrap();
    assert_fails(&r, &GroupValue::Banzhaf);
    assert_eq!(r.witness.as_ref().unwrap().lhs, frac(3, 4));
    let zero = FnValue::new("zero", |_: &Game, _| Ok(Rational::zero()));
    assert!(check_efficiency(&zero, &Game::zero(3).unwrap()).unwrap().passed());
}

#[test]
fn shapley_consistency() {
    assert!(check_shapley_consistency(&US, &three_player_game()).unwrap().passed());
    let r = check_shapley_consistency(&GroupValue::Worth, &three_player_game()).unwrap();
    assert_fails(&r, &GroupValue::Worth);
    let w = r.witness.unwrap();
    assert_eq!((w.player, w.lhs, w.rhs), (Some(0), int(2), int(4)));
}

#[test]
fn symmetry() {
    let g = two_pairs_game();
    assert!(check_symmetry(&US, &g, &[0, 1, 2, 3]).unwrap().passed());
    assert!(check_symmetry(&US, &g, &[1, 0, 2, 3]).unwrap().passed());
    let biased = FnValue::new("biased", |g: &Game, s: Coalition| {
        Ok(group_values::union_shapley(g, s)? + int(s.lowest().unwrap() as i64))
    });
    assert!(check_symmetry(&biased, &g, &[0, 1, 2, 3]).unwrap().passed());
    assert_fails(&check_symmetry(&biased, &g, &[1, 0, 2, 3]).unwrap(), &biased);
}

#[test]
fn linearity() {
    let (v, w) = (three_player_game(), unanimity_sum(3, &[(-4, &[1, 2]), (7, &[3])]));
    let k = frac(-3, 2);
    assert!(check_linearity(&US, &v, &w, &k).unwrap().passed());
    assert!(check_linearity(&GroupValue::Worth, &v, &w, &k).unwrap().passed());
    let clamped = FnValue::new("clamped", |g: &Game, s: Coalition| Ok(g.worth(s).clone().max(Rational::zero())));
    let r = check_linearity(&clamped, &v, &w, &k).unwrap();
    assert_fails(&r, &clamped);
    // The additivity half already fails, so the stored witness has two games.
    let homogeneous_only = check_linearity(&clamped, &v, &v, &k).unwrap();
    assert_fails(&homogeneous_only, &clamped);
    assert!(homogeneous_only.witness.unwrap().scalar.is_some());
}

#[test]
fn null_player() {
    let g = Game::unanimity(2, c(&[1])).unwrap();
    assert!(check_null_player(&US, &g).unwrap().passed());
    let r = check_null_player(&II, &g).unwrap();
    assert_fails(&r, &II);
    let w = r.witness.unwrap();
    assert_eq!((w.lhs, w.rhs), (int(0), int(1)));
    let r = check_null_player(&II, &two_pairs_game()).unwrap();
    assert_eq!(r.verdict, Verdict::Vacuous);
    assert!(r.passed());
}

#[test]
fn dummy_player() {
    let additive = Game::additive(&[int(1), int(0)]).unwrap();
    assert!(check_dummy_player(&US, &Game::additive(&[int(2), int(-1), int(5)]).unwrap()).unwrap().passed());
    let r = check_dummy_player(&II, &additive).unwrap();
    assert_fails(&r, &II);
    assert!(check_dummy_player(&II, &Game::zero(2).unwrap()).unwrap().passed());
}

#[test]
fn dummifying_player() {
    let additive = Game::additive(&[int(1), int(0)]).unwrap();
    let wider = Game::additive(&[int(2), int(-1), int(5)]).unwrap();
    assert!(check_dummifying_player(&II, &wider).unwrap().passed());
    assert!(check_dummifying_player(&GroupValue::IntersectionShapley, &wider).unwrap().passed());
    let r = check_dummifying_player(&US, &additive).unwrap();
    assert_fails(&r, &US);
    assert_eq!(r.witness.unwrap().lhs, int(1));
}

#[test]
fn monotonicity() {
    let ones = all_ones(2);
    let r = check_monotonicity(&II, &ones).unwrap();
    assert_fails(&r, &II);
    let w = r.witness.unwrap();
    assert_eq!((w.lhs, w.relation), (int(-1), Relation::AtLeast));
    assert_eq!(check_weak_monotonicity(&II, &ones).unwrap().verdict, Verdict::Vacuous);
    assert!(check_weak_monotonicity(&II, &three_player_game()).unwrap().passed());
    assert!(check_monotonicity(&US, &Game::unanimity(3, c(&[1, 3])).unwrap()).unwrap().passed());
}

#[test]
fn balanced_contributions() {
    let g = two_pairs_game();
    assert!(check_balanced_contributions(&US, &g, c(&[1, 2]), c(&[3, 4])).unwrap().passed());
    let ms = GroupValue::MergeShapley;
    assert!(check_balanced_contributions(&ms, &g, c(&[1, 3]), c(&[1, 3])).unwrap().passed());
    assert_fails(&check_balanced_contributions_all(&ms, &g).unwrap(), &ms);
    assert!(check_balanced_contributions_all(&US, &three_player_game()).unwrap().passed());
}

#[test]
fn potential() {
    assert!(check_potential(&US, &two_pairs_game()).unwrap().passed());
    assert_fails(&check_potential(&GroupValue::MergeShapley, &two_pairs_game()).unwrap(), &GroupValue::MergeShapley);
    assert!(check_potential_consistency(&two_pairs_game()).unwrap().passed());
    assert!(check_potential_consistency(&Game::unanimity(5, Coalition::full(5)).unwrap()).unwrap().passed());
}

#[test]
fn reconstruction() {
    let g = three_player_game();
    assert_eq!(reconstruction_game(&US, &g).unwrap(), g);
    assert!(check_potential_reconstruction(&US, &g).unwrap().passed());
    let ms = GroupValue::MergeShapley;
    assert_fails(&check_potential_reconstruction(&ms, &two_pairs_game()).unwrap(), &ms);
    let single = Game::additive(&[int(3)]).unwrap();
    assert!(check_potential_reconstruction(&ms, &single).unwrap().passed());
}

#[test]
fn null_player_out() {
    let g = Game::unanimity(4, c(&[1, 2])).unwrap();
    assert!(check_null_player_out(&US, &g).unwrap().passed());
    assert_eq!(check_null_player_out(&US, &three_player_game()).unwrap().verdict, Verdict::Vacuous);
    let sized =
        FnValue::new("sized", |g: &Game, s: Coalition| Ok(group_values::union_shapley(g, s)? * int(g.n() as i64)));
    assert_fails(&check_null_player_out(&sized, &g).unwrap(), &sized);
}

#[test]
fn passing_reports_do_not_recheck() {
    let r = check_efficiency(&US, &three_player_game()).unwrap();
    assert!(!recheck(&r, &US).unwrap());
}

#[test]
fn tampered_witness_is_rejected() {
    let mut r = check_shapley_consistency(&GroupValue::Worth, &three_player_game()).unwrap();
    r.witness.as_mut().unwrap().rhs = int(5);
    assert!(!recheck(&r, &GroupValue::Worth).unwrap());
}

#[test]
fn matrix_on_small_corpus() {
    let games = crate::corpus::axiom_corpus(14, 4, 3).unwrap();
    let values: [&dyn GroupValueFn; 2] = [&US, &II];
    let m = axiom_matrix(&values, &Axiom::PER_VALUE, &games, crate::Execution::default()).unwrap();
    for a in [Axiom::NullPlayer, Axiom::DummyPlayer, Axiom::Potential, Axiom::BalancedContributions] {
        assert_eq!(m.cell("union-shapley", a).unwrap().verdict, Verdict::Pass, "{a}");
    }
    assert_eq!(m.cell("union-shapley", Axiom::DummifyingPlayer).unwrap().verdict, Verdict::Fail);
    for a in [Axiom::NullPlayer, Axiom::DummyPlayer, Axiom::Monotonicity] {
        assert_eq!(m.cell("interaction-index", a).unwrap().verdict, Verdict::Fail, "{a}");
    }
    let seq = axiom_matrix(&values, &Axiom::PER_VALUE, &games, crate::Execution::Sequential).unwrap();
    assert_eq!(serde_json::to_string(&m).unwrap(), serde_json::to_string(&seq).unwrap());
}
