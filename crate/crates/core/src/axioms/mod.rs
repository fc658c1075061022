//! Executable axiom checks.
//!
//! Each check quantifies exhaustively over the coalitions (and, where the
//! axiom involves them, the subgames) of one game and returns an
//! [`AxiomReport`]. A failing report carries a [`Witness`] that
//! [`recheck`] can re-evaluate from scratch. Passing a check on finitely many
//! games is evidence, never a proof of the universal statement.

mod identities;
mod matrix;
mod report;

use std::collections::HashMap;

use num_traits::Zero;

pub use identities::{check_weight_identities, check_weight_identities_sampled, merged_ordering_sum, ordering_sum};
pub use matrix::{axiom_matrix, check, AxiomContext, AxiomMatrix};
pub use report::{Axiom, AxiomReport, Relation, Verdict, Witness};

use crate::coalition::Coalition;
use crate::error::Result;
use crate::game::{apply_permutation, Game};
use crate::group_values::{self, full_table, GroupValue, GroupValueTable};
use crate::player_values;
use crate::rational::Rational;
use crate::transforms;

/// A group value defined for games of any size, so that subgames can be
/// evaluated. Implementations must be deterministic.
pub trait GroupValueFn: Sync {
    fn name(&self) -> String;

    fn value(&self, g: &Game, s: Coalition) -> Result<Rational>;

    fn table(&self, g: &Game) -> Result<GroupValueTable> {
        GroupValueTable::from_fn(g.n(), |s| self.value(g, s))
    }
}

impl GroupValueFn for GroupValue {
    fn name(&self) -> String {
        GroupValue::name(self).to_string()
    }

    fn value(&self, g: &Game, s: Coalition) -> Result<Rational> {
        self.evaluate(g, s)
    }

    fn table(&self, g: &Game) -> Result<GroupValueTable> {
        full_table(g, self)
    }
}

/// Adapts a closure into a [`GroupValueFn`].
pub struct FnValue<F> {
    name: String,
    f: F,
}

impl<F> FnValue<F>
where
    F: Fn(&Game, Coalition) -> Result<Rational> + Sync,
{
    pub fn new(name: &str, f: F) -> FnValue<F> {
        FnValue { name: name.to_string(), f }
    }
}

impl<F> GroupValueFn for FnValue<F>
where
    F: Fn(&Game, Coalition) -> Result<Rational> + Sync,
{
    fn name(&self) -> String {
        self.name.clone()
    }

    fn value(&self, g: &Game, s: Coalition) -> Result<Rational> {
        (self.f)(g, s)
    }
}

/// Memoized value tables of a game and its subgames. Subgames are keyed by
/// the set of surviving players; coalitions use the original indexing.
struct Memo<'a> {
    f: &'a dyn GroupValueFn,
    game: &'a Game,
    tables: HashMap<u64, (Vec<usize>, GroupValueTable)>,
}

impl<'a> Memo<'a> {
    fn new(f: &'a dyn GroupValueFn, game: &'a Game) -> Memo<'a> {
        Memo { f, game, tables: HashMap::new() }
    }

    /// `φ_S(K, v)` with the conventions `φ_∅ = 0` and `φ(∅, v) = 0`.
    fn value_in(&mut self, kept: Coalition, s: Coalition) -> Result<Rational> {
        debug_assert!(s.is_subset_of(kept));
        if s.is_empty() || kept.is_empty() {
            return Ok(Rational::zero());
        }
        if !self.tables.contains_key(&kept.mask()) {
            let entry = if kept == self.game.grand() {
                ((0..self.game.n()).collect(), self.f.table(self.game)?)
            } else {
                let sub = self.game.remove_players(self.game.grand().difference(kept))?;
                let table = self.f.table(&sub.game)?;
                (sub.embed, table)
            };
            self.tables.insert(kept.mask(), entry);
        }
        let (embed, table) = &self.tables[&kept.mask()];
        let local =
            Coalition::from_players(embed.iter().enumerate().filter(|(_, &orig)| s.contains(orig)).map(|(k, _)| k));
        Ok(table.get(local).clone())
    }

    fn value(&mut self, s: Coalition) -> Result<Rational> {
        self.value_in(self.game.grand(), s)
    }
}

fn first_violation(cases: impl Iterator<Item = Result<Option<Witness>>>) -> Result<(usize, Option<Witness>)> {
    let mut count = 0;
    for case in cases {
        count += 1;
        if let Some(w) = case? {
            return Ok((count, Some(w)));
        }
    }
    Ok((count, None))
}

fn finish(axiom: Axiom, f: &dyn GroupValueFn, outcome: (usize, Option<Witness>)) -> AxiomReport {
    match outcome {
        (cases, Some(w)) => AxiomReport::fail(axiom, &f.name(), cases, w),
        (cases, None) => AxiomReport::pass(axiom, &f.name(), cases),
    }
}

fn nonempty(n: usize) -> impl Iterator<Item = Coalition> {
    (1..1u64 << n).map(Coalition)
}

/// Records the witness only when the relation is violated.
fn violated(w: Witness) -> Option<Witness> {
    w.is_violation().then_some(w)
}

fn efficiency_sides(f: &dyn GroupValueFn, g: &Game) -> Result<(Rational, Rational)> {
    let mut total = Rational::zero();
    for i in 0..g.n() {
        total += f.value(g, Coalition::singleton(i))?;
    }
    Ok((total, g.worth(g.grand()).clone()))
}

/// `Σ_i φ_{{i}}(N, v) = v(N)`.
pub fn check_efficiency(f: &dyn GroupValueFn, g: &Game) -> Result<AxiomReport> {
    let (lhs, rhs) = efficiency_sides(f, g)?;
    let w = Witness::new(g.n(), lhs, rhs, "sum of singleton values vs worth of the grand coalition".into()).game(g);
    Ok(finish(Axiom::Efficiency, f, (1, violated(w))))
}

/// `φ_{{i}}(N, v) = SV_i(N, v)` for every player.
pub fn check_shapley_consistency(f: &dyn GroupValueFn, g: &Game) -> Result<AxiomReport> {
    let sv = player_values::shapley(g);
    let outcome = first_violation((0..g.n()).map(|i| {
        let lhs = f.value(g, Coalition::singleton(i))?;
        let w = Witness::new(g.n(), lhs, sv[i].clone(), format!("singleton value of player {i} vs its Shapley value"))
            .game(g)
            .player(i);
        Ok(violated(w))
    }))?;
    Ok(finish(Axiom::ShapleyConsistency, f, outcome))
}

/// `φ_S(N, v) = φ_{π(S)}(N, π(v))` for every non-empty `S`.
pub fn check_symmetry(f: &dyn GroupValueFn, g: &Game, perm: &[usize]) -> Result<AxiomReport> {
    let permuted = g.permute(perm)?;
    let before = f.table(g)?;
    let after = f.table(&permuted)?;
    let outcome = first_violation(nonempty(g.n()).map(|s| {
        let mut w = Witness::new(
            g.n(),
            before.get(s).clone(),
            after.get(apply_permutation(perm, s)).clone(),
            "value of S vs value of π(S) in the permuted game".into(),
        )
        .game(g)
        .coalition(s);
        w.permutation = Some(perm.to_vec());
        Ok(violated(w))
    }))?;
    Ok(finish(Axiom::Symmetry, f, outcome))
}

/// Additivity on `(v, w)` and homogeneity of degree one with scalar `c`.
pub fn check_linearity(f: &dyn GroupValueFn, v: &Game, w: &Game, c: &Rational) -> Result<AxiomReport> {
    let one = Rational::from_integer(1.into());
    let sum = Game::linear_combine(&[(one.clone(), v), (one, w)])?;
    let scaled = Game::linear_combine(&[(c.clone(), v)])?;
    let (tv, tw, tsum, tscaled) = (f.table(v)?, f.table(w)?, f.table(&sum)?, f.table(&scaled)?);
    let additive = nonempty(v.n()).map(|s| {
        let wit =
            Witness::new(v.n(), tsum.get(s).clone(), tv.get(s) + tw.get(s), "φ_S(v + w) vs φ_S(v) + φ_S(w)".into())
                .game(v)
                .game(w)
                .coalition(s);
        Ok(violated(wit))
    });
    let homogeneous = nonempty(v.n()).map(|s| {
        let mut wit = Witness::new(v.n(), tscaled.get(s).clone(), c * tv.get(s), "φ_S(c·v) vs c·φ_S(v)".into())
            .game(v)
            .coalition(s);
        wit.scalar = Some(c.clone());
        Ok(violated(wit))
    });
    let outcome = first_violation(additive.chain(homogeneous))?;
    Ok(finish(Axiom::Linearity, f, outcome))
}

#[derive(Clone, Copy)]
enum PlayerAxiom {
    Null,
    Dummy,
    Dummifying,
}

impl PlayerAxiom {
    fn axiom(self) -> Axiom {
        match self {
            PlayerAxiom::Null => Axiom::NullPlayer,
            PlayerAxiom::Dummy => Axiom::DummyPlayer,
            PlayerAxiom::Dummifying => Axiom::DummifyingPlayer,
        }
    }
}

/// Sides for player `i` joining `s` (or `i` alone when `s` is empty).
fn player_sides(kind: PlayerAxiom, memo: &mut Memo, i: usize, s: Coalition) -> Result<(Rational, Rational, String)> {
    let single = memo.game.worth(Coalition::singleton(i)).clone();
    let lhs = memo.value(s.with(i))?;
    let (rhs, text) = match (kind, s.is_empty()) {
        (PlayerAxiom::Null, true) => (Rational::zero(), "φ_{i} vs 0"),
        (PlayerAxiom::Null, false) => (memo.value(s)?, "φ_{S∪{i}} vs φ_S"),
        (PlayerAxiom::Dummy | PlayerAxiom::Dummifying, true) => (single, "φ_{i} vs v({i})"),
        (PlayerAxiom::Dummy, false) => (memo.value(s)? + single, "φ_{S∪{i}} vs φ_S + v({i})"),
        (PlayerAxiom::Dummifying, false) => (Rational::zero(), "φ_{S∪{i}} vs 0"),
    };
    Ok((lhs, rhs, text.to_string()))
}

fn check_player_axiom(kind: PlayerAxiom, f: &dyn GroupValueFn, g: &Game) -> Result<AxiomReport> {
    let players = match kind {
        PlayerAxiom::Null => g.null_players(),
        PlayerAxiom::Dummy | PlayerAxiom::Dummifying => g.dummy_players(),
    };
    if players.is_empty() {
        let notice = match kind {
            PlayerAxiom::Null => "game has no null player",
            _ => "game has no dummy player",
        };
        return Ok(AxiomReport::vacuous(kind.axiom(), &f.name(), notice));
    }
    let mut memo = Memo::new(f, g);
    let mut cases = Vec::new();
    for &i in &players {
        for s in g.grand().without(i).subsets() {
            cases.push((i, s));
        }
    }
    let outcome = first_violation(cases.into_iter().map(|(i, s)| {
        let (lhs, rhs, text) = player_sides(kind, &mut memo, i, s)?;
        Ok(violated(Witness::new(g.n(), lhs, rhs, text).game(g).player(i).coalition(s)))
    }))?;
    Ok(finish(kind.axiom(), f, outcome))
}

/// For every null player `i`: `φ_{{i}} = 0` and `φ_{S∪{i}} = φ_S`.
pub fn check_null_player(f: &dyn GroupValueFn, g: &Game) -> Result<AxiomReport> {
    check_player_axiom(PlayerAxiom::Null, f, g)
}

/// For every dummy player `i`: `φ_{{i}} = v({i})` and `φ_{S∪{i}} = φ_S + v({i})`.
pub fn check_dummy_player(f: &dyn GroupValueFn, g: &Game) -> Result<AxiomReport> {
    check_player_axiom(PlayerAxiom::Dummy, f, g)
}

/// For every dummy player `i`: `φ_{{i}} = v({i})` and `φ_{S∪{i}} = 0`.
pub fn check_dummifying_player(f: &dyn GroupValueFn, g: &Game) -> Result<AxiomReport> {
    check_player_axiom(PlayerAxiom::Dummifying, f, g)
}

fn check_nonnegative(axiom: Axiom, f: &dyn GroupValueFn, g: &Game) -> Result<AxiomReport> {
    let table = f.table(g)?;
    let outcome = first_violation(nonempty(g.n()).map(|s| {
        let mut w = Witness::new(g.n(), table.get(s).clone(), Rational::zero(), "φ_S vs 0".into()).game(g).coalition(s);
        w.relation = Relation::AtLeast;
        Ok(violated(w))
    }))?;
    Ok(finish(axiom, f, outcome))
}

/// `φ_S >= 0` on positive games (all dividends non-negative).
pub fn check_weak_monotonicity(f: &dyn GroupValueFn, g: &Game) -> Result<AxiomReport> {
    if !g.is_positive() {
        return Ok(AxiomReport::vacuous(Axiom::WeakMonotonicity, &f.name(), "game is not positive"));
    }
    check_nonnegative(Axiom::WeakMonotonicity, f, g)
}

/// `φ_S >= 0` on inclusion-monotone games.
pub fn check_monotonicity(f: &dyn GroupValueFn, g: &Game) -> Result<AxiomReport> {
    if !g.is_monotone() {
        return Ok(AxiomReport::vacuous(Axiom::Monotonicity, &f.name(), "game is not monotone"));
    }
    check_nonnegative(Axiom::Monotonicity, f, g)
}

/// `(φ_S(N) - φ_{S∖T}(N∖T), φ_T(N) - φ_{T∖S}(N∖S))`
fn balanced_sides(memo: &mut Memo, s: Coalition, t: Coalition) -> Result<(Rational, Rational)> {
    let n = memo.game.grand();
    let lhs = memo.value(s)? - memo.value_in(n.difference(t), s.difference(t))?;
    let rhs = memo.value(t)? - memo.value_in(n.difference(s), t.difference(s))?;
    Ok((lhs, rhs))
}

fn balanced_witness(g: &Game, s: Coalition, t: Coalition, sides: (Rational, Rational)) -> Witness {
    Witness::new(g.n(), sides.0, sides.1, "φ_S(N) - φ_{S∖T}(N∖T) vs φ_T(N) - φ_{T∖S}(N∖S)".into())
        .game(g)
        .coalition(s)
        .coalition(t)
}

/// Balanced contributions for one pair of coalitions.
pub fn check_balanced_contributions(f: &dyn GroupValueFn, g: &Game, s: Coalition, t: Coalition) -> Result<AxiomReport> {
    g.check_coalition(s)?;
    g.check_coalition(t)?;
    let mut memo = Memo::new(f, g);
    let sides = balanced_sides(&mut memo, s, t)?;
    Ok(finish(Axiom::BalancedContributions, f, (1, violated(balanced_witness(g, s, t, sides)))))
}

/// Balanced contributions over every pair of distinct non-empty coalitions.
pub fn check_balanced_contributions_all(f: &dyn GroupValueFn, g: &Game) -> Result<AxiomReport> {
    let mut memo = Memo::new(f, g);
    let pairs = nonempty(g.n()).flat_map(|s| nonempty(g.n()).filter(move |t| s < *t).map(move |t| (s, t)));
    let outcome = first_violation(pairs.map(|(s, t)| {
        let sides = balanced_sides(&mut memo, s, t)?;
        Ok(violated(balanced_witness(g, s, t, sides)))
    }))?;
    Ok(finish(Axiom::BalancedContributions, f, outcome))
}

/// `(φ_S(K, v), φ_K(K, v) - φ_{K∖S}(K∖S, v))`
fn potential_sides(memo: &mut Memo, kept: Coalition, s: Coalition) -> Result<(Rational, Rational)> {
    let lhs = memo.value_in(kept, s)?;
    let rest = kept.difference(s);
    let rhs = memo.value_in(kept, kept)? - memo.value_in(rest, rest)?;
    Ok((lhs, rhs))
}

/// Whether `φ` arises from a potential. Since `f(K, v) = φ_K(K, v)` is forced
/// by `f(∅, v) = 0`, the check is `φ_S(K) = φ_K(K) - φ_{K∖S}(K∖S)` for every
/// player set `K ⊆ N` and non-empty `S ⊆ K`.
pub fn check_potential(f: &dyn GroupValueFn, g: &Game) -> Result<AxiomReport> {
    let mut memo = Memo::new(f, g);
    let cases = nonempty(g.n()).flat_map(|k| k.nonempty_subsets().map(move |s| (k, s)));
    let outcome = first_violation(cases.map(|(k, s)| {
        let (lhs, rhs) = potential_sides(&mut memo, k, s)?;
        let w =
            Witness::new(g.n(), lhs, rhs, "φ_S(K) vs φ_K(K) - φ_{K∖S}(K∖S)".into()).game(g).coalition(k).coalition(s);
        Ok(violated(w))
    }))?;
    Ok(finish(Axiom::Potential, f, outcome))
}

/// The game `u_φ(S) = Σ_{i∈S} φ_{{i}}(S, v)`.
pub fn reconstruction_game(f: &dyn GroupValueFn, g: &Game) -> Result<Game> {
    let mut memo = Memo::new(f, g);
    let mut worths = vec![Rational::zero(); 1 << g.n()];
    for s in nonempty(g.n()) {
        let mut total = Rational::zero();
        for i in s.players() {
            total += memo.value_in(s, Coalition::singleton(i))?;
        }
        worths[s.index()] = total;
    }
    Game::new(g.n(), worths)
}

/// Compares `φ_S(N, v)` with `US_S(N, u_φ)`; a value satisfying Potential
/// always agrees.
pub fn check_potential_reconstruction(f: &dyn GroupValueFn, g: &Game) -> Result<AxiomReport> {
    let rebuilt = reconstruction_game(f, g)?;
    let union = full_table(&rebuilt, &GroupValue::UnionShapley)?;
    let table = f.table(g)?;
    let outcome = first_violation(nonempty(g.n()).map(|s| {
        let w = Witness::new(g.n(), table.get(s).clone(), union.get(s).clone(), "φ_S(N, v) vs US_S(N, u_φ)".into())
            .game(g)
            .coalition(s);
        Ok(violated(w))
    }))?;
    Ok(finish(Axiom::PotentialReconstruction, f, outcome))
}

/// For every null player `i`: `φ_S(N, v) = φ_S(N ∖ {i}, v)` for `S ⊆ N ∖ {i}`.
pub fn check_null_player_out(f: &dyn GroupValueFn, g: &Game) -> Result<AxiomReport> {
    let nulls = g.null_players();
    if nulls.is_empty() || g.n() == 1 {
        return Ok(AxiomReport::vacuous(Axiom::NullPlayerOut, &f.name(), "game has no removable null player"));
    }
    let mut memo = Memo::new(f, g);
    let cases: Vec<(usize, Coalition)> =
        nulls.iter().flat_map(|&i| g.grand().without(i).nonempty_subsets().map(move |s| (i, s))).collect();
    let outcome = first_violation(cases.into_iter().map(|(i, s)| {
        let lhs = memo.value(s)?;
        let rhs = memo.value_in(g.grand().without(i), s)?;
        Ok(violated(Witness::new(g.n(), lhs, rhs, "φ_S(N) vs φ_S(N∖{i})".into()).game(g).player(i).coalition(s)))
    }))?;
    Ok(finish(Axiom::NullPlayerOut, f, outcome))
}

/// `US_S(N, v) = P(N, v) - P(N∖S, v)` for every non-empty `S`, with the
/// potential of the empty game taken as 0.
pub fn check_potential_consistency(g: &Game) -> Result<AxiomReport> {
    let total = transforms::potential(g);
    let outcome = first_violation(nonempty(g.n()).map(|s| {
        let union = group_values::union_shapley(g, s)?;
        let rest = if s == g.grand() { Rational::zero() } else { transforms::potential(&g.remove_players(s)?.game) };
        let w = Witness::new(g.n(), union, &total - rest, "US_S vs P(N) - P(N∖S)".into()).game(g).coalition(s);
        Ok(violated(w))
    }))?;
    let name = GroupValue::UnionShapley.name();
    Ok(match outcome {
        (cases, Some(w)) => AxiomReport::fail(Axiom::PotentialFunction, name, cases, w),
        (cases, None) => AxiomReport::pass(Axiom::PotentialFunction, name, cases),
    })
}

/// Re-evaluates a failure witness from its stored inputs. Returns `true`
/// when both sides are reproduced exactly and still violate the relation.
pub fn recheck(report: &AxiomReport, f: &dyn GroupValueFn) -> Result<bool> {
    let Some(w) = &report.witness else {
        return Ok(false);
    };
    let sides = recompute_sides(report.axiom, w, f)?;
    let Some((lhs, rhs)) = sides else {
        return Ok(false);
    };
    let mut again = w.clone();
    again.lhs = lhs;
    again.rhs = rhs;
    Ok(again.lhs == w.lhs && again.rhs == w.rhs && again.is_violation())
}

fn recompute_sides(axiom: Axiom, w: &Witness, f: &dyn GroupValueFn) -> Result<Option<(Rational, Rational)>> {
    if axiom == Axiom::WeightIdentities {
        return Ok(Some(identities::identity_sides(w.n, &w.coalitions)));
    }
    let Some(g) = w.games.first() else {
        return Ok(None);
    };
    let coalition = |k: usize| w.coalitions.get(k).copied().unwrap_or(Coalition::EMPTY);
    let mut memo = Memo::new(f, g);
    let sides = match axiom {
        Axiom::Efficiency => efficiency_sides(f, g)?,
        Axiom::ShapleyConsistency => {
            let i = w.player.unwrap_or(0);
            (f.value(g, Coalition::singleton(i))?, player_values::shapley_marginal(g)[i].clone())
        }
        Axiom::Symmetry => {
            let perm = w.permutation.clone().unwrap_or_default();
            let s = coalition(0);
            (f.value(g, s)?, f.value(&g.permute(&perm)?, apply_permutation(&perm, s))?)
        }
        Axiom::Linearity => {
            let s = coalition(0);
            match (w.games.get(1), &w.scalar) {
                (Some(other), _) => {
                    let one = Rational::from_integer(1.into());
                    let sum = Game::linear_combine(&[(one.clone(), g), (one, other)])?;
                    (f.value(&sum, s)?, f.value(g, s)? + f.value(other, s)?)
                }
                (None, Some(c)) => {
                    let scaled = Game::linear_combine(&[(c.clone(), g)])?;
                    (f.value(&scaled, s)?, c * f.value(g, s)?)
                }
                (None, None) => return Ok(None),
            }
        }
        Axiom::NullPlayer | Axiom::DummyPlayer | Axiom::DummifyingPlayer => {
            let kind = match axiom {
                Axiom::NullPlayer => PlayerAxiom::Null,
                Axiom::DummyPlayer => PlayerAxiom::Dummy,
                _ => PlayerAxiom::Dummifying,
            };
            let i = w.player.unwrap_or(0);
            let is_member = match kind {
                PlayerAxiom::Null => g.is_null_player(i),
                _ => g.is_dummy_player(i),
            };
            if !is_member {
                return Ok(None);
            }
            let (lhs, rhs, _) = player_sides(kind, &mut memo, i, coalition(0))?;
            (lhs, rhs)
        }
        Axiom::WeakMonotonicity | Axiom::Monotonicity => {
            let applies = if axiom == Axiom::WeakMonotonicity { g.is_positive() } else { g.is_monotone() };
            if !applies {
                return Ok(None);
            }
            (f.value(g, coalition(0))?, Rational::zero())
        }
        Axiom::BalancedContributions => balanced_sides(&mut memo, coalition(0), coalition(1))?,
        Axiom::Potential => potential_sides(&mut memo, coalition(0), coalition(1))?,
        Axiom::PotentialReconstruction => {
            let rebuilt = reconstruction_game(f, g)?;
            let s = coalition(0);
            (f.value(g, s)?, group_values::union_shapley(&rebuilt, s)?)
        }
        Axiom::NullPlayerOut => {
            let i = w.player.unwrap_or(0);
            if !g.is_null_player(i) {
                return Ok(None);
            }
            let s = coalition(0);
            (memo.value(s)?, memo.value_in(g.grand().without(i), s)?)
        }
        Axiom::PotentialFunction => {
            let s = coalition(0);
            let rest =
                if s == g.grand() { Rational::zero() } else { transforms::potential(&g.remove_players(s)?.game) };
            (group_values::union_shapley(g, s)?, transforms::potential(g) - rest)
        }
        Axiom::WeightIdentities => unreachable!(),
    };
    Ok(Some(sides))
}

#[cfg(test)]
mod tests;
