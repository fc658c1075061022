//! Group values: Union/Intersection/Merge Shapley, the Interaction Index,
//! weight-defined group and synergistic semivalues, and full tables.
//!
//! Every value is evaluated from the dividend vector, which
//! [`GroupEvaluator`] computes once per game. The dividend-free
//! formulas live in [`worth_form`].

mod weights;
pub mod worth_form;

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

pub use weights::SemivalueWeights;

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::game::Game;
use crate::player_values::{self, PlayerValueVector};
use crate::rational::{self, Rational};
use crate::transforms::{self, DividendVector};

/// Selector for every group value the engine knows.
///
/// `Shapley` and `Banzhaf` are player values; on a coalition they report the
/// sum of their members' values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupValue {
    Shapley,
    Banzhaf,
    UnionShapley,
    IntersectionShapley,
    MergeShapley,
    InteractionIndex,
    SumShapley,
    /// `|S|·IS_S`, dual to the sum of Shapley values.
    ScaledIntersectionShapley,
    Worth,
    Dividend,
    Semivalue(SemivalueWeights),
    Synergistic(SemivalueWeights),
}

impl GroupValue {
    /// The four dual pairs: group semivalues then their synergistic duals.
    pub const DUAL_PAIRS: [(GroupValue, GroupValue); 4] = [
        (GroupValue::UnionShapley, GroupValue::IntersectionShapley),
        (GroupValue::MergeShapley, GroupValue::InteractionIndex),
        (GroupValue::SumShapley, GroupValue::ScaledIntersectionShapley),
        (GroupValue::Worth, GroupValue::Dividend),
    ];

    /// Names accepted by [`GroupValue::parse`].
    pub const NAMES: [&'static str; 12] = [
        "shapley",
        "banzhaf",
        "union-shapley",
        "intersection-shapley",
        "merge-shapley",
        "interaction-index",
        "sum-shapley",
        "scaled-intersection-shapley",
        "worth",
        "dividend",
        "semivalue:custom",
        "synergistic:custom",
    ];

    pub fn name(&self) -> &'static str {
        match self {
            GroupValue::Shapley => "shapley",
            GroupValue::Banzhaf => "banzhaf",
            GroupValue::UnionShapley => "union-shapley",
            GroupValue::IntersectionShapley => "intersection-shapley",
            GroupValue::MergeShapley => "merge-shapley",
            GroupValue::InteractionIndex => "interaction-index",
            GroupValue::SumShapley => "sum-shapley",
            GroupValue::ScaledIntersectionShapley => "scaled-intersection-shapley",
            GroupValue::Worth => "worth",
            GroupValue::Dividend => "dividend",
            GroupValue::Semivalue(_) => "semivalue:custom",
            GroupValue::Synergistic(_) => "synergistic:custom",
        }
    }

    /// Resolves a value name; the `:custom` names need `weights`.
    pub fn parse(name: &str, weights: Option<&SemivalueWeights>) -> Result<GroupValue> {
        let need =
            || weights.cloned().ok_or_else(|| Error::InvalidWeights(format!("value {name} needs a weights table")));
        Ok(match name.trim() {
            "semivalue:custom" => GroupValue::Semivalue(need()?),
            "synergistic:custom" => GroupValue::Synergistic(need()?),
            other => other.parse()?,
        })
    }

    /// The weights `p(q, t)` of this value when it belongs to one of the two
    /// semivalue classes, sized for `n` players.
    pub fn weights(&self, n: usize) -> Option<SemivalueWeights> {
        match self {
            GroupValue::UnionShapley | GroupValue::IntersectionShapley => Some(SemivalueWeights::union_shapley(n)),
            GroupValue::MergeShapley | GroupValue::InteractionIndex => Some(SemivalueWeights::merge_shapley(n)),
            GroupValue::SumShapley | GroupValue::ScaledIntersectionShapley => Some(SemivalueWeights::sum_of_shapley(n)),
            GroupValue::Worth | GroupValue::Dividend => Some(SemivalueWeights::worth(n)),
            GroupValue::Semivalue(w) | GroupValue::Synergistic(w) => Some(w.clone()),
            GroupValue::Shapley | GroupValue::Banzhaf => None,
        }
    }

    /// Group semivalues aggregate over intersecting coalitions, synergistic
    /// ones over supersets.
    pub fn is_synergistic(&self) -> bool {
        matches!(
            self,
            GroupValue::IntersectionShapley
                | GroupValue::InteractionIndex
                | GroupValue::ScaledIntersectionShapley
                | GroupValue::Dividend
                | GroupValue::Synergistic(_)
        )
    }

    /// Evaluates the value on one coalition.
    pub fn evaluate(&self, g: &Game, s: Coalition) -> Result<Rational> {
        GroupEvaluator::new(g).value(self, s)
    }
}

impl FromStr for GroupValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupValue> {
        Ok(match s {
            "shapley" => GroupValue::Shapley,
            "banzhaf" => GroupValue::Banzhaf,
            "union-shapley" => GroupValue::UnionShapley,
            "intersection-shapley" => GroupValue::IntersectionShapley,
            "merge-shapley" => GroupValue::MergeShapley,
            "interaction-index" => GroupValue::InteractionIndex,
            "sum-shapley" => GroupValue::SumShapley,
            "scaled-intersection-shapley" => GroupValue::ScaledIntersectionShapley,
            "worth" => GroupValue::Worth,
            "dividend" => GroupValue::Dividend,
            "semivalue:custom" | "synergistic:custom" => {
                return Err(Error::InvalidWeights(format!("value {s} needs a weights table")))
            }
            other => return Err(Error::UnknownValue(other.to_string())),
        })
    }
}

impl fmt::Display for GroupValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Group values of one game, sharing a single dividend computation.
pub struct GroupEvaluator<'g> {
    game: &'g Game,
    dividends: DividendVector,
    /// Non-zero dividends only.
    support: Vec<(Coalition, Rational)>,
}

fn int_of(k: usize) -> Rational {
    Rational::from_integer((k as i64).into())
}

impl<'g> GroupEvaluator<'g> {
    pub fn new(game: &'g Game) -> GroupEvaluator<'g> {
        GroupEvaluator::with_execution(game, Execution::default())
    }

    pub fn with_execution(game: &'g Game, exec: Execution) -> GroupEvaluator<'g> {
        let dividends = transforms::dividends_with(game, exec);
        let support = dividends.support().map(|(c, d)| (c, d.clone())).collect();
        GroupEvaluator { game, dividends, support }
    }

    pub fn game(&self) -> &Game {
        self.game
    }

    pub fn dividends(&self) -> &DividendVector {
        &self.dividends
    }

    /// `Σ weight(T)·Δ(T)` over the non-zero dividends selected by `filter`.
    /// Dividends sharing a weight key are summed before multiplying.
    fn weighted_sum<F, W>(&self, filter: F, weight: W) -> Rational
    where
        F: Fn(Coalition) -> Option<(usize, usize)>,
        W: Fn(usize, usize) -> Rational,
    {
        let n = self.game.n();
        let mut buckets = vec![Rational::zero(); (n + 1) * (n + 1)];
        for (t, d) in &self.support {
            if let Some((a, b)) = filter(*t) {
                buckets[a * (n + 1) + b] += d;
            }
        }
        buckets
            .into_iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(k, s)| s * weight(k / (n + 1), k % (n + 1)))
            .sum()
    }

    fn check(&self, s: Coalition) -> Result<()> {
        self.game.check_nonempty(s)
    }

    /// `US_S = Σ_{T∩S≠∅} Δ(T)/|T|`
    pub fn union_shapley(&self, s: Coalition) -> Result<Rational> {
        self.check(s)?;
        Ok(self.weighted_sum(|t| t.intersects(s).then(|| (0, t.len())), |_, t| rational::frac(1, t as i64)))
    }

    /// `IS_S = Σ_{T⊇S} Δ(T)/|T|`
    pub fn intersection_shapley(&self, s: Coalition) -> Result<Rational> {
        self.check(s)?;
        Ok(self.weighted_sum(|t| s.is_subset_of(t).then(|| (0, t.len())), |_, t| rational::frac(1, t as i64)))
    }

    /// `MS_S = Σ_{T∩S≠∅} Δ(T)/(|T| - |S∩T| + 1)`
    pub fn merge_shapley(&self, s: Coalition) -> Result<Rational> {
        self.check(s)?;
        Ok(self.weighted_sum(
            |t| t.intersects(s).then(|| (0, t.len() - t.intersection(s).len() + 1)),
            |_, k| rational::frac(1, k as i64),
        ))
    }

    /// `II_S = Σ_{T⊇S} Δ(T)/(|T| - |S| + 1)`
    pub fn interaction_index(&self, s: Coalition) -> Result<Rational> {
        self.check(s)?;
        Ok(self.weighted_sum(
            |t| s.is_subset_of(t).then(|| (0, t.len() - s.len() + 1)),
            |_, k| rational::frac(1, k as i64),
        ))
    }

    /// `Σ_{T∩S≠∅} (|S∩T|/|T|)·Δ(T)`, equal to `Σ_{i∈S} SV_i`.
    pub fn sum_of_shapley(&self, s: Coalition) -> Result<Rational> {
        self.check(s)?;
        Ok(self.weighted_sum(
            |t| t.intersects(s).then(|| (t.intersection(s).len(), t.len())),
            |q, t| rational::frac(q as i64, t as i64),
        ))
    }

    pub fn scaled_intersection_shapley(&self, s: Coalition) -> Result<Rational> {
        Ok(self.intersection_shapley(s)? * int_of(s.len()))
    }

    pub fn worth(&self, s: Coalition) -> Result<Rational> {
        self.check(s)?;
        Ok(self.game.worth(s).clone())
    }

    pub fn dividend(&self, s: Coalition) -> Result<Rational> {
        self.check(s)?;
        Ok(self.dividends.get(s).clone())
    }

    /// `φ_S = Σ_{T∩S≠∅} p(|S∩T|, |T|)·Δ(T)`
    pub fn group_semivalue(&self, s: Coalition, w: &SemivalueWeights) -> Result<Rational> {
        self.check(s)?;
        w.require(self.game.n())?;
        Ok(self
            .weighted_sum(|t| t.intersects(s).then(|| (t.intersection(s).len(), t.len())), |q, t| w.get(q, t).clone()))
    }

    /// `φ_S = Σ_{T⊇S} p(|S|, |T|)·Δ(T)`; the dual of [`Self::group_semivalue`]
    /// under the same weights.
    pub fn synergistic_semivalue(&self, s: Coalition, w: &SemivalueWeights) -> Result<Rational> {
        self.check(s)?;
        w.require(self.game.n())?;
        Ok(self.weighted_sum(|t| s.is_subset_of(t).then(|| (s.len(), t.len())), |q, t| w.get(q, t).clone()))
    }

    /// `Σ_{∅≠T⊆S} (-1)^{|T|-1}·IS_T`, which equals `US_S`.
    pub fn union_via_inclusion_exclusion(&self, s: Coalition) -> Result<Rational> {
        self.check(s)?;
        s.nonempty_subsets()
            .map(|t| {
                let is = self.intersection_shapley(t)?;
                Ok(if t.len() % 2 == 1 { is } else { -is })
            })
            .sum()
    }

    pub fn value(&self, value: &GroupValue, s: Coalition) -> Result<Rational> {
        match value {
            GroupValue::Shapley | GroupValue::SumShapley => self.sum_of_shapley(s),
            GroupValue::Banzhaf => {
                self.check(s)?;
                Ok(player_values::banzhaf(self.game).sum_over(s))
            }
            GroupValue::UnionShapley => self.union_shapley(s),
            GroupValue::IntersectionShapley => self.intersection_shapley(s),
            GroupValue::MergeShapley => self.merge_shapley(s),
            GroupValue::InteractionIndex => self.interaction_index(s),
            GroupValue::ScaledIntersectionShapley => self.scaled_intersection_shapley(s),
            GroupValue::Worth => self.worth(s),
            GroupValue::Dividend => self.dividend(s),
            GroupValue::Semivalue(w) => self.group_semivalue(s, w),
            GroupValue::Synergistic(w) => self.synergistic_semivalue(s, w),
        }
    }

    /// Shapley values from the cached dividends.
    pub fn shapley(&self) -> PlayerValueVector {
        player_values::shapley_from_dividends(&self.dividends, Execution::Sequential)
    }

    /// Every non-empty coalition's value.
    pub fn table(&self, value: &GroupValue, exec: Execution) -> Result<GroupValueTable> {
        let n = self.game.n();
        let size = 1usize << n;
        let values = match value {
            GroupValue::UnionShapley => {
                // US_S = P(N) - Σ_{T ⊆ N∖S} Δ(T)/|T|
                let mut below = self.dividends.shares();
                let potential: Rational = below.iter().sum();
                transforms::subset_sum_in_place(&mut below, exec);
                let full = size - 1;
                (0..size).map(|m| if m == 0 { Rational::zero() } else { &potential - &below[full & !m] }).collect()
            }
            GroupValue::IntersectionShapley | GroupValue::ScaledIntersectionShapley => {
                let mut above = self.dividends.shares();
                transforms::superset_sum_in_place(&mut above, exec);
                above[0] = Rational::zero();
                if *value == GroupValue::ScaledIntersectionShapley {
                    for (m, x) in above.iter_mut().enumerate() {
                        *x *= int_of(m.count_ones() as usize);
                    }
                }
                above
            }
            GroupValue::Worth => self.game.worths().to_vec(),
            GroupValue::Dividend => self.dividends.values().to_vec(),
            GroupValue::Shapley | GroupValue::SumShapley | GroupValue::Banzhaf => {
                let players =
                    if *value == GroupValue::Banzhaf { player_values::banzhaf(self.game) } else { self.shapley() };
                let mut sums = vec![Rational::zero(); size];
                for m in 1..size {
                    let low = m.trailing_zeros() as usize;
                    sums[m] = &sums[m & (m - 1)] + &players[low];
                }
                sums
            }
            other => {
                if let Some(w) = other.weights(n) {
                    w.require(n)?;
                }
                let computed: Vec<Result<Rational>> = exec::map_indices(exec, size, |m| {
                    if m == 0 {
                        Ok(Rational::zero())
                    } else {
                        self.value(other, Coalition(m as u64))
                    }
                });
                computed.into_iter().collect::<Result<Vec<_>>>()?
            }
        };
        Ok(GroupValueTable { n, values })
    }
}

/// Values of all `2^n - 1` non-empty coalitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupValueTable {
    n: usize,
    /// Indexed by mask; entry 0 is unused and holds 0.
    values: Vec<Rational>,
}

impl GroupValueTable {
    pub fn from_fn<F: FnMut(Coalition) -> Result<Rational>>(n: usize, mut f: F) -> Result<GroupValueTable> {
        let mut values = vec![Rational::zero(); 1 << n];
        for (m, slot) in values.iter_mut().enumerate().skip(1) {
            *slot = f(Coalition(m as u64))?;
        }
        Ok(GroupValueTable { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, c: Coalition) -> &Rational {
        debug_assert!(!c.is_empty());
        &self.values[c.index()]
    }

    /// Non-empty coalitions with their values, in mask order.
    pub fn iter(&self) -> impl Iterator<Item = (Coalition, &Rational)> {
        self.values.iter().enumerate().skip(1).map(|(m, v)| (Coalition(m as u64), v))
    }
}

pub fn union_shapley(g: &Game, s: Coalition) -> Result<Rational> {
    GroupEvaluator::new(g).union_shapley(s)
}

pub fn intersection_shapley(g: &Game, s: Coalition) -> Result<Rational> {
    GroupEvaluator::new(g).intersection_shapley(s)
}

pub fn merge_shapley(g: &Game, s: Coalition) -> Result<Rational> {
    GroupEvaluator::new(g).merge_shapley(s)
}

pub fn interaction_index(g: &Game, s: Coalition) -> Result<Rational> {
    GroupEvaluator::new(g).interaction_index(s)
}

pub fn sum_of_shapley(g: &Game, s: Coalition) -> Result<Rational> {
    GroupEvaluator::new(g).sum_of_shapley(s)
}

pub fn coalition_dividend(g: &Game, s: Coalition) -> Result<Rational> {
    GroupEvaluator::new(g).dividend(s)
}

pub fn coalition_worth(g: &Game, s: Coalition) -> Result<Rational> {
    g.check_nonempty(s)?;
    Ok(g.worth(s).clone())
}

pub fn group_semivalue(g: &Game, s: Coalition, w: &SemivalueWeights) -> Result<Rational> {
    GroupEvaluator::new(g).group_semivalue(s, w)
}

pub fn synergistic_semivalue(g: &Game, s: Coalition, w: &SemivalueWeights) -> Result<Rational> {
    GroupEvaluator::new(g).synergistic_semivalue(s, w)
}

pub fn union_via_inclusion_exclusion(g: &Game, s: Coalition) -> Result<Rational> {
    GroupEvaluator::new(g).union_via_inclusion_exclusion(s)
}

/// Merge Shapley value as the Shapley value of the fused player in the
/// merged game.
pub fn merge_shapley_via_merged_game(g: &Game, s: Coalition) -> Result<Rational> {
    let merged = g.merged(s)?;
    Ok(player_values::shapley_marginal(&merged.game)[merged.merged].clone())
}

/// Union Shapley value as the drop in potential when `s` leaves the game.
pub fn union_shapley_via_potential(g: &Game, s: Coalition) -> Result<Rational> {
    g.check_nonempty(s)?;
    let before = transforms::potential(g);
    if s == g.grand() {
        return Ok(before);
    }
    Ok(before - transforms::potential(&g.remove_players(s)?.game))
}

pub fn full_table(g: &Game, value: &GroupValue) -> Result<GroupValueTable> {
    full_table_with(g, value, Execution::default())
}

pub fn full_table_with(g: &Game, value: &GroupValue, exec: Execution) -> Result<GroupValueTable> {
    GroupEvaluator::with_execution(g, exec).table(value, exec)
}
