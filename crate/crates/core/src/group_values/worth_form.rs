//! Group values written directly over coalition worths, without dividends.
//!
//! These are the ordering-weighted sums and alternating sums; they are slower
//! than the dividend forms and exist as an independent computation path.

use num_traits::Zero;

use crate::coalition::Coalition;
use crate::error::Result;
use crate::game::Game;
use crate::player_values;
use crate::rational::{self, Rational};

fn shapley_weights(n: usize) -> Vec<Rational> {
    (0..=n).map(|t| if t == 0 { Rational::zero() } else { rational::shapley_weight(n, t) }).collect()
}

fn merge_weights(n: usize, s: usize) -> Vec<Rational> {
    (0..=n - s).map(|t| rational::merge_weight(n, s, t)).collect()
}

/// `Σ_{R⊆S} (-1)^{|R|} v(T∖R)`
fn alternating_removal(g: &Game, t: Coalition, s: Coalition) -> Rational {
    s.subsets()
        .map(|r| {
            let w = g.worth(t.difference(r));
            if r.len() % 2 == 0 {
                w.clone()
            } else {
                -w
            }
        })
        .sum()
}

/// `US_S = Σ_T ((|T|-1)!(n-|T|)!/n!)·(v(T) - v(T∖S))`
pub fn union_shapley(g: &Game, s: Coalition) -> Result<Rational> {
    g.check_nonempty(s)?;
    let w = shapley_weights(g.n());
    Ok((1..1u64 << g.n())
        .map(Coalition)
        .filter(|t| t.intersects(s))
        .map(|t| &w[t.len()] * (g.worth(t) - g.worth(t.difference(s))))
        .sum())
}

/// `IS_S = Σ_{T⊇S} ((|T|-1)!(n-|T|)!/n!)·Σ_{R⊆S} (-1)^{|R|} v(T∖R)`
pub fn intersection_shapley(g: &Game, s: Coalition) -> Result<Rational> {
    g.check_nonempty(s)?;
    let w = shapley_weights(g.n());
    Ok(s.supersets_within(g.grand()).map(|t| &w[t.len()] * alternating_removal(g, t, s)).sum())
}

/// `MS_S = Σ_{T⊆N∖S} (|T|!(n-|T|-|S|)!/(n-|S|+1)!)·(v(T∪S) - v(T))`
pub fn merge_shapley(g: &Game, s: Coalition) -> Result<Rational> {
    g.check_nonempty(s)?;
    let w = merge_weights(g.n(), s.len());
    Ok(g.grand().difference(s).subsets().map(|t| &w[t.len()] * (g.worth(t.union(s)) - g.worth(t))).sum())
}

/// `II_S = Σ_{T⊆N∖S} (|T|!(n-|T|-|S|)!/(n-|S|+1)!)·Σ_{R⊆S} (-1)^{|S|-|R|} v(T∪R)`
pub fn interaction_index(g: &Game, s: Coalition) -> Result<Rational> {
    g.check_nonempty(s)?;
    let w = merge_weights(g.n(), s.len());
    Ok(g.grand()
        .difference(s)
        .subsets()
        .map(|t| {
            let inner: Rational = s
                .subsets()
                .map(|r| {
                    let v = g.worth(t.union(r));
                    if (s.len() - r.len()).is_multiple_of(2) {
                        v.clone()
                    } else {
                        -v
                    }
                })
                .sum();
            &w[t.len()] * inner
        })
        .sum())
}

/// `Σ_{i∈S} SV_i` with Shapley taken in marginal-contribution form.
pub fn sum_of_shapley(g: &Game, s: Coalition) -> Result<Rational> {
    g.check_nonempty(s)?;
    Ok(player_values::shapley_marginal(g).sum_over(s))
}

/// `|S|·IS_S` in worth form.
pub fn scaled_intersection_shapley(g: &Game, s: Coalition) -> Result<Rational> {
    Ok(intersection_shapley(g, s)? * Rational::from_integer((s.len() as i64).into()))
}

/// `Δ_v(S) = Σ_{T⊆S} (-1)^{|S|-|T|} v(T)`
pub fn dividend(g: &Game, s: Coalition) -> Result<Rational> {
    g.check_nonempty(s)?;
    Ok(s.subsets()
        .map(|t| {
            let w = g.worth(t);
            if (s.len() - t.len()).is_multiple_of(2) {
                w.clone()
            } else {
                -w
            }
        })
        .sum())
}
