//! Individual player values: Shapley, Banzhaf and size-weighted semivalues.

use std::ops::Index;

use num_traits::{One, Zero};

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::game::Game;
use crate::rational::{self, Rational};
use crate::transforms::{self, DividendVector};

/// One value per player.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayerValueVector {
    values: Vec<Rational>,
}

impl PlayerValueVector {
    pub fn new(values: Vec<Rational>) -> PlayerValueVector {
        PlayerValueVector { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn total(&self) -> Rational {
        self.values.iter().sum()
    }

    /// Σ over the members of `c`.
    pub fn sum_over(&self, c: Coalition) -> Rational {
        c.players().map(|i| &self.values[i]).sum()
    }
}

impl Index<usize> for PlayerValueVector {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.values[i]
    }
}

/// Marginal-contribution weights keyed by coalition size: `weight(t)` is the
/// factor applied to `v(T) - v(T∖{i})` when `|T| = t`, for `1 <= t <= n`.
///
/// No normalization is imposed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaWeights {
    by_size: Vec<Rational>,
}

impl BetaWeights {
    /// `by_size[k]` is the weight for coalitions of size `k + 1`.
    pub fn new(by_size: Vec<Rational>) -> BetaWeights {
        BetaWeights { by_size }
    }

    pub fn from_fn<F: FnMut(usize) -> Rational>(n: usize, f: F) -> BetaWeights {
        BetaWeights { by_size: (1..=n).map(f).collect() }
    }

    /// `(t-1)!(n-t)!/n!`
    pub fn shapley(n: usize) -> BetaWeights {
        BetaWeights::from_fn(n, |t| rational::shapley_weight(n, t))
    }

    /// `1/2^{n-1}` for every size.
    pub fn banzhaf(n: usize) -> BetaWeights {
        let w = Rational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(2), n - 1));
        BetaWeights::from_fn(n, |_| w.clone())
    }

    pub fn max_players(&self) -> usize {
        self.by_size.len()
    }

    pub fn weight(&self, t: usize) -> &Rational {
        &self.by_size[t - 1]
    }
}

pub fn shapley(g: &Game) -> PlayerValueVector {
    shapley_with(g, Execution::default())
}

pub fn shapley_with(g: &Game, exec: Execution) -> PlayerValueVector {
    shapley_from_dividends(&transforms::dividends_with(g, exec), exec)
}

/// `SV_i = Σ_{T∋i} Δ(T)/|T|`. Dividends are bucketed by size per player so
/// that only `n` divisions happen per player.
pub fn shapley_from_dividends(d: &DividendVector, exec: Execution) -> PlayerValueVector {
    let n = d.n();
    let values = exec::map_indices(exec, n, |i| {
        let mut by_size = vec![Rational::zero(); n + 1];
        let others = Coalition::full(n).without(i);
        for rest in others.subsets() {
            let t = rest.with(i);
            let div = d.get(t);
            if !div.is_zero() {
                by_size[t.len()] += div;
            }
        }
        by_size
            .into_iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(t, s)| s / Rational::from_integer((t as i64).into()))
            .sum()
    });
    PlayerValueVector { values }
}

/// Shapley value through the ordering-weighted marginal contributions. This
/// path never touches dividends and serves as a cross-check.
pub fn shapley_marginal(g: &Game) -> PlayerValueVector {
    semivalue(g, &BetaWeights::shapley(g.n())).expect("weights sized to the game")
}

/// `φ^β_i = Σ_{T∋i} β(|T|)·(v(T) - v(T∖{i}))`.
pub fn semivalue(g: &Game, beta: &BetaWeights) -> Result<PlayerValueVector> {
    semivalue_with(g, beta, Execution::default())
}

pub fn semivalue_with(g: &Game, beta: &BetaWeights, exec: Execution) -> Result<PlayerValueVector> {
    let n = g.n();
    if beta.max_players() < n {
        return Err(Error::MissingWeights { have: beta.max_players(), need: n });
    }
    let values = exec::map_indices(exec, n, |i| {
        let mut by_size = vec![Rational::zero(); n + 1];
        for rest in g.grand().without(i).subsets() {
            let t = rest.with(i);
            by_size[t.len()] += g.worth(t) - g.worth(rest);
        }
        by_size
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(t, s)| !s.is_zero() && !beta.weight(*t).is_zero())
            .map(|(t, s)| s * beta.weight(t))
            .sum()
    });
    Ok(PlayerValueVector { values })
}

pub fn banzhaf(g: &Game) -> PlayerValueVector {
    semivalue(g, &BetaWeights::banzhaf(g.n())).expect("weights sized to the game")
}

/// Whether the β weights sum to 1 over all coalitions containing a fixed
/// player, i.e. `Σ_t C(n-1, t-1)·β(t) = 1`.
pub fn is_probabilistic(beta: &BetaWeights, n: usize) -> bool {
    let total: Rational =
        (1..=n).map(|t| Rational::from_integer(rational::binomial(n - 1, t - 1)) * beta.weight(t)).sum();
    total.is_one()
}
