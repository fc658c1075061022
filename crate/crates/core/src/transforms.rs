//! Harsanyi dividends via the fast Möbius transform on the subset lattice,
//! the inverse zeta transform, and the potential function.
//!
//! All transforms are the in-place `O(n·2^n)` butterfly: for each player
//! bit, every coalition containing the bit is combined with its partner
//! without the bit.

use num_traits::Zero;

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::game::{check_player_count, Game};
use crate::rational::Rational;

/// Harsanyi dividends `Δ_v(T)` indexed by coalition mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DividendVector {
    n: usize,
    values: Vec<Rational>,
}

impl DividendVector {
    pub fn new(n: usize, values: Vec<Rational>) -> Result<DividendVector> {
        check_player_count(n)?;
        if values.len() != 1 << n {
            return Err(Error::TableLength { expected: 1 << n, got: values.len() });
        }
        if !values[0].is_zero() {
            return Err(Error::NonZeroEmptyDividend);
        }
        Ok(DividendVector { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, c: Coalition) -> &Rational {
        &self.values[c.index()]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Non-zero dividends with their coalitions.
    pub fn support(&self) -> impl Iterator<Item = (Coalition, &Rational)> {
        self.values.iter().enumerate().filter(|(_, d)| !d.is_zero()).map(|(m, d)| (Coalition(m as u64), d))
    }

    /// Dividend shares `Δ_v(T)/|T|`, with 0 at `∅`.
    pub fn shares(&self) -> Vec<Rational> {
        self.values
            .iter()
            .enumerate()
            .map(|(m, d)| {
                if d.is_zero() {
                    Rational::zero()
                } else {
                    d / Rational::from_integer((m.count_ones() as i64).into())
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy)]
enum Butterfly {
    /// `x[T ∪ {i}] += x[T]`
    SubsetSum,
    /// `x[T ∪ {i}] -= x[T]`
    SubsetDifference,
    /// `x[T] += x[T ∪ {i}]`
    SupersetSum,
}

fn apply_pair(kind: Butterfly, low: &mut Rational, high: &mut Rational) {
    match kind {
        Butterfly::SubsetSum => {
            if !low.is_zero() {
                *high += &*low
            }
        }
        Butterfly::SubsetDifference => {
            if !low.is_zero() {
                *high -= &*low
            }
        }
        Butterfly::SupersetSum => {
            if !high.is_zero() {
                *low += &*high
            }
        }
    }
}

#[cfg(feature = "parallel")]
const PAR_MIN_HALF: usize = 1 << 12;

fn butterfly(xs: &mut [Rational], kind: Butterfly, exec: Execution) {
    assert!(xs.len().is_power_of_two());
    let mut half = 1;
    while half < xs.len() {
        #[cfg(feature = "parallel")]
        if exec.is_parallel() && xs.len() >= 2 * PAR_MIN_HALF {
            use rayon::prelude::*;
            xs.par_chunks_exact_mut(2 * half).for_each(|block| {
                let (low, high) = block.split_at_mut(half);
                if half >= PAR_MIN_HALF {
                    low.par_iter_mut().zip(high.par_iter_mut()).for_each(|(l, h)| apply_pair(kind, l, h));
                } else {
                    low.iter_mut().zip(high).for_each(|(l, h)| apply_pair(kind, l, h));
                }
            });
            half *= 2;
            continue;
        }
        let _ = exec;
        for block in xs.chunks_exact_mut(2 * half) {
            let (low, high) = block.split_at_mut(half);
            low.iter_mut().zip(high).for_each(|(l, h)| apply_pair(kind, l, h));
        }
        half *= 2;
    }
}

/// Zeta transform: `x[S] ← Σ_{T⊆S} x[T]`.
pub fn subset_sum_in_place(xs: &mut [Rational], exec: Execution) {
    butterfly(xs, Butterfly::SubsetSum, exec);
}

/// Möbius transform: `x[S] ← Σ_{T⊆S} (-1)^{|S|-|T|} x[T]`.
pub fn mobius_in_place(xs: &mut [Rational], exec: Execution) {
    butterfly(xs, Butterfly::SubsetDifference, exec);
}

/// Superset zeta transform: `x[S] ← Σ_{T⊇S} x[T]`.
pub fn superset_sum_in_place(xs: &mut [Rational], exec: Execution) {
    butterfly(xs, Butterfly::SupersetSum, exec);
}

pub fn dividends(g: &Game) -> DividendVector {
    dividends_with(g, Execution::default())
}

pub fn dividends_with(g: &Game, exec: Execution) -> DividendVector {
    let mut values = g.worths().to_vec();
    mobius_in_place(&mut values, exec);
    DividendVector { n: g.n(), values }
}

/// Reassembles `v = Σ_S Δ(S)·u_S`.
pub fn game_from_dividends(d: &DividendVector) -> Game {
    game_from_dividends_with(d, Execution::default())
}

pub fn game_from_dividends_with(d: &DividendVector, exec: Execution) -> Game {
    let mut values = d.values.clone();
    subset_sum_in_place(&mut values, exec);
    Game::new(d.n, values).expect("zeta transform preserves shape and v(∅) = 0")
}

/// `P(N, v) = Σ_{T≠∅} Δ_v(T)/|T|`. The potential of a game without players
/// is 0 and is the caller's concern.
pub fn potential(g: &Game) -> Rational {
    potential_from_dividends(&dividends(g))
}

pub fn potential_from_dividends(d: &DividendVector) -> Rational {
    let mut by_size = vec![Rational::zero(); d.n + 1];
    for (c, v) in d.support() {
        by_size[c.len()] += v;
    }
    by_size
        .into_iter()
        .enumerate()
        .skip(1)
        .filter(|(_, s)| !s.is_zero())
        .map(|(t, s)| s / Rational::from_integer((t as i64).into()))
        .sum()
}
