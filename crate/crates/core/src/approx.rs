//! Permutation-sampling estimators for Shapley and Union Shapley values.
//!
//! Games are accessed only through a [`WorthOracle`], so player counts up to
//! 64 are possible. The sample budget is cut into fixed blocks of
//! [`BLOCK`] samples; block `b` draws from ChaCha8 seeded with `seed` on
//! stream `b`. Block estimates are merged in block order, which makes the
//! result bit-identical across thread counts and across the sequential and
//! parallel paths.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::exec::{map_indices, Execution};
use crate::game::Game;
use crate::rational;

/// Largest player count an oracle may declare.
pub const ORACLE_MAX_PLAYERS: usize = 64;

/// Samples drawn from one generator stream.
pub const BLOCK: u64 = 4096;

/// Recorded in every [`Estimate`].
pub const GENERATOR: &str = "chacha8 (rand_chacha 0.9), stream = block index, 4096 samples per block";

/// A game given by its worth function. `worth(∅)` must be 0 and repeated
/// queries must agree.
pub trait WorthOracle: Sync {
    fn n(&self) -> usize;
    fn worth(&self, c: Coalition) -> f64;
}

/// Dense table of a [`Game`] rounded to `f64`.
#[derive(Clone, Debug)]
pub struct DenseOracle {
    n: usize,
    worths: Vec<f64>,
}

impl DenseOracle {
    pub fn new(g: &Game) -> DenseOracle {
        DenseOracle { n: g.n(), worths: g.worths().iter().map(rational::to_f64).collect() }
    }
}

impl WorthOracle for DenseOracle {
    fn n(&self) -> usize {
        self.n
    }

    fn worth(&self, c: Coalition) -> f64 {
        self.worths[c.index()]
    }
}

/// An oracle backed by a closure.
pub struct FnOracle<F> {
    n: usize,
    f: F,
}

impl<F: Fn(Coalition) -> f64 + Sync> FnOracle<F> {
    pub fn new(n: usize, f: F) -> Result<FnOracle<F>> {
        if !(1..=ORACLE_MAX_PLAYERS).contains(&n) {
            return Err(Error::PlayerCount(n, ORACLE_MAX_PLAYERS));
        }
        Ok(FnOracle { n, f })
    }
}

impl<F: Fn(Coalition) -> f64 + Sync> WorthOracle for FnOracle<F> {
    fn n(&self) -> usize {
        self.n
    }

    fn worth(&self, c: Coalition) -> f64 {
        if c.is_empty() {
            0.0
        } else {
            (self.f)(c)
        }
    }
}

/// Streaming mean and variance (Welford), mergeable with Chan's update.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let weight = other.count as f64 / count as f64;
        Moments {
            count,
            mean: self.mean + delta * weight,
            m2: self.m2 + other.m2 + delta * delta * self.count as f64 * weight,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub samples: u64,
    /// Sample standard deviation over `√samples`; 0 for a single sample.
    pub std_error: f64,
    pub generator: &'static str,
}

impl From<Moments> for Estimate {
    fn from(m: Moments) -> Estimate {
        let std_error = if m.count < 2 { 0.0 } else { (m.m2 / (m.count - 1) as f64 / m.count as f64).sqrt() };
        Estimate { mean: m.mean, samples: m.count, std_error, generator: GENERATOR }
    }
}

/// `v(P ∪ {i}) - v(P)` where `P` holds the players preceding `i` in `order`.
pub fn shapley_sample(o: &dyn WorthOracle, i: usize, order: &[usize]) -> f64 {
    let before = Coalition::from_players(order.iter().copied().take_while(|&p| p != i));
    o.worth(before.with(i)) - o.worth(before)
}

/// `Σ_k (1/k)·(v(prefix_k) - v(prefix_k ∖ S))` over the prefixes of `order`.
/// Prefixes disjoint from `S` contribute exactly zero and are skipped.
pub fn union_shapley_sample(o: &dyn WorthOracle, s: Coalition, order: &[usize]) -> f64 {
    let mut prefix = Coalition::EMPTY;
    let mut total = 0.0;
    for (k, &p) in order.iter().enumerate() {
        prefix = prefix.with(p);
        if prefix.intersects(s) {
            total += (o.worth(prefix) - o.worth(prefix.difference(s))) / (k + 1) as f64;
        }
    }
    total
}

fn sample_blocks<F>(o: &dyn WorthOracle, samples: u64, seed: u64, exec: Execution, draw: F) -> Result<Estimate>
where
    F: Fn(&[usize]) -> f64 + Sync + Send,
{
    if samples == 0 {
        return Err(Error::ZeroSamples);
    }
    let blocks = samples.div_ceil(BLOCK);
    let n = o.n();
    let parts = map_indices(exec, blocks as usize, |b| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(b as u64);
        let size = BLOCK.min(samples - b as u64 * BLOCK);
        let mut order: Vec<usize> = (0..n).collect();
        let mut m = Moments::default();
        for _ in 0..size {
            order.shuffle(&mut rng);
            m.push(draw(&order));
        }
        m
    });
    Ok(parts.into_iter().fold(Moments::default(), Moments::merge).into())
}

fn check_player(o: &dyn WorthOracle, i: usize) -> Result<()> {
    if i < o.n() {
        Ok(())
    } else {
        Err(Error::PlayerOutOfRange { player: i, n: o.n() })
    }
}

fn check_group(o: &dyn WorthOracle, s: Coalition) -> Result<()> {
    if s.is_empty() {
        return Err(Error::EmptyCoalition);
    }
    if !s.is_subset_of(Coalition::full(o.n())) {
        return Err(Error::CoalitionOutOfRange { mask: s.mask(), n: o.n() });
    }
    Ok(())
}

pub fn approx_shapley(o: &dyn WorthOracle, i: usize, samples: u64, seed: u64) -> Result<Estimate> {
    approx_shapley_with(o, i, samples, seed, Execution::default())
}

pub fn approx_shapley_with(
    o: &dyn WorthOracle,
    i: usize,
    samples: u64,
    seed: u64,
    exec: Execution,
) -> Result<Estimate> {
    check_player(o, i)?;
    sample_blocks(o, samples, seed, exec, |order| shapley_sample(o, i, order))
}

pub fn approx_union_shapley(o: &dyn WorthOracle, s: Coalition, samples: u64, seed: u64) -> Result<Estimate> {
    approx_union_shapley_with(o, s, samples, seed, Execution::default())
}

pub fn approx_union_shapley_with(
    o: &dyn WorthOracle,
    s: Coalition,
    samples: u64,
    seed: u64,
    exec: Execution,
) -> Result<Estimate> {
    check_group(o, s)?;
    sample_blocks(o, samples, seed, exec, |order| union_shapley_sample(o, s, order))
}

/// Mean of `f` over all `n!` orderings of `0..n` (Heap's algorithm).
/// Intended for exact-expectation checks on small `n`.
pub fn mean_over_all_orderings(n: usize, mut f: impl FnMut(&[usize]) -> f64) -> f64 {
    let mut order: Vec<usize> = (0..n).collect();
    let mut counters = vec![0usize; n];
    let mut total = f(&order);
    let mut count = 1u64;
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            let j = if i % 2 == 0 { 0 } else { counters[i] };
            order.swap(j, i);
            total += f(&order);
            count += 1;
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    total / count as f64
}
