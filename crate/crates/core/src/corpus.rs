//! Seeded random games for tests, benchmarks and the `gen` command.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::Game;
use crate::rational::{self, Rational};
use crate::transforms::{game_from_dividends, DividendVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GameFamily {
    /// Non-negative integer dividends, about half of them zero.
    Positive,
    /// Integer worths drawn uniformly from `[-10, 10]`.
    Uniform,
    /// A short signed combination of unanimity games.
    UnanimityMix,
}

impl GameFamily {
    pub const ALL: [GameFamily; 3] = [GameFamily::Positive, GameFamily::Uniform, GameFamily::UnanimityMix];

    pub fn name(self) -> &'static str {
        match self {
            GameFamily::Positive => "positive",
            GameFamily::Uniform => "uniform",
            GameFamily::UnanimityMix => "unanimity-mix",
        }
    }
}

impl FromStr for GameFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<GameFamily> {
        GameFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::GameFile(format!("unknown game family '{s}'")))
    }
}

impl fmt::Display for GameFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn dividend_game(n: usize, mut dividend: impl FnMut(Coalition) -> Rational) -> Result<Game> {
    let values = (0..1u64 << n).map(|m| if m == 0 { Rational::zero() } else { dividend(Coalition(m)) }).collect();
    Ok(game_from_dividends(&DividendVector::new(n, values)?))
}

/// Random game on players `0..n` whose dividends live on the coalitions of
/// `support`; players outside `support` are null.
fn draw(rng: &mut ChaCha8Rng, n: usize, family: GameFamily, support: Coalition) -> Result<Game> {
    match family {
        GameFamily::Positive => dividend_game(n, |t| {
            if t.is_subset_of(support) && rng.random_bool(0.5) {
                rational::int(rng.random_range(1..=5))
            } else {
                Rational::zero()
            }
        }),
        GameFamily::Uniform => {
            let worths: Vec<Rational> = (0..1u64 << support.len())
                .map(|m| if m == 0 { Rational::zero() } else { rational::int(rng.random_range(-10..=10)) })
                .collect();
            let members: Vec<usize> = support.players().collect();
            Game::from_fn(n, |c| {
                let local =
                    members.iter().enumerate().filter(|(_, &p)| c.contains(p)).fold(0u64, |m, (k, _)| m | 1 << k);
                worths[local as usize].clone()
            })
        }
        GameFamily::UnanimityMix => {
            let mut d = vec![Rational::zero(); 1 << n];
            if !support.is_empty() {
                let terms = rng.random_range(support.len()..=2 * support.len());
                for _ in 0..terms {
                    let t = Coalition(rng.random_range(1..=support.mask()) & support.mask());
                    if t.is_empty() {
                        continue;
                    }
                    let mut c = rng.random_range(-5..=4);
                    if c >= 0 {
                        c += 1;
                    }
                    d[t.index()] += rational::int(c);
                }
            }
            Ok(game_from_dividends(&DividendVector::new(n, d)?))
        }
    }
}

/// One game of `family` on `n` players, fully determined by `seed`.
pub fn generate(n: usize, family: GameFamily, seed: u64) -> Result<Game> {
    crate::game::check_player_count(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    draw(&mut rng, n, family, Coalition::full(n))
}

/// A mixed corpus for axiom matrices. Besides the three random families it
/// rotates in games with a null player, games with a dummy player, additive
/// games and `v(S) = min(|S|, 2)`, so that the conditional axioms are
/// exercised rather than vacuous.
pub fn axiom_corpus(count: usize, max_n: usize, seed: u64) -> Result<Vec<Game>> {
    let max_n = max_n.max(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut games = Vec::with_capacity(count);
    for k in 0..count {
        let n = rng.random_range(2..=max_n);
        let grand = Coalition::full(n);
        let last = n - 1;
        let family = GameFamily::ALL[k % 3];
        let game = match k % 7 {
            0..=2 => draw(&mut rng, n, family, grand)?,
            3 => draw(&mut rng, n, family, grand.without(last))?,
            4 => {
                let base = draw(&mut rng, n, family, grand.without(last))?;
                let single = rational::int(rng.random_range(-3..=3));
                let solo = Game::unanimity(n, Coalition::singleton(last))?;
                Game::linear_combine(&[(rational::int(1), &base), (single, &solo)])?
            }
            5 => {
                let singles: Vec<Rational> = (0..n).map(|_| rational::int(rng.random_range(-4..=4))).collect();
                Game::additive(&singles)?
            }
            _ => Game::from_fn(n, |c| rational::int(c.len().min(2) as i64))?,
        };
        games.push(game);
    }
    Ok(games)
}
