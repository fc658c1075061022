//! Dense coalitional games and the algebra on them.

use std::collections::HashSet;

use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::transforms;

/// Largest player count for dense worth tables.
pub const N_MAX: usize = 20;

/// A game `(N, v)` with `N = {0, .., n-1}` and `v` stored as a table indexed
/// by coalition mask. `v(∅) = 0` always holds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Game {
    n: usize,
    worths: Vec<Rational>,
}

/// A game obtained by removing players, with the map back to the original
/// player indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubGame {
    pub game: Game,
    /// `embed[k]` is the original index of surviving player `k`.
    pub embed: Vec<usize>,
}

/// A game in which a coalition has been fused into a single player.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergedGame {
    pub game: Game,
    /// Index of the fused player in `game`.
    pub merged: usize,
    /// `members[k]` is the original coalition represented by new player `k`.
    pub members: Vec<Coalition>,
}

pub(crate) fn check_player_count(n: usize) -> Result<()> {
    if (1..=N_MAX).contains(&n) {
        Ok(())
    } else {
        Err(Error::PlayerCount(n, N_MAX))
    }
}

impl Game {
    pub fn new(n: usize, worths: Vec<Rational>) -> Result<Game> {
        check_player_count(n)?;
        if worths.len() != 1 << n {
            return Err(Error::TableLength { expected: 1 << n, got: worths.len() });
        }
        if !worths[0].is_zero() {
            return Err(Error::NonZeroEmptyWorth);
        }
        Ok(Game { n, worths })
    }

    /// Builds a game from a worth function; the value at `∅` is ignored.
    pub fn from_fn<F: FnMut(Coalition) -> Rational>(n: usize, mut f: F) -> Result<Game> {
        check_player_count(n)?;
        let worths = (0..1u64 << n).map(|m| if m == 0 { Rational::zero() } else { f(Coalition(m)) }).collect();
        Ok(Game { n, worths })
    }

    pub fn zero(n: usize) -> Result<Game> {
        Game::from_fn(n, |_| Rational::zero())
    }

    /// The unanimity game `u_S`: worth 1 on every superset of `s`.
    pub fn unanimity(n: usize, s: Coalition) -> Result<Game> {
        check_player_count(n)?;
        if s.is_empty() {
            return Err(Error::EmptyCoalition);
        }
        check_coalition(n, s)?;
        Game::from_fn(n, |t| if s.is_subset_of(t) { rational::int(1) } else { Rational::zero() })
    }

    /// The additive game `v(S) = Σ_{i∈S} singles[i]`.
    pub fn additive(singles: &[Rational]) -> Result<Game> {
        Game::from_fn(singles.len(), |t| t.players().map(|i| &singles[i]).sum())
    }

    /// `Σ_k c_k · v_k`.
    pub fn linear_combine(terms: &[(Rational, &Game)]) -> Result<Game> {
        let (_, first) = terms.first().ok_or(Error::EmptyCombination)?;
        let n = first.n;
        if let Some((_, g)) = terms.iter().find(|(_, g)| g.n != n) {
            return Err(Error::PlayerCountMismatch(n, g.n));
        }
        let worths = (0..1usize << n)
            .map(|m| {
                terms
                    .iter()
                    .filter(|(c, g)| !c.is_zero() && !g.worths[m].is_zero())
                    .map(|(c, g)| c * &g.worths[m])
                    .sum()
            })
            .collect();
        Ok(Game { n, worths })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grand(&self) -> Coalition {
        Coalition::full(self.n)
    }

    pub fn worth(&self, c: Coalition) -> &Rational {
        &self.worths[c.index()]
    }

    pub fn worths(&self) -> &[Rational] {
        &self.worths
    }

    pub fn into_worths(self) -> Vec<Rational> {
        self.worths
    }

    pub fn check_coalition(&self, c: Coalition) -> Result<()> {
        check_coalition(self.n, c)
    }

    pub fn check_nonempty(&self, c: Coalition) -> Result<()> {
        if c.is_empty() {
            return Err(Error::EmptyCoalition);
        }
        self.check_coalition(c)
    }

    /// The game `π(v)` with `π(v)(π(T)) = v(T)`; `perm[i]` is `π(i)`.
    pub fn permute(&self, perm: &[usize]) -> Result<Game> {
        check_permutation(self.n, perm)?;
        let mut worths = vec![Rational::zero(); 1 << self.n];
        for (m, w) in self.worths.iter().enumerate() {
            worths[apply_permutation(perm, Coalition(m as u64)).index()] = w.clone();
        }
        Ok(Game { n: self.n, worths })
    }

    /// The game `(N ∖ S, v)`, with survivors re-indexed in ascending order.
    pub fn remove_players(&self, s: Coalition) -> Result<SubGame> {
        self.check_coalition(s)?;
        let keep = self.grand().difference(s);
        if keep.is_empty() {
            return Err(Error::RemovesAllPlayers);
        }
        let embed: Vec<usize> = keep.players().collect();
        let n = embed.len();
        let worths = (0..1u64 << n).map(|m| self.worth(embed_coalition(&embed, Coalition(m))).clone()).collect();
        Ok(SubGame { game: Game { n, worths }, embed })
    }

    /// Fuses `s` into a single player placed at the position of the lowest
    /// member of `s`; other players keep their relative order.
    pub fn merged(&self, s: Coalition) -> Result<MergedGame> {
        self.check_nonempty(s)?;
        let lowest = s.lowest().expect("non-empty");
        let members: Vec<Coalition> = (0..self.n)
            .filter(|&i| !s.contains(i) || i == lowest)
            .map(|i| if i == lowest { s } else { Coalition::singleton(i) })
            .collect();
        let merged = members.iter().position(|&c| c == s).expect("merged player present");
        let n = members.len();
        let worths = (0..1u64 << n)
            .map(|m| {
                let original = Coalition(m).players().fold(Coalition::EMPTY, |acc, k| acc.union(members[k]));
                self.worth(original).clone()
            })
            .collect();
        Ok(MergedGame { game: Game { n, worths }, merged, members })
    }

    /// `v(S ∪ {i}) = v(S)` for all `S ⊆ N ∖ {i}`.
    pub fn is_null_player(&self, i: usize) -> bool {
        i < self.n && self.contributions(i).all(|(with, without)| with == without)
    }

    /// `v(S ∪ {i}) = v(S) + v({i})` for all `S ⊆ N ∖ {i}`.
    pub fn is_dummy_player(&self, i: usize) -> bool {
        if i >= self.n {
            return false;
        }
        let single = self.worth(Coalition::singleton(i));
        self.contributions(i).all(|(with, without)| *with == without + single)
    }

    pub fn null_players(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.is_null_player(i)).collect()
    }

    pub fn dummy_players(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.is_dummy_player(i)).collect()
    }

    /// All Harsanyi dividends are non-negative.
    pub fn is_positive(&self) -> bool {
        transforms::dividends(self).values().iter().all(|d| !d.is_negative())
    }

    /// `v(S) <= v(T)` whenever `S ⊆ T`. Checking single-player extensions
    /// suffices.
    pub fn is_monotone(&self) -> bool {
        (0..self.n).all(|i| self.contributions(i).all(|(with, without)| with >= without))
    }

    /// Pairs `(v(S ∪ {i}), v(S))` over `S ⊆ N ∖ {i}`.
    fn contributions(&self, i: usize) -> impl Iterator<Item = (&Rational, &Rational)> {
        let others = self.grand().without(i);
        others.subsets().map(move |s| (self.worth(s.with(i)), self.worth(s)))
    }
}

/// Serialized as `{"n": .., "worths": ["p/q", ..]}` indexed by mask.
impl Serialize for Game {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let worths: Vec<String> = self.worths.iter().map(rational::to_fraction_string).collect();
        let mut st = s.serialize_struct("Game", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("worths", &worths)?;
        st.end()
    }
}

pub(crate) fn check_coalition(n: usize, c: Coalition) -> Result<()> {
    if c.is_subset_of(Coalition::full(n)) {
        Ok(())
    } else {
        Err(Error::CoalitionOutOfRange { mask: c.mask(), n })
    }
}

pub fn check_permutation(n: usize, perm: &[usize]) -> Result<()> {
    let distinct: HashSet<usize> = perm.iter().copied().collect();
    if perm.len() != n || distinct.len() != n || perm.iter().any(|&p| p >= n) {
        return Err(Error::NotAPermutation(n));
    }
    Ok(())
}

/// `π(S) = {π(i) : i ∈ S}`.
pub fn apply_permutation(perm: &[usize], c: Coalition) -> Coalition {
    Coalition::from_players(c.players().map(|i| perm[i]))
}

pub fn invert_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// Maps a coalition of re-indexed players back to original indices.
pub fn embed_coalition(embed: &[usize], c: Coalition) -> Coalition {
    Coalition::from_players(c.players().map(|k| embed[k]))
}

impl SubGame {
    /// Translates an original-index coalition contained in the survivors into
    /// subgame indices. Players that were removed are dropped.
    pub fn project(&self, c: Coalition) -> Coalition {
        Coalition::from_players(self.embed.iter().enumerate().filter(|(_, &orig)| c.contains(orig)).map(|(k, _)| k))
    }

    pub fn embed(&self, c: Coalition) -> Coalition {
        embed_coalition(&self.embed, c)
    }
}

/// Human-facing player names; position `i` names player `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayerLabeling {
    labels: Vec<String>,
}

impl PlayerLabeling {
    pub fn new(labels: Vec<String>) -> Result<PlayerLabeling> {
        let mut seen = HashSet::new();
        for l in &labels {
            if l.trim().is_empty() {
                return Err(Error::GameFile("player labels must be non-empty".into()));
            }
            if l.contains(',') {
                return Err(Error::GameFile(format!("player label {l:?} contains a comma")));
            }
            if !seen.insert(l.as_str()) {
                return Err(Error::GameFile(format!("duplicate player label {l:?}")));
            }
        }
        Ok(PlayerLabeling { labels })
    }

    /// `A, B, C, ...` for up to 26 players, `P1, P2, ...` beyond.
    pub fn default_for(n: usize) -> PlayerLabeling {
        let labels = (0..n)
            .map(|i| if n <= 26 { char::from(b'A' + i as u8).to_string() } else { format!("P{}", i + 1) })
            .collect();
        PlayerLabeling { labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label.trim())
    }

    /// Parses comma-separated labels such as `"A,C"` (order-insensitive).
    pub fn parse_coalition(&self, text: &str) -> Result<Coalition> {
        let mut c = Coalition::EMPTY;
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let i = self.index_of(part).ok_or_else(|| Error::GameFile(format!("unknown player label {part:?}")))?;
            c = c.with(i);
        }
        Ok(c)
    }

    pub fn format_coalition(&self, c: Coalition) -> String {
        c.players().map(|i| self.labels[i].as_str()).collect::<Vec<_>>().join(",")
    }
}
