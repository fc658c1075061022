//! Coalitions as player bitmasks.

use std::fmt;

use serde::{Serialize, Serializer};

/// A set of players; bit `i` is set iff player `i` belongs to the coalition.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coalition(pub u64);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    /// The grand coalition of `n` players.
    pub fn full(n: usize) -> Coalition {
        debug_assert!(n <= 64);
        if n == 64 {
            Coalition(u64::MAX)
        } else {
            Coalition((1u64 << n) - 1)
        }
    }

    pub fn singleton(player: usize) -> Coalition {
        Coalition(1u64 << player)
    }

    pub fn from_players<I: IntoIterator<Item = usize>>(players: I) -> Coalition {
        Coalition(players.into_iter().fold(0, |m, p| m | (1u64 << p)))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, player: usize) -> bool {
        player < 64 && self.0 >> player & 1 == 1
    }

    pub fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Coalition) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: Coalition) -> Coalition {
        Coalition(self.0 | other.0)
    }

    pub fn intersection(self, other: Coalition) -> Coalition {
        Coalition(self.0 & other.0)
    }

    pub fn difference(self, other: Coalition) -> Coalition {
        Coalition(self.0 & !other.0)
    }

    pub fn with(self, player: usize) -> Coalition {
        Coalition(self.0 | 1u64 << player)
    }

    pub fn without(self, player: usize) -> Coalition {
        Coalition(self.0 & !(1u64 << player))
    }

    /// Players in ascending order.
    pub fn players(self) -> Players {
        Players(self.0)
    }

    pub fn lowest(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// All subsets of `self`, including the empty set and `self`, in
    /// decreasing mask order.
    pub fn subsets(self) -> Subsets {
        Subsets { full: self.0, next: Some(self.0) }
    }

    /// All non-empty subsets.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = Coalition> {
        self.subsets().filter(|c| !c.is_empty())
    }

    /// Every superset of `self` within `universe`.
    pub fn supersets_within(self, universe: Coalition) -> impl Iterator<Item = Coalition> {
        let base = self;
        universe.difference(self).subsets().map(move |extra| base.union(extra))
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders 1-based player numbers, e.g. `{1,3}`.
impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, p) in self.players().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", p + 1)?;
        }
        f.write_str("}")
    }
}

/// Serialized as the ascending list of 0-based player indices.
impl Serialize for Coalition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.players())
    }
}

pub struct Players(u64);

impl Iterator for Players {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let p = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Players {}

pub struct Subsets {
    full: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = Coalition;

    fn next(&mut self) -> Option<Coalition> {
        let cur = self.next?;
        self.next = if cur == 0 { None } else { Some((cur - 1) & self.full) };
        Some(Coalition(cur))
    }
}

/// Non-empty coalitions of `n` players ordered by size, then lexicographically
/// by their sorted player lists.
pub fn by_size_then_players(n: usize) -> Vec<Coalition> {
    let mut all: Vec<Coalition> = (1..1u64 << n).map(Coalition).collect();
    all.sort_by_key(|c| (c.len(), c.players().collect::<Vec<_>>()));
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let s = Coalition::from_players([0, 2]);
        assert_eq!(s.len(), 2);
        assert!(s.contains(2) && !s.contains(1));
        assert_eq!(s.union(Coalition::singleton(1)), Coalition::full(3));
        assert_eq!(s.difference(Coalition::singleton(0)), Coalition::singleton(2));
        assert!(s.is_subset_of(Coalition::full(3)));
        assert_eq!(s.players().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(s.to_string(), "{1,3}");
        assert_eq!(Coalition::full(64).len(), 64);
    }

    #[test]
    fn subset_enumeration() {
        let s = Coalition::from_players([1, 3, 4]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|c| c.is_subset_of(s)));
        assert_eq!(s.nonempty_subsets().count(), 7);
        assert_eq!(Coalition::EMPTY.subsets().count(), 1);
        let sup: Vec<_> = Coalition::singleton(0).supersets_within(Coalition::full(3)).collect();
        assert_eq!(sup.len(), 4);
    }

    #[test]
    fn table_ordering() {
        let order = by_size_then_players(3);
        let text: Vec<String> = order.iter().map(|c| c.to_string()).collect();
        assert_eq!(text, ["{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]);
    }
}
