use num_traits::{One, Signed};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, frac, Rational};

/// Triangular weights `p(q, t)` for `1 <= q <= t <= n`: the weight of a
/// dividend `Δ(T)` with `|T| = t` and `|S ∩ T| = q` when valuing `S`.
///
/// The same collection parameterizes a group semivalue and its dual
/// synergistic semivalue. Construction enforces non-negativity and
/// `p(1, 1) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemivalueWeights {
    /// `rows[t - 1][q - 1] = p(q, t)`
    rows: Vec<Vec<Rational>>,
}

impl SemivalueWeights {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<SemivalueWeights> {
        if rows.is_empty() {
            return Err(Error::InvalidWeights("at least one row is required".into()));
        }
        for (k, row) in rows.iter().enumerate() {
            let t = k + 1;
            if row.len() != t {
                return Err(Error::InvalidWeights(format!("row t={t} has {} entries, expected {t}", row.len())));
            }
            if let Some(q) = row.iter().position(|p| p.is_negative()) {
                return Err(Error::InvalidWeights(format!(
                    "p(q={}, t={t}) = {} is negative",
                    q + 1,
                    rational::to_fraction_string(&row[q])
                )));
            }
        }
        if !rows[0][0].is_one() {
            return Err(Error::InvalidWeights(format!(
                "p(1, 1) must be 1, got {}",
                rational::to_fraction_string(&rows[0][0])
            )));
        }
        Ok(SemivalueWeights { rows })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Rational>(n: usize, mut f: F) -> Result<SemivalueWeights> {
        SemivalueWeights::new((1..=n).map(|t| (1..=t).map(|q| f(q, t)).collect()).collect())
    }

    /// `p(q, t) = 1/t`: Union Shapley / Intersection Shapley.
    pub fn union_shapley(n: usize) -> SemivalueWeights {
        SemivalueWeights::from_fn(n, |_, t| frac(1, t as i64)).expect("valid")
    }

    /// `p(q, t) = 1/(t - q + 1)`: Merge Shapley / Interaction Index.
    pub fn merge_shapley(n: usize) -> SemivalueWeights {
        SemivalueWeights::from_fn(n, |q, t| frac(1, (t - q + 1) as i64)).expect("valid")
    }

    /// `p(q, t) = q/t`: sum of Shapley values / `|S|·IS_S`.
    pub fn sum_of_shapley(n: usize) -> SemivalueWeights {
        SemivalueWeights::from_fn(n, |q, t| frac(q as i64, t as i64)).expect("valid")
    }

    /// `p(q, t) = [q = t]`: coalition worth / coalition dividend.
    pub fn worth(n: usize) -> SemivalueWeights {
        SemivalueWeights::from_fn(n, |q, t| rational::int((q == t) as i64)).expect("valid")
    }

    /// Largest player count these weights cover.
    pub fn max_players(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, q: usize, t: usize) -> &Rational {
        &self.rows[t - 1][q - 1]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub(crate) fn require(&self, n: usize) -> Result<()> {
        if self.max_players() < n {
            Err(Error::MissingWeights { have: self.max_players(), need: n })
        } else {
            Ok(())
        }
    }

    /// The group semivalue agrees with Shapley on singletons iff
    /// `p(1, t) = 1/t` for all `t`.
    pub fn is_shapley_consistent(&self) -> bool {
        (1..=self.max_players()).all(|t| *self.get(1, t) == frac(1, t as i64))
    }
}

impl Serialize for SemivalueWeights {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            self.rows.iter().map(|r| r.iter().map(rational::to_fraction_string).collect()).collect();
        let mut st = s.serialize_struct("SemivalueWeights", 1)?;
        st.serialize_field("p", &rows)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn validation() {
        assert!(SemivalueWeights::new(vec![]).is_err());
        assert!(SemivalueWeights::new(vec![vec![int(2)]]).is_err());
        assert!(SemivalueWeights::new(vec![vec![int(1)], vec![int(1)]]).is_err());
        assert!(SemivalueWeights::new(vec![vec![int(1)], vec![int(-1), int(0)]]).is_err());
        let w = SemivalueWeights::new(vec![vec![int(1)], vec![frac(1, 2), int(3)]]).unwrap();
        assert_eq!(*w.get(2, 2), int(3));
        assert_eq!(w.max_players(), 2);
    }

    #[test]
    fn shapley_consistency_of_presets() {
        assert!(SemivalueWeights::union_shapley(6).is_shapley_consistent());
        assert!(SemivalueWeights::merge_shapley(6).is_shapley_consistent());
        assert!(SemivalueWeights::sum_of_shapley(6).is_shapley_consistent());
        assert!(!SemivalueWeights::worth(6).is_shapley_consistent());
        assert!(SemivalueWeights::worth(1).is_shapley_consistent());
    }
}
