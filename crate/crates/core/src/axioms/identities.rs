//! The two summation identities over ordering weights, verified by literally
//! enumerating the coalitions `T` in each sum.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::{Axiom, AxiomReport, Witness};
use crate::coalition::Coalition;
use crate::rational::{self, Rational};

const VALUE_NAME: &str = "ordering-weights";

/// Sums `weight(|T|)` over the listed sets, counting sizes first so each
/// distinct weight is multiplied once.
fn weighted_count(n: usize, sets: impl Iterator<Item = Coalition>, weight: impl Fn(usize) -> Rational) -> Rational {
    let mut counts = vec![0u64; n + 1];
    for t in sets {
        counts[t.len()] += 1;
    }
    counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(t, &c)| weight(t) * Rational::from_integer(c.into())).sum()
}

/// `Σ_{T: Q⊆T⊆N} (|T|-1)!(n-|T|)!/n!` for non-empty `Q`.
pub fn ordering_sum(n: usize, q: Coalition) -> Rational {
    assert!(!q.is_empty(), "ordering sum needs a non-empty Q");
    weighted_count(n, q.supersets_within(Coalition::full(n)), |t| rational::shapley_weight(n, t))
}

/// `Σ_{T: Q∖S⊆T⊆N∖S} |T|!(n-|T|-|S|)!/(n-|S|+1)!`
pub fn merged_ordering_sum(n: usize, q: Coalition, s: Coalition) -> Rational {
    let rest = Coalition::full(n).difference(s);
    weighted_count(n, q.difference(s).supersets_within(rest), |t| rational::merge_weight(n, s.len(), t))
}

fn reciprocal(k: usize) -> Rational {
    Rational::one() / Rational::from_integer(k.into())
}

/// Both sides of one identity instance: `[Q]` selects the Shapley-weight
/// identity, `[Q, S]` the merged one.
pub(crate) fn identity_sides(n: usize, coalitions: &[Coalition]) -> (Rational, Rational) {
    match coalitions {
        [q] => (ordering_sum(n, *q), reciprocal(q.len())),
        [q, s] => (merged_ordering_sum(n, *q, *s), reciprocal(q.len() - s.intersection(*q).len() + 1)),
        _ => (Rational::zero(), Rational::one()),
    }
}

fn check_instances(n: usize, instances: impl Iterator<Item = Vec<Coalition>>) -> AxiomReport {
    let mut cases = 0;
    for coalitions in instances {
        cases += 1;
        let (lhs, rhs) = identity_sides(n, &coalitions);
        if lhs != rhs {
            let description = if coalitions.len() == 1 {
                "Σ_{Q⊆T} (|T|-1)!(n-|T|)!/n! vs 1/|Q|"
            } else {
                "Σ_{Q∖S⊆T⊆N∖S} |T|!(n-|T|-|S|)!/(n-|S|+1)! vs 1/(|Q|-|S∩Q|+1)"
            };
            let mut w = Witness::new(n, lhs, rhs, description.into());
            w.coalitions = coalitions;
            return AxiomReport::fail(Axiom::WeightIdentities, VALUE_NAME, cases, w);
        }
    }
    AxiomReport::pass(Axiom::WeightIdentities, VALUE_NAME, cases)
}

/// Both identities for every non-empty `Q` and every pair `(Q, S)` over `n`
/// players.
pub fn check_weight_identities(n: usize) -> AxiomReport {
    let all = move || (0..1u64 << n).map(Coalition);
    let single = all().skip(1).map(|q| vec![q]);
    let pairs = all().flat_map(move |q| all().map(move |s| vec![q, s]));
    check_instances(n, single.chain(pairs))
}

/// Both identities on `count` seeded random pairs `(Q, S)` with `Q` non-empty.
pub fn check_weight_identities_sampled(n: usize, count: usize, seed: u64) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = (1u64 << n) - 1;
    let instances: Vec<Vec<Coalition>> = (0..count)
        .flat_map(|_| {
            let q = Coalition(rng.random_range(1..=top));
            let s = Coalition(rng.random_range(0..=top));
            [vec![q], vec![q, s]]
        })
        .collect();
    check_instances(n, instances.into_iter())
}
