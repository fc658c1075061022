use serde::Serialize;

use super::*;
use crate::corpus::{self, GameFamily};
use crate::exec::{map_indices, Execution};

/// Extra inputs needed by the axioms that relate several games.
#[derive(Clone, Debug)]
pub struct AxiomContext {
    /// Second game for additivity.
    pub companion: Game,
    /// Scalar for homogeneity.
    pub scalar: Rational,
    pub permutations: Vec<Vec<usize>>,
}

impl AxiomContext {
    /// A seeded companion game, the scalar `-3/2`, the cyclic shift and the
    /// swap of the first and last players.
    pub fn for_game(g: &Game, seed: u64) -> Result<AxiomContext> {
        let n = g.n();
        let shift: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, n - 1);
        Ok(AxiomContext {
            companion: corpus::generate(n, GameFamily::Uniform, seed)?,
            scalar: crate::rational::frac(-3, 2),
            permutations: vec![shift, swap],
        })
    }
}

/// Runs one axiom on one game.
pub fn check(axiom: Axiom, f: &dyn GroupValueFn, g: &Game, ctx: &AxiomContext) -> Result<AxiomReport> {
    match axiom {
        Axiom::Efficiency => check_efficiency(f, g),
        Axiom::ShapleyConsistency => check_shapley_consistency(f, g),
        Axiom::Symmetry => {
            let reports = ctx.permutations.iter().map(|p| check_symmetry(f, g, p)).collect::<Result<Vec<_>>>()?;
            Ok(AxiomReport::combine(axiom, &f.name(), reports))
        }
        Axiom::Linearity => check_linearity(f, g, &ctx.companion, &ctx.scalar),
        Axiom::NullPlayer => check_null_player(f, g),
        Axiom::DummyPlayer => check_dummy_player(f, g),
        Axiom::DummifyingPlayer => check_dummifying_player(f, g),
        Axiom::WeakMonotonicity => check_weak_monotonicity(f, g),
        Axiom::Monotonicity => check_monotonicity(f, g),
        Axiom::BalancedContributions => check_balanced_contributions_all(f, g),
        Axiom::Potential => check_potential(f, g),
        Axiom::PotentialReconstruction => check_potential_reconstruction(f, g),
        Axiom::NullPlayerOut => check_null_player_out(f, g),
        Axiom::PotentialFunction => check_potential_consistency(g),
        Axiom::WeightIdentities => Ok(check_weight_identities(g.n())),
    }
}

/// Verdicts of every value against every axiom, each folded over a corpus.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomMatrix {
    pub values: Vec<String>,
    pub axioms: Vec<Axiom>,
    pub games: usize,
    /// `cells[v][a]` is the report of value `v` on axiom `a`.
    pub cells: Vec<Vec<AxiomReport>>,
}

impl AxiomMatrix {
    pub fn cell(&self, value: &str, axiom: Axiom) -> Option<&AxiomReport> {
        let v = self.values.iter().position(|x| x == value)?;
        let a = self.axioms.iter().position(|&x| x == axiom)?;
        Some(&self.cells[v][a])
    }
}

/// Games are checked independently, in parallel when `exec` allows.
pub fn axiom_matrix(
    values: &[&dyn GroupValueFn],
    axioms: &[Axiom],
    games: &[Game],
    exec: Execution,
) -> Result<AxiomMatrix> {
    let per_game: Vec<Result<Vec<Vec<AxiomReport>>>> = map_indices(exec, games.len(), |k| {
        let g = &games[k];
        let ctx = AxiomContext::for_game(g, 0x5eed ^ k as u64)?;
        values.iter().map(|f| axioms.iter().map(|&a| check(a, *f, g, &ctx)).collect()).collect()
    });
    let per_game = per_game.into_iter().collect::<Result<Vec<_>>>()?;
    let cells = values
        .iter()
        .enumerate()
        .map(|(v, f)| {
            axioms
                .iter()
                .enumerate()
                .map(|(a, &axiom)| AxiomReport::combine(axiom, &f.name(), per_game.iter().map(|r| r[v][a].clone())))
                .collect()
        })
        .collect();
    Ok(AxiomMatrix {
        values: values.iter().map(|f| f.name()).collect(),
        axioms: axioms.to_vec(),
        games: games.len(),
        cells,
    })
}
