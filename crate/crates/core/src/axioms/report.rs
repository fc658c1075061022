use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::Game;
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Efficiency,
    ShapleyConsistency,
    Symmetry,
    Linearity,
    NullPlayer,
    DummyPlayer,
    DummifyingPlayer,
    WeakMonotonicity,
    Monotonicity,
    BalancedContributions,
    Potential,
    PotentialReconstruction,
    NullPlayerOut,
    /// Union Shapley against the potential function itself.
    PotentialFunction,
    /// The two ordering-weight summation identities.
    WeightIdentities,
}

impl Axiom {
    /// Axioms that take a group value and a game.
    pub const PER_VALUE: [Axiom; 13] = [
        Axiom::Efficiency,
        Axiom::ShapleyConsistency,
        Axiom::Symmetry,
        Axiom::Linearity,
        Axiom::NullPlayer,
        Axiom::DummyPlayer,
        Axiom::DummifyingPlayer,
        Axiom::WeakMonotonicity,
        Axiom::Monotonicity,
        Axiom::BalancedContributions,
        Axiom::Potential,
        Axiom::PotentialReconstruction,
        Axiom::NullPlayerOut,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Efficiency => "efficiency",
            Axiom::ShapleyConsistency => "shapley-consistency",
            Axiom::Symmetry => "symmetry",
            Axiom::Linearity => "linearity",
            Axiom::NullPlayer => "null-player",
            Axiom::DummyPlayer => "dummy-player",
            Axiom::DummifyingPlayer => "dummifying-player",
            Axiom::WeakMonotonicity => "weak-monotonicity",
            Axiom::Monotonicity => "monotonicity",
            Axiom::BalancedContributions => "balanced-contributions",
            Axiom::Potential => "potential",
            Axiom::PotentialReconstruction => "potential-reconstruction",
            Axiom::NullPlayerOut => "null-player-out",
            Axiom::PotentialFunction => "potential-function",
            Axiom::WeightIdentities => "weight-identities",
        }
    }

    /// Parses a comma-separated list; `all` expands to [`Axiom::PER_VALUE`].
    pub fn parse_list(text: &str) -> Result<Vec<Axiom>> {
        if text.trim() == "all" {
            return Ok(Axiom::PER_VALUE.to_vec());
        }
        text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(str::parse).collect()
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Axiom> {
        Axiom::PER_VALUE
            .iter()
            .chain(&[Axiom::PotentialFunction, Axiom::WeightIdentities])
            .copied()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::UnknownAxiom(s.to_string()))
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Axiom {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    /// The precondition never applied (no null player, game not positive, ...).
    Vacuous,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Vacuous => "vacuous",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Equal,
    #[serde(rename = ">=")]
    AtLeast,
}

/// Concrete inputs that falsify an axiom, with both sides of the violated
/// relation. Which fields are populated depends on the axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Player count of the primary game, or of the identity's player set.
    pub n: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub games: Vec<Game>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub coalitions: Vec<Coalition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub player: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub permutation: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_rational")]
    pub scalar: Option<Rational>,
    #[serde(with = "rational::serde_str")]
    pub lhs: Rational,
    pub relation: Relation,
    #[serde(with = "rational::serde_str")]
    pub rhs: Rational,
    pub description: String,
}

fn opt_rational<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&rational::to_fraction_string(r)),
        None => s.serialize_none(),
    }
}

impl Witness {
    pub(crate) fn new(n: usize, lhs: Rational, rhs: Rational, description: String) -> Witness {
        Witness {
            n,
            games: Vec::new(),
            coalitions: Vec::new(),
            player: None,
            permutation: None,
            scalar: None,
            lhs,
            relation: Relation::Equal,
            rhs,
            description,
        }
    }

    pub(crate) fn game(mut self, g: &Game) -> Witness {
        self.games.push(g.clone());
        self
    }

    pub(crate) fn coalition(mut self, c: Coalition) -> Witness {
        self.coalitions.push(c);
        self
    }

    pub(crate) fn player(mut self, i: usize) -> Witness {
        self.player = Some(i);
        self
    }

    /// Whether `lhs relation rhs` is violated.
    pub fn is_violation(&self) -> bool {
        match self.relation {
            Relation::Equal => self.lhs != self.rhs,
            Relation::AtLeast => self.lhs < self.rhs,
        }
    }
}

/// Outcome of one axiom check on one input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub value: String,
    pub verdict: Verdict,
    /// Number of equations or inequalities evaluated.
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notice: Option<String>,
}

impl AxiomReport {
    pub(crate) fn pass(axiom: Axiom, value: &str, cases: usize) -> AxiomReport {
        AxiomReport { axiom, value: value.to_string(), verdict: Verdict::Pass, cases, witness: None, notice: None }
    }

    pub(crate) fn vacuous(axiom: Axiom, value: &str, notice: &str) -> AxiomReport {
        AxiomReport {
            axiom,
            value: value.to_string(),
            verdict: Verdict::Vacuous,
            cases: 0,
            witness: None,
            notice: Some(notice.to_string()),
        }
    }

    pub(crate) fn fail(axiom: Axiom, value: &str, cases: usize, witness: Witness) -> AxiomReport {
        AxiomReport {
            axiom,
            value: value.to_string(),
            verdict: Verdict::Fail,
            cases,
            witness: Some(witness),
            notice: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    /// Folds reports of the same axiom over several inputs: the first failure
    /// wins, otherwise any genuine pass makes the result a pass.
    pub fn combine(axiom: Axiom, value: &str, reports: impl IntoIterator<Item = AxiomReport>) -> AxiomReport {
        let mut cases = 0;
        let mut any_pass = false;
        let mut notice = None;
        for r in reports {
            cases += r.cases;
            match r.verdict {
                Verdict::Fail => return AxiomReport { cases, ..r },
                Verdict::Pass => any_pass = true,
                Verdict::Vacuous => notice = notice.or(r.notice),
            }
        }
        if any_pass {
            AxiomReport::pass(axiom, value, cases)
        } else {
            AxiomReport { cases, ..AxiomReport::vacuous(axiom, value, notice.as_deref().unwrap_or("no inputs")) }
        }
    }
}
