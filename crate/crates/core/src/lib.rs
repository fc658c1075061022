//! Exact values for transferable-utility coalitional games.
//!
//! Games are dense worth tables over bitmask coalitions with exact rational
//! entries. On top of them the crate provides
//!
//! - [`transforms`]: dividends (fast Möbius transform) and the potential,
//! - [`player_values`]: Shapley, Banzhaf and β-semivalues,
//! - [`group_values`]: Union, Intersection and Merge Shapley, the Interaction
//!   Index, and the weight-defined group and synergistic semivalues,
//! - [`axioms`]: executable axiom checks with re-checkable witnesses,
//! - [`approx`]: permutation-sampling estimators over worth oracles,
//! - [`gamefile`] and [`corpus`]: JSON game files and seeded random games.
//!
//! Data-parallel kernels take an [`Execution`]; the `parallel` feature
//! (on by default) enables the rayon path.

pub mod approx;
pub mod axioms;
pub mod coalition;
pub mod corpus;
pub mod error;
mod exec;
pub mod game;
pub mod gamefile;
pub mod group_values;
pub mod player_values;
pub mod rational;
pub mod transforms;

pub use coalition::Coalition;
pub use error::{Error, Result};
pub use exec::Execution;
pub use game::{Game, PlayerLabeling, N_MAX};
pub use group_values::{GroupValue, GroupValueTable, SemivalueWeights};
pub use player_values::{BetaWeights, PlayerValueVector};
pub use rational::Rational;
pub use transforms::DividendVector;
