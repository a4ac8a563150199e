//! Strictly balanced uniform hypergraphs and the machinery around them:
//! structural primitives, density certificates, prescribed-density
//! constructions, rooted-extension classification, t-closures, random-model
//! experiment harnesses and the Ehrenfeucht game.

pub mod balance;
pub mod closure;
pub mod construct;
mod error;
pub mod hypergraph;
pub mod randmodel;

pub use balance::{is_strictly_balanced, max_density, BalanceVerdict};
pub use closure::{
    closure_t, closure_t_shuffled, finite_closure_constants, is_generic_extension,
    rigid_extensions, same_t_type, validate_chain, ClosureResult,
};
pub use construct::{
    construct_circular, construct_strictly_balanced, construct_tree, lift_arity, DensityTarget,
};
pub mod extension;
pub mod game;
pub use error::{Error, Result};
pub use game::{
    adjudicate, duplicator_respond, lookahead_schedule, play_match, run_tournament, GameState,
    GreedyDegreeSpoiler, HumanSpoiler, MatchOutcome, PolicyKind, RandomSpoiler, Side,
    SpoilerPolicy, Status, TournamentConfig, TournamentReport,
};
pub use extension::{
    classify_rooted, expected_extensions, witness_structure, Exponent, Polarity,
    RootedHypergraph, Taxonomy, WitnessStructure,
};
pub use hypergraph::{format_rational, CycleWitness, Hypergraph, Rational};
pub use randmodel::{
    contains_copy, count_copies, count_extensions, replicate_rng, run_experiment, sample,
    EdgeSampler, ExperimentConfig, ExperimentReport,
};
