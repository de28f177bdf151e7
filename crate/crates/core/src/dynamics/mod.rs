//! The stochastic category `(C, μ, R)`: excitation state, rules and the step engine.

mod config;
mod rules;
mod state;
mod trace;

pub use config::RuleConfig;
pub use rules::{
    apply_anti_fork, apply_fork, apply_neighboring, fork_candidates, fork_pairs, inject_metaphor,
    protected_generators, ForkCandidate, Injection,
};
pub use state::{
    basic_closure, check_basic_rule, composite_weight, ExcitationState, ExcitedSubcategory,
    ForkWatch, WeightTable,
};
pub use trace::{
    graph_digest, run, step, Event, EventKind, ForkRef, MetaphorRecord, Rule, Simulation, Trace,
};
