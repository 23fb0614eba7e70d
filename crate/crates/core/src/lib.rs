//! Sequent calculi as data.
//!
//! Calculi are lists of rule schemas; [`stahlize::stahlize_calculus`]
//! reverses the arrow in every sequent of every rule. The engine searches
//! for and checks proofs in any represented calculus, and
//! [`semantics`] supplies a truth-table oracle to compare against.

pub mod calculus;
pub mod engine;
pub mod formula;
pub mod semantics;
pub mod stahlize;

pub use calculus::{builtin_calculus, Binding, BuiltinId, Calculus, RuleSchema, Sequent};
pub use engine::{check_proof, search, ProofTree, SearchConfig, SearchResult};
pub use formula::{parse_formula, parse_sequent, print_formula, Formula, Term};
