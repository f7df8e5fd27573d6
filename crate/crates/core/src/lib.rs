//! Proof search and neighbourhood semantics for intuitionistic non-normal
//! modal logics.

pub mod calculus;
pub mod corpus;
pub mod formula;
pub mod hilbert;
pub mod proof;
pub mod prover;
pub mod semantics;
pub mod transform;

pub use calculus::{logic_rules, LogicId, RuleId, RuleSet};
pub use formula::{parse, parse_formula, parse_sequent, Formula, Sequent};
pub use prover::{decide, Verdict};
