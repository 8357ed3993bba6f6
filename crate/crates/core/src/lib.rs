//! Signed analytic tableaux for propositional and first-order logic.
//!
//! Proofs are written as linear, numbered scripts in which `{ … }` delimits
//! the two branches opened by a splitting rule. [`checker::check`] verifies
//! every line, [`latex`] rebuilds the tree as qtree source, and [`prover`]
//! decides propositional sequents for cross-checking.

pub mod checker;
pub mod corpus;
pub mod formula;
pub mod latex;
pub mod prover;
pub mod report;
pub mod rules;
pub mod script;
