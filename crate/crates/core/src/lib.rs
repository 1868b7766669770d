//! Gauss diagram calculus for two-component links.
//!
//! The crate implements signed oriented Gauss diagrams on two labeled
//! circles, the bracket pairing of arrow-diagram patterns with diagrams,
//! the two-component Reidemeister rewrite calculus, parametrized link
//! families, and an empirical solver that recovers invariant pattern
//! combinations from move-induced linear constraints.

pub mod bracket;
pub mod diagram;
pub mod families;
pub mod formula;
pub mod lab;
pub mod moves;
pub mod par;

pub use bracket::{
    bracket, brute_force_oracle, evaluate, evaluate_many, BracketError, BracketValue, Formula,
    FormulaTable, PatSign, Pattern,
};
pub use diagram::{Arrow, ArrowId, CanonicalForm, Comp, DiagramError, End, Endpoint, GaussDiagram, Sign};
