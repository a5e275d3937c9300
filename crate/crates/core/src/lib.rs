//! Decorated equational proofs for computations with global states.
//!
//! The crate provides the term language ([`term`]), the theories of states
//! and of a bank account ([`theory`]), a small trusted proof checker
//! ([`kernel`]), translations to undecorated and explicit state-passing
//! form ([`translate`]) and a finite-model evaluator ([`semantics`]).

pub mod cli;
pub mod corpus;
pub mod kernel;
pub mod syntax;
pub mod term;
pub mod theory;
pub mod semantics;
pub mod translate;
