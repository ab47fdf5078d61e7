//! Exact q-character combinatorics and Drinfeld coproduct computations for
//! quantum affinizations.

pub mod exact_arith;
pub mod cartan;
pub mod monomial;
pub mod screening;
pub mod qchar_engine;
pub mod coproduct_lab;
pub mod identities;
pub mod cli;
