//! Exact combinatorics behind matching characterizations of amenability.
//!
//! Everything here is finite and exact: coverings of finite ground sets,
//! maximum bipartite matchings with Hall certificates, finitely generated
//! group models, finitely supported means with rational weights, Følner-type
//! certificate search, and a Ramsey matching checker for finite rational
//! metric spaces.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line and anything touching IO live in the `matchlab` companion crate.
#![no_std]
#![warn(missing_debug_implementations, rust_2018_idioms)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bipartite;
pub mod cover;
pub mod folner;
pub mod groups;
pub mod means;
pub mod ramsey;
pub mod rational;

pub use bipartite::{BipartiteGraph, MatchingWitness};
pub use cover::{Covering, GroundSet};
pub use groups::{FiniteAction, GroupElem, GroupModel};
pub use means::{ConvexCombination, FiniteFunction};
pub use rational::Rational;
