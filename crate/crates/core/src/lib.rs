//! Solvers for the two-player shortest path game.
//!
//! Two players alternately extend a walk from `s` towards `t`, each paying for
//! the edges they choose. The crate computes the subgame perfect equilibrium
//! play: by exhaustive backward induction on any graph ([`engine`]), in linear
//! time on DAGs ([`dag`]) and in polynomial time on cactus graphs
//! ([`cactus`]). Instances from Geography and quantified SAT are produced by
//! [`reductions`].

pub mod cactus;
pub mod cost;
pub mod dag;
pub mod dispatch;
pub mod engine;
pub mod error;
pub mod gen;
pub mod graph;
pub mod io;
pub mod reductions;
pub mod rules;
pub mod session;
pub mod solution;

pub use cost::{Cost, CostPair, OptionRank};
pub use error::{Result, RuleTag, SpgError};
pub use graph::{GameGraph, GraphClass, VertexId};
pub use io::GraphDocument;
pub use solution::Solution;
