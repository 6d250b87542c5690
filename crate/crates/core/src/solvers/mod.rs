//! Reference matching algorithms and exhaustive oracles.

mod blossom;
mod brute_force;
mod hopcroft_karp;
mod kosaraju;

pub use blossom::blossom_mcm;
pub use brute_force::{
    brute_force_mcm, brute_force_mwm, brute_force_vc, MCM_LIMIT, MWM_LIMIT, VC_LIMIT,
};
pub use hopcroft_karp::{hopcroft_karp, BipartiteGraph, BipartiteMatching};
pub use kosaraju::{component_index, kosaraju_scc, Digraph};
