//! Counting, uniform sampling and structural/logical analysis of labelled
//! graphs in which every vertex has degree at most `R`.
//!
//! The crate is organised around the configuration (pairing) model:
//!
//! * [`graph`]: immutable graphs, multigraphs and configurations together
//!   with structural statistics (degrees, cycles, paths, balls, connectivity,
//!   components, automorphisms, census).
//! * [`counting`]: exact big-integer/rational evaluation of matching counts,
//!   degree-class weights and Poisson limit quantities, with log-space float
//!   shadows for large instances.
//! * [`sampler`]: provably uniform sampling of bounded-degree graphs and
//!   multigraphs via degree-class selection, uniform pairing and rejection.
//! * [`logic`]: first-order sentences over graphs: parser, model checker,
//!   Ehrenfeucht–Fraïssé game solver and limiting-probability estimation.
//! * [`oracle`]: brute-force enumeration at tiny scale, used as ground truth
//!   by the test suites and the `oracle` CLI subcommand.
//! * [`stats`]: small statistical helpers (chi-square, Wilson intervals,
//!   total variation) shared by experiments and tests.

pub mod counting;
pub mod graph;
pub mod logic;
pub mod oracle;
pub mod sampler;
pub mod stats;

pub use graph::{CensusReport, Configuration, Graph, Multigraph, StructureProfile};
