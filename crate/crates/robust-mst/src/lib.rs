//! Robust spanning tree solvers for graphs with discrete cost scenarios.
//!
//! A scenario assigns one cost to every edge; an adversary picks the worst
//! scenario after we commit to a tree. This crate implements three flavours
//! of that game:
//!
//! * **min-max** — minimize the worst-case tree cost over all scenarios,
//! * **min-max regret** — minimize the worst-case gap to the scenario optimum,
//! * **two-stage min-max** — buy some edges now at first-stage prices and
//!   finish the tree after the scenario is revealed.
//!
//! The toolbox:
//!
//! * [`lp`] — a fractional relaxation solved by cutting planes over the cut
//!   polytope, with a binary search for the smallest feasible budget. The
//!   budget is a lower bound on the integral optimum.
//! * [`rounding`] — randomized rounding of the fractional solution by
//!   repeated independent edge sampling, giving an `O(log n)`-factor
//!   guarantee for min-max and `O(log n + log K)` for two-stage.
//! * [`exact`] — brute-force enumeration and branch and bound, used as
//!   ground truth on small instances.
//! * [`reductions`] — generators that encode label cover, 3-SAT, and set
//!   cover instances as robust spanning tree problems, witnessing how the
//!   approximability gaps arise; plus a random instance generator.
//!
//! The primary interface is the `examples/` directory — one runnable
//! program per capability:
//!
//! ```text
//! cargo run --example minmax_pipeline      # LP bound + rounding vs exact
//! cargo run --example two_stage_pipeline   # first stage / recourse solver
//! cargo run --example exact_oracles        # brute force and branch & bound
//! cargo run --example label_cover_gap      # label cover encoding
//! cargo run --example three_sat_gap        # 3-SAT encoding, negative costs
//! cargo run --example set_cover_two_stage  # cost-preserving set cover encoding
//! cargo run --example baseline_vs_lp       # mean-scenario MST vs LP rounding
//! ```
//!
//! A thin `robust-mst` binary exposes the same machinery as `generate`,
//! `solve`, `eval`, and `bench` subcommands; see the README for the file
//! formats and exit codes.
//!
//! All randomness flows from explicit `u64` seeds through SplitMix64-based
//! streams, so every run is replayable byte for byte.

pub mod cli;
pub mod exact;
pub mod graph;
pub mod instances;
pub mod lp;
pub mod reductions;
pub mod report;
pub mod rng;
pub mod rounding;

pub use graph::{CutSide, EdgeSet, Graph};
pub use instances::{MinMaxInstance, TwoStageInstance, TwoStageSolution};
