//! Instance generators that encode classic hard problems as robust
//! spanning-tree instances, plus a seeded random generator.
//!
//! Three gadget families make the crate's hardness story executable:
//!
//! * [`label_cover`] — min-max instances whose optimum is at most 1 exactly
//!   when the label-cover input has a labeling satisfying every edge, and at
//!   least `g` when every labeling must spread `g` distinct labels over some
//!   vertex.
//! * [`three_sat`] — negative-cost min-max instances with optimum 0 for
//!   satisfiable formulas and at least `4m` for unsatisfiable ones.
//! * [`set_cover`] — two-stage instances whose optimum equals the minimum
//!   cover size, cost for cost.
//!
//! Each generator ships witness converters in both directions so those
//! correspondences can be checked by evaluation rather than trusted, and
//! emits metadata tying structural roles (hub/label/dummy edges, clause
//! gadgets, set vertices) to concrete edge indices.

pub mod label_cover;
pub mod random;
pub mod set_cover;
pub mod three_sat;

pub use label_cover::{
    gen_label_cover, gen_label_cover_with_cap, labeling_to_tree, ComponentEdgeRole,
    LabelCoverEdge, LabelCoverInstance, LabelCoverMeta, Labeling,
};
pub use random::{gen_random, RandomMeta};
pub use set_cover::{
    cover_to_solution, gen_set_cover, solution_to_cover, SetCoverInstance, SetCoverMeta,
};
pub use three_sat::{
    assignment_to_tree, gen_3sat, parse_dimacs, CnfFormula, Literal, ThreeSatMeta,
};

use std::fmt;

/// Scenario-enumerating generators refuse to materialize more than this many
/// scenarios unless the caller raises the cap explicitly. The label-cover
/// construction is exponential in `g` by design.
pub const DEFAULT_SCENARIO_CAP: u64 = 100_000;

#[derive(Clone, Debug, PartialEq)]
pub enum ReductionError {
    /// The construction would enumerate more scenarios than the cap allows.
    /// Counting stops early, so `count` is a lower bound on the true total.
    ScenarioBlowup { count: u64, cap: u64 },
    /// Label-cover generation requires at least two label pairs per edge so
    /// that every scenario leaves a zero-cost label edge in each component.
    RelationTooSmall { left: usize, right: usize },
    /// The labeling satisfies no pair on the named edge, so it does not
    /// induce a witness tree.
    LabelingNotTotal { left: usize, right: usize },
    /// The assignment leaves the named clause false.
    AssignmentDoesNotSatisfy { clause: usize },
    /// The set collection misses the named element.
    NotACover { element: usize },
    /// The solution uses an edge that no cover-shaped solution may touch.
    SolutionUsesForbiddenEdge { edge: usize },
    /// Parameters that cannot produce a valid instance.
    ParamsInfeasible { detail: String },
}

impl fmt::Display for ReductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionError::ScenarioBlowup { count, cap } => write!(
                f,
                "construction needs at least {count} scenarios, over the cap of {cap}"
            ),
            ReductionError::RelationTooSmall { left, right } => write!(
                f,
                "edge ({left}, {right}) accepts fewer than two label pairs"
            ),
            ReductionError::LabelingNotTotal { left, right } => {
                write!(f, "labeling satisfies no pair on edge ({left}, {right})")
            }
            ReductionError::AssignmentDoesNotSatisfy { clause } => {
                write!(f, "assignment leaves clause {clause} false")
            }
            ReductionError::NotACover { element } => {
                write!(f, "element {element} is not covered by any chosen set")
            }
            ReductionError::SolutionUsesForbiddenEdge { edge } => {
                write!(f, "solution uses forbidden edge {edge}")
            }
            ReductionError::ParamsInfeasible { detail } => {
                write!(f, "infeasible generator parameters: {detail}")
            }
        }
    }
}

impl std::error::Error for ReductionError {}
