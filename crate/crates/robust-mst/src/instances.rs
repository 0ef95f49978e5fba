//! Instance types, objective evaluators, and the instance file format.
//!
//! A scenario set Γ = {S_1, …, S_K} assigns every edge one cost per
//! scenario. [`MinMaxInstance`] carries just those costs; a
//! [`TwoStageInstance`] adds first-stage prices paid before the scenario is
//! revealed. Evaluators are pure; per-scenario optima are cached lazily on
//! first use.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::graph::{is_spanning_tree, kruskal_mst, EdgeSet, Graph, GraphError, UnionFind};
use crate::report::canonical_json_pretty;

#[derive(Clone, Debug, PartialEq)]
pub enum InstanceError {
    /// The document is not valid instance JSON.
    Schema { message: String },
    /// A cost row does not have one entry per edge. `scenario` is `None`
    /// for the first-stage row.
    RowLengthMismatch {
        scenario: Option<usize>,
        expected: usize,
        actual: usize,
    },
    /// A cost is NaN or infinite.
    NonFiniteCost { scenario: Option<usize>, edge: usize },
    /// Instances must have at least one scenario.
    NoScenarios,
    /// Instance graphs must be connected.
    Disconnected,
    /// The evaluated edge set is not a spanning tree.
    NotASpanningTree,
    /// A two-stage solution violates its invariants; `scenario` names the
    /// offending completion when one scenario in particular is at fault.
    InvalidTwoStageSolution {
        scenario: Option<usize>,
        reason: String,
    },
    Graph(GraphError),
}

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceError::Schema { message } => {
                write!(f, "invalid instance document: {message}")
            }
            InstanceError::RowLengthMismatch {
                scenario,
                expected,
                actual,
            } => match scenario {
                Some(s) => write!(
                    f,
                    "scenario {s} has {actual} costs, expected {expected} (one per edge)"
                ),
                None => write!(
                    f,
                    "first-stage row has {actual} costs, expected {expected} (one per edge)"
                ),
            },
            InstanceError::NonFiniteCost { scenario, edge } => match scenario {
                Some(s) => write!(f, "scenario {s}, edge {edge}: cost is not finite"),
                None => write!(f, "first-stage edge {edge}: cost is not finite"),
            },
            InstanceError::NoScenarios => write!(f, "instance has no scenarios"),
            InstanceError::Disconnected => write!(f, "instance graph is not connected"),
            InstanceError::NotASpanningTree => {
                write!(f, "edge set is not a spanning tree of the instance graph")
            }
            InstanceError::InvalidTwoStageSolution { scenario, reason } => match scenario {
                Some(s) => write!(f, "invalid two-stage solution (scenario {s}): {reason}"),
                None => write!(f, "invalid two-stage solution: {reason}"),
            },
            InstanceError::Graph(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for InstanceError {}

impl From<GraphError> for InstanceError {
    fn from(e: GraphError) -> Self {
        InstanceError::Graph(e)
    }
}

fn validate_row(
    scenario: Option<usize>,
    row: &[f64],
    num_edges: usize,
) -> Result<(), InstanceError> {
    if row.len() != num_edges {
        return Err(InstanceError::RowLengthMismatch {
            scenario,
            expected: num_edges,
            actual: row.len(),
        });
    }
    if let Some(edge) = row.iter().position(|c| !c.is_finite()) {
        return Err(InstanceError::NonFiniteCost { scenario, edge });
    }
    Ok(())
}

fn validate_scenarios(graph: &Graph, scenarios: &[Vec<f64>]) -> Result<(), InstanceError> {
    if scenarios.is_empty() {
        return Err(InstanceError::NoScenarios);
    }
    for (s, row) in scenarios.iter().enumerate() {
        validate_row(Some(s), row, graph.num_edges())?;
    }
    if !graph.is_connected() {
        return Err(InstanceError::Disconnected);
    }
    Ok(())
}

/// A robust spanning tree instance: pick one tree, an adversary picks the
/// worst scenario.
#[derive(Debug)]
pub struct MinMaxInstance {
    name: String,
    graph: Graph,
    scenarios: Vec<Vec<f64>>,
    scenario_opts: OnceLock<Vec<f64>>,
}

impl Clone for MinMaxInstance {
    fn clone(&self) -> Self {
        MinMaxInstance {
            name: self.name.clone(),
            graph: self.graph.clone(),
            scenarios: self.scenarios.clone(),
            scenario_opts: OnceLock::new(),
        }
    }
}

impl MinMaxInstance {
    pub fn new(
        name: impl Into<String>,
        graph: Graph,
        scenarios: Vec<Vec<f64>>,
    ) -> Result<Self, InstanceError> {
        validate_scenarios(&graph, &scenarios)?;
        Ok(MinMaxInstance {
            name: name.into(),
            graph,
            scenarios,
            scenario_opts: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    pub fn num_edges(&self) -> usize {
        self.graph.num_edges()
    }

    /// Number of scenarios K.
    pub fn num_scenarios(&self) -> usize {
        self.scenarios.len()
    }

    pub fn scenarios(&self) -> &[Vec<f64>] {
        &self.scenarios
    }

    pub fn scenario_costs(&self, s: usize) -> &[f64] {
        &self.scenarios[s]
    }

    pub fn cost(&self, s: usize, e: usize) -> f64 {
        self.scenarios[s][e]
    }

    /// Largest cost over all scenarios and edges.
    pub fn c_max(&self) -> f64 {
        self.scenarios
            .iter()
            .flatten()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn has_negative_costs(&self) -> bool {
        self.scenarios.iter().flatten().any(|&c| c < 0.0)
    }

    /// Per-edge worst-case cost max_S c^S_e.
    pub fn worst_case_costs(&self) -> Vec<f64> {
        let mut worst = self.scenarios[0].clone();
        for row in &self.scenarios[1..] {
            for (w, &c) in worst.iter_mut().zip(row) {
                *w = w.max(c);
            }
        }
        worst
    }

    /// Per-edge mean cost over scenarios (the baseline heuristic's weights).
    pub fn mean_costs(&self) -> Vec<f64> {
        let k = self.scenarios.len() as f64;
        let mut mean = vec![0.0; self.num_edges()];
        for row in &self.scenarios {
            for (m, &c) in mean.iter_mut().zip(row) {
                *m += c;
            }
        }
        mean.iter_mut().for_each(|m| *m /= k);
        mean
    }

    /// C*(S): the ordinary MST cost under scenario `s` alone.
    pub fn scenario_opt(&self, s: usize) -> f64 {
        self.scenario_opts()[s]
    }

    /// All C*(S) values, computed once per instance.
    pub fn scenario_opts(&self) -> &[f64] {
        self.scenario_opts.get_or_init(|| {
            self.scenarios
                .iter()
                .map(|row| {
                    let tree = kruskal_mst(&self.graph, row)
                        .expect("instance graphs are connected by construction");
                    tree.iter().map(|e| row[e]).sum()
                })
                .collect()
        })
    }
}

/// A two-stage instance: edges bought now cost `first_stage_costs`; edges
/// bought after the scenario is revealed cost that scenario's prices.
#[derive(Clone, Debug)]
pub struct TwoStageInstance {
    name: String,
    graph: Graph,
    first_stage_costs: Vec<f64>,
    scenarios: Vec<Vec<f64>>,
}

impl TwoStageInstance {
    pub fn new(
        name: impl Into<String>,
        graph: Graph,
        first_stage_costs: Vec<f64>,
        scenarios: Vec<Vec<f64>>,
    ) -> Result<Self, InstanceError> {
        validate_row(None, &first_stage_costs, graph.num_edges())?;
        validate_scenarios(&graph, &scenarios)?;
        Ok(TwoStageInstance {
            name: name.into(),
            graph,
            first_stage_costs,
            scenarios,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    pub fn num_edges(&self) -> usize {
        self.graph.num_edges()
    }

    pub fn num_scenarios(&self) -> usize {
        self.scenarios.len()
    }

    pub fn first_stage_costs(&self) -> &[f64] {
        &self.first_stage_costs
    }

    pub fn scenarios(&self) -> &[Vec<f64>] {
        &self.scenarios
    }

    pub fn scenario_costs(&self, s: usize) -> &[f64] {
        &self.scenarios[s]
    }

    /// Largest cost over the first stage and all scenarios.
    pub fn c_max(&self) -> f64 {
        self.first_stage_costs
            .iter()
            .chain(self.scenarios.iter().flatten())
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn has_negative_costs(&self) -> bool {
        self.first_stage_costs
            .iter()
            .chain(self.scenarios.iter().flatten())
            .any(|&c| c < 0.0)
    }
}

/// First-stage edge purchase plus one completion per scenario.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoStageSolution {
    pub first_stage: EdgeSet,
    /// `completions[s]` finishes the tree under scenario `s`, disjoint from
    /// the first stage.
    pub completions: Vec<EdgeSet>,
}

/// Worst-case tree cost max_S Σ_{e∈t} c^S_e.
pub fn evaluate_minmax(inst: &MinMaxInstance, tree: &EdgeSet) -> Result<f64, InstanceError> {
    if tree.universe() != inst.num_edges() || !is_spanning_tree(inst.graph(), tree) {
        return Err(InstanceError::NotASpanningTree);
    }
    Ok(minmax_value(inst, tree))
}

/// `evaluate_minmax` without the spanning tree check, for callers that hold
/// a tree by construction (hot loops in the exact solvers).
pub(crate) fn minmax_value(inst: &MinMaxInstance, tree: &EdgeSet) -> f64 {
    inst.scenarios()
        .iter()
        .map(|row| tree.iter().map(|e| row[e]).sum())
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Worst-case regret max_S (Σ_{e∈t} c^S_e − C*(S)).
pub fn evaluate_regret(inst: &MinMaxInstance, tree: &EdgeSet) -> Result<f64, InstanceError> {
    if tree.universe() != inst.num_edges() || !is_spanning_tree(inst.graph(), tree) {
        return Err(InstanceError::NotASpanningTree);
    }
    Ok(regret_value(inst, tree))
}

pub(crate) fn regret_value(inst: &MinMaxInstance, tree: &EdgeSet) -> f64 {
    let opts = inst.scenario_opts();
    inst.scenarios()
        .iter()
        .zip(opts)
        .map(|(row, opt)| tree.iter().map(|e| row[e]).sum::<f64>() - opt)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Worst-case two-stage cost max_S (c(E_1) + c^S(E_2^S)), after validating
/// that the first stage is a forest and every completion disjointly extends
/// it to a spanning tree.
pub fn evaluate_2stage(
    inst: &TwoStageInstance,
    sol: &TwoStageSolution,
) -> Result<f64, InstanceError> {
    let invalid = |scenario: Option<usize>, reason: &str| InstanceError::InvalidTwoStageSolution {
        scenario,
        reason: reason.to_string(),
    };
    let m = inst.num_edges();
    if sol.first_stage.universe() != m {
        return Err(invalid(None, "first-stage edge set indexes a different graph"));
    }
    if sol.completions.len() != inst.num_scenarios() {
        return Err(invalid(None, "need exactly one completion per scenario"));
    }
    let mut uf = UnionFind::new(inst.num_vertices());
    for e in sol.first_stage.iter() {
        let (u, v) = inst.graph().endpoints(e);
        if !uf.union(u, v) {
            return Err(invalid(None, "first-stage edges contain a cycle"));
        }
    }
    let first_stage_cost: f64 = sol
        .first_stage
        .iter()
        .map(|e| inst.first_stage_costs()[e])
        .sum();
    let mut worst = f64::NEG_INFINITY;
    for (s, completion) in sol.completions.iter().enumerate() {
        if completion.universe() != m {
            return Err(invalid(Some(s), "completion indexes a different graph"));
        }
        if completion.iter().any(|e| sol.first_stage.contains(e)) {
            return Err(invalid(Some(s), "completion overlaps the first stage"));
        }
        let mut tree_uf = uf.clone();
        for e in completion.iter() {
            let (u, v) = inst.graph().endpoints(e);
            if !tree_uf.union(u, v) {
                return Err(invalid(Some(s), "first stage plus completion has a cycle"));
            }
        }
        if tree_uf.components() != 1 {
            return Err(invalid(
                Some(s),
                "first stage plus completion does not span the graph",
            ));
        }
        let second: f64 = completion.iter().map(|e| inst.cost2(s, e)).sum();
        worst = worst.max(first_stage_cost + second);
    }
    Ok(worst)
}

impl TwoStageInstance {
    /// Second-stage cost of edge `e` under scenario `s`.
    pub fn cost2(&self, s: usize, e: usize) -> f64 {
        self.scenarios[s][e]
    }
}

/// Either instance kind, as distinguished by the file format.
#[derive(Clone, Debug)]
pub enum Instance {
    MinMax(MinMaxInstance),
    TwoStage(TwoStageInstance),
}

impl Instance {
    pub fn name(&self) -> &str {
        match self {
            Instance::MinMax(i) => i.name(),
            Instance::TwoStage(i) => i.name(),
        }
    }

    pub fn graph(&self) -> &Graph {
        match self {
            Instance::MinMax(i) => i.graph(),
            Instance::TwoStage(i) => i.graph(),
        }
    }
}

impl From<MinMaxInstance> for Instance {
    fn from(i: MinMaxInstance) -> Self {
        Instance::MinMax(i)
    }
}

impl From<TwoStageInstance> for Instance {
    fn from(i: TwoStageInstance) -> Self {
        Instance::TwoStage(i)
    }
}

/// On-disk shape. The presence of `first_stage_costs` selects the two-stage
/// kind.
#[derive(Serialize, Deserialize)]
struct InstanceDoc {
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    first_stage_costs: Option<Vec<f64>>,
    name: String,
    num_vertices: usize,
    scenarios: Vec<Vec<f64>>,
}

/// Parses an instance document; see the README for the schema.
pub fn load_instance(bytes: &[u8]) -> Result<Instance, InstanceError> {
    let doc: InstanceDoc =
        serde_json::from_slice(bytes).map_err(|e| InstanceError::Schema {
            message: e.to_string(),
        })?;
    let graph = Graph::new(doc.num_vertices, doc.edges)?;
    match doc.first_stage_costs {
        Some(first) => Ok(Instance::TwoStage(TwoStageInstance::new(
            doc.name,
            graph,
            first,
            doc.scenarios,
        )?)),
        None => Ok(Instance::MinMax(MinMaxInstance::new(
            doc.name,
            graph,
            doc.scenarios,
        )?)),
    }
}

/// Serializes an instance to canonical JSON (sorted keys, shortest
/// round-trip floats, trailing newline). `save_instance(load_instance(b))`
/// reproduces canonical input bytes exactly.
pub fn save_instance(inst: &Instance) -> String {
    let doc = match inst {
        Instance::MinMax(i) => InstanceDoc {
            edges: i.graph().edges().to_vec(),
            first_stage_costs: None,
            name: i.name().to_string(),
            num_vertices: i.num_vertices(),
            scenarios: i.scenarios().to_vec(),
        },
        Instance::TwoStage(i) => InstanceDoc {
            edges: i.graph().edges().to_vec(),
            first_stage_costs: Some(i.first_stage_costs().to_vec()),
            name: i.name().to_string(),
            num_vertices: i.num_vertices(),
            scenarios: i.scenarios().to_vec(),
        },
    };
    canonical_json_pretty(&doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::visit_spanning_trees;
    use crate::rng::SplitMix64;

    fn triangle() -> Graph {
        Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn triangle_minmax() -> MinMaxInstance {
        MinMaxInstance::new(
            "tri",
            triangle(),
            vec![vec![2.0, 0.0, 0.0], vec![0.0, 2.0, 0.0]],
        )
        .unwrap()
    }

    fn random_instance(rng: &mut SplitMix64, n: usize, m: usize, k: usize) -> MinMaxInstance {
        let mut edges = Vec::with_capacity(m);
        for v in 1..n {
            let u = rng.next_below(v as u64) as usize;
            edges.push((u, v));
        }
        while edges.len() < m {
            let u = rng.next_below(n as u64) as usize;
            let mut v = rng.next_below(n as u64 - 1) as usize;
            if v >= u {
                v += 1;
            }
            edges.push((u.min(v), u.max(v)));
        }
        let scenarios = (0..k)
            .map(|_| (0..m).map(|_| rng.next_below(10) as f64).collect())
            .collect();
        MinMaxInstance::new("random", Graph::new(n, edges).unwrap(), scenarios).unwrap()
    }

    #[test]
    fn minmax_value_on_the_triangle() {
        let inst = triangle_minmax();
        let t = EdgeSet::from_indices(3, [0, 1]);
        assert_eq!(evaluate_minmax(&inst, &t).unwrap(), 2.0);
    }

    #[test]
    fn single_scenario_minmax_is_plain_tree_cost() {
        let inst =
            MinMaxInstance::new("k1", triangle(), vec![vec![3.0, 1.0, 5.0]]).unwrap();
        let t = EdgeSet::from_indices(3, [0, 2]);
        assert_eq!(evaluate_minmax(&inst, &t).unwrap(), 8.0);
    }

    #[test]
    fn non_trees_are_rejected() {
        let inst = triangle_minmax();
        let not_spanning = EdgeSet::from_indices(3, [0]);
        assert_eq!(
            evaluate_minmax(&inst, &not_spanning),
            Err(InstanceError::NotASpanningTree)
        );
        assert_eq!(
            evaluate_regret(&inst, &EdgeSet::from_indices(3, [0, 1, 2])),
            Err(InstanceError::NotASpanningTree)
        );
    }

    #[test]
    fn scenario_opt_examples() {
        let inst = triangle_minmax();
        assert_eq!(inst.scenario_opt(0), 0.0);
        let zero =
            MinMaxInstance::new("z", triangle(), vec![vec![0.0, 0.0, 0.0]]).unwrap();
        assert_eq!(zero.scenario_opt(0), 0.0);
    }

    #[test]
    fn scenario_opt_matches_enumeration_on_random_graphs() {
        let mut rng = SplitMix64::new(2024);
        for _ in 0..20 {
            let inst = random_instance(&mut rng, 6, 9, 3);
            for s in 0..inst.num_scenarios() {
                let mut best = f64::INFINITY;
                visit_spanning_trees(inst.graph(), 1_000_000, |t| {
                    best = best.min(t.iter().map(|e| inst.cost(s, e)).sum());
                })
                .unwrap();
                assert_eq!(inst.scenario_opt(s), best);
            }
        }
    }

    #[test]
    fn regret_on_the_triangle() {
        let inst = triangle_minmax();
        let t = EdgeSet::from_indices(3, [0, 2]);
        // C*(S1) = 0 via {e1,e2}, C*(S2) = 0 via {e0,e2}.
        assert_eq!(evaluate_regret(&inst, &t).unwrap(), 2.0);
    }

    #[test]
    fn single_scenario_mst_has_zero_regret() {
        let inst =
            MinMaxInstance::new("k1", triangle(), vec![vec![3.0, 1.0, 5.0]]).unwrap();
        let mst = kruskal_mst(inst.graph(), inst.scenario_costs(0)).unwrap();
        assert_eq!(evaluate_regret(&inst, &mst).unwrap(), 0.0);
    }

    #[test]
    fn regret_is_nonnegative_for_every_tree() {
        let mut rng = SplitMix64::new(77);
        for _ in 0..20 {
            let inst = random_instance(&mut rng, 6, 8, 3);
            visit_spanning_trees(inst.graph(), 1_000_000, |t| {
                assert!(regret_value(&inst, t) >= 0.0);
            })
            .unwrap();
        }
    }

    #[test]
    fn cached_scenario_optima_do_not_change_results() {
        let a = triangle_minmax();
        let b = triangle_minmax();
        let t = EdgeSet::from_indices(3, [0, 2]);
        // Warm a's cache through a different entry point first.
        let _ = a.scenario_opts();
        assert_eq!(
            evaluate_regret(&a, &t).unwrap(),
            evaluate_regret(&b, &t).unwrap()
        );
    }

    #[test]
    fn worst_case_and_mean_costs() {
        let inst = triangle_minmax();
        assert_eq!(inst.worst_case_costs(), vec![2.0, 2.0, 0.0]);
        assert_eq!(inst.mean_costs(), vec![1.0, 1.0, 0.0]);
        assert_eq!(inst.c_max(), 2.0);
        assert!(!inst.has_negative_costs());
    }

    fn two_stage_triangle() -> TwoStageInstance {
        TwoStageInstance::new(
            "ts",
            triangle(),
            vec![1.0, 1.0, 1.0],
            vec![vec![0.0, 0.0, 0.0]],
        )
        .unwrap()
    }

    #[test]
    fn two_stage_value_with_empty_first_stage() {
        let inst = two_stage_triangle();
        let sol = TwoStageSolution {
            first_stage: EdgeSet::new(3),
            completions: vec![EdgeSet::from_indices(3, [0, 1])],
        };
        assert_eq!(evaluate_2stage(&inst, &sol).unwrap(), 0.0);
    }

    #[test]
    fn full_first_stage_tree_needs_no_completion() {
        let inst = TwoStageInstance::new(
            "ts3",
            triangle(),
            vec![1.0, 1.0, 1.0],
            vec![
                vec![9.0, 9.0, 9.0],
                vec![5.0, 5.0, 5.0],
                vec![0.0, 0.0, 0.0],
            ],
        )
        .unwrap();
        let sol = TwoStageSolution {
            first_stage: EdgeSet::from_indices(3, [0, 1]),
            completions: vec![EdgeSet::new(3); 3],
        };
        assert_eq!(evaluate_2stage(&inst, &sol).unwrap(), 2.0);
    }

    #[test]
    fn two_stage_invariant_violations_are_reported() {
        let inst = two_stage_triangle();
        let overlap = TwoStageSolution {
            first_stage: EdgeSet::from_indices(3, [0]),
            completions: vec![EdgeSet::from_indices(3, [0, 1])],
        };
        match evaluate_2stage(&inst, &overlap) {
            Err(InstanceError::InvalidTwoStageSolution {
                scenario: Some(0), ..
            }) => {}
            other => panic!("expected overlap error, got {other:?}"),
        }
        let short = TwoStageSolution {
            first_stage: EdgeSet::new(3),
            completions: vec![EdgeSet::from_indices(3, [0])],
        };
        assert!(matches!(
            evaluate_2stage(&inst, &short),
            Err(InstanceError::InvalidTwoStageSolution {
                scenario: Some(0),
                ..
            })
        ));
        let cyclic = TwoStageSolution {
            first_stage: EdgeSet::from_indices(3, [0, 1, 2]),
            completions: vec![EdgeSet::new(3)],
        };
        assert!(matches!(
            evaluate_2stage(&inst, &cyclic),
            Err(InstanceError::InvalidTwoStageSolution { scenario: None, .. })
        ));
        let wrong_count = TwoStageSolution {
            first_stage: EdgeSet::new(3),
            completions: vec![],
        };
        assert!(matches!(
            evaluate_2stage(&inst, &wrong_count),
            Err(InstanceError::InvalidTwoStageSolution { scenario: None, .. })
        ));
    }

    #[test]
    fn constructor_validation() {
        assert_eq!(
            MinMaxInstance::new("e", triangle(), vec![]).unwrap_err(),
            InstanceError::NoScenarios
        );
        assert_eq!(
            MinMaxInstance::new("e", triangle(), vec![vec![1.0, 2.0]]).unwrap_err(),
            InstanceError::RowLengthMismatch {
                scenario: Some(0),
                expected: 3,
                actual: 2
            }
        );
        let disconnected = Graph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            MinMaxInstance::new("e", disconnected, vec![vec![1.0, 1.0]]).unwrap_err(),
            InstanceError::Disconnected
        );
        assert_eq!(
            MinMaxInstance::new("e", triangle(), vec![vec![1.0, f64::NAN, 0.0]]).unwrap_err(),
            InstanceError::NonFiniteCost {
                scenario: Some(0),
                edge: 1
            }
        );
        assert_eq!(
            TwoStageInstance::new("e", triangle(), vec![1.0], vec![vec![0.0; 3]]).unwrap_err(),
            InstanceError::RowLengthMismatch {
                scenario: None,
                expected: 3,
                actual: 1
            }
        );
    }

    #[test]
    fn negative_costs_are_flagged() {
        let inst =
            MinMaxInstance::new("neg", triangle(), vec![vec![-1.0, 0.0, 4.0]]).unwrap();
        assert!(inst.has_negative_costs());
        let ts = TwoStageInstance::new(
            "neg2",
            triangle(),
            vec![0.0, -2.0, 0.0],
            vec![vec![0.0; 3]],
        )
        .unwrap();
        assert!(ts.has_negative_costs());
    }

    #[test]
    fn minimal_document_round_trips_byte_identically() {
        let raw = br#"{"name": "tri", "num_vertices": 3,
                       "edges": [[0,1],[1,2],[0,2]],
                       "scenarios": [[2.0, 0.0, 0.0]]}"#;
        let inst = load_instance(raw).unwrap();
        assert!(matches!(inst, Instance::MinMax(_)));
        let canonical = save_instance(&inst);
        let again = save_instance(&load_instance(canonical.as_bytes()).unwrap());
        assert_eq!(canonical, again);
        assert!(canonical.ends_with('\n'));
        // Canonical form sorts keys: edges < name < num_vertices < scenarios.
        let e = canonical.find("\"edges\"").unwrap();
        let n = canonical.find("\"name\"").unwrap();
        let s = canonical.find("\"scenarios\"").unwrap();
        assert!(e < n && n < s);
    }

    #[test]
    fn first_stage_costs_select_the_two_stage_kind() {
        let raw = br#"{"name": "ts", "num_vertices": 3,
                       "edges": [[0,1],[1,2],[0,2]],
                       "first_stage_costs": [1.0, 1.0, 1.0],
                       "scenarios": [[0.0, 0.0, 0.0]]}"#;
        let inst = load_instance(raw).unwrap();
        match &inst {
            Instance::TwoStage(ts) => assert_eq!(ts.first_stage_costs(), &[1.0, 1.0, 1.0]),
            _ => panic!("expected a two-stage instance"),
        }
        let canonical = save_instance(&inst);
        assert!(canonical.contains("first_stage_costs"));
        let again = save_instance(&load_instance(canonical.as_bytes()).unwrap());
        assert_eq!(canonical, again);
    }

    #[test]
    fn loader_reports_schema_and_shape_errors() {
        assert!(matches!(
            load_instance(b"not json"),
            Err(InstanceError::Schema { .. })
        ));
        let short_row = br#"{"name": "x", "num_vertices": 3,
                             "edges": [[0,1],[1,2],[0,2]],
                             "scenarios": [[1.0, 2.0]]}"#;
        assert_eq!(
            load_instance(short_row).unwrap_err(),
            InstanceError::RowLengthMismatch {
                scenario: Some(0),
                expected: 3,
                actual: 2
            }
        );
        let disconnected = br#"{"name": "x", "num_vertices": 4,
                                "edges": [[0,1],[2,3]],
                                "scenarios": [[1.0, 1.0]]}"#;
        assert_eq!(
            load_instance(disconnected).unwrap_err(),
            InstanceError::Disconnected
        );
        let bad_edge = br#"{"name": "x", "num_vertices": 2,
                            "edges": [[0,5]], "scenarios": [[1.0]]}"#;
        assert!(matches!(
            load_instance(bad_edge).unwrap_err(),
            InstanceError::Graph(GraphError::InvalidEdge { .. })
        ));
    }
}
