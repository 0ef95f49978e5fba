//! Ground-truth solvers: exhaustive enumeration, branch-and-bound, and the
//! scenario-average baseline.
//!
//! These are the oracles the statistical tests and the CLI's exact mode rely
//! on; they are written for small instances and favor obviously-correct code
//! over speed.

use crate::graph::{
    kruskal_completion, kruskal_mst, visit_spanning_trees, EdgeSet, Graph, GraphError, UnionFind,
};
use crate::instances::{
    evaluate_2stage, evaluate_minmax, minmax_value, regret_value, MinMaxInstance,
    TwoStageInstance, TwoStageSolution,
};
use std::collections::BinaryHeap;
use std::fmt;
use std::time::{Duration, Instant};

/// Default ceiling on enumerated spanning trees.
pub const DEFAULT_TREE_LIMIT: u64 = 10_000_000;

/// Largest vertex count for the partition-based two-stage enumeration.
const PARTITION_VERTEX_LIMIT: usize = 12;
/// Largest edge count for the forest-based two-stage enumeration.
const FOREST_EDGE_LIMIT: usize = 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactError {
    /// The spanning-tree count exceeds the enumeration limit.
    TooManyTrees { limit: u64 },
    /// Neither exhaustive strategy can handle the instance size.
    InstanceTooLarge { detail: String },
    NegativeCosts,
    Graph(GraphError),
}

impl fmt::Display for ExactError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactError::TooManyTrees { limit } => {
                write!(f, "more than {limit} spanning trees to enumerate")
            }
            ExactError::InstanceTooLarge { detail } => {
                write!(f, "instance too large for exhaustive search: {detail}")
            }
            ExactError::NegativeCosts => {
                write!(f, "the scenario-average baseline requires nonnegative costs")
            }
            ExactError::Graph(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ExactError {}

impl From<GraphError> for ExactError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::TooManyTrees { limit } => ExactError::TooManyTrees { limit },
            other => ExactError::Graph(other),
        }
    }
}

/// An exact optimum with its witness.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactResult<W> {
    pub value: f64,
    /// Re-evaluates exactly to `value` under the matching evaluator.
    pub witness: W,
    /// Trees, forests, or partitions examined.
    pub nodes_explored: u64,
}

/// Exact min-max optimum by spanning-tree enumeration.
///
/// Ties break toward the lexicographically smallest edge-index set (the
/// enumeration order), so the witness is deterministic.
pub fn brute_force_minmax(inst: &MinMaxInstance) -> Result<ExactResult<EdgeSet>, ExactError> {
    brute_force_minmax_limited(inst, DEFAULT_TREE_LIMIT)
}

pub fn brute_force_minmax_limited(
    inst: &MinMaxInstance,
    limit: u64,
) -> Result<ExactResult<EdgeSet>, ExactError> {
    enumerate_best(inst, limit, minmax_value)
}

/// Exact min-max-regret optimum by spanning-tree enumeration; same
/// tie-breaking as [`brute_force_minmax`].
pub fn brute_force_regret(inst: &MinMaxInstance) -> Result<ExactResult<EdgeSet>, ExactError> {
    brute_force_regret_limited(inst, DEFAULT_TREE_LIMIT)
}

pub fn brute_force_regret_limited(
    inst: &MinMaxInstance,
    limit: u64,
) -> Result<ExactResult<EdgeSet>, ExactError> {
    enumerate_best(inst, limit, regret_value)
}

fn enumerate_best(
    inst: &MinMaxInstance,
    limit: u64,
    objective: impl Fn(&MinMaxInstance, &EdgeSet) -> f64,
) -> Result<ExactResult<EdgeSet>, ExactError> {
    let mut best: Option<(f64, EdgeSet)> = None;
    let count = visit_spanning_trees(inst.graph(), limit, |tree| {
        let value = objective(inst, tree);
        if best.as_ref().map_or(true, |(b, _)| value < *b) {
            best = Some((value, tree.clone()));
        }
    })?;
    let (value, witness) = best.expect("the enumeration visits at least one tree");
    Ok(ExactResult {
        value,
        witness,
        nodes_explored: count,
    })
}

/// Exact two-stage optimum.
///
/// For a fixed first-stage forest only two things matter: which vertex
/// partition its components induce, and its cost.  Given the partition, the
/// cheapest first-stage realization is a per-block minimum spanning tree,
/// and the cheapest completion under each scenario is a minimum spanning
/// tree of the graph with the blocks contracted — both independent of the
/// other choice.  So enumerating vertex partitions (when `n` permits) or
/// first-stage forests directly (when `m` permits) is exhaustive, and the
/// reported optimum is exact.
pub fn brute_force_2stage(
    inst: &TwoStageInstance,
) -> Result<ExactResult<TwoStageSolution>, ExactError> {
    let n = inst.num_vertices();
    let m = inst.num_edges();
    if n <= 1 {
        let witness = TwoStageSolution {
            first_stage: EdgeSet::new(m),
            completions: vec![EdgeSet::new(m); inst.num_scenarios()],
        };
        return Ok(ExactResult {
            value: 0.0,
            witness,
            nodes_explored: 1,
        });
    }
    if n <= PARTITION_VERTEX_LIMIT {
        brute_force_2stage_partitions(inst)
    } else if m <= FOREST_EDGE_LIMIT {
        brute_force_2stage_forests(inst)
    } else {
        Err(ExactError::InstanceTooLarge {
            detail: format!(
                "n = {n} exceeds the partition bound {PARTITION_VERTEX_LIMIT} \
                 and m = {m} exceeds the forest bound {FOREST_EDGE_LIMIT}"
            ),
        })
    }
}

/// Per-scenario edge orders for repeated seeded Kruskal scans.
fn scenario_orders(costs: &[Vec<f64>], m: usize) -> Vec<Vec<usize>> {
    costs
        .iter()
        .map(|row| {
            let mut order: Vec<usize> = (0..m).collect();
            order.sort_by(|&a, &b| row[a].total_cmp(&row[b]).then(a.cmp(&b)));
            order
        })
        .collect()
}

/// Cheapest completion cost of the partition given by `find` labels, walking
/// a presorted edge order.  The graph is connected, so this always succeeds.
fn completion_cost(
    graph: &Graph,
    costs: &[f64],
    order: &[usize],
    block_of: &[usize],
    num_blocks: usize,
) -> f64 {
    let mut uf = UnionFind::new(num_blocks);
    let mut cost = 0.0;
    for &e in order {
        let (u, v) = graph.endpoints(e);
        if uf.union(block_of[u], block_of[v]) {
            cost += costs[e];
            if uf.components() == 1 {
                break;
            }
        }
    }
    cost
}

fn brute_force_2stage_partitions(
    inst: &TwoStageInstance,
) -> Result<ExactResult<TwoStageSolution>, ExactError> {
    let n = inst.num_vertices();
    let m = inst.num_edges();
    let graph = inst.graph();
    let mut first_order: Vec<usize> = (0..m).collect();
    let c1 = inst.first_stage_costs();
    first_order.sort_by(|&a, &b| c1[a].total_cmp(&c1[b]).then(a.cmp(&b)));
    let orders = scenario_orders(inst.scenarios(), m);

    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut explored = 0u64;
    let mut labels = vec![0usize; n];
    visit_partitions(&mut labels, 1, 0, &mut |labels, num_blocks| {
        explored += 1;
        // Cheapest first-stage forest inducing exactly this partition: a
        // per-block MST, or nothing if some block is not connected.
        let mut uf = UnionFind::new(n);
        let mut first_cost = 0.0;
        for &e in &first_order {
            let (u, v) = graph.endpoints(e);
            if labels[u] == labels[v] && uf.union(u, v) {
                first_cost += c1[e];
            }
        }
        if uf.components() != num_blocks {
            return;
        }
        let mut value = f64::NEG_INFINITY;
        for (s, order) in orders.iter().enumerate() {
            let cost =
                first_cost + completion_cost(graph, inst.scenario_costs(s), order, labels, num_blocks);
            value = value.max(cost);
        }
        if best.as_ref().map_or(true, |(b, _)| value < *b) {
            best = Some((value, labels.to_vec()));
        }
    });

    let (_, labels) = best.expect("the all-singletons partition is always feasible");
    let witness = realize_partition(inst, &labels, &first_order);
    let value = evaluate_2stage(inst, &witness)
        .expect("partition realization satisfies the two-stage invariants");
    Ok(ExactResult {
        value,
        witness,
        nodes_explored: explored,
    })
}

/// All set partitions of `{0..n}` as restricted-growth label strings.
fn visit_partitions(
    labels: &mut Vec<usize>,
    index: usize,
    max_used: usize,
    visit: &mut impl FnMut(&[usize], usize),
) {
    if index == labels.len() {
        visit(labels, max_used + 1);
        return;
    }
    for block in 0..=max_used + 1 {
        labels[index] = block;
        visit_partitions(labels, index + 1, max_used.max(block), visit);
    }
    labels[index] = 0;
}

/// Materialize the optimal partition as an explicit first stage plus
/// per-scenario completions.
fn realize_partition(
    inst: &TwoStageInstance,
    labels: &[usize],
    first_order: &[usize],
) -> TwoStageSolution {
    let graph = inst.graph();
    let mut uf = UnionFind::new(inst.num_vertices());
    let mut first_stage = EdgeSet::new(inst.num_edges());
    for &e in first_order {
        let (u, v) = graph.endpoints(e);
        if labels[u] == labels[v] && uf.union(u, v) {
            first_stage.insert(e);
        }
    }
    let completions = (0..inst.num_scenarios())
        .map(|s| {
            kruskal_completion(graph, inst.scenario_costs(s), &first_stage, None)
                .expect("contracting a connected graph keeps it connected")
        })
        .collect();
    TwoStageSolution {
        first_stage,
        completions,
    }
}

fn brute_force_2stage_forests(
    inst: &TwoStageInstance,
) -> Result<ExactResult<TwoStageSolution>, ExactError> {
    let n = inst.num_vertices();
    let m = inst.num_edges();
    let graph = inst.graph();
    let orders = scenario_orders(inst.scenarios(), m);

    struct Search<'a> {
        inst: &'a TwoStageInstance,
        orders: &'a [Vec<usize>],
        best: Option<(f64, u64)>,
        explored: u64,
    }
    impl Search<'_> {
        fn leaf(&mut self, mask: u64, first_cost: f64, uf: &UnionFind, labels_buf: &mut Vec<usize>) {
            self.explored += 1;
            let graph = self.inst.graph();
            let n = self.inst.num_vertices();
            // Component labels of the forest for the seeded completion scans.
            labels_buf.clear();
            let mut uf = uf.clone();
            let mut next = 0usize;
            let mut root_label = vec![usize::MAX; n];
            for v in 0..n {
                let r = uf.find(v);
                if root_label[r] == usize::MAX {
                    root_label[r] = next;
                    next += 1;
                }
                labels_buf.push(root_label[r]);
            }
            let mut value = f64::NEG_INFINITY;
            for (s, order) in self.orders.iter().enumerate() {
                let cost = first_cost
                    + completion_cost(graph, self.inst.scenario_costs(s), order, labels_buf, next);
                value = value.max(cost);
            }
            if self.best.as_ref().map_or(true, |(b, _)| value < *b) {
                self.best = Some((value, mask));
            }
        }
        fn descend(
            &mut self,
            edge: usize,
            mask: u64,
            first_cost: f64,
            uf: &UnionFind,
            labels_buf: &mut Vec<usize>,
        ) {
            if edge == self.inst.num_edges() {
                self.leaf(mask, first_cost, uf, labels_buf);
                return;
            }
            self.descend(edge + 1, mask, first_cost, uf, labels_buf);
            let (u, v) = self.inst.graph().endpoints(edge);
            let mut with_edge = uf.clone();
            if with_edge.union(u, v) {
                self.descend(
                    edge + 1,
                    mask | (1 << edge),
                    first_cost + self.inst.first_stage_costs()[edge],
                    &with_edge,
                    labels_buf,
                );
            }
        }
    }

    let mut search = Search {
        inst,
        orders: &orders,
        best: None,
        explored: 0,
    };
    let mut labels_buf = Vec::with_capacity(n);
    search.descend(0, 0, 0.0, &UnionFind::new(n), &mut labels_buf);

    let (_, mask) = search.best.expect("the empty forest is always feasible");
    let mut first_stage = EdgeSet::new(m);
    for e in 0..m {
        if mask & (1 << e) != 0 {
            first_stage.insert(e);
        }
    }
    let completions = (0..inst.num_scenarios())
        .map(|s| {
            kruskal_completion(graph, inst.scenario_costs(s), &first_stage, None)
                .expect("contracting a connected graph keeps it connected")
        })
        .collect();
    let witness = TwoStageSolution {
        first_stage,
        completions,
    };
    let value = evaluate_2stage(inst, &witness)
        .expect("forest realization satisfies the two-stage invariants");
    Ok(ExactResult {
        value,
        witness,
        nodes_explored: search.explored,
    })
}

/// Outcome of the branch-and-bound search.
#[derive(Clone, Debug, PartialEq)]
pub struct BnbOutcome {
    pub value: f64,
    pub tree: EdgeSet,
    pub nodes_explored: u64,
    /// `false` when the time limit cut the search short; `value` is then
    /// only the best incumbent found.
    pub optimal: bool,
}

struct BnbNode {
    lb: f64,
    depth: usize,
    seq: u64,
    included: EdgeSet,
    excluded: EdgeSet,
    /// Committed cost of the included edges under each scenario.
    committed: Vec<f64>,
}

impl PartialEq for BnbNode {
    fn eq(&self, other: &Self) -> bool {
        self.seq == other.seq
    }
}
impl Eq for BnbNode {}
impl PartialOrd for BnbNode {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for BnbNode {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // BinaryHeap pops its maximum, so rank the node to expand next as
        // the greatest: smallest bound, then deepest, then oldest.
        other
            .lb
            .total_cmp(&self.lb)
            .then_with(|| self.depth.cmp(&other.depth))
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Exact min-max optimum by best-first branch-and-bound on edge decisions.
///
/// The lower bound at a node is, per scenario, the committed cost of the
/// included edges plus the cheapest spanning completion over the still
/// allowed edges — an exact per-scenario relaxation, so the bound is valid
/// for negative costs too.  With a time limit the search may stop early and
/// report the incumbent with `optimal: false`.
pub fn branch_and_bound_minmax(
    inst: &MinMaxInstance,
    time_limit: Option<Duration>,
) -> BnbOutcome {
    let start = Instant::now();
    let n = inst.num_vertices();
    let m = inst.num_edges();
    let k = inst.num_scenarios();
    if n <= 1 {
        return BnbOutcome {
            value: 0.0,
            tree: EdgeSet::new(m),
            nodes_explored: 0,
            optimal: true,
        };
    }
    let orders = scenario_orders(inst.scenarios(), m);
    let worst = inst.worst_case_costs();

    // Incumbent: the scenario-average tree when costs permit, otherwise any
    // spanning tree.
    let (mut best_tree, mut best_value) = match baseline_mean_scenario(inst) {
        Ok(pair) => pair,
        Err(_) => {
            let tree = kruskal_mst(inst.graph(), inst.scenario_costs(0))
                .expect("instances are connected by construction");
            let value = minmax_value(inst, &tree);
            (tree, value)
        }
    };

    let mut heap: BinaryHeap<BnbNode> = BinaryHeap::new();
    let mut seq = 0u64;
    let root = BnbNode {
        lb: f64::NEG_INFINITY,
        depth: 0,
        seq,
        included: EdgeSet::new(m),
        excluded: EdgeSet::new(m),
        committed: vec![0.0; k],
    };
    if let Some(lb) = node_bound(inst, &orders, &root, best_value) {
        if lb < best_value {
            heap.push(BnbNode { lb, ..root });
        }
    }

    let mut explored = 0u64;
    let mut optimal = true;
    while let Some(node) = heap.pop() {
        if node.lb >= best_value {
            break; // best-first: every remaining node is bounded too
        }
        if let Some(limit) = time_limit {
            if start.elapsed() >= limit {
                optimal = false;
                break;
            }
        }
        explored += 1;
        let branch = (0..m)
            .filter(|&e| !node.included.contains(e) && !node.excluded.contains(e))
            .max_by(|&a, &b| worst[a].total_cmp(&worst[b]).then(b.cmp(&a)));
        let Some(edge) = branch else {
            continue; // every edge decided without forming a tree
        };
        let (u, v) = inst.graph().endpoints(edge);

        // Include the edge, unless it closes a cycle among included edges.
        let mut uf = UnionFind::new(n);
        for e in node.included.iter() {
            let (a, b) = inst.graph().endpoints(e);
            uf.union(a, b);
        }
        if uf.union(u, v) {
            let mut included = node.included.clone();
            included.insert(edge);
            let committed: Vec<f64> = (0..k)
                .map(|s| node.committed[s] + inst.cost(s, edge))
                .collect();
            if included.len() == n - 1 {
                let value = minmax_value(inst, &included);
                if value < best_value {
                    best_value = value;
                    best_tree = included;
                }
            } else {
                seq += 1;
                let child = BnbNode {
                    lb: 0.0,
                    depth: node.depth + 1,
                    seq,
                    included,
                    excluded: node.excluded.clone(),
                    committed,
                };
                if let Some(lb) = node_bound(inst, &orders, &child, best_value) {
                    if lb < best_value {
                        heap.push(BnbNode { lb, ..child });
                    }
                }
            }
        }

        // Exclude the edge.
        let mut excluded = node.excluded.clone();
        excluded.insert(edge);
        seq += 1;
        let child = BnbNode {
            lb: 0.0,
            depth: node.depth + 1,
            seq,
            included: node.included,
            excluded,
            committed: node.committed,
        };
        if let Some(lb) = node_bound(inst, &orders, &child, best_value) {
            if lb < best_value {
                heap.push(BnbNode { lb, ..child });
            }
        }
    }

    BnbOutcome {
        value: best_value,
        tree: best_tree,
        nodes_explored: explored,
        optimal,
    }
}

/// Per-scenario exact completion bound; `None` when the allowed edges cannot
/// span.  Stops early once the running maximum reaches `cap`.
fn node_bound(
    inst: &MinMaxInstance,
    orders: &[Vec<usize>],
    node: &BnbNode,
    cap: f64,
) -> Option<f64> {
    let n = inst.num_vertices();
    let graph = inst.graph();
    let mut lb = f64::NEG_INFINITY;
    for (s, order) in orders.iter().enumerate() {
        let mut uf = UnionFind::new(n);
        for e in node.included.iter() {
            let (u, v) = graph.endpoints(e);
            uf.union(u, v);
        }
        let mut cost = node.committed[s];
        for &e in order {
            if node.excluded.contains(e) || node.included.contains(e) {
                continue;
            }
            let (u, v) = graph.endpoints(e);
            if uf.union(u, v) {
                cost += inst.cost(s, e);
                if uf.components() == 1 {
                    break;
                }
            }
        }
        if uf.components() != 1 {
            return None;
        }
        lb = lb.max(cost);
        if lb >= cap {
            return Some(lb);
        }
    }
    Some(lb)
}

/// The classic K-approximation: a minimum spanning tree under the
/// scenario-average costs, evaluated against the worst scenario.
pub fn baseline_mean_scenario(inst: &MinMaxInstance) -> Result<(EdgeSet, f64), ExactError> {
    if inst.has_negative_costs() {
        return Err(ExactError::NegativeCosts);
    }
    let tree = kruskal_mst(inst.graph(), &inst.mean_costs())?;
    let value = evaluate_minmax(inst, &tree).expect("Kruskal returns a spanning tree");
    Ok((tree, value))
}
