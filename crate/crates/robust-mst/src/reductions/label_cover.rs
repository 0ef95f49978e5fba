//! Label cover → min-max spanning tree gadget.
//!
//! A label-cover input is a bipartite graph in which every edge carries a
//! relation: the set of (left label, right label) pairs it accepts. A
//! labeling picks one label per vertex and satisfies an edge when the
//! endpoint labels form an accepted pair.
//!
//! The generated spanning-tree instance has a hub vertex joined to every
//! left vertex by a free edge, plus one gadget component per bipartite edge.
//! A component holds one interior vertex per relation pair and a private
//! copy of the right vertex; its only connection to the rest of the graph
//! runs through its *label edges* (left vertex → interior vertex, one per
//! pair), so every spanning tree picks at least one label edge per
//! component — trees cannot dodge the labeling question.
//!
//! Scenarios charge 1 to bundles of label edges that pin `g` *different*
//! labels on a single vertex (`g` components incident to that vertex, one
//! label edge each, pairwise distinct labels at the shared end). A
//! consistent labeling never does that, which yields the two properties the
//! tests lean on:
//!
//! * if some labeling satisfies every edge, the tree using the matching
//!   label edge in each component costs at most 1 under every scenario;
//! * with `g = 2`, if no labeling satisfies every edge, every spanning tree
//!   costs at least 2: either some component contributes two label edges
//!   with a second one elsewhere, or the per-component choices define a
//!   labeling, which must violate some edge — both force two charged edges
//!   into one scenario.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{ReductionError, DEFAULT_SCENARIO_CAP};
use crate::graph::{EdgeSet, Graph};
use crate::instances::MinMaxInstance;

/// One bipartite edge and the label pairs it accepts.
#[derive(Clone, Debug, Deserialize, PartialEq, Serialize)]
pub struct LabelCoverEdge {
    pub left: usize,
    pub right: usize,
    /// Accepted (left label, right label) pairs; labels are 1-based.
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabelCoverInstance {
    num_left: usize,
    num_right: usize,
    num_labels: usize,
    edges: Vec<LabelCoverEdge>,
}

impl LabelCoverInstance {
    pub fn new(
        num_left: usize,
        num_right: usize,
        num_labels: usize,
        mut edges: Vec<LabelCoverEdge>,
    ) -> Result<Self, ReductionError> {
        let infeasible = |detail: String| ReductionError::ParamsInfeasible { detail };
        if num_left == 0 || num_right == 0 || num_labels == 0 {
            return Err(infeasible(
                "label cover needs at least one vertex per side and one label".into(),
            ));
        }
        let mut seen = HashSet::new();
        for edge in &mut edges {
            if edge.left >= num_left || edge.right >= num_right {
                return Err(infeasible(format!(
                    "edge ({}, {}) references a missing vertex",
                    edge.left, edge.right
                )));
            }
            if !seen.insert((edge.left, edge.right)) {
                return Err(infeasible(format!(
                    "duplicate edge ({}, {})",
                    edge.left, edge.right
                )));
            }
            if edge.pairs.is_empty() {
                return Err(infeasible(format!(
                    "edge ({}, {}) has an empty relation",
                    edge.left, edge.right
                )));
            }
            edge.pairs.sort_unstable();
            edge.pairs.dedup();
            for &(a, b) in &edge.pairs {
                if a == 0 || a > num_labels || b == 0 || b > num_labels {
                    return Err(infeasible(format!(
                        "edge ({}, {}) uses label pair ({a}, {b}) outside 1..={num_labels}",
                        edge.left, edge.right
                    )));
                }
            }
        }
        Ok(LabelCoverInstance {
            num_left,
            num_right,
            num_labels,
            edges,
        })
    }

    pub fn from_json(bytes: &[u8]) -> Result<Self, ReductionError> {
        let doc: LabelCoverDoc = serde_json::from_slice(bytes)
            .map_err(|e| ReductionError::ParamsInfeasible { detail: e.to_string() })?;
        LabelCoverInstance::new(doc.num_left, doc.num_right, doc.num_labels, doc.edges)
    }

    pub fn num_left(&self) -> usize {
        self.num_left
    }

    pub fn num_right(&self) -> usize {
        self.num_right
    }

    pub fn num_labels(&self) -> usize {
        self.num_labels
    }

    pub fn edges(&self) -> &[LabelCoverEdge] {
        &self.edges
    }
}

#[derive(Deserialize)]
struct LabelCoverDoc {
    edges: Vec<LabelCoverEdge>,
    num_labels: usize,
    num_left: usize,
    num_right: usize,
}

/// One label per left vertex and one per right vertex, 1-based.
#[derive(Clone, Debug, PartialEq)]
pub struct Labeling {
    pub left_labels: Vec<usize>,
    pub right_labels: Vec<usize>,
}

/// Ties a generated edge index back to its component and relation pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentEdgeRole {
    pub edge: usize,
    pub left: usize,
    pub right: usize,
    pub a: usize,
    pub b: usize,
}

/// Role map for a generated instance.
#[derive(Clone, Debug, Serialize)]
pub struct LabelCoverMeta {
    pub g: usize,
    /// Always-free spokes (hub, left vertex), one per left vertex.
    pub hub_edges: Vec<usize>,
    /// The edges scenarios may charge; picking one selects a label pair.
    pub label_edges: Vec<ComponentEdgeRole>,
    /// Always-free partner edges completing each component path.
    pub dummy_edges: Vec<ComponentEdgeRole>,
    /// Scenario count before identical cost rows were merged.
    pub raw_scenario_count: u64,
}

struct ComponentLayout {
    /// Parallel to the component's sorted relation pairs.
    label_edges: Vec<usize>,
    dummy_edges: Vec<usize>,
}

struct Layout {
    num_vertices: usize,
    graph_edges: Vec<(usize, usize)>,
    hub_edges: Vec<usize>,
    components: Vec<ComponentLayout>,
}

/// Hub is vertex 0, left vertices follow, then one block per bipartite edge
/// holding its interior vertices and the private right-vertex copy. Edge
/// order: hub spokes first, then per component all label edges followed by
/// all dummy edges, in relation-pair order.
fn layout(lc: &LabelCoverInstance) -> Layout {
    let mut graph_edges = Vec::new();
    let mut hub_edges = Vec::with_capacity(lc.num_left);
    for i in 0..lc.num_left {
        hub_edges.push(graph_edges.len());
        graph_edges.push((0, 1 + i));
    }
    let mut next_vertex = 1 + lc.num_left;
    let mut components = Vec::with_capacity(lc.edges.len());
    for edge in &lc.edges {
        let interior: Vec<usize> = (0..edge.pairs.len()).map(|p| next_vertex + p).collect();
        let right_copy = next_vertex + edge.pairs.len();
        next_vertex = right_copy + 1;
        let mut label_edges = Vec::with_capacity(interior.len());
        for &u in &interior {
            label_edges.push(graph_edges.len());
            graph_edges.push((1 + edge.left, u));
        }
        let mut dummy_edges = Vec::with_capacity(interior.len());
        for &u in &interior {
            dummy_edges.push(graph_edges.len());
            graph_edges.push((u, right_copy));
        }
        components.push(ComponentLayout {
            label_edges,
            dummy_edges,
        });
    }
    Layout {
        num_vertices: next_vertex,
        graph_edges,
        hub_edges,
        components,
    }
}

/// Visits all size-`g` index subsets of `0..count` in lexicographic order.
/// The callback may abort by returning `false`; the return value reports
/// whether enumeration ran to completion.
fn visit_combinations(count: usize, g: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if g == 0 || g > count {
        return true;
    }
    let mut idx: Vec<usize> = (0..g).collect();
    loop {
        if !f(&idx) {
            return false;
        }
        let mut i = g;
        while i > 0 && idx[i - 1] == count - g + (i - 1) {
            i -= 1;
        }
        if i == 0 {
            return true;
        }
        idx[i - 1] += 1;
        for j in i..g {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Extends a tuple with one label edge per component in `comps`, skipping
/// pairs that reuse a label already taken at the shared vertex.
fn visit_tuples(
    lc: &LabelCoverInstance,
    lay: &Layout,
    comps: &[usize],
    left_side: bool,
    used_labels: &mut Vec<usize>,
    edges_acc: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let depth = edges_acc.len();
    if depth == comps.len() {
        return f(edges_acc);
    }
    let edge = &lc.edges[comps[depth]];
    for (p, &(a, b)) in edge.pairs.iter().enumerate() {
        let label = if left_side { a } else { b };
        if used_labels.contains(&label) {
            continue;
        }
        used_labels.push(label);
        edges_acc.push(lay.components[comps[depth]].label_edges[p]);
        let keep_going = visit_tuples(lc, lay, comps, left_side, used_labels, edges_acc, f);
        edges_acc.pop();
        used_labels.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

/// Visits the label-edge set of every raw (pre-merge) scenario in generation
/// order: left vertices ascending, then right vertices ascending; per vertex
/// all `g`-subsets of incident components, and per subset all tuples of
/// label edges with pairwise distinct labels at that vertex.
fn visit_scenarios(
    lc: &LabelCoverInstance,
    lay: &Layout,
    g: usize,
    f: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    for left_side in [true, false] {
        let vertex_count = if left_side { lc.num_left } else { lc.num_right };
        for x in 0..vertex_count {
            let comps: Vec<usize> = lc
                .edges
                .iter()
                .enumerate()
                .filter(|(_, e)| if left_side { e.left == x } else { e.right == x })
                .map(|(t, _)| t)
                .collect();
            let complete = visit_combinations(comps.len(), g, &mut |subset| {
                let chosen: Vec<usize> = subset.iter().map(|&i| comps[i]).collect();
                visit_tuples(
                    lc,
                    lay,
                    &chosen,
                    left_side,
                    &mut Vec::new(),
                    &mut Vec::new(),
                    f,
                )
            });
            if !complete {
                return false;
            }
        }
    }
    true
}

pub fn gen_label_cover(
    lc: &LabelCoverInstance,
    g: usize,
) -> Result<(MinMaxInstance, LabelCoverMeta), ReductionError> {
    gen_label_cover_with_cap(lc, g, DEFAULT_SCENARIO_CAP)
}

/// Builds the gadget instance. Identical scenario cost rows (the same label
/// edge set can be charged once from each side, e.g. singletons at `g = 1`)
/// are merged, keeping first-occurrence order; the always-zero scenario goes
/// last so the scenario set is never empty. The cap applies to the raw
/// pre-merge count.
pub fn gen_label_cover_with_cap(
    lc: &LabelCoverInstance,
    g: usize,
    cap: u64,
) -> Result<(MinMaxInstance, LabelCoverMeta), ReductionError> {
    if g == 0 {
        return Err(ReductionError::ParamsInfeasible {
            detail: "g must be at least 1".into(),
        });
    }
    for edge in &lc.edges {
        if edge.pairs.len() < 2 {
            return Err(ReductionError::RelationTooSmall {
                left: edge.left,
                right: edge.right,
            });
        }
    }
    let lay = layout(lc);
    // Count before materializing: the tuple space is exponential in g.
    let mut raw_count: u64 = 0;
    let complete = visit_scenarios(lc, &lay, g, &mut |_| {
        raw_count += 1;
        raw_count <= cap
    });
    if !complete {
        return Err(ReductionError::ScenarioBlowup {
            count: raw_count,
            cap,
        });
    }

    let num_edges = lay.graph_edges.len();
    let mut scenarios: Vec<Vec<f64>> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    visit_scenarios(lc, &lay, g, &mut |tuple| {
        let mut key = tuple.to_vec();
        key.sort_unstable();
        if seen.insert(key) {
            let mut costs = vec![0.0; num_edges];
            for &e in tuple {
                costs[e] = 1.0;
            }
            scenarios.push(costs);
        }
        true
    });
    scenarios.push(vec![0.0; num_edges]);

    let graph = Graph::new(lay.num_vertices, lay.graph_edges.clone())
        .expect("gadget graph is connected and loop-free by construction");
    let name = format!("labelcover-v{}w{}-g{}", lc.num_left, lc.num_right, g);
    let inst = MinMaxInstance::new(name, graph, scenarios)
        .expect("gadget scenarios are finite and well shaped");

    let mut label_edges = Vec::new();
    let mut dummy_edges = Vec::new();
    for (t, edge) in lc.edges.iter().enumerate() {
        for (p, &(a, b)) in edge.pairs.iter().enumerate() {
            label_edges.push(ComponentEdgeRole {
                edge: lay.components[t].label_edges[p],
                left: edge.left,
                right: edge.right,
                a,
                b,
            });
            dummy_edges.push(ComponentEdgeRole {
                edge: lay.components[t].dummy_edges[p],
                left: edge.left,
                right: edge.right,
                a,
                b,
            });
        }
    }
    let meta = LabelCoverMeta {
        g,
        hub_edges: lay.hub_edges,
        label_edges,
        dummy_edges,
        raw_scenario_count: raw_count,
    };
    Ok((inst, meta))
}

/// Turns a labeling that satisfies every edge into the witness tree: the
/// matching label edge in each component plus all dummy and hub edges. If
/// the labeling satisfies every edge, the tree costs at most 1 under every
/// scenario (scenario tuples carry distinct labels at one vertex; the tree's
/// label edges at that vertex all carry the same one).
///
/// The tree does not depend on `g` — only scenarios do — so the witness for
/// a given labeling is the same across all generated variants.
pub fn labeling_to_tree(
    lc: &LabelCoverInstance,
    labeling: &Labeling,
) -> Result<EdgeSet, ReductionError> {
    if labeling.left_labels.len() != lc.num_left || labeling.right_labels.len() != lc.num_right {
        return Err(ReductionError::ParamsInfeasible {
            detail: "labeling must assign one label to every vertex".into(),
        });
    }
    let lay = layout(lc);
    let mut tree = EdgeSet::new(lay.graph_edges.len());
    for &h in &lay.hub_edges {
        tree.insert(h);
    }
    for (t, edge) in lc.edges.iter().enumerate() {
        let want = (
            labeling.left_labels[edge.left],
            labeling.right_labels[edge.right],
        );
        let p = edge
            .pairs
            .iter()
            .position(|&pair| pair == want)
            .ok_or(ReductionError::LabelingNotTotal {
                left: edge.left,
                right: edge.right,
            })?;
        tree.insert(lay.components[t].label_edges[p]);
        for &d in &lay.components[t].dummy_edges {
            tree.insert(d);
        }
    }
    Ok(tree)
}
