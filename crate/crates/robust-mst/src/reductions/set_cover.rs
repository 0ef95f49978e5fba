//! Set cover → two-stage min-max spanning tree gadget, cost for cost.
//!
//! The generated graph is complete on `m + n + 1` vertices: one vertex per
//! set, one per ground-set element, and a root. Buying the spoke
//! (root, set `i`) in the first stage costs 1 — that is "choose set `i`" —
//! and every other edge costs `m + 1` up front. The scenario for element `j`
//! prices edges across the cut around `{element j} ∪ {sets containing j}` at
//! `m + 1` and everything else at 0, so a tree completes for free under
//! scenario `j` exactly when some chosen set covers `j`: the element vertex
//! can only escape its cut through a set vertex whose spoke is already paid
//! for. Minimum two-stage value = minimum cover size.

use serde::{Deserialize, Serialize};

use super::ReductionError;
use crate::graph::{kruskal_completion, EdgeSet, Graph};
use crate::instances::{TwoStageInstance, TwoStageSolution};

#[derive(Clone, Debug, PartialEq)]
pub struct SetCoverInstance {
    num_elements: usize,
    sets: Vec<Vec<usize>>,
}

impl SetCoverInstance {
    pub fn new(num_elements: usize, mut sets: Vec<Vec<usize>>) -> Result<Self, ReductionError> {
        if num_elements == 0 || sets.is_empty() {
            return Err(ReductionError::ParamsInfeasible {
                detail: "set cover needs at least one element and one set".into(),
            });
        }
        let mut covered = vec![false; num_elements];
        for (i, set) in sets.iter_mut().enumerate() {
            set.sort_unstable();
            set.dedup();
            for &element in set.iter() {
                if element >= num_elements {
                    return Err(ReductionError::ParamsInfeasible {
                        detail: format!(
                            "set {i} contains element {element}, ground set is 0..{num_elements}"
                        ),
                    });
                }
                covered[element] = true;
            }
        }
        if let Some(element) = covered.iter().position(|&c| !c) {
            return Err(ReductionError::NotACover { element });
        }
        Ok(SetCoverInstance { num_elements, sets })
    }

    pub fn from_json(bytes: &[u8]) -> Result<Self, ReductionError> {
        let doc: SetCoverDoc = serde_json::from_slice(bytes)
            .map_err(|e| ReductionError::ParamsInfeasible { detail: e.to_string() })?;
        SetCoverInstance::new(doc.num_elements, doc.sets)
    }

    pub fn num_elements(&self) -> usize {
        self.num_elements
    }

    pub fn num_sets(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    fn set_contains(&self, i: usize, element: usize) -> bool {
        self.sets[i].binary_search(&element).is_ok()
    }
}

#[derive(Deserialize)]
struct SetCoverDoc {
    num_elements: usize,
    sets: Vec<Vec<usize>>,
}

/// Role map for a generated instance.
#[derive(Clone, Debug, Serialize)]
pub struct SetCoverMeta {
    /// Vertex of set `i` (always `i`, recorded for the sidecar file).
    pub set_vertices: Vec<usize>,
    /// Vertex of element `j` (always `num_sets + j`).
    pub element_vertices: Vec<usize>,
    pub root: usize,
    /// `set_edges[i]` is the unit-cost first-stage spoke (root, set `i`).
    pub set_edges: Vec<usize>,
}

pub fn gen_set_cover(sc: &SetCoverInstance) -> (TwoStageInstance, SetCoverMeta) {
    let m = sc.num_sets();
    let n = sc.num_elements();
    let num_vertices = m + n + 1;
    let root = m + n;
    let expensive = (m + 1) as f64;

    let mut edges = Vec::with_capacity(num_vertices * (num_vertices - 1) / 2);
    let mut first_stage = Vec::with_capacity(edges.capacity());
    let mut set_edges = vec![usize::MAX; m];
    for u in 0..num_vertices {
        for v in u + 1..num_vertices {
            if u < m && v == root {
                set_edges[u] = edges.len();
                first_stage.push(1.0);
            } else {
                first_stage.push(expensive);
            }
            edges.push((u, v));
        }
    }

    let mut scenarios = Vec::with_capacity(n);
    for j in 0..n {
        let mut in_cut = vec![false; num_vertices];
        in_cut[m + j] = true;
        for i in 0..m {
            if sc.set_contains(i, j) {
                in_cut[i] = true;
            }
        }
        let costs = edges
            .iter()
            .map(|&(u, v)| if in_cut[u] != in_cut[v] { expensive } else { 0.0 })
            .collect();
        scenarios.push(costs);
    }

    let graph = Graph::new(num_vertices, edges).expect("complete graph is connected");
    let name = format!("setcover-m{m}-n{n}");
    let inst = TwoStageInstance::new(name, graph, first_stage, scenarios)
        .expect("one scenario per element, one cost per edge");
    let meta = SetCoverMeta {
        set_vertices: (0..m).collect(),
        element_vertices: (m..m + n).collect(),
        root,
        set_edges,
    };
    (inst, meta)
}

/// Turns a cover into the matching solution: buy the spoke of every chosen
/// set, then complete each scenario greedily — the zero-cost edges suffice,
/// so the solution evaluates to exactly the cover size.
pub fn cover_to_solution(
    sc: &SetCoverInstance,
    cover: &[usize],
) -> Result<TwoStageSolution, ReductionError> {
    let mut chosen = cover.to_vec();
    chosen.sort_unstable();
    chosen.dedup();
    if let Some(&bad) = chosen.iter().find(|&&i| i >= sc.num_sets()) {
        return Err(ReductionError::ParamsInfeasible {
            detail: format!("cover names set {bad}, there are {}", sc.num_sets()),
        });
    }
    for element in 0..sc.num_elements() {
        if !chosen.iter().any(|&i| sc.set_contains(i, element)) {
            return Err(ReductionError::NotACover { element });
        }
    }
    let (inst, meta) = gen_set_cover(sc);
    let mut first_stage = EdgeSet::new(inst.num_edges());
    for &i in &chosen {
        first_stage.insert(meta.set_edges[i]);
    }
    let completions = (0..sc.num_elements())
        .map(|j| {
            kruskal_completion(inst.graph(), inst.scenario_costs(j), &first_stage, None)
                .expect("complete graph always completes")
        })
        .collect();
    Ok(TwoStageSolution {
        first_stage,
        completions,
    })
}

/// Reads a cover back off a solution. Every first-stage edge must be a set
/// spoke and every completion edge free under its scenario — any other edge
/// costs more than a whole cover, so solutions of value ≤ `num_sets` never
/// touch one.
pub fn solution_to_cover(
    sc: &SetCoverInstance,
    sol: &TwoStageSolution,
) -> Result<Vec<usize>, ReductionError> {
    let (inst, _) = gen_set_cover(sc);
    let m = sc.num_sets();
    let root = m + sc.num_elements();
    if sol.first_stage.universe() != inst.num_edges()
        || sol.completions.len() != sc.num_elements()
    {
        return Err(ReductionError::ParamsInfeasible {
            detail: "solution shape does not match the generated instance".into(),
        });
    }
    let mut cover = Vec::new();
    for e in sol.first_stage.iter() {
        let (u, v) = inst.graph().endpoints(e);
        if v == root && u < m {
            cover.push(u);
        } else {
            return Err(ReductionError::SolutionUsesForbiddenEdge { edge: e });
        }
    }
    for (j, completion) in sol.completions.iter().enumerate() {
        if let Some(e) = completion.iter().find(|&e| inst.cost2(j, e) != 0.0) {
            return Err(ReductionError::SolutionUsesForbiddenEdge { edge: e });
        }
    }
    for element in 0..sc.num_elements() {
        if !cover.iter().any(|&i| sc.set_contains(i, element)) {
            return Err(ReductionError::NotACover { element });
        }
    }
    cover.sort_unstable();
    cover.dedup();
    Ok(cover)
}
