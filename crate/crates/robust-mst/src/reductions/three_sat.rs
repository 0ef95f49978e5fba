//! 3-SAT → min-max spanning tree gadget with negative costs.
//!
//! Each clause becomes a five-vertex gadget: spine vertex `s_i`, one middle
//! vertex per literal occurrence, spine vertex `t_i` (shared with the next
//! clause). The spine-side edge of a middle vertex is that occurrence's
//! *occurrence edge* — taking it means "this occurrence is a chosen true
//! literal" — and the three exit edges always cost −1. Every unordered pair
//! of contradictory occurrences (`x` here, `¬x` there) yields one scenario
//! charging `4m − 1` to exactly those two occurrence edges and −1 to every
//! other edge.
//!
//! The accounting: a spanning tree has exactly `4m` edges, so under a
//! scenario it pays `j(4m − 1) − (4m − j) = 4m(j − 1)` where `j ∈ {0, 1, 2}`
//! counts charged tree edges. The spine forces at least one occurrence edge
//! per clause into every tree. If the formula is satisfiable, choosing each
//! clause's true literal keeps `j ≤ 1` everywhere (a single assignment never
//! takes both sides of a contradiction), and `j = 1` is reached because
//! every variable occurs with both polarities — so the optimum is exactly 0.
//! If the formula is unsatisfiable, the occurrence edges of *any* tree form
//! an inconsistent literal set, some scenario charges two of them, and every
//! tree costs at least `4m`.

use serde::Serialize;

use super::ReductionError;
use crate::graph::{EdgeSet, Graph};
use crate::instances::MinMaxInstance;

/// A signed variable; `var` is 0-based.
#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn holds_under(&self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }
}

/// A 3-CNF formula in which every variable occurs with both polarities.
#[derive(Clone, Debug, PartialEq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<[Literal; 3]>,
}

impl CnfFormula {
    /// Clauses use DIMACS-style signed 1-based literals: `3` is variable 2
    /// positive, `-1` is variable 0 negated.
    pub fn new(num_vars: usize, clauses: &[[i64; 3]]) -> Result<Self, ReductionError> {
        let infeasible = |detail: String| ReductionError::ParamsInfeasible { detail };
        if num_vars == 0 || clauses.is_empty() {
            return Err(infeasible(
                "formula needs at least one variable and one clause".into(),
            ));
        }
        let mut parsed = Vec::with_capacity(clauses.len());
        let mut occurs_positive = vec![false; num_vars];
        let mut occurs_negative = vec![false; num_vars];
        for (c, clause) in clauses.iter().enumerate() {
            for (i, &lit) in clause.iter().enumerate() {
                if lit == 0 || lit.unsigned_abs() as usize > num_vars {
                    return Err(infeasible(format!(
                        "clause {c} uses literal {lit} outside ±1..={num_vars}"
                    )));
                }
                if clause[..i].contains(&lit) {
                    return Err(infeasible(format!(
                        "clause {c} repeats literal {lit}"
                    )));
                }
            }
            let lits = clause.map(|lit| {
                let var = lit.unsigned_abs() as usize - 1;
                if lit > 0 {
                    occurs_positive[var] = true;
                } else {
                    occurs_negative[var] = true;
                }
                Literal {
                    var,
                    positive: lit > 0,
                }
            });
            parsed.push(lits);
        }
        for var in 0..num_vars {
            if !occurs_positive[var] || !occurs_negative[var] {
                return Err(infeasible(format!(
                    "variable {} must occur with both polarities",
                    var + 1
                )));
            }
        }
        Ok(CnfFormula {
            num_vars,
            clauses: parsed,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    pub fn satisfies(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.num_vars
            && self
                .clauses
                .iter()
                .all(|clause| clause.iter().any(|lit| lit.holds_under(assignment)))
    }
}

/// Reads DIMACS CNF: `c` comment lines, a `p cnf <vars> <clauses>` header,
/// then whitespace-separated literals with `0` closing each clause.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, ReductionError> {
    let infeasible = |detail: String| ReductionError::ParamsInfeasible { detail };
    let mut header: Option<(usize, usize)> = None;
    let mut literals: Vec<i64> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if header.is_some() {
                return Err(infeasible("duplicate `p` header".into()));
            }
            let fields: Vec<&str> = rest.split_whitespace().collect();
            let parsed = match fields.as_slice() {
                ["cnf", vars, clauses] => vars
                    .parse::<usize>()
                    .ok()
                    .zip(clauses.parse::<usize>().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or_else(|| {
                infeasible(format!("malformed header `{line}`, expected `p cnf V C`"))
            })?);
            continue;
        }
        for token in line.split_whitespace() {
            literals.push(
                token
                    .parse::<i64>()
                    .map_err(|_| infeasible(format!("not a literal: `{token}`")))?,
            );
        }
    }
    let (num_vars, declared) =
        header.ok_or_else(|| infeasible("missing `p cnf` header".into()))?;
    let mut clauses: Vec<[i64; 3]> = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    for lit in literals {
        if lit == 0 {
            let clause: [i64; 3] = current.as_slice().try_into().map_err(|_| {
                infeasible(format!(
                    "clause {} has {} literals, expected exactly 3",
                    clauses.len(),
                    current.len()
                ))
            })?;
            clauses.push(clause);
            current.clear();
        } else {
            current.push(lit);
        }
    }
    if !current.is_empty() {
        return Err(infeasible("unterminated clause at end of input".into()));
    }
    if clauses.len() != declared {
        return Err(infeasible(format!(
            "header declares {declared} clauses, found {}",
            clauses.len()
        )));
    }
    CnfFormula::new(num_vars, &clauses)
}

/// Role map for a generated instance.
#[derive(Clone, Debug, Serialize)]
pub struct ThreeSatMeta {
    /// `occurrence_edges[c][p]` is the edge meaning "clause `c` chooses the
    /// literal at position `p`".
    pub occurrence_edges: Vec<[usize; 3]>,
    /// Exit edges, always −1; `completion_edges[c][p]` partners the
    /// occurrence edge above.
    pub completion_edges: Vec<[usize; 3]>,
    /// Per scenario, the two contradictory occurrence edges it charges.
    pub scenario_pairs: Vec<(usize, usize)>,
}

/// Builds the gadget chain. Vertices: `s_i = 4i`, middles `4i + 1 + p`,
/// `t_i = 4(i + 1)`; clause `i` owns edge indices `6i..6i + 6`, occurrence
/// edges first. Scenarios enumerate contradictory occurrence pairs in
/// ascending edge-index order.
pub fn gen_3sat(phi: &CnfFormula) -> (MinMaxInstance, ThreeSatMeta) {
    let m = phi.num_clauses();
    let mut edges = Vec::with_capacity(6 * m);
    let mut occurrence_edges = Vec::with_capacity(m);
    let mut completion_edges = Vec::with_capacity(m);
    for i in 0..m {
        let (s, t) = (4 * i, 4 * (i + 1));
        occurrence_edges.push([edges.len(), edges.len() + 1, edges.len() + 2]);
        for p in 0..3 {
            edges.push((s, s + 1 + p));
        }
        completion_edges.push([edges.len(), edges.len() + 1, edges.len() + 2]);
        for p in 0..3 {
            edges.push((s + 1 + p, t));
        }
    }

    // One occurrence per (clause, position), flattened in edge order.
    let occurrences: Vec<(usize, Literal)> = phi
        .clauses()
        .iter()
        .enumerate()
        .flat_map(|(i, clause)| {
            clause
                .iter()
                .enumerate()
                .map(move |(p, &lit)| (6 * i + p, lit))
        })
        .collect();
    let charged = (4 * m - 1) as f64;
    let mut scenarios = Vec::new();
    let mut scenario_pairs = Vec::new();
    for (i, &(e1, l1)) in occurrences.iter().enumerate() {
        for &(e2, l2) in &occurrences[i + 1..] {
            if l1.var == l2.var && l1.positive != l2.positive {
                let mut costs = vec![-1.0; edges.len()];
                costs[e1] = charged;
                costs[e2] = charged;
                scenarios.push(costs);
                scenario_pairs.push((e1, e2));
            }
        }
    }

    let graph = Graph::new(4 * m + 1, edges).expect("gadget chain is connected");
    let name = format!("3sat-m{}-v{}", m, phi.num_vars());
    let inst = MinMaxInstance::new(name, graph, scenarios)
        .expect("both polarities of every variable occur, so scenarios exist");
    let meta = ThreeSatMeta {
        occurrence_edges,
        completion_edges,
        scenario_pairs,
    };
    (inst, meta)
}

/// Turns a satisfying assignment into the witness tree: per clause, the
/// occurrence edge of the first true literal plus all three exit edges. The
/// tree evaluates to exactly 0.
pub fn assignment_to_tree(
    phi: &CnfFormula,
    assignment: &[bool],
) -> Result<EdgeSet, ReductionError> {
    if assignment.len() != phi.num_vars() {
        return Err(ReductionError::ParamsInfeasible {
            detail: "assignment must value every variable".into(),
        });
    }
    let m = phi.num_clauses();
    let mut tree = EdgeSet::new(6 * m);
    for (i, clause) in phi.clauses().iter().enumerate() {
        let p = clause
            .iter()
            .position(|lit| lit.holds_under(assignment))
            .ok_or(ReductionError::AssignmentDoesNotSatisfy { clause: i })?;
        tree.insert(6 * i + p);
        for exit in 0..3 {
            tree.insert(6 * i + 3 + exit);
        }
    }
    Ok(tree)
}
