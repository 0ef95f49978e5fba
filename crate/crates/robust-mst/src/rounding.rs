//! Randomized rounding of fractional relaxation points into spanning trees.
//!
//! Both rounding schemes repeat the same basic step: sample every edge
//! independently with its fractional value as the inclusion probability and
//! union the sample into an accumulator forest, stopping as soon as the
//! accumulator connects the graph.  The iteration budgets `r` and the cost
//! guarantee attached to each iteration come from the closed-form bound
//! calculators below.
//!
//! Sampling is keyed, not sequential: the decision for edge `e` in iteration
//! `k` depends only on `(seed, k, e)`, so replays are byte-identical no
//! matter how the work is scheduled.

use crate::graph::{kruskal_completion, kruskal_mst_restricted, EdgeSet, UnionFind};
use crate::instances::{
    evaluate_2stage, evaluate_minmax, MinMaxInstance, TwoStageInstance, TwoStageSolution,
};
use crate::lp::{
    find_min_feasible_c_2stage_traced, find_min_feasible_c_traced, FractionalSolution, LpError,
    LpEvent, DEFAULT_TOL_REL,
};
use crate::rng::{keyed_u01, DEFAULT_SEED};
use std::fmt;

/// Largest admissible `(ln K + ln f) / ln n` is this multiple of `rho1`.
const ADMISSIBILITY_SLOPE: f64 = 3.92;

#[derive(Clone, Debug, PartialEq)]
pub enum RoundingError {
    /// The rounding guarantee needs nonnegative costs (pruning a sampled
    /// forest down to a tree must never increase any scenario's cost).
    NegativeCosts,
    /// The fractional point does not match the instance (wrong edge count,
    /// or missing second-stage values for a two-stage instance).
    IncompatibleSolution,
    /// The bound calculator was invoked outside the admissible parameter
    /// range (`rho1 < 2`, or K and f too large relative to n).
    ParamsInadmissible { detail: String },
    /// Every rounding attempt ended without connecting the graph.
    RestartsExhausted { attempts: u32, lp_bound: f64 },
    Lp(LpError),
}

impl fmt::Display for RoundingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RoundingError::NegativeCosts => {
                write!(f, "randomized rounding requires nonnegative costs")
            }
            RoundingError::IncompatibleSolution => {
                write!(f, "fractional solution does not match the instance shape")
            }
            RoundingError::ParamsInadmissible { detail } => {
                write!(f, "rounding parameters out of range: {detail}")
            }
            RoundingError::RestartsExhausted { attempts, lp_bound } => write!(
                f,
                "no rounding attempt connected the graph ({attempts} attempts, \
                 relaxation bound {lp_bound})"
            ),
            RoundingError::Lp(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RoundingError {}

impl From<LpError> for RoundingError {
    fn from(e: LpError) -> Self {
        RoundingError::Lp(e)
    }
}

/// Knobs for the end-to-end approximation pipelines.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundingParams {
    /// Exponent in the per-iteration failure probability `1/(f·n^(rho1-1))`;
    /// must be at least 2.
    pub rho1: f64,
    /// Failure-probability sharpening factor; at least 1.
    pub f: f64,
    pub seed: u64,
    /// Additional attempts (with seeds `seed+1`, `seed+2`, ...) after a
    /// rounding run fails to connect the graph.
    pub max_restarts: u32,
    /// Relative tolerance of the budget bisection.
    pub tol_rel: f64,
    /// Worker threads for the two-stage separation oracle; results are
    /// identical for any value.
    pub threads: usize,
}

impl Default for RoundingParams {
    fn default() -> Self {
        RoundingParams {
            rho1: 2.0,
            f: 1.0,
            seed: DEFAULT_SEED,
            max_restarts: 3,
            tol_rel: DEFAULT_TOL_REL,
            threads: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RoundingStatus {
    Success,
    /// The accumulator never connected within the iteration budget.
    NotConnected,
}

/// Result of a single min-max rounding run.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundingOutcome {
    pub status: RoundingStatus,
    /// Spanning tree extracted from the accumulator; present iff `Success`.
    pub tree: Option<EdgeSet>,
    /// `evaluate_minmax` of the tree; present iff `Success`.
    pub value: Option<f64>,
    pub iterations_used: u32,
    /// The seed this run consumed.
    pub seed: u64,
}

/// Result of a single two-stage rounding run.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoStageRoundingOutcome {
    pub status: RoundingStatus,
    pub solution: Option<TwoStageSolution>,
    pub value: Option<f64>,
    pub iterations_used: u32,
    pub seed: u64,
}

/// One line of the rounding trace.
#[derive(Clone, Debug, PartialEq)]
pub struct IterationRecord {
    /// 1-based iteration counter.
    pub iteration: u32,
    pub components_before: usize,
    pub components_after: usize,
    /// Cost of this iteration's fresh sample under each scenario (for
    /// two-stage runs: first-stage spend plus the scenario's own sample).
    pub per_scenario_added_cost: Vec<f64>,
    pub connected: bool,
}

/// Iteration budget for min-max rounding: `ceil(2(11+sqrt(21)) ln n)`.
pub fn compute_r_minmax(n: usize) -> u32 {
    assert!(n >= 2, "iteration count is defined for n >= 2");
    let coef = 2.0 * (11.0 + 21f64.sqrt());
    (coef * (n as f64).ln()).ceil() as u32
}

/// Iteration budget for two-stage rounding:
/// `ceil((sqrt(ln n + ln K) + sqrt(21 ln n + ln K))^2)`.
pub fn compute_r_2stage(n: usize, k: usize) -> u32 {
    assert!(n >= 2, "iteration count is defined for n >= 2");
    assert!(k >= 1, "iteration count is defined for K >= 1");
    let ln_n = (n as f64).ln();
    let ln_k = (k as f64).ln();
    let root = (ln_n + ln_k).sqrt() + (21.0 * ln_n + ln_k).sqrt();
    (root * root).ceil() as u32
}

/// Per-iteration cost-bound multiplier: a single sampled edge set spends at
/// most `multiplier × C` in every scenario with probability at least
/// `1 − 1/(f·n^(rho1−1))`, when the sampling marginals are feasible for the
/// relaxation at budget `C`.
///
/// Admissible only while `rho1 ≥ 2` and `K` and `f` stay polynomially
/// bounded in `n` (`(ln K + ln f)/ln n ≤ 3.92·rho1`).
pub fn lemma1_bound_multiplier(
    n: usize,
    k: usize,
    f: f64,
    rho1: f64,
) -> Result<f64, RoundingError> {
    if n < 2 || k < 1 || !f.is_finite() || f < 1.0 || !rho1.is_finite() {
        return Err(RoundingError::ParamsInadmissible {
            detail: format!("need n >= 2, K >= 1, f >= 1 (got n={n}, K={k}, f={f})"),
        });
    }
    if rho1 < 2.0 {
        return Err(RoundingError::ParamsInadmissible {
            detail: format!("rho1 must be at least 2 (got {rho1})"),
        });
    }
    let ln_n = (n as f64).ln();
    let excess = (k as f64).ln() + f.ln();
    if excess > ADMISSIBILITY_SLOPE * rho1 * ln_n {
        return Err(RoundingError::ParamsInadmissible {
            detail: format!(
                "(ln K + ln f)/ln n = {:.3} exceeds {ADMISSIBILITY_SLOPE}*rho1 = {:.3}",
                excess / ln_n,
                ADMISSIBILITY_SLOPE * rho1
            ),
        });
    }
    let base = rho1 * ln_n;
    Ok((base + 1.5) * (1.0 + 2.0 * (1.0 + excess / base).sqrt()))
}

/// Whether edge `e` is included in iteration `k` of the run keyed by `seed`,
/// given inclusion probability `p`.  `slot` distinguishes variable groups
/// sharing an iteration (0 for min-max and two-stage first stage, `1+s` for
/// scenario `s`'s second stage).
fn sample_edge(seed: u64, iteration: u32, slot: usize, num_edges: usize, e: usize, p: f64) -> bool {
    keyed_u01(seed, iteration as u64, (slot * num_edges + e) as u64) < p
}

/// One full pass of min-max rounding from a fractional point.
///
/// Runs at most `compute_r_minmax(n)` iterations; each samples every edge
/// independently with probability `x̂_e` and unions the sample into an
/// accumulator.  As soon as the accumulator connects the graph the result is
/// the accumulator's minimum spanning tree under worst-case edge costs —
/// with nonnegative costs, discarding edges never hurts any scenario.
pub fn round_minmax(
    inst: &MinMaxInstance,
    x_hat: &FractionalSolution,
    seed: u64,
) -> Result<RoundingOutcome, RoundingError> {
    round_minmax_traced(inst, x_hat, seed, &mut |_| {})
}

pub fn round_minmax_traced(
    inst: &MinMaxInstance,
    x_hat: &FractionalSolution,
    seed: u64,
    trace: &mut dyn FnMut(&IterationRecord),
) -> Result<RoundingOutcome, RoundingError> {
    if inst.has_negative_costs() {
        return Err(RoundingError::NegativeCosts);
    }
    let n = inst.num_vertices();
    let m = inst.num_edges();
    if x_hat.x.len() != m {
        return Err(RoundingError::IncompatibleSolution);
    }
    if n <= 1 {
        return Ok(RoundingOutcome {
            status: RoundingStatus::Success,
            tree: Some(EdgeSet::new(m)),
            value: Some(0.0),
            iterations_used: 0,
            seed,
        });
    }
    let r = compute_r_minmax(n);
    let mut accumulator = EdgeSet::new(m);
    let mut uf = UnionFind::new(n);
    for k in 1..=r {
        let before = uf.components();
        let sampled: Vec<usize> = (0..m)
            .filter(|&e| sample_edge(seed, k, 0, m, e, x_hat.x[e]))
            .collect();
        let per_scenario: Vec<f64> = (0..inst.num_scenarios())
            .map(|s| sampled.iter().map(|&e| inst.cost(s, e)).sum())
            .collect();
        for &e in &sampled {
            if accumulator.insert(e) {
                let (u, v) = inst.graph().endpoints(e);
                uf.union(u, v);
            }
        }
        let connected = uf.components() == 1;
        trace(&IterationRecord {
            iteration: k,
            components_before: before,
            components_after: uf.components(),
            per_scenario_added_cost: per_scenario,
            connected,
        });
        if connected {
            let tree = kruskal_mst_restricted(inst.graph(), &inst.worst_case_costs(), &accumulator)
                .expect("a connected accumulator always contains a spanning tree");
            let value = evaluate_minmax(inst, &tree)
                .expect("restricted Kruskal on a connected accumulator yields a spanning tree");
            return Ok(RoundingOutcome {
                status: RoundingStatus::Success,
                tree: Some(tree),
                value: Some(value),
                iterations_used: k,
                seed,
            });
        }
    }
    Ok(RoundingOutcome {
        status: RoundingStatus::NotConnected,
        tree: None,
        value: None,
        iterations_used: r,
        seed,
    })
}

/// One full pass of two-stage rounding from a fractional point with
/// second-stage values.
///
/// Each iteration draws one shared first-stage sample (added to every
/// scenario's forest) and an independent second-stage sample per scenario;
/// the run succeeds once every scenario's forest is connected.  The sampled
/// first-stage set is pruned to a cheapest forest under first-stage costs
/// (sampling can close cycles), and each scenario completion is the cheapest
/// completion using that scenario's sampled second-stage edges.
pub fn round_2stage(
    inst: &TwoStageInstance,
    sol: &FractionalSolution,
    seed: u64,
) -> Result<TwoStageRoundingOutcome, RoundingError> {
    round_2stage_traced(inst, sol, seed, &mut |_| {})
}

pub fn round_2stage_traced(
    inst: &TwoStageInstance,
    sol: &FractionalSolution,
    seed: u64,
    trace: &mut dyn FnMut(&IterationRecord),
) -> Result<TwoStageRoundingOutcome, RoundingError> {
    if inst.has_negative_costs() {
        return Err(RoundingError::NegativeCosts);
    }
    let n = inst.num_vertices();
    let m = inst.num_edges();
    let k_count = inst.num_scenarios();
    let second = sol
        .second_stage
        .as_ref()
        .ok_or(RoundingError::IncompatibleSolution)?;
    if sol.x.len() != m || second.len() != k_count || second.iter().any(|row| row.len() != m) {
        return Err(RoundingError::IncompatibleSolution);
    }
    if n <= 1 {
        let solution = TwoStageSolution {
            first_stage: EdgeSet::new(m),
            completions: vec![EdgeSet::new(m); k_count],
        };
        return Ok(TwoStageRoundingOutcome {
            status: RoundingStatus::Success,
            solution: Some(solution),
            value: Some(0.0),
            iterations_used: 0,
            seed,
        });
    }
    let r = compute_r_2stage(n, k_count);
    let mut first_acc = EdgeSet::new(m);
    let mut second_acc = vec![EdgeSet::new(m); k_count];
    let mut forests: Vec<UnionFind> = (0..k_count).map(|_| UnionFind::new(n)).collect();
    for k in 1..=r {
        let before = forests.iter().map(|uf| uf.components()).max().unwrap_or(1);
        let first_sample: Vec<usize> = (0..m)
            .filter(|&e| sample_edge(seed, k, 0, m, e, sol.x[e]))
            .collect();
        let first_spend: f64 = first_sample
            .iter()
            .map(|&e| inst.first_stage_costs()[e])
            .sum();
        let mut per_scenario = vec![0.0; k_count];
        for (s, row) in second.iter().enumerate() {
            let mut spend = first_spend;
            for e in 0..m {
                if sample_edge(seed, k, 1 + s, m, e, row[e]) {
                    if second_acc[s].insert(e) {
                        let (u, v) = inst.graph().endpoints(e);
                        forests[s].union(u, v);
                    }
                    spend += inst.cost2(s, e);
                }
            }
            per_scenario[s] = spend;
        }
        for &e in &first_sample {
            if first_acc.insert(e) {
                let (u, v) = inst.graph().endpoints(e);
                for uf in &mut forests {
                    uf.union(u, v);
                }
            }
        }
        let after = forests.iter().map(|uf| uf.components()).max().unwrap_or(1);
        let connected = after == 1;
        trace(&IterationRecord {
            iteration: k,
            components_before: before,
            components_after: after,
            per_scenario_added_cost: per_scenario,
            connected,
        });
        if connected {
            let solution = finalize_2stage(inst, &first_acc, &second_acc);
            let value = evaluate_2stage(inst, &solution)
                .expect("finalized solution satisfies the two-stage invariants by construction");
            return Ok(TwoStageRoundingOutcome {
                status: RoundingStatus::Success,
                solution: Some(solution),
                value: Some(value),
                iterations_used: k,
                seed,
            });
        }
    }
    Ok(TwoStageRoundingOutcome {
        status: RoundingStatus::NotConnected,
        solution: None,
        value: None,
        iterations_used: r,
        seed,
    })
}

/// Prune the sampled first-stage set to its cheapest forest, then complete
/// it per scenario from that scenario's sampled second-stage edges.
fn finalize_2stage(
    inst: &TwoStageInstance,
    first_acc: &EdgeSet,
    second_acc: &[EdgeSet],
) -> TwoStageSolution {
    let n = inst.num_vertices();
    let m = inst.num_edges();
    // Kruskal over the sampled set keeps a cheapest acyclic subset: any
    // sampled cycle loses exactly its most expensive edge (highest index on
    // ties).  The pruned forest spans the same components, so completions
    // built on it connect whenever the sampled forests did.
    let mut order: Vec<usize> = first_acc.iter().collect();
    order.sort_by(|&a, &b| {
        inst.first_stage_costs()[a]
            .total_cmp(&inst.first_stage_costs()[b])
            .then(a.cmp(&b))
    });
    let mut uf = UnionFind::new(n);
    let mut first_stage = EdgeSet::new(m);
    for e in order {
        let (u, v) = inst.graph().endpoints(e);
        if uf.union(u, v) {
            first_stage.insert(e);
        }
    }
    let completions: Vec<EdgeSet> = (0..inst.num_scenarios())
        .map(|s| {
            kruskal_completion(
                inst.graph(),
                inst.scenario_costs(s),
                &first_stage,
                Some(&second_acc[s]),
            )
            .expect("every scenario forest was connected before finalization")
        })
        .collect();
    TwoStageSolution {
        first_stage,
        completions,
    }
}

/// End-to-end min-max approximation: bisect for the smallest feasible
/// budget, then round, restarting with `seed+1, seed+2, ...` while the
/// accumulator fails to connect.
#[derive(Clone, Debug, PartialEq)]
pub struct MinMaxApprox {
    pub tree: EdgeSet,
    pub value: f64,
    /// The relaxation budget; a lower bound on the integral optimum up to
    /// the bisection tolerance.
    pub lp_bound: f64,
    pub iterations_used: u32,
    /// Total rounding runs consumed, counting the successful one.
    pub attempts: u32,
    /// Seed of the successful run.
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwoStageApprox {
    pub solution: TwoStageSolution,
    pub value: f64,
    pub lp_bound: f64,
    pub iterations_used: u32,
    pub attempts: u32,
    pub seed: u64,
}

pub fn solve_minmax_approx(
    inst: &MinMaxInstance,
    params: &RoundingParams,
) -> Result<MinMaxApprox, RoundingError> {
    solve_minmax_approx_traced(inst, params, &mut |_| {}, &mut |_, _| {})
}

pub fn solve_minmax_approx_traced(
    inst: &MinMaxInstance,
    params: &RoundingParams,
    lp_trace: &mut dyn FnMut(&LpEvent),
    rounding_trace: &mut dyn FnMut(u32, &IterationRecord),
) -> Result<MinMaxApprox, RoundingError> {
    if inst.has_negative_costs() {
        return Err(RoundingError::NegativeCosts);
    }
    let (lp_bound, x_hat) = find_min_feasible_c_traced(inst, params.tol_rel, lp_trace)?;
    for attempt in 0..=params.max_restarts {
        let seed = params.seed.wrapping_add(attempt as u64);
        let outcome =
            round_minmax_traced(inst, &x_hat, seed, &mut |rec| rounding_trace(attempt, rec))?;
        if outcome.status == RoundingStatus::Success {
            return Ok(MinMaxApprox {
                tree: outcome.tree.expect("success carries a tree"),
                value: outcome.value.expect("success carries a value"),
                lp_bound,
                iterations_used: outcome.iterations_used,
                attempts: attempt + 1,
                seed,
            });
        }
    }
    Err(RoundingError::RestartsExhausted {
        attempts: params.max_restarts + 1,
        lp_bound,
    })
}

pub fn solve_2stage_approx(
    inst: &TwoStageInstance,
    params: &RoundingParams,
) -> Result<TwoStageApprox, RoundingError> {
    solve_2stage_approx_traced(inst, params, &mut |_| {}, &mut |_, _| {})
}

pub fn solve_2stage_approx_traced(
    inst: &TwoStageInstance,
    params: &RoundingParams,
    lp_trace: &mut dyn FnMut(&LpEvent),
    rounding_trace: &mut dyn FnMut(u32, &IterationRecord),
) -> Result<TwoStageApprox, RoundingError> {
    if inst.has_negative_costs() {
        return Err(RoundingError::NegativeCosts);
    }
    let (lp_bound, sol) =
        find_min_feasible_c_2stage_traced(inst, params.tol_rel, params.threads, lp_trace)?;
    for attempt in 0..=params.max_restarts {
        let seed = params.seed.wrapping_add(attempt as u64);
        let outcome =
            round_2stage_traced(inst, &sol, seed, &mut |rec| rounding_trace(attempt, rec))?;
        if outcome.status == RoundingStatus::Success {
            return Ok(TwoStageApprox {
                solution: outcome.solution.expect("success carries a solution"),
                value: outcome.value.expect("success carries a value"),
                lp_bound,
                iterations_used: outcome.iterations_used,
                attempts: attempt + 1,
                seed,
            });
        }
    }
    Err(RoundingError::RestartsExhausted {
        attempts: params.max_restarts + 1,
        lp_bound,
    })
}
