//! Fractional relaxations solved by cutting planes, and the binary search
//! for the smallest feasible budget.
//!
//! For a budget `C`, the min-max relaxation asks for fractional edge values
//! `x ∈ [0,1]^m` with `Σ x_e = n−1`, per-scenario budget rows
//! `Σ c^S_e x_e ≤ C`, and `Σ_{e∈δ(W)} x_e ≥ 1` for every vertex cut `W` —
//! the cut rows are generated lazily from global min cuts. Any edge priced
//! above `C` in some scenario is fixed to zero (it could never be part of a
//! tree that stays within the budget). The two-stage variant carries one
//! extra copy of the edge variables per scenario and separates cuts on the
//! combined weights.
//!
//! The smallest feasible `C` (within tolerance) is a valid lower bound on
//! the integral optimum, and its fractional solution is what the rounding
//! module samples from.

use std::collections::HashSet;
use std::fmt;

use crate::graph::{global_min_cut, CutSide, Graph};
use crate::instances::{MinMaxInstance, TwoStageInstance};

mod simplex;

pub use simplex::{lp_solve, Constraint, LinearProgram, LpStatus, Relation, FEAS_TOL, PIVOT_TOL};

/// Separation oracle tolerance: a cut is violated when its value drops
/// below `1 − SEPARATION_TOL`.
pub const SEPARATION_TOL: f64 = 1e-7;

/// Default relative width at which the budget bisection stops. Tight enough
/// that the final budget is within `~1e-7` of the true threshold even on
/// the largest supported instances, so downstream "value ≥ bound − 1e-6"
/// checks hold with room to spare.
pub const DEFAULT_TOL_REL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum LpError {
    /// The relaxation pipeline requires nonnegative costs.
    NegativeCosts,
    /// The solver lost its numerical footing (iteration cap, duplicate or
    /// overflowing cuts, infeasibility where feasibility is guaranteed).
    NumericalFailure { detail: String },
}

impl fmt::Display for LpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LpError::NegativeCosts => {
                write!(f, "the LP relaxation requires nonnegative costs")
            }
            LpError::NumericalFailure { detail } => write!(f, "numerical failure: {detail}"),
        }
    }
}

impl std::error::Error for LpError {}

/// A feasible point of the relaxation at some budget.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionalSolution {
    /// Per-edge values (the first-stage values for two-stage instances).
    pub x: Vec<f64>,
    /// Per-scenario second-stage values; `None` for min-max.
    pub second_stage: Option<Vec<Vec<f64>>>,
}

impl FractionalSolution {
    fn empty() -> Self {
        FractionalSolution {
            x: Vec::new(),
            second_stage: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FeasibilityOutcome {
    Feasible(FractionalSolution),
    Infeasible,
}

/// Structured trace events for the CLI's verbose mode.
#[derive(Clone, Debug)]
pub enum LpEvent {
    /// A violated cut entered the pool.
    Cut {
        budget: f64,
        /// Which scenario's combined weights produced it (`None` for min-max).
        scenario: Option<usize>,
        /// The violated cut's weight, necessarily below 1.
        value: f64,
        side: Vec<usize>,
    },
    /// One feasibility probe of the bisection finished.
    Probe {
        budget: f64,
        feasible: bool,
        pool_size: usize,
        rounds: usize,
    },
}

/// Hard cap on pooled cuts per solve; exceeding it means the separation
/// loop is not converging.
pub fn cut_pool_cap(num_vertices: usize, num_scenarios: usize) -> usize {
    10 * num_vertices * num_scenarios
}

/// Cut constraints discovered so far, deduplicated by canonical side and
/// shared across bisection probes (cuts never mention the budget, so they
/// stay valid for every probe).
pub struct CutPool {
    entries: Vec<(usize, CutSide)>,
    seen: HashSet<(usize, Vec<usize>)>,
    cap: usize,
}

impl CutPool {
    pub fn with_cap(cap: usize) -> Self {
        CutPool {
            entries: Vec::new(),
            seen: HashSet::new(),
            cap,
        }
    }

    pub fn for_minmax(inst: &MinMaxInstance) -> Self {
        Self::with_cap(cut_pool_cap(inst.num_vertices(), inst.num_scenarios()))
    }

    pub fn for_2stage(inst: &TwoStageInstance) -> Self {
        Self::with_cap(cut_pool_cap(inst.num_vertices(), inst.num_scenarios()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Pools a violated cut for `scenario` (0 for min-max). Re-deriving a
    /// cut that is already enforced, or overflowing the cap, signals that
    /// the solver has stopped making progress.
    fn add(&mut self, scenario: usize, cut: CutSide) -> Result<(), LpError> {
        if !self.seen.insert((scenario, cut.canonical_key())) {
            return Err(LpError::NumericalFailure {
                detail: format!(
                    "separation re-derived an enforced cut (scenario {scenario}, side {:?})",
                    cut.vertices()
                ),
            });
        }
        if self.entries.len() >= self.cap {
            return Err(LpError::NumericalFailure {
                detail: format!("cut pool exceeded its cap of {}", self.cap),
            });
        }
        self.entries.push((scenario, cut));
        Ok(())
    }
}

/// Separation oracle: the most-violated cut constraint under `weights`, or
/// `None` when every cut already has weight at least `1 − tol`.
pub fn separate(graph: &Graph, weights: &[f64], tol: f64) -> Option<CutSide> {
    debug_assert!(weights.iter().all(|&w| w >= -1e-9));
    let (value, side) = global_min_cut(graph, weights);
    (value < 1.0 - tol).then_some(side)
}

fn clamp01(values: &mut [f64]) {
    for v in values {
        *v = v.clamp(0.0, 1.0);
    }
}

/// Strict point check backing each feasibility probe. The simplex accepts
/// constraints up to its own tolerance, which near the critical budget can
/// let a probe pass at a budget no exact solution satisfies; the bisection
/// would then converge on an unattainable budget. Counting such marginal
/// probes as infeasible keeps the final budget honest — the returned
/// solution always truly fits it.
fn point_fits_minmax(inst: &MinMaxInstance, budget: f64, x: &[f64], pool: &CutPool) -> bool {
    let n = inst.num_vertices();
    let total: f64 = x.iter().sum();
    if (total - (n - 1) as f64).abs() > 1e-9 * n as f64 {
        return false;
    }
    let slack = 1e-9 * budget.max(1.0);
    let budgets_ok = (0..inst.num_scenarios()).all(|s| {
        let spend: f64 = x.iter().enumerate().map(|(e, &v)| inst.cost(s, e) * v).sum();
        spend <= budget + slack
    });
    budgets_ok
        && pool
            .entries
            .iter()
            .all(|(_, side)| side.cut_value(inst.graph(), x) >= 1.0 - 1e-9)
}

fn point_fits_2stage(
    inst: &TwoStageInstance,
    budget: f64,
    x: &[f64],
    second: &[Vec<f64>],
    pool: &CutPool,
) -> bool {
    let n = inst.num_vertices();
    let slack = 1e-9 * budget.max(1.0);
    let rows_ok = second.iter().enumerate().all(|(s, row)| {
        let total: f64 = x.iter().sum::<f64>() + row.iter().sum::<f64>();
        if (total - (n - 1) as f64).abs() > 1e-9 * n as f64 {
            return false;
        }
        let spend: f64 = x
            .iter()
            .enumerate()
            .map(|(e, &v)| inst.first_stage_costs()[e] * v)
            .sum::<f64>()
            + row
                .iter()
                .enumerate()
                .map(|(e, &v)| inst.cost2(s, e) * v)
                .sum::<f64>();
        spend <= budget + slack
    });
    rows_ok
        && pool.entries.iter().all(|(s, side)| {
            let y: Vec<f64> = x.iter().zip(&second[*s]).map(|(a, b)| a + b).collect();
            side.cut_value(inst.graph(), &y) >= 1.0 - 1e-9
        })
}

fn build_minmax_lp(inst: &MinMaxInstance, budget: f64, pool: &CutPool) -> LinearProgram {
    let m = inst.num_edges();
    let n = inst.num_vertices();
    let k = inst.num_scenarios();
    let mut upper = vec![1.0; m];
    for e in 0..m {
        if (0..k).any(|s| inst.cost(s, e) > budget) {
            upper[e] = 0.0;
        }
    }
    // Fixed auxiliary objective (total cost across scenarios): any feasible
    // point would do, but minimizing something fixed makes the returned
    // vertex deterministic.
    let objective: Vec<f64> = (0..m)
        .map(|e| (0..k).map(|s| inst.cost(s, e)).sum())
        .collect();
    let mut constraints = Vec::with_capacity(1 + k + pool.len());
    constraints.push(Constraint {
        coeffs: (0..m).map(|e| (e, 1.0)).collect(),
        relation: Relation::Eq,
        rhs: (n - 1) as f64,
    });
    for s in 0..k {
        constraints.push(Constraint {
            coeffs: (0..m)
                .filter(|&e| inst.cost(s, e) != 0.0)
                .map(|e| (e, inst.cost(s, e)))
                .collect(),
            relation: Relation::Le,
            rhs: budget,
        });
    }
    for (_, side) in &pool.entries {
        constraints.push(Constraint {
            coeffs: side
                .crossing_edges(inst.graph())
                .into_iter()
                .map(|e| (e, 1.0))
                .collect(),
            relation: Relation::Ge,
            rhs: 1.0,
        });
    }
    LinearProgram {
        lower: vec![0.0; m],
        upper,
        objective,
        constraints,
    }
}

pub fn solve_lp_minmax(inst: &MinMaxInstance, budget: f64) -> Result<FeasibilityOutcome, LpError> {
    let mut pool = CutPool::for_minmax(inst);
    solve_lp_minmax_with_pool(inst, budget, &mut pool, &mut |_| {})
}

/// One feasibility probe at the given budget, reusing (and growing) the
/// caller's cut pool.
pub fn solve_lp_minmax_with_pool(
    inst: &MinMaxInstance,
    budget: f64,
    pool: &mut CutPool,
    trace: &mut dyn FnMut(&LpEvent),
) -> Result<FeasibilityOutcome, LpError> {
    if inst.has_negative_costs() {
        return Err(LpError::NegativeCosts);
    }
    if inst.num_vertices() <= 1 {
        return Ok(FeasibilityOutcome::Feasible(FractionalSolution::empty()));
    }
    let mut rounds = 0;
    loop {
        rounds += 1;
        let lp = build_minmax_lp(inst, budget, pool);
        match lp_solve(&lp)? {
            LpStatus::Infeasible => {
                trace(&LpEvent::Probe {
                    budget,
                    feasible: false,
                    pool_size: pool.len(),
                    rounds,
                });
                return Ok(FeasibilityOutcome::Infeasible);
            }
            LpStatus::Unbounded => {
                return Err(LpError::NumericalFailure {
                    detail: "relaxation reported unbounded despite box bounds".into(),
                })
            }
            LpStatus::Optimal { mut x, .. } => {
                clamp01(&mut x);
                if !point_fits_minmax(inst, budget, &x, pool) {
                    trace(&LpEvent::Probe {
                        budget,
                        feasible: false,
                        pool_size: pool.len(),
                        rounds,
                    });
                    return Ok(FeasibilityOutcome::Infeasible);
                }
                match separate(inst.graph(), &x, SEPARATION_TOL) {
                    Some(side) => {
                        trace(&LpEvent::Cut {
                            budget,
                            scenario: None,
                            value: side.cut_value(inst.graph(), &x),
                            side: side.vertices().to_vec(),
                        });
                        pool.add(0, side)?;
                    }
                    None => {
                        trace(&LpEvent::Probe {
                            budget,
                            feasible: true,
                            pool_size: pool.len(),
                            rounds,
                        });
                        return Ok(FeasibilityOutcome::Feasible(FractionalSolution {
                            x,
                            second_stage: None,
                        }));
                    }
                }
            }
        }
    }
}

/// Binary search on the budget: the smallest `C` (within `tol_rel`,
/// relative to the budget scale) at which the min-max relaxation is
/// feasible, together with a feasible fractional point at that budget.
///
/// The returned budget is a lower bound on the integral min-max optimum,
/// up to the bisection tolerance.
pub fn find_min_feasible_c(
    inst: &MinMaxInstance,
    tol_rel: f64,
) -> Result<(f64, FractionalSolution), LpError> {
    find_min_feasible_c_traced(inst, tol_rel, &mut |_| {})
}

pub fn find_min_feasible_c_traced(
    inst: &MinMaxInstance,
    tol_rel: f64,
    trace: &mut dyn FnMut(&LpEvent),
) -> Result<(f64, FractionalSolution), LpError> {
    if inst.has_negative_costs() {
        return Err(LpError::NegativeCosts);
    }
    if inst.num_vertices() <= 1 || inst.num_edges() == 0 {
        return Ok((0.0, FractionalSolution::empty()));
    }
    let mut pool = CutPool::for_minmax(inst);
    let mut hi = (inst.num_vertices() - 1) as f64 * inst.c_max();
    let mut lo = 0.0;
    let mut best = match solve_lp_minmax_with_pool(inst, hi, &mut pool, trace)? {
        FeasibilityOutcome::Feasible(sol) => sol,
        FeasibilityOutcome::Infeasible => {
            // Nothing is rejected at (n−1)·c_max and connected graphs always
            // admit a fractional spanning tree, so this cannot legitimately
            // happen.
            return Err(LpError::NumericalFailure {
                detail: "relaxation infeasible at its trivial upper bound".into(),
            });
        }
    };
    while hi - lo > tol_rel * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        match solve_lp_minmax_with_pool(inst, mid, &mut pool, trace)? {
            FeasibilityOutcome::Feasible(sol) => {
                hi = mid;
                best = sol;
            }
            FeasibilityOutcome::Infeasible => lo = mid,
        }
    }
    verify_minmax_fractional(inst, hi, &best.x)
        .map_err(|detail| LpError::NumericalFailure { detail })?;
    Ok((hi, best))
}

/// Full post-hoc check of a claimed feasible min-max point: bounds,
/// rejection rule, cardinality, budgets, and fractional connectivity.
pub fn verify_minmax_fractional(
    inst: &MinMaxInstance,
    budget: f64,
    x: &[f64],
) -> Result<(), String> {
    if x.len() != inst.num_edges() {
        return Err(format!(
            "solution has {} entries for {} edges",
            x.len(),
            inst.num_edges()
        ));
    }
    let n = inst.num_vertices();
    if n <= 1 {
        return Ok(());
    }
    for (e, &v) in x.iter().enumerate() {
        if !(-1e-9..=1.0 + 1e-9).contains(&v) {
            return Err(format!("x[{e}] = {v} is out of [0, 1]"));
        }
        let rejected = (0..inst.num_scenarios()).any(|s| inst.cost(s, e) > budget);
        if rejected && v > 1e-9 {
            return Err(format!(
                "edge {e} is priced above the budget in some scenario but x[{e}] = {v}"
            ));
        }
    }
    let total: f64 = x.iter().sum();
    if (total - (n - 1) as f64).abs() > FEAS_TOL {
        return Err(format!("Σx = {total}, expected {}", n - 1));
    }
    for s in 0..inst.num_scenarios() {
        let spend: f64 = x.iter().enumerate().map(|(e, &v)| inst.cost(s, e) * v).sum();
        if spend > budget + FEAS_TOL {
            return Err(format!("scenario {s} spends {spend} > budget {budget}"));
        }
    }
    let (cut, _) = global_min_cut(inst.graph(), &x.iter().map(|v| v.max(0.0)).collect::<Vec<_>>());
    if cut < 1.0 - 1e-6 {
        return Err(format!("fractional min cut {cut} < 1"));
    }
    Ok(())
}

fn build_2stage_lp(inst: &TwoStageInstance, budget: f64, pool: &CutPool) -> LinearProgram {
    let m = inst.num_edges();
    let n = inst.num_vertices();
    let k = inst.num_scenarios();
    let vars = (1 + k) * m;
    let var2 = |s: usize, e: usize| (1 + s) * m + e;
    let mut upper = vec![1.0; vars];
    for e in 0..m {
        if inst.first_stage_costs()[e] > budget {
            upper[e] = 0.0;
        }
        for s in 0..k {
            if inst.cost2(s, e) > budget {
                upper[var2(s, e)] = 0.0;
            }
        }
    }
    let mut objective = vec![0.0; vars];
    for e in 0..m {
        objective[e] = k as f64 * inst.first_stage_costs()[e];
        for s in 0..k {
            objective[var2(s, e)] = inst.cost2(s, e);
        }
    }
    let mut constraints = Vec::with_capacity(2 * k + pool.len());
    for s in 0..k {
        let mut coeffs: Vec<(usize, f64)> = (0..m).map(|e| (e, 1.0)).collect();
        coeffs.extend((0..m).map(|e| (var2(s, e), 1.0)));
        constraints.push(Constraint {
            coeffs,
            relation: Relation::Eq,
            rhs: (n - 1) as f64,
        });
    }
    for s in 0..k {
        let mut coeffs: Vec<(usize, f64)> = (0..m)
            .filter(|&e| inst.first_stage_costs()[e] != 0.0)
            .map(|e| (e, inst.first_stage_costs()[e]))
            .collect();
        coeffs.extend(
            (0..m)
                .filter(|&e| inst.cost2(s, e) != 0.0)
                .map(|e| (var2(s, e), inst.cost2(s, e))),
        );
        constraints.push(Constraint {
            coeffs,
            relation: Relation::Le,
            rhs: budget,
        });
    }
    for (s, side) in &pool.entries {
        let coeffs: Vec<(usize, f64)> = side
            .crossing_edges(inst.graph())
            .into_iter()
            .flat_map(|e| [(e, 1.0), (var2(*s, e), 1.0)])
            .collect();
        constraints.push(Constraint {
            coeffs,
            relation: Relation::Ge,
            rhs: 1.0,
        });
    }
    LinearProgram {
        lower: vec![0.0; vars],
        upper,
        objective,
        constraints,
    }
}

/// Runs the separation oracle for every scenario's combined weights,
/// optionally across `threads` worker threads. Results always come back in
/// scenario order, so thread count never changes the outcome.
fn separate_scenarios(
    graph: &Graph,
    ys: &[Vec<f64>],
    tol: f64,
    threads: usize,
) -> Vec<(usize, CutSide)> {
    let k = ys.len();
    let mut found: Vec<Option<CutSide>> = vec![None; k];
    let workers = threads.max(1).min(k);
    if workers <= 1 {
        for (y, slot) in ys.iter().zip(found.iter_mut()) {
            *slot = separate(graph, y, tol);
        }
    } else {
        let chunk = k.div_ceil(workers);
        std::thread::scope(|scope| {
            for (ys_chunk, out_chunk) in ys.chunks(chunk).zip(found.chunks_mut(chunk)) {
                scope.spawn(move || {
                    for (y, slot) in ys_chunk.iter().zip(out_chunk.iter_mut()) {
                        *slot = separate(graph, y, tol);
                    }
                });
            }
        });
    }
    found
        .into_iter()
        .enumerate()
        .filter_map(|(s, cut)| cut.map(|c| (s, c)))
        .collect()
}

pub fn solve_lp_2stage(
    inst: &TwoStageInstance,
    budget: f64,
) -> Result<FeasibilityOutcome, LpError> {
    let mut pool = CutPool::for_2stage(inst);
    solve_lp_2stage_with_pool(inst, budget, &mut pool, 1, &mut |_| {})
}

pub fn solve_lp_2stage_with_pool(
    inst: &TwoStageInstance,
    budget: f64,
    pool: &mut CutPool,
    threads: usize,
    trace: &mut dyn FnMut(&LpEvent),
) -> Result<FeasibilityOutcome, LpError> {
    if inst.has_negative_costs() {
        return Err(LpError::NegativeCosts);
    }
    if inst.num_vertices() <= 1 {
        return Ok(FeasibilityOutcome::Feasible(FractionalSolution {
            x: Vec::new(),
            second_stage: Some(vec![Vec::new(); inst.num_scenarios()]),
        }));
    }
    let m = inst.num_edges();
    let k = inst.num_scenarios();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let lp = build_2stage_lp(inst, budget, pool);
        match lp_solve(&lp)? {
            LpStatus::Infeasible => {
                trace(&LpEvent::Probe {
                    budget,
                    feasible: false,
                    pool_size: pool.len(),
                    rounds,
                });
                return Ok(FeasibilityOutcome::Infeasible);
            }
            LpStatus::Unbounded => {
                return Err(LpError::NumericalFailure {
                    detail: "relaxation reported unbounded despite box bounds".into(),
                })
            }
            LpStatus::Optimal { x: raw, .. } => {
                let mut first = raw[..m].to_vec();
                clamp01(&mut first);
                let mut second: Vec<Vec<f64>> = (0..k)
                    .map(|s| {
                        let mut row = raw[(1 + s) * m..(2 + s) * m].to_vec();
                        clamp01(&mut row);
                        row
                    })
                    .collect();
                if !point_fits_2stage(inst, budget, &first, &second, pool) {
                    trace(&LpEvent::Probe {
                        budget,
                        feasible: false,
                        pool_size: pool.len(),
                        rounds,
                    });
                    return Ok(FeasibilityOutcome::Infeasible);
                }
                let ys: Vec<Vec<f64>> = second
                    .iter()
                    .map(|row| {
                        row.iter()
                            .zip(&first)
                            .map(|(a, b)| (a + b).min(1.0))
                            .collect()
                    })
                    .collect();
                let violated = separate_scenarios(inst.graph(), &ys, SEPARATION_TOL, threads);
                if violated.is_empty() {
                    trace(&LpEvent::Probe {
                        budget,
                        feasible: true,
                        pool_size: pool.len(),
                        rounds,
                    });
                    second.shrink_to_fit();
                    return Ok(FeasibilityOutcome::Feasible(FractionalSolution {
                        x: first,
                        second_stage: Some(second),
                    }));
                }
                for (s, side) in violated {
                    trace(&LpEvent::Cut {
                        budget,
                        scenario: Some(s),
                        value: side.cut_value(inst.graph(), &ys[s]),
                        side: side.vertices().to_vec(),
                    });
                    pool.add(s, side)?;
                }
            }
        }
    }
}

/// Two-stage analogue of [`find_min_feasible_c`].
pub fn find_min_feasible_c_2stage(
    inst: &TwoStageInstance,
    tol_rel: f64,
) -> Result<(f64, FractionalSolution), LpError> {
    find_min_feasible_c_2stage_traced(inst, tol_rel, 1, &mut |_| {})
}

pub fn find_min_feasible_c_2stage_traced(
    inst: &TwoStageInstance,
    tol_rel: f64,
    threads: usize,
    trace: &mut dyn FnMut(&LpEvent),
) -> Result<(f64, FractionalSolution), LpError> {
    if inst.has_negative_costs() {
        return Err(LpError::NegativeCosts);
    }
    if inst.num_vertices() <= 1 || inst.num_edges() == 0 {
        return Ok((
            0.0,
            FractionalSolution {
                x: Vec::new(),
                second_stage: Some(vec![Vec::new(); inst.num_scenarios()]),
            },
        ));
    }
    let mut pool = CutPool::for_2stage(inst);
    let mut hi = (inst.num_vertices() - 1) as f64 * inst.c_max();
    let mut lo = 0.0;
    let mut best = match solve_lp_2stage_with_pool(inst, hi, &mut pool, threads, trace)? {
        FeasibilityOutcome::Feasible(sol) => sol,
        FeasibilityOutcome::Infeasible => {
            return Err(LpError::NumericalFailure {
                detail: "relaxation infeasible at its trivial upper bound".into(),
            });
        }
    };
    while hi - lo > tol_rel * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        match solve_lp_2stage_with_pool(inst, mid, &mut pool, threads, trace)? {
            FeasibilityOutcome::Feasible(sol) => {
                hi = mid;
                best = sol;
            }
            FeasibilityOutcome::Infeasible => lo = mid,
        }
    }
    verify_2stage_fractional(inst, hi, &best)
        .map_err(|detail| LpError::NumericalFailure { detail })?;
    Ok((hi, best))
}

/// Full post-hoc check of a claimed feasible two-stage point.
pub fn verify_2stage_fractional(
    inst: &TwoStageInstance,
    budget: f64,
    sol: &FractionalSolution,
) -> Result<(), String> {
    let m = inst.num_edges();
    let n = inst.num_vertices();
    let k = inst.num_scenarios();
    if sol.x.len() != m {
        return Err(format!("solution has {} entries for {m} edges", sol.x.len()));
    }
    let second = sol
        .second_stage
        .as_ref()
        .ok_or("two-stage solution is missing its second-stage values")?;
    if second.len() != k {
        return Err(format!("{} second-stage rows for {k} scenarios", second.len()));
    }
    if n <= 1 {
        return Ok(());
    }
    for (e, &v) in sol.x.iter().enumerate() {
        if !(-1e-9..=1.0 + 1e-9).contains(&v) {
            return Err(format!("x[{e}] = {v} is out of [0, 1]"));
        }
        if inst.first_stage_costs()[e] > budget && v > 1e-9 {
            return Err(format!(
                "edge {e} is priced above the budget in the first stage but x[{e}] = {v}"
            ));
        }
    }
    for (s, row) in second.iter().enumerate() {
        if row.len() != m {
            return Err(format!("scenario {s} row has {} entries", row.len()));
        }
        for (e, &v) in row.iter().enumerate() {
            if !(-1e-9..=1.0 + 1e-9).contains(&v) {
                return Err(format!("x^{s}[{e}] = {v} is out of [0, 1]"));
            }
            if inst.cost2(s, e) > budget && v > 1e-9 {
                return Err(format!(
                    "edge {e} is priced above the budget in scenario {s} but x^{s}[{e}] = {v}"
                ));
            }
        }
        let total: f64 = sol.x.iter().sum::<f64>() + row.iter().sum::<f64>();
        if (total - (n - 1) as f64).abs() > FEAS_TOL {
            return Err(format!("scenario {s}: Σ(x + x^S) = {total}, expected {}", n - 1));
        }
        let spend: f64 = sol
            .x
            .iter()
            .enumerate()
            .map(|(e, &v)| inst.first_stage_costs()[e] * v)
            .sum::<f64>()
            + row
                .iter()
                .enumerate()
                .map(|(e, &v)| inst.cost2(s, e) * v)
                .sum::<f64>();
        if spend > budget + FEAS_TOL {
            return Err(format!("scenario {s} spends {spend} > budget {budget}"));
        }
        let y: Vec<f64> = sol
            .x
            .iter()
            .zip(row)
            .map(|(a, b)| (a + b).max(0.0))
            .collect();
        let (cut, _) = global_min_cut(inst.graph(), &y);
        if cut < 1.0 - 1e-6 {
            return Err(format!("scenario {s}: fractional min cut {cut} < 1"));
        }
    }
    Ok(())
}
