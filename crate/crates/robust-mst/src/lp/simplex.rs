//! A small dense two-phase simplex solver.
//!
//! The cutting-plane engine only ever builds modest LPs (hundreds of rows),
//! so a dense tableau with Bland's anti-cycling rule is plenty — and being
//! fully deterministic, it always returns the *same* optimal vertex for the
//! same input, which the reproducibility guarantees depend on.
//!
//! Variables carry explicit bounds `lower ≤ x ≤ upper`. Lower bounds are
//! shifted away; finite upper bounds become explicit rows. An infinite
//! upper bound is allowed (and makes `Unbounded` reachable).

use super::LpError;

/// Constraint-satisfaction tolerance: phase 1 must reach an artificial sum
/// at most this large for the LP to count as feasible.
pub const FEAS_TOL: f64 = 1e-7;
/// Entries smaller than this are never used as pivots.
pub const PIVOT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// A sparse row `Σ coeffs · x  (≤ | = | ≥)  rhs`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

/// `minimize objective · x` subject to the constraints and variable bounds.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn num_vars(&self) -> usize {
        self.lower.len()
    }
}

#[derive(Clone, Debug)]
pub enum LpStatus {
    Optimal { x: Vec<f64>, objective: f64 },
    Infeasible,
    Unbounded,
}

pub fn lp_solve(lp: &LinearProgram) -> Result<LpStatus, LpError> {
    let n = lp.num_vars();
    assert_eq!(lp.upper.len(), n);
    assert_eq!(lp.objective.len(), n);
    for j in 0..n {
        assert!(lp.lower[j].is_finite(), "lower bounds must be finite");
        assert!(!lp.upper[j].is_nan());
        if lp.lower[j] > lp.upper[j] + FEAS_TOL {
            return Ok(LpStatus::Infeasible);
        }
    }

    // Shift to x' = x - lower ≥ 0 and collect rows with nonnegative rhs.
    let mut rows: Vec<(Vec<f64>, Relation, f64)> = Vec::new();
    for c in &lp.constraints {
        let mut a = vec![0.0; n];
        for &(j, v) in &c.coeffs {
            debug_assert!(v.is_finite());
            a[j] += v;
        }
        let shift: f64 = a.iter().zip(&lp.lower).map(|(v, lo)| v * lo).sum();
        rows.push((a, c.relation, c.rhs - shift));
    }
    for j in 0..n {
        let width = (lp.upper[j] - lp.lower[j]).max(0.0);
        if width.is_finite() {
            let mut a = vec![0.0; n];
            a[j] = 1.0;
            rows.push((a, Relation::Le, width));
        }
    }
    for (a, relation, rhs) in rows.iter_mut() {
        if *rhs < 0.0 {
            a.iter_mut().for_each(|v| *v = -*v);
            *rhs = -*rhs;
            *relation = match *relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }

    // Column layout: structural | slack/surplus | artificial.
    let num_rows = rows.len();
    let num_slacks = rows
        .iter()
        .filter(|(_, r, _)| *r != Relation::Eq)
        .count();
    let num_artificials = rows
        .iter()
        .filter(|(_, r, _)| *r != Relation::Le)
        .count();
    let cols = n + num_slacks + num_artificials;
    let mut tab = vec![vec![0.0; cols]; num_rows];
    let mut rhs = vec![0.0; num_rows];
    let mut basis = vec![0usize; num_rows];
    let mut next_slack = n;
    let mut next_artificial = n + num_slacks;
    for (i, (a, relation, b)) in rows.iter().enumerate() {
        tab[i][..n].copy_from_slice(a);
        rhs[i] = *b;
        match relation {
            Relation::Le => {
                tab[i][next_slack] = 1.0;
                basis[i] = next_slack;
                next_slack += 1;
            }
            Relation::Ge => {
                tab[i][next_slack] = -1.0;
                next_slack += 1;
                tab[i][next_artificial] = 1.0;
                basis[i] = next_artificial;
                next_artificial += 1;
            }
            Relation::Eq => {
                tab[i][next_artificial] = 1.0;
                basis[i] = next_artificial;
                next_artificial += 1;
            }
        }
    }

    let cap = 5_000 + 25 * (num_rows + cols);
    let mut iterations = 0usize;
    let artificial_start = n + num_slacks;

    if num_artificials > 0 {
        let mut cost1 = vec![0.0; cols];
        cost1[artificial_start..].iter_mut().for_each(|c| *c = 1.0);
        let enterable = vec![true; cols];
        let optimal = run_simplex(
            &mut tab,
            &mut rhs,
            &mut basis,
            &cost1,
            &enterable,
            cap,
            &mut iterations,
        )?;
        debug_assert!(optimal, "phase 1 is bounded below by zero");
        let infeasibility: f64 = basis
            .iter()
            .zip(&rhs)
            .filter(|(b, _)| **b >= artificial_start)
            .map(|(_, r)| r)
            .sum();
        if infeasibility > FEAS_TOL {
            return Ok(LpStatus::Infeasible);
        }
        // Pivot leftover zero-level artificials out where possible (taking
        // the largest available pivot for stability); rows that offer no
        // pivot are redundant and stay inert.
        for i in 0..num_rows {
            if basis[i] >= artificial_start {
                let c = (0..artificial_start)
                    .max_by(|&a, &b| tab[i][a].abs().total_cmp(&tab[i][b].abs()))
                    .filter(|&j| tab[i][j].abs() > PIVOT_TOL);
                if let Some(c) = c {
                    pivot(&mut tab, &mut rhs, &mut basis, i, c);
                }
            }
        }
    }

    let mut cost2 = vec![0.0; cols];
    cost2[..n].copy_from_slice(&lp.objective);
    let mut enterable = vec![true; cols];
    enterable[artificial_start..].iter_mut().for_each(|e| *e = false);
    let optimal = run_simplex(
        &mut tab,
        &mut rhs,
        &mut basis,
        &cost2,
        &enterable,
        cap,
        &mut iterations,
    )?;
    if !optimal {
        return Ok(LpStatus::Unbounded);
    }

    let mut x = lp.lower.clone();
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            x[b] = (lp.lower[b] + rhs[i].max(0.0)).min(lp.upper[b]);
        }
    }
    let objective = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    Ok(LpStatus::Optimal { x, objective })
}

/// Runs simplex to optimality on a tableau already in canonical form.
/// Returns `Ok(false)` when the objective is unbounded below.
///
/// Pivot selection is Dantzig's rule (most negative reduced cost) with a
/// stability-aware ratio test; after a run of degenerate pivots it falls
/// back to Bland's rule, whose anti-cycling guarantee ensures termination,
/// and returns to Dantzig as soon as the objective moves again. All ties
/// break on indices, so the walk — and the optimal vertex it ends at — is
/// deterministic.
fn run_simplex(
    tab: &mut [Vec<f64>],
    rhs: &mut [f64],
    basis: &mut [usize],
    cost: &[f64],
    enterable: &[bool],
    cap: usize,
    iterations: &mut usize,
) -> Result<bool, LpError> {
    let num_rows = tab.len();
    let cols = cost.len();
    // Reduced costs for the current basis.
    let mut zrow = cost.to_vec();
    for i in 0..num_rows {
        let cb = cost[basis[i]];
        if cb != 0.0 {
            for j in 0..cols {
                zrow[j] -= cb * tab[i][j];
            }
        }
    }
    let stall_limit = 64;
    let mut stalled = 0usize;
    loop {
        *iterations += 1;
        if *iterations > cap {
            return Err(LpError::NumericalFailure {
                detail: format!("simplex exceeded {cap} iterations"),
            });
        }
        let bland = stalled >= stall_limit;
        let enter = if bland {
            (0..cols).find(|&j| enterable[j] && zrow[j] < -PIVOT_TOL)
        } else {
            let mut best_j = None;
            let mut best_v = -PIVOT_TOL;
            for j in 0..cols {
                if enterable[j] && zrow[j] < best_v {
                    best_v = zrow[j];
                    best_j = Some(j);
                }
            }
            best_j
        };
        let Some(enter) = enter else {
            return Ok(true);
        };
        let Some((leave, theta)) = select_leaving(tab, rhs, basis, enter, bland) else {
            return Ok(false);
        };
        pivot(tab, rhs, basis, leave, enter);
        let f = zrow[enter];
        if f != 0.0 {
            for j in 0..cols {
                zrow[j] -= f * tab[leave][j];
            }
            zrow[enter] = 0.0;
        }
        if theta > 1e-10 {
            stalled = 0;
        } else {
            stalled += 1;
        }
    }
}

/// Ratio test. Prefers numerically safe pivots: rows with a comfortably
/// large entry in the entering column are tried first, and among the
/// minimum-ratio rows the largest pivot wins (smallest basis index under
/// Bland's rule, which its anti-cycling proof requires). Returns the row
/// and the step length.
fn select_leaving(
    tab: &[Vec<f64>],
    rhs: &[f64],
    basis: &[usize],
    enter: usize,
    bland: bool,
) -> Option<(usize, f64)> {
    for &threshold in &[1e-7, PIVOT_TOL] {
        let mut candidates: Vec<(usize, f64, f64)> = Vec::new();
        for (i, row) in tab.iter().enumerate() {
            let t = row[enter];
            if t > threshold {
                candidates.push((i, (rhs[i] / t).max(0.0), t));
            }
        }
        let Some(min_ratio) = candidates
            .iter()
            .map(|&(_, r, _)| r)
            .min_by(f64::total_cmp)
        else {
            continue;
        };
        let window = 1e-9 * (1.0 + min_ratio);
        candidates.retain(|&(_, r, _)| r <= min_ratio + window);
        let chosen = if bland {
            candidates
                .into_iter()
                .min_by_key(|&(i, _, _)| basis[i])
                .unwrap()
        } else {
            candidates
                .into_iter()
                .max_by(|a, b| a.2.total_cmp(&b.2).then_with(|| basis[b.0].cmp(&basis[a.0])))
                .unwrap()
        };
        return Some((chosen.0, min_ratio));
    }
    None
}

fn pivot(tab: &mut [Vec<f64>], rhs: &mut [f64], basis: &mut [usize], r: usize, c: usize) {
    let p = tab[r][c];
    debug_assert!(p.abs() > PIVOT_TOL);
    for v in tab[r].iter_mut() {
        *v /= p;
    }
    rhs[r] /= p;
    tab[r][c] = 1.0;
    for i in 0..tab.len() {
        if i == r {
            continue;
        }
        let f = tab[i][c];
        if f == 0.0 {
            continue;
        }
        // Split borrow: copy out the pivot row is wasteful; index instead.
        for j in 0..tab[i].len() {
            let delta = f * tab[r][j];
            tab[i][j] -= delta;
        }
        tab[i][c] = 0.0;
        rhs[i] -= f * rhs[r];
        if rhs[i] < 0.0 && rhs[i] > -1e-11 {
            rhs[i] = 0.0;
        }
    }
    basis[r] = c;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn le(coeffs: &[(usize, f64)], rhs: f64) -> Constraint {
        Constraint {
            coeffs: coeffs.to_vec(),
            relation: Relation::Le,
            rhs,
        }
    }

    fn ge(coeffs: &[(usize, f64)], rhs: f64) -> Constraint {
        Constraint {
            coeffs: coeffs.to_vec(),
            relation: Relation::Ge,
            rhs,
        }
    }

    fn eq(coeffs: &[(usize, f64)], rhs: f64) -> Constraint {
        Constraint {
            coeffs: coeffs.to_vec(),
            relation: Relation::Eq,
            rhs,
        }
    }

    fn optimal(lp: &LinearProgram) -> (Vec<f64>, f64) {
        match lp_solve(lp).unwrap() {
            LpStatus::Optimal { x, objective } => (x, objective),
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn minimizes_a_single_variable_above_a_threshold() {
        let lp = LinearProgram {
            lower: vec![0.0],
            upper: vec![10.0],
            objective: vec![1.0],
            constraints: vec![ge(&[(0, 1.0)], 3.0)],
        };
        let (x, obj) = optimal(&lp);
        assert!((x[0] - 3.0).abs() < 1e-9);
        assert!((obj - 3.0).abs() < 1e-9);
    }

    #[test]
    fn detects_contradictory_constraints() {
        let lp = LinearProgram {
            lower: vec![0.0],
            upper: vec![10.0],
            objective: vec![0.0],
            constraints: vec![le(&[(0, 1.0)], 1.0), ge(&[(0, 1.0)], 2.0)],
        };
        assert!(matches!(lp_solve(&lp).unwrap(), LpStatus::Infeasible));
    }

    #[test]
    fn detects_an_unbounded_objective() {
        let lp = LinearProgram {
            lower: vec![0.0],
            upper: vec![f64::INFINITY],
            objective: vec![-1.0],
            constraints: vec![],
        };
        assert!(matches!(lp_solve(&lp).unwrap(), LpStatus::Unbounded));
    }

    #[test]
    fn handles_negative_lower_bounds() {
        let lp = LinearProgram {
            lower: vec![-5.0],
            upper: vec![5.0],
            objective: vec![1.0],
            constraints: vec![ge(&[(0, 1.0)], -4.0)],
        };
        let (x, _) = optimal(&lp);
        assert!((x[0] + 4.0).abs() < 1e-9);
    }

    #[test]
    fn accumulates_duplicate_coefficients() {
        // (1 + 1)·x ≥ 3 → x = 1.5.
        let lp = LinearProgram {
            lower: vec![0.0],
            upper: vec![10.0],
            objective: vec![1.0],
            constraints: vec![ge(&[(0, 1.0), (0, 1.0)], 3.0)],
        };
        let (x, _) = optimal(&lp);
        assert!((x[0] - 1.5).abs() < 1e-9);
    }

    #[test]
    fn solves_a_mixed_system() {
        // minimize x + 2y  s.t.  x + y = 4,  x − y ≤ 1,  0 ≤ x,y ≤ 10.
        // y = x − 1 isn't forced; optimum pushes y down: x − y ≤ 1 with
        // x + y = 4 gives y ≥ 1.5, so (2.5, 1.5), objective 5.5.
        let lp = LinearProgram {
            lower: vec![0.0, 0.0],
            upper: vec![10.0, 10.0],
            objective: vec![1.0, 2.0],
            constraints: vec![
                eq(&[(0, 1.0), (1, 1.0)], 4.0),
                le(&[(0, 1.0), (1, -1.0)], 1.0),
            ],
        };
        let (x, obj) = optimal(&lp);
        assert!((x[0] - 2.5).abs() < 1e-8 && (x[1] - 1.5).abs() < 1e-8);
        assert!((obj - 5.5).abs() < 1e-8);
    }

    #[test]
    fn fixed_variables_are_respected() {
        let lp = LinearProgram {
            lower: vec![0.0, 0.0],
            upper: vec![0.0, 5.0],
            objective: vec![-1.0, -1.0],
            constraints: vec![le(&[(0, 1.0), (1, 1.0)], 3.0)],
        };
        let (x, _) = optimal(&lp);
        assert_eq!(x[0], 0.0);
        assert!((x[1] - 3.0).abs() < 1e-9);
    }

    #[test]
    fn crossed_bounds_are_infeasible() {
        let lp = LinearProgram {
            lower: vec![2.0],
            upper: vec![1.0],
            objective: vec![1.0],
            constraints: vec![],
        };
        assert!(matches!(lp_solve(&lp).unwrap(), LpStatus::Infeasible));
    }

    /// Exhaustive oracle: evaluate the objective at every vertex of the
    /// feasible polytope (every feasible intersection of `n` tight
    /// hyperplanes drawn from constraints-as-equalities and variable
    /// bounds). Bounded polytopes attain their optimum at a vertex.
    fn vertex_oracle(lp: &LinearProgram) -> Option<f64> {
        let n = lp.num_vars();
        let mut planes: Vec<(Vec<f64>, f64)> = Vec::new();
        for c in &lp.constraints {
            let mut a = vec![0.0; n];
            for &(j, v) in &c.coeffs {
                a[j] += v;
            }
            planes.push((a, c.rhs));
        }
        for j in 0..n {
            let mut a = vec![0.0; n];
            a[j] = 1.0;
            planes.push((a.clone(), lp.lower[j]));
            planes.push((a, lp.upper[j]));
        }
        let mut best: Option<f64> = None;
        let mut pick = vec![0usize; n];
        enumerate_choices(planes.len(), n, 0, 0, &mut pick, &mut |chosen| {
            if let Some(x) = solve_square(&planes, chosen, n) {
                if is_feasible(lp, &x) {
                    let obj: f64 = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
                    best = Some(best.map_or(obj, |b: f64| b.min(obj)));
                }
            }
        });
        best
    }

    fn enumerate_choices(
        total: usize,
        want: usize,
        start: usize,
        depth: usize,
        pick: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if depth == want {
            visit(pick);
            return;
        }
        for i in start..total {
            pick[depth] = i;
            enumerate_choices(total, want, i + 1, depth + 1, pick, visit);
        }
    }

    fn solve_square(planes: &[(Vec<f64>, f64)], chosen: &[usize], n: usize) -> Option<Vec<f64>> {
        let mut a: Vec<Vec<f64>> = chosen.iter().map(|&i| planes[i].0.clone()).collect();
        let mut b: Vec<f64> = chosen.iter().map(|&i| planes[i].1).collect();
        for col in 0..n {
            let pivot = (col..n).max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs()))?;
            if a[pivot][col].abs() < 1e-9 {
                return None;
            }
            a.swap(col, pivot);
            b.swap(col, pivot);
            for r in 0..n {
                if r != col {
                    let f = a[r][col] / a[col][col];
                    for c in col..n {
                        a[r][c] -= f * a[col][c];
                    }
                    b[r] -= f * b[col];
                }
            }
        }
        Some((0..n).map(|i| b[i] / a[i][i]).collect())
    }

    fn is_feasible(lp: &LinearProgram, x: &[f64]) -> bool {
        let tol = 1e-7;
        for j in 0..lp.num_vars() {
            if x[j] < lp.lower[j] - tol || x[j] > lp.upper[j] + tol {
                return false;
            }
        }
        lp.constraints.iter().all(|c| {
            let lhs: f64 = c.coeffs.iter().map(|&(j, v)| v * x[j]).sum();
            match c.relation {
                Relation::Le => lhs <= c.rhs + tol,
                Relation::Ge => lhs >= c.rhs - tol,
                Relation::Eq => (lhs - c.rhs).abs() <= tol,
            }
        })
    }

    #[test]
    fn agrees_with_vertex_enumeration_on_random_lps() {
        let mut rng = SplitMix64::new(4242);
        let mut feasible_seen = 0;
        let mut infeasible_seen = 0;
        for trial in 0..50 {
            let n = 1 + rng.next_below(3) as usize;
            let rows = 1 + rng.next_below(4) as usize;
            let lp = LinearProgram {
                lower: vec![0.0; n],
                upper: (0..n).map(|_| 1.0 + rng.next_below(5) as f64).collect(),
                objective: (0..n).map(|_| rng.next_range_i64(-5, 5) as f64).collect(),
                constraints: (0..rows)
                    .map(|_| {
                        let coeffs: Vec<(usize, f64)> = (0..n)
                            .map(|j| (j, rng.next_range_i64(-3, 3) as f64))
                            .collect();
                        let relation = match rng.next_below(10) {
                            0..=5 => Relation::Le,
                            6..=8 => Relation::Ge,
                            _ => Relation::Eq,
                        };
                        Constraint {
                            coeffs,
                            relation,
                            rhs: rng.next_range_i64(-2, 8) as f64,
                        }
                    })
                    .collect(),
            };
            let expected = vertex_oracle(&lp);
            match (lp_solve(&lp).unwrap(), expected) {
                (LpStatus::Optimal { objective, .. }, Some(best)) => {
                    assert!(
                        (objective - best).abs() <= 1e-6,
                        "trial {trial}: simplex {objective} vs oracle {best}"
                    );
                    feasible_seen += 1;
                }
                (LpStatus::Infeasible, None) => infeasible_seen += 1,
                (got, want) => panic!("trial {trial}: simplex {got:?}, oracle {want:?}"),
            }
        }
        // The generator must exercise both outcomes for this test to mean much.
        assert!(feasible_seen >= 10, "only {feasible_seen} feasible LPs");
        assert!(infeasible_seen >= 5, "only {infeasible_seen} infeasible LPs");
    }

    #[test]
    fn optimal_points_satisfy_their_constraints() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..30 {
            let n = 2 + rng.next_below(3) as usize;
            let lp = LinearProgram {
                lower: vec![0.0; n],
                upper: vec![3.0; n],
                objective: (0..n).map(|_| rng.next_range_i64(-4, 4) as f64).collect(),
                constraints: (0..3)
                    .map(|_| {
                        let coeffs: Vec<(usize, f64)> = (0..n)
                            .map(|j| (j, rng.next_range_i64(-2, 3) as f64))
                            .collect();
                        Constraint {
                            coeffs,
                            relation: if rng.next_f64() < 0.5 {
                                Relation::Le
                            } else {
                                Relation::Ge
                            },
                            rhs: rng.next_range_i64(0, 6) as f64,
                        }
                    })
                    .collect(),
            };
            if let LpStatus::Optimal { x, .. } = lp_solve(&lp).unwrap() {
                assert!(is_feasible(&lp, &x));
            }
        }
    }
}
