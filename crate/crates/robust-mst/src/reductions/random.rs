//! Seeded random instances: a random attachment skeleton guarantees
//! connectivity, extra edges are drawn uniformly from the remaining pairs,
//! and integer costs keep comparisons against the exact oracles exact.

use std::collections::HashSet;

use serde::Serialize;

use super::ReductionError;
use crate::graph::Graph;
use crate::instances::{Instance, MinMaxInstance, TwoStageInstance};
use crate::rng::SplitMix64;

/// Provenance of a generated instance.
#[derive(Clone, Debug, Serialize)]
pub struct RandomMeta {
    pub seed: u64,
    pub cost_range: (i64, i64),
    /// The first `n − 1` edges: vertex `v` attached to a random earlier
    /// vertex, so the graph is connected before any extras are drawn.
    pub skeleton_edges: Vec<usize>,
    pub extra_edges: Vec<usize>,
}

/// Draw order is fixed — skeleton parents, extra edge rejections, then cost
/// rows (first stage first for two-stage instances, then scenarios in
/// order) — so a seed pins the instance bytes exactly.
pub fn gen_random(
    n: usize,
    m: usize,
    k: usize,
    cost_range: (i64, i64),
    two_stage: bool,
    seed: u64,
) -> Result<(Instance, RandomMeta), ReductionError> {
    let infeasible = |detail: String| ReductionError::ParamsInfeasible { detail };
    if n < 2 {
        return Err(infeasible(format!("need at least 2 vertices, got {n}")));
    }
    if k == 0 {
        return Err(infeasible("need at least one scenario".into()));
    }
    if m + 1 < n {
        return Err(infeasible(format!(
            "{m} edges cannot connect {n} vertices"
        )));
    }
    let max_edges = n * (n - 1) / 2;
    if m > max_edges {
        return Err(infeasible(format!(
            "{m} edges exceed the {max_edges} simple-graph maximum on {n} vertices"
        )));
    }
    let (lo, hi) = cost_range;
    if lo > hi {
        return Err(infeasible(format!("empty cost range {lo}..={hi}")));
    }

    let mut rng = SplitMix64::new(seed);
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(m);
    let mut used: HashSet<(usize, usize)> = HashSet::with_capacity(m);
    for v in 1..n {
        let parent = rng.next_below(v as u64) as usize;
        edges.push((parent, v));
        used.insert((parent, v));
    }
    while edges.len() < m {
        let u = rng.next_below(n as u64) as usize;
        let v = rng.next_below(n as u64) as usize;
        if u == v {
            continue;
        }
        let pair = (u.min(v), u.max(v));
        if used.insert(pair) {
            edges.push(pair);
        }
    }

    let cost_row = |rng: &mut SplitMix64| -> Vec<f64> {
        (0..m).map(|_| rng.next_range_i64(lo, hi) as f64).collect()
    };
    let graph = Graph::new(n, edges).expect("skeleton keeps the graph connected");
    let meta = RandomMeta {
        seed,
        cost_range,
        skeleton_edges: (0..n - 1).collect(),
        extra_edges: (n - 1..m).collect(),
    };
    let instance = if two_stage {
        let name = format!("random-n{n}-m{m}-k{k}-seed{seed}-2s");
        let first_stage = cost_row(&mut rng);
        let scenarios = (0..k).map(|_| cost_row(&mut rng)).collect();
        Instance::TwoStage(
            TwoStageInstance::new(name, graph, first_stage, scenarios)
                .expect("rows are generated to measure"),
        )
    } else {
        let name = format!("random-n{n}-m{m}-k{k}-seed{seed}");
        let scenarios = (0..k).map(|_| cost_row(&mut rng)).collect();
        Instance::MinMax(
            MinMaxInstance::new(name, graph, scenarios).expect("rows are generated to measure"),
        )
    };
    Ok((instance, meta))
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::instances::save_instance;

    #[test]
    fn seed_replay_is_byte_identical() {
        let (a, _) = gen_random(7, 12, 3, (0, 9), false, 41).unwrap();
        let (b, _) = gen_random(7, 12, 3, (0, 9), false, 41).unwrap();
        assert_eq!(save_instance(&a), save_instance(&b));
        let (c, _) = gen_random(7, 12, 3, (0, 9), false, 42).unwrap();
        assert_ne!(save_instance(&a), save_instance(&c));
    }

    #[test]
    fn generated_graphs_are_connected_simple_and_in_range() {
        for &(n, m) in &[(2, 1), (5, 4), (6, 15), (9, 20), (12, 11)] {
            let (inst, meta) = gen_random(n, m, 2, (-3, 6), false, 7 + n as u64).unwrap();
            let Instance::MinMax(inst) = inst else {
                panic!("asked for a min-max instance");
            };
            assert_eq!(inst.num_vertices(), n);
            assert_eq!(inst.num_edges(), m);
            assert!(inst.graph().is_connected());
            let mut seen = HashSet::new();
            for &(u, v) in inst.graph().edges() {
                assert!(u < v && v < n);
                assert!(seen.insert((u, v)), "duplicate edge ({u}, {v})");
            }
            for s in 0..inst.num_scenarios() {
                for &c in inst.scenario_costs(s) {
                    assert!((-3.0..=6.0).contains(&c) && c.fract() == 0.0);
                }
            }
            assert_eq!(meta.skeleton_edges.len(), n - 1);
            assert_eq!(meta.extra_edges.len(), m - (n - 1));
        }
    }

    #[test]
    fn two_stage_variant_has_a_first_stage_row() {
        let (inst, _) = gen_random(5, 8, 2, (1, 4), true, 9).unwrap();
        let Instance::TwoStage(inst) = inst else {
            panic!("asked for a two-stage instance");
        };
        assert_eq!(inst.first_stage_costs().len(), 8);
        assert_eq!(inst.num_scenarios(), 2);
        assert!(inst.name().ends_with("-2s"));
    }

    #[test]
    fn infeasible_parameters_are_rejected() {
        let err = |r: Result<(Instance, RandomMeta), ReductionError>| {
            matches!(r, Err(ReductionError::ParamsInfeasible { .. }))
        };
        assert!(err(gen_random(1, 0, 1, (0, 9), false, 0)));
        assert!(err(gen_random(5, 3, 1, (0, 9), false, 0))); // too few edges
        assert!(err(gen_random(4, 7, 1, (0, 9), false, 0))); // over complete
        assert!(err(gen_random(4, 5, 0, (0, 9), false, 0))); // no scenarios
        assert!(err(gen_random(4, 5, 1, (3, 2), false, 0))); // empty range
    }

    #[test]
    fn integer_costs_are_roughly_uniform() {
        // Deterministic chi-squared check: 1200 draws over 10 values, 9
        // degrees of freedom; the 99.9th percentile is ≈ 27.9.
        let (inst, _) = gen_random(40, 400, 3, (0, 9), false, 0x0dd5_eed).unwrap();
        let Instance::MinMax(inst) = inst else {
            panic!("asked for a min-max instance");
        };
        let mut counts = [0usize; 10];
        for s in 0..inst.num_scenarios() {
            for &c in inst.scenario_costs(s) {
                counts[c as usize] += 1;
            }
        }
        let total: usize = counts.iter().sum();
        assert_eq!(total, 1200);
        let expected = total as f64 / 10.0;
        let chi2: f64 = counts
            .iter()
            .map(|&obs| {
                let d = obs as f64 - expected;
                d * d / expected
            })
            .sum();
        assert!(chi2 < 27.9, "chi-squared {chi2} too high: {counts:?}");
        assert!(counts.iter().all(|&c| c > 0));
    }
}
