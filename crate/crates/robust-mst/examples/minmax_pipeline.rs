//! End-to-end min-max pipeline on a hand-built instance: LP lower bound,
//! randomized rounding, and the exact optimum side by side.
//!
//! Run with `cargo run --example minmax_pipeline`.

use robust_mst::exact::brute_force_minmax;
use robust_mst::instances::{evaluate_minmax, MinMaxInstance};
use robust_mst::lp::{find_min_feasible_c, DEFAULT_TOL_REL};
use robust_mst::rounding::{
    compute_r_minmax, lemma1_bound_multiplier, solve_minmax_approx, RoundingParams,
};
use robust_mst::Graph;

fn main() {
    // A wheel-ish graph on 6 vertices: a 5-cycle plus a hub. Three scenarios
    // each make a different part of the cycle expensive, so no single
    // scenario's MST is safe against the others.
    let edges = vec![
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 0), // the cycle
        (5, 0),
        (5, 1),
        (5, 2),
        (5, 3),
        (5, 4), // the hub
    ];
    let scenarios = vec![
        vec![9.0, 1.0, 1.0, 1.0, 1.0, 2.0, 9.0, 2.0, 2.0, 2.0],
        vec![1.0, 9.0, 1.0, 1.0, 1.0, 2.0, 2.0, 9.0, 2.0, 2.0],
        vec![1.0, 1.0, 9.0, 1.0, 1.0, 2.0, 2.0, 2.0, 9.0, 2.0],
    ];
    let inst = MinMaxInstance::new("wheel-demo", Graph::new(6, edges).unwrap(), scenarios)
        .expect("hand-built instance is well formed");

    println!(
        "instance `{}`: {} vertices, {} edges, {} scenarios",
        inst.name(),
        inst.num_vertices(),
        inst.num_edges(),
        inst.num_scenarios()
    );

    // Stage 1: the fractional relaxation. Binary search on the budget C;
    // at each probe, violated connectivity cuts are separated lazily via a
    // global min cut on the fractional edge values.
    let (c_hat, fractional) =
        find_min_feasible_c(&inst, DEFAULT_TOL_REL).expect("costs are non-negative");
    println!("\nLP lower bound C^ = {c_hat:.6}");
    let support: Vec<usize> = (0..inst.num_edges())
        .filter(|&e| fractional.x[e] > 1e-9)
        .collect();
    println!("fractional support ({} edges): {support:?}", support.len());

    // Stage 2: randomized rounding. Each iteration samples edges by their
    // fractional values and contracts; the iteration budget r(n) and the
    // value guarantee both come from the instance size alone.
    let params = RoundingParams::default();
    let approx = solve_minmax_approx(&inst, &params).expect("rounding succeeds on this instance");
    let n = inst.num_vertices();
    let r = compute_r_minmax(n);
    let multiplier = lemma1_bound_multiplier(n, inst.num_scenarios(), params.f, params.rho1)
        .expect("default parameters are admissible at this size");
    let guarantee = f64::from(r) * multiplier * c_hat;
    println!("\nrounded tree: {:?}", approx.tree.indices());
    println!(
        "value {} after {} iterations (attempt {} of seed {})",
        approx.value, approx.iterations_used, approx.attempts, approx.seed
    );
    println!("iteration budget r({n}) = {r}, proven ceiling {guarantee:.2}");

    // Stage 3: the exact optimum, for scale. Tiny instance, so full tree
    // enumeration is fine.
    let exact = brute_force_minmax(&inst).expect("instance is small enough to enumerate");
    println!(
        "\nexact optimum {} over {} trees: {:?}",
        exact.value,
        exact.nodes_explored,
        exact.witness.indices()
    );
    let check = evaluate_minmax(&inst, &exact.witness).unwrap();
    assert_eq!(check, exact.value);
    println!(
        "approximation ratio this run: {:.3}",
        approx.value / exact.value
    );
    assert!(c_hat <= exact.value + 1e-6, "the LP bound never exceeds OPT");
    assert!(approx.value <= guarantee + 1e-6);
}
