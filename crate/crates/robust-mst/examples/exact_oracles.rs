//! The exact solvers: full tree enumeration, branch and bound, and the
//! min-max regret variant, on one small instance.
//!
//! Run with `cargo run --example exact_oracles`.

use std::time::Duration;

use robust_mst::exact::{
    branch_and_bound_minmax, brute_force_minmax, brute_force_regret,
};
use robust_mst::graph::enumerate_spanning_trees;
use robust_mst::instances::MinMaxInstance;
use robust_mst::reductions::gen_random;
use robust_mst::Graph;

fn main() {
    let (inst, _) = gen_random(7, 13, 4, (0, 9), false, 0xACE).unwrap();
    let inst = match inst {
        robust_mst::instances::Instance::MinMax(i) => i,
        _ => unreachable!(),
    };
    println!(
        "instance `{}`: {} vertices, {} edges, {} scenarios",
        inst.name(),
        inst.num_vertices(),
        inst.num_edges(),
        inst.num_scenarios()
    );
    let trees = enumerate_spanning_trees(inst.graph(), 1_000_000).unwrap();
    println!("spanning trees: {}", trees.len());

    // Brute force visits every tree; nodes_explored counts them.
    let exact = brute_force_minmax(&inst).unwrap();
    println!(
        "\nbrute force: OPT = {} over {} trees",
        exact.value, exact.nodes_explored
    );

    // Branch and bound prunes with a per-scenario MST lower bound on the
    // contracted graph, so it typically explores far fewer nodes.
    let bnb = branch_and_bound_minmax(&inst, None);
    assert!(bnb.optimal);
    assert_eq!(bnb.value, exact.value);
    println!(
        "branch and bound: OPT = {} with {} nodes ({}x fewer)",
        bnb.value,
        bnb.nodes_explored,
        exact.nodes_explored / bnb.nodes_explored.max(1)
    );

    // With a time limit, BnB degrades gracefully: it keeps the incumbent
    // and reports optimal=false instead of failing.
    let rushed = branch_and_bound_minmax(&inst, Some(Duration::from_nanos(1)));
    println!(
        "rushed BnB: incumbent {} (optimal = {})",
        rushed.value, rushed.optimal
    );
    assert!(rushed.value >= exact.value);

    // Regret compares each tree against the best tree of every scenario:
    // the adversary picks the scenario where hindsight embarrasses you most.
    let triangle = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
    let tri = MinMaxInstance::new(
        "triangle",
        triangle,
        vec![vec![1.0, 1.0, 4.0], vec![2.0, 1.0, 4.0]],
    )
    .unwrap();
    for s in 0..tri.num_scenarios() {
        println!(
            "\nscenario {s}: costs {:?}, scenario optimum {}",
            tri.scenario_costs(s),
            tri.scenario_opt(s)
        );
    }
    let regret = brute_force_regret(&tri).unwrap();
    println!(
        "min-max regret: {} with tree {:?}",
        regret.value,
        regret.witness.indices()
    );
}
