//! The set-cover gadget: covering problems become two-stage instances
//! whose optimum equals the minimum cover size, with witnesses convertible
//! in both directions.
//!
//! Run with `cargo run --example set_cover_two_stage`.

use robust_mst::exact::brute_force_2stage;
use robust_mst::instances::evaluate_2stage;
use robust_mst::reductions::{
    cover_to_solution, gen_set_cover, solution_to_cover, SetCoverInstance,
};

fn main() {
    // Four sets over five elements; the unique minimum cover has size 2.
    let sc = SetCoverInstance::new(
        5,
        vec![vec![0, 1, 2], vec![2, 3], vec![3, 4], vec![0, 1, 4]],
    )
    .unwrap();
    let (inst, meta) = gen_set_cover(&sc);
    println!(
        "instance `{}`: {} vertices, {} edges, {} scenarios",
        inst.name(),
        inst.num_vertices(),
        inst.num_edges(),
        inst.num_scenarios()
    );
    println!(
        "set vertices {:?}, element vertices {:?}, root {}",
        meta.set_vertices, meta.element_vertices, meta.root
    );

    // First stage: each set's spoke to the root costs 1, everything else
    // is prohibitively expensive. Scenario j prices every edge crossing
    // element j's "uncovered" cut at that same prohibitive level, so a
    // cheap plan must buy a spoke for some set containing j up front.
    let cover = vec![0, 2];
    let sol = cover_to_solution(&sc, &cover).unwrap();
    let value = evaluate_2stage(&inst, &sol).unwrap();
    println!("\ncover {cover:?} -> two-stage value {value}");
    assert_eq!(value, cover.len() as f64);

    // The exact solver rediscovers the minimum cover.
    let exact = brute_force_2stage(&inst).unwrap();
    println!(
        "exact optimum {} ({} nodes explored)",
        exact.value, exact.nodes_explored
    );
    assert_eq!(exact.value, 2.0);
    let recovered = solution_to_cover(&sc, &exact.witness).unwrap();
    println!("optimal witness converts back to cover {recovered:?}");
    assert_eq!(recovered.len(), 2);

    // Spending more first-stage budget than necessary still works, it is
    // just worse: the full cover costs 4.
    let all = cover_to_solution(&sc, &[0, 1, 2, 3]).unwrap();
    println!(
        "full cover value {}",
        evaluate_2stage(&inst, &all).unwrap()
    );
}
