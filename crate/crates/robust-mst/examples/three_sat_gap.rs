//! The 3-SAT gadget: a CNF formula becomes a series-parallel min-max
//! instance whose optimum is 0 exactly when the formula is satisfiable
//! (and at least 4m otherwise, m = number of clauses).
//!
//! Run with `cargo run --example three_sat_gap`.

use robust_mst::exact::{branch_and_bound_minmax, brute_force_minmax};
use robust_mst::instances::evaluate_minmax;
use robust_mst::reductions::{assignment_to_tree, gen_3sat, parse_dimacs, ReductionError};

fn main() {
    // (x1 v x2 v x3) & (~x1 v x2 v ~x3) & (x1 v ~x2 v ~x3)
    let dimacs = "\
c three clauses over three variables
p cnf 3 3
1 2 3 0
-1 2 -3 0
1 -2 -3 0
";
    let phi = parse_dimacs(dimacs).unwrap();
    let (inst, meta) = gen_3sat(&phi);
    println!(
        "instance `{}`: {} vertices, {} edges, {} scenarios",
        inst.name(),
        inst.num_vertices(),
        inst.num_edges(),
        inst.num_scenarios()
    );
    println!(
        "contradictory occurrence pairs charged by scenarios: {:?}",
        meta.scenario_pairs
    );

    // Each clause contributes a 5-vertex lens; a tree picks one occurrence
    // edge per clause (cost -1 normally) plus the three exits. A scenario
    // charges two contradictory occurrence edges 4m-1; a satisfying
    // assignment never has BOTH charged edges in its tree, and the -1s on
    // the rest cancel the +4m-1 of the single charged one: total 0.
    let assignment = vec![true, true, false];
    assert!(phi.satisfies(&assignment));
    let tree = assignment_to_tree(&phi, &assignment).unwrap();
    let value = evaluate_minmax(&inst, &tree).unwrap();
    println!("\nsatisfying assignment {assignment:?} -> tree value {value}");
    assert_eq!(value, 0.0);

    // A non-model is rejected at conversion time, naming the clause it
    // leaves false.
    let bad = vec![false, false, false];
    assert!(!phi.satisfies(&bad));
    match assignment_to_tree(&phi, &bad) {
        Err(ReductionError::AssignmentDoesNotSatisfy { clause }) => {
            println!("non-model {bad:?} rejected at clause {clause}");
        }
        other => panic!("expected a rejection, got {other:?}"),
    }

    // Both exact solvers confirm the optimum is exactly 0 — the gadget's
    // "yes" side. An unsatisfiable formula (the smallest has all 8 sign
    // patterns over 3 variables) would instead have optimum >= 4m.
    let exact = brute_force_minmax(&inst).unwrap();
    let bnb = branch_and_bound_minmax(&inst, None);
    assert!(bnb.optimal);
    assert_eq!(exact.value, 0.0);
    assert_eq!(bnb.value, 0.0);
    println!(
        "\nexact optimum {} (brute force over {} trees, BnB over {} nodes)",
        exact.value, exact.nodes_explored, bnb.nodes_explored
    );
}
