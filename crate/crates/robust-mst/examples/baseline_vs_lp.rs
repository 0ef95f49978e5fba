//! Baseline-versus-LP shootout: on a batch of random instances, compare the
//! mean-scenario MST heuristic against LP rounding, with the exact optimum
//! as the yardstick.
//!
//! Run with `cargo run --example baseline_vs_lp`.

use robust_mst::exact::{baseline_mean_scenario, brute_force_minmax};
use robust_mst::instances::Instance;
use robust_mst::reductions::gen_random;
use robust_mst::rounding::{solve_minmax_approx, RoundingParams};

fn main() {
    println!("{:<28} {:>5} {:>9} {:>9} {:>10} {:>9}", "instance", "opt", "baseline", "lp-round", "lp_bound", "winner");
    let mut base_ratio_sum = 0.0;
    let mut lp_ratio_sum = 0.0;
    let mut rows = 0usize;

    for seed in 0..10u64 {
        let (inst, _) = gen_random(7, 14, 4, (0, 9), false, 0xB000 + seed).unwrap();
        let inst = match inst {
            Instance::MinMax(i) => i,
            _ => unreachable!(),
        };
        let exact = brute_force_minmax(&inst).unwrap();
        if exact.value == 0.0 {
            continue; // ratios are meaningless at zero
        }

        // Baseline: one Kruskal run on the scenario-averaged costs. Fast,
        // deterministic, and never worse than K times the optimum — but the
        // adversary gets to pick the scenario after the averaging.
        let (_, base_value) = baseline_mean_scenario(&inst).unwrap();

        // LP rounding attacks the adversary directly through the relaxation.
        let approx = solve_minmax_approx(&inst, &RoundingParams::default()).unwrap();

        let base_ratio = base_value / exact.value;
        let lp_ratio = approx.value / exact.value;
        base_ratio_sum += base_ratio;
        lp_ratio_sum += lp_ratio;
        rows += 1;
        let winner = if approx.value < base_value {
            "lp-round"
        } else if base_value < approx.value {
            "baseline"
        } else {
            "tie"
        };
        println!(
            "{:<28} {:>5} {:>9} {:>9} {:>10.4} {:>9}",
            inst.name(),
            exact.value,
            base_value,
            approx.value,
            approx.lp_bound,
            winner
        );
        assert!(base_value <= inst.num_scenarios() as f64 * exact.value + 1e-9);
        assert!(approx.value + 1e-9 >= exact.value);
    }

    println!(
        "\nmean ratio over {rows} instances: baseline {:.3}, lp-round {:.3}",
        base_ratio_sum / rows as f64,
        lp_ratio_sum / rows as f64
    );
}
