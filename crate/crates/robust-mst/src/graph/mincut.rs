//! Global minimum cut by the Stoer–Wagner algorithm.

use super::{CutSide, Graph};

/// Exact global minimum cut under nonnegative edge weights.
///
/// Runs `n - 1` maximum-adjacency phases, merging the last two vertices of
/// each order and remembering the lightest cut-of-the-phase. Parallel edges
/// are aggregated by weight. Returns the cut value and one side of the cut;
/// a disconnected graph yields value 0 with a separating side.
///
/// Deterministic: each phase starts from the smallest active vertex and
/// breaks key ties by smallest vertex id. Requires `n >= 2`; weights must be
/// nonnegative (tiny negative noise is clamped to zero).
pub fn global_min_cut(graph: &Graph, weights: &[f64]) -> (f64, CutSide) {
    let n = graph.num_vertices();
    assert!(n >= 2, "global_min_cut needs at least two vertices");
    assert_eq!(weights.len(), graph.num_edges(), "one weight per edge");

    // Aggregate parallel edges into a dense symmetric matrix.
    let mut w = vec![0.0f64; n * n];
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        debug_assert!(weights[e] > -1e-9, "negative weight {} on edge {e}", weights[e]);
        let wt = weights[e].max(0.0);
        w[u * n + v] += wt;
        w[v * n + u] += wt;
    }

    let mut active: Vec<usize> = (0..n).collect();
    let mut group: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut best_value = f64::INFINITY;
    let mut best_side: Vec<usize> = Vec::new();

    while active.len() > 1 {
        // Maximum-adjacency order over the active (merged) vertices.
        let mut in_order = vec![false; n];
        let mut key = vec![0.0f64; n];
        let start = active[0];
        in_order[start] = true;
        for &v in &active {
            if v != start {
                key[v] = w[start * n + v];
            }
        }
        let mut last = start;
        let mut second_last = start;
        for _ in 1..active.len() {
            let mut pick = usize::MAX;
            for &v in &active {
                if !in_order[v] && (pick == usize::MAX || key[v] > key[pick]) {
                    pick = v;
                }
            }
            in_order[pick] = true;
            second_last = last;
            last = pick;
            for &v in &active {
                if !in_order[v] {
                    key[v] += w[pick * n + v];
                }
            }
        }

        // Cut of the phase: the last vertex against everything else.
        let cut_of_phase = key[last];
        if cut_of_phase < best_value {
            best_value = cut_of_phase;
            best_side = group[last].clone();
        }

        // Merge `last` into `second_last`.
        for &v in &active {
            if v != last && v != second_last {
                let wl = w[last * n + v];
                w[second_last * n + v] += wl;
                w[v * n + second_last] += wl;
            }
        }
        let moved = std::mem::take(&mut group[last]);
        group[second_last].extend(moved);
        group[second_last].sort_unstable();
        active.retain(|&v| v != last);
    }

    let side = CutSide::new(n, best_side).expect("phase side is a proper nonempty subset");
    (best_value, side)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeSet;
    use crate::rng::SplitMix64;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges.to_vec()).unwrap()
    }

    /// Oracle: try all 2^(n-1) - 1 sides that exclude vertex 0.
    fn min_cut_by_enumeration(g: &Graph, weights: &[f64]) -> f64 {
        let n = g.num_vertices();
        let mut best = f64::INFINITY;
        for mask in 1u32..(1 << (n - 1)) {
            let side: Vec<usize> = (1..n).filter(|&v| mask >> (v - 1) & 1 == 1).collect();
            if side.len() == n {
                continue;
            }
            let cut = CutSide::new(n, side).unwrap();
            best = best.min(cut.cut_value(g, weights));
        }
        best
    }

    #[test]
    fn triangle_unit_weights() {
        let g = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let (value, side) = global_min_cut(&g, &[1.0, 1.0, 1.0]);
        assert!((value - 2.0).abs() < 1e-12);
        assert!(side.vertices().len() == 1 || side.vertices().len() == 2);
    }

    #[test]
    fn path_takes_the_light_edge() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let (value, side) = global_min_cut(&g, &[1.0, 0.3]);
        assert!((value - 0.3).abs() < 1e-12);
        // The cheap cut isolates vertex 2 (or equivalently {0, 1}).
        let key = side.canonical_key();
        assert_eq!(key, vec![2]);
    }

    #[test]
    fn parallel_edges_aggregate() {
        let g = graph(2, &[(0, 1), (0, 1), (0, 1)]);
        let (value, _) = global_min_cut(&g, &[0.25, 0.5, 0.125]);
        assert!((value - 0.875).abs() < 1e-12);
    }

    #[test]
    fn disconnected_graph_reports_zero() {
        let g = graph(4, &[(0, 1), (2, 3)]);
        let (value, side) = global_min_cut(&g, &[5.0, 7.0]);
        assert_eq!(value, 0.0);
        assert!((side.cut_value(&g, &[5.0, 7.0])).abs() < 1e-12);
    }

    #[test]
    fn zero_weights_allowed() {
        let g = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let (value, _) = global_min_cut(&g, &[0.0, 0.0, 0.0]);
        assert_eq!(value, 0.0);
    }

    #[test]
    fn matches_enumeration_on_random_graphs() {
        let mut rng = SplitMix64::new(0x5ee_dc);
        for trial in 0..200 {
            let n = 2 + (rng.next_below(8) as usize); // 2..=9
            let m = n - 1 + rng.next_below(8) as usize;
            let mut edges = Vec::with_capacity(m);
            for v in 1..n {
                let u = rng.next_below(v as u64) as usize;
                edges.push((u, v));
            }
            while edges.len() < m {
                let u = rng.next_below(n as u64) as usize;
                let mut v = rng.next_below(n as u64 - 1) as usize;
                if v >= u {
                    v += 1;
                }
                edges.push((u.min(v), u.max(v)));
            }
            let g = graph(n, &edges);
            let weights: Vec<f64> = (0..m).map(|_| rng.next_below(100) as f64 / 10.0).collect();
            let (value, side) = global_min_cut(&g, &weights);
            let oracle = min_cut_by_enumeration(&g, &weights);
            assert!(
                (value - oracle).abs() <= 1e-9,
                "trial {trial}: got {value}, oracle {oracle}"
            );
            // The returned side must realize the returned value.
            assert!((side.cut_value(&g, &weights) - value).abs() <= 1e-9);
        }
    }

    #[test]
    fn deterministic_across_runs() {
        let g = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3)]);
        let weights = [1.0, 2.0, 1.0, 2.0, 1.0, 1.0];
        let a = global_min_cut(&g, &weights);
        let b = global_min_cut(&g, &weights);
        assert_eq!(a.0, b.0);
        assert_eq!(a.1.vertices(), b.1.vertices());
    }

    #[test]
    fn value_never_exceeds_any_sampled_side() {
        let mut rng = SplitMix64::new(77);
        let g = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 4)]);
        let weights: Vec<f64> = (0..7).map(|_| rng.next_f64() * 4.0).collect();
        let (value, _) = global_min_cut(&g, &weights);
        for _ in 0..1000 {
            let mut verts: Vec<usize> = (0..6).filter(|_| rng.next_f64() < 0.5).collect();
            if verts.is_empty() {
                verts.push(rng.next_below(6) as usize);
            }
            if verts.len() == 6 {
                verts.pop();
            }
            let side = CutSide::new(6, verts).unwrap();
            assert!(side.cut_value(&g, &weights) >= value - 1e-9);
        }
    }

    #[test]
    fn side_is_usable_as_edge_filter() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let (value, side) = global_min_cut(&g, &[1.0, 1.0, 1.0, 1.0]);
        assert!((value - 2.0).abs() < 1e-12);
        let crossing = side.crossing_edges(&g);
        assert_eq!(crossing.len(), 2);
        let as_set = EdgeSet::from_indices(g.num_edges(), crossing);
        assert_eq!(as_set.len(), 2);
    }
}
