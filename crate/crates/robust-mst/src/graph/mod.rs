//! Undirected multigraphs and the tree/cut primitives the solvers build on.
//!
//! Edges are identified by their index into the graph's edge list, and all
//! algorithms break ties by ascending edge index so results are reproducible
//! across runs and platforms.

use std::fmt;

mod mincut;

pub use mincut::global_min_cut;

/// Errors from graph construction and algorithms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    /// The graph (or the given edge subset) does not connect all vertices.
    Disconnected,
    /// Spanning tree enumeration found more trees than the caller allowed.
    TooManyTrees { limit: u64 },
    /// An edge endpoint is out of range, or the edge is a self-loop.
    InvalidEdge { index: usize, u: usize, v: usize },
    /// A cost or weight vector does not have one entry per edge.
    CostLengthMismatch { expected: usize, actual: usize },
    /// A cut side must be a nonempty proper subset of the vertices.
    InvalidCutSide,
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::Disconnected => write!(f, "graph is not connected"),
            GraphError::TooManyTrees { limit } => {
                write!(f, "spanning tree count exceeds limit {limit}")
            }
            GraphError::InvalidEdge { index, u, v } => {
                write!(f, "edge {index} = ({u}, {v}) is invalid")
            }
            GraphError::CostLengthMismatch { expected, actual } => {
                write!(f, "expected {expected} edge costs, got {actual}")
            }
            GraphError::InvalidCutSide => {
                write!(f, "cut side must be a nonempty proper vertex subset")
            }
        }
    }
}

impl std::error::Error for GraphError {}

/// An undirected multigraph with a fixed vertex count and indexed edges.
///
/// Parallel edges are allowed (they carry distinct indices and may carry
/// distinct costs); self-loops are not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        for (index, &(u, v)) in edges.iter().enumerate() {
            if u >= num_vertices || v >= num_vertices || u == v {
                return Err(GraphError::InvalidEdge { index, u, v });
            }
        }
        Ok(Graph {
            num_vertices,
            edges,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        self.edges[edge]
    }

    /// True when the full edge set connects every vertex.
    pub fn is_connected(&self) -> bool {
        if self.num_vertices == 0 {
            return false;
        }
        let mut uf = UnionFind::new(self.num_vertices);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        uf.components() == 1
    }
}

/// A set of edge indices over a fixed universe `0..universe`, stored as a
/// bitset with an O(1) size counter.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    universe: usize,
    len: usize,
    blocks: Vec<u64>,
}

impl EdgeSet {
    pub fn new(universe: usize) -> Self {
        EdgeSet {
            universe,
            len: 0,
            blocks: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut set = EdgeSet::new(universe);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Universe size this set indexes into (the graph's edge count).
    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.universe && self.blocks[index / 64] >> (index % 64) & 1 == 1
    }

    /// Inserts an index; returns true if it was newly added.
    pub fn insert(&mut self, index: usize) -> bool {
        assert!(index < self.universe, "edge index {index} out of range");
        let mask = 1u64 << (index % 64);
        let block = &mut self.blocks[index / 64];
        if *block & mask == 0 {
            *block |= mask;
            self.len += 1;
            true
        } else {
            false
        }
    }

    /// Removes an index; returns true if it was present.
    pub fn remove(&mut self, index: usize) -> bool {
        if !self.contains(index) {
            return false;
        }
        self.blocks[index / 64] &= !(1u64 << (index % 64));
        self.len -= 1;
        true
    }

    /// Iterates member indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(b, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let tz = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(b * 64 + tz)
                }
            })
        })
    }

    /// Member indices as a sorted vector.
    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// One side `W` of a vertex cut: a nonempty proper subset of the vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutSide {
    num_vertices: usize,
    vertices: Vec<usize>,
}

impl CutSide {
    pub fn new(num_vertices: usize, mut vertices: Vec<usize>) -> Result<Self, GraphError> {
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.is_empty() || vertices.len() >= num_vertices {
            return Err(GraphError::InvalidCutSide);
        }
        if vertices.iter().any(|&v| v >= num_vertices) {
            return Err(GraphError::InvalidCutSide);
        }
        Ok(CutSide {
            num_vertices,
            vertices,
        })
    }

    /// Vertices on this side, sorted ascending.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Per-vertex membership flags.
    pub fn indicator(&self) -> Vec<bool> {
        let mut side = vec![false; self.num_vertices];
        for &v in &self.vertices {
            side[v] = true;
        }
        side
    }

    /// Indices of edges with exactly one endpoint on this side.
    pub fn crossing_edges(&self, graph: &Graph) -> Vec<usize> {
        let side = self.indicator();
        (0..graph.num_edges())
            .filter(|&e| {
                let (u, v) = graph.endpoints(e);
                side[u] != side[v]
            })
            .collect()
    }

    /// Total weight crossing the cut.
    pub fn cut_value(&self, graph: &Graph, weights: &[f64]) -> f64 {
        let side = self.indicator();
        let mut total = 0.0;
        for (e, &(u, v)) in graph.edges().iter().enumerate() {
            if side[u] != side[v] {
                total += weights[e];
            }
        }
        total
    }

    /// Canonical key for deduplication: the smaller-id-free side, so `W` and
    /// its complement map to the same key.
    pub fn canonical_key(&self) -> Vec<usize> {
        if self.vertices.contains(&0) {
            let side = self.indicator();
            (0..self.num_vertices).filter(|&v| !side[v]).collect()
        } else {
            self.vertices.clone()
        }
    }
}

/// Union-find over `0..n` with union by rank and path halving.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
            components: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the two components; returns false if already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (hi, lo) = if self.rank[ra] >= self.rank[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[lo] = hi;
        if self.rank[hi] == self.rank[lo] {
            self.rank[hi] += 1;
        }
        self.components -= 1;
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn components(&self) -> usize {
        self.components
    }
}

/// Minimum spanning tree by Kruskal's algorithm, ties broken by ascending
/// edge index. Costs may be negative but must be finite.
pub fn kruskal_mst(graph: &Graph, costs: &[f64]) -> Result<EdgeSet, GraphError> {
    kruskal_filtered(graph, costs, |_| true)
}

/// Kruskal restricted to the edges in `allowed`.
pub fn kruskal_mst_restricted(
    graph: &Graph,
    costs: &[f64],
    allowed: &EdgeSet,
) -> Result<EdgeSet, GraphError> {
    kruskal_filtered(graph, costs, |e| allowed.contains(e))
}

/// Cheapest completion of a base forest into a spanning tree.
///
/// The base edges are contracted first; candidate edges (all edges, or only
/// `candidates` when given) are then scanned in `(cost, index)` order. The
/// returned set contains only the added edges, disjoint from the base.
pub fn kruskal_completion(
    graph: &Graph,
    costs: &[f64],
    base: &EdgeSet,
    candidates: Option<&EdgeSet>,
) -> Result<EdgeSet, GraphError> {
    check_costs(graph, costs)?;
    let mut uf = UnionFind::new(graph.num_vertices());
    for e in base.iter() {
        let (u, v) = graph.endpoints(e);
        uf.union(u, v);
    }
    let mut order: Vec<usize> = match candidates {
        Some(set) => set.iter().collect(),
        None => (0..graph.num_edges()).collect(),
    };
    order.sort_by(|&a, &b| costs[a].total_cmp(&costs[b]).then(a.cmp(&b)));
    let mut added = EdgeSet::new(graph.num_edges());
    for e in order {
        let (u, v) = graph.endpoints(e);
        if uf.union(u, v) {
            added.insert(e);
            if uf.components() == 1 {
                break;
            }
        }
    }
    if uf.components() == 1 || graph.num_vertices() == 0 {
        Ok(added)
    } else {
        Err(GraphError::Disconnected)
    }
}

fn kruskal_filtered(
    graph: &Graph,
    costs: &[f64],
    keep: impl Fn(usize) -> bool,
) -> Result<EdgeSet, GraphError> {
    check_costs(graph, costs)?;
    let mut order: Vec<usize> = (0..graph.num_edges()).filter(|&e| keep(e)).collect();
    order.sort_by(|&a, &b| costs[a].total_cmp(&costs[b]).then(a.cmp(&b)));
    let mut uf = UnionFind::new(graph.num_vertices());
    let mut tree = EdgeSet::new(graph.num_edges());
    for e in order {
        let (u, v) = graph.endpoints(e);
        if uf.union(u, v) {
            tree.insert(e);
        }
    }
    if tree.len() == graph.num_vertices().saturating_sub(1) {
        Ok(tree)
    } else {
        Err(GraphError::Disconnected)
    }
}

fn check_costs(graph: &Graph, costs: &[f64]) -> Result<(), GraphError> {
    if costs.len() != graph.num_edges() {
        return Err(GraphError::CostLengthMismatch {
            expected: graph.num_edges(),
            actual: costs.len(),
        });
    }
    Ok(())
}

/// Connected components induced by the active edge subset.
///
/// Returns the component count and a per-vertex label in `0..count`;
/// labels are assigned in order of each component's smallest vertex, so two
/// vertices share a label iff the active edges connect them.
pub fn connected_components(graph: &Graph, active: &EdgeSet) -> (usize, Vec<usize>) {
    let n = graph.num_vertices();
    let mut uf = UnionFind::new(n);
    for e in active.iter() {
        let (u, v) = graph.endpoints(e);
        uf.union(u, v);
    }
    let mut label_of_root = vec![usize::MAX; n];
    let mut labels = vec![0; n];
    let mut next = 0;
    for v in 0..n {
        let root = uf.find(v);
        if label_of_root[root] == usize::MAX {
            label_of_root[root] = next;
            next += 1;
        }
        labels[v] = label_of_root[root];
    }
    (next, labels)
}

/// True iff `tree` has exactly `n - 1` edges and connects every vertex.
pub fn is_spanning_tree(graph: &Graph, tree: &EdgeSet) -> bool {
    debug_assert_eq!(tree.universe(), graph.num_edges());
    let n = graph.num_vertices();
    if n == 0 || tree.len() != n - 1 {
        return false;
    }
    let mut uf = UnionFind::new(n);
    for e in tree.iter() {
        let (u, v) = graph.endpoints(e);
        if !uf.union(u, v) {
            return false;
        }
    }
    uf.components() == 1
}

/// Streams every spanning tree of the graph to `visit`, in lexicographic
/// order of the edge index set, each exactly once. Returns the tree count.
///
/// Aborts with [`GraphError::TooManyTrees`] as soon as more than `limit`
/// trees exist, and with [`GraphError::Disconnected`] when there are none.
/// Intended for small graphs; the count can grow as `n^{n-2}`.
pub fn visit_spanning_trees(
    graph: &Graph,
    limit: u64,
    mut visit: impl FnMut(&EdgeSet),
) -> Result<u64, GraphError> {
    let n = graph.num_vertices();
    if n == 0 || !graph.is_connected() {
        return Err(GraphError::Disconnected);
    }
    if n == 1 {
        if limit < 1 {
            return Err(GraphError::TooManyTrees { limit });
        }
        visit(&EdgeSet::new(graph.num_edges()));
        return Ok(1);
    }
    let mut chosen = EdgeSet::new(graph.num_edges());
    let mut count = 0u64;
    let uf = UnionFind::new(n);
    visit_trees_rec(graph, 0, uf, &mut chosen, limit, &mut count, &mut visit)?;
    Ok(count)
}

/// Collects every spanning tree into a vector; see [`visit_spanning_trees`].
pub fn enumerate_spanning_trees(graph: &Graph, limit: u64) -> Result<Vec<EdgeSet>, GraphError> {
    let mut trees = Vec::new();
    visit_spanning_trees(graph, limit, |t| trees.push(t.clone()))?;
    Ok(trees)
}

fn visit_trees_rec(
    graph: &Graph,
    from_edge: usize,
    mut uf: UnionFind,
    chosen: &mut EdgeSet,
    limit: u64,
    count: &mut u64,
    visit: &mut impl FnMut(&EdgeSet),
) -> Result<(), GraphError> {
    if uf.components() == 1 {
        *count += 1;
        if *count > limit {
            return Err(GraphError::TooManyTrees { limit });
        }
        visit(chosen);
        return Ok(());
    }
    // Prune: the remaining edges must still be able to connect what's left.
    {
        let mut probe = uf.clone();
        for e in from_edge..graph.num_edges() {
            let (u, v) = graph.endpoints(e);
            probe.union(u, v);
            if probe.components() == 1 {
                break;
            }
        }
        if probe.components() != 1 {
            return Ok(());
        }
    }
    // Find the next edge that is not a self-loop under the contraction.
    let mut e = from_edge;
    while e < graph.num_edges() {
        let (u, v) = graph.endpoints(e);
        if !uf.same(u, v) {
            break;
        }
        e += 1;
    }
    if e == graph.num_edges() {
        return Ok(());
    }
    // Include e first so trees come out in ascending lexicographic order.
    let (u, v) = graph.endpoints(e);
    let mut with_e = uf.clone();
    with_e.union(u, v);
    chosen.insert(e);
    visit_trees_rec(graph, e + 1, with_e, chosen, limit, count, visit)?;
    chosen.remove(e);
    visit_trees_rec(graph, e + 1, uf, chosen, limit, count, visit)
}
