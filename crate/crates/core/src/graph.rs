//! Simple undirected graphs and exact connectivity tests.
//!
//! Vertex connectivity is computed two independent ways: by internally
//! disjoint path counting (unit-node-capacity max-flow over the standard
//! node-split transformation) and by the Naatz criterion, which only needs
//! disjoint-path counts for vertex pairs at distance exactly two. Both are
//! pure integer procedures. Pairwise flow computations are independent and
//! run in parallel when the `parallel` feature is enabled; results are
//! identical regardless of scheduling.

use std::collections::BTreeMap;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has {have} nodes, operation needs at least {need}")]
    TooFewNodes { need: usize, have: usize },
    #[error("node {0} out of range")]
    InvalidNode(usize),
    #[error("node {0} listed twice")]
    DuplicateNode(usize),
}

pub type Result<T> = std::result::Result<T, GraphError>;

/// Simple undirected graph: no loops, no parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(node_count: usize) -> Self {
        Graph { adj: vec![Vec::new(); node_count] }
    }

    pub fn from_edges(node_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(node_count);
        for &(u, v) in edges {
            if u >= node_count {
                return Err(GraphError::InvalidNode(u));
            }
            if v >= node_count {
                return Err(GraphError::InvalidNode(v));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Inserts an edge, ignoring loops and duplicates.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v {
            return;
        }
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
            let pos = self.adj[v].binary_search(&u).unwrap_err();
            self.adj[v].insert(pos, u);
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|n| n.len()).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as sorted pairs `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.adj.len() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Induced subgraph on `nodes`, plus the map from new ids to old ids.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut sorted = nodes.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateNode(w[0]));
            }
        }
        if let Some(&v) = sorted.iter().find(|&&v| v >= self.node_count()) {
            return Err(GraphError::InvalidNode(v));
        }
        let index: BTreeMap<usize, usize> =
            sorted.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = Graph::new(sorted.len());
        for (i, &v) in sorted.iter().enumerate() {
            for &w in &self.adj[v] {
                if let Some(&j) = index.get(&w) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok((g, sorted))
    }

    /// First node whose degree differs from `k`, if any.
    pub fn first_irregular_node(&self, k: usize) -> Option<usize> {
        (0..self.adj.len()).find(|&v| self.adj[v].len() != k)
    }

    pub fn is_k_regular(&self, k: usize) -> bool {
        self.first_irregular_node(k).is_none()
    }

    /// Maximal connected node sets, each sorted, ordered by least element.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Whether the nodes in `subset` all lie in one component of the graph
    /// induced on `allowed`.
    pub fn connects_within(&self, subset: &[usize], allowed: &[bool]) -> bool {
        let Some(&start) = subset.first() else { return true };
        debug_assert!(subset.iter().all(|&v| allowed[v]));
        let mut seen = vec![false; self.adj.len()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if allowed[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        subset.iter().all(|&v| seen[v])
    }

    /// Nodes at distance exactly 2 from `v`, sorted.
    fn distance_two(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &u in &self.adj[v] {
            for &w in &self.adj[u] {
                if w != v && !self.has_edge(v, w) {
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Number of internally vertex-disjoint `s`–`t` paths, clamped at `cap`.
///
/// Unit-node-capacity max-flow on the split digraph: each node other than
/// `s`, `t` becomes an in/out pair joined by a capacity-1 arc.
pub fn local_connectivity(g: &Graph, s: usize, t: usize, cap: usize) -> usize {
    debug_assert!(s != t);
    if cap == 0 {
        return 0;
    }
    let n = g.node_count();
    // Arc layout: (to, capacity); rev arc is index ^ 1.
    let mut arcs: Vec<(u32, u32)> = Vec::new();
    let mut heads: Vec<Vec<u32>> = vec![Vec::new(); 2 * n];
    let node_in = |v: usize| 2 * v;
    let node_out = |v: usize| 2 * v + 1;
    let push = |arcs: &mut Vec<(u32, u32)>, heads: &mut Vec<Vec<u32>>, a: usize, b: usize, c: usize| {
        heads[a].push(arcs.len() as u32);
        arcs.push((b as u32, c as u32));
        heads[b].push(arcs.len() as u32);
        arcs.push((a as u32, 0));
    };
    let cap32 = cap.min(u32::MAX as usize / 4);
    for v in 0..n {
        let c = if v == s || v == t { cap32 } else { 1 };
        push(&mut arcs, &mut heads, node_in(v), node_out(v), c);
    }
    for (u, v) in g.edges() {
        push(&mut arcs, &mut heads, node_out(u), node_in(v), cap32);
        push(&mut arcs, &mut heads, node_out(v), node_in(u), cap32);
    }
    let source = node_out(s);
    let sink = node_in(t);
    let mut flow = 0usize;
    let mut parent: Vec<u32> = vec![u32::MAX; 2 * n];
    let mut queue: Vec<u32> = Vec::with_capacity(2 * n);
    while flow < cap {
        parent.iter_mut().for_each(|p| *p = u32::MAX);
        queue.clear();
        queue.push(source as u32);
        parent[source] = u32::MAX - 1;
        let mut qi = 0;
        let mut reached = false;
        'bfs: while qi < queue.len() {
            let v = queue[qi] as usize;
            qi += 1;
            for &a in &heads[v] {
                let (to, c) = arcs[a as usize];
                if c > 0 && parent[to as usize] == u32::MAX {
                    parent[to as usize] = a;
                    if to as usize == sink {
                        reached = true;
                        break 'bfs;
                    }
                    queue.push(to);
                }
            }
        }
        if !reached {
            break;
        }
        // Unit bottleneck through node arcs: augment by 1.
        let mut v = sink;
        while v != source {
            let a = parent[v] as usize;
            arcs[a].1 -= 1;
            arcs[a ^ 1].1 += 1;
            v = arcs[a ^ 1].0 as usize;
        }
        flow += 1;
    }
    flow
}

/// Minimum number of nodes whose removal disconnects the graph or reduces it
/// to a single node. Sequential variant, kept callable for benchmarks.
pub fn vertex_connectivity_seq(g: &Graph) -> Result<usize> {
    vertex_connectivity_impl(g, false)
}

/// Minimum number of nodes whose removal disconnects the graph or reduces it
/// to a single node.
pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    vertex_connectivity_impl(g, cfg!(feature = "parallel"))
}

fn vertex_connectivity_impl(g: &Graph, parallel: bool) -> Result<usize> {
    let n = g.node_count();
    if n < 2 {
        return Err(GraphError::TooFewNodes { need: 2, have: n });
    }
    // A minimum cutset omits one of the first k+1 nodes; flows from that node
    // to every later non-neighbor certify the cut size.
    let mut best = n - 1;
    let mut i = 0;
    while i < n && i <= best {
        let targets: Vec<usize> =
            (i + 1..n).filter(|&j| !g.has_edge(i, j)).collect();
        let cap = best;
        let round_min = if parallel {
            #[cfg(feature = "parallel")]
            {
                targets
                    .par_iter()
                    .map(|&j| local_connectivity(g, i, j, cap))
                    .min()
                    .unwrap_or(cap)
            }
            #[cfg(not(feature = "parallel"))]
            unreachable!()
        } else {
            let mut m = cap;
            for &j in &targets {
                m = m.min(local_connectivity(g, i, j, m));
            }
            m
        };
        best = best.min(round_min);
        i += 1;
    }
    Ok(best)
}

/// Naatz distance-2 criterion, sequential variant.
pub fn naatz_k_connected_seq(g: &Graph, k: usize) -> Result<NaatzVerdict> {
    naatz_impl(g, k, false)
}

/// Naatz distance-2 criterion: a graph on at least `k+1` nodes is
/// `k`-connected iff it is connected and every pair of nodes at distance
/// exactly 2 is joined by at least `k` internally disjoint paths.
pub fn naatz_k_connected(g: &Graph, k: usize) -> Result<NaatzVerdict> {
    naatz_impl(g, k, cfg!(feature = "parallel"))
}

/// Outcome of the Naatz test; `witness` is the first failing pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaatzVerdict {
    pub holds: bool,
    pub witness: Option<(usize, usize)>,
}

fn naatz_impl(g: &Graph, k: usize, parallel: bool) -> Result<NaatzVerdict> {
    let n = g.node_count();
    if n < k + 1 {
        return Err(GraphError::TooFewNodes { need: k + 1, have: n });
    }
    if !g.is_connected() {
        return Ok(NaatzVerdict { holds: false, witness: None });
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for v in 0..n {
        for w in g.distance_two(v) {
            if v < w {
                pairs.push((v, w));
            }
        }
    }
    let failing = if parallel {
        #[cfg(feature = "parallel")]
        {
            pairs
                .par_iter()
                .filter(|&&(v, w)| local_connectivity(g, v, w, k) < k)
                .min()
                .copied()
        }
        #[cfg(not(feature = "parallel"))]
        unreachable!()
    } else {
        pairs
            .iter()
            .find(|&&(v, w)| local_connectivity(g, v, w, k) < k)
            .copied()
    };
    Ok(NaatzVerdict { holds: failing.is_none(), witness: failing })
}

/// Graph isomorphism by iterated degree refinement with backtracking.
/// Intended for the small graphs that arise in wedge/cyclic identities.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.node_count() != b.node_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let ca = refine_colors(a);
    let cb = refine_colors(b);
    let mut hist_a: BTreeMap<u64, usize> = BTreeMap::new();
    let mut hist_b: BTreeMap<u64, usize> = BTreeMap::new();
    for &c in &ca {
        *hist_a.entry(c).or_default() += 1;
    }
    for &c in &cb {
        *hist_b.entry(c).or_default() += 1;
    }
    if hist_a != hist_b {
        return false;
    }
    let n = a.node_count();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    backtrack(a, b, &ca, &cb, 0, &mut map, &mut used)
}

fn refine_colors(g: &Graph) -> Vec<u64> {
    let n = g.node_count();
    let mut colors: Vec<u64> = (0..n).map(|v| g.degree(v) as u64).collect();
    for _ in 0..n {
        let mut sigs: Vec<(u64, Vec<u64>)> = Vec::with_capacity(n);
        for v in 0..n {
            let mut nb: Vec<u64> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
            nb.sort_unstable();
            sigs.push((colors[v], nb));
        }
        // Palette ids follow signature order so colors are comparable
        // across graphs.
        let mut uniq: Vec<&(u64, Vec<u64>)> = sigs.iter().collect();
        uniq.sort();
        uniq.dedup();
        let palette: BTreeMap<&(u64, Vec<u64>), u64> =
            uniq.into_iter().enumerate().map(|(i, s)| (s, i as u64)).collect();
        let new: Vec<u64> = sigs.iter().map(|s| palette[s]).collect();
        if new == colors {
            break;
        }
        colors = new;
    }
    colors
}

#[allow(clippy::needless_range_loop)]
fn backtrack(
    a: &Graph,
    b: &Graph,
    ca: &[u64],
    cb: &[u64],
    v: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let n = a.node_count();
    if v == n {
        return true;
    }
    'cand: for w in 0..n {
        if used[w] || cb[w] != ca[v] {
            continue;
        }
        for &u in a.neighbors(v) {
            if u < v && !b.has_edge(map[u], w) {
                continue 'cand;
            }
        }
        for u in 0..v {
            if !a.has_edge(u, v) && b.has_edge(map[u], w) {
                continue 'cand;
            }
        }
        map[v] = w;
        used[w] = true;
        if backtrack(a, b, ca, cb, v + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

/// Complete graph on `n` nodes.
pub fn complete_graph(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}

/// Cycle on `n` nodes.
pub fn cycle_graph(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for v in 0..n {
        g.add_edge(v, (v + 1) % n);
    }
    g
}

/// The 3-cube graph.
pub fn cube_graph() -> Graph {
    let mut g = Graph::new(8);
    for v in 0..8usize {
        for bit in 0..3 {
            g.add_edge(v, v ^ (1 << bit));
        }
    }
    g
}

/// The Petersen graph.
pub fn petersen_graph() -> Graph {
    let mut g = Graph::new(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    g
}
