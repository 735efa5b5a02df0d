//! Perles-condition predicates on simple polytope models, candidate
//! enumeration, and the core obstruction complex.
//!
//! A simple `d`-polytope is modeled by its vertex–facet incidences. Facet
//! subgraphs are induced, connected, `(d-1)`-regular and non-separating; the
//! conjecture asks whether those properties already characterize them. The
//! enumerator searches vertex subsets with a three-valued assignment
//! (in/out/undecided) and constraint propagation; an exhaustive subset scan
//! serves as its oracle on small models.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use thiserror::Error;

use crate::complex::{build_complex, ComplexError, Simplex, SimplicialComplex};
use crate::graph::{self, Graph, GraphError};
use crate::homology;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("vertex {vertex} lies in {count} facets, expected {expected}")]
    NotSimple { vertex: usize, count: usize, expected: usize },
    #[error("derived graph is not {0}-regular")]
    NotRegular(usize),
    #[error("derived graph is disconnected")]
    Disconnected,
    #[error("facet {0:?} listed twice")]
    DuplicateFacet(Vec<usize>),
    #[error("model has no facets")]
    NoFacets,
    #[error("vertex {0} occurs in no facet")]
    VertexGap(usize),
    #[error("boundary complex is not a closed pseudomanifold")]
    NotClosed,
    #[error("candidate vertex set must be a nonempty proper subset")]
    BadCandidate,
    #[error("model has {0} graph vertices, exhaustive scan is guarded at {1}")]
    TooLargeForBruteForce(usize, usize),
    #[error("facet {facet:?} of the subcomplex has {count} free ridges, expected exactly 1")]
    FreeRidgeCount { facet: Vec<usize>, count: usize },
    #[error("ambient complex is not a closed 3-pseudomanifold")]
    NotSphereLike,
    #[error("subcomplex is not a pure 3-dimensional subcomplex of the ambient complex")]
    BadSubcomplex,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("model parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, ModelError>;

/// Vertex–facet incidence model of a simple `d`-polytope.
///
/// Vertices are dense ids `0..vertex_count`; each lies in exactly `d`
/// facets, and two vertices are adjacent iff they share exactly `d-1`
/// facets. The derived graph is `d`-regular and connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplePolytopeModel {
    dim: usize,
    facets: Vec<Vec<usize>>,
    vertex_facets: Vec<Vec<usize>>,
    graph: Graph,
}

impl SimplePolytopeModel {
    /// Validating constructor from facet vertex sets.
    pub fn new(dim: usize, facets: Vec<Vec<usize>>) -> Result<Self> {
        if facets.is_empty() {
            return Err(ModelError::NoFacets);
        }
        let mut canonical: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        canonical.sort();
        for w in canonical.windows(2) {
            if w[0] == w[1] {
                return Err(ModelError::DuplicateFacet(w[0].clone()));
            }
        }
        let vertex_count = canonical
            .iter()
            .flat_map(|f| f.iter().copied())
            .max()
            .map_or(0, |m| m + 1);
        let mut vertex_facets: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
        for (i, f) in canonical.iter().enumerate() {
            for &v in f {
                vertex_facets[v].push(i);
            }
        }
        for (v, fs) in vertex_facets.iter().enumerate() {
            if fs.is_empty() {
                return Err(ModelError::VertexGap(v));
            }
            if fs.len() != dim {
                return Err(ModelError::NotSimple { vertex: v, count: fs.len(), expected: dim });
            }
        }
        // Adjacency rule: share exactly d-1 common facets.
        let mut g = Graph::new(vertex_count);
        for u in 0..vertex_count {
            for v in u + 1..vertex_count {
                let common = intersect_count(&vertex_facets[u], &vertex_facets[v]);
                if common + 1 == dim {
                    g.add_edge(u, v);
                }
            }
        }
        let model = SimplePolytopeModel { dim, facets: canonical, vertex_facets, graph: g };
        model.check_graph()?;
        Ok(model)
    }

    fn check_graph(&self) -> Result<()> {
        if !self.graph.is_k_regular(self.dim) {
            return Err(ModelError::NotRegular(self.dim));
        }
        if !self.graph.is_connected() {
            return Err(ModelError::Disconnected);
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_facets.len()
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// Facet vertex sets in canonical order.
    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// Facet indices containing each vertex.
    pub fn vertex_facets(&self) -> &[Vec<usize>] {
        &self.vertex_facets
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Serializes to the model text format: `d <d>` header, then one facet
    /// vertex set per line.
    pub fn to_model_text(&self) -> String {
        let mut out = format!("d {}\n", self.dim);
        for f in &self.facets {
            let words: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            out.push_str(&words.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_model_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or(ModelError::Parse { line: 1, msg: "missing header".into() })?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 2 || parts[0] != "d" {
            return Err(ModelError::Parse { line: 1, msg: format!("bad header {header:?}") });
        }
        let dim: usize = parts[1]
            .parse()
            .map_err(|_| ModelError::Parse { line: 1, msg: format!("bad dimension {:?}", parts[1]) })?;
        let mut facets = Vec::new();
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let f: Vec<usize> = line
                .split_whitespace()
                .map(|w| {
                    w.parse().map_err(|_| ModelError::Parse {
                        line: idx + 1,
                        msg: format!("bad vertex {w:?}"),
                    })
                })
                .collect::<Result<_>>()?;
            facets.push(f);
        }
        SimplePolytopeModel::new(dim, facets)
    }
}

fn intersect_count(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Builds the simple-polytope model dual to a simplicial boundary complex:
/// model vertices are the facets of `delta`, model facets its vertex stars,
/// and the derived graph is the dual graph of `delta`.
pub fn from_simplicial_boundary(delta: &SimplicialComplex) -> Result<SimplePolytopeModel> {
    if !delta.is_closed_pseudomanifold()?.is_closed() {
        return Err(ModelError::NotClosed);
    }
    let dim = delta.dim().expect("nonempty") + 1;
    let used = delta.vertices();
    let position: BTreeMap<usize, usize> =
        used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut facets: Vec<Vec<usize>> = vec![Vec::new(); used.len()];
    for (i, f) in delta.facets().iter().enumerate() {
        for &v in f.vertices() {
            facets[position[&v]].push(i);
        }
    }
    let graph = delta.dual_graph()?;
    let mut canonical = facets;
    canonical.sort();
    let mut vertex_facets: Vec<Vec<usize>> = vec![Vec::new(); delta.facet_count()];
    for (i, f) in canonical.iter().enumerate() {
        for &v in f {
            vertex_facets[v].push(i);
        }
    }
    for (v, fs) in vertex_facets.iter().enumerate() {
        if fs.len() != dim {
            return Err(ModelError::NotSimple { vertex: v, count: fs.len(), expected: dim });
        }
    }
    let model = SimplePolytopeModel { dim, facets: canonical, vertex_facets, graph };
    model.check_graph()?;
    Ok(model)
}

/// Inverse of [`from_simplicial_boundary`]: the simplicial boundary whose
/// facets are the facet sets through each model vertex.
pub fn boundary_complex(model: &SimplePolytopeModel) -> Result<SimplicialComplex> {
    let delta = build_complex(model.vertex_facets.iter().cloned())?;
    if !delta.is_closed_pseudomanifold()?.is_closed() {
        return Err(ModelError::NotClosed);
    }
    Ok(delta)
}

/// Facet vertex sets of the model, canonicalized.
pub fn facet_subgraph_vertex_sets(model: &SimplePolytopeModel) -> Vec<Vec<usize>> {
    model.facets.clone()
}

/// A candidate vertex set with its three Perles flags.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PerlesCandidate {
    pub vertices: Vec<usize>,
    pub regular: bool,
    pub connected: bool,
    pub complement_connected: bool,
}

impl PerlesCandidate {
    pub fn all_flags(&self) -> bool {
        self.regular && self.connected && self.complement_connected
    }
}

/// Computes the three Perles flags for a nonempty proper vertex subset.
pub fn is_perles_subgraph(model: &SimplePolytopeModel, h: &[usize]) -> Result<PerlesCandidate> {
    let n = model.vertex_count();
    let mut vertices = h.to_vec();
    vertices.sort_unstable();
    vertices.dedup();
    if vertices.is_empty() || vertices.len() == n {
        return Err(ModelError::BadCandidate);
    }
    if let Some(&v) = vertices.iter().find(|&&v| v >= n) {
        return Err(GraphError::InvalidNode(v).into());
    }
    let g = model.graph();
    let (sub, _) = g.induced_subgraph(&vertices)?;
    let regular = sub.is_k_regular(model.dim - 1);
    let connected = sub.is_connected();
    let complement: Vec<usize> =
        (0..n).filter(|v| vertices.binary_search(v).is_err()).collect();
    let (csub, _) = g.induced_subgraph(&complement)?;
    let complement_connected = csub.is_connected();
    Ok(PerlesCandidate { vertices, regular, connected, complement_connected })
}

/// Whether the induced subgraph on a candidate is `(d-1)`-connected.
pub fn weak_perles_flag(model: &SimplePolytopeModel, h: &[usize]) -> Result<bool> {
    let (sub, _) = model.graph().induced_subgraph(h)?;
    Ok(graph::vertex_connectivity(&sub)? >= model.dim - 1)
}

/// All vertex sets with every Perles flag true, by three-valued depth-first
/// search with constraint propagation.
///
/// Propagation rules, for a `d`-regular ambient graph:
/// * an undecided vertex with two decided-out neighbors is forced out;
/// * an in-vertex with one decided-out neighbor has its remaining neighbors
///   forced in;
/// * an in-vertex with `d-1` decided-in neighbors has the rest forced out.
///
/// Subtrees after the first branching levels are independent and run in
/// parallel; the merged result is canonically sorted.
pub fn enumerate_perles_subgraphs(model: &SimplePolytopeModel) -> Vec<PerlesCandidate> {
    let searcher = Searcher { model };
    let root = SearchState::fresh(model.vertex_count());
    // Collect open subproblems at shallow depth, then finish each one.
    let mut frontier = Vec::new();
    searcher.expand(root, 0, &mut frontier);
    let solve = |state: &SearchState| {
        let mut found = Vec::new();
        searcher.dfs(state.clone(), &mut found);
        found
    };
    let mut candidates: Vec<PerlesCandidate> = {
        #[cfg(feature = "parallel")]
        {
            frontier.par_iter().flat_map_iter(solve).collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            frontier.iter().flat_map(solve).collect()
        }
    };
    candidates.sort();
    candidates.dedup();
    candidates
}

const FRONTIER_DEPTH: usize = 4;

#[derive(Clone)]
struct SearchState {
    decision: Vec<Option<bool>>,
    in_count: Vec<u32>,
    out_count: Vec<u32>,
    undecided: usize,
}

impl SearchState {
    fn fresh(n: usize) -> Self {
        SearchState {
            decision: vec![None; n],
            in_count: vec![0; n],
            out_count: vec![0; n],
            undecided: n,
        }
    }
}

struct Searcher<'a> {
    model: &'a SimplePolytopeModel,
}

impl Searcher<'_> {
    /// Decides `v` and propagates; returns false on contradiction.
    fn assign(&self, state: &mut SearchState, v: usize, value: bool) -> bool {
        let g = self.model.graph();
        let d = self.model.dim as u32;
        let mut queue: Vec<(usize, bool)> = vec![(v, value)];
        while let Some((u, val)) = queue.pop() {
            match state.decision[u] {
                Some(prev) => {
                    if prev != val {
                        return false;
                    }
                    continue;
                }
                None => {
                    state.decision[u] = Some(val);
                    state.undecided -= 1;
                }
            }
            for &w in g.neighbors(u) {
                if val {
                    state.in_count[w] += 1;
                } else {
                    state.out_count[w] += 1;
                }
            }
            // Re-examine the neighborhood for forced decisions.
            for &w in g.neighbors(u) {
                match state.decision[w] {
                    None => {
                        if state.out_count[w] >= 2 {
                            queue.push((w, false));
                        }
                    }
                    Some(true) => {
                        if state.out_count[w] >= 2 || state.in_count[w] >= d {
                            return false;
                        }
                        if state.out_count[w] == 1 || state.in_count[w] == d - 1 {
                            let force_in = state.out_count[w] == 1;
                            for &x in g.neighbors(w) {
                                if state.decision[x].is_none() {
                                    queue.push((x, force_in));
                                }
                            }
                        }
                    }
                    Some(false) => {}
                }
            }
            // The vertex itself may now be constrained.
            if let Some(true) = state.decision[u] {
                if state.out_count[u] >= 2 || state.in_count[u] >= d {
                    return false;
                }
                if state.out_count[u] == 1 || state.in_count[u] == d - 1 {
                    let force_in = state.out_count[u] == 1;
                    for &x in g.neighbors(u) {
                        if state.decision[x].is_none() {
                            queue.push((x, force_in));
                        }
                    }
                }
            }
        }
        true
    }

    /// Connectivity pruning: decided-in vertices must be joinable through
    /// non-out vertices, decided-out vertices through non-in vertices.
    fn prune(&self, state: &SearchState) -> bool {
        let g = self.model.graph();
        let n = g.node_count();
        let ins: Vec<usize> =
            (0..n).filter(|&v| state.decision[v] == Some(true)).collect();
        if ins.len() > 1 {
            let allowed: Vec<bool> =
                (0..n).map(|v| state.decision[v] != Some(false)).collect();
            if !g.connects_within(&ins, &allowed) {
                return false;
            }
        }
        let outs: Vec<usize> =
            (0..n).filter(|&v| state.decision[v] == Some(false)).collect();
        if outs.len() > 1 {
            let allowed: Vec<bool> =
                (0..n).map(|v| state.decision[v] != Some(true)).collect();
            if !g.connects_within(&outs, &allowed) {
                return false;
            }
        }
        true
    }

    /// Most-constrained undecided vertex: maximal decided neighbor count,
    /// ties to the smallest id.
    fn branch_vertex(&self, state: &SearchState) -> usize {
        let g = self.model.graph();
        let mut best = usize::MAX;
        let mut best_score = -1i64;
        for v in 0..g.node_count() {
            if state.decision[v].is_none() {
                let score = (state.in_count[v] + state.out_count[v]) as i64;
                if score > best_score {
                    best_score = score;
                    best = v;
                }
            }
        }
        best
    }

    fn leaf(&self, state: &SearchState, found: &mut Vec<PerlesCandidate>) {
        let n = self.model.vertex_count();
        let vertices: Vec<usize> =
            (0..n).filter(|&v| state.decision[v] == Some(true)).collect();
        if vertices.is_empty() || vertices.len() == n {
            return;
        }
        debug_assert!(vertices
            .iter()
            .all(|&v| state.in_count[v] + 1 == self.model.dim as u32 && state.out_count[v] == 1));
        let g = self.model.graph();
        let allowed_in: Vec<bool> =
            (0..n).map(|v| state.decision[v] == Some(true)).collect();
        if !g.connects_within(&vertices, &allowed_in) {
            return;
        }
        let complement: Vec<usize> =
            (0..n).filter(|&v| state.decision[v] == Some(false)).collect();
        let allowed_out: Vec<bool> =
            (0..n).map(|v| state.decision[v] == Some(false)).collect();
        if !g.connects_within(&complement, &allowed_out) {
            return;
        }
        found.push(PerlesCandidate {
            vertices,
            regular: true,
            connected: true,
            complement_connected: true,
        });
    }

    fn dfs(&self, state: SearchState, found: &mut Vec<PerlesCandidate>) {
        if state.undecided == 0 {
            self.leaf(&state, found);
            return;
        }
        if !self.prune(&state) {
            return;
        }
        let v = self.branch_vertex(&state);
        for value in [true, false] {
            let mut next = state.clone();
            if self.assign(&mut next, v, value) {
                self.dfs(next, found);
            }
        }
    }

    /// Splits the search into independent subtrees down to a fixed depth.
    fn expand(&self, state: SearchState, depth: usize, out: &mut Vec<SearchState>) {
        if state.undecided == 0 || depth >= FRONTIER_DEPTH {
            out.push(state);
            return;
        }
        if !self.prune(&state) {
            return;
        }
        let v = self.branch_vertex(&state);
        for value in [true, false] {
            let mut next = state.clone();
            if self.assign(&mut next, v, value) {
                self.expand(next, depth + 1, out);
            }
        }
    }
}

/// Guard for the exhaustive scan.
pub const BRUTE_FORCE_LIMIT: usize = 20;

/// Exhaustive subset scan with the same output contract as
/// [`enumerate_perles_subgraphs`]; the oracle for the search.
pub fn brute_force_perles_subgraphs(model: &SimplePolytopeModel) -> Result<Vec<PerlesCandidate>> {
    brute_force_impl(model, cfg!(feature = "parallel"))
}

/// Sequential variant of the exhaustive scan, kept callable for benchmarks.
pub fn brute_force_perles_subgraphs_seq(
    model: &SimplePolytopeModel,
) -> Result<Vec<PerlesCandidate>> {
    brute_force_impl(model, false)
}

fn brute_force_impl(model: &SimplePolytopeModel, parallel: bool) -> Result<Vec<PerlesCandidate>> {
    let n = model.vertex_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(ModelError::TooLargeForBruteForce(n, BRUTE_FORCE_LIMIT));
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| {
            model
                .graph()
                .neighbors(v)
                .iter()
                .fold(0u32, |m, &w| m | (1 << w))
        })
        .collect();
    let d = model.dim as u32;
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let accept = |mask: u32| -> bool {
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if (adj[v] & mask).count_ones() != d - 1 {
                return false;
            }
        }
        mask_connected(&adj, mask) && mask_connected(&adj, full & !mask)
    };
    let candidates: Vec<u32> = if parallel {
        #[cfg(feature = "parallel")]
        {
            (1..full)
                .into_par_iter()
                .filter(|&m| accept(m))
                .collect()
        }
        #[cfg(not(feature = "parallel"))]
        unreachable!()
    } else {
        (1..full).filter(|&m| accept(m)).collect()
    };
    let mut out: Vec<PerlesCandidate> = candidates
        .into_iter()
        .map(|mask| PerlesCandidate {
            vertices: (0..n).filter(|&v| mask & (1 << v) != 0).collect(),
            regular: true,
            connected: true,
            complement_connected: true,
        })
        .collect();
    out.sort();
    Ok(out)
}

fn mask_connected(adj: &[u32], mask: u32) -> bool {
    if mask == 0 {
        return false;
    }
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u32 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u32;
        let mut bits = frontier;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            next |= adj[v] & mask & !seen;
        }
        seen |= next;
        frontier = next;
    }
    seen == mask
}

/// The pure subcomplex of `delta` generated by the chosen facets.
pub fn gamma_of_subgraph(delta: &SimplicialComplex, h: &[usize]) -> Result<SimplicialComplex> {
    Ok(delta.induced_pure_subcomplex(h)?)
}

/// The pure 2-dimensional obstruction complex together with the free-vertex
/// map: each tetrahedron's vertex opposite its unique free triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreComplex {
    pub triangles: SimplicialComplex,
    pub free_vertex: BTreeMap<Simplex, usize>,
}

impl CoreComplex {
    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }
}

/// Computes `core(Γ)` inside a closed 3-pseudomanifold: a triangle belongs
/// to the core iff both incident tetrahedra lie in the subcomplex and their
/// free vertices differ.
pub fn compute_core(delta: &SimplicialComplex, gamma: &SimplicialComplex) -> Result<CoreComplex> {
    if delta.dim() != Some(3) || !delta.is_closed_pseudomanifold()?.is_closed() {
        return Err(ModelError::NotSphereLike);
    }
    if gamma.dim() != Some(3) || !gamma.is_pure() {
        return Err(ModelError::BadSubcomplex);
    }
    for f in gamma.facets() {
        if !delta.facets().contains(f) {
            return Err(ModelError::BadSubcomplex);
        }
    }
    let incidence = gamma.ridge_incidence()?;
    let mut free_per_facet: Vec<Vec<&[usize]>> = vec![Vec::new(); gamma.facet_count()];
    for (ridge, facets) in &incidence {
        if facets.len() == 1 {
            free_per_facet[facets[0]].push(ridge);
        }
    }
    let mut free_vertex: BTreeMap<Simplex, usize> = BTreeMap::new();
    let mut opposite: Vec<usize> = Vec::with_capacity(gamma.facet_count());
    for (i, ridges) in free_per_facet.iter().enumerate() {
        let facet = &gamma.facets()[i];
        if ridges.len() != 1 {
            return Err(ModelError::FreeRidgeCount {
                facet: facet.vertices().to_vec(),
                count: ridges.len(),
            });
        }
        let v = facet
            .vertices()
            .iter()
            .copied()
            .find(|v| !ridges[0].contains(v))
            .expect("ridge omits one vertex");
        free_vertex.insert(facet.clone(), v);
        opposite.push(v);
    }
    let mut core_triangles: Vec<Vec<usize>> = Vec::new();
    for (ridge, facets) in &incidence {
        if facets.len() == 2 && opposite[facets[0]] != opposite[facets[1]] {
            core_triangles.push(ridge.clone());
        }
    }
    let triangles = if core_triangles.is_empty() {
        SimplicialComplex::empty()
    } else {
        build_complex(core_triangles)?
    };
    // Core soundness: the core never has a free edge.
    debug_assert!(
        triangles.is_empty() || triangles.free_ridges().map_or(false, |f| f.is_empty())
    );
    Ok(CoreComplex { triangles, free_vertex })
}

/// Outcome of the obstruction checks on `(Δ, Γ, core)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub core_empty: bool,
    pub core_no_free_edge: bool,
    /// Vertex whose star equals `Γ`, when one exists.
    pub vertex_star_match: Option<usize>,
    /// Claim 2: the core is empty iff `Γ` is a vertex star.
    pub empty_iff_vertex_star: bool,
    /// Whether the complement of `Γ` is dually connected.
    pub gamma_non_separating: bool,
    /// Claim 3 (implemented direction): `H2(core) = 0`, checked only when
    /// `Γ` is non-separating.
    pub core_h2_zero: Option<bool>,
    /// Dual connectivity of the core, checked when nonempty.
    pub core_dually_connected: Option<bool>,
}

impl ObstructionReport {
    pub fn all_hold(&self) -> bool {
        self.core_no_free_edge
            && self.empty_iff_vertex_star
            && self.core_h2_zero.unwrap_or(true)
            && self.core_dually_connected.unwrap_or(true)
    }
}

/// Runs the obstruction checks for a subcomplex whose core was computed by
/// [`compute_core`].
pub fn check_obstruction(
    delta: &SimplicialComplex,
    gamma: &SimplicialComplex,
    core: &CoreComplex,
) -> Result<ObstructionReport> {
    let core_empty = core.is_empty();
    let core_no_free_edge = if core_empty {
        true
    } else {
        core.triangles.free_ridges()?.is_empty()
    };
    let vertex_star_match = find_vertex_star(delta, gamma);
    let empty_iff_vertex_star = core_empty == vertex_star_match.is_some();
    let gamma_non_separating = complement_dually_connected(delta, gamma)?;
    let core_h2_zero = if gamma_non_separating {
        Some(if core_empty {
            true
        } else {
            let profile = homology::homology_profile(&core.triangles)
                .expect("core is nonempty");
            profile.betti[2] == 0 && profile.torsion_free()
        })
    } else {
        None
    };
    let core_dually_connected = if core_empty {
        None
    } else {
        Some(core.triangles.dual_graph()?.is_connected())
    };
    Ok(ObstructionReport {
        core_empty,
        core_no_free_edge,
        vertex_star_match,
        empty_iff_vertex_star,
        gamma_non_separating,
        core_h2_zero,
        core_dually_connected,
    })
}

/// Finds a vertex of `delta` whose star has exactly the facets of `gamma`.
pub fn find_vertex_star(delta: &SimplicialComplex, gamma: &SimplicialComplex) -> Option<usize> {
    let gamma_facets: BTreeSet<&Simplex> = gamma.facets().iter().collect();
    for v in delta.vertices() {
        let star: BTreeSet<&Simplex> = delta
            .facets()
            .iter()
            .filter(|f| f.contains_vertex(v))
            .collect();
        if star == gamma_facets {
            return Some(v);
        }
    }
    None
}

/// Whether the facets of `delta` outside `gamma` form a dually connected
/// subcomplex (the graph-level notion of non-separating).
pub fn complement_dually_connected(
    delta: &SimplicialComplex,
    gamma: &SimplicialComplex,
) -> Result<bool> {
    let gamma_facets: BTreeSet<&Simplex> = gamma.facets().iter().collect();
    let complement: Vec<usize> = (0..delta.facet_count())
        .filter(|&i| !gamma_facets.contains(&delta.facets()[i]))
        .collect();
    if complement.is_empty() {
        return Ok(false);
    }
    let dual = delta.dual_graph()?;
    let (sub, _) = dual.induced_subgraph(&complement)?;
    Ok(sub.is_connected())
}

/// Classification of one enumerated candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    FacetSubgraph,
    Violation,
}

/// A conjecture violation with its self-contained witness data.
#[derive(Debug, Clone)]
pub struct Violation {
    pub vertices: Vec<usize>,
    pub gamma: SimplicialComplex,
    pub core: CoreComplex,
    pub obstruction: ObstructionReport,
    pub weak_perles: bool,
}

/// Full conjecture verdict for one simplicial boundary.
#[derive(Debug, Clone)]
pub struct ConjectureReport {
    pub dimension: usize,
    pub graph_vertices: usize,
    pub facet_count: usize,
    pub candidates: Vec<(PerlesCandidate, Classification)>,
    pub violations: Vec<Violation>,
}

impl ConjectureReport {
    pub fn satisfies(&self) -> bool {
        self.violations.is_empty()
    }

    /// Deterministic line-oriented rendering; see the README for the schema.
    pub fn render(&self, polytope_id: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "polytope {polytope_id}");
        let _ = writeln!(out, "dimension {}", self.dimension);
        let _ = writeln!(out, "graph-vertices {}", self.graph_vertices);
        let _ = writeln!(out, "facets {}", self.facet_count);
        let _ = writeln!(out, "candidates {}", self.candidates.len());
        let _ = writeln!(out, "violations {}", self.violations.len());
        let _ = writeln!(
            out,
            "verdict {}",
            if self.satisfies() { "satisfies" } else { "violated" }
        );
        for (cand, class) in &self.candidates {
            let label = match class {
                Classification::FacetSubgraph => "facet-subgraph",
                Classification::Violation => "violation",
            };
            let verts: Vec<String> = cand.vertices.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "candidate {} {}", verts.join(" "), label);
        }
        for (i, v) in self.violations.iter().enumerate() {
            let verts: Vec<String> = v.vertices.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "violation {} vertices {}", i, verts.join(" "));
            let _ = writeln!(out, "violation {} weak-perles {}", i, v.weak_perles);
            let _ = writeln!(
                out,
                "violation {} core-triangles {}",
                i,
                v.core.triangles.facet_count()
            );
            for f in v.gamma.facets() {
                let verts: Vec<String> =
                    f.vertices().iter().map(|x| x.to_string()).collect();
                let _ = writeln!(out, "violation {} gamma-facet {}", i, verts.join(" "));
            }
            for f in v.core.triangles.facets() {
                let verts: Vec<String> =
                    f.vertices().iter().map(|x| x.to_string()).collect();
                let _ = writeln!(out, "violation {} core-facet {}", i, verts.join(" "));
            }
        }
        out
    }
}

/// Builds the model dual to `delta`, enumerates all Perles candidates, and
/// classifies each against the facet vertex sets.
pub fn check_conjecture(delta: &SimplicialComplex) -> Result<ConjectureReport> {
    let model = from_simplicial_boundary(delta)?;
    let candidates = enumerate_perles_subgraphs(&model);
    let facet_sets: BTreeSet<&Vec<usize>> = model.facets.iter().collect();
    let mut classified = Vec::with_capacity(candidates.len());
    let mut violations = Vec::new();
    for cand in candidates {
        let class = if facet_sets.contains(&cand.vertices) {
            Classification::FacetSubgraph
        } else {
            Classification::Violation
        };
        if class == Classification::Violation {
            let gamma = gamma_of_subgraph(delta, &cand.vertices)?;
            let core = compute_core(delta, &gamma)?;
            let obstruction = check_obstruction(delta, &gamma, &core)?;
            let weak_perles = weak_perles_flag(&model, &cand.vertices)?;
            violations.push(Violation {
                vertices: cand.vertices.clone(),
                gamma,
                core,
                obstruction,
                weak_perles,
            });
        }
        classified.push((cand, class));
    }
    Ok(ConjectureReport {
        dimension: model.dim,
        graph_vertices: model.vertex_count(),
        facet_count: model.facet_count(),
        candidates: classified,
        violations,
    })
}
