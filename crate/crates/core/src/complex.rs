//! Simplicial complexes represented by their inclusion-maximal faces.
//!
//! Everything here is purely combinatorial: vertices are nonnegative
//! integers, a simplex is a strictly increasing vertex list, and a complex is
//! a canonically sorted list of facets in which no facet contains another.
//! Complexes are immutable; the mutating operations (subdivision, coning,
//! collapsing) return new values.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("empty face list")]
    EmptyInput,
    #[error("face {0:?} has a repeated vertex")]
    RepeatedVertex(Vec<usize>),
    #[error("simplex {0:?} is not a face of the complex")]
    NotAFace(Vec<usize>),
    #[error("complex is not pure (facet dimensions differ)")]
    NotPure,
    #[error("dimension {k} out of range for a complex of dimension {dim}")]
    DimensionOutOfRange { k: usize, dim: usize },
    #[error("vertex id {0} already used in the complex")]
    VertexCollision(usize),
    #[error("facet index {0} out of range")]
    FacetIndex(usize),
    #[error("operation requires a nonempty complex")]
    EmptyComplex,
    #[error("subdivision face must have dimension >= 1, got {0:?}")]
    FaceTooSmall(Vec<usize>),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, ComplexError>;

/// A simplex: a nonempty, strictly increasing list of vertex identifiers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Builds a simplex from a vertex list, sorting it into canonical form.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(ComplexError::EmptyInput);
        }
        let original = vertices.clone();
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::RepeatedVertex(original));
        }
        Ok(Simplex(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Subset test against another sorted vertex list.
    pub fn is_face_of(&self, other: &[usize]) -> bool {
        is_subset(&self.0, other)
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Simplex{:?}", self.0)
    }
}

/// Merge-style subset test for sorted slices.
pub(crate) fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    'outer: for x in small {
        for y in it.by_ref() {
            match y.cmp(x) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

/// A finite simplicial complex, stored as its sorted list of facets.
///
/// Invariants kept by every constructor:
/// * facets are canonical simplices, sorted lexicographically, distinct;
/// * no facet is contained in another facet;
/// * `vertex_count` is one past the largest vertex id (0 when empty).
///
/// Vertex identifiers need not be dense: subcomplex extraction keeps the
/// ambient labels so that faces can be compared across complexes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    facets: Vec<Simplex>,
    vertex_count: usize,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SimplicialComplex({} facets, {} vertex ids)",
            self.facets.len(),
            self.vertex_count
        )
    }
}

/// Builds the complex generated by `faces`: faces contained in other listed
/// faces are absorbed, the survivors are sorted lexicographically.
pub fn build_complex<I, V>(faces: I) -> Result<SimplicialComplex>
where
    I: IntoIterator<Item = V>,
    V: Into<Vec<usize>>,
{
    let simplices: Vec<Simplex> = faces
        .into_iter()
        .map(|f| Simplex::new(f.into()))
        .collect::<Result<_>>()?;
    if simplices.is_empty() {
        return Err(ComplexError::EmptyInput);
    }
    Ok(SimplicialComplex::from_simplices(simplices))
}

impl SimplicialComplex {
    /// The complex with no faces at all.
    pub fn empty() -> Self {
        SimplicialComplex { facets: Vec::new(), vertex_count: 0 }
    }

    /// Canonicalizes an arbitrary simplex collection: drops faces contained
    /// in other faces, deduplicates, sorts.
    pub(crate) fn from_simplices(mut simplices: Vec<Simplex>) -> Self {
        // Longer faces first so absorption is a single forward pass.
        simplices.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));
        simplices.dedup();
        let mut maximal: Vec<Simplex> = Vec::with_capacity(simplices.len());
        for s in simplices {
            if !maximal.iter().any(|m| is_subset(&s.0, &m.0)) {
                maximal.push(s);
            }
        }
        maximal.sort();
        let vertex_count = maximal
            .iter()
            .flat_map(|s| s.0.iter().copied())
            .max()
            .map_or(0, |m| m + 1);
        SimplicialComplex { facets: maximal, vertex_count }
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// One past the largest vertex id in use.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Sorted list of vertex ids that actually occur in a facet.
    pub fn vertices(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.facets.iter().flat_map(|s| s.0.iter().copied()).collect();
        set.into_iter().collect()
    }

    /// Maximum facet dimension; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.facets.iter().map(|s| s.dim()).max()
    }

    pub fn is_pure(&self) -> bool {
        match self.facets.first() {
            None => true,
            Some(f) => self.facets.iter().all(|g| g.0.len() == f.0.len()),
        }
    }

    /// Closure membership: a simplex is in the complex iff it is contained in
    /// some facet.
    pub fn contains_face(&self, face: &[usize]) -> bool {
        debug_assert!(face.windows(2).all(|w| w[0] < w[1]));
        self.facets.iter().any(|f| is_subset(face, &f.0))
    }

    /// All `k`-dimensional faces, each once, in lexicographic order.
    pub fn k_faces(&self, k: usize) -> Result<Vec<Simplex>> {
        let dim = self.dim().ok_or(ComplexError::EmptyComplex)?;
        if k > dim {
            return Err(ComplexError::DimensionOutOfRange { k, dim });
        }
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in &self.facets {
            subsets_of_size(&f.0, k + 1, &mut out);
        }
        Ok(out.into_iter().map(Simplex).collect())
    }

    /// Subcomplex generated by all facets containing `sigma`.
    pub fn star(&self, sigma: &Simplex) -> Result<SimplicialComplex> {
        if !self.contains_face(sigma.vertices()) {
            return Err(ComplexError::NotAFace(sigma.0.clone()));
        }
        let facets: Vec<Simplex> = self
            .facets
            .iter()
            .filter(|f| is_subset(&sigma.0, &f.0))
            .cloned()
            .collect();
        Ok(SimplicialComplex::from_simplices(facets))
    }

    /// The link of `sigma`: all faces `tau` disjoint from `sigma` with
    /// `tau ∪ sigma` in the complex. May be empty (link of a facet).
    pub fn link(&self, sigma: &Simplex) -> Result<SimplicialComplex> {
        if !self.contains_face(sigma.vertices()) {
            return Err(ComplexError::NotAFace(sigma.0.clone()));
        }
        let mut gens: Vec<Simplex> = Vec::new();
        for f in &self.facets {
            if is_subset(&sigma.0, &f.0) {
                let rest: Vec<usize> =
                    f.0.iter().copied().filter(|v| !sigma.contains_vertex(*v)).collect();
                if !rest.is_empty() {
                    gens.push(Simplex(rest));
                }
            }
        }
        if gens.is_empty() {
            return Ok(SimplicialComplex::empty());
        }
        Ok(SimplicialComplex::from_simplices(gens))
    }

    /// Map ridge -> indices of facets containing it. Requires a pure complex.
    pub(crate) fn ridge_incidence(&self) -> Result<BTreeMap<Vec<usize>, Vec<usize>>> {
        if !self.is_pure() {
            return Err(ComplexError::NotPure);
        }
        let mut map: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            for skip in 0..f.0.len() {
                let mut ridge = f.0.clone();
                ridge.remove(skip);
                map.entry(ridge).or_default().push(i);
            }
        }
        Ok(map)
    }

    /// All pairs `(ridge, facet)` where the ridge lies in exactly one facet.
    pub fn free_ridges(&self) -> Result<Vec<(Simplex, Simplex)>> {
        let map = self.ridge_incidence()?;
        Ok(map
            .into_iter()
            .filter(|(_, facets)| facets.len() == 1)
            .map(|(ridge, facets)| (Simplex(ridge), self.facets[facets[0]].clone()))
            .collect())
    }

    /// Dual graph: node `i` is the `i`-th facet, edges join facets sharing a
    /// ridge. Requires a pure complex.
    pub fn dual_graph(&self) -> Result<Graph> {
        let map = self.ridge_incidence()?;
        let mut g = Graph::new(self.facets.len());
        for facets in map.values() {
            for a in 0..facets.len() {
                for b in a + 1..facets.len() {
                    g.add_edge(facets[a], facets[b]);
                }
            }
        }
        Ok(g)
    }

    /// Closed-pseudomanifold test: every ridge in exactly 2 facets and the
    /// dual graph connected.
    pub fn is_closed_pseudomanifold(&self) -> Result<PseudomanifoldVerdict> {
        if !self.is_pure() {
            return Err(ComplexError::NotPure);
        }
        let dim = self.dim().ok_or(ComplexError::EmptyComplex)?;
        if dim < 1 {
            return Err(ComplexError::DimensionOutOfRange { k: 1, dim });
        }
        let map = self.ridge_incidence()?;
        for (ridge, facets) in &map {
            if facets.len() != 2 {
                return Ok(PseudomanifoldVerdict::RidgeDegree {
                    ridge: Simplex(ridge.clone()),
                    facet_count: facets.len(),
                });
            }
        }
        let dual = self.dual_graph()?;
        let comps = dual.connected_components();
        if comps.len() > 1 {
            return Ok(PseudomanifoldVerdict::DuallyDisconnected {
                facet_a: comps[0][0],
                facet_b: comps[1][0],
            });
        }
        Ok(PseudomanifoldVerdict::Closed)
    }

    /// Subcomplex generated by the chosen facets.
    pub fn induced_pure_subcomplex(&self, facet_indices: &[usize]) -> Result<SimplicialComplex> {
        let mut chosen: Vec<Simplex> = Vec::with_capacity(facet_indices.len());
        for &i in facet_indices {
            let f = self.facets.get(i).ok_or(ComplexError::FacetIndex(i))?;
            chosen.push(f.clone());
        }
        if chosen.is_empty() {
            return Ok(SimplicialComplex::empty());
        }
        Ok(SimplicialComplex::from_simplices(chosen))
    }

    /// Stellar subdivision at a face of dimension >= 1: every facet `F`
    /// containing `sigma` is replaced by the facets `{new_vertex} ∪ (F \ {x})`
    /// for each `x` in `sigma`.
    pub fn stellar_subdivide(&self, sigma: &Simplex, new_vertex: usize) -> Result<SimplicialComplex> {
        if sigma.dim() < 1 {
            return Err(ComplexError::FaceTooSmall(sigma.0.clone()));
        }
        if !self.contains_face(sigma.vertices()) {
            return Err(ComplexError::NotAFace(sigma.0.clone()));
        }
        if self.facets.iter().any(|f| f.contains_vertex(new_vertex)) {
            return Err(ComplexError::VertexCollision(new_vertex));
        }
        let mut out: Vec<Simplex> = Vec::with_capacity(self.facets.len() + 4);
        for f in &self.facets {
            if is_subset(&sigma.0, &f.0) {
                for &x in &sigma.0 {
                    let mut g: Vec<usize> =
                        f.0.iter().copied().filter(|&v| v != x).collect();
                    g.push(new_vertex);
                    g.sort_unstable();
                    out.push(Simplex(g));
                }
            } else {
                out.push(f.clone());
            }
        }
        Ok(SimplicialComplex::from_simplices(out))
    }

    /// Cone over the whole complex with a fresh apex.
    pub fn cone_over(&self, apex: usize) -> Result<SimplicialComplex> {
        if self.is_empty() {
            return Err(ComplexError::EmptyComplex);
        }
        if self.facets.iter().any(|f| f.contains_vertex(apex)) {
            return Err(ComplexError::VertexCollision(apex));
        }
        let out: Vec<Simplex> = self
            .facets
            .iter()
            .map(|f| {
                let mut g = f.0.clone();
                g.push(apex);
                g.sort_unstable();
                Simplex(g)
            })
            .collect();
        Ok(SimplicialComplex::from_simplices(out))
    }

    /// Greedy elementary collapsing: repeatedly removes the lexicographically
    /// least free face (a face with exactly one proper coface) together with
    /// its unique coface, until no free face remains. Homology is preserved.
    pub fn collapse_greedy(&self) -> SimplicialComplex {
        if self.is_empty() {
            return SimplicialComplex::empty();
        }
        // Full face poset with proper-coface counts.
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in &self.facets {
            for size in 1..=f.0.len() {
                subsets_of_size(&f.0, size, &mut faces);
            }
        }
        let mut coface_count: HashMap<Vec<usize>, usize> =
            faces.iter().map(|f| (f.clone(), 0usize)).collect();
        for g in &faces {
            let mut subs = BTreeSet::new();
            for size in 1..g.len() {
                subsets_of_size(g, size, &mut subs);
            }
            for s in subs {
                *coface_count.get_mut(&s).expect("closure") += 1;
            }
        }
        let mut free: BTreeSet<Vec<usize>> = coface_count
            .iter()
            .filter(|(_, &c)| c == 1)
            .map(|(f, _)| f.clone())
            .collect();
        let vertex_ids: Vec<usize> = self.vertices();
        while let Some(f) = free.iter().next().cloned() {
            free.remove(&f);
            if coface_count.get(&f) != Some(&1) {
                continue;
            }
            // The unique proper coface has exactly one extra vertex.
            let mut coface: Option<Vec<usize>> = None;
            for &v in &vertex_ids {
                if f.binary_search(&v).is_ok() {
                    continue;
                }
                let mut g = f.clone();
                let pos = g.binary_search(&v).unwrap_err();
                g.insert(pos, v);
                if faces.contains(&g) {
                    coface = Some(g);
                    break;
                }
            }
            let g = coface.expect("free face has a coface");
            for removed in [&f, &g] {
                faces.remove(removed.as_slice());
                coface_count.remove(removed.as_slice());
                let mut subs = BTreeSet::new();
                for size in 1..removed.len() {
                    subsets_of_size(removed, size, &mut subs);
                }
                for s in subs {
                    if let Some(c) = coface_count.get_mut(&s) {
                        *c -= 1;
                        if *c == 1 {
                            free.insert(s);
                        } else {
                            free.remove(&s);
                        }
                    }
                }
            }
        }
        let maximal: Vec<Simplex> = faces
            .iter()
            .filter(|f| coface_count.get(f.as_slice()) == Some(&0))
            .map(|f| Simplex(f.clone()))
            .collect();
        SimplicialComplex::from_simplices(maximal)
    }

    /// Applies the vertex relabeling `i -> map[i]` (must be injective on the
    /// vertices in use).
    pub fn relabeled(&self, map: &[usize]) -> SimplicialComplex {
        let facets: Vec<Simplex> = self
            .facets
            .iter()
            .map(|f| {
                let mut g: Vec<usize> = f.0.iter().map(|&v| map[v]).collect();
                g.sort_unstable();
                debug_assert!(g.windows(2).all(|w| w[0] < w[1]));
                Simplex(g)
            })
            .collect();
        SimplicialComplex::from_simplices(facets)
    }

    /// Serializes to the `.cplx` text format. The empty complex prints as
    /// `dim -1 vertices 0`.
    pub fn to_cplx(&self) -> String {
        let mut out = String::new();
        match self.dim() {
            None => out.push_str("dim -1 vertices 0\n"),
            Some(d) => {
                out.push_str(&format!("dim {} vertices {}\n", d, self.vertex_count));
                for f in &self.facets {
                    let words: Vec<String> = f.0.iter().map(|v| v.to_string()).collect();
                    out.push_str(&words.join(" "));
                    out.push('\n');
                }
            }
        }
        out
    }

    /// Parses the `.cplx` text format.
    pub fn from_cplx(text: &str) -> Result<SimplicialComplex> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(ComplexError::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 4 || parts[0] != "dim" || parts[2] != "vertices" {
            return Err(ComplexError::Parse {
                line: 1,
                msg: format!("bad header {header:?}"),
            });
        }
        let dim: i64 = parts[1].parse().map_err(|_| ComplexError::Parse {
            line: 1,
            msg: format!("bad dimension {:?}", parts[1]),
        })?;
        let vertex_count: usize = parts[3].parse().map_err(|_| ComplexError::Parse {
            line: 1,
            msg: format!("bad vertex count {:?}", parts[3]),
        })?;
        let mut faces: Vec<Vec<usize>> = Vec::new();
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let face: Vec<usize> = line
                .split_whitespace()
                .map(|w| {
                    w.parse().map_err(|_| ComplexError::Parse {
                        line: idx + 1,
                        msg: format!("bad vertex {w:?}"),
                    })
                })
                .collect::<Result<_>>()?;
            faces.push(face);
        }
        if dim < 0 {
            if !faces.is_empty() {
                return Err(ComplexError::Parse {
                    line: 2,
                    msg: "facets listed for an empty complex".into(),
                });
            }
            return Ok(SimplicialComplex::empty());
        }
        let k = build_complex(faces)?;
        if k.dim() != Some(dim as usize) || k.vertex_count() != vertex_count {
            return Err(ComplexError::Parse {
                line: 1,
                msg: format!(
                    "header dim {} vertices {} does not match facets (dim {:?}, vertices {})",
                    dim,
                    vertex_count,
                    k.dim(),
                    k.vertex_count()
                ),
            });
        }
        Ok(k)
    }
}

/// Outcome of the closed-pseudomanifold check, with a witness on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PseudomanifoldVerdict {
    Closed,
    RidgeDegree { ridge: Simplex, facet_count: usize },
    DuallyDisconnected { facet_a: usize, facet_b: usize },
}

impl PseudomanifoldVerdict {
    pub fn is_closed(&self) -> bool {
        matches!(self, PseudomanifoldVerdict::Closed)
    }
}

/// Inserts every `size`-subset of the sorted slice `base` into `out`.
fn subsets_of_size(base: &[usize], size: usize, out: &mut BTreeSet<Vec<usize>>) {
    let n = base.len();
    if size == 0 || size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.insert(idx.iter().map(|&i| base[i]).collect());
        // Next combination in lexicographic order.
        let mut i = size;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - size {
                break;
            }
        }
        if idx[i] == i + n - size {
            return;
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
