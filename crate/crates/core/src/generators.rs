//! Constructions of the polytope families used throughout: simplex
//! boundaries, cyclic polytopes via Gale's evenness criterion, stacked
//! spheres, products, wedges, vertex truncations, and Freudenthal
//! triangulations of cube piles.

use itertools::Itertools;
use thiserror::Error;

use crate::complex::{build_complex, ComplexError, Simplex, SimplicialComplex};
use crate::perles::{ModelError, SimplePolytopeModel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("invalid parameters: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

pub type Result<T> = std::result::Result<T, GeneratorError>;

/// Boundary of the `d`-simplex: `d+1` facets on `d+1` vertices, each
/// omitting one vertex.
///
/// # Panics
/// For `d == 0`.
pub fn simplex_boundary(d: usize) -> SimplicialComplex {
    assert!(d >= 1, "simplex boundary needs dimension >= 1");
    let facets: Vec<Vec<usize>> = (0..=d)
        .map(|omit| (0..=d).filter(|&v| v != omit).collect())
        .collect();
    build_complex(facets).expect("simplex boundary is canonical")
}

/// Parameters of the cyclic polytope `C_d(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicSpec {
    pub d: usize,
    pub n: usize,
}

/// Facets of `C_d(n)` by Gale's evenness criterion in the linear form:
/// a `d`-subset `S` of `{0..n-1}` is a facet iff any two elements outside
/// `S` have an even number of `S`-elements strictly between them.
pub fn cyclic_facets_gale(spec: CyclicSpec) -> Result<SimplicialComplex> {
    let CyclicSpec { d, n } = spec;
    if d < 2 || n <= d {
        return Err(GeneratorError::InvalidSpec(format!(
            "cyclic polytope needs d >= 2 and n > d, got d={d} n={n}"
        )));
    }
    let facets: Vec<Vec<usize>> = (0..n)
        .combinations(d)
        .filter(|s| gale_even(s, n))
        .collect();
    Ok(build_complex(facets)?)
}

/// Evenness in run form: every maximal run of `S` bounded by non-elements
/// on both sides has even length.
fn gale_even(s: &[usize], n: usize) -> bool {
    let mut i = 0;
    while i < s.len() {
        let mut j = i;
        while j + 1 < s.len() && s[j + 1] == s[j] + 1 {
            j += 1;
        }
        let interior = s[i] > 0 && s[j] + 1 < n;
        if interior && (j - i + 1) % 2 == 1 {
            return false;
        }
        i = j + 1;
    }
    true
}

/// Model of a segment: the simple 1-polytope.
pub fn segment_model() -> SimplePolytopeModel {
    SimplePolytopeModel::new(1, vec![vec![0], vec![1]]).expect("segment is simple")
}

/// Model of the `n`-gon: the simple 2-polytope with `n` edges.
pub fn polygon_model(n: usize) -> Result<SimplePolytopeModel> {
    if n < 3 {
        return Err(GeneratorError::InvalidSpec(format!("polygon needs n >= 3, got {n}")));
    }
    let facets: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    Ok(SimplePolytopeModel::new(2, facets)?)
}

/// Product of two simple polytopes: vertices are pairs, facets are
/// `F x V2` and `V1 x G`. Vertex `(i, j)` gets id `i * n2 + j`.
pub fn product_model(
    p1: &SimplePolytopeModel,
    p2: &SimplePolytopeModel,
) -> Result<SimplePolytopeModel> {
    let n1 = p1.vertex_count();
    let n2 = p2.vertex_count();
    let id = |i: usize, j: usize| i * n2 + j;
    let mut facets: Vec<Vec<usize>> = Vec::with_capacity(p1.facet_count() + p2.facet_count());
    for f in p1.facets() {
        facets.push(
            f.iter()
                .flat_map(|&i| (0..n2).map(move |j| id(i, j)))
                .collect(),
        );
    }
    for g in p2.facets() {
        facets.push(
            (0..n1)
                .flat_map(|i| g.iter().map(move |&j| id(i, j)))
                .collect(),
        );
    }
    Ok(SimplePolytopeModel::new(p1.dim() + p2.dim(), facets)?)
}

/// Wedge of a simple polytope over one of its facets.
///
/// Vertices in the chosen facet survive; every other vertex splits into a
/// top and a bottom copy joined by a vertical edge. Facets are the top
/// copy, the bottom copy, and one wedged facet for every facet other than
/// the wedge facet. Simplicity is re-checked after construction.
pub fn wedge_model(p: &SimplePolytopeModel, facet: usize) -> Result<SimplePolytopeModel> {
    let m = p.facet_count();
    if facet >= m {
        return Err(GeneratorError::InvalidSpec(format!(
            "facet index {facet} out of range for {m} facets"
        )));
    }
    let n = p.vertex_count();
    let in_f: Vec<bool> = {
        let mut v = vec![false; n];
        for &u in &p.facets()[facet] {
            v[u] = true;
        }
        v
    };
    // Ids: facet vertices first in ascending order, then (top, bottom)
    // pairs for the others in ascending order.
    let mut id_f = vec![usize::MAX; n];
    let mut next = 0;
    for v in 0..n {
        if in_f[v] {
            id_f[v] = next;
            next += 1;
        }
    }
    let mut id_top = vec![usize::MAX; n];
    let mut id_bot = vec![usize::MAX; n];
    for v in 0..n {
        if !in_f[v] {
            id_top[v] = next;
            id_bot[v] = next + 1;
            next += 2;
        }
    }
    let mut facets: Vec<Vec<usize>> = Vec::with_capacity(m + 1);
    let top: Vec<usize> = (0..n)
        .map(|v| if in_f[v] { id_f[v] } else { id_top[v] })
        .collect();
    let bottom: Vec<usize> = (0..n)
        .map(|v| if in_f[v] { id_f[v] } else { id_bot[v] })
        .collect();
    facets.push(top);
    facets.push(bottom);
    for (gi, g) in p.facets().iter().enumerate() {
        if gi == facet {
            continue;
        }
        let mut wedged = Vec::new();
        for &v in g {
            if in_f[v] {
                wedged.push(id_f[v]);
            } else {
                wedged.push(id_top[v]);
                wedged.push(id_bot[v]);
            }
        }
        facets.push(wedged);
    }
    Ok(SimplePolytopeModel::new(p.dim() + 1, facets)?)
}

/// Truncation of a simple vertex: `v` is replaced by `d` pairwise-adjacent
/// new vertices, one per former neighbor, and one new facet appears.
pub fn truncate_vertex_model(p: &SimplePolytopeModel, v: usize) -> Result<SimplePolytopeModel> {
    let n = p.vertex_count();
    if v >= n {
        return Err(GeneratorError::InvalidSpec(format!(
            "vertex {v} out of range for {n} vertices"
        )));
    }
    let d = p.dim();
    let neighbors: Vec<usize> = p.graph().neighbors(v).to_vec();
    debug_assert_eq!(neighbors.len(), d);
    // Compact old ids over the hole left by v; new vertices at the top.
    let old_id = |x: usize| if x < v { x } else { x - 1 };
    let new_id = |i: usize| (n - 1) + i;
    let mut facets: Vec<Vec<usize>> = Vec::with_capacity(p.facet_count() + 1);
    for f in p.facets() {
        if f.binary_search(&v).is_err() {
            facets.push(f.iter().map(|&x| old_id(x)).collect());
        } else {
            let mut g: Vec<usize> =
                f.iter().filter(|&&x| x != v).map(|&x| old_id(x)).collect();
            for (i, &u) in neighbors.iter().enumerate() {
                // v_i follows the edge to u_i; it stays in the facets that
                // contain that edge.
                if f.binary_search(&u).is_ok() {
                    g.push(new_id(i));
                }
            }
            facets.push(g);
        }
    }
    facets.push((0..d).map(new_id).collect());
    Ok(SimplePolytopeModel::new(d, facets)?)
}

/// Stacked sphere: starting from the boundary of the `d`-simplex, each step
/// replaces the chosen facet by the cone over its boundary with a fresh
/// vertex.
pub fn stacked_boundary(d: usize, stackings: &[usize]) -> Result<SimplicialComplex> {
    if d < 2 {
        return Err(GeneratorError::InvalidSpec(format!(
            "stacked boundary needs d >= 2, got {d}"
        )));
    }
    let mut k = simplex_boundary(d);
    for &idx in stackings {
        let facet: Simplex = k
            .facets()
            .get(idx)
            .ok_or(ComplexError::FacetIndex(idx))?
            .clone();
        let fresh = k.vertex_count();
        k = k.stellar_subdivide(&facet, fresh)?;
    }
    Ok(k)
}

/// Extents of an axis-aligned pile of unit cubes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PileSpec {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl PileSpec {
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self> {
        if a == 0 || b == 0 || c == 0 {
            return Err(GeneratorError::InvalidSpec(format!(
                "pile extents must be positive, got {a}x{b}x{c}"
            )));
        }
        Ok(PileSpec { a, b, c })
    }

    /// Lattice points in lexicographic order.
    pub fn vertex_id(&self, x: usize, y: usize, z: usize) -> usize {
        debug_assert!(x <= self.a && y <= self.b && z <= self.c);
        (x * (self.b + 1) + y) * (self.c + 1) + z
    }

    pub fn vertex_coords(&self, id: usize) -> (usize, usize, usize) {
        let z = id % (self.c + 1);
        let rest = id / (self.c + 1);
        (rest / (self.b + 1), rest % (self.b + 1), z)
    }

    pub fn lattice_vertex_count(&self) -> usize {
        (self.a + 1) * (self.b + 1) * (self.c + 1)
    }

    /// Fresh id for the cone apex over the pile boundary.
    pub fn apex_id(&self) -> usize {
        self.lattice_vertex_count()
    }
}

/// Freudenthal triangulation of the pile: for each unit cube with least
/// corner `p` and each axis permutation, the tetrahedron through the
/// monotone lattice chain from `p` to `p + (1,1,1)`. This is exactly the
/// slicing of the pile by the planes `x_i - x_j = k`.
pub fn pile_triangulation(spec: PileSpec) -> SimplicialComplex {
    let mut facets: Vec<Vec<usize>> = Vec::with_capacity(6 * spec.a * spec.b * spec.c);
    let axes: Vec<Vec<&usize>> = [0usize, 1, 2].iter().permutations(3).collect();
    for x in 0..spec.a {
        for y in 0..spec.b {
            for z in 0..spec.c {
                for perm in &axes {
                    let mut p = [x, y, z];
                    let mut tet = vec![spec.vertex_id(p[0], p[1], p[2])];
                    for &&axis in perm {
                        p[axis] += 1;
                        tet.push(spec.vertex_id(p[0], p[1], p[2]));
                    }
                    facets.push(tet);
                }
            }
        }
    }
    build_complex(facets).expect("pile facets are canonical")
}

/// The pile capped with a cone over its boundary: a closed 3-pseudomanifold
/// with the homology of the 3-sphere.
pub fn sphere_from_pile(spec: PileSpec) -> SimplicialComplex {
    let pile = pile_triangulation(spec);
    let apex = spec.apex_id();
    let mut facets: Vec<Vec<usize>> = pile
        .facets()
        .iter()
        .map(|f| f.vertices().to_vec())
        .collect();
    for (ridge, _) in pile.free_ridges().expect("pile is pure") {
        let mut cone = ridge.vertices().to_vec();
        cone.push(apex);
        facets.push(cone);
    }
    build_complex(facets).expect("sphere facets are canonical")
}
