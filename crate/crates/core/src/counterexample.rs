//! The constructive 4-dimensional counterexample.
//!
//! A modification of Bing's house with two rooms (the two extra walls that
//! would make the room interiors simply connected are missing) is embedded
//! into the Freudenthal triangulation of a 2x3x4 cube pile. The pile is
//! capped with a cone to a simplicial 3-sphere, chimney edges are stellarly
//! subdivided to mark the inside/outside boundary in each chimney, further
//! subdivisions make the house an induced subcomplex and break same-color
//! corners, the sphere complement is classified into outside / upstairs /
//! downstairs, and partial vertex stars are attached to the house by vertex
//! color. The union of those partial stars is the subcomplex that violates
//! the Perles conditions.
//!
//! The house occupies the full pile with the two rooms stacked along the
//! x axis (the extent-2 direction) — the only orientation of a 2x3x4 pile
//! in which both chimney footprints avoid the pile boundary. Whatever the
//! embedding details, the authoritative arbiter is [`verify_certificate`],
//! which depends only on the two facet lists.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::complex::{build_complex, ComplexError, Simplex, SimplicialComplex};
use crate::graph::{self, Graph, GraphError};
use crate::generators::{pile_triangulation, sphere_from_pile, GeneratorError, PileSpec};
use crate::homology::{self, HomologyError};
use crate::perles::{self, ModelError};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("stage {stage}: {message}")]
    Stage { stage: &'static str, message: String },
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

pub type Result<T> = std::result::Result<T, PipelineError>;

fn stage_err(stage: &'static str, message: impl Into<String>) -> PipelineError {
    PipelineError::Stage { stage, message: message.into() }
}

/// Complement regions of the house inside the sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Region {
    Outside,
    Upstairs,
    Downstairs,
}

impl Region {
    /// Vertex color claiming partial stars in this region.
    pub fn color(self) -> u8 {
        match self {
            Region::Outside => 0,
            Region::Upstairs => 1,
            Region::Downstairs => 2,
        }
    }
}

/// One chimney: a single cube of the pile whose four walls belong to the
/// house. The two wall edges along the stacking axis whose endpoint colors
/// match `edge_colors` get subdivided; the resulting new edges toward the
/// cube diagonal span the separation membrane.
#[derive(Debug, Clone, Copy)]
pub struct Chimney {
    /// Least corner of the tube cube.
    pub base: (usize, usize, usize),
    /// (bottom, top) colors of the designated vertical edges.
    pub edge_colors: (u8, u8),
    /// Region entered below the membrane (toward smaller x).
    pub below: Region,
    /// Region entered above the membrane.
    pub above: Region,
}

/// The embedded house: a pure 2-subcomplex of the triangulated pile with a
/// partial vertex coloring and the two chimney descriptors.
#[derive(Debug, Clone)]
pub struct ColoredSubcomplex {
    triangles: BTreeSet<[usize; 3]>,
    colors: BTreeMap<usize, u8>,
    chimneys: [Chimney; 2],
}

impl ColoredSubcomplex {
    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn triangles(&self) -> impl Iterator<Item = &[usize; 3]> {
        self.triangles.iter()
    }

    pub fn color(&self, v: usize) -> Option<u8> {
        self.colors.get(&v).copied()
    }

    pub fn chimneys(&self) -> &[Chimney; 2] {
        &self.chimneys
    }

    pub fn as_complex(&self) -> SimplicialComplex {
        build_complex(self.triangles.iter().map(|t| t.to_vec()))
            .expect("house triangles are canonical")
    }

    /// Edge -> number of incident triangles.
    fn edge_degrees(&self) -> BTreeMap<(usize, usize), usize> {
        let mut map = BTreeMap::new();
        for t in &self.triangles {
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                *map.entry((t[i], t[j])).or_insert(0) += 1;
            }
        }
        map
    }
}

/// Axis-aligned unit square of the pile lattice, identified by the plane
/// axis, the level along it, and the least corner in the two other axes.
#[derive(Debug, Clone, Copy)]
struct WallSquare {
    axis: usize,
    level: usize,
    u0: usize,
    v0: usize,
}

impl WallSquare {
    fn corner(&self, du: usize, dv: usize, spec: PileSpec) -> usize {
        let (mut x, mut y, mut z);
        match self.axis {
            0 => {
                x = self.level;
                y = self.u0;
                z = self.v0;
                y += du;
                z += dv;
            }
            1 => {
                y = self.level;
                x = self.u0;
                z = self.v0;
                x += du;
                z += dv;
            }
            _ => {
                z = self.level;
                x = self.u0;
                y = self.v0;
                x += du;
                y += dv;
            }
        }
        spec.vertex_id(x, y, z)
    }

    /// The two Freudenthal triangles of the square, split along the
    /// low-to-high diagonal.
    fn triangles(&self, spec: PileSpec) -> [[usize; 3]; 2] {
        let c00 = self.corner(0, 0, spec);
        let c10 = self.corner(1, 0, spec);
        let c01 = self.corner(0, 1, spec);
        let c11 = self.corner(1, 1, spec);
        let mut t1 = [c00, c10, c11];
        let mut t2 = [c00, c01, c11];
        t1.sort_unstable();
        t2.sort_unstable();
        [t1, t2]
    }
}

/// Footprints of the two chimneys in the (y, z) cross-section. Both are
/// interior to the 3x4 face, which is what forces the 2x3x4 pile.
const DOWNSTAIRS_FOOTPRINT: (usize, usize) = (1, 1);
const UPSTAIRS_FOOTPRINT: (usize, usize) = (1, 2);

/// Embeds the modified Bing's house into the pile triangulation.
///
/// Rooms are stacked along x: downstairs is `x in [0,1]`, upstairs is
/// `x in [1,2]`, the middle floor is the plane `x = 1`. The downstairs
/// chimney runs from a hole in the outer `x = 0` wall to a hole in the
/// floor (connecting outside to upstairs); the upstairs chimney runs from
/// the outer `x = 2` wall to the floor (connecting outside to downstairs).
/// Colors are coordinate sums mod 3, so no edge of the house joins two
/// vertices of the same color.
pub fn embed_bing_house(spec: PileSpec) -> Result<ColoredSubcomplex> {
    if spec.a < 2 || spec.b < 3 || spec.c < 4 {
        return Err(stage_err(
            "embed",
            format!("pile {}x{}x{} too small for the house", spec.a, spec.b, spec.c),
        ));
    }
    let (dy, dz) = DOWNSTAIRS_FOOTPRINT;
    let (uy, uz) = UPSTAIRS_FOOTPRINT;
    let mut squares: Vec<WallSquare> = Vec::new();
    // Outer walls of the 2x3x4 box, with one hole per chimney.
    for y0 in 0..3 {
        for z0 in 0..4 {
            if (y0, z0) != (dy, dz) {
                squares.push(WallSquare { axis: 0, level: 0, u0: y0, v0: z0 });
            }
            if (y0, z0) != (uy, uz) {
                squares.push(WallSquare { axis: 0, level: 2, u0: y0, v0: z0 });
            }
            // Middle floor, with the two chimney mouths open.
            if (y0, z0) != (dy, dz) && (y0, z0) != (uy, uz) {
                squares.push(WallSquare { axis: 0, level: 1, u0: y0, v0: z0 });
            }
        }
    }
    for x0 in 0..2 {
        for z0 in 0..4 {
            squares.push(WallSquare { axis: 1, level: 0, u0: x0, v0: z0 });
            squares.push(WallSquare { axis: 1, level: 3, u0: x0, v0: z0 });
        }
        for y0 in 0..3 {
            squares.push(WallSquare { axis: 2, level: 0, u0: x0, v0: y0 });
            squares.push(WallSquare { axis: 2, level: 4, u0: x0, v0: y0 });
        }
    }
    // Chimney tubes: four walls each, one cube long.
    squares.push(WallSquare { axis: 1, level: dy, u0: 0, v0: dz });
    squares.push(WallSquare { axis: 1, level: dy + 1, u0: 0, v0: dz });
    squares.push(WallSquare { axis: 2, level: dz, u0: 0, v0: dy });
    squares.push(WallSquare { axis: 2, level: dz + 1, u0: 0, v0: dy });
    squares.push(WallSquare { axis: 1, level: uy, u0: 1, v0: uz });
    squares.push(WallSquare { axis: 1, level: uy + 1, u0: 1, v0: uz });
    squares.push(WallSquare { axis: 2, level: uz, u0: 1, v0: uy });
    squares.push(WallSquare { axis: 2, level: uz + 1, u0: 1, v0: uy });

    let mut triangles: BTreeSet<[usize; 3]> = BTreeSet::new();
    for sq in &squares {
        for t in sq.triangles(spec) {
            triangles.insert(t);
        }
    }
    let mut colors: BTreeMap<usize, u8> = BTreeMap::new();
    for t in &triangles {
        for &v in t {
            let (x, y, z) = spec.vertex_coords(v);
            colors.insert(v, ((x + y + z) % 3) as u8);
        }
    }
    let house = ColoredSubcomplex {
        triangles,
        colors,
        chimneys: [
            Chimney {
                base: (0, dy, dz),
                edge_colors: (0, 1),
                below: Region::Outside,
                above: Region::Upstairs,
            },
            Chimney {
                base: (1, uy, uz),
                edge_colors: (2, 0),
                below: Region::Downstairs,
                above: Region::Outside,
            },
        ],
    };
    check_house(&house, spec)?;
    Ok(house)
}

/// Integrity checks for the embedded house: its triangles belong to the
/// pile triangulation, every edge lies in 2 or 3 triangles, vertex links
/// are circles or theta graphs, no edge is monochromatic, and the complex
/// has trivial 2-homology and torsion-free 1-homology.
fn check_house(house: &ColoredSubcomplex, spec: PileSpec) -> Result<()> {
    let pile = pile_triangulation(spec);
    for t in &house.triangles {
        if !pile.contains_face(t) {
            return Err(stage_err("embed", format!("triangle {t:?} not in the pile")));
        }
    }
    for (edge, degree) in house.edge_degrees() {
        if degree != 2 && degree != 3 {
            return Err(stage_err(
                "embed",
                format!("edge {edge:?} lies in {degree} triangles"),
            ));
        }
        let (cu, cv) = (house.colors[&edge.0], house.colors[&edge.1]);
        if cu == cv {
            return Err(stage_err("embed", format!("edge {edge:?} is monochromatic")));
        }
    }
    // Vertex links: every point has a neighborhood that is two or three
    // half-disks along an edge, i.e. the link is a cycle or a theta graph.
    let vertices: BTreeSet<usize> =
        house.triangles.iter().flat_map(|t| t.iter().copied()).collect();
    for &v in &vertices {
        let mut nodes: BTreeSet<usize> = BTreeSet::new();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for t in &house.triangles {
            if t.contains(&v) {
                let rest: Vec<usize> = t.iter().copied().filter(|&w| w != v).collect();
                nodes.insert(rest[0]);
                nodes.insert(rest[1]);
                edges.push((rest[0], rest[1]));
            }
        }
        let index: BTreeMap<usize, usize> =
            nodes.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        let mut link = Graph::new(nodes.len());
        for (a, b) in edges {
            link.add_edge(index[&a], index[&b]);
        }
        let mut deg3 = 0;
        for w in 0..link.node_count() {
            match link.degree(w) {
                2 => {}
                3 => deg3 += 1,
                d => {
                    return Err(stage_err(
                        "embed",
                        format!("vertex {v}: link degree {d}"),
                    ))
                }
            }
        }
        if deg3 != 0 && deg3 != 2 {
            return Err(stage_err(
                "embed",
                format!("vertex {v}: {deg3} branch nodes in link"),
            ));
        }
        if !link.is_connected() || graph::vertex_connectivity(&link)? < 2 {
            return Err(stage_err("embed", format!("vertex {v}: singular link")));
        }
    }
    let profile = homology::homology_profile(&house.as_complex())?;
    if profile.betti[2] != 0 {
        return Err(stage_err("embed", format!("betti_2 = {}", profile.betti[2])));
    }
    if !profile.torsion[1].is_empty() {
        return Err(stage_err("embed", "torsion in first homology".to_string()));
    }
    Ok(())
}

/// Mutable triangulated 3-sphere supporting stellar subdivisions of edges,
/// triangles, and facets, carrying the house, the vertex colors, and
/// rational vertex coordinates for provenance.
struct Engine {
    tets: Vec<[usize; 4]>,
    alive: Vec<bool>,
    edge_tets: HashMap<(usize, usize), Vec<usize>>,
    neighbors: Vec<BTreeSet<usize>>,
    coords: Vec<[f64; 3]>,
    colors: Vec<Option<u8>>,
    b_triangles: BTreeSet<[usize; 3]>,
    /// Separation membranes spanned in the chimneys; maintained through
    /// subdivisions just like the house so the inside/outside boundary
    /// stays watertight.
    membranes: BTreeSet<[usize; 3]>,
    apex: usize,
}

impl Engine {
    fn from_house(spec: PileSpec, house: &ColoredSubcomplex) -> Engine {
        let sphere = sphere_from_pile(spec);
        let apex = spec.apex_id();
        let n = apex + 1;
        let mut coords = Vec::with_capacity(n);
        for v in 0..apex {
            let (x, y, z) = spec.vertex_coords(v);
            coords.push([x as f64, y as f64, z as f64]);
        }
        // The apex is combinatorial only; its coordinate is never used for
        // region anchoring because the apex region is fixed to Outside.
        coords.push([-(spec.a as f64), -(spec.b as f64), -(spec.c as f64)]);
        let mut colors: Vec<Option<u8>> = vec![None; n];
        for (&v, &c) in &house.colors {
            colors[v] = Some(c);
        }
        let mut engine = Engine {
            tets: Vec::with_capacity(2 * sphere.facet_count()),
            alive: Vec::new(),
            edge_tets: HashMap::new(),
            neighbors: vec![BTreeSet::new(); n],
            coords,
            colors,
            b_triangles: house.triangles.clone(),
            membranes: BTreeSet::new(),
            apex,
        };
        for f in sphere.facets() {
            let v = f.vertices();
            engine.push_tet([v[0], v[1], v[2], v[3]]);
        }
        engine
    }

    fn vertex_count(&self) -> usize {
        self.coords.len()
    }

    fn push_tet(&mut self, tet: [usize; 4]) {
        debug_assert!(tet.windows(2).all(|w| w[0] < w[1]));
        let id = self.tets.len();
        self.tets.push(tet);
        self.alive.push(true);
        for a in 0..4 {
            for b in a + 1..4 {
                self.edge_tets.entry((tet[a], tet[b])).or_default().push(id);
                self.neighbors[tet[a]].insert(tet[b]);
                self.neighbors[tet[b]].insert(tet[a]);
            }
        }
    }

    fn kill_tet(&mut self, id: usize) {
        debug_assert!(self.alive[id]);
        self.alive[id] = false;
        let tet = self.tets[id];
        for a in 0..4 {
            for b in a + 1..4 {
                let key = (tet[a], tet[b]);
                let list = self.edge_tets.get_mut(&key).expect("edge indexed");
                list.retain(|&t| t != id);
                if list.is_empty() {
                    self.edge_tets.remove(&key);
                    self.neighbors[key.0].remove(&key.1);
                    self.neighbors[key.1].remove(&key.0);
                }
            }
        }
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors[u].contains(&v)
    }

    /// Alive tetrahedra containing all vertices of `sigma` (len 2..=4).
    fn star_of(&self, sigma: &[usize]) -> Vec<usize> {
        let key = (sigma[0], sigma[1]);
        let Some(list) = self.edge_tets.get(&key) else { return Vec::new() };
        list.iter()
            .copied()
            .filter(|&t| {
                let tet = &self.tets[t];
                sigma.iter().all(|v| tet.contains(v))
            })
            .collect()
    }

    /// Stellar subdivision at a face of dimension 1..=3; returns the new
    /// vertex id.
    fn subdivide(&mut self, sigma: &[usize]) -> Result<usize> {
        debug_assert!(sigma.windows(2).all(|w| w[0] < w[1]));
        let star = self.star_of(sigma);
        if star.is_empty() {
            return Err(stage_err("subdivide", format!("{sigma:?} is not a face")));
        }
        let m = self.coords.len();
        let centroid = {
            let mut c = [0.0f64; 3];
            for &v in sigma {
                for (acc, x) in c.iter_mut().zip(self.coords[v]) {
                    *acc += x;
                }
            }
            c.map(|x| x / sigma.len() as f64)
        };
        self.coords.push(centroid);
        self.colors.push(None);
        self.neighbors.push(BTreeSet::new());
        for t in star {
            let tet = self.tets[t];
            self.kill_tet(t);
            for &x in sigma {
                let mut new_tet: Vec<usize> =
                    tet.iter().copied().filter(|&v| v != x).collect();
                new_tet.push(m);
                new_tet.sort_unstable();
                self.push_tet([new_tet[0], new_tet[1], new_tet[2], new_tet[3]]);
            }
        }
        // The house and the membranes follow the subdivision when a face
        // of them is split.
        debug_assert!(
            sigma.len() != 3 || !self.b_triangles.contains(&[sigma[0], sigma[1], sigma[2]]),
            "the pipeline never subdivides a house triangle"
        );
        track_triangles(&mut self.b_triangles, sigma, m);
        track_triangles(&mut self.membranes, sigma, m);
        Ok(m)
    }

    fn b_vertices(&self) -> BTreeSet<usize> {
        self.b_triangles.iter().flat_map(|t| t.iter().copied()).collect()
    }

    fn b_edges(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for t in &self.b_triangles {
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                out.insert((t[i], t[j]));
            }
        }
        out
    }

    fn alive_tets(&self) -> impl Iterator<Item = (usize, &[usize; 4])> {
        self.tets
            .iter()
            .enumerate()
            .filter(|(i, _)| self.alive[*i])
    }

    fn to_complex(&self) -> SimplicialComplex {
        build_complex(self.alive_tets().map(|(_, t)| t.to_vec()))
            .expect("engine tetrahedra are canonical")
    }

    fn house_complex(&self) -> SimplicialComplex {
        build_complex(self.b_triangles.iter().map(|t| t.to_vec()))
            .expect("house triangles are canonical")
    }
}

/// Statistics of the chimney-subdivision stage.
#[derive(Debug, Clone)]
pub struct ChimneyStats {
    pub new_vertices: Vec<usize>,
    pub separation_edges: Vec<(usize, usize)>,
}

/// Statistics of the induced-subcomplex stage.
#[derive(Debug, Clone, Default)]
pub struct InducedStats {
    pub non_face_subdivisions: usize,
    pub same_color_subdivisions: usize,
}

/// Region classification of every tetrahedron of the final sphere.
#[derive(Debug, Clone)]
pub struct RegionLabeling {
    region_of: HashMap<[usize; 4], Region>,
}

impl RegionLabeling {
    pub fn region(&self, tet: &[usize; 4]) -> Option<Region> {
        self.region_of.get(tet).copied()
    }
}

/// The staged construction. Stages must run in order; each validates its
/// own postconditions and fails with the stage name on inconsistency.
pub struct Pipeline {
    spec: PileSpec,
    engine: Engine,
    chimney_stats: Option<ChimneyStats>,
    induced_stats: Option<InducedStats>,
    regions: Option<RegionLabeling>,
}

impl Pipeline {
    /// Embeds the house into the capped pile.
    pub fn new(spec: PileSpec) -> Result<Self> {
        let house = embed_bing_house(spec)?;
        let engine = Engine::from_house(spec, &house);
        Ok(Pipeline { spec, engine, chimney_stats: None, induced_stats: None, regions: None })
    }

    pub fn sphere(&self) -> SimplicialComplex {
        self.engine.to_complex()
    }

    pub fn house(&self) -> SimplicialComplex {
        self.engine.house_complex()
    }

    pub fn color(&self, v: usize) -> Option<u8> {
        self.engine.colors.get(v).copied().flatten()
    }

    pub fn separation_edges(&self) -> Option<&[(usize, usize)]> {
        self.chimney_stats.as_ref().map(|s| s.separation_edges.as_slice())
    }

    /// Stellar subdivision of the designated vertical chimney edges. The
    /// new edges from each midpoint to the diagonal corners of its tube
    /// cube are recorded as separation edges.
    pub fn subdivide_chimneys(&mut self) -> Result<&ChimneyStats> {
        const STAGE: &str = "subdivide-chimneys";
        if self.chimney_stats.is_some() {
            return Err(stage_err(STAGE, "stage already ran"));
        }
        let spec = self.spec;
        let chimneys = *house_chimneys(&self.engine);
        let mut new_vertices = Vec::new();
        let mut separation_edges = Vec::new();
        for chimney in chimneys {
            let (cx, cy, cz) = chimney.base;
            let lo = spec.vertex_id(cx, cy, cz);
            let hi = spec.vertex_id(cx + 1, cy + 1, cz + 1);
            let mut designated = Vec::new();
            for (y, z) in [(cy, cz), (cy + 1, cz), (cy, cz + 1), (cy + 1, cz + 1)] {
                let bot = spec.vertex_id(cx, y, z);
                let top = spec.vertex_id(cx + 1, y, z);
                let colors = (
                    self.engine.colors[bot].unwrap_or(u8::MAX),
                    self.engine.colors[top].unwrap_or(u8::MAX),
                );
                if colors == chimney.edge_colors {
                    designated.push((bot, top));
                }
            }
            if designated.len() != 2 {
                return Err(stage_err(
                    STAGE,
                    format!(
                        "chimney at {:?}: found {} edges with colors {:?}, expected 2",
                        chimney.base,
                        designated.len(),
                        chimney.edge_colors
                    ),
                ));
            }
            for (bot, top) in designated {
                let edge = sorted_pair(bot, top);
                let m = self.engine.subdivide(&[edge.0, edge.1])?;
                new_vertices.push(m);
                for anchor in [lo, hi] {
                    if !self.engine.adjacent(m, anchor) {
                        return Err(stage_err(
                            STAGE,
                            format!("separation edge ({m}, {anchor}) missing"),
                        ));
                    }
                    separation_edges.push(sorted_pair(m, anchor));
                }
                // The two new edges span a membrane triangle through the
                // tube-cube diagonal; it marks the inside/outside boundary
                // and is carried through all later subdivisions.
                let mut membrane = [m, lo, hi];
                membrane.sort_unstable();
                if self.engine.star_of(&membrane).is_empty() {
                    return Err(stage_err(
                        STAGE,
                        format!("membrane triangle {membrane:?} missing"),
                    ));
                }
                self.engine.membranes.insert(membrane);
            }
        }
        if new_vertices.len() != 4 {
            return Err(stage_err(
                STAGE,
                format!("{} new vertices, expected 4", new_vertices.len()),
            ));
        }
        // The house keeps its edge-degree profile through the subdivision.
        for (edge, degree) in house_edge_degrees(&self.engine) {
            if degree != 2 && degree != 3 {
                return Err(stage_err(
                    STAGE,
                    format!("house edge {edge:?} now lies in {degree} triangles"),
                ));
            }
        }
        self.chimney_stats = Some(ChimneyStats { new_vertices, separation_edges });
        Ok(self.chimney_stats.as_ref().expect("just set"))
    }

    /// Makes the house an induced subcomplex, then removes every corner a
    /// vertex outside the house forms with two same-colored house vertices.
    pub fn make_induced(&mut self) -> Result<&InducedStats> {
        const STAGE: &str = "make-induced";
        const CAP: usize = 1_000_000;
        if self.chimney_stats.is_none() {
            return Err(stage_err(STAGE, "chimney stage has not run"));
        }
        if self.induced_stats.is_some() {
            return Err(stage_err(STAGE, "stage already ran"));
        }
        let mut stats = InducedStats::default();

        // Phase one: stellar subdivisions on minimal simplices outside the
        // house all of whose proper faces lie in it, smallest dimension and
        // lexicographically least first, rescanning until none remain.
        loop {
            stats.non_face_subdivisions += 1;
            if stats.non_face_subdivisions > CAP {
                return Err(stage_err(STAGE, "iteration cap exceeded in phase one"));
            }
            let Some(face) = first_minimal_non_face(&self.engine) else {
                stats.non_face_subdivisions -= 1;
                break;
            };
            self.engine.subdivide(&face)?;
        }

        // Phase two: same-color corners. A violation is (w, v1, v2) with w
        // outside the house adjacent to same-colored house vertices v1, v2;
        // the lexicographically least of the edges {w,v1}, {w,v2} is split.
        let mut violations: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
        let b_vertices = self.engine.b_vertices();
        for w in 0..self.engine.vertex_count() {
            if !b_vertices.contains(&w) {
                scan_corner_violations(&self.engine, w, &mut violations);
            }
        }
        while let Some(&(w, v1, v2)) = violations.iter().next() {
            violations.remove(&(w, v1, v2));
            if !(self.engine.adjacent(w, v1) && self.engine.adjacent(w, v2)) {
                continue;
            }
            stats.same_color_subdivisions += 1;
            if stats.same_color_subdivisions > CAP {
                return Err(stage_err(STAGE, "iteration cap exceeded in phase two"));
            }
            let e1 = sorted_pair(w, v1);
            let e2 = sorted_pair(w, v2);
            let split = if e1 <= e2 { v1 } else { v2 };
            let edge = sorted_pair(w, split);
            let u = self.engine.subdivide(&[edge.0, edge.1])?;
            // Only the (w, split) adjacency disappeared; only u gained
            // house neighbors.
            violations.retain(|&(ww, a, b)| !(ww == w && (a == split || b == split)));
            scan_corner_violations(&self.engine, u, &mut violations);
        }

        // Postconditions: the house is induced and corner-free.
        if let Some(face) = first_minimal_non_face(&self.engine) {
            return Err(stage_err(STAGE, format!("{face:?} still violates inducedness")));
        }
        let b_vertices = self.engine.b_vertices();
        let mut check = BTreeSet::new();
        for w in 0..self.engine.vertex_count() {
            if !b_vertices.contains(&w) {
                scan_corner_violations(&self.engine, w, &mut check);
            }
        }
        if let Some(v) = check.iter().next() {
            return Err(stage_err(STAGE, format!("corner violation {v:?} remains")));
        }
        self.induced_stats = Some(stats);
        Ok(self.induced_stats.as_ref().expect("just set"))
    }

    /// Floods the dual graph of the sphere, cutting across house triangles
    /// and across the separation membranes spanned in the chimneys.
    /// Exactly three regions must result: outside (the apex region),
    /// upstairs, and downstairs, the latter two told apart by their mean
    /// coordinate along the stacking axis.
    pub fn classify_regions(&mut self) -> Result<&RegionLabeling> {
        const STAGE: &str = "classify-regions";
        if self.induced_stats.is_none() {
            return Err(stage_err(STAGE, "induced stage has not run"));
        }
        let engine = &self.engine;
        let alive: Vec<(usize, &[usize; 4])> = engine.alive_tets().collect();
        let cut = |tri: &[usize; 3]| -> bool {
            engine.b_triangles.contains(tri) || engine.membranes.contains(tri)
        };
        // Triangle -> alive tets.
        let mut tri_tets: HashMap<[usize; 3], Vec<usize>> = HashMap::new();
        for (pos, (_, tet)) in alive.iter().enumerate() {
            for omit in 0..4 {
                let mut tri = [0usize; 3];
                let mut k = 0;
                for (i, &v) in tet.iter().enumerate() {
                    if i != omit {
                        tri[k] = v;
                        k += 1;
                    }
                }
                tri_tets.entry(tri).or_default().push(pos);
            }
        }
        let mut component = vec![usize::MAX; alive.len()];
        let mut comp_count = 0usize;
        for start in 0..alive.len() {
            if component[start] != usize::MAX {
                continue;
            }
            let c = comp_count;
            comp_count += 1;
            component[start] = c;
            let mut stack = vec![start];
            while let Some(pos) = stack.pop() {
                let tet = alive[pos].1;
                for omit in 0..4 {
                    let mut tri = [0usize; 3];
                    let mut k = 0;
                    for (i, &v) in tet.iter().enumerate() {
                        if i != omit {
                            tri[k] = v;
                            k += 1;
                        }
                    }
                    if cut(&tri) {
                        continue;
                    }
                    for &other in &tri_tets[&tri] {
                        if component[other] == usize::MAX {
                            component[other] = c;
                            stack.push(other);
                        }
                    }
                }
            }
        }
        if comp_count != 3 {
            return Err(stage_err(STAGE, format!("{comp_count} regions, expected 3")));
        }
        // Outside is the apex component.
        let apex_pos = alive
            .iter()
            .position(|(_, t)| t.contains(&engine.apex))
            .expect("the apex survives every subdivision");
        let outside = component[apex_pos];
        // Upstairs has the larger mean coordinate along the stacking axis.
        let mut sums = [0.0f64; 3];
        let mut counts = [0usize; 3];
        for (pos, (_, tet)) in alive.iter().enumerate() {
            let c = component[pos];
            if c == outside {
                continue;
            }
            let mean_x: f64 =
                tet.iter().map(|&v| engine.coords[v][0]).sum::<f64>() / 4.0;
            sums[c] += mean_x;
            counts[c] += 1;
        }
        let rooms: Vec<usize> = (0..3).filter(|&c| c != outside).collect();
        let mean = |c: usize| sums[c] / counts[c].max(1) as f64;
        if counts[rooms[0]] == 0 || counts[rooms[1]] == 0 || mean(rooms[0]) == mean(rooms[1]) {
            return Err(stage_err(STAGE, "cannot disambiguate the rooms"));
        }
        let upstairs = if mean(rooms[0]) > mean(rooms[1]) { rooms[0] } else { rooms[1] };
        let label = |c: usize| -> Region {
            if c == outside {
                Region::Outside
            } else if c == upstairs {
                Region::Upstairs
            } else {
                Region::Downstairs
            }
        };
        let region_of: HashMap<[usize; 4], Region> = alive
            .iter()
            .enumerate()
            .map(|(pos, (_, tet))| (**tet, label(component[pos])))
            .collect();
        self.regions = Some(RegionLabeling { region_of });
        Ok(self.regions.as_ref().expect("just set"))
    }

    /// Attaches partial vertex stars by color — a tetrahedron joins the
    /// subcomplex when exactly one of its colored vertices matches its
    /// region — and returns their union.
    pub fn assemble_gamma(&self) -> Result<SimplicialComplex> {
        const STAGE: &str = "assemble-gamma";
        let regions = self
            .regions
            .as_ref()
            .ok_or_else(|| stage_err(STAGE, "region stage has not run"))?;
        let engine = &self.engine;
        let mut gamma: Vec<Vec<usize>> = Vec::new();
        for (_, tet) in engine.alive_tets() {
            let region = regions.region_of[tet];
            let claimants: Vec<usize> = tet
                .iter()
                .copied()
                .filter(|&v| engine.colors[v] == Some(region.color()))
                .collect();
            match claimants.len() {
                0 => {}
                1 => gamma.push(tet.to_vec()),
                _ => {
                    return Err(stage_err(
                        STAGE,
                        format!(
                            "tetrahedron {tet:?} claimed by {claimants:?} in {region:?}"
                        ),
                    ))
                }
            }
        }
        if gamma.is_empty() {
            return Err(stage_err(STAGE, "no partial stars were assigned"));
        }
        Ok(build_complex(gamma)?)
    }

    /// Expected free vertex of each assembled tetrahedron: its claimant.
    pub fn expected_free_vertices(&self) -> Result<BTreeMap<Simplex, usize>> {
        const STAGE: &str = "assemble-gamma";
        let regions = self
            .regions
            .as_ref()
            .ok_or_else(|| stage_err(STAGE, "region stage has not run"))?;
        let engine = &self.engine;
        let mut out = BTreeMap::new();
        for (_, tet) in engine.alive_tets() {
            let region = regions.region_of[tet];
            let claimants: Vec<usize> = tet
                .iter()
                .copied()
                .filter(|&v| engine.colors[v] == Some(region.color()))
                .collect();
            if claimants.len() == 1 {
                out.insert(
                    Simplex::new(tet.to_vec()).expect("tet is canonical"),
                    claimants[0],
                );
            }
        }
        Ok(out)
    }
}

fn sorted_pair(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Replaces every tracked triangle containing `sigma` by its images under
/// the stellar subdivision with new vertex `m`.
fn track_triangles(set: &mut BTreeSet<[usize; 3]>, sigma: &[usize], m: usize) {
    if sigma.len() > 3 {
        return;
    }
    let affected: Vec<[usize; 3]> = set
        .iter()
        .filter(|t| sigma.iter().all(|v| t.contains(v)))
        .copied()
        .collect();
    for t in affected {
        set.remove(&t);
        for &x in sigma {
            let mut nt: Vec<usize> = t.iter().copied().filter(|&v| v != x).collect();
            nt.push(m);
            nt.sort_unstable();
            set.insert([nt[0], nt[1], nt[2]]);
        }
    }
}

fn house_chimneys(engine: &Engine) -> &'static [Chimney; 2] {
    // Chimney descriptors are fixed by the embedding table.
    let _ = engine;
    const CHIMNEYS: [Chimney; 2] = [
        Chimney {
            base: (0, DOWNSTAIRS_FOOTPRINT.0, DOWNSTAIRS_FOOTPRINT.1),
            edge_colors: (0, 1),
            below: Region::Outside,
            above: Region::Upstairs,
        },
        Chimney {
            base: (1, UPSTAIRS_FOOTPRINT.0, UPSTAIRS_FOOTPRINT.1),
            edge_colors: (2, 0),
            below: Region::Downstairs,
            above: Region::Outside,
        },
    ];
    &CHIMNEYS
}

fn house_edge_degrees(engine: &Engine) -> BTreeMap<(usize, usize), usize> {
    let mut map = BTreeMap::new();
    for t in &engine.b_triangles {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            *map.entry((t[i], t[j])).or_insert(0) += 1;
        }
    }
    map
}

/// Smallest-dimension, lexicographically least simplex of the sphere that
/// is not a face of the house although all its proper faces are.
fn first_minimal_non_face(engine: &Engine) -> Option<Vec<usize>> {
    let b_vertices = engine.b_vertices();
    let b_edges = engine.b_edges();
    // Edges first.
    let mut best_edge: Option<(usize, usize)> = None;
    for &u in &b_vertices {
        for &v in engine.neighbors[u].iter() {
            if v > u && b_vertices.contains(&v) && !b_edges.contains(&(u, v)) {
                let cand = (u, v);
                if best_edge.is_none_or(|b| cand < b) {
                    best_edge = Some(cand);
                }
            }
        }
    }
    if let Some((u, v)) = best_edge {
        return Some(vec![u, v]);
    }
    // Triangles whose three edges all lie in the house.
    let mut best_tri: Option<[usize; 3]> = None;
    let mut seen: BTreeSet<[usize; 3]> = BTreeSet::new();
    for (_, tet) in engine.alive_tets() {
        for omit in 0..4 {
            let mut tri = [0usize; 3];
            let mut k = 0;
            for (i, &v) in tet.iter().enumerate() {
                if i != omit {
                    tri[k] = v;
                    k += 1;
                }
            }
            if !seen.insert(tri) || engine.b_triangles.contains(&tri) {
                continue;
            }
            let all_edges = [(0, 1), (0, 2), (1, 2)]
                .iter()
                .all(|&(i, j)| b_edges.contains(&(tri[i], tri[j])));
            if all_edges && best_tri.is_none_or(|b| tri < b) {
                best_tri = Some(tri);
            }
        }
    }
    if let Some(tri) = best_tri {
        return Some(tri.to_vec());
    }
    // A tetrahedron with all four triangles in the house would make the
    // house 3-dimensional; treat it as a violation all the same.
    for (_, tet) in engine.alive_tets() {
        let all = (0..4).all(|omit| {
            let mut tri = [0usize; 3];
            let mut k = 0;
            for (i, &v) in tet.iter().enumerate() {
                if i != omit {
                    tri[k] = v;
                    k += 1;
                }
            }
            engine.b_triangles.contains(&tri)
        });
        if all {
            return Some(tet.to_vec());
        }
    }
    None
}

/// Adds every `(w, v1, v2)` corner violation centered at `w` to `out`.
fn scan_corner_violations(
    engine: &Engine,
    w: usize,
    out: &mut BTreeSet<(usize, usize, usize)>,
) {
    let mut by_color: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for &v in engine.neighbors[w].iter() {
        if let Some(c) = engine.colors[v] {
            by_color[c as usize].push(v);
        }
    }
    for class in &by_color {
        for i in 0..class.len() {
            for j in i + 1..class.len() {
                out.insert((w, class[i], class[j]));
            }
        }
    }
}

/// Everything the constructive run produces.
pub struct CounterexampleArtifacts {
    pub sphere: SimplicialComplex,
    pub gamma: SimplicialComplex,
    pub certificate: Certificate,
    pub chimney_stats: ChimneyStats,
    pub induced_stats: InducedStats,
}

/// Runs the full pipeline on the 2x3x4 pile and verifies the result.
pub fn build_counterexample() -> Result<CounterexampleArtifacts> {
    let spec = PileSpec::new(2, 3, 4).expect("valid extents");
    let mut pipeline = Pipeline::new(spec)?;
    pipeline.subdivide_chimneys()?;
    pipeline.make_induced()?;
    pipeline.classify_regions()?;
    let gamma = pipeline.assemble_gamma()?;
    let sphere = pipeline.sphere();

    // The assembled free vertices must be exactly the ones the certificate
    // recovers from the facet lists alone.
    let expected = pipeline.expected_free_vertices()?;
    let core = perles::compute_core(&sphere, &gamma)?;
    if core.free_vertex != expected {
        return Err(stage_err(
            "assemble-gamma",
            "free vertices disagree with the claimed partial stars",
        ));
    }

    let certificate = verify_certificate(&sphere, &gamma);
    Ok(CounterexampleArtifacts {
        sphere,
        gamma,
        certificate,
        chimney_stats: pipeline.chimney_stats.clone().expect("ran"),
        induced_stats: pipeline.induced_stats.clone().expect("ran"),
    })
}

/// One certificate entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

/// Structured pass/fail report with witnesses for every Perles condition
/// on the pair `(sphere, gamma)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub checks: Vec<CheckResult>,
    pub sphere_facets: usize,
    pub gamma_facets: usize,
    pub core_triangles: usize,
}

impl Certificate {
    /// True iff every check passed; the pair is then a counterexample.
    pub fn is_counterexample(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Deterministic line-oriented rendering.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "sphere-facets {}", self.sphere_facets);
        let _ = writeln!(out, "gamma-facets {}", self.gamma_facets);
        let _ = writeln!(out, "core-triangles {}", self.core_triangles);
        for c in &self.checks {
            let _ = writeln!(out, "check {} {}", c.name, if c.passed { "pass" } else { "FAIL" });
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "witness {} {}", c.name, w);
            }
        }
        let _ = writeln!(
            out,
            "verdict {}",
            if self.is_counterexample() { "counterexample" } else { "not-a-counterexample" }
        );
        out
    }
}

/// Checks, independently of how `gamma` was built, every condition that
/// makes `(sphere, gamma)` a counterexample. Failures become certificate
/// entries with witnesses rather than errors.
pub fn verify_certificate(sphere: &SimplicialComplex, gamma: &SimplicialComplex) -> Certificate {
    let mut checks: Vec<CheckResult> = Vec::new();
    let mut push = |name: &'static str, passed: bool, witness: Option<String>| {
        checks.push(CheckResult { name, passed, witness });
    };

    let ambient_closed = sphere
        .is_closed_pseudomanifold()
        .map(|v| v.is_closed())
        .unwrap_or(false)
        && sphere.dim() == Some(3);
    push(
        "ambient-closed-pseudomanifold",
        ambient_closed,
        (!ambient_closed).then(|| "ambient complex is not a closed 3-pseudomanifold".into()),
    );

    let pure3 = gamma.dim() == Some(3) && gamma.is_pure();
    push("gamma-pure-3d", pure3, (!pure3).then(|| format!("dim {:?}", gamma.dim())));

    let sphere_facets: BTreeSet<&Simplex> = sphere.facets().iter().collect();
    let missing = gamma.facets().iter().find(|f| !sphere_facets.contains(f));
    push(
        "gamma-subcomplex",
        missing.is_none(),
        missing.map(|f| format!("{:?}", f.vertices())),
    );

    let dually_connected = gamma
        .dual_graph()
        .map(|g| g.is_connected())
        .unwrap_or(false);
    push("gamma-dually-connected", dually_connected, None);

    // One free ridge per facet, recovered from the facet lists alone.
    let mut free_ridge_witness: Option<String> = None;
    let mut one_free_each = pure3;
    if pure3 {
        if let Ok(incidence) = gamma.ridge_incidence() {
            let mut counts = vec![0usize; gamma.facet_count()];
            for facets in incidence.values() {
                if facets.len() == 1 {
                    counts[facets[0]] += 1;
                }
            }
            if let Some(i) = counts.iter().position(|&c| c != 1) {
                one_free_each = false;
                free_ridge_witness = Some(format!(
                    "facet {:?} has {} free ridges",
                    gamma.facets()[i].vertices(),
                    counts[i]
                ));
            }
        } else {
            one_free_each = false;
        }
    }
    push("one-free-ridge-per-facet", one_free_each, free_ridge_witness);

    let non_separating = perles::complement_dually_connected(sphere, gamma).unwrap_or(false);
    push("complement-connected", non_separating, None);

    let star_match = perles::find_vertex_star(sphere, gamma);
    push(
        "not-a-vertex-star",
        star_match.is_none(),
        star_match.map(|v| format!("equals the star of vertex {v}")),
    );

    let dual = gamma.dual_graph().ok();
    let kappa = dual
        .as_ref()
        .and_then(|g| graph::vertex_connectivity(g).ok());
    let three_connected = kappa.is_some_and(|k| k >= 3);
    push(
        "dually-3-connected",
        three_connected,
        kappa.map(|k| format!("vertex connectivity {k}")).filter(|_| !three_connected),
    );
    let naatz_agrees = dual
        .as_ref()
        .and_then(|g| graph::naatz_k_connected(g, 3).ok())
        .is_some_and(|v| v.holds == three_connected);
    push("naatz-3-connectivity-agrees", naatz_agrees, None);

    // Core checks; a failed core computation fails them all with the
    // error as witness.
    let core = perles::compute_core(sphere, gamma);
    let (core_len, nonempty, no_free_edge, h2_zero, core_connected, aux3, aux_local2, core_err) =
        match &core {
            Ok(core) => {
                let nonempty = !core.is_empty();
                let no_free_edge = nonempty
                    && core
                        .triangles
                        .free_ridges()
                        .map(|f| f.is_empty())
                        .unwrap_or(false);
                let h2_zero = nonempty
                    && homology::homology_profile(&core.triangles)
                        .map(|p| p.betti[2] == 0 && p.torsion[1].is_empty())
                        .unwrap_or(false);
                let core_connected = nonempty
                    && core
                        .triangles
                        .dual_graph()
                        .map(|g| g.is_connected())
                        .unwrap_or(false);
                let (aux3, aux_local2) = if nonempty {
                    aux_graph_checks(gamma, core)
                } else {
                    (false, false)
                };
                (
                    core.triangles.facet_count(),
                    nonempty,
                    no_free_edge,
                    h2_zero,
                    core_connected,
                    aux3,
                    aux_local2,
                    None,
                )
            }
            Err(e) => (0, false, false, false, false, false, false, Some(e.to_string())),
        };
    push("core-nonempty", nonempty, core_err.clone());
    push("core-no-free-edge", no_free_edge, core_err.clone());
    push("core-h2-zero", h2_zero, core_err.clone());
    push("core-dually-connected", core_connected, core_err.clone());
    push("aux-graph-3-connected", aux3, core_err.clone());
    push("aux-local-2-connected", aux_local2, core_err);

    Certificate {
        checks,
        sphere_facets: sphere.facet_count(),
        gamma_facets: gamma.facet_count(),
        core_triangles: core_len,
    }
}

/// Builds the auxiliary graph on core triangles — edges join triangle
/// pairs sharing an edge that are connected by a dual path in the star of
/// that edge within `gamma` — and checks its 3-connectivity plus the
/// 2-connectivity of every vertex-local induced subgraph.
fn aux_graph_checks(gamma: &SimplicialComplex, core: &perles::CoreComplex) -> (bool, bool) {
    let core_tris: Vec<&Simplex> = core.triangles.facets().iter().collect();
    // Gamma tetrahedra per edge, and per triangle.
    let mut edge_tets: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut tri_tets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (i, f) in gamma.facets().iter().enumerate() {
        let v = f.vertices();
        for a in 0..4 {
            for b in a + 1..4 {
                edge_tets.entry((v[a], v[b])).or_default().push(i);
            }
            let mut tri: Vec<usize> = v.to_vec();
            tri.remove(a);
            tri_tets.entry(tri).or_default().push(i);
        }
    }
    let mut aux = Graph::new(core_tris.len());
    // Core triangles per edge.
    let mut edge_core: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, t) in core_tris.iter().enumerate() {
        let v = t.vertices();
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            edge_core.entry((v[a], v[b])).or_default().push(i);
        }
    }
    for (edge, tris) in &edge_core {
        if tris.len() < 2 {
            continue;
        }
        // Components of the dual graph of star(edge; gamma).
        let local_tets = &edge_tets[edge];
        let pos: BTreeMap<usize, usize> =
            local_tets.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let mut local = Graph::new(local_tets.len());
        for (tri, tets) in &tri_tets {
            if tets.len() == 2 && tri.binary_search(&edge.0).is_ok() && tri.binary_search(&edge.1).is_ok()
            {
                if let (Some(&a), Some(&b)) = (pos.get(&tets[0]), pos.get(&tets[1])) {
                    local.add_edge(a, b);
                }
            }
        }
        let comps = local.connected_components();
        let comp_of = |tet: usize| -> usize {
            let p = pos[&tet];
            comps.iter().position(|c| c.binary_search(&p).is_ok()).expect("in a component")
        };
        for i in 0..tris.len() {
            for j in i + 1..tris.len() {
                let ti = core_tris[tris[i]].vertices().to_vec();
                let tj = core_tris[tris[j]].vertices().to_vec();
                let tets_i = &tri_tets[&ti];
                let tets_j = &tri_tets[&tj];
                let joinable = tets_i.iter().any(|&a| {
                    tets_j.iter().any(|&b| pos.contains_key(&a) && pos.contains_key(&b) && comp_of(a) == comp_of(b))
                });
                if joinable {
                    aux.add_edge(tris[i], tris[j]);
                }
            }
        }
    }
    let aux3 = graph::vertex_connectivity(&aux).is_ok_and(|k| k >= 3);
    // Local subgraphs: triangles incident to each core vertex.
    let mut local2 = true;
    let core_vertices: BTreeSet<usize> = core
        .triangles
        .facets()
        .iter()
        .flat_map(|t| t.vertices().iter().copied())
        .collect();
    for v in core_vertices {
        let nodes: Vec<usize> = core_tris
            .iter()
            .enumerate()
            .filter(|(_, t)| t.contains_vertex(v))
            .map(|(i, _)| i)
            .collect();
        if nodes.len() < 3 {
            local2 = false;
            break;
        }
        let (sub, _) = aux.induced_subgraph(&nodes).expect("valid nodes");
        if graph::vertex_connectivity(&sub).map_or(true, |k| k < 2) {
            local2 = false;
            break;
        }
    }
    (aux3, local2)
}
