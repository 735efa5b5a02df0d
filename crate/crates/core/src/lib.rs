//! Combinatorial machinery for Perles' conjecture on simple polytopes.
//!
//! The crate is organized around a handful of exact, deterministic building
//! blocks:
//!
//! * [`complex`] — finite simplicial complexes given by their maximal faces,
//!   with stars, links, dual graphs, stellar subdivisions, cones, elementary
//!   collapses, and a plain-text `.cplx` file format.
//! * [`homology`] — integer simplicial homology via Smith normal form, with
//!   arbitrary-precision arithmetic throughout.
//! * [`graph`] — simple undirected graphs with components, induced subgraphs,
//!   and two independent vertex-connectivity procedures (max-flow Menger and
//!   the Naatz distance-2 criterion).
//! * [`perles`] — vertex–facet models of simple polytopes, the Perles
//!   candidate predicates, candidate enumeration with constraint propagation,
//!   the `core(Γ)` obstruction complex, and conjecture reports.
//! * [`generators`] — boundaries of simplices, cyclic polytopes via Gale's
//!   evenness criterion, stacked spheres, products, wedges, vertex
//!   truncations, and Freudenthal cube-pile triangulations.
//! * [`counterexample`] — the constructive 4-dimensional counterexample built
//!   from Bing's house with two walls removed, plus an independent
//!   certificate verifier.
//!
//! With the default `parallel` feature the data-parallel inner loops (subset
//! scans, pairwise flow computations, enumeration subtrees) run on rayon;
//! without it everything falls back to the sequential code paths. Results
//! are identical either way.

pub mod complex;
pub mod counterexample;
pub mod generators;
pub mod graph;
pub mod homology;
pub mod perles;
