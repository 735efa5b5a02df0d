//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Run with `cargo test --test acceptance -- --nocapture` to see them.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use perles_core::complex::{build_complex, Simplex, SimplicialComplex};
use perles_core::counterexample::{
    build_counterexample, verify_certificate, CounterexampleArtifacts,
};
use perles_core::generators::{
    cyclic_facets_gale, polygon_model, product_model, segment_model, simplex_boundary,
    sphere_from_pile, stacked_boundary, truncate_vertex_model, wedge_model, CyclicSpec, PileSpec,
};
use perles_core::graph::{self, Graph};
use perles_core::homology::{euler_poincare_holds, homology_profile};
use perles_core::perles::{
    boundary_complex, brute_force_perles_subgraphs, check_conjecture, compute_core,
    enumerate_perles_subgraphs, find_vertex_star, from_simplicial_boundary, gamma_of_subgraph,
    SimplePolytopeModel,
};

fn pipeline() -> &'static CounterexampleArtifacts {
    static ARTIFACTS: OnceLock<CounterexampleArtifacts> = OnceLock::new();
    ARTIFACTS.get_or_init(|| build_counterexample().expect("pipeline builds"))
}

/// Boundary of the icosahedron: top and bottom caps over two pentagonal
/// rings joined by an antiprism strip.
fn icosahedron() -> SimplicialComplex {
    let top = 0usize;
    let bottom = 11usize;
    let u = |i: usize| 1 + i % 5;
    let l = |i: usize| 6 + i % 5;
    let mut faces = Vec::new();
    for i in 0..5 {
        faces.push(vec![top, u(i), u(i + 1)]);
        faces.push(vec![bottom, l(i), l(i + 1)]);
        faces.push(vec![u(i), u(i + 1), l(i)]);
        faces.push(vec![l(i), l(i + 1), u(i + 1)]);
    }
    let k = build_complex(faces).unwrap();
    assert_eq!(k.facet_count(), 20);
    assert_eq!(k.vertices().len(), 12);
    assert!(k.is_closed_pseudomanifold().unwrap().is_closed());
    let profile = homology_profile(&k).unwrap();
    assert_eq!(profile.betti, vec![1, 0, 1]);
    k
}

/// A dunce hat built as the simplicial quotient of a 9-gon disk whose
/// boundary wraps a 3-vertex circle by the word a a a^-1: contractible but
/// not collapsible.
fn dunce_hat() -> SimplicialComplex {
    // Circle vertices 0,1,2; boundary images of the 9-gon corners.
    let images = [0usize, 1, 2, 0, 1, 2, 0, 2, 1];
    let ring = |i: usize| 3 + i % 9; // inner 9-gon
    let center = 12usize;
    let mut faces = Vec::new();
    for i in 0..9 {
        faces.push(vec![images[i], images[(i + 1) % 9], ring(i)]);
        faces.push(vec![images[(i + 1) % 9], ring(i), ring(i + 1)]);
        faces.push(vec![ring(i), ring(i + 1), center]);
    }
    let k = build_complex(faces).unwrap();
    assert_eq!(k.facet_count(), 27);
    assert_eq!(k.vertices().len(), 13);
    k
}

/// Test-local Gale evenness in the raw pairwise form, as an oracle for the
/// run-form implementation.
fn gale_count_naive(d: usize, n: usize) -> usize {
    let mut count = 0usize;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != d {
            continue;
        }
        let outside: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) == 0).collect();
        let mut ok = true;
        'pairs: for a in 0..outside.len() {
            for b in a + 1..outside.len() {
                let between = (outside[a] + 1..outside[b])
                    .filter(|&i| mask & (1 << i) != 0)
                    .count();
                if between % 2 == 1 {
                    ok = false;
                    break 'pairs;
                }
            }
        }
        if ok {
            count += 1;
        }
    }
    count
}

fn check_satisfies(delta: &SimplicialComplex, what: &str) -> usize {
    let report = check_conjecture(delta).unwrap_or_else(|e| panic!("{what}: {e}"));
    assert!(
        report.satisfies(),
        "{what}: {} violations",
        report.violations.len()
    );
    assert!(euler_poincare_holds(delta).unwrap(), "{what}: Euler-Poincare");
    report.candidates.len()
}

fn cube_model() -> SimplePolytopeModel {
    let seg = segment_model();
    product_model(&product_model(&seg, &seg).unwrap(), &seg).unwrap()
}

#[test]
fn criterion_1_low_dimension_validity() {
    let t0 = std::time::Instant::now();
    // Tetrahedron.
    let tetra = simplex_boundary(3);
    check_satisfies(&tetra, "tetrahedron");
    // Cube.
    check_satisfies(&boundary_complex(&cube_model()).unwrap(), "cube");
    // Dodecahedron, dual to the icosahedron.
    let dodeca = icosahedron();
    let model = from_simplicial_boundary(&dodeca).unwrap();
    assert_eq!(model.vertex_count(), 20);
    assert_eq!(model.facet_count(), 12);
    check_satisfies(&dodeca, "dodecahedron");
    // All prisms up to 20 vertices.
    let seg = segment_model();
    for n in 3..=10 {
        let prism = product_model(&polygon_model(n).unwrap(), &seg).unwrap();
        assert!(prism.vertex_count() <= 20);
        check_satisfies(&boundary_complex(&prism).unwrap(), &format!("{n}-prism"));
    }
    // All wedges of polygons up to 20 vertices.
    for n in 3..=11 {
        let wedge = wedge_model(&polygon_model(n).unwrap(), 0).unwrap();
        assert!(wedge.vertex_count() <= 20);
        check_satisfies(&boundary_complex(&wedge).unwrap(), &format!("{n}-gon wedge"));
    }
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs() < 10, "over budget: {elapsed:?}");
    eprintln!("criterion 1 (d<=3 validity): PASS in {elapsed:?}");
}

#[test]
fn criterion_2_cyclic_validity() {
    let t0 = std::time::Instant::now();
    for (d, n) in [(4, 6), (4, 7), (4, 8)] {
        let delta = cyclic_facets_gale(CyclicSpec { d, n }).unwrap();
        assert_eq!(delta.facet_count(), gale_count_naive(d, n), "C_{d}({n}) facet count");
        let candidates = check_satisfies(&delta, &format!("dual of C_{d}({n})"));
        // Candidate count = facet count of the dual model = n.
        assert_eq!(candidates, n, "dual of C_{d}({n})");
    }
    // C_5(7) via the wedge identity: its dual is a wedge of the dual of
    // C_4(6) over a suitable facet.
    let c46 = from_simplicial_boundary(&cyclic_facets_gale(CyclicSpec { d: 4, n: 6 }).unwrap())
        .unwrap();
    let c57_direct =
        from_simplicial_boundary(&cyclic_facets_gale(CyclicSpec { d: 5, n: 7 }).unwrap()).unwrap();
    let wedge = (0..c46.facet_count())
        .filter_map(|f| wedge_model(&c46, f).ok())
        .find(|w| graph::isomorphic(w.graph(), c57_direct.graph()))
        .expect("a wedge facet realizes the cyclic identity");
    let delta = boundary_complex(&wedge).unwrap();
    assert_eq!(delta.facet_count(), gale_count_naive(5, 7));
    let candidates = check_satisfies(&delta, "dual of C_5(7) as a wedge");
    assert_eq!(candidates, 7);
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs() < 120, "over budget: {elapsed:?}");
    eprintln!("criterion 2 (cyclic validity): PASS in {elapsed:?}");
}

#[test]
fn criterion_3_stacked_validity() {
    let t0 = std::time::Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for trial in 0..25 {
        let len = rng.gen_range(0..=6);
        let mut delta = simplex_boundary(4);
        let mut steps = Vec::new();
        for _ in 0..len {
            let idx = rng.gen_range(0..delta.facet_count());
            steps.push(idx);
            let facet = delta.facets()[idx].clone();
            let fresh = delta.vertex_count();
            delta = delta.stellar_subdivide(&facet, fresh).unwrap();
        }
        assert_eq!(delta, stacked_boundary(4, &steps).unwrap());
        check_satisfies(&delta, &format!("stacked sphere, trial {trial}, steps {steps:?}"));
    }
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs() < 120, "over budget: {elapsed:?}");
    eprintln!("criterion 3 (stacked validity): PASS in {elapsed:?}");
}

#[test]
fn criterion_4_product_validity() {
    let t0 = std::time::Instant::now();
    let seg = segment_model();
    let tri = polygon_model(3).unwrap();
    let sq = polygon_model(4).unwrap();
    for (model, what) in [
        (cube_model(), "segment^3"),
        (product_model(&tri, &tri).unwrap(), "triangle x triangle"),
        (product_model(&tri, &sq).unwrap(), "triangle x square"),
    ] {
        check_satisfies(&boundary_complex(&model).unwrap(), what);
    }
    let _ = seg;
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs() < 60, "over budget: {elapsed:?}");
    eprintln!("criterion 4 (product validity): PASS in {elapsed:?}");
}

#[test]
fn criterion_5_counterexample_reproduction() {
    let t0 = std::time::Instant::now();
    let artifacts = pipeline();
    let cert = &artifacts.certificate;
    for name in [
        "ambient-closed-pseudomanifold",
        "gamma-pure-3d",
        "gamma-subcomplex",
        "gamma-dually-connected",
        "one-free-ridge-per-facet",
        "complement-connected",
        "not-a-vertex-star",
        "dually-3-connected",
        "naatz-3-connectivity-agrees",
        "core-nonempty",
        "core-no-free-edge",
        "core-h2-zero",
        "core-dually-connected",
        "aux-graph-3-connected",
        "aux-local-2-connected",
    ] {
        let check = cert.check(name).unwrap_or_else(|| panic!("missing check {name}"));
        assert!(check.passed, "certificate check {name} failed: {:?}", check.witness);
    }
    assert!(cert.is_counterexample());
    // The chimney stage created exactly four uncolored vertices.
    assert_eq!(artifacts.chimney_stats.new_vertices.len(), 4);
    assert_eq!(artifacts.chimney_stats.separation_edges.len(), 8);
    // Serializing and re-loading the pair yields the identical certificate.
    let sphere = SimplicialComplex::from_cplx(&artifacts.sphere.to_cplx()).unwrap();
    let gamma = SimplicialComplex::from_cplx(&artifacts.gamma.to_cplx()).unwrap();
    let again = verify_certificate(&sphere, &gamma);
    assert_eq!(again, artifacts.certificate);
    // Tampering breaks it: drop one facet of gamma.
    let tampered = gamma
        .induced_pure_subcomplex(&(1..gamma.facet_count()).collect::<Vec<_>>())
        .unwrap();
    let bad = verify_certificate(&sphere, &tampered);
    assert!(!bad.is_counterexample());
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs() < 300, "over budget: {elapsed:?}");
    eprintln!("criterion 5 (counterexample reproduction): PASS in {elapsed:?}");
}

/// The model corpus with at most 18 graph vertices used for the oracle
/// equivalence sweep.
fn small_corpus() -> Vec<(String, SimplePolytopeModel)> {
    let mut corpus: Vec<(String, SimplePolytopeModel)> = Vec::new();
    for d in 2..=4 {
        corpus.push((
            format!("simplex d={d}"),
            from_simplicial_boundary(&simplex_boundary(d)).unwrap(),
        ));
    }
    corpus.push(("cube".into(), cube_model()));
    corpus.push((
        "truncated cube".into(),
        truncate_vertex_model(&cube_model(), 0).unwrap(),
    ));
    let seg = segment_model();
    for n in 3..=9 {
        corpus.push((
            format!("{n}-prism"),
            product_model(&polygon_model(n).unwrap(), &seg).unwrap(),
        ));
    }
    for n in 3..=10 {
        corpus.push((
            format!("{n}-gon wedge"),
            wedge_model(&polygon_model(n).unwrap(), 0).unwrap(),
        ));
    }
    for (d, n) in [(4, 6), (4, 7), (5, 7)] {
        corpus.push((
            format!("dual C_{d}({n})"),
            from_simplicial_boundary(&cyclic_facets_gale(CyclicSpec { d, n }).unwrap()).unwrap(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xabcd);
    for trial in 0..5 {
        let len = rng.gen_range(1..=4);
        let mut steps = Vec::new();
        let mut delta = simplex_boundary(4);
        for _ in 0..len {
            let idx = rng.gen_range(0..delta.facet_count());
            steps.push(idx);
            let facet = delta.facets()[idx].clone();
            let fresh = delta.vertex_count();
            delta = delta.stellar_subdivide(&facet, fresh).unwrap();
        }
        corpus.push((
            format!("stacked trial {trial}"),
            from_simplicial_boundary(&delta).unwrap(),
        ));
    }
    corpus.retain(|(_, m)| m.vertex_count() <= 18);
    assert!(corpus.len() >= 25);
    corpus
}

#[test]
fn criterion_6_oracle_equivalence() {
    for (what, model) in small_corpus() {
        let fast = enumerate_perles_subgraphs(&model);
        let slow = brute_force_perles_subgraphs(&model).unwrap();
        assert_eq!(fast, slow, "oracle mismatch on {what}");
        // Every family in this corpus satisfies the conjecture, so the
        // candidates are exactly the facet vertex sets.
        let found: BTreeSet<&Vec<usize>> = fast.iter().map(|c| &c.vertices).collect();
        let expected: BTreeSet<&Vec<usize>> = model.facets().iter().collect();
        assert_eq!(found, expected, "candidates differ from facets on {what}");
    }
    eprintln!("criterion 6 (oracle equivalence): PASS");
}

#[test]
fn criterion_7_homology_oracle() {
    let mut touched: Vec<(String, SimplicialComplex)> = Vec::new();
    // Spheres.
    let delta4 = simplex_boundary(4);
    assert_eq!(homology_profile(&delta4).unwrap().betti, vec![1, 0, 0, 1]);
    touched.push(("boundary of the 4-simplex".into(), delta4));
    for (a, b, c) in [(1, 1, 1), (1, 2, 2), (2, 3, 4)] {
        let s = sphere_from_pile(PileSpec::new(a, b, c).unwrap());
        let profile = homology_profile(&s).unwrap();
        assert_eq!(profile.betti, vec![1, 0, 0, 1], "pile {a}x{b}x{c}");
        assert!(profile.torsion_free());
        touched.push((format!("pile sphere {a}x{b}x{c}"), s));
    }
    // The dunce hat is contractible.
    let dunce = dunce_hat();
    let profile = homology_profile(&dunce).unwrap();
    assert_eq!(profile.betti, vec![1, 0, 0]);
    assert!(profile.torsion_free());
    // It is also non-collapsible: greedy collapsing has nothing to remove.
    assert_eq!(dunce.collapse_greedy(), dunce);
    touched.push(("dunce hat".into(), dunce));
    // The 7-vertex torus.
    let mut faces = Vec::new();
    for i in 0..7usize {
        faces.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        faces.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    let torus = build_complex(faces).unwrap();
    let profile = homology_profile(&torus).unwrap();
    assert_eq!(profile.betti, vec![1, 2, 1]);
    touched.push(("7-vertex torus".into(), torus));
    // The fully subdivided sphere keeps the 3-sphere profile.
    let artifacts = pipeline();
    let profile = homology_profile(&artifacts.sphere).unwrap();
    assert_eq!(profile.betti, vec![1, 0, 0, 1]);
    assert!(profile.torsion_free());
    touched.push(("pipeline sphere".into(), artifacts.sphere.clone()));
    // Euler-Poincare holds on every complex this criterion touched, plus
    // the pipeline core.
    let core = compute_core(&artifacts.sphere, &artifacts.gamma).unwrap();
    touched.push(("pipeline core".into(), core.triangles.clone()));
    for (what, k) in &touched {
        assert!(euler_poincare_holds(k).unwrap(), "Euler-Poincare fails on {what}");
    }
    eprintln!("criterion 7 (homology oracle): PASS");
}

/// Independent connectivity oracle: brute-force subset removal.
fn connectivity_by_subsets(g: &Graph) -> usize {
    let n = g.node_count();
    let all: Vec<usize> = (0..n).collect();
    for size in 0..n - 1 {
        // All size-subsets as removal candidates.
        let mut stack = vec![(Vec::<usize>::new(), 0usize)];
        while let Some((chosen, next)) = stack.pop() {
            if chosen.len() == size {
                let keep: Vec<usize> =
                    all.iter().copied().filter(|v| !chosen.contains(v)).collect();
                let (sub, _) = g.induced_subgraph(&keep).unwrap();
                if !sub.is_connected() {
                    return size;
                }
                continue;
            }
            for v in next..n {
                let mut c = chosen.clone();
                c.push(v);
                stack.push((c, v + 1));
            }
        }
    }
    n - 1
}

#[test]
fn criterion_8_connectivity_cross_check() {
    // Exhaustive sweep over all graphs with up to 7 nodes, in parallel
    // chunks when the parallel feature is on.
    let run_checks = |g: &Graph| {
        let n = g.node_count();
        let kappa = graph::vertex_connectivity(g).unwrap();
        for k in [2usize, 3] {
            if n > k {
                let naatz = graph::naatz_k_connected(g, k).unwrap();
                assert_eq!(
                    naatz.holds,
                    kappa >= k,
                    "disagreement on {:?} for k={k}",
                    g.edges()
                );
            }
        }
        kappa
    };
    for n in 3..=7usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let masks = 1u64 << pairs.len();
        let sweep = |mask: u64| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            run_checks(&g);
        };
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            (0..masks).into_par_iter().for_each(sweep);
        }
        #[cfg(not(feature = "parallel"))]
        (0..masks).for_each(sweep);
    }
    // 200 seeded random graphs with up to 12 nodes, against the
    // subset-removal oracle as well.
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0ffee);
    for _ in 0..200 {
        let n = rng.gen_range(4..=12);
        let p = rng.gen_range(0.2..0.9);
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        let kappa = run_checks(&g);
        if n <= 9 {
            assert_eq!(kappa, connectivity_by_subsets(&g), "oracle on {:?}", g.edges());
        }
    }
    eprintln!("criterion 8 (connectivity cross-check): PASS");
}

#[test]
fn criterion_9_core_laws() {
    // Claims 1 and 2 on every Perles candidate arising from the corpus.
    // Candidate vertex ids index the facets of the boundary the model was
    // built from, so rebuild the model on the dual side first.
    let mut checked = 0usize;
    for (what, corpus_model) in small_corpus() {
        let delta = boundary_complex(&corpus_model).unwrap();
        if delta.dim() != Some(3) {
            continue; // the core is defined inside 3-pseudomanifolds
        }
        let model = from_simplicial_boundary(&delta).unwrap();
        for cand in enumerate_perles_subgraphs(&model) {
            let gamma = gamma_of_subgraph(&delta, &cand.vertices).unwrap();
            // Graph-level and complex-level separation tests agree.
            assert_eq!(
                perles_core::perles::complement_dually_connected(&delta, &gamma).unwrap(),
                cand.complement_connected,
                "{what}: separation tests disagree"
            );
            let core = compute_core(&delta, &gamma)
                .unwrap_or_else(|e| panic!("{what}: candidate fails core precondition: {e}"));
            if !core.is_empty() {
                assert!(
                    core.triangles.free_ridges().unwrap().is_empty(),
                    "{what}: claim 1"
                );
            }
            let is_star = find_vertex_star(&delta, &gamma).is_some();
            assert_eq!(core.is_empty(), is_star, "{what}: claim 2");
            checked += 1;
        }
    }
    assert!(checked >= 50, "only {checked} candidates checked");

    // Vertex stars of corpus spheres always have an empty core.
    for sphere in [simplex_boundary(4), sphere_from_pile(PileSpec::new(1, 1, 1).unwrap())] {
        for v in sphere.vertices() {
            let star = sphere.star(&Simplex::new(vec![v]).unwrap()).unwrap();
            let core = compute_core(&sphere, &star).unwrap();
            assert!(core.is_empty(), "star of {v} has a nonempty core");
        }
    }

    // The pipeline subcomplex: claims 1-3 with a nonempty core.
    let artifacts = pipeline();
    let core = compute_core(&artifacts.sphere, &artifacts.gamma).unwrap();
    assert!(!core.is_empty());
    assert!(core.triangles.free_ridges().unwrap().is_empty(), "claim 1");
    assert!(find_vertex_star(&artifacts.sphere, &artifacts.gamma).is_none(), "claim 2");
    // Claim 3, implemented direction: the complement is connected, so the
    // core has trivial second homology.
    assert!(perles_core::perles::complement_dually_connected(
        &artifacts.sphere,
        &artifacts.gamma
    )
    .unwrap());
    let profile = homology_profile(&core.triangles).unwrap();
    assert_eq!(profile.betti[2], 0);
    assert!(profile.torsion[1].is_empty());

    // The subcomplex collapses to a 2-complex containing its core: remove
    // every tetrahedron together with its designated free triangle (those
    // pairs stay collapsible in any order).
    let designated: BTreeSet<Vec<usize>> = core
        .free_vertex
        .iter()
        .map(|(tet, &v)| tet.vertices().iter().copied().filter(|&w| w != v).collect())
        .collect();
    let remaining: Vec<Vec<usize>> = artifacts
        .gamma
        .k_faces(2)
        .unwrap()
        .into_iter()
        .map(|t| t.vertices().to_vec())
        .filter(|t| !designated.contains(t))
        .collect();
    let collapsed = build_complex(remaining).unwrap();
    assert_eq!(collapsed.dim(), Some(2));
    for t in core.triangles.facets() {
        assert!(collapsed.contains_face(t.vertices()), "core triangle lost");
    }
    // Simple homotopy type is preserved, so the profiles agree through
    // dimension 2; the same holds for the greedy collapse, whose output
    // complex is order-dependent but whose homology is not.
    let gamma_profile = homology_profile(&artifacts.gamma).unwrap();
    let collapsed_profile = homology_profile(&collapsed).unwrap();
    assert_eq!(&gamma_profile.betti[..3], &collapsed_profile.betti[..]);
    assert_eq!(gamma_profile.betti[3], 0);
    let greedy = artifacts.gamma.collapse_greedy();
    let greedy_profile = homology_profile(&greedy).unwrap();
    let gd = greedy.dim().unwrap();
    assert!(gd <= 2);
    assert_eq!(&gamma_profile.betti[..=gd], &greedy_profile.betti[..]);
    assert_eq!(&gamma_profile.torsion[..=gd], &greedy_profile.torsion[..]);
    eprintln!("criterion 9 (core laws): PASS");
}

#[test]
fn stellar_subdivision_preserves_pseudomanifolds() {
    // Quantified over the closed pseudomanifolds in the corpus and all
    // faces of dimension >= 1.
    let corpus = vec![
        simplex_boundary(3),
        simplex_boundary(4),
        icosahedron(),
        stacked_boundary(4, &[0, 2]).unwrap(),
    ];
    for k in corpus {
        let dim = k.dim().unwrap();
        for fdim in 1..=dim {
            for face in k.k_faces(fdim).unwrap() {
                let split = k.stellar_subdivide(&face, k.vertex_count()).unwrap();
                assert!(
                    split.is_closed_pseudomanifold().unwrap().is_closed(),
                    "subdividing {face:?}"
                );
            }
        }
    }
}

#[test]
fn collapse_preserves_homology() {
    let mut faces = Vec::new();
    for i in 0..7usize {
        faces.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        faces.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    let corpus = vec![
        build_complex([vec![0, 1, 2]]).unwrap(),
        simplex_boundary(4),
        build_complex(faces).unwrap(),
        dunce_hat(),
        build_complex([vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4]]).unwrap(),
    ];
    for k in corpus {
        let collapsed = k.collapse_greedy();
        let before = homology_profile(&k).unwrap();
        let after = homology_profile(&collapsed).unwrap();
        let new_dim = collapsed.dim().unwrap();
        assert_eq!(&before.betti[..=new_dim], &after.betti[..]);
        assert!(before.betti[new_dim + 1..].iter().all(|&b| b == 0));
        assert_eq!(&before.torsion[..=new_dim], &after.torsion[..]);
    }
}

#[test]
fn dual_graph_regularity_on_closed_pseudomanifolds() {
    for k in [simplex_boundary(3), simplex_boundary(4), icosahedron()] {
        let dim = k.dim().unwrap();
        let dual = k.dual_graph().unwrap();
        assert!(dual.is_k_regular(dim + 1));
    }
    // More generally the dual degree of a facet counts its shared ridges,
    // here on a complex with free ridges.
    let strip = build_complex([vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4]]).unwrap();
    let dual = strip.dual_graph().unwrap();
    assert_eq!(
        (0..3).map(|i| dual.degree(i)).collect::<Vec<_>>(),
        vec![1, 2, 1]
    );
}

#[test]
fn weak_flag_on_pipeline_subcomplex() {
    // The violating subgraph is dually 3-connected, so it defeats the weak
    // conjecture as well.
    let artifacts = pipeline();
    let dual = artifacts.gamma.dual_graph().unwrap();
    assert!(graph::vertex_connectivity(&dual).unwrap() >= 3);
    assert!(graph::naatz_k_connected(&dual, 3).unwrap().holds);
    // And its free-vertex map marks one free triangle opposite each
    // claimed vertex, which is what makes it Perles-shaped.
    let core = compute_core(&artifacts.sphere, &artifacts.gamma).unwrap();
    assert_eq!(core.free_vertex.len(), artifacts.gamma.facet_count());
    for (tet, v) in &core.free_vertex {
        assert!(tet.contains_vertex(*v));
    }
    let _ = Simplex::new(vec![0]).unwrap();
}
