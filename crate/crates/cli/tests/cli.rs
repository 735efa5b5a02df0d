//! End-to-end tests against the built binary: file round-trips, exit-status
//! contract, report determinism, and the counterexample artifact flow.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn perles() -> Command {
    Command::new(env!("CARGO_BIN_EXE_perles"))
}

fn run(args: &[&str]) -> Output {
    perles().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Report body without the ignorable `#` header lines.
fn body(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n")
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).expect("file exists")
}

struct TempDir {
    dir: tempfile::TempDir,
}

impl TempDir {
    fn new() -> Self {
        TempDir { dir: tempfile::tempdir().expect("tempdir") }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn arg(&self, name: &str) -> String {
        self.path(name).display().to_string()
    }
}

#[test]
fn gen_examples_and_round_trip() {
    let tmp = TempDir::new();
    let cyclic = tmp.arg("c47.cplx");
    let out = run(&["gen", "cyclic", "--d", "4", "--n", "7", "--out", &cyclic]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("facets 14"));

    let simplex = tmp.arg("s4.cplx");
    let out = run(&["gen", "simplex", "--d", "4", "--out", &simplex]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("facets 5"));

    let pile = tmp.arg("pile.cplx");
    let out = run(&["gen", "pile", "--extents", "2", "3", "4", "--out", &pile]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("facets 144"));

    // Every emitted file re-parses to an equal canonical object.
    for path in [&cyclic, &simplex, &pile] {
        let text = read(Path::new(path));
        let parsed =
            perles_core::complex::SimplicialComplex::from_cplx(&text).expect("parses");
        assert_eq!(parsed.to_cplx(), text);
    }
}

#[test]
fn gen_rejects_bad_params() {
    let tmp = TempDir::new();
    let out = run(&["gen", "cyclic", "--d", "4", "--n", "3", "--out", &tmp.arg("x.cplx")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error-category: params"));
}

#[test]
fn check_exit_status_and_determinism() {
    let tmp = TempDir::new();
    let cyclic = tmp.arg("c47.cplx");
    assert!(run(&["gen", "cyclic", "--d", "4", "--n", "7", "--out", &cyclic])
        .status
        .success());
    let r1 = tmp.arg("r1.txt");
    let r2 = tmp.arg("r2.txt");
    let out1 = run(&["check", &cyclic, "--report", &r1]);
    assert_eq!(out1.status.code(), Some(0));
    let out2 = run(&["check", &cyclic, "--report", &r2]);
    assert_eq!(out2.status.code(), Some(0));
    assert_eq!(body(&read(Path::new(&r1))), body(&read(Path::new(&r2))));
    assert!(body(&read(Path::new(&r1))).contains("verdict satisfies"));

    // Missing input: usage error with a machine-readable category.
    let out = run(&["check", &tmp.arg("missing.cplx")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error-category: io"));

    // Input violating the precondition: a complex that is not closed.
    let open = tmp.path("open.cplx");
    std::fs::write(&open, "dim 2 vertices 3\n0 1 2\n").unwrap();
    let out = run(&["check", open.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error-category: precondition"));
}

#[test]
fn check_brute_force_and_homology_crosscheck_agree() {
    let tmp = TempDir::new();
    let simplex = tmp.arg("s4.cplx");
    assert!(run(&["gen", "simplex", "--d", "4", "--out", &simplex]).status.success());
    let out = run(&[
        "check",
        &simplex,
        "--brute-force",
        "--homology-crosscheck",
        "--weak",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("brute-force-agrees true"));
    assert!(text.contains("homology-crosscheck-agreements 5/5"));
    assert!(text.contains("weak-violations 0"));
}

#[test]
fn model_generation_flow() {
    let tmp = TempDir::new();
    let tri = tmp.arg("tri.model");
    let seg = tmp.arg("seg.model");
    assert!(run(&["gen", "polygon", "--n", "3", "--out", &tri]).status.success());
    assert!(run(&["gen", "segment", "--out", &seg]).status.success());
    let prism = tmp.arg("prism.model");
    let out = run(&["gen", "product", "--a", &tri, "--b", &seg, "--out", &prism]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("facets 5 vertices 6"));
    let wedge = tmp.arg("wedge.model");
    assert!(run(&["gen", "wedge", "--input", &tri, "--facet", "0", "--out", &wedge])
        .status
        .success());
    let trunc = tmp.arg("trunc.model");
    assert!(run(&["gen", "truncate", "--input", &wedge, "--vertex", "0", "--out", &trunc])
        .status
        .success());
    // Model -> boundary -> check: products of polygons satisfy the
    // conjecture.
    let boundary = tmp.arg("prism.cplx");
    assert!(run(&["gen", "boundary", "--input", &prism, "--out", &boundary])
        .status
        .success());
    assert_eq!(run(&["check", &boundary]).status.code(), Some(0));
}

#[test]
fn homology_and_kconn_subcommands() {
    let tmp = TempDir::new();
    let sphere = tmp.arg("s.cplx");
    assert!(run(&["gen", "sphere-from-pile", "--extents", "1", "1", "1", "--out", &sphere])
        .status
        .success());
    let out = run(&["homology", &sphere]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("betti 1 0 0 1"));
    let out = run(&["kconn", &sphere, "--k", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("agreement true"));
}

#[test]
fn counterexample_verify_and_tamper() {
    let tmp = TempDir::new();
    let dir = tmp.arg("artifact");
    let out = run(&["counterexample", "--out-dir", &dir]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("verdict counterexample"));
    let sphere = format!("{dir}/p_delta.cplx");
    let gamma = format!("{dir}/gamma.cplx");
    let cert = format!("{dir}/certificate.txt");

    // Verify mode on the emitted files reproduces the certificate.
    let report = tmp.arg("verify.txt");
    let out = run(&["verify", "--sphere", &sphere, "--gamma", &gamma, "--report", &report]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(body(&read(Path::new(&cert))), body(&read(Path::new(&report))));

    // The core subcommand extracts the obstruction complex.
    let core = tmp.arg("core.cplx");
    let out = run(&["core", "--sphere", &sphere, "--gamma", &gamma, "--out", &core]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("core-no-free-edge true"));
    assert!(text.contains("core-h2-zero true"));
    assert!(text.contains("gamma-non-separating true"));

    // Tampering with gamma flips the verdict.
    let parsed = perles_core::complex::SimplicialComplex::from_cplx(&read(Path::new(&gamma)))
        .expect("parses");
    let tampered = parsed
        .induced_pure_subcomplex(&(1..parsed.facet_count()).collect::<Vec<_>>())
        .unwrap();
    let bad = tmp.path("tampered.cplx");
    std::fs::write(&bad, tampered.to_cplx()).unwrap();
    let out = run(&["verify", "--sphere", &sphere, "--gamma", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("verdict not-a-counterexample"));
}

#[test]
fn core_subcommand_on_vertex_star() {
    let tmp = TempDir::new();
    let sphere = tmp.arg("s4.cplx");
    assert!(run(&["gen", "simplex", "--d", "4", "--out", &sphere]).status.success());
    // The star of vertex 0 in the boundary of the 4-simplex.
    let star = tmp.path("star.cplx");
    std::fs::write(&star, "dim 3 vertices 5\n0 1 2 3\n0 1 2 4\n0 1 3 4\n0 2 3 4\n").unwrap();
    let core = tmp.arg("core.cplx");
    let out = run(&[
        "core",
        "--sphere",
        &sphere,
        "--gamma",
        star.to_str().unwrap(),
        "--out",
        &core,
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("core-empty true"));
    assert!(text.contains("vertex-star-match 0"));
    assert!(text.contains("empty-iff-vertex-star true"));

    // A subcomplex with facets that have several free ridges is rejected
    // with the offending tetrahedron named.
    let bad = tmp.path("bad.cplx");
    std::fs::write(&bad, "dim 3 vertices 5\n0 1 2 3\n0 1 2 4\n").unwrap();
    let out = run(&[
        "core",
        "--sphere",
        &sphere,
        "--gamma",
        bad.to_str().unwrap(),
        "--out",
        &tmp.arg("nope.cplx"),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("error-category: precondition"));
    assert!(stderr(&out).contains("free ridges"));
}
