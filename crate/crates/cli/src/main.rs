//! Command-line front end: generators, conjecture checks, core extraction,
//! homology, connectivity, and the counterexample pipeline.
//!
//! Exit status: 0 on success (and, for `check`/`counterexample`/`verify`,
//! a positive verdict), 1 when a check ran but the verdict is negative,
//! 2 on usage, parse, or precondition errors. Errors print a
//! machine-readable `error-category:` line on stderr. Reports are
//! deterministic apart from `#`-prefixed header lines.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};

use perles_core::complex::SimplicialComplex;
use perles_core::counterexample::{build_counterexample, verify_certificate};
use perles_core::generators::{
    cyclic_facets_gale, pile_triangulation, polygon_model, product_model, segment_model,
    simplex_boundary, sphere_from_pile, stacked_boundary, truncate_vertex_model, wedge_model,
    CyclicSpec, PileSpec,
};
use perles_core::graph;
use perles_core::homology::homology_profile;
use perles_core::perles::{
    boundary_complex, brute_force_perles_subgraphs, check_conjecture, compute_core,
    check_obstruction, gamma_of_subgraph, SimplePolytopeModel,
};

#[derive(Parser)]
#[command(name = "perles", version, about = "Perles-conjecture machinery for simple polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a complex or model file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Check Perles' conjecture on a simplicial boundary (.cplx).
    Check(CheckArgs),
    /// Compute the core of a subcomplex and run the obstruction checks.
    Core(CoreArgs),
    /// Exact homology profile of a complex.
    Homology { input: PathBuf },
    /// Vertex connectivity of the dual graph, cross-checked by the
    /// distance-2 criterion.
    Kconn {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Build the 4-dimensional counterexample and verify its certificate.
    Counterexample {
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Verify a counterexample certificate from its two facet lists.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum GenKind {
    /// Boundary of the d-simplex (.cplx).
    Simplex {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Cyclic polytope boundary via Gale's evenness criterion (.cplx).
    Cyclic {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Stacked sphere: comma-separated facet indices (.cplx).
    Stacked {
        #[arg(long)]
        d: usize,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        steps: Vec<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Freudenthal triangulation of a cube pile (.cplx).
    Pile {
        #[arg(long, num_args = 3)]
        extents: Vec<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Capped pile: a simplicial 3-sphere (.cplx).
    SphereFromPile {
        #[arg(long, num_args = 3)]
        extents: Vec<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Simple 1-polytope model (.model).
    Segment {
        #[arg(long)]
        out: PathBuf,
    },
    /// n-gon model (.model).
    Polygon {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Product of two models (.model).
    Product {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Wedge of a model over one of its facets (.model).
    Wedge {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        facet: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Vertex truncation of a model (.model).
    Truncate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        vertex: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Simplicial boundary dual to a model (.cplx).
    Boundary {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct CheckArgs {
    input: PathBuf,
    /// Also check violations against the weak conjecture.
    #[arg(long)]
    weak: bool,
    /// Cross-check the enumerator against the exhaustive subset scan.
    #[arg(long)]
    brute_force: bool,
    /// Cross-check graph-level separation against second homology.
    #[arg(long)]
    homology_crosscheck: bool,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct CoreArgs {
    #[arg(long)]
    sphere: PathBuf,
    #[arg(long)]
    gamma: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    sphere: PathBuf,
    #[arg(long)]
    gamma: PathBuf,
    #[arg(long)]
    report: Option<PathBuf>,
}

struct CliError {
    category: &'static str,
    message: String,
}

impl CliError {
    fn new(category: &'static str, message: impl Into<String>) -> Self {
        CliError { category, message: message.into() }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            eprintln!("error-category: {}", e.category);
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Gen { kind } => run_gen(kind).map(|()| 0),
        Command::Check(args) => run_check(args),
        Command::Core(args) => run_core(args).map(|()| 0),
        Command::Homology { input } => run_homology(&input).map(|()| 0),
        Command::Kconn { input, k } => run_kconn(&input, k).map(|()| 0),
        Command::Counterexample { out_dir } => run_counterexample(&out_dir),
        Command::Verify(args) => run_verify(args),
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::new("io", format!("reading {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::new("io", format!("writing {}: {e}", path.display())))
}

fn read_complex(path: &Path) -> Result<SimplicialComplex> {
    SimplicialComplex::from_cplx(&read_file(path)?)
        .map_err(|e| CliError::new("parse", format!("{}: {e}", path.display())))
}

fn read_model(path: &Path) -> Result<SimplePolytopeModel> {
    SimplePolytopeModel::from_model_text(&read_file(path)?)
        .map_err(|e| CliError::new("parse", format!("{}: {e}", path.display())))
}

fn report_header() -> String {
    let ts = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("# generated-by perles\n# timestamp {ts}\n")
}

fn emit_complex(k: &SimplicialComplex, out: &Path) -> Result<()> {
    write_file(out, &k.to_cplx())?;
    let closed = k
        .is_closed_pseudomanifold()
        .map(|v| v.is_closed())
        .unwrap_or(false);
    println!(
        "written {} facets {} vertices {} dim {} closed-pseudomanifold {}",
        out.display(),
        k.facet_count(),
        k.vertex_count(),
        k.dim().map(|d| d as i64).unwrap_or(-1),
        closed
    );
    Ok(())
}

fn emit_model(m: &SimplePolytopeModel, out: &Path) -> Result<()> {
    write_file(out, &m.to_model_text())?;
    println!(
        "written {} facets {} vertices {} dim {} simple ok",
        out.display(),
        m.facet_count(),
        m.vertex_count(),
        m.dim()
    );
    Ok(())
}

fn bad_params(msg: impl Into<String>) -> CliError {
    CliError::new("params", msg)
}

fn run_gen(kind: GenKind) -> Result<()> {
    match kind {
        GenKind::Simplex { d, out } => {
            if d < 1 {
                return Err(bad_params("simplex boundary needs d >= 1"));
            }
            emit_complex(&simplex_boundary(d), &out)
        }
        GenKind::Cyclic { d, n, out } => {
            let k = cyclic_facets_gale(CyclicSpec { d, n })
                .map_err(|e| bad_params(e.to_string()))?;
            emit_complex(&k, &out)
        }
        GenKind::Stacked { d, steps, out } => {
            let k = stacked_boundary(d, &steps).map_err(|e| bad_params(e.to_string()))?;
            emit_complex(&k, &out)
        }
        GenKind::Pile { extents, out } => {
            let spec = pile_spec(&extents)?;
            emit_complex(&pile_triangulation(spec), &out)
        }
        GenKind::SphereFromPile { extents, out } => {
            let spec = pile_spec(&extents)?;
            emit_complex(&sphere_from_pile(spec), &out)
        }
        GenKind::Segment { out } => emit_model(&segment_model(), &out),
        GenKind::Polygon { n, out } => {
            let m = polygon_model(n).map_err(|e| bad_params(e.to_string()))?;
            emit_model(&m, &out)
        }
        GenKind::Product { a, b, out } => {
            let ma = read_model(&a)?;
            let mb = read_model(&b)?;
            let m = product_model(&ma, &mb).map_err(|e| bad_params(e.to_string()))?;
            emit_model(&m, &out)
        }
        GenKind::Wedge { input, facet, out } => {
            let m = read_model(&input)?;
            let w = wedge_model(&m, facet).map_err(|e| bad_params(e.to_string()))?;
            emit_model(&w, &out)
        }
        GenKind::Truncate { input, vertex, out } => {
            let m = read_model(&input)?;
            let t = truncate_vertex_model(&m, vertex).map_err(|e| bad_params(e.to_string()))?;
            emit_model(&t, &out)
        }
        GenKind::Boundary { input, out } => {
            let m = read_model(&input)?;
            let k = boundary_complex(&m).map_err(|e| bad_params(e.to_string()))?;
            emit_complex(&k, &out)
        }
    }
}

fn pile_spec(extents: &[usize]) -> Result<PileSpec> {
    if extents.len() != 3 {
        return Err(bad_params("--extents takes three values"));
    }
    PileSpec::new(extents[0], extents[1], extents[2]).map_err(|e| bad_params(e.to_string()))
}

fn run_check(args: CheckArgs) -> Result<u8> {
    let t0 = Instant::now();
    let delta = read_complex(&args.input)?;
    let report = check_conjecture(&delta)
        .map_err(|e| CliError::new("precondition", e.to_string()))?;
    let mut text = report_header();
    let _ = writeln!(text, "# elapsed-ms {}", t0.elapsed().as_millis());
    text.push_str(&report.render(&args.input.display().to_string()));
    if args.weak {
        let weak = report.violations.iter().filter(|v| v.weak_perles).count();
        let _ = writeln!(text, "weak-violations {weak}");
    }
    if args.brute_force {
        let model = perles_core::perles::from_simplicial_boundary(&delta)
            .map_err(|e| CliError::new("precondition", e.to_string()))?;
        let brute = brute_force_perles_subgraphs(&model)
            .map_err(|e| CliError::new("precondition", e.to_string()))?;
        let fast: Vec<_> = report.candidates.iter().map(|(c, _)| c.clone()).collect();
        let agree = brute == fast;
        let _ = writeln!(text, "brute-force-agrees {agree}");
        if !agree {
            write_report(&args.report, &text)?;
            return Err(CliError::new(
                "internal",
                "enumerator disagrees with the exhaustive scan",
            ));
        }
    }
    if args.homology_crosscheck {
        let mut agreements = 0usize;
        let total = report.candidates.len();
        let d = report.dimension;
        for (cand, _) in &report.candidates {
            let gamma = gamma_of_subgraph(&delta, &cand.vertices)
                .map_err(|e| CliError::new("precondition", e.to_string()))?;
            let profile = homology_profile(&gamma)
                .map_err(|e| CliError::new("precondition", e.to_string()))?;
            let non_separating_by_homology = profile.betti[d - 2] == 0;
            if non_separating_by_homology == cand.complement_connected {
                agreements += 1;
            }
        }
        let _ = writeln!(text, "homology-crosscheck-agreements {agreements}/{total}");
        if agreements != total {
            write_report(&args.report, &text)?;
            return Err(CliError::new(
                "internal",
                "graph-level and homology-level separation disagree",
            ));
        }
    }
    print!("{text}");
    write_report(&args.report, &text)?;
    Ok(if report.satisfies() { 0 } else { 1 })
}

fn write_report(path: &Option<PathBuf>, text: &str) -> Result<()> {
    if let Some(path) = path {
        write_file(path, text)?;
    }
    Ok(())
}

fn run_core(args: CoreArgs) -> Result<()> {
    let sphere = read_complex(&args.sphere)?;
    let gamma = read_complex(&args.gamma)?;
    let core = compute_core(&sphere, &gamma)
        .map_err(|e| CliError::new("precondition", e.to_string()))?;
    let obstruction = check_obstruction(&sphere, &gamma, &core)
        .map_err(|e| CliError::new("precondition", e.to_string()))?;
    write_file(&args.out, &core.triangles.to_cplx())?;
    let mut text = report_header();
    let _ = writeln!(text, "core-triangles {}", core.triangles.facet_count());
    let _ = writeln!(text, "core-empty {}", obstruction.core_empty);
    let _ = writeln!(text, "core-no-free-edge {}", obstruction.core_no_free_edge);
    let _ = writeln!(
        text,
        "vertex-star-match {}",
        obstruction
            .vertex_star_match
            .map(|v| v.to_string())
            .unwrap_or_else(|| "none".into())
    );
    let _ = writeln!(text, "empty-iff-vertex-star {}", obstruction.empty_iff_vertex_star);
    let _ = writeln!(text, "gamma-non-separating {}", obstruction.gamma_non_separating);
    let _ = writeln!(
        text,
        "core-h2-zero {}",
        obstruction
            .core_h2_zero
            .map(|b| b.to_string())
            .unwrap_or_else(|| "not-checked".into())
    );
    let _ = writeln!(
        text,
        "core-dually-connected {}",
        obstruction
            .core_dually_connected
            .map(|b| b.to_string())
            .unwrap_or_else(|| "empty".into())
    );
    print!("{text}");
    write_report(&args.report, &text)?;
    println!("written {}", args.out.display());
    Ok(())
}

fn run_homology(input: &Path) -> Result<()> {
    let k = read_complex(input)?;
    let profile =
        homology_profile(&k).map_err(|e| CliError::new("precondition", e.to_string()))?;
    let betti: Vec<String> = profile.betti.iter().map(|b| b.to_string()).collect();
    println!("betti {}", betti.join(" "));
    for (k, divs) in profile.torsion.iter().enumerate() {
        if !divs.is_empty() {
            let ds: Vec<String> = divs.iter().map(|d| d.to_string()).collect();
            println!("torsion {} {}", k, ds.join(" "));
        }
    }
    Ok(())
}

fn run_kconn(input: &Path, k: usize) -> Result<()> {
    let complex = read_complex(input)?;
    let dual = complex
        .dual_graph()
        .map_err(|e| CliError::new("precondition", e.to_string()))?;
    let kappa = graph::vertex_connectivity(&dual)
        .map_err(|e| CliError::new("precondition", e.to_string()))?;
    let naatz = graph::naatz_k_connected(&dual, k)
        .map_err(|e| CliError::new("precondition", e.to_string()))?;
    println!("dual-vertex-connectivity {kappa}");
    println!("naatz-{k}-connected {}", naatz.holds);
    println!("agreement {}", naatz.holds == (kappa >= k));
    Ok(())
}

fn run_counterexample(out_dir: &Path) -> Result<u8> {
    std::fs::create_dir_all(out_dir)
        .map_err(|e| CliError::new("io", format!("creating {}: {e}", out_dir.display())))?;
    let t0 = Instant::now();
    let artifacts =
        build_counterexample().map_err(|e| CliError::new("pipeline", e.to_string()))?;
    let sphere_path = out_dir.join("p_delta.cplx");
    let gamma_path = out_dir.join("gamma.cplx");
    let cert_path = out_dir.join("certificate.txt");
    write_file(&sphere_path, &artifacts.sphere.to_cplx())?;
    write_file(&gamma_path, &artifacts.gamma.to_cplx())?;
    let mut text = report_header();
    let _ = writeln!(text, "# elapsed-ms {}", t0.elapsed().as_millis());
    text.push_str(&artifacts.certificate.render());
    write_file(&cert_path, &text)?;
    print!("{text}");
    println!(
        "written {} {} {}",
        sphere_path.display(),
        gamma_path.display(),
        cert_path.display()
    );
    Ok(if artifacts.certificate.is_counterexample() { 0 } else { 1 })
}

fn run_verify(args: VerifyArgs) -> Result<u8> {
    let sphere = read_complex(&args.sphere)?;
    let gamma = read_complex(&args.gamma)?;
    let t0 = Instant::now();
    let certificate = verify_certificate(&sphere, &gamma);
    let mut text = report_header();
    let _ = writeln!(text, "# elapsed-ms {}", t0.elapsed().as_millis());
    text.push_str(&certificate.render());
    print!("{text}");
    write_report(&args.report, &text)?;
    Ok(if certificate.is_counterexample() { 0 } else { 1 })
}
