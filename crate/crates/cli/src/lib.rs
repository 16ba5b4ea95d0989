//! Command-line front end: graph files in, JSON reports out.
//!
//! Exit codes: 0 on success, 2 on parse or precondition errors, 3 when a
//! closed-form prediction or a second computation route disagrees with the
//! direct result.

pub mod parse;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;

use cospec_core::constructions::{
    cartesian_product, cone_analysis, direct_product, join, product_preservation, ProductKind,
};
use cospec_core::exact::{exact_classify, exact_matrix, ExactAnalyzer};
use cospec_core::partition::{
    amplitude_equality, parse_cells, quotient_matrix, quotient_strong_cospectrality, verify_partition,
};
use cospec_core::twins::{find_twin_classes, twin_theta};
use cospec_core::{decompose, decompose_graph, Error, HermitianMatrix, MatrixFamily, ToleranceConfig};

use parse::{parse_factor, parse_matrix, parse_times, parse_vertices, GraphSource, LabeledGraph, LoadError};
use report::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CROSS_CHECK: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "cospec", version, about = "Strong cospectrality analysis of weighted graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// adjacency | laplacian | signless | normalized-laplacian | gen:a,b,g | gennorm:a,g
    #[arg(long, global = true, default_value = "adjacency")]
    matrix: String,

    /// Named graph `<name>:<params>`, used where no graph file is given.
    #[arg(long, global = true)]
    builtin: Option<String>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,

    /// Eigenvalue clustering tolerance (overrides COSPEC_TOL_EIG).
    #[arg(long, global = true)]
    tol_eig: Option<f64>,

    /// Threshold below which a projected vector counts as zero.
    #[arg(long, global = true)]
    tol_zero: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Spectrum, supports and the verdict for every vertex pair.
    Analyze {
        /// Graph file or `builtin:<name>:<params>`; defaults to `--builtin`.
        graph: Option<String>,
        /// Restrict the pair table to one pair `u,v`.
        #[arg(long)]
        pair: Option<String>,
    },
    /// Twin classes with their forced eigenvalue.
    Twins {
        /// Graph file or `builtin:<name>:<params>`; defaults to `--builtin`.
        graph: Option<String>,
    },
    /// Quotient matrix of an equitable or almost equitable partition.
    Quotient {
        /// Graph file or `builtin:<name>:<params>`; defaults to `--builtin`.
        graph: Option<String>,
        /// Cells such as `0|1|2,3,4,5`.
        #[arg(long)]
        cells: String,
        /// Compare a pair of singleton cells with the full graph.
        #[arg(long)]
        pair: Option<String>,
    },
    /// Transition amplitudes `(e^{itM})_{u,v}`.
    Amplitude {
        /// Graph file or `builtin:<name>:<params>`; defaults to `--builtin`.
        graph: Option<String>,
        /// Vertex pair `u,v`.
        #[arg(long)]
        pair: String,
        /// Comma-separated times; `pi` is accepted.
        #[arg(long)]
        times: String,
        /// Also compute the amplitudes through the quotient by these cells.
        #[arg(long)]
        via_quotient: Option<String>,
    },
    /// Cartesian or direct product of two graphs.
    Product {
        /// One or two graphs; `--builtin` supplies the first when only one is given.
        #[arg(num_args = 1..=2)]
        graphs: Vec<String>,
        #[arg(long, value_enum, default_value = "cartesian")]
        kind: KindArg,
        /// `u,v,w` for ((u,w),(v,w)) or `u,v,w,z` for ((u,w),(v,z)).
        #[arg(long)]
        check_pair: Option<String>,
    },
    /// Join of a complete or empty graph with H.
    Join {
        /// `Kn:n[,omega,eta]` or `On:n[,omega]`.
        #[arg(long)]
        x: String,
        /// Graph file or `builtin:<name>:<params>`.
        #[arg(long)]
        h: Option<String>,
        #[arg(long, default_value = "1")]
        delta: String,
        /// Evaluate the closed-form cone conditions.
        #[arg(long)]
        analyze: bool,
    },
    /// Exact characteristic polynomial certificate for one pair.
    ExactCheck {
        /// Graph file or `builtin:<name>:<params>`; defaults to `--builtin`.
        graph: Option<String>,
        /// Vertex pair `u,v`.
        #[arg(long)]
        pair: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Cartesian,
    Direct,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Load(LoadError),
    Core(Error),
    Output(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Graph(e) => Failure::Core(e),
            e => Failure::Load(e),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(Error::CrossCheck(_) | Error::Verification(_)) => EXIT_CROSS_CHECK,
            _ => EXIT_INPUT,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Output(m) => m.clone(),
            Failure::Load(e) => e.to_string(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

/// Runs the tool with process stdio.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Runs the tool, writing the report (without `--out`) and diagnostics to the
/// given streams. Returns the exit code.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli).and_then(|r| emit(&cli, &r, stdout)) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            f.exit_code()
        }
    }
}

fn emit(cli: &Cli, report: &AnalysisReport, stdout: &mut dyn Write) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(report).map_err(|e| Failure::Output(e.to_string()))?;
    text.push('\n');
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Output(format!("cannot write {path}: {e}"))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Output(e.to_string())),
    }
}

fn tolerance(cli: &Cli) -> Result<ToleranceConfig, Failure> {
    let mut tol = ToleranceConfig::from_env()?;
    if let Some(x) = cli.tol_eig {
        tol.eig_group = x;
    }
    if let Some(x) = cli.tol_zero {
        tol.zero_vec = x;
    }
    tol.validate()?;
    Ok(tol)
}

fn source(cli: &Cli, arg: Option<&String>) -> Result<GraphSource, Failure> {
    match (arg, &cli.builtin) {
        (Some(a), _) => Ok(GraphSource::from_arg(a)),
        (None, Some(b)) => Ok(GraphSource::Builtin(b.clone())),
        (None, None) => Err(Failure::Usage(
            "no graph given (pass a file or --builtin <name>:<params>)".into(),
        )),
    }
}

fn load(src: &GraphSource) -> Result<LabeledGraph, Failure> {
    Ok(src.load()?)
}

fn pair(g: &LabeledGraph, text: &str) -> Result<(usize, usize), Failure> {
    let p = parse_vertices(g, text, &[2])?;
    Ok((p[0], p[1]))
}

fn summary(src: &GraphSource, g: &LabeledGraph) -> GraphSummary {
    GraphSummary::new(src.describe(), &g.graph, g.labels.clone())
}

fn execute(cli: &Cli) -> Result<AnalysisReport, Failure> {
    let tol = tolerance(cli)?;
    let fam = parse_matrix(&cli.matrix)?;
    match &cli.command {
        Command::Analyze { graph, pair: only } => {
            let src = source(cli, graph.as_ref())?;
            let g = load(&src)?;
            analyze(tol, &fam, &src, &g, only.as_deref())
        }
        Command::Twins { graph } => {
            let src = source(cli, graph.as_ref())?;
            let g = load(&src)?;
            let mut r = AnalysisReport::new("twins", tol, &fam, summary(&src, &g));
            r.twins = Some(twin_rows(&g, &fam)?);
            Ok(r)
        }
        Command::Quotient { graph, cells, pair: qp } => {
            let src = source(cli, graph.as_ref())?;
            let g = load(&src)?;
            quotient(tol, &fam, &src, &g, cells, qp.as_deref())
        }
        Command::Amplitude {
            graph,
            pair: p,
            times,
            via_quotient,
        } => {
            let src = source(cli, graph.as_ref())?;
            let g = load(&src)?;
            amplitude(tol, &fam, &src, &g, p, times, via_quotient.as_deref())
        }
        Command::Product {
            graphs,
            kind,
            check_pair,
        } => product(cli, tol, &fam, graphs, *kind, check_pair.as_deref()),
        Command::Join { x, h, delta, analyze } => join_cmd(cli, tol, &fam, x, h.as_ref(), delta, *analyze),
        Command::ExactCheck { graph, pair: p } => {
            let src = source(cli, graph.as_ref())?;
            let g = load(&src)?;
            exact_check(tol, &fam, &src, &g, p)
        }
    }
}

fn analyze(
    tol: ToleranceConfig,
    fam: &MatrixFamily,
    src: &GraphSource,
    g: &LabeledGraph,
    only: Option<&str>,
) -> Result<AnalysisReport, Failure> {
    let d = decompose_graph(&g.graph, fam, tol)?;
    let pairs = match only {
        Some(text) => {
            let (u, v) = pair(g, text)?;
            vec![d.classify_pair(u, v)?]
        }
        None => d.all_pairs(),
    };
    let mut r = AnalysisReport::new("analyze", tol, fam, summary(src, g)).with_spectrum(&d)?;
    r.pairs = Some(pairs.iter().map(PairRow::from).collect());
    r.twins = Some(twin_rows(g, fam)?);
    Ok(r)
}

fn twin_rows(g: &LabeledGraph, fam: &MatrixFamily) -> Result<Vec<TwinRow>, Failure> {
    find_twin_classes(&g.graph)
        .iter()
        .map(|c| {
            Ok(TwinRow {
                vertices: c.vertices.clone(),
                omega: c.omega.to_string(),
                eta: c.eta.to_string(),
                true_twins: c.is_true_twins(),
                theta: Num(twin_theta(&g.graph, fam, c)?),
            })
        })
        .collect()
}

fn quotient(
    tol: ToleranceConfig,
    fam: &MatrixFamily,
    src: &GraphSource,
    g: &LabeledGraph,
    cells: &str,
    qp: Option<&str>,
) -> Result<AnalysisReport, Failure> {
    let part = verify_partition(&g.graph, &parse_cells(cells)?)?;
    let q = quotient_matrix(&g.graph, &part, fam)?;
    let qd = decompose(&HermitianMatrix::from_real(&q.m)?, tol)?;
    let table = |m: &DMatrix<f64>| -> Vec<Vec<Num>> {
        (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| Num(m[(i, j)])).collect())
            .collect()
    };
    let pair_out = match qp {
        Some(text) => {
            let (u, v) = pair(g, text)?;
            let (full, quot) = quotient_strong_cospectrality(&g.graph, fam, u, v, &part, tol)?;
            Some(QuotientPair {
                u,
                v,
                strong_in_graph: full,
                strong_in_quotient: quot,
            })
        }
        None => None,
    };
    let mut r = AnalysisReport::new("quotient", tol, fam, summary(src, g));
    r.quotient = Some(QuotientSection {
        cells: part.cells().to_vec(),
        kind: partition_kind(part.kind()),
        characteristic: table(&q.p),
        matrix: table(&q.m),
        intertwining_residual: Num(q.intertwining_residual),
        eigenvalues: qd.eigenvalues().iter().map(|&x| Num(x)).collect(),
        pair: pair_out,
    });
    Ok(r)
}

fn amplitude(
    tol: ToleranceConfig,
    fam: &MatrixFamily,
    src: &GraphSource,
    g: &LabeledGraph,
    p: &str,
    times: &str,
    via: Option<&str>,
) -> Result<AnalysisReport, Failure> {
    let (u, v) = pair(g, p)?;
    let times = parse_times(times)?;
    let d = decompose_graph(&g.graph, fam, tol)?;
    let samples = times
        .iter()
        .map(|&t| {
            let a = d.transition_amplitude(t, u, v)?;
            Ok(Amplitude {
                t: Num(t),
                re: Num(a.re),
                im: Num(a.im),
                abs: Num(a.norm()),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let via_quotient = match via {
        Some(cells) => {
            let part = verify_partition(&g.graph, &parse_cells(cells)?)?;
            let dev = amplitude_equality(&g.graph, fam, u, v, &part, &times, tol)?;
            Some(ViaQuotient {
                cells: part.cells().to_vec(),
                max_deviation: Num(dev),
            })
        }
        None => None,
    };
    let mut r = AnalysisReport::new("amplitude", tol, fam, summary(src, g));
    r.amplitude = Some(AmplitudeSection {
        u,
        v,
        samples,
        via_quotient,
    });
    Ok(r)
}

fn product(
    cli: &Cli,
    tol: ToleranceConfig,
    fam: &MatrixFamily,
    graphs: &[String],
    kind: KindArg,
    check: Option<&str>,
) -> Result<AnalysisReport, Failure> {
    let (sx, sy) = match (graphs, &cli.builtin) {
        ([x, y], _) => (GraphSource::from_arg(x), GraphSource::from_arg(y)),
        ([y], Some(b)) => (GraphSource::Builtin(b.clone()), GraphSource::from_arg(y)),
        _ => return Err(Failure::Usage("product needs two graphs".into())),
    };
    let (x, y) = (load(&sx)?, load(&sy)?);
    let kind = match kind {
        KindArg::Cartesian => ProductKind::Cartesian,
        KindArg::Direct => ProductKind::Direct,
    };
    let pg = match kind {
        ProductKind::Cartesian => cartesian_product(&x.graph, &y.graph)?,
        ProductKind::Direct => direct_product(&x.graph, &y.graph)?,
    };
    let source = format!("{} {} {}", sx.describe(), product_kind(kind), sy.describe());
    let check_out = match check {
        Some(text) => {
            let parts: Vec<&str> = text.split(',').map(str::trim).collect();
            if parts.len() != 3 && parts.len() != 4 {
                return Err(Failure::Usage(format!("--check-pair `{text}` needs u,v,w or u,v,w,z")));
            }
            let xv = parse_vertices(&x, &parts[..2].join(","), &[2])?;
            let yv = parse_vertices(&y, &parts[2..].join(","), &[1, 2])?;
            let a = product_preservation(
                &x.graph,
                &y.graph,
                kind,
                fam,
                xv[0],
                xv[1],
                yv[0],
                yv.get(1).copied(),
                tol,
            )?;
            Some(ProductCheck::from(&a))
        }
        None => None,
    };
    let mut r = AnalysisReport::new("product", tol, fam, GraphSummary::new(source, &pg, None));
    if pg.is_connected() {
        r = r.with_spectrum(&decompose_graph(&pg, fam, tol)?)?;
    }
    r.product = Some(ProductSection {
        kind: product_kind(kind),
        factor_sizes: [x.graph.n(), y.graph.n()],
        check: check_out,
    });
    Ok(r)
}

fn join_cmd(
    cli: &Cli,
    tol: ToleranceConfig,
    fam: &MatrixFamily,
    x: &str,
    h: Option<&String>,
    delta: &str,
    run_analysis: bool,
) -> Result<AnalysisReport, Failure> {
    let factor = parse_factor(x)?;
    let delta: cospec_core::Scalar = delta
        .parse()
        .map_err(|e: cospec_core::scalar::ParseScalarError| Failure::Usage(e.to_string()))?;
    let sh = source(cli, h)?;
    let hg = load(&sh)?;
    let g = join(&factor, &hg.graph, delta.clone())?;
    let source = format!("{x} join {}", sh.describe());
    let mut r = AnalysisReport::new("join", tol, fam, GraphSummary::new(source, &g, None));
    let d = decompose_graph(&g, fam, tol)?;
    r = r.with_spectrum(&d)?;
    let mut section = JoinSection {
        x: x.to_string(),
        delta: delta.to_string(),
        n_apexes: factor.n(),
        checks: None,
        pairs: None,
    };
    if run_analysis {
        section = section.with_cone(&cone_analysis(&factor, &hg.graph, fam, delta, tol)?);
    }
    r.join = Some(section);
    Ok(r)
}

fn exact_check(
    tol: ToleranceConfig,
    fam: &MatrixFamily,
    src: &GraphSource,
    g: &LabeledGraph,
    p: &str,
) -> Result<AnalysisReport, Failure> {
    let (u, v) = pair(g, p)?;
    let m = exact_matrix(&g.graph, fam)?;
    let direct = exact_classify(&m, u, v)?;
    let jacobi = ExactAnalyzer::new(&m).classify(u, v)?;
    if direct != jacobi {
        return Err(Error::CrossCheck(format!("the two exact routes disagree on ({u},{v})")).into());
    }
    let d = decompose_graph(&g.graph, fam, tol)?;
    let numeric = d.classify_pair(u, v)?;
    let verdicts = |a: bool, b: bool, c: bool| (a, b, c);
    if verdicts(direct.cospectral, direct.parallel, direct.strongly_cospectral)
        != verdicts(numeric.cospectral, numeric.parallel, numeric.strongly_cospectral)
    {
        return Err(Error::CrossCheck(format!("exact and numeric verdicts disagree on ({u},{v})")).into());
    }
    let mut r = AnalysisReport::new("exact-check", tol, fam, summary(src, g)).with_spectrum(&d)?;
    r.exact = Some(ExactSection::new(&direct, &numeric));
    Ok(r)
}
