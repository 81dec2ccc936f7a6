use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stabgeom::format::{parse_coding_set, parse_generators, parse_graph, parse_restriction, write_coding_set, write_generators};
use stabgeom::oracle::{code_projector, kl_detect, ErrorSet};
use stabgeom::recipe::{assess, code_distance, run_recipe, RecipeConfig};
use stabgeom::search::{candidates_and_gamma, graph_to_generators, CodingSet, CompatibilityGraph};
use stabgeom::{find_cliques, lines_from_matrix, CliqueMode, Error, FpVector, LabelledGraph, PrimeModulus, ProjSubspace, Projection, StabiliserGroup};

/// Stabiliser codes from quantum line sets: search, distance bounds and dense verification.
#[derive(Parser)]
#[command(name = "stabgeom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a generator file (commuting, full rank) and its line set.
    Validate(Source),
    /// Minimum size of a dependent set of points, or a distance bound for a coding set.
    Distance {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        tset: Option<PathBuf>,
        /// Search cap; defaults to n.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Project the line set from the span of the vectors in a coding-set file.
    Project {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        centre: PathBuf,
    },
    /// Candidate points and the compatibility graph.
    Gamma(SearchArgs),
    /// Maximum (or greedy maximal) cliques of the compatibility graph.
    Cliques {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        clique_mode: Mode,
        /// Seconds.
        #[arg(long)]
        time_limit: Option<f64>,
    },
    /// Graph to code, end to end.
    Recipe {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        restrict: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        clique_mode: Mode,
        #[arg(long)]
        time_limit: Option<f64>,
        /// Coding-set file with the `k` centre vectors.
        #[arg(long)]
        centre: Option<PathBuf>,
        /// Also write the coding set to this file.
        #[arg(long)]
        write_tset: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Dense Knill-Laflamme check of Q(S, T) against all errors of weight below d.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        tset: PathBuf,
        /// Target distance; defaults to the computed bound.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Extend the group to a maximal abelian one.
    Extend(Source),
}

/// Where the group comes from: a generator file, a graph file, or the cycle on `--n` vertices.
#[derive(Args)]
struct Source {
    #[arg(long, conflicts_with = "graph")]
    gens: Option<PathBuf>,
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    p: u32,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    restrict: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Greedy,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

impl From<Mode> for CliqueMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exact => CliqueMode::Exact,
            Mode::Greedy => CliqueMode::Greedy,
        }
    }
}

enum Failure {
    /// Bad input; exit code 2.
    Input(String),
    /// A check ran and failed; exit code 1.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Runs a parser on a file, prefixing errors with the file name.
fn load<T>(path: &Path, parse: impl FnOnce(&str) -> stabgeom::Result<T>) -> Result<T, Failure> {
    let text = read(path)?;
    parse(&text).map_err(|e| match e {
        Error::Parse { line, message } => Failure::Input(format!("{}:{line}: {message}", path.display())),
        e => Failure::Input(format!("{}: {e}", path.display())),
    })
}

impl Source {
    fn modulus(&self) -> Result<PrimeModulus, Failure> {
        Ok(PrimeModulus::new(self.p)?)
    }

    fn graph(&self) -> Result<LabelledGraph, Failure> {
        match (&self.graph, self.n) {
            (Some(path), _) => load(path, parse_graph),
            (None, Some(n)) => {
                if n < 3 {
                    return Err(Failure::Input("the cycle needs at least 3 vertices".into()));
                }
                Ok(LabelledGraph::cycle(self.modulus()?, n))
            }
            (None, None) => Err(Failure::Input("give --graph FILE or --n N".into())),
        }
    }

    fn group(&self) -> Result<StabiliserGroup, Failure> {
        match &self.gens {
            Some(path) => load(path, parse_generators),
            None => Ok(graph_to_generators(&self.graph()?)?),
        }
    }
}

fn restriction(path: Option<&PathBuf>, p: PrimeModulus, ambient: usize) -> Result<Option<ProjSubspace>, Failure> {
    path.map(|path| load(path, |t| parse_restriction(p, ambient, t))).transpose()
}

fn coding_set(path: &Path, s: &StabiliserGroup) -> Result<CodingSet, Failure> {
    let t = load(path, parse_coding_set)?;
    if t.modulus() != s.modulus() || t.vector_len() != s.rank() {
        return Err(Failure::Input(format!(
            "{}: expected vectors of length {} over F_{}, found length {} over F_{}",
            path.display(),
            s.rank(),
            s.modulus(),
            t.vector_len(),
            t.modulus()
        )));
    }
    Ok(t)
}

fn centre_vectors(path: &Path, s: &StabiliserGroup) -> Result<Vec<FpVector>, Failure> {
    let t = coding_set(path, s)?;
    Ok(t.nonzero().cloned().collect())
}

fn time_limit(secs: Option<f64>) -> Result<Option<Duration>, Failure> {
    secs.map(|s| Duration::try_from_secs_f64(s).map_err(|_| Failure::Input(format!("invalid time limit {s}")))).transpose()
}

fn validate(src: &Source) -> Outcome {
    let s = src.group()?;
    let mut out = format!("valid: p={} n={} k={} rank={}\n", s.modulus(), s.n(), s.k(), s.rank());
    match lines_from_matrix(s.gmatrix()) {
        Ok(x) => {
            let skew = x.validate_even_skew()?;
            let _ = writeln!(out, "lines={} ambient={} incident_points={}", x.len(), x.ambient(), x.incident_points().len());
            if s.modulus().get() == 2 {
                let _ = writeln!(out, "even_skew={skew}");
            }
        }
        Err(Error::DegenerateLine { line }) => {
            let _ = writeln!(out, "columns of qubit {line} do not span a line; no line set");
        }
        Err(e) => return Err(e.into()),
    }
    Ok(out)
}

fn distance(src: &Source, tset: Option<&PathBuf>, limit: Option<usize>) -> Outcome {
    let s = src.group()?;
    let x = lines_from_matrix(s.gmatrix())?;
    let limit = limit.unwrap_or(s.n());
    let d = match tset {
        Some(path) => code_distance(&x, &coding_set(path, &s)?, limit)?.0,
        None => x.min_dependent_set(limit),
    };
    Ok(format!("{d}\n"))
}

fn project(src: &Source, centre: &Path) -> Outcome {
    let s = src.group()?;
    let vs = centre_vectors(centre, &s)?;
    let x = lines_from_matrix(s.gmatrix())?;
    x.project_lines(&vs)?;
    let proj = Projection::from_vectors(s.modulus(), s.rank(), &vs)?;
    let sp = StabiliserGroup::from_matrix(&proj.image_columns(s.gmatrix()))?;
    Ok(write_generators(&sp))
}

fn build_gamma(args: &SearchArgs) -> Result<CompatibilityGraph, Failure> {
    let s = args.source.group()?;
    let x = lines_from_matrix(s.gmatrix())?;
    let pi = restriction(args.restrict.as_ref(), s.modulus(), x.ambient())?;
    Ok(candidates_and_gamma(&x, args.d, pi.as_ref())?)
}

fn gamma(args: &SearchArgs) -> Outcome {
    let g = build_gamma(args)?;
    let mut out = format!("vertices={}\nedges={}\n", g.vertex_count(), g.edge_count());
    if args.format == Format::Text {
        for (i, v) in g.vertices().iter().enumerate() {
            let _ = writeln!(out, "v{i} {v} degree={}", g.degree(i));
        }
        for (i, j) in g.edges() {
            let _ = writeln!(out, "e {i} {j}");
        }
    }
    Ok(out)
}

fn cliques(args: &SearchArgs, mode: Mode, limit: Option<f64>) -> Outcome {
    let g = build_gamma(args)?;
    let (found, timed_out) = match find_cliques(&g, mode.into(), time_limit(limit)?) {
        Ok(c) => (c, false),
        Err(Error::TimeLimitExceeded { best }) => (vec![best], true),
        Err(e) => return Err(e.into()),
    };
    let size = found.first().map_or(0, Vec::len);
    let mut out = format!("cliques_found={}\nsize={size}\n", found.len());
    if timed_out {
        out.push_str("warning: time limit reached; best clique so far\n");
    }
    if args.format == Format::Text {
        for c in &found {
            let pts: Vec<String> = c.iter().map(|&i| g.vertices()[i].to_string()).collect();
            let _ = writeln!(out, "{}", pts.join(" "));
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn recipe(
    src: &Source,
    d: usize,
    k: usize,
    restrict: Option<&PathBuf>,
    mode: Mode,
    limit: Option<f64>,
    centre: Option<&PathBuf>,
    write_tset: Option<&PathBuf>,
    format: Format,
) -> Outcome {
    let g = src.graph()?;
    let s = graph_to_generators(&g)?;
    let mut cfg = RecipeConfig::new(d, k);
    cfg.clique_mode = mode.into();
    cfg.time_limit = time_limit(limit)?;
    if let Some(path) = centre {
        cfg.centre = Some(centre_vectors(path, &s)?);
    }
    // the restriction lives in the projected space, of dimension n − k
    cfg.restriction = restriction(restrict, g.modulus(), s.rank().saturating_sub(k))?;
    let report = run_recipe(&g, &cfg)?;
    if let Some(path) = write_tset {
        fs::write(path, write_coding_set(&report.coding_set)).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(match format {
        Format::Text => report.to_text(),
        Format::Machine => report.to_machine(),
    })
}

fn verify(src: &Source, tset: &Path, d: Option<usize>, format: Format) -> Outcome {
    let s = src.group()?;
    let t = coding_set(tset, &s)?;
    let d = match d {
        Some(d) => d,
        None => assess(&s, &t, s.n())?.d_bound.lower_bound(),
    };
    let pr = code_projector(&s, &t)?;
    let errs = ErrorSet::up_to_weight(s.modulus(), s.n(), d.saturating_sub(1));
    let kl = kl_detect(&pr, &errs)?;
    let verdict = if kl.pass { "pass" } else { "fail" };
    let mut out = match format {
        Format::Text => format!(
            "KL {verdict}, dim={}, errors={} (weight <= {}), max_residual={:.3e}\n",
            kl.dim,
            errs.len(),
            d.saturating_sub(1),
            kl.max_residual
        ),
        Format::Machine => format!("kl={verdict}\ndim={}\nerrors={}\nmax_weight={}\nmax_residual={:e}\n", kl.dim, errs.len(), d.saturating_sub(1), kl.max_residual),
    };
    match kl.first_failure {
        None => Ok(out),
        Some(i) => {
            let _ = writeln!(out, "first failing error: {}", errs.errors()[i]);
            Err(Failure::Check(out))
        }
    }
}

fn extend(src: &Source) -> Outcome {
    Ok(write_generators(&src.group()?.extend_to_maximal_abelian()))
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Validate(src) => validate(src),
        Command::Distance { source, tset, limit } => distance(source, tset.as_ref(), *limit),
        Command::Project { source, centre } => project(source, centre),
        Command::Gamma(args) => gamma(args),
        Command::Cliques { search, clique_mode, time_limit } => cliques(search, *clique_mode, *time_limit),
        Command::Recipe { source, d, k, restrict, clique_mode, time_limit, centre, write_tset, format } => {
            recipe(source, *d, *k, restrict.as_ref(), *clique_mode, *time_limit, centre.as_ref(), write_tset.as_ref(), *format)
        }
        Command::Verify { source, tset, d, format } => verify(source, tset, *d, *format),
        Command::Extend(src) => extend(src),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
