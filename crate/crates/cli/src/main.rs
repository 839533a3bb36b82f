use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rickard::qrep::Chevalley;
use rickard::tableaux::Partition;
use rickard::Weight;
use rickard_cli::config::{parse_type, Bounds, Format, SuiteConfig, SuiteId};
use rickard_cli::emit::{self, EmitError};

#[derive(Parser)]
#[command(name = "rickard", version, about = "Exact verification suites for braid group actions, crystals and cells")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites and print a report.
    Run(RunArgs),
    /// Write a single artifact (graph, table, trace).
    Emit(EmitArgs),
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, env = "RICKARD_MAX_NODES")]
    max_nodes: Option<usize>,
    #[arg(long, env = "RICKARD_MAX_SN")]
    max_sn: Option<usize>,
    #[arg(long, env = "RICKARD_MAX_BASIS")]
    max_basis: Option<usize>,
}

impl BoundArgs {
    fn bounds(&self) -> Bounds {
        let d = Bounds::default();
        Bounds {
            max_basis: self.max_basis.unwrap_or(d.max_basis),
            max_nodes: self.max_nodes.unwrap_or(d.max_nodes),
            max_sn: self.max_sn.unwrap_or(d.max_sn),
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// Suites to run (repeatable or comma-separated); default all.
    #[arg(long, value_enum, value_delimiter = ',')]
    suite: Vec<SuiteId>,
    #[arg(long = "type", value_parser = parse_type, requires = "rank")]
    ty: Option<rickard::CartanType>,
    #[arg(long, requires = "ty")]
    rank: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Fundamental coordinates, comma-separated.
    #[arg(long, value_parser = parse_weight)]
    weight: Option<Weight>,
    #[command(flatten)]
    bounds: BoundArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include per-task wall time (breaks byte-determinism).
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Artifact {
    Crystal,
    Wgraph,
    KlTable,
    Trace,
    Zigzag,
    Tableau,
}

#[derive(Clone, Copy, ValueEnum)]
enum Flavor {
    E,
    F,
}

#[derive(Args)]
struct EmitArgs {
    #[arg(value_enum)]
    artifact: Artifact,
    #[arg(long = "type", value_parser = parse_type, default_value = "A")]
    ty: rickard::CartanType,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_parser = parse_weight)]
    weight: Option<Weight>,
    /// Partition for `wgraph`, e.g. 2,2.
    #[arg(long)]
    shape: Option<String>,
    /// Source marked word for `trace`, e.g. 1,2,_1.
    #[arg(long)]
    source: Option<String>,
    #[arg(long)]
    target: Option<String>,
    #[arg(long, value_enum, default_value = "f")]
    flavor: Flavor,
    /// Word for `zigzag` (1-based nodes); default w0.
    #[arg(long, value_delimiter = ',')]
    word: Vec<usize>,
    /// Tableau for `tableau`, rows separated by `/`.
    #[arg(long)]
    tableau: Option<String>,
    #[command(flatten)]
    bounds: BoundArgs,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_weight(s: &str) -> Result<Weight, String> {
    Weight::parse(s).map_err(|e| e.to_string())
}

fn write_out(out: Option<&PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(a: RunArgs) -> Result<bool, String> {
    let cfg = SuiteConfig {
        suites: if a.suite.is_empty() { SuiteId::ALL.to_vec() } else { a.suite },
        datum: a.ty.zip(a.rank),
        k: a.k,
        n: a.n,
        weight: a.weight,
        bounds: a.bounds.bounds(),
        format: a.format,
        jobs: a.jobs,
        seed: a.seed,
        timings: a.timings,
    };
    let report = rickard_cli::run(&cfg)?;
    write_out(a.out.as_ref(), &report.render(cfg.format))?;
    if a.out.is_some() {
        let s = &report.summary;
        eprintln!("{} records, {} failed", s.records, s.failed);
    }
    Ok(report.ok())
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, EmitError> {
    v.ok_or_else(|| EmitError::Usage(format!("missing --{flag}")))
}

fn emit(a: EmitArgs) -> Result<String, EmitError> {
    let b = a.bounds.bounds();
    match a.artifact {
        Artifact::Crystal => {
            let w = need(a.weight, "weight")?;
            let rank = a.rank.unwrap_or(w.rank());
            emit::crystal(a.ty, rank, &w, b.max_nodes, a.format.unwrap_or(Format::Dot))
        }
        Artifact::KlTable => emit::kl_table(need(a.n, "n")?, b.max_sn, a.format.unwrap_or(Format::Tsv)),
        Artifact::Wgraph => {
            let shape = match &a.shape {
                Some(s) => Some(parse_partition(s)?),
                None => None,
            };
            let n = a.n.or(shape.as_ref().map(Partition::size));
            emit::wgraph(need(n, "n")?, shape.as_ref(), b.max_sn)
        }
        Artifact::Trace => {
            let w = need(a.weight, "weight")?;
            let rank = a.rank.unwrap_or(w.rank());
            let fl = match a.flavor {
                Flavor::E => Chevalley::E,
                Flavor::F => Chevalley::F,
            };
            emit::trace(a.ty, rank, &need(a.source, "source")?, &need(a.target, "target")?, &w, fl)
        }
        Artifact::Zigzag => {
            let rank = need(a.rank, "rank")?;
            if a.word.contains(&0) {
                return Err(EmitError::Usage("nodes are 1-based".into()));
            }
            let w: Vec<usize> = a.word.iter().map(|i| i - 1).collect();
            emit::zigzag(a.ty, rank, (!w.is_empty()).then_some(&w[..]), a.format.unwrap_or(Format::Text))
        }
        Artifact::Tableau => emit::tableau(&need(a.tableau, "tableau")?),
    }
}

fn parse_partition(s: &str) -> Result<Partition, EmitError> {
    let parts: Result<Vec<usize>, _> = s.split(',').map(|x| x.trim().parse::<usize>()).collect();
    let parts = parts.map_err(|e| EmitError::Usage(format!("bad shape {s:?}: {e}")))?;
    Ok(Partition::new(parts)?)
}

fn main() -> ExitCode {
    match Cli::parse().cmd {
        Cmd::Run(a) => match run(a) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Cmd::Emit(a) => {
            let out = a.out.clone();
            match emit(a).map_err(|e| e.to_string()).and_then(|t| write_out(out.as_ref(), &t)) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
    }
}
