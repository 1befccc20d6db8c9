use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use walknet::cli::{self, Figure, SweepSpec, MEASURE_COLUMNS, SWEEP_COLUMNS};
use walknet::metrics::AsplPolicy;
use walknet::{generate, DistanceModel, Error, GenParams, Graph, InitialGraphSpec, RngSeed};

#[derive(Parser, Debug)]
#[command(
    name = "walknet",
    version,
    about = "Random-walk network generator and analyzer"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Grow a graph and write it as an edge list.
    Generate(GenerateArgs),
    /// Measure an edge-list graph and print one CSV row.
    #[command(
        after_help = "Columns: n_nodes,n_edges,avg_local_clustering,transitivity,avg_shortest_path,gamma,max_degree,aspl_mode"
    )]
    Measure(MeasureArgs),
    /// Run a parameter grid and write one CSV row per run.
    #[command(after_help = SWEEP_HELP)]
    Sweep(SweepArgs),
    /// Aggregate a sweep CSV into an x,y series.
    Plotdata(PlotdataArgs),
}

const SWEEP_HELP: &str = "Columns: cell,rep,p1,m,N,N_full,scale,special_edges,initial,beta,epsilon,seed,\
n_nodes,n_edges,avg_local_clustering,transitivity,avg_shortest_path,gamma,max_degree,aspl_mode,\
wall_time_s,timestamp,status\n\nBundled specs: builtin:table1, builtin:table2, builtin:table3, builtin:table4";

#[derive(Args, Debug)]
struct GenerateArgs {
    /// Starting graph: cycle:<n>, complete:<n> or file:<path>.
    #[arg(long, default_value = "cycle:10")]
    initial: String,
    /// Number of nodes to add.
    #[arg(long = "N")]
    n: usize,
    /// Marks per random walk.
    #[arg(long, default_value_t = 5)]
    m: usize,
    /// Probability of a one-step walk phase.
    #[arg(long, default_value_t = 0.5)]
    p1: f64,
    /// Shortcut-distance exponent.
    #[arg(long, default_value_t = 2.0)]
    beta: f64,
    /// Degree margin above 2 below which the diameter estimate falls back to n - 1.
    #[arg(long, default_value_t = 0.05)]
    epsilon: f64,
    /// Disable the shortcut edge (plain random-walk baseline).
    #[arg(long = "no-special-edge")]
    no_special_edge: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output edge-list path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct MeasureArgs {
    /// Edge-list file to measure.
    #[arg(long)]
    input: PathBuf,
    /// exact, sampled:<k> or auto (exact up to 20000 nodes).
    #[arg(long, default_value = "auto")]
    aspl: String,
    /// Seed for choosing sampled BFS sources.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print the column header first.
    #[arg(long)]
    header: bool,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Sweep spec path, or builtin:<table1|table2|table3|table4>.
    #[arg(long)]
    spec: String,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Divide every N of the grid by this factor.
    #[arg(long, default_value_t = 1)]
    scale: usize,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Override the spec's aspl policy.
    #[arg(long)]
    aspl: Option<String>,
    /// Override the spec's seeds_per_cell.
    #[arg(long)]
    seeds: Option<usize>,
}

#[derive(Args, Debug)]
struct PlotdataArgs {
    /// Sweep CSV to aggregate.
    #[arg(long)]
    input: PathBuf,
    /// 1: (p1, avg_local_clustering); 2: (m, avg_shortest_path); 3: (ln N, avg_shortest_path).
    #[arg(long)]
    figure: String,
    /// Output CSV path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Usage problems exit with 1, everything else with 2.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn io_failure(path: &std::path::Path, e: io::Error) -> Failure {
    Failure::Runtime(format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Measure(args) => cmd_measure(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Plotdata(args) => cmd_plotdata(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<(), Failure> {
    let params = GenParams {
        initial: args.initial.parse::<InitialGraphSpec>()?,
        nodes_to_add: args.n,
        marks_per_walk: args.m,
        p1: args.p1,
        special_edges: !args.no_special_edge,
        distance: DistanceModel {
            beta: args.beta,
            epsilon: args.epsilon,
        },
        seed: RngSeed(args.seed),
    };
    params.validate()?;
    let started = Instant::now();
    let g = generate(&params)?;
    let elapsed = started.elapsed().as_secs_f64();
    g.write_edge_list(&args.out)?;
    println!(
        "nodes={} edges={} wall_time_s={} out={}",
        g.node_count(),
        g.edge_count(),
        cli::format_real(elapsed),
        args.out.display()
    );
    Ok(())
}

fn cmd_measure(args: MeasureArgs) -> Result<(), Failure> {
    let policy: AsplPolicy = args.aspl.parse()?;
    let g = Graph::read_edge_list(&args.input)?;
    let mode = policy.resolve(g.node_count(), args.seed);
    let metrics = walknet::measure(&g, mode).map_err(|e| match e {
        Error::Disconnected { .. } => Failure::Runtime(format!("{}: {e}", args.input.display())),
        other => other.into(),
    })?;
    let mut out = csv::Writer::from_writer(io::stdout().lock());
    let write = |out: &mut csv::Writer<_>| -> csv::Result<()> {
        if args.header {
            out.write_record(MEASURE_COLUMNS)?;
        }
        out.write_record(cli::measure_row(&metrics))?;
        out.flush()?;
        Ok(())
    };
    write(&mut out).map_err(|e| Failure::Runtime(e.to_string()))
}

fn cmd_sweep(args: SweepArgs) -> Result<(), Failure> {
    let text = match args.spec.strip_prefix("builtin:") {
        Some(name) => cli::builtin_spec(name)
            .ok_or_else(|| Failure::Usage(format!("no builtin sweep named {name:?}")))?
            .to_string(),
        None => std::fs::read_to_string(&args.spec)
            .map_err(|e| io_failure(std::path::Path::new(&args.spec), e))?,
    };
    let mut spec = SweepSpec::parse(&text)?;
    if let Some(aspl) = &args.aspl {
        spec.aspl = aspl.parse()?;
    }
    if let Some(seeds) = args.seeds {
        spec.seeds_per_cell = seeds;
        spec.validate()?;
    }
    if args.scale == 0 {
        return Err(Failure::Usage("--scale must be at least 1".into()));
    }
    // The spec is fully validated before the output file is created.
    let file = File::create(&args.out).map_err(|e| io_failure(&args.out, e))?;
    let records = cli::run_sweep(
        &spec,
        args.scale,
        args.jobs,
        BufWriter::new(file),
        |rec, done, total| {
            eprintln!(
                "[{done}/{total}] p1={} m={} N={} special_edges={} rep={} {} {:.2}s",
                rec.cell.p1,
                rec.cell.m,
                rec.cell.n,
                rec.cell.special_edges,
                rec.cell.rep,
                rec.status,
                rec.wall_time_s
            );
        },
    )?;
    let failed = records.iter().filter(|r| !r.is_ok()).count();
    println!(
        "runs={} failed={} columns={} out={}",
        records.len(),
        failed,
        SWEEP_COLUMNS.len(),
        args.out.display()
    );
    Ok(())
}

fn cmd_plotdata(args: PlotdataArgs) -> Result<(), Failure> {
    let figure: Figure = args.figure.parse()?;
    let input = File::open(&args.input).map_err(|e| io_failure(&args.input, e))?;
    let points = cli::plot_series(input, figure)?;
    let sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| io_failure(path, e))?,
        )),
        None => Box::new(io::stdout().lock()),
    };
    let mut out = csv::Writer::from_writer(sink);
    let write = |out: &mut csv::Writer<Box<dyn Write>>| -> csv::Result<()> {
        out.write_record(["x", "y"])?;
        for (x, y) in &points {
            out.write_record([cli::format_real(*x), cli::format_real(*y)])?;
        }
        out.flush()?;
        Ok(())
    };
    write(&mut out).map_err(|e| Failure::Runtime(e.to_string()))
}
