use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use bestprox::report::{
    cmd_classify, cmd_demo, cmd_enumerate, cmd_generate, cmd_solve, cmd_validate, ClassifyOptions, EnumerateOptions,
    GenerateKind, GenerateOptions, RunReport, SolveMode, SolveOptions, EXIT_USAGE,
};
use bestprox::{Membership, Tolerance};
use clap::{Parser, Subcommand, ValueEnum};

/// Approximate best proximity points of cyclic maps on graph-endowed metric
/// spaces.
#[derive(Parser)]
#[command(name = "bestprox", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Absolute slack for every numeric comparison.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Append the wall-clock time to the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check the metric, graph and map axioms of an instance file.
    Validate { file: PathBuf },
    /// Contraction factor, CRR constants and nonexpansiveness.
    Classify {
        file: PathBuf,
        /// Also test the G-contraction property at this factor.
        #[arg(long)]
        alpha: Option<f64>,
        /// Grid step of the CRR constant search.
        #[arg(long, default_value_t = 0.05)]
        crr_grid: f64,
    },
    /// Run an iteration scheme from a start point.
    Solve {
        file: PathBuf,
        /// Start point: an index for tabulated instances, `x,y,...` otherwise.
        #[arg(long, allow_hyphen_values = true)]
        start: Option<String>,
        /// Second start point for the two-map modes.
        #[arg(long, allow_hyphen_values = true)]
        start_y: Option<String>,
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        #[arg(long, default_value_t = 1000)]
        max_iter: usize,
        #[arg(long, value_enum, default_value_t = Mode::Single)]
        mode: Mode,
        /// Contraction constant of the alternating scheme.
        #[arg(long)]
        alpha: Option<f64>,
        /// Distance constant of the alternating scheme (default 1 - alpha).
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long, default_value_t = 0.05)]
        crr_grid: f64,
    },
    /// List the approximate best proximity points (or pairs) at a slack.
    Enumerate {
        file: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = SetMode::Strict)]
        mode: SetMode,
        /// Exit with status 1 when the set is empty.
        #[arg(long)]
        require_nonempty: bool,
    },
    /// Reproduce a worked example: interval, ellipse or segments.
    Demo {
        name: String,
        #[arg(long)]
        grid_step: Option<f64>,
    },
    /// Write a seeded random instance file.
    Generate {
        #[arg(long, value_enum, default_value_t = Kind::Random)]
        kind: Kind,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        n_a: usize,
        #[arg(long, default_value_t = 10)]
        n_b: usize,
        /// nearest, centroid:<factor> or mirror.
        #[arg(long, default_value = "nearest")]
        map_rule: String,
        /// complete, diagonal, random:<p> or min-sep:<r>.
        #[arg(long, default_value = "complete")]
        graph: String,
        #[arg(long, default_value_t = 4)]
        orbits: usize,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long, default_value_t = 0.3)]
        factor: f64,
        #[arg(long, default_value_t = 4)]
        gadgets: usize,
        #[arg(long, default_value_t = 0.0)]
        extra_edges: f64,
        #[arg(long, short)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Single,
    Parallel,
    Alternating,
}

#[derive(Clone, Copy, ValueEnum)]
enum SetMode {
    Strict,
    Vacuous,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Random,
    Pair,
    Orbit,
    Chain,
}

fn dispatch(command: Command, tol: Tolerance) -> RunReport {
    match command {
        Command::Validate { file } => cmd_validate(&file, tol),
        Command::Classify { file, alpha, crr_grid } => cmd_classify(&file, &ClassifyOptions { alpha, crr_grid, tol }),
        Command::Solve { file, start, start_y, epsilon, max_iter, mode, alpha, gamma, crr_grid } => {
            let mode = match mode {
                Mode::Single => SolveMode::Single,
                Mode::Parallel => SolveMode::Parallel,
                Mode::Alternating => SolveMode::Alternating,
            };
            cmd_solve(&file, &SolveOptions { start, start_y, epsilon, max_iter, mode, alpha, gamma, crr_grid, tol })
        }
        Command::Enumerate { file, epsilon, mode, require_nonempty } => {
            let mode = match mode {
                SetMode::Strict => Membership::Strict,
                SetMode::Vacuous => Membership::Vacuous,
            };
            cmd_enumerate(&file, &EnumerateOptions { epsilon, mode, require_nonempty, tol })
        }
        Command::Demo { name, grid_step } => cmd_demo(&name, grid_step, tol),
        Command::Generate {
            kind,
            seed,
            n_a,
            n_b,
            map_rule,
            graph,
            orbits,
            depth,
            factor,
            gadgets,
            extra_edges,
            out,
        } => {
            let kind = match kind {
                Kind::Random => GenerateKind::Random,
                Kind::Pair => GenerateKind::Pair,
                Kind::Orbit => GenerateKind::Orbit,
                Kind::Chain => GenerateKind::Chain,
            };
            let opts = GenerateOptions {
                kind,
                seed,
                n_a,
                n_b,
                map_rule,
                graph_rule: graph,
                orbits,
                depth,
                factor,
                gadgets,
                extra_edges,
            };
            cmd_generate(&out, &opts)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let tol = match Tolerance::new(cli.tol) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let started = Instant::now();
    let report = dispatch(cli.command, tol);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(report.stdout.as_bytes());
    if cli.timing {
        let _ = writeln!(stdout, "elapsed-ms: {}", started.elapsed().as_millis());
    }
    let _ = std::io::stderr().write_all(report.stderr.as_bytes());
    ExitCode::from(report.exit_code)
}
