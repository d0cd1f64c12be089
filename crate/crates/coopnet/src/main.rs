use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process;

use clap::{Parser, Subcommand, ValueEnum};

use coopnet::game::DEFAULT_BUDGET;
use coopnet::real::Real;
use coopnet::scenario::{
    self, Analysis, RunOptions, Scenario, ScenarioFile, ScenarioReport,
};
use coopnet::Result;

/// Equilibrium analysis for technology-adoption and shared-resource games.
#[derive(Parser)]
#[command(name = "coopnet", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Override the scenario's seed for randomized dynamics and sampling.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Cap on exhaustive work (profiles enumerated, census starts).
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    /// Directory to write report.txt and the CSV tables into.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// What to print on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate pure Nash equilibria of the scenario's game.
    Nash { scenario: PathBuf },

    /// Check whether conditional cooperation survives the deviation family.
    #[command(name = "supergame-check")]
    SupergameCheck { scenario: PathBuf },

    /// Walk best-response dynamics from the scenario's starting profile.
    Dynamics { scenario: PathBuf },

    /// Tally which terminals best-response dynamics reach.
    Census { scenario: PathBuf },

    /// Re-run the scenario's analysis across a grid of parameter values.
    Sweep {
        scenario: PathBuf,
        /// Parameter to vary: alpha, beta, gamma, epsilon, delta, or exponent.
        #[arg(long)]
        param: String,
        /// Comma-separated values; integers and `p/q` strings stay exact.
        #[arg(long, value_delimiter = ',', required = true)]
        grid: Vec<Real>,
    },

    /// Run a bundled demonstration: fig1, staghunt, or insurance.
    Demo { name: String },
}

fn load(path: &Path) -> Result<(ScenarioFile, Option<PathBuf>)> {
    let text = fs::read_to_string(path)?;
    Ok((ScenarioFile::parse(&text)?, path.parent().map(Path::to_path_buf)))
}

fn run_file(path: &Path, analysis: Analysis, opts: &RunOptions) -> Result<ScenarioReport> {
    let (file, dir) = load(path)?;
    let scenario = Scenario::resolve(&file, dir.as_deref())?;
    scenario::run_scenario(&scenario, analysis, opts)
}

fn emit(cli: &Cli, report: &ScenarioReport) -> Result<()> {
    if let Some(dir) = &cli.out {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("report.txt"), &report.text)?;
        for table in &report.tables {
            fs::write(dir.join(&table.name), &table.csv)?;
        }
    }
    let mut stdout = io::stdout().lock();
    let printed = match cli.format {
        Format::Text => stdout.write_all(report.text.as_bytes()),
        // A single table prints as bare CSV; several get name headers.
        Format::Csv if report.tables.len() == 1 => {
            stdout.write_all(report.tables[0].csv.as_bytes())
        }
        Format::Csv => report
            .tables
            .iter()
            .try_for_each(|t| write!(stdout, "# {}\n{}", t.name, t.csv)),
    };
    match printed {
        // A closed pipe (e.g. `coopnet ... | head`) is not a failure.
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn run(cli: &Cli) -> Result<()> {
    let opts = RunOptions {
        budget: cli.budget,
        seed: cli.seed,
    };
    let report = match &cli.command {
        Command::Nash { scenario } => run_file(scenario, Analysis::Nash, &opts)?,
        Command::SupergameCheck { scenario } => {
            run_file(scenario, Analysis::SupergameCheck, &opts)?
        }
        Command::Dynamics { scenario } => run_file(scenario, Analysis::Dynamics, &opts)?,
        Command::Census { scenario } => run_file(scenario, Analysis::Census, &opts)?,
        Command::Sweep {
            scenario,
            param,
            grid,
        } => {
            let (file, dir) = load(scenario)?;
            scenario::run_sweep(&file, dir.as_deref(), param, grid, &opts)?
        }
        Command::Demo { name } => scenario::run_demo(name, &opts)?,
    };
    emit(cli, &report)
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("error: {e}");
        process::exit(e.exit_code());
    }
}
