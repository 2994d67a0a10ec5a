use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rangeread::action::Street;
use rangeread::brain::{Hero, HeroConfig};
use rangeread::heatmap::{render, GridSource, HeatmapSpec, ImageFormat};
use rangeread::learning::Learner;
use rangeread::metrics::{ResultLedger, TrialReport};
use rangeread::range::{format_range_file, parse_range_file, ComboGrid};
use rangeread::scenario::{run_scenario, Scenario, ScenarioRun, HAND6};
use rangeread::table::{format_history, parse_history, run_fastfold_session, HandRecord, SessionConfig, HERO_LABEL};

/// Exploitative hold'em opponent modeling: simulate, replay, report, plot.
#[derive(Debug, Parser)]
#[command(name = "rangeread", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Play a fast-fold session and write its history and report.
    Simulate(SimulateArgs),
    /// Step through a scripted hand, printing every range update.
    Replay(ReplayArgs),
    /// Recompute the results report from a hand history.
    Report(ReportArgs),
    /// Draw a range as an SVG or PPM heatmap.
    Heatmap(HeatmapArgs),
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Session settings (INI).
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    hands: Option<u64>,
    /// Also write the hero's decision trace.
    #[arg(long)]
    trace: bool,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ReplayArgs {
    /// Scenario file; the bundled Hand 6 script when omitted.
    scenario: Option<PathBuf>,
    /// Include the hero's decision trace.
    #[arg(long)]
    trace: bool,
    /// Overrides the scenario's seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Directory for per-street range snapshots.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    history: PathBuf,
    /// Session settings supplying the rakeback rate and segment size.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Directory for report.txt and report.csv.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct HeatmapArgs {
    /// Range file to draw.
    #[arg(long, conflicts_with = "scenario")]
    range: Option<PathBuf>,
    /// Scenario to replay and draw a grid from.
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Seat to draw from the scenario.
    #[arg(long, requires = "scenario")]
    seat: Option<usize>,
    /// Street whose closing grid is drawn (preflop, flop, turn, river).
    #[arg(long, default_value = "river")]
    street: String,
    /// 169 or 1326.
    #[arg(long, default_value = "169")]
    grid: String,
    /// svg or ppm.
    #[arg(long, default_value = "svg")]
    format: String,
    /// Cell edge in pixels.
    #[arg(long)]
    cell: Option<u32>,
    #[arg(long)]
    title: Option<String>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug)]
enum Failure {
    /// Bad input, configuration or I/O. Exit code 2.
    Input(String),
    /// A scenario expectation did not hold. Exit code 1.
    Assertion(String),
}

impl From<rangeread::error::Error> for Failure {
    fn from(e: rangeread::error::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome<T> = Result<T, Failure>;

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, bytes: impl AsRef<[u8]>) -> Outcome<()> {
    fs::write(path, bytes).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn create_dir(path: &Path) -> Outcome<()> {
    fs::create_dir_all(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_config(path: Option<&Path>) -> Outcome<SessionConfig> {
    match path {
        Some(p) => Ok(SessionConfig::parse(&read(p)?)?),
        None => Ok(SessionConfig::default()),
    }
}

fn hero_seat(record: &HandRecord) -> Outcome<usize> {
    record
        .seats
        .iter()
        .position(|s| s.label == HERO_LABEL)
        .ok_or_else(|| Failure::Input(format!("hand {} has no seat labelled {HERO_LABEL}", record.hand_id)))
}

/// The report for `records`, built the same way live and from a history.
fn report_for(records: &[HandRecord], config: &SessionConfig) -> Outcome<TrialReport> {
    let bb = records.first().map_or(config.bb, |r| r.bb);
    let mut ledger = ResultLedger::new(bb, config.rakeback_bp);
    for r in records {
        if r.bb != bb {
            return Err(Failure::Input(format!("hand {} changes the big blind", r.hand_id)));
        }
        ledger.push_record(r, hero_seat(r)?)?;
    }
    Ok(TrialReport::from_ledger(&ledger, config.segment)?)
}

fn write_report(dir: &Path, report: &TrialReport) -> Outcome<()> {
    write(&dir.join("report.txt"), report.to_text())?;
    write(&dir.join("report.csv"), report.to_csv()?)
}

fn simulate(args: SimulateArgs) -> Outcome<()> {
    let mut config = load_config(args.config.as_deref())?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(hands) = args.hands {
        config.hands = hands;
    }
    config.validate()?;
    create_dir(&args.out)?;
    let mut hero = Hero::new(HeroConfig::default());
    let mut learner = Learner::default();
    let mut records = Vec::new();
    let mut trace = String::new();
    let summary = run_fastfold_session(&config, &mut hero, &mut learner, args.trace, &mut |h| {
        for line in &h.trace {
            trace.push_str(line);
            trace.push('\n');
        }
        records.push(h.record);
        Ok(())
    })?;
    let report = report_for(&records, &config)?;
    write(&args.out.join("history.txt"), format_history(&records))?;
    write_report(&args.out, &report)?;
    if args.trace {
        write(&args.out.join("trace.txt"), trace)?;
    }
    print!("{}", report.to_text());
    println!(
        "showdowns {} failures {} resets {} learning deltas {}",
        summary.showdowns, summary.failures, summary.resets, summary.deltas
    );
    Ok(())
}

fn load_scenario(path: Option<&Path>) -> Outcome<Scenario> {
    let text = match path {
        Some(p) => read(p)?,
        None => HAND6.to_string(),
    };
    Ok(Scenario::parse(&text)?)
}

fn streets_reached(run: &ScenarioRun) -> Vec<Street> {
    let last = run.steps.iter().map(|s| s.street).max().unwrap_or(Street::Preflop);
    Street::ALL.into_iter().filter(|s| *s <= last).collect()
}

fn replay(args: ReplayArgs) -> Outcome<()> {
    let mut scn = load_scenario(args.scenario.as_deref())?;
    if let Some(seed) = args.seed {
        scn.seed = seed;
    }
    let hero = Hero::new(HeroConfig::default());
    let run = run_scenario(&scn, &hero, args.trace)?;
    print!("{}", run.to_text());
    if let Some(dir) = &args.out {
        create_dir(dir)?;
        for seat in 0..run.preflop.len() {
            for street in streets_reached(&run) {
                if let Some(g) = run.grid_at(seat, street) {
                    write(&dir.join(format!("{street}-seat{seat}.range")), format_range_file(g))?;
                }
            }
        }
    }
    if run.passed() {
        return Ok(());
    }
    let mut diff = String::new();
    for c in run.checks.iter().filter(|c| !c.pass) {
        writeln!(diff, "expected {}; got {}", c.expect, c.detail).unwrap();
    }
    Err(Failure::Assertion(diff.trim_end().to_string()))
}

fn report(args: ReportArgs) -> Outcome<()> {
    let config = load_config(args.config.as_deref())?;
    let text = read(&args.history)?;
    let records = parse_history(&text)?;
    let report = report_for(&records, &config)?;
    if let Some(dir) = &args.out {
        create_dir(dir)?;
        write_report(dir, &report)?;
    }
    print!("{}", report.to_text());
    Ok(())
}

fn heatmap(args: HeatmapArgs) -> Outcome<()> {
    let source: GridSource = args.grid.parse()?;
    let format: ImageFormat = args.format.parse()?;
    let street: Street = args.street.parse()?;
    let grid: ComboGrid = match (&args.range, &args.scenario) {
        (Some(p), _) => parse_range_file(&read(p)?)?.grid(),
        (None, Some(p)) => {
            let scn = load_scenario(Some(p))?;
            let seat = args.seat.ok_or_else(|| Failure::Input("--seat is required with --scenario".into()))?;
            let run = run_scenario(&scn, &Hero::new(HeroConfig::default()), false)?;
            run.grid_at(seat, street)
                .cloned()
                .ok_or_else(|| Failure::Input(format!("seat {seat} has no grid in the scenario")))?
        }
        (None, None) => return Err(Failure::Input("give --range or --scenario".into())),
    };
    let mut spec = HeatmapSpec {
        source,
        format,
        title: args.title,
        ..HeatmapSpec::default()
    };
    if let Some(c) = args.cell {
        spec.cell = c;
    } else if source == GridSource::Combos {
        spec.cell = 10;
    }
    write(&args.out, render(&grid, &spec)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Replay(a) => replay(a),
        Command::Report(a) => report(a),
        Command::Heatmap(a) => heatmap(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Assertion(msg)) => {
            eprintln!("assertion failed:\n{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
