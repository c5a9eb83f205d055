use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use privmed::harness::format::LoadError;
use privmed::harness::generator::{scenario_id, RecordConfig};
use privmed::harness::render::{
    render_conflicts, render_resolution, render_vectors, render_willingness,
};
use privmed::harness::{
    evaluate, generate_scenarios, load_scenario, parse_scenario, read_records, save_scenario,
    synthesize_records, write_records, EvalOptions, GeneratorConfig,
};
use privmed::resolution::MediationError;
use privmed::{
    majority_voting, mediate, uploader_overwrites, veto_voting, Scenario, TieBreak,
    ValidationOptions,
};

const SCENARIO_EXT: &str = "scenario";
const RECORDS_FILE: &str = "records.csv";

#[derive(Parser)]
#[command(
    name = "privmed",
    version,
    about = "Detect and resolve privacy conflicts between co-owners of an item"
)]
struct Cli {
    /// Accept groups of one owner that share members.
    #[arg(long, global = true)]
    allow_overlapping_groups: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every negotiator's action vector and the conflicting targets.
    Detect(ScenarioArgs),
    /// Resolve conflicts and print the outcome with the concession-rule trace.
    Resolve(ScenarioArgs),
    /// Print sensitivity, relative importance and willingness per conflict.
    Willingness(ScenarioArgs),
    /// Print the uploader-overwrites, majority and veto vectors.
    Baselines {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, default_value = "deny")]
        tie_break: TieBreak,
    },
    /// Write seeded synthetic scenarios and matching concession records.
    Generate(GenerateArgs),
    /// Score every mechanism against concession records, as CSV.
    Evaluate {
        /// Directory of `.scenario` files; the file stem is the scenario id.
        #[arg(long)]
        scenarios: PathBuf,
        #[arg(long)]
        records: PathBuf,
        #[arg(long, default_value = "deny")]
        tie_break: TieBreak,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ScenarioArgs {
    scenario: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = privmed::policy::DEFAULT_DELTA)]
    delta: u32,
    #[arg(long, default_value_t = 3)]
    negotiators: u32,
    #[arg(long, default_value_t = 6)]
    targets: u32,
    #[arg(long, default_value_t = 2)]
    groups: u32,
    #[arg(long, default_value_t = 0.6)]
    grant_probability: f64,
    #[arg(long, default_value_t = 0.1)]
    exception_probability: f64,
    /// Record every negotiator of each scenario instead of one focal user.
    #[arg(long)]
    multi_focal: bool,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

enum Failure {
    Invalid(String),
    Io(String),
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Invalid { .. } => Failure::Invalid(e.to_string()),
            _ => Failure::Io(e.to_string()),
        }
    }
}

impl From<MediationError> for Failure {
    fn from(e: MediationError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Failure + '_ {
    move |e| Failure::Io(format!("{}: {e}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(io_err(path)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let validation = ValidationOptions {
        allow_overlapping_groups: cli.allow_overlapping_groups,
    };
    match cli.command {
        Command::Detect(args) => {
            let s = load_scenario(&args.scenario, validation)?;
            let m = mediate(&s, validation)?;
            emit(args.out.as_deref(), &render_conflicts(&m.conflicts))
        }
        Command::Resolve(args) => {
            let s = load_scenario(&args.scenario, validation)?;
            let m = mediate(&s, validation)?;
            emit(args.out.as_deref(), &render_resolution(&m))
        }
        Command::Willingness(args) => {
            let s = load_scenario(&args.scenario, validation)?;
            let m = mediate(&s, validation)?;
            emit(args.out.as_deref(), &render_willingness(&m.willingness))
        }
        Command::Baselines {
            scenario,
            tie_break,
        } => {
            let s = load_scenario(&scenario.scenario, validation)?;
            let m = mediate(&s, validation)?;
            let cs = &m.conflicts;
            let (uo, mv, vv) = (
                uploader_overwrites(&s, cs),
                majority_voting(&s, cs, tie_break),
                veto_voting(&s, cs),
            );
            let text = render_vectors(&[
                ("AR", &m.outcome.actions),
                ("UO", &uo),
                ("MV", &mv),
                ("VV", &vv),
            ]);
            emit(scenario.out.as_deref(), &text)
        }
        Command::Generate(args) => generate(args),
        Command::Evaluate {
            scenarios,
            records,
            tie_break,
            out,
        } => {
            let scenarios = read_scenario_dir(&scenarios)?;
            let file = fs::File::open(&records).map_err(io_err(&records))?;
            let records = read_records(file)
                .map_err(|e| Failure::Io(format!("{}: {e}", records.display())))?;
            let report = evaluate(
                &scenarios,
                &records,
                EvalOptions {
                    tie_break,
                    validation,
                },
            );
            for skipped in &report.skipped {
                eprintln!(
                    "warning: skipped record {},{},{}: {}",
                    skipped.record.scenario_id,
                    skipped.record.focal_user,
                    skipped.record.conflict_target,
                    skipped.reason
                );
            }
            if !report.skipped.is_empty() {
                eprintln!("warning: {} record(s) skipped", report.skipped.len());
            }
            emit(out.as_deref(), &report.to_csv())
        }
    }
}

fn generate(args: GenerateArgs) -> Result<(), Failure> {
    let cfg = GeneratorConfig {
        seed: args.seed,
        negotiator_count: args.negotiators,
        target_count: args.targets,
        groups_per_user: args.groups,
        delta: args.delta,
        grant_probability: args.grant_probability,
        exception_probability: args.exception_probability,
    };
    let scenarios =
        generate_scenarios(&cfg, args.count).map_err(|e| Failure::Invalid(e.to_string()))?;
    fs::create_dir_all(&args.out).map_err(io_err(&args.out))?;
    let named: Vec<(String, Scenario)> = scenarios
        .into_iter()
        .enumerate()
        .map(|(i, s)| (scenario_id(i), s))
        .collect();
    for (id, s) in &named {
        let path = args.out.join(format!("{id}.{SCENARIO_EXT}"));
        save_scenario(&path, s).map_err(io_err(&path))?;
    }
    let records = synthesize_records(
        &named,
        RecordConfig {
            seed: args.seed,
            multi_focal: args.multi_focal,
        },
    );
    let path = args.out.join(RECORDS_FILE);
    let mut buf = Vec::new();
    write_records(&mut buf, &records).map_err(io_err(&path))?;
    fs::write(&path, buf).map_err(io_err(&path))?;
    eprintln!(
        "wrote {} scenario(s) and {} record(s) to {}",
        named.len(),
        records.len(),
        args.out.display()
    );
    Ok(())
}

fn read_scenario_dir(dir: &Path) -> Result<BTreeMap<String, Scenario>, Failure> {
    let mut out = BTreeMap::new();
    for entry in fs::read_dir(dir).map_err(io_err(dir))? {
        let path = entry.map_err(io_err(dir))?.path();
        if path.extension().and_then(|e| e.to_str()) != Some(SCENARIO_EXT) {
            continue;
        }
        let Some(id) = path.file_stem().and_then(|s| s.to_str()) else {
            continue;
        };
        let text = fs::read_to_string(&path).map_err(io_err(&path))?;
        let s =
            parse_scenario(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        out.insert(id.to_owned(), s);
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
