use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use panelkit_core::assign::AssignError;
use panelkit_core::coloring::ColorAlgo;
use panelkit_core::interference::{build_interference, GraphError, InterferenceGraph};
use panelkit_core::io::{
    fingerprint, generate_instance, instance_to_json, paneling_to_csv, parse_instance,
    parse_paneling, InstanceShape, LoadError,
};
use panelkit_core::metrics::quality_report;
use panelkit_core::model::{
    validate_instance, validate_paneling, Instance, Paneling, Stage, Violation,
};
use panelkit_core::pipeline::{
    bench, color_graph, run_pipeline_with, AssignAlgo, PipelineError, RunOptions,
};
use panelkit_core::schedule::{make_schedule, validate_schedule, Schedule, ScheduleError};
use panelkit_core::scoring::build_assignment_graph;
use thiserror::Error;

#[derive(Parser)]
#[command(
    name = "panelkit",
    version,
    about = "Build reviewer/interviewer panels and pack them into conflict-free time slots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an instance file and list every violation
    Validate {
        instance: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write a seeded synthetic instance
    Gen(GenArgs),
    /// Assign panels to candidates
    Panels {
        instance: PathBuf,
        #[command(flatten)]
        solve: SolveArgs,
        #[command(flatten)]
        config: ConfigArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Color the interference graph and lay panels out in time slots
    Schedule {
        instance: PathBuf,
        #[command(flatten)]
        solve: SolveArgs,
        #[arg(long, value_enum, default_value_t = ColorArg::Chaitin)]
        color: ColorArg,
        /// Schedule this paneling (JSON from `panels --format json`) instead of assigning
        #[arg(long)]
        panels: Option<PathBuf>,
        /// Also write the interference graph as an edge list
        #[arg(long)]
        graph_out: Option<PathBuf>,
        #[command(flatten)]
        config: ConfigArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Full pipeline: panels, schedule and quality report
    Run {
        instance: PathBuf,
        #[command(flatten)]
        solve: SolveArgs,
        #[arg(long, value_enum, default_value_t = ColorArg::Chaitin)]
        color: ColorArg,
        #[command(flatten)]
        config: ConfigArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run every assignment engine against every coloring engine
    Bench {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = StageArg::Interview)]
        stage: StageArg,
        /// Runs per combination; the fastest wall time is reported
        #[arg(long, default_value_t = 3)]
        repetitions: usize,
        #[command(flatten)]
        config: ConfigArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Quality report for a paneling
    Metrics {
        instance: PathBuf,
        #[command(flatten)]
        solve: SolveArgs,
        /// Report on this paneling (JSON from `panels --format json`) instead of assigning
        #[arg(long)]
        panels: Option<PathBuf>,
        #[command(flatten)]
        config: ConfigArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Color a graph given as an `e i j w` edge list
    Color {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = ColorArg::Chaitin)]
        color: ColorArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum, default_value_t = AssignArg::Flow)]
    assign: AssignArg,
    #[arg(long, value_enum, default_value_t = StageArg::Interview)]
    stage: StageArg,
    /// Comma-separated candidate order for edge sorting
    #[arg(long, value_delimiter = ',')]
    order: Option<Vec<String>>,
}

/// Overrides for the instance file's config block.
#[derive(Args)]
struct ConfigArgs {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    panel_size: Option<usize>,
    #[arg(long)]
    max_load: Option<usize>,
    #[arg(long)]
    slot_minutes: Option<u32>,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    panelists: usize,
    #[arg(long)]
    candidates: usize,
    #[arg(long)]
    topics: usize,
    #[arg(long, default_value_t = 1)]
    min_topics: usize,
    #[arg(long, default_value_t = 3)]
    max_topics: usize,
    #[command(flatten)]
    config: ConfigArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AssignArg {
    Edge,
    Flow,
}

#[derive(Clone, Copy, ValueEnum)]
enum ColorArg {
    Chaitin,
    Ga,
    Aco,
}

#[derive(Clone, Copy, ValueEnum)]
enum StageArg {
    Review,
    Interview,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

impl From<AssignArg> for AssignAlgo {
    fn from(a: AssignArg) -> Self {
        match a {
            AssignArg::Edge => AssignAlgo::Edge,
            AssignArg::Flow => AssignAlgo::Flow,
        }
    }
}

impl From<ColorArg> for ColorAlgo {
    fn from(c: ColorArg) -> Self {
        match c {
            ColorArg::Chaitin => ColorAlgo::Chaitin,
            ColorArg::Ga => ColorAlgo::Ga,
            ColorArg::Aco => ColorAlgo::Aco,
        }
    }
}

impl From<StageArg> for Stage {
    fn from(s: StageArg) -> Self {
        match s {
            StageArg::Review => Stage::Review,
            StageArg::Interview => Stage::Interview,
        }
    }
}

#[derive(Debug, Error)]
enum Failure {
    #[error("{0}")]
    Parse(String),
    #[error("{}", join_violations(.0))]
    Validation(Vec<Violation>),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Infeasible(String),
    #[error("{0}")]
    Internal(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Internal(_) => 1,
            Failure::Validation(_) | Failure::Invalid(_) => 2,
            Failure::Infeasible(_) => 3,
            Failure::Parse(_) => 4,
        }
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Validation(v) => Failure::Validation(v),
            other => Failure::Parse(other.to_string()),
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::Parse(e.to_string())
    }
}

impl From<AssignError> for Failure {
    fn from(e: AssignError) -> Self {
        match e {
            AssignError::Infeasible(_) => Failure::Infeasible(e.to_string()),
            AssignError::InvalidOrder(_) => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<ScheduleError> for Failure {
    fn from(e: ScheduleError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::InvalidInstance(v) => Failure::Validation(v),
            PipelineError::Assign(a) => a.into(),
            other => Failure::Internal(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("cannot read {}: {e}", path.display())))
}

impl ConfigArgs {
    fn apply(&self, inst: &mut Instance) {
        let cfg = &mut inst.config;
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.panel_size {
            cfg.panel_size = v;
        }
        if let Some(v) = self.max_load {
            cfg.max_load = v;
        }
        if let Some(v) = self.slot_minutes {
            cfg.slot_minutes = v;
        }
    }
}

/// Parses, applies flag overrides, then validates.
fn load(path: &Path, config: &ConfigArgs) -> Result<Instance, Failure> {
    let mut inst = parse_instance(&read(path)?)?;
    config.apply(&mut inst);
    let violations = validate_instance(&inst);
    if violations.is_empty() {
        Ok(inst)
    } else {
        Err(Failure::Validation(violations))
    }
}

fn load_paneling(path: &Path, inst: &Instance) -> Result<Paneling, Failure> {
    let pl = parse_paneling(&read(path)?)?;
    let violations = validate_paneling(inst, &pl);
    if violations.is_empty() {
        Ok(pl)
    } else {
        Err(Failure::Validation(violations))
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Internal(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes")
}

fn assign_panels(inst: &Instance, solve: &SolveArgs) -> Result<Paneling, Failure> {
    let g = build_assignment_graph(inst, solve.stage.into());
    let (s, l) = (inst.config.panel_size, inst.config.max_load);
    let pl = match (solve.assign, &solve.order) {
        (AssignArg::Edge, Some(order)) => {
            panelkit_core::assign::assign_edge_sorting_in_order(&g, s, l, order)?
        }
        (AssignArg::Edge, None) => panelkit_core::assign::assign_edge_sorting(&g, s, l)?,
        (AssignArg::Flow, _) => panelkit_core::assign::assign_max_flow(&g, s, l)?,
    };
    Ok(pl)
}

fn paneling_table(pl: &Paneling) -> String {
    let mut out = format!("{:<20} panelists\n", "candidate");
    for panel in pl.panels.values() {
        let members: Vec<&str> = panel.members.iter().map(String::as_str).collect();
        let _ = writeln!(out, "{:<20} {}", panel.candidate, members.join(" "));
    }
    out
}

fn schedule_table(sch: &Schedule) -> String {
    let mut out = format!(
        "{:<6} {:>6} {:>6}  {:<20} panelists\n",
        "slot", "start", "end", "candidate"
    );
    let mut rows: Vec<_> = sch.entries.values().collect();
    rows.sort_by(|a, b| {
        a.slot
            .cmp(&b.slot)
            .then(a.panel.candidate.cmp(&b.panel.candidate))
    });
    for e in rows {
        let members: Vec<&str> = e.panel.members.iter().map(String::as_str).collect();
        let _ = writeln!(
            out,
            "{:<6} {:>6} {:>6}  {:<20} {}",
            e.slot,
            e.interval.start,
            e.interval.end,
            e.panel.candidate,
            members.join(" ")
        );
    }
    let _ = writeln!(out, "elapse_slots {}", sch.elapse_slots);
    out
}

fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::Validate {
            instance,
            config,
            output,
        } => {
            let mut inst = parse_instance(&read(&instance)?)?;
            config.apply(&mut inst);
            let violations = validate_instance(&inst);
            let text = match output.format.unwrap_or(Format::Table) {
                Format::Json => json(&serde_json::json!({
                    "valid": violations.is_empty(),
                    "fingerprint": fingerprint(&inst),
                    "violations": violations,
                })),
                Format::Csv => {
                    let mut s = String::from("violation\n");
                    for v in &violations {
                        let _ = writeln!(s, "\"{}\"", v.to_string().replace('"', "\"\""));
                    }
                    s
                }
                Format::Table if violations.is_empty() => format!("valid {}", fingerprint(&inst)),
                Format::Table => join_violations(&violations),
            };
            emit(&output.out, &text)?;
            if violations.is_empty() {
                Ok(())
            } else {
                Err(Failure::Validation(violations))
            }
        }
        Command::Gen(args) => {
            if args.panelists == 0 || args.candidates == 0 || args.topics == 0 {
                return Err(Failure::Invalid("instance sizes must be positive".into()));
            }
            if args.min_topics > args.max_topics {
                return Err(Failure::Invalid("--min-topics exceeds --max-topics".into()));
            }
            let mut inst = generate_instance(&InstanceShape {
                panelists: args.panelists,
                candidates: args.candidates,
                topics: args.topics,
                topics_per_person: args.min_topics..=args.max_topics,
                seed: args.config.seed.unwrap_or(0),
            });
            args.config.apply(&mut inst);
            emit(&args.out, &instance_to_json(&inst))?;
            let violations = validate_instance(&inst);
            if violations.is_empty() {
                Ok(())
            } else {
                Err(Failure::Validation(violations))
            }
        }
        Command::Panels {
            instance,
            solve,
            config,
            output,
        } => {
            let inst = load(&instance, &config)?;
            let pl = assign_panels(&inst, &solve)?;
            let text = match output.format.unwrap_or(Format::Csv) {
                Format::Json => json(&pl),
                Format::Csv => paneling_to_csv(&pl),
                Format::Table => paneling_table(&pl),
            };
            emit(&output.out, &text)
        }
        Command::Schedule {
            instance,
            solve,
            color,
            panels,
            graph_out,
            config,
            output,
        } => {
            let inst = load(&instance, &config)?;
            let pl = match &panels {
                Some(path) => load_paneling(path, &inst)?,
                None => assign_panels(&inst, &solve)?,
            };
            let g = build_interference(&pl);
            if let Some(path) = &graph_out {
                emit(&Some(path.clone()), &g.to_edge_list())?;
            }
            let col = color_graph(&g, color.into(), &inst.config);
            let sch = make_schedule(&pl, &col, inst.config.slot_minutes)?;
            if !validate_schedule(&pl, &sch) {
                return Err(Failure::Internal("schedule failed validation".into()));
            }
            let text = match output.format.unwrap_or(Format::Csv) {
                Format::Json => json(&sch),
                Format::Csv => sch.to_csv(),
                Format::Table => schedule_table(&sch),
            };
            emit(&output.out, &text)
        }
        Command::Run {
            instance,
            solve,
            color,
            config,
            output,
        } => {
            let inst = load(&instance, &config)?;
            let opts = RunOptions {
                assign: solve.assign.into(),
                color: color.into(),
                stage: solve.stage.into(),
                order: solve.order,
            };
            let artifact = run_pipeline_with(&inst, &opts)?;
            let text = match output.format.unwrap_or(Format::Json) {
                Format::Json => artifact.to_json(),
                Format::Csv => artifact.to_csv(),
                Format::Table => {
                    let mut s = String::new();
                    let _ = writeln!(s, "fingerprint      {}", artifact.fingerprint);
                    let _ = writeln!(s, "assign           {}", artifact.assign_algo.as_str());
                    let _ = writeln!(s, "color            {}", artifact.color_algo.as_str());
                    let _ = writeln!(s, "paneling_value   {:.6}", artifact.paneling_value);
                    let _ = writeln!(s, "total_ms         {:.3}", artifact.timings.total_ms());
                    s + &artifact.report.to_table()
                }
            };
            emit(&output.out, &text)
        }
        Command::Bench {
            instance,
            stage,
            repetitions,
            config,
            output,
        } => {
            let inst = load(&instance, &config)?;
            let report = bench(&inst, stage.into(), repetitions);
            let text = match output.format.unwrap_or(Format::Table) {
                Format::Json => json(&report),
                Format::Csv => report.to_csv(),
                Format::Table => report.to_table(),
            };
            emit(&output.out, &text)
        }
        Command::Metrics {
            instance,
            solve,
            panels,
            config,
            output,
        } => {
            let inst = load(&instance, &config)?;
            let pl = match &panels {
                Some(path) => load_paneling(path, &inst)?,
                None => assign_panels(&inst, &solve)?,
            };
            let g = build_assignment_graph(&inst, pl.stage);
            let report = quality_report(&g, &pl, None);
            let text = match output.format.unwrap_or(Format::Table) {
                Format::Json => json(&report),
                Format::Csv => report.to_csv(),
                Format::Table => report.to_table(),
            };
            emit(&output.out, &text)
        }
        Command::Color {
            graph,
            color,
            seed,
            output,
        } => {
            let g = InterferenceGraph::parse_edge_list(&read(&graph)?)?;
            let cfg = panelkit_core::SolverConfig {
                seed,
                ..Default::default()
            };
            let col = color_graph(&g, color.into(), &cfg);
            let text = match output.format.unwrap_or(Format::Table) {
                Format::Json => json(&col),
                Format::Csv => col.to_csv(),
                Format::Table => col.to_lines(),
            };
            emit(&output.out, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(4)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
