//! End-to-end runs: scoring, assignment, interference, coloring, schedule
//! and quality report, with per-phase wall-clock timings. Also the benchmark
//! grid that runs every assignment engine against every coloring engine.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assign::{
    assign_edge_sorting, assign_edge_sorting_in_order, assign_max_flow, paneling_value, AssignError,
};
use crate::coloring::{aco_color, chaitin_min_colors, genetic_color, ColorAlgo, Coloring};
use crate::interference::{build_interference, InterferenceGraph};
use crate::io::{csv_text, fingerprint};
use crate::metrics::{quality_report, QualityReport};
use crate::model::{
    validate_instance, validate_paneling, Instance, Paneling, SolverConfig, Stage, Violation,
};
use crate::schedule::{make_schedule, validate_schedule, Schedule, ScheduleError};
use crate::scoring::build_assignment_graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AssignAlgo {
    Edge,
    Flow,
}

impl AssignAlgo {
    pub const ALL: [AssignAlgo; 2] = [AssignAlgo::Edge, AssignAlgo::Flow];

    pub fn as_str(self) -> &'static str {
        match self {
            AssignAlgo::Edge => "edge",
            AssignAlgo::Flow => "flow",
        }
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("instance is invalid ({} violations)", .0.len())]
    InvalidInstance(Vec<Violation>),
    #[error(transparent)]
    Assign(#[from] AssignError),
    #[error("assignment produced an invalid paneling ({} violations)", .0.len())]
    InvalidPaneling(Vec<Violation>),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error("schedule places conflicting panels in overlapping slots")]
    InvalidSchedule,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub assign: AssignAlgo,
    pub color: ColorAlgo,
    pub stage: Stage,
    /// Candidate order for edge sorting; ascending id when absent.
    pub order: Option<Vec<String>>,
}

impl RunOptions {
    pub fn new(assign: AssignAlgo, color: ColorAlgo, stage: Stage) -> Self {
        RunOptions {
            assign,
            color,
            stage,
            order: None,
        }
    }
}

/// Wall-clock milliseconds per phase.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Timings {
    pub scoring_ms: f64,
    pub assign_ms: f64,
    pub interference_ms: f64,
    pub coloring_ms: f64,
    pub schedule_ms: f64,
    pub metrics_ms: f64,
}

impl Timings {
    pub fn total_ms(&self) -> f64 {
        self.scoring_ms
            + self.assign_ms
            + self.interference_ms
            + self.coloring_ms
            + self.schedule_ms
            + self.metrics_ms
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunArtifact {
    pub fingerprint: String,
    pub config: SolverConfig,
    pub stage: Stage,
    pub assign_algo: AssignAlgo,
    pub color_algo: ColorAlgo,
    pub paneling: Paneling,
    pub paneling_value: f64,
    pub coloring: Coloring,
    pub schedule: Schedule,
    pub report: QualityReport,
    pub timings: Timings,
}

impl RunArtifact {
    /// Copy with zeroed timings, for determinism comparisons.
    pub fn without_timings(&self) -> RunArtifact {
        RunArtifact {
            timings: Timings::default(),
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("artifact serializes")
    }

    /// Single summary row with a header.
    pub fn to_csv(&self) -> String {
        let header = [
            "fingerprint",
            "stage",
            "assign",
            "color",
            "paneling_value",
            "avg_candidate",
            "avg_panelist",
            "time_wastage",
            "elapse_slots",
            "total_ms",
        ]
        .map(String::from)
        .to_vec();
        let row = vec![
            self.fingerprint.clone(),
            self.stage.to_string(),
            self.assign_algo.as_str().into(),
            self.color_algo.as_str().into(),
            self.paneling_value.to_string(),
            self.report.avg_candidate.to_string(),
            self.report.avg_panelist.to_string(),
            self.report.time_wastage.to_string(),
            self.schedule.elapse_slots.to_string(),
            format!("{:.3}", self.timings.total_ms()),
        ];
        csv_text([header, row])
    }
}

fn timed<T>(slot: &mut f64, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    *slot = start.elapsed().as_secs_f64() * 1e3;
    out
}

/// Colors `g` with the chosen engine, taking parameters and seed from `cfg`.
pub fn color_graph(g: &InterferenceGraph, algo: ColorAlgo, cfg: &SolverConfig) -> Coloring {
    match algo {
        ColorAlgo::Chaitin => chaitin_min_colors(g),
        ColorAlgo::Ga => genetic_color(g, &cfg.ga_params, cfg.seed),
        ColorAlgo::Aco => aco_color(g, &cfg.aco_params, cfg.seed),
    }
}

pub fn run_pipeline(
    inst: &Instance,
    assign: AssignAlgo,
    color: ColorAlgo,
    stage: Stage,
) -> Result<RunArtifact, PipelineError> {
    run_pipeline_with(inst, &RunOptions::new(assign, color, stage))
}

pub fn run_pipeline_with(inst: &Instance, opts: &RunOptions) -> Result<RunArtifact, PipelineError> {
    let violations = validate_instance(inst);
    if !violations.is_empty() {
        return Err(PipelineError::InvalidInstance(violations));
    }
    let cfg = inst.config;
    let mut t = Timings::default();

    let graph = timed(&mut t.scoring_ms, || {
        build_assignment_graph(inst, opts.stage)
    });
    let paneling = timed(&mut t.assign_ms, || match (opts.assign, &opts.order) {
        (AssignAlgo::Edge, None) => assign_edge_sorting(&graph, cfg.panel_size, cfg.max_load),
        (AssignAlgo::Edge, Some(order)) => {
            assign_edge_sorting_in_order(&graph, cfg.panel_size, cfg.max_load, order)
        }
        (AssignAlgo::Flow, _) => assign_max_flow(&graph, cfg.panel_size, cfg.max_load),
    })?;
    let violations = validate_paneling(inst, &paneling);
    if !violations.is_empty() {
        return Err(PipelineError::InvalidPaneling(violations));
    }

    let interference = timed(&mut t.interference_ms, || build_interference(&paneling));
    let coloring = timed(&mut t.coloring_ms, || {
        color_graph(&interference, opts.color, &cfg)
    });
    let schedule = timed(&mut t.schedule_ms, || {
        make_schedule(&paneling, &coloring, cfg.slot_minutes)
    })?;
    if !validate_schedule(&paneling, &schedule) {
        return Err(PipelineError::InvalidSchedule);
    }
    let (report, value) = timed(&mut t.metrics_ms, || {
        (
            quality_report(&graph, &paneling, Some(&schedule)),
            paneling_value(&graph, &paneling),
        )
    });

    Ok(RunArtifact {
        fingerprint: fingerprint(inst),
        config: cfg,
        stage: opts.stage,
        assign_algo: opts.assign,
        color_algo: opts.color,
        paneling,
        paneling_value: value,
        coloring,
        schedule,
        report,
        timings: t,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub assign: AssignAlgo,
    pub color: ColorAlgo,
    pub paneling_value: f64,
    pub avg_candidate: f64,
    pub avg_panelist: f64,
    pub time_wastage: usize,
    pub elapse_slots: usize,
    /// Fastest end-to-end wall time over the repetitions.
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchFailure {
    pub assign: AssignAlgo,
    pub color: ColorAlgo,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub fingerprint: String,
    pub stage: Stage,
    pub repetitions: usize,
    pub rows: Vec<BenchRow>,
    pub failures: Vec<BenchFailure>,
}

/// Runs every assignment engine against every coloring engine. Quality
/// columns come from the first repetition; the wall time is the minimum.
pub fn bench(inst: &Instance, stage: Stage, repetitions: usize) -> BenchReport {
    let repetitions = repetitions.max(1);
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for assign in AssignAlgo::ALL {
        for color in ColorAlgo::ALL {
            let opts = RunOptions::new(assign, color, stage);
            let mut best: Option<BenchRow> = None;
            for _ in 0..repetitions {
                let start = Instant::now();
                let run = run_pipeline_with(inst, &opts);
                let wall_ms = start.elapsed().as_secs_f64() * 1e3;
                match run {
                    Ok(a) => match &mut best {
                        Some(row) => row.wall_ms = row.wall_ms.min(wall_ms),
                        None => {
                            best = Some(BenchRow {
                                assign,
                                color,
                                paneling_value: a.paneling_value,
                                avg_candidate: a.report.avg_candidate,
                                avg_panelist: a.report.avg_panelist,
                                time_wastage: a.report.time_wastage,
                                elapse_slots: a.schedule.elapse_slots,
                                wall_ms,
                            })
                        }
                    },
                    Err(e) => {
                        failures.push(BenchFailure {
                            assign,
                            color,
                            error: e.to_string(),
                        });
                        break;
                    }
                }
            }
            rows.extend(best);
        }
    }
    BenchReport {
        fingerprint: fingerprint(inst),
        stage,
        repetitions,
        rows,
        failures,
    }
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let header = [
            "assign",
            "color",
            "paneling_value",
            "avg_candidate",
            "avg_panelist",
            "time_wastage",
            "elapse_slots",
            "wall_ms",
        ]
        .map(String::from)
        .to_vec();
        let rows = self.rows.iter().map(|r| {
            vec![
                r.assign.as_str().into(),
                r.color.as_str().into(),
                r.paneling_value.to_string(),
                r.avg_candidate.to_string(),
                r.avg_panelist.to_string(),
                r.time_wastage.to_string(),
                r.elapse_slots.to_string(),
                format!("{:.3}", r.wall_ms),
            ]
        });
        csv_text(std::iter::once(header).chain(rows))
    }

    /// Panel generation x scheduling grid, one line per combination.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<10} {:<10} {:>12} {:>12} {:>12} {:>8} {:>6} {:>10}",
            "panels", "schedule", "value", "avg_cand", "avg_panel", "wastage", "slots", "ms"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<10} {:<10} {:>12.6} {:>12.6} {:>12.6} {:>8} {:>6} {:>10.2}",
                r.assign.as_str(),
                r.color.as_str(),
                r.paneling_value,
                r.avg_candidate,
                r.avg_panelist,
                r.time_wastage,
                r.elapse_slots,
                r.wall_ms
            );
        }
        for f in &self.failures {
            let _ = writeln!(
                out,
                "{:<10} {:<10} failed: {}",
                f.assign.as_str(),
                f.color.as_str(),
                f.error
            );
        }
        out
    }
}
