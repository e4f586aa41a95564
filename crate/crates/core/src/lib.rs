//! Reviewer/interviewer panel construction and conflict-free interview
//! scheduling.
//!
//! The flow through the crate is:
//!
//! 1. [`scoring`] turns topic overlaps into panelist/candidate match scores.
//! 2. [`assign`] builds panels, greedily or optimally via min-cost max-flow.
//! 3. [`interference`] links panels that share a panelist.
//! 4. [`coloring`] colors that graph with few colors (time slots).
//! 5. [`schedule`] maps colors to time intervals.
//! 6. [`metrics`] reports panel and schedule quality.
//!
//! [`pipeline`] chains all of it and [`io`] reads and writes instances.

pub mod assign;
pub mod coloring;
pub mod fixtures;
pub mod interference;
pub mod io;
pub mod metrics;
pub mod model;
pub mod pipeline;
pub mod schedule;
pub mod scoring;

pub use assign::{assign_edge_sorting, assign_max_flow, paneling_value, AssignError};
pub use coloring::{is_valid_coloring, ColorAlgo, Coloring};
pub use interference::{build_interference, InterferenceGraph};
pub use io::{generate_instance, load_instance, InstanceShape, LoadError};
pub use metrics::{quality_report, QualityReport};
pub use model::{
    validate_instance, validate_paneling, AcoParams, GaParams, Instance, Panel, Paneling,
    Participation, Person, SolverConfig, Stage, Topic, Violation,
};
pub use pipeline::{bench, run_pipeline, AssignAlgo, BenchReport, PipelineError, RunArtifact};
pub use schedule::{make_schedule, validate_schedule, Interval, Schedule};
pub use scoring::{build_assignment_graph, AssignmentGraph, ScoreTable};
