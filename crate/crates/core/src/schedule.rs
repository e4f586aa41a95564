//! Turning a coloring into timed interview slots.
//!
//! Color `j` becomes the slot `[j * slot_minutes, (j + 1) * slot_minutes)`,
//! with times in minutes from the start of the schedule.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{is_valid_coloring, Coloring};
use crate::interference::{build_interference, conflict};
use crate::io::csv_text;
use crate::model::{Panel, Paneling};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScheduleError {
    #[error("coloring is not a valid coloring of the paneling's interference graph")]
    InvalidColoring,
    #[error("slot length must be positive")]
    ZeroSlot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub start: u64,
    pub end: u64,
}

impl Interval {
    pub fn new(start: u64, end: u64) -> Self {
        debug_assert!(end > start, "interval must have positive length");
        Interval { start, end }
    }
}

/// True iff either interval starts strictly inside the other. Note that two
/// identical intervals do not overlap under this definition.
pub fn overlap(a: Interval, b: Interval) -> bool {
    (b.end > a.start && a.start > b.start) || (a.end > b.start && b.start > a.start)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleEntry {
    pub panel: Panel,
    pub slot: usize,
    pub interval: Interval,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub slot_minutes: u32,
    pub slots: BTreeMap<usize, Interval>,
    pub entries: BTreeMap<String, ScheduleEntry>,
    pub elapse_slots: usize,
}

fn slot_interval(slot: usize, slot_minutes: u32) -> Interval {
    let len = u64::from(slot_minutes);
    Interval::new(slot as u64 * len, (slot as u64 + 1) * len)
}

pub fn make_schedule(
    pl: &Paneling,
    col: &Coloring,
    slot_minutes: u32,
) -> Result<Schedule, ScheduleError> {
    if slot_minutes == 0 {
        return Err(ScheduleError::ZeroSlot);
    }
    let graph = build_interference(pl);
    if !is_valid_coloring(&graph, col) {
        return Err(ScheduleError::InvalidColoring);
    }
    let slots: BTreeMap<usize, Interval> = (0..col.k)
        .map(|j| (j, slot_interval(j, slot_minutes)))
        .collect();
    let entries = pl
        .panels
        .iter()
        .map(|(c, panel)| {
            let slot = col.assignment[c];
            let entry = ScheduleEntry {
                panel: panel.clone(),
                slot,
                interval: slots[&slot],
            };
            (c.clone(), entry)
        })
        .collect();
    Ok(Schedule {
        slot_minutes,
        slots,
        entries,
        elapse_slots: col.k,
    })
}

/// True iff every panel is scheduled and no two conflicting panels get
/// overlapping or identical intervals.
pub fn validate_schedule(pl: &Paneling, sch: &Schedule) -> bool {
    let mut timed = Vec::with_capacity(pl.len());
    for (c, panel) in &pl.panels {
        match sch.entries.get(c) {
            Some(e) => timed.push((panel, e.interval)),
            None => return false,
        }
    }
    for (i, (a, ia)) in timed.iter().enumerate() {
        for (b, ib) in &timed[i + 1..] {
            if conflict(a, b) && (overlap(*ia, *ib) || ia == ib) {
                return false;
            }
        }
    }
    true
}

impl Schedule {
    /// Rows of `candidate, panelists, slot_index, start_minute, end_minute`,
    /// ordered by slot then candidate. Panelists are `;`-separated.
    pub fn to_csv(&self) -> String {
        let mut rows: Vec<&ScheduleEntry> = self.entries.values().collect();
        rows.sort_by(|a, b| {
            a.slot
                .cmp(&b.slot)
                .then(a.panel.candidate.cmp(&b.panel.candidate))
        });
        let header = [
            "candidate",
            "panelists",
            "slot_index",
            "start_minute",
            "end_minute",
        ]
        .map(String::from)
        .to_vec();
        let body = rows.into_iter().map(|e| {
            let members: Vec<&str> = e.panel.members.iter().map(String::as_str).collect();
            vec![
                e.panel.candidate.clone(),
                members.join(";"),
                e.slot.to_string(),
                e.interval.start.to_string(),
                e.interval.end.to_string(),
            ]
        });
        csv_text(std::iter::once(header).chain(body))
    }
}
