//! Instance files, synthetic instances and tabular output.
//!
//! An instance file is a JSON document:
//!
//! ```json
//! {
//!   "topics":     [{"id": "t1", "label": "Graph theory"}],
//!   "panelists":  [{"id": "p1", "name": "A. Author", "topics": ["t1"]}],
//!   "candidates": [{"id": "c1", "name": "B. Applicant", "topics": ["t1"], "stage": "both"}],
//!   "config":     {"panel_size": 1, "max_load": 1}
//! }
//! ```
//!
//! Unknown fields are rejected. `config` and every field inside it are
//! optional and fall back to [`SolverConfig::default`].

use std::fs;
use std::ops::RangeInclusive;
use std::path::Path;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::model::{
    validate_instance, Instance, Paneling, Participation, Person, SolverConfig, Topic, Violation,
};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("instance is invalid: {}", summarize(.0))]
    Validation(Vec<Violation>),
}

fn summarize(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TopicRecord {
    id: String,
    label: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PanelistRecord {
    id: String,
    #[serde(default)]
    name: String,
    topics: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CandidateRecord {
    id: String,
    #[serde(default)]
    name: String,
    topics: Vec<String>,
    stage: Participation,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    topics: Vec<TopicRecord>,
    panelists: Vec<PanelistRecord>,
    candidates: Vec<CandidateRecord>,
    #[serde(default)]
    config: SolverConfig,
}

impl From<InstanceFile> for Instance {
    fn from(f: InstanceFile) -> Self {
        Instance {
            topics: f
                .topics
                .into_iter()
                .map(|t| Topic::new(t.id, t.label))
                .collect(),
            panelists: f
                .panelists
                .into_iter()
                .map(|p| Person::panelist(p.id, p.topics).with_name(p.name))
                .collect(),
            candidates: f
                .candidates
                .into_iter()
                .map(|c| Person::candidate(c.id, c.topics, c.stage).with_name(c.name))
                .collect(),
            config: f.config,
        }
    }
}

impl From<&Instance> for InstanceFile {
    fn from(inst: &Instance) -> Self {
        InstanceFile {
            topics: inst
                .topics
                .iter()
                .map(|t| TopicRecord {
                    id: t.id.clone(),
                    label: t.label.clone(),
                })
                .collect(),
            panelists: inst
                .panelists
                .iter()
                .map(|p| PanelistRecord {
                    id: p.id.clone(),
                    name: p.name.clone(),
                    topics: p.topics.iter().cloned().collect(),
                })
                .collect(),
            candidates: inst
                .candidates
                .iter()
                .map(|c| CandidateRecord {
                    id: c.id.clone(),
                    name: c.name.clone(),
                    topics: c.topics.iter().cloned().collect(),
                    stage: c.stage.unwrap_or(Participation::Both),
                })
                .collect(),
            config: inst.config,
        }
    }
}

/// Parses an instance document without validating it.
pub fn parse_instance(text: &str) -> Result<Instance, LoadError> {
    let file: InstanceFile =
        serde_json::from_str(text).map_err(|e| LoadError::Parse(e.to_string()))?;
    Ok(file.into())
}

/// Reads, parses and validates an instance file.
pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance, LoadError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let inst = parse_instance(&text)?;
    let violations = validate_instance(&inst);
    if violations.is_empty() {
        Ok(inst)
    } else {
        Err(LoadError::Validation(violations))
    }
}

/// Pretty-printed instance document.
pub fn instance_to_json(inst: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceFile::from(inst)).expect("instance serializes")
}

/// Content hash of the people and topics of an instance. Independent of the
/// solver config, of JSON key order and of the order of list entries.
pub fn fingerprint(inst: &Instance) -> String {
    let canon = inst.canonical();
    let body = serde_json::json!({
        "topics": canon.topics,
        "panelists": canon.panelists,
        "candidates": canon.candidates,
    });
    let digest = Sha256::digest(body.to_string().as_bytes());
    hex::encode(digest)
}

/// Size and shape of a synthetic instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceShape {
    pub panelists: usize,
    pub candidates: usize,
    pub topics: usize,
    /// Number of topics drawn per person; clamped to the topic count.
    pub topics_per_person: RangeInclusive<usize>,
    pub seed: u64,
}

/// Draws each person's topics uniformly without replacement. Every candidate
/// takes part in both stages. The result carries a default config seeded
/// with `shape.seed`.
///
/// Panics if any size is zero.
pub fn generate_instance(shape: &InstanceShape) -> Instance {
    assert!(
        shape.panelists > 0 && shape.candidates > 0 && shape.topics > 0,
        "instance sizes must be positive"
    );
    let hi = (*shape.topics_per_person.end()).clamp(1, shape.topics);
    let lo = (*shape.topics_per_person.start()).clamp(1, hi);
    let mut rng = ChaCha8Rng::seed_from_u64(shape.seed);

    let width = |n: usize| n.to_string().len();
    let topics: Vec<Topic> = (1..=shape.topics)
        .map(|i| {
            Topic::new(
                format!("t{i:0w$}", w = width(shape.topics)),
                format!("topic {i}"),
            )
        })
        .collect();
    let draw = |rng: &mut ChaCha8Rng| -> Vec<String> {
        let count = rng.gen_range(lo..=hi);
        let mut picked: Vec<usize> = sample(rng, shape.topics, count).into_vec();
        picked.sort_unstable();
        picked.into_iter().map(|i| topics[i].id.clone()).collect()
    };

    let panelists = (1..=shape.panelists)
        .map(|i| {
            let id = format!("p{i:0w$}", w = width(shape.panelists));
            Person::panelist(id, draw(&mut rng)).with_name(format!("Panelist {i}"))
        })
        .collect();
    let candidates = (1..=shape.candidates)
        .map(|i| {
            let id = format!("c{i:0w$}", w = width(shape.candidates));
            Person::candidate(id, draw(&mut rng), Participation::Both)
                .with_name(format!("Candidate {i}"))
        })
        .collect();

    Instance {
        topics,
        panelists,
        candidates,
        config: SolverConfig {
            seed: shape.seed,
            ..SolverConfig::default()
        },
    }
}

/// Rows of `candidate, panelists` with `;`-separated panelists.
/// Renders records as CSV; the first record is the header.
pub(crate) fn csv_text<R, F>(records: R) -> String
where
    R: IntoIterator<Item = Vec<F>>,
    F: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

pub fn paneling_to_csv(pl: &Paneling) -> String {
    let header = vec!["candidate".to_string(), "panelists".to_string()];
    let rows = pl.panels.values().map(|panel| {
        let members: Vec<&str> = panel.members.iter().map(String::as_str).collect();
        vec![panel.candidate.clone(), members.join(";")]
    });
    csv_text(std::iter::once(header).chain(rows))
}

pub fn parse_paneling(text: &str) -> Result<Paneling, LoadError> {
    serde_json::from_str(text).map_err(|e| LoadError::Parse(e.to_string()))
}
