//! Domain entities shared by every solver: topics, panelists, candidates,
//! solver configuration, panels and panelings, plus their validation.
//!
//! Ids are opaque strings. Wherever an order is needed for determinism it is
//! the lexicographic order of the ids.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Which processing round a paneling belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Review,
    Interview,
}

impl Stage {
    pub const ALL: [Stage; 2] = [Stage::Review, Stage::Interview];

    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Review => "review",
            Stage::Interview => "interview",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The stage(s) a candidate takes part in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Participation {
    Review,
    Interview,
    Both,
}

impl Participation {
    pub fn includes(self, stage: Stage) -> bool {
        matches!(
            (self, stage),
            (Participation::Both, _)
                | (Participation::Review, Stage::Review)
                | (Participation::Interview, Stage::Interview)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Panelist,
    Candidate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Topic {
    pub id: String,
    pub label: String,
}

impl Topic {
    pub fn new(id: impl Into<String>, label: impl Into<String>) -> Self {
        Topic {
            id: id.into(),
            label: label.into(),
        }
    }
}

/// A panelist or a candidate together with their declared topics of interest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Person {
    pub id: String,
    pub name: String,
    pub role: Role,
    pub topics: BTreeSet<String>,
    /// Only meaningful for candidates.
    pub stage: Option<Participation>,
}

impl Person {
    pub fn panelist<I, T>(id: impl Into<String>, topics: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        Person {
            id: id.into(),
            name: String::new(),
            role: Role::Panelist,
            topics: topics.into_iter().map(Into::into).collect(),
            stage: None,
        }
    }

    pub fn candidate<I, T>(id: impl Into<String>, topics: I, stage: Participation) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        Person {
            id: id.into(),
            name: String::new(),
            role: Role::Candidate,
            topics: topics.into_iter().map(Into::into).collect(),
            stage: Some(stage),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Panelists take part in every stage; candidates only in the stage(s) they declare.
    pub fn takes_part_in(&self, stage: Stage) -> bool {
        match self.role {
            Role::Panelist => true,
            Role::Candidate => self.stage.is_some_and(|p| p.includes(stage)),
        }
    }
}

/// Parameters of the genetic colorer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaParams {
    pub population: usize,
    pub generations: usize,
    /// Probability of picking the two fittest chromosomes as parents instead of two random ones.
    pub fittest_selection_weight: f64,
}

impl Default for GaParams {
    fn default() -> Self {
        GaParams {
            population: 50,
            generations: 200,
            fittest_selection_weight: 0.5,
        }
    }
}

/// Parameters of the ant colony colorer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AcoParams {
    /// Exponent on the pheromone term.
    pub alpha: f64,
    /// Exponent on the saturation-degree term.
    pub beta: f64,
    /// Fraction of pheromone that evaporates after each iteration.
    pub decay: f64,
    pub num_ants: usize,
    pub iterations: usize,
    pub elite_deposit: f64,
}

impl Default for AcoParams {
    fn default() -> Self {
        AcoParams {
            alpha: 1.0,
            beta: 3.0,
            decay: 0.1,
            num_ants: 10,
            iterations: 3,
            elite_deposit: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    /// Number of panelists on every panel.
    pub panel_size: usize,
    /// Maximum number of panels a single panelist may sit on.
    pub max_load: usize,
    pub slot_minutes: u32,
    pub seed: u64,
    pub ga_params: GaParams,
    pub aco_params: AcoParams,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            panel_size: 3,
            max_load: 10,
            slot_minutes: 30,
            seed: 0,
            ga_params: GaParams::default(),
            aco_params: AcoParams::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub topics: Vec<Topic>,
    pub panelists: Vec<Person>,
    pub candidates: Vec<Person>,
    pub config: SolverConfig,
}

impl Instance {
    /// Panelists sorted by id.
    pub fn sorted_panelists(&self) -> Vec<&Person> {
        let mut out: Vec<&Person> = self.panelists.iter().collect();
        out.sort_by(|a, b| a.id.cmp(&b.id));
        out
    }

    /// Candidates taking part in `stage`, sorted by id.
    pub fn candidates_in(&self, stage: Stage) -> Vec<&Person> {
        let mut out: Vec<&Person> = self
            .candidates
            .iter()
            .filter(|c| c.takes_part_in(stage))
            .collect();
        out.sort_by(|a, b| a.id.cmp(&b.id));
        out
    }

    /// The same instance with every list sorted by id.
    pub fn canonical(&self) -> Instance {
        let mut inst = self.clone();
        inst.topics.sort_by(|a, b| a.id.cmp(&b.id));
        inst.panelists.sort_by(|a, b| a.id.cmp(&b.id));
        inst.candidates.sort_by(|a, b| a.id.cmp(&b.id));
        inst
    }
}

/// One candidate and the panelists assigned to them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Panel {
    pub candidate: String,
    pub members: BTreeSet<String>,
}

impl Panel {
    pub fn new<I, T>(candidate: impl Into<String>, members: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        Panel {
            candidate: candidate.into(),
            members: members.into_iter().map(Into::into).collect(),
        }
    }
}

/// A map from each candidate of a stage to their panel.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Paneling {
    pub stage: Stage,
    pub panels: BTreeMap<String, Panel>,
}

impl Paneling {
    pub fn new(stage: Stage) -> Self {
        Paneling {
            stage,
            panels: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, panel: Panel) {
        self.panels.insert(panel.candidate.clone(), panel);
    }

    pub fn panel(&self, candidate: &str) -> Option<&Panel> {
        self.panels.get(candidate)
    }

    pub fn len(&self) -> usize {
        self.panels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.panels.is_empty()
    }

    /// Number of panels each panelist sits on. Idle panelists are absent.
    pub fn loads(&self) -> BTreeMap<&str, usize> {
        let mut loads = BTreeMap::new();
        for panel in self.panels.values() {
            for p in &panel.members {
                *loads.entry(p.as_str()).or_insert(0) += 1;
            }
        }
        loads
    }

    /// Candidates whose panel contains `panelist`, in id order.
    pub fn candidates_of(&self, panelist: &str) -> Vec<&str> {
        self.panels
            .values()
            .filter(|panel| panel.members.contains(panelist))
            .map(|panel| panel.candidate.as_str())
            .collect()
    }
}

/// A broken invariant found by one of the validators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NoPanelists,
    NoCandidates,
    DuplicateTopic {
        id: String,
    },
    EmptyTopicLabel {
        id: String,
    },
    DuplicatePanelist {
        id: String,
    },
    DuplicateCandidate {
        id: String,
    },
    UnknownTopic {
        person: String,
        topic: String,
    },
    InvalidConfig {
        field: String,
        reason: String,
    },
    PanelSizeExceedsPanelists {
        panel_size: usize,
        panelists: usize,
    },
    CapacityViolation {
        stage: Stage,
        required: usize,
        available: usize,
    },
    StageMismatch {
        expected: Stage,
        found: Stage,
    },
    MissingPanel {
        candidate: String,
    },
    UnexpectedPanel {
        candidate: String,
    },
    PanelKeyMismatch {
        key: String,
        candidate: String,
    },
    PanelSizeMismatch {
        candidate: String,
        expected: usize,
        actual: usize,
    },
    UnknownPanelist {
        candidate: String,
        panelist: String,
    },
    LoadExceeded {
        panelist: String,
        load: usize,
        max_load: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            NoPanelists => write!(f, "instance has no panelists"),
            NoCandidates => write!(f, "instance has no candidates"),
            DuplicateTopic { id } => write!(f, "duplicate topic id `{id}`"),
            EmptyTopicLabel { id } => write!(f, "topic `{id}` has an empty label"),
            DuplicatePanelist { id } => write!(f, "duplicate panelist id `{id}`"),
            DuplicateCandidate { id } => write!(f, "duplicate candidate id `{id}`"),
            UnknownTopic { person, topic } => {
                write!(f, "`{person}` references unknown topic `{topic}`")
            }
            InvalidConfig { field, reason } => write!(f, "config.{field}: {reason}"),
            PanelSizeExceedsPanelists {
                panel_size,
                panelists,
            } => write!(
                f,
                "panel size {panel_size} exceeds the number of panelists ({panelists})"
            ),
            CapacityViolation {
                stage,
                required,
                available,
            } => write!(
                f,
                "{stage} stage needs {required} panel seats but panelists offer only {available}"
            ),
            StageMismatch { expected, found } => {
                write!(f, "paneling is for the {found} stage, expected {expected}")
            }
            MissingPanel { candidate } => write!(f, "candidate `{candidate}` has no panel"),
            UnexpectedPanel { candidate } => {
                write!(f, "`{candidate}` is not a candidate of this stage")
            }
            PanelKeyMismatch { key, candidate } => {
                write!(f, "panel stored under `{key}` belongs to `{candidate}`")
            }
            PanelSizeMismatch {
                candidate,
                expected,
                actual,
            } => write!(
                f,
                "panel of `{candidate}` has {actual} members, expected {expected}"
            ),
            UnknownPanelist {
                candidate,
                panelist,
            } => write!(
                f,
                "panel of `{candidate}` contains unknown panelist `{panelist}`"
            ),
            LoadExceeded {
                panelist,
                load,
                max_load,
            } => write!(
                f,
                "panelist `{panelist}` sits on {load} panels, maximum is {max_load}"
            ),
        }
    }
}

fn invalid(field: &str, reason: &str) -> Violation {
    Violation::InvalidConfig {
        field: field.to_string(),
        reason: reason.to_string(),
    }
}

fn config_violations(cfg: &SolverConfig) -> Vec<Violation> {
    let mut out = Vec::new();
    if cfg.panel_size < 1 {
        out.push(invalid("panel_size", "must be at least 1"));
    }
    if cfg.max_load < 1 {
        out.push(invalid("max_load", "must be at least 1"));
    }
    if cfg.slot_minutes < 1 {
        out.push(invalid("slot_minutes", "must be at least 1"));
    }
    let ga = &cfg.ga_params;
    if ga.population < 2 {
        out.push(invalid("ga_params.population", "must be at least 2"));
    }
    if !(0.0..=1.0).contains(&ga.fittest_selection_weight) {
        out.push(invalid(
            "ga_params.fittest_selection_weight",
            "must lie in [0, 1]",
        ));
    }
    let aco = &cfg.aco_params;
    if !(aco.decay > 0.0 && aco.decay < 1.0) {
        out.push(invalid("aco_params.decay", "must lie in (0, 1)"));
    }
    if aco.num_ants < 1 {
        out.push(invalid("aco_params.num_ants", "must be at least 1"));
    }
    if !(aco.alpha >= 0.0 && aco.alpha.is_finite()) {
        out.push(invalid(
            "aco_params.alpha",
            "must be a finite non-negative number",
        ));
    }
    if !(aco.beta >= 0.0 && aco.beta.is_finite()) {
        out.push(invalid(
            "aco_params.beta",
            "must be a finite non-negative number",
        ));
    }
    if !(aco.elite_deposit >= 0.0 && aco.elite_deposit.is_finite()) {
        out.push(invalid(
            "aco_params.elite_deposit",
            "must be a finite non-negative number",
        ));
    }
    out
}

/// Checks every instance invariant. An empty result means the instance is
/// solvable by both assignment engines' contracts.
pub fn validate_instance(inst: &Instance) -> Vec<Violation> {
    let mut out = Vec::new();
    if inst.panelists.is_empty() {
        out.push(Violation::NoPanelists);
    }
    if inst.candidates.is_empty() {
        out.push(Violation::NoCandidates);
    }

    let mut topic_ids = BTreeSet::new();
    for t in &inst.topics {
        if !topic_ids.insert(t.id.as_str()) {
            out.push(Violation::DuplicateTopic { id: t.id.clone() });
        }
        if t.label.trim().is_empty() {
            out.push(Violation::EmptyTopicLabel { id: t.id.clone() });
        }
    }

    let mut seen = BTreeSet::new();
    for p in &inst.panelists {
        if !seen.insert(p.id.as_str()) {
            out.push(Violation::DuplicatePanelist { id: p.id.clone() });
        }
    }
    let mut seen = BTreeSet::new();
    for c in &inst.candidates {
        if !seen.insert(c.id.as_str()) {
            out.push(Violation::DuplicateCandidate { id: c.id.clone() });
        }
    }

    for person in inst.panelists.iter().chain(&inst.candidates) {
        for t in &person.topics {
            if !topic_ids.contains(t.as_str()) {
                out.push(Violation::UnknownTopic {
                    person: person.id.clone(),
                    topic: t.clone(),
                });
            }
        }
    }

    out.extend(config_violations(&inst.config));

    let cfg = &inst.config;
    let panelists = inst.panelists.len();
    if cfg.panel_size > panelists && panelists > 0 {
        out.push(Violation::PanelSizeExceedsPanelists {
            panel_size: cfg.panel_size,
            panelists,
        });
    }
    for stage in Stage::ALL {
        let required = cfg
            .panel_size
            .saturating_mul(inst.candidates_in(stage).len());
        let available = cfg.max_load.saturating_mul(panelists);
        if required > available {
            out.push(Violation::CapacityViolation {
                stage,
                required,
                available,
            });
        }
    }
    out
}

/// Checks a paneling against the instance it was built for: every stage
/// candidate has exactly one panel of `panel_size` known panelists, and no
/// panelist exceeds `max_load`.
pub fn validate_paneling(inst: &Instance, pl: &Paneling) -> Vec<Violation> {
    let mut out = Vec::new();
    let stage_candidates: BTreeSet<&str> = inst
        .candidates_in(pl.stage)
        .into_iter()
        .map(|c| c.id.as_str())
        .collect();
    let panelists: BTreeSet<&str> = inst.panelists.iter().map(|p| p.id.as_str()).collect();
    let cfg = &inst.config;

    for c in &stage_candidates {
        if !pl.panels.contains_key(*c) {
            out.push(Violation::MissingPanel {
                candidate: c.to_string(),
            });
        }
    }
    for (key, panel) in &pl.panels {
        if !stage_candidates.contains(key.as_str()) {
            out.push(Violation::UnexpectedPanel {
                candidate: key.clone(),
            });
        }
        if *key != panel.candidate {
            out.push(Violation::PanelKeyMismatch {
                key: key.clone(),
                candidate: panel.candidate.clone(),
            });
        }
        if panel.members.len() != cfg.panel_size {
            out.push(Violation::PanelSizeMismatch {
                candidate: key.clone(),
                expected: cfg.panel_size,
                actual: panel.members.len(),
            });
        }
        for m in &panel.members {
            if !panelists.contains(m.as_str()) {
                out.push(Violation::UnknownPanelist {
                    candidate: key.clone(),
                    panelist: m.clone(),
                });
            }
        }
    }
    for (p, load) in pl.loads() {
        if load > cfg.max_load {
            out.push(Violation::LoadExceeded {
                panelist: p.to_string(),
                load,
                max_load: cfg.max_load,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn topics() -> Vec<Topic> {
        vec![Topic::new("t1", "graphs"), Topic::new("t2", "flows")]
    }

    fn small(panelists: usize, candidates: usize, s: usize, l: usize) -> Instance {
        Instance {
            topics: topics(),
            panelists: (1..=panelists)
                .map(|i| Person::panelist(format!("p{i}"), ["t1"]))
                .collect(),
            candidates: (1..=candidates)
                .map(|i| Person::candidate(format!("c{i}"), ["t2"], Participation::Both))
                .collect(),
            config: SolverConfig {
                panel_size: s,
                max_load: l,
                ..SolverConfig::default()
            },
        }
    }

    #[test]
    fn boundary_feasibility_is_accepted() {
        assert_eq!(validate_instance(&small(2, 2, 1, 1)), vec![]);
    }

    #[test]
    fn over_capacity_is_rejected_per_stage() {
        let v = validate_instance(&small(2, 3, 1, 1));
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(|v| matches!(
            v,
            Violation::CapacityViolation {
                required: 3,
                available: 2,
                ..
            }
        )));
    }

    #[test]
    fn capacity_counts_only_stage_candidates() {
        let mut inst = small(2, 3, 1, 1);
        inst.candidates[2].stage = Some(Participation::Review);
        let v = validate_instance(&inst);
        assert_eq!(
            v,
            vec![Violation::CapacityViolation {
                stage: Stage::Review,
                required: 3,
                available: 2
            }]
        );
    }

    #[test]
    fn unknown_topic_is_reported() {
        let mut inst = small(2, 2, 1, 1);
        inst.candidates[0].topics.insert("t9".into());
        assert_eq!(
            validate_instance(&inst),
            vec![Violation::UnknownTopic {
                person: "c1".into(),
                topic: "t9".into()
            }]
        );
    }

    #[test]
    fn duplicates_and_labels() {
        let mut inst = small(2, 2, 1, 1);
        inst.panelists.push(Person::panelist("p1", ["t1"]));
        inst.topics.push(Topic::new("t2", " "));
        let v = validate_instance(&inst);
        assert!(v.contains(&Violation::DuplicatePanelist { id: "p1".into() }));
        assert!(v.contains(&Violation::DuplicateTopic { id: "t2".into() }));
        assert!(v.contains(&Violation::EmptyTopicLabel { id: "t2".into() }));
    }

    #[test]
    fn panel_larger_than_panelist_pool() {
        let v = validate_instance(&small(2, 1, 3, 5));
        assert!(v.contains(&Violation::PanelSizeExceedsPanelists {
            panel_size: 3,
            panelists: 2
        }));
    }

    #[test]
    fn bad_config_values() {
        let mut inst = small(2, 2, 1, 1);
        inst.config.aco_params.decay = 1.0;
        inst.config.ga_params.fittest_selection_weight = 1.5;
        let v = validate_instance(&inst);
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn paneling_checks() {
        let inst = small(2, 2, 1, 1);
        let mut pl = Paneling::new(Stage::Review);
        pl.insert(Panel::new("c1", ["p1"]));
        assert_eq!(
            validate_paneling(&inst, &pl),
            vec![Violation::MissingPanel {
                candidate: "c2".into()
            }]
        );

        pl.insert(Panel::new("c2", ["p1"]));
        assert_eq!(
            validate_paneling(&inst, &pl),
            vec![Violation::LoadExceeded {
                panelist: "p1".into(),
                load: 2,
                max_load: 1
            }]
        );

        pl.insert(Panel::new("c2", ["p2"]));
        assert!(validate_paneling(&inst, &pl).is_empty());

        pl.insert(Panel::new("c2", ["p2", "p9"]));
        let v = validate_paneling(&inst, &pl);
        assert!(v.contains(&Violation::UnknownPanelist {
            candidate: "c2".into(),
            panelist: "p9".into()
        }));
        assert!(v.contains(&Violation::PanelSizeMismatch {
            candidate: "c2".into(),
            expected: 1,
            actual: 2
        }));
    }

    #[test]
    fn validation_is_pure() {
        let inst = small(2, 3, 1, 1);
        let before = inst.clone();
        assert_eq!(validate_instance(&inst), validate_instance(&inst));
        assert_eq!(inst, before);
    }
}
