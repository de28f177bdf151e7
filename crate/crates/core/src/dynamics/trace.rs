//! Step engine and the replayable trace document.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::config::RuleConfig;
use super::rules::{apply_anti_fork, apply_fork, apply_neighboring, inject_metaphor};
use super::state::{check_basic_rule, ExcitationState, WeightTable};
use crate::category::{Category, GenId, ObjectId};
use crate::error::{Error, Result};
use crate::ingest::{write_graph, GraphDoc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Created,
    Excited,
    Relaxed,
    ForkConnected,
    ForkMissed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Basic,
    Neighboring,
    Fork,
    AntiFork,
    Injection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForkRef {
    pub apex: ObjectId,
    pub left: ObjectId,
    pub right: ObjectId,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Event {
    pub step: u32,
    pub kind: EventKind,
    pub rule: Rule,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GenId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fork: Option<ForkRef>,
}

impl Event {
    pub fn generator(step: u32, kind: EventKind, rule: Rule, g: GenId) -> Self {
        Event {
            step,
            kind,
            rule,
            generator: Some(g),
            fork: None,
        }
    }

    pub fn fork(step: u32, kind: EventKind, rule: Rule, fork: ForkRef) -> Self {
        Event {
            step,
            kind,
            rule,
            generator: None,
            fork: Some(fork),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetaphorRecord {
    pub target: String,
    pub source: String,
    pub generator: GenId,
    pub created: bool,
}

/// Everything needed to replay and inspect a run. Snapshot `i` holds the sorted
/// excited generators after `i` steps; snapshot 0 is the state right after
/// injection.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Trace {
    pub config: RuleConfig,
    pub graph_digest: String,
    /// Input graph, weights taken from the μ the run started with.
    pub graph: GraphDoc,
    pub metaphor: MetaphorRecord,
    pub events: Vec<Event>,
    pub snapshots: Vec<Vec<GenId>>,
}

pub fn graph_digest(doc: &GraphDoc) -> String {
    Sha256::digest(write_graph(doc).as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// One step: neighboring, fork, anti-fork on cadence, then the basic-rule check.
pub fn step(
    state: &mut ExcitationState,
    c: &Category,
    weights: &WeightTable,
    rng: &mut ChaCha8Rng,
    cfg: &RuleConfig,
) -> Result<Vec<super::trace::Event>> {
    if state.step >= cfg.max_steps {
        return Err(Error::StepLimitExceeded(cfg.max_steps));
    }
    let t = state.step;
    let label = t + 1;
    let mut events = apply_neighboring(state, c, weights, rng, cfg, label);
    events.extend(apply_fork(state, c, weights, rng, cfg, label)?);
    if t.is_multiple_of(cfg.relax_every) {
        events.extend(apply_anti_fork(state, c, weights, cfg, label));
    }
    let derived = super::state::basic_closure(state, c);
    check_basic_rule(c, &state.excited, &derived).map_err(Error::BasicRuleViolated)?;
    state.step += 1;
    Ok(events)
}

/// A run in progress: the (possibly extended) category, μ, state and RNG.
#[derive(Clone, Debug)]
pub struct Simulation {
    category: Category,
    weights: WeightTable,
    config: RuleConfig,
    state: ExcitationState,
    rng: ChaCha8Rng,
    graph: GraphDoc,
    metaphor: MetaphorRecord,
    events: Vec<Event>,
    snapshots: Vec<Vec<GenId>>,
}

impl Simulation {
    /// Injects "`target` is like `source`" into `c` under weights `weights`.
    pub fn new(
        c: &Category,
        weights: &WeightTable,
        target: ObjectId,
        source: ObjectId,
        config: RuleConfig,
    ) -> Result<Self> {
        config.validate()?;
        if weights.len() != c.generator_count() {
            return Err(Error::InvalidConfig(format!(
                "weight table has {} entries for {} generators",
                weights.len(),
                c.generator_count()
            )));
        }
        let mut graph = GraphDoc::from_category(c);
        for (rec, &w) in graph.generators.iter_mut().zip(weights.as_slice()) {
            rec.weight = w;
        }
        let mut state = ExcitationState::new();
        let inj = inject_metaphor(&mut state, c, weights, target, source, config.epsilon)?;
        let metaphor = MetaphorRecord {
            target: c.label(target).to_owned(),
            source: c.label(source).to_owned(),
            generator: inj.generator,
            created: inj.created,
        };
        let snapshots = vec![state.snapshot()];
        Ok(Simulation {
            category: inj.category,
            weights: inj.weights,
            rng: ChaCha8Rng::seed_from_u64(config.seed),
            config,
            state,
            graph,
            metaphor,
            events: inj.events,
            snapshots,
        })
    }

    pub fn category(&self) -> &Category {
        &self.category
    }

    pub fn weights(&self) -> &WeightTable {
        &self.weights
    }

    pub fn state(&self) -> &ExcitationState {
        &self.state
    }

    pub fn metaphor(&self) -> GenId {
        self.metaphor.generator
    }

    pub fn is_finished(&self) -> bool {
        self.state.step >= self.config.max_steps
    }

    pub fn step(&mut self) -> Result<&[Event]> {
        let events = step(
            &mut self.state,
            &self.category,
            &self.weights,
            &mut self.rng,
            &self.config,
        )?;
        let start = self.events.len();
        self.events.extend(events);
        self.snapshots.push(self.state.snapshot());
        Ok(&self.events[start..])
    }

    pub fn finish(mut self) -> Result<Trace> {
        while !self.is_finished() {
            self.step()?;
        }
        Ok(Trace {
            graph_digest: graph_digest(&self.graph),
            config: self.config,
            graph: self.graph,
            metaphor: self.metaphor,
            events: self.events,
            snapshots: self.snapshots,
        })
    }
}

/// Injects the metaphor and runs `config.max_steps` steps.
pub fn run(
    c: &Category,
    weights: &WeightTable,
    target: ObjectId,
    source: ObjectId,
    config: RuleConfig,
) -> Result<Trace> {
    Simulation::new(c, weights, target, source, config)?.finish()
}

impl Trace {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("traces always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, String> {
        let trace: Trace = serde_json::from_str(text).map_err(|e| e.to_string())?;
        trace.check()?;
        Ok(trace)
    }

    /// Structural consistency of a parsed trace.
    pub fn check(&self) -> std::result::Result<(), String> {
        self.graph.validate().map_err(|e| e.to_string())?;
        if graph_digest(&self.graph) != self.graph_digest {
            return Err("graph digest does not match the embedded graph".into());
        }
        self.config.validate().map_err(|e| e.to_string())?;
        if self.snapshots.len() != self.config.max_steps as usize + 1 {
            return Err(format!(
                "expected {} snapshots, found {}",
                self.config.max_steps + 1,
                self.snapshots.len()
            ));
        }
        let (c, _) = self.rebuild().map_err(|e| e.to_string())?;
        for (i, snap) in self.snapshots.iter().enumerate() {
            if snap.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("snapshot {i} is not strictly sorted"));
            }
            if let Some(g) = snap.iter().find(|g| g.0 >= c.generator_count()) {
                return Err(format!("snapshot {i} names unknown generator {g}"));
            }
        }
        if self.events.windows(2).any(|w| w[0].step > w[1].step) {
            return Err("event steps are not monotone".into());
        }
        Ok(())
    }

    /// The category and weights the run operated on, metaphor generator included.
    pub fn rebuild(&self) -> Result<(Category, WeightTable)> {
        let c = self.graph.to_category()?;
        let weights = WeightTable::from_category(&c);
        let (target, source) = (c.id(&self.metaphor.target)?, c.id(&self.metaphor.source)?);
        let inj = inject_metaphor(
            &mut ExcitationState::new(),
            &c,
            &weights,
            target,
            source,
            self.config.epsilon,
        )?;
        if inj.generator != self.metaphor.generator || inj.created != self.metaphor.created {
            return Err(Error::InvalidPath(
                "metaphor record does not match the graph".into(),
            ));
        }
        Ok((inj.category, inj.weights))
    }

    /// Re-executes the run from the recorded graph and configuration.
    pub fn replay(&self) -> Result<Trace> {
        let c = self.graph.to_category()?;
        let weights = WeightTable::from_category(&c);
        run(
            &c,
            &weights,
            c.id(&self.metaphor.target)?,
            c.id(&self.metaphor.source)?,
            self.config.clone(),
        )
    }

    pub fn final_step(&self) -> usize {
        self.snapshots.len() - 1
    }
}
