use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{mine_step, PartialNT};
use crate::category::{Category, GenId};
use crate::dynamics::{Trace, WeightTable};
use crate::error::{Error, Result};

/// Number of non-identity components.
pub fn comprehensiveness(nt: &PartialNT) -> usize {
    nt.components.iter().filter(|c| !c.is_identity()).count()
}

/// Length of the run of consecutive snapshots around `nt.step` in which every
/// component witness generator stays excited. Also stores the run bounds in
/// `nt.first_step` and `nt.last_step`.
pub fn survival(nt: &mut PartialNT, snapshots: &[Vec<GenId>]) -> usize {
    let needed = nt.generators();
    let holds = |t: usize| {
        let snap: BTreeSet<GenId> = snapshots[t].iter().copied().collect();
        needed.is_subset(&snap)
    };
    if nt.step >= snapshots.len() || !holds(nt.step) {
        nt.first_step = nt.step;
        nt.last_step = nt.step;
        return 0;
    }
    let mut first = nt.step;
    while first > 0 && holds(first - 1) {
        first -= 1;
    }
    let mut last = nt.step;
    while last + 1 < snapshots.len() && holds(last + 1) {
        last += 1;
    }
    nt.first_step = first;
    nt.last_step = last;
    last - first + 1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub comprehensiveness: usize,
    pub survival: usize,
    /// One line per component, `b => t_b`.
    pub summary: Vec<String>,
    pub nt: PartialNT,
}

/// Mined transformations of one snapshot, ranked by comprehensiveness, then
/// survival, then component map.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntReport {
    pub metaphor: String,
    pub step: usize,
    /// Snapshot range scanned for survival.
    pub steps_analyzed: (usize, usize),
    pub entries: Vec<ReportEntry>,
}

impl IntReport {
    pub fn from_trace(trace: &Trace, step: usize, cap: usize) -> Result<Self> {
        let last = trace.final_step();
        if step > last {
            return Err(Error::InvalidConfig(format!(
                "step {step} is past the final snapshot {last}"
            )));
        }
        let (c, weights) = trace.rebuild()?;
        let f = trace.metaphor.generator;
        let nts = mine_step(&c, &weights, &trace.snapshots[step], f, step, cap)?;
        let mut entries: Vec<ReportEntry> = nts
            .into_iter()
            .map(|mut nt| {
                let survival = survival(&mut nt, &trace.snapshots);
                ReportEntry {
                    comprehensiveness: comprehensiveness(&nt),
                    survival,
                    summary: summarize(&c, &nt),
                    nt,
                }
            })
            .collect();
        entries.sort_by(|a, b| {
            b.comprehensiveness
                .cmp(&a.comprehensiveness)
                .then(b.survival.cmp(&a.survival))
                .then_with(|| a.nt.key().cmp(&b.nt.key()))
        });
        Ok(IntReport {
            metaphor: format!("{} -> {}", trace.metaphor.target, trace.metaphor.source),
            step,
            steps_analyzed: (0, last),
            entries,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn summarize(c: &Category, nt: &PartialNT) -> Vec<String> {
    nt.components
        .iter()
        .map(|k| {
            format!(
                "({} -> {}) => ({} -> {})",
                c.label(nt.source),
                c.label(k.object),
                c.label(k.object),
                c.label(k.image)
            )
        })
        .collect()
}

/// Raises μ on the witness generators of every non-trivial entry that survived
/// at least `min_survival` snapshots.
pub fn reinforce(
    weights: &WeightTable,
    report: &IntReport,
    min_survival: usize,
    eta: f64,
) -> Result<WeightTable> {
    let gens: BTreeSet<GenId> = report
        .entries
        .iter()
        .filter(|e| e.survival >= min_survival && e.comprehensiveness >= 1)
        .flat_map(|e| e.nt.generators())
        .collect();
    weights.update_weights(&gens, eta)
}
