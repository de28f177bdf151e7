//! Per-step summary of a trace.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::dynamics::{EventKind, Rule, Trace};

const RULES: [Rule; 5] = [
    Rule::Injection,
    Rule::Neighboring,
    Rule::Fork,
    Rule::AntiFork,
    Rule::Basic,
];

fn rule_name(rule: Rule) -> &'static str {
    match rule {
        Rule::Injection => "injection",
        Rule::Neighboring => "neighboring",
        Rule::Fork => "fork",
        Rule::AntiFork => "anti_fork",
        Rule::Basic => "basic",
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRow {
    pub step: usize,
    pub excited: usize,
    /// Events per rule, in the column order of the rendered table.
    pub events: [usize; 5],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStats {
    pub rows: Vec<StepRow>,
    pub events_by_rule: BTreeMap<Rule, usize>,
    pub forks_connected: usize,
    pub forks_missed: usize,
}

impl TraceStats {
    pub fn of(trace: &Trace) -> Self {
        let mut rows: Vec<StepRow> = trace
            .snapshots
            .iter()
            .enumerate()
            .map(|(step, snap)| StepRow {
                step,
                excited: snap.len(),
                events: [0; 5],
            })
            .collect();
        let mut events_by_rule: BTreeMap<Rule, usize> = RULES.iter().map(|&r| (r, 0)).collect();
        let (mut forks_connected, mut forks_missed) = (0, 0);
        for e in &trace.events {
            let col = RULES.iter().position(|&r| r == e.rule).unwrap();
            if let Some(row) = rows.get_mut(e.step as usize) {
                row.events[col] += 1;
            }
            *events_by_rule.entry(e.rule).or_default() += 1;
            match e.kind {
                EventKind::ForkConnected => forks_connected += 1,
                EventKind::ForkMissed => forks_missed += 1,
                _ => {}
            }
        }
        TraceStats {
            rows,
            events_by_rule,
            forks_connected,
            forks_missed,
        }
    }

    /// Fixed-width table followed by totals.
    pub fn render(&self) -> String {
        let mut out = String::new();
        write!(out, "{:>5} {:>8}", "step", "excited").unwrap();
        for r in RULES {
            write!(out, " {:>11}", rule_name(r)).unwrap();
        }
        out.push('\n');
        for row in &self.rows {
            write!(out, "{:>5} {:>8}", row.step, row.excited).unwrap();
            for n in row.events {
                write!(out, " {n:>11}").unwrap();
            }
            out.push('\n');
        }
        out.push_str("events by rule:");
        for r in RULES {
            write!(out, " {}={}", rule_name(r), self.events_by_rule[&r]).unwrap();
        }
        out.push('\n');
        writeln!(
            out,
            "forks: connected={} missed={}",
            self.forks_connected, self.forks_missed
        )
        .unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{run, RuleConfig, WeightTable};
    use crate::fixture;

    fn tsuchi(steps: u32) -> Trace {
        let c = fixture::tsuchi();
        let mu = WeightTable::from_category(&c);
        let cfg = RuleConfig {
            max_steps: steps,
            ..RuleConfig::deterministic()
        };
        run(&c, &mu, c.id("Wing").unwrap(), c.id("Sail").unwrap(), cfg).unwrap()
    }

    #[test]
    fn injection_only() {
        let s = TraceStats::of(&tsuchi(0));
        assert_eq!(s.rows.len(), 1);
        assert_eq!(s.rows[0].excited, 1);
    }

    #[test]
    fn excited_count_grows_until_first_relaxation() {
        let t = tsuchi(20);
        let first_relax = t
            .events
            .iter()
            .find(|e| e.kind == EventKind::Relaxed)
            .map(|e| e.step as usize)
            .unwrap();
        let s = TraceStats::of(&t);
        for w in s.rows[..first_relax].windows(2) {
            assert!(w[0].excited <= w[1].excited);
        }
    }

    #[test]
    fn render_has_one_line_per_snapshot() {
        let s = TraceStats::of(&tsuchi(20));
        let text = s.render();
        assert_eq!(text.lines().count(), 1 + 21 + 2);
        assert!(text
            .lines()
            .skip(1)
            .take(21)
            .all(|l| l.len() == text.lines().nth(1).unwrap().len()));
    }
}
