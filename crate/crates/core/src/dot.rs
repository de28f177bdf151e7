//! Graphviz rendering of a trace snapshot.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::category::GenId;
use crate::dynamics::{EventKind, Trace};
use crate::error::{Error, Result};

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT digraph of snapshot `step`. Every object is a node and every generator
/// an edge labelled with its weight: excited edges are solid, the clamped
/// metaphor bold, generators relaxed during this step dashed and the rest
/// dotted grey.
pub fn export_dot(trace: &Trace, step: usize) -> Result<String> {
    let snapshot = trace.snapshots.get(step).ok_or_else(|| {
        Error::InvalidConfig(format!(
            "step {step} is past the final snapshot {}",
            trace.final_step()
        ))
    })?;
    let (c, weights) = trace.rebuild()?;
    let excited: BTreeSet<GenId> = snapshot.iter().copied().collect();
    let relaxed: BTreeSet<GenId> = trace
        .events
        .iter()
        .filter(|e| e.step as usize == step && e.kind == EventKind::Relaxed)
        .filter_map(|e| e.generator)
        .collect();
    let clamped = trace.metaphor.generator;

    let mut out = String::new();
    writeln!(out, "digraph snapshot_{step} {{").unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  node [shape=ellipse];").unwrap();
    for x in c.objects() {
        writeln!(out, "  {};", quote(c.label(x))).unwrap();
    }
    for g in c.generators() {
        let style = if g.id == clamped && excited.contains(&g.id) {
            "style=bold"
        } else if excited.contains(&g.id) {
            "style=solid"
        } else if relaxed.contains(&g.id) {
            "style=dashed"
        } else {
            "style=dotted, color=gray"
        };
        writeln!(
            out,
            "  {} -> {} [label=\"{:.2}\", {style}];",
            quote(c.label(g.dom)),
            quote(c.label(g.cod)),
            weights.get(g.id)
        )
        .unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}
