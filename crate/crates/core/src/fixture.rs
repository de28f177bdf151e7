//! The "Tsuchi" image category: an ant pulling a butterfly wing, read as a yacht.
//!
//! Structure follows the worked example; weights are authored so a
//! deterministic run at `theta = 0.5` reproduces its excitation pattern.

use crate::category::Category;
use crate::ingest::{GeneratorRecord, GraphDoc};

pub const TSUCHI_OBJECTS: [&str; 7] = ["Wing", "Sail", "Yacht", "Ant", "Sea", "Soil", "Butterfly"];

pub const TSUCHI_GENERATORS: [(&str, &str, f64); 7] = [
    ("Wing", "Ant", 0.7),
    ("Wing", "Soil", 0.6),
    ("Wing", "Butterfly", 0.8),
    ("Sail", "Yacht", 0.9),
    ("Yacht", "Ant", 0.3),
    ("Sail", "Sea", 0.8),
    ("Sea", "Soil", 0.5),
];

/// Target and source of the metaphor "Wing is like a Sail".
pub const TSUCHI_METAPHOR: (&str, &str) = ("Wing", "Sail");

pub fn tsuchi() -> Category {
    Category::build(&TSUCHI_OBJECTS, &TSUCHI_GENERATORS).expect("fixture is well formed")
}

/// The fixture plus a `Wing -> Sail` generator at the default creation weight.
pub fn tsuchi_with_metaphor() -> Category {
    let c = tsuchi();
    let (a, b) = (c.id("Wing").unwrap(), c.id("Sail").unwrap());
    c.with_generator(a, b, crate::dynamics::RuleConfig::default().epsilon)
        .expect("fixture has no Wing -> Sail generator")
}

pub fn tsuchi_doc() -> GraphDoc {
    GraphDoc {
        objects: TSUCHI_OBJECTS.iter().map(|s| s.to_string()).collect(),
        generators: TSUCHI_GENERATORS
            .iter()
            .map(|&(dom, cod, weight)| GeneratorRecord {
                dom: dom.into(),
                cod: cod.into(),
                weight,
            })
            .collect(),
    }
}
