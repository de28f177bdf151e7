//! Graph documents and embedding files.
//!
//! A graph document is a JSON object with `objects` (labels) and `generators`
//! (`dom`, `cod`, `weight` records), written with two-space indentation and in
//! input order. Embedding files use the word2vec text layout: a
//! `<count> <dim>` header followed by one `<token> <v1> ... <vdim>` row each.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::Category;
use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IngestError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{location}: duplicate label `{label}`")]
    DuplicateLabel { location: String, label: String },
    #[error("{location}: empty label")]
    EmptyLabel { location: String },
    #[error("{location}: weight {weight} outside (0, 1]")]
    WeightOutOfRange { location: String, weight: f64 },
    #[error("{location}: reference to undeclared label `{label}`")]
    UnknownLabelReference { location: String, label: String },
    #[error("{location}: self-loop on `{label}`")]
    SelfLoopGenerator { location: String, label: String },
    #[error("{location}: second generator {dom} -> {cod}")]
    DuplicateGenerator {
        location: String,
        dom: String,
        cod: String,
    },
    #[error("line {line}: expected {expected} values, found {found}")]
    DimensionMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: duplicate token `{token}`")]
    DuplicateToken { line: usize, token: String },
    #[error("token `{0}` is not in the embedding table")]
    TokenMissing(String),
    #[error("token `{0}` has a zero-norm vector")]
    DegenerateVector(String),
    #[error("k = {k} must satisfy 1 <= k < {vocabulary}")]
    InvalidK { k: usize, vocabulary: usize },
    #[error("floor {0} outside [0, 1)")]
    InvalidFloor(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorRecord {
    pub dom: String,
    pub cod: String,
    pub weight: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub objects: Vec<String>,
    pub generators: Vec<GeneratorRecord>,
}

impl GraphDoc {
    /// Checks the same preconditions as [`Category::build`], reporting field paths.
    pub fn validate(&self) -> Result<(), IngestError> {
        let mut seen = HashSet::new();
        for (i, label) in self.objects.iter().enumerate() {
            let location = format!("objects[{i}]");
            if label.is_empty() {
                return Err(IngestError::EmptyLabel { location });
            }
            if !seen.insert(label.as_str()) {
                return Err(IngestError::DuplicateLabel {
                    location,
                    label: label.clone(),
                });
            }
        }
        let mut pairs = HashSet::new();
        for (i, g) in self.generators.iter().enumerate() {
            for (field, label) in [("dom", &g.dom), ("cod", &g.cod)] {
                if !seen.contains(label.as_str()) {
                    return Err(IngestError::UnknownLabelReference {
                        location: format!("generators[{i}].{field}"),
                        label: label.clone(),
                    });
                }
            }
            if !(g.weight > 0.0 && g.weight <= 1.0) {
                return Err(IngestError::WeightOutOfRange {
                    location: format!("generators[{i}].weight"),
                    weight: g.weight,
                });
            }
            if g.dom == g.cod {
                return Err(IngestError::SelfLoopGenerator {
                    location: format!("generators[{i}]"),
                    label: g.dom.clone(),
                });
            }
            if !pairs.insert((g.dom.as_str(), g.cod.as_str())) {
                return Err(IngestError::DuplicateGenerator {
                    location: format!("generators[{i}]"),
                    dom: g.dom.clone(),
                    cod: g.cod.clone(),
                });
            }
        }
        Ok(())
    }

    pub fn to_category(&self) -> Result<Category, Error> {
        let gens: Vec<(&str, &str, f64)> = self
            .generators
            .iter()
            .map(|g| (g.dom.as_str(), g.cod.as_str(), g.weight))
            .collect();
        Category::build(&self.objects, &gens)
    }

    pub fn from_category(c: &Category) -> Self {
        GraphDoc {
            objects: c.labels().to_vec(),
            generators: c
                .generators()
                .iter()
                .map(|g| GeneratorRecord {
                    dom: c.label(g.dom).to_owned(),
                    cod: c.label(g.cod).to_owned(),
                    weight: g.weight,
                })
                .collect(),
        }
    }
}

pub fn parse_graph(text: &str) -> Result<GraphDoc, IngestError> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| IngestError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    doc.validate()?;
    Ok(doc)
}

/// Canonical serialization; equal documents give identical bytes.
pub fn write_graph(doc: &GraphDoc) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("graph documents always serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingTable {
    dim: usize,
    tokens: Vec<String>,
    vectors: Vec<Vec<f64>>,
    index: HashMap<String, usize>,
}

impl EmbeddingTable {
    pub fn new(dim: usize) -> Self {
        EmbeddingTable {
            dim,
            tokens: Vec::new(),
            vectors: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Appends a row; returns `false` (and leaves the table untouched) on a
    /// duplicate token or wrong length.
    pub fn insert(&mut self, token: &str, vector: Vec<f64>) -> bool {
        if token.is_empty() || vector.len() != self.dim || self.index.contains_key(token) {
            return false;
        }
        self.index.insert(token.to_owned(), self.tokens.len());
        self.tokens.push(token.to_owned());
        self.vectors.push(vector);
        true
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn get(&self, token: &str) -> Option<&[f64]> {
        self.index.get(token).map(|&i| self.vectors[i].as_slice())
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }
}

pub fn load_embeddings(text: &str) -> Result<EmbeddingTable, IngestError> {
    let syntax = |line: usize, message: String| IngestError::Syntax {
        line,
        column: 1,
        message,
    };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines
        .next()
        .ok_or_else(|| syntax(1, "missing `<count> <dim>` header".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let parse_usize = |s: &str| s.parse::<usize>().ok();
    let (count, dim) = match fields.as_slice() {
        [c, d] => match (parse_usize(c), parse_usize(d)) {
            (Some(c), Some(d)) if d > 0 => (c, d),
            _ => return Err(syntax(1, format!("bad header `{header}`"))),
        },
        _ => return Err(syntax(1, format!("bad header `{header}`"))),
    };

    let mut table = EmbeddingTable::new(dim);
    for (line, row) in lines {
        if row.trim().is_empty() {
            continue;
        }
        let mut parts = row.split_whitespace();
        let token = parts.next().expect("non-empty row has a first field");
        let values = parts
            .map(|v| {
                v.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| syntax(line, format!("`{v}` is not a finite decimal")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if values.len() != dim {
            return Err(IngestError::DimensionMismatch {
                line,
                expected: dim,
                found: values.len(),
            });
        }
        if table.get(token).is_some() {
            return Err(IngestError::DuplicateToken {
                line,
                token: token.to_owned(),
            });
        }
        table.insert(token, values);
    }
    if table.len() != count {
        return Err(syntax(
            1,
            format!("header declares {count} rows, found {}", table.len()),
        ));
    }
    Ok(table)
}

/// One token per line; blank lines and `#` comments are skipped.
pub fn parse_vocabulary(text: &str) -> Result<Vec<String>, IngestError> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let token = raw.trim();
        if token.is_empty() || token.starts_with('#') {
            continue;
        }
        if !seen.insert(token) {
            return Err(IngestError::DuplicateToken {
                line: i + 1,
                token: token.to_owned(),
            });
        }
        out.push(token.to_owned());
    }
    Ok(out)
}

/// Cosine similarity. Identical vectors give exactly 1 since `sqrt(x * x) == x`.
pub fn cosine(u: &[f64], v: &[f64]) -> f64 {
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    let nu: f64 = u.iter().map(|a| a * a).sum();
    let nv: f64 = v.iter().map(|a| a * a).sum();
    (dot / (nu * nv).sqrt()).clamp(-1.0, 1.0)
}

/// Directed k-nearest-neighbour association graph over `vocabulary`.
///
/// Each token links to its `k` most cosine-similar tokens (ties by vocabulary
/// order); only similarities above `floor` survive, rescaled to
/// `(s - floor) / (1 - floor)`.
pub fn knn_graph(
    table: &EmbeddingTable,
    vocabulary: &[String],
    k: usize,
    floor: f64,
) -> Result<GraphDoc, IngestError> {
    if k == 0 || k >= vocabulary.len() {
        return Err(IngestError::InvalidK {
            k,
            vocabulary: vocabulary.len(),
        });
    }
    if !(0.0..1.0).contains(&floor) {
        return Err(IngestError::InvalidFloor(floor));
    }
    let mut seen = HashSet::new();
    let mut vectors = Vec::with_capacity(vocabulary.len());
    for (i, token) in vocabulary.iter().enumerate() {
        if !seen.insert(token.as_str()) {
            return Err(IngestError::DuplicateLabel {
                location: format!("vocabulary[{i}]"),
                label: token.clone(),
            });
        }
        let v = table
            .get(token)
            .ok_or_else(|| IngestError::TokenMissing(token.clone()))?;
        if v.iter().all(|x| *x == 0.0) {
            return Err(IngestError::DegenerateVector(token.clone()));
        }
        vectors.push(v);
    }

    let mut generators = Vec::new();
    for (u, vu) in vectors.iter().enumerate() {
        let mut neighbours: Vec<(usize, f64)> = vectors
            .iter()
            .enumerate()
            .filter(|&(v, _)| v != u)
            .map(|(v, vv)| (v, cosine(vu, vv)))
            .collect();
        neighbours.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        for &(v, s) in neighbours.iter().take(k) {
            if s <= floor {
                continue;
            }
            let weight = ((s - floor) / (1.0 - floor)).min(1.0);
            if weight > 0.0 {
                generators.push(GeneratorRecord {
                    dom: vocabulary[u].clone(),
                    cod: vocabulary[v].clone(),
                    weight,
                });
            }
        }
    }
    Ok(GraphDoc {
        objects: vocabulary.to_vec(),
        generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture;

    #[test]
    fn minimal_document() {
        let doc = parse_graph(
            r#"{"objects": ["A", "B"], "generators": [{"dom": "A", "cod": "B", "weight": 0.5}]}"#,
        )
        .unwrap();
        assert_eq!((doc.objects.len(), doc.generators.len()), (2, 1));
    }

    #[test]
    fn fixture_document_counts() {
        let doc = parse_graph(&write_graph(&fixture::tsuchi_doc())).unwrap();
        assert_eq!(doc.objects.len(), 7);
        assert_eq!(doc.generators.len(), 7);
        assert_eq!(doc, fixture::tsuchi_doc());
    }

    #[test]
    fn undeclared_label_has_location() {
        let err = parse_graph(
            r#"{"objects": ["A"], "generators": [{"dom": "A", "cod": "B", "weight": 0.5}]}"#,
        )
        .unwrap_err();
        assert_eq!(
            err,
            IngestError::UnknownLabelReference {
                location: "generators[0].cod".into(),
                label: "B".into()
            }
        );
    }

    #[test]
    fn syntax_error_carries_line() {
        let err = parse_graph("{\n  \"objects\": [\n  \"A\",,\n]}").unwrap_err();
        assert!(
            matches!(err, IngestError::Syntax { line: 3, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn bad_weights_and_labels() {
        let err = parse_graph(
            r#"{"objects": ["A", "B"], "generators": [{"dom": "A", "cod": "B", "weight": 1.5}]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, IngestError::WeightOutOfRange { .. }));
        let err = parse_graph(r#"{"objects": ["A", "A"], "generators": []}"#).unwrap_err();
        assert!(matches!(err, IngestError::DuplicateLabel { .. }));
    }

    #[test]
    fn empty_graph_round_trips() {
        let text = write_graph(&GraphDoc::default());
        assert_eq!(text, "{\n  \"objects\": [],\n  \"generators\": []\n}\n");
        assert_eq!(parse_graph(&text).unwrap(), GraphDoc::default());
    }

    #[test]
    fn writer_is_canonical() {
        let a = write_graph(&fixture::tsuchi_doc());
        let b = write_graph(&fixture::tsuchi_doc());
        assert_eq!(a, b);
        assert!(a.contains("\n  \"objects\": [\n    \"Wing\","));
    }

    #[test]
    fn embeddings_load() {
        let t = load_embeddings("2 3\na 1 0 0\nb 0 1 0\n").unwrap();
        assert_eq!((t.dim(), t.len()), (3, 2));
        assert_eq!(
            load_embeddings("2 3\na 1 0 0\nb 0 1\n").unwrap_err(),
            IngestError::DimensionMismatch {
                line: 3,
                expected: 3,
                found: 2
            }
        );
        assert_eq!(
            load_embeddings("2 3\na 1 0 0\na 0 1 0\n").unwrap_err(),
            IngestError::DuplicateToken {
                line: 3,
                token: "a".into()
            }
        );
        assert!(matches!(
            load_embeddings("3 3\na 1 0 0\n"),
            Err(IngestError::Syntax { .. })
        ));
        assert!(matches!(
            load_embeddings("2 3\na 1 x 0\n"),
            Err(IngestError::Syntax { line: 2, .. })
        ));
    }

    fn vocab(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn identical_vectors_get_full_weight() {
        let t = load_embeddings("2 2\na 1 2\nb 1 2\n").unwrap();
        let g = knn_graph(&t, &vocab(&["a", "b"]), 1, 0.0).unwrap();
        assert_eq!(g.generators.len(), 2);
        assert!(g.generators.iter().all(|e| e.weight == 1.0));
    }

    #[test]
    fn orthogonal_vectors_drop_the_edge() {
        let t = load_embeddings("2 2\na 1 0\nb 0 1\n").unwrap();
        let g = knn_graph(&t, &vocab(&["a", "b"]), 1, 0.0).unwrap();
        assert!(g.generators.is_empty());
    }

    #[test]
    fn knn_errors() {
        let t = load_embeddings("3 2\na 1 0\nb 0 1\nz 0 0\n").unwrap();
        assert_eq!(
            knn_graph(&t, &vocab(&["a", "q"]), 1, 0.0).unwrap_err(),
            IngestError::TokenMissing("q".into())
        );
        assert_eq!(
            knn_graph(&t, &vocab(&["a", "z"]), 1, 0.0).unwrap_err(),
            IngestError::DegenerateVector("z".into())
        );
        assert!(matches!(
            knn_graph(&t, &vocab(&["a", "b"]), 2, 0.0),
            Err(IngestError::InvalidK { .. })
        ));
    }

    #[test]
    fn knn_ties_follow_vocabulary_order() {
        let t = load_embeddings("3 2\na 1 0\nb 1 1\nc 1 -1\n").unwrap();
        // b and c are equally similar to a; c comes first in the vocabulary.
        let g = knn_graph(&t, &vocab(&["a", "c", "b"]), 1, 0.0).unwrap();
        assert_eq!(g.generators[0].dom, "a");
        assert_eq!(g.generators[0].cod, "c");
    }

    #[test]
    fn vocabulary_skips_comments_and_rejects_duplicates() {
        assert_eq!(parse_vocabulary("# v\na\n\n b \n").unwrap(), vec!["a", "b"]);
        assert_eq!(
            parse_vocabulary("a\nb\na\n").unwrap_err(),
            IngestError::DuplicateToken {
                line: 3,
                token: "a".into()
            }
        );
    }
}
