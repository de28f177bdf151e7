#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tint_core::ingest::{GeneratorRecord, GraphDoc};
use tint_core::{Category, GenId, ObjectId};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("o{i}")).collect()
}

/// Random weighted simple digraph without self-loops. Weights come from a
/// small grid when `coarse` so that ties occur.
pub fn random_doc(
    rng: &mut ChaCha8Rng,
    max_objects: usize,
    max_generators: usize,
    coarse: bool,
) -> GraphDoc {
    let n = rng.gen_range(2..=max_objects);
    let objects = labels(n);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    pairs.shuffle(rng);
    let m = rng.gen_range(0..=max_generators.min(pairs.len()));
    let generators = pairs[..m]
        .iter()
        .map(|&(a, b)| GeneratorRecord {
            dom: objects[a].clone(),
            cod: objects[b].clone(),
            weight: if coarse {
                [0.25, 0.5, 0.75, 1.0][rng.gen_range(0..4)]
            } else {
                rng.gen_range(1..=100) as f64 / 100.0
            },
        })
        .collect();
    GraphDoc {
        objects,
        generators,
    }
}

pub fn random_category(
    rng: &mut ChaCha8Rng,
    max_objects: usize,
    max_generators: usize,
) -> Category {
    random_doc(rng, max_objects, max_generators, false)
        .to_category()
        .expect("random documents are valid")
}

/// Reflexive-transitive closure by Warshall's algorithm over the given generators.
pub fn closure(c: &Category, generators: impl IntoIterator<Item = GenId>) -> Vec<Vec<bool>> {
    let n = c.object_count();
    let mut r = vec![vec![false; n]; n];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for g in generators {
        let gen = &c.generators()[g.0];
        r[gen.dom.0][gen.cod.0] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

pub fn all_generators(c: &Category) -> Vec<GenId> {
    (0..c.generator_count()).map(GenId).collect()
}

/// Objects touched by a generator set.
pub fn endpoints(c: &Category, generators: &BTreeSet<GenId>) -> BTreeSet<ObjectId> {
    generators
        .iter()
        .flat_map(|g| {
            let gen = &c.generators()[g.0];
            [gen.dom, gen.cod]
        })
        .collect()
}

/// Every simple generator path `x -> y` of length 1..=max_len.
pub fn all_simple_paths(c: &Category, x: ObjectId, y: ObjectId, max_len: usize) -> Vec<Vec<GenId>> {
    fn go(
        c: &Category,
        at: ObjectId,
        y: ObjectId,
        max_len: usize,
        seen: &mut Vec<ObjectId>,
        path: &mut Vec<GenId>,
        out: &mut Vec<Vec<GenId>>,
    ) {
        if at == y && !path.is_empty() {
            out.push(path.clone());
            return;
        }
        if path.len() == max_len {
            return;
        }
        for g in c.generators() {
            if g.dom == at && !seen.contains(&g.cod) {
                seen.push(g.cod);
                path.push(g.id);
                go(c, g.cod, y, max_len, seen, path, out);
                path.pop();
                seen.pop();
            }
        }
    }
    let mut out = Vec::new();
    if x != y {
        go(c, x, y, max_len, &mut vec![x], &mut Vec::new(), &mut out);
    }
    out
}

pub fn arb_doc(max_objects: usize, max_generators: usize) -> impl Strategy<Value = GraphDoc> {
    (2..=max_objects)
        .prop_flat_map(move |n| {
            let edge = (0..n, 0..n, 1u32..=100);
            (Just(n), proptest::collection::vec(edge, 0..=max_generators))
        })
        .prop_map(|(n, edges)| {
            let objects = labels(n);
            let mut seen = BTreeSet::new();
            let generators = edges
                .into_iter()
                .filter(|&(a, b, _)| a != b && seen.insert((a, b)))
                .map(|(a, b, w)| GeneratorRecord {
                    dom: objects[a].clone(),
                    cod: objects[b].clone(),
                    weight: w as f64 / 100.0,
                })
                .collect();
            GraphDoc {
                objects,
                generators,
            }
        })
}
