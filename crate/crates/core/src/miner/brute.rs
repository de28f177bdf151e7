//! Exhaustive reference miner for small snapshots.

use std::collections::BTreeSet;

use super::{assemble, metaphor_endpoints, Component, Options, PartialNT};
use crate::category::{Category, GenId, ObjectId, ThinCategory};
use crate::dynamics::WeightTable;
use crate::error::{Error, Result};

/// Largest excited subcategory [`brute_force_mine`] accepts.
pub const BRUTE_FORCE_LIMIT: usize = 12;

/// Warshall closure over the excited generators.
struct Closure {
    present: Vec<bool>,
    reach: Vec<Vec<bool>>,
}

impl Closure {
    fn new(c: &Category, excited: &BTreeSet<GenId>) -> Self {
        let n = c.object_count();
        let mut present = vec![false; n];
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for &g in excited {
            let gen = &c.generators()[g.0];
            present[gen.dom.0] = true;
            present[gen.cod.0] = true;
            reach[gen.dom.0][gen.cod.0] = true;
        }
        for k in 0..n {
            let via = reach[k].clone();
            for row in reach.iter_mut().filter(|row| row[k]) {
                for (cell, &v) in row.iter_mut().zip(&via) {
                    *cell |= v;
                }
            }
        }
        Closure { present, reach }
    }
}

impl ThinCategory for Closure {
    type Object = ObjectId;

    fn contains(&self, x: &ObjectId) -> bool {
        self.present.get(x.0).copied().unwrap_or(false)
    }

    fn has_hom(&self, x: &ObjectId, y: &ObjectId) -> bool {
        self.contains(x) && self.contains(y) && self.reach[x.0][y.0]
    }
}

/// Best simple excited path by (weight desc, length asc, lexicographic asc),
/// found by enumerating all of them.
fn best_path(
    c: &Category,
    excited: &BTreeSet<GenId>,
    weights: &WeightTable,
    x: ObjectId,
    y: ObjectId,
) -> Option<(Vec<GenId>, f64)> {
    struct Walk<'a> {
        c: &'a Category,
        excited: &'a BTreeSet<GenId>,
        weights: &'a WeightTable,
        y: ObjectId,
        seen: Vec<bool>,
        path: Vec<GenId>,
        best: Option<(Vec<GenId>, f64)>,
    }

    impl Walk<'_> {
        fn go(&mut self, at: ObjectId, w: f64) {
            if at == self.y {
                let better = match &self.best {
                    None => true,
                    Some((bp, bw)) => {
                        w > *bw
                            || (w == *bw && (self.path.len(), &self.path[..]) < (bp.len(), &bp[..]))
                    }
                };
                if better {
                    self.best = Some((self.path.clone(), w));
                }
                return;
            }
            for &g in self.excited {
                let gen = &self.c.generators()[g.0];
                if gen.dom != at || self.seen[gen.cod.0] {
                    continue;
                }
                self.seen[gen.cod.0] = true;
                self.path.push(g);
                self.go(gen.cod, w * self.weights.get(g));
                self.path.pop();
                self.seen[gen.cod.0] = false;
            }
        }
    }

    let mut walk = Walk {
        c,
        excited,
        weights,
        y,
        seen: vec![false; c.object_count()],
        path: Vec::new(),
        best: None,
    };
    walk.seen[x.0] = true;
    walk.go(x, 1.0);
    walk.best
}

fn options(
    c: &Category,
    excited: &BTreeSet<GenId>,
    closure: &Closure,
    weights: &WeightTable,
    source: ObjectId,
) -> Options {
    let objects: Vec<ObjectId> = c
        .objects()
        .filter(|y| closure.has_hom(&source, y))
        .collect();
    let choices = objects
        .iter()
        .map(|&x| {
            let mut cs: Vec<Component> = c
                .objects()
                .filter(|&y| y != x && closure.has_hom(&x, &y))
                .map(|y| {
                    let (path, weight) =
                        best_path(c, excited, weights, x, y).expect("closure says reachable");
                    Component {
                        object: x,
                        image: y,
                        path,
                        weight,
                    }
                })
                .collect();
            cs.sort_by(|a, b| b.weight.total_cmp(&a.weight).then(a.image.cmp(&b.image)));
            cs.push(Component {
                object: x,
                image: x,
                path: Vec::new(),
                weight: 1.0,
            });
            cs
        })
        .collect();
    Options { objects, choices }
}

/// Enumerates every total-or-partial component assignment in odometer order
/// (first object most significant, "unassigned" as the last digit), keeps the
/// ones that pass `verify_nt` and admit no natural one-object extension, and
/// stops after `cap`. Rejects subcategories above [`BRUTE_FORCE_LIMIT`] objects.
pub fn brute_force_mine(
    c: &Category,
    weights: &WeightTable,
    snapshot: &[GenId],
    f: GenId,
    step: usize,
    cap: usize,
) -> Result<Vec<PartialNT>> {
    let excited: BTreeSet<GenId> = snapshot.iter().copied().collect();
    let (target, source) = metaphor_endpoints(c, &excited, f)?;
    let closure = Closure::new(c, &excited);
    let size = closure.present.iter().filter(|p| **p).count();
    if size > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge(size, BRUTE_FORCE_LIMIT));
    }
    let opts = options(c, &excited, &closure, weights, source);
    let witness = |x: ObjectId, y: ObjectId| best_path(c, &excited, weights, x, y).map(|(p, _)| p);
    let natural = |picks: &[Option<usize>]| {
        assemble(&opts, picks, f, target, source, step)
            .verify_in(c, &closure, witness)
            .is_empty()
    };

    let n = opts.objects.len();
    let radix: Vec<usize> = opts.choices.iter().map(|cs| cs.len() + 1).collect();
    let mut digits = vec![0usize; n];
    let mut out = Vec::new();
    loop {
        let picks: Vec<Option<usize>> = digits
            .iter()
            .zip(&opts.choices)
            .map(|(&d, cs)| (d < cs.len()).then_some(d))
            .collect();
        if natural(&picks) {
            let maximal = (0..n).filter(|&i| picks[i].is_none()).all(|i| {
                (0..opts.choices[i].len()).all(|o| {
                    let mut ext = picks.clone();
                    ext[i] = Some(o);
                    !natural(&ext)
                })
            });
            if maximal {
                out.push(assemble(&opts, &picks, f, target, source, step));
                if out.len() >= cap {
                    break;
                }
            }
        }
        // Advance the odometer; the last object is the least significant digit.
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < radix[i] {
                break;
            }
            digits[i] = 0;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{run, RuleConfig};
    use crate::fixture;
    use crate::miner::{mine_step, DEFAULT_CAP};

    #[test]
    fn agrees_with_backtracking_on_tsuchi() {
        let c = fixture::tsuchi();
        let mu = WeightTable::from_category(&c);
        let (w, s) = (c.id("Wing").unwrap(), c.id("Sail").unwrap());
        let trace = run(&c, &mu, w, s, RuleConfig::deterministic()).unwrap();
        let (c, mu) = trace.rebuild().unwrap();
        for (t, snap) in trace.snapshots.iter().enumerate() {
            let f = trace.metaphor.generator;
            assert_eq!(
                mine_step(&c, &mu, snap, f, t, DEFAULT_CAP).unwrap(),
                brute_force_mine(&c, &mu, snap, f, t, DEFAULT_CAP).unwrap()
            );
        }
    }

    #[test]
    fn rejects_large_subcategories() {
        let labels: Vec<String> = (0..14).map(|i| format!("o{i}")).collect();
        let gens: Vec<(String, String, f64)> = (0..13)
            .map(|i| (labels[i].clone(), labels[i + 1].clone(), 0.5))
            .collect();
        let c = Category::build(&labels, &gens).unwrap();
        let mu = WeightTable::from_category(&c);
        let all: Vec<GenId> = (0..13).map(GenId).collect();
        assert_eq!(
            brute_force_mine(&c, &mu, &all, GenId(0), 0, 1).unwrap_err(),
            Error::TooLarge(14, BRUTE_FORCE_LIMIT)
        );
    }
}
