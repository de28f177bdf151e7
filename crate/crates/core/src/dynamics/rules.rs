//! The excitation and relaxation rules applied once per step.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use super::config::RuleConfig;
use super::state::{ExcitationState, ExcitedSubcategory, ForkWatch, WeightTable};
use super::trace::{Event, EventKind, ForkRef, Rule};
use crate::category::{Category, GenId, ObjectId};
use crate::error::{Error, Result};

/// Outcome of injecting a metaphor "target is like source".
#[derive(Clone, Debug)]
pub struct Injection {
    pub category: Category,
    pub weights: WeightTable,
    pub generator: GenId,
    pub created: bool,
    pub events: Vec<Event>,
}

/// Excites and clamps `target -> source`, creating it with weight `epsilon` if absent.
pub fn inject_metaphor(
    state: &mut ExcitationState,
    c: &Category,
    weights: &WeightTable,
    target: ObjectId,
    source: ObjectId,
    epsilon: f64,
) -> Result<Injection> {
    if target.0 >= c.object_count() {
        return Err(Error::UnknownObject(target.to_string()));
    }
    if source.0 >= c.object_count() {
        return Err(Error::UnknownObject(source.to_string()));
    }
    if target == source {
        return Err(Error::SelfLoopGenerator(c.label(target).to_owned()));
    }
    let mut events = Vec::new();
    let step = state.step;
    let (category, weights, generator, created) = match c.generator_between(target, source) {
        Some(g) => (c.clone(), weights.clone(), g, false),
        None => {
            let extended = c.with_generator(target, source, epsilon)?;
            let g = GenId(c.generator_count());
            let mut w = weights.clone();
            w.push(epsilon);
            events.push(Event::generator(
                step,
                EventKind::Created,
                Rule::Injection,
                g,
            ));
            (extended, w, g, true)
        }
    };
    state.excited.insert(generator);
    state.clamped.insert(generator);
    events.push(Event::generator(
        step,
        EventKind::Excited,
        Rule::Injection,
        generator,
    ));
    Ok(Injection {
        category,
        weights,
        generator,
        created,
        events,
    })
}

fn bernoulli(p: f64, cfg: &RuleConfig, rng: &mut impl Rng) -> bool {
    if cfg.deterministic {
        p >= cfg.theta
    } else {
        rng.gen::<f64>() < p
    }
}

/// Neighboring rule: relaxed generators leaving the codomain of any excited
/// morphism fire with probability μ. Identities count as excited morphisms, so
/// the frontier is every object of the excited subcategory.
pub fn apply_neighboring(
    state: &mut ExcitationState,
    c: &Category,
    weights: &WeightTable,
    rng: &mut impl Rng,
    cfg: &RuleConfig,
    step: u32,
) -> Vec<Event> {
    let frontier = state.subcategory(c);
    let candidates: Vec<GenId> = c
        .generators()
        .iter()
        .filter(|g| !state.is_excited(g.id) && frontier.contains_object(g.dom))
        .map(|g| g.id)
        .collect();
    let mut events = Vec::new();
    for g in candidates {
        if bernoulli(weights.get(g), cfg, rng) {
            state.excited.insert(g);
            events.push(Event::generator(
                step,
                EventKind::Excited,
                Rule::Neighboring,
                g,
            ));
        }
    }
    events
}

#[derive(Clone, Debug, PartialEq)]
pub struct ForkCandidate {
    pub path: Vec<GenId>,
    pub weight: f64,
    pub probability: f64,
}

/// Paths of length at most `depth` between two codomains, in either direction,
/// scored by a softmax over composite weight / `temperature`.
pub fn fork_candidates(
    c: &Category,
    weights: &WeightTable,
    a: ObjectId,
    b: ObjectId,
    depth: usize,
    temperature: f64,
) -> Result<Vec<ForkCandidate>> {
    let mut paths = c.enumerate_paths(a, b, depth)?;
    paths.extend(c.enumerate_paths(b, a, depth)?);
    if paths.is_empty() {
        return Ok(Vec::new());
    }
    let scored: Vec<(Vec<GenId>, f64)> = paths
        .into_iter()
        .map(|p| {
            let w = p.iter().map(|&g| weights.get(g)).product::<f64>();
            (p, w)
        })
        .collect();
    let top = scored
        .iter()
        .map(|(_, w)| w / temperature)
        .fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = scored
        .iter()
        .map(|(_, w)| (w / temperature - top).exp())
        .collect();
    let total: f64 = exps.iter().sum();
    let mut out: Vec<ForkCandidate> = scored
        .into_iter()
        .zip(exps)
        .map(|((path, weight), e)| ForkCandidate {
            path,
            weight,
            probability: e / total,
        })
        .collect();
    out.sort_by(|x, y| {
        y.probability
            .total_cmp(&x.probability)
            .then_with(|| x.path.cmp(&y.path))
    });
    Ok(out)
}

/// Unordered codomain pairs `(a, b)` of excited non-identity legs sharing a
/// domain, each with the smallest apex that witnesses it; sorted by `(apex, a, b)`.
pub fn fork_pairs(sub: &ExcitedSubcategory<'_>) -> Vec<(ObjectId, ObjectId, ObjectId)> {
    let mut first_apex: BTreeMap<(ObjectId, ObjectId), ObjectId> = BTreeMap::new();
    for x in sub.objects() {
        let cods = sub.reachable_from(x);
        for (i, &a) in cods.iter().enumerate() {
            for &b in &cods[i + 1..] {
                first_apex.entry((a, b)).or_insert(x);
            }
        }
    }
    let mut out: Vec<_> = first_apex
        .into_iter()
        .map(|((a, b), x)| (x, a, b))
        .collect();
    out.sort();
    out
}

fn connected(sub: &ExcitedSubcategory<'_>, a: ObjectId, b: ObjectId) -> bool {
    sub.reaches(a, b) || sub.reaches(b, a)
}

/// Fork rule: for each unconnected fork, pick a connecting candidate and excite
/// it with its localized (softmax) probability.
pub fn apply_fork(
    state: &mut ExcitationState,
    c: &Category,
    weights: &WeightTable,
    rng: &mut impl Rng,
    cfg: &RuleConfig,
    step: u32,
) -> Result<Vec<Event>> {
    let mut events = Vec::new();
    let mut sub = state.subcategory(c);
    let forks = fork_pairs(&sub);
    let mut witnessed = BTreeSet::new();
    for (apex, a, b) in forks {
        witnessed.insert((a, b));
        let fork = ForkRef {
            apex,
            left: a,
            right: b,
        };
        if connected(&sub, a, b) {
            state.fork_watch.remove(&(a, b));
            continue;
        }
        let candidates = fork_candidates(c, weights, a, b, cfg.fork_depth, cfg.temperature)?;
        let chosen = if candidates.is_empty() {
            None
        } else if cfg.deterministic {
            Some(&candidates[0])
        } else {
            let u = rng.gen::<f64>();
            let mut acc = 0.0;
            let mut pick = candidates.last();
            for cand in &candidates {
                acc += cand.probability;
                if u < acc {
                    pick = Some(cand);
                    break;
                }
            }
            pick
        };
        let fired = match chosen {
            Some(cand) => bernoulli(cand.probability, cfg, rng).then_some(cand),
            None => None,
        };
        match fired {
            Some(cand) => {
                for &g in &cand.path {
                    if state.excited.insert(g) {
                        events.push(Event::generator(step, EventKind::Excited, Rule::Fork, g));
                    }
                }
                events.push(Event::fork(
                    step,
                    EventKind::ForkConnected,
                    Rule::Fork,
                    fork,
                ));
                state.fork_watch.remove(&(a, b));
                sub = state.subcategory(c);
            }
            None => {
                events.push(Event::fork(step, EventKind::ForkMissed, Rule::Fork, fork));
                let watch = state
                    .fork_watch
                    .entry((a, b))
                    .or_insert(ForkWatch { apex, misses: 0 });
                watch.apex = apex;
                watch.misses += 1;
            }
        }
    }
    state.fork_watch.retain(|pair, _| witnessed.contains(pair));
    Ok(events)
}

/// Final generators of the legs of every non-trivially connected fork. A fork is
/// trivial when one leg's strongest path is a prefix of the other's, i.e. the
/// connection is just a continuation of a leg.
pub fn protected_generators(
    sub: &ExcitedSubcategory<'_>,
    weights: &WeightTable,
) -> BTreeSet<GenId> {
    let mut out = BTreeSet::new();
    for x in sub.objects() {
        let legs: Vec<(ObjectId, Vec<GenId>)> = sub
            .reachable_from(x)
            .into_iter()
            .filter_map(|a| sub.strongest_path(weights, x, a).map(|(p, _)| (a, p)))
            .collect();
        for (i, (a, pa)) in legs.iter().enumerate() {
            for (b, pb) in &legs[i + 1..] {
                if !connected(sub, *a, *b) || pa.starts_with(pb) || pb.starts_with(pa) {
                    continue;
                }
                out.extend(pa.last().copied());
                out.extend(pb.last().copied());
            }
        }
    }
    out
}

/// Anti-fork rule: forks that stayed unconnected for at least `grace` checks
/// lose their weakest eligible leg. A leg is ineligible when its final
/// generator is clamped or protected by a non-trivially connected fork.
pub fn apply_anti_fork(
    state: &mut ExcitationState,
    c: &Category,
    weights: &WeightTable,
    cfg: &RuleConfig,
    step: u32,
) -> Vec<Event> {
    let mut events = Vec::new();
    let due: Vec<((ObjectId, ObjectId), ObjectId)> = state
        .fork_watch
        .iter()
        .filter(|(_, w)| w.misses >= cfg.grace)
        .map(|(&pair, w)| (pair, w.apex))
        .collect();
    for ((a, b), apex) in due {
        let sub = state.subcategory(c);
        state.fork_watch.remove(&(a, b));
        if connected(&sub, a, b) {
            continue;
        }
        let (Some((pa, wa)), Some((pb, wb))) = (
            sub.strongest_path(weights, apex, a)
                .filter(|(p, _)| !p.is_empty()),
            sub.strongest_path(weights, apex, b)
                .filter(|(p, _)| !p.is_empty()),
        ) else {
            continue;
        };
        let (la, lb) = (*pa.last().unwrap(), *pb.last().unwrap());
        // Weaker leg first; on equal weight the leg ending in the larger id.
        let order = match wa.total_cmp(&wb) {
            std::cmp::Ordering::Less => [la, lb],
            std::cmp::Ordering::Greater => [lb, la],
            std::cmp::Ordering::Equal => {
                if la > lb {
                    [la, lb]
                } else {
                    [lb, la]
                }
            }
        };
        let protected = protected_generators(&sub, weights);
        let victim = order
            .into_iter()
            .find(|g| !state.clamped.contains(g) && !protected.contains(g));
        if let Some(g) = victim {
            state.excited.remove(&g);
            events.push(Event::generator(
                step,
                EventKind::Relaxed,
                Rule::AntiFork,
                g,
            ));
        }
    }
    events
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(0)
    }

    #[test]
    fn injection_of_existing_generator() {
        let c = Category::build(&["Wing", "Sail"], &[("Wing", "Sail", 0.5)]).unwrap();
        let mu = WeightTable::from_category(&c);
        let mut s = ExcitationState::new();
        let inj = inject_metaphor(&mut s, &c, &mu, ObjectId(0), ObjectId(1), 0.05).unwrap();
        assert!(!inj.created);
        assert!(s.clamped.contains(&inj.generator));
        assert_eq!(inj.events.len(), 1);
    }

    #[test]
    fn injection_creates_missing_generator() {
        let c = fixture::tsuchi();
        let mu = WeightTable::from_category(&c);
        let mut s = ExcitationState::new();
        let (w, sail) = (c.id("Wing").unwrap(), c.id("Sail").unwrap());
        let inj = inject_metaphor(&mut s, &c, &mu, w, sail, 0.05).unwrap();
        assert!(inj.created);
        assert_eq!(inj.weights.get(inj.generator), 0.05);
        assert_eq!(inj.category.generator_count(), c.generator_count() + 1);
        assert!(s.clamped.contains(&inj.generator) && s.excited.contains(&inj.generator));
        assert_eq!(inj.events[0].kind, EventKind::Created);
    }

    #[test]
    fn injection_rejects_self_loop() {
        let c = fixture::tsuchi();
        let mu = WeightTable::from_category(&c);
        let w = c.id("Wing").unwrap();
        assert!(matches!(
            inject_metaphor(&mut ExcitationState::new(), &c, &mu, w, w, 0.05),
            Err(Error::SelfLoopGenerator(_))
        ));
    }

    #[test]
    fn neighboring_deterministic_follows_threshold() {
        let c = Category::build(
            &["Wing", "Sail", "Yacht", "Rope"],
            &[
                ("Wing", "Sail", 0.5),
                ("Sail", "Yacht", 0.9),
                ("Sail", "Rope", 0.2),
            ],
        )
        .unwrap();
        let mu = WeightTable::from_category(&c);
        let mut s = ExcitationState::new();
        s.excited.insert(GenId(0));
        let cfg = RuleConfig::deterministic();
        let ev = apply_neighboring(&mut s, &c, &mu, &mut rng(), &cfg, 1);
        assert_eq!(ev.len(), 1);
        assert!(s.is_excited(GenId(1)) && !s.is_excited(GenId(2)));
    }

    #[test]
    fn neighboring_certain_event_in_stochastic_mode() {
        let c = Category::build(&["A", "B", "C"], &[("A", "B", 0.5), ("B", "C", 1.0)]).unwrap();
        let mu = WeightTable::from_category(&c);
        for seed in 0..20 {
            let mut s = ExcitationState::new();
            s.excited.insert(GenId(0));
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            apply_neighboring(&mut s, &c, &mu, &mut r, &RuleConfig::default(), 1);
            assert!(s.is_excited(GenId(1)));
        }
    }

    #[test]
    fn neighboring_on_empty_state_is_silent() {
        let c = fixture::tsuchi();
        let mu = WeightTable::from_category(&c);
        let mut s = ExcitationState::new();
        assert!(
            apply_neighboring(&mut s, &c, &mu, &mut rng(), &RuleConfig::default(), 1).is_empty()
        );
    }

    #[test]
    fn softmax_candidates() {
        let c = Category::build(&["A", "B"], &[("A", "B", 0.3)]).unwrap();
        let mu = WeightTable::from_category(&c);
        let one = fork_candidates(&c, &mu, ObjectId(0), ObjectId(1), 2, 1.0).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].probability, 1.0);

        let c = Category::build(&["A", "B"], &[("A", "B", 0.4), ("B", "A", 0.4)]).unwrap();
        let mu = WeightTable::from_category(&c);
        let two = fork_candidates(&c, &mu, ObjectId(0), ObjectId(1), 2, 1.0).unwrap();
        assert_eq!(
            two.iter().map(|x| x.probability).collect::<Vec<_>>(),
            [0.5, 0.5]
        );
        assert_eq!(two[0].path, vec![GenId(0)]);
    }

    #[test]
    fn tsuchi_yacht_ant_is_a_candidate() {
        let c = fixture::tsuchi();
        let mu = WeightTable::from_category(&c);
        let (yacht, ant) = (c.id("Yacht").unwrap(), c.id("Ant").unwrap());
        let cands = fork_candidates(&c, &mu, yacht, ant, 2, 1.0).unwrap();
        let ya = c.generator_between(yacht, ant).unwrap();
        assert!(cands.iter().any(|k| k.path == vec![ya]));
    }

    #[test]
    fn connected_fork_is_skipped() {
        let c = Category::build(
            &["X", "A", "B"],
            &[("X", "A", 0.5), ("X", "B", 0.5), ("A", "B", 0.5)],
        )
        .unwrap();
        let mu = WeightTable::from_category(&c);
        let mut s = ExcitationState::new();
        s.excited.extend([GenId(0), GenId(1), GenId(2)]);
        let ev = apply_fork(&mut s, &c, &mu, &mut rng(), &RuleConfig::deterministic(), 1).unwrap();
        assert!(ev.is_empty());
        assert!(s.fork_watch.is_empty());
    }

    fn open_fork(wa: f64, wb: f64) -> (Category, WeightTable) {
        let c = Category::build(&["X", "A", "B"], &[("X", "A", wa), ("X", "B", wb)]).unwrap();
        let mu = WeightTable::from_category(&c);
        (c, mu)
    }

    #[test]
    fn anti_fork_relaxes_weaker_leg_after_grace() {
        let (c, mu) = open_fork(0.4, 0.7);
        let cfg = RuleConfig::deterministic();
        let mut s = ExcitationState::new();
        s.excited.extend([GenId(0), GenId(1)]);
        apply_fork(&mut s, &c, &mu, &mut rng(), &cfg, 1).unwrap();
        assert!(apply_anti_fork(&mut s, &c, &mu, &cfg, 1).is_empty());
        apply_fork(&mut s, &c, &mu, &mut rng(), &cfg, 2).unwrap();
        apply_fork(&mut s, &c, &mu, &mut rng(), &cfg, 2).unwrap();
        let ev = apply_anti_fork(&mut s, &c, &mu, &cfg, 2);
        assert_eq!(ev.len(), 1);
        assert_eq!(ev[0].generator, Some(GenId(0)));
        assert!(!s.is_excited(GenId(0)) && s.is_excited(GenId(1)));
    }

    #[test]
    fn anti_fork_spares_the_clamped_leg() {
        let (c, mu) = open_fork(0.9, 0.7);
        let cfg = RuleConfig::deterministic();
        let mut s = ExcitationState::new();
        s.excited.extend([GenId(0), GenId(1)]);
        s.clamped.insert(GenId(1));
        s.fork_watch.insert(
            (ObjectId(1), ObjectId(2)),
            ForkWatch {
                apex: ObjectId(0),
                misses: 5,
            },
        );
        let ev = apply_anti_fork(&mut s, &c, &mu, &cfg, 1);
        assert_eq!(ev[0].generator, Some(GenId(0)));
    }

    #[test]
    fn anti_fork_tie_relaxes_larger_id() {
        let (c, mu) = open_fork(0.5, 0.5);
        let mut s = ExcitationState::new();
        s.excited.extend([GenId(0), GenId(1)]);
        s.fork_watch.insert(
            (ObjectId(1), ObjectId(2)),
            ForkWatch {
                apex: ObjectId(0),
                misses: 2,
            },
        );
        let ev = apply_anti_fork(&mut s, &c, &mu, &RuleConfig::default(), 1);
        assert_eq!(ev[0].generator, Some(GenId(1)));
    }
}
