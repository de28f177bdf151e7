//! Mining indeterminate natural transformations.
//!
//! Given an excited snapshot containing the metaphor `f: A -> B`, every excited
//! coslice object `b: B -> X` of `B\C` may receive a component `t_b: X -> Y`,
//! an excited morphism. The induced functor sends `b` to `t_b ∘ b ∘ f`. An
//! assignment is natural when for each excited mediator `X1 -> X2` between
//! assigned objects the images are joined too (`Y1 -> Y2` excited); thinness
//! closes the square. The meanings of a metaphor are the maximal natural
//! assignments that coexist in one snapshot.

mod brute;
mod report;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use brute::{brute_force_mine, BRUTE_FORCE_LIMIT};
pub use report::{comprehensiveness, reinforce, survival, IntReport, ReportEntry};

use crate::category::{Category, GenId, Morphism, ObjectId, ThinCategory, Witness};
use crate::coslice::{Coslice, CosliceObject};
use crate::dynamics::{ExcitedSubcategory, WeightTable};
use crate::error::{Error, Result};
use crate::functor::{verify_nt, Arrow, Functor, NTComponentMap, Violation};

pub const DEFAULT_CAP: usize = 32;

/// `t_b: X -> Y` for the coslice object `b: B -> X`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub object: ObjectId,
    pub image: ObjectId,
    /// Strongest excited path `X -> Y`; empty for an identity component.
    pub path: Vec<GenId>,
    pub weight: f64,
}

impl Component {
    pub fn is_identity(&self) -> bool {
        self.object == self.image
    }
}

/// A partial natural transformation from the base-of-metaphor functor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartialNT {
    pub metaphor: GenId,
    pub target: ObjectId,
    pub source: ObjectId,
    /// Sorted by `object`; these objects are the domain of the transformation.
    pub components: Vec<Component>,
    /// Snapshot the transformation was extracted from.
    pub step: usize,
    pub first_step: usize,
    pub last_step: usize,
}

impl PartialNT {
    pub fn domain_objects(&self) -> Vec<ObjectId> {
        self.components.iter().map(|c| c.object).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.components.iter().all(Component::is_identity)
    }

    pub fn component(&self, object: ObjectId) -> Option<&Component> {
        self.components.iter().find(|c| c.object == object)
    }

    /// Generators on the witness paths of all components.
    pub fn generators(&self) -> BTreeSet<GenId> {
        self.components
            .iter()
            .flat_map(|c| c.path.iter().copied())
            .collect()
    }

    /// `(object, image)` pairs; the lexicographic tiebreak of reports.
    pub fn key(&self) -> Vec<(ObjectId, ObjectId)> {
        self.components
            .iter()
            .map(|c| (c.object, c.image))
            .collect()
    }

    /// Checks naturality of the components against the excited subcategory.
    pub fn verify(&self, sub: &ExcitedSubcategory<'_>) -> Vec<Violation<CosliceObject>> {
        self.verify_in(sub.category(), sub, |x, y| sub.witness(x, y))
    }

    /// Naturality check against any thin view `base` of `c`; `witness` supplies
    /// paths for the coslice objects out of the source.
    pub fn verify_in<C>(
        &self,
        c: &Category,
        base: &C,
        witness: impl Fn(ObjectId, ObjectId) -> Option<Vec<GenId>>,
    ) -> Vec<Violation<CosliceObject>>
    where
        C: ThinCategory<Object = ObjectId>,
    {
        let morphism = |x: ObjectId, y: ObjectId| -> Morphism {
            let witness = match witness(x, y) {
                Some(p) if !p.is_empty() => Witness::Path(p),
                _ => Witness::Identity,
            };
            Morphism {
                dom: x,
                cod: y,
                witness,
            }
        };
        let f = Morphism {
            dom: self.target,
            cod: self.source,
            witness: Witness::Path(vec![self.metaphor]),
        };
        let mut domain = Vec::new();
        let mut base_map = std::collections::BTreeMap::new();
        let mut induced_map = std::collections::BTreeMap::new();
        let mut t: NTComponentMap<CosliceObject, CosliceObject> = NTComponentMap::new();
        for comp in &self.components {
            let b = CosliceObject {
                apex: self.source,
                morphism: morphism(self.source, comp.object),
            };
            let bf = c.compose(&b.morphism, &f).expect("b starts where f ends");
            let t_b = Morphism {
                dom: comp.object,
                cod: comp.image,
                witness: if comp.path.is_empty() {
                    Witness::Identity
                } else {
                    Witness::Path(comp.path.clone())
                },
            };
            let tbf = c.compose(&t_b, &bf).expect("t_b starts where b ends");
            let src = CosliceObject {
                apex: self.target,
                morphism: bf,
            };
            let dst = CosliceObject {
                apex: self.target,
                morphism: tbf,
            };
            base_map.insert(b.clone(), src.clone());
            induced_map.insert(b.clone(), dst.clone());
            t.insert(b.clone(), Arrow { src, dst });
            domain.push(b);
        }
        let base_functor = Functor::new(domain.clone(), base_map);
        let induced = Functor::new(domain.clone(), induced_map);
        verify_nt(
            &base_functor,
            &induced,
            &t,
            &Coslice::new(base, self.source),
            &Coslice::new(base, self.target),
            &domain,
        )
    }
}

/// Per-object component choices in search order: non-identity components by
/// descending weight (ties by image index), then the identity.
pub(crate) struct Options {
    pub objects: Vec<ObjectId>,
    pub choices: Vec<Vec<Component>>,
}

fn options(sub: &ExcitedSubcategory<'_>, weights: &WeightTable, source: ObjectId) -> Options {
    let mut objects = sub.reachable_from(source);
    objects.push(source);
    objects.sort();
    let choices = objects
        .iter()
        .map(|&x| {
            let mut cs: Vec<Component> = sub
                .reachable_from(x)
                .into_iter()
                .filter_map(|y| {
                    let (path, weight) = sub.strongest_path(weights, x, y)?;
                    Some(Component {
                        object: x,
                        image: y,
                        path,
                        weight,
                    })
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

struct Search<'s, 'a> {
    sub: &'s ExcitedSubcategory<'a>,
    opts: &'s Options,
    chosen: Vec<Option<usize>>,
    cap: usize,
    found: Vec<Vec<Option<usize>>>,
}

impl Search<'_, '_> {
    fn image(&self, i: usize, o: usize) -> ObjectId {
        self.opts.choices[i][o].image
    }

    /// Can object `i` take option `o` alongside the current assignment?
    fn fits(&self, i: usize, o: usize) -> bool {
        let (x, y) = (self.opts.objects[i], self.image(i, o));
        self.chosen.iter().enumerate().all(|(j, cj)| {
            let Some(oj) = *cj else { return true };
            if j == i {
                return true;
            }
            let (xj, yj) = (self.opts.objects[j], self.image(j, oj));
            (!self.sub.reaches(xj, x) || self.sub.reaches(yj, y))
                && (!self.sub.reaches(x, xj) || self.sub.reaches(y, yj))
        })
    }

    fn is_maximal(&self) -> bool {
        // Consistency is pairwise, so a strict consistent extension exists iff a
        // single unassigned object can be added.
        (0..self.chosen.len()).all(|i| {
            self.chosen[i].is_some() || (0..self.opts.choices[i].len()).all(|o| !self.fits(i, o))
        })
    }

    fn go(&mut self, depth: usize) {
        if self.found.len() >= self.cap {
            return;
        }
        if depth == self.chosen.len() {
            if self.is_maximal() {
                self.found.push(self.chosen.clone());
            }
            return;
        }
        for o in 0..self.opts.choices[depth].len() {
            if self.fits(depth, o) {
                self.chosen[depth] = Some(o);
                self.go(depth + 1);
                self.chosen[depth] = None;
                if self.found.len() >= self.cap {
                    return;
                }
            }
        }
        self.go(depth + 1);
    }
}

pub(crate) fn assemble(
    opts: &Options,
    picks: &[Option<usize>],
    f: GenId,
    target: ObjectId,
    source: ObjectId,
    step: usize,
) -> PartialNT {
    let components = picks
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.map(|o| opts.choices[i][o].clone()))
        .collect();
    PartialNT {
        metaphor: f,
        target,
        source,
        components,
        step,
        first_step: step,
        last_step: step,
    }
}

pub(crate) fn metaphor_endpoints(
    c: &Category,
    snapshot: &BTreeSet<GenId>,
    f: GenId,
) -> Result<(ObjectId, ObjectId)> {
    let gen = c.generator(f)?;
    if !snapshot.contains(&f) {
        return Err(Error::MetaphorNotExcited(f.0));
    }
    Ok((gen.dom, gen.cod))
}

/// Maximal natural partial assignments in `snapshot`, in backtracking order
/// (objects by index, choices as in [`Component`] search order, "unassigned"
/// last), truncated to `cap`.
pub fn mine_step(
    c: &Category,
    weights: &WeightTable,
    snapshot: &[GenId],
    f: GenId,
    step: usize,
    cap: usize,
) -> Result<Vec<PartialNT>> {
    let set: BTreeSet<GenId> = snapshot.iter().copied().collect();
    let (target, source) = metaphor_endpoints(c, &set, f)?;
    let sub = ExcitedSubcategory::new(c, set.iter().copied());
    let opts = options(&sub, weights, source);
    let mut search = Search {
        sub: &sub,
        opts: &opts,
        chosen: vec![None; opts.objects.len()],
        cap,
        found: Vec::new(),
    };
    search.go(0);
    let out: Vec<PartialNT> = search
        .found
        .iter()
        .map(|picks| assemble(&opts, picks, f, target, source, step))
        .collect();
    for nt in &out {
        let violations = nt.verify(&sub);
        assert!(
            violations.is_empty(),
            "mined a non-natural assignment: {violations:?}"
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{run, RuleConfig};
    use crate::fixture;

    #[test]
    fn only_metaphor_gives_single_trivial_nt() {
        let c = fixture::tsuchi_with_metaphor();
        let mu = WeightTable::from_category(&c);
        let f = GenId(7);
        let nts = mine_step(&c, &mu, &[f], f, 0, DEFAULT_CAP).unwrap();
        assert_eq!(nts.len(), 1);
        assert!(nts[0].is_trivial());
        assert_eq!(nts[0].domain_objects(), vec![c.id("Sail").unwrap()]);
    }

    #[test]
    fn metaphor_must_be_excited() {
        let c = fixture::tsuchi_with_metaphor();
        let mu = WeightTable::from_category(&c);
        assert_eq!(
            mine_step(&c, &mu, &[GenId(0)], GenId(7), 0, DEFAULT_CAP).unwrap_err(),
            Error::MetaphorNotExcited(7)
        );
    }

    fn final_tsuchi() -> (Category, WeightTable, Vec<GenId>, GenId) {
        let c = fixture::tsuchi();
        let mu = WeightTable::from_category(&c);
        let (w, s) = (c.id("Wing").unwrap(), c.id("Sail").unwrap());
        let trace = run(&c, &mu, w, s, RuleConfig::deterministic()).unwrap();
        let (c, mu) = trace.rebuild().unwrap();
        (
            c,
            mu,
            trace.snapshots.last().unwrap().clone(),
            trace.metaphor.generator,
        )
    }

    #[test]
    fn tsuchi_yacht_is_like_ant_for_wing() {
        let (c, mu, snap, f) = final_tsuchi();
        let nts = mine_step(&c, &mu, &snap, f, 20, DEFAULT_CAP).unwrap();
        let (yacht, ant) = (c.id("Yacht").unwrap(), c.id("Ant").unwrap());
        assert!(nts
            .iter()
            .any(|nt| nt.component(yacht).is_some_and(|k| k.image == ant)));
    }

    #[test]
    fn tsuchi_sea_soil_fusion() {
        let (c, mu, snap, f) = final_tsuchi();
        let nts = mine_step(&c, &mu, &snap, f, 20, DEFAULT_CAP).unwrap();
        let (sea, soil) = (c.id("Sea").unwrap(), c.id("Soil").unwrap());
        let nt = nts
            .iter()
            .find(|nt| nt.component(sea).is_some_and(|k| k.image == soil))
            .expect("an NT sends Sail -> Sea through Soil");
        let sea_soil = c.generator_between(sea, soil).unwrap();
        assert_eq!(nt.component(sea).unwrap().path, vec![sea_soil]);
    }

    #[test]
    fn mined_nts_are_natural_and_maximal() {
        let (c, mu, snap, f) = final_tsuchi();
        let sub = ExcitedSubcategory::new(&c, snap.iter().copied());
        let nts = mine_step(&c, &mu, &snap, f, 20, DEFAULT_CAP).unwrap();
        for a in &nts {
            assert!(a.verify(&sub).is_empty());
            for b in &nts {
                let (ka, kb) = (a.key(), b.key());
                let sub_of = ka.len() < kb.len() && ka.iter().all(|p| kb.contains(p));
                assert!(!sub_of, "{ka:?} is contained in {kb:?}");
            }
        }
    }

    #[test]
    fn cap_truncates() {
        let (c, mu, snap, f) = final_tsuchi();
        let all = mine_step(&c, &mu, &snap, f, 20, DEFAULT_CAP).unwrap();
        let two = mine_step(&c, &mu, &snap, f, 20, 2).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(&all[..2], &two[..]);
    }
}
