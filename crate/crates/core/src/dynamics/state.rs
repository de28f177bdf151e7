use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::category::{Category, GenId, ObjectId, Reachability, ThinCategory};
use crate::error::{Error, Result};

/// The weight μ on generators, indexed by generator id.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightTable(Vec<f64>);

impl WeightTable {
    pub fn from_category(c: &Category) -> Self {
        WeightTable(c.generators().iter().map(|g| g.weight).collect())
    }

    pub fn new(weights: Vec<f64>) -> Result<Self> {
        for (i, &w) in weights.iter().enumerate() {
            if !(w > 0.0 && w <= 1.0) {
                return Err(Error::InvalidPath(format!("weight of g{i} is {w}")));
            }
        }
        Ok(WeightTable(weights))
    }

    pub fn get(&self, g: GenId) -> f64 {
        self.0[g.0]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub(crate) fn push(&mut self, w: f64) {
        self.0.push(w);
    }

    /// `μ'(g) = min(1, μ(g) + eta)` on `components`, unchanged elsewhere.
    pub fn update_weights(&self, components: &BTreeSet<GenId>, eta: f64) -> Result<WeightTable> {
        if !(eta.is_finite() && eta >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "eta must be a non-negative real, got {eta}"
            )));
        }
        let mut next = self.clone();
        for &g in components {
            let w = next.0.get_mut(g.0).ok_or(Error::UnknownGenerator(g.0))?;
            *w = (*w + eta).min(1.0);
        }
        Ok(next)
    }
}

/// Product of generator weights along a non-empty generator path.
pub fn composite_weight(c: &Category, weights: &WeightTable, path: &[GenId]) -> Result<f64> {
    c.check_path(path)?;
    Ok(path.iter().map(|&g| weights.get(g)).product())
}

/// Bookkeeping for an unconnected fork between two codomains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForkWatch {
    pub apex: ObjectId,
    pub misses: u32,
}

/// The excited subcategory at step `t`, stored on generators.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExcitationState {
    pub excited: BTreeSet<GenId>,
    pub clamped: BTreeSet<GenId>,
    pub step: u32,
    pub fork_watch: BTreeMap<(ObjectId, ObjectId), ForkWatch>,
}

impl ExcitationState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_excited(&self, g: GenId) -> bool {
        self.excited.contains(&g)
    }

    pub fn snapshot(&self) -> Vec<GenId> {
        self.excited.iter().copied().collect()
    }

    pub fn subcategory<'a>(&self, c: &'a Category) -> ExcitedSubcategory<'a> {
        ExcitedSubcategory::new(c, self.excited.iter().copied())
    }
}

/// Thin subcategory spanned by a set of excited generators: its objects are the
/// endpoints of those generators, its morphisms the paths through them.
#[derive(Clone, Debug)]
pub struct ExcitedSubcategory<'a> {
    category: &'a Category,
    excited: Vec<bool>,
    present: Vec<bool>,
    reach: Reachability,
}

impl<'a> ExcitedSubcategory<'a> {
    pub fn new(category: &'a Category, excited: impl IntoIterator<Item = GenId>) -> Self {
        let mut mask = vec![false; category.generator_count()];
        let mut present = vec![false; category.object_count()];
        for g in excited {
            mask[g.0] = true;
            let gen = &category.generators()[g.0];
            present[gen.dom.0] = true;
            present[gen.cod.0] = true;
        }
        let reach = Reachability::compute(category.object_count(), |x| {
            category
                .outgoing(ObjectId(x))
                .iter()
                .filter(|g| mask[g.0])
                .map(|g| category.generators()[g.0].cod.0)
                .collect::<Vec<_>>()
        });
        ExcitedSubcategory {
            category,
            excited: mask,
            present,
            reach,
        }
    }

    pub fn category(&self) -> &'a Category {
        self.category
    }

    pub fn is_excited(&self, g: GenId) -> bool {
        self.excited[g.0]
    }

    pub fn objects(&self) -> Vec<ObjectId> {
        self.category
            .objects()
            .filter(|x| self.present[x.0])
            .collect()
    }

    pub fn contains_object(&self, x: ObjectId) -> bool {
        self.present[x.0]
    }

    /// `true` iff a (possibly empty) excited path joins `x` to `y` and both are present.
    pub fn reaches(&self, x: ObjectId, y: ObjectId) -> bool {
        self.present[x.0] && self.present[y.0] && self.reach.get(x.0, y.0)
    }

    /// Non-identity codomains reachable from `x`, in index order.
    pub fn reachable_from(&self, x: ObjectId) -> Vec<ObjectId> {
        if !self.present[x.0] {
            return Vec::new();
        }
        self.category
            .objects()
            .filter(|&y| y != x && self.reach.get(x.0, y.0))
            .collect()
    }

    /// Shortest excited path, lexicographic tiebreak.
    pub fn witness(&self, x: ObjectId, y: ObjectId) -> Option<Vec<GenId>> {
        if !self.reaches(x, y) {
            return None;
        }
        self.category
            .shortest_path_within(x, y, |g| self.excited[g.0])
    }

    /// Excited path of maximal weight product; ties go to the shorter path, then
    /// the lexicographically smaller one. Returns `(vec![], 1.0)` for `x == y`.
    pub fn strongest_path(
        &self,
        weights: &WeightTable,
        x: ObjectId,
        y: ObjectId,
    ) -> Option<(Vec<GenId>, f64)> {
        if !self.reaches(x, y) {
            return None;
        }
        if x == y {
            return Some((Vec::new(), 1.0));
        }
        // Label-setting search: extending a path never improves its key because
        // weights are at most 1 and length grows.
        let n = self.category.object_count();
        let mut best: Vec<Option<(f64, Vec<GenId>)>> = vec![None; n];
        let mut settled = vec![false; n];
        best[x.0] = Some((1.0, Vec::new()));
        loop {
            let mut pick: Option<usize> = None;
            for v in 0..n {
                if settled[v] || best[v].is_none() {
                    continue;
                }
                pick = match pick {
                    Some(u) if !better(best[v].as_ref().unwrap(), best[u].as_ref().unwrap()) => {
                        Some(u)
                    }
                    _ => Some(v),
                };
            }
            let u = pick?;
            settled[u] = true;
            let (w_u, path_u) = best[u].clone().unwrap();
            if u == y.0 {
                return Some((path_u, w_u));
            }
            for &g in self.category.outgoing(ObjectId(u)) {
                if !self.excited[g.0] {
                    continue;
                }
                let v = self.category.generators()[g.0].cod.0;
                if settled[v] {
                    continue;
                }
                let mut path = path_u.clone();
                path.push(g);
                let cand = (w_u * weights.get(g), path);
                if best[v].as_ref().is_none_or(|cur| better(&cand, cur)) {
                    best[v] = Some(cand);
                }
            }
        }
    }

    /// The derived excited morphism set as `(dom, cod)` pairs, identities included.
    pub fn morphisms(&self) -> BTreeSet<(ObjectId, ObjectId)> {
        let objs = self.objects();
        let mut out = BTreeSet::new();
        for &x in &objs {
            for &y in &objs {
                if self.reach.get(x.0, y.0) {
                    out.insert((x, y));
                }
            }
        }
        out
    }
}

fn better(a: &(f64, Vec<GenId>), b: &(f64, Vec<GenId>)) -> bool {
    match a.0.total_cmp(&b.0) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => (a.1.len(), &a.1) < (b.1.len(), &b.1),
    }
}

impl ThinCategory for ExcitedSubcategory<'_> {
    type Object = ObjectId;

    fn contains(&self, x: &ObjectId) -> bool {
        x.0 < self.present.len() && self.present[x.0]
    }

    fn has_hom(&self, x: &ObjectId, y: &ObjectId) -> bool {
        self.contains(x) && self.contains(y) && self.reach.get(x.0, y.0)
    }
}

/// Basic rule: every composite of excited morphisms and every endpoint identity
/// is excited. Pure query over the current state.
pub fn basic_closure(state: &ExcitationState, c: &Category) -> BTreeSet<(ObjectId, ObjectId)> {
    state.subcategory(c).morphisms()
}

/// Checks a derived excited set against the basic rule for `excited` generators.
pub fn check_basic_rule(
    c: &Category,
    excited: &BTreeSet<GenId>,
    derived: &BTreeSet<(ObjectId, ObjectId)>,
) -> Result<(), String> {
    for &g in excited {
        let gen = &c.generators()[g.0];
        for z in [gen.dom, gen.cod] {
            if !derived.contains(&(z, z)) {
                return Err(format!("identity of `{}` is not excited", c.label(z)));
            }
        }
        if !derived.contains(&(gen.dom, gen.cod)) {
            return Err(format!(
                "excited generator {} missing",
                c.describe_generator(g)
            ));
        }
    }
    let mut by_dom: BTreeMap<ObjectId, Vec<ObjectId>> = BTreeMap::new();
    for &(x, y) in derived {
        by_dom.entry(x).or_default().push(y);
    }
    for &(x, y) in derived {
        for &z in by_dom.get(&y).map(Vec::as_slice).unwrap_or(&[]) {
            if !derived.contains(&(x, z)) {
                return Err(format!(
                    "composite {} -> {} -> {} is not excited",
                    c.label(x),
                    c.label(y),
                    c.label(z)
                ));
            }
        }
    }
    Ok(())
}
