//! Finite thin categories presented by weighted generators.
//!
//! Objects are images, generators are directed associations between them, and
//! the morphisms are the reflexive-transitive closure of the generators. Because
//! the category is thin, a morphism is identified by its `(dom, cod)` pair; the
//! generator path carried along is only a witness.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense index of an object, assigned in input order at build time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectId(pub usize);

/// Dense index of a generator, assigned in input order at build time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GenId(pub usize);

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub id: GenId,
    pub dom: ObjectId,
    pub cod: ObjectId,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    Identity,
    Path(Vec<GenId>),
}

impl Witness {
    pub fn generators(&self) -> &[GenId] {
        match self {
            Witness::Identity => &[],
            Witness::Path(p) => p,
        }
    }
}

/// A morphism of a thin category. Equality and ordering only look at the
/// endpoints; two morphisms with different witnesses are the same morphism.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Morphism {
    pub dom: ObjectId,
    pub cod: ObjectId,
    pub witness: Witness,
}

impl Morphism {
    pub fn identity(x: ObjectId) -> Self {
        Morphism {
            dom: x,
            cod: x,
            witness: Witness::Identity,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod
    }

    fn key(&self) -> (ObjectId, ObjectId) {
        (self.dom, self.cod)
    }
}

impl PartialEq for Morphism {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Morphism {}

impl PartialOrd for Morphism {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Morphism {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl std::hash::Hash for Morphism {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

/// A thin category viewed as a preorder: all a law checker needs is
/// membership and hom non-emptiness.
pub trait ThinCategory {
    type Object: Clone + Ord + fmt::Debug;

    fn contains(&self, x: &Self::Object) -> bool;

    fn has_hom(&self, x: &Self::Object, y: &Self::Object) -> bool;
}

/// Square boolean reachability matrix, one bit row per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reachability {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Reachability {
    /// Reflexive-transitive closure of the edges yielded by `succ`.
    pub fn compute<I>(n: usize, mut succ: impl FnMut(usize) -> I) -> Self
    where
        I: IntoIterator<Item = usize>,
    {
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        let adj: Vec<Vec<usize>> = (0..n).map(|x| succ(x).into_iter().collect()).collect();
        let mut queue = VecDeque::new();
        for src in 0..n {
            let row = &mut bits[src * words..(src + 1) * words];
            row[src / 64] |= 1 << (src % 64);
            queue.push_back(src);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    let (w, b) = (y / 64, 1u64 << (y % 64));
                    if row[w] & b == 0 {
                        row[w] |= b;
                        queue.push_back(y);
                    }
                }
            }
        }
        Reachability { n, words, bits }
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        debug_assert!(x < self.n && y < self.n);
        self.bits[x * self.words + y / 64] & (1 << (y % 64)) != 0
    }
}

#[derive(Clone, Debug)]
pub struct Category {
    labels: Vec<String>,
    by_label: HashMap<String, ObjectId>,
    generators: Vec<Generator>,
    outgoing: Vec<Vec<GenId>>,
    by_pair: HashMap<(ObjectId, ObjectId), GenId>,
    reach: Reachability,
}

impl Category {
    /// Builds a category from labelled objects and `(dom, cod, weight)` generators.
    pub fn build<S, T>(objects: &[S], generators: &[(T, T, f64)]) -> Result<Self>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let mut labels = Vec::with_capacity(objects.len());
        let mut by_label = HashMap::with_capacity(objects.len());
        for (i, label) in objects.iter().enumerate() {
            let label = label.as_ref();
            if label.is_empty() {
                return Err(Error::EmptyLabel(i));
            }
            if by_label.insert(label.to_owned(), ObjectId(i)).is_some() {
                return Err(Error::DuplicateLabel(label.to_owned()));
            }
            labels.push(label.to_owned());
        }

        let mut gens = Vec::with_capacity(generators.len());
        let mut by_pair = HashMap::with_capacity(generators.len());
        for (i, (dom, cod, weight)) in generators.iter().enumerate() {
            let (dom_l, cod_l) = (dom.as_ref(), cod.as_ref());
            let dom = *by_label
                .get(dom_l)
                .ok_or_else(|| Error::UnknownObject(dom_l.to_owned()))?;
            let cod = *by_label
                .get(cod_l)
                .ok_or_else(|| Error::UnknownObject(cod_l.to_owned()))?;
            if dom == cod {
                return Err(Error::SelfLoopGenerator(dom_l.to_owned()));
            }
            if !(*weight > 0.0 && *weight <= 1.0) {
                return Err(Error::WeightOutOfRange {
                    dom: dom_l.to_owned(),
                    cod: cod_l.to_owned(),
                    weight: *weight,
                });
            }
            if by_pair.insert((dom, cod), GenId(i)).is_some() {
                return Err(Error::DuplicateGenerator {
                    dom: dom_l.to_owned(),
                    cod: cod_l.to_owned(),
                });
            }
            gens.push(Generator {
                id: GenId(i),
                dom,
                cod,
                weight: *weight,
            });
        }

        Ok(Self::assemble(labels, by_label, gens, by_pair))
    }

    fn assemble(
        labels: Vec<String>,
        by_label: HashMap<String, ObjectId>,
        generators: Vec<Generator>,
        by_pair: HashMap<(ObjectId, ObjectId), GenId>,
    ) -> Self {
        let n = labels.len();
        let mut outgoing = vec![Vec::new(); n];
        for g in &generators {
            outgoing[g.dom.0].push(g.id);
        }
        let reach = Reachability::compute(n, |x| {
            outgoing[x]
                .iter()
                .map(|g| generators[g.0].cod.0)
                .collect::<Vec<_>>()
        });
        Category {
            labels,
            by_label,
            generators,
            outgoing,
            by_pair,
            reach,
        }
    }

    /// Returns a copy of this category with one more generator appended.
    pub fn with_generator(&self, dom: ObjectId, cod: ObjectId, weight: f64) -> Result<Self> {
        self.check_object(dom)?;
        self.check_object(cod)?;
        if dom == cod {
            return Err(Error::SelfLoopGenerator(self.label(dom).to_owned()));
        }
        if !(weight > 0.0 && weight <= 1.0) {
            return Err(Error::WeightOutOfRange {
                dom: self.label(dom).to_owned(),
                cod: self.label(cod).to_owned(),
                weight,
            });
        }
        if self.by_pair.contains_key(&(dom, cod)) {
            return Err(Error::DuplicateGenerator {
                dom: self.label(dom).to_owned(),
                cod: self.label(cod).to_owned(),
            });
        }
        let id = GenId(self.generators.len());
        let mut generators = self.generators.clone();
        generators.push(Generator {
            id,
            dom,
            cod,
            weight,
        });
        let mut by_pair = self.by_pair.clone();
        by_pair.insert((dom, cod), id);
        Ok(Self::assemble(
            self.labels.clone(),
            self.by_label.clone(),
            generators,
            by_pair,
        ))
    }

    pub fn object_count(&self) -> usize {
        self.labels.len()
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjectId> + '_ {
        (0..self.labels.len()).map(ObjectId)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, id: GenId) -> Result<&Generator> {
        self.generators
            .get(id.0)
            .ok_or(Error::UnknownGenerator(id.0))
    }

    pub fn generator_between(&self, dom: ObjectId, cod: ObjectId) -> Option<GenId> {
        self.by_pair.get(&(dom, cod)).copied()
    }

    /// Outgoing generators of `x`, in ascending id order.
    pub fn outgoing(&self, x: ObjectId) -> &[GenId] {
        &self.outgoing[x.0]
    }

    pub fn label(&self, x: ObjectId) -> &str {
        &self.labels[x.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn id(&self, label: &str) -> Result<ObjectId> {
        self.by_label
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownObject(label.to_owned()))
    }

    pub(crate) fn check_object(&self, x: ObjectId) -> Result<()> {
        if x.0 < self.labels.len() {
            Ok(())
        } else {
            Err(Error::UnknownObject(x.to_string()))
        }
    }

    /// `true` iff `y` is reachable from `x` (reflexively).
    pub fn reaches(&self, x: ObjectId, y: ObjectId) -> bool {
        self.reach.get(x.0, y.0)
    }

    /// Objects reachable from `x` through at least one generator, excluding `x`.
    pub fn reachable_from(&self, x: ObjectId) -> Vec<ObjectId> {
        self.objects()
            .filter(|&y| y != x && self.reaches(x, y))
            .collect()
    }

    /// The unique morphism `x -> y`, if any. The witness is a shortest generator
    /// path, ties broken by the lexicographically smallest generator-id sequence.
    pub fn hom(&self, x: ObjectId, y: ObjectId) -> Result<Option<Morphism>> {
        self.check_object(x)?;
        self.check_object(y)?;
        if x == y {
            return Ok(Some(Morphism::identity(x)));
        }
        if !self.reaches(x, y) {
            return Ok(None);
        }
        Ok(self
            .shortest_path_within(x, y, |_| true)
            .map(|path| Morphism {
                dom: x,
                cod: y,
                witness: Witness::Path(path),
            }))
    }

    pub fn hom_by_label(&self, x: &str, y: &str) -> Result<Option<Morphism>> {
        self.hom(self.id(x)?, self.id(y)?)
    }

    /// Shortest path `x -> y` through generators accepted by `allow`, lexicographic
    /// tiebreak. Returns `Some(vec![])` when `x == y`.
    pub fn shortest_path_within(
        &self,
        x: ObjectId,
        y: ObjectId,
        allow: impl Fn(GenId) -> bool,
    ) -> Option<Vec<GenId>> {
        if x == y {
            return Some(Vec::new());
        }
        // BFS with dequeue order equal to lexicographic path order per level, so
        // the first discovery of each node carries its smallest shortest path.
        let mut parent: Vec<Option<GenId>> = vec![None; self.object_count()];
        let mut seen = vec![false; self.object_count()];
        seen[x.0] = true;
        let mut queue = VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            for &g in &self.outgoing[u.0] {
                if !allow(g) {
                    continue;
                }
                let v = self.generators[g.0].cod;
                if seen[v.0] {
                    continue;
                }
                seen[v.0] = true;
                parent[v.0] = Some(g);
                if v == y {
                    let mut path = Vec::new();
                    let mut cur = y;
                    while let Some(g) = parent[cur.0] {
                        path.push(g);
                        cur = self.generators[g.0].dom;
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(v);
            }
        }
        None
    }

    /// Composite `g ∘ f`. Requires `f.cod == g.dom`.
    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism> {
        if f.cod != g.dom {
            return Err(Error::NonComposable {
                first: self.describe(f),
                first_cod: self.label(f.cod).to_owned(),
                second: self.describe(g),
                second_dom: self.label(g.dom).to_owned(),
            });
        }
        let mut path = f.witness.generators().to_vec();
        path.extend_from_slice(g.witness.generators());
        let witness = if path.is_empty() {
            Witness::Identity
        } else {
            Witness::Path(path)
        };
        Ok(Morphism {
            dom: f.dom,
            cod: g.cod,
            witness,
        })
    }

    /// Checks that a morphism's witness is a real generator path between its endpoints.
    pub fn validate(&self, m: &Morphism) -> Result<()> {
        self.check_object(m.dom)?;
        self.check_object(m.cod)?;
        match &m.witness {
            Witness::Identity if m.dom == m.cod => Ok(()),
            Witness::Identity => Err(Error::InvalidPath(format!(
                "identity witness on {} -> {}",
                self.label(m.dom),
                self.label(m.cod)
            ))),
            Witness::Path(path) => {
                self.check_path(path)?;
                let first = &self.generators[path[0].0];
                let last = &self.generators[path[path.len() - 1].0];
                if first.dom != m.dom || last.cod != m.cod {
                    return Err(Error::InvalidPath(format!(
                        "witness endpoints do not match {}",
                        self.describe(m)
                    )));
                }
                Ok(())
            }
        }
    }

    /// Checks that `path` is a non-empty chain of existing, consecutive generators.
    pub fn check_path(&self, path: &[GenId]) -> Result<()> {
        if path.is_empty() {
            return Err(Error::InvalidPath("empty path".into()));
        }
        let mut prev: Option<ObjectId> = None;
        for &g in path {
            let gen = self.generator(g)?;
            if let Some(p) = prev {
                if p != gen.dom {
                    return Err(Error::InvalidPath(format!(
                        "{} does not start where its predecessor ends",
                        g
                    )));
                }
            }
            prev = Some(gen.cod);
        }
        Ok(())
    }

    /// All simple generator paths `x -> y` of length at most `max_len`, by
    /// descending product of weights, ties by generator-id sequence.
    pub fn enumerate_paths(
        &self,
        x: ObjectId,
        y: ObjectId,
        max_len: usize,
    ) -> Result<Vec<Vec<GenId>>> {
        self.check_object(x)?;
        self.check_object(y)?;
        let mut out = Vec::new();
        if max_len == 0 || x == y {
            return Ok(out);
        }
        let mut on_path = vec![false; self.object_count()];
        on_path[x.0] = true;
        let mut path = Vec::new();
        self.paths_dfs(x, y, max_len, &mut on_path, &mut path, &mut out);
        let weight = |p: &Vec<GenId>| {
            p.iter()
                .map(|g| self.generators[g.0].weight)
                .product::<f64>()
        };
        out.sort_by(|a, b| weight(b).total_cmp(&weight(a)).then_with(|| a.cmp(b)));
        Ok(out)
    }

    fn paths_dfs(
        &self,
        at: ObjectId,
        target: ObjectId,
        budget: usize,
        on_path: &mut [bool],
        path: &mut Vec<GenId>,
        out: &mut Vec<Vec<GenId>>,
    ) {
        if budget == 0 {
            return;
        }
        for &g in &self.outgoing[at.0] {
            let next = self.generators[g.0].cod;
            if on_path[next.0] {
                continue;
            }
            path.push(g);
            if next == target {
                out.push(path.clone());
            } else {
                on_path[next.0] = true;
                self.paths_dfs(next, target, budget - 1, on_path, path, out);
                on_path[next.0] = false;
            }
            path.pop();
        }
    }

    /// Human-readable `Dom -> Cod` rendering.
    pub fn describe(&self, m: &Morphism) -> String {
        format!("{} -> {}", self.label(m.dom), self.label(m.cod))
    }

    pub fn describe_generator(&self, g: GenId) -> String {
        match self.generators.get(g.0) {
            Some(gen) => format!("{} -> {}", self.label(gen.dom), self.label(gen.cod)),
            None => format!("{g}"),
        }
    }

    /// Exhaustively checks closure, unit and associative laws on all object triples.
    pub fn check_laws(&self) -> Vec<LawViolation> {
        let mut out = Vec::new();
        let homs: Vec<Vec<Option<Morphism>>> = self
            .objects()
            .map(|x| {
                self.objects()
                    .map(|y| self.hom(x, y).expect("objects in range"))
                    .collect()
            })
            .collect();
        for x in self.objects() {
            for y in self.objects() {
                let Some(f) = &homs[x.0][y.0] else { continue };
                let left = self.compose(&Morphism::identity(y), f);
                let right = self.compose(f, &Morphism::identity(x));
                if left.as_ref() != Ok(f) || right.as_ref() != Ok(f) {
                    out.push(LawViolation::Unit(x, y));
                }
                for z in self.objects() {
                    let Some(g) = &homs[y.0][z.0] else { continue };
                    let gf = match self.compose(g, f) {
                        Ok(m) => m,
                        Err(_) => {
                            out.push(LawViolation::Closure(x, y, z));
                            continue;
                        }
                    };
                    if homs[x.0][z.0].as_ref() != Some(&gf) {
                        out.push(LawViolation::Closure(x, y, z));
                    }
                    for w in self.objects() {
                        let Some(h) = &homs[z.0][w.0] else { continue };
                        let a = self.compose(h, &gf);
                        let b = self.compose(g, f).and_then(|_| {
                            let hg = self.compose(h, g)?;
                            self.compose(&hg, f)
                        });
                        match (a, b) {
                            (Ok(a), Ok(b)) if a == b => {}
                            _ => out.push(LawViolation::Associativity(x, y, z, w)),
                        }
                    }
                }
            }
        }
        out
    }
}

impl ThinCategory for Category {
    type Object = ObjectId;

    fn contains(&self, x: &ObjectId) -> bool {
        x.0 < self.labels.len()
    }

    fn has_hom(&self, x: &ObjectId, y: &ObjectId) -> bool {
        self.contains(x) && self.contains(y) && self.reaches(*x, *y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LawViolation {
    Unit(ObjectId, ObjectId),
    Closure(ObjectId, ObjectId, ObjectId),
    Associativity(ObjectId, ObjectId, ObjectId, ObjectId),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture;

    fn ids(c: &Category, path: &[GenId]) -> Vec<String> {
        path.iter().map(|&g| c.describe_generator(g)).collect()
    }

    #[test]
    fn single_edge_is_one_directional() {
        let c = Category::build(&["Wing", "Sail"], &[("Wing", "Sail", 0.5)]).unwrap();
        assert!(c.hom_by_label("Wing", "Sail").unwrap().is_some());
        assert!(c.hom_by_label("Sail", "Wing").unwrap().is_none());
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(
            Category::build(&["A", "B"], &[("A", "B", 0.5), ("A", "B", 0.7)]).unwrap_err(),
            Error::DuplicateGenerator {
                dom: "A".into(),
                cod: "B".into()
            }
        );
        assert_eq!(
            Category::build(&["A", "A"], &[] as &[(&str, &str, f64)]).unwrap_err(),
            Error::DuplicateLabel("A".into())
        );
        assert!(matches!(
            Category::build(&["A", "B"], &[("A", "B", 0.0)]),
            Err(Error::WeightOutOfRange { .. })
        ));
        assert!(matches!(
            Category::build(&["A", "B"], &[("A", "B", 1.5)]),
            Err(Error::WeightOutOfRange { .. })
        ));
        assert_eq!(
            Category::build(&["A"], &[("A", "A", 0.5)]).unwrap_err(),
            Error::SelfLoopGenerator("A".into())
        );
        assert_eq!(
            Category::build(&["A"], &[("A", "Z", 0.5)]).unwrap_err(),
            Error::UnknownObject("Z".into())
        );
    }

    #[test]
    fn tsuchi_hom_goes_through_sea() {
        let c = fixture::tsuchi();
        let m = c.hom_by_label("Sail", "Soil").unwrap().unwrap();
        assert_eq!(
            ids(&c, m.witness.generators()),
            ["Sail -> Sea", "Sea -> Soil"]
        );
        assert!(c.hom_by_label("Soil", "Sail").unwrap().is_none());
        let id = c.hom_by_label("Ant", "Ant").unwrap().unwrap();
        assert_eq!(id.witness, Witness::Identity);
    }

    #[test]
    fn hom_on_unknown_object_fails() {
        let c = fixture::tsuchi();
        assert!(matches!(
            c.hom(ObjectId(0), ObjectId(99)),
            Err(Error::UnknownObject(_))
        ));
    }

    #[test]
    fn lexicographic_tiebreak_between_equal_length_paths() {
        // Two length-2 routes A->D; the one through the lower generator ids wins.
        let c = Category::build(
            &["A", "B", "C", "D"],
            &[
                ("A", "C", 0.9),
                ("A", "B", 0.9),
                ("C", "D", 0.9),
                ("B", "D", 0.9),
            ],
        )
        .unwrap();
        let m = c.hom_by_label("A", "D").unwrap().unwrap();
        assert_eq!(m.witness.generators(), &[GenId(0), GenId(2)]);
    }

    #[test]
    fn compose_units_and_errors() {
        let c = fixture::tsuchi();
        let sea_soil = c.hom_by_label("Sea", "Soil").unwrap().unwrap();
        let sail_sea = c.hom_by_label("Sail", "Sea").unwrap().unwrap();
        let sail_soil = c.compose(&sea_soil, &sail_sea).unwrap();
        assert_eq!(c.describe(&sail_soil), "Sail -> Soil");
        assert_eq!(sail_soil.witness.generators().len(), 2);

        let id = Morphism::identity(sail_sea.cod);
        assert_eq!(c.compose(&id, &sail_sea).unwrap(), sail_sea);
        assert!(matches!(
            c.compose(&sail_sea, &sea_soil),
            Err(Error::NonComposable { .. })
        ));
    }

    #[test]
    fn enumerate_paths_examples() {
        let c = fixture::tsuchi();
        let (sail, soil) = (c.id("Sail").unwrap(), c.id("Soil").unwrap());
        let paths = c.enumerate_paths(sail, soil, 2).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(ids(&c, &paths[0]), ["Sail -> Sea", "Sea -> Soil"]);
        assert!(c.enumerate_paths(sail, soil, 1).unwrap().is_empty());

        let (yacht, ant) = (c.id("Yacht").unwrap(), c.id("Ant").unwrap());
        let paths = c.enumerate_paths(yacht, ant, 1).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(ids(&c, &paths[0]), ["Yacht -> Ant"]);
    }

    #[test]
    fn enumerate_paths_sorted_by_weight() {
        let c = Category::build(
            &["A", "B", "C"],
            &[("A", "C", 0.3), ("A", "B", 0.9), ("B", "C", 0.9)],
        )
        .unwrap();
        let paths = c.enumerate_paths(ObjectId(0), ObjectId(2), 3).unwrap();
        assert_eq!(paths, vec![vec![GenId(1), GenId(2)], vec![GenId(0)]]);
    }

    #[test]
    fn laws_hold_on_fixture() {
        assert!(fixture::tsuchi().check_laws().is_empty());
    }

    #[test]
    fn validate_rejects_broken_witness() {
        let c = fixture::tsuchi();
        let bogus = Morphism {
            dom: c.id("Sail").unwrap(),
            cod: c.id("Ant").unwrap(),
            witness: Witness::Path(vec![GenId(5)]),
        };
        assert!(c.validate(&bogus).is_err());
        let m = c.hom_by_label("Sail", "Ant").unwrap().unwrap();
        assert!(c.validate(&m).is_ok());
    }
}
