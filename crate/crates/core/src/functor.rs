//! Functors and natural transformations between thin categories, with law
//! verifiers that report violations as data.
//!
//! In a thin category a functor is determined by its object map, and a square
//! commutes as soon as both of its sides exist. The verifiers therefore reduce
//! to hom non-emptiness checks, which is all [`ThinCategory`] exposes.

use std::collections::BTreeMap;

use crate::category::ThinCategory;

/// Object map of a functor from a category with objects `S` to one with objects `T`.
#[derive(Clone, Debug, PartialEq)]
pub struct Functor<S: Ord, T = S> {
    pub domain: Vec<S>,
    pub object_map: BTreeMap<S, T>,
    pub well_formed: bool,
}

impl<S: Ord + Clone, T> Functor<S, T> {
    pub fn new(domain: Vec<S>, object_map: BTreeMap<S, T>) -> Self {
        Functor {
            domain,
            object_map,
            well_formed: false,
        }
    }

    pub fn apply(&self, x: &S) -> Option<&T> {
        self.object_map.get(x)
    }

    /// Runs [`verify_functor`] over the functor's own domain and records the result.
    pub fn verified<D, E>(mut self, dom: &D, cod: &E) -> (Self, Vec<Violation<S>>)
    where
        D: ThinCategory<Object = S>,
        E: ThinCategory<Object = T>,
        S: std::fmt::Debug,
    {
        let violations = verify_functor(&self, dom, cod, &self.domain);
        self.well_formed = violations.is_empty();
        (self, violations)
    }
}

impl<S: Ord + Clone> Functor<S, S> {
    pub fn identity(objects: Vec<S>) -> Self {
        let object_map = objects.iter().map(|x| (x.clone(), x.clone())).collect();
        Functor {
            domain: objects,
            object_map,
            well_formed: true,
        }
    }
}

/// A morphism of a thin category, identified by its endpoints.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arrow<T> {
    pub src: T,
    pub dst: T,
}

/// Components `t_X : F(X) -> G(X)` of a (candidate) natural transformation.
pub type NTComponentMap<S, T> = BTreeMap<S, Arrow<T>>;

/// Which side of the naturality square `t_Y ∘ F(f) = G(f) ∘ t_X` is absent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SquareSide {
    /// `t_Y ∘ F(f)` does not exist.
    Upper,
    /// `G(f) ∘ t_X` does not exist.
    Lower,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation<S> {
    NotInDomain(S),
    Unmapped(S),
    ImageOutside(S),
    /// `f: src -> dst` exists but `F(src) -> F(dst)` does not.
    BrokenMorphism {
        src: S,
        dst: S,
    },
    MissingComponent(S),
    ComponentEndpoints(S),
    ComponentNotAMorphism(S),
    Square {
        src: S,
        dst: S,
        missing: SquareSide,
    },
}

/// Checks the functor conditions over the subcategory spanned by `objects`.
///
/// Preservation of composition and identities is implied once every morphism
/// has an image, so only object images and morphism images are checked.
pub fn verify_functor<S, T, D, E>(
    f: &Functor<S, T>,
    dom: &D,
    cod: &E,
    objects: &[S],
) -> Vec<Violation<S>>
where
    S: Ord + Clone + std::fmt::Debug,
    D: ThinCategory<Object = S>,
    E: ThinCategory<Object = T>,
{
    let mut out = Vec::new();
    let mut images: Vec<Option<&T>> = Vec::with_capacity(objects.len());
    for x in objects {
        if !dom.contains(x) {
            out.push(Violation::NotInDomain(x.clone()));
            images.push(None);
            continue;
        }
        match f.apply(x) {
            None => {
                out.push(Violation::Unmapped(x.clone()));
                images.push(None);
            }
            Some(fx) if !cod.contains(fx) => {
                out.push(Violation::ImageOutside(x.clone()));
                images.push(None);
            }
            Some(fx) => images.push(Some(fx)),
        }
    }
    for (i, x) in objects.iter().enumerate() {
        let Some(fx) = images[i] else { continue };
        for (j, y) in objects.iter().enumerate() {
            let Some(fy) = images[j] else { continue };
            if dom.has_hom(x, y) && !cod.has_hom(fx, fy) {
                out.push(Violation::BrokenMorphism {
                    src: x.clone(),
                    dst: y.clone(),
                });
            }
        }
    }
    out
}

/// Checks that `t` is a natural transformation `F => G` over `objects`.
///
/// A square is reported only when one of its sides is missing; when both exist
/// they are equal by thinness.
pub fn verify_nt<S, T, D, E>(
    f: &Functor<S, T>,
    g: &Functor<S, T>,
    t: &NTComponentMap<S, T>,
    dom: &D,
    cod: &E,
    objects: &[S],
) -> Vec<Violation<S>>
where
    S: Ord + Clone + std::fmt::Debug,
    T: PartialEq,
    D: ThinCategory<Object = S>,
    E: ThinCategory<Object = T>,
{
    let mut out = Vec::new();
    let mut ok: Vec<Option<(&T, &T)>> = Vec::with_capacity(objects.len());
    for x in objects {
        let entry = match (f.apply(x), g.apply(x)) {
            (Some(fx), Some(gx)) => match t.get(x) {
                None => {
                    out.push(Violation::MissingComponent(x.clone()));
                    None
                }
                Some(arrow) if arrow.src != *fx || arrow.dst != *gx => {
                    out.push(Violation::ComponentEndpoints(x.clone()));
                    None
                }
                Some(_) if !cod.has_hom(fx, gx) => {
                    out.push(Violation::ComponentNotAMorphism(x.clone()));
                    None
                }
                Some(_) => Some((fx, gx)),
            },
            _ => {
                out.push(Violation::Unmapped(x.clone()));
                None
            }
        };
        ok.push(entry);
    }
    for (i, x) in objects.iter().enumerate() {
        let Some((fx, gx)) = ok[i] else { continue };
        for (j, y) in objects.iter().enumerate() {
            let Some((fy, gy)) = ok[j] else { continue };
            if !dom.has_hom(x, y) {
                continue;
            }
            // t_Y ∘ F(f) needs F(f); G(f) ∘ t_X needs G(f). Components already exist.
            let upper = cod.has_hom(fx, fy);
            let lower = cod.has_hom(gx, gy);
            let missing = match (upper, lower) {
                (true, true) => continue,
                (false, true) => SquareSide::Upper,
                (true, false) => SquareSide::Lower,
                (false, false) => SquareSide::Both,
            };
            out.push(Violation::Square {
                src: x.clone(),
                dst: y.clone(),
                missing,
            });
        }
    }
    out
}
