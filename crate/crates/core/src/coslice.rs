//! Coslice categories `A\C` ("meanings of A") and the base-of-metaphor functor.

use std::collections::BTreeMap;

use crate::category::{Category, Morphism, ObjectId, ThinCategory};
use crate::error::{Error, Result};
use crate::functor::{Functor, Violation};

/// An object of `A\C`: a morphism out of the apex `A`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CosliceObject {
    pub apex: ObjectId,
    pub morphism: Morphism,
}

impl CosliceObject {
    pub fn cod(&self) -> ObjectId {
        self.morphism.cod
    }

    pub fn is_identity(&self) -> bool {
        self.morphism.is_identity()
    }
}

/// A commutative triangle `dst = mediator ∘ src`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosliceMorphism {
    pub src: CosliceObject,
    pub dst: CosliceObject,
    pub mediator: Morphism,
}

/// Preorder view of `apex\C` over any thin base category on [`ObjectId`]s.
///
/// Triangles commute automatically in a thin base, so `b1 -> b2` exists iff
/// `cod(b1) -> cod(b2)` does.
#[derive(Clone, Copy, Debug)]
pub struct Coslice<'a, C> {
    pub base: &'a C,
    pub apex: ObjectId,
}

impl<'a, C: ThinCategory<Object = ObjectId>> Coslice<'a, C> {
    pub fn new(base: &'a C, apex: ObjectId) -> Self {
        Coslice { base, apex }
    }
}

impl<C: ThinCategory<Object = ObjectId>> ThinCategory for Coslice<'_, C> {
    type Object = CosliceObject;

    fn contains(&self, b: &CosliceObject) -> bool {
        b.apex == self.apex
            && b.morphism.dom == self.apex
            && self.base.has_hom(&self.apex, &b.cod())
    }

    fn has_hom(&self, b1: &CosliceObject, b2: &CosliceObject) -> bool {
        self.contains(b1) && self.contains(b2) && self.base.has_hom(&b1.cod(), &b2.cod())
    }
}

/// Materialized `apex\C` of a full category: the identity, then one object per
/// reachable codomain in index order.
#[derive(Clone, Debug)]
pub struct CosliceView<'a> {
    category: &'a Category,
    apex: ObjectId,
    objects: Vec<CosliceObject>,
}

pub fn coslice(c: &Category, apex: ObjectId) -> Result<CosliceView<'_>> {
    let mut objects = vec![CosliceObject {
        apex,
        morphism: c.hom(apex, apex)?.expect("identity always exists"),
    }];
    for x in c.reachable_from(apex) {
        let morphism = c.hom(apex, x)?.expect("reachable object has a hom");
        objects.push(CosliceObject { apex, morphism });
    }
    Ok(CosliceView {
        category: c,
        apex,
        objects,
    })
}

impl<'a> CosliceView<'a> {
    pub fn apex(&self) -> ObjectId {
        self.apex
    }

    pub fn objects(&self) -> &[CosliceObject] {
        &self.objects
    }

    pub fn object_to(&self, x: ObjectId) -> Option<&CosliceObject> {
        self.objects.iter().find(|b| b.cod() == x)
    }

    /// The triangle `f1 -> f2`, if `cod(f1) -> cod(f2)` exists.
    pub fn morphism(&self, f1: &CosliceObject, f2: &CosliceObject) -> Option<CosliceMorphism> {
        if f1.apex != self.apex || f2.apex != self.apex {
            return None;
        }
        let mediator = self.category.hom(f1.cod(), f2.cod()).ok()??;
        Some(CosliceMorphism {
            src: f1.clone(),
            dst: f2.clone(),
            mediator,
        })
    }

    pub fn as_preorder(&self) -> Coslice<'a, Category> {
        Coslice::new(self.category, self.apex)
    }
}

/// Reads `f` as `id_B ∘ g_n ∘ ... ∘ g_1 ∘ id_A` and reports the first adjacent
/// pair that does not compose.
fn check_composable(c: &Category, f: &Morphism) -> Result<()> {
    c.check_object(f.dom)?;
    c.check_object(f.cod)?;
    let mut steps: Vec<(String, ObjectId, ObjectId)> =
        vec![(format!("id_{}", c.label(f.dom)), f.dom, f.dom)];
    for &g in f.witness.generators() {
        let gen = c.generator(g)?;
        steps.push((c.describe_generator(g), gen.dom, gen.cod));
    }
    steps.push((format!("id_{}", c.label(f.cod)), f.cod, f.cod));
    for pair in steps.windows(2) {
        let ((first, _, first_cod), (second, second_dom, _)) = (&pair[0], &pair[1]);
        if first_cod != second_dom {
            return Err(Error::NonComposable {
                first: first.clone(),
                first_cod: c.label(*first_cod).to_owned(),
                second: second.clone(),
                second_dom: c.label(*second_dom).to_owned(),
            });
        }
    }
    Ok(())
}

/// Precomposition with `f: A -> B`, mapping `b: B -> X` to `b ∘ f: A -> X`.
///
/// The returned functor has already been checked against `B\C -> A\C`.
pub fn base_of_metaphor(
    c: &Category,
    f: &Morphism,
) -> Result<(Functor<CosliceObject>, Vec<Violation<CosliceObject>>)> {
    check_composable(c, f)?;
    let source = coslice(c, f.cod)?;
    let mut object_map = BTreeMap::new();
    for b in source.objects() {
        let image = CosliceObject {
            apex: f.dom,
            morphism: c.compose(&b.morphism, f)?,
        };
        object_map.insert(b.clone(), image);
    }
    let functor = Functor::new(source.objects().to_vec(), object_map);
    Ok(functor.verified(&Coslice::new(c, f.cod), &Coslice::new(c, f.dom)))
}
