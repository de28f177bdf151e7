//! Metaphor comprehension as excitation/relaxation dynamics over a weighted thin
//! category of images.
//!
//! A metaphor "A is like B" excites a morphism `f: A -> B`. Precomposition with
//! `f` gives the base-of-metaphor functor `B\C -> A\C`; the dynamics then
//! excite and relax associations, and the partial natural transformations out
//! of that functor which coexist in the excited subcategory are mined as the
//! metaphor's meanings.

pub mod category;
#[cfg(feature = "cli")]
pub mod cli;
pub mod coslice;
pub mod dot;
pub mod dynamics;
pub mod error;
pub mod fixture;
pub mod functor;
pub mod ingest;
pub mod miner;
pub mod stats;

pub use category::{Category, GenId, Morphism, ObjectId, ThinCategory, Witness};
pub use error::{Error, Result};
