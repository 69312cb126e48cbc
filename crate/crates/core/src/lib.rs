//! Graph cobordisms between finite sets.
//!
//! A [`Gaf`] is a finite graph with some vertices attached to a finite set `A` and some
//! vertices marked by a finite set `B`; it is a 1-morphism `B → A`. Tree collapses
//! ([`GafMorphism`]) are the 2-morphisms. The crate implements their compositions, the
//! canonical generators, gradings, normalization procedures, the realization into
//! cospans of 1-complexes and bounded enumeration.

pub mod cospan;
pub mod catalog;
pub mod error;
pub mod finmap;
pub mod gaf;
pub mod grading;
pub mod generators;
pub mod iso;
pub mod monoidal;
pub mod morphism;
pub mod normalize;
mod union_find;

pub use error::{Error, Result};
pub use finmap::FinMap;
pub use gaf::{Gaf, RawGaf, RealizationInvariants, Selection, SubGaf};
pub use iso::{automorphisms, is_isomorphic, isomorphisms, BoundaryMode};
pub use monoidal::{compose_h, compose_h_m, embed_finmap, identity_gaf, tensor, tensor_m};
pub use morphism::{collapse_edges, compose_v, morphisms_between, GafMorphism, HalfEdgeImage, RawMorphism};
pub use catalog::{canonical_form, enumerate_gafs, expansions, nerve_export, zigzag_connected, NerveData};
pub use cospan::{compose_nf, realize_nf, CospanNF};
pub use grading::{ce, grade, grade_s, ColoredMorphism, Coloring};
