//! Workbench for substructural lambda calculi and their combinatory algebras.
//!
//! The library has three layers:
//!
//! * terms: abstract syntax for the ordinary, linear, planar, planar-tensor
//!   and bi-planar calculi, with structural-discipline validation and a
//!   normalizing rewrite engine ([`syntax`], [`rewrite`]);
//! * translations: bracket abstraction for the SK / BCI / BI• / bi-BDI bases,
//!   the tensor-to-combinator translation, the call-by-value CPS translation
//!   and the planar left-inverse construction ([`compile`]);
//! * models: applicative structures (term models, ordered-group tree models,
//!   finite magmas), axiom checking and hierarchy classification, and finite
//!   assemblies with realizer verification ([`algebra`], [`models`],
//!   [`assemblies`]).
//!
//! Randomized term generators used by the property suites live in [`gen`].

pub mod algebra;
pub mod assemblies;
pub mod compile;
pub mod gen;
pub mod models;
pub mod rewrite;
pub mod syntax;

pub use rewrite::EqVerdict;
pub use syntax::{Discipline, Term};
