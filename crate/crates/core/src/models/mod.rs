//! Concrete applicative structures: term models for every discipline,
//! ordered-group tree models, and finite magmas.

mod magma;
mod term;
pub mod tree;

pub use magma::{FiniteMagma, MagmaError};
pub use term::{TermModel, TermModelError};
pub use tree::{
    te_adjoint_pair, te_model, tree_model, FreeGroup2, IntAdd, OrderedGroup, TreeModel, TreeSet,
    TreeType, Variant,
};

use crate::syntax::Discipline;

/// Term model of a discipline: closed valid terms modulo the discipline's
/// equality.
pub fn term_model(d: Discipline) -> TermModel {
    TermModel::new(d)
}

/// Finite magma from a square, possibly partial, application table.
pub fn finite_magma(table: Vec<Vec<Option<usize>>>) -> Result<FiniteMagma, MagmaError> {
    FiniteMagma::new(table)
}
