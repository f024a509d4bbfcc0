//! Finite magmas given by an explicit, possibly partial, application table.

use crate::algebra::{AlgebraError, ApplicativeStructure, Extensible, UnaryFn};
use crate::rewrite::EqVerdict;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct FiniteMagma {
    names: Vec<String>,
    table: Vec<Vec<Option<usize>>>,
    distinguished: BTreeMap<String, usize>,
    unaries: BTreeMap<String, Vec<Option<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MagmaError {
    #[error("table is not square: row {0} has length {1}, expected {2}")]
    NotSquare(usize, usize, usize),
    #[error("entry out of range: {0}")]
    OutOfRange(usize),
    #[error("unknown element name {0}")]
    UnknownName(String),
}

impl FiniteMagma {
    /// Builds a magma from a square table; `table[i][j]` is `i · j`.
    pub fn new(table: Vec<Vec<Option<usize>>>) -> Result<FiniteMagma, MagmaError> {
        let n = table.len();
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(MagmaError::NotSquare(i, row.len(), n));
            }
            for e in row.iter().flatten() {
                if *e >= n {
                    return Err(MagmaError::OutOfRange(*e));
                }
            }
        }
        Ok(FiniteMagma {
            names: (0..n).map(|i| format!("e{i}")).collect(),
            table,
            distinguished: BTreeMap::new(),
            unaries: BTreeMap::new(),
        })
    }

    pub fn with_names<I: IntoIterator<Item = S>, S: Into<String>>(mut self, names: I) -> Self {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() == self.names.len() {
            self.names = names;
        }
        self
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn elem_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn install_unary_table(
        &mut self,
        op: &str,
        table: Vec<Option<usize>>,
    ) -> Result<(), MagmaError> {
        if table.len() != self.size() {
            return Err(MagmaError::NotSquare(0, table.len(), self.size()));
        }
        self.unaries.insert(op.to_string(), table);
        Ok(())
    }
}

impl ApplicativeStructure for FiniteMagma {
    type Elem = usize;

    fn rapp(&self, f: &usize, a: &usize) -> Option<usize> {
        self.table[*f][*a]
    }

    fn is_total(&self) -> bool {
        self.table.iter().all(|row| row.iter().all(Option::is_some))
    }

    fn distinguished(&self, name: &str) -> Option<usize> {
        self.distinguished.get(name).copied()
    }

    fn unary(&self, op: &str, e: &usize) -> Option<usize> {
        self.unaries.get(op).and_then(|t| t[*e])
    }

    fn eq(&self, a: &usize, b: &usize) -> EqVerdict {
        if a == b {
            EqVerdict::Equal
        } else {
            EqVerdict::NotEqual
        }
    }

    fn sample(&self, seed: u64, n: usize) -> Vec<usize> {
        let size = self.size();
        (0..n).map(|i| (i + seed as usize) % size.max(1)).collect()
    }

    fn show(&self, e: &usize) -> String {
        self.names[*e].clone()
    }
}

impl Extensible for FiniteMagma {
    fn install(&mut self, name: &str, e: usize) {
        self.distinguished.insert(name.to_string(), e);
    }

    fn install_unary(&mut self, op: &str, f: UnaryFn<usize>) -> Result<(), AlgebraError> {
        if self.unaries.contains_key(op) {
            return Err(AlgebraError::DuplicateUnary(op.to_string()));
        }
        let table: Vec<Option<usize>> = (0..self.size()).map(|i| f(&i)).collect();
        self.unaries.insert(op.to_string(), table);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_axiom, ax_b, ax_i, ax_lp, AxiomVerdict, CheckMode, Extensible};

    const EXHAUSTIVE: CheckMode = CheckMode::Sampled { n: 400, seed: 0 };

    #[test]
    fn singleton_total_magma_passes_i() {
        let mut m = FiniteMagma::new(vec![vec![Some(0)]]).unwrap();
        m.install("I", 0);
        let rep = check_axiom(&m, &ax_i(), EXHAUSTIVE).unwrap();
        assert!(rep.holds());
    }

    #[test]
    fn left_projection_fails_b() {
        // a · b = a for all a, b.
        let mut m = FiniteMagma::new(vec![
            vec![Some(0), Some(0)],
            vec![Some(1), Some(1)],
        ])
        .unwrap();
        m.install("B", 0);
        let rep = check_axiom(&m, &ax_b(), EXHAUSTIVE).unwrap();
        assert!(matches!(rep.verdict, AxiomVerdict::FailsAt(_)));
        // The I axiom fails for candidate I = e0 at b = e1.
        m.install("I", 0);
        let rep = check_axiom(&m, &ax_i(), EXHAUSTIVE).unwrap();
        assert!(matches!(rep.verdict, AxiomVerdict::FailsAt(_)));
    }

    #[test]
    fn empty_partial_table_fails_definedness() {
        let mut m = FiniteMagma::new(vec![vec![None]]).unwrap();
        m.install("I", 0);
        assert!(!m.is_total());
        let rep = check_axiom(&m, &ax_i(), EXHAUSTIVE).unwrap();
        // I x undefined but x defined: Kleene equality fails.
        assert!(matches!(rep.verdict, AxiomVerdict::FailsAt(_)));
    }

    #[test]
    fn constant_zero_magma_satisfies_lp() {
        // Every product is e0: L x (P y z) = e0 = x y z.
        let n = 3;
        let table = vec![vec![Some(0); n]; n];
        let mut m = FiniteMagma::new(table).unwrap();
        m.install("L", 0);
        m.install("P", 0);
        let rep = check_axiom(&m, &ax_lp(), EXHAUSTIVE).unwrap();
        assert!(rep.holds());
    }
}
