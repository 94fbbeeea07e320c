//! JSON serialization of algebras.
//!
//! Indices are zero-based; only products with `i <= j` are listed and the
//! symmetric half is implied. A unital algebra may omit the unit's products.

use serde::{Deserialize, Serialize};

use super::{AlgebraError, FiniteAlgebra};
use crate::exactpoly::{format_rational, parse_rational};
use crate::groebner::MonomialOrdering;
use crate::linalg;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub k: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub i: usize,
    pub j: usize,
    pub products: Vec<ProductEntry>,
}

/// Where a quotient algebra came from, so its monomial labels can be read
/// back as polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceSpec {
    pub vars: Vec<String>,
    pub generators: Vec<String>,
    pub ordering: MonomialOrdering,
    /// the defining polynomial, for Milnor and Tjurina algebras
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub dim: usize,
    pub unital: bool,
    pub basis: Vec<String>,
    pub table: Vec<TableEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<SourceSpec>,
}

impl AlgebraFile {
    pub fn from_algebra(a: &FiniteAlgebra) -> Self {
        let n = a.dim();
        let mut table = Vec::new();
        for i in 0..n {
            for j in i..n {
                let p = a.product(i, j);
                let products: Vec<ProductEntry> = p
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                    .map(|(k, c)| ProductEntry {
                        k,
                        coeff: format_rational(c),
                    })
                    .collect();
                if !products.is_empty() {
                    table.push(TableEntry { i, j, products });
                }
            }
        }
        AlgebraFile {
            dim: n,
            unital: a.is_unital(),
            basis: a.labels().to_vec(),
            table,
            grading: None,
            source: None,
        }
    }

    pub fn to_algebra(&self) -> Result<FiniteAlgebra, AlgebraError> {
        let n = self.dim;
        if self.basis.len() != n {
            return Err(AlgebraError::BadShape(format!(
                "dim {n} but {} basis labels",
                self.basis.len()
            )));
        }
        let mut entries = Vec::with_capacity(self.table.len());
        for e in &self.table {
            if e.i > e.j {
                return Err(AlgebraError::BadShape(format!("entry ({}, {}) has i > j", e.i, e.j)));
            }
            let mut v = linalg::zero_vector(n);
            for p in &e.products {
                if p.k >= n {
                    return Err(AlgebraError::BadShape(format!("index {} out of range", p.k)));
                }
                v[p.k] += parse_rational(&p.coeff)
                    .map_err(|err| AlgebraError::BadShape(format!("coefficient `{}`: {err}", p.coeff)))?;
            }
            entries.push((e.i, e.j, v));
        }
        FiniteAlgebra::from_products(self.basis.clone(), entries, self.unital)
    }
}
