//! Positive gradings of nilpotent algebras.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{in_span, AlgebraError, NilpotentAlgebra};
use crate::exactpoly::{parse, Polynomial, WeightSystem};

/// Degrees of the basis elements of `N`, with `top` the degree of `Ann(N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grading {
    pub degrees: Vec<u64>,
    pub top: u64,
}

impl Grading {
    /// Checks that every basis product is homogeneous of the summed degree
    /// and that `Ann(N)` is the top-degree piece.
    pub fn new(n: &NilpotentAlgebra, degrees: Vec<u64>) -> Result<Self, AlgebraError> {
        let dim = n.dim();
        if degrees.len() != dim {
            return Err(AlgebraError::BadGrading(format!(
                "{} degrees for a {dim}-dimensional algebra",
                degrees.len()
            )));
        }
        if degrees.iter().any(|&d| d == 0) {
            return Err(AlgebraError::BadGrading("degrees must be positive".into()));
        }
        for i in 0..dim {
            for j in i..dim {
                let degree = degrees[i] + degrees[j];
                let p = n.algebra().product(i, j);
                if p.iter().zip(&degrees).any(|(c, &d)| !c.is_zero() && d != degree) {
                    return Err(AlgebraError::GradingViolated { i, j, degree });
                }
            }
        }
        let top = degrees.iter().copied().max().unwrap_or(0);
        let top_piece: Vec<_> = (0..dim)
            .filter(|&k| degrees[k] == top)
            .map(|k| n.algebra().basis_vector(k))
            .collect();
        let ann = n.annihilator();
        if top_piece.len() != ann.len() || !top_piece.iter().all(|v| in_span(ann, v)) {
            return Err(AlgebraError::BadGrading(
                "the annihilator is not the top-degree piece".into(),
            ));
        }
        Ok(Grading { degrees, top })
    }

    /// Basis indices of degree `j`.
    pub fn piece(&self, j: u64) -> Vec<usize> {
        (0..self.degrees.len()).filter(|&k| self.degrees[k] == j).collect()
    }
}

/// Grading induced by weights on the variables, for a nilpotent algebra whose
/// basis labels are monomials in `vars`.
pub fn grading_from_weights(
    n: &NilpotentAlgebra,
    vars: &Arc<[String]>,
    w: &WeightSystem,
) -> Result<Grading, AlgebraError> {
    let degrees = n
        .labels()
        .iter()
        .map(|label| label_degree(label, vars, &w.weights))
        .collect::<Result<Vec<_>, _>>()?;
    Grading::new(n, degrees)
}

fn label_degree(label: &str, vars: &Arc<[String]>, weights: &[u64]) -> Result<u64, AlgebraError> {
    let not_monomial = || AlgebraError::LabelNotMonomial(label.to_string());
    let p: Polynomial = parse(label, vars, &Default::default()).map_err(|_| not_monomial())?;
    match p.terms().collect::<Vec<_>>()[..] {
        [(m, c)] if c.is_one() && weights.len() == m.nvars() => Ok(m.weighted_degree(weights)),
        _ => Err(not_monomial()),
    }
}
