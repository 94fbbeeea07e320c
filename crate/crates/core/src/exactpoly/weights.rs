//! Weighted homogeneity: detection and checking of weight systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{Polynomial, Rational};
use crate::linalg::{Matrix, Vector};

/// Positive integer weights `p_1..p_m` together with a weighted degree `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSystem {
    pub weights: Vec<u64>,
    pub degree: u64,
}

impl WeightSystem {
    pub fn new(weights: Vec<u64>, degree: u64) -> Self {
        WeightSystem { weights, degree }
    }
}

/// True iff every monomial of `p` has weighted degree `w.degree`.
pub fn is_quasi_homogeneous(p: &Polynomial, w: &WeightSystem) -> bool {
    w.weights.len() == p.nvars()
        && p.terms().all(|(m, _)| m.weighted_degree(&w.weights) == w.degree)
}

/// Normalized weights making `p` weighted-homogeneous, if any exist.
pub fn find_weights(p: &Polynomial) -> Option<WeightSystem> {
    let (weights, degrees) = find_common_weights(std::slice::from_ref(p))?;
    Some(WeightSystem::new(weights, degrees[0]))
}

/// One weight vector making every polynomial in `polys` weighted-homogeneous,
/// each with its own weighted degree. Returns the weights and the degrees.
///
/// The weights solve the linear system stating that all monomials of one
/// polynomial share a weighted degree. When the solution space has dimension
/// above one, small integer combinations of its basis are searched for a
/// strictly positive vector.
pub fn find_common_weights(polys: &[Polynomial]) -> Option<(Vec<u64>, Vec<u64>)> {
    let first = polys.iter().find(|p| !p.is_zero())?;
    let n = first.nvars();
    let mut rows: Vec<Vector> = Vec::new();
    for p in polys {
        let mut terms = p.terms().map(|(m, _)| m.exponents());
        let Some(base) = terms.next() else { continue };
        for e in terms {
            rows.push(
                e.iter()
                    .zip(base)
                    .map(|(&a, &b)| Rational::from_integer(BigInt::from(a as i64 - b as i64)))
                    .collect(),
            );
        }
    }
    let basis = if rows.is_empty() {
        (0..n).map(|i| crate::linalg::unit_vector(n, i)).collect()
    } else {
        Matrix::from_rows(rows).nullspace()
    };
    let positive = positive_in_span(&basis)?;
    let weights = clear_denominators(&positive);
    let degrees: Vec<u64> = polys
        .iter()
        .map(|p| {
            p.terms()
                .next()
                .map_or(0, |(m, _)| m.weighted_degree(&weights))
        })
        .collect();
    if polys
        .iter()
        .zip(&degrees)
        .any(|(p, &d)| !p.is_zero() && d == 0)
    {
        return None;
    }
    let g = weights
        .iter()
        .chain(degrees.iter().filter(|&&d| d > 0))
        .fold(0u64, |acc, &x| acc.gcd(&x));
    Some((
        weights.iter().map(|w| w / g).collect(),
        degrees.iter().map(|d| d / g).collect(),
    ))
}

fn strictly_positive(v: &[Rational]) -> bool {
    v.iter().all(Signed::is_positive)
}

fn positive_in_span(basis: &[Vector]) -> Option<Vector> {
    match basis.len() {
        0 => None,
        1 => {
            let v = &basis[0];
            if strictly_positive(v) {
                Some(v.clone())
            } else {
                let neg: Vector = v.iter().map(|x| -x).collect();
                strictly_positive(&neg).then_some(neg)
            }
        }
        k if k <= 6 => {
            const RANGE: i64 = 3;
            let mut coeffs = vec![-RANGE; k];
            loop {
                let mut v = vec![Rational::zero(); basis[0].len()];
                for (c, b) in coeffs.iter().zip(basis) {
                    crate::linalg::axpy(&mut v, &Rational::from_integer(BigInt::from(*c)), b);
                }
                if strictly_positive(&v) {
                    return Some(v);
                }
                let mut i = 0;
                loop {
                    if i == k {
                        return None;
                    }
                    coeffs[i] += 1;
                    if coeffs[i] > RANGE {
                        coeffs[i] = -RANGE;
                        i += 1;
                    } else {
                        break;
                    }
                }
            }
        }
        _ => None,
    }
}

fn clear_denominators(v: &[Rational]) -> Vec<u64> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| (x / &g).to_u64().expect("weight fits in u64"))
        .collect()
}
