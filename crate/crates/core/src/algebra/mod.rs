//! Finite-dimensional commutative algebras given by structure constants.
//!
//! [`FiniteAlgebra`] stores `e_i * e_j = sum_k c_ij^k e_k`. Quotients of
//! polynomial rings by zero-dimensional local ideals become unital
//! algebras on their standard monomials ([`QuotientAlgebra`]); their maximal
//! ideals are [`NilpotentAlgebra`]s carrying the power chain, nil-index and
//! annihilator.

mod file;
mod grading;
mod quotient;

use std::fmt;

use num_traits::{One, Zero};

use crate::exactpoly::{Polynomial, Rational};
use crate::linalg::{self, Matrix, Vector};

pub use file::{AlgebraFile, ProductEntry, SourceSpec, TableEntry};
pub use grading::{grading_from_weights, Grading};
pub use quotient::{milnor_algebra, milnor_algebra_with, quotient_algebra, tjurina_algebra, tjurina_algebra_with, QuotientAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("structure table has inconsistent dimensions: {0}")]
    BadShape(String),
    #[error("not commutative: e{i}*e{j} != e{j}*e{i}")]
    NotCommutative { i: usize, j: usize },
    #[error("not associative: (e{i}*e{j})*e{l} != e{i}*(e{j}*e{l})")]
    NotAssociative { i: usize, j: usize, l: usize },
    #[error("e0 is not a unit: e0*e{i} != e{i}")]
    NotUnital { i: usize },
    #[error("non-isolated singularity / infinite quotient")]
    InfiniteQuotient,
    #[error("quotient not local: {0}")]
    NotLocal(String),
    #[error("smooth point: a partial derivative has nonzero constant term")]
    SmoothPoint,
    #[error("polynomial does not vanish at the origin")]
    NotAtOrigin,
    #[error("not nilpotent: the power chain stabilizes at dimension {0}")]
    NotNilpotent(usize),
    #[error("grading violated: e{i}*e{j} leaves degree {degree}")]
    GradingViolated { i: usize, j: usize, degree: u64 },
    #[error("grading invalid: {0}")]
    BadGrading(String),
    #[error("basis label `{0}` is not a monomial")]
    LabelNotMonomial(String),
    #[error("not a basis: rank {rank} of {expected}")]
    NotABasis { rank: usize, expected: usize },
    #[error(transparent)]
    Groebner(#[from] crate::groebner::GroebnerError),
}

/// Coefficient ring for algebra elements: rationals, or polynomials when
/// working with symbolic points of the algebra.
pub trait Coefficient: Clone {
    fn zero_like(&self) -> Self;
    fn vanishes(&self) -> bool;
    fn accumulate(&mut self, other: &Self);
    fn times(&self, other: &Self) -> Self;
    fn scaled_by(&self, c: &Rational) -> Self;
}

impl Coefficient for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn accumulate(&mut self, other: &Self) {
        *self += other;
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled_by(&self, c: &Rational) -> Self {
        self * c
    }
}

impl Coefficient for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.vars().clone())
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn accumulate(&mut self, other: &Self) {
        *self = &*self + other;
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled_by(&self, c: &Rational) -> Self {
        self.scale(c)
    }
}

/// Commutative, associative algebra on a labelled basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    labels: Vec<String>,
    /// `table[i][j]` holds the coordinates of `e_i * e_j`
    table: Vec<Vec<Vector>>,
    unital: bool,
}

impl FiniteAlgebra {
    /// Validated algebra from a full table (commutativity, associativity and,
    /// when `unital`, that `e_0` is a unit are all checked exhaustively).
    pub fn from_table(
        labels: Vec<String>,
        table: Vec<Vec<Vector>>,
        unital: bool,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        if table.len() != n
            || table.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n))
        {
            return Err(AlgebraError::BadShape(format!(
                "expected a {n}x{n} table of length-{n} vectors"
            )));
        }
        if unital && n == 0 {
            return Err(AlgebraError::BadShape("unital algebra needs a basis".into()));
        }
        let a = FiniteAlgebra {
            labels,
            table,
            unital,
        };
        a.check_commutative()?;
        if unital {
            for i in 0..n {
                if a.table[0][i] != linalg::unit_vector(n, i) {
                    return Err(AlgebraError::NotUnital { i });
                }
            }
        }
        a.check_associative()?;
        Ok(a)
    }

    /// Skips validation; callers guarantee the axioms.
    pub(crate) fn from_table_unchecked(labels: Vec<String>, table: Vec<Vec<Vector>>, unital: bool) -> Self {
        FiniteAlgebra {
            labels,
            table,
            unital,
        }
    }

    /// Algebra from `e_i * e_j` entries with `i <= j`; missing products are
    /// zero and the symmetric half is implied.
    pub fn from_products<I>(labels: Vec<String>, entries: I, unital: bool) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (usize, usize, Vector)>,
    {
        let n = labels.len();
        let mut table = vec![vec![linalg::zero_vector(n); n]; n];
        let mut seen = vec![vec![false; n]; n];
        for (i, j, v) in entries {
            if i >= n || j >= n || v.len() != n {
                return Err(AlgebraError::BadShape(format!("entry ({i},{j}) out of range")));
            }
            if seen[i][j] && table[i][j] != v {
                return Err(AlgebraError::NotCommutative { i, j });
            }
            seen[i][j] = true;
            seen[j][i] = true;
            table[i][j] = v.clone();
            table[j][i] = v;
        }
        if unital {
            for i in 0..n {
                if !seen[0][i] {
                    table[0][i] = linalg::unit_vector(n, i);
                    table[i][0] = linalg::unit_vector(n, i);
                }
            }
        }
        Self::from_table(labels, table, unital)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    /// Coordinates of `e_i * e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[Rational] {
        &self.table[i][j]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        linalg::unit_vector(self.dim(), i)
    }

    /// Product of two elements with coefficients in any [`Coefficient`] ring.
    pub fn multiply<T: Coefficient>(&self, a: &[T], b: &[T]) -> Vec<T> {
        let n = self.dim();
        let Some(z) = a.first().map(|x| x.zero_like()) else {
            return Vec::new();
        };
        let mut out = vec![z; n];
        for i in 0..n {
            if a[i].vanishes() {
                continue;
            }
            for j in 0..n {
                if b[j].vanishes() {
                    continue;
                }
                let row = &self.table[i][j];
                if linalg::is_zero_vector(row) {
                    continue;
                }
                let ab = a[i].times(&b[j]);
                for (k, c) in row.iter().enumerate() {
                    if !Zero::is_zero(c) {
                        out[k].accumulate(&ab.scaled_by(c));
                    }
                }
            }
        }
        out
    }

    /// Matrix of `u -> e_i * u`.
    pub fn left_multiplication(&self, i: usize) -> Matrix {
        Matrix::from_columns(&self.table[i])
    }

    /// Matrix of `u -> v * u`.
    pub fn multiplication_operator(&self, v: &[Rational]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.multiply(v, &self.basis_vector(j))).collect();
        Matrix::from_columns(&cols)
    }

    fn check_commutative(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                if self.table[i][j] != self.table[j][i] {
                    return Err(AlgebraError::NotCommutative { i, j });
                }
            }
        }
        Ok(())
    }

    /// Exact associativity check on all basis triples.
    pub fn check_associative(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = &self.table[i][j];
                for l in 0..n {
                    let left = self.multiply(ij, &self.basis_vector(l));
                    let right = self.multiply(&self.basis_vector(i), &self.table[j][l]);
                    if left != right {
                        return Err(AlgebraError::NotAssociative { i, j, l });
                    }
                }
            }
        }
        Ok(())
    }

    /// `v^k` by repeated squaring; `k >= 1`.
    pub fn power(&self, v: &[Rational], k: usize) -> Vector {
        assert!(k >= 1);
        let mut result: Option<Vector> = None;
        let mut base = v.to_vec();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => self.multiply(&r, &base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = self.multiply(&base, &base);
            }
        }
        result.expect("k >= 1")
    }

    pub fn is_nilpotent_element(&self, v: &[Rational]) -> bool {
        let n = self.dim().max(1);
        linalg::is_zero_vector(&self.power(v, n))
    }

    /// The same algebra on a new basis given by coordinate vectors in the old
    /// one. The new labels are taken from `labels`.
    pub fn rebase(&self, new_basis: &[Vector], labels: Vec<String>) -> Result<FiniteAlgebra, AlgebraError> {
        let n = self.dim();
        let b = Matrix::from_columns(new_basis);
        let rank = if new_basis.is_empty() { 0 } else { b.rank() };
        if new_basis.len() != n || rank != n {
            return Err(AlgebraError::NotABasis { rank, expected: n });
        }
        let inv = b.inverse().expect("full rank");
        let table = (0..n)
            .map(|a| {
                (0..n)
                    .map(|c| inv.mul_vec(&self.multiply(&new_basis[a], &new_basis[c])))
                    .collect()
            })
            .collect();
        let unital = self.unital && new_basis[0] == self.basis_vector(0);
        Ok(FiniteAlgebra {
            labels,
            table,
            unital,
        })
    }
}

impl fmt::Display for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let row = &self.table[i][j];
                if linalg::is_zero_vector(row) {
                    continue;
                }
                let terms: Vec<String> = row
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !Zero::is_zero(*c))
                    .map(|(k, c)| format!("{}*[{}]", crate::exactpoly::format_rational(c), self.labels[k]))
                    .collect();
                writeln!(f, "[{}]*[{}] = {}", self.labels[i], self.labels[j], terms.join(" + "))?;
            }
        }
        Ok(())
    }
}

/// Row-reduced basis of the span of `vectors`.
pub fn span(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors.to_vec());
    let e = m.rref();
    (0..e.pivots.len()).map(|r| e.matrix.row(r).to_vec()).filter(|v| v.len() == dim).collect()
}

/// Whether `v` lies in the span of the (row-reduced) `basis`.
pub fn in_span(basis: &[Vector], v: &[Rational]) -> bool {
    if linalg::is_zero_vector(v) {
        return true;
    }
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    Matrix::from_rows(rows).rank() == basis.len()
}

/// A nilpotent commutative algebra with its derived invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentAlgebra {
    algebra: FiniteAlgebra,
    powers: Vec<Vec<Vector>>,
    annihilator: Vec<Vector>,
}

impl NilpotentAlgebra {
    pub fn new(algebra: FiniteAlgebra) -> Result<Self, AlgebraError> {
        let n = algebra.dim();
        let mut powers: Vec<Vec<Vector>> = Vec::new();
        let mut current: Vec<Vector> = (0..n).map(|i| algebra.basis_vector(i)).collect();
        while !current.is_empty() {
            if powers.last().is_some_and(|p| p.len() == current.len()) {
                return Err(AlgebraError::NotNilpotent(current.len()));
            }
            let next: Vec<Vector> = current
                .iter()
                .flat_map(|v| (0..n).map(|i| algebra.multiply(&algebra.basis_vector(i), v)).collect::<Vec<_>>())
                .filter(|v| !linalg::is_zero_vector(v))
                .collect();
            powers.push(current);
            current = span(&next, n);
        }
        let annihilator = if n == 0 {
            Vec::new()
        } else {
            let rows: Vec<Vector> = (0..n)
                .flat_map(|i| algebra.left_multiplication(i).to_rows())
                .collect();
            span(&Matrix::from_rows(rows).nullspace(), n)
        };
        Ok(NilpotentAlgebra {
            algebra,
            powers,
            annihilator,
        })
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn labels(&self) -> &[String] {
        self.algebra.labels()
    }

    pub fn multiply<T: Coefficient>(&self, a: &[T], b: &[T]) -> Vec<T> {
        self.algebra.multiply(a, b)
    }

    /// Largest `nu` with `N^nu != 0`.
    pub fn nil_index(&self) -> usize {
        self.powers.len()
    }

    /// Basis of `N^j` for `j >= 1`; empty beyond the nil-index.
    pub fn power_space(&self, j: usize) -> &[Vector] {
        assert!(j >= 1);
        self.powers.get(j - 1).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `(dim N^1, ..., dim N^nu)`.
    pub fn hilbert_chain(&self) -> Vec<usize> {
        self.powers.iter().map(Vec::len).collect()
    }

    pub fn annihilator(&self) -> &[Vector] {
        &self.annihilator
    }

    /// `dim Ann(N) = 1`; when true, `N^nu = Ann(N)` is asserted as well.
    pub fn is_admissible(&self) -> bool {
        if self.annihilator.len() != 1 {
            return false;
        }
        let top = self.power_space(self.nil_index());
        assert!(
            top.len() == 1 && in_span(&self.annihilator, &top[0]),
            "admissible algebra with N^nu != Ann(N)"
        );
        true
    }

    /// The generator of a one-dimensional annihilator, scaled so its first
    /// nonzero coordinate is one.
    pub fn annihilator_generator(&self) -> Option<Vector> {
        (self.annihilator.len() == 1).then(|| self.annihilator[0].clone())
    }

    /// Checks `N^j N^m ⊆ N^{j+m}` for all `j + m <= nu + 1`.
    pub fn check_power_filtration(&self) -> bool {
        let nu = self.nil_index();
        for j in 1..=nu {
            for m in 1..=nu {
                if j + m > nu + 1 {
                    continue;
                }
                let target = self.power_space(j + m);
                for a in self.power_space(j) {
                    for b in self.power_space(m) {
                        if !in_span(target, &self.multiply(a, b)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Re-expresses the algebra on a new basis (coordinate vectors in the
    /// current one).
    pub fn rebase(&self, new_basis: &[Vector], labels: Vec<String>) -> Result<NilpotentAlgebra, AlgebraError> {
        NilpotentAlgebra::new(self.algebra.rebase(new_basis, labels)?)
    }
}

/// The maximal ideal of a local unital algebra whose basis element `e_0` is
/// the unit, spanned by the remaining basis elements.
pub fn maximal_ideal(a: &FiniteAlgebra) -> Result<NilpotentAlgebra, AlgebraError> {
    if !a.is_unital() {
        return Err(AlgebraError::NotLocal("algebra has no designated unit".into()));
    }
    let n = a.dim();
    for i in 1..n {
        if !a.is_nilpotent_element(&a.basis_vector(i)) {
            return Err(AlgebraError::NotLocal(format!("[{}] is not nilpotent", a.labels()[i])));
        }
    }
    let mut table = Vec::with_capacity(n - 1);
    for i in 1..n {
        let mut row = Vec::with_capacity(n - 1);
        for j in 1..n {
            let p = a.product(i, j);
            if !Zero::is_zero(&p[0]) {
                return Err(AlgebraError::NotLocal(format!(
                    "[{}]*[{}] has a unit component",
                    a.labels()[i],
                    a.labels()[j]
                )));
            }
            row.push(p[1..].to_vec());
        }
        table.push(row);
    }
    let labels = a.labels()[1..].to_vec();
    NilpotentAlgebra::new(FiniteAlgebra::from_table_unchecked(labels, table, false))
}

/// The unital extension `C ⊕ N`, with the unit as basis element 0.
pub fn unital_extension(n: &NilpotentAlgebra) -> FiniteAlgebra {
    let d = n.dim();
    let mut labels = vec!["1".to_string()];
    labels.extend(n.labels().iter().cloned());
    let mut table = vec![vec![linalg::zero_vector(d + 1); d + 1]; d + 1];
    for i in 0..=d {
        table[0][i] = linalg::unit_vector(d + 1, i);
        table[i][0] = linalg::unit_vector(d + 1, i);
    }
    for i in 0..d {
        for j in 0..d {
            let mut v = vec![Rational::zero()];
            v.extend(n.algebra().product(i, j).iter().cloned());
            table[i + 1][j + 1] = v;
        }
    }
    FiniteAlgebra::from_table_unchecked(labels, table, true)
}

/// Structure-constant entry helper: `c * e_k` in dimension `n`.
pub fn scaled_basis(n: usize, k: usize, c: Rational) -> Vector {
    let mut v = linalg::zero_vector(n);
    v[k] = c;
    v
}

/// `<e, e^2, ..., e^m>` with `e^{m+1} = 0`.
pub fn truncated_power_algebra(m: usize) -> NilpotentAlgebra {
    let labels: Vec<String> = (1..=m)
        .map(|k| if k == 1 { "e".to_string() } else { format!("e^{k}") })
        .collect();
    let entries = (0..m).flat_map(|i| {
        (i..m).filter_map(move |j| (i + j + 1 < m).then(|| (i, j, scaled_basis(m, i + j + 1, Rational::one()))))
    });
    NilpotentAlgebra::new(FiniteAlgebra::from_products(labels, entries, false).expect("valid")).expect("nilpotent")
}
