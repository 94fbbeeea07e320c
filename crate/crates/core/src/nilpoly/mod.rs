//! Nil-polynomials of admissible algebras.
//!
//! An [`AdmissibleForm`] is a linear form `omega` on an admissible algebra `N`
//! that does not vanish on `Ann(N)`, together with an ordered basis
//! `e_1..e_n` of its kernel. The nil-polynomial is
//! `P(x) = omega(exp_2(x_1 e_1 + ... + x_n e_n))` where
//! `exp_2(u) = sum_{m >= 2} u^m / m!`.

mod surface;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{AlgebraError, Coefficient, NilpotentAlgebra, QuotientAlgebra};
use crate::exactpoly::{indexed_vars, Monomial, Polynomial, Rational};
use crate::linalg::{self, Matrix, Vector};

pub use surface::{
    defining_poly_s, graded_form, graded_surface_poly, random_point_on_surface, surface_poly, transport,
    translation_between, xi_field, check_l_xi, AffineMap,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NilpolyError {
    #[error("not admissible: dim Ann(N) = {0}")]
    NotAdmissible(usize),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("not a basis: rank {rank} of {expected}")]
    NotABasis { rank: usize, expected: usize },
    #[error("normalization mismatch: the forms disagree on Ann(N)")]
    NormalizationMismatch,
    #[error("alpha not homogeneous")]
    NotHomogeneous,
    #[error("alpha has top degree {0}; the field would be constant")]
    TopDegree(u64),
    #[error("target not on S")]
    NotOnSurface,
    #[error("polynomial has terms of degree below 2")]
    LowDegreeTerms,
    #[error("identity check failed: {0}")]
    IdentityFailed(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The maximal ideal of `q` re-expressed on the classes of `monomials`
/// (labels keep the monomial text).
pub fn basis_from_monomials(q: &QuotientAlgebra, monomials: &[Polynomial]) -> Result<NilpotentAlgebra, NilpolyError> {
    let n = q.maximal_ideal()?;
    let mut vectors = Vec::with_capacity(monomials.len());
    for m in monomials {
        let v = q.class_of(m)?;
        if !v[0].is_zero() {
            return Err(NilpolyError::Degenerate(format!("{m} is not in the maximal ideal")));
        }
        vectors.push(v[1..].to_vec());
    }
    let labels = monomials.iter().map(ToString::to_string).collect();
    match n.rebase(&vectors, labels) {
        Ok(b) => Ok(b),
        Err(AlgebraError::NotABasis { rank, expected }) => Err(NilpolyError::NotABasis { rank, expected }),
        Err(e) => Err(e.into()),
    }
}

fn add_scaled<T: Coefficient>(acc: &mut [T], c: &Rational, v: &[T]) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.vanishes() {
            a.accumulate(&x.scaled_by(c));
        }
    }
}

fn factorial(m: usize) -> Rational {
    Rational::from_integer((1..=m).fold(BigInt::one(), |acc, k| acc * BigInt::from(k)))
}

/// `sum_{m >= from} u^m / m!`, truncated where powers vanish.
fn exp_from<T: Coefficient>(n: &NilpotentAlgebra, u: &[T], from: usize) -> Vec<T> {
    let Some(z) = u.first() else { return Vec::new() };
    let mut out = vec![z.zero_like(); u.len()];
    let mut power = u.to_vec();
    for m in 1..=n.nil_index() {
        if m > 1 {
            power = n.multiply(&power, u);
        }
        if m >= from {
            add_scaled(&mut out, &factorial(m).recip(), &power);
        }
    }
    out
}

/// `exp(u) - 1`.
pub fn exp1<T: Coefficient>(n: &NilpotentAlgebra, u: &[T]) -> Vec<T> {
    exp_from(n, u, 1)
}

/// `exp(u) - 1 - u`.
pub fn exp2<T: Coefficient>(n: &NilpotentAlgebra, u: &[T]) -> Vec<T> {
    exp_from(n, u, 2)
}

/// Coordinates in `N` of `exp(u) - 1`; `exp(u) = 1 + exp_map(u)`.
pub fn exp_map(n: &NilpotentAlgebra, u: &[Rational]) -> Vector {
    exp1(n, u)
}

/// Inverse of [`exp_map`]: `log(1 + v)`.
pub fn log_map<T: Coefficient>(n: &NilpotentAlgebra, v: &[T]) -> Vec<T> {
    let Some(z) = v.first() else { return Vec::new() };
    let mut out = vec![z.zero_like(); v.len()];
    let mut power = v.to_vec();
    for m in 1..=n.nil_index() {
        if m > 1 {
            power = n.multiply(&power, v);
        }
        let c = Rational::new(if m % 2 == 1 { BigInt::one() } else { -BigInt::one() }, BigInt::from(m));
        add_scaled(&mut out, &c, &power);
    }
    out
}

/// Applies a covector to a vector with coefficients in any ring.
pub fn apply_form<T: Coefficient>(omega: &[Rational], u: &[T]) -> Option<T> {
    let mut acc = u.first()?.zero_like();
    for (w, x) in omega.iter().zip(u) {
        if !w.is_zero() {
            acc.accumulate(&x.scaled_by(w));
        }
    }
    Some(acc)
}

/// Linear form `omega` with `omega(a0) = 1` on an annihilator generator
/// `a0`, and an ordered basis of `ker omega`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleForm {
    algebra: Arc<NilpotentAlgebra>,
    omega: Vector,
    a0: Vector,
    kernel: Vec<Vector>,
}

impl AdmissibleForm {
    /// The form with `omega(a0) = 1` and `omega(kernel) = 0`.
    pub fn new(algebra: Arc<NilpotentAlgebra>, a0: Vector, kernel: Vec<Vector>) -> Result<Self, NilpolyError> {
        let ann = algebra.annihilator();
        if ann.len() != 1 {
            return Err(NilpolyError::NotAdmissible(ann.len()));
        }
        let dim = algebra.dim();
        if a0.len() != dim || linalg::is_zero_vector(&a0) || !crate::algebra::in_span(ann, &a0) {
            return Err(NilpolyError::Degenerate("a0 does not span Ann(N)".into()));
        }
        if kernel.len() + 1 != dim || kernel.iter().any(|k| k.len() != dim) {
            return Err(NilpolyError::Degenerate(format!(
                "need {} kernel vectors, got {}",
                dim - 1,
                kernel.len()
            )));
        }
        let mut cols = vec![a0.clone()];
        cols.extend(kernel.iter().cloned());
        let b = Matrix::from_columns(&cols);
        let inv = b.inverse().ok_or_else(|| NilpolyError::NotABasis {
            rank: b.rank(),
            expected: dim,
        })?;
        let omega = inv.row(0).to_vec();
        Ok(AdmissibleForm {
            algebra,
            omega,
            a0,
            kernel,
        })
    }

    /// Default choice: `a0` is the row-reduced annihilator generator (first
    /// nonzero coordinate 1, at index `p`) and the kernel basis is the
    /// remaining basis vectors `e_i`, `i != p`, in order.
    pub fn canonical(algebra: Arc<NilpotentAlgebra>) -> Result<Self, NilpolyError> {
        let ann = algebra.annihilator();
        if ann.len() != 1 {
            return Err(NilpolyError::NotAdmissible(ann.len()));
        }
        let a0 = ann[0].clone();
        let p = a0.iter().position(|c| !c.is_zero()).expect("nonzero generator");
        let kernel = (0..algebra.dim())
            .filter(|&i| i != p)
            .map(|i| algebra.algebra().basis_vector(i))
            .collect();
        Self::new(algebra, a0, kernel)
    }

    /// Form given by its covector; `a0` is scaled so `omega(a0) = 1` and the
    /// kernel basis is the standard nullspace basis of `omega`.
    pub fn from_omega(algebra: Arc<NilpotentAlgebra>, omega: Vector) -> Result<Self, NilpolyError> {
        let ann = algebra.annihilator();
        if ann.len() != 1 {
            return Err(NilpolyError::NotAdmissible(ann.len()));
        }
        let w = linalg::dot(&omega, &ann[0]);
        if w.is_zero() {
            return Err(NilpolyError::Degenerate("omega vanishes on Ann(N)".into()));
        }
        let a0 = linalg::scaled(&w.recip(), &ann[0]);
        let kernel = Matrix::from_rows(vec![omega.clone()]).nullspace();
        Ok(AdmissibleForm {
            algebra,
            omega,
            a0,
            kernel,
        })
    }

    pub fn algebra(&self) -> &NilpotentAlgebra {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> &Arc<NilpotentAlgebra> {
        &self.algebra
    }

    pub fn omega(&self) -> &[Rational] {
        &self.omega
    }

    pub fn a0(&self) -> &[Rational] {
        &self.a0
    }

    pub fn kernel(&self) -> &[Vector] {
        &self.kernel
    }

    /// Number of nil-polynomial variables, `dim N - 1`.
    pub fn n(&self) -> usize {
        self.kernel.len()
    }

    pub fn value(&self, u: &[Rational]) -> Rational {
        linalg::dot(&self.omega, u)
    }

    /// The projection onto `Ann(N)` along `ker omega`.
    pub fn project(&self, u: &[Rational]) -> Vector {
        linalg::scaled(&self.value(u), &self.a0)
    }

    /// `phi(x) = sum x_alpha e_alpha`.
    pub fn phi(&self, x: &[Rational]) -> Vector {
        let mut out = linalg::zero_vector(self.algebra.dim());
        for (c, k) in x.iter().zip(&self.kernel) {
            linalg::axpy(&mut out, c, k);
        }
        out
    }

    /// Coordinates of `u` in the basis `(a0, e_1, .., e_n)`.
    pub fn split(&self, u: &[Rational]) -> (Rational, Vector) {
        let mut cols = vec![self.a0.clone()];
        cols.extend(self.kernel.iter().cloned());
        let c = Matrix::from_columns(&cols).solve(u).expect("basis");
        (c[0].clone(), c[1..].to_vec())
    }
}

/// Symbolic generic point `sum x_i basis_i` with polynomial coordinates.
pub fn symbolic_point(vars: &Arc<[String]>, basis: &[Vector], dim: usize) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::zero(vars.clone()); dim];
    for (i, b) in basis.iter().enumerate() {
        let x = Polynomial::var(vars.clone(), i);
        for (o, c) in out.iter_mut().zip(b) {
            if !c.is_zero() {
                *o = &*o + &x.scale(c);
            }
        }
    }
    out
}

/// Matrices of `b(u, v) = omega(u v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramReport {
    /// on the unital extension `C + N`, unit first, `omega(1) = 0`
    pub unital: Matrix,
    pub unital_determinant: Rational,
    /// on `N` in its own basis (always degenerate along `Ann(N)`)
    pub full: Matrix,
    /// on the kernel basis `e_1..e_n`
    pub kernel: Matrix,
    pub determinant: Rational,
    /// basis of the radical of the kernel restriction; empty when non-degenerate
    pub radical: Vec<Vector>,
}

pub fn gram_b_pi(form: &AdmissibleForm) -> GramReport {
    let n = form.algebra();
    let dim = n.dim();
    let full_rows: Vec<Vector> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| form.value(n.algebra().product(i, j)))
                .collect()
        })
        .collect();
    let full = Matrix::from_rows(full_rows.clone());
    let mut unital_rows = vec![{
        let mut r = vec![Rational::zero()];
        r.extend(form.omega().iter().cloned());
        r
    }];
    for (i, row) in full_rows.iter().enumerate() {
        let mut r = vec![form.omega()[i].clone()];
        r.extend(row.iter().cloned());
        unital_rows.push(r);
    }
    let unital = Matrix::from_rows(unital_rows);
    let k = form.kernel();
    let kernel = Matrix::from_rows(
        k.iter()
            .map(|a| k.iter().map(|b| form.value(&n.multiply(a, b))).collect())
            .collect(),
    );
    let radical = if k.is_empty() { Vec::new() } else { kernel.nullspace() };
    GramReport {
        unital_determinant: unital.determinant(),
        unital,
        full,
        determinant: kernel.determinant(),
        kernel,
        radical,
    }
}

/// A nil-polynomial split into homogeneous components `P^[2]..P^[nu]`, with
/// the symmetric tensors of its quadratic and cubic parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilPolynomial {
    vars: Arc<[String]>,
    components: Vec<Polynomial>,
    gram: Matrix,
    cubic: Vec<Rational>,
    provenance: Option<AdmissibleForm>,
}

impl NilPolynomial {
    /// Splits `p` by degree; `p` must have no terms of degree below 2.
    pub fn from_polynomial(p: &Polynomial) -> Result<Self, NilpolyError> {
        if p.terms().any(|(m, _)| m.degree() < 2) {
            return Err(NilpolyError::LowDegreeTerms);
        }
        let top = p.total_degree().unwrap_or(2).max(2);
        let comps = (2..=top).map(|d| p.homogeneous_component(d)).collect();
        Ok(Self::from_components(p.vars().clone(), comps))
    }

    /// `components[k]` is the homogeneous part of degree `k + 2`.
    pub fn from_components(vars: Arc<[String]>, mut components: Vec<Polynomial>) -> Self {
        while components.len() > 1 && components.last().is_some_and(Polynomial::is_zero) {
            components.pop();
        }
        if components.is_empty() {
            components.push(Polynomial::zero(vars.clone()));
        }
        let n = vars.len();
        let p2 = &components[0];
        let two = Rational::from_integer(2.into());
        let gram_rows = (0..n)
            .map(|a| {
                let da = p2.partial_derivative(a);
                (0..n).map(|b| da.partial_derivative(b).constant_term() / &two).collect()
            })
            .collect();
        let gram = Matrix::from_rows(gram_rows);
        let mut cubic = vec![Rational::zero(); n * n * n];
        if let Some(p3) = components.get(1) {
            let six = Rational::from_integer(6.into());
            for a in 0..n {
                let da = p3.partial_derivative(a);
                if da.is_zero() {
                    continue;
                }
                for b in a..n {
                    let dab = da.partial_derivative(b);
                    if dab.is_zero() {
                        continue;
                    }
                    for c in b..n {
                        let h = dab.partial_derivative(c).constant_term() / &six;
                        if h.is_zero() {
                            continue;
                        }
                        for (i, j, k) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                            cubic[(i * n + j) * n + k] = h.clone();
                        }
                    }
                }
            }
        }
        NilPolynomial {
            vars,
            components,
            gram,
            cubic,
            provenance: None,
        }
    }

    pub fn with_provenance(mut self, form: AdmissibleForm) -> Self {
        self.provenance = Some(form);
        self
    }

    pub fn provenance(&self) -> Option<&AdmissibleForm> {
        self.provenance.as_ref()
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn n(&self) -> usize {
        self.vars.len()
    }

    /// Homogeneous component of degree `l` (zero outside the stored range).
    pub fn component(&self, l: usize) -> Polynomial {
        l.checked_sub(2)
            .and_then(|k| self.components.get(k))
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.vars.clone()))
    }

    /// Components of degree `2..=degree()`.
    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// Highest degree with a nonzero component (2 when P is zero).
    pub fn degree(&self) -> usize {
        self.components.len() + 1
    }

    pub fn total(&self) -> Polynomial {
        self.components
            .iter()
            .fold(Polynomial::zero(self.vars.clone()), |acc, c| &acc + c)
    }

    /// `g` with `P^[2](x) = sum g_ab x_a x_b`.
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// `h_abc` with `P^[3](x) = sum h_abc x_a x_b x_c`.
    pub fn cubic(&self, a: usize, b: usize, c: usize) -> &Rational {
        let n = self.n();
        &self.cubic[(a * n + b) * n + c]
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.gram.determinant().is_zero()
    }

    /// `omega_l(x^1, .., x^l)`: coefficient of `t_1 .. t_l` in
    /// `P^[l](t_1 x^1 + .. + t_l x^l)`.
    pub fn polarize(&self, vectors: &[Vector]) -> Rational {
        let l = vectors.len();
        let p = self.component(l);
        if p.is_zero() {
            return Rational::zero();
        }
        let tvars: Arc<[String]> = indexed_vars("t", l).into();
        let images: Vec<Polynomial> = (0..self.n())
            .map(|a| {
                Polynomial::from_terms(
                    tvars.clone(),
                    vectors
                        .iter()
                        .enumerate()
                        .map(|(i, v)| (Monomial::var(l, i), v[a].clone())),
                )
            })
            .collect();
        p.compose(&images).coeff_of(&vec![1; l])
    }

    /// `omega_3(x, y, z) = 6 sum h_abc x_a y_b z_c`.
    pub fn omega3(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Rational {
        let n = self.n();
        let mut acc = Rational::zero();
        for a in 0..n {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..n {
                if y[b].is_zero() {
                    continue;
                }
                let xy = &x[a] * &y[b];
                for c in 0..n {
                    let h = self.cubic(a, b, c);
                    if !h.is_zero() && !z[c].is_zero() {
                        acc += &xy * h * &z[c];
                    }
                }
            }
        }
        acc * Rational::from_integer(6.into())
    }
}

impl fmt::Display for NilPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.total())
    }
}

/// `P = omega(exp_2(phi(x)))` over variables `x1..xn`.
pub fn build_nilpolynomial(form: &AdmissibleForm) -> NilPolynomial {
    let n = form.algebra();
    let vars: Arc<[String]> = indexed_vars("x", form.n()).into();
    let phi = symbolic_point(&vars, form.kernel(), n.dim());
    let mut components = Vec::new();
    let mut power = phi.clone();
    for l in 2..=n.nil_index().max(2) {
        power = n.multiply(&power, &phi);
        let value = apply_form(form.omega(), &power).unwrap_or_else(|| Polynomial::zero(vars.clone()));
        components.push(value.scale(&factorial(l).recip()));
    }
    NilPolynomial::from_components(vars, components).with_provenance(form.clone())
}

/// `omega(phi(x^1) .. phi(x^l))` computed in the algebra.
pub fn multilinear_omega(form: &AdmissibleForm, vectors: &[Vector]) -> Rational {
    let n = form.algebra();
    let mut it = vectors.iter().map(|x| form.phi(x));
    let Some(mut prod) = it.next() else {
        return Rational::zero();
    };
    for v in it {
        prod = n.multiply(&prod, &v);
    }
    form.value(&prod)
}

/// The product on `W = C^n` defined by `omega_2(x y, z) = omega_3(x, y, z)`.
pub fn w_product(p: &NilPolynomial, x: &[Rational], y: &[Rational]) -> Result<Vector, NilpolyError> {
    let n = p.n();
    let rhs: Vector = (0..n)
        .map(|c| p.omega3(x, y, &linalg::unit_vector(n, c)))
        .collect();
    let g2 = p.gram().scale(&Rational::from_integer(2.into()));
    let inv = g2
        .inverse()
        .ok_or_else(|| NilpolyError::Degenerate("P^[2] is degenerate".into()))?;
    Ok(inv.mul_vec(&rhs))
}

/// Rebuilds all components from `P^[2]` and `P^[3]` via
/// `P^[l+1](x) = sum_c (x x)_c d_c P^[l](x) / (l (l + 1))`, where
/// `x x = g^{-1} grad P^[3](x)` is the product on `W`.
pub fn reconstruct_from_23(p2: &Polynomial, p3: &Polynomial, bound: usize) -> Result<NilPolynomial, NilpolyError> {
    let vars = p2.vars().clone();
    let base = NilPolynomial::from_components(vars.clone(), vec![p2.clone(), p3.clone()]);
    let n = vars.len();
    let ginv = base
        .gram()
        .inverse()
        .ok_or_else(|| NilpolyError::Degenerate("P^[2] is degenerate".into()))?;
    let grad3 = p3.gradient();
    let square: Vec<Polynomial> = (0..n)
        .map(|c| {
            (0..n).fold(Polynomial::zero(vars.clone()), |acc, d| {
                &acc + &grad3[d].scale(&ginv[(c, d)])
            })
        })
        .collect();
    let mut components = vec![p2.clone(), p3.clone()];
    let mut l = 3;
    while l < bound && !components.last().expect("nonempty").is_zero() {
        let current = components.last().expect("nonempty");
        let grad = current.gradient();
        let mut next = Polynomial::zero(vars.clone());
        for c in 0..n {
            if !square[c].is_zero() && !grad[c].is_zero() {
                next = &next + &(&square[c] * &grad[c]);
            }
        }
        let denom = Rational::from_integer(BigInt::from(l * (l + 1)));
        components.push(next.scale(&denom.recip()));
        l += 1;
    }
    Ok(NilPolynomial::from_components(vars, components))
}

/// `(sum_ab g^ab h_abc)_c` with `g^ab` the exact (adjugate) inverse.
pub fn blaschke_residual(p: &NilPolynomial) -> Result<Vector, NilpolyError> {
    let n = p.n();
    let ginv = p
        .gram()
        .adjugate_inverse()
        .ok_or_else(|| NilpolyError::Degenerate("P^[2] is degenerate".into()))?;
    Ok((0..n)
        .map(|c| {
            let mut acc = Rational::zero();
            for a in 0..n {
                for b in 0..n {
                    let h = p.cubic(a, b, c);
                    if !h.is_zero() {
                        acc += &ginv[(a, b)] * h;
                    }
                }
            }
            acc
        })
        .collect())
}

#[cfg(test)]
mod tests;
