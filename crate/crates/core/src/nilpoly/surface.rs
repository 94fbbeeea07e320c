//! The hypersurface `S = {omega(exp_1(2u)) = 0}` in `N`, translations between
//! projections, and the affine symmetries of graded algebras.

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;

use super::{apply_form, exp1, log_map, AdmissibleForm, NilpolyError};
use crate::algebra::{Grading, NilpotentAlgebra};
use crate::exactpoly::{indexed_vars, Polynomial, Rational};
use crate::linalg::{self, Matrix, Vector};

fn u_vars(dim: usize) -> Arc<[String]> {
    indexed_vars("u", dim).into()
}

fn generic_point(dim: usize) -> Vec<Polynomial> {
    let vars = u_vars(dim);
    (0..dim).map(|i| Polynomial::var(vars.clone(), i)).collect()
}

/// `omega(exp_1(scale * u))` in the coordinates `u1..u_dim` of `N`.
pub fn surface_poly(form: &AdmissibleForm, scale: &Rational) -> Polynomial {
    let n = form.algebra();
    let u: Vec<Polynomial> = generic_point(n.dim()).iter().map(|p| p.scale(scale)).collect();
    apply_form(form.omega(), &exp1(n, &u)).unwrap_or_else(|| Polynomial::zero(u_vars(0)))
}

/// The defining polynomial `omega(exp_1(2u))` of `S`.
pub fn defining_poly_s(form: &AdmissibleForm) -> Polynomial {
    surface_poly(form, &Rational::from_integer(2.into()))
}

/// The element `a` with `S_tilde = S + a`: solves `omega(c v) = omega_tilde(v)
/// - omega(v)` with `omega(c) = 0`, sets `a = -log(1 + c) / 2`, and checks
/// `omega_tilde(exp_1(2u)) = omega(exp_1(2(u - a)))` as polynomials.
pub fn translation_between(form: &AdmissibleForm, other: &AdmissibleForm) -> Result<Vector, NilpolyError> {
    let n = form.algebra();
    if other.algebra() != n {
        return Err(NilpolyError::Degenerate("forms live on different algebras".into()));
    }
    if other.value(form.a0()) != form.value(form.a0()) {
        return Err(NilpolyError::NormalizationMismatch);
    }
    let dim = n.dim();
    let mut rows = Vec::with_capacity(dim + 1);
    let mut rhs = Vec::with_capacity(dim + 1);
    for i in 0..dim {
        rows.push(
            (0..dim)
                .map(|k| form.value(n.algebra().product(k, i)))
                .collect::<Vector>(),
        );
        rhs.push(&other.omega()[i] - &form.omega()[i]);
    }
    rows.push(form.omega().to_vec());
    rhs.push(Rational::zero());
    let c = Matrix::from_rows(rows)
        .solve(&rhs)
        .ok_or_else(|| NilpolyError::IdentityFailed("no c with omega_tilde = omega(c .)".into()))?;
    let a = linalg::scaled(&Rational::new((-1).into(), 2.into()), &log_map(n, &c));

    let two = Rational::from_integer(2.into());
    let lhs = defining_poly_s(other);
    let shifted: Vec<Polynomial> = generic_point(dim)
        .iter()
        .zip(&a)
        .map(|(u, ai)| &u.scale(&two) - &Polynomial::constant(u.vars().clone(), ai * &two))
        .collect();
    let rhs_poly = apply_form(form.omega(), &exp1(n, &shifted)).unwrap_or_else(|| Polynomial::zero(u_vars(0)));
    if lhs != rhs_poly {
        return Err(NilpolyError::IdentityFailed("translated surfaces differ".into()));
    }
    Ok(a)
}

/// The form induced by a grading: `omega(a0) = 1` on the single top-degree
/// basis element, kernel the lower-degree basis elements in order.
pub fn graded_form(n: Arc<NilpotentAlgebra>, grading: &Grading) -> Result<AdmissibleForm, NilpolyError> {
    let top = grading.piece(grading.top);
    let [t] = top[..] else {
        return Err(NilpolyError::NotAdmissible(top.len()));
    };
    let a0 = n.algebra().basis_vector(t);
    let kernel = (0..n.dim())
        .filter(|&i| i != t)
        .map(|i| n.algebra().basis_vector(i))
        .collect();
    AdmissibleForm::new(n, a0, kernel)
}

/// `f(u) = omega(exp_1(u))` for the graded form.
pub fn graded_surface_poly(form: &AdmissibleForm) -> Polynomial {
    surface_poly(form, &Rational::one())
}

fn degree_of(grading: &Grading, alpha: &[Rational]) -> Result<u64, NilpolyError> {
    let mut degrees = alpha
        .iter()
        .zip(&grading.degrees)
        .filter(|(c, _)| !c.is_zero())
        .map(|(_, &d)| d);
    let j = degrees.next().ok_or(NilpolyError::NotHomogeneous)?;
    if degrees.any(|d| d != j) {
        return Err(NilpolyError::NotHomogeneous);
    }
    if j >= grading.top {
        return Err(NilpolyError::TopDegree(j));
    }
    Ok(j)
}

/// `xi_alpha(u) = (d - j) alpha - sum_{m=1}^{d-j} m (u_m alpha)` for
/// homogeneous `alpha` of degree `j < d`, with `u_m` the degree-`m` part of `u`.
pub fn xi_field(n: &NilpotentAlgebra, grading: &Grading, alpha: &[Rational]) -> Result<Vec<Polynomial>, NilpolyError> {
    let j = degree_of(grading, alpha)?;
    let d = grading.top;
    let dim = n.dim();
    let vars = u_vars(dim);
    let alpha_poly: Vec<Polynomial> = alpha.iter().map(|c| Polynomial::constant(vars.clone(), c.clone())).collect();
    let u = generic_point(dim);
    let mut weighted = vec![Polynomial::zero(vars.clone()); dim];
    for k in 0..dim {
        let m = grading.degrees[k];
        if m <= d - j {
            weighted[k] = u[k].scale(&Rational::from_integer(m.into()));
        }
    }
    let prod = n.multiply(&weighted, &alpha_poly);
    let dj = Rational::from_integer((d - j).into());
    Ok(alpha_poly
        .iter()
        .zip(&prod)
        .map(|(a, p)| &a.scale(&dj) - p)
        .collect())
}

/// Whether the Lie derivative `sum_i xi_i df/du_i` vanishes identically.
pub fn check_l_xi(f: &Polynomial, xi: &[Polynomial]) -> bool {
    xi.iter()
        .enumerate()
        .fold(Polynomial::zero(f.vars().clone()), |acc, (i, x)| &acc + &(x * &f.partial_derivative(i)))
        .is_zero()
}

/// `u -> linear u + shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub linear: Matrix,
    pub shift: Vector,
}

impl AffineMap {
    pub fn identity(n: usize) -> Self {
        AffineMap {
            linear: Matrix::identity(n),
            shift: linalg::zero_vector(n),
        }
    }

    pub fn apply(&self, u: &[Rational]) -> Vector {
        let mut v = self.linear.mul_vec(u);
        linalg::axpy(&mut v, &Rational::one(), &self.shift);
        v
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            linear: &self.linear * &other.linear,
            shift: self.apply(&other.shift),
        }
    }

    pub fn inverse(&self) -> Option<AffineMap> {
        let inv = self.linear.inverse()?;
        let shift = inv.mul_vec(&self.shift).iter().map(|x| -x).collect();
        Some(AffineMap { linear: inv, shift })
    }

    /// Coordinates of the map as polynomials in `vars`.
    pub fn as_polynomials(&self, vars: &Arc<[String]>) -> Vec<Polynomial> {
        (0..self.linear.rows())
            .map(|i| {
                let mut p = Polynomial::constant(vars.clone(), self.shift[i].clone());
                for j in 0..self.linear.cols() {
                    let c = &self.linear[(i, j)];
                    if !c.is_zero() {
                        p = &p + &Polynomial::var(vars.clone(), j).scale(c);
                    }
                }
                p
            })
            .collect()
    }
}

/// Time-one flow of `u' = A u + b`, `A` nilpotent.
fn affine_flow(a: &Matrix, b: &[Rational]) -> AffineMap {
    let n = a.rows();
    let mut linear = Matrix::identity(n);
    let mut shift = b.to_vec();
    let mut power = Matrix::identity(n);
    let mut fact = Rational::one();
    for k in 1..=n {
        power = &power * a;
        fact *= Rational::from_integer(k.into());
        let next_fact = &fact * Rational::from_integer((k + 1).into());
        linear = matrix_add(&linear, &power.scale(&fact.recip()));
        linalg::axpy(&mut shift, &next_fact.recip(), &power.mul_vec(b));
    }
    AffineMap { linear, shift }
}

fn matrix_add(a: &Matrix, b: &Matrix) -> Matrix {
    Matrix::from_rows(
        (0..a.rows())
            .map(|i| a.row(i).iter().zip(b.row(i)).map(|(x, y)| x + y).collect())
            .collect(),
    )
}

/// Affine map `g` with `f ∘ g = f` and `g(0) = s`, for `f` the graded
/// surface polynomial, built from time-one flows of the fields `xi_alpha`
/// correcting the degree-`j` part of the image of 0 for `j = 1..d-1`.
pub fn transport(n: &NilpotentAlgebra, grading: &Grading, s: &[Rational]) -> Result<AffineMap, NilpolyError> {
    let form = graded_form(Arc::new(n.clone()), grading)?;
    let f = graded_surface_poly(&form);
    if !f.evaluate(s).is_zero() {
        return Err(NilpolyError::NotOnSurface);
    }
    let dim = n.dim();
    let d = grading.top;
    let mut g = AffineMap::identity(dim);
    for j in 1..d {
        let p = &g.shift;
        let mut alpha = linalg::zero_vector(dim);
        let scale = Rational::from_integer((d - j).into()).recip();
        for k in grading.piece(j) {
            alpha[k] = (&s[k] - &p[k]) * &scale;
        }
        if linalg::is_zero_vector(&alpha) {
            continue;
        }
        // A u = -sum_m m (u_m alpha)
        let cols: Vec<Vector> = (0..dim)
            .map(|k| {
                let m = grading.degrees[k];
                if m <= d - j {
                    let prod = n.multiply(&n.algebra().basis_vector(k), &alpha);
                    linalg::scaled(&Rational::from_integer((-(m as i64)).into()), &prod)
                } else {
                    linalg::zero_vector(dim)
                }
            })
            .collect();
        let a = Matrix::from_columns(&cols);
        let b = linalg::scaled(&Rational::from_integer((d - j).into()), &alpha);
        g = affine_flow(&a, &b).compose(&g);
    }
    if g.shift != s {
        return Err(NilpolyError::IdentityFailed("g(0) != s".into()));
    }
    if f.compose(&g.as_polynomials(f.vars())) != f {
        return Err(NilpolyError::IdentityFailed("f ∘ g != f".into()));
    }
    Ok(g)
}

/// Random point of `{f = 0}` for the graded surface polynomial: random
/// small rationals below the top degree, top coordinate solved for.
pub fn random_point_on_surface<R: Rng>(n: &NilpotentAlgebra, grading: &Grading, rng: &mut R) -> Result<Vector, NilpolyError> {
    let form = graded_form(Arc::new(n.clone()), grading)?;
    let f = graded_surface_poly(&form);
    let top = grading.piece(grading.top)[0];
    let mut s: Vector = (0..n.dim())
        .map(|k| {
            if k == top {
                Rational::zero()
            } else {
                Rational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into())
            }
        })
        .collect();
    // f is u_top + (terms in lower coordinates)
    s[top] = -f.evaluate(&s);
    Ok(s)
}
