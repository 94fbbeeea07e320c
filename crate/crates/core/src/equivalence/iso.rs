//! Certificates from algebra isomorphisms and from germ equivalences.

use std::sync::Arc;

use num_traits::Zero;

use super::{rename, verify_certificate, EquivalenceCertificate, EquivalenceError};
use crate::algebra::{grading_from_weights, milnor_algebra, Grading, NilpotentAlgebra, QuotientAlgebra};
use crate::exactpoly::{find_weights, Polynomial, Rational};
use crate::linalg::{self, Matrix, Vector};
use crate::nilpoly::{
    basis_from_monomials, build_nilpolynomial, transport, translation_between, AdmissibleForm, NilPolynomial,
};

/// Checks that `l` (columns are images of basis vectors of `n`) is an
/// invertible multiplicative map `n -> n_t`.
pub fn check_isomorphism(l: &Matrix, n: &NilpotentAlgebra, n_t: &NilpotentAlgebra) -> Result<(), EquivalenceError> {
    let dim = n.dim();
    if n_t.dim() != dim || l.rows() != dim || l.cols() != dim {
        return Err(EquivalenceError::DimensionMismatch(format!(
            "L is {}x{} between algebras of dimension {} and {}",
            l.rows(),
            l.cols(),
            dim,
            n_t.dim()
        )));
    }
    if l.determinant().is_zero() {
        return Err(EquivalenceError::SingularIsomorphism);
    }
    for i in 0..dim {
        for j in i..dim {
            let lhs = l.mul_vec(n.algebra().product(i, j));
            let rhs = n_t.multiply(&l.column(i), &l.column(j));
            if lhs != rhs {
                return Err(EquivalenceError::NotIsomorphism { i, j });
            }
        }
    }
    Ok(())
}

/// Certificate relating the nil-polynomials of `form` on `N` and `form_t` on
/// `N~`, given an isomorphism `L: N -> N~`. When the pulled-back projection
/// has a different kernel, a grading on either side is needed to move one
/// projection onto the other.
pub fn certificate_from_iso(
    l: &Matrix,
    form: &AdmissibleForm,
    form_t: &AdmissibleForm,
    grading: Option<&Grading>,
    grading_t: Option<&Grading>,
) -> Result<EquivalenceCertificate, EquivalenceError> {
    check_isomorphism(l, form.algebra(), form_t.algebra())?;
    let pulled = pull_back(l, form, form_t)?;
    if pulled.form.omega() == form.omega() {
        return finish(form, form_t, &pulled, &Matrix::identity(form.algebra().dim()));
    }
    if let Some(g) = grading {
        let h = kernel_aligning_map(form, &pulled.form, g)?;
        return finish(form, form_t, &pulled, &h);
    }
    if let Some(g) = grading_t {
        let inv = l.inverse().ok_or(EquivalenceError::SingularIsomorphism)?;
        let back = pull_back(&inv, form_t, form)?;
        let h = kernel_aligning_map(form_t, &back.form, g)?;
        return Ok(finish(form_t, form, &back, &h)?.inverse());
    }
    Err(EquivalenceError::NoGrading)
}

/// `omega~ ∘ L = kappa * omega''`, with `omega''(a0) = 1` and kernel basis
/// `L^{-1}` of the kernel basis of `form_t`.
struct Pulled {
    form: AdmissibleForm,
    kappa: Rational,
}

fn pull_back(l: &Matrix, form: &AdmissibleForm, form_t: &AdmissibleForm) -> Result<Pulled, EquivalenceError> {
    let n = form.algebra();
    let pulled: Vector = (0..n.dim()).map(|i| form_t.value(&l.column(i))).collect();
    let kappa = linalg::dot(&pulled, form.a0());
    if kappa.is_zero() {
        return Err(EquivalenceError::SingularIsomorphism);
    }
    let inv = l.inverse().ok_or(EquivalenceError::SingularIsomorphism)?;
    let kernel = form_t.kernel().iter().map(|k| inv.mul_vec(k)).collect();
    let form = AdmissibleForm::new(form.algebra_arc().clone(), form.a0().to_vec(), kernel)?;
    Ok(Pulled { form, kappa })
}

/// Linear `h` with `F''(h(u)) = F(u)`, where `F(u) = omega(exp_1(2u))` and
/// `F''` is the same for `target`.
fn kernel_aligning_map(form: &AdmissibleForm, target: &AdmissibleForm, grading: &Grading) -> Result<Matrix, EquivalenceError> {
    let n = form.algebra();
    let dim = n.dim();
    let [top] = grading.piece(grading.top)[..] else {
        return Err(EquivalenceError::NoGrading);
    };
    let mut graded = linalg::zero_vector(dim);
    graded[top] = form.value(&n.algebra().basis_vector(top));
    let graded = AdmissibleForm::from_omega(form.algebra_arc().clone(), graded)?;
    // F(u) = f_g(2(u - b)) up to a constant, F''(u) = F(u - a)
    let b = translation_between(&graded, form)?;
    let a = translation_between(form, target)?;
    let minus_two = Rational::from_integer((-2).into());
    let s1 = linalg::scaled(&minus_two, &b);
    let ab: Vector = a.iter().zip(&b).map(|(x, y)| x + y).collect();
    let s2 = linalg::scaled(&minus_two, &ab);
    let g1 = transport(n, grading, &s1)?;
    let g2 = transport(n, grading, &s2)?;
    let g = g2.compose(&g1.inverse().ok_or(EquivalenceError::SingularIsomorphism)?);
    let mut offset = linalg::scaled(&Rational::new(1.into(), 2.into()), &g.apply(&s1));
    linalg::axpy(&mut offset, &Rational::from_integer(1.into()), &ab);
    if !linalg::is_zero_vector(&offset) {
        return Err(EquivalenceError::VerificationFailed);
    }
    Ok(g.linear)
}

fn finish(
    form: &AdmissibleForm,
    form_t: &AdmissibleForm,
    pulled: &Pulled,
    h: &Matrix,
) -> Result<EquivalenceCertificate, EquivalenceError> {
    let mut cols = Vec::with_capacity(form.n());
    for k in form.kernel() {
        let (x0, y) = pulled.form.split(&h.mul_vec(k));
        if !x0.is_zero() {
            return Err(EquivalenceError::VerificationFailed);
        }
        cols.push(y);
    }
    let c_prime = Matrix::from_columns(&cols);
    let matrix = if form.n() == 0 {
        c_prime
    } else {
        c_prime.inverse().ok_or(EquivalenceError::SingularMatrix)?
    };
    let p = build_nilpolynomial(form);
    let p_t = build_nilpolynomial(form_t);
    for c in [pulled.kappa.recip(), pulled.kappa.clone()] {
        let cert = EquivalenceCertificate {
            c,
            matrix: matrix.clone(),
        };
        if verify_certificate(&p, &p_t, &cert)?.holds {
            return Ok(cert);
        }
    }
    Err(EquivalenceError::VerificationFailed)
}

/// Result of [`induced_certificate`].
#[derive(Clone, Debug)]
pub struct Induced {
    pub certificate: EquivalenceCertificate,
    /// `f~(psi z) = ratio * f(z)`
    pub ratio: Rational,
    /// the isomorphism `N -> N~` inverse to the pullback by `psi`
    pub iso: Matrix,
    pub p: NilPolynomial,
    pub p_t: NilPolynomial,
}

struct Side {
    q: QuotientAlgebra,
    n: Arc<NilpotentAlgebra>,
    /// class coordinates (without the unit) of the basis of `n`
    basis: Vec<Polynomial>,
    change: Matrix,
    grading: Option<Grading>,
}

fn side(f: &Polynomial, basis: Option<&[Polynomial]>) -> Result<Side, EquivalenceError> {
    let q = milnor_algebra(f)?;
    let (n, basis) = match basis {
        Some(b) => (basis_from_monomials(&q, b)?, b.to_vec()),
        None => {
            let lifted = (1..q.dim()).map(|j| q.lift(&linalg::unit_vector(q.dim(), j))).collect();
            (q.maximal_ideal()?, lifted)
        }
    };
    let cols = basis
        .iter()
        .map(|m| Ok(q.class_of(m)?[1..].to_vec()))
        .collect::<Result<Vec<_>, EquivalenceError>>()?;
    let grading = find_weights(f).and_then(|w| grading_from_weights(&n, f.vars(), &w).ok());
    Ok(Side {
        change: Matrix::from_columns(&cols),
        q,
        n: Arc::new(n),
        basis,
        grading,
    })
}

/// Certificate induced by a linear germ equivalence `f~(psi z) = r f(z)`
/// through the pullback `psi*` between the maximal ideals of the Milnor
/// algebras, for the canonical projections in the given monomial bases
/// (standard monomials when `None`).
pub fn induced_certificate(
    psi: &Matrix,
    f: &Polynomial,
    f_t: &Polynomial,
    basis: Option<&[Polynomial]>,
    basis_t: Option<&[Polynomial]>,
) -> Result<Induced, EquivalenceError> {
    let m = f.nvars();
    if f_t.nvars() != m || psi.rows() != m || psi.cols() != m {
        return Err(EquivalenceError::DimensionMismatch(format!(
            "psi is {}x{} for germs in {} and {} variables",
            psi.rows(),
            psi.cols(),
            m,
            f_t.nvars()
        )));
    }
    if psi.determinant().is_zero() {
        return Err(EquivalenceError::SingularMatrix);
    }
    let pulled = rename(f_t, f.vars()).substitute_linear(psi).expect("square");
    let (lead, lc) = f.canonical_leading().ok_or(EquivalenceError::NotGermEquivalence)?;
    let ratio = pulled.coefficient(lead) / lc;
    if ratio.is_zero() || pulled != f.scale(&ratio) {
        return Err(EquivalenceError::NotGermEquivalence);
    }

    let src = side(f, basis)?;
    let dst = side(f_t, basis_t)?;
    if src.n.dim() != dst.n.dim() {
        return Err(EquivalenceError::NotInvertible);
    }
    let mut cols = Vec::with_capacity(dst.basis.len());
    for b in &dst.basis {
        let image = rename(b, f.vars()).substitute_linear(psi).expect("square");
        let v = src.q.class_of(&image)?;
        if !v[0].is_zero() {
            return Err(EquivalenceError::NotInvertible);
        }
        cols.push(src.change.solve(&v[1..]).ok_or(EquivalenceError::NotInvertible)?);
    }
    let iso = Matrix::from_columns(&cols).inverse().ok_or(EquivalenceError::NotInvertible)?;

    let form = AdmissibleForm::canonical(src.n.clone())?;
    let form_t = AdmissibleForm::canonical(dst.n.clone())?;
    let certificate = certificate_from_iso(&iso, &form, &form_t, src.grading.as_ref(), dst.grading.as_ref())?;
    Ok(Induced {
        certificate,
        ratio,
        iso,
        p: build_nilpolynomial(&form),
        p_t: build_nilpolynomial(&form_t),
    })
}
