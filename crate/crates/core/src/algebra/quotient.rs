//! Quotients `C[z]/I` of polynomial rings by zero-dimensional local ideals.

use num_traits::{One, Zero};

use super::{AlgebraError, FiniteAlgebra, NilpotentAlgebra};
use crate::exactpoly::{Monomial, Polynomial, Rational};
use crate::groebner::{buchberger, GroebnerBasis, MonomialOrdering};
use crate::linalg::{self, Matrix, Vector};

/// A finite local algebra on monomial labels (the first being 1), together
/// with the Gröbner basis that reduces polynomials into it.
///
/// When the ideal also vanishes away from the origin, the global quotient
/// splits as a product of local algebras and only the factor at the origin
/// is kept: classes are multiplied by its idempotent and expressed on the
/// monomials whose images form a basis of that factor.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    algebra: FiniteAlgebra,
    basis: GroebnerBasis,
    monomials: Vec<Monomial>,
    localization: Option<Localization>,
}

#[derive(Clone, Debug)]
struct Localization {
    global: FiniteAlgebra,
    global_monomials: Vec<Monomial>,
    idempotent: Vector,
    /// columns: the chosen local basis in global coordinates
    embedding: Matrix,
}

impl QuotientAlgebra {
    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    /// Monomials labelling the basis of the algebra.
    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Whether the global quotient had to be localized at the origin.
    pub fn is_localized(&self) -> bool {
        self.localization.is_some()
    }

    /// Dimension of the global quotient `C[z]/I`.
    pub fn global_dim(&self) -> usize {
        self.localization.as_ref().map_or(self.dim(), |l| l.global.dim())
    }

    /// Coordinates of the residue class of `p`.
    pub fn class_of(&self, p: &Polynomial) -> Result<Vector, AlgebraError> {
        let r = self.basis.normal_form(p)?;
        let Some(loc) = &self.localization else {
            return Ok(coordinates(&r, &self.monomials));
        };
        let g = coordinates(&r, &loc.global_monomials);
        let local = loc.global.multiply(&loc.idempotent, &g);
        Ok(loc.embedding.solve(&local).expect("the idempotent projects onto the local factor"))
    }

    /// Polynomial representative of a coordinate vector.
    pub fn lift(&self, v: &[Rational]) -> Polynomial {
        let vars = self.basis.vars().clone();
        Polynomial::from_terms(
            vars,
            self.monomials.iter().zip(v).map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn maximal_ideal(&self) -> Result<NilpotentAlgebra, AlgebraError> {
        super::maximal_ideal(&self.algebra)
    }
}

fn coordinates(r: &Polynomial, monomials: &[Monomial]) -> Vector {
    let mut v = linalg::zero_vector(monomials.len());
    for (m, c) in r.terms() {
        let k = monomials
            .iter()
            .position(|s| s == m)
            .expect("normal forms are supported on standard monomials");
        v[k] = c.clone();
    }
    v
}

/// The local algebra of `C[z]/(generators)` at the origin. The ideal must be
/// zero-dimensional and vanish at the origin.
pub fn quotient_algebra(
    generators: &[Polynomial],
    ordering: &MonomialOrdering,
) -> Result<QuotientAlgebra, AlgebraError> {
    let gb = buchberger(generators, ordering)?;
    let monomials = gb.standard_monomials().ok_or(AlgebraError::InfiniteQuotient)?;
    if monomials.is_empty() {
        return Err(AlgebraError::NotLocal("the ideal is the unit ideal".into()));
    }
    let vars = gb.vars().clone();
    let n = monomials.len();
    let labels: Vec<String> = monomials.iter().map(|m| m.display_with(&vars)).collect();
    let mut table = vec![vec![linalg::zero_vector(n); n]; n];
    for i in 0..n {
        for j in i..n {
            let prod = Polynomial::monomial(vars.clone(), monomials[i].mul(&monomials[j]), Rational::one());
            let v = coordinates(&gb.normal_form(&prod).expect("same variables"), &monomials);
            table[i][j] = v.clone();
            table[j][i] = v;
        }
    }
    let global = FiniteAlgebra::from_table_unchecked(labels, table, true);
    if gb.is_local_zero_dimensional() {
        return Ok(QuotientAlgebra {
            algebra: global,
            basis: gb,
            monomials,
            localization: None,
        });
    }
    localize(global, gb, monomials)
}

fn localize(global: FiniteAlgebra, gb: GroebnerBasis, monomials: Vec<Monomial>) -> Result<QuotientAlgebra, AlgebraError> {
    let n = global.dim();
    let vars = gb.vars().clone();
    // the factor at the origin is where every variable acts nilpotently
    let mut rows = Vec::new();
    for i in 0..vars.len() {
        let z = coordinates(
            &gb.normal_form(&Polynomial::var(vars.clone(), i)).expect("same variables"),
            &monomials,
        );
        let zk = global.power(&z, n);
        rows.extend(global.multiplication_operator(&zk).to_rows());
    }
    let factor = Matrix::from_rows(rows).nullspace();
    if factor.is_empty() {
        return Err(AlgebraError::NotLocal("the ideal does not vanish at the origin".into()));
    }
    let k = factor.len();
    // the unit e of the factor: e * b = b for every basis vector b
    let mut eq_rows = Vec::new();
    let mut rhs = Vec::new();
    for b in &factor {
        let op = Matrix::from_columns(&factor.iter().map(|f| global.multiply(f, b)).collect::<Vec<_>>());
        eq_rows.extend(op.to_rows());
        rhs.extend(b.iter().cloned());
    }
    let y = Matrix::from_rows(eq_rows)
        .solve(&rhs)
        .expect("a local factor of a commutative algebra is unital");
    let mut idempotent = linalg::zero_vector(n);
    for (c, f) in y.iter().zip(&factor) {
        linalg::axpy(&mut idempotent, c, f);
    }
    let mut chosen: Vec<usize> = Vec::new();
    let mut images: Vec<Vector> = Vec::new();
    for (i, _) in monomials.iter().enumerate() {
        let img = global.multiply(&idempotent, &global.basis_vector(i));
        let mut trial = images.clone();
        trial.push(img.clone());
        if Matrix::from_rows(trial).rank() == images.len() + 1 {
            images.push(img);
            chosen.push(i);
        }
        if images.len() == k {
            break;
        }
    }
    let embedding = Matrix::from_columns(&images);
    let table: Vec<Vec<Vector>> = (0..k)
        .map(|a| {
            (0..k)
                .map(|b| embedding.solve(&global.multiply(&images[a], &images[b])).expect("closed under products"))
                .collect()
        })
        .collect();
    let labels = chosen.iter().map(|&i| global.labels()[i].clone()).collect();
    let local_monomials = chosen.iter().map(|&i| monomials[i].clone()).collect();
    Ok(QuotientAlgebra {
        algebra: FiniteAlgebra::from_table_unchecked(labels, table, true),
        basis: gb,
        monomials: local_monomials,
        localization: Some(Localization {
            global,
            global_monomials: monomials,
            idempotent,
            embedding,
        }),
    })
}

fn check_singular(f: &Polynomial) -> Result<Vec<Polynomial>, AlgebraError> {
    if !f.constant_term().is_zero() {
        return Err(AlgebraError::NotAtOrigin);
    }
    let grad = f.gradient();
    if grad.iter().any(|g| !g.constant_term().is_zero()) {
        return Err(AlgebraError::SmoothPoint);
    }
    Ok(grad)
}

/// Milnor algebra `C[z]/(∂f)` with the default ordering for `f`.
pub fn milnor_algebra(f: &Polynomial) -> Result<QuotientAlgebra, AlgebraError> {
    milnor_algebra_with(f, &MonomialOrdering::default_for(f))
}

pub fn milnor_algebra_with(f: &Polynomial, ordering: &MonomialOrdering) -> Result<QuotientAlgebra, AlgebraError> {
    let grad = check_singular(f)?;
    quotient_algebra(&grad, ordering)
}

/// Tjurina algebra `C[z]/(f, ∂f)`.
pub fn tjurina_algebra(f: &Polynomial) -> Result<QuotientAlgebra, AlgebraError> {
    tjurina_algebra_with(f, &MonomialOrdering::default_for(f))
}

pub fn tjurina_algebra_with(f: &Polynomial, ordering: &MonomialOrdering) -> Result<QuotientAlgebra, AlgebraError> {
    let mut gens = check_singular(f)?;
    gens.push(f.clone());
    quotient_algebra(&gens, ordering)
}
