//! Linear equivalence of nil-polynomials.
//!
//! A certificate `(c, C)` asserts `c * Ptilde(x) = P(C x)`. Certificates are
//! only ever produced after an exact check of that identity.

mod iso;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, NilpotentAlgebra};
use crate::exactpoly::{format_rational, parse_rational, Polynomial, Rational};
use crate::linalg::Matrix;
use crate::nilpoly::{build_nilpolynomial, AdmissibleForm, NilPolynomial, NilpolyError};

pub use iso::{certificate_from_iso, check_isomorphism, induced_certificate, Induced};

pub const CONVENTION: &str = "c*Ptilde(x)=P(Cx)";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquivalenceError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular C")]
    SingularMatrix,
    #[error("c must be nonzero")]
    ZeroScale,
    #[error("not an isomorphism: L(e{i} e{j}) != L(e{i}) L(e{j})")]
    NotIsomorphism { i: usize, j: usize },
    #[error("not an isomorphism: L is singular")]
    SingularIsomorphism,
    #[error("no grading available")]
    NoGrading,
    #[error("not a germ equivalence: f~ o psi is not proportional to f")]
    NotGermEquivalence,
    #[error("induced map not invertible")]
    NotInvertible,
    #[error("dimension out of range: {0}")]
    OutOfRange(usize),
    #[error("certificate failed verification")]
    VerificationFailed,
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error(transparent)]
    Nilpoly(#[from] NilpolyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceCertificate {
    pub c: Rational,
    pub matrix: Matrix,
}

impl EquivalenceCertificate {
    pub fn new(c: Rational, matrix: Matrix) -> Result<Self, EquivalenceError> {
        if c.is_zero() {
            return Err(EquivalenceError::ZeroScale);
        }
        if !matrix.is_square() {
            return Err(EquivalenceError::DimensionMismatch("C is not square".into()));
        }
        if matrix.determinant().is_zero() {
            return Err(EquivalenceError::SingularMatrix);
        }
        Ok(EquivalenceCertificate { c, matrix })
    }

    pub fn identity(n: usize) -> Self {
        EquivalenceCertificate {
            c: Rational::one(),
            matrix: Matrix::identity(n),
        }
    }

    /// `(c c', C C')`: from `(P, P~)` and `(P~, P^)` to `(P, P^)`.
    pub fn compose(&self, next: &EquivalenceCertificate) -> EquivalenceCertificate {
        EquivalenceCertificate {
            c: &self.c * &next.c,
            matrix: &self.matrix * &next.matrix,
        }
    }

    /// The certificate for the swapped pair: `c^{-1} P(x) = P~(C^{-1} x)`.
    pub fn inverse(&self) -> EquivalenceCertificate {
        EquivalenceCertificate {
            c: self.c.recip(),
            matrix: self.matrix.inverse().expect("C is invertible"),
        }
    }

    pub fn to_file(&self) -> CertificateFile {
        CertificateFile {
            c: format_rational(&self.c),
            matrix: self.matrix.to_strings(),
            convention: CONVENTION.to_string(),
        }
    }
}

impl fmt::Display for EquivalenceCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "c = {}", format_rational(&self.c))?;
        write!(f, "C =\n{}", self.matrix)
    }
}

/// JSON layout of a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub c: String,
    #[serde(rename = "C")]
    pub matrix: Vec<Vec<String>>,
    pub convention: String,
}

impl CertificateFile {
    pub fn to_certificate(&self) -> Result<EquivalenceCertificate, EquivalenceError> {
        if self.convention != CONVENTION {
            return Err(EquivalenceError::Malformed(format!(
                "unsupported convention `{}`",
                self.convention
            )));
        }
        let bad = |e: crate::exactpoly::ParseError| EquivalenceError::Malformed(e.to_string());
        let c = parse_rational(&self.c).map_err(bad)?;
        let n = self.matrix.len();
        if self.matrix.iter().any(|r| r.len() != n) {
            return Err(EquivalenceError::DimensionMismatch("C is not square".into()));
        }
        let rows = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|x| parse_rational(x).map_err(bad)).collect())
            .collect::<Result<Vec<_>, _>>()?;
        EquivalenceCertificate::new(c, Matrix::from_rows(rows))
    }
}

/// Outcome of an exact certificate check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    /// `c P~(x) = P(C x)` as polynomials
    pub holds: bool,
    /// the identity restricted to each degree `2..=max degree`
    pub per_degree: Vec<(usize, bool)>,
    /// degrees 2 and 3 both pass
    pub low_degrees: bool,
    /// `low_degrees == holds`, as it must be for genuine nil-polynomials
    pub consistent: bool,
}

pub fn verify_certificate(
    p: &NilPolynomial,
    p_tilde: &NilPolynomial,
    cert: &EquivalenceCertificate,
) -> Result<VerifyReport, EquivalenceError> {
    let n = p.n();
    if p_tilde.n() != n {
        return Err(EquivalenceError::DimensionMismatch(format!(
            "P has {n} variables, Ptilde has {}",
            p_tilde.n()
        )));
    }
    if cert.matrix.rows() != n || cert.matrix.cols() != n {
        return Err(EquivalenceError::DimensionMismatch(format!(
            "C is {}x{}, expected {n}x{n}",
            cert.matrix.rows(),
            cert.matrix.cols()
        )));
    }
    if cert.c.is_zero() {
        return Err(EquivalenceError::ZeroScale);
    }
    if cert.matrix.determinant().is_zero() {
        return Err(EquivalenceError::SingularMatrix);
    }
    let top = p.degree().max(p_tilde.degree());
    let vars = p_tilde.vars().clone();
    let per_degree: Vec<(usize, bool)> = (2..=top)
        .map(|l| {
            let lhs = p_tilde.component(l).scale(&cert.c);
            let rhs = rename(&p.component(l), &vars)
                .substitute_linear(&cert.matrix)
                .expect("square matrix of matching size");
            (l, lhs == rhs)
        })
        .collect();
    let holds = per_degree.iter().all(|(_, ok)| *ok);
    let low_degrees = per_degree.iter().filter(|(l, _)| *l <= 3).all(|(_, ok)| *ok);
    Ok(VerifyReport {
        holds,
        per_degree,
        low_degrees,
        consistent: holds == low_degrees,
    })
}

/// Isomorphism invariants of an admissible algebra and its nil-polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub nil_index: usize,
    pub hilbert_chain: Vec<usize>,
    pub degrees: Vec<usize>,
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {:?}, degrees {:?})",
            self.dim, self.nil_index, self.hilbert_chain, self.degrees
        )
    }
}

pub fn fingerprint(n: &NilpotentAlgebra) -> Result<Fingerprint, EquivalenceError> {
    let form = AdmissibleForm::canonical(Arc::new(n.clone()))?;
    let p = build_nilpolynomial(&form);
    let degrees = (2..=p.degree()).filter(|&l| !p.component(l).is_zero()).collect();
    Ok(Fingerprint {
        dim: n.dim(),
        nil_index: n.nil_index(),
        hilbert_chain: n.hilbert_chain(),
        degrees,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Separation {
    Distinct,
    Inconclusive,
}

impl fmt::Display for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Separation::Distinct => "distinct",
            Separation::Inconclusive => "inconclusive",
        })
    }
}

/// Unequal fingerprints prove non-isomorphism; equal ones prove nothing.
pub fn separate(a: &Fingerprint, b: &Fingerprint) -> Separation {
    if a == b {
        Separation::Inconclusive
    } else {
        Separation::Distinct
    }
}

/// Linear-equivalence class of the nil-polynomial of an admissible algebra
/// of dimension at most 3.
pub fn classify_small(n: &NilpotentAlgebra) -> Result<&'static str, EquivalenceError> {
    if !n.is_admissible() {
        return Err(NilpolyError::NotAdmissible(n.annihilator().len()).into());
    }
    match (n.dim(), n.nil_index()) {
        (1, _) => Ok("0"),
        (2, _) => Ok("x1^2"),
        (3, 3) => Ok("x1x2+x1^3"),
        (3, 2) => Ok("x1x2"),
        (d, _) => Err(EquivalenceError::OutOfRange(d)),
    }
}

/// Candidate values `±p/q`, `1 <= p, q <= bound`.
fn lambda_candidates(bound: i64) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::new();
    for p in 1..=bound {
        for q in 1..=bound {
            let r = Rational::new(p.into(), q.into());
            if !out.contains(&r) {
                out.push(r.clone());
                out.push(-r);
            }
        }
    }
    out
}

/// Bounded search over diagonal certificates `C = diag(lambda^{w_i})` for the
/// all-ones pattern and the supplied weight patterns. Every hit is verified.
pub fn monomial_search(
    p: &NilPolynomial,
    p_tilde: &NilPolynomial,
    bound: i64,
    patterns: &[Vec<i32>],
) -> Option<EquivalenceCertificate> {
    let n = p.n();
    if p_tilde.n() != n {
        return None;
    }
    let target = p_tilde.total();
    let (m, tc) = target.canonical_leading().map(|(m, c)| (m.clone(), c.clone()))?;
    let mut all = vec![vec![1; n]];
    all.extend(patterns.iter().filter(|w| w.len() == n).cloned());
    let source = rename(&p.total(), p_tilde.vars());
    for w in &all {
        for lambda in lambda_candidates(bound) {
            let diag: Vec<Rational> = w.iter().map(|&e| rational_pow(&lambda, e)).collect();
            let c_mat = Matrix::diagonal(&diag);
            let image = source.substitute_linear(&c_mat).expect("square");
            let c = image.coefficient(&m) / &tc;
            if c.is_zero() {
                continue;
            }
            let cert = EquivalenceCertificate {
                c,
                matrix: c_mat,
            };
            if verify_certificate(p, p_tilde, &cert).is_ok_and(|r| r.holds) {
                return Some(cert);
            }
        }
    }
    None
}

fn rational_pow(x: &Rational, e: i32) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    (0..e.unsigned_abs()).fold(Rational::one(), |acc, _| acc * &base)
}

/// The same coefficients over another list of variable names.
fn rename(p: &Polynomial, vars: &Arc<[String]>) -> Polynomial {
    Polynomial::from_terms(vars.clone(), p.terms().map(|(m, c)| (m.clone(), c.clone())))
}
