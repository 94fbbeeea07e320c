//! Exact computation of moduli algebras of quasi-homogeneous isolated
//! hypersurface singularities, their nil-polynomials, and linear-equivalence
//! certificates between nil-polynomials.
//!
//! The pipeline is
//!
//! 1. [`exactpoly`]: parse a polynomial `f` over the rationals;
//! 2. [`groebner`] and [`algebra`]: compute the Milnor (or Tjurina) algebra
//!    `O/J(f)` as a finite-dimensional algebra and its maximal ideal `N`;
//! 3. [`nilpoly`]: pick an admissible linear form on `N` and expand
//!    `P = omega(exp_2(phi(x)))`;
//! 4. [`equivalence`]: verify, construct or search for pairs `(c, C)` with
//!    `c * Ptilde(x) = P(C x)`.
//!
//! Everything is exact; there is no floating point anywhere.

pub mod exactpoly;
pub mod groebner;
pub mod linalg;
pub mod algebra;
pub mod nilpoly;
pub mod equivalence;
pub mod fixtures;
