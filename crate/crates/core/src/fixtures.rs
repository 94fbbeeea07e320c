//! Worked examples: the two quasi-homogeneous families, small table
//! algebras, and a generator of random admissible algebras.

use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;

use crate::algebra::{
    milnor_algebra, quotient_algebra, scaled_basis, AlgebraError, FiniteAlgebra, NilpotentAlgebra, QuotientAlgebra,
};
use crate::exactpoly::{int, parse, Monomial, Polynomial, Rational, WeightSystem};
use crate::groebner::MonomialOrdering;
use crate::linalg::{self, Matrix, Vector};

/// A quasi-homogeneous family member with a designated monomial basis of
/// the maximal ideal (socle monomial first).
#[derive(Clone, Debug)]
pub struct Family {
    pub f: Polynomial,
    pub weights: WeightSystem,
    pub basis: Vec<Polynomial>,
}

impl Family {
    pub fn milnor(&self) -> Result<QuotientAlgebra, AlgebraError> {
        milnor_algebra(&self.f)
    }
}

fn family(vars: &[&str], f: &str, t: &Rational, weights: WeightSystem, basis: &[&str]) -> Family {
    let vars: Arc<[String]> = vars.iter().map(|s| s.to_string()).collect();
    let mut bindings = std::collections::HashMap::new();
    bindings.insert("t".to_string(), t.clone());
    let f = parse(f, &vars, &bindings).expect("fixture parses");
    let basis = basis
        .iter()
        .map(|m| parse(m, &vars, &bindings).expect("fixture parses"))
        .collect();
    Family { f, weights, basis }
}

/// `z1^6 + t z1^4 z2 + z2^3 + z3^2`, weights (1, 2, 3), degree 6.
pub fn e8_tilde(t: &Rational) -> Family {
    family(
        &["z1", "z2", "z3"],
        "z1^6 + t*z1^4*z2 + z2^3 + z3^2",
        t,
        WeightSystem::new(vec![1, 2, 3], 6),
        &["z1^4*z2", "z1", "z2", "z1^2", "z1*z2", "z1^3", "z1^2*z2", "z1^4", "z1^3*z2"],
    )
}

/// `z1^4 + t z1^2 z2^3 + z2^6`, weights (3, 2), degree 12.
pub fn curve13(t: &Rational) -> Family {
    family(
        &["z1", "z2"],
        "z1^4 + t*z1^2*z2^3 + z2^6",
        t,
        WeightSystem::new(vec![3, 2], 12),
        &[
            "z1^2*z2^4",
            "z2",
            "z1",
            "z1^2",
            "z1*z2",
            "z2^2",
            "z1^2*z2",
            "z1*z2^2",
            "z2^3",
            "z1*z2^3",
            "z1^2*z2^2",
            "z2^4",
            "z1^2*z2^3",
            "z1*z2^4",
        ],
    )
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// `C^4` with `u v = (0, 0, 0, u1 v2 + u2 v1 + 2 u3 v3)`; nil-polynomial
/// `x1 x2 + x3^2`.
pub fn gorenstein() -> NilpotentAlgebra {
    let a = FiniteAlgebra::from_products(
        labels(&["e1", "e2", "e3", "e4"]),
        vec![(0, 1, scaled_basis(4, 3, int(1))), (2, 2, scaled_basis(4, 3, int(2)))],
        false,
    )
    .expect("valid table");
    NilpotentAlgebra::new(a).expect("nilpotent")
}

/// `<a, b, z>` with `a^2 = z`, `b^2 = sign * z`, `a b = 0`.
pub fn glued(sign: i64) -> NilpotentAlgebra {
    let a = FiniteAlgebra::from_products(
        labels(&["a", "b", "z"]),
        vec![(0, 0, scaled_basis(3, 2, int(1))), (1, 1, scaled_basis(3, 2, int(sign)))],
        false,
    )
    .expect("valid table");
    NilpotentAlgebra::new(a).expect("nilpotent")
}

/// Generators of an admissible ideal with no grading.
pub fn non_graded_generators() -> Vec<Polynomial> {
    let vars: Arc<[String]> = labels(&["z1", "z2"]).into();
    ["z1^3*z2", "z1^5", "z1*z2^3 + z1^3", "z1^2*z2^2 + z2^4"]
        .iter()
        .map(|g| parse(g, &vars, &Default::default()).expect("fixture parses"))
        .collect()
}

pub fn non_graded() -> QuotientAlgebra {
    quotient_algebra(&non_graded_generators(), &MonomialOrdering::graded_lex(2)).expect("finite local quotient")
}

/// Random rational with numerator in `[-bound, bound]` and denominator in
/// `[1, den]`.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64, den: i64) -> Rational {
    Rational::new(rng.gen_range(-bound..=bound).into(), rng.gen_range(1..=den).into())
}

/// Random admissible algebra of dimension at most `max_dim`: the maximal
/// ideal of the Gorenstein algebra apolar to a random polynomial `F` in at
/// most three variables (see [`apolar_maximal_ideal`]). `F` mixes degrees,
/// so the result is in general not graded.
pub fn random_admissible<R: Rng>(rng: &mut R, max_dim: usize) -> NilpotentAlgebra {
    loop {
        let m = rng.gen_range(1..=3usize);
        let d = rng.gen_range(2..=4u32);
        let vars: Arc<[String]> = crate::exactpoly::indexed_vars("y", m).into();
        let mut f = Polynomial::zero(vars.clone());
        for _ in 0..rng.gen_range(1..=4) {
            let deg = rng.gen_range(2..=d);
            let mut e = vec![0u32; m];
            for _ in 0..deg {
                e[rng.gen_range(0..m)] += 1;
            }
            f.add_term(Monomial::new(e), Rational::from_integer(rng.gen_range(-3i64..=3).into()));
        }
        if let Some(n) = apolar_maximal_ideal(&f) {
            if n.dim() >= 2 && n.dim() <= max_dim {
                return n;
            }
        }
    }
}

fn apply_operator(f: &Polynomial, exponents: &[u32]) -> Polynomial {
    let mut p = f.clone();
    for (v, &count) in exponents.iter().enumerate() {
        for _ in 0..count {
            p = p.partial_derivative(v);
        }
    }
    p
}

/// Maximal ideal of the algebra apolar to `f`: the span of the derivatives
/// `∂^a f` with `|a| >= 1`, where `∂^a f * ∂^b f = ∂^(a+b) f`. It is
/// admissible whenever `f` has no terms of degree below 2.
pub fn apolar_maximal_ideal(f: &Polynomial) -> Option<NilpotentAlgebra> {
    let d = f.total_degree()?;
    let m = f.nvars();
    let mut operators: Vec<Vec<u32>> = Vec::new();
    let mut frontier = vec![vec![0u32; m]];
    for _ in 0..d {
        let mut next: Vec<Vec<u32>> = Vec::new();
        for e in &frontier {
            for i in 0..m {
                let mut e2 = e.clone();
                e2[i] += 1;
                if !next.contains(&e2) && !apply_operator(f, &e2).is_zero() {
                    next.push(e2);
                }
            }
        }
        operators.extend(next.iter().cloned());
        frontier = next;
    }
    let mut monos: Vec<Monomial> = Vec::new();
    for e in &operators {
        for (mono, _) in apply_operator(f, e).terms() {
            if !monos.contains(mono) {
                monos.push(mono.clone());
            }
        }
    }
    let to_vec = |p: &Polynomial| -> Vector { monos.iter().map(|mm| p.coefficient(mm)).collect() };
    let mut basis: Vec<Vec<u32>> = Vec::new();
    let mut coords: Vec<Vector> = Vec::new();
    for e in &operators {
        let mut trial = coords.clone();
        trial.push(to_vec(&apply_operator(f, e)));
        if Matrix::from_rows(trial.clone()).rank() > coords.len() {
            coords = trial;
            basis.push(e.clone());
        }
    }
    let k = basis.len();
    if k == 0 {
        return None;
    }
    let images = Matrix::from_columns(&coords);
    let mut table = vec![vec![linalg::zero_vector(k); k]; k];
    for i in 0..k {
        for j in i..k {
            let sum: Vec<u32> = basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b).collect();
            let c = images.solve(&to_vec(&apply_operator(f, &sum)))?;
            table[i][j] = c.clone();
            table[j][i] = c;
        }
    }
    let yvars = crate::exactpoly::indexed_vars("y", m);
    let labels = basis
        .iter()
        .map(|e| format!("d({})", Monomial::new(e.clone()).display_with(&yvars)))
        .collect();
    let n = NilpotentAlgebra::new(FiniteAlgebra::from_table(labels, table, false).ok()?).ok()?;
    n.is_admissible().then_some(n)
}

/// Values `p/q` with `1 <= p, q <= 5` and both signs, plus zero.
pub fn small_rationals() -> Vec<Rational> {
    let mut out = vec![Rational::zero()];
    for p in 1..=5i64 {
        for q in 1..=5i64 {
            let r = Rational::new(p.into(), q.into());
            if !out.contains(&r) {
                out.push(r.clone());
                out.push(-r);
            }
        }
    }
    out
}
