use std::sync::Arc;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{grading_from_weights, truncated_power_algebra, Grading};
use crate::exactpoly::{int, parse, rat};
use crate::fixtures;

fn xpoly(text: &str, n: usize) -> Polynomial {
    let vars: Arc<[String]> = indexed_vars("x", n).into();
    parse(text, &vars, &Default::default()).unwrap()
}

fn upoly(text: &str, n: usize) -> Polynomial {
    let vars: Arc<[String]> = indexed_vars("u", n).into();
    parse(text, &vars, &Default::default()).unwrap()
}

fn e8_algebra(t: &Rational) -> (fixtures::Family, NilpotentAlgebra) {
    let fam = fixtures::e8_tilde(t);
    let q = fam.milnor().unwrap();
    let n = basis_from_monomials(&q, &fam.basis).unwrap();
    (fam, n)
}

fn canonical(n: NilpotentAlgebra) -> AdmissibleForm {
    AdmissibleForm::canonical(Arc::new(n)).unwrap()
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vector {
    (0..n).map(|_| fixtures::random_rational(rng, 4, 3)).collect()
}

#[test]
fn listed_basis_rebases_e8() {
    let (_, n) = e8_algebra(&int(1));
    assert_eq!(n.dim(), 9);
    assert_eq!(n.annihilator(), &[linalg::unit_vector(9, 0)]);
    assert_eq!(n.labels()[0], "z1^4*z2");
    assert_eq!(n.hilbert_chain(), vec![9, 7, 5, 3, 2, 1]);
}

#[test]
fn identity_rebase_and_missing_monomial() {
    let fam = fixtures::e8_tilde(&int(1));
    let q = fam.milnor().unwrap();
    let standard: Vec<Polynomial> = q.standard_monomials()[1..]
        .iter()
        .map(|m| Polynomial::monomial(fam.f.vars().clone(), m.clone(), Rational::one()))
        .collect();
    let same = basis_from_monomials(&q, &standard).unwrap();
    assert_eq!(same.algebra(), q.maximal_ideal().unwrap().algebra());
    assert_eq!(
        basis_from_monomials(&q, &fam.basis[1..]),
        Err(NilpolyError::NotABasis { rank: 8, expected: 9 })
    );
}

#[test]
fn exp_of_generator_in_truncated_powers() {
    let n = truncated_power_algebra(3);
    assert_eq!(exp_map(&n, &[int(1), int(0), int(0)]), vec![int(1), rat(1, 2), rat(1, 6)]);
    assert_eq!(exp_map(&n, &[int(0), int(0), int(0)]), vec![int(0); 3]);
}

#[test]
fn log_inverts_exp_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let algebras = vec![
        truncated_power_algebra(3),
        fixtures::gorenstein(),
        e8_algebra(&int(1)).1,
        fixtures::non_graded().maximal_ideal().unwrap(),
    ];
    for n in &algebras {
        for _ in 0..100 {
            let u = random_vector(&mut rng, n.dim());
            assert_eq!(log_map(n, &exp_map(n, &u)), u);
        }
    }
}

#[test]
fn gram_matrices() {
    let g = gram_b_pi(&canonical(fixtures::gorenstein()));
    assert_eq!(
        g.kernel,
        Matrix::from_rows(vec![
            vec![int(0), int(1), int(0)],
            vec![int(1), int(0), int(0)],
            vec![int(0), int(0), int(2)],
        ])
    );
    assert_eq!(g.determinant, int(-2));
    assert!(g.radical.is_empty());
    assert!(!g.unital_determinant.is_zero());

    let g = gram_b_pi(&canonical(truncated_power_algebra(3)));
    assert_eq!(g.kernel, Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]));

    let g = gram_b_pi(&canonical(e8_algebra(&rat(3, 2)).1));
    assert!(!g.determinant.is_zero());
    assert!(!g.unital_determinant.is_zero());
}

#[test]
fn small_nilpolynomials() {
    let p = build_nilpolynomial(&canonical(fixtures::gorenstein()));
    assert_eq!(p.total(), xpoly("x1*x2 + x3^2", 3));
    assert_eq!(p.degree(), 2);

    let p = build_nilpolynomial(&canonical(truncated_power_algebra(3)));
    assert_eq!(p.total(), xpoly("x1*x2 + 1/6*x1^3", 2));
    assert_eq!(p.degree(), 3);
    assert!(p.is_nondegenerate());
}

fn q_t(t: &Rational) -> Polynomial {
    let mut b = std::collections::HashMap::new();
    b.insert("t".to_string(), t.clone());
    let vars: Arc<[String]> = indexed_vars("x", 8).into();
    parse("t*x2^3 - 2*t^2*x2^2*x3 - 9*x2*x3^2 + 2*t*x3^3", &vars, &b).unwrap()
}

#[test]
fn e8_nilpolynomial_matches_displayed_coefficients() {
    for t in [int(1), rat(2, 3), int(-2), int(0)] {
        let (_, n) = e8_algebra(&t);
        let nu = n.nil_index();
        assert_eq!(nu, if t.is_zero() { 5 } else { 6 });
        let p = build_nilpolynomial(&canonical(n));
        assert_eq!(p.degree(), nu);
        let total = p.total();
        let c = |e: [u32; 8]| total.coeff_of(&e);
        assert_eq!(c([6, 0, 0, 0, 0, 0, 0, 0]), -&t / int(1080));
        assert_eq!(c([4, 1, 0, 0, 0, 0, 0, 0]), rat(1, 24));
        assert_eq!(c([4, 0, 1, 0, 0, 0, 0, 0]), -&t / int(36));
        let cubic = p.component(3);
        let pure = Polynomial::from_terms(
            cubic.vars().clone(),
            cubic
                .terms()
                .filter(|(m, _)| m.exponents().iter().enumerate().all(|(i, &e)| e == 0 || i == 1 || i == 2))
                .map(|(m, c)| (m.clone(), c.clone())),
        );
        assert_eq!(pure, q_t(&t).scale(&rat(-1, 18)));
        assert_eq!(blaschke_residual(&p).unwrap(), vec![int(0); 8]);
    }
}

#[test]
fn multilinear_forms_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let form = canonical(e8_algebra(&int(1)).1);
    let p = build_nilpolynomial(&form);
    let n = form.n();
    for a in 0..n {
        for b in 0..n {
            let v = [linalg::unit_vector(n, a), linalg::unit_vector(n, b)];
            assert_eq!(multilinear_omega(&form, &v), &p.gram()[(a, b)] * int(2));
            assert_eq!(p.polarize(&v), multilinear_omega(&form, &v));
        }
    }
    for l in 2..=5 {
        let vs: Vec<Vector> = (0..l).map(|_| random_vector(&mut rng, n)).collect();
        let value = multilinear_omega(&form, &vs);
        assert_eq!(p.polarize(&vs), value);
        let mut rev = vs.clone();
        rev.reverse();
        assert_eq!(multilinear_omega(&form, &rev), value);
        rev.swap(0, 1);
        assert_eq!(p.polarize(&rev), value);
    }
    let x = random_vector(&mut rng, n);
    let diag = vec![x.clone(); 4];
    assert_eq!(multilinear_omega(&form, &diag), p.component(4).evaluate(&x) * int(24));

    let t = canonical(truncated_power_algebra(3));
    let e1 = linalg::unit_vector(2, 0);
    assert_eq!(multilinear_omega(&t, &[e1.clone(), e1.clone(), e1]), int(1));
}

#[test]
fn w_products() {
    let p = build_nilpolynomial(&canonical(truncated_power_algebra(3)));
    let e1 = linalg::unit_vector(2, 0);
    assert_eq!(w_product(&p, &e1, &e1).unwrap(), linalg::unit_vector(2, 1));

    let p = build_nilpolynomial(&canonical(fixtures::gorenstein()));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let (x, y) = (random_vector(&mut rng, 3), random_vector(&mut rng, 3));
        assert_eq!(w_product(&p, &x, &y).unwrap(), vec![int(0); 3]);
    }

    let form = canonical(e8_algebra(&int(1)).1);
    let p = build_nilpolynomial(&form);
    for _ in 0..10 {
        let (x, y) = (random_vector(&mut rng, 8), random_vector(&mut rng, 8));
        let xy = w_product(&p, &x, &y).unwrap();
        assert_eq!(xy, w_product(&p, &y, &x).unwrap());
        // defining identity against the algebra: omega_2(x y, z) = omega_3(x, y, z)
        let z = random_vector(&mut rng, 8);
        assert_eq!(
            multilinear_omega(&form, &[xy, z.clone()]),
            multilinear_omega(&form, &[x, y, z])
        );
    }
}

#[test]
fn reconstruction_from_low_degrees() {
    let p = build_nilpolynomial(&canonical(e8_algebra(&int(1)).1));
    let r = reconstruct_from_23(&p.component(2), &p.component(3), 20).unwrap();
    assert_eq!(r.components(), p.components());

    let t = build_nilpolynomial(&canonical(truncated_power_algebra(3)));
    let r = reconstruct_from_23(&t.component(2), &t.component(3), 20).unwrap();
    assert_eq!(r.degree(), 3);
    assert!(r.component(4).is_zero());

    let q2 = xpoly("x1*x2 + x3^2", 3);
    let r = reconstruct_from_23(&q2, &Polynomial::zero(q2.vars().clone()), 20).unwrap();
    assert_eq!(r.total(), q2);

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..15 {
        let n = fixtures::random_admissible(&mut rng, 8);
        let p = build_nilpolynomial(&canonical(n));
        let r = reconstruct_from_23(&p.component(2), &p.component(3), 20).unwrap();
        assert_eq!(r.components(), p.components());
    }
}

#[test]
fn blaschke_condition() {
    let p = build_nilpolynomial(&canonical(fixtures::gorenstein()));
    assert_eq!(blaschke_residual(&p).unwrap(), vec![int(0); 3]);

    let t = build_nilpolynomial(&canonical(truncated_power_algebra(3)));
    assert_eq!(blaschke_residual(&t).unwrap(), vec![int(0); 2]);
    // g^{11} = 0 here, so a perturbation of h_111 alone is invisible
    let bumped = NilPolynomial::from_polynomial(&(&t.total() + &xpoly("x1^3", 2))).unwrap();
    assert_eq!(blaschke_residual(&bumped).unwrap(), vec![int(0); 2]);
    let bumped = NilPolynomial::from_polynomial(&(&t.total() + &xpoly("x1^2*x2", 2))).unwrap();
    assert_eq!(blaschke_residual(&bumped).unwrap(), vec![rat(4, 3), int(0)]);
}

#[test]
fn surface_equations() {
    let f = defining_poly_s(&canonical(fixtures::gorenstein()));
    assert_eq!(f, upoly("2*u4 + 4*u1*u2 + 4*u3^2", 4));
    assert!(f.evaluate(&[int(0), int(0), int(0), int(0)]).is_zero());
    let f = defining_poly_s(&canonical(truncated_power_algebra(3)));
    assert_eq!(f, upoly("2*u3 + 4*u1*u2 + 4/3*u1^3", 3));
}

#[test]
fn surface_is_the_graph_of_the_nilpolynomial() {
    let form = canonical(e8_algebra(&int(-1)).1);
    let p = build_nilpolynomial(&form);
    let f = defining_poly_s(&form);
    // u = x0 a0 + phi(x) with x0 the last of n + 1 variables
    let n = form.n();
    let mut names = indexed_vars("x", n);
    names.push("x0".into());
    let vars: Arc<[String]> = names.into();
    let mut basis = form.kernel().to_vec();
    basis.push(form.a0().to_vec());
    let u = symbolic_point(&vars, &basis, form.algebra().dim());
    let lhs = f.compose(&u);
    let two_x: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(vars.clone(), i).scale(&int(2))).collect();
    let rhs = &Polynomial::var(vars.clone(), n).scale(&int(2)) + &p.total().compose(&two_x);
    assert_eq!(lhs, rhs);
}

#[test]
fn translations() {
    let form = canonical(fixtures::gorenstein());
    assert_eq!(translation_between(&form, &form).unwrap(), vec![int(0); 4]);

    let alg = form.algebra_arc().clone();
    let e = |i| linalg::unit_vector(4, i);
    let tilted = AdmissibleForm::new(
        alg.clone(),
        e(3),
        vec![vec![int(1), int(0), int(0), int(1)], e(1), e(2)],
    )
    .unwrap();
    assert_eq!(translation_between(&form, &tilted).unwrap(), vec![int(0), rat(1, 2), int(0), int(0)]);

    let doubled = AdmissibleForm::from_omega(alg, linalg::scaled(&int(2), tilted.omega())).unwrap();
    assert_eq!(translation_between(&form, &doubled), Err(NilpolyError::NormalizationMismatch));

    let t = canonical(truncated_power_algebra(3));
    let e = |i| linalg::unit_vector(3, i);
    let tilt = AdmissibleForm::new(t.algebra_arc().clone(), e(2), vec![e(0), vec![int(0), int(1), int(1)]]).unwrap();
    assert!(translation_between(&t, &tilt).is_ok());

    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..10 {
        let n = Arc::new(fixtures::random_admissible(&mut rng, 8));
        let base = AdmissibleForm::canonical(n.clone()).unwrap();
        let mut omega = random_vector(&mut rng, n.dim());
        let w = linalg::dot(&omega, base.a0());
        if w.is_zero() {
            continue;
        }
        omega = linalg::scaled(&w.recip(), &omega);
        let other = AdmissibleForm::from_omega(n, omega).unwrap();
        assert!(translation_between(&base, &other).is_ok());
    }
}

fn e8_graded(t: &Rational) -> (NilpotentAlgebra, Grading) {
    let (fam, n) = e8_algebra(t);
    let g = grading_from_weights(&n, fam.f.vars(), &fam.weights).unwrap();
    (n, g)
}

#[test]
fn graded_vector_fields() {
    let n = fixtures::gorenstein();
    let grading = Grading::new(&n, vec![1, 1, 1, 2]).unwrap();
    let xi = xi_field(&n, &grading, &linalg::unit_vector(4, 0)).unwrap();
    let expect: Vec<Polynomial> = ["1", "0", "0", "-u2"].iter().map(|s| upoly(s, 4)).collect();
    assert_eq!(xi, expect);
    let form = graded_form(Arc::new(n.clone()), &grading).unwrap();
    let f = graded_surface_poly(&form);
    assert!(check_l_xi(&f, &xi));
    assert_eq!(
        xi_field(&n, &grading, &linalg::unit_vector(4, 3)),
        Err(NilpolyError::TopDegree(2))
    );

    let (n, grading) = e8_graded(&int(1));
    let form = graded_form(Arc::new(n.clone()), &grading).unwrap();
    let f = graded_surface_poly(&form);
    for alpha in form.kernel() {
        assert!(check_l_xi(&f, &xi_field(&n, &grading, alpha).unwrap()));
    }
    let mixed = vec![int(0), int(1), int(1), int(0), int(0), int(0), int(0), int(0), int(0)];
    assert_eq!(xi_field(&n, &grading, &mixed), Err(NilpolyError::NotHomogeneous));
    // a field built with the wrong coefficient is not tangent
    let mut bad = xi_field(&n, &grading, &linalg::unit_vector(9, 1)).unwrap();
    bad[1] = &bad[1] + &Polynomial::one(bad[1].vars().clone());
    assert!(!check_l_xi(&f, &bad));
}

#[test]
fn transports() {
    let n = fixtures::gorenstein();
    let grading = Grading::new(&n, vec![1, 1, 1, 2]).unwrap();
    assert_eq!(transport(&n, &grading, &vec![int(0); 4]).unwrap(), AffineMap::identity(4));
    let g = transport(&n, &grading, &linalg::unit_vector(4, 0)).unwrap();
    assert_eq!(g.shift, linalg::unit_vector(4, 0));
    assert_eq!(
        transport(&n, &grading, &linalg::unit_vector(4, 3)),
        Err(NilpolyError::NotOnSurface)
    );

    let t = truncated_power_algebra(3);
    let grading = Grading::new(&t, vec![1, 2, 3]).unwrap();
    let s = vec![int(1), rat(-1, 2), rat(1, 3)];
    assert_eq!(transport(&t, &grading, &s).unwrap().shift, s);

    let (n, grading) = e8_graded(&int(2));
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..3 {
        let s = random_point_on_surface(&n, &grading, &mut rng).unwrap();
        assert_eq!(transport(&n, &grading, &s).unwrap().shift, s);
    }
}

#[test]
fn low_degree_terms_rejected() {
    assert_eq!(
        NilPolynomial::from_polynomial(&xpoly("x1 + x1*x2", 2)),
        Err(NilpolyError::LowDegreeTerms)
    );
}
