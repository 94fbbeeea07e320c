//! `milnor check ...`

use std::sync::Arc;

use milnor::algebra::{milnor_algebra, tjurina_algebra, Grading, NilpotentAlgebra};
use milnor::exactpoly::format_rational;
use milnor::linalg::{self, Vector};
use milnor::nilpoly::{
    blaschke_residual, build_nilpolynomial, check_l_xi, gram_b_pi, graded_form, graded_surface_poly,
    random_point_on_surface, reconstruct_from_23, translation_between, transport, xi_field, AdmissibleForm,
    NilPolynomial, NilpolyError,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::{CheckArgs, CheckKind, SourceArgs};
use crate::input::{load, Loaded};
use crate::report::{CliError, Report};

fn admissible(n: &NilpotentAlgebra) -> Result<Arc<NilpotentAlgebra>, CliError> {
    if !n.is_admissible() {
        return Err(NilpolyError::NotAdmissible(n.annihilator().len()).into());
    }
    Ok(Arc::new(n.clone()))
}

fn canonical_p(n: &NilpotentAlgebra) -> Result<(AdmissibleForm, NilPolynomial), CliError> {
    let form = AdmissibleForm::canonical(admissible(n)?)?;
    let p = build_nilpolynomial(&form);
    Ok((form, p))
}

fn grading_of(loaded: &Loaded) -> Result<&Grading, CliError> {
    loaded
        .grading
        .as_ref()
        .ok_or_else(|| CliError::failure("no grading: the relations admit no positive weights"))
}

pub fn run(args: &CheckArgs, source: &SourceArgs) -> Result<Report, CliError> {
    let loaded = load(args.file.as_deref(), source)?;
    let mut r = Report::new();
    match args.kind {
        CheckKind::Admissible => {
            r.put("dim_ann", loaded.n.annihilator().len());
            r.verdict("admissible", loaded.n.is_admissible());
        }
        CheckKind::Nondegen => {
            let (form, p) = canonical_p(&loaded.n)?;
            let gram = gram_b_pi(&form);
            r.put("det_b_pi", format_rational(&gram.unital_determinant));
            r.put("det_p2", format_rational(&gram.determinant));
            r.verdict(
                "nondegen",
                !gram.unital_determinant.is_zero() && !gram.determinant.is_zero() && p.is_nondegenerate(),
            );
        }
        CheckKind::Blaschke => {
            let (_, p) = canonical_p(&loaded.n)?;
            let residual = blaschke_residual(&p)?;
            r.put("residual", residual.iter().map(format_rational).collect::<Vec<_>>());
            r.verdict("blaschke", linalg::is_zero_vector(&residual));
        }
        CheckKind::Recursion => {
            let (_, p) = canonical_p(&loaded.n)?;
            let rebuilt = reconstruct_from_23(&p.component(2), &p.component(3), p.degree())?;
            let mut ok = true;
            for l in 4..=p.degree() {
                let same = rebuilt.component(l) == p.component(l);
                r.put(&format!("p{l}"), if same { "match" } else { "differs" });
                ok &= same;
            }
            ok &= rebuilt.degree() == p.degree();
            r.verdict("recursion", ok);
        }
        CheckKind::Saito => {
            let f = loaded
                .function
                .as_ref()
                .ok_or_else(|| CliError::usage("saito needs a polynomial: --poly or a file built from one"))?;
            let mu = milnor_algebra(f)?;
            let tau = tjurina_algebra(f)?;
            let class = mu.class_of(f)?;
            r.put("normal_form", mu.lift(&class).to_string());
            r.put("milnor", mu.dim());
            r.put("tjurina", tau.dim());
            r.verdict("saito", linalg::is_zero_vector(&class) && mu.dim() == tau.dim());
        }
        CheckKind::Grading => match &loaded.grading {
            Some(g) => {
                r.put("degrees", g.degrees.clone());
                r.verdict("grading", true);
            }
            None => {
                r.put("degrees", "none");
                r.verdict("grading", false);
            }
        },
        CheckKind::Translation => {
            let n = admissible(&loaded.n)?;
            let a0 = n.annihilator()[0].clone();
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let random_form = |rng: &mut ChaCha8Rng| -> Result<AdmissibleForm, CliError> {
                loop {
                    let mut omega: Vector = (0..n.dim())
                        .map(|_| milnor::exactpoly::rat(rng.gen_range(-4..=4), rng.gen_range(1..=3)))
                        .collect();
                    let w = linalg::dot(&omega, &a0);
                    if w.is_zero() {
                        continue;
                    }
                    omega = linalg::scaled(&w.recip(), &omega);
                    return Ok(AdmissibleForm::from_omega(n.clone(), omega)?);
                }
            };
            let mut passed = 0;
            for _ in 0..args.count {
                let first = random_form(&mut rng)?;
                let second = random_form(&mut rng)?;
                match translation_between(&first, &second) {
                    Ok(_) => passed += 1,
                    Err(NilpolyError::IdentityFailed(_)) => {}
                    Err(e) => return Err(e.into()),
                }
            }
            r.put("pairs", args.count);
            r.put("passed", passed);
            r.verdict("translation", passed == args.count);
        }
        CheckKind::Homogeneity => {
            let n = admissible(&loaded.n)?;
            let g = grading_of(&loaded)?;
            let form = graded_form(n.clone(), g)?;
            let f = graded_surface_poly(&form);
            let mut fields = 0;
            let mut ok = true;
            for i in 0..n.dim() {
                if g.degrees[i] >= g.top {
                    continue;
                }
                let xi = xi_field(&n, g, &n.algebra().basis_vector(i))?;
                ok &= check_l_xi(&f, &xi);
                fields += 1;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let mut transports = 0;
            for _ in 0..args.count {
                let s = random_point_on_surface(&n, g, &mut rng)?;
                match transport(&n, g, &s) {
                    Ok(_) => transports += 1,
                    Err(NilpolyError::IdentityFailed(_)) => ok = false,
                    Err(e) => return Err(e.into()),
                }
            }
            r.put("fields", fields);
            r.put("transports", transports);
            r.verdict("homogeneity", ok);
        }
    }
    Ok(r)
}
