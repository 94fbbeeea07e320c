//! `milnor nilpoly ...`

use std::path::Path;
use std::sync::Arc;

use milnor::algebra::NilpotentAlgebra;
use milnor::exactpoly::format_rational;
use milnor::linalg::Vector;
use milnor::nilpoly::{build_nilpolynomial, AdmissibleForm, NilPolynomial, NilpolyError};

use crate::args::NilpolyArgs;
use crate::input::{load, split_list, NilpolyFile, Provenance};
use crate::output::write_json;
use crate::report::{CliError, Report};

use super::yes_no;

fn label_index(n: &NilpotentAlgebra, label: &str) -> Result<usize, CliError> {
    n.labels()
        .iter()
        .position(|l| l == label.trim())
        .ok_or_else(|| CliError::usage(format!("no basis element labelled `{}`", label.trim())))
}

/// The form with `a0 = e0` and the given kernel labels; defaults are the
/// canonical choices.
pub fn make_form(n: Arc<NilpotentAlgebra>, e0: Option<&str>, kernel: Option<&str>) -> Result<AdmissibleForm, CliError> {
    if e0.is_none() && kernel.is_none() {
        return Ok(AdmissibleForm::canonical(n)?);
    }
    let ann = n.annihilator();
    if ann.len() != 1 {
        return Err(NilpolyError::NotAdmissible(ann.len()).into());
    }
    let (a0, skip) = match e0 {
        Some(label) => {
            let i = label_index(&n, label)?;
            (n.algebra().basis_vector(i), Some(i))
        }
        None => (ann[0].clone(), None),
    };
    let kernel: Vec<Vector> = match kernel {
        Some(list) => split_list(list)
            .iter()
            .map(|l| Ok(n.algebra().basis_vector(label_index(&n, l)?)))
            .collect::<Result<_, CliError>>()?,
        None => (0..n.dim())
            .filter(|&i| Some(i) != skip)
            .map(|i| n.algebra().basis_vector(i))
            .collect(),
    };
    Ok(AdmissibleForm::new(n, a0, kernel)?)
}

fn strings(v: &[milnor::exactpoly::Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn to_file(p: &NilPolynomial) -> NilpolyFile {
    NilpolyFile {
        vars: p.vars().to_vec(),
        polynomial: p.total().to_string(),
        components: p.components().iter().map(ToString::to_string).collect(),
        provenance: p.provenance().map(|form| Provenance {
            basis: form.algebra().labels().to_vec(),
            omega: strings(form.omega()),
            a0: strings(form.a0()),
            kernel: form.kernel().iter().map(|k| strings(k)).collect(),
        }),
    }
}

pub fn describe(p: &NilPolynomial) -> Report {
    let mut r = Report::new();
    r.put("n", p.n());
    r.put("degree", p.degree());
    r.put("polynomial", p.total().to_string());
    for (k, c) in p.components().iter().enumerate() {
        r.put(&format!("p{}", k + 2), c.to_string());
    }
    r.put("nondegenerate", yes_no(p.is_nondegenerate()));
    r
}

pub fn run(args: &NilpolyArgs, source: &crate::args::SourceArgs, output: Option<&Path>) -> Result<Report, CliError> {
    let loaded = load(args.file.as_deref(), source)?;
    let n = Arc::new(loaded.n);
    if !n.is_admissible() {
        return Err(NilpolyError::NotAdmissible(n.annihilator().len()).into());
    }
    let form = make_form(n.clone(), args.e0.as_deref(), args.kernel.as_deref())?;
    let p = build_nilpolynomial(&form).with_provenance(form.clone());
    let mut r = describe(&p);
    r.put("nil_index", n.nil_index());
    let labels = n.labels();
    let named = |v: &[milnor::exactpoly::Rational]| -> String {
        match (0..n.dim()).find(|&i| *v == n.algebra().basis_vector(i)[..]) {
            Some(i) => labels[i].clone(),
            None => format!("{:?}", strings(v)),
        }
    };
    r.put("e0", named(form.a0()));
    r.put(
        "kernel",
        form.kernel().iter().map(|k| named(k)).collect::<Vec<_>>().join("; "),
    );
    if let Some(path) = output {
        write_json(path, &to_file(&p))?;
        r.put("output", path.display().to_string());
    }
    Ok(r)
}
