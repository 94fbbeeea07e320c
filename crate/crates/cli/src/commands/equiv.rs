//! `milnor equiv ...`

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use milnor::equivalence::{
    fingerprint, induced_certificate, monomial_search, separate, verify_certificate, CertificateFile,
    EquivalenceCertificate,
};
use milnor::exactpoly::{format_rational, parse, Polynomial};

use crate::args::SourceArgs;
use crate::input::{load_file, load_nilpoly, parse_bindings, parse_map, split_list, vars_for};
use crate::output::write_json;
use crate::report::{CliError, Report};

fn put_certificate(r: &mut Report, cert: &EquivalenceCertificate) {
    r.put("c", format_rational(&cert.c));
    r.put("C", cert.matrix.to_strings());
}

fn save(r: &mut Report, cert: &EquivalenceCertificate, output: Option<&Path>) -> Result<(), CliError> {
    if let Some(path) = output {
        write_json(path, &cert.to_file())?;
        r.put("output", path.display().to_string());
    }
    Ok(())
}

pub fn verify(p: &str, ptilde: &str, cert: &Path, vars: &[String]) -> Result<Report, CliError> {
    let p = load_nilpoly(p, vars)?;
    let pt = load_nilpoly(ptilde, vars)?;
    let file: CertificateFile = serde_json::from_str(&fs::read_to_string(cert)?)?;
    let cert = file.to_certificate()?;
    let report = verify_certificate(&p, &pt, &cert)?;
    let mut r = Report::new();
    for (l, ok) in &report.per_degree {
        r.put(&format!("degree_{l}"), if *ok { "pass" } else { "fail" });
    }
    r.put("low_degrees", if report.low_degrees { "pass" } else { "fail" });
    r.put("consistent", if report.consistent { "yes" } else { "no" });
    r.verdict("certificate", report.holds);
    Ok(r)
}

pub struct MapArgs<'a> {
    pub source: &'a SourceArgs,
    pub poly_tilde: Option<&'a str>,
    pub bindings_tilde: &'a [String],
    pub basis_tilde: Option<&'a str>,
    pub map: &'a str,
}

pub fn from_map(args: &MapArgs<'_>, output: Option<&Path>) -> Result<Report, CliError> {
    let src = args.source;
    let f_text = src.poly.as_deref().ok_or_else(|| CliError::usage("from-map needs --poly"))?;
    let ft_text = args.poly_tilde.unwrap_or(f_text);
    let bindings = parse_bindings(&src.bindings)?;
    let bindings_tilde = if args.bindings_tilde.is_empty() {
        bindings.clone()
    } else {
        parse_bindings(args.bindings_tilde)?
    };
    let mut all_bound: HashMap<_, _> = bindings.clone();
    all_bound.extend(bindings_tilde.clone());
    let vars = vars_for(&src.vars, &[f_text, ft_text], &all_bound);
    let f = parse(f_text, &vars, &bindings)?;
    let ft = parse(ft_text, &vars, &bindings_tilde)?;
    let psi = parse_map(args.map, &vars)?;
    let monomials = |list: Option<&str>, b: &HashMap<_, _>| -> Result<Option<Vec<Polynomial>>, CliError> {
        list.map(|l| split_list(l).iter().map(|m| Ok(parse(m, &vars, b)?)).collect())
            .transpose()
    };
    let basis = monomials(src.basis.as_deref(), &bindings)?;
    let basis_tilde = monomials(args.basis_tilde.or(src.basis.as_deref()), &bindings_tilde)?;
    let induced = induced_certificate(&psi, &f, &ft, basis.as_deref(), basis_tilde.as_deref())?;
    let mut r = Report::new();
    r.put("f", f.to_string());
    r.put("ftilde", ft.to_string());
    r.put("ratio", format_rational(&induced.ratio));
    r.put("n", induced.p.n());
    put_certificate(&mut r, &induced.certificate);
    let check = verify_certificate(&induced.p, &induced.p_t, &induced.certificate)?;
    r.put("low_degrees", if check.low_degrees { "pass" } else { "fail" });
    r.verdict("certificate", check.holds);
    if check.holds {
        save(&mut r, &induced.certificate, output)?;
    }
    Ok(r)
}

pub fn fingerprints(first: &Path, second: &Path) -> Result<Report, CliError> {
    let a = fingerprint(&load_file(first)?.n)?;
    let b = fingerprint(&load_file(second)?.n)?;
    let mut r = Report::new();
    r.put("first", a.to_string());
    r.put("second", b.to_string());
    r.put("result", separate(&a, &b).to_string());
    Ok(r)
}

pub fn search(
    p: &str,
    ptilde: &str,
    bound: i64,
    weights: Option<&str>,
    vars: &[String],
    output: Option<&Path>,
) -> Result<Report, CliError> {
    let p = load_nilpoly(p, vars)?;
    let pt = load_nilpoly(ptilde, vars)?;
    let patterns = weights
        .map(|w| {
            split_list(w)
                .iter()
                .map(|pat| {
                    pat.split(',')
                        .map(|x| x.trim().parse::<i32>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| CliError::usage(format!("bad weight pattern `{pat}`")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?
        .unwrap_or_default();
    let mut r = Report::new();
    r.put("bound", bound);
    match monomial_search(&p, &pt, bound, &patterns) {
        Some(cert) => {
            put_certificate(&mut r, &cert);
            r.verdict("search", true);
            save(&mut r, &cert, output)?;
        }
        None => {
            r.put("result", "no certificate found");
            r.verdict("search", false);
        }
    }
    Ok(r)
}
