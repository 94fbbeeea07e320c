//! Reading polynomials, algebras and nil-polynomials from flags and files.

use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use milnor::algebra::{
    grading_from_weights, milnor_algebra_with, quotient_algebra, tjurina_algebra_with, AlgebraFile, FiniteAlgebra,
    Grading, NilpotentAlgebra, QuotientAlgebra, SourceSpec,
};
use milnor::exactpoly::{find_common_weights, find_weights, parse, parse_rational, Polynomial, Rational, WeightSystem};
use milnor::groebner::MonomialOrdering;
use milnor::linalg::Matrix;
use milnor::nilpoly::{basis_from_monomials, NilPolynomial};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::args::SourceArgs;
use crate::report::CliError;

/// Splits a `;`-separated list, dropping empty items.
pub fn split_list(text: &str) -> Vec<String> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

pub fn parse_bindings(items: &[String]) -> Result<HashMap<String, Rational>, CliError> {
    let mut out = HashMap::new();
    for item in items {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("binding `{item}` is not NAME=VALUE")))?;
        out.insert(name.trim().to_string(), parse_rational(value)?);
    }
    Ok(out)
}

/// Identifiers in `texts` that are not bound, in natural order (`z2` before
/// `z10`).
pub fn infer_vars(texts: &[&str], bound: &HashMap<String, Rational>) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    for text in texts {
        let mut chars = text.char_indices().peekable();
        while let Some((start, c)) = chars.next() {
            if !(c.is_ascii_alphabetic() || c == '_') {
                continue;
            }
            let mut end = start + c.len_utf8();
            while let Some(&(i, d)) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    end = i + d.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            let name = &text[start..end];
            if !bound.contains_key(name) && !names.iter().any(|n| n == name) {
                names.push(name.to_string());
            }
        }
    }
    names.sort_by_key(|n| natural_key(n));
    names
}

fn natural_key(name: &str) -> (String, u64) {
    let split = name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    (name[..split].to_string(), name[split..].parse().unwrap_or(0))
}

pub fn vars_for(explicit: &[String], texts: &[&str], bound: &HashMap<String, Rational>) -> Arc<[String]> {
    if explicit.is_empty() {
        infer_vars(texts, bound).into()
    } else {
        explicit.iter().map(|s| s.trim().to_string()).collect()
    }
}

pub fn parse_ordering(text: Option<&str>, f: Option<&Polynomial>, nvars: usize) -> Result<MonomialOrdering, CliError> {
    match text.map(str::trim) {
        None | Some("default") => Ok(match f {
            Some(f) => MonomialOrdering::default_for(f),
            None => MonomialOrdering::graded_lex(nvars),
        }),
        Some("grlex") => Ok(MonomialOrdering::graded_lex(nvars)),
        Some(other) => {
            let w = other
                .strip_prefix("weighted:")
                .ok_or_else(|| CliError::usage(format!("unknown ordering `{other}`")))?;
            let weights = w
                .split(',')
                .map(|x| x.trim().parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| CliError::usage(format!("bad weights `{w}`")))?;
            MonomialOrdering::weighted(weights).map_err(|e| CliError::usage(e.to_string()))
        }
    }
}

/// An algebra together with everything known about where it came from.
pub struct Loaded {
    /// the algebra as built or read (unital for quotients without a basis)
    pub algebra: FiniteAlgebra,
    pub n: NilpotentAlgebra,
    pub quotient: Option<QuotientAlgebra>,
    pub vars: Option<Arc<[String]>>,
    pub function: Option<Polynomial>,
    pub weights: Option<Vec<u64>>,
    pub grading: Option<Grading>,
    pub file: AlgebraFile,
    pub kind: &'static str,
}

impl Loaded {
    pub fn is_admissible(&self) -> bool {
        self.n.is_admissible()
    }
}

fn grading_for(n: &NilpotentAlgebra, vars: &Arc<[String]>, weights: Option<&Vec<u64>>) -> Option<Grading> {
    let w = WeightSystem::new(weights?.clone(), 0);
    grading_from_weights(n, vars, &w).ok()
}

/// Weights of the defining polynomial when there is one (its partials leave
/// the weight of a variable occurring only linearly undetermined), otherwise
/// common weights of the relations.
fn weights_of(function: Option<&Polynomial>, generators: &[Polynomial]) -> Option<Vec<u64>> {
    match function {
        Some(f) => find_weights(f).map(|w| w.weights),
        None => find_common_weights(generators).map(|(w, _)| w),
    }
}

/// Builds the algebra described by `--poly` or `--gens`.
pub fn load_source(src: &SourceArgs) -> Result<Loaded, CliError> {
    let bindings = parse_bindings(&src.bindings)?;
    let (texts, kind): (Vec<String>, &'static str) = match (&src.poly, &src.gens) {
        (Some(p), None) => (vec![p.clone()], if src.tjurina { "tjurina" } else { "milnor" }),
        (None, Some(g)) => (split_list(g), "ideal"),
        (Some(_), Some(_)) => return Err(CliError::usage("give either --poly or --gens, not both")),
        (None, None) => return Err(CliError::usage("no input: give a file, --poly or --gens")),
    };
    let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
    let vars = vars_for(&src.vars, &refs, &bindings);
    let polys = texts
        .iter()
        .map(|t| parse(t, &vars, &bindings))
        .collect::<Result<Vec<_>, _>>()?;

    let (quotient, function, generators) = if kind == "ideal" {
        let ordering = parse_ordering(src.ordering.as_deref(), None, vars.len())?;
        (quotient_algebra(&polys, &ordering)?, None, polys.clone())
    } else {
        let f = polys[0].clone();
        let ordering = parse_ordering(src.ordering.as_deref(), Some(&f), vars.len())?;
        let q = if src.tjurina {
            tjurina_algebra_with(&f, &ordering)?
        } else {
            milnor_algebra_with(&f, &ordering)?
        };
        let mut gens = f.gradient();
        if src.tjurina {
            gens.insert(0, f.clone());
        }
        (q, Some(f), gens)
    };
    let basis = src
        .basis
        .as_deref()
        .map(|list| split_list(list).iter().map(|m| parse(m, &vars, &bindings)).collect())
        .transpose()?;
    assemble(quotient, vars, &generators, function, basis, kind)
}

fn assemble(
    quotient: QuotientAlgebra,
    vars: Arc<[String]>,
    generators: &[Polynomial],
    function: Option<Polynomial>,
    basis: Option<Vec<Polynomial>>,
    kind: &'static str,
) -> Result<Loaded, CliError> {
    let weights = weights_of(function.as_ref(), generators);
    let (algebra, n) = match &basis {
        Some(monos) => {
            let n = basis_from_monomials(&quotient, monos)?;
            (n.algebra().clone(), n)
        }
        None => (quotient.algebra().clone(), quotient.maximal_ideal()?),
    };
    let grading = grading_for(&n, &vars, weights.as_ref());
    let mut file = AlgebraFile::from_algebra(&algebra);
    if basis.is_some() {
        file.grading = grading.as_ref().map(|g| g.degrees.clone());
    }
    file.source = Some(SourceSpec {
        vars: vars.to_vec(),
        generators: generators.iter().map(ToString::to_string).collect(),
        ordering: quotient.groebner_basis().ordering().clone(),
        function: function.as_ref().map(ToString::to_string),
    });
    Ok(Loaded {
        algebra,
        n,
        quotient: Some(quotient),
        vars: Some(vars),
        function,
        weights,
        grading,
        file,
        kind,
    })
}

/// Recomputes the quotient recorded in an algebra file and re-expresses its
/// maximal ideal on the monomials in `basis`.
fn load_file_rebased(path: &Path, basis: &str) -> Result<Loaded, CliError> {
    let file: AlgebraFile = serde_json::from_str(&read(path)?)?;
    let spec = file
        .source
        .ok_or_else(|| CliError::usage(format!("{} records no source; --basis needs one", path.display())))?;
    let vars: Arc<[String]> = spec.vars.iter().cloned().collect();
    let none = HashMap::new();
    let generators = spec
        .generators
        .iter()
        .map(|g| parse(g, &vars, &none))
        .collect::<Result<Vec<_>, _>>()?;
    let function = spec.function.as_deref().map(|f| parse(f, &vars, &none)).transpose()?;
    let monos = split_list(basis)
        .iter()
        .map(|m| parse(m, &vars, &none))
        .collect::<Result<Vec<_>, _>>()?;
    let quotient = quotient_algebra(&generators, &spec.ordering)?;
    assemble(quotient, vars, &generators, function, Some(monos), "table")
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

pub fn load_file(path: &Path) -> Result<Loaded, CliError> {
    let file: AlgebraFile = serde_json::from_str(&read(path)?)?;
    let algebra = file.to_algebra()?;
    let n = if algebra.is_unital() {
        milnor::algebra::maximal_ideal(&algebra)?
    } else {
        NilpotentAlgebra::new(algebra.clone())?
    };
    let mut vars = None;
    let mut function = None;
    let mut weights = None;
    if let Some(src) = &file.source {
        let v: Arc<[String]> = src.vars.iter().cloned().collect();
        let gens = src
            .generators
            .iter()
            .map(|g| parse(g, &v, &HashMap::new()))
            .collect::<Result<Vec<_>, _>>()?;
        function = src
            .function
            .as_deref()
            .map(|f| parse(f, &v, &HashMap::new()))
            .transpose()?;
        weights = weights_of(function.as_ref(), &gens);
        vars = Some(v);
    }
    let grading = match (&file.grading, &vars) {
        (Some(degrees), _) if !algebra.is_unital() => Some(Grading::new(&n, degrees.clone())?),
        (_, Some(v)) => grading_for(&n, v, weights.as_ref()),
        _ => None,
    };
    Ok(Loaded {
        algebra,
        n,
        quotient: None,
        vars,
        function,
        weights,
        grading,
        file,
        kind: "table",
    })
}

/// A file argument when present, the source flags otherwise.
pub fn load(file: Option<&Path>, src: &SourceArgs) -> Result<Loaded, CliError> {
    match file {
        Some(path) => {
            if src.poly.is_some() || src.gens.is_some() {
                return Err(CliError::usage("give either an algebra file or --poly/--gens"));
            }
            match &src.basis {
                Some(basis) => load_file_rebased(path, basis),
                None => load_file(path),
            }
        }
        None => load_source(src),
    }
}

/// On-disk form of a nil-polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpolyFile {
    pub vars: Vec<String>,
    pub polynomial: String,
    /// homogeneous parts of degree 2, 3, ...
    pub components: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

/// The algebra basis and the form a nil-polynomial was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub basis: Vec<String>,
    pub omega: Vec<String>,
    pub a0: Vec<String>,
    pub kernel: Vec<Vec<String>>,
}

/// A nil-polynomial from a file path or an inline polynomial.
pub fn load_nilpoly(arg: &str, vars: &[String]) -> Result<NilPolynomial, CliError> {
    let path = Path::new(arg);
    let (text, v): (String, Arc<[String]>) = if path.is_file() {
        let file: NilpolyFile = serde_json::from_str(&read(path)?)?;
        (file.polynomial, file.vars.into())
    } else {
        let none = HashMap::new();
        (arg.to_string(), vars_for(vars, &[arg], &none))
    };
    let p = parse(&text, &v, &HashMap::new())?;
    NilPolynomial::from_polynomial(&p).map_err(|e| CliError::usage(format!("`{text}`: {e}")))
}

/// Parses `z1->z1; z2->-z2` into the matrix of a linear map.
pub fn parse_map(text: &str, vars: &Arc<[String]>) -> Result<Matrix, CliError> {
    let m = vars.len();
    let mut rows: Vec<Option<Vec<Rational>>> = vec![None; m];
    for item in split_list(text) {
        let (lhs, rhs) = item
            .split_once("->")
            .ok_or_else(|| CliError::usage(format!("map entry `{item}` is not `var->image`")))?;
        let i = vars
            .iter()
            .position(|v| v == lhs.trim())
            .ok_or_else(|| CliError::usage(format!("unknown variable `{}`", lhs.trim())))?;
        let image = parse(rhs, vars, &HashMap::new())?;
        if image.terms().any(|(mono, _)| mono.degree() != 1) {
            return Err(CliError::usage(format!("image `{}` is not linear", rhs.trim())));
        }
        let row = (0..m)
            .map(|j| {
                let mut e = vec![0u32; m];
                e[j] = 1;
                image.coeff_of(&e)
            })
            .collect();
        rows[i] = Some(row);
    }
    let rows = rows
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.ok_or_else(|| CliError::usage(format!("no image given for `{}`", vars[i]))))
        .collect::<Result<Vec<_>, _>>()?;
    let psi = Matrix::from_rows(rows);
    if psi.determinant().is_zero() {
        return Err(CliError::precondition("the map is not invertible"));
    }
    Ok(psi)
}
