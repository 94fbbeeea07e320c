//! Parameter grids: `t=a..b step s`, evaluated point by point in parallel.

use std::path::{Path, PathBuf};

use milnor::exactpoly::{format_rational, parse_rational, Rational};
use num_traits::Signed;
use rayon::prelude::*;

use crate::report::{CliError, Report};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub name: String,
    pub values: Vec<Rational>,
    pub text: String,
}

const MAX_POINTS: usize = 10_000;

pub fn parse_grid(text: &str) -> Result<Grid, CliError> {
    let bad = || CliError::usage(format!("grid `{text}` is not `NAME=A..B step S`"));
    let (name, range) = text.split_once('=').ok_or_else(bad)?;
    let (range, step) = match range.split_once("step") {
        Some((r, s)) => (r, parse_rational(s)?),
        None => (range, Rational::from_integer(1.into())),
    };
    let (a, b) = range.split_once("..").ok_or_else(bad)?;
    let (a, b) = (parse_rational(a)?, parse_rational(b)?);
    let name = name.trim();
    if name.is_empty() || !step.is_positive() || b < a {
        return Err(bad());
    }
    let mut values = Vec::new();
    let mut v = a;
    while v <= b {
        if values.len() == MAX_POINTS {
            return Err(CliError::usage(format!("grid `{text}` has more than {MAX_POINTS} points")));
        }
        values.push(v.clone());
        v += &step;
    }
    Ok(Grid {
        name: name.to_string(),
        values,
        text: text.trim().to_string(),
    })
}

/// File-name-safe form of a value: `-1/2` becomes `-1_2`.
pub fn value_tag(v: &Rational) -> String {
    format_rational(v).replace('/', "_")
}

/// Substitutes `{NAME}` in an output path; grid runs must write distinct files.
pub fn point_path(path: &Path, name: &str, v: &Rational) -> Result<PathBuf, CliError> {
    let text = path.to_string_lossy();
    let placeholder = format!("{{{name}}}");
    if !text.contains(&placeholder) {
        return Err(CliError::usage(format!(
            "grid output path must contain `{placeholder}`, got {}",
            path.display()
        )));
    }
    Ok(PathBuf::from(text.replace(&placeholder, &value_tag(v))))
}

/// Runs `run(binding)` for each grid value and collates the reports in grid
/// order; a failing point records its error and exit code.
pub fn run_grid<F>(grid: &Grid, run: F) -> Report
where
    F: Fn(&Rational, String) -> Result<Report, CliError> + Sync,
{
    let points: Vec<(String, Report)> = grid
        .values
        .par_iter()
        .map(|v| {
            let label = format!("{}={}", grid.name, format_rational(v));
            let binding = label.clone();
            let report = run(v, binding).unwrap_or_else(|e| {
                let mut r = Report::new();
                r.put("error", e.message);
                r.code = e.code;
                r
            });
            (label, report)
        })
        .collect();
    let mut out = Report::new();
    out.put("grid", grid.text.clone());
    out.put("points", points.len());
    for (label, r) in points {
        out.section(label, r);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use milnor::exactpoly::{int, rat};

    #[test]
    fn parses_grids() {
        let g = parse_grid("t=-1..1 step 1/2").unwrap();
        assert_eq!(g.name, "t");
        assert_eq!(g.values, vec![int(-1), rat(-1, 2), int(0), rat(1, 2), int(1)]);
        assert_eq!(parse_grid("t=1..2").unwrap().values, vec![int(1), int(2)]);
        assert!(parse_grid("t=2..1").is_err());
        assert!(parse_grid("t=0..1 step 0").is_err());
        assert!(parse_grid("0..1").is_err());
    }

    #[test]
    fn point_paths() {
        let p = point_path(Path::new("out/e8_{t}.json"), "t", &rat(-1, 2)).unwrap();
        assert_eq!(p, PathBuf::from("out/e8_-1_2.json"));
        assert!(point_path(Path::new("out.json"), "t", &int(1)).is_err());
    }

    #[test]
    fn collates_in_order() {
        let g = parse_grid("t=0..3").unwrap();
        let r = run_grid(&g, |v, _| {
            if *v == int(2) {
                return Err(CliError::precondition("bad point"));
            }
            let mut r = Report::new();
            r.put("value", format_rational(v));
            Ok(r)
        });
        assert_eq!(r.code, 3);
        let text = r.to_string();
        assert!(text.starts_with("grid: t=0..3\npoints: 4\n[t=0]\nvalue: 0\n[t=1]\nvalue: 1\n[t=2]\nerror: bad point\n"));
    }
}
