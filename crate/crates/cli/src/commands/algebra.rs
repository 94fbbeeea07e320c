//! `milnor algebra ...`

use std::path::Path;

use crate::args::SourceArgs;
use crate::input::{load_file, load_source, Loaded};
use crate::output::write_json;
use crate::report::{CliError, Report, EXIT_FAIL};

use super::yes_no;

/// Summary lines shared by every algebra input.
pub fn describe(loaded: &Loaded) -> Report {
    let mut r = Report::new();
    r.put("source", loaded.kind);
    if let Some(v) = &loaded.vars {
        r.put("vars", v.join(","));
    }
    r.put("dim", loaded.algebra.dim());
    r.put("unital", yes_no(loaded.algebra.is_unital()));
    if let Some(q) = &loaded.quotient {
        r.put("localized", yes_no(q.is_localized()));
        if q.is_localized() {
            r.put("global_dim", q.global_dim());
        }
    }
    let n = &loaded.n;
    r.put("dim_n", n.dim());
    r.put("nil_index", n.nil_index());
    r.put("hilbert_chain", n.hilbert_chain());
    r.put("dim_ann", n.annihilator().len());
    match &loaded.weights {
        Some(w) => r.put("weights", w.clone()),
        None => r.put("weights", "none"),
    }
    match &loaded.grading {
        Some(g) => r.put("grading", g.degrees.clone()),
        None => r.put("grading", "none"),
    }
    let admissible = loaded.is_admissible();
    r.put("admissible", yes_no(admissible));
    if !admissible {
        r.code = EXIT_FAIL;
    }
    r
}

fn finish(loaded: Loaded, output: Option<&Path>) -> Result<Report, CliError> {
    let mut r = describe(&loaded);
    if let Some(path) = output {
        write_json(path, &loaded.file)?;
        r.put("output", path.display().to_string());
    }
    Ok(r)
}

pub fn from_source(src: &SourceArgs, output: Option<&Path>) -> Result<Report, CliError> {
    finish(load_source(src)?, output)
}

pub fn from_table(file: &Path, output: Option<&Path>) -> Result<Report, CliError> {
    finish(load_file(file)?, output)
}
