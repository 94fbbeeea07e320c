//! Subcommand implementations. Each returns a report or an error carrying
//! its exit code.

pub mod algebra;
pub mod check;
pub mod equiv;
pub mod nilpoly;

use std::path::Path;

use crate::args::SourceArgs;
use crate::grid::{parse_grid, point_path, run_grid};
use crate::report::{CliError, Report};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Runs `run` once, or once per grid point with the grid binding added and
/// `{NAME}` substituted in the output path.
pub fn with_grid<F>(src: &SourceArgs, output: Option<&Path>, run: F) -> Result<Report, CliError>
where
    F: Fn(&SourceArgs, Option<&Path>) -> Result<Report, CliError> + Sync,
{
    let Some(text) = &src.grid else {
        return run(src, output);
    };
    let grid = parse_grid(text)?;
    if let Some(out) = output {
        point_path(out, &grid.name, &grid.values[0])?;
    }
    let prefix = format!("{}=", grid.name);
    Ok(run_grid(&grid, |v, binding| {
        let mut point = src.clone();
        point.grid = None;
        point.bindings.retain(|b| !b.trim_start().starts_with(&prefix));
        point.bindings.push(binding);
        let out = output.map(|o| point_path(o, &grid.name, v)).transpose()?;
        run(&point, out.as_deref())
    }))
}
