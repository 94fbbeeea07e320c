//! `milnor`: moduli algebras, nil-polynomials and equivalence certificates
//! from the command line.

mod args;
mod commands;
mod grid;
mod input;
mod manifest;
mod output;
mod report;

use std::fs;
use std::process::ExitCode;

use clap::Parser;

use args::{AlgebraCommand, Cli, Command, EquivCommand};
use commands::{algebra, check, equiv, nilpoly, with_grid};
use manifest::RunManifest;
use report::{CliError, Report};

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Algebra(AlgebraCommand::FromPoly { source, output }) => {
            if source.poly.is_none() || source.gens.is_some() {
                return Err(CliError::usage("from-poly needs --poly (and no --gens)"));
            }
            with_grid(source, output.as_deref(), algebra::from_source)
        }
        Command::Algebra(AlgebraCommand::FromIdeal { source, output }) => {
            if source.gens.is_none() || source.poly.is_some() {
                return Err(CliError::usage("from-ideal needs --gens (and no --poly)"));
            }
            with_grid(source, output.as_deref(), algebra::from_source)
        }
        Command::Algebra(AlgebraCommand::FromTable { file, output }) => algebra::from_table(file, output.as_deref()),
        Command::Nilpoly(args) => with_grid(&args.source, args.output.as_deref(), |src, out| {
            nilpoly::run(args, src, out)
        }),
        Command::Check(args) => with_grid(&args.source, None, |src, _| check::run(args, src)),
        Command::Equiv(EquivCommand::Verify { p, ptilde, cert, vars }) => equiv::verify(p, ptilde, cert, vars),
        Command::Equiv(EquivCommand::FromMap {
            source,
            poly_tilde,
            bindings_tilde,
            basis_tilde,
            map,
            output,
        }) => equiv::from_map(
            &equiv::MapArgs {
                source,
                poly_tilde: poly_tilde.as_deref(),
                bindings_tilde,
                basis_tilde: basis_tilde.as_deref(),
                map,
            },
            output.as_deref(),
        ),
        Command::Equiv(EquivCommand::Fingerprint { first, second }) => equiv::fingerprints(first, second),
        Command::Equiv(EquivCommand::Search {
            p,
            ptilde,
            bound,
            weights,
            vars,
            output,
        }) => equiv::search(p, ptilde, *bound, weights.as_deref(), vars, output.as_deref()),
        Command::Replay { manifest } => {
            let text = fs::read_to_string(manifest)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", manifest.display())))?;
            let recorded: RunManifest = serde_json::from_str(&text)?;
            dispatch(&recorded.to_cli()?)
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { report::EXIT_USAGE as u8 } else { 0 });
        }
    };
    let result = dispatch(&cli).and_then(|r| {
        if let Some(path) = &cli.manifest {
            output::write_json(path, &RunManifest::new(&cli, &argv[1..]))?;
        }
        Ok(r)
    });
    match result {
        Ok(r) => {
            print!("{}", r.render(cli.json));
            ExitCode::from(r.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
