//! Run manifests: a serialized record of one invocation that can be replayed.

use std::path::Path;

use clap::Parser;
use serde::{Deserialize, Serialize};

use crate::args::{AlgebraCommand, CheckArgs, Cli, Command, EquivCommand, NilpolyArgs, SourceArgs};
use crate::report::CliError;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inputs {
    pub files: Vec<String>,
    pub polynomials: Vec<String>,
    pub bindings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    /// subcommand path, e.g. `algebra from-poly`
    pub command: String,
    /// arguments after the program name, without `--manifest`
    pub args: Vec<String>,
    pub inputs: Inputs,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<String>,
    pub outputs: Vec<String>,
}

fn path_string(p: &Path) -> String {
    p.to_string_lossy().into_owned()
}

fn add_source(inputs: &mut Inputs, src: &SourceArgs) {
    inputs.polynomials.extend(src.poly.iter().cloned());
    inputs.polynomials.extend(src.gens.iter().cloned());
    inputs.bindings.extend(src.bindings.iter().cloned());
}

/// Removes `--manifest PATH` and `--manifest=PATH` from an argument list.
pub fn strip_manifest_flag(args: &[String]) -> Vec<String> {
    let mut out = Vec::with_capacity(args.len());
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
        } else if a == "--manifest" {
            skip = true;
        } else if !a.starts_with("--manifest=") {
            out.push(a.clone());
        }
    }
    out
}

impl RunManifest {
    pub fn new(cli: &Cli, args: &[String]) -> Self {
        let mut inputs = Inputs::default();
        let mut outputs = Vec::new();
        let mut ordering = None;
        let mut basis = None;
        let mut take_source = |inputs: &mut Inputs, src: &SourceArgs| {
            add_source(inputs, src);
            ordering = src.ordering.clone();
            basis = src.basis.clone();
        };
        let command = match &cli.command {
            Command::Algebra(cmd) => match cmd {
                AlgebraCommand::FromPoly { source, output } => {
                    take_source(&mut inputs, source);
                    outputs.extend(output.as_deref().map(path_string));
                    "algebra from-poly"
                }
                AlgebraCommand::FromIdeal { source, output } => {
                    take_source(&mut inputs, source);
                    outputs.extend(output.as_deref().map(path_string));
                    "algebra from-ideal"
                }
                AlgebraCommand::FromTable { file, output } => {
                    inputs.files.push(path_string(file));
                    outputs.extend(output.as_deref().map(path_string));
                    "algebra from-table"
                }
            },
            Command::Nilpoly(NilpolyArgs { file, source, output, .. }) => {
                inputs.files.extend(file.as_deref().map(path_string));
                take_source(&mut inputs, source);
                outputs.extend(output.as_deref().map(path_string));
                "nilpoly"
            }
            Command::Check(CheckArgs { file, source, .. }) => {
                inputs.files.extend(file.as_deref().map(path_string));
                take_source(&mut inputs, source);
                "check"
            }
            Command::Equiv(cmd) => match cmd {
                EquivCommand::Verify { p, ptilde, cert, .. } => {
                    inputs.polynomials.extend([p.clone(), ptilde.clone()]);
                    inputs.files.push(path_string(cert));
                    "equiv verify"
                }
                EquivCommand::FromMap {
                    source,
                    poly_tilde,
                    bindings_tilde,
                    output,
                    ..
                } => {
                    take_source(&mut inputs, source);
                    inputs.polynomials.extend(poly_tilde.iter().cloned());
                    inputs.bindings.extend(bindings_tilde.iter().cloned());
                    outputs.extend(output.as_deref().map(path_string));
                    "equiv from-map"
                }
                EquivCommand::Fingerprint { first, second } => {
                    inputs.files.extend([path_string(first), path_string(second)]);
                    "equiv fingerprint"
                }
                EquivCommand::Search { p, ptilde, output, .. } => {
                    inputs.polynomials.extend([p.clone(), ptilde.clone()]);
                    outputs.extend(output.as_deref().map(path_string));
                    "equiv search"
                }
            },
            Command::Replay { manifest } => {
                inputs.files.push(path_string(manifest));
                "replay"
            }
        };
        RunManifest {
            command: command.to_string(),
            args: strip_manifest_flag(args),
            inputs,
            ordering,
            basis,
            outputs,
        }
    }

    /// The invocation recorded in the manifest.
    pub fn to_cli(&self) -> Result<Cli, CliError> {
        let argv = std::iter::once("milnor".to_string()).chain(self.args.iter().cloned());
        let cli = Cli::try_parse_from(argv).map_err(|e| CliError::usage(format!("manifest: {e}")))?;
        if matches!(cli.command, Command::Replay { .. }) {
            return Err(CliError::usage("manifest: a replay cannot record another replay"));
        }
        Ok(cli)
    }
}
