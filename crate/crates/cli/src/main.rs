use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tps_cli::{codec, run, CliError, Command, JobSpec};

/// Tailored tensor product structures from JSON requests.
#[derive(Parser, Debug)]
#[command(name = "tps", version)]
struct Args {
    /// Request document (default: stdin)
    #[arg(long = "in", global = true, value_name = "PATH")]
    input: Option<String>,
    /// Result document (default: stdout)
    #[arg(long = "out", global = true, value_name = "PATH")]
    output: Option<String>,
    /// Numerical tolerance
    #[arg(long, global = true, default_value_t = tps_core::DEFAULT_TOL)]
    tol: f64,
    /// Indent the output
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Spin-(d-1)/2 matrices
    Spin,
    /// Algebra generated by a set of operators
    Closure,
    /// Commutant of a generated algebra
    Commutant,
    /// Schmidt decomposition of a bipartite state
    Schmidt,
    /// Bipartite structure tailored to a state
    Tailor,
    /// Multipartite structure tailored to a state
    TailorMulti,
    /// Independence and completeness of a family of algebras
    Verify,
    /// Pauli decompositions of the two-qubit worked example
    ExampleD4 {
        #[arg(allow_negative_numbers = true)]
        lambda1: f64,
    },
    /// Pauli-string expansion of an operator
    Pauli,
}

fn command(cmd: &Cmd) -> Command {
    match *cmd {
        Cmd::Spin => Command::Spin,
        Cmd::Closure => Command::Closure,
        Cmd::Commutant => Command::Commutant,
        Cmd::Schmidt => Command::Schmidt,
        Cmd::Tailor => Command::Tailor,
        Cmd::TailorMulti => Command::TailorMulti,
        Cmd::Verify => Command::Verify,
        Cmd::ExampleD4 { lambda1 } => Command::ExampleD4 { lambda1 },
        Cmd::Pauli => Command::Pauli,
    }
}

fn execute(spec: &JobSpec) -> Result<String, CliError> {
    spec.validate()?;
    let input = match (spec.command.request_kind(), &spec.input_path) {
        (None, _) => None,
        (Some(_), Some(path)) => {
            Some(std::fs::read_to_string(path).map_err(|e| CliError::io(path, e.to_string()))?)
        }
        (Some(_), None) => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::io("<stdin>", e.to_string()))?;
            Some(text)
        }
    };
    let doc = run(spec, input.as_deref())?;
    Ok(codec::to_text(&doc, spec.pretty))
}

fn fail(err: &CliError) -> ExitCode {
    eprintln!("{}", err.to_json());
    ExitCode::from(err.exit_status)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let msg = e.render().to_string();
            return fail(&CliError::usage(msg.trim_end()));
        }
    };
    let spec = JobSpec {
        command: command(&args.command),
        input_path: args.input,
        output_path: args.output,
        tol: args.tol,
        pretty: args.pretty,
    };
    let text = match execute(&spec) {
        Ok(t) => t,
        Err(e) => return fail(&e),
    };
    let written = match &spec.output_path {
        Some(path) => std::fs::write(path, &text).map_err(|e| CliError::io(path, e.to_string())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io("<stdout>", e.to_string())),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}
