use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use morphic::cli::{run_command, CliError, Command, CommandInput, OutputFormat, RunConfig};

/// Exact analyses of finite rings, trivial extensions and `R ∝ Q/R`.
///
/// Exit codes: 0 success, 1 property or alarm failure, 2 parse or input
/// error, 3 cap exceeded.
#[derive(Debug, Parser)]
#[command(name = "morphic", version)]
struct Args {
    /// analyze | classify | witness | lattice | qtriv | snf | diag | verify
    #[arg(long)]
    command: String,
    /// Ring spec such as `TrivExt(Z(4), Reg(Z(4)))`; for qtriv an element such as `(3, 1/2)`.
    #[arg(long)]
    spec: Option<String>,
    /// Element index or `(r, m)` for witness; proposed partner for qtriv.
    #[arg(long)]
    element: Option<String>,
    /// JSON matrix job for snf and diag.
    #[arg(long)]
    matrix_file: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated `key=value` caps: order, scan, samples, matrix_samples, denominator, degree.
    #[arg(long)]
    caps: Option<String>,
    /// text | json
    #[arg(long, default_value = "json")]
    format: String,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(args: Args) -> Result<i32, CliError> {
    let command: Command = args.command.parse()?;
    let mut config = RunConfig {
        seed: args.seed,
        format: args.format.parse::<OutputFormat>()?,
        ..RunConfig::default()
    };
    if let Some(caps) = &args.caps {
        config.apply_caps(caps)?;
    }
    let matrix = args
        .matrix_file
        .as_ref()
        .map(|p| std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display()))))
        .transpose()?;
    let input = CommandInput {
        spec: args.spec,
        element: args.element,
        matrix,
    };
    let report = run_command(command, &input, &config)?;
    let text = report.render(config.format);
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
