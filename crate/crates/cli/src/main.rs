use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ringcodes::Budget;
use ringcodes_cli::{run, CliError, Command, Options};

/// Parity check systems for codes over Z_{t1} x ... x Z_{tk}.
#[derive(Debug, Parser)]
#[command(name = "ringcodes", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Answer by brute force instead of through the parity check system.
    #[arg(long, global = true)]
    oracle: bool,

    /// Largest number of items any exhaustive enumeration may visit.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT.0)]
    budget: u128,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Check conditions (i), (ii), (iii) of a pcs file, or coset disjointness of a code file.
    Validate { file: PathBuf },
    /// Convert a pcs file into a code file.
    ToCode { file: PathBuf },
    /// Convert a code file into a pcs file.
    ToPcs {
        file: PathBuf,
        /// Rows of H to use, separated by ';'. They must generate the dual of the partial kernel.
        #[arg(long)]
        rows: Option<String>,
    },
    /// Minimum Hamming distance with a witness.
    Mindist { file: PathBuf },
    /// Decode a received word within half the minimum distance.
    Decode {
        file: PathBuf,
        /// The received word, e.g. "5,2,0,1" or "(1,0) (0,2)".
        word: String,
    },
    /// The kernel of the code.
    Kernel { file: PathBuf },
    /// Whether the code is a submodule.
    Islinear { file: PathBuf },
    /// Fourier coefficients of the code indicator.
    Fourier {
        file: PathBuf,
        /// The point x.
        vector: Option<String>,
        /// Every x in the dual of the partial kernel.
        #[arg(long, conflicts_with = "vector")]
        all: bool,
    },
    /// Distance distribution and, for linear codes, the weight enumerator.
    Enumerator { file: PathBuf },
}

fn report_error(err: &CliError, json: bool) -> ExitCode {
    if json {
        let mut value = serde_json::json!({"error": {"kind": err.kind(), "message": err.to_string()}});
        if let CliError::Parse { line, column, .. } = err {
            value["error"]["line"] = (*line).into();
            value["error"]["column"] = (*column).into();
        }
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    }
    eprintln!("error: {err}");
    ExitCode::from(err.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let opts = Options {
        json: cli.json,
        oracle: cli.oracle,
        budget: Budget(cli.budget),
    };
    let (file, command) = match cli.command {
        Cmd::Validate { file } => (file, Command::Validate),
        Cmd::ToCode { file } => (file, Command::ToCode),
        Cmd::ToPcs { file, rows } => (file, Command::ToPcs { rows }),
        Cmd::Mindist { file } => (file, Command::Mindist),
        Cmd::Decode { file, word } => (file, Command::Decode { word }),
        Cmd::Kernel { file } => (file, Command::Kernel),
        Cmd::Islinear { file } => (file, Command::IsLinear),
        Cmd::Fourier { file, vector, all } => (file, Command::Fourier { vector, all }),
        Cmd::Enumerator { file } => (file, Command::Enumerator),
    };
    let text = match std::fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => {
            return report_error(
                &CliError::Io {
                    path: file.display().to_string(),
                    message: e.to_string(),
                },
                opts.json,
            )
        }
    };
    match run(&command, &text, &opts) {
        Ok(report) => {
            print!("{}", report.output);
            ExitCode::from(report.exit_code as u8)
        }
        Err(e) => report_error(&e, opts.json),
    }
}
