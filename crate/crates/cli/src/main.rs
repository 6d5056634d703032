mod commands;
mod error;
mod oracle;
mod session;

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use error::CliError;
use session::Session;

#[derive(Parser)]
#[command(name = "autoseq", version, about = "Decide and count first-order statements about automatic sequences")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,

    /// Bind a DFAO or representation file for this invocation (NAME=PATH).
    #[arg(long, global = true, value_name = "NAME=PATH")]
    load: Vec<String>,

    /// Allow replacing the built-in sequences T and TT.
    #[arg(long, global = true)]
    force: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Parse a DFAO file and bind it to a sequence name.
    Def { name: String, path: String },
    /// Compile a formula and report its minimal automaton.
    Eval {
        formula: String,
        /// Write the automaton as DOT.
        #[arg(long, value_name = "PATH")]
        save: Option<String>,
    },
    /// Extract the counting representation of a formula.
    Count {
        name: String,
        index: String,
        formula: String,
        /// Store the canonical minimal form instead.
        #[arg(long)]
        minimize: bool,
        /// Write the representation to a file.
        #[arg(long, value_name = "PATH")]
        save: Option<String>,
        /// Check that j extra leading zeros change no value up to 1000.
        #[arg(long, value_name = "J")]
        pad: Option<usize>,
    },
    /// Print values n..=m of a representation.
    Values {
        rep: String,
        from: u64,
        to: u64,
        /// Compare with a brute-force oracle such as R2:A, R3:C+1 or r5.
        #[arg(long, value_name = "SPEC")]
        oracle: Option<String>,
        /// Also evaluate with j extra leading zeros.
        #[arg(long, value_name = "J")]
        pad: Option<usize>,
    },
    /// Decide whether two representations compute the same series.
    Compare { a: String, b: String },
    /// Minimal polynomial of gamma(digit).
    Minpoly {
        rep: String,
        digit: u32,
        /// Canonicalize the representation first.
        #[arg(long)]
        minimize: bool,
    },
    /// Closed form of the values along a digit pattern such as "1 0^(t-1) 1".
    Closedform {
        rep: String,
        pattern: String,
        #[arg(long)]
        minimize: bool,
        /// Print values for t up to this bound.
        #[arg(long, default_value_t = 10)]
        upto: u64,
    },
    /// Ratios (a - b)/root^t along a pattern, with the exact dominant coefficient.
    Dominant {
        a: String,
        b: String,
        pattern: String,
        root: String,
        t_max: u64,
        /// Compare the last ratio with this value (relative tolerance 1e-3).
        #[arg(long, value_name = "P/Q")]
        expect: Option<String>,
    },
    /// List n in [from, to] with f(n) >= f(n+1).
    ScanMonotone { rep: String, from: u64, to: u64 },
    /// Run a scripted pipeline: dombi, chen-wang, theorem5, r5, conjecture8 or all.
    Reproduce { target: String },
    /// Write a compiled formula, or a bound sequence, as DOT.
    ExportDot {
        /// A formula, or a sequence name with --sequence.
        what: String,
        #[arg(long)]
        sequence: bool,
        #[arg(long, value_name = "PATH")]
        output: Option<String>,
    },
}

/// Text for humans, JSON for machines, and whether every check held.
pub struct Outcome {
    pub text: String,
    pub json: serde_json::Value,
    pub ok: bool,
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let mut session = Session::new(cli.force);
    for spec in &cli.load {
        session.load(spec)?;
    }
    commands::dispatch(&mut session, cli.command)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            let body = if json {
                serde_json::to_string_pretty(&out.json).expect("JSON values serialize")
            } else {
                out.text.trim_end().to_string()
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if json {
                let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::json!({ "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
