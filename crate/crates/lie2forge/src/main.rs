//! Command-line entry point: parse definition files, dispatch verification
//! suites and constructions, and manage the built-in example corpus.
//!
//! Exit codes: 0 all checks pass, 1 at least one check or construction
//! invariant fails, 2 on parse, schema, usage, or I/O errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lie2forge::defs::{
    corpus_example, default_suite, parse_definition, qp2group, run_suite, to_json, Suite, CORPUS,
};
use lie2forge::Error;

#[derive(Parser)]
#[command(name = "lie2forge", version, about = "Exact verification of weak Lie 2-algebra structures")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite on a definition file.
    Verify {
        file: PathBuf,
        /// Suite to run; defaults to every suite applicable to the input kind.
        #[arg(long)]
        suite: Option<String>,
        /// Recorded degree cap for the report header.
        #[arg(long)]
        max_degree: Option<u32>,
        /// Recorded sampling seed for the report header.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build derived structures from a definition file.
    Construct {
        #[command(subcommand)]
        what: ConstructCmd,
    },
    /// List or emit the built-in example corpus.
    Examples {
        #[command(subcommand)]
        what: ExamplesCmd,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Build the quasi-Poisson groupoid model of a Lie 2-algebra and write
    /// it as a tensor definition file; the model axioms are verified before
    /// anything is written.
    Qp2group {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum ExamplesCmd {
    /// Print the sorted example names.
    List,
    /// Write the named example as a JSON definition file.
    Emit {
        name: String,
        /// Output directory (defaults to the current directory).
        #[arg(short, long, default_value = ".")]
        out_dir: PathBuf,
    },
}

/// Schema-shaped failures are usage errors (2); failed mathematical
/// invariants are verification failures (1).
fn error_exit(e: &Error) -> u8 {
    match e {
        Error::InvariantFailure { .. } | Error::NotMultiplicative(_) | Error::NotDescendable(_) => {
            1
        }
        _ => 2,
    }
}

fn read_definition(path: &Path) -> Result<lie2forge::defs::DefinitionFile, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_definition(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_verify(
    file: &Path,
    suite: Option<&str>,
    seed: u64,
    max_degree: Option<u32>,
    format: Format,
) -> ExitCode {
    let def = match read_definition(file) {
        Ok(d) => d,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let suite = match suite.map(Suite::parse).transpose() {
        Ok(s) => s.unwrap_or_else(|| default_suite(&def)),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run_suite(&def, suite) {
        Ok(mut rep) => {
            rep.seed = Some(seed);
            rep.max_degree = max_degree;
            match format {
                Format::Text => print!("{}", rep.render_text()),
                Format::Json => println!("{}", rep.to_json()),
            }
            ExitCode::from(if rep.passed() { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_exit(&e))
        }
    }
}

fn cmd_construct(what: &ConstructCmd) -> ExitCode {
    match what {
        ConstructCmd::Qp2group { input, output } => {
            let def = match read_definition(input) {
                Ok(d) => d,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    return ExitCode::from(2);
                }
            };
            match qp2group(&def) {
                Ok(model) => {
                    if let Err(e) = std::fs::write(output, to_json(&model)) {
                        eprintln!("error: cannot write {}: {e}", output.display());
                        return ExitCode::from(2);
                    }
                    println!("{}", output.display());
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(error_exit(&e))
                }
            }
        }
    }
}

fn cmd_examples(what: &ExamplesCmd) -> ExitCode {
    match what {
        ExamplesCmd::List => {
            for name in CORPUS {
                println!("{name}");
            }
            ExitCode::SUCCESS
        }
        ExamplesCmd::Emit { name, out_dir } => match corpus_example(name) {
            Some(def) => {
                let path = out_dir.join(format!("{name}.json"));
                if let Err(e) = std::fs::write(&path, to_json(&def)) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
                println!("{}", path.display());
                ExitCode::SUCCESS
            }
            None => {
                eprintln!("error: unknown example `{name}` (run `lie2forge examples list`)");
                ExitCode::from(2)
            }
        },
    }
}

fn main() -> ExitCode {
    if let Ok(n) = std::env::var("LIE2FORGE_THREADS") {
        if let Ok(n) = n.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        }
    }
    let cli = Cli::parse();
    match &cli.cmd {
        Cmd::Verify { file, suite, max_degree, seed, format } => {
            cmd_verify(file, suite.as_deref(), *seed, *max_degree, *format)
        }
        Cmd::Construct { what } => cmd_construct(what),
        Cmd::Examples { what } => cmd_examples(what),
    }
}
