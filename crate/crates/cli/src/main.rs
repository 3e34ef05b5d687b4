use std::io::Write;
use std::path::PathBuf;
use std::process;

use clap::{Args, Parser, Subcommand};
use hurwitz_pel::{run_corpus, run_family, ExitCode, FamilyOptions};

/// Integral PEL data for families of cyclic covers of the projective line.
#[derive(Parser, Debug)]
#[command(name = "hurwitz-pel", version, args_conflicts_with_subcommands = true, subcommand_negates_reqs = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    family: FamilyArgs,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// Degree m of the cover.
    #[arg(long, required = true)]
    m: Option<u32>,
    /// Inertia residues, comma separated.
    #[arg(long, required = true, value_delimiter = ',', allow_negative_numbers = true)]
    inertia: Vec<i64>,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Bits of precision for decimal renderings.
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(8..=4096))]
    precision: u32,
    /// Allow a Galois twist when comparing alternative degenerations.
    #[arg(long)]
    allow_galois_compare: bool,
    /// Omit the timing field.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify fixture files or directories of fixture files.
    Corpus {
        paths: Vec<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Some(Command::Corpus { paths, json }) => corpus(&paths, json),
        None => family(cli.family),
    };
    process::exit(code.code() as i32);
}

/// A closed pipe is not an error worth reporting.
fn emit(text: String) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn family(args: FamilyArgs) -> ExitCode {
    let Some(m) = args.m else { return ExitCode::Usage };
    let opts = FamilyOptions {
        m,
        inertia: args.inertia,
        precision: args.precision,
        allow_galois_compare: args.allow_galois_compare,
        timing: !args.no_timing,
    };
    match run_family(&opts) {
        Ok(report) => {
            emit(if args.json { report.to_json() + "\n" } else { report.render_text() });
            ExitCode::Success
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(&err)
        }
    }
}

fn corpus(paths: &[PathBuf], json: bool) -> ExitCode {
    match run_corpus(paths) {
        Ok(summary) => {
            emit(if json { summary.to_json() + "\n" } else { summary.render_text() });
            if summary.all_passed() {
                ExitCode::Success
            } else {
                ExitCode::CorpusFailure
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::CorpusUnreadable
        }
    }
}
