use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use delag::fallback::{FallbackConfig, Quoting};
use delag::oracle::equiv_on_lassos;
use delag::patterns::{phi_h, phi_r, phi_s};
use delag::{
    parse, parse_hoa, serialize_hoa, translate, Construction, Error, Formula, Tela,
    TranslateOptions,
};

#[derive(Parser)]
#[command(
    name = "delag",
    version,
    about = "LTL to deterministic Emerson-Lei automata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Translate a formula and print the automaton in HOA format.
    Translate {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        opts: Translation,
        /// Print "states=N acc_sets=K acc_size=L" on stderr.
        #[arg(long)]
        stats: bool,
        /// Dualize the acceptance condition before printing.
        #[arg(long)]
        complement: bool,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Print a benchmark formula.
    Pattern { kind: PatternKind, n: usize },
    /// Compare a formula with an automaton on all short lassos.
    Check {
        #[arg(long)]
        formula: String,
        /// Automaton to check; defaults to the translation of the formula.
        #[arg(long, value_name = "PATH")]
        hoa: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        stem_max: usize,
        #[arg(long, default_value_t = 3)]
        loop_max: usize,
        #[command(flatten)]
        opts: Translation,
    },
    /// Tabulate automaton sizes for a pattern family, n = 0..7.
    Bench { table: Table },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    #[arg(short, long)]
    formula: Option<String>,
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct Translation {
    #[arg(long, conflicts_with = "enhanced")]
    standard: bool,
    /// The default.
    #[arg(long)]
    enhanced: bool,
    #[arg(long)]
    no_global_history: bool,
    #[arg(long)]
    piggyback: bool,
    /// External translator; `%f` is replaced by the quoted formula.
    #[arg(long, env = "DELAG_FALLBACK_CMD", value_name = "TEMPLATE")]
    fallback_cmd: Option<String>,
    #[arg(long, value_enum, default_value_t = QuoteStyle::Single)]
    fallback_quoting: QuoteStyle,
    /// Seconds before the external translator is killed.
    #[arg(long, default_value_t = 60)]
    fallback_timeout: u64,
    #[arg(long, default_value_t = delag::derivative::DEFAULT_STATE_BOUND)]
    state_bound: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuoteStyle {
    Single,
    Double,
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum PatternKind {
    Rabin,
    Streett,
    History,
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    RabinAcc,
    History,
}

impl Translation {
    fn options(&self) -> TranslateOptions {
        let fallback = self.fallback_cmd.as_ref().map(|t| FallbackConfig {
            template: t.clone(),
            quoting: match self.fallback_quoting {
                QuoteStyle::Single => Quoting::Single,
                QuoteStyle::Double => Quoting::Double,
                QuoteStyle::None => Quoting::None,
            },
            timeout: Duration::from_secs(self.fallback_timeout),
        });
        TranslateOptions {
            construction: if self.standard {
                Construction::Standard
            } else {
                Construction::Enhanced
            },
            global_history: !self.no_global_history,
            piggyback: self.piggyback,
            fallback,
            state_bound: self.state_bound,
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            Error::Parse(_) => 2,
            Error::FallbackRequired { .. } => 3,
            Error::StateBound { .. } => 4,
            _ => 1,
        };
        let message = match &e {
            Error::FallbackRequired { formula } => {
                format!("`{formula}` needs an external translator (use --fallback-cmd)")
            }
            _ => e.to_string(),
        };
        Failure { code, message }
    }
}

fn io_failure(path: &std::path::Path, e: std::io::Error) -> Failure {
    Failure {
        code: 1,
        message: format!("{}: {e}", path.display()),
    }
}

fn parse_formula(text: &str) -> Result<Formula, Failure> {
    parse(text.trim()).map_err(|e| Failure {
        code: 2,
        message: e.to_string(),
    })
}

fn pattern(kind: PatternKind, n: usize) -> Formula {
    match kind {
        PatternKind::Rabin => phi_r(n),
        PatternKind::Streett => phi_s(n),
        PatternKind::History => phi_h(n),
    }
}

fn stats(aut: &Tela) -> String {
    format!(
        "states={} acc_sets={} acc_size={}",
        aut.state_count(),
        aut.mark_count(),
        aut.acceptance_size()
    )
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Translate {
            input,
            opts,
            stats: show_stats,
            complement,
            output,
        } => {
            let text = match (input.formula, input.file) {
                (Some(t), _) => t,
                (None, Some(path)) => {
                    fs::read_to_string(&path).map_err(|e| io_failure(&path, e))?
                }
                (None, None) => unreachable!("clap requires an input"),
            };
            let phi = parse_formula(&text)?;
            let mut aut = translate(&phi, &opts.options())?;
            if complement {
                aut = aut.complement();
            }
            let hoa = serialize_hoa(&aut);
            match output {
                Some(path) => fs::write(&path, hoa).map_err(|e| io_failure(&path, e))?,
                None => print!("{hoa}"),
            }
            if show_stats {
                eprintln!("{}", stats(&aut));
            }
        }
        Command::Pattern { kind, n } => println!("{}", pattern(kind, n)),
        Command::Check {
            formula,
            hoa,
            stem_max,
            loop_max,
            opts,
        } => {
            let phi = parse_formula(&formula)?;
            let aut = match hoa {
                Some(path) => {
                    parse_hoa(&fs::read_to_string(&path).map_err(|e| io_failure(&path, e))?)?
                }
                None => translate(&phi, &opts.options())?,
            };
            match equiv_on_lassos(&phi, &aut, stem_max, loop_max.max(1)) {
                None => println!("equivalent within bounds"),
                Some(cex) => {
                    println!("counterexample: {cex}");
                    return Err(Failure {
                        code: 1,
                        message: String::new(),
                    });
                }
            }
        }
        Command::Bench { table } => {
            let kind = match table {
                Table::RabinAcc => PatternKind::Rabin,
                Table::History => PatternKind::History,
            };
            let rows = (0..8)
                .map(|n| translate(&pattern(kind, n), &TranslateOptions::default()))
                .collect::<Result<Vec<_>, _>>()?;
            let line = |label: &str, cells: Vec<usize>| {
                let cells: String = cells.iter().map(|c| format!("{c:>5}")).collect();
                println!("{label:<10}{cells}");
            };
            line("n", (0..8).collect());
            line("states", rows.iter().map(Tela::state_count).collect());
            line("acc_size", rows.iter().map(Tela::acceptance_size).collect());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("delag: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
