use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mixmaster::report::{
    self, Command, Format, RunConfig, Section, SweepBounds, DEFAULT_ORACLE_ORDER,
};

#[derive(Parser)]
#[command(
    name = "mixmaster",
    version,
    about = "Resonance and linearization analysis of periodic Kasner chains"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Common {
    /// Smoothness of the linearizing coordinate change
    #[arg(long, default_value_t = 1)]
    smoothness: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verdict for every base point along the orbit of a word such as "2,3" or "5;2,3"
    Analyze {
        #[arg(long)]
        cf: String,
        #[command(flatten)]
        common: Common,
    },
    /// Regenerate the reference tables
    Appendix {
        #[arg(long, value_enum, default_value_t = Section::All)]
        section: Section,
        #[command(flatten)]
        common: Common,
    },
    /// One row per periodic chain within the bounds
    Sweep {
        /// Longest period length
        #[arg(long)]
        max_period: usize,
        #[arg(long)]
        max_entry: u64,
        #[arg(long, default_value_t = 1)]
        min_entry: u64,
        #[arg(long)]
        admissible_only: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Exact identity, brute-force oracle and closed-form checks
    Verify {
        #[arg(long, default_value_t = DEFAULT_ORACLE_ORDER)]
        oracle_order: u32,
        /// Check the orbit of this word instead of the reference tables
        #[arg(long)]
        cf: Option<String>,
        #[arg(long, default_value_t = 1)]
        smoothness: u32,
    },
}

fn config(cli: Cli) -> RunConfig {
    let with = |command, c: Common| RunConfig {
        smoothness: c.smoothness,
        format: c.format,
        ..RunConfig::new(command)
    };
    match cli.command {
        Cmd::Analyze { cf, common } => with(Command::Analyze { cf }, common),
        Cmd::Appendix { section, common } => with(Command::Appendix { section }, common),
        Cmd::Sweep {
            max_period,
            max_entry,
            min_entry,
            admissible_only,
            common,
        } => with(
            Command::Sweep(SweepBounds {
                max_period,
                min_entry,
                max_entry,
                admissible_only,
            }),
            common,
        ),
        Cmd::Verify {
            oracle_order,
            cf,
            smoothness,
        } => RunConfig {
            smoothness,
            oracle_order,
            ..RunConfig::new(Command::Verify { cf })
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                report::EXIT_ERROR as u8
            } else {
                0
            });
        }
    };
    match report::run(&config(cli)) {
        Ok(out) => {
            print!("{}", out.output);
            ExitCode::from(out.status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(report::EXIT_ERROR as u8)
        }
    }
}
