//! `htnn` — synthetic recovery grids, image completion, evaluation and
//! TSVD dumps from the command line.
//!
//! Exit status: 0 on success, 2 for invalid input or configuration, 3 for a
//! numerical failure (or non-convergence under `--strict`).

mod cli;
mod commands;
mod config;
mod error;

use clap::Parser;

use cli::{Cli, Command};
use config::FileConfig;

fn main() {
    let cli = Cli::parse();
    let result = FileConfig::load(cli.config.as_deref()).and_then(|file| match cli.command {
        Command::Synth(args) => commands::synth(args, file),
        Command::Complete(args) => commands::complete(args, file),
        Command::Eval(args) => commands::eval(args),
        Command::TsvdDump(args) => commands::tsvd_dump(args, file),
    });
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
