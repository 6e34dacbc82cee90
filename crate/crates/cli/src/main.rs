mod args;
mod cache;
mod commands;
mod input;
mod output;
mod plot;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};

fn run(cli: &Cli) -> fatpoints_core::Result<u8> {
    match &cli.command {
        Command::Alpha(a) => commands::cmd_alpha(a),
        Command::Alphaseq(a) => commands::cmd_alphaseq(a),
        Command::Dim(a) => commands::cmd_dim(a),
        Command::Kernel(a) => commands::cmd_kernel(a),
        Command::Check(a) => commands::cmd_check(a),
        Command::Repro(a) => commands::cmd_repro(a),
        Command::Search(a) => commands::cmd_search(a),
        Command::Plot(a) => commands::cmd_plot(a),
        Command::Generate(a) => commands::cmd_generate(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors are errors (1); 2 is reserved for certification gaps
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(commands::FAILURE),
            };
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::FAILURE)
        }
    }
}
