use std::process::ExitCode;

use clap::Parser;

use cva_lab::codec::to_canonical_string;
use cva_lab::report::render_text;
use cva_lab::{dispatch, Cli, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(outcome) => {
            match cli.opts.format {
                Format::Json => print!("{}", to_canonical_string(&outcome.output)),
                Format::Text => print!("{}", render_text(&outcome.output)),
            }
            if outcome.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
