mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::Failure;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let rendered = match commands::run(&cli.command, cli.approx) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let Some(text) = rendered.text(cli.format) else {
        eprintln!("error: this command has no {:?} output", cli.format);
        return ExitCode::from(2);
    };
    if let Err(e) = output::emit(&text, cli.out.as_deref()) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if rendered.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
