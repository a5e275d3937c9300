use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use statecheck::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.command.common().json;
    let outcome = run(&cli);
    let text = outcome.render(json);
    if outcome.report["status"] == "error" && !json {
        eprintln!("error: {}", outcome.report["error"].as_str().unwrap_or_default());
    } else {
        let _ = std::io::stdout().write_all(text.as_bytes());
    }
    ExitCode::from(outcome.code)
}
