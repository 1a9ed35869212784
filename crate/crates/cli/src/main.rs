use std::io::Write;

use clap::Parser;
use slicesyl_cli::args::Cli;
use slicesyl_cli::run;

fn main() {
    let (cmd, json) = Cli::parse().into_command();
    let out = run(&cmd);
    let text = if json {
        serde_json::to_string_pretty(&out.json).expect("serializable") + "\n"
    } else {
        out.text
    };
    // A closed pipe is not an error worth reporting.
    let _ = if !json && out.code >= run::EXIT_BAD_INPUT {
        std::io::stderr().write_all(text.as_bytes())
    } else {
        std::io::stdout().write_all(text.as_bytes())
    };
    std::process::exit(out.code);
}
