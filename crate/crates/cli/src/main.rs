use clap::Parser;

use casimir_cli::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = execute(&cli) {
        eprintln!("casimir: {e}");
        std::process::exit(e.exit_code());
    }
}
