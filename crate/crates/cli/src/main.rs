use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use stringy_cli::{run, Cli, BRUTEFORCE_PRIME_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let env_prime = std::env::var(BRUTEFORCE_PRIME_ENV).ok();
    match run(&cli, env_prime.as_deref()) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
