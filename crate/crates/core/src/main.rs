use clap::Parser;
use steady_euler::lab::cli::{exit_code, run, Cli};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.summary);
            for f in &outcome.failures {
                eprintln!("check failed: {f}");
            }
            std::process::exit(if outcome.failures.is_empty() { 0 } else { 2 });
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}
