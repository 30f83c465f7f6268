use std::process::ExitCode;

use clap::Parser;
use cli::{execute, write_atomic, CacheStatus, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let job = cli.command.job();
    let out = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    for status in &out.cache {
        match status {
            CacheStatus::Disabled => {}
            CacheStatus::Hit(p) => eprintln!("cache hit: {}", p.display()),
            CacheStatus::Miss(p) => eprintln!("cache stored: {}", p.display()),
            CacheStatus::Rebuilt(p, why) => eprintln!("cache rebuilt ({why}): {}", p.display()),
        }
    }
    for f in &out.failures {
        eprintln!("failed: {f}");
    }
    if out.failures.is_empty() || !job.verify_only.on() {
        let text = serde_json::to_string_pretty(&out.json).expect("json") + "\n";
        match &job.out {
            Some(path) => {
                if let Err(e) = write_atomic(path, &text) {
                    eprintln!("error: {e}");
                    return ExitCode::from(3);
                }
            }
            None => print!("{text}"),
        }
    }
    ExitCode::from(out.exit_code() as u8)
}
