use std::io::Write;
use std::process::ExitCode;

use segalbar::cli::{run, SIZE_ENV};

fn main() -> ExitCode {
    let cap = std::env::var(SIZE_ENV).ok();
    let outcome = run(std::env::args_os(), cap.as_deref());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
