mod args;
mod commands;
mod table;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::Cli;
use crate::commands::Failure;

const EXIT_USAGE: i32 = 64;

fn init_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("SYMQUAD_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::input(format!("SYMQUAD_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::input(format!("cannot start {n} threads: {e}")))
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            std::process::exit(match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            });
        }
    };
    let code = init_threads().and_then(|()| commands::run(&cli)).unwrap_or_else(|f| {
        eprintln!("error: {}", f.message);
        f.code
    });
    std::process::exit(code);
}
