mod commands;

use std::process::ExitCode;

use clap::Parser;

use commands::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = std::env::var("ORTHOWEB_WORKERS")
        .ok()
        .and_then(|w| w.parse::<usize>().ok())
    {
        // a second initialization only happens in tests; the first pool wins
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .build_global();
    }
    match commands::run(&cli) {
        Ok(out) => {
            for line in &out.lines {
                println!("{line}");
            }
            if let Some(table) = &out.summary {
                eprint!("{table}");
            }
            if out.pass {
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
