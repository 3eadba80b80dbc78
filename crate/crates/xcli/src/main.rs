use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use xcli::config::{Cli, RunConfig, BOUND_ENV};
use xcli::output;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let env_bound = std::env::var(BOUND_ENV).ok();
    let cfg = match RunConfig::resolve(cli.command, cli.opts, env_bound.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("xcli: {e}");
            return ExitCode::from(2);
        }
    };
    let entries = match xcli::run(&cfg) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("xcli: {}: {e}", cfg.command.name());
            return ExitCode::from(2);
        }
    };
    let written = match &cfg.out {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            output::write(&entries, cfg.format, &mut w)?;
            w.flush()
        }),
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            output::write(&entries, cfg.format, &mut w).and_then(|_| w.flush())
        }
    };
    if let Err(e) = written {
        eprintln!("xcli: writing records: {e}");
        return ExitCode::from(2);
    }
    let code = xcli::exit_code(&entries);
    for e in entries.iter().filter(|e| !e.record.passed()) {
        for line in e.record.failures() {
            eprintln!("FAIL {line}");
        }
    }
    ExitCode::from(code as u8)
}
