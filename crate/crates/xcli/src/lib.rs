//! Command-line runner for the crosschar experiments.

pub mod commands;
pub mod config;
pub mod output;
pub mod suite;

use config::{Command, RunConfig};
use output::Entry;

/// Runs `cfg` and returns its records in canonical order.
pub fn run(cfg: &RunConfig) -> crosschar::Result<Vec<Entry>> {
    crosschar::ffield::set_field_bound(cfg.bound);
    if cfg.command == Command::All {
        return Ok(suite::run_all(cfg.seed, cfg.threads));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .expect("thread pool");
    let records = pool.install(|| commands::run_command(cfg))?;
    Ok(records.into_iter().map(Entry::plain).collect())
}

/// 0 when every record passed, 1 otherwise.
pub fn exit_code(entries: &[Entry]) -> i32 {
    if entries.iter().all(|e| e.record.passed()) {
        0
    } else {
        1
    }
}
