mod compat;
mod embed;
mod env;
mod lattice;
mod schedule;

use std::path::Path;

use clairvoyant::{McPlan, RngSpec, Word};

use crate::args::{Command, Global};
use crate::error::{usage, CliError, CliResult};
use crate::table::Table;

/// A command's data plus any property it found broken.
#[derive(Debug, Clone)]
pub struct Report {
    pub table: Table,
    pub violations: Vec<String>,
}

impl Report {
    pub fn ok(table: Table) -> Self {
        Self {
            table,
            violations: Vec::new(),
        }
    }
}

pub(crate) struct Ctx<'a> {
    global: &'a Global,
}

impl Ctx<'_> {
    fn plan(&self, default_replicas: u64) -> McPlan {
        McPlan::new(self.global.replicas.unwrap_or(default_replicas), self.rng()).with_workers(self.global.workers)
    }

    fn rng(&self) -> RngSpec {
        RngSpec::new(self.global.seed, 0)
    }
}

pub fn execute(global: &Global, command: &Command) -> CliResult<Report> {
    let ctx = Ctx { global };
    if global.replicas == Some(0) {
        return Err(usage("--replicas must be positive"));
    }
    match command {
        Command::Embed { cmd } => embed::run(&ctx, cmd),
        Command::Schedule { cmd } => schedule::run(&ctx, cmd),
        Command::Compat { cmd } => compat::run(&ctx, cmd),
        Command::Lattice { cmd } => lattice::run(&ctx, cmd),
        Command::Env { cmd } => env::run(&ctx, cmd),
        Command::Replay { .. } => Err(usage("replay cannot be nested")),
    }
}

fn word(s: &str) -> CliResult<Word> {
    Ok(s.parse::<Word>()?)
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// `[[a,b],...]`
fn pairs_json(cells: &[(usize, usize)]) -> String {
    let items: Vec<String> = cells.iter().map(|(a, b)| format!("[{a},{b}]")).collect();
    format!("[{}]", items.join(","))
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}
