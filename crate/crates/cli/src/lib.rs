//! Command-line front end: argument parsing, dispatch, CSV/JSON output and
//! run manifests.

pub mod args;
pub mod commands;
pub mod error;
pub mod manifest;
pub mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command};
use commands::execute;
use error::{CliError, CliResult};
use manifest::{OutputDigest, RunManifest};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Parses `argv`, runs, writes data and manifest, and returns the exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli) -> CliResult<i32> {
    if let Command::Replay { manifest } = &cli.command {
        return replay(manifest);
    }
    let start = Instant::now();
    let (data, violations) = render(cli)?;
    let code = if violations.is_empty() { EXIT_OK } else { EXIT_VIOLATION };
    for v in &violations {
        eprintln!("violation: {v}");
    }
    let digest = match &cli.global.out {
        Some(path) => {
            write_file(path, data.as_bytes())?;
            OutputDigest::of(file_name(path), data.as_bytes())
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(data.as_bytes());
            let _ = stdout.flush();
            OutputDigest::of("-".into(), data.as_bytes())
        }
    };
    let manifest = RunManifest {
        config: cli.clone(),
        version: env!("CARGO_PKG_VERSION").into(),
        wall_time_secs: start.elapsed().as_secs_f64(),
        exit_code: code,
        violations,
        outputs: vec![digest],
    };
    let text = serde_json::to_string(&manifest).expect("manifest serialises");
    match &cli.global.out {
        Some(path) => write_file(&manifest_path(path), format!("{text}\n").as_bytes())?,
        None => eprintln!("{text}"),
    }
    Ok(code)
}

/// The data a config produces, without writing anything.
pub fn render(cli: &Cli) -> CliResult<(String, Vec<String>)> {
    let report = execute(&cli.global, &cli.command)?;
    Ok((report.table.render(cli.global.format), report.violations))
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

fn replay(path: &Path) -> CliResult<i32> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let manifest: RunManifest =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let (data, _) = render(&manifest.config)?;
    let again = OutputDigest::of(String::new(), data.as_bytes());
    let recorded = manifest
        .outputs
        .first()
        .ok_or_else(|| CliError::Usage("manifest lists no outputs".into()))?;
    let same = again.sha256 == recorded.sha256;
    println!("output,recorded_sha256,replayed_sha256,identical");
    println!("{},{},{},{same}", recorded.path, recorded.sha256, again.sha256);
    Ok(if same { EXIT_OK } else { EXIT_VIOLATION })
}

fn write_file(path: &Path, data: &[u8]) -> CliResult<()> {
    std::fs::write(path, data).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn file_name(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}
