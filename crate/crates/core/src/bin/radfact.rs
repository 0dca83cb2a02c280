use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use radfact::cli::{failure, limits_from, run, Command, Job, Outcome};
use radfact::Error;

#[derive(Parser)]
#[command(name = "radfact", version, about = "Radical factorization of ideals and SSP decisions")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Ascending radical chain of an ideal of Z, a quadratic order or a ZPI ring
    Factor(Common),
    /// Decide whether every ideal of a finite ring is a product of radical ideals
    DecideSsp(Common),
    /// Prime spectrum and local decomposition of a finite ring, or primes above p
    Spectrum(Common),
    /// Enumerate the ideals of a finite ring
    Ideals(Common),
    /// Radical chains of polynomials over Q, one per line
    SfChain(Common),
    /// Compare the SSP decision with the structural classification over a catalog
    Census(Common),
}

#[derive(Args)]
struct Common {
    /// Inline payload; overrides --input
    payload: Option<String>,
    /// Read the payload from FILE (default: standard input)
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Write the report to FILE atomically (default: standard output)
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
    #[arg(long, value_name = "N")]
    max_order: Option<usize>,
    #[arg(long, value_name = "N")]
    max_ideals: Option<usize>,
    #[arg(long, value_name = "N")]
    max_norm: Option<u128>,
}

fn read_payload(c: &Common) -> Result<String, Error> {
    if let Some(p) = &c.payload {
        return Ok(p.clone());
    }
    match &c.input {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display()))),
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::invalid(format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn write_atomic(path: &Path, text: &str) -> io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("report");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match cli.command {
        Sub::Factor(c) => (Command::Factor, c),
        Sub::DecideSsp(c) => (Command::DecideSsp, c),
        Sub::Spectrum(c) => (Command::Spectrum, c),
        Sub::Ideals(c) => (Command::Ideals, c),
        Sub::SfChain(c) => (Command::SfChain, c),
        Sub::Census(c) => (Command::Census, c),
    };
    let limits = limits_from(common.max_order, common.max_ideals, common.max_norm);
    let outcome: Outcome = match read_payload(&common).and_then(|t| Job::from_text(command, &t, limits)) {
        Ok(mut job) => {
            job.output = common.output.clone();
            run(&job)
        }
        Err(e) => failure(&e),
    };
    if let Some(err) = outcome.report.get("error") {
        let msg = err["message"].as_str().unwrap_or("error");
        match err.get("bound").and_then(|b| b.as_str()) {
            Some(b) => eprintln!("radfact {command}: {msg} (raise with --{b})"),
            None => eprintln!("radfact {command}: {msg}"),
        }
    }
    let text = outcome.render();
    let written = match &common.output {
        Some(path) => write_atomic(path, &text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("radfact {command}: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.exit_code as u8)
}
