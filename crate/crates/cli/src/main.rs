use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hilbert_forms_cli::{run, Cli, CliError, EXIT_FAILURE, EXIT_USAGE};

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("HILBERT_FORMS_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Usage(format!(
            "HILBERT_FORMS_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size thread pool: {e}")))?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn real_main() -> Result<(), CliError> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    configure_threads()?;
    let outcome = run(&cli)?;
    if !outcome.diagnostics.is_empty() {
        eprint!("{}", outcome.diagnostics);
    }
    if let Some(report) = outcome.report {
        let text = report.render(cli.format);
        match &cli.output {
            Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?,
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(text.as_bytes())
                    .and_then(|_| stdout.flush())
                    .map_err(|source| CliError::Io {
                        path: "<stdout>".into(),
                        source,
                    })?;
            }
        }
    }
    match outcome.failed {
        Some(msg) => Err(CliError::Verification(msg)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    match real_main() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.exit_code() == EXIT_USAGE {
                EXIT_USAGE
            } else {
                EXIT_FAILURE
            } as u8)
        }
    }
}
