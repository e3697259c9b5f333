use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mor_core::sweep::{
    emit, emit_to_path, parse_config, run_sweep, EngineChoice, OutputFormat, Preset, SweepConfig, SweepError,
};

#[derive(Parser)]
#[command(name = "mor", version, about = "Control-field induced magneto-optical rotation spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep described by a config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// analytic, numeric or both (overrides the config file)
        #[arg(long, value_parser = parse_engine)]
        engine: Option<EngineChoice>,
        /// csv or json (overrides the config file)
        #[arg(long, value_parser = parse_format)]
        format: Option<OutputFormat>,
        /// Output file; standard output if neither this nor the config sets one.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write one of the built-in preset spectra as <out>/<name>.csv.
    Figure {
        #[arg(value_parser = parse_preset)]
        name: Preset,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, value_parser = parse_engine)]
        engine: Option<EngineChoice>,
    },
}

fn parse_engine(s: &str) -> Result<EngineChoice, String> {
    s.parse()
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse()
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse().map_err(|e: SweepError| e.to_string())
}

fn read_config(path: &Path) -> Result<SweepConfig, SweepError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| SweepError::Io { destination: path.display().to_string(), source })?;
    Ok(parse_config(&text)?)
}

fn write_rows(cfg: &SweepConfig) -> Result<usize, SweepError> {
    let rows = run_sweep(cfg)?;
    match &cfg.output.path {
        Some(path) => emit_to_path(&rows, cfg.output.format, path)?,
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            emit(&rows, cfg.output.format, &mut lock, "<stdout>")?;
            lock.flush().map_err(|source| SweepError::Io { destination: "<stdout>".into(), source })?;
        }
    }
    Ok(rows.len())
}

fn run(cli: Cli) -> Result<(), SweepError> {
    match cli.command {
        Command::Sweep { config, engine, format, out } => {
            let mut cfg = read_config(&config)?;
            if let Some(engine) = engine {
                cfg.engine = engine;
            }
            if let Some(format) = format {
                cfg.output.format = format;
            }
            if out.is_some() {
                cfg.output.path = out;
            }
            let n = write_rows(&cfg)?;
            if let Some(path) = &cfg.output.path {
                eprintln!("wrote {n} rows to {}", path.display());
            }
        }
        Command::Figure { name, out, engine } => {
            std::fs::create_dir_all(&out)
                .map_err(|source| SweepError::Io { destination: out.display().to_string(), source })?;
            let mut cfg = name.config();
            if let Some(engine) = engine {
                cfg.engine = engine;
            }
            cfg.output.format = OutputFormat::Csv;
            let path = out.join(format!("{name}.csv"));
            cfg.output.path = Some(path.clone());
            let n = write_rows(&cfg)?;
            eprintln!("wrote {n} rows to {}", path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        // a closed downstream pipe (e.g. `| head`) is not a failure
        Err(SweepError::Io { source, .. }) if source.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
