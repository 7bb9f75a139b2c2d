use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use repvar::cli::{
    cmd_count, cmd_enumerate, cmd_genus, cmd_table_write, cmd_verify, resolve_seed, CliError,
    CommandReport, Format,
};

#[derive(Parser)]
#[command(
    name = "repvar",
    version,
    about = "Irreducible-component counts and numerical dimension probes for the \
             SL2(C) representation varieties of <a, b | a^p = b^t>"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Table,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Table => Format::Table,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Count the 4-dimensional components three independent ways
    Count {
        #[arg(short)]
        p: u32,
        #[arg(short)]
        t: u32,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List every product component of the central locus with its dimension
    Enumerate {
        #[arg(short)]
        p: u32,
        #[arg(short)]
        t: u32,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Probe sampled points numerically and check the dimension claims
    Verify {
        #[arg(short)]
        p: u32,
        #[arg(short)]
        t: u32,
        /// Points per component (and generic draws)
        #[arg(long, default_value_t = 10)]
        samples: u32,
        /// Base seed; REPVAR_SEED is the fallback, then 0
        #[arg(long)]
        seed: Option<u64>,
        /// Relative singular-value cutoff for rank decisions
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sweep all parameter pairs up to the given bounds into a table
    Table {
        #[arg(long, default_value_t = 10)]
        p_max: u32,
        #[arg(long, default_value_t = 10)]
        t_max: u32,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Torus-knot genus and its agreement with the component count
    Genus {
        #[arg(short)]
        p: u32,
        #[arg(short)]
        t: u32,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn emit(report: &CommandReport, format: Format, output: Option<&PathBuf>) -> Result<(), CliError> {
    let text = report.render(format);
    match output {
        Some(path) => fs::write(path, text)?,
        None => {
            io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Count {
            p,
            t,
            format,
            output,
        } => {
            let report = cmd_count(p, t, resolve_seed(None)?)?;
            emit(&report, format.into(), output.as_ref())?;
            Ok(0)
        }
        Command::Enumerate {
            p,
            t,
            format,
            output,
        } => {
            let report = cmd_enumerate(p, t, resolve_seed(None)?)?;
            emit(&report, format.into(), output.as_ref())?;
            Ok(0)
        }
        Command::Verify {
            p,
            t,
            samples,
            seed,
            tol,
            format,
            output,
        } => {
            let report = cmd_verify(p, t, samples, resolve_seed(seed)?, tol)?;
            emit(&report, format.into(), output.as_ref())?;
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::Table {
            p_max,
            t_max,
            format,
            output,
        } => {
            let seed = resolve_seed(None)?;
            match output {
                Some(path) => {
                    let mut file = io::BufWriter::new(fs::File::create(path)?);
                    cmd_table_write(&mut file, p_max, t_max, seed, format.into())?;
                    file.flush()?;
                }
                None => {
                    let stdout = io::stdout();
                    let mut lock = io::BufWriter::new(stdout.lock());
                    cmd_table_write(&mut lock, p_max, t_max, seed, format.into())?;
                    lock.flush()?;
                }
            }
            Ok(0)
        }
        Command::Genus {
            p,
            t,
            format,
            output,
        } => {
            let report = cmd_genus(p, t, resolve_seed(None)?)?;
            emit(&report, format.into(), output.as_ref())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
