use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bandquiver::band::MAX_ELEMENTS;
use bandquiver::construct::{census_up_to, load_input, FIXTURES};
use bandquiver::report::{self, present_band, to_json_string};
use bandquiver::support::SupportLattice;
use bandquiver::zalgebra::LiftMode;
use bandquiver::Error;

#[derive(Parser)]
#[command(name = "bandq", version, about = "Quiver presentations of finite band algebras over the integers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Idempotent lifting route (default: fast path for left regular bands).
    #[arg(long, global = true, value_enum)]
    idempotents: Option<Idempotents>,
    /// Largest accepted band.
    #[arg(long, global = true, default_value_t = MAX_ELEMENTS)]
    max_size: usize,
    /// Write the report here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Idempotents {
    Generic,
    LrbFast,
}

#[derive(Subcommand)]
enum Command {
    /// Band flags, support semilattice, connectivity, unit and nilpotency.
    Analyze { input: String },
    /// Quiver, relations and certificates.
    Present {
        input: String,
        /// Truncate at this path length instead of the nilpotency index.
        #[arg(long)]
        truncation_override: Option<usize>,
        /// Print a plain-text summary instead of JSON.
        #[arg(long)]
        text: bool,
        /// Also write the quiver in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run every cross-check on the inputs (default: the fixture battery).
    Verify {
        inputs: Vec<String>,
        /// Also check every band with at most this many elements.
        #[arg(long)]
        census: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the CW conditions and the length-2 relation statement.
    Cw { input: String },
    /// Quiver (or support semilattice) in DOT format.
    ExportDot {
        input: String,
        #[arg(long, value_enum, default_value_t = DotWhat::Quiver)]
        what: DotWhat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DotWhat {
    Quiver,
    Supports,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    let mode = match cli.idempotents {
        None => LiftMode::Auto,
        Some(Idempotents::Generic) => LiftMode::Generic,
        Some(Idempotents::LrbFast) => LiftMode::LrbFast,
    };
    let load = |s: &str| load_input(s, cli.max_size);
    match &cli.command {
        Command::Analyze { input } => {
            let r = report::analyze(&load(input)?)?;
            emit(&cli.output, &to_json_string(&r)?)?;
            Ok(r.nilpotency.within_bound)
        }
        Command::Present { input, truncation_override, text, dot } => {
            let t = load(input)?;
            let r = report::present(&t, mode, *truncation_override)?;
            if let Some(path) = dot {
                let p = present_band(&t, mode, *truncation_override)?;
                emit(&Some(path.clone()), &p.quiver.to_dot(&t))?;
            }
            let body = if *text { r.render_text() } else { to_json_string(&r)? };
            emit(&cli.output, &body)?;
            Ok(r.passed)
        }
        Command::Verify { inputs, census, seed } => {
            let mut bands = Vec::new();
            let names: Vec<&str> =
                if inputs.is_empty() { FIXTURES.to_vec() } else { inputs.iter().map(String::as_str).collect() };
            for s in names {
                bands.push((s.to_string(), load(s)?));
            }
            if let Some(k) = census {
                for (i, t) in census_up_to(*k)?.into_iter().enumerate() {
                    bands.push((format!("census[{i}]"), t));
                }
            }
            let r = report::verify(&bands, mode, *seed);
            emit(&cli.output, &to_json_string(&r)?)?;
            Ok(r.passed)
        }
        Command::Cw { input } => {
            let r = report::cw(&load(input)?, mode)?;
            emit(&cli.output, &to_json_string(&r)?)?;
            Ok(r.report.passed())
        }
        Command::ExportDot { input, what } => {
            let t = load(input)?;
            let dot = match what {
                DotWhat::Quiver => present_band(&t, mode, None)?.quiver.to_dot(&t),
                DotWhat::Supports => SupportLattice::new(&t)?.to_dot(),
            };
            emit(&cli.output, &dot)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::NotConnected(_) = e {
                eprintln!("the integral algebra of a band has an identity exactly when the band is connected");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
