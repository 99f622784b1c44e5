//! `qcm`: sweeps, fidelities and verification suites for the cloning machines.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use qcm_core::cloners::{average_fidelity, machine_fidelity, MachinePreset};
use qcm_core::states::{PureSchmidtState, WernerState};
use qcm_core::sweep::{run_sweep, werner_fidelity, write_csv, InputFamily, SweepConfig, DEFAULT_GRID_POINTS};
use qcm_core::verify::{run_suite, Suite};
use qcm_core::{Error, Execution};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_IO: u8 = 2;
const EXIT_UNKNOWN_MACHINE: u8 = 3;
const EXIT_BAD_PARAMETER: u8 = 4;

#[derive(Parser)]
#[command(name = "qcm", version, about = "Local cloning of two-qubit states and the correlations that survive it")]
struct Cli {
    /// Run batch work on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Pure,
    Werner,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Constants,
    Oracles,
    Optima,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Write fidelity, concurrence, EoF and discord along an input family as CSV.
    Sweep {
        #[arg(long)]
        machine: String,
        #[arg(long, value_enum)]
        family: Family,
        /// Number of evenly spaced grid points, endpoints included.
        #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
        points: usize,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a fidelity with 6 decimals.
    #[command(group(ArgGroup::new("point").required(true).args(["alpha2", "x", "average"])))]
    Fidelity {
        #[arg(value_name = "MACHINE", conflicts_with = "machine_flag")]
        machine: Option<String>,
        #[arg(long = "machine", value_name = "MACHINE")]
        machine_flag: Option<String>,
        /// Pure input alpha|00> + beta|11> with this alpha^2.
        #[arg(long, allow_negative_numbers = true)]
        alpha2: Option<f64>,
        /// Werner input with this x in [-1, 1].
        #[arg(long, allow_negative_numbers = true)]
        x: Option<f64>,
        /// Average over alpha^2 in [0, 1].
        #[arg(long)]
        average: bool,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(value_enum, value_name = "SUITE", conflicts_with = "suite_flag")]
        suite: Option<SuiteArg>,
        #[arg(long = "suite", value_enum, value_name = "SUITE")]
        suite_flag: Option<SuiteArg>,
        /// Keep only the checks about this machine.
        #[arg(long)]
        machine: Option<String>,
    },
    /// List the preset machines.
    ListMachines,
}

enum Failure {
    Core(Error),
    Io(io::Error),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_BAD_PARAMETER),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(EXIT_VERIFY_FAILED),
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_IO)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::UnknownMachine { .. } => EXIT_UNKNOWN_MACHINE,
                _ => EXIT_BAD_PARAMETER,
            })
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::default() };
    match cli.command {
        Command::Sweep { machine, family, points, out } => {
            let family = match family {
                Family::Pure => InputFamily::Pure,
                Family::Werner => InputFamily::Werner,
            };
            let config = SweepConfig::new(machine.parse()?, family, points)?;
            // Open the file first so an unwritable path fails before the work.
            let sink: Box<dyn Write> = match out {
                Some(path) => Box::new(BufWriter::new(
                    File::create(&path)
                        .map_err(|e| io::Error::new(e.kind(), format!("cannot write {}: {e}", path.display())))?,
                )),
                None => Box::new(BufWriter::new(io::stdout().lock())),
            };
            let rows = run_sweep(&config, exec)?;
            write_csv(&rows, sink)?;
        }
        Command::Fidelity { machine, machine_flag, alpha2, x, average } => {
            let name = machine
                .or(machine_flag)
                .ok_or_else(|| Error::OutOfRange("a machine is required (positional or --machine)".into()))?;
            let preset: MachinePreset = name.parse()?;
            let value = if average {
                average_fidelity(preset)?
            } else if let Some(a) = alpha2 {
                machine_fidelity(preset, &PureSchmidtState::from_alpha_sq(a)?)?
            } else if let Some(x) = x {
                werner_fidelity(&preset.machine(), &WernerState::new(x)?)?
            } else {
                unreachable!("clap requires one of --alpha2, --x, --average")
            };
            println!("{value:.6}");
        }
        Command::Verify { suite, suite_flag, machine } => {
            let suite = match suite.or(suite_flag).unwrap_or(SuiteArg::All) {
                SuiteArg::Constants => Suite::Constants,
                SuiteArg::Oracles => Suite::Oracles,
                SuiteArg::Optima => Suite::Optima,
                SuiteArg::All => Suite::All,
            };
            let machine = machine.map(|m| m.parse::<MachinePreset>()).transpose()?;
            let report = run_suite(suite, machine, exec)?;
            print!("{}", report.render());
            if !report.passed() {
                return Err(Failure::Verify);
            }
        }
        Command::ListMachines => {
            for preset in MachinePreset::ALL {
                println!("{:<16} {}", preset.name(), preset.description());
            }
        }
    }
    Ok(())
}
