use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use kmink::action::act;
use kmink::config::{parse_gauge_config, GaugeFile};
use kmink::dirac::Gamma4Choice;
use kmink::gauge::{classical_limit, field_strength, gauge_transform, Convention};
use kmink::report::VerificationReport;
use kmink::suites::{all_gamma4_choices, parse_gamma4, run_suite, verify_gauge_file, SuiteOptions, SUITES};
use kmink::{eval_str, parse, KminkError};

/// Exact symbolic engine for kappa-Minkowski space.
#[derive(Parser)]
#[command(name = "kmink", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an expression and print its canonical form.
    Parse { expr: String },
    /// Evaluate an expression to normal form.
    Eval { expr: String },
    /// Left action of a momentum element on a coordinate element.
    Act { momentum: String, element: String },
    /// Exterior derivative of a function or one-form.
    D { expr: String },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
        /// `zero`, `unit:<scalar>` or `gamma5:<scalar>`; repeatable.
        /// Defaults to all three with scalar 1/2.
        #[arg(long, value_parser = gamma4_arg)]
        gamma4: Vec<Gamma4Choice>,
        /// Write JSON lines to this file (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Include wall times in the JSON output.
        #[arg(long)]
        timings: bool,
        /// Truncate residuals in the table to this many characters.
        #[arg(long, default_value_t = 100)]
        width: usize,
    },
    /// Gauge-theory tools driven by a configuration file.
    Gauge {
        #[command(subcommand)]
        action: GaugeCommand,
    },
}

#[derive(Subcommand)]
enum GaugeCommand {
    /// Print the nonzero field-strength components.
    Fstrength {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value_t = Conv::Literal)]
        convention: Conv,
    },
    /// Print the configuration transformed by each listed unitary.
    Transform {
        #[arg(long)]
        config: PathBuf,
    },
    /// Covariance checks of the configuration under its unitaries.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value_t = Conv::Literal)]
        convention: Conv,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        timings: bool,
        #[arg(long, default_value_t = 100)]
        width: usize,
    },
    /// Compare the large-kappa limit of the invariant with the classical Lagrangian.
    Limit {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Conv {
    Literal,
    Charged,
}

impl From<Conv> for Convention {
    fn from(c: Conv) -> Convention {
        match c {
            Conv::Literal => Convention::Literal,
            Conv::Charged => Convention::Charged,
        }
    }
}

fn gamma4_arg(s: &str) -> Result<Gamma4Choice, String> {
    parse_gamma4(s).map_err(|e| e.to_string())
}

enum Failure {
    Assertion,
    Error(KminkError),
}

impl From<KminkError> for Failure {
    fn from(e: KminkError) -> Failure {
        Failure::Error(e)
    }
}

fn load(path: &PathBuf) -> Result<GaugeFile, KminkError> {
    let text = fs::read_to_string(path).map_err(|e| KminkError::Io(format!("{}: {}", path.display(), e)))?;
    parse_gauge_config(&text)
}

fn emit(report: &VerificationReport, json: Option<&PathBuf>, timings: bool, width: usize) -> Result<(), Failure> {
    match json {
        Some(path) if path.as_os_str() == "-" => print!("{}", report.to_json_lines(timings)),
        Some(path) => {
            fs::write(path, report.to_json_lines(timings)).map_err(KminkError::from)?;
            print!("{}", report.to_table(width));
        }
        None => print!("{}", report.to_table(width)),
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Assertion)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Parse { expr } => println!("{}", parse(&expr)?),
        Command::Eval { expr } => println!("{}", eval_str(&expr)?),
        Command::Act { momentum, element } => {
            let p = eval_str(&momentum)?.as_momentum()?;
            let a = eval_str(&element)?.as_position()?;
            println!("{}", act(&p, &a));
        }
        Command::D { expr } => println!("{}", eval_str(&expr)?.d()?),
        Command::Verify { suite, seed, max_degree, gamma4, json, timings, width } => {
            let gamma4 = if gamma4.is_empty() { all_gamma4_choices() } else { gamma4 };
            let opts = SuiteOptions { seed, max_degree, gamma4 };
            let report = run_suite(&suite, &opts)?;
            emit(&report, json.as_ref(), timings, width)?;
        }
        Command::Gauge { action } => match action {
            GaugeCommand::Fstrength { config, convention } => {
                let file = load(&config)?;
                let f = field_strength(&file.config, convention.into());
                if f.is_zero() {
                    println!("0");
                }
                for i in 0..5 {
                    for j in (i + 1)..5 {
                        let c = f.get(i, j);
                        if !c.is_zero() {
                            println!("F[{},{}] = {}", i, j, c);
                        }
                    }
                }
            }
            GaugeCommand::Transform { config } => {
                let file = load(&config)?;
                if file.unitaries.is_empty() {
                    return Err(KminkError::Config { line: 0, message: "no `U = ...` line in configuration".into() }.into());
                }
                for (name, u) in &file.unitaries {
                    println!("# U = {}", name);
                    print!("{}", gauge_transform(&file.config, u)?);
                }
            }
            GaugeCommand::Verify { config, convention, json, timings, width } => {
                let file = load(&config)?;
                let report = verify_gauge_file(&file, convention.into());
                emit(&report, json.as_ref(), timings, width)?;
            }
            GaugeCommand::Limit { config } => {
                let file = load(&config)?;
                let outcome = classical_limit(&file.config, "config")?;
                println!("{}  {}  {}", outcome.id, if outcome.passed() { "pass" } else { "FAIL" }, outcome.residual);
                if !outcome.passed() {
                    return Err(Failure::Assertion);
                }
            }
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Assertion) => ExitCode::from(1),
        Err(Failure::Error(e)) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
