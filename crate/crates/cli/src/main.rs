use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gaussent_cli::config::parse_model;
use gaussent_cli::{
    cmd_figures, cmd_threshold, cmd_trajectory, cmd_validate, CliError, ConfigLayer, Result,
    RunConfig, ValidateOptions,
};
use gaussent_core::ReservoirKind;

const AFTER_HELP: &str = "\
Exit status: 0 on success, 1 on validation or runtime failure, 2 on usage errors.
GAUSSENT_SEED is reserved and currently ignored: every computation is deterministic.";

#[derive(Debug, Parser)]
#[command(
    name = "gaussent",
    version,
    about = "Entanglement dynamics of a two-mode squeezed vacuum in thermal reservoirs",
    after_help = AFTER_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write one trajectory CSV per (r, nbar) pair.
    Trajectory(RunArgs),
    /// Write the curve data behind a figure (1-6, or "all").
    Figures(FigureArgs),
    /// Print the survival threshold r* and, given --r, the verdict for that squeezing.
    Threshold(ThresholdArgs),
    /// Compare closed forms against the moment integrator and the spectrum oracle.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Flat key = value file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Reservoir model: common or independent.
    #[arg(long)]
    model: Option<String>,
    /// Comma-separated squeezing parameters.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    r: Option<Vec<f64>>,
    /// Comma-separated mean thermal photon numbers.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    nbar: Option<Vec<f64>>,
    /// Grid points per curve.
    #[arg(long)]
    points: Option<usize>,
    /// Upper end of the tau grid, in (0, 1).
    #[arg(long, allow_negative_numbers = true)]
    tau_max: Option<f64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Significant digits in CSV output.
    #[arg(long)]
    precision: Option<usize>,
}

impl RunArgs {
    fn into_config(self, extra: ConfigLayer) -> Result<RunConfig> {
        let file = match &self.config {
            Some(path) => ConfigLayer::from_file(path)?,
            None => ConfigLayer::default(),
        };
        let flags = ConfigLayer {
            model: self.model.as_deref().map(parse_model).transpose()?,
            r_list: self.r,
            nbar_list: self.nbar,
            points: self.points,
            tau_max: self.tau_max,
            output_path: self.out,
            precision: self.precision,
            ..extra
        };
        RunConfig::resolve(file.merge(flags))
    }
}

#[derive(Debug, Args)]
struct FigureArgs {
    /// Figure number 1-6, or "all".
    #[arg(long)]
    figure: String,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Debug, Args)]
struct ThresholdArgs {
    /// Mean thermal photon number of the reservoir.
    #[arg(long, allow_negative_numbers = true)]
    nbar: f64,
    /// Squeezing to classify.
    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,
    /// Reservoir model used for the verdict.
    #[arg(long, default_value = "common")]
    model: String,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Integration step in units of 1/gamma.
    #[arg(long)]
    dt: Option<f64>,
    /// Comma-separated coupling rates to exercise.
    #[arg(long, value_delimiter = ',')]
    gamma: Option<Vec<f64>>,
    /// Drop the rate factor from the diffusion term (negative control).
    #[arg(long, hide = true)]
    debug_drop_diffusion_rate: bool,
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Trajectory(args) => {
            let config = args.into_config(ConfigLayer::default())?;
            for path in cmd_trajectory(&config)? {
                println!("{}", path.display());
            }
        }
        Command::Figures(args) => {
            let ids: Vec<u8> = match args.figure.trim() {
                "all" => (1..=6).collect(),
                raw => vec![raw
                    .parse()
                    .map_err(|_| CliError::Usage(format!("unknown figure '{raw}'")))?],
            };
            let config = args.run.into_config(ConfigLayer::default())?;
            for id in ids {
                for path in cmd_figures(id, &config.output_path, config.grid, config.precision)? {
                    println!("{}", path.display());
                }
            }
        }
        Command::Threshold(args) => {
            let kind: ReservoirKind = parse_model(&args.model)?;
            print!("{}", cmd_threshold(args.nbar, args.r, kind)?);
        }
        Command::Validate(args) => {
            let extra = ConfigLayer {
                gamma_dt: args.dt,
                gamma_list: args.gamma,
                ..Default::default()
            };
            let config = args.run.into_config(extra)?;
            let options = ValidateOptions {
                drop_diffusion_rate: args.debug_drop_diffusion_rate,
            };
            let report = cmd_validate(&config, options)?;
            print!("{report}");
            if !report.passed() {
                return Err(CliError::Validation(report.failures()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("gaussent: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
