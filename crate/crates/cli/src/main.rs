use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use grover_noise::{ChannelKind, Placement};
use grover_noise_cli::{
    run_figure, run_sweep, run_threshold, run_validate, CliError, FigureConfig, SweepConfig,
    ThresholdConfig,
};

/// Simulate Grover search under single-qubit noise channels.
#[derive(Parser)]
#[command(name = "grover-noise", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep noise levels and emit per-iteration probabilities as CSV.
    Sweep(SweepArgs),
    /// Run the invariant suite and print a pass/fail table.
    Validate,
    /// Find the noise threshold for a requested success probability.
    Threshold(ThresholdArgs),
    /// Emit the three noisy-family CSVs (phase flip, bit flip, bit-phase flip).
    Figure(FigureArgs),
}

#[derive(Args)]
struct InstanceArgs {
    /// Database size N.
    #[arg(long, default_value_t = 256)]
    n: u64,
    /// Target count m.
    #[arg(long, default_value_t = 1)]
    m: u64,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Channel: bf, pf, bpf, dp, pd, ad or id.
    #[arg(long, default_value = "bpf")]
    channel: ChannelKind,
    /// Contraction factors to sweep (comma separated). For ad these are
    /// gamma values; defaults to 1.0,0.9,0.8,0.7 (1.0 for id).
    #[arg(long, value_delimiter = ',', num_args = 1.., conflicts_with_all = ["p", "gamma", "alpha"])]
    eta: Option<Vec<f64>>,
    /// Keep probability for flip channels (converted to eta = 2p - 1).
    #[arg(long, conflicts_with_all = ["gamma", "alpha"])]
    p: Option<f64>,
    /// Damping parameter for pd/ad channels.
    #[arg(long, conflicts_with = "alpha")]
    gamma: Option<f64>,
    /// Mixing probability for the dp channel (eta = 1 - alpha).
    #[arg(long)]
    alpha: Option<f64>,
    /// Iterations to simulate.
    #[arg(long, default_value_t = 40)]
    t_end: usize,
    /// Noise placement: iteration or reflection.
    #[arg(long, default_value = "iteration", value_parser = parse_placement)]
    placement: Placement,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ThresholdArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Channel: bf, pf, bpf, dp or pd.
    #[arg(long, default_value = "bpf")]
    channel: ChannelKind,
    /// Requested success probability.
    #[arg(long = "p-req")]
    p_req: f64,
    /// Optional CSV output path for the result row.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FigureArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Contraction factors, one curve per value.
    #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = [1.0, 0.9, 0.8, 0.7])]
    eta: Vec<f64>,
    /// Iterations to simulate (defaults to 4T).
    #[arg(long)]
    t_end: Option<usize>,
    /// Noise placement: iteration or reflection.
    #[arg(long, default_value = "iteration", value_parser = parse_placement)]
    placement: Placement,
    /// Directory receiving figure-pf.csv, figure-bf.csv, figure-bpf.csv.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

fn parse_placement(s: &str) -> Result<Placement, String> {
    match s {
        "iteration" => Ok(Placement::PerIteration),
        "reflection" => Ok(Placement::PerReflection),
        other => Err(format!(
            "unknown placement '{other}' (expected iteration or reflection)"
        )),
    }
}

/// Noise values from the sweep flags: an explicit eta list, a converted
/// raw parameter, or the defaults.
fn sweep_values(args: &SweepArgs) -> Result<Vec<f64>, CliError> {
    let bad = |msg: String| CliError::InvalidArgs(msg);
    if let Some(etas) = &args.eta {
        if args.channel == ChannelKind::AmplitudeDamping {
            return Err(bad(
                "amplitude damping has no eta; pass --gamma instead".into(),
            ));
        }
        return Ok(etas.clone());
    }
    if let Some(p) = args.p {
        return match args.channel {
            ChannelKind::BitFlip | ChannelKind::PhaseFlip | ChannelKind::BitPhaseFlip => {
                Ok(vec![2.0 * p - 1.0])
            }
            other => Err(bad(format!("--p applies to flip channels, not {other}"))),
        };
    }
    if let Some(gamma) = args.gamma {
        return match args.channel {
            ChannelKind::PhaseDamping => Ok(vec![gamma.sqrt()]),
            ChannelKind::AmplitudeDamping => Ok(vec![gamma]),
            other => Err(bad(format!("--gamma applies to pd/ad channels, not {other}"))),
        };
    }
    if let Some(alpha) = args.alpha {
        return match args.channel {
            ChannelKind::Depolarizing => Ok(vec![1.0 - alpha]),
            other => Err(bad(format!("--alpha applies to the dp channel, not {other}"))),
        };
    }
    Ok(match args.channel {
        ChannelKind::Identity => vec![1.0],
        _ => vec![1.0, 0.9, 0.8, 0.7],
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sweep(args) => {
            let config = SweepConfig {
                n_items: args.instance.n,
                n_targets: args.instance.m,
                kind: args.channel,
                noise_values: sweep_values(&args)?,
                t_end: args.t_end,
                placement: args.placement,
            };
            run_sweep(&config, args.out.as_deref())
        }
        Command::Validate => run_validate(),
        Command::Threshold(args) => {
            let config = ThresholdConfig {
                n_items: args.instance.n,
                n_targets: args.instance.m,
                kind: args.channel,
                p_requested: args.p_req,
            };
            run_threshold(&config, args.out.as_deref())
        }
        Command::Figure(args) => {
            let config = FigureConfig {
                n_items: args.instance.n,
                n_targets: args.instance.m,
                noise_values: args.eta.clone(),
                t_end: args.t_end,
                placement: args.placement,
                out_dir: args.out.clone(),
            };
            run_figure(&config).map(|paths| {
                for path in paths {
                    eprintln!("wrote {}", path.display());
                }
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code())
        }
    }
}
