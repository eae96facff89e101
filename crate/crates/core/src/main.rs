//! Command-line front end.
//!
//! `run` executes a JSON config file; the remaining subcommands mirror the
//! config fields as flags for quick one-off runs and sweep scripting.

use clap::{Args, Parser, Subcommand, ValueEnum};

use eprsim::config::{
    ChshParams, DecisionPattern, DecisionsParam, Experiment, ExperimentConfig, GhzParams,
    KinematicsScanParams, MalusParams, ModelParam, OutputFormat, OutputSpec, RegimeParam,
    RoundTripParams, SourceParam,
};
use eprsim::protocol::DEFAULT_THRESHOLD;
use eprsim::runner::{execute, RunnerError};

#[derive(Parser)]
#[command(name = "eprsim", version, about = "Entangled-photon correlation and superluminal-signal simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Sr,
    Preferred,
    Both,
}

impl From<RegimeArg> for RegimeParam {
    fn from(r: RegimeArg) -> Self {
        match r {
            RegimeArg::Sr => RegimeParam::Sr,
            RegimeArg::Preferred => RegimeParam::Preferred,
            RegimeArg::Both => RegimeParam::Both,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SourceArg {
    Entangled,
    Mixture,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    FiniteSpeedVCausal,
    AgreementVariant,
    LocalOnly,
}

impl From<ModelArg> for ModelParam {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::FiniteSpeedVCausal => ModelParam::FiniteSpeedVCausal,
            ModelArg::AgreementVariant => ModelParam::AgreementVariant,
            ModelArg::LocalOnly => ModelParam::LocalOnly,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DecisionsArg {
    Alternating,
    Random,
    AllOn,
    AllOff,
}

impl From<DecisionsArg> for DecisionsParam {
    fn from(d: DecisionsArg) -> Self {
        DecisionsParam::Pattern(match d {
            DecisionsArg::Alternating => DecisionPattern::Alternating,
            DecisionsArg::Random => DecisionPattern::Random,
            DecisionsArg::AllOn => DecisionPattern::AllOn,
            DecisionsArg::AllOff => DecisionPattern::AllOff,
        })
    }
}

#[derive(Args)]
struct CommonArgs {
    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<String>,
}

impl CommonArgs {
    fn into_config(self, experiment: Experiment) -> ExperimentConfig {
        ExperimentConfig {
            seed: self.seed,
            experiment,
            output: OutputSpec {
                format: self.format.into(),
                path: self.out,
            },
        }
    }
}

#[derive(Args)]
struct SourceArgs {
    /// Photon-pair source.
    #[arg(long, value_enum, default_value_t = SourceArg::Entangled)]
    source: SourceArg,
    /// Mixture axis, radians (only with --source mixture).
    #[arg(long, default_value_t = 0.0)]
    axis: f64,
}

impl SourceArgs {
    fn into_param(self) -> SourceParam {
        match self.source {
            SourceArg::Entangled => SourceParam::Entangled,
            SourceArg::Mixture => SourceParam::Mixture { axis: self.axis },
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Execute a JSON config file.
    Run {
        /// Path to the config file.
        config: String,
        /// Override the config seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the output format.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Override the output path.
        #[arg(long)]
        out: Option<String>,
    },
    /// One superluminal round trip with full derivation trace.
    Roundtrip {
        /// Target position in the privileged frame (c = 1 units).
        #[arg(long)]
        x1: f64,
        /// Frame speed, 0 < v < 1.
        #[arg(long)]
        v: f64,
        /// Signal speed, ubar > 1.
        #[arg(long)]
        ubar: f64,
        #[arg(long, value_enum, default_value_t = RegimeArg::Sr)]
        regime: RegimeArg,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Scan the round trip over a grid of frame speeds.
    Scan {
        #[arg(long)]
        ubar: f64,
        #[arg(long)]
        v_from: f64,
        #[arg(long)]
        v_to: f64,
        #[arg(long)]
        v_step: f64,
        #[arg(long, default_value_t = 1.0)]
        x1: f64,
        #[arg(long, value_enum, default_value_t = RegimeArg::Sr)]
        regime: RegimeArg,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Sequential-collapse Malus-law run at one analyzer pair.
    Malus {
        /// Polarizer I angle, radians.
        #[arg(long)]
        alpha: f64,
        /// Polarizer II angle, radians.
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        trials: u64,
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// CHSH statistic estimate.
    Chsh {
        #[arg(long)]
        trials: u64,
        /// Four analyzer angles a,a',b,b' in radians; omit for the standard
        /// maximizing set.
        #[arg(long, value_delimiter = ',', num_args = 4)]
        settings: Option<Vec<f64>>,
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// GHZ three-party signaling protocol over blocks of trials.
    Ghz {
        /// Distance from Alice to the Bob/Charlie lab (c = 1 units).
        #[arg(long)]
        l: f64,
        /// Alice's measurement instant in the privileged frame.
        #[arg(long, default_value_t = 0.0)]
        t_a: f64,
        /// Bob's and Charlie's simultaneous measurement instant.
        #[arg(long)]
        t_l: f64,
        /// Influence speed, ubar > 1.
        #[arg(long)]
        ubar: f64,
        /// Fraction of pairs emitted in the entangled GHZ state.
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, value_enum, default_value_t = ModelArg::FiniteSpeedVCausal)]
        model: ModelArg,
        #[arg(long)]
        blocks: u64,
        /// Trials per block.
        #[arg(long)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = DecisionsArg::Random)]
        decisions: DecisionsArg,
        #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
        threshold: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn build_config(command: Command) -> Result<ExperimentConfig, RunnerError> {
    Ok(match command {
        Command::Run { config, seed, format, out } => {
            let text = std::fs::read_to_string(&config)?;
            let mut parsed = eprsim::config::parse_config(&text)?;
            if let Some(seed) = seed {
                parsed.seed = seed;
            }
            if let Some(format) = format {
                parsed.output.format = format.into();
            }
            if let Some(out) = out {
                parsed.output.path = Some(out);
            }
            parsed
        }
        Command::Roundtrip { x1, v, ubar, regime, common } => common.into_config(
            Experiment::RoundTrip(RoundTripParams { x1, v, ubar, regime: regime.into() }),
        ),
        Command::Scan { ubar, v_from, v_to, v_step, x1, regime, common } => {
            common.into_config(Experiment::KinematicsScan(KinematicsScanParams {
                ubar,
                v_from,
                v_to,
                v_step,
                x1,
                regime: regime.into(),
            }))
        }
        Command::Malus { alpha, beta, trials, source, common } => {
            common.into_config(Experiment::Malus(MalusParams {
                source: source.into_param(),
                alpha,
                beta,
                trials,
            }))
        }
        Command::Chsh { trials, settings, source, common } => {
            common.into_config(Experiment::Chsh(ChshParams {
                source: source.into_param(),
                settings: settings.map(|s| [s[0], s[1], s[2], s[3]]),
                trials,
            }))
        }
        Command::Ghz {
            l,
            t_a,
            t_l,
            ubar,
            p,
            model,
            blocks,
            trials,
            decisions,
            threshold,
            common,
        } => {
            common.into_config(
                Experiment::GhzSignaling(GhzParams {
                    l,
                    t_a,
                    t_l,
                    ubar,
                    p,
                    model: model.into(),
                    trials_per_block: trials,
                    blocks,
                    decisions: decisions.into(),
                    threshold,
                }),
            )
        }
    })
}

fn main() {
    let cli = Cli::parse();
    let result = build_config(cli.command).and_then(|config| execute(&config));
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
