//! Thin command-line front end over the library; all physics lives there.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use kaonpair::cli;
use kaonpair::tagging::TagKind;
use kaonpair::RunConfig;

#[derive(Parser)]
#[command(
    name = "kaonpair",
    version,
    about = "Entangled neutral-kaon pair: intensities, tags, event generation"
)]
struct Cli {
    /// Parameter file; built-in defaults when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the double-decay intensity at one point, both formulations.
    Intensity {
        #[arg(long)]
        f1: String,
        #[arg(long)]
        t1: f64,
        #[arg(long)]
        f2: String,
        #[arg(long)]
        t2: f64,
    },
    /// First-decay time distributions (CSV, optional SVG).
    Fig1 {
        /// Decay channel; defaults to the first configured one.
        #[arg(long)]
        channel: Option<String>,
        /// Future observation time, in tau_S.
        #[arg(long, default_value_t = 3.0)]
        t2: f64,
        /// Display factor on Gamma_L in the comparison curve.
        #[arg(long, default_value_t = 100.0)]
        kappa: f64,
        /// Grid points over [0, t2].
        #[arg(long, default_value_t = 121)]
        points: usize,
        #[arg(long, default_value = "fig1.csv")]
        csv: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Solve a decoherence-tag time threshold.
    Tag {
        #[arg(long, value_enum)]
        kind: TagKindArg,
        #[arg(long)]
        channel: String,
        /// Contamination bound to reach.
        #[arg(long)]
        bound: f64,
    },
    /// Generate double-decay events into a CSV file.
    Generate {
        #[arg(long, default_value = "events.csv")]
        out: PathBuf,
        #[arg(long)]
        n_events: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        t_max: Option<f64>,
    },
    /// Space-like / time-like classification of an ordered time pair.
    Classify {
        #[arg(long)]
        t1: f64,
        #[arg(long)]
        t2: f64,
        /// CM kaon velocity; defaults to the configured value.
        #[arg(long)]
        beta_k: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TagKindArg {
    /// Living partner is a pure K_L.
    Kl,
    /// First-decayed kaon was a pure K_S.
    Ks,
}

impl From<TagKindArg> for TagKind {
    fn from(arg: TagKindArg) -> Self {
        match arg {
            TagKindArg::Kl => TagKind::KlTag,
            TagKindArg::Ks => TagKind::KsTag,
        }
    }
}

fn run(args: Cli) -> kaonpair::Result<()> {
    let config = match &args.config {
        Some(path) => RunConfig::from_path(path)?,
        None => RunConfig::builtin()?,
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();

    match args.command {
        Command::Intensity { f1, t1, f2, t2 } => {
            cli::cmd_intensity(&config, &f1, t1, &f2, t2, &mut out)
        }
        Command::Fig1 {
            channel,
            t2,
            kappa,
            points,
            csv,
            svg,
        } => cli::cmd_fig1(
            &config,
            channel.as_deref(),
            t2,
            kappa,
            points,
            &csv,
            svg.as_deref(),
            &mut out,
        ),
        Command::Tag {
            kind,
            channel,
            bound,
        } => cli::cmd_tag(&config, kind.into(), &channel, bound, &mut out),
        Command::Generate {
            out: out_path,
            n_events,
            seed,
            t_max,
        } => cli::cmd_generate(&config, n_events, seed, t_max, &out_path, &mut out),
        Command::Classify { t1, t2, beta_k } => {
            cli::cmd_classify(&config, t1, t2, beta_k, &mut out)
        }
    }
}

fn main() {
    let args = Cli::parse();
    if let Err(err) = run(args) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
