//! Command-line surface.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Parser, Subcommand};
use qpid::Variant;

use crate::config::{
    DarwinismParams, Engine, Experiment, PoolingParams, ScrambleParams, StateKind, SweepConfig,
    System, TableSource, DESK_FACTORS, FULL_FACTORS,
};
use crate::error::ExpError;
use crate::plot::write_svg;
use crate::report::execute;

#[derive(Debug, Parser)]
#[command(name = "qpid", version, about = "Classical and quantum information decomposition experiments")]
pub struct Cli {
    /// Base seed; every task draws from its own stream derived from it.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    /// Quantum overlap operator.
    #[arg(
        long,
        global = true,
        default_value = "star",
        value_parser = PossibleValuesParser::new(["star", "plain"]).map(|s| s.parse::<Variant>().expect("checked by parser"))
    )]
    pub variant: Variant,

    /// Write CSV here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Also write an SVG plot.
    #[arg(long, global = true)]
    pub plot: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classical decomposition of `triadic`, `dyadic` or a `t,a,b,p` CSV file.
    Tables {
        #[arg(default_value = "triadic")]
        dist: String,
    },
    /// Quantum decomposition of the superpositions over the two built-in supports.
    Motivating,
    /// Random scrambling unitaries across all bipartitions of the factor list.
    Scramble {
        /// Local dimension factors of AB.
        #[arg(long, value_delimiter = ',', conflicts_with = "full")]
        factors: Option<Vec<usize>>,
        /// Use the factors 2,2,3,3,5,5 (slow).
        #[arg(long)]
        full: bool,
        /// Expected factor product, checked if given.
        #[arg(long)]
        d_ab: Option<usize>,
        #[arg(long, default_value_t = 4)]
        d_t: usize,
        /// Draws per bipartition.
        #[arg(long, default_value_t = 1)]
        draws: usize,
    },
    /// Two-branch record states spread over n environment qubits.
    Darwinism {
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 0.85)]
        s: f64,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, value_enum, default_value = "branch")]
        engine: Engine,
    },
    /// Compare the two bonuses over random states.
    Pooling {
        #[arg(long, value_enum, default_value = "qubit")]
        system: System,
        #[arg(long, value_enum, default_value = "mixed")]
        kind: StateKind,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
}

impl Cli {
    pub fn into_config(self) -> SweepConfig {
        let experiment = match self.command {
            Command::Tables { dist } => Experiment::Tables(TableSource::parse(&dist)),
            Command::Motivating => Experiment::Motivating,
            Command::Scramble { factors, full, d_ab, d_t, draws } => {
                let factors = match (factors, full) {
                    (Some(f), _) => f,
                    (None, true) => FULL_FACTORS.to_vec(),
                    (None, false) => DESK_FACTORS.to_vec(),
                };
                Experiment::Scramble(ScrambleParams { factors, d_t, draws, d_ab })
            }
            Command::Darwinism { n, s, p, engine } => {
                Experiment::Darwinism(DarwinismParams { n, s, p, engine })
            }
            Command::Pooling { system, kind, samples } => {
                Experiment::Pooling(PoolingParams { system, kind, samples })
            }
        };
        SweepConfig {
            experiment,
            seed: self.seed,
            variant: self.variant,
            out: self.out,
            plot: self.plot,
        }
    }
}

fn run_config(cfg: &SweepConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), ExpError> {
    if let Experiment::Scramble(p) = &cfg.experiment {
        if p.factors.iter().product::<usize>() > 100 {
            writeln!(stderr, "warning: D_AB above 100 takes minutes per point")?;
        }
    }
    let report = execute(cfg)?;
    let text = report.csv.render();
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, text)?;
            for line in &report.summary {
                writeln!(stdout, "{line}")?;
            }
        }
        None => {
            stdout.write_all(text.as_bytes())?;
            for line in &report.summary {
                writeln!(stderr, "{line}")?;
            }
        }
    }
    if let Some(path) = &cfg.plot {
        match &report.figure {
            Some(fig) => write_svg(fig, path)?,
            None => writeln!(stderr, "warning: `{}` has no plot", cfg.experiment.name())?,
        }
    }
    Ok(())
}

/// Parses `args`, runs the experiment and returns the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return 2;
            }
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    match run_config(&cli.into_config(), stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
