//! Experiment parameters and their validation.

use std::fmt::Write as _;
use std::path::PathBuf;

use qpid::Variant;

use crate::error::ExpError;

/// Desk-scale scrambling factors, `D_AB = 36`.
pub const DESK_FACTORS: [usize; 4] = [2, 2, 3, 3];
/// Full scrambling factors, `D_AB = 900`.
pub const FULL_FACTORS: [usize; 6] = [2, 2, 3, 3, 5, 5];
/// Largest qubit count accepted by the dense Darwinism engine.
pub const DENSE_MAX_QUBITS: usize = 12;
/// Subset enumeration is exponential in the factor count.
pub const MAX_FACTORS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Engine {
    /// Gram-matrix reduction over the two branches.
    Branch,
    /// Full state vector on `2^(n+1)` amplitudes.
    Dense,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum System {
    Qubit,
    Qutrit,
}

impl System {
    pub fn local_dim(self) -> usize {
        match self {
            System::Qubit => 2,
            System::Qutrit => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum StateKind {
    Pure,
    /// Hilbert–Schmidt ensemble.
    Mixed,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TableSource {
    Builtin(String),
    Csv(PathBuf),
}

impl TableSource {
    /// Built-in name if it is one, otherwise a CSV path.
    pub fn parse(s: &str) -> Self {
        match s {
            "triadic" | "dyadic" => TableSource::Builtin(s.to_string()),
            path => TableSource::Csv(PathBuf::from(path)),
        }
    }

    pub fn label(&self) -> String {
        match self {
            TableSource::Builtin(name) => name.clone(),
            TableSource::Csv(path) => path.display().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScrambleParams {
    pub factors: Vec<usize>,
    pub d_t: usize,
    /// Independent draws per split.
    pub draws: usize,
    /// Declared `D_AB`, checked against the factor product when given.
    pub d_ab: Option<usize>,
}

impl Default for ScrambleParams {
    fn default() -> Self {
        Self { factors: DESK_FACTORS.to_vec(), d_t: 4, draws: 1, d_ab: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DarwinismParams {
    /// Environment qubits, split as `m_a + m_b = n`.
    pub n: usize,
    pub s: f64,
    pub p: f64,
    pub engine: Engine,
}

impl Default for DarwinismParams {
    fn default() -> Self {
        Self { n: 100, s: 0.85, p: 0.5, engine: Engine::Branch }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoolingParams {
    pub system: System,
    pub kind: StateKind,
    pub samples: usize,
}

impl Default for PoolingParams {
    fn default() -> Self {
        Self { system: System::Qubit, kind: StateKind::Mixed, samples: 2000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Experiment {
    Tables(TableSource),
    Motivating,
    Scramble(ScrambleParams),
    Darwinism(DarwinismParams),
    Pooling(PoolingParams),
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Tables(_) => "tables",
            Experiment::Motivating => "motivating",
            Experiment::Scramble(_) => "scramble",
            Experiment::Darwinism(_) => "darwinism",
            Experiment::Pooling(_) => "pooling",
        }
    }
}

/// One experiment run with its global options.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub experiment: Experiment,
    pub seed: u64,
    pub variant: Variant,
    pub out: Option<PathBuf>,
    pub plot: Option<PathBuf>,
}

impl SweepConfig {
    pub fn new(experiment: Experiment) -> Self {
        Self { experiment, seed: 1, variant: Variant::Star, out: None, plot: None }
    }

    pub fn validate(&self) -> Result<(), ExpError> {
        let bad = |msg: String| Err(ExpError::Validation(msg));
        match &self.experiment {
            Experiment::Tables(_) | Experiment::Motivating => Ok(()),
            Experiment::Scramble(p) => {
                if p.factors.is_empty() {
                    return bad("factor list is empty".into());
                }
                if p.factors.len() > MAX_FACTORS {
                    return bad(format!("at most {MAX_FACTORS} factors"));
                }
                if p.factors.iter().any(|&f| f < 2) {
                    return bad("factors must be at least 2".into());
                }
                let d_ab = p
                    .factors
                    .iter()
                    .try_fold(1usize, |acc, &f| acc.checked_mul(f))
                    .ok_or_else(|| ExpError::Validation("factor product overflows".into()))?;
                if let Some(declared) = p.d_ab {
                    if declared != d_ab {
                        return bad(format!("factors multiply to {d_ab}, not {declared}"));
                    }
                }
                if p.draws == 0 {
                    return bad("draw count must be at least 1".into());
                }
                if p.d_t == 0 || p.d_t > d_ab {
                    return bad(format!("D_T must be in 1..={d_ab}"));
                }
                Ok(())
            }
            Experiment::Darwinism(p) => {
                if p.n == 0 {
                    return bad("n must be at least 1".into());
                }
                if p.engine == Engine::Dense && p.n > DENSE_MAX_QUBITS {
                    return bad(format!("dense engine is limited to n <= {DENSE_MAX_QUBITS}"));
                }
                if !(0.0..=1.0).contains(&p.p) || !(0.0..=1.0).contains(&p.s) {
                    return bad("p and s must lie in [0, 1]".into());
                }
                Ok(())
            }
            Experiment::Pooling(p) => {
                if p.samples == 0 {
                    return bad("sample count must be at least 1".into());
                }
                Ok(())
            }
        }
    }

    /// Canonical parameter echo for the CSV header. Output paths are left
    /// out so the same run written to two places gives identical files.
    pub fn command_line(&self) -> String {
        let mut s = self.experiment.name().to_string();
        match &self.experiment {
            Experiment::Tables(src) => {
                let _ = write!(s, " dist={}", src.label());
            }
            Experiment::Motivating => {}
            Experiment::Scramble(p) => {
                let factors: Vec<String> = p.factors.iter().map(usize::to_string).collect();
                let _ = write!(s, " factors={} d_t={} draws={}", factors.join(","), p.d_t, p.draws);
            }
            Experiment::Darwinism(p) => {
                let engine = match p.engine {
                    Engine::Branch => "branch",
                    Engine::Dense => "dense",
                };
                let _ = write!(s, " n={} s={} p={} engine={engine}", p.n, p.s, p.p);
            }
            Experiment::Pooling(p) => {
                let system = match p.system {
                    System::Qubit => "qubit",
                    System::Qutrit => "qutrit",
                };
                let kind = match p.kind {
                    StateKind::Pure => "pure",
                    StateKind::Mixed => "mixed",
                };
                let _ = write!(s, " system={system} kind={kind} samples={}", p.samples);
            }
        }
        let _ = write!(s, " variant={}", self.variant);
        s
    }
}
