//! The five experiment families.
//!
//! Every random task draws from `RandomSource::new(seed).derive(index)` with
//! a fixed task index, so results do not depend on thread scheduling.

use qpid::classical::{interaction_gap, pid_decompose};
use qpid::quantum::{qpid_decompose_pure, quantum_bonus, quantum_bonus_pure, Bonus};
use qpid::states::{random_mixed, random_pure, scrambled_state, superposition_from_table};
use qpid::{Branch64, HilbertLayout, Pid64, Qpid64, RandomSource, Table64, Variant};
use qpid::{SOURCE_A, SOURCE_B, TARGET};
use rayon::prelude::*;

use crate::config::{DarwinismParams, Engine, PoolingParams, ScrambleParams, StateKind, TableSource};
use crate::error::ExpError;

pub type Result<T> = std::result::Result<T, ExpError>;

pub fn load_table(src: &TableSource) -> Result<Table64> {
    match src {
        TableSource::Builtin(name) => Table64::builtin(name)
            .ok_or_else(|| ExpError::Validation(format!("unknown table `{name}`"))),
        TableSource::Csv(path) => Ok(Table64::from_csv_path(path)?),
    }
}

/// Classical decomposition of a built-in or CSV table, with the interaction gap.
pub fn run_tables(src: &TableSource) -> Result<(Pid64, f64)> {
    let table = load_table(src)?;
    Ok((pid_decompose(&table), interaction_gap(&table)))
}

/// Decompositions of the uniform superpositions over the triadic and dyadic supports.
pub fn run_motivating(variant: Variant) -> Result<[Qpid64; 2]> {
    let run = |t: Table64| -> Result<Qpid64> {
        let psi = superposition_from_table(&t)?;
        Ok(qpid_decompose_pure(&psi, variant)?)
    };
    Ok([run(Table64::triadic())?, run(Table64::dyadic())?])
}

/// Bipartition of `AB` with `x = log₂(D_A/D_B)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Split {
    pub d_a: usize,
    pub d_b: usize,
    pub x: f64,
}

/// All distinct `D_A` reachable by assigning each factor to `A` or `B`,
/// sorted by `x`. Either side may be trivial.
pub fn splits(factors: &[usize]) -> Vec<Split> {
    let d_ab: usize = factors.iter().product();
    let mut d_as: Vec<usize> = (0u32..1 << factors.len())
        .map(|mask| {
            factors
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, f)| f)
                .product()
        })
        .collect();
    d_as.sort_unstable();
    d_as.dedup();
    d_as.into_iter()
        .map(|d_a| {
            let d_b = d_ab / d_a;
            Split { d_a, d_b, x: 0.5 * (d_a as f64 / d_b as f64).log2() }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScrambleRow {
    pub split: Split,
    pub draw: usize,
    pub result: Qpid64,
}

/// One scrambled state per `(split, draw)`; rows in split then draw order.
pub fn run_scramble(params: &ScrambleParams, seed: u64, variant: Variant) -> Result<Vec<ScrambleRow>> {
    let root = RandomSource::new(seed);
    let splits = splits(&params.factors);
    let tasks: Vec<(Split, usize)> = splits
        .iter()
        .flat_map(|&s| (0..params.draws).map(move |d| (s, d)))
        .collect();
    tasks
        .par_iter()
        .enumerate()
        .map(|(i, &(split, draw))| {
            let mut rng = root.derive(i as u64);
            let layout = HilbertLayout::new([(SOURCE_A, split.d_a), (SOURCE_B, split.d_b)])?;
            let psi = scrambled_state::<f64>(params.d_t, &layout, &mut rng)?;
            let result = qpid_decompose_pure(&psi, variant)?;
            Ok(ScrambleRow { split, draw, result })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DarwinismRow {
    pub m_a: usize,
    pub result: Qpid64,
}

/// Sweep `m_a = 1..=n` with `m_b = n − m_a`.
pub fn run_darwinism(params: &DarwinismParams, variant: Variant) -> Result<Vec<DarwinismRow>> {
    (1..=params.n)
        .into_par_iter()
        .map(|m_a| {
            let state = Branch64::darwinism(params.p, params.s, m_a, params.n - m_a)?;
            let result = match params.engine {
                Engine::Branch => state.qpid(variant)?,
                Engine::Dense => qpid_decompose_pure(&state.to_dense()?, variant)?,
            };
            Ok(DarwinismRow { m_a, result })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoolingOutcome {
    pub bonuses: Vec<Bonus<f64>>,
}

impl PoolingOutcome {
    /// Number of samples with `B_Q1 ≤ B_Q0`.
    pub fn count_b1_not_above_b0(&self) -> usize {
        self.bonuses.iter().filter(|b| b.bq1 <= b.bq0).count()
    }

    pub fn fraction(&self) -> f64 {
        self.count_b1_not_above_b0() as f64 / self.bonuses.len() as f64
    }
}

/// Bonuses of random three-party states with equal local dimensions.
pub fn run_pooling(params: &PoolingParams, seed: u64, variant: Variant) -> Result<PoolingOutcome> {
    let d = params.system.local_dim();
    let root = RandomSource::new(seed);
    let bonuses = (0..params.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = root.derive(i as u64);
            let layout = HilbertLayout::new([(TARGET, d), (SOURCE_A, d), (SOURCE_B, d)])?;
            Ok(match params.kind {
                StateKind::Pure => quantum_bonus_pure(&random_pure::<f64>(layout, &mut rng)?, variant)?,
                StateKind::Mixed => {
                    let env = layout.total_dim();
                    quantum_bonus(&random_mixed::<f64>(layout, env, &mut rng)?, variant)?
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PoolingOutcome { bonuses })
}
