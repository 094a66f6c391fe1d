use super::table::{ProbabilityTable, Var};
use crate::error::{Error, Result};
use crate::scalar::{neg_xlog2x, Real};

/// Probabilities below this are exact zeros when conditioning.
const ZERO_PROB: f64 = 1e-15;

fn zero_floor<T: Real>() -> T {
    T::lit(ZERO_PROB)
}

/// Joint Shannon entropy `H(vars)` in bits.
pub fn shannon_entropy<T: Real>(table: &ProbabilityTable<T>, vars: &[Var]) -> T {
    if vars.is_empty() {
        return T::zero();
    }
    let floor = zero_floor::<T>();
    table
        .marginal(vars)
        .into_iter()
        .filter(|&p| p > floor)
        .fold(T::zero(), |acc, p| acc + neg_xlog2x(p))
}

/// `H(x | given) = H(x ∪ given) − H(given)`.
pub fn conditional_entropy<T: Real>(table: &ProbabilityTable<T>, x: &[Var], given: &[Var]) -> T {
    let joint: Vec<Var> = x.iter().chain(given).copied().collect();
    shannon_entropy(table, &joint) - shannon_entropy(table, given)
}

/// `I(x; y) = H(x) + H(y) − H(x, y)` for disjoint nonempty variable sets.
pub fn mutual_information<T: Real>(table: &ProbabilityTable<T>, x: &[Var], y: &[Var]) -> Result<T> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::Parameter("empty variable set".into()));
    }
    if x.iter().any(|v| y.contains(v)) {
        return Err(Error::Overlap);
    }
    let joint: Vec<Var> = x.iter().chain(y).copied().collect();
    Ok(shannon_entropy(table, x) + shannon_entropy(table, y) - shannon_entropy(table, &joint))
}

/// `P(t | source = symbol)` as a vector over `t`.
pub fn conditional_target<T: Real>(
    table: &ProbabilityTable<T>,
    source: Var,
    symbol: usize,
) -> Result<Vec<T>> {
    if source == Var::T {
        return Err(Error::Parameter("conditioning on the target itself".into()));
    }
    if symbol >= table.size(source) {
        return Err(Error::Parameter(format!(
            "symbol {symbol} outside the alphabet of {}",
            source.name()
        )));
    }
    let joint = table.marginal(&[Var::T, source]);
    let ns = table.size(source);
    let col: Vec<T> = (0..table.size(Var::T)).map(|t| joint[t * ns + symbol]).collect();
    let total = col.iter().fold(T::zero(), |a, &b| a + b);
    let floor = zero_floor::<T>();
    if total <= floor {
        return Err(Error::ZeroProbability {
            var: source.name(),
            symbol,
        });
    }
    Ok(col
        .into_iter()
        .map(|p| if p <= floor { T::zero() } else { p / total })
        .collect())
}

/// Bhattacharyya overlap `Z_ab = Σ_t √P(t|a) √P(t|b)`.
pub fn bhattacharyya_overlap<T: Real>(table: &ProbabilityTable<T>, a: usize, b: usize) -> Result<T> {
    let pa = conditional_target(table, Var::A, a)?;
    let pb = conditional_target(table, Var::B, b)?;
    Ok(overlap(&pa, &pb))
}

fn overlap<T: Real>(pa: &[T], pb: &[T]) -> T {
    pa.iter()
        .zip(pb)
        .fold(T::zero(), |acc, (&x, &y)| acc + (x * y).sqrt())
        .min(T::one())
}

/// Logarithmically pooled distribution `√P(t|a) √P(t|b) / Z_ab`.
pub fn pooled_distribution<T: Real>(table: &ProbabilityTable<T>, a: usize, b: usize) -> Result<Vec<T>> {
    let pa = conditional_target(table, Var::A, a)?;
    let pb = conditional_target(table, Var::B, b)?;
    let z = overlap(&pa, &pb);
    if z <= T::zero() {
        return Err(Error::Parameter(format!(
            "P(t|a={a}) and P(t|b={b}) have disjoint supports"
        )));
    }
    Ok(pa.iter().zip(&pb).map(|(&x, &y)| (x * y).sqrt() / z).collect())
}

/// All quantities of the three-variable decomposition, in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PidResult<T> {
    pub i_ta: T,
    pub i_tb: T,
    pub i_tab: T,
    /// Bonus from picking the lower-entropy conditional.
    pub b0: T,
    /// Bonus from logarithmic pooling.
    pub b1: T,
    pub b: T,
    pub unique_a: T,
    pub unique_b: T,
    pub redundant: T,
    pub synergy: T,
}

impl<T: Real> PidResult<T> {
    /// Fills in the decomposition from the three mutual informations, the
    /// two bonuses and the conditional-entropy asymmetry
    /// `H(T|B) − H(T|A) = I(T;A) − I(T;B)`.
    pub(crate) fn assemble(i_ta: T, i_tb: T, i_tab: T, b0: T, b1: T) -> Self {
        let half = T::lit(0.5);
        let b = b0.max(b1);
        let unique_a = b + half * (i_ta - i_tb);
        let unique_b = b + half * (i_tb - i_ta);
        let redundant = i_ta - unique_a;
        let synergy = i_tab - unique_a - unique_b - redundant;
        Self {
            i_ta,
            i_tb,
            i_tab,
            b0,
            b1,
            b,
            unique_a,
            unique_b,
            redundant,
            synergy,
        }
    }

    /// Field names paired with values, in declaration order.
    pub fn fields(&self) -> [(&'static str, T); 10] {
        [
            ("i_ta", self.i_ta),
            ("i_tb", self.i_tb),
            ("i_tab", self.i_tab),
            ("b0", self.b0),
            ("b1", self.b1),
            ("b", self.b),
            ("unique_a", self.unique_a),
            ("unique_b", self.unique_b),
            ("redundant", self.redundant),
            ("synergy", self.synergy),
        ]
    }
}

/// `B₁ = −Σ_ab P(a,b) log₂ Z_ab` over pairs with positive joint weight.
pub fn pooling_bonus<T: Real>(table: &ProbabilityTable<T>) -> T {
    let (na, nb) = (table.size(Var::A), table.size(Var::B));
    let pab = table.marginal(&[Var::A, Var::B]);
    let floor = zero_floor::<T>();
    let cond_a: Vec<Option<Vec<T>>> = (0..na)
        .map(|a| conditional_target(table, Var::A, a).ok())
        .collect();
    let cond_b: Vec<Option<Vec<T>>> = (0..nb)
        .map(|b| conditional_target(table, Var::B, b).ok())
        .collect();
    let mut acc = T::zero();
    for a in 0..na {
        for b in 0..nb {
            let w = pab[a * nb + b];
            if w <= floor {
                continue;
            }
            if let (Some(pa), Some(pb)) = (&cond_a[a], &cond_b[b]) {
                acc -= w * overlap(pa, pb).log2();
            }
        }
    }
    acc.max(T::zero())
}

/// Full classical decomposition of `P(T, A, B)`.
pub fn pid_decompose<T: Real>(table: &ProbabilityTable<T>) -> PidResult<T> {
    let h_t_given_a = conditional_entropy(table, &[Var::T], &[Var::A]);
    let h_t_given_b = conditional_entropy(table, &[Var::T], &[Var::B]);
    let h_t = shannon_entropy(table, &[Var::T]);
    let i_ta = h_t - h_t_given_a;
    let i_tb = h_t - h_t_given_b;
    let i_tab = h_t - conditional_entropy(table, &[Var::T], &[Var::A, Var::B]);
    let b0 = T::lit(0.5) * (h_t_given_a - h_t_given_b).abs();
    let b1 = pooling_bonus(table);
    PidResult::assemble(i_ta, i_tb, i_tab, b0, b1)
}

/// `I(T;A,B) − I(T;A) − I(T;B)`, which equals synergy minus redundancy.
pub fn interaction_gap<T: Real>(table: &ProbabilityTable<T>) -> T {
    let i = |x: &[Var]| mutual_information(table, &[Var::T], x).expect("disjoint");
    i(&[Var::A, Var::B]) - i(&[Var::A]) - i(&[Var::B])
}
