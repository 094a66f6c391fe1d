//! Classical partial information decomposition over finite joint distributions.

mod pid;
mod table;

pub use pid::{
    bhattacharyya_overlap, conditional_entropy, conditional_target, interaction_gap,
    mutual_information, pid_decompose, pooled_distribution, pooling_bonus, shannon_entropy,
    PidResult,
};
pub use table::{ProbabilityTable, Var};
