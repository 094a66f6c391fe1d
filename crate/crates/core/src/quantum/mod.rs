//! Quantum information measures and the quantum decomposition.
//!
//! States passed to the decomposition routines must have exactly the
//! subsystems labelled [`TARGET`](crate::TARGET), [`SOURCE_A`](crate::SOURCE_A)
//! and [`SOURCE_B`](crate::SOURCE_B), in any order.

mod conditional;
mod decompose;
mod info;

pub use conditional::{conditional_state, conditional_state_with, ConditionalOperator};
pub use decompose::{
    qpid_decompose, qpid_decompose_pure, qpid_decompose_pure_with, qpid_decompose_with,
    quantum_bonus, quantum_bonus_pure, z_operator, Bonus, QpidResult, Variant, SUPPORT_LEAK_TOL,
};
pub use info::{computational_basis_povm, measured_mutual_information, quantum_mutual_information};
