//! Dense Hermitian linear algebra on multipartite Hilbert spaces.

mod layout;
mod operator;
pub mod spectral;
mod tensor;

pub use layout::HilbertLayout;
pub use operator::{DensityOperator, HermitianOperator, PureState};
pub use spectral::{
    eigh, entropy_of_spectrum, hermitian_power, hermitian_power_with, operator_log_on_support,
    operator_log_on_support_with, support_projector, von_neumann_entropy, Spectrum, SupportLog,
};
pub use tensor::{embed, partial_trace, star_product, star_product_with};

pub(crate) use spectral::{entropy_of_matrix, power_of_spectrum};
pub(crate) use tensor::sandwich_factor;
