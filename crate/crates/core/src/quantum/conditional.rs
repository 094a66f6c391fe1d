use crate::error::Result;
use crate::linalg::{
    eigh, hermitian_power_with, partial_trace, power_of_spectrum, sandwich_factor,
    DensityOperator, HermitianOperator, HilbertLayout, Spectrum,
};
use crate::scalar::{Real, Tolerances};

/// Quantum conditional operator `ρ_{X|c} = (1 ⊗ ρ_c^{−1/2}) ρ (1 ⊗ ρ_c^{−1/2})`.
///
/// PSD, but not a density operator: its trace is the rank of `ρ_c` and its
/// eigenvalues may exceed 1 when `ρ` is entangled across the cut.
#[derive(Debug, Clone)]
pub struct ConditionalOperator<T: Real> {
    op: HermitianOperator<T>,
    condition: String,
}

impl<T: Real> ConditionalOperator<T> {
    pub fn operator(&self) -> &HermitianOperator<T> {
        &self.op
    }

    pub fn layout(&self) -> &HilbertLayout {
        self.op.layout()
    }

    /// Label of the subsystem conditioned on.
    pub fn condition(&self) -> &str {
        &self.condition
    }

    pub fn spectrum(&self) -> Spectrum<T> {
        eigh(self.op.matrix())
    }

    /// Moore–Penrose power of the operator.
    pub fn power(&self, exponent: T, tol: &Tolerances<T>) -> Result<HermitianOperator<T>> {
        hermitian_power_with(&self.op, exponent, tol)
    }

    /// Several powers from a single eigendecomposition.
    pub fn powers<const N: usize>(
        &self,
        exponents: [T; N],
        tol: &Tolerances<T>,
    ) -> Result<[HermitianOperator<T>; N]> {
        let eig = self.spectrum();
        let mut out = Vec::with_capacity(N);
        for p in exponents {
            let m = power_of_spectrum(&eig, p, tol)?;
            out.push(HermitianOperator::from_raw(m, self.layout().clone()));
        }
        Ok(out.try_into().unwrap_or_else(|_| unreachable!()))
    }

    /// Trace over everything but the conditioning factor; equals the support
    /// projector of `ρ_c`.
    pub fn conditioning_marginal(&self) -> Result<HermitianOperator<T>> {
        partial_trace(&self.op, &[self.condition.as_str()])
    }
}

/// Conditions `rho` on the subsystem `condition` (Moore–Penrose inverse on the
/// kernel of the marginal).
pub fn conditional_state<T: Real>(
    rho: &DensityOperator<T>,
    condition: &str,
) -> Result<ConditionalOperator<T>> {
    conditional_state_with(rho, condition, &Tolerances::default())
}

pub fn conditional_state_with<T: Real>(
    rho: &DensityOperator<T>,
    condition: &str,
    tol: &Tolerances<T>,
) -> Result<ConditionalOperator<T>> {
    let pos = rho.layout().position(condition)?;
    let marginal = rho.reduce(&[condition])?;
    let inv_sqrt = hermitian_power_with(&marginal, T::lit(-0.5), tol)?;
    let m = if rho.layout().len() == 1 {
        inv_sqrt.matrix() * rho.matrix() * inv_sqrt.matrix()
    } else {
        sandwich_factor(rho.matrix(), rho.layout(), pos, inv_sqrt.matrix())
    };
    Ok(ConditionalOperator {
        op: HermitianOperator::from_raw(m, rho.layout().clone()),
        condition: condition.to_string(),
    })
}
