//! Spectral calculus on Hermitian operators.
//!
//! Every matrix function here goes through a dense Hermitian eigendecomposition.
//! Eigenvalues at or below `rank · λ_max` are treated as exact zeros, which
//! gives Moore–Penrose semantics for negative powers and a "log on support"
//! for the logarithm.

use nalgebra::{DMatrix, DVector};

use super::operator::{DensityOperator, HermitianOperator};
use crate::error::{Error, Result};
use crate::scalar::{neg_xlog2x, Real, Tolerances, C};

/// Eigenvalues (ascending) and matching orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct Spectrum<T: Real> {
    pub values: DVector<T>,
    pub vectors: DMatrix<C<T>>,
}

impl<T: Real> Spectrum<T> {
    pub fn max(&self) -> T {
        self.values.iter().copied().fold(T::zero(), |a, b| a.max(b))
    }

    /// Rebuilds `Σ f(λ) |v⟩⟨v|`.
    pub fn recompose(&self, f: impl Fn(T) -> T) -> DMatrix<C<T>> {
        let mut scaled = self.vectors.clone();
        for (j, &lam) in self.values.iter().enumerate() {
            let w = f(lam);
            scaled.column_mut(j).scale_mut(w);
        }
        scaled * self.vectors.adjoint()
    }

    /// Validates the PSD condition and returns the kernel cutoff `rank · λ_max`.
    fn psd_cutoff(&self, tol: &Tolerances<T>) -> Result<T> {
        let max = self.max();
        let min = self.values.iter().copied().fold(T::zero(), |a, b| a.min(b));
        if min < -tol.psd * max || (max <= T::zero() && min < T::zero()) {
            return Err(Error::NotPsd {
                min: min.as_f64(),
                max: max.as_f64(),
            });
        }
        Ok(tol.rank * max)
    }
}

/// Dense Hermitian eigendecomposition with ascending eigenvalues.
pub fn eigh<T: Real>(m: &DMatrix<C<T>>) -> Spectrum<T> {
    if m.nrows() == 0 {
        return Spectrum {
            values: DVector::zeros(0),
            vectors: DMatrix::zeros(0, 0),
        };
    }
    let (values, vectors) = T::hermitian_eigen(m);
    Spectrum {
        values: DVector::from_vec(values),
        vectors,
    }
}

/// `op^exponent` on the support of a PSD operator, zero on its kernel.
pub fn hermitian_power<T: Real>(
    op: &HermitianOperator<T>,
    exponent: T,
) -> Result<HermitianOperator<T>> {
    hermitian_power_with(op, exponent, &Tolerances::default())
}

pub fn hermitian_power_with<T: Real>(
    op: &HermitianOperator<T>,
    exponent: T,
    tol: &Tolerances<T>,
) -> Result<HermitianOperator<T>> {
    let eig = eigh(op.matrix());
    let m = power_of_spectrum(&eig, exponent, tol)?;
    Ok(HermitianOperator::from_raw(m, op.layout().clone()))
}

pub(crate) fn power_of_spectrum<T: Real>(
    eig: &Spectrum<T>,
    exponent: T,
    tol: &Tolerances<T>,
) -> Result<DMatrix<C<T>>> {
    let cut = eig.psd_cutoff(tol)?;
    Ok(eig.recompose(|l| {
        if l <= cut || l <= T::zero() {
            T::zero()
        } else {
            l.powf(exponent)
        }
    }))
}

/// Matrix logarithm (base 2) restricted to the support of a PSD operator.
#[derive(Debug, Clone)]
pub struct SupportLog<T: Real> {
    /// `Σ_{λ>cut} log₂ λ |v⟩⟨v|`.
    pub log: HermitianOperator<T>,
    /// Projector onto the eigenvectors with `λ > cut`.
    pub support: HermitianOperator<T>,
}

pub fn operator_log_on_support<T: Real>(op: &HermitianOperator<T>) -> Result<SupportLog<T>> {
    operator_log_on_support_with(op, &Tolerances::default())
}

pub fn operator_log_on_support_with<T: Real>(
    op: &HermitianOperator<T>,
    tol: &Tolerances<T>,
) -> Result<SupportLog<T>> {
    let eig = eigh(op.matrix());
    let cut = eig.psd_cutoff(tol)?;
    let on = |l: T| l > cut && l > T::zero();
    let log = eig.recompose(|l| if on(l) { l.log2() } else { T::zero() });
    let support = eig.recompose(|l| if on(l) { T::one() } else { T::zero() });
    Ok(SupportLog {
        log: HermitianOperator::from_raw(log, op.layout().clone()),
        support: HermitianOperator::from_raw(support, op.layout().clone()),
    })
}

/// Projector onto the support of a PSD operator.
pub fn support_projector<T: Real>(
    op: &HermitianOperator<T>,
    tol: &Tolerances<T>,
) -> Result<HermitianOperator<T>> {
    let eig = eigh(op.matrix());
    let cut = eig.psd_cutoff(tol)?;
    let m = eig.recompose(|l| if l > cut && l > T::zero() { T::one() } else { T::zero() });
    Ok(HermitianOperator::from_raw(m, op.layout().clone()))
}

/// `-Σ λ log₂ λ` over a spectrum, with clamping of tiny negative noise.
pub fn entropy_of_spectrum<T: Real>(values: impl IntoIterator<Item = T>) -> T {
    values
        .into_iter()
        .fold(T::zero(), |acc, l| acc + neg_xlog2x(l))
}

/// Von Neumann entropy `S(ρ) = −Tr ρ log₂ ρ` in bits.
pub fn von_neumann_entropy<T: Real>(rho: &DensityOperator<T>) -> T {
    entropy_of_spectrum(eigh(rho.matrix()).values.iter().copied()).max(T::zero())
}

/// Entropy of an operator that is known to be a density matrix up to
/// rounding, without the density validation.
pub(crate) fn entropy_of_matrix<T: Real>(m: &DMatrix<C<T>>) -> T {
    entropy_of_spectrum(eigh(m).values.iter().copied()).max(T::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::HilbertLayout;

    fn diag(vals: &[f64]) -> HermitianOperator<f64> {
        let l = HilbertLayout::single("X", vals.len()).unwrap();
        HermitianOperator::from_real_diagonal(vals, l).unwrap()
    }

    fn real_diag(op: &HermitianOperator<f64>) -> Vec<f64> {
        (0..op.dim()).map(|i| op.matrix()[(i, i)].re).collect()
    }

    #[test]
    fn identity_power_is_identity() {
        let id = HermitianOperator::<f64>::identity(HilbertLayout::single("X", 3).unwrap());
        for p in [-1.0, -0.5, 0.25, 2.0] {
            let r = hermitian_power(&id, p).unwrap();
            assert!(r.distance(&id) < 1e-14);
        }
    }

    #[test]
    fn inverse_square_root_is_zero_on_kernel() {
        let r = hermitian_power(&diag(&[4.0, 0.0]), -0.5).unwrap();
        let d = real_diag(&r);
        assert!((d[0] - 0.5).abs() < 1e-15);
        assert_eq!(d[1], 0.0);
    }

    #[test]
    fn tiny_eigenvalues_are_kernel() {
        let r = hermitian_power(&diag(&[1.0, 1e-14, -1e-11]), -1.0).unwrap();
        let d = real_diag(&r);
        assert!((d[0] - 1.0).abs() < 1e-14);
        assert!(d[1].abs() < 1e-14 && d[2].abs() < 1e-14);
    }

    #[test]
    fn negative_eigenvalue_is_rejected() {
        assert!(matches!(
            hermitian_power(&diag(&[1.0, -0.1]), 0.5),
            Err(Error::NotPsd { .. })
        ));
    }

    #[test]
    fn log_on_support_examples() {
        let id = diag(&[1.0, 1.0]);
        let s = operator_log_on_support(&id).unwrap();
        assert!(s.log.matrix().norm() < 1e-15);
        assert!(s.support.distance(&id) < 1e-15);

        let s = operator_log_on_support(&diag(&[2.0, 1.0])).unwrap();
        let d = real_diag(&s.log);
        assert!((d[0] - 1.0).abs() < 1e-15 && d[1].abs() < 1e-15);

        let s = operator_log_on_support(&diag(&[0.5, 0.0])).unwrap();
        assert_eq!(real_diag(&s.log), vec![-1.0, 0.0]);
        assert_eq!(real_diag(&s.support), vec![1.0, 0.0]);
    }

    #[test]
    fn entropy_of_maximally_mixed() {
        for d in 1..6 {
            let rho = DensityOperator::<f64>::maximally_mixed(HilbertLayout::single("X", d).unwrap());
            assert!((von_neumann_entropy(&rho) - (d as f64).log2()).abs() < 1e-12);
        }
    }
}
