//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use nalgebra::{Complex, DMatrix, RealField};
use num_traits::{FromPrimitive, ToPrimitive};

/// Real floating-point scalar the library can be instantiated with.
///
/// Implemented for `f32` and `f64`. Each implementation carries its own
/// default numerical tolerances since eigensolver noise scales with the
/// machine epsilon of the type.
pub trait Real:
    RealField + Copy + FromPrimitive + ToPrimitive + Display + LowerExp + Debug + Send + Sync + 'static
{
    /// Relative eigenvalue cutoff below which an eigenvalue counts as kernel.
    fn default_rank_tol() -> Self;
    /// Relative tolerance on negative eigenvalues of nominally PSD input.
    fn default_psd_tol() -> Self;
    /// Generic validation slack (Hermiticity, trace, norm checks).
    fn default_check_tol() -> Self;

    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal fits in every Real type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("Real converts to f64")
    }

    /// Eigenvalues (ascending) and eigenvectors (columns) of a Hermitian
    /// matrix; only the lower triangle is read.
    fn hermitian_eigen(m: &DMatrix<Complex<Self>>) -> (Vec<Self>, DMatrix<Complex<Self>>);
}

// nalgebra's complex `SymmetricEigen` yields NaN when a Householder column
// starts with an exact zero, which the structured states here hit routinely.
macro_rules! faer_hermitian_eigen {
    ($t:ty) => {
        fn hermitian_eigen(m: &DMatrix<Complex<$t>>) -> (Vec<$t>, DMatrix<Complex<$t>>) {
            let n = m.nrows();
            let a = faer::Mat::<Complex<$t>>::from_fn(n, n, |i, j| m[(i, j)]);
            let evd = a
                .self_adjoint_eigen(faer::Side::Lower)
                .expect("Hermitian eigendecomposition did not converge");
            let s = evd.S().column_vector();
            let u = evd.U();
            let values = (0..n).map(|i| s[i].re).collect();
            let vectors = DMatrix::from_fn(n, n, |i, j| u[(i, j)]);
            (values, vectors)
        }
    };
}

impl Real for f64 {
    faer_hermitian_eigen!(f64);

    fn default_rank_tol() -> Self {
        1e-12
    }
    fn default_psd_tol() -> Self {
        1e-9
    }
    fn default_check_tol() -> Self {
        1e-10
    }
}

impl Real for f32 {
    faer_hermitian_eigen!(f32);

    fn default_rank_tol() -> Self {
        1e-5
    }
    fn default_psd_tol() -> Self {
        1e-4
    }
    fn default_check_tol() -> Self {
        1e-4
    }
}

/// Complex scalar over a [`Real`].
pub type C<T> = Complex<T>;

/// Numerical tolerances used by spectral routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T> {
    /// Eigenvalues `λ ≤ rank · λ_max` are treated as exactly zero.
    pub rank: T,
    /// Eigenvalues below `-psd · λ_max` make an operator "not PSD".
    pub psd: T,
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        Self {
            rank: T::default_rank_tol(),
            psd: T::default_psd_tol(),
        }
    }
}

/// `log₂` with the `0·log 0 = 0` convention folded in: returns `-x log₂ x`.
#[inline]
pub(crate) fn neg_xlog2x<T: Real>(x: T) -> T {
    if x <= T::zero() {
        T::zero()
    } else {
        -x * x.log2()
    }
}
