use std::ops::Deref;

use nalgebra::{DMatrix, DVector};

use super::layout::HilbertLayout;
use super::spectral;
use crate::error::{Error, Result};
use crate::scalar::{Real, C};

/// Hermitian matrix tagged with the tensor structure it acts on.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator<T: Real> {
    matrix: DMatrix<C<T>>,
    layout: HilbertLayout,
}

impl<T: Real> HermitianOperator<T> {
    /// Validates shape and Hermiticity (`‖M − M†‖_F ≤ tol·‖M‖_F`), then stores
    /// the exactly symmetrized matrix.
    pub fn new(matrix: DMatrix<C<T>>, layout: HilbertLayout) -> Result<Self> {
        check_shape(&matrix, &layout)?;
        let norm = matrix.norm();
        let asym = (&matrix - matrix.adjoint()).norm();
        if !(asym <= T::default_check_tol() * norm) {
            let rel = if norm > T::zero() { asym / norm } else { asym };
            return Err(Error::NotHermitian(rel.as_f64()));
        }
        Ok(Self::from_raw(matrix, layout))
    }

    /// Symmetrizes without validation; for matrices Hermitian by construction.
    pub(crate) fn from_raw(matrix: DMatrix<C<T>>, layout: HilbertLayout) -> Self {
        debug_assert_eq!(matrix.nrows(), layout.total_dim());
        let half = C::new(T::lit(0.5), T::zero());
        let matrix = (&matrix + matrix.adjoint()) * half;
        Self { matrix, layout }
    }

    pub fn identity(layout: HilbertLayout) -> Self {
        let d = layout.total_dim();
        Self {
            matrix: DMatrix::identity(d, d),
            layout,
        }
    }

    pub fn zeros(layout: HilbertLayout) -> Self {
        let d = layout.total_dim();
        Self {
            matrix: DMatrix::zeros(d, d),
            layout,
        }
    }

    pub fn from_real_diagonal(diag: &[T], layout: HilbertLayout) -> Result<Self> {
        let m = DMatrix::from_diagonal(&DVector::from_iterator(
            diag.len(),
            diag.iter().map(|&x| C::new(x, T::zero())),
        ));
        check_shape(&m, &layout)?;
        Ok(Self { matrix: m, layout })
    }

    pub fn matrix(&self) -> &DMatrix<C<T>> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<C<T>> {
        self.matrix
    }

    pub fn layout(&self) -> &HilbertLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> T {
        self.matrix.trace().re
    }

    /// `Tr(self · other)`, real for Hermitian arguments.
    pub fn trace_product(&self, other: &Self) -> T {
        // Tr(AB) = Σ_ij A_ij B_ji = Σ_ij A_ij conj(B_ij) for Hermitian B.
        self.matrix
            .iter()
            .zip(other.matrix.iter())
            .fold(T::zero(), |acc, (a, b)| acc + (a * b.conj()).re)
    }

    /// Frobenius norm of the difference.
    pub fn distance(&self, other: &Self) -> T {
        (&self.matrix - &other.matrix).norm()
    }

    pub fn with_layout(self, layout: HilbertLayout) -> Result<Self> {
        check_shape(&self.matrix, &layout)?;
        Ok(Self {
            matrix: self.matrix,
            layout,
        })
    }

    /// `U · self · U†` for a matrix `U` of matching size.
    pub fn conjugate_by(&self, u: &DMatrix<C<T>>) -> Self {
        Self::from_raw(u * &self.matrix * u.adjoint(), self.layout.clone())
    }

    pub fn eigenvalues(&self) -> DVector<T> {
        spectral::eigh(&self.matrix).values
    }
}

fn check_shape<T: Real>(m: &DMatrix<C<T>>, layout: &HilbertLayout) -> Result<()> {
    if !m.is_square() {
        return Err(Error::LayoutMismatch(format!(
            "matrix is {}×{}, not square",
            m.nrows(),
            m.ncols()
        )));
    }
    if m.nrows() != layout.total_dim() {
        return Err(Error::LayoutMismatch(format!(
            "matrix side {} ≠ layout dimension {} of {layout}",
            m.nrows(),
            layout.total_dim()
        )));
    }
    Ok(())
}

/// Unit-trace positive semidefinite Hermitian operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator<T: Real>(HermitianOperator<T>);

impl<T: Real> DensityOperator<T> {
    pub fn new(matrix: DMatrix<C<T>>, layout: HilbertLayout) -> Result<Self> {
        Self::from_operator(HermitianOperator::new(matrix, layout)?)
    }

    pub fn from_operator(op: HermitianOperator<T>) -> Result<Self> {
        let tol = T::default_check_tol();
        let tr = op.trace();
        if !((tr - T::one()).abs() <= tol) {
            return Err(Error::NotDensity(format!("trace {tr}")));
        }
        let min = op.eigenvalues().min();
        if min < -tol {
            return Err(Error::NotDensity(format!("eigenvalue {min:e}")));
        }
        Ok(Self(op))
    }

    /// Skips validation; for states that are density operators by construction
    /// (partial traces, convex mixtures, `ΨΨ†`).
    pub(crate) fn from_operator_unchecked(op: HermitianOperator<T>) -> Self {
        Self(op)
    }

    pub fn maximally_mixed(layout: HilbertLayout) -> Self {
        let d = T::from_usize(layout.total_dim()).unwrap();
        let mut op = HermitianOperator::identity(layout);
        op.matrix /= C::new(d, T::zero());
        Self(op)
    }

    pub fn operator(&self) -> &HermitianOperator<T> {
        &self.0
    }

    pub fn into_operator(self) -> HermitianOperator<T> {
        self.0
    }

    /// Tensor product `self ⊗ other` with concatenated layouts.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let layout = HilbertLayout::new(
            self.layout()
                .labels()
                .iter()
                .chain(other.layout().labels())
                .cloned()
                .zip(self.layout().dims().iter().chain(other.layout().dims()).copied()),
        )?;
        let m = self.matrix().kronecker(other.matrix());
        Ok(Self(HermitianOperator::from_raw(m, layout)))
    }

    pub fn relabel(&self, from: &str, to: &str) -> Result<Self> {
        let layout = self.layout().relabel(from, to)?;
        Ok(Self(self.0.clone().with_layout(layout)?))
    }
}

impl<T: Real> Deref for DensityOperator<T> {
    type Target = HermitianOperator<T>;
    fn deref(&self) -> &Self::Target {
        &self.0
    }
}

/// Normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T: Real> {
    amplitudes: DVector<C<T>>,
    layout: HilbertLayout,
}

impl<T: Real> PureState<T> {
    /// Requires `|‖v‖² − 1| ≤ 1e-12` (scaled for lower-precision types).
    pub fn new(amplitudes: DVector<C<T>>, layout: HilbertLayout) -> Result<Self> {
        if amplitudes.len() != layout.total_dim() {
            return Err(Error::LayoutMismatch(format!(
                "{} amplitudes for layout {layout}",
                amplitudes.len()
            )));
        }
        let n2 = amplitudes.norm_squared();
        let tol = T::default_check_tol() * T::lit(1e-2);
        if !((n2 - T::one()).abs() <= tol) {
            return Err(Error::NotNormalized(n2.as_f64()));
        }
        Ok(Self { amplitudes, layout })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(amplitudes: DVector<C<T>>, layout: HilbertLayout) -> Result<Self> {
        let n = amplitudes.norm();
        if !(n > T::zero()) {
            return Err(Error::NotNormalized(n.as_f64()));
        }
        Self::new(amplitudes / C::new(n, T::zero()), layout)
    }

    pub fn amplitudes(&self) -> &DVector<C<T>> {
        &self.amplitudes
    }

    pub fn layout(&self) -> &HilbertLayout {
        &self.layout
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn to_density(&self) -> DensityOperator<T> {
        let m = &self.amplitudes * self.amplitudes.adjoint();
        DensityOperator(HermitianOperator::from_raw(m, self.layout.clone()))
    }

    /// Coefficient matrix `Ψ[i, k]` with `i` running over the kept factors and
    /// `k` over the rest, both in layout order.
    pub(crate) fn bipartition(&self, keep: &[&str]) -> Result<(HilbertLayout, DMatrix<C<T>>)> {
        let kp = self.layout.positions_sorted(keep)?;
        if kp.is_empty() {
            return Err(Error::Layout("empty subsystem selection".into()));
        }
        let rest: Vec<usize> = (0..self.layout.len()).filter(|p| !kp.contains(p)).collect();
        let ok = self.layout.offsets(&kp);
        let or = self.layout.offsets(&rest);
        let m = DMatrix::from_fn(ok.len(), or.len(), |i, k| self.amplitudes[ok[i] + or[k]]);
        Ok((self.layout.subset_at(&kp), m))
    }

    /// Reduced state on `keep`, computed as `ΨΨ†` without forming `|ψ⟩⟨ψ|`.
    pub fn reduced(&self, keep: &[&str]) -> Result<DensityOperator<T>> {
        let (layout, m) = self.bipartition(keep)?;
        let rho = &m * m.adjoint();
        Ok(DensityOperator(HermitianOperator::from_raw(rho, layout)))
    }

    pub fn apply(&self, u: &DMatrix<C<T>>) -> Result<Self> {
        Self::normalized(u * &self.amplitudes, self.layout.clone())
    }
}
