//! State constructors and seeded random ensembles.

use nalgebra::{ComplexField, DMatrix, DVector};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::branch::BranchState;
use crate::classical::ProbabilityTable;
use crate::error::{Error, Result};
use crate::linalg::{DensityOperator, HermitianOperator, HilbertLayout, PureState};
use crate::scalar::{Real, C};
use crate::{SOURCE_A, SOURCE_B, TARGET};

/// Reproducible random stream: a ChaCha20 generator keyed by `(seed, stream)`.
///
/// Identical `(seed, stream)` pairs yield identical draws on every platform.
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    stream: u64,
    rng: ChaCha20Rng,
}

impl RandomSource {
    pub const ALGORITHM: &'static str = "chacha20";

    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { seed, stream, rng }
    }

    /// Independent stream for task `index` under the same seed.
    pub fn derive(&self, index: u64) -> Self {
        Self::with_stream(self.seed, index)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn algorithm(&self) -> &'static str {
        Self::ALGORITHM
    }

    pub fn normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }

    /// Standard complex Gaussian, `E|z|² = 1`.
    pub fn complex_normal<T: Real>(&mut self) -> C<T> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let re = self.normal() * s;
        let im = self.normal() * s;
        C::new(T::lit(re), T::lit(im))
    }

    /// Ginibre matrix of i.i.d. standard complex Gaussians, filled row-major.
    pub fn ginibre<T: Real>(&mut self, rows: usize, cols: usize) -> DMatrix<C<T>> {
        let data: Vec<C<T>> = (0..rows * cols).map(|_| self.complex_normal()).collect();
        DMatrix::from_row_slice(rows, cols, &data)
    }
}

impl RngCore for RandomSource {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }
    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }
    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// `d × k` matrix with Haar-distributed orthonormal columns: QR of a Ginibre
/// matrix with the phases of `R`'s diagonal moved into `Q`.
pub fn haar_isometry<T: Real>(d: usize, k: usize, rng: &mut RandomSource) -> Result<DMatrix<C<T>>> {
    if d == 0 || k == 0 || k > d {
        return Err(Error::Parameter(format!("isometry of shape {d}×{k}")));
    }
    let z = rng.ginibre::<T>(d, k);
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..k {
        let rjj = r[(j, j)];
        let norm = rjj.modulus();
        if norm > T::zero() {
            let phase = rjj / C::new(norm, T::zero());
            for x in q.column_mut(j).iter_mut() {
                *x *= phase;
            }
        }
    }
    Ok(q)
}

/// Haar-random `d × d` unitary.
pub fn haar_unitary<T: Real>(d: usize, rng: &mut RandomSource) -> Result<DMatrix<C<T>>> {
    haar_isometry(d, d, rng)
}

/// Haar-random pure state on `layout`.
pub fn random_pure<T: Real>(layout: HilbertLayout, rng: &mut RandomSource) -> Result<PureState<T>> {
    let d = layout.total_dim();
    let v = DVector::from_iterator(d, (0..d).map(|_| rng.complex_normal::<T>()));
    PureState::normalized(v, layout)
}

/// Reduced state of a Haar-random pure state on `layout ⊗ C^env_dim`.
///
/// `env_dim` equal to the system dimension gives the Hilbert–Schmidt
/// ensemble; `env_dim = 1` gives pure states.
pub fn random_mixed<T: Real>(
    layout: HilbertLayout,
    env_dim: usize,
    rng: &mut RandomSource,
) -> Result<DensityOperator<T>> {
    if env_dim == 0 {
        return Err(Error::Parameter("environment dimension 0".into()));
    }
    let d = layout.total_dim();
    let g = rng.ginibre::<T>(d, env_dim);
    let mut m = &g * g.adjoint();
    let tr = m.trace().re;
    m /= C::new(tr, T::zero());
    Ok(DensityOperator::from_operator_unchecked(HermitianOperator::from_raw(m, layout)))
}

/// Equal superposition `k^{-1/2} Σ |t⟩|a⟩|b⟩` over the support of a table
/// whose nonzero entries all equal `1/k`.
pub fn superposition_from_table<T: Real>(table: &ProbabilityTable<T>) -> Result<PureState<T>> {
    let support: Vec<[usize; 3]> = table.support().map(|(i, _)| i).collect();
    let k = T::from_usize(support.len()).unwrap();
    let tol = T::default_check_tol() * T::lit(1e-2);
    if table.support().any(|(_, p)| (p * k - T::one()).abs() > tol) {
        return Err(Error::InvalidTable(
            "entries must all be 0 or 1/k for a uniform superposition".into(),
        ));
    }
    let [nt, na, nb] = table.sizes();
    let layout = HilbertLayout::new([(TARGET, nt), (SOURCE_A, na), (SOURCE_B, nb)])?;
    let amp = C::new(T::one() / k.sqrt(), T::zero());
    let mut v = DVector::zeros(layout.total_dim());
    for [t, a, b] in support {
        v[(t * na + a) * nb + b] = amp;
    }
    PureState::normalized(v, layout)
}

/// Diagonal density operator `Σ P(t,a,b) |tab⟩⟨tab|`.
pub fn classical_state<T: Real>(table: &ProbabilityTable<T>) -> Result<DensityOperator<T>> {
    let [nt, na, nb] = table.sizes();
    let layout = HilbertLayout::new([(TARGET, nt), (SOURCE_A, na), (SOURCE_B, nb)])?;
    let diag: Vec<T> = table.iter().map(|(_, p)| p).collect();
    Ok(DensityOperator::from_operator_unchecked(
        HermitianOperator::from_real_diagonal(&diag, layout)?,
    ))
}

/// `D_T^{-1/2} Σ_n |n⟩_T |Φ_n⟩_AB` with `Φ_n` the first `d_t` columns of a
/// Haar unitary on `AB`. Subsystem `T` is prepended to `layout_ab`.
pub fn scrambled_state<T: Real>(
    d_t: usize,
    layout_ab: &HilbertLayout,
    rng: &mut RandomSource,
) -> Result<PureState<T>> {
    if layout_ab.contains(TARGET) {
        return Err(Error::Layout(format!("`{TARGET}` already present in {layout_ab}")));
    }
    let d_ab = layout_ab.total_dim();
    if d_t == 0 || d_t > d_ab {
        return Err(Error::Parameter(format!(
            "target dimension {d_t} must be in 1..={d_ab}"
        )));
    }
    let phi = haar_isometry::<T>(d_ab, d_t, rng)?;
    let norm = C::new(T::one() / T::from_usize(d_t).unwrap().sqrt(), T::zero());
    let v = DVector::from_fn(d_t * d_ab, |i, _| phi[(i % d_ab, i / d_ab)] * norm);
    let layout = HilbertLayout::new(
        std::iter::once((TARGET.to_string(), d_t))
            .chain(layout_ab.labels().iter().cloned().zip(layout_ab.dims().iter().copied())),
    )?;
    PureState::normalized(v, layout)
}

/// Two-branch state `√p |0⟩|0⟩^{m_a}|0⟩^{m_b} + √(1−p) |1⟩|r⟩^{m_a}|r⟩^{m_b}`
/// with `|r⟩ = s|0⟩ + √(1−s²)|1⟩`.
pub fn darwinism_state<T: Real>(p: T, s: T, m_a: usize, m_b: usize) -> Result<BranchState<T>> {
    BranchState::darwinism(p, s, m_a, m_b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u64> = {
            let mut r = RandomSource::new(7);
            (0..4).map(|_| r.next_u64()).collect()
        };
        let b: Vec<u64> = {
            let mut r = RandomSource::new(7);
            (0..4).map(|_| r.next_u64()).collect()
        };
        let c: Vec<u64> = {
            let mut r = RandomSource::new(7).derive(1);
            (0..4).map(|_| r.next_u64()).collect()
        };
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn one_dimensional_unitary_is_a_phase() {
        let u = haar_unitary::<f64>(1, &mut RandomSource::new(3)).unwrap();
        assert!((u[(0, 0)].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn non_uniform_table_is_rejected() {
        let t = ProbabilityTable::<f64>::from_entries(&[([0, 0, 0], 0.75), ([1, 1, 1], 0.25)]).unwrap();
        assert!(superposition_from_table(&t).is_err());
    }

    #[test]
    fn scrambled_state_rejects_large_target() {
        let ab = HilbertLayout::new([("A", 2), ("B", 1)]).unwrap();
        assert!(scrambled_state::<f64>(3, &ab, &mut RandomSource::new(0)).is_err());
    }
}
