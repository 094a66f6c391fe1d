//! Exact low-rank evaluation for pure states that are short sums of product
//! states ("branches").
//!
//! A state `Σ_k c_k ⊗_s |v_{k,s}⟩` with `K` branches spans at most `K`
//! dimensions on any group of sites. Orthonormalizing each subsystem's branch
//! span through the eigendecomposition of its Gram matrix gives an isometric
//! image of the state in a space of dimension at most `K³`, on which every
//! decomposition quantity is evaluated densely. All of them are invariant
//! under local isometries, so the results are exact.

use nalgebra::{DMatrix, DVector};

use crate::classical::Var;
use crate::error::{Error, Result};
use crate::linalg::{eigh, DensityOperator, HilbertLayout, PureState};
use crate::quantum::{qpid_decompose_pure_with, QpidResult, Variant};
use crate::scalar::{Real, Tolerances, C};
use crate::{SOURCE_A, SOURCE_B, TARGET};

/// Largest supported branch count.
pub const MAX_BRANCHES: usize = 8;

/// Largest Hilbert-space dimension [`BranchState::to_dense`] will build.
pub const MAX_DENSE_DIM: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq)]
struct Site<T: Real> {
    role: Var,
    locals: Vec<DVector<C<T>>>,
}

/// Pure state `Σ_k c_k ⊗_s |v_{k,s}⟩` whose sites are assigned to `T`, `A`
/// or `B`. A subsystem without sites is a trivial one-dimensional factor.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchState<T: Real> {
    amplitudes: Vec<C<T>>,
    sites: Vec<Site<T>>,
}

/// A reduced density operator expressed in an orthonormal basis of the
/// branch span on the kept sites.
#[derive(Debug, Clone)]
pub struct EffectiveReduction<T: Real> {
    pub rho: DensityOperator<T>,
    /// Column `k` holds the coordinates of branch `k`'s kept-site vector in
    /// the effective basis.
    pub coords: DMatrix<C<T>>,
}

impl<T: Real> BranchState<T> {
    /// `sites` lists, per site, its role and one unit vector per branch.
    pub fn new(amplitudes: Vec<C<T>>, sites: Vec<(Var, Vec<DVector<C<T>>>)>) -> Result<Self> {
        let k = amplitudes.len();
        if k == 0 || k > MAX_BRANCHES {
            return Err(Error::Parameter(format!(
                "{k} branches; supported range is 1..={MAX_BRANCHES}"
            )));
        }
        let tol = T::default_check_tol() * T::lit(1e-2);
        let mut out = Vec::with_capacity(sites.len());
        for (s, (role, locals)) in sites.into_iter().enumerate() {
            if locals.len() != k {
                return Err(Error::Parameter(format!(
                    "site {s} has {} local vectors for {k} branches",
                    locals.len()
                )));
            }
            let d = locals[0].len();
            for v in &locals {
                if v.len() != d || d == 0 {
                    return Err(Error::Parameter(format!("site {s} has inconsistent dimensions")));
                }
                if (v.norm_squared() - T::one()).abs() > tol {
                    return Err(Error::NotNormalized(v.norm_squared().as_f64()));
                }
            }
            out.push(Site { role, locals });
        }
        if !out.iter().any(|s| s.role == Var::T) {
            return Err(Error::Parameter("no site belongs to the target".into()));
        }
        let state = Self {
            amplitudes,
            sites: out,
        };
        let n2 = state.norm_squared();
        if (n2 - T::one()).abs() > tol {
            return Err(Error::NotNormalized(n2.as_f64()));
        }
        Ok(state)
    }

    /// Target qubit `√p|0⟩ + √(1−p)|1⟩` imprinted on `m_a + m_b` environment
    /// qubits, each left in `|0⟩` or `|r⟩ = s|0⟩ + √(1−s²)|1⟩`.
    pub fn darwinism(p: T, s: T, m_a: usize, m_b: usize) -> Result<Self> {
        let (zero, one) = (T::zero(), T::one());
        if !(p >= zero && p <= one) {
            return Err(Error::Parameter(format!("p = {p} outside [0, 1]")));
        }
        if !(s >= zero && s <= one) {
            return Err(Error::Parameter(format!("s = {s} outside [0, 1]")));
        }
        if m_a + m_b == 0 {
            return Err(Error::Parameter("no environment qubits".into()));
        }
        let q = one - p;
        let c = |re: T| C::new(re, zero);
        let ket0 = DVector::from_vec(vec![c(one), c(zero)]);
        let ket1 = DVector::from_vec(vec![c(zero), c(one)]);
        let ket_r = DVector::from_vec(vec![c(s), c((one - s * s).max(zero).sqrt())]);
        let mut sites = vec![(Var::T, vec![ket0.clone(), ket1])];
        for _ in 0..m_a {
            sites.push((Var::A, vec![ket0.clone(), ket_r.clone()]));
        }
        for _ in 0..m_b {
            sites.push((Var::B, vec![ket0.clone(), ket_r.clone()]));
        }
        Self::new(vec![c(p.sqrt()), c(q.sqrt())], sites)
    }

    pub fn branch_count(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn site_count(&self) -> usize {
        self.sites.len()
    }

    pub fn amplitudes(&self) -> &[C<T>] {
        &self.amplitudes
    }

    /// Site indices belonging to `role`, in site order.
    pub fn sites_of(&self, role: Var) -> Vec<usize> {
        (0..self.sites.len())
            .filter(|&i| self.sites[i].role == role)
            .collect()
    }

    /// Same state with the branches listed in `order`.
    pub fn permute_branches(&self, order: &[usize]) -> Result<Self> {
        let k = self.branch_count();
        let mut seen = vec![false; k];
        for &i in order {
            if i >= k || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Parameter(format!("{order:?} is not a permutation")));
            }
        }
        if order.len() != k {
            return Err(Error::Parameter(format!("{order:?} is not a permutation")));
        }
        Ok(Self {
            amplitudes: order.iter().map(|&i| self.amplitudes[i]).collect(),
            sites: self
                .sites
                .iter()
                .map(|s| Site {
                    role: s.role,
                    locals: order.iter().map(|&i| s.locals[i].clone()).collect(),
                })
                .collect(),
        })
    }

    /// `G_ij = Π_{s ∈ sites} ⟨v_{i,s}|v_{j,s}⟩`; all ones for an empty set.
    pub fn gram_matrix(&self, sites: &[usize]) -> DMatrix<C<T>> {
        let k = self.branch_count();
        let mut g = DMatrix::from_element(k, k, C::new(T::one(), T::zero()));
        for &s in sites {
            let locals = &self.sites[s].locals;
            for i in 0..k {
                for j in 0..k {
                    g[(i, j)] *= locals[i].dotc(&locals[j]);
                }
            }
        }
        g
    }

    /// `‖ψ‖² = Σ_ij c_i* c_j G_ij` over all sites.
    pub fn norm_squared(&self) -> T {
        let all: Vec<usize> = (0..self.sites.len()).collect();
        let g = self.gram_matrix(&all);
        let c = DVector::from_column_slice(&self.amplitudes);
        c.dotc(&(g * &c)).re
    }

    /// Coordinates (`r × K`) of each branch's vector on `sites` in an
    /// orthonormal basis of their span, from `G = W Λ W†`:
    /// `coord[m, k] = √λ_m · conj(W[k, m])`, keeping `λ_m > rank · λ_max`.
    fn coordinates(&self, sites: &[usize], tol: &Tolerances<T>) -> DMatrix<C<T>> {
        let eig = eigh(&self.gram_matrix(sites));
        let cut = tol.rank * eig.max();
        let kept: Vec<usize> = (0..eig.values.len())
            .rev()
            .filter(|&m| eig.values[m] > cut)
            .collect();
        let k = self.branch_count();
        DMatrix::from_fn(kept.len(), k, |row, col| {
            let m = kept[row];
            eig.vectors[(col, m)].conj() * C::new(eig.values[m].sqrt(), T::zero())
        })
    }

    /// Reduced state on `keep`, in an orthonormal basis of the branch span on
    /// those sites. Its eigenvalues equal those of the dense reduction.
    pub fn reduced_operator_effective(&self, keep: &[usize]) -> Result<EffectiveReduction<T>> {
        self.reduced_operator_effective_with(keep, &Tolerances::default())
    }

    pub fn reduced_operator_effective_with(
        &self,
        keep: &[usize],
        tol: &Tolerances<T>,
    ) -> Result<EffectiveReduction<T>> {
        if keep.is_empty() {
            return Err(Error::Parameter("no sites kept".into()));
        }
        if let Some(&s) = keep.iter().find(|&&s| s >= self.sites.len()) {
            return Err(Error::Parameter(format!("site {s} does not exist")));
        }
        let rest: Vec<usize> = (0..self.sites.len()).filter(|s| !keep.contains(s)).collect();
        let ck = self.coordinates(keep, tol);
        let cr = self.coordinates(&rest, tol);
        let psi = DMatrix::from_fn(ck.nrows(), cr.nrows(), |m, n| {
            (0..self.branch_count()).fold(C::new(T::zero(), T::zero()), |acc, k| {
                acc + self.amplitudes[k] * ck[(m, k)] * cr[(n, k)]
            })
        });
        let layout = HilbertLayout::single("kept", ck.nrows())?;
        let rho = DensityOperator::new(&psi * psi.adjoint(), layout)?;
        Ok(EffectiveReduction { rho, coords: ck })
    }

    /// Isometric image of the state on effective `T`, `A`, `B` factors of
    /// dimension at most `K` each.
    pub fn effective_state(&self) -> Result<PureState<T>> {
        self.effective_state_with(&Tolerances::default())
    }

    pub fn effective_state_with(&self, tol: &Tolerances<T>) -> Result<PureState<T>> {
        let ct = self.coordinates(&self.sites_of(Var::T), tol);
        let ca = self.coordinates(&self.sites_of(Var::A), tol);
        let cb = self.coordinates(&self.sites_of(Var::B), tol);
        let (rt, ra, rb) = (ct.nrows(), ca.nrows(), cb.nrows());
        let layout = HilbertLayout::new([(TARGET, rt), (SOURCE_A, ra), (SOURCE_B, rb)])?;
        let mut v = DVector::zeros(rt * ra * rb);
        for k in 0..self.branch_count() {
            let c = self.amplitudes[k];
            for t in 0..rt {
                let ct_k = c * ct[(t, k)];
                for a in 0..ra {
                    let cta = ct_k * ca[(a, k)];
                    for b in 0..rb {
                        v[(t * ra + a) * rb + b] += cta * cb[(b, k)];
                    }
                }
            }
        }
        PureState::normalized(v, layout)
    }

    /// Full state vector with `T`, `A`, `B` each the tensor product of their
    /// sites in site order.
    pub fn to_dense(&self) -> Result<PureState<T>> {
        let roles = [Var::T, Var::A, Var::B];
        let dim_of = |role: Var| -> usize {
            self.sites_of(role)
                .iter()
                .map(|&s| self.sites[s].locals[0].len())
                .product()
        };
        let dims = roles.map(dim_of);
        let total: usize = dims.iter().product();
        if total > MAX_DENSE_DIM {
            return Err(Error::Parameter(format!(
                "dense dimension {total} exceeds {MAX_DENSE_DIM}"
            )));
        }
        let mut v = DVector::zeros(total);
        for k in 0..self.branch_count() {
            let mut branch = DVector::from_element(1, self.amplitudes[k]);
            for role in roles {
                for s in self.sites_of(role) {
                    branch = branch.kronecker(&self.sites[s].locals[k]);
                }
            }
            v += branch;
        }
        let layout = HilbertLayout::new([
            (TARGET, dims[0]),
            (SOURCE_A, dims[1]),
            (SOURCE_B, dims[2]),
        ])?;
        PureState::normalized(v, layout)
    }

    pub fn qpid(&self, variant: Variant) -> Result<QpidResult<T>> {
        qpid_via_branches(self, variant)
    }
}

/// Quantum decomposition of a branch state, evaluated in effective subspaces.
pub fn qpid_via_branches<T: Real>(state: &BranchState<T>, variant: Variant) -> Result<QpidResult<T>> {
    let tol = Tolerances::default();
    qpid_decompose_pure_with(&state.effective_state_with(&tol)?, variant, &tol)
}
