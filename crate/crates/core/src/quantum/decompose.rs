use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};

use super::conditional::conditional_state_with;
use crate::classical::PidResult;
use crate::error::{Error, Result};
use crate::linalg::{
    embed, entropy_of_matrix, operator_log_on_support_with, DensityOperator, HermitianOperator,
    HilbertLayout, PureState,
};
use crate::scalar::{Real, Tolerances, C};
use crate::{SOURCE_A, SOURCE_B, TARGET};

/// Weight of `ρ_AB` outside `supp(Z_AB)` above which `B_Q1` is rejected.
/// Scalar types whose rank tolerance is coarser use that instead.
pub const SUPPORT_LEAK_TOL: f64 = 1e-8;

/// Which quantum overlap operator to pool with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Variant {
    /// `½ Tr_T(ρ_{T|A}^{1/4} ρ_{T|B}^{1/2} ρ_{T|A}^{1/4} + (A ↔ B))`.
    #[default]
    Star,
    /// `½ Tr_T(ρ_{T|A}^{1/2} ρ_{T|B}^{1/2} + ρ_{T|B}^{1/2} ρ_{T|A}^{1/2})`.
    Plain,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::Star, Variant::Plain];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Star => "star",
            Variant::Plain => "plain",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "star" => Ok(Variant::Star),
            "plain" => Ok(Variant::Plain),
            other => Err(Error::Parameter(format!("unknown variant `{other}`"))),
        }
    }
}

/// Quantum bonuses in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bonus<T> {
    /// `½ |I(T;A) − I(T;B)|`.
    pub bq0: T,
    /// `−Tr(ρ_AB log₂ Z_AB)`.
    pub bq1: T,
    pub bq: T,
    /// Largest eigenvalue of `Z_AB` (diagnostic; classically at most 1).
    pub z_max: T,
}

/// Quantum decomposition of the information `A` and `B` hold about `T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QpidResult<T> {
    pub i_ta: T,
    pub i_tb: T,
    pub i_tab: T,
    pub bq0: T,
    pub bq1: T,
    pub bq: T,
    pub unique_a: T,
    pub unique_b: T,
    pub redundant: T,
    pub synergy: T,
    /// `I(T;A) + I(T;B) − I(T;A,B)`.
    pub tri_information: T,
    pub variant: Variant,
}

impl<T: Real> QpidResult<T> {
    fn assemble(i_ta: T, i_tb: T, i_tab: T, bonus: &Bonus<T>, variant: Variant) -> Self {
        let p = PidResult::assemble(i_ta, i_tb, i_tab, bonus.bq0, bonus.bq1);
        Self {
            i_ta,
            i_tb,
            i_tab,
            bq0: p.b0,
            bq1: p.b1,
            bq: p.b,
            unique_a: p.unique_a,
            unique_b: p.unique_b,
            redundant: p.redundant,
            synergy: p.synergy,
            tri_information: i_ta + i_tb - i_tab,
            variant,
        }
    }

    pub fn fields(&self) -> [(&'static str, T); 11] {
        [
            ("i_ta", self.i_ta),
            ("i_tb", self.i_tb),
            ("i_tab", self.i_tab),
            ("bq0", self.bq0),
            ("bq1", self.bq1),
            ("bq", self.bq),
            ("unique_a", self.unique_a),
            ("unique_b", self.unique_b),
            ("redundant", self.redundant),
            ("synergy", self.synergy),
            ("tri_information", self.tri_information),
        ]
    }

    /// Largest absolute field-wise difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.fields()
            .iter()
            .zip(other.fields().iter())
            .fold(T::zero(), |m, ((_, a), (_, b))| m.max((*a - *b).abs()))
    }
}

/// Reduced states of a tripartite `T, A, B` state in canonical factor order,
/// plus every entropy the decomposition needs.
pub(crate) struct Tripartite<T: Real> {
    dims: [usize; 3],
    rho_ta: DensityOperator<T>,
    rho_tb: DensityOperator<T>,
    rho_ab: DensityOperator<T>,
    s_t: T,
    s_a: T,
    s_b: T,
    s_ta: T,
    s_tb: T,
    s_ab: T,
    s_tab: T,
}

fn canonical_layout(layout: &HilbertLayout) -> Result<(HilbertLayout, [usize; 3])> {
    if layout.len() != 3 || ![TARGET, SOURCE_A, SOURCE_B].iter().all(|l| layout.contains(l)) {
        return Err(Error::Layout(format!(
            "expected subsystems {TARGET}, {SOURCE_A}, {SOURCE_B}; got {layout}"
        )));
    }
    let dims = [
        layout.dim_of(TARGET)?,
        layout.dim_of(SOURCE_A)?,
        layout.dim_of(SOURCE_B)?,
    ];
    let canon = HilbertLayout::new([TARGET, SOURCE_A, SOURCE_B].into_iter().zip(dims))?;
    Ok((canon, dims))
}

impl<T: Real> Tripartite<T> {
    pub(crate) fn from_density(rho: &DensityOperator<T>) -> Result<Self> {
        let (canon, dims) = canonical_layout(rho.layout())?;
        let rho = if rho.layout() == &canon {
            rho.clone()
        } else {
            DensityOperator::from_operator_unchecked(embed(rho.operator(), &canon)?)
        };
        let s_tab = entropy_of_matrix(rho.matrix());
        Self::from_reductions(
            dims,
            rho.reduce(&[TARGET, SOURCE_A])?,
            rho.reduce(&[TARGET, SOURCE_B])?,
            rho.reduce(&[SOURCE_A, SOURCE_B])?,
            s_tab,
        )
    }

    pub(crate) fn from_pure(psi: &PureState<T>) -> Result<Self> {
        let (canon, dims) = canonical_layout(psi.layout())?;
        let src = psi.layout();
        let order = [
            src.position(TARGET)?,
            src.position(SOURCE_A)?,
            src.position(SOURCE_B)?,
        ];
        let offs = src.offsets(&order);
        let amps = DVector::from_iterator(offs.len(), offs.iter().map(|&o| psi.amplitudes()[o]));
        let psi = PureState::normalized(amps, canon)?;
        Self::from_reductions(
            dims,
            psi.reduced(&[TARGET, SOURCE_A])?,
            psi.reduced(&[TARGET, SOURCE_B])?,
            psi.reduced(&[SOURCE_A, SOURCE_B])?,
            T::zero(),
        )
    }

    fn from_reductions(
        dims: [usize; 3],
        rho_ta: DensityOperator<T>,
        rho_tb: DensityOperator<T>,
        rho_ab: DensityOperator<T>,
        s_tab: T,
    ) -> Result<Self> {
        let s = |r: &DensityOperator<T>| entropy_of_matrix(r.matrix());
        let s_t = s(&rho_ta.reduce(&[TARGET])?);
        let s_a = s(&rho_ab.reduce(&[SOURCE_A])?);
        let s_b = s(&rho_ab.reduce(&[SOURCE_B])?);
        Ok(Self {
            dims,
            s_ta: s(&rho_ta),
            s_tb: s(&rho_tb),
            s_ab: s(&rho_ab),
            rho_ta,
            rho_tb,
            rho_ab,
            s_t,
            s_a,
            s_b,
            s_tab,
        })
    }

    pub(crate) fn mutual_informations(&self) -> (T, T, T) {
        (
            self.s_t + self.s_a - self.s_ta,
            self.s_t + self.s_b - self.s_tb,
            self.s_t + self.s_ab - self.s_tab,
        )
    }

    pub(crate) fn z_operator(&self, variant: Variant, tol: &Tolerances<T>) -> Result<HermitianOperator<T>> {
        let [dt, da, db] = self.dims;
        let cond_a = conditional_state_with(&self.rho_ta, SOURCE_A, tol)?;
        let cond_b = conditional_state_with(&self.rho_tb, SOURCE_B, tol)?;
        let quarter = T::lit(0.25);
        let half = T::lit(0.5);
        let z = match variant {
            Variant::Star => {
                let [xq, xh] = cond_a.powers([quarter, half], tol)?;
                let [yq, yh] = cond_b.powers([quarter, half], tol)?;
                let first = trace_target_sandwich(xq.matrix(), yh.matrix(), dt, da, db, Outer::A);
                let second = trace_target_sandwich(yq.matrix(), xh.matrix(), dt, da, db, Outer::B);
                first + second
            }
            Variant::Plain => {
                let [xh] = cond_a.powers([half], tol)?;
                let [yh] = cond_b.powers([half], tol)?;
                trace_target_products(xh.matrix(), yh.matrix(), dt, da, db)
            }
        };
        let layout = HilbertLayout::new([(SOURCE_A, da), (SOURCE_B, db)])?;
        Ok(HermitianOperator::from_raw(z * C::new(half, T::zero()), layout))
    }

    pub(crate) fn bonus(&self, variant: Variant, tol: &Tolerances<T>) -> Result<Bonus<T>> {
        let (i_ta, i_tb, _) = self.mutual_informations();
        let z = self.z_operator(variant, tol)?;
        let slog = operator_log_on_support_with(&z, tol)?;
        let inside = self.rho_ab.trace_product(&slog.support);
        let leak = self.rho_ab.trace() - inside;
        if leak > T::lit(SUPPORT_LEAK_TOL).max(T::default_rank_tol()) {
            return Err(Error::SupportLeak {
                weight: leak.as_f64(),
            });
        }
        let bq0 = T::lit(0.5) * (i_ta - i_tb).abs();
        let bq1 = -self.rho_ab.trace_product(&slog.log);
        let z_max = z.eigenvalues().max();
        Ok(Bonus {
            bq0,
            bq1,
            bq: bq0.max(bq1),
            z_max,
        })
    }

    pub(crate) fn decompose(&self, variant: Variant, tol: &Tolerances<T>) -> Result<QpidResult<T>> {
        let (i_ta, i_tb, i_tab) = self.mutual_informations();
        let bonus = self.bonus(variant, tol)?;
        Ok(QpidResult::assemble(i_ta, i_tb, i_tab, &bonus, variant))
    }
}

/// Which conditional operator sits on the outside of the sandwich.
#[derive(Clone, Copy)]
enum Outer {
    A,
    B,
}

/// `Tr_T[(O ⊗ 1)(M ⊗ 1)(O ⊗ 1)]` on `A ⊗ B`, with `O` the outer operator
/// (on `T⊗A` for [`Outer::A`], on `T⊗B` for [`Outer::B`]) and `M` the middle
/// one on the other pair. Contracts the shared outer index first so no
/// `T⊗A⊗B` matrix is ever formed.
fn trace_target_sandwich<T: Real>(
    outer: &DMatrix<C<T>>,
    middle: &DMatrix<C<T>>,
    dt: usize,
    da: usize,
    db: usize,
    which: Outer,
) -> DMatrix<C<T>> {
    let (d_out, d_mid) = match which {
        Outer::A => (da, db),
        Outer::B => (db, da),
    };
    let zero = C::new(T::zero(), T::zero());
    // R[u, u', t1, t2] = Σ_{t, w} O[(t,u),(t1,w)] O[(t2,w),(t,u')]
    let r_idx = |u: usize, u2: usize, t1: usize, t2: usize| ((u * d_out + u2) * dt + t1) * dt + t2;
    let mut r = vec![zero; d_out * d_out * dt * dt];
    for u in 0..d_out {
        for u2 in 0..d_out {
            for t1 in 0..dt {
                for t2 in 0..dt {
                    let mut acc = zero;
                    for t in 0..dt {
                        for w in 0..d_out {
                            acc += outer[(t * d_out + u, t1 * d_out + w)]
                                * outer[(t2 * d_out + w, t * d_out + u2)];
                        }
                    }
                    r[r_idx(u, u2, t1, t2)] = acc;
                }
            }
        }
    }
    // Z[(u,v),(u',v')] = Σ_{t1,t2} R[u,u',t1,t2] M[(t1,v),(t2,v')]
    let n = da * db;
    let mut z = DMatrix::zeros(n, n);
    for u in 0..d_out {
        for u2 in 0..d_out {
            for v in 0..d_mid {
                for v2 in 0..d_mid {
                    let mut acc = zero;
                    for t1 in 0..dt {
                        for t2 in 0..dt {
                            acc += r[r_idx(u, u2, t1, t2)] * middle[(t1 * d_mid + v, t2 * d_mid + v2)];
                        }
                    }
                    let (row, col) = match which {
                        Outer::A => (u * db + v, u2 * db + v2),
                        Outer::B => (v * db + u, v2 * db + u2),
                    };
                    z[(row, col)] = acc;
                }
            }
        }
    }
    z
}

/// `Tr_T[(X ⊗ 1_B)(Y ⊗ 1_A) + (Y ⊗ 1_A)(X ⊗ 1_B)]` on `A ⊗ B`.
fn trace_target_products<T: Real>(
    x: &DMatrix<C<T>>,
    y: &DMatrix<C<T>>,
    dt: usize,
    da: usize,
    db: usize,
) -> DMatrix<C<T>> {
    let zero = C::new(T::zero(), T::zero());
    let n = da * db;
    DMatrix::from_fn(n, n, |row, col| {
        let (a, b) = (row / db, row % db);
        let (a2, b2) = (col / db, col % db);
        let mut acc = zero;
        for t in 0..dt {
            for t1 in 0..dt {
                acc += x[(t * da + a, t1 * da + a2)] * y[(t1 * db + b, t * db + b2)];
                acc += y[(t * db + b, t1 * db + b2)] * x[(t1 * da + a, t * da + a2)];
            }
        }
        acc
    })
}

/// Overlap operator `Z_AB` (or `Z'_AB` for [`Variant::Plain`]) of a state on
/// subsystems `T`, `A`, `B`.
pub fn z_operator<T: Real>(rho: &DensityOperator<T>, variant: Variant) -> Result<HermitianOperator<T>> {
    Tripartite::from_density(rho)?.z_operator(variant, &Tolerances::default())
}

pub fn quantum_bonus<T: Real>(rho: &DensityOperator<T>, variant: Variant) -> Result<Bonus<T>> {
    Tripartite::from_density(rho)?.bonus(variant, &Tolerances::default())
}

pub fn qpid_decompose<T: Real>(rho: &DensityOperator<T>, variant: Variant) -> Result<QpidResult<T>> {
    qpid_decompose_with(rho, variant, &Tolerances::default())
}

pub fn qpid_decompose_with<T: Real>(
    rho: &DensityOperator<T>,
    variant: Variant,
    tol: &Tolerances<T>,
) -> Result<QpidResult<T>> {
    Tripartite::from_density(rho)?.decompose(variant, tol)
}

/// Same as [`qpid_decompose`] for a pure state, without forming `|ψ⟩⟨ψ|`.
pub fn qpid_decompose_pure<T: Real>(psi: &PureState<T>, variant: Variant) -> Result<QpidResult<T>> {
    qpid_decompose_pure_with(psi, variant, &Tolerances::default())
}

pub fn qpid_decompose_pure_with<T: Real>(
    psi: &PureState<T>,
    variant: Variant,
    tol: &Tolerances<T>,
) -> Result<QpidResult<T>> {
    Tripartite::from_pure(psi)?.decompose(variant, tol)
}

pub fn quantum_bonus_pure<T: Real>(psi: &PureState<T>, variant: Variant) -> Result<Bonus<T>> {
    Tripartite::from_pure(psi)?.bonus(variant, &Tolerances::default())
}
