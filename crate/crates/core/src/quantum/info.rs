use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{eigh, entropy_of_matrix, DensityOperator, HermitianOperator};
use crate::scalar::{Real, C};

/// Outcome probabilities at or below this contribute nothing to `J`.
const MIN_OUTCOME_PROB: f64 = 1e-14;

/// Symmetric quantum mutual information `S(x) + S(y) − S(x ∪ y)` in bits.
pub fn quantum_mutual_information<T: Real>(
    rho: &DensityOperator<T>,
    x: &[&str],
    y: &[&str],
) -> Result<T> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::Parameter("empty subsystem set".into()));
    }
    if x.iter().any(|l| y.contains(l)) {
        return Err(Error::Overlap);
    }
    let joint: Vec<&str> = x.iter().chain(y).copied().collect();
    let s = |labels: &[&str]| -> Result<T> { Ok(entropy_of_matrix(rho.reduce(labels)?.matrix())) };
    Ok(s(x)? + s(y)? - s(&joint)?)
}

/// Measured mutual information `J(T;X) = S(ρ_T) − Σ_n p_n S(ρ_{T|n})` for a
/// given POVM `{Π_n}` on `measured`.
pub fn measured_mutual_information<T: Real>(
    rho: &DensityOperator<T>,
    target: &str,
    measured: &str,
    povm: &[HermitianOperator<T>],
) -> Result<T> {
    if target == measured {
        return Err(Error::Overlap);
    }
    let dt = rho.layout().dim_of(target)?;
    let dx = rho.layout().dim_of(measured)?;
    validate_povm(povm, dx)?;

    // Canonical (target, measured) ordering.
    let pair = rho.reduce(&[target, measured])?;
    let target_first = pair.layout().labels()[0] == target;
    let m = pair.matrix();
    let at = |t: usize, x: usize, t2: usize, x2: usize| {
        if target_first {
            m[(t * dx + x, t2 * dx + x2)]
        } else {
            m[(x * dt + t, x2 * dt + t2)]
        }
    };

    let rho_t = DMatrix::from_fn(dt, dt, |t, t2| {
        (0..dx).fold(C::new(T::zero(), T::zero()), |acc, x| acc + at(t, x, t2, x))
    });
    let mut j = entropy_of_matrix(&rho_t);
    let floor = T::lit(MIN_OUTCOME_PROB);
    for effect in povm {
        let e = effect.matrix();
        // Tr_X[ρ (1 ⊗ Π)]_{t t'} = Σ_{x x'} ρ_{(t x),(t' x')} Π_{x' x}
        let post = DMatrix::from_fn(dt, dt, |t, t2| {
            let mut acc = C::new(T::zero(), T::zero());
            for x in 0..dx {
                for x2 in 0..dx {
                    acc += at(t, x, t2, x2) * e[(x2, x)];
                }
            }
            acc
        });
        let p = post.trace().re;
        if p <= floor {
            continue;
        }
        let cond = post / C::new(p, T::zero());
        j -= p * entropy_of_matrix(&cond);
    }
    Ok(j)
}

fn validate_povm<T: Real>(povm: &[HermitianOperator<T>], dim: usize) -> Result<()> {
    if povm.is_empty() {
        return Err(Error::InvalidPovm("no effects".into()));
    }
    let tol = T::default_check_tol();
    let mut sum = DMatrix::<C<T>>::zeros(dim, dim);
    for (n, e) in povm.iter().enumerate() {
        if e.dim() != dim {
            return Err(Error::InvalidPovm(format!(
                "effect {n} has dimension {}, expected {dim}",
                e.dim()
            )));
        }
        let min = eigh(e.matrix()).values.min();
        if min < -tol {
            return Err(Error::InvalidPovm(format!("effect {n} has eigenvalue {min:e}")));
        }
        sum += e.matrix();
    }
    let dev = (sum - DMatrix::identity(dim, dim)).norm();
    if dev > tol {
        return Err(Error::InvalidPovm(format!(
            "effects sum to identity only within {dev:e}"
        )));
    }
    Ok(())
}

/// Rank-one projectors onto the computational basis of a `dim`-level system.
pub fn computational_basis_povm<T: Real>(label: &str, dim: usize) -> Result<Vec<HermitianOperator<T>>> {
    let layout = crate::linalg::HilbertLayout::single(label, dim)?;
    (0..dim)
        .map(|k| {
            let mut d = vec![T::zero(); dim];
            d[k] = T::one();
            HermitianOperator::from_real_diagonal(&d, layout.clone())
        })
        .collect()
}
