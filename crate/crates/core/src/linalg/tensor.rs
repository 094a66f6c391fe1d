use nalgebra::DMatrix;

use super::layout::HilbertLayout;
use super::operator::{DensityOperator, HermitianOperator};
use super::spectral::hermitian_power_with;
use crate::error::{Error, Result};
use crate::scalar::{Real, Tolerances, C};

/// Traces out every factor not named in `keep`. The result keeps the
/// surviving factors in their original relative order.
pub fn partial_trace<T: Real>(
    op: &HermitianOperator<T>,
    keep: &[&str],
) -> Result<HermitianOperator<T>> {
    let layout = op.layout();
    let kp = layout.positions_sorted(keep)?;
    if kp.is_empty() {
        return Err(Error::Layout("empty subsystem selection".into()));
    }
    if kp.len() == layout.len() {
        return Ok(op.clone());
    }
    let rest: Vec<usize> = (0..layout.len()).filter(|p| !kp.contains(p)).collect();
    let m = trace_out(op.matrix(), &layout.offsets(&kp), &layout.offsets(&rest));
    Ok(HermitianOperator::from_raw(m, layout.subset_at(&kp)))
}

pub(crate) fn trace_out<T: Real>(
    m: &DMatrix<C<T>>,
    kept: &[usize],
    traced: &[usize],
) -> DMatrix<C<T>> {
    let n = kept.len();
    let mut out = DMatrix::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            let mut acc = C::new(T::zero(), T::zero());
            for &k in traced {
                acc += m[(kept[i] + k, kept[j] + k)];
            }
            out[(i, j)] = acc;
        }
    }
    out
}

impl<T: Real> DensityOperator<T> {
    /// Reduced density operator on `keep`.
    pub fn reduce(&self, keep: &[&str]) -> Result<DensityOperator<T>> {
        Ok(DensityOperator::from_operator_unchecked(partial_trace(
            self.operator(),
            keep,
        )?))
    }
}

/// Embeds `op` into `target`: tensors identities on the missing factors and
/// permutes indices into target order.
pub fn embed<T: Real>(
    op: &HermitianOperator<T>,
    target: &HilbertLayout,
) -> Result<HermitianOperator<T>> {
    let src = op.layout();
    let mut pos = Vec::with_capacity(src.len());
    for (label, &d) in src.labels().iter().zip(src.dims()) {
        let p = target.position(label)?;
        if target.dims()[p] != d {
            return Err(Error::LayoutMismatch(format!(
                "`{label}` has dimension {d} in the operator but {} in the target",
                target.dims()[p]
            )));
        }
        pos.push(p);
    }
    let rest: Vec<usize> = (0..target.len()).filter(|p| !pos.contains(p)).collect();
    let oo = target.offsets(&pos);
    let or = target.offsets(&rest);
    let n = target.total_dim();
    let mut out = DMatrix::zeros(n, n);
    let m = op.matrix();
    for j in 0..oo.len() {
        for i in 0..oo.len() {
            let v = m[(i, j)];
            if v.re == T::zero() && v.im == T::zero() {
                continue;
            }
            for &k in &or {
                out[(oo[i] + k, oo[j] + k)] = v;
            }
        }
    }
    Ok(HermitianOperator::from_raw(out, target.clone()))
}

/// `(1 ⊗ X) M (1 ⊗ X)` where `X` acts on the factor at `pos` of `layout`.
///
/// Costs `O(n² d)` instead of the `O(n³)` of multiplying embedded matrices.
pub(crate) fn sandwich_factor<T: Real>(
    m: &DMatrix<C<T>>,
    layout: &HilbertLayout,
    pos: usize,
    x: &DMatrix<C<T>>,
) -> DMatrix<C<T>> {
    let d = layout.dims()[pos];
    let stride = layout.strides()[pos];
    let rest: Vec<usize> = (0..layout.len()).filter(|&p| p != pos).collect();
    let base = layout.offsets(&rest);
    let n = m.nrows();
    let zero = C::new(T::zero(), T::zero());

    // Left: rows mix within each fibre along `pos`.
    let mut left = DMatrix::zeros(n, n);
    let mut fibre = vec![zero; d];
    for col in 0..n {
        for &b in &base {
            for v in 0..d {
                fibre[v] = m[(b + v * stride, col)];
            }
            for u in 0..d {
                let mut acc = zero;
                for v in 0..d {
                    acc += x[(u, v)] * fibre[v];
                }
                left[(b + u * stride, col)] = acc;
            }
        }
    }
    // Right: columns mix the same way.
    let mut out = DMatrix::zeros(n, n);
    for &b in &base {
        for row in 0..n {
            for v in 0..d {
                fibre[v] = left[(row, b + v * stride)];
            }
            for u in 0..d {
                let mut acc = zero;
                for v in 0..d {
                    acc += fibre[v] * x[(v, u)];
                }
                out[(row, b + u * stride)] = acc;
            }
        }
    }
    out
}

/// `a * b := b^{1/2} a b^{1/2}` for PSD `b`.
pub fn star_product<T: Real>(
    a: &HermitianOperator<T>,
    b: &HermitianOperator<T>,
) -> Result<HermitianOperator<T>> {
    star_product_with(a, b, &Tolerances::default())
}

pub fn star_product_with<T: Real>(
    a: &HermitianOperator<T>,
    b: &HermitianOperator<T>,
    tol: &Tolerances<T>,
) -> Result<HermitianOperator<T>> {
    if a.layout() != b.layout() {
        return Err(Error::LayoutMismatch(format!(
            "star product of {} and {}",
            a.layout(),
            b.layout()
        )));
    }
    let root = hermitian_power_with(b, T::lit(0.5), tol)?;
    let m = root.matrix() * a.matrix() * root.matrix();
    Ok(HermitianOperator::from_raw(m, a.layout().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C<f64> {
        C::new(re, 0.0)
    }

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        let l = HilbertLayout::new([("A", 2), ("B", 2)]).unwrap();
        let h = 0.5;
        let m = DMatrix::from_row_slice(
            4,
            4,
            &[
                c(h), c(0.), c(0.), c(h),
                c(0.), c(0.), c(0.), c(0.),
                c(0.), c(0.), c(0.), c(0.),
                c(h), c(0.), c(0.), c(h),
            ],
        );
        let rho = HermitianOperator::new(m, l).unwrap();
        for keep in ["A", "B"] {
            let r = partial_trace(&rho, &[keep]).unwrap();
            let half = HermitianOperator::from_real_diagonal(&[0.5, 0.5], r.layout().clone()).unwrap();
            assert!(r.distance(&half) < 1e-15);
        }
        assert_eq!(partial_trace(&rho, &["A", "B"]).unwrap(), rho);
        assert!(matches!(
            partial_trace(&rho, &["C"]),
            Err(Error::UnknownLabel(_))
        ));
    }

    #[test]
    fn embed_rejects_dimension_mismatch() {
        let op = HermitianOperator::<f64>::identity(HilbertLayout::single("A", 3).unwrap());
        let target = HilbertLayout::new([("A", 2), ("B", 2)]).unwrap();
        assert!(matches!(embed(&op, &target), Err(Error::LayoutMismatch(_))));
    }

    #[test]
    fn star_product_commuting_case() {
        let l = HilbertLayout::single("X", 3).unwrap();
        let a = HermitianOperator::from_real_diagonal(&[1.0, -2.0, 3.0], l.clone()).unwrap();
        let b = HermitianOperator::from_real_diagonal(&[4.0, 0.25, 0.0], l.clone()).unwrap();
        let r = star_product(&a, &b).unwrap();
        let want = HermitianOperator::from_real_diagonal(&[4.0, -0.5, 0.0], l.clone()).unwrap();
        assert!(r.distance(&want) < 1e-14);
        let id = HermitianOperator::identity(l);
        assert!(star_product(&a, &id).unwrap().distance(&a) < 1e-14);
    }
}
