//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use qpid::states::{haar_unitary, random_mixed};
use qpid::{Complex64, Density64, HilbertLayout, RandomSource, Table64};
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Mixed-radix digits of `index`, most significant first.
pub fn digits(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = index % dims[k];
        index /= dims[k];
    }
    out
}

pub fn undigits(d: &[usize], dims: &[usize]) -> usize {
    d.iter().zip(dims).fold(0, |acc, (&x, &n)| acc * n + x)
}

/// Partial trace by explicit summation over full multi-indices.
pub fn naive_partial_trace(m: &DMatrix<Complex64>, dims: &[usize], keep: &[usize]) -> DMatrix<Complex64> {
    let kd: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let n: usize = kd.iter().product();
    let total: usize = dims.iter().product();
    let mut out = DMatrix::zeros(n, n);
    for i in 0..total {
        let di = digits(i, dims);
        for j in 0..total {
            let dj = digits(j, dims);
            let traced_equal = (0..dims.len()).all(|k| keep.contains(&k) || di[k] == dj[k]);
            if !traced_equal {
                continue;
            }
            let ri: Vec<usize> = keep.iter().map(|&k| di[k]).collect();
            let rj: Vec<usize> = keep.iter().map(|&k| dj[k]).collect();
            out[(undigits(&ri, &kd), undigits(&rj, &kd))] += m[(i, j)];
        }
    }
    out
}

pub fn kron(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a.kronecker(b)
}

/// Entropy from eigenvalues computed by an independent real-symmetric
/// embedding `[[Re, -Im], [Im, Re]]`, whose spectrum doubles that of `m`.
pub fn entropy_oracle(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let big = DMatrix::<f64>::from_fn(2 * n, 2 * n, |i, j| {
        let z = m[(i % n, j % n)];
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let ev = nalgebra::SymmetricEigen::new(big).eigenvalues;
    -ev.iter().filter(|&&l| l > 1e-15).map(|&l| l * l.log2()).sum::<f64>() / 2.0
}

pub fn tab_layout(dt: usize, da: usize, db: usize) -> HilbertLayout {
    HilbertLayout::new([("T", dt), ("A", da), ("B", db)]).unwrap()
}

pub fn random_tab_mixed(dims: [usize; 3], rng: &mut RandomSource) -> Density64 {
    let l = tab_layout(dims[0], dims[1], dims[2]);
    let d = l.total_dim();
    random_mixed(l, d, rng).unwrap()
}

/// `U_T ⊗ U_A ⊗ U_B` with Haar factors.
pub fn random_local_unitary(dims: [usize; 3], rng: &mut RandomSource) -> DMatrix<Complex64> {
    let u: Vec<DMatrix<Complex64>> = dims.iter().map(|&d| haar_unitary(d, rng).unwrap()).collect();
    kron(&kron(&u[0], &u[1]), &u[2])
}

/// Random table with a random sparsity pattern (at least one nonzero).
pub fn random_table(sizes: [usize; 3], rng: &mut RandomSource, zero_prob: f64) -> Table64 {
    let n = sizes.iter().product();
    let mut w: Vec<f64> = (0..n)
        .map(|_| if rng.random::<f64>() < zero_prob { 0.0 } else { rng.random::<f64>() + 1e-3 })
        .collect();
    if w.iter().all(|&x| x == 0.0) {
        w[0] = 1.0;
    }
    let s: f64 = w.iter().sum();
    Table64::new(sizes, w.into_iter().map(|x| x / s).collect()).unwrap()
}

/// Dense Bell pair `(|00⟩ + |11⟩)/√2` on labels `x`, `y`.
pub fn bell(x: &str, y: &str) -> Density64 {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let v = DVector::from_vec(vec![c(h, 0.), c(0., 0.), c(0., 0.), c(h, 0.)]);
    let l = HilbertLayout::new([(x, 2), (y, 2)]).unwrap();
    qpid::PureState::new(v, l).unwrap().to_density()
}
