//! Independent oracles and random generators shared by the integration
//! tests. Nothing here calls the library's transform or product code.
#![allow(dead_code)]

use htnn::experiments::rng::{standard_normal, stream};
use htnn::{Complex64, ComplexArrayN, TMatrix, TScalar};
use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    stream(seed, &[0x7e57])
}

fn strides(shape: &[usize]) -> Vec<usize> {
    let mut s = vec![1; shape.len()];
    for i in (0..shape.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * shape[i + 1];
    }
    s
}

fn unravel(mut k: usize, shape: &[usize]) -> Vec<usize> {
    let mut idx = vec![0; shape.len()];
    for (slot, &n) in idx.iter_mut().zip(shape).rev() {
        *slot = k % n;
        k /= n;
    }
    idx
}

pub fn random_complex(rng: &mut impl Rng, real: bool) -> Complex64 {
    let re = standard_normal(rng);
    let im = if real { 0.0 } else { standard_normal(rng) };
    Complex64::new(re, im)
}

pub fn random_array(shape: &[usize], rng: &mut impl Rng, real: bool) -> ComplexArrayN<f64> {
    let n = shape.iter().product();
    let data = (0..n).map(|_| random_complex(rng, real)).collect();
    ComplexArrayN::new(shape.to_vec(), data).unwrap()
}

pub fn random_tscalar(shape: &[usize], rng: &mut impl Rng, real: bool) -> TScalar<f64> {
    TScalar::new(random_array(shape, rng, real))
}

pub fn random_tmatrix(shape: &[usize], rows: usize, cols: usize, rng: &mut impl Rng, real: bool) -> TMatrix<f64> {
    let mut full = shape.to_vec();
    full.extend([rows, cols]);
    TMatrix::new(random_array(&full, rng, real), shape.len()).unwrap()
}

/// N-way circular convolution by the defining double sum.
pub fn convolution_oracle(x: &ComplexArrayN<f64>, y: &ComplexArrayN<f64>) -> Vec<Complex64> {
    let shape = x.shape();
    let k = x.len();
    let st = strides(shape);
    let mut out = vec![Complex64::new(0.0, 0.0); k];
    for (i, slot) in out.iter_mut().enumerate() {
        let ii = unravel(i, shape);
        for j in 0..k {
            let jj = unravel(j, shape);
            let diff: usize = ii
                .iter()
                .zip(&jj)
                .zip(shape)
                .zip(&st)
                .map(|(((&a, &b), &n), &s)| ((a + n - b) % n) * s)
                .sum();
            *slot += x.data()[j] * y.data()[diff];
        }
    }
    out
}

/// Unnormalized multi-mode DFT over every axis by direct summation.
pub fn dft_oracle(x: &ComplexArrayN<f64>) -> Vec<Complex64> {
    let shape = x.shape();
    let k = x.len();
    (0..k)
        .map(|f| {
            let ff = unravel(f, shape);
            (0..k)
                .map(|t| {
                    let tt = unravel(t, shape);
                    let phase: f64 = ff
                        .iter()
                        .zip(&tt)
                        .zip(shape)
                        .map(|((&a, &b), &n)| (a * b % n) as f64 / n as f64)
                        .sum();
                    x.data()[t] * Complex64::from_polar(1.0, -std::f64::consts::TAU * phase)
                })
                .sum()
        })
        .collect()
}

/// Spectral slices computed by the direct DFT oracle over the scalar axes.
pub fn slices_oracle(x: &TMatrix<f64>) -> Vec<DMatrix<Complex64>> {
    let (rows, cols) = x.dims();
    let mut per_entry = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            per_entry.push(dft_oracle(x.entry(r, c).body()));
        }
    }
    (0..x.slice_count())
        .map(|k| DMatrix::from_fn(rows, cols, |r, c| per_entry[r * cols + c][k]))
        .collect()
}

/// Block-diagonal representation assembled from oracle slices.
pub fn representation_oracle(x: &TMatrix<f64>) -> DMatrix<Complex64> {
    let (rows, cols) = x.dims();
    let slices = slices_oracle(x);
    let k = slices.len();
    let mut out = DMatrix::zeros(k * rows, k * cols);
    for (i, s) in slices.iter().enumerate() {
        out.view_mut((i * rows, i * cols), (rows, cols)).copy_from(s);
    }
    out
}

pub fn singular_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Dense numerical rank with the usual `max(m, n) · eps · σ_max` cutoff.
pub fn dense_rank(m: &DMatrix<Complex64>) -> usize {
    let s = singular_values(m);
    let tol = m.nrows().max(m.ncols()) as f64 * f64::EPSILON * s.first().copied().unwrap_or(0.0);
    s.iter().filter(|&&v| v > tol).count()
}

pub fn nuclear(m: &DMatrix<Complex64>) -> f64 {
    singular_values(m).iter().sum()
}

/// Classical singular value thresholding.
pub fn svt_oracle(a: &DMatrix<Complex64>, tau: f64) -> DMatrix<Complex64> {
    let svd = a.clone().svd(true, true);
    let shrunk = svd.singular_values.map(|s| Complex64::new((s - tau).max(0.0), 0.0));
    svd.u.unwrap() * DMatrix::from_diagonal(&shrunk) * svd.v_t.unwrap()
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn max_abs(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
