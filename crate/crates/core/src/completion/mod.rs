//! ADMM completion solvers.
//!
//! Both solvers run the update cycle exactly as printed, with the
//! not-yet-computed dual in the `E` step replaced by the current one:
//!
//! ```text
//! X ← D_τ(M − E + τ·Y)            (SVT, or TSVT for t-matrices)
//! E ← keep_missing(M − X + τ·Y)
//! Y ← Y + (M − X − E) / τ
//! τ ← max(α·τ, τ_min)
//! ```
//!
//! `M` has its missing entries zeroed before the first iteration. Iteration
//! stops once `||M − X − E||_F / ||M||_F < rel_tol` or after `max_iters`.
//! [`lrmc_admm`] works on a plain real matrix with its own dense SVD;
//! [`tmatrix_admm`] works on t-matrices through TSVT. With a single-entry
//! scalar shape the two coincide.

mod config;
mod mask;
mod trace;

pub use config::CompletionConfig;
pub use mask::{mask_keep, mask_keep_missing, Maskable, ObservationMask};
pub use trace::{CompletionTrace, IterationRecord};

use nalgebra::{DMatrix, SVD};

use crate::error::{Error, Result};
use crate::scalar::{creal, rmax, Real};
use crate::tmatrix::TMatrix;

/// Result of a completion run.
#[derive(Clone, Debug)]
pub struct Completion<A> {
    pub x: A,
    pub trace: CompletionTrace,
}

/// Solver state after one iteration, handed to observers. `tau` is the
/// penalty used in this iteration; `y_prev` is the dual it started from.
pub struct Iterate<'a, A> {
    pub iter: usize,
    pub tau: f64,
    pub x: &'a A,
    pub e: &'a A,
    pub y_prev: &'a A,
    pub y: &'a A,
    pub residual: f64,
    pub nuclear_norm: f64,
}

fn relative(norm: f64, reference: f64) -> f64 {
    if reference > 0.0 {
        norm / reference
    } else {
        norm
    }
}

/// Classical singular value thresholding; also returns the nuclear norm of
/// the result.
pub fn svt<T: Real>(a: &DMatrix<T>, tau: T) -> Result<(DMatrix<T>, T)> {
    let (r, c) = a.shape();
    let svd = SVD::try_new(a.clone(), true, true, T::default_epsilon(), 1000 * (r + c).max(10))
        .ok_or(Error::SvdNoConvergence { slice: 0 })?;
    let shrunk = svd.singular_values.map(|s| rmax(s - tau, T::zero()));
    let nuclear = shrunk.iter().fold(T::zero(), |acc, &s| acc + s);
    let (u, v_t) = (svd.u.expect("requested"), svd.v_t.expect("requested"));
    Ok((u * DMatrix::from_diagonal(&shrunk) * v_t, nuclear))
}

/// Low-rank matrix completion of the entries of `m` outside `omega`.
pub fn lrmc_admm<T: Real>(
    m: &DMatrix<T>,
    omega: &ObservationMask,
    cfg: &CompletionConfig,
) -> Result<Completion<DMatrix<T>>> {
    lrmc_admm_observed(m, omega, cfg, |_| {})
}

/// [`lrmc_admm`] with a callback after every iteration.
pub fn lrmc_admm_observed<T: Real>(
    m: &DMatrix<T>,
    omega: &ObservationMask,
    cfg: &CompletionConfig,
    mut observe: impl FnMut(&Iterate<DMatrix<T>>),
) -> Result<Completion<DMatrix<T>>> {
    cfg.validate()?;
    omega.require_domain(&[m.nrows(), m.ncols()])?;
    omega.require_proper()?;
    let cols = m.ncols();
    for (i, j) in (0..m.nrows()).flat_map(|i| (0..cols).map(move |j| (i, j))) {
        if omega.is_observed(i * cols + j) && !m[(i, j)].is_finite() {
            return Err(Error::NonFinite(i * cols + j));
        }
    }
    let m0 = mask_keep(m, omega)?;
    let m_norm = m0.norm().as_f64();
    let mut e = DMatrix::zeros(m.nrows(), cols);
    let mut y = DMatrix::zeros(m.nrows(), cols);
    let mut x = DMatrix::zeros(m.nrows(), cols);
    let mut trace = CompletionTrace::default();
    let mut tau = cfg.tau0;
    for iter in 1..=cfg.max_iters {
        let t = T::lit(tau);
        let (x_new, nuclear) = svt(&(&m0 - &e + &y * t), t)?;
        x = x_new;
        e = mask_keep_missing(&(&m0 - &x + &y * t), omega)?;
        let r = &m0 - &x - &e;
        let y_new = &y + &r / t;
        let residual = relative(r.norm().as_f64(), m_norm);
        let nuclear_norm = nuclear.as_f64();
        observe(&Iterate {
            iter,
            tau,
            x: &x,
            e: &e,
            y_prev: &y,
            y: &y_new,
            residual,
            nuclear_norm,
        });
        y = y_new;
        trace.records.push(IterationRecord {
            iter,
            tau,
            residual,
            nuclear_norm,
        });
        tau = (cfg.alpha * tau).max(cfg.tau_min);
        if residual < cfg.rel_tol {
            trace.converged = true;
            break;
        }
    }
    Ok(Completion { x, trace })
}

/// Generalized completion of a t-matrix whose underlying array is observed
/// on `theta`; missing entries may be scattered inside t-scalars.
pub fn tmatrix_admm<T: Real>(
    m: &TMatrix<T>,
    theta: &ObservationMask,
    cfg: &CompletionConfig,
) -> Result<Completion<TMatrix<T>>> {
    tmatrix_admm_observed(m, theta, cfg, |_| {})
}

/// [`tmatrix_admm`] with a callback after every iteration.
pub fn tmatrix_admm_observed<T: Real>(
    m: &TMatrix<T>,
    theta: &ObservationMask,
    cfg: &CompletionConfig,
    mut observe: impl FnMut(&Iterate<TMatrix<T>>),
) -> Result<Completion<TMatrix<T>>> {
    cfg.validate()?;
    theta.require_domain(m.body().shape())?;
    theta.require_proper()?;
    if let Some(i) = m
        .body()
        .data()
        .iter()
        .enumerate()
        .position(|(i, z)| theta.is_observed(i) && !(z.re.is_finite() && z.im.is_finite()))
    {
        return Err(Error::NonFinite(i));
    }
    let m0 = mask_keep(m, theta)?;
    let m_norm = m0.frobenius_norm().as_f64();
    let (shape, (rows, cols)) = (m.scalar_shape().to_vec(), m.dims());
    let mut e = TMatrix::zeros(&shape, rows, cols)?;
    let mut y = TMatrix::zeros(&shape, rows, cols)?;
    let mut x = TMatrix::zeros(&shape, rows, cols)?;
    let mut trace = CompletionTrace::default();
    let mut tau = cfg.tau0;
    for iter in 1..=cfg.max_iters {
        let t = creal(T::lit(tau));
        let ty = y.scale(t);
        let (x_new, nuclear) = m0.sub(&e)?.add(&ty)?.tsvt_with_nuclear(t.re)?;
        x = x_new;
        e = mask_keep_missing(&m0.sub(&x)?.add(&ty)?, theta)?;
        let r = m0.sub(&x)?.sub(&e)?;
        let y_new = y.add(&r.scale(creal(T::one() / t.re)))?;
        let residual = relative(r.frobenius_norm().as_f64(), m_norm);
        let nuclear_norm = nuclear.as_f64();
        observe(&Iterate {
            iter,
            tau,
            x: &x,
            e: &e,
            y_prev: &y,
            y: &y_new,
            residual,
            nuclear_norm,
        });
        y = y_new;
        trace.records.push(IterationRecord {
            iter,
            tau,
            residual,
            nuclear_norm,
        });
        tau = (cfg.alpha * tau).max(cfg.tau_min);
        if residual < cfg.rel_tol {
            trace.converged = true;
            break;
        }
    }
    Ok(Completion { x, trace })
}
