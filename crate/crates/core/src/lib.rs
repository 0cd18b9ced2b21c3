//! Generalized matrices over higher-order t-scalars and the Higher-Order TNN
//! completion solver.
//!
//! A t-scalar is an element of the commutative algebra `ℂ^{I1×…×IN}` whose
//! product is N-way circular convolution; the multi-mode DFT diagonalizes it.
//! A t-matrix is a rectangular array of t-scalars and decouples, in the
//! Fourier domain, into `K = I1⋯IN` ordinary complex matrices (spectral
//! slices). Everything slice-wise — products, TSVD, TSVT, pseudo-inverse,
//! ranks and Schatten norms — is built on that.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix `f64`, which the solver is tuned for.
//!
//! ```
//! use htnn::{TMatrixF64, TScalarF64};
//!
//! let x = TScalarF64::from_real(vec![2, 2], &[1.0, 2.0, 3.0, 4.0]).unwrap();
//! let e = TScalarF64::identity(vec![2, 2]).unwrap();
//! assert_eq!(x.mul(&e).unwrap().body().real_parts(), vec![1.0, 2.0, 3.0, 4.0]);
//!
//! let id = TMatrixF64::identity(&[2, 2], 3).unwrap();
//! assert_eq!(id.trace_rank(Default::default()).unwrap(), 12);
//! ```

pub mod completion;
pub mod error;
pub mod experiments;
pub mod image_io;
pub mod lifting;
pub mod scalar;
pub mod spectral;
pub mod tmatrix;
pub mod tscalar;

pub use completion::{
    lrmc_admm, lrmc_admm_observed, mask_keep, mask_keep_missing, svt, tmatrix_admm, tmatrix_admm_observed, Completion,
    CompletionConfig, CompletionTrace, Iterate, IterationRecord, Maskable, ObservationMask,
};
pub use error::{Error, Result};
pub use lifting::{
    downconvert, downconvert_raw, lift_image, lift_mask, BoundaryPolicy, LiftedTMatrix, Neighborhood, SpectralImage,
    ValueDomain,
};
pub use scalar::Real;
pub use spectral::{forward_dft, inverse_dft, permute_axes, reshape_row_index_first, ComplexArrayN};
pub use tmatrix::{HigherOrderRank, RankTolerance, SpectralSlices, TMatrix, TsvdFactors};
pub use tscalar::{PartialOrdering, TScalar, TScalarSpectrum};

pub use num_complex::Complex;
pub use num_rational::Ratio;

pub type Complex64 = Complex<f64>;
pub type ComplexArrayF64 = ComplexArrayN<f64>;
pub type TScalarF64 = TScalar<f64>;
pub type TMatrixF64 = TMatrix<f64>;
pub type TsvdFactorsF64 = TsvdFactors<f64>;
pub type SpectralImageF64 = SpectralImage<f64>;

pub type ComplexArrayF32 = ComplexArrayN<f32>;
pub type TScalarF32 = TScalar<f32>;
pub type TMatrixF32 = TMatrix<f32>;
pub type SpectralImageF32 = SpectralImage<f32>;
