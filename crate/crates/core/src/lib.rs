//! Quaternionic moment sequences and their Herglotz-type representations.
//!
//! The crate covers four views of the same object and the maps between them:
//!
//! * [`moments`]: Hermitian quaternionic matrix sequences `r(n)`, their block
//!   Toeplitz matrices, negative-square counts and the positive extension
//!   step built on [`qlinalg::psd_complete_3x3`].
//! * [`measures`]: discrete q-positive measures and synthesis
//!   `r(n) = Σ e^{int}(ν₁ + ν₂ j)`, including indefinite differences.
//! * [`realize`]: finite-dimensional Pontryagin realizations
//!   `r(n) = C^* J Uⁿ C`, Cayley-generated J-unitaries, coisometry dilation and
//!   alignment of equivalent realizations.
//! * [`slicefn`]: slice power series, the Representation Formula and the
//!   Herglotz / Carathéodory kernels on the quaternionic unit ball.
//!
//! Scalar and matrix arithmetic lives in [`quat`], [`qmatrix`] and
//! [`cmatrix`]; [`formats`] holds the JSON file schemas and [`random`] the
//! seeded generators used by the tests, benches and CLI.

pub mod cmatrix;
pub mod error;
pub mod formats;
pub mod measures;
pub mod moments;
pub mod qlinalg;
pub mod qmatrix;
pub mod quat;
pub mod random;
pub mod realize;
pub mod slicefn;

pub use cmatrix::ComplexMatrix;
pub use error::{Error, Result};
pub use measures::{DiscreteQPositiveMeasure, MeasureAtom, MixedMeasurePair, Violation};
pub use moments::{BlockToeplitz, HermitianSequence, NegativeSquares};
pub use qlinalg::Inertia;
pub use qmatrix::{adjoint, chi_embed, chi_inverse, QMatrix};
pub use quat::{frame_complete, qmul, split_coefficient, ImaginaryUnit, Quaternion};
pub use realize::{PontryaginRealization, SignatureGram};
pub use slicefn::{CaratheodoryFunction, SliceMeasure, SlicePowerSeries};


