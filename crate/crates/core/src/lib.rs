//! Numerical laboratory for Toeplitz operators on the Fock space `F_t²(ℂ)`.
//!
//! Every routine is generic over the scalar type (`f32` or `f64`, see
//! [`Real`]); the `*64` aliases below fix the usual double-precision choice.

pub mod berezin;
pub mod config;
pub mod error;
pub mod experiments;
pub mod fock;
pub mod matrix;
pub mod quadrature;
pub mod scalar;
pub mod selftest;
pub mod special;
pub mod spectra;
pub mod symbols;
pub mod toeplitz;

pub use config::{LabConfig, SearchConfig, TailPolicy};
pub use error::{FockError, Result};
pub use fock::FockParams;
pub use matrix::ComplexMatrix;
pub use quadrature::{PolarGrid, QuadratureRule};
pub use scalar::Real;
pub use spectra::{EssPosReport, Mode, SpectrumEstimate, Verdict};
pub use symbols::{GeneralSymbol, RadialProfile, SignedAtomicMeasure, Symbol};
pub use toeplitz::EigenSequence;

pub use num_complex::Complex;

pub type Complex64 = Complex<f64>;
pub type FockParams64 = FockParams<f64>;
pub type FockParams32 = FockParams<f32>;
pub type Symbol64 = Symbol<f64>;
pub type RadialProfile64 = RadialProfile<f64>;
pub type ComplexMatrix64 = ComplexMatrix<f64>;
pub type EigenSequence64 = EigenSequence<f64>;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
