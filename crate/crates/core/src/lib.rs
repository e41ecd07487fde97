//! Core toolkit for finite-dimensional ordered *-vector spaces with an order unit.
//!
//! The hermitian part of the space is modeled as `R^n` in a fixed basis; a complex
//! element is always the pair of its real and imaginary parts. Cones are polyhedral
//! (H- or V-representation) or the PSD cone of d-by-d hermitian matrices. Everything
//! over polyhedral cones runs in exact rational arithmetic on top of a certifying
//! simplex solver; matrix-cone paths return tolerance-certified intervals.
//!
//! The crate is `no_std` (alloc required); IO, file formats and the command line
//! front end live in the companion `ordunit-cli` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod arch;
pub mod cone;
pub mod error;
pub mod funcsys;
pub mod linalg;
pub mod lp;
pub mod norms;
pub mod order;
pub mod psd;
pub mod scalar;
pub mod vector;

pub use crate::cone::{ConeSpec, OrderedSpace};
pub use crate::error::{Error, Result};
pub use crate::scalar::{Rational, Scalar, ScalarMode};
pub use crate::vector::{ComplexElement, ComplexFunctional, RealFunctional, RealVector};
