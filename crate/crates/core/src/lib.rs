//! Finite and periodic continued fractions over quadratic number rings:
//! normal forms, the group law on classes, the matrix homomorphism,
//! eigenvalue characters and the convergence classification.

pub mod cfcore;
pub mod convergence;
pub mod error;
pub mod exactnum;
pub mod grouptheory;
pub mod matrix2;
pub mod pcf;
pub mod syntax;

pub use error::{Error, ParseError, Result};
pub use exactnum::{BaseField, RingElem};
