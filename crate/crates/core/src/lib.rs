//! Exact octonion algebras over commutative rings: isotopes, related
//! triples, the Clifford model of the spin group, explicit trivialisations
//! of isotopes and finite-field orbit counts.

pub mod clifford;
pub mod error;
pub mod isotope;
pub mod linalg;
pub mod octonion;
pub mod orbits;
pub mod quadform;
pub mod report;
pub mod ring;
pub mod suite;
pub mod triality;
pub mod trivialize;

pub use error::{Error, Result};
pub use linalg::{BilinearMap, Matrix};
pub use octonion::{Octonion, OctonionAlgebra};
pub use quadform::QuadraticForm;
pub use report::{Check, Report, Status};
pub use ring::{RingContext, Scalar};
