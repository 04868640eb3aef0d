//! Alternating multiple mixed values: symbolic algebra, regularization,
//! high-precision evaluation and relation search.

pub mod algebra;
pub mod arctan;
pub mod checks;
pub mod error;
pub mod expr;
pub mod harmonic;
pub mod index;
pub mod lincomb;
pub mod monomial;
pub mod mp;
pub mod numerics;
pub mod regularization;
pub mod relations;
pub mod scalar;
pub mod words;

pub use error::{Error, Result};
pub use index::{Component, Family, FamilyIndex, Index, Parity, Sign};
pub use lincomb::LinComb;
pub use mp::Mp;
pub use scalar::{Real, Scalar};
pub use words::{CmzvIndex, Letter, Root4, Word};

pub type Rational = num_rational::BigRational;
pub type GaussRational = num_complex::Complex<Rational>;
