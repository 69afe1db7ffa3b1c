//! Marked schemes over strongly stable monomial ideals.
//!
//! Polynomial rings are `K[x0, ..., xn]` with `x0 < x1 < ... < xn` over the
//! rationals. The main entry points are [`scheme::marked_scheme`], the
//! marked-basis criteria in [`criteria`] and the reducers in [`reduction`].

pub mod borel;
pub mod criteria;
pub mod error;
pub mod hilbert;
pub mod monomial;
pub mod oracle;
pub mod parse;
pub mod polyparam;
pub mod rational;
pub mod reduction;
pub mod scheme;

pub use borel::{StarDecomposition, StronglyStableIdeal};
pub use error::{Error, ErrorKind, ParseError, Result};
pub use monomial::Monomial;
pub use polyparam::{GenericSet, MarkedPoly, MarkedSet, ParamPoly, ParamSpace, Parameter, QPoly, SetKind, XPoly};
pub use rational::Rational;
