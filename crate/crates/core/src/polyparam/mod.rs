//! Exact polynomial layer: parameter rings, x-polynomials, marked sets.

pub mod marked;
pub mod param;
pub mod xpoly;

pub use marked::{generic_marked_set, generic_superminimal_set, GenericSet, MarkedPoly, MarkedSet, SetKind};
pub use param::{PMon, ParamPoly, ParamSpace, Parameter};
pub use xpoly::{x0_split, Coefficient, PPoly, QPoly, XPoly};
