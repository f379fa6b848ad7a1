#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod charts;
pub mod exactpoly;
pub mod hodge;
pub mod instances;
pub mod ratfunc;
pub mod report;
pub mod stringy;

pub use exactpoly::{int, rat, FieldPoint, Monomial, PolyError, Polynomial, Rational};
pub use ratfunc::{NotPolynomial, RatFuncError, RationalFunction};
