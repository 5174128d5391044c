//! Exact arithmetic kernel: rationals, polynomials, rational functions,
//! finite fields and p-adic valuations.

pub mod fp;
pub mod linalg;
pub mod logvalue;
mod modgcd;
pub mod poly;
pub mod ratfn;
pub mod rational;
pub mod valuation;

pub use fp::{FpPoly, FpRatFn};
pub use logvalue::LogValue;
pub use poly::Poly;
pub use ratfn::RatFn;
pub use rational::BigRat;
pub use valuation::GaussVal;
