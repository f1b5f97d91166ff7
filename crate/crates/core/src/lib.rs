//! Exact-arithmetic kernel for differential modules on p-adic annuli.
//!
//! Everything here is computed over exact rationals: valuations are
//! rationals in log-base-p units (the norm of `x` is `p^(-v(x))`), Gauss
//! valuations of Laurent polynomials are exact minima of affine forms,
//! and Newton polygons, slope factorizations, radius profiles, break
//! multisets and Swan conductors all come out as exact rational data.
//! No floating point enters any kernel path.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI
//! live in the companion `swan-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod context;
pub mod valuation;
pub mod coef;
pub mod laurent;
pub mod ratfunc;
pub mod expr;
pub mod matrix;
pub mod ore;
pub mod hensel;
pub mod diffmod;
pub mod swan;
pub mod galois;
pub mod rng;

pub use context::{Axis, Context, DiffContext, Radius};
pub use valuation::{Rat, Valuation};
pub use coef::Coef;
pub use laurent::LaurentPoly;
pub use ratfunc::RatFunc;
pub use ore::{NewtonPolygon, SlopeGroup, TwistedPoly};
pub use diffmod::{DiffModule, ScaleReport, Substitution};
pub use swan::{BreakFit, BreakSample, SwanReport};
pub use galois::{ASCharacter, KatoReport};

/// Convenience constructor for exact rationals from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    use num_bigint::BigInt;
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Exact rational from an integer.
pub fn rat_int(num: i64) -> Rat {
    use num_bigint::BigInt;
    Rat::from_integer(BigInt::from(num))
}
