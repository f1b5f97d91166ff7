//! Valuations in log-base-p units, with `+inf` for the zero element.

use alloc::string::String;
use alloc::format;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Exact rational scalar used throughout the kernel.
pub type Rat = num_rational::BigRational;

/// A valuation value: a rational number or `+inf`.
///
/// Units are log base p of the reciprocal norm, so `|x| = p^(-v(x))` and
/// `v(p) = 1`. Only the zero element of a ring has valuation `+inf`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Valuation {
    Finite(Rat),
    Infinity,
}

impl Valuation {
    pub fn zero() -> Self {
        Valuation::Finite(Rat::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Valuation::Finite(Rat::from_integer(BigInt::from(n)))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinity)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    /// The finite value, if any.
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Valuation::Finite(q) => Some(q),
            Valuation::Infinity => None,
        }
    }

    /// Unwrap a finite value; panics on `+inf`.
    pub fn expect_finite(&self) -> &Rat {
        self.finite().expect("valuation is +inf")
    }

    /// `min(+inf, q) = q`; finite values compare as rationals.
    pub fn min(self, other: Valuation) -> Valuation {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// Multiply by an exact rational scalar. `+inf` absorbs.
    pub fn scale(&self, c: &Rat) -> Valuation {
        match self {
            Valuation::Finite(q) => Valuation::Finite(q * c),
            Valuation::Infinity => Valuation::Infinity,
        }
    }

    pub fn to_string_exact(&self) -> String {
        match self {
            Valuation::Finite(q) => format!("{}", q),
            Valuation::Infinity => String::from("inf"),
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
            (Valuation::Infinity, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Finite(_), Valuation::Infinity) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl Sub for Valuation {
    type Output = Valuation;
    /// Difference of valuations; `inf - finite = inf`. `finite - inf` is
    /// not meaningful and panics.
    fn sub(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a - b),
            (Valuation::Infinity, Valuation::Finite(_)) => Valuation::Infinity,
            _ => panic!("cannot subtract +inf valuation"),
        }
    }
}

impl Neg for Valuation {
    type Output = Valuation;
    fn neg(self) -> Valuation {
        match self {
            Valuation::Finite(a) => Valuation::Finite(-a),
            Valuation::Infinity => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(q) => write!(f, "{}", q),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

/// p-adic valuation of a nonzero integer: the exact power of p dividing it.
pub fn vp_int(p: u32, n: &BigInt) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut m = n.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = num_integer_div_rem(&m, &p);
        if r.is_zero() {
            v += 1;
            m = q;
        } else {
            return Some(v);
        }
    }
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    (a / b, a % b)
}

/// p-adic valuation of an exact rational; `None` for zero.
pub fn vp_rat(p: u32, q: &Rat) -> Option<Rat> {
    if q.is_zero() {
        return None;
    }
    let vn = vp_int(p, q.numer())?;
    let vd = vp_int(p, q.denom()).expect("denominator nonzero");
    Some(Rat::from_integer(BigInt::from(vn - vd)))
}
