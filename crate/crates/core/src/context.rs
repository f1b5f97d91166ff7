//! Base contexts: the prime, the u-variables, radii, and derivation axes.

use alloc::format;
use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::valuation::Rat;

/// Arithmetic context: prime `p`, number `n` of u-variables, and whether
/// the coefficient field is extended by `pi` with `pi^(p-1) = -p`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Context {
    pub p: u32,
    pub n: usize,
    pub uses_pi: bool,
}

impl Context {
    pub fn new(p: u32, n: usize, uses_pi: bool) -> Result<Self, String> {
        if p < 2 || !is_prime(p) {
            return Err(format!("p = {} is not a prime >= 2", p));
        }
        Ok(Context { p, n, uses_pi })
    }

    /// Number of derivation axes: the u-axes plus the t-axis.
    pub fn axes(&self) -> usize {
        self.n + 1
    }

    /// 1/(p-1), the valuation of pi and the spectral gap of every axis.
    pub fn pi_val(&self) -> Rat {
        Rat::new(BigInt::one(), BigInt::from(self.p - 1))
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A derivation axis: one of the u-variables (1-based) or t.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Axis {
    U(usize),
    T,
}

impl Axis {
    /// 1-based index in `1..=n+1`, with t last.
    pub fn index(&self, n: usize) -> usize {
        match self {
            Axis::U(i) => *i,
            Axis::T => n + 1,
        }
    }

    pub fn from_index(idx: usize, n: usize) -> Result<Axis, String> {
        if idx >= 1 && idx <= n {
            Ok(Axis::U(idx))
        } else if idx == n + 1 {
            Ok(Axis::T)
        } else {
            Err(format!("axis {} out of range for n = {}", idx, n))
        }
    }

    pub fn is_t(&self) -> bool {
        matches!(self, Axis::T)
    }

    /// All axes of a context, u-axes first, t last.
    pub fn all(n: usize) -> impl Iterator<Item = Axis> {
        (1..=n).map(Axis::U).chain(core::iter::once(Axis::T))
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::U(i) => write!(f, "u{}", i),
            Axis::T => write!(f, "t"),
        }
    }
}

/// Radius parameter `r = -log_p(rho)`, a positive rational, so the radius
/// itself is `rho = p^(-r)` in `(0,1)`.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub struct Radius(Rat);

impl Radius {
    pub fn new(r: Rat) -> Result<Self, String> {
        if r <= Rat::zero() {
            return Err(format!("radius parameter r = {} must be positive", r));
        }
        Ok(Radius(r))
    }

    pub fn from_int(r: i64) -> Self {
        Radius::new(Rat::from_integer(BigInt::from(r))).expect("positive")
    }

    pub fn from_pair(num: i64, den: i64) -> Self {
        Radius::new(Rat::new(BigInt::from(num), BigInt::from(den))).expect("positive")
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Differential context: a base context with a chosen derivation axis and
/// radius. Twisted polynomials live over this. `negated` selects the
/// opposite ring's derivation `-d` instead of `d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffContext {
    pub ctx: Context,
    pub axis: Axis,
    pub r: Radius,
    pub negated: bool,
}

impl DiffContext {
    pub fn new(ctx: Context, axis: Axis, r: Radius) -> Result<Self, String> {
        if let Axis::U(i) = axis {
            if i < 1 || i > ctx.n {
                return Err(format!("axis u{} out of range for n = {}", i, ctx.n));
            }
        }
        Ok(DiffContext {
            ctx,
            axis,
            r,
            negated: false,
        })
    }

    /// Same context over the opposite derivation `-d`.
    pub fn opposite(&self) -> DiffContext {
        let mut c = self.clone();
        c.negated = !c.negated;
        c
    }

    /// Valuation of the operator norm of the axis derivation on the field:
    /// 0 for u-axes, -r for the t-axis. Unchanged by negation.
    pub fn operator_val(&self) -> Rat {
        operator_val(self.axis, &self.r)
    }

    /// Valuation of the spectral norm of the axis derivation on the field:
    /// operator valuation plus 1/(p-1).
    pub fn spectral_val(&self) -> Rat {
        self.operator_val() + self.ctx.pi_val()
    }
}

/// Operator-norm valuation of a derivation axis at radius r.
pub fn operator_val(axis: Axis, r: &Radius) -> Rat {
    match axis {
        Axis::U(_) => Rat::zero(),
        Axis::T => -r.value().clone(),
    }
}

/// Per-axis norm profile `(op_val, sp_val)` of the derivation on the field
/// itself: u-axes give `(0, 1/(p-1))`, the t-axis `(-r, -r + 1/(p-1))`.
pub fn derivation_profile(ctx: &Context, axis: Axis, r: &Radius) -> (Rat, Rat) {
    let op = operator_val(axis, r);
    let sp = op.clone() + ctx.pi_val();
    (op, sp)
}
