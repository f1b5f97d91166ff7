//! Coefficients: plain rationals, or elements of the field extension by
//! `pi` with `pi^(p-1) = -p` (Dwork's constant).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::context::Context;
use crate::valuation::{vp_rat, Rat, Valuation};

/// An exact coefficient over Q or Q(pi).
///
/// The pi-extended form stores the unique degree-< (p-1) normal form
/// `c_0 + c_1 pi + ... + c_{p-2} pi^(p-2)`; multiplication reduces
/// `pi^(p-1)` to `-p`. The valuation of a nonzero element is
/// `min_j (v_p(c_j) + j/(p-1))`; the minimum is attained at a unique j
/// because the fractional parts `j/(p-1)` are pairwise distinct, which is
/// what makes the valuation multiplicative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Coef {
    Plain(Rat),
    /// Exactly `p-1` entries `c_0..c_{p-2}`.
    Pi(Vec<Rat>),
}

impl Coef {
    pub fn zero() -> Self {
        Coef::Plain(Rat::zero())
    }

    pub fn one() -> Self {
        Coef::Plain(Rat::one())
    }

    pub fn from_int(n: i64) -> Self {
        Coef::Plain(Rat::from_integer(BigInt::from(n)))
    }

    pub fn from_rat(q: Rat) -> Self {
        Coef::Plain(q)
    }

    /// The element `pi` itself; requires a pi-extended context.
    pub fn pi(ctx: &Context) -> Self {
        debug_assert!(ctx.uses_pi, "pi in a plain context");
        let deg = (ctx.p - 1) as usize;
        if deg == 1 {
            // p = 2: pi has minimal polynomial pi = -2, a rational.
            return Coef::Plain(Rat::from_integer(BigInt::from(-2)));
        }
        let mut v = vec![Rat::zero(); deg];
        v[1] = Rat::one();
        Coef::Pi(v)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coef::Plain(q) => q.is_zero(),
            Coef::Pi(v) => v.iter().all(|c| c.is_zero()),
        }
    }

    fn to_vec(&self, deg: usize) -> Vec<Rat> {
        match self {
            Coef::Plain(q) => {
                let mut v = vec![Rat::zero(); deg];
                v[0] = q.clone();
                v
            }
            Coef::Pi(v) => {
                debug_assert_eq!(v.len(), deg);
                v.clone()
            }
        }
    }

    /// Collapse a pi-vector back to `Plain` when only c_0 survives.
    fn normalize(v: Vec<Rat>) -> Coef {
        if v.iter().skip(1).all(|c| c.is_zero()) {
            Coef::Plain(v.into_iter().next().unwrap_or_else(Rat::zero))
        } else {
            Coef::Pi(v)
        }
    }

    pub fn add(&self, other: &Coef, ctx: &Context) -> Coef {
        match (self, other) {
            (Coef::Plain(a), Coef::Plain(b)) => Coef::Plain(a + b),
            _ => {
                let deg = (ctx.p - 1) as usize;
                let a = self.to_vec(deg);
                let b = other.to_vec(deg);
                Coef::normalize(a.into_iter().zip(b).map(|(x, y)| x + y).collect())
            }
        }
    }

    pub fn neg(&self) -> Coef {
        match self {
            Coef::Plain(a) => Coef::Plain(-a),
            Coef::Pi(v) => Coef::Pi(v.iter().map(|c| -c).collect()),
        }
    }

    pub fn sub(&self, other: &Coef, ctx: &Context) -> Coef {
        self.add(&other.neg(), ctx)
    }

    pub fn mul(&self, other: &Coef, ctx: &Context) -> Coef {
        match (self, other) {
            (Coef::Plain(a), Coef::Plain(b)) => Coef::Plain(a * b),
            _ => {
                let deg = (ctx.p - 1) as usize;
                let a = self.to_vec(deg);
                let b = other.to_vec(deg);
                // Convolve, then reduce pi^(p-1) = -p.
                let mut prod = vec![Rat::zero(); 2 * deg - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        prod[i + j] += x * y;
                    }
                }
                let minus_p = Rat::from_integer(BigInt::from(-(ctx.p as i64)));
                for k in (deg..prod.len()).rev() {
                    let c = core::mem::replace(&mut prod[k], Rat::zero());
                    if !c.is_zero() {
                        prod[k - deg] += c * &minus_p;
                    }
                }
                prod.truncate(deg);
                Coef::normalize(prod)
            }
        }
    }

    /// Multiplicative inverse of a nonzero coefficient.
    ///
    /// Over Q(pi) this inverts via the valuation-graded structure: every
    /// nonzero element has a unique minimal-valuation component, so the
    /// geometric series for the cofactor terminates after (p-1) steps in
    /// exact arithmetic once written as `lead * (1 + small)` -- but since
    /// the extension is just Q[pi]/(pi^(p-1)+p), we instead solve the
    /// (p-1)x(p-1) linear system c * x = 1 by Gaussian elimination over Q.
    pub fn inv(&self, ctx: &Context) -> Option<Coef> {
        if self.is_zero() {
            return None;
        }
        match self {
            Coef::Plain(a) => Some(Coef::Plain(a.recip())),
            Coef::Pi(_) => {
                let deg = (ctx.p - 1) as usize;
                let a = self.to_vec(deg);
                // Matrix of multiplication by `a` in the basis 1, pi, ..,
                // pi^(deg-1): column j holds a * pi^j reduced.
                let minus_p = Rat::from_integer(BigInt::from(-(ctx.p as i64)));
                let mut m = vec![vec![Rat::zero(); deg]; deg];
                for j in 0..deg {
                    for (i, c) in a.iter().enumerate() {
                        let k = i + j;
                        if k < deg {
                            m[k][j] += c.clone();
                        } else {
                            m[k - deg][j] += c * &minus_p;
                        }
                    }
                }
                let mut rhs = vec![Rat::zero(); deg];
                rhs[0] = Rat::one();
                solve_dense(&mut m, &mut rhs).map(Coef::normalize)
            }
        }
    }

    /// Valuation `min_j (v_p(c_j) + j/(p-1))`, or `+inf` for zero.
    pub fn val(&self, ctx: &Context) -> Valuation {
        match self {
            Coef::Plain(q) => match vp_rat(ctx.p, q) {
                Some(v) => Valuation::Finite(v),
                None => Valuation::Infinity,
            },
            Coef::Pi(v) => {
                let step = ctx.pi_val();
                let mut best = Valuation::Infinity;
                for (j, c) in v.iter().enumerate() {
                    if let Some(vc) = vp_rat(ctx.p, c) {
                        let cand =
                            Valuation::Finite(vc + &step * Rat::from_integer(BigInt::from(j)));
                        best = best.min(cand);
                    }
                }
                best
            }
        }
    }

    /// Integer content sign normalization helper used by printing.
    pub fn is_negative_plain(&self) -> bool {
        matches!(self, Coef::Plain(q) if q.is_negative())
    }
}

/// Solve a small dense linear system over Q in place; returns the solution
/// vector, or None if singular.
fn solve_dense(m: &mut [Vec<Rat>], rhs: &mut [Rat]) -> Option<Vec<Rat>> {
    let nn = rhs.len();
    for col in 0..nn {
        let piv = (col..nn).find(|&row| !m[row][col].is_zero())?;
        m.swap(col, piv);
        rhs.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        rhs[col] *= &inv;
        for row in 0..nn {
            if row != col && !m[row][col].is_zero() {
                let f = m[row][col].clone();
                for k in 0..nn {
                    let t = &m[col][k] * &f;
                    m[row][k] -= t;
                }
                let t = &rhs[col] * &f;
                rhs[row] -= t;
            }
        }
    }
    Some(rhs.to_vec())
}

impl fmt::Display for Coef {
    /// Canonical form: plain rationals bare, pi-extended sums always
    /// parenthesized, e.g. `(1+2*pi)` or `(1/2*pi^2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coef::Plain(q) => write!(f, "{}", q),
            Coef::Pi(v) => {
                write!(f, "(")?;
                let mut first = true;
                for (j, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        if !c.is_negative() {
                            write!(f, "+")?;
                        }
                    }
                    first = false;
                    if j == 0 {
                        write!(f, "{}", c)?;
                    } else {
                        if c.is_one() {
                            write!(f, "pi")?;
                        } else if (-c).is_one() {
                            write!(f, "-pi")?;
                        } else {
                            write!(f, "{}*pi", c)?;
                        }
                        if j > 1 {
                            write!(f, "^{}", j)?;
                        }
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                write!(f, ")")
            }
        }
    }
}
