//! Multivariate Laurent polynomials in u_1..u_n, t with exact Gauss
//! valuations.
//!
//! Exponent vectors have length n+1 with the t-exponent last. The Gauss
//! valuation at radius parameter r weights the t-exponent by r and the
//! u-exponents by 0 (the (1,..,1)-Gauss norm on the u-variables).

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::coef::Coef;
use crate::context::{Axis, Context, Radius};
use crate::valuation::{Rat, Valuation};

/// Exponent vector: u_1..u_n exponents then the t exponent.
pub type Expo = Vec<i64>;

/// A finite Laurent polynomial with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    ctx: Context,
    terms: BTreeMap<Expo, Coef>,
}

impl LaurentPoly {
    pub fn zero(ctx: Context) -> Self {
        LaurentPoly {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: Context) -> Self {
        LaurentPoly::constant(ctx, Coef::one())
    }

    pub fn constant(ctx: Context, c: Coef) -> Self {
        let mut f = LaurentPoly::zero(ctx);
        if !c.is_zero() {
            f.terms.insert(vec![0; ctx.n + 1], c);
        }
        f
    }

    pub fn from_int(ctx: Context, n: i64) -> Self {
        LaurentPoly::constant(ctx, Coef::from_int(n))
    }

    /// The constant `pi`.
    pub fn pi(ctx: Context) -> Self {
        LaurentPoly::constant(ctx, Coef::pi(&ctx))
    }

    /// A single monomial `c * u^I * t^j`.
    pub fn monomial(ctx: Context, expo: Expo, c: Coef) -> Self {
        assert_eq!(expo.len(), ctx.n + 1, "exponent vector length");
        let mut f = LaurentPoly::zero(ctx);
        if !c.is_zero() {
            f.terms.insert(expo, c);
        }
        f
    }

    /// The variable u_i (1-based).
    pub fn var_u(ctx: Context, i: usize) -> Self {
        assert!(i >= 1 && i <= ctx.n, "u{} out of range", i);
        let mut e = vec![0; ctx.n + 1];
        e[i - 1] = 1;
        LaurentPoly::monomial(ctx, e, Coef::one())
    }

    /// The variable t.
    pub fn var_t(ctx: Context) -> Self {
        let mut e = vec![0; ctx.n + 1];
        e[ctx.n] = 1;
        LaurentPoly::monomial(ctx, e, Coef::one())
    }

    /// `t^j` for signed j.
    pub fn t_pow(ctx: Context, j: i64) -> Self {
        let mut e = vec![0; ctx.n + 1];
        e[ctx.n] = j;
        LaurentPoly::monomial(ctx, e, Coef::one())
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &Coef)> {
        self.terms.iter()
    }

    pub fn coeff(&self, expo: &Expo) -> Coef {
        self.terms.get(expo).cloned().unwrap_or_else(Coef::zero)
    }

    fn insert_add(&mut self, expo: Expo, c: Coef) {
        if c.is_zero() {
            return;
        }
        let ctx = self.ctx;
        match self.terms.get_mut(&expo) {
            Some(existing) => {
                let sum = existing.add(&c, &ctx);
                if sum.is_zero() {
                    self.terms.remove(&expo);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(expo, c);
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.ctx, other.ctx, "context mismatch");
        let mut out = self.clone();
        for (e, c) in other.terms.iter() {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.ctx, other.ctx, "context mismatch");
        let mut out = LaurentPoly::zero(self.ctx);
        for (ea, ca) in self.terms.iter() {
            for (eb, cb) in other.terms.iter() {
                let e: Expo = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                out.insert_add(e, ca.mul(cb, &self.ctx));
            }
        }
        out
    }

    pub fn scale(&self, c: &Coef) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.ctx);
        for (e, a) in self.terms.iter() {
            out.insert_add(e.clone(), a.mul(c, &self.ctx));
        }
        out
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.ctx);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal partial derivative along an axis.
    pub fn partial(&self, axis: Axis) -> LaurentPoly {
        let idx = axis.index(self.ctx.n) - 1;
        let mut out = LaurentPoly::zero(self.ctx);
        for (e, c) in self.terms.iter() {
            let k = e[idx];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[idx] -= 1;
            out.insert_add(e2, c.mul(&Coef::from_int(k), &self.ctx));
        }
        out
    }

    /// Gauss valuation at radius parameter r: the exact minimum over the
    /// stored terms of `val(c) + j*r` with j the t-exponent. `+inf` iff
    /// the polynomial is zero.
    pub fn gauss_val(&self, r: &Radius) -> Valuation {
        let mut best = Valuation::Infinity;
        for (e, c) in self.terms.iter() {
            let j = e[self.ctx.n];
            let w = c.val(&self.ctx)
                + Valuation::Finite(r.value() * Rat::from_integer(BigInt::from(j)));
            best = best.min(w);
        }
        best
    }

    /// Componentwise minimum exponent over the support (None when zero).
    pub fn min_expo(&self) -> Option<Expo> {
        let mut it = self.terms.keys();
        let mut acc = it.next()?.clone();
        for e in it {
            for (a, b) in acc.iter_mut().zip(e.iter()) {
                if b < a {
                    *a = *b;
                }
            }
        }
        Some(acc)
    }

    /// Componentwise maximum exponent over the support (None when zero).
    pub fn max_expo(&self) -> Option<Expo> {
        let mut it = self.terms.keys();
        let mut acc = it.next()?.clone();
        for e in it {
            for (a, b) in acc.iter_mut().zip(e.iter()) {
                if b > a {
                    *a = *b;
                }
            }
        }
        Some(acc)
    }

    /// Multiply by the monomial `u^I t^j` (a unit of the Laurent ring).
    pub fn mul_monomial(&self, expo: &Expo, c: &Coef) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.ctx);
        for (e, a) in self.terms.iter() {
            let e2: Expo = e.iter().zip(expo.iter()).map(|(x, y)| x + y).collect();
            out.insert_add(e2, a.mul(c, &self.ctx));
        }
        out
    }

    /// Leading term under lexicographic exponent order.
    pub fn lead_term(&self) -> Option<(&Expo, &Coef)> {
        self.terms.iter().next_back()
    }

    /// Trailing term under lexicographic exponent order.
    pub fn trail_term(&self) -> Option<(&Expo, &Coef)> {
        self.terms.iter().next()
    }

    /// Exact division: returns `Some(q)` with `self = q * other`, or
    /// `None` when no exact quotient exists. Works in the Laurent ring,
    /// so monomial factors never obstruct.
    pub fn div_exact(&self, other: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(LaurentPoly::zero(self.ctx));
        }
        // Componentwise degree box any quotient term must live in.
        let lo: Expo = self
            .min_expo()?
            .iter()
            .zip(other.min_expo()?.iter())
            .map(|(a, b)| a - b)
            .collect();
        let hi: Expo = self
            .max_expo()?
            .iter()
            .zip(other.max_expo()?.iter())
            .map(|(a, b)| a - b)
            .collect();
        if lo.iter().zip(hi.iter()).any(|(a, b)| a > b) {
            return None;
        }
        let (glead_e, glead_c) = other.lead_term()?;
        let glead_e = glead_e.clone();
        let ginv = glead_c.inv(&self.ctx)?;
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero(self.ctx);
        while let Some((rlead_e, rlead_c)) = rem.lead_term() {
            let qe: Expo = rlead_e
                .iter()
                .zip(glead_e.iter())
                .map(|(a, b)| a - b)
                .collect();
            if qe.iter().zip(lo.iter()).any(|(a, b)| a < b)
                || qe.iter().zip(hi.iter()).any(|(a, b)| a > b)
            {
                return None;
            }
            let qc = rlead_c.mul(&ginv, &self.ctx);
            let piece = LaurentPoly::monomial(self.ctx, qe.clone(), qc.clone());
            rem = rem.sub(&piece.mul(other));
            quot.insert_add(qe, qc);
            if rem.is_zero() {
                return Some(quot);
            }
        }
        Some(quot)
    }

    /// Substitute each u_i and t by the given rational functions. Images
    /// must be nonzero wherever a negative exponent requires inversion.
    pub fn substitute(
        &self,
        target: Context,
        u_images: &[crate::ratfunc::RatFunc],
        t_image: &crate::ratfunc::RatFunc,
    ) -> Result<crate::ratfunc::RatFunc, String> {
        use crate::ratfunc::RatFunc;
        assert_eq!(u_images.len(), self.ctx.n, "one image per u-variable");
        let mut out = RatFunc::zero(target);
        for (e, c) in self.terms.iter() {
            let mut term = RatFunc::from_laurent(LaurentPoly::constant(target, c.clone()));
            for (i, img) in u_images.iter().enumerate() {
                term = term.mul(&img.pow_i64(e[i])?);
            }
            term = term.mul(&t_image.pow_i64(e[self.ctx.n])?);
            out = out.add(&term);
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical serialization: terms in lexicographic exponent order,
    /// `coef*u1^a*..*t^c` with unit exponents and unit coefficients
    /// elided.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter() {
            let mono = monomial_string(&self.ctx, e);
            let (sign, body) = term_string(c, &mono);
            if first {
                if sign {
                    write!(f, "-")?;
                }
                write!(f, "{}", body)?;
                first = false;
            } else {
                write!(f, "{}{}", if sign { "-" } else { "+" }, body)?;
            }
        }
        Ok(())
    }
}

fn monomial_string(ctx: &Context, e: &Expo) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (i, k) in e.iter().enumerate() {
        if *k == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        if i < ctx.n {
            let _ = write!(s, "u{}", i + 1);
        } else {
            s.push('t');
        }
        if *k != 1 {
            let _ = write!(s, "^{}", k);
        }
    }
    s
}

/// Render one term; returns (leading-minus, body-without-sign).
fn term_string(c: &Coef, mono: &str) -> (bool, String) {
    use alloc::format;
    match c {
        Coef::Plain(q) => {
            let neg = q.is_negative();
            let q_abs = if neg { -q.clone() } else { q.clone() };
            if mono.is_empty() {
                (neg, format!("{}", q_abs))
            } else if q_abs.is_one() {
                (neg, String::from(mono))
            } else {
                (neg, format!("{}*{}", q_abs, mono))
            }
        }
        Coef::Pi(_) => {
            let body = if mono.is_empty() {
                format!("{}", c)
            } else {
                format!("{}*{}", c, mono)
            };
            (false, body)
        }
    }
}
