//! Formal quotients of Laurent polynomials with exact Gauss valuations.
//!
//! Equality is cross-multiplication equality; the valuation of `num/den`
//! is `gauss_val(num) - gauss_val(den)`, well defined because the Gauss
//! valuation is multiplicative. Normalization keeps denominators small
//! (unit-monomial and content scaling, plus collapsing exact quotients)
//! without a full multivariate gcd.

use alloc::string::String;
use core::fmt;

use num_traits::One;

use crate::coef::Coef;
use crate::context::{Axis, Context, Radius};
use crate::laurent::LaurentPoly;
use crate::valuation::Valuation;

#[derive(Clone, Debug)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn zero(ctx: Context) -> Self {
        RatFunc {
            num: LaurentPoly::zero(ctx),
            den: LaurentPoly::one(ctx),
        }
    }

    pub fn one(ctx: Context) -> Self {
        RatFunc::from_laurent(LaurentPoly::one(ctx))
    }

    pub fn from_laurent(num: LaurentPoly) -> Self {
        let den = LaurentPoly::one(*num.context());
        RatFunc { num, den }
    }

    pub fn from_int(ctx: Context, n: i64) -> Self {
        RatFunc::from_laurent(LaurentPoly::from_int(ctx, n))
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, String> {
        if den.is_zero() {
            return Err(String::from("zero denominator"));
        }
        assert_eq!(num.context(), den.context(), "context mismatch");
        let mut f = RatFunc { num, den };
        f.normalize();
        Ok(f)
    }

    pub fn context(&self) -> &Context {
        self.num.context()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is trivial (a unit monomial was absorbed).
    pub fn is_polynomial(&self) -> bool {
        self.den.num_terms() == 1
            && self
                .den
                .lead_term()
                .map(|(e, c)| e.iter().all(|k| *k == 0) && c == &Coef::one())
                .unwrap_or(false)
    }

    /// When the denominator is trivial, the numerator as a Laurent poly.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        if self.is_polynomial() {
            Some(&self.num)
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        let ctx = *self.context();
        if self.num.is_zero() {
            self.den = LaurentPoly::one(ctx);
            return;
        }
        // Absorb the denominator's trailing monomial (a unit) and scale so
        // its trailing coefficient is 1.
        if let Some((e, c)) = self.den.trail_term() {
            let e = e.clone();
            let cinv = c.inv(&ctx).expect("nonzero trailing coefficient");
            if e.iter().any(|k| *k != 0) || !matches!(&cinv, Coef::Plain(q) if q.is_one()) {
                let minus_e: alloc::vec::Vec<i64> = e.iter().map(|k| -k).collect();
                self.num = self.num.mul_monomial(&minus_e, &cinv);
                self.den = self.den.mul_monomial(&minus_e, &cinv);
            }
        }
        // Collapse when the quotient is exact.
        if self.den.num_terms() > 1 {
            if let Some(q) = self.num.div_exact(&self.den) {
                self.num = q;
                self.den = LaurentPoly::one(ctx);
            }
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let mut out = if self.den == other.den {
            RatFunc {
                num: self.num.add(&other.num),
                den: self.den.clone(),
            }
        } else {
            RatFunc {
                num: self
                    .num
                    .mul(&other.den)
                    .add(&other.num.mul(&self.den)),
                den: self.den.mul(&other.den),
            }
        };
        out.normalize();
        out
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        let mut out = RatFunc {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        };
        out.normalize();
        out
    }

    pub fn inv(&self) -> Result<RatFunc, String> {
        if self.is_zero() {
            return Err(String::from("inverse of zero"));
        }
        let mut out = RatFunc {
            num: self.den.clone(),
            den: self.num.clone(),
        };
        out.normalize();
        Ok(out)
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, String> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow_i64(&self, k: i64) -> Result<RatFunc, String> {
        if k == 0 {
            return Ok(RatFunc::one(*self.context()));
        }
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFunc::one(*self.context());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Coef) -> RatFunc {
        let mut out = RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        };
        out.normalize();
        out
    }

    /// Quotient-rule formal partial derivative.
    pub fn partial(&self, axis: Axis) -> RatFunc {
        if self.is_polynomial() {
            return RatFunc::from_laurent(self.num.partial(axis));
        }
        let dn = self.num.partial(axis);
        let dd = self.den.partial(axis);
        let mut out = RatFunc {
            num: dn.mul(&self.den).sub(&self.num.mul(&dd)),
            den: self.den.mul(&self.den),
        };
        out.normalize();
        out
    }

    /// Gauss valuation: `gauss_val(num) - gauss_val(den)`.
    pub fn gauss_val(&self, r: &Radius) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinity;
        }
        self.num.gauss_val(r) - self.den.gauss_val(r)
    }

    /// Substitute rational functions for the variables.
    pub fn substitute(
        &self,
        target: Context,
        u_images: &[RatFunc],
        t_image: &RatFunc,
    ) -> Result<RatFunc, String> {
        let num = self.num.substitute(target, u_images, t_image)?;
        let den = self.den.substitute(target, u_images, t_image)?;
        if den.is_zero() {
            return Err(String::from(
                "substitution sends a denominator to zero",
            ));
        }
        num.div(&den)
    }
}

impl PartialEq for RatFunc {
    /// Cross-multiplication equality.
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RatFunc {}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
