//! Twisted (Ore) polynomials over a differential context, and their
//! Newton polygons.
//!
//! Elements are finite sums `sum a_i T^i` with coefficients written on
//! the left, multiplied by the rule `T a = a T + d(a)` where `d` is the
//! context's derivation (or `-d` in the opposite ring). The Newton
//! polygon is the lower convex hull of the points `(-i, v(a_i))`; its
//! slopes obey the usual additivity rules only strictly below the
//! operator-norm threshold of the derivation, so slopes are marked
//! readable exactly when they lie strictly below that threshold.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::context::DiffContext;
use crate::ratfunc::RatFunc;
use crate::valuation::{Rat, Valuation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedPoly {
    dctx: DiffContext,
    /// Coefficients a_0..a_d, trailing zeros trimmed.
    coeffs: Vec<RatFunc>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeGroup {
    pub slope: Rat,
    pub mult: usize,
    pub readable: bool,
}

/// Lower convex hull of `(-i, v(a_i))` with slope multiset and the
/// readability threshold `-log_p |d|_F` (the operator valuation).
///
/// Coefficients with `v = +inf` (zero coefficients) contribute no point;
/// their mass is the gap between the polynomial degree and the sum of the
/// finite-slope multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(i64, Rat)>,
    pub slopes: Vec<SlopeGroup>,
    pub threshold: Rat,
}

impl NewtonPolygon {
    pub fn readable(&self) -> impl Iterator<Item = &SlopeGroup> {
        self.slopes.iter().filter(|g| g.readable)
    }

    /// Least finite slope, if any.
    pub fn least_slope(&self) -> Option<&SlopeGroup> {
        self.slopes.first()
    }

    /// Hull height at integer x, linearly interpolated between vertices;
    /// `None` outside the hull's x-range.
    pub fn hull_at(&self, x: i64) -> Option<Rat> {
        let xs = Rat::from_integer(BigInt::from(x));
        for w in self.vertices.windows(2) {
            let (x0, y0) = (&w[0].0, &w[0].1);
            let (x1, y1) = (&w[1].0, &w[1].1);
            if *x0 <= x && x <= *x1 {
                let t = (&xs - Rat::from_integer(BigInt::from(*x0)))
                    / Rat::from_integer(BigInt::from(x1 - x0));
                return Some(y0 + (y1 - y0) * t);
            }
        }
        if self.vertices.len() == 1 && self.vertices[0].0 == x {
            return Some(self.vertices[0].1.clone());
        }
        None
    }
}

impl TwistedPoly {
    pub fn new(dctx: DiffContext, mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        TwistedPoly { dctx, coeffs }
    }

    pub fn zero(dctx: DiffContext) -> Self {
        TwistedPoly {
            dctx,
            coeffs: Vec::new(),
        }
    }

    pub fn one(dctx: DiffContext) -> Self {
        let ctx = dctx.ctx;
        TwistedPoly::new(dctx, vec![RatFunc::one(ctx)])
    }

    /// The variable T.
    pub fn t_var(dctx: DiffContext) -> Self {
        let ctx = dctx.ctx;
        TwistedPoly::new(dctx, vec![RatFunc::zero(ctx), RatFunc::one(ctx)])
    }

    /// `T - g`.
    pub fn linear(dctx: DiffContext, g: RatFunc) -> Self {
        let ctx = dctx.ctx;
        TwistedPoly::new(dctx, vec![g.neg(), RatFunc::one(ctx)])
    }

    pub fn dctx(&self) -> &DiffContext {
        &self.dctx
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFunc {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(self.dctx.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs
            .last()
            .map(|c| *c == RatFunc::one(self.dctx.ctx))
            .unwrap_or(false)
    }

    /// The context derivation applied to a coefficient (sign-adjusted in
    /// the opposite ring).
    pub fn derive(&self, f: &RatFunc) -> RatFunc {
        let d = f.partial(self.dctx.axis);
        if self.dctx.negated {
            d.neg()
        } else {
            d
        }
    }

    pub fn add(&self, other: &TwistedPoly) -> TwistedPoly {
        assert_eq!(self.dctx, other.dctx, "context mismatch");
        let ctx = self.dctx.ctx;
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            let a = self
                .coeffs
                .get(i)
                .cloned()
                .unwrap_or_else(|| RatFunc::zero(ctx));
            let b = other
                .coeffs
                .get(i)
                .cloned()
                .unwrap_or_else(|| RatFunc::zero(ctx));
            coeffs.push(a.add(&b));
        }
        TwistedPoly::new(self.dctx.clone(), coeffs)
    }

    pub fn neg(&self) -> TwistedPoly {
        TwistedPoly {
            dctx: self.dctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &TwistedPoly) -> TwistedPoly {
        self.add(&other.neg())
    }

    /// Left-multiply by a scalar coefficient.
    pub fn scale(&self, f: &RatFunc) -> TwistedPoly {
        TwistedPoly::new(
            self.dctx.clone(),
            self.coeffs.iter().map(|c| f.mul(c)).collect(),
        )
    }

    /// `T * self`: shift up one degree and add the derivative part,
    /// per `T a = a T + d(a)`.
    pub fn mul_t_left(&self) -> TwistedPoly {
        let ctx = self.dctx.ctx;
        let mut coeffs = vec![RatFunc::zero(ctx); self.coeffs.len() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            coeffs[i + 1] = coeffs[i + 1].add(a);
            coeffs[i] = coeffs[i].add(&self.derive(a));
        }
        TwistedPoly::new(self.dctx.clone(), coeffs)
    }

    /// Exact noncommutative product.
    pub fn mul(&self, other: &TwistedPoly) -> TwistedPoly {
        assert_eq!(self.dctx, other.dctx, "context mismatch");
        let mut out = TwistedPoly::zero(self.dctx.clone());
        // T^i * other, computed incrementally.
        let mut shifted = other.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                shifted = shifted.mul_t_left();
            }
            if !a.is_zero() {
                out = out.add(&shifted.scale(a));
            }
        }
        out
    }

    /// Image in the opposite ring, the twisted ring over `(F, -d)`.
    ///
    /// Writing `P = sum a_i T^i` with left coefficients, the opposite
    /// image is `sum T^i a_i` evaluated over `-d`; moving the
    /// coefficients back to the left produces the normal form. This is
    /// the ring anti-isomorphism: `opposite(PQ) = opposite(Q) opposite(P)`
    /// and applying it twice is the identity.
    pub fn opposite(&self) -> TwistedPoly {
        let od = self.dctx.opposite();
        let mut out = TwistedPoly::zero(od.clone());
        let mut t_pow = TwistedPoly::one(od.clone());
        let t = TwistedPoly::t_var(od.clone());
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                t_pow = t_pow.mul(&t);
            }
            if !a.is_zero() {
                let c = TwistedPoly::new(od.clone(), vec![a.clone()]);
                out = out.add(&t_pow.mul(&c));
            }
        }
        out
    }

    /// Divide by a monic divisor on the right: `self = q * div + rem`
    /// with `deg rem < deg div`. Needs no coefficient inversions.
    pub fn div_rem_right(&self, div: &TwistedPoly) -> (TwistedPoly, TwistedPoly) {
        assert_eq!(self.dctx, div.dctx, "context mismatch");
        assert!(div.is_monic(), "divisor must be monic");
        let ctx = self.dctx.ctx;
        let dd = div.degree().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot_coeffs: Vec<RatFunc> = Vec::new();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let k = dr - dd;
            let lead = rem.coeff(dr);
            // Subtract lead * T^k * div.
            let mut shifted = div.clone();
            for _ in 0..k {
                shifted = shifted.mul_t_left();
            }
            rem = rem.sub(&shifted.scale(&lead));
            if quot_coeffs.len() < k + 1 {
                quot_coeffs.resize(k + 1, RatFunc::zero(ctx));
            }
            quot_coeffs[k] = quot_coeffs[k].add(&lead);
            debug_assert!(rem.degree().map(|d| d < dr).unwrap_or(true));
        }
        (TwistedPoly::new(self.dctx.clone(), quot_coeffs), rem)
    }

    /// Divide by a monic divisor on the left: `self = div * q + rem`.
    pub fn div_rem_left(&self, div: &TwistedPoly) -> (TwistedPoly, TwistedPoly) {
        assert_eq!(self.dctx, div.dctx, "context mismatch");
        assert!(div.is_monic(), "divisor must be monic");
        let ctx = self.dctx.ctx;
        let dd = div.degree().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot_coeffs: Vec<RatFunc> = Vec::new();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let k = dr - dd;
            let lead = rem.coeff(dr);
            // Subtract div * (lead T^k).
            let piece = {
                let mut c = vec![RatFunc::zero(ctx); k + 1];
                c[k] = lead.clone();
                TwistedPoly::new(self.dctx.clone(), c)
            };
            rem = rem.sub(&div.mul(&piece));
            if quot_coeffs.len() < k + 1 {
                quot_coeffs.resize(k + 1, RatFunc::zero(ctx));
            }
            quot_coeffs[k] = quot_coeffs[k].add(&lead);
            debug_assert!(rem.degree().map(|d| d < dr).unwrap_or(true));
        }
        (TwistedPoly::new(self.dctx.clone(), quot_coeffs), rem)
    }

    /// Apply the polynomial as a differential operator to a field element:
    /// `P(d)(f) = sum a_i d^i(f)`.
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        let ctx = self.dctx.ctx;
        let mut acc = RatFunc::zero(ctx);
        let mut df = f.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                df = self.derive(&df);
            }
            acc = acc.add(&a.mul(&df));
        }
        acc
    }

    /// Newton polygon of a nonzero twisted polynomial.
    pub fn newton_polygon(&self) -> Result<NewtonPolygon, String> {
        if self.is_zero() {
            return Err(String::from("Newton polygon of the zero polynomial"));
        }
        let r = &self.dctx.r;
        let threshold = self.dctx.operator_val();
        let mut points: Vec<(i64, Rat)> = Vec::new();
        for (i, a) in self.coeffs.iter().enumerate() {
            if let Valuation::Finite(v) = a.gauss_val(r) {
                points.push((-(i as i64), v));
            }
        }
        Ok(newton_polygon_from_points(points, threshold))
    }

    /// Read the spectral valuation off the polygon: the least slope when
    /// strictly below the threshold (readable), else the threshold as an
    /// upper-bound certificate.
    pub fn spectral_from_polygon(&self) -> Result<(Rat, bool), String> {
        if !self.is_monic() {
            return Err(String::from("spectral read-off needs a monic polynomial"));
        }
        let np = self.newton_polygon()?;
        match np.least_slope() {
            Some(g) if g.readable => Ok((g.slope.clone(), true)),
            _ => Ok((np.threshold.clone(), false)),
        }
    }
}

/// Lower convex hull of the given points (x strictly increasing after
/// dedup by min-y), as slope groups with horizontal-width multiplicities.
pub fn newton_polygon_from_points(
    mut points: Vec<(i64, Rat)>,
    threshold: Rat,
) -> NewtonPolygon {
    // Keep the lowest point at each x.
    points.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    points.dedup_by(|next, prev| next.0 == prev.0);

    // Monotone-chain lower hull.
    let mut hull: Vec<(i64, Rat)> = Vec::new();
    for p in points.into_iter() {
        while hull.len() >= 2 {
            let a = &hull[hull.len() - 2];
            let b = &hull[hull.len() - 1];
            // Remove b unless it turns strictly upward relative to a-p.
            let lhs = (&b.1 - &a.1) * Rat::from_integer(BigInt::from(p.0 - a.0));
            let rhs = (&p.1 - &a.1) * Rat::from_integer(BigInt::from(b.0 - a.0));
            if lhs < rhs {
                break;
            }
            hull.pop();
        }
        hull.push(p);
    }

    let mut slopes: Vec<SlopeGroup> = Vec::new();
    for w in hull.windows(2) {
        let (x0, y0) = (&w[0].0, &w[0].1);
        let (x1, y1) = (&w[1].0, &w[1].1);
        let slope = (y1 - y0) / Rat::from_integer(BigInt::from(x1 - x0));
        let mult = (x1 - x0) as usize;
        let readable = slope < threshold;
        slopes.push(SlopeGroup {
            slope,
            mult,
            readable,
        });
    }
    NewtonPolygon {
        vertices: hull,
        slopes,
        threshold,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::{Axis, Context, Radius};
    use crate::expr::parse_ratfunc;
    use crate::rat;

    fn dctx(p: u32, n: usize, uses_pi: bool, axis: Axis, r: Radius) -> DiffContext {
        DiffContext::new(Context::new(p, n, uses_pi).unwrap(), axis, r).unwrap()
    }

    fn rf(src: &str, d: &DiffContext) -> RatFunc {
        parse_ratfunc(src, d.ctx).unwrap()
    }

    #[test]
    fn defining_rule_t_times_t() {
        // n=0, d/dt: T * t = t*T + 1.
        let d = dctx(3, 0, false, Axis::T, Radius::from_int(1));
        let t_poly = TwistedPoly::new(d.clone(), vec![rf("t", &d)]);
        let prod = TwistedPoly::t_var(d.clone()).mul(&t_poly);
        assert_eq!(prod.coeff(0), rf("1", &d));
        assert_eq!(prod.coeff(1), rf("t", &d));
        assert_eq!(prod.degree(), Some(1));
    }

    #[test]
    fn constants_commute() {
        let d = dctx(3, 0, false, Axis::T, Radius::from_int(1));
        let c = TwistedPoly::new(d.clone(), vec![rf("7", &d)]);
        let prod = TwistedPoly::t_var(d.clone()).mul(&c);
        assert_eq!(prod.coeff(0), rf("0", &d));
        assert_eq!(prod.coeff(1), rf("7", &d));
    }

    #[test]
    fn dwork_product_expansion() {
        // (T - pi t^-2)(T - pi t^-3)
        //   = T^2 - pi(t^-2 + t^-3) T + pi^2 t^-5 + 3 pi t^-4.
        let d = dctx(3, 0, true, Axis::T, Radius::from_int(1));
        let p = TwistedPoly::linear(d.clone(), rf("pi*t^-2", &d));
        let q = TwistedPoly::linear(d.clone(), rf("pi*t^-3", &d));
        let prod = p.mul(&q);
        assert_eq!(prod.coeff(2), rf("1", &d));
        assert_eq!(prod.coeff(1), rf("-pi*t^-2-pi*t^-3", &d));
        assert_eq!(prod.coeff(0), rf("pi^2*t^-5+3*pi*t^-4", &d));
    }

    #[test]
    fn opposite_is_involutive_anti_homomorphism() {
        let d = dctx(3, 1, false, Axis::T, Radius::from_int(1));
        let p = TwistedPoly::new(d.clone(), vec![rf("u1*t^-1", &d), rf("t", &d)]);
        let q = TwistedPoly::new(d.clone(), vec![rf("2", &d), rf("t^-2", &d), rf("1", &d)]);
        assert_eq!(p.opposite().opposite(), p);
        assert_eq!(TwistedPoly::t_var(d.clone()).opposite().coeffs(), TwistedPoly::t_var(d.opposite()).coeffs());
        let lhs = p.mul(&q).opposite();
        let rhs = q.opposite().mul(&p.opposite());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn polygon_of_dwork_product() {
        let d = dctx(3, 0, true, Axis::T, Radius::from_int(1));
        let p = TwistedPoly::linear(d.clone(), rf("pi*t^-2", &d));
        let q = TwistedPoly::linear(d.clone(), rf("pi*t^-3", &d));
        let np = p.mul(&q).newton_polygon().unwrap();
        assert_eq!(
            np.vertices,
            vec![(-2, rat(0, 1)), (-1, rat(-5, 2)), (0, rat(-4, 1))]
        );
        assert_eq!(np.threshold, rat(-1, 1));
        assert_eq!(np.slopes.len(), 2);
        assert_eq!(np.slopes[0], SlopeGroup { slope: rat(-5, 2), mult: 1, readable: true });
        assert_eq!(np.slopes[1], SlopeGroup { slope: rat(-3, 2), mult: 1, readable: true });
    }

    #[test]
    fn polygon_of_t_power_is_a_single_vertex() {
        let d = dctx(3, 0, false, Axis::T, Radius::from_int(1));
        let p = {
            let ctx = d.ctx;
            TwistedPoly::new(
                d.clone(),
                vec![
                    RatFunc::zero(ctx),
                    RatFunc::zero(ctx),
                    RatFunc::zero(ctx),
                    RatFunc::one(ctx),
                ],
            )
        };
        let np = p.newton_polygon().unwrap();
        assert_eq!(np.vertices, vec![(-3, rat(0, 1))]);
        assert!(np.slopes.is_empty());
    }

    #[test]
    fn polygon_constant_coefficients() {
        // T^2 + p^-1 T + p over p=3: points (-2,0), (-1,-1), (0,1).
        let d = dctx(3, 0, false, Axis::T, Radius::from_int(1));
        let p = TwistedPoly::new(
            d.clone(),
            vec![rf("3", &d), rf("1/3", &d), rf("1", &d)],
        );
        let np = p.newton_polygon().unwrap();
        assert_eq!(
            np.vertices,
            vec![(-2, rat(0, 1)), (-1, rat(-1, 1)), (0, rat(1, 1))]
        );
        assert_eq!(np.slopes[0].slope, rat(-1, 1));
        assert_eq!(np.slopes[0].mult, 1);
        assert_eq!(np.slopes[1].slope, rat(2, 1));
        assert_eq!(np.slopes[1].mult, 1);
    }

    #[test]
    fn spectral_read_off() {
        let d = dctx(3, 0, true, Axis::T, Radius::from_int(1));
        // slope -5/2 < -1: readable.
        let p = TwistedPoly::linear(d.clone(), rf("pi*t^-3", &d));
        assert_eq!(p.spectral_from_polygon().unwrap(), (rat(-5, 2), true));
        // slope exactly at the threshold: not readable.
        let q = TwistedPoly::linear(d.clone(), rf("t^-1", &d));
        assert_eq!(q.spectral_from_polygon().unwrap(), (rat(-1, 1), false));
        // slope 0 above the threshold: not readable.
        let s = TwistedPoly::linear(d.clone(), rf("1", &d));
        assert_eq!(s.spectral_from_polygon().unwrap(), (rat(-1, 1), false));
    }

    #[test]
    fn right_and_left_division() {
        let d = dctx(3, 0, true, Axis::T, Radius::from_int(1));
        let p = TwistedPoly::linear(d.clone(), rf("pi*t^-2", &d));
        let q = TwistedPoly::linear(d.clone(), rf("pi*t^-3", &d));
        let prod = p.mul(&q);
        let (quot, rem) = prod.div_rem_right(&q);
        assert!(rem.is_zero());
        assert_eq!(quot, p);
        let (quot2, rem2) = prod.div_rem_left(&p);
        assert!(rem2.is_zero());
        assert_eq!(quot2, q);
    }
}
