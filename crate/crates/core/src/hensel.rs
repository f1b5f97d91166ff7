//! Finite-precision Hensel slope factorization of twisted polynomials.
//!
//! A monic twisted polynomial whose Newton polygon has readable slopes
//! splits as `P = P_+ P_m .. P_1` with `P_1` carrying the least slope and
//! `P_+` everything at or above the threshold. The true factors live in
//! the completion of the coefficient field, which is not representable;
//! approximants here are finite Laurent expansions in t whose t-free
//! coefficients stay exact rational functions in the u-variables, with
//! every term dropped once its Gauss weight exceeds a precision cap.
//!
//! Each block split runs a frozen-Jacobian Newton iteration: the linear
//! correction `dQ R0 + Q0 dR = E` is solved through the commutative
//! Sylvester matrix of the initial factors (inverted once), while
//! residuals use exact twisted multiplication. The derivative terms the
//! proxy ignores sit strictly below the slope separation, so the residual
//! gains at least the separation gap per round; the round budget is a
//! guard, not a hidden tolerance, and running out reports the precision
//! actually achieved.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::context::{Axis, Context, DiffContext, Radius};
use crate::laurent::LaurentPoly;
use crate::ore::TwistedPoly;
use crate::ratfunc::RatFunc;
use crate::valuation::{Rat, Valuation};

#[derive(Clone, Debug)]
pub enum HenselError {
    NonMonic,
    ZeroPolynomial,
    /// A polygon slope sits exactly at the readability threshold; no
    /// factorization is attempted.
    SlopeAtThreshold(Rat),
    /// An element required by the iteration has no unique minimal term at
    /// this radius, so it cannot be expanded/inverted in the truncated
    /// series model.
    NotExpandable(String),
    /// Iteration budget exhausted before the residual contract was met;
    /// carries the precision margin actually achieved.
    BudgetExhausted { rounds: usize, achieved: Option<Rat> },
}

impl core::fmt::Display for HenselError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            HenselError::NonMonic => write!(f, "input must be monic"),
            HenselError::ZeroPolynomial => write!(f, "zero polynomial"),
            HenselError::SlopeAtThreshold(s) => {
                write!(f, "slope {} collides with the readability threshold", s)
            }
            HenselError::NotExpandable(m) => write!(f, "not expandable: {}", m),
            HenselError::BudgetExhausted { rounds, achieved } => {
                write!(f, "iteration budget ({} rounds) exhausted", rounds)?;
                if let Some(a) = achieved {
                    write!(f, "; achieved precision margin {}", a)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct HenselFactor {
    pub poly: TwistedPoly,
    /// The factor's slope; `None` marks the residual `P_+` block.
    pub slope: Option<Rat>,
    pub mult: usize,
}

#[derive(Clone, Debug)]
pub struct HenselFactorization {
    /// Ordered `P_+, P_m, .., P_1` (least slope last); trivial degree-0
    /// blocks are omitted.
    pub factors: Vec<HenselFactor>,
    pub prec: Rat,
    pub rounds_used: usize,
    /// `min_i (v(residual_i) - hull(-i))` for the reassembled product;
    /// meets or exceeds `prec` on success. `None` when the residual is 0.
    pub residual_margin: Option<Rat>,
}

impl HenselFactorization {
    /// Reassemble the product of the factors.
    pub fn product(&self, dctx: &DiffContext) -> TwistedPoly {
        let mut acc = TwistedPoly::one(dctx.clone());
        for f in &self.factors {
            acc = acc.mul(&f.poly);
        }
        acc
    }
}

/// Truncated element of the completed field at radius r: a finite sum
/// `sum_j c_j(u) t^j` with exact t-free rational coefficients; terms of
/// Gauss weight above `cap` are dropped.
#[derive(Clone, Debug)]
struct TSeries {
    ctx: Context,
    r: Radius,
    cap: Rat,
    terms: BTreeMap<i64, RatFunc>,
}

impl TSeries {
    fn zero(ctx: Context, r: Radius, cap: Rat) -> Self {
        TSeries {
            ctx,
            r,
            cap,
            terms: BTreeMap::new(),
        }
    }

    fn one(ctx: Context, r: Radius, cap: Rat) -> Self {
        let mut s = TSeries::zero(ctx, r, cap);
        s.insert(0, RatFunc::one(ctx));
        s
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn weight(&self, j: i64, c: &RatFunc) -> Valuation {
        c.gauss_val(&self.r)
            + Valuation::Finite(self.r.value() * Rat::from_integer(BigInt::from(j)))
    }

    fn insert(&mut self, j: i64, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        if let Valuation::Finite(w) = self.weight(j, &c) {
            if w > self.cap {
                return;
            }
        }
        match self.terms.get_mut(&j) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&j);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(j, c);
            }
        }
    }

    fn add(&self, other: &TSeries) -> TSeries {
        let mut out = self.clone();
        for (j, c) in other.terms.iter() {
            out.insert(*j, c.clone());
        }
        out
    }

    fn neg(&self) -> TSeries {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    fn sub(&self, other: &TSeries) -> TSeries {
        self.add(&other.neg())
    }

    fn mul(&self, other: &TSeries) -> TSeries {
        let mut out = TSeries::zero(self.ctx, self.r.clone(), self.cap.clone());
        for (ja, ca) in self.terms.iter() {
            for (jb, cb) in other.terms.iter() {
                out.insert(ja + jb, ca.mul(cb));
            }
        }
        out
    }

    /// Gauss valuation of the truncated element.
    fn val(&self) -> Valuation {
        let mut best = Valuation::Infinity;
        for (j, c) in self.terms.iter() {
            best = best.min(self.weight(*j, c));
        }
        best
    }

    /// Derivation along the given axis (u-axes act on coefficients, the
    /// t-axis by the usual power rule), negated for the opposite ring.
    fn derive(&self, axis: Axis, negated: bool) -> TSeries {
        let mut out = TSeries::zero(self.ctx, self.r.clone(), self.cap.clone());
        match axis {
            Axis::T => {
                for (j, c) in self.terms.iter() {
                    if *j != 0 {
                        out.insert(j - 1, c.scale(&crate::coef::Coef::from_int(*j)));
                    }
                }
            }
            Axis::U(_) => {
                for (j, c) in self.terms.iter() {
                    out.insert(*j, c.partial(axis));
                }
            }
        }
        if negated {
            out.neg()
        } else {
            out
        }
    }

    /// The unique minimal-weight term, if it is unique.
    fn leading(&self) -> Result<(i64, RatFunc), HenselError> {
        let v = self.val();
        let Valuation::Finite(v) = v else {
            return Err(HenselError::NotExpandable(String::from(
                "zero element has no leading term",
            )));
        };
        let mut found: Option<(i64, RatFunc)> = None;
        for (j, c) in self.terms.iter() {
            if self.weight(*j, c) == Valuation::Finite(v.clone()) {
                if found.is_some() {
                    return Err(HenselError::NotExpandable(format!(
                        "tied minimal terms at t^{} at this radius",
                        j
                    )));
                }
                found = Some((*j, c.clone()));
            }
        }
        Ok(found.expect("nonzero element has a minimal term"))
    }

    /// Multiplicative inverse via the geometric series around the unique
    /// leading term, accurate through the cap.
    fn inv(&self) -> Result<TSeries, HenselError> {
        let (j0, c0) = self.leading()?;
        let lead_inv = {
            let mut s = TSeries::zero(self.ctx, self.r.clone(), self.cap.clone());
            let ci = c0
                .inv()
                .map_err(|m| HenselError::NotExpandable(m))?;
            s.insert(-j0, ci);
            s
        };
        // self = lead (1 + g) with v(g) = delta > 0.
        let g = lead_inv.mul(self).sub(&TSeries::one(
            self.ctx,
            self.r.clone(),
            self.cap.clone(),
        ));
        if g.is_zero() {
            return Ok(lead_inv);
        }
        let Valuation::Finite(delta) = g.val() else {
            return Ok(lead_inv);
        };
        debug_assert!(delta > Rat::zero(), "leading part was not dominant");
        // Need (k+1) * delta + v(lead_inv) > cap to stop.
        let v_lead_inv = match lead_inv.val() {
            Valuation::Finite(q) => q,
            Valuation::Infinity => unreachable!(),
        };
        let mut series = TSeries::one(self.ctx, self.r.clone(), self.cap.clone());
        let mut pow = TSeries::one(self.ctx, self.r.clone(), self.cap.clone());
        let mut k = 0u32;
        loop {
            k += 1;
            if k > 4096 {
                return Err(HenselError::NotExpandable(String::from(
                    "geometric inversion did not close within 4096 terms",
                )));
            }
            pow = pow.mul(&g).neg();
            if pow.is_zero() {
                break;
            }
            series = series.add(&pow);
            let done = &delta * Rat::from_integer(BigInt::from(k as i64 + 1)) + &v_lead_inv
                > self.cap;
            if done {
                break;
            }
        }
        Ok(lead_inv.mul(&series))
    }

    /// Expand an exact rational function into the truncated model.
    fn from_ratfunc(f: &RatFunc, r: &Radius, cap: &Rat) -> Result<TSeries, HenselError> {
        let ctx = *f.context();
        let num = Self::from_laurent(f.numerator(), r, cap);
        if f.is_polynomial() {
            return Ok(num);
        }
        let den = Self::from_laurent(f.denominator(), r, cap);
        let _ = ctx;
        Ok(num.mul(&den.inv()?))
    }

    fn from_laurent(f: &LaurentPoly, r: &Radius, cap: &Rat) -> TSeries {
        let ctx = *f.context();
        let mut groups: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (e, c) in f.terms() {
            let j = e[ctx.n];
            let mut t_free = e.clone();
            t_free[ctx.n] = 0;
            let mono = LaurentPoly::monomial(ctx, t_free, c.clone());
            groups
                .entry(j)
                .and_modify(|g| *g = g.add(&mono))
                .or_insert(mono);
        }
        let mut out = TSeries::zero(ctx, r.clone(), cap.clone());
        for (j, g) in groups {
            out.insert(j, RatFunc::from_laurent(g));
        }
        out
    }

    /// Back to an exact rational function.
    fn to_ratfunc(&self) -> RatFunc {
        let mut acc = RatFunc::zero(self.ctx);
        for (j, c) in self.terms.iter() {
            let tj = RatFunc::from_laurent(LaurentPoly::t_pow(self.ctx, *j));
            acc = acc.add(&c.mul(&tj));
        }
        acc
    }
}

/// Twisted polynomial with truncated-series coefficients.
#[derive(Clone, Debug)]
struct TsPoly {
    dctx: DiffContext,
    coeffs: Vec<TSeries>,
}

impl TsPoly {
    fn new(dctx: DiffContext, mut coeffs: Vec<TSeries>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        TsPoly { dctx, coeffs }
    }

    fn coeff(&self, i: usize, cap: &Rat) -> TSeries {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| TSeries::zero(self.dctx.ctx, self.dctx.r.clone(), cap.clone()))
    }

    fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn add(&self, other: &TsPoly, cap: &Rat) -> TsPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.coeff(i, cap).add(&other.coeff(i, cap)))
            .collect();
        TsPoly::new(self.dctx.clone(), coeffs)
    }

    fn sub(&self, other: &TsPoly, cap: &Rat) -> TsPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.coeff(i, cap).sub(&other.coeff(i, cap)))
            .collect();
        TsPoly::new(self.dctx.clone(), coeffs)
    }

    fn scale(&self, f: &TSeries) -> TsPoly {
        TsPoly::new(
            self.dctx.clone(),
            self.coeffs.iter().map(|c| f.mul(c)).collect(),
        )
    }

    fn mul_t_left(&self, cap: &Rat) -> TsPoly {
        let zero = TSeries::zero(self.dctx.ctx, self.dctx.r.clone(), cap.clone());
        let mut coeffs = vec![zero; self.coeffs.len() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            coeffs[i + 1] = coeffs[i + 1].add(a);
            coeffs[i] = coeffs[i].add(&a.derive(self.dctx.axis, self.dctx.negated));
        }
        TsPoly::new(self.dctx.clone(), coeffs)
    }

    fn mul(&self, other: &TsPoly, cap: &Rat) -> TsPoly {
        let mut out = TsPoly::new(self.dctx.clone(), Vec::new());
        let mut shifted = other.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                shifted = shifted.mul_t_left(cap);
            }
            if !a.is_zero() {
                out = out.add(&shifted.scale(a), cap);
            }
        }
        out
    }

    fn from_twisted(p: &TwistedPoly, cap: &Rat) -> Result<TsPoly, HenselError> {
        let dctx = p.dctx().clone();
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| TSeries::from_ratfunc(c, &dctx.r, cap))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TsPoly::new(dctx, coeffs))
    }

    fn to_twisted(&self) -> TwistedPoly {
        TwistedPoly::new(
            self.dctx.clone(),
            self.coeffs.iter().map(|c| c.to_ratfunc()).collect(),
        )
    }
}

/// Factor a monic twisted polynomial into slope blocks, least slope
/// rightmost, to the given precision (in valuation units above the hull).
pub fn hensel_slope_factor(
    p: &TwistedPoly,
    prec: &Rat,
    budget: usize,
) -> Result<HenselFactorization, HenselError> {
    if p.is_zero() {
        return Err(HenselError::ZeroPolynomial);
    }
    if !p.is_monic() {
        return Err(HenselError::NonMonic);
    }
    let np = p.newton_polygon().map_err(|_| HenselError::ZeroPolynomial)?;
    for g in &np.slopes {
        if g.slope == np.threshold {
            return Err(HenselError::SlopeAtThreshold(g.slope.clone()));
        }
    }
    let dctx = p.dctx().clone();
    let degree = p.degree().expect("nonzero");

    // Single readable block, or nothing readable: P is its own factor.
    let readable: Vec<_> = np.readable().cloned().collect();
    if readable.is_empty() {
        return Ok(HenselFactorization {
            factors: vec![HenselFactor {
                poly: p.clone(),
                slope: None,
                mult: degree,
            }],
            prec: prec.clone(),
            rounds_used: 0,
            residual_margin: None,
        });
    }
    if readable.len() == 1 && readable[0].mult == degree {
        return Ok(HenselFactorization {
            factors: vec![HenselFactor {
                poly: p.clone(),
                slope: Some(readable[0].slope.clone()),
                mult: degree,
            }],
            prec: prec.clone(),
            rounds_used: 0,
            residual_margin: None,
        });
    }

    // Working cap: generous enough that truncation noise stays above
    // prec + hull everywhere.
    let hull_vals: Vec<Rat> = (0..=degree)
        .map(|i| np.hull_at(-(i as i64)).expect("hull spans all degrees"))
        .collect();
    let h_max = hull_vals.iter().max().cloned().unwrap();
    let h_min = hull_vals.iter().min().cloned().unwrap();
    let cap = prec.clone() + &h_max + (&h_max - &h_min) + Rat::from_integer(BigInt::from(4));

    let p_ts = TsPoly::from_twisted(p, &cap)?;
    let mut rounds_total = 0usize;
    let mut remaining = p_ts;
    let mut factors_rev: Vec<HenselFactor> = Vec::new();

    // Split off the least-slope block repeatedly.
    loop {
        let cur = remaining.to_twisted();
        let cur_np = cur.newton_polygon().map_err(|_| HenselError::ZeroPolynomial)?;
        let cur_deg = cur.degree().expect("nonzero");
        let cur_readable: Vec<_> = cur_np.readable().cloned().collect();
        if cur_readable.is_empty() {
            if cur_deg > 0 {
                factors_rev.push(HenselFactor {
                    poly: cur,
                    slope: None,
                    mult: cur_deg,
                });
            }
            break;
        }
        let block = cur_readable[0].clone();
        if block.mult == cur_deg {
            factors_rev.push(HenselFactor {
                poly: cur,
                slope: Some(block.slope),
                mult: cur_deg,
            });
            break;
        }
        let (q, r_factor, rounds) =
            split_least_block(&remaining, &cur_np, block.mult, prec, budget, &cap)?;
        rounds_total += rounds;
        factors_rev.push(HenselFactor {
            poly: r_factor.to_twisted(),
            slope: Some(block.slope),
            mult: block.mult,
        });
        remaining = q;
    }

    factors_rev.reverse();
    let factorization = HenselFactorization {
        factors: factors_rev,
        prec: prec.clone(),
        rounds_used: rounds_total,
        residual_margin: None,
    };
    // Final exact residual check against the original polynomial.
    let product = factorization.product(&dctx);
    let margin = residual_margin(p, &product, &hull_vals);
    if let Some(m) = &margin {
        if m < prec {
            return Err(HenselError::BudgetExhausted {
                rounds: rounds_total,
                achieved: margin,
            });
        }
    }
    Ok(HenselFactorization {
        residual_margin: margin,
        ..factorization
    })
}

/// `min_i (v((p - q)_i) - hull(-i))`, or None for an exactly zero residual.
fn residual_margin(p: &TwistedPoly, q: &TwistedPoly, hull_vals: &[Rat]) -> Option<Rat> {
    let diff = p.sub(q);
    let r = &p.dctx().r;
    let mut worst: Option<Rat> = None;
    for (i, h) in hull_vals.iter().enumerate() {
        let c = diff.coeff(i);
        if let Valuation::Finite(v) = c.gauss_val(r) {
            let m = v - h;
            worst = Some(match worst.take() {
                Some(w) if w <= m => w,
                _ => m,
            });
        }
    }
    worst
}

/// Split `P = Q * R` with monic R of degree k carrying the least slope.
/// Returns (Q, R, rounds used).
fn split_least_block(
    p: &TsPoly,
    np: &crate::ore::NewtonPolygon,
    k: usize,
    prec: &Rat,
    budget: usize,
    cap: &Rat,
) -> Result<(TsPoly, TsPoly, usize), HenselError> {
    let dctx = p.dctx.clone();
    let ctx = dctx.ctx;
    let r_param = dctx.r.clone();
    let d = p.degree().expect("nonzero");
    debug_assert!(k >= 1 && k < d);

    // The least-slope segment spans the top coefficients a_{d-k}..a_d, so
    // the right factor starts as that slice (already monic) and the left
    // cofactor as the bottom slice normalized by the vertex coefficient:
    // R0 = a_{d-k} + .. + T^k, Q0 = a_{d-k}^{-1} (a_0 + .. + a_{d-k} T^(d-k)).
    let vertex = p.coeff(d - k, cap);
    let vertex_inv = vertex.inv()?;
    let r0 = TsPoly::new(
        dctx.clone(),
        (0..=k).map(|j| p.coeff(d - k + j, cap)).collect(),
    );
    let q0 = TsPoly::new(
        dctx.clone(),
        (0..=(d - k))
            .map(|i| vertex_inv.mul(&p.coeff(i, cap)))
            .collect(),
    );

    // Commutative Sylvester matrix of (R0, Q0): columns are the shifts
    // x^i R0 (i < d-k) then x^j Q0 (j < k); row m is the coefficient of
    // x^m. Unknowns: dQ coefficients then dR coefficients.
    let dim = d;
    let zero = || TSeries::zero(ctx, r_param.clone(), cap.clone());
    let mut m: Vec<Vec<TSeries>> = vec![vec![zero(); dim]; dim];
    for i in 0..(d - k) {
        for (deg, c) in r0.coeffs.iter().enumerate() {
            let row = i + deg;
            if row < dim {
                m[row][i] = m[row][i].add(c);
            }
        }
    }
    for j in 0..k {
        for (deg, c) in q0.coeffs.iter().enumerate() {
            let row = j + deg;
            if row < dim {
                m[row][d - k + j] = m[row][d - k + j].add(c);
            }
        }
    }
    let m_inv = invert_ts_matrix(m, ctx, &r_param, cap)?;

    // Hull offsets for the residual contract on the current polynomial.
    let hull: Vec<Rat> = (0..=d)
        .map(|i| np.hull_at(-(i as i64)).expect("hull spans"))
        .collect();

    let mut q = q0.clone();
    let mut rc = r0.clone();
    let mut best_margin: Option<Rat> = None;
    for round in 0..budget {
        let e = p.sub(&q.mul(&rc, cap), cap);
        // Contract: every residual coefficient clears prec + hull.
        let mut margin: Option<Rat> = None;
        for (i, h) in hull.iter().enumerate() {
            if let Valuation::Finite(v) = e.coeff(i, cap).val() {
                let g = v - h;
                margin = Some(match margin.take() {
                    Some(w) if w <= g => w,
                    _ => g,
                });
            }
        }
        match &margin {
            None => return Ok((q, rc, round)),
            Some(g) if g >= prec => return Ok((q, rc, round)),
            _ => {}
        }
        best_margin = match (best_margin.take(), margin.clone()) {
            (Some(b), Some(g)) => Some(if b >= g { b } else { g }),
            (None, g) => g,
            (b, None) => b,
        };
        // Solve the frozen commutative system M (dq, dr) = e.
        let rhs: Vec<TSeries> = (0..dim).map(|i| e.coeff(i, cap)).collect();
        let sol = mul_ts_matrix_vec(&m_inv, &rhs, cap);
        let dq = TsPoly::new(dctx.clone(), sol[..(d - k)].to_vec());
        let dr = TsPoly::new(dctx.clone(), sol[(d - k)..].to_vec());
        q = q.add(&dq, cap);
        rc = rc.add(&dr, cap);
    }
    Err(HenselError::BudgetExhausted {
        rounds: budget,
        achieved: best_margin,
    })
}

fn mul_ts_matrix_vec(m: &[Vec<TSeries>], v: &[TSeries], _cap: &Rat) -> Vec<TSeries> {
    m.iter()
        .map(|row| {
            let mut acc: Option<TSeries> = None;
            for (a, b) in row.iter().zip(v.iter()) {
                let prod = a.mul(b);
                acc = Some(match acc.take() {
                    Some(s) => s.add(&prod),
                    None => prod,
                });
            }
            acc.expect("nonempty row")
        })
        .collect()
}

/// Gauss-Jordan inversion over truncated series; pivots must have unique
/// leading terms (else the element is not invertible in this model).
fn invert_ts_matrix(
    mut m: Vec<Vec<TSeries>>,
    ctx: Context,
    r: &Radius,
    cap: &Rat,
) -> Result<Vec<Vec<TSeries>>, HenselError> {
    let n = m.len();
    let mut inv: Vec<Vec<TSeries>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        TSeries::one(ctx, r.clone(), cap.clone())
                    } else {
                        TSeries::zero(ctx, r.clone(), cap.clone())
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        // Pick the pivot with minimal valuation among invertible entries.
        let mut pick: Option<(usize, Valuation)> = None;
        for row in col..n {
            if m[row][col].is_zero() {
                continue;
            }
            let v = m[row][col].val();
            match &pick {
                Some((_, bv)) if *bv <= v => {}
                _ => pick = Some((row, v)),
            }
        }
        let Some((prow, _)) = pick else {
            return Err(HenselError::NotExpandable(String::from(
                "singular correction system",
            )));
        };
        m.swap(col, prow);
        inv.swap(col, prow);
        let piv_inv = m[col][col].inv()?;
        for j in 0..n {
            m[col][j] = piv_inv.mul(&m[col][j]);
            inv[col][j] = piv_inv.mul(&inv[col][j]);
        }
        for row in 0..n {
            if row == col || m[row][col].is_zero() {
                continue;
            }
            let f = m[row][col].clone();
            for j in 0..n {
                let t = f.mul(&m[col][j]);
                m[row][j] = m[row][j].sub(&t);
                let t2 = f.mul(&inv[col][j]);
                inv[row][j] = inv[row][j].sub(&t2);
            }
        }
    }
    Ok(inv)
}
