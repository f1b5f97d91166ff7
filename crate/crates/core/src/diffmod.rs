//! Differential modules presented by commuting connection matrices.
//!
//! A rank-d module carries one d-by-d matrix per derivation axis, acting
//! on coordinate columns by `d(e c) = e (N c + d(c))`. Integrability is
//! the exact commutator identity `N_i N_j + d_i(N_j) = N_j N_i + d_j(N_i)`.
//! Per-axis scale data is read off the Newton polygon of a characteristic
//! twisted polynomial obtained from a cyclic vector.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::context::{Axis, Context, DiffContext, Radius};
use crate::laurent::LaurentPoly;
use crate::matrix::Matrix;
use crate::ore::TwistedPoly;
use crate::ratfunc::RatFunc;
use crate::rng::SplitMix64;
use crate::valuation::{Rat, Valuation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffModule {
    ctx: Context,
    rank: usize,
    /// One matrix per axis, u-axes first, t last.
    mats: Vec<Matrix>,
}

#[derive(Clone, Debug)]
pub enum DiffError {
    ContextMismatch,
    CyclicSearchExhausted { tried: usize },
    SingularSolve,
    Substitution(String),
}

impl core::fmt::Display for DiffError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DiffError::ContextMismatch => write!(f, "context mismatch"),
            DiffError::CyclicSearchExhausted { tried } => {
                write!(f, "cyclic vector search exhausted after {} candidates", tried)
            }
            DiffError::SingularSolve => write!(f, "singular solve for a cyclic basis"),
            DiffError::Substitution(m) => write!(f, "substitution error: {}", m),
        }
    }
}

/// Outcome of the exact integrability test.
#[derive(Clone, Debug)]
pub struct IntegrabilityReport {
    pub ok: bool,
    /// Failing axis pairs `(i, j)` (1-based) with a witness entry position
    /// and the two sides of the commutator identity there.
    pub failures: Vec<(usize, usize, usize, usize, RatFunc, RatFunc)>,
}

/// Spectral valuation read-off: exact when the polygon slope is readable,
/// otherwise only an upper-bound certificate at the threshold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpectralValue {
    Readable(Rat),
    Bound(Rat),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaleEntry {
    pub scale_logp: Rat,
    pub mult: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnreadableBucket {
    /// Upper bound on the bucket's scale_logp: the threshold gap 1/(p-1).
    pub bound: Rat,
    pub mult: usize,
}

/// Per-derivation scale data at one radius.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaleReport {
    pub axis: Axis,
    pub r: Radius,
    pub rank: usize,
    pub spectral: SpectralValue,
    /// Readable entries, descending by scale_logp; multiplicities plus the
    /// bucket's sum to the rank.
    pub readable: Vec<ScaleEntry>,
    pub bucket: Option<UnreadableBucket>,
}

impl ScaleReport {
    /// Largest readable scale_logp, if any slope was readable.
    pub fn scale(&self) -> Option<&Rat> {
        self.readable.first().map(|e| &e.scale_logp)
    }

    /// Expand to one value per rank slot, readable first (descending),
    /// then `None` per bucket slot.
    pub fn slots(&self) -> Vec<Option<Rat>> {
        let mut out = Vec::with_capacity(self.rank);
        for e in &self.readable {
            for _ in 0..e.mult {
                out.push(Some(e.scale_logp.clone()));
            }
        }
        if let Some(b) = &self.bucket {
            for _ in 0..b.mult {
                out.push(None);
            }
        }
        out
    }
}

/// Matrix-power spectral estimator output.
#[derive(Clone, Debug)]
pub struct SpectralEstimate {
    /// `min_{s' <= s} v(D_{s'})/s'` for s = 1..=s_max.
    pub per_s: Vec<Valuation>,
    pub trivial: bool,
}

impl SpectralEstimate {
    pub fn final_value(&self) -> &Valuation {
        self.per_s.last().expect("s_max >= 1")
    }
}

impl DiffModule {
    pub fn new(ctx: Context, rank: usize, mats: Vec<Matrix>) -> Result<Self, String> {
        if mats.len() != ctx.axes() {
            return Err(format!(
                "expected {} connection matrices, got {}",
                ctx.axes(),
                mats.len()
            ));
        }
        for m in &mats {
            if m.rows != rank || m.cols != rank {
                return Err(format!("connection matrix is not {0}x{0}", rank));
            }
        }
        Ok(DiffModule { ctx, rank, mats })
    }

    /// Rank-one module with the given per-axis scalars.
    pub fn rank_one(ctx: Context, entries: Vec<RatFunc>) -> Result<Self, String> {
        let mats = entries
            .into_iter()
            .map(|e| Matrix::from_rows(ctx, vec![vec![e]]))
            .collect();
        DiffModule::new(ctx, 1, mats)
    }

    /// The zero connection of a given rank.
    pub fn trivial(ctx: Context, rank: usize) -> Self {
        let mats = (0..ctx.axes())
            .map(|_| Matrix::zero(ctx, rank, rank))
            .collect();
        DiffModule { ctx, rank, mats }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self, axis: Axis) -> &Matrix {
        &self.mats[axis.index(self.ctx.n) - 1]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.mats
    }

    /// True when every connection matrix is diagonal; scale multisets of
    /// such modules combine exactly across axes slot by slot.
    pub fn is_diagonal(&self) -> bool {
        self.mats.iter().all(|m| {
            (0..self.rank)
                .all(|i| (0..self.rank).all(|j| i == j || m.at(i, j).is_zero()))
        })
    }

    /// Exact commutator test over all axis pairs.
    pub fn check_integrability(&self) -> IntegrabilityReport {
        let n = self.ctx.n;
        let mut failures = Vec::new();
        let axes: Vec<Axis> = Axis::all(n).collect();
        for a in 0..axes.len() {
            for b in (a + 1)..axes.len() {
                let (ni, nj) = (self.matrix(axes[a]), self.matrix(axes[b]));
                let lhs = ni.mul(nj).add(&nj.partial(axes[a]));
                let rhs = nj.mul(ni).add(&ni.partial(axes[b]));
                for i in 0..self.rank {
                    for j in 0..self.rank {
                        if lhs.at(i, j) != rhs.at(i, j) {
                            failures.push((
                                a + 1,
                                b + 1,
                                i,
                                j,
                                lhs.at(i, j).clone(),
                                rhs.at(i, j).clone(),
                            ));
                        }
                    }
                }
            }
        }
        IntegrabilityReport {
            ok: failures.is_empty(),
            failures,
        }
    }

    /// Derivation action on a coordinate column: `N c + d(c)`.
    pub fn apply_derivation(&self, axis: Axis, v: &[RatFunc]) -> Vec<RatFunc> {
        let n = self.matrix(axis);
        let mut out = n.mul_vec(v);
        for (o, c) in out.iter_mut().zip(v.iter()) {
            *o = o.add(&c.partial(axis));
        }
        out
    }

    /// Wronskian-style matrix with columns `v, d(v), .., d^(rank-1)(v)`,
    /// plus `d^rank(v)`.
    pub fn iterate_matrix(&self, axis: Axis, v: &[RatFunc]) -> (Matrix, Vec<RatFunc>) {
        let d = self.rank;
        let mut w = Matrix::zero(self.ctx, d, d);
        let mut cur = v.to_vec();
        for j in 0..d {
            for i in 0..d {
                *w.at_mut(i, j) = cur[i].clone();
            }
            cur = self.apply_derivation(axis, &cur);
        }
        (w, cur)
    }

    /// Deterministic cyclic vector search: unit vectors, the t-power
    /// ladder, u-monomial ladders, then seeded random sparse candidates;
    /// 64-candidate budget.
    pub fn cyclic_vector(&self, axis: Axis, seed: u64) -> Result<Vec<RatFunc>, DiffError> {
        let d = self.rank;
        let ctx = self.ctx;
        if d == 0 {
            return Ok(Vec::new());
        }
        let mut candidates: Vec<Vec<RatFunc>> = Vec::new();
        let unit = |k: usize| -> Vec<RatFunc> {
            (0..d)
                .map(|i| {
                    if i == k {
                        RatFunc::one(ctx)
                    } else {
                        RatFunc::zero(ctx)
                    }
                })
                .collect()
        };
        candidates.push(unit(0));
        if d > 1 {
            for a in [0i64, 1, 2] {
                let v: Vec<RatFunc> = (0..d)
                    .map(|k| RatFunc::from_laurent(LaurentPoly::t_pow(ctx, a * (k as i64))))
                    .collect();
                candidates.push(v);
            }
            for k in 1..d {
                candidates.push(unit(k));
            }
            for i in 1..=ctx.n {
                let v: Vec<RatFunc> = (0..d)
                    .map(|k| {
                        let mut e = vec![0i64; ctx.n + 1];
                        e[i - 1] = k as i64;
                        RatFunc::from_laurent(LaurentPoly::monomial(
                            ctx,
                            e,
                            crate::coef::Coef::one(),
                        ))
                    })
                    .collect();
                candidates.push(v);
            }
        }
        let mut rng = SplitMix64::new(seed);
        let mut tried = 0usize;
        let budget = 64usize;
        loop {
            let cand = if tried < candidates.len() {
                candidates[tried].clone()
            } else if tried < budget {
                (0..d)
                    .map(|_| {
                        if rng.below(3) == 0 && d > 1 {
                            RatFunc::zero(ctx)
                        } else {
                            let mut e = vec![0i64; ctx.n + 1];
                            for x in e.iter_mut() {
                                *x = rng.range_i64(-1, 2);
                            }
                            let c = crate::coef::Coef::from_int(rng.range_i64(1, 3));
                            RatFunc::from_laurent(LaurentPoly::monomial(ctx, e, c))
                        }
                    })
                    .collect()
            } else {
                return Err(DiffError::CyclicSearchExhausted { tried });
            };
            tried += 1;
            if cand.iter().all(|c| c.is_zero()) {
                continue;
            }
            let (w, _) = self.iterate_matrix(axis, &cand);
            if !w.det().is_zero() {
                return Ok(cand);
            }
        }
    }

    /// Monic characteristic twisted polynomial `P` of degree rank with
    /// `P(d) v = 0` for a cyclic vector v. Independent of r; the radius
    /// only parameterizes the returned polynomial's context.
    pub fn char_twisted_poly(
        &self,
        axis: Axis,
        r: &Radius,
        seed: u64,
    ) -> Result<TwistedPoly, DiffError> {
        let v = self.cyclic_vector(axis, seed)?;
        self.char_twisted_poly_at(axis, r, &v)
    }

    /// Characteristic polynomial for a given cyclic vector.
    pub fn char_twisted_poly_at(
        &self,
        axis: Axis,
        r: &Radius,
        v: &[RatFunc],
    ) -> Result<TwistedPoly, DiffError> {
        let dctx = DiffContext::new(self.ctx, axis, r.clone())
            .map_err(|_| DiffError::ContextMismatch)?;
        let (w, top) = self.iterate_matrix(axis, v);
        let x = w.solve(&top).ok_or(DiffError::SingularSolve)?;
        // d^rank(v) = sum x_i d^i(v), so P = T^rank - sum x_i T^i.
        let mut coeffs: Vec<RatFunc> = x.into_iter().map(|c| c.neg()).collect();
        coeffs.push(RatFunc::one(self.ctx));
        Ok(TwistedPoly::new(dctx, coeffs))
    }

    /// Per-derivation scale report at one radius: readable polygon slopes
    /// become exact scale entries, the rest an explicitly bounded bucket.
    pub fn scale_report(
        &self,
        axis: Axis,
        r: &Radius,
        seed: u64,
    ) -> Result<ScaleReport, DiffError> {
        let p = self.char_twisted_poly(axis, r, seed)?;
        let np = p.newton_polygon().expect("monic char polynomial is nonzero");
        let sp_f = crate::context::derivation_profile(&self.ctx, axis, r).1;
        let mut readable: Vec<ScaleEntry> = Vec::new();
        let mut covered = 0usize;
        for g in np.readable() {
            let mut scale_logp = &sp_f - &g.slope;
            if scale_logp < Rat::from_integer(BigInt::from(0)) {
                scale_logp = Rat::from_integer(BigInt::from(0));
            }
            readable.push(ScaleEntry {
                scale_logp,
                mult: g.mult,
            });
            covered += g.mult;
        }
        // Ascending slopes already give descending scales.
        let spectral = match np.least_slope() {
            Some(g) if g.readable => SpectralValue::Readable(g.slope.clone()),
            _ => SpectralValue::Bound(np.threshold.clone()),
        };
        let bucket = if covered < self.rank {
            Some(UnreadableBucket {
                bound: self.ctx.pi_val(),
                mult: self.rank - covered,
            })
        } else {
            None
        };
        Ok(ScaleReport {
            axis,
            r: r.clone(),
            rank: self.rank,
            spectral,
            readable,
            bucket,
        })
    }

    /// Matrix-power estimator: iterate `D_{s+1} = N D_s + d(D_s)` from
    /// `D_1 = N` and report the running minimum of `v(D_s)/s`. Used only
    /// as a cross-check oracle against exact polygon values.
    pub fn spectral_estimate(&self, axis: Axis, r: &Radius, s_max: usize) -> SpectralEstimate {
        assert!(s_max >= 1);
        let n = self.matrix(axis);
        let mut d_s = n.clone();
        let mut best: Option<Rat> = None;
        let mut per_s = Vec::with_capacity(s_max);
        let mut trivial = true;
        for s in 1..=s_max {
            match matrix_gauss_val(&d_s, r) {
                Valuation::Finite(q) => {
                    trivial = false;
                    let scaled = q / Rat::from_integer(BigInt::from(s as i64));
                    best = Some(match best.take() {
                        Some(b) if b <= scaled => b,
                        _ => scaled,
                    });
                    per_s.push(Valuation::Finite(best.clone().unwrap()));
                }
                Valuation::Infinity => {
                    per_s.push(match &best {
                        Some(b) => Valuation::Finite(b.clone()),
                        None => Valuation::Infinity,
                    });
                }
            }
            if s < s_max {
                d_s = n.mul(&d_s).add(&d_s.partial(axis));
            }
        }
        SpectralEstimate { per_s, trivial }
    }

    /// Pullback along a substitution: `N'_k = sum_j d(image_j)/d(x'_k)
    /// * g(N_j)` by the chain rule.
    pub fn pullback(&self, sub: &Substitution) -> Result<DiffModule, DiffError> {
        if sub.source != self.ctx {
            return Err(DiffError::ContextMismatch);
        }
        let tgt = sub.target;
        let jac = sub.jacobian();
        let subbed: Vec<Matrix> = self
            .mats
            .iter()
            .map(|m| m.try_map(|e| sub.apply(e)))
            .collect::<Result<_, _>>()
            .map_err(DiffError::Substitution)?;
        let mut out = Vec::with_capacity(tgt.axes());
        for k in 0..tgt.axes() {
            let mut acc = Matrix::zero(tgt, self.rank, self.rank);
            for j in 0..self.ctx.axes() {
                let w = &jac[j][k];
                if w.is_zero() {
                    continue;
                }
                acc = acc.add(&subbed[j].scale(w));
            }
            out.push(acc);
        }
        Ok(DiffModule {
            ctx: tgt,
            rank: self.rank,
            mats: out,
        })
    }

    /// Block-diagonal direct sum; scale multisets concatenate.
    pub fn direct_sum(&self, other: &DiffModule) -> Result<DiffModule, DiffError> {
        if self.ctx != other.ctx {
            return Err(DiffError::ContextMismatch);
        }
        let d = self.rank + other.rank;
        let mats = self
            .mats
            .iter()
            .zip(other.mats.iter())
            .map(|(a, b)| {
                let mut m = Matrix::zero(self.ctx, d, d);
                for i in 0..self.rank {
                    for j in 0..self.rank {
                        *m.at_mut(i, j) = a.at(i, j).clone();
                    }
                }
                for i in 0..other.rank {
                    for j in 0..other.rank {
                        *m.at_mut(self.rank + i, self.rank + j) = b.at(i, j).clone();
                    }
                }
                m
            })
            .collect();
        Ok(DiffModule {
            ctx: self.ctx,
            rank: d,
            mats,
        })
    }

    /// Change basis by an invertible matrix: `N' = U^{-1} (N U + d(U))`.
    pub fn change_basis(&self, u: &Matrix) -> Result<DiffModule, String> {
        let uinv = u.inverse()?;
        let mats = Axis::all(self.ctx.n)
            .map(|axis| {
                let n = self.matrix(axis);
                uinv.mul(&n.mul(u).add(&u.partial(axis)))
            })
            .collect();
        Ok(DiffModule {
            ctx: self.ctx,
            rank: self.rank,
            mats,
        })
    }
}

/// Valuation of a matrix: min over entries (sup norm), `+inf` for zero.
pub fn matrix_gauss_val(m: &Matrix, r: &Radius) -> Valuation {
    let mut best = Valuation::Infinity;
    for i in 0..m.rows {
        for j in 0..m.cols {
            best = best.min(m.at(i, j).gauss_val(r));
        }
    }
    best
}

/// A polynomial/rational substitution of coordinates, with its exact
/// Jacobian. Sends a source-context module to a target-context module;
/// the target may have more u-variables (generic rotation enlarges n).
#[derive(Clone, Debug)]
pub struct Substitution {
    pub source: Context,
    pub target: Context,
    /// One image per source u-variable, over the target context.
    pub u_images: Vec<RatFunc>,
    pub t_image: RatFunc,
}

impl Substitution {
    pub fn new(
        source: Context,
        target: Context,
        u_images: Vec<RatFunc>,
        t_image: RatFunc,
    ) -> Result<Self, String> {
        if u_images.len() != source.n {
            return Err(format!(
                "expected {} u-images, got {}",
                source.n,
                u_images.len()
            ));
        }
        if t_image.is_zero() {
            return Err(String::from("t-image must be nonzero"));
        }
        Ok(Substitution {
            source,
            target,
            u_images,
            t_image,
        })
    }

    pub fn identity(ctx: Context) -> Self {
        let u_images = (1..=ctx.n)
            .map(|i| RatFunc::from_laurent(LaurentPoly::var_u(ctx, i)))
            .collect();
        Substitution {
            source: ctx,
            target: ctx,
            u_images,
            t_image: RatFunc::from_laurent(LaurentPoly::var_t(ctx)),
        }
    }

    /// Tame power map `t -> t^N` with `gcd(N, p) = 1`.
    pub fn tame(ctx: Context, n_pow: u32) -> Result<Self, String> {
        if n_pow == 0 || n_pow % ctx.p == 0 {
            return Err(format!("tame exponent {} must be coprime to p", n_pow));
        }
        let mut s = Substitution::identity(ctx);
        s.t_image = RatFunc::from_laurent(LaurentPoly::t_pow(ctx, n_pow as i64));
        Ok(s)
    }

    /// Frobenius power map `t -> t^(p^N)`.
    pub fn frobenius(ctx: Context, n_pow: u32) -> Self {
        let e = (ctx.p as i64).pow(n_pow);
        let mut s = Substitution::identity(ctx);
        s.t_image = RatFunc::from_laurent(LaurentPoly::t_pow(ctx, e));
        s
    }

    /// Rotation `u_i -> u_i + t`, all else fixed.
    pub fn rotation(ctx: Context, i: usize) -> Result<Self, String> {
        if i < 1 || i > ctx.n {
            return Err(format!("rotation axis u{} out of range", i));
        }
        let mut s = Substitution::identity(ctx);
        s.u_images[i - 1] =
            RatFunc::from_laurent(LaurentPoly::var_u(ctx, i).add(&LaurentPoly::var_t(ctx)));
        Ok(s)
    }

    /// Generic rotation: enlarge n to 2n with fresh variables v_i = u_{n+i},
    /// send `u_i -> u_i^p + v_i t^(p-1)` and `t -> t^p / (1 - t^(p-1))`.
    pub fn generic_rotation(ctx: Context) -> Result<Self, String> {
        let target = Context::new(ctx.p, 2 * ctx.n, ctx.uses_pi)?;
        let p = ctx.p;
        let u_images = (1..=ctx.n)
            .map(|i| {
                let up = LaurentPoly::var_u(target, i).pow(p);
                let vt = LaurentPoly::var_u(target, ctx.n + i)
                    .mul(&LaurentPoly::t_pow(target, (p - 1) as i64));
                RatFunc::from_laurent(up.add(&vt))
            })
            .collect();
        let t_num = LaurentPoly::t_pow(target, p as i64);
        let t_den =
            LaurentPoly::one(target).sub(&LaurentPoly::t_pow(target, (p - 1) as i64));
        let t_image = RatFunc::new(t_num, t_den)?;
        Substitution::new(ctx, target, u_images, t_image)
    }

    /// Image of the j-th source axis (1-based; t is axis n+1).
    pub fn image(&self, j: usize) -> &RatFunc {
        if j <= self.source.n {
            &self.u_images[j - 1]
        } else {
            &self.t_image
        }
    }

    /// Jacobian `J[j][k] = d(image_j) / d(x'_k)` over the target context.
    pub fn jacobian(&self) -> Vec<Vec<RatFunc>> {
        let rows = self.source.axes();
        let mut out = Vec::with_capacity(rows);
        for j in 1..=rows {
            let img = self.image(j);
            let row: Vec<RatFunc> = Axis::all(self.target.n)
                .map(|axis| img.partial(axis))
                .collect();
            out.push(row);
        }
        out
    }

    /// Apply the substitution to a rational function over the source
    /// context.
    pub fn apply(&self, f: &RatFunc) -> Result<RatFunc, String> {
        f.substitute(self.target, &self.u_images, &self.t_image)
    }
}
