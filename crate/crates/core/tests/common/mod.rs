//! Shared fixture generators for the integration suites. Everything is
//! seeded and deterministic.

#![allow(dead_code)]

use swan_core::coef::Coef;
use swan_core::context::{Axis, Context, Radius};
use swan_core::diffmod::DiffModule;
use swan_core::expr::parse_ratfunc;
use swan_core::galois::{ASCharacter, CharPoly};
use swan_core::laurent::LaurentPoly;
use swan_core::ratfunc::RatFunc;
use swan_core::rng::SplitMix64;
use swan_core::valuation::Rat;
use swan_core::{rat, rat_int};

pub fn ctx(p: u32, n: usize, uses_pi: bool) -> Context {
    Context::new(p, n, uses_pi).unwrap()
}

pub fn rf(src: &str, c: Context) -> RatFunc {
    parse_ratfunc(src, c).unwrap()
}

/// Random nonzero rational with small numerator/denominator, possibly
/// carrying a power of p.
pub fn rand_rat(rng: &mut SplitMix64, p: u32) -> Rat {
    let mut num = rng.range_i64(-9, 9);
    if num == 0 {
        num = 1;
    }
    let den = rng.range_i64(1, 9);
    let mut q = rat(num, den);
    let twist = rng.range_i64(-2, 2);
    let pb = rat_int(p as i64);
    for _ in 0..twist.abs() {
        if twist > 0 {
            q *= pb.clone();
        } else {
            q /= pb.clone();
        }
    }
    q
}

/// Random coefficient over the context's field.
pub fn rand_coef(rng: &mut SplitMix64, c: &Context) -> Coef {
    if c.uses_pi && rng.below(3) == 0 {
        let pi = Coef::pi(c);
        let a = Coef::from_rat(rand_rat(rng, c.p));
        a.mul(&pi, c)
    } else {
        Coef::from_rat(rand_rat(rng, c.p))
    }
}

/// Random nonzero Laurent polynomial with a handful of terms.
pub fn rand_laurent(rng: &mut SplitMix64, c: Context, max_terms: u64) -> LaurentPoly {
    loop {
        let mut f = LaurentPoly::zero(c);
        let terms = 1 + rng.below(max_terms);
        for _ in 0..terms {
            let mut e = vec![0i64; c.n + 1];
            for x in e.iter_mut().take(c.n) {
                *x = rng.range_i64(-2, 3);
            }
            e[c.n] = rng.range_i64(-5, 5);
            f = f.add(&LaurentPoly::monomial(c, e, rand_coef(rng, &c)));
        }
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random positive rational radius parameter in (0, 4].
pub fn rand_radius(rng: &mut SplitMix64) -> Radius {
    let num = rng.range_i64(1, 24);
    let den = rng.range_i64(1, 6);
    Radius::new(rat(num, den).min(rat(4, 1))).unwrap()
}

/// Dwork-style rank-one module with N_i = pi * d_i(x).
pub fn dwork(c: Context, x: &str) -> DiffModule {
    let xf = rf(x, c);
    dwork_of(c, &xf)
}

pub fn dwork_of(c: Context, x: &RatFunc) -> DiffModule {
    let pi = RatFunc::from_laurent(LaurentPoly::pi(c));
    let entries: Vec<RatFunc> = Axis::all(c.n)
        .map(|axis| pi.mul(&x.partial(axis)))
        .collect();
    DiffModule::rank_one(c, entries).unwrap()
}

/// Build an Artin-Schreier character from (exponent vector, coefficient)
/// pairs.
pub fn as_char(p: u32, n: usize, terms: &[(&[i64], i64)]) -> ASCharacter {
    let mut f = CharPoly::zero(p, n);
    for (e, c) in terms {
        f.insert(e.to_vec(), *c);
    }
    ASCharacter::new(p, n, f).unwrap()
}

/// Deterministic corpus of Artin-Schreier characters spanning
/// p in {2,3,5}, n in {0,1,2}, pole orders down to -12, with
/// p-divisible-conductor cases for n >= 1.
pub fn character_corpus() -> Vec<ASCharacter> {
    let mut out = Vec::new();
    // Hand-picked anchors, including the p-divisible conductors.
    out.push(as_char(3, 0, &[(&[-2], 1)]));
    out.push(as_char(3, 0, &[(&[-3], 1)]));
    out.push(as_char(3, 0, &[(&[-12], 2), (&[-4], 1)]));
    out.push(as_char(3, 1, &[(&[1, -3], 1)])); // swan 3, p | 3
    out.push(as_char(3, 1, &[(&[3, -3], 1)]));
    out.push(as_char(3, 1, &[(&[1, -6], 2)])); // swan 6, p | 6
    out.push(as_char(3, 2, &[(&[1, 2, -9], 1)])); // swan 9, p | 9
    out.push(as_char(3, 2, &[(&[0, 1, -12], 1), (&[1, 0, -2], 1)])); // swan 12
    out.push(as_char(2, 0, &[(&[-1], 1)]));
    out.push(as_char(2, 0, &[(&[-4], 1), (&[-1], 1)])); // reduces to 0
    out.push(as_char(2, 0, &[(&[-12], 1), (&[-5], 1)]));
    out.push(as_char(2, 1, &[(&[1, -2], 1)])); // swan 2, p | 2
    out.push(as_char(2, 1, &[(&[1, -4], 1), (&[0, -1], 1)])); // swan 4
    out.push(as_char(2, 2, &[(&[1, 1, -6], 1)])); // swan 6
    out.push(as_char(2, 2, &[(&[2, 1, -8], 1), (&[0, 0, -3], 1)])); // swan 8
    out.push(as_char(5, 0, &[(&[-4], 3)]));
    out.push(as_char(5, 0, &[(&[-10], 1), (&[-7], 2)]));
    out.push(as_char(5, 1, &[(&[2, -5], 1)])); // swan 5, p | 5
    out.push(as_char(5, 1, &[(&[1, -10], 4), (&[0, -3], 1)])); // swan 10
    out.push(as_char(5, 2, &[(&[0, 3, -12], 2)]));
    // Seeded random fill across the (p, n) lattice.
    let mut rng = SplitMix64::new(2024);
    for (p, n) in [
        (2u32, 0usize),
        (2, 1),
        (2, 2),
        (3, 0),
        (3, 1),
        (3, 2),
        (5, 0),
        (5, 1),
        (5, 2),
    ] {
        for _ in 0..3 {
            let mut f = CharPoly::zero(p, n);
            let terms = 1 + rng.below(3);
            for _ in 0..terms {
                let mut e = vec![0i64; n + 1];
                for x in e.iter_mut().take(n) {
                    *x = rng.range_i64(0, 4);
                }
                e[n] = -rng.range_i64(1, 12);
                f.insert(e, rng.range_i64(1, p as i64 - 1 + 1));
            }
            if f.is_zero() {
                continue;
            }
            out.push(ASCharacter::new(p, n, f).unwrap());
        }
    }
    out
}
