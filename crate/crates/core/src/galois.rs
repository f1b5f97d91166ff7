//! Artin-Schreier characters over k((t)) with k = F_p(b_1..b_n), the
//! characteristic-p conductor oracle, and the comparison harness against
//! the differential pipeline.
//!
//! A character is given by a Laurent polynomial f in t with coefficients
//! in F_p[b_1..b_n]. Replacing f by f - (y^p - y) never changes the
//! character; the least pole order reachable that way is the conductor.
//! The reduction loop peels p-th-power leading monomials: a monomial
//! c b^I is a p-th power exactly when p divides I componentwise (scalars
//! in F_p always are), so either the pole order drops, or an obstruction
//! certifies the conductor -- possibly divisible by p when n >= 1, never
//! when n = 0.
//!
//! The differential side lifts the reduced representative monomial by
//! monomial (integer representatives in 0..p-1) into a rank-one module
//! with N_i = pi * d_i(x), and runs the break-multiset pipeline; the two
//! conductors are compared exactly.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;

use alloc::vec::Vec;

use num_traits::Signed;

use crate::coef::Coef;
use crate::context::{Axis, Context};
use crate::diffmod::DiffModule;
use crate::laurent::{Expo, LaurentPoly};
use crate::ratfunc::RatFunc;
use crate::swan::{break_multiset, GridOptions, SwanError, SwanOutcome, SwanReport};
use crate::valuation::Rat;

/// A Laurent polynomial over F_p[b_1..b_n] in t: exponent vectors have
/// the b-exponents (nonnegative) first and the signed t-exponent last;
/// coefficients are reduced to 1..p-1 and zero terms are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    p: u32,
    n: usize,
    terms: BTreeMap<Expo, u32>,
}

impl CharPoly {
    pub fn zero(p: u32, n: usize) -> Self {
        CharPoly {
            p,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &u32)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert(&mut self, expo: Expo, c: i64) {
        assert_eq!(expo.len(), self.n + 1);
        assert!(
            expo[..self.n].iter().all(|e| *e >= 0),
            "b-exponents must be nonnegative"
        );
        let c = c.rem_euclid(self.p as i64) as u32;
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(expo.clone()).or_insert(0);
        *entry = (*entry + c) % self.p;
        if *entry == 0 {
            self.terms.remove(&expo);
        }
    }

    pub fn add(&self, other: &CharPoly) -> CharPoly {
        assert_eq!((self.p, self.n), (other.p, other.n));
        let mut out = self.clone();
        for (e, c) in other.terms.iter() {
            out.insert(e.clone(), *c as i64);
        }
        out
    }

    pub fn neg(&self) -> CharPoly {
        let mut out = CharPoly::zero(self.p, self.n);
        for (e, c) in self.terms.iter() {
            out.insert(e.clone(), -(*c as i64));
        }
        out
    }

    pub fn sub(&self, other: &CharPoly) -> CharPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CharPoly) -> CharPoly {
        assert_eq!((self.p, self.n), (other.p, other.n));
        let mut out = CharPoly::zero(self.p, self.n);
        for (ea, ca) in self.terms.iter() {
            for (eb, cb) in other.terms.iter() {
                let e: Expo = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                out.insert(e, (*ca as i64) * (*cb as i64));
            }
        }
        out
    }

    /// Frobenius power: i-th powering is additive on exponents in char p.
    pub fn frobenius(&self) -> CharPoly {
        let mut out = CharPoly::zero(self.p, self.n);
        for (e, c) in self.terms.iter() {
            let pe: Expo = e.iter().map(|x| x * self.p as i64).collect();
            // c^p = c in F_p.
            out.insert(pe, *c as i64);
        }
        out
    }

    /// `y^p - y`.
    pub fn wp(&self) -> CharPoly {
        self.frobenius().sub(self)
    }

    /// Pole order `-min t-exponent` of the stored terms; `None` when zero.
    pub fn pole_order(&self) -> Option<i64> {
        self.terms.keys().map(|e| -e[self.n]).max()
    }

    /// The coefficient of `t^(-m)` as a polynomial in the b-variables.
    fn leading_slice(&self, m: i64) -> CharPoly {
        let mut out = CharPoly::zero(self.p, self.n);
        for (e, c) in self.terms.iter() {
            if e[self.n] == -m {
                out.insert(e.clone(), *c as i64);
            }
        }
        out
    }

    /// Substitute `t -> t^N`.
    pub fn tame_twist(&self, n_pow: u32) -> CharPoly {
        let mut out = CharPoly::zero(self.p, self.n);
        for (e, c) in self.terms.iter() {
            let mut e2 = e.clone();
            e2[self.n] *= n_pow as i64;
            out.insert(e2, *c as i64);
        }
        out
    }

    /// Monomial lift with integer representatives in 0..p-1: each term
    /// `c b^I t^j` lifts to the integer c times `u^I t^j`.
    pub fn lift(&self, ctx: Context) -> LaurentPoly {
        assert_eq!(ctx.n, self.n);
        let mut out = LaurentPoly::zero(ctx);
        for (e, c) in self.terms.iter() {
            out = out.add(&LaurentPoly::monomial(
                ctx,
                e.clone(),
                Coef::from_int(*c as i64),
            ));
        }
        out
    }
}

impl core::fmt::Display for CharPoly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            if *c != 1 || e.iter().all(|x| *x == 0) {
                parts.push(format!("{}", c));
            }
            for (i, k) in e.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                let name = if i < self.n {
                    format!("b{}", i + 1)
                } else {
                    String::from("t")
                };
                if *k == 1 {
                    parts.push(name);
                } else {
                    parts.push(format!("{}^{}", name, k));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// An Artin-Schreier character datum: p, the number of residue p-basis
/// elements, and the defining Laurent polynomial f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ASCharacter {
    pub p: u32,
    pub n: usize,
    pub f: CharPoly,
}

impl ASCharacter {
    pub fn new(p: u32, n: usize, f: CharPoly) -> Result<Self, String> {
        if f.p != p || f.n != n {
            return Err(String::from("character polynomial context mismatch"));
        }
        Context::new(p, n, true)?;
        Ok(ASCharacter { p, n, f })
    }

    /// The pi-extended differential context matching this character.
    pub fn diff_context(&self) -> Context {
        Context::new(self.p, self.n, true).expect("validated at construction")
    }
}

/// One step of the reduction trace.
#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub pole: i64,
    /// The peeled p-th root times `t^(-pole/p)`.
    pub y: CharPoly,
}

/// Result of Artin-Schreier reduction.
#[derive(Clone, Debug)]
pub struct KatoReport {
    pub swan: u64,
    pub reduced: CharPoly,
    /// Witness with `f - reduced = y^p - y`, identically.
    pub witness: CharPoly,
    pub steps: Vec<ReductionStep>,
    /// For a positive conductor: the leading obstruction, either a pole
    /// order prime to p or a non-p-th-power leading coefficient.
    pub obstruction: Option<Obstruction>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    PoleOrderPrimeToP,
    LeadingCoefficientNotPthPower,
}

/// Minimize the pole order of f within its Artin-Schreier class.
///
/// Loop: with m the pole order, stop at m <= 0 (conductor 0) or p not
/// dividing m (conductor m). Otherwise split the leading coefficient by
/// monomial p-divisibility, peel the p-th-power part with
/// `y = a_pow^(1/p) t^(-m/p)`, and either a non-p-th-power remainder
/// certifies conductor m, or the pole strictly drops and the loop
/// continues. Terminates because m decreases.
pub fn as_reduce(chi: &ASCharacter) -> KatoReport {
    let p = chi.p;
    let n = chi.n;
    let mut f = chi.f.clone();
    let mut witness = CharPoly::zero(p, n);
    let mut steps = Vec::new();
    loop {
        let m = match f.pole_order() {
            Some(m) if m > 0 => m,
            _ => {
                return KatoReport {
                    swan: 0,
                    reduced: f,
                    witness,
                    steps,
                    obstruction: None,
                };
            }
        };
        if m % (p as i64) != 0 {
            return KatoReport {
                swan: m as u64,
                reduced: f,
                witness,
                steps,
                obstruction: Some(Obstruction::PoleOrderPrimeToP),
            };
        }
        let lead = f.leading_slice(m);
        // Split c b^I by componentwise p-divisibility of I; scalars in
        // F_p are always p-th powers (Frobenius fixes F_p).
        let mut root = CharPoly::zero(p, n);
        let mut rest_exists = false;
        for (e, c) in lead.terms() {
            let divisible = e[..n].iter().all(|x| x % (p as i64) == 0);
            if divisible {
                let mut re: Expo = e.iter().map(|x| x / (p as i64)).collect();
                re[n] = -m / (p as i64);
                root.insert(re, *c as i64);
            } else {
                rest_exists = true;
            }
        }
        if root.is_zero() {
            // Nothing to peel: the whole leading coefficient obstructs.
            return KatoReport {
                swan: m as u64,
                reduced: f,
                witness,
                steps,
                obstruction: Some(Obstruction::LeadingCoefficientNotPthPower),
            };
        }
        f = f.sub(&root.wp());
        witness = witness.add(&root);
        steps.push(ReductionStep {
            pole: m,
            y: root.clone(),
        });
        if rest_exists {
            // The remainder at pole m is nonzero and not a p-th power.
            return KatoReport {
                swan: m as u64,
                reduced: f,
                witness,
                steps,
                obstruction: Some(Obstruction::LeadingCoefficientNotPthPower),
            };
        }
        debug_assert!(f.pole_order().map(|m2| m2 < m).unwrap_or(true));
    }
}

/// The conductor alone.
pub fn kato_swan(chi: &ASCharacter) -> u64 {
    as_reduce(chi).swan
}

/// Substitute `t -> t^N` with gcd(N, p) = 1; the conductor scales by N.
pub fn tame_twist(chi: &ASCharacter, n_pow: u32) -> Result<ASCharacter, String> {
    if n_pow == 0 || n_pow % chi.p == 0 {
        return Err(format!("tame exponent {} must be coprime to p", n_pow));
    }
    ASCharacter::new(chi.p, chi.n, chi.f.tame_twist(n_pow))
}

/// Rank-one module with `N_i = pi * d_i(x)` for x the monomial lift of
/// the (reduced) representative. Integrability holds by symmetry of
/// mixed partials.
pub fn dwork_module(f_red: &CharPoly, ctx: Context) -> DiffModule {
    let x = RatFunc::from_laurent(f_red.lift(ctx));
    let pi = RatFunc::from_laurent(LaurentPoly::pi(ctx));
    let entries: Vec<RatFunc> = Axis::all(ctx.n)
        .map(|axis| pi.mul(&x.partial(axis)))
        .collect();
    DiffModule::rank_one(ctx, entries).expect("rank-one construction")
}

/// Outcome of one Kato-vs-differential comparison.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub kato: u64,
    pub report: KatoReport,
    pub differential: Result<SwanReport, SwanError>,
    /// Exact equality of the two conductors with a through-origin
    /// certificate on the differential side.
    pub equal: bool,
    pub through_origin: bool,
    pub diagnostics: Vec<String>,
}

/// Run both conductor computations and compare exactly. The differential
/// side always starts from the reduced representative; affine diagnostics
/// there are a hard failure, not a conductor.
pub fn compare(chi: &ASCharacter, opts: &GridOptions) -> Comparison {
    let report = as_reduce(chi);
    let kato = report.swan;
    let ctx = chi.diff_context();
    let module = dwork_module(&report.reduced, ctx);
    let differential = break_multiset(&module, opts);
    let mut diagnostics = Vec::new();
    let (equal, through_origin) = match &differential {
        Ok(rep) => match &rep.outcome {
            SwanOutcome::Conductor { swan, .. } => {
                let through = rep.per_axis_fits.iter().all(|(_, fits)| {
                    fits.iter().all(|f| {
                        matches!(
                            f,
                            crate::swan::BreakFit::ThroughOrigin { .. }
                                | crate::swan::BreakFit::BucketZero { .. }
                                // A dominated axis may be affine; the
                                // combined fit is what certifies.
                                | crate::swan::BreakFit::AffineDiagnostic { .. }
                                | crate::swan::BreakFit::Insufficient { .. }
                        )
                    })
                });
                let combined_through = !matches!(rep.outcome, SwanOutcome::Diagnostic { .. });
                let expected = Rat::from_integer(kato.into());
                let equal = swan == &expected && !swan.is_negative();
                if !equal {
                    diagnostics.push(format!(
                        "conductor mismatch: kato {} vs differential {}",
                        kato, swan
                    ));
                }
                (equal, through && combined_through)
            }
            SwanOutcome::Diagnostic { reason } => {
                diagnostics.push(format!("differential side diagnostic: {}", reason));
                (false, false)
            }
        },
        Err(e) => {
            diagnostics.push(format!("differential side error: {}", e));
            (false, false)
        }
    };
    Comparison {
        kato,
        report,
        differential,
        equal,
        through_origin,
        diagnostics,
    }
}
