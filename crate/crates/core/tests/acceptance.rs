//! Acceptance suite: one test per criterion, exact comparisons at the
//! stated tolerances, one PASS line printed per criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines.

mod common;

use std::time::Instant;

use common::*;
use swan_core::context::{Axis, DiffContext, Radius};
use swan_core::diffmod::{DiffModule, SpectralValue, Substitution};
use swan_core::galois::{as_reduce, compare, dwork_module, kato_swan, tame_twist};
use swan_core::hensel::hensel_slope_factor;
use swan_core::ore::TwistedPoly;
use swan_core::ratfunc::RatFunc;
use swan_core::rng::SplitMix64;
use swan_core::swan::{
    break_multiset, sample_profile, BreakFit, GridOptions, SwanOutcome,
};
use swan_core::valuation::{Rat, Valuation};
use swan_core::rat;

fn grid(values: &[(i64, i64)]) -> GridOptions {
    GridOptions {
        initial: values
            .iter()
            .map(|(n, d)| Radius::from_pair(*n, *d))
            .collect(),
        ..GridOptions::default()
    }
}

fn conductor(m: &DiffModule, opts: &GridOptions) -> (Vec<Rat>, Rat, bool) {
    let rep = break_multiset(m, opts).expect("break multiset");
    match rep.outcome {
        SwanOutcome::Conductor {
            breaks,
            swan,
            hasse_arf,
        } => (breaks, swan, hasse_arf),
        SwanOutcome::Diagnostic { reason } => panic!("expected conductor, got: {}", reason),
    }
}

#[test]
fn criterion_01_kato_agreement_corpus() {
    let start = Instant::now();
    let corpus = character_corpus();
    assert!(corpus.len() >= 40, "corpus has {} items", corpus.len());
    let ps: std::collections::BTreeSet<u32> = corpus.iter().map(|c| c.p).collect();
    let ns: std::collections::BTreeSet<usize> = corpus.iter().map(|c| c.n).collect();
    assert_eq!(ps.into_iter().collect::<Vec<_>>(), vec![2, 3, 5]);
    assert_eq!(ns.into_iter().collect::<Vec<_>>(), vec![0, 1, 2]);
    assert!(
        corpus
            .iter()
            .any(|c| c.f.pole_order().unwrap_or(0) >= 12),
        "corpus reaches pole order 12"
    );
    let mut p_divisible = 0;
    let opts = GridOptions::default();
    for (i, chi) in corpus.iter().enumerate() {
        let cmp = compare(chi, &opts);
        assert!(
            cmp.equal && cmp.through_origin,
            "item {} (p={}, n={}, f={}): kato {} diagnostics {:?}",
            i,
            chi.p,
            chi.n,
            chi.f,
            cmp.kato,
            cmp.diagnostics
        );
        if chi.n >= 1 && cmp.kato > 0 && cmp.kato % (chi.p as u64) == 0 {
            p_divisible += 1;
        }
    }
    assert!(p_divisible >= 4, "p-divisible conductors present for n >= 1");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "corpus took {:?}", elapsed);
    println!(
        "criterion 01 (Kato agreement corpus, {} items, {:?}): PASS",
        corpus.len(),
        elapsed
    );
}

#[test]
fn criterion_02_hasse_arf_integrality() {
    let corpus = character_corpus();
    let opts = GridOptions::default();
    for chi in &corpus {
        let rep = as_reduce(chi);
        let m = dwork_module(&rep.reduced, chi.diff_context());
        let (_, swan, hasse_arf) = conductor(&m, &opts);
        assert!(hasse_arf, "corpus swan {} must be a nonnegative integer", swan);
    }
    // 20 random direct-sum fixtures built from reduced corpus modules.
    let mut rng = SplitMix64::new(21);
    let mut built = 0;
    let mut items = corpus.clone();
    items.retain(|c| kato_swan(c) > 0);
    while built < 20 {
        let a = &items[(rng.below(items.len() as u64)) as usize];
        let matching: Vec<_> = items
            .iter()
            .filter(|b| b.p == a.p && b.n == a.n)
            .collect();
        let b = matching[(rng.below(matching.len() as u64)) as usize];
        let ma = dwork_module(&as_reduce(a).reduced, a.diff_context());
        let mb = dwork_module(&as_reduce(b).reduced, b.diff_context());
        let sum = ma.direct_sum(&mb).unwrap();
        let (breaks, swan, hasse_arf) = conductor(&sum, &GridOptions::default());
        assert_eq!(breaks.len(), 2);
        assert!(hasse_arf, "direct sum swan {} integral", swan);
        built += 1;
    }
    println!("criterion 02 (Hasse-Arf integrality, corpus + 20 direct sums): PASS");
}

#[test]
fn criterion_03_tame_base_change() {
    let corpus = character_corpus();
    let opts = GridOptions::default();
    let mut checked = 0;
    for chi in corpus.iter() {
        if checked >= 10 {
            break;
        }
        if kato_swan(chi) == 0 {
            continue;
        }
        let base = kato_swan(chi);
        let red = as_reduce(chi).reduced;
        let m = dwork_module(&red, chi.diff_context());
        for n_pow in [2u32, 3, 4] {
            if n_pow % chi.p == 0 {
                continue;
            }
            // Kato path.
            let twisted = tame_twist(chi, n_pow).unwrap();
            assert_eq!(kato_swan(&twisted), (n_pow as u64) * base);
            // Differential path via the tame pullback.
            let sub = Substitution::tame(chi.diff_context(), n_pow).unwrap();
            let pb = m.pullback(&sub).unwrap();
            let (_, swan, _) = conductor(&pb, &opts);
            assert_eq!(swan, rat((n_pow as i64) * base as i64, 1));
        }
        checked += 1;
    }
    assert_eq!(checked, 10);
    println!("criterion 03 (tame base change, 10 items x N in {{2,3,4}}): PASS");
}

#[test]
fn criterion_04_rotation_lemma() {
    // p=3, x = b1 t^-9: highest break 9 via the u-axis; after the
    // rotation u1 -> u1 + t the t-axis-only break is exactly 8.
    let chi = as_char(3, 1, &[(&[1, -9], 1)]);
    assert_eq!(kato_swan(&chi), 9);
    let ctx3 = chi.diff_context();
    let m = dwork_module(&as_reduce(&chi).reduced, ctx3);
    let sub = Substitution::rotation(ctx3, 1).unwrap();
    let rotated = m.pullback(&sub).unwrap();
    assert!(rotated.check_integrability().ok);
    let rep = break_multiset(&rotated, &GridOptions::default()).unwrap();
    match rep.axis_top_fit(Axis::T) {
        Some(BreakFit::ThroughOrigin { b, .. }) => assert_eq!(b, &rat(8, 1)),
        other => panic!("expected through-origin t-axis fit, got {:?}", other),
    }
    // Multiplicity of the rotated break matches the original's.
    let r1 = Radius::from_int(1);
    let t_rep = rotated.scale_report(Axis::T, &r1, 0).unwrap();
    assert_eq!(t_rep.readable[0].mult, 1);
    // The overall break is unchanged by rotation (slot 0 is still 9).
    match &rep.outcome {
        SwanOutcome::Conductor { breaks, .. } => assert_eq!(breaks[0], rat(9, 1)),
        other => panic!("expected conductor, got {:?}", other),
    }
    println!("criterion 04 (rotation lemma, t-axis break 8 = b - 1): PASS");
}

#[test]
fn criterion_05_generic_rotation() {
    // Rank-one fixture with b = 2 at p = 3: after the generic rotation
    // the fitted highest break is p*b - p + 1 = 4 with the t-axis
    // dominant.
    let chi = as_char(3, 1, &[(&[1, -2], 1)]);
    assert_eq!(kato_swan(&chi), 2);
    let ctx3 = chi.diff_context();
    let m = dwork_module(&as_reduce(&chi).reduced, ctx3);
    let (breaks, _, _) = conductor(&m, &GridOptions::default());
    assert_eq!(breaks, vec![rat(2, 1)]);
    let sub = Substitution::generic_rotation(ctx3).unwrap();
    let pulled = m.pullback(&sub).unwrap();
    assert!(pulled.check_integrability().ok);
    assert_eq!(pulled.context().n, 2);
    // Sample strictly inside the window (1/8, 1/2) where the t-axis
    // profile reads 4r.
    let opts = grid(&[(3, 16), (1, 4), (3, 8)]);
    let rep = break_multiset(&pulled, &opts).unwrap();
    match &rep.outcome {
        SwanOutcome::Conductor { breaks, .. } => assert_eq!(breaks, &vec![rat(4, 1)]),
        other => panic!("expected conductor, got {:?}", other),
    }
    assert!(
        rep.dominant_axes.contains(&Axis::T),
        "t-axis dominant, got {:?}",
        rep.dominant_axes
    );
    match rep.axis_top_fit(Axis::T) {
        Some(BreakFit::ThroughOrigin { b, .. }) => assert_eq!(b, &rat(4, 1)),
        other => panic!("expected through-origin t-axis fit, got {:?}", other),
    }
    println!("criterion 05 (generic rotation, highest break 4 = pb - p + 1): PASS");
}

/// Slot values of the scale multiset at one radius: Some(readable value)
/// descending, then None per bucket slot.
fn slots_at(m: &DiffModule, r: &Radius) -> Vec<Vec<Option<Rat>>> {
    Axis::all(m.context().n)
        .map(|axis| m.scale_report(axis, r, 0).unwrap().slots())
        .collect()
}

#[test]
fn criterion_06_pullback_multiset_laws() {
    let c30 = ctx(3, 0, true);
    let c31 = ctx(3, 1, true);
    let c50 = ctx(5, 0, true);
    let fixtures: Vec<DiffModule> = vec![
        dwork(c30, "t^-2"),
        dwork(c30, "t^-4"),
        dwork(c30, "t^-2").direct_sum(&dwork(c30, "t^-1")).unwrap(),
        dwork(c30, "t^-3"), // unreduced: strict Frobenius inequality
        dwork(c31, "u1*t^-3"),
        dwork(c31, "u1*t^-2"),
        dwork(c31, "u1*t^-4+t^-1"),
        dwork(c31, "t^-2").direct_sum(&dwork(c31, "u1*t^-3")).unwrap(),
        dwork(c50, "t^-4"),
        dwork(c50, "2*t^-6+t^-3"),
    ];
    assert_eq!(fixtures.len(), 10);
    let radii = [Radius::from_int(1), Radius::from_int(2)];
    // Frobenius direction: scale(E, r) >= scale(g*E, r / p^N) slotwise.
    for (i, m) in fixtures.iter().enumerate() {
        let p = m.context().p;
        for n_pow in [1u32, 2] {
            let sub = Substitution::frobenius(*m.context(), n_pow);
            let pb = m.pullback(&sub).unwrap();
            for r in &radii {
                let r_matched =
                    Radius::new(r.value() / rat((p as i64).pow(n_pow), 1)).unwrap();
                let left = slots_at(m, r);
                let right = slots_at(&pb, &r_matched);
                for (axis_idx, (ls, rs)) in left.iter().zip(right.iter()).enumerate() {
                    for (slot, (lv, rv)) in ls.iter().zip(rs.iter()).enumerate() {
                        match (lv, rv) {
                            (Some(a), Some(b)) => assert!(
                                a >= b,
                                "fixture {} axis {} slot {}: {} < {}",
                                i,
                                axis_idx,
                                slot,
                                a,
                                b
                            ),
                            (None, Some(b)) => panic!(
                                "fixture {} axis {} slot {}: unreadable left vs readable {}",
                                i, axis_idx, slot, b
                            ),
                            // Readable >= any bucket bound, and two
                            // buckets are mutually consistent.
                            (Some(_), None) | (None, None) => {}
                        }
                    }
                }
            }
        }
    }
    // Tame equality: scale(E, r) = scale(g*E, r / N) slotwise.
    for (i, m) in fixtures.iter().enumerate() {
        let p = m.context().p;
        for n_pow in [2u32, 3, 4] {
            if n_pow % p == 0 {
                continue;
            }
            let sub = Substitution::tame(*m.context(), n_pow).unwrap();
            let pb = m.pullback(&sub).unwrap();
            for r in &radii {
                let r_matched = Radius::new(r.value() / rat(n_pow as i64, 1)).unwrap();
                let left = slots_at(m, r);
                let right = slots_at(&pb, &r_matched);
                assert_eq!(left, right, "fixture {} tame N={} r={}", i, n_pow, r);
            }
        }
    }
    println!("criterion 06 (Frobenius inequality + tame equality, 10 fixtures each): PASS");
}

#[test]
fn criterion_07_polygon_additivity_below_threshold() {
    let mut rng = SplitMix64::new(23);
    let mut done = 0;
    while done < 50 {
        let p = [3u32, 5][(done % 2) as usize];
        let n = done % 2;
        let c = ctx(p, n, true);
        let r = Radius::from_int(1);
        let d = DiffContext::new(c, Axis::T, r.clone()).unwrap();
        // Products of linear factors with slopes well below the
        // threshold -r: poles >= 2 force v < -2 + 1/(p-1) < -1.
        let mk = |rng: &mut SplitMix64| {
            let deg = 1 + rng.below(2) as usize;
            let mut acc = TwistedPoly::one(d.clone());
            for _ in 0..deg {
                let pole = rng.range_i64(2, 6);
                let mut e = vec![0i64; c.n + 1];
                for x in e.iter_mut().take(c.n) {
                    *x = rng.range_i64(0, 2);
                }
                e[c.n] = -pole;
                let g = RatFunc::from_laurent(
                    swan_core::laurent::LaurentPoly::monomial(
                        c,
                        e,
                        swan_core::coef::Coef::from_int(rng.range_i64(1, 5)),
                    )
                    .mul(&swan_core::laurent::LaurentPoly::pi(c)),
                );
                acc = acc.mul(&TwistedPoly::linear(d.clone(), g));
            }
            acc
        };
        let pp = mk(&mut rng);
        let qq = mk(&mut rng);
        let np_p = pp.newton_polygon().unwrap();
        let np_q = qq.newton_polygon().unwrap();
        let fully_readable = |np: &swan_core::ore::NewtonPolygon, deg: usize| {
            np.readable().map(|g| g.mult).sum::<usize>() == deg
        };
        if !fully_readable(&np_p, pp.degree().unwrap())
            || !fully_readable(&np_q, qq.degree().unwrap())
        {
            continue;
        }
        let prod = pp.mul(&qq);
        let np_prod = prod.newton_polygon().unwrap();
        let mut expected: Vec<(Rat, usize)> = Vec::new();
        for g in np_p.readable().chain(np_q.readable()) {
            match expected.iter_mut().find(|(s, _)| *s == g.slope) {
                Some((_, m)) => *m += g.mult,
                None => expected.push((g.slope.clone(), g.mult)),
            }
        }
        expected.sort_by(|a, b| a.0.cmp(&b.0));
        let got: Vec<(Rat, usize)> = np_prod
            .readable()
            .map(|g| (g.slope.clone(), g.mult))
            .collect();
        assert_eq!(got, expected, "case {}", done);
        done += 1;
    }
    println!("criterion 07 (polygon additivity below threshold, 50 products): PASS");
}

#[test]
fn criterion_08_hensel_factorization_soundness() {
    let mut rng = SplitMix64::new(24);
    let prec20 = rat(20, 1);
    let prec30 = rat(30, 1);
    let mut done = 0;
    while done < 20 {
        let p = [3u32, 5][(done % 2) as usize];
        let n = if done % 4 == 1 { 1 } else { 0 };
        let c = ctx(p, n, true);
        let d = DiffContext::new(c, Axis::T, Radius::from_int(1)).unwrap();
        // Two or three linear factors with pairwise distinct poles, so the
        // slopes are separated by at least 1.
        let deg = 2 + (done % 5 == 0) as usize;
        let mut poles: Vec<i64> = Vec::new();
        while poles.len() < deg {
            let cand = rng.range_i64(1, 7);
            if !poles.contains(&cand) {
                poles.push(cand);
            }
        }
        poles.sort();
        let mut acc = TwistedPoly::one(d.clone());
        for pole in &poles {
            let mut e = vec![0i64; c.n + 1];
            if n == 1 && rng.below(2) == 0 {
                e[0] = rng.range_i64(0, 2);
            }
            e[c.n] = -pole;
            let g = RatFunc::from_laurent(
                swan_core::laurent::LaurentPoly::monomial(
                    c,
                    e,
                    swan_core::coef::Coef::from_int(rng.range_i64(1, 4)),
                )
                .mul(&swan_core::laurent::LaurentPoly::pi(c)),
            );
            acc = acc.mul(&TwistedPoly::linear(d.clone(), g));
        }
        let fac20 = match hensel_slope_factor(&acc, &prec20, 64) {
            Ok(f) => f,
            Err(e) => panic!("fixture {} failed: {}", done, e),
        };
        // Residual contract at prec 20.
        if let Some(m) = &fac20.residual_margin {
            assert!(m >= &prec20, "fixture {}: margin {}", done, m);
        }
        assert_eq!(
            fac20.factors.iter().map(|f| f.mult).sum::<usize>(),
            deg,
            "fixture {}",
            done
        );
        // Slopes ascend right to left.
        let slopes: Vec<&Rat> = fac20
            .factors
            .iter()
            .filter_map(|f| f.slope.as_ref())
            .collect();
        for w in slopes.windows(2) {
            assert!(w[0] > w[1], "fixture {}: slope order", done);
        }
        // Re-run at prec 30 and compare through valuation 20.
        let fac30 = hensel_slope_factor(&acc, &prec30, 96).unwrap();
        assert_eq!(fac20.factors.len(), fac30.factors.len());
        for (a, b) in fac20.factors.iter().zip(fac30.factors.iter()) {
            assert_eq!(a.slope, b.slope);
            let np = b.poly.newton_polygon().unwrap();
            for i in 0..=a.poly.degree().unwrap() {
                let diff = a.poly.coeff(i).sub(&b.poly.coeff(i));
                if let Valuation::Finite(v) = diff.gauss_val(&d.r) {
                    let hull = np.hull_at(-(i as i64)).unwrap();
                    assert!(
                        v.clone() - hull >= prec20,
                        "fixture {}: factors diverge at coefficient {} ({})",
                        done,
                        i,
                        v
                    );
                }
            }
        }
        done += 1;
    }
    println!("criterion 08 (Hensel soundness, 20 fixtures, prec 20 vs 30): PASS");
}

#[test]
fn criterion_09_estimator_cross_check() {
    // Ten readable fixtures of rank <= 3 with spectral-compatible bases;
    // tolerance |estimate - exact| <= 0.15 = 3/20 valuation units, fixed
    // here against the exact polygon values.
    let tol = rat(3, 20);
    let c3 = ctx(3, 0, true);
    let c31 = ctx(3, 1, true);
    let c5 = ctx(5, 0, true);
    let r1 = Radius::from_int(1);
    let nilpotent_pair = |c: swan_core::context::Context, g: &str| {
        let gf = rf(g, c);
        DiffModule::new(
            c,
            2,
            vec![swan_core::matrix::Matrix::from_rows(
                c,
                vec![
                    vec![gf.clone(), RatFunc::one(c)],
                    vec![RatFunc::zero(c), gf],
                ],
            )],
        )
        .unwrap()
    };
    let fixtures: Vec<(DiffModule, Axis, Radius)> = vec![
        (dwork(c3, "t^-2"), Axis::T, r1.clone()),
        (dwork(c3, "t^-4"), Axis::T, r1.clone()),
        (dwork(c5, "t^-3"), Axis::T, r1.clone()),
        (dwork(c31, "u1*t^-3"), Axis::U(1), r1.clone()),
        (dwork(c31, "u1*t^-3"), Axis::T, r1.clone()),
        (
            dwork(c3, "t^-2").direct_sum(&dwork(c3, "t^-1")).unwrap(),
            Axis::T,
            r1.clone(),
        ),
        (
            dwork(c3, "t^-4")
                .direct_sum(&dwork(c3, "t^-2"))
                .unwrap()
                .direct_sum(&dwork(c3, "t^-1"))
                .unwrap(),
            Axis::T,
            r1.clone(),
        ),
        (
            dwork(c5, "t^-3").direct_sum(&dwork(c5, "t^-1")).unwrap(),
            Axis::T,
            Radius::from_int(2),
        ),
        (nilpotent_pair(c3, "-2*pi*t^-3"), Axis::T, r1.clone()),
        (nilpotent_pair(c5, "pi*t^-4"), Axis::T, r1.clone()),
    ];
    assert_eq!(fixtures.len(), 10);
    for (i, (m, axis, r)) in fixtures.iter().enumerate() {
        assert!(m.rank() <= 3);
        let rep = m.scale_report(*axis, r, 0).unwrap();
        let exact = match &rep.spectral {
            SpectralValue::Readable(v) => v.clone(),
            other => panic!("fixture {} not readable: {:?}", i, other),
        };
        let est = m.spectral_estimate(*axis, r, 64);
        let got = match est.final_value() {
            Valuation::Finite(q) => q.clone(),
            Valuation::Infinity => panic!("fixture {} trivial", i),
        };
        let gap = if got >= exact {
            got.clone() - &exact
        } else {
            exact.clone() - &got
        };
        assert!(
            gap <= tol,
            "fixture {}: |{} - {}| = {} > 0.15",
            i,
            got,
            exact,
            gap
        );
    }
    println!("criterion 09 (estimator within 0.15 at s_max 64, 10 fixtures): PASS");
}

#[test]
fn criterion_10_concavity_and_three_circles() {
    // Three-circles: 100 random cases, exact.
    let mut rng = SplitMix64::new(25);
    for case in 0..100 {
        let p = [2u32, 3, 5][(case % 3) as usize];
        let c = ctx(p, case % 3, true);
        let f = rand_laurent(&mut rng, c, 5);
        let r_rho = rand_radius(&mut rng);
        let r_sigma = rand_radius(&mut rng);
        let cc = rat(rng.range_i64(0, 8), 8); // c in [0, 1]
        let r_tau_val =
            &cc * r_rho.value() + (rat(1, 1) - &cc) * r_sigma.value();
        let r_tau = Radius::new(r_tau_val).unwrap();
        let v_rho = f.gauss_val(&r_rho).expect_finite().clone();
        let v_sigma = f.gauss_val(&r_sigma).expect_finite().clone();
        let v_tau = f.gauss_val(&r_tau).expect_finite().clone();
        assert!(
            v_tau >= &cc * v_rho + (rat(1, 1) - &cc) * v_sigma,
            "three-circles case {}",
            case
        );
    }
    // Concavity: 100 random (module, radius-triple) checks; the readable
    // scale profile is convex in r, so the middle value never exceeds the
    // chord.
    let corpus = character_corpus();
    let mut done = 0;
    let mut i = 0;
    while done < 100 {
        let chi = &corpus[i % corpus.len()];
        i += 1;
        let m = dwork_module(&as_reduce(chi).reduced, chi.diff_context());
        let a = rat(1 + (done % 5) as i64, 2);
        let b = &a + rat(1 + (done % 3) as i64, 2);
        let cgap = &b + rat(1, 2);
        let rs = [
            Radius::new(a).unwrap(),
            Radius::new(b).unwrap(),
            Radius::new(cgap).unwrap(),
        ];
        let axes: Vec<Axis> = Axis::all(chi.n).collect();
        let (samples, diags) = sample_profile(&m, &axes, &rs, 0).unwrap();
        assert!(diags.is_empty(), "concavity diagnostics: {:?}", diags);
        for ai in 0..axes.len() {
            let vals: Vec<Option<Rat>> = samples
                .iter()
                .map(|s| s.per_axis[ai].1.scale().cloned())
                .collect();
            if let (Some(v1), Some(v2), Some(v3)) = (&vals[0], &vals[1], &vals[2]) {
                let (x1, x2, x3) = (
                    rs[0].value().clone(),
                    rs[1].value().clone(),
                    rs[2].value().clone(),
                );
                let chord = v1 + (v3 - v1) * (&x2 - &x1) / (&x3 - &x1);
                assert!(v2 <= &chord, "concavity case {}", done);
                done += 1;
            }
        }
    }
    println!("criterion 10 (concavity + three-circles, 100 exact cases each): PASS");
}

#[test]
fn criterion_11_negative_control_naive_lift() {
    // The unreduced lift x = t^-3 at p = 3 produces the affine diagnostic
    // scale_logp = 3r - 1 on r in {3/4, 1, 2} and never a conductor.
    let c = ctx(3, 0, true);
    let m = dwork(c, "t^-3");
    let rs = [
        Radius::from_pair(3, 4),
        Radius::from_int(1),
        Radius::from_int(2),
    ];
    let (samples, _) = sample_profile(&m, &[Axis::T], &rs, 0).unwrap();
    let series: Vec<(Rat, Rat)> = samples
        .iter()
        .map(|s| {
            (
                s.r.value().clone(),
                s.per_axis[0].1.scale().unwrap().clone(),
            )
        })
        .collect();
    assert_eq!(
        series.iter().map(|x| x.1.clone()).collect::<Vec<_>>(),
        vec![rat(5, 4), rat(2, 1), rat(5, 1)]
    );
    let fit = swan_core::swan::fit_highest_break(&series, 1).unwrap();
    match &fit {
        BreakFit::AffineDiagnostic {
            slope, intercept, ..
        } => {
            assert_eq!(slope, &rat(3, 1));
            assert_eq!(intercept, &rat(-1, 1));
        }
        other => panic!("expected affine diagnostic, got {:?}", other),
    }
    let rep = break_multiset(&m, &grid(&[(3, 4), (1, 1), (2, 1)])).unwrap();
    assert!(
        matches!(rep.outcome, SwanOutcome::Diagnostic { .. }),
        "the naive lift must never report a conductor"
    );
    println!("criterion 11 (negative control: affine 3r - 1 diagnostic): PASS");
}
