//! Radius profiles, highest-break fitting, break multisets and Swan
//! conductor reports.
//!
//! Measurement happens in the readable window (large r). A through-origin
//! fit `scale_logp = b r` holding exactly at every sample, with the
//! denominator of b dividing rank!, certifies that the window value is the
//! boundary break; an affine fit with nonzero intercept is surfaced as a
//! diagnostic instead of a conductor (it signals that reduction or an
//! antecedent is needed before measuring). Unreadable buckets convert to
//! exact break 0 once the window contains r with `1/(r(p-1)) < 1/rank!`:
//! any surviving positive break would violate the slope lattice.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::context::{Axis, Radius};
use crate::diffmod::{DiffError, DiffModule, ScaleReport};
use crate::valuation::Rat;

/// One sampled radius with the per-axis scale reports.
#[derive(Clone, Debug)]
pub struct BreakSample {
    pub r: Radius,
    pub per_axis: Vec<(Axis, ScaleReport)>,
}

/// Fit of a slot's readable profile against the sampled window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BreakFit {
    ThroughOrigin {
        b: Rat,
        /// Denominator of b, a divisor of rank!.
        denominator: BigInt,
        window: Vec<Rat>,
        residuals: Vec<Rat>,
    },
    AffineDiagnostic {
        slope: Rat,
        intercept: Rat,
        window: Vec<Rat>,
        residuals: Vec<Rat>,
    },
    NonLinear {
        window: Vec<Rat>,
        residuals: Vec<Rat>,
    },
    /// All samples unreadable; converted to break 0 at `conversion_r`.
    BucketZero { conversion_r: Rat },
    /// Fewer than 3 readable samples in the window.
    Insufficient { window: Vec<Rat> },
}

impl BreakFit {
    pub fn through_origin_value(&self) -> Option<&Rat> {
        match self {
            BreakFit::ThroughOrigin { b, .. } => Some(b),
            _ => None,
        }
    }

    pub fn break_value(&self) -> Option<Rat> {
        match self {
            BreakFit::ThroughOrigin { b, .. } => Some(b.clone()),
            BreakFit::BucketZero { .. } => Some(Rat::zero()),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolvabilityVerdict {
    ConsistentWithSolvable,
    NotBoundaryReadable,
}

/// How the per-axis multisets were combined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Combination {
    /// Rank one or diagonal connection matrices: slotwise max is exact.
    Exact,
    /// General modules: slotwise max of per-axis fits, flagged.
    Heuristic,
}

#[derive(Clone, Debug)]
pub enum SwanOutcome {
    Conductor {
        /// Break multiset, descending; length = rank.
        breaks: Vec<Rat>,
        swan: Rat,
        hasse_arf: bool,
    },
    /// A fit came out affine or non-linear; no conductor is claimed.
    Diagnostic { reason: String },
}

#[derive(Clone, Debug)]
pub struct SwanReport {
    pub rank: usize,
    pub grid: Vec<Radius>,
    /// Slot fits per axis (slot 0 is the largest scale entry).
    pub per_axis_fits: Vec<(Axis, Vec<BreakFit>)>,
    pub combination: Combination,
    /// Axes achieving the max readable scale at every sampled radius.
    pub dominant_axes: Vec<Axis>,
    pub outcome: SwanOutcome,
    pub diagnostics: Vec<String>,
}

impl SwanReport {
    /// The fit of a single axis's top slot (the axis-relative highest
    /// break), e.g. the t-axis-only break after a rotation.
    pub fn axis_top_fit(&self, axis: Axis) -> Option<&BreakFit> {
        self.per_axis_fits
            .iter()
            .find(|(a, _)| *a == axis)
            .and_then(|(_, fits)| fits.first())
    }
}

#[derive(Clone, Debug)]
pub enum SwanError {
    Diff(DiffError),
    /// Fewer than 3 readable samples for a slot even at the grid cap.
    InsufficientWindow { axis: Axis, slot: usize },
    /// Bucket slots cannot convert to break 0 inside the window; the
    /// report says which r would be needed.
    WindowTooSmall { required_r: Rat },
}

impl core::fmt::Display for SwanError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SwanError::Diff(e) => write!(f, "{}", e),
            SwanError::InsufficientWindow { axis, slot } => write!(
                f,
                "fewer than 3 readable samples for axis {} slot {}",
                axis, slot
            ),
            SwanError::WindowTooSmall { required_r } => write!(
                f,
                "window too small to resolve break-0 buckets; need r > {}",
                required_r
            ),
        }
    }
}

impl From<DiffError> for SwanError {
    fn from(e: DiffError) -> Self {
        SwanError::Diff(e)
    }
}

/// Sampling options for break computation.
#[derive(Clone, Debug)]
pub struct GridOptions {
    pub initial: Vec<Radius>,
    /// Doubling extension cap on r.
    pub cap: Rat,
    pub seed: u64,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions {
            initial: default_grid(),
            cap: Rat::from_integer(BigInt::from(64)),
            seed: 0,
        }
    }
}

/// Default sampling grid r in {1/3, 1/2, 1, 2}.
pub fn default_grid() -> Vec<Radius> {
    alloc::vec![
        Radius::from_pair(1, 3),
        Radius::from_pair(1, 2),
        Radius::from_int(1),
        Radius::from_int(2),
    ]
}

/// One scale report per (axis, r), with concavity diagnostics on each
/// axis's readable profile (scale_logp is convex in r, so the middle
/// sample never exceeds the chord).
pub fn sample_profile(
    m: &DiffModule,
    axes: &[Axis],
    rs: &[Radius],
    seed: u64,
) -> Result<(Vec<BreakSample>, Vec<String>), DiffError> {
    let mut samples = Vec::with_capacity(rs.len());
    for r in rs {
        let mut per_axis = Vec::with_capacity(axes.len());
        for &axis in axes {
            per_axis.push((axis, m.scale_report(axis, r, seed)?));
        }
        samples.push(BreakSample {
            r: r.clone(),
            per_axis,
        });
    }
    let mut diagnostics = Vec::new();
    for (ai, &axis) in axes.iter().enumerate() {
        let series: Vec<(Rat, Rat)> = samples
            .iter()
            .filter_map(|s| {
                s.per_axis[ai]
                    .1
                    .scale()
                    .map(|v| (s.r.value().clone(), v.clone()))
            })
            .collect();
        for w in series.windows(3) {
            let (r1, v1) = &w[0];
            let (r2, v2) = &w[1];
            let (r3, v3) = &w[2];
            // Convexity: v2 <= chord value at r2.
            let chord = v1 + (v3 - v1) * (r2 - r1) / (r3 - r1);
            if *v2 > chord {
                diagnostics.push(format!(
                    "concavity violation on axis {} at r = {}",
                    axis, r2
                ));
            }
        }
    }
    Ok((samples, diagnostics))
}

/// Fit the readable samples `(r, value)` of one slot.
///
/// Through-origin mode requires every sample to satisfy `value = b r`
/// exactly with the denominator of b dividing rank!. Otherwise an exact
/// affine fit `a r + c` is attempted and surfaced as a diagnostic; any
/// remaining disagreement is reported non-linear.
pub fn fit_highest_break(samples: &[(Rat, Rat)], rank: usize) -> Result<BreakFit, String> {
    if samples.len() < 3 {
        return Err(format!(
            "need at least 3 readable samples, got {}",
            samples.len()
        ));
    }
    let window: Vec<Rat> = samples.iter().map(|(r, _)| r.clone()).collect();
    let rank_factorial = factorial(rank);
    let b = &samples[0].1 / &samples[0].0;
    let origin_residuals: Vec<Rat> = samples
        .iter()
        .map(|(r, v)| v - &b * r)
        .collect();
    if origin_residuals.iter().all(|x| x.is_zero()) {
        let denominator = b.denom().clone();
        if (&rank_factorial % &denominator).is_zero() && !b.is_negative() {
            return Ok(BreakFit::ThroughOrigin {
                b,
                denominator,
                window,
                residuals: origin_residuals,
            });
        }
        // An exact linear fit whose slope escapes the lattice cannot be a
        // global break; report it as non-linear evidence.
        return Ok(BreakFit::NonLinear {
            window,
            residuals: origin_residuals,
        });
    }
    let slope = (&samples[1].1 - &samples[0].1) / (&samples[1].0 - &samples[0].0);
    let intercept = &samples[0].1 - &slope * &samples[0].0;
    let residuals: Vec<Rat> = samples
        .iter()
        .map(|(r, v)| v - (&slope * r + &intercept))
        .collect();
    if residuals.iter().all(|x| x.is_zero()) && !intercept.is_zero() {
        return Ok(BreakFit::AffineDiagnostic {
            slope,
            intercept,
            window,
            residuals,
        });
    }
    Ok(BreakFit::NonLinear { window, residuals })
}

/// Solvability probe on a fit: through-origin profiles are consistent
/// with solvability at the boundary; anything else only means the window
/// did not reach boundary-faithful readings, never non-solvability.
pub fn solvability_probe(fit: &BreakFit) -> SolvabilityVerdict {
    match fit {
        BreakFit::ThroughOrigin { .. } | BreakFit::BucketZero { .. } => {
            SolvabilityVerdict::ConsistentWithSolvable
        }
        _ => SolvabilityVerdict::NotBoundaryReadable,
    }
}

fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k as u64);
    }
    acc
}

/// Eventually-dominant flags over the sampled window: an axis is flagged
/// when its readable top scale achieves the cross-axis max at every
/// sampled r where any axis is readable; ties make axes co-dominant.
pub fn dominance_table(samples: &[BreakSample], axes: &[Axis]) -> Vec<Axis> {
    let mut dominant: Vec<bool> = alloc::vec![true; axes.len()];
    for s in samples {
        let values: Vec<Option<&Rat>> =
            s.per_axis.iter().map(|(_, rep)| rep.scale()).collect();
        let max = values.iter().flatten().max().cloned();
        let Some(max) = max else { continue };
        for (i, v) in values.iter().enumerate() {
            if *v != Some(max) {
                dominant[i] = false;
            }
        }
    }
    axes.iter()
        .zip(dominant)
        .filter_map(|(a, d)| if d { Some(*a) } else { None })
        .collect()
}

/// Full break-multiset pipeline: sample, fit every (axis, slot) series,
/// convert persistent buckets to exact break 0 under the lattice bound,
/// and combine axes by descending-slot pointwise max.
pub fn break_multiset(m: &DiffModule, opts: &GridOptions) -> Result<SwanReport, SwanError> {
    let ctx = *m.context();
    let axes: Vec<Axis> = Axis::all(ctx.n).collect();
    let rank = m.rank();
    let rank_factorial = factorial(rank);
    // r must exceed rank!/(p-1) to convert buckets to exact break 0.
    let conversion_threshold = Rat::new(rank_factorial, BigInt::from(ctx.p - 1));

    let mut grid: Vec<Radius> = opts.initial.clone();
    grid.sort();
    grid.dedup();
    assert!(!grid.is_empty(), "grid must be nonempty");

    loop {
        let (samples, mut diagnostics) = sample_profile(m, &axes, &grid, opts.seed)?;
        // Per-axis slot series (reported as supplementary data; the
        // conductor decision uses the combined series below).
        let mut per_axis_fits: Vec<(Axis, Vec<BreakFit>)> = Vec::new();
        for (ai, &axis) in axes.iter().enumerate() {
            let mut fits = Vec::with_capacity(rank);
            for slot in 0..rank {
                let series: Vec<(Rat, Rat)> = samples
                    .iter()
                    .filter_map(|s| {
                        s.per_axis[ai].1.slots()[slot]
                            .clone()
                            .map(|v| (s.r.value().clone(), v))
                    })
                    .collect();
                let window: Vec<Rat> = series.iter().map(|(r, _)| r.clone()).collect();
                if series.is_empty() {
                    let max_r = grid.last().unwrap().value().clone();
                    if max_r > conversion_threshold {
                        fits.push(BreakFit::BucketZero { conversion_r: max_r });
                    } else {
                        fits.push(BreakFit::Insufficient { window });
                    }
                } else if series.len() < 3 {
                    fits.push(BreakFit::Insufficient { window });
                } else {
                    fits.push(
                        fit_highest_break(&series, rank).expect("series has >= 3 samples"),
                    );
                }
            }
            per_axis_fits.push((axis, fits));
        }

        // Combined series per slot: at each sampled r, the pointwise max
        // across axes of the slot's readable values (the scale is the max
        // over derivations, so the dominated axes drop out exactly).
        let mut combined_fits: Vec<BreakFit> = Vec::with_capacity(rank);
        let mut need_extension = false;
        let mut needs_conversion = false;
        let mut insufficient: Option<(Axis, usize)> = None;
        for slot in 0..rank {
            let mut series: Vec<(Rat, Rat)> = Vec::new();
            for s in &samples {
                let mut best: Option<Rat> = None;
                for (_, rep) in &s.per_axis {
                    if let Some(v) = rep.slots()[slot].clone() {
                        best = Some(match best.take() {
                            Some(x) if x >= v => x,
                            _ => v,
                        });
                    }
                }
                if let Some(v) = best {
                    series.push((s.r.value().clone(), v));
                }
            }
            if series.is_empty() {
                let max_r = grid.last().unwrap().value().clone();
                if max_r > conversion_threshold {
                    combined_fits.push(BreakFit::BucketZero { conversion_r: max_r });
                } else {
                    needs_conversion = true;
                    need_extension = true;
                    combined_fits.push(BreakFit::Insufficient { window: Vec::new() });
                }
            } else if series.len() < 3 {
                need_extension = true;
                insufficient = Some((axes[0], slot));
                combined_fits.push(BreakFit::Insufficient {
                    window: series.iter().map(|(r, _)| r.clone()).collect(),
                });
            } else {
                combined_fits
                    .push(fit_highest_break(&series, rank).expect("series has >= 3 samples"));
            }
        }

        if need_extension {
            // Extend the grid by doubling, up to the cap.
            let max_r = grid.last().unwrap().value().clone();
            let next = &max_r * Rat::from_integer(BigInt::from(2));
            if next <= opts.cap {
                grid.push(Radius::new(next).expect("positive"));
                continue;
            }
            if needs_conversion {
                return Err(SwanError::WindowTooSmall {
                    required_r: conversion_threshold,
                });
            }
            let (axis, slot) = insufficient.expect("some slot was insufficient");
            return Err(SwanError::InsufficientWindow { axis, slot });
        }

        // An affine or non-linear combined fit means the window is not
        // boundary-faithful; no conductor is claimed.
        let mut breaks: Vec<Rat> = Vec::with_capacity(rank);
        let mut blocked: Option<String> = None;
        for (slot, fit) in combined_fits.iter().enumerate() {
            match fit {
                BreakFit::ThroughOrigin { b, .. } => breaks.push(b.clone()),
                BreakFit::BucketZero { .. } => breaks.push(Rat::zero()),
                BreakFit::AffineDiagnostic {
                    slope, intercept, ..
                } => {
                    blocked = Some(format!(
                        "slot {}: affine profile {}*r + ({}) is not boundary-faithful",
                        slot, slope, intercept
                    ));
                    breaks.push(Rat::zero());
                }
                BreakFit::NonLinear { .. } => {
                    blocked = Some(format!(
                        "slot {}: profile is not linear on the window",
                        slot
                    ));
                    breaks.push(Rat::zero());
                }
                BreakFit::Insufficient { .. } => unreachable!("extension handled above"),
            }
        }

        let combination = if rank == 1 || m.is_diagonal() {
            Combination::Exact
        } else {
            Combination::Heuristic
        };
        if combination == Combination::Heuristic {
            diagnostics.push(String::from(
                "cross-axis multiset combined by slotwise max (heuristic for non-diagonal modules)",
            ));
        }
        let dominant_axes = dominance_table(&samples, &axes);
        let outcome = match blocked {
            Some(reason) => SwanOutcome::Diagnostic { reason },
            None => {
                breaks.sort_by(|a, b| b.cmp(a));
                let swan: Rat = breaks.iter().fold(Rat::zero(), |acc, b| acc + b);
                let hasse_arf = swan.is_integer() && !swan.is_negative();
                SwanOutcome::Conductor {
                    breaks,
                    swan,
                    hasse_arf,
                }
            }
        };
        return Ok(SwanReport {
            rank,
            grid,
            per_axis_fits,
            combination,
            dominant_axes,
            outcome,
            diagnostics,
        });
    }
}
