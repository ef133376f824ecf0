//! Sampled oscillation `max f - min f` on partition members.
//!
//! A black-box function only reveals its values at sample points, so each
//! member is sampled at `k + 1` equally spaced points (endpoints included).
//! The raw sampled range can underestimate the true oscillation; with a
//! Lipschitz constant `L` every entry is inflated by `2 L (hi - lo) / k`,
//! which turns it into a guaranteed upper bound.
//!
//! Member samples are drawn from the global grid `a + (j / (N k)) (b - a)`,
//! so the samples of level `n` are a subset of those of level `n + 1` at
//! the same `k`, and re-sampling the same global grid at a coarser level
//! (`k` doubled per level) yields exactly nested sample sets.

use std::fmt;

use crate::error::{Error, Result};
use crate::function::{sample, RealFunction};
use crate::partition::{grid_point, DyadicPartition};

pub const DEFAULT_SAMPLES: usize = 16;
/// Keeps `N * k` well inside the exactly representable integers.
pub const MAX_SAMPLES: usize = 1 << 20;

/// How the per-member oscillation is obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rigor {
    /// Range of the samples only. Heuristic: may underestimate.
    Sampled,
    /// Sample range inflated with the given Lipschitz constant.
    Lipschitz(f64),
}

impl Rigor {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Rigor::Sampled => Ok(()),
            Rigor::Lipschitz(l) if l.is_finite() && l >= 0.0 => Ok(()),
            Rigor::Lipschitz(l) => Err(Error::InvalidArgument(format!(
                "Lipschitz constant must be finite and non-negative, got {l}"
            ))),
        }
    }

    /// Whether bounds derived under this rigor are guaranteed (given a valid `L`).
    pub fn is_certified(&self) -> bool {
        matches!(self, Rigor::Lipschitz(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Rigor::Sampled => "sampled",
            Rigor::Lipschitz(_) => "lipschitz",
        }
    }

    pub fn lipschitz(&self) -> Option<f64> {
        match *self {
            Rigor::Sampled => None,
            Rigor::Lipschitz(l) => Some(l),
        }
    }

    /// Worst-case amount by which `k`-point sampling of `[lo, hi]` can miss
    /// the true range.
    pub fn inflation(&self, lo: f64, hi: f64, samples: usize) -> f64 {
        match *self {
            Rigor::Sampled => 0.0,
            Rigor::Lipschitz(l) => 2.0 * l * (hi - lo) / samples as f64,
        }
    }
}

impl fmt::Display for Rigor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rigor::Sampled => f.write_str("sampled (heuristic)"),
            Rigor::Lipschitz(l) => write!(f, "lipschitz-inflated (L = {l})"),
        }
    }
}

pub(crate) fn check_samples(samples: usize) -> Result<()> {
    if !(2..=MAX_SAMPLES).contains(&samples) {
        return Err(Error::InvalidArgument(format!(
            "samples per interval must lie in 2..={MAX_SAMPLES}, got {samples}"
        )));
    }
    Ok(())
}

/// Oscillation of `f` on `[lo, hi]` from the samples `lo + j (hi - lo) / k`.
pub fn interval_oscillation<F: RealFunction + ?Sized>(
    f: &F,
    lo: f64,
    hi: f64,
    samples: usize,
    rigor: Rigor,
) -> Result<f64> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidInterval { a: lo, b: hi });
    }
    check_samples(samples)?;
    rigor.validate()?;
    let mut range = SampleRange::default();
    for j in 0..=samples {
        range.push(sample(f, grid_point(lo, hi, j, samples))?);
    }
    Ok(range.spread() + rigor.inflation(lo, hi, samples))
}

/// Sample `j` (`0..=k`) of member `i` on the global grid of `p`.
pub fn sample_point(p: &DyadicPartition, samples: usize, member: usize, j: usize) -> f64 {
    grid_point(p.a(), p.b(), member * samples + j, p.len() * samples)
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SampleRange {
    pub min: f64,
    pub max: f64,
}

impl Default for SampleRange {
    fn default() -> Self {
        Self {
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
        }
    }
}

impl SampleRange {
    pub fn push(&mut self, v: f64) {
        self.min = self.min.min(v);
        self.max = self.max.max(v);
    }

    pub fn spread(&self) -> f64 {
        self.max - self.min
    }
}

/// Samples of one member: the range plus the two endpoint values.
#[derive(Debug, Clone, Copy)]
pub(crate) struct MemberSamples {
    pub range: SampleRange,
    pub left: f64,
    pub right: f64,
}

pub(crate) fn scan_member<F: RealFunction + ?Sized>(
    f: &F,
    p: &DyadicPartition,
    samples: usize,
    member: usize,
) -> Result<MemberSamples> {
    let mut range = SampleRange::default();
    let left = sample(f, sample_point(p, samples, member, 0))?;
    range.push(left);
    for j in 1..samples {
        range.push(sample(f, sample_point(p, samples, member, j))?);
    }
    let right = sample(f, sample_point(p, samples, member, samples))?;
    range.push(right);
    Ok(MemberSamples { range, left, right })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OscillationReport {
    pub level: u32,
    /// One entry per member.
    pub oscillations: Vec<f64>,
    /// Maximum of `oscillations`.
    pub total: f64,
    pub samples_per_interval: usize,
    pub rigor: Rigor,
}

/// Per-member oscillations of `f` over `p` and their maximum.
pub fn total_oscillation<F: RealFunction + ?Sized>(
    f: &F,
    p: &DyadicPartition,
    samples: usize,
    rigor: Rigor,
) -> Result<OscillationReport> {
    check_samples(samples)?;
    rigor.validate()?;
    let oscillations = (0..p.len())
        .map(|i| {
            let m = scan_member(f, p, samples, i)?;
            let (lo, hi) = p.member(i);
            Ok(m.range.spread() + rigor.inflation(lo, hi, samples))
        })
        .collect::<Result<Vec<_>>>()?;
    let total = oscillations.iter().copied().fold(0.0, f64::max);
    Ok(OscillationReport {
        level: p.level(),
        oscillations,
        total,
        samples_per_interval: samples,
        rigor,
    })
}
