//! Level-by-level refinement until the certified uniform bound meets the
//! tolerance.
//!
//! If `|f - phi_n| <= Omega_n` on `[a, b]`, integrating from `a` gives
//! `|F(x) - Phi_n(x)| <= Omega_n (x - a)`, so `Omega_n (b - a)` bounds the
//! uniform error of `Phi_n`. Levels are walked from 1 upwards and the
//! first level whose bound is within tolerance is returned.

use std::fmt;

use crate::antiderivative::{PiecewiseQuadratic, StreamingPrimitive};
use crate::error::{Error, Result};
use crate::function::RealFunction;
use crate::interpolant::PiecewiseLinear;
use crate::oscillation::{check_samples, scan_member, Rigor, DEFAULT_SAMPLES};
use crate::partition::{DyadicPartition, DEFAULT_MAX_LEVEL, MAX_SUPPORTED_LEVEL};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineConfig {
    pub tolerance: f64,
    pub max_level: u32,
    pub rigor: Rigor,
    pub samples_per_interval: usize,
    /// Evaluate exactly this level instead of applying the stopping rule.
    pub fixed_level: Option<u32>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-6,
            max_level: DEFAULT_MAX_LEVEL,
            rigor: Rigor::Sampled,
            samples_per_interval: DEFAULT_SAMPLES,
            fixed_level: None,
        }
    }
}

impl EngineConfig {
    pub fn with_tolerance(tolerance: f64) -> Self {
        Self {
            tolerance,
            ..Self::default()
        }
    }

    pub fn rigor(mut self, rigor: Rigor) -> Self {
        self.rigor = rigor;
        self
    }

    pub fn max_level(mut self, max_level: u32) -> Self {
        self.max_level = max_level;
        self
    }

    pub fn fixed_level(mut self, level: u32) -> Self {
        self.fixed_level = Some(level);
        self
    }

    pub fn samples(mut self, samples: usize) -> Self {
        self.samples_per_interval = samples;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be finite and positive, got {}",
                self.tolerance
            )));
        }
        if self.max_level == 0 || self.max_level > MAX_SUPPORTED_LEVEL {
            return Err(Error::LevelOutOfRange {
                level: self.max_level,
                max: MAX_SUPPORTED_LEVEL,
            });
        }
        if let Some(level) = self.fixed_level {
            if level == 0 || level > self.max_level {
                return Err(Error::LevelOutOfRange {
                    level,
                    max: self.max_level,
                });
            }
        }
        check_samples(self.samples_per_interval)?;
        self.rigor.validate()
    }

    fn levels(&self) -> std::ops::RangeInclusive<u32> {
        match self.fixed_level {
            Some(level) => level..=level,
            None => 1..=self.max_level,
        }
    }
}

/// How far `Phi_n` may be from the true antiderivative, and whether that
/// meets the requested tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceCertificate {
    pub interval: (f64, f64),
    pub level: u32,
    /// Total oscillation at `level`.
    pub omega: f64,
    /// `omega * (b - a)`.
    pub error_bound: f64,
    pub tolerance: f64,
    pub met: bool,
    pub rigor: Rigor,
    pub samples_per_interval: usize,
    /// Number of calls to the integrand across all visited levels.
    pub evaluations: u64,
}

impl ConvergenceCertificate {
    fn new(interval: (f64, f64), level: u32, omega: f64, cfg: &EngineConfig, evaluations: u64) -> Self {
        let error_bound = omega * (interval.1 - interval.0);
        Self {
            interval,
            level,
            omega,
            error_bound,
            tolerance: cfg.tolerance,
            met: error_bound <= cfg.tolerance,
            rigor: cfg.rigor,
            samples_per_interval: cfg.samples_per_interval,
            evaluations,
        }
    }

    /// True only for Lipschitz-inflated oscillation; sampled bounds are heuristic.
    pub fn is_certified(&self) -> bool {
        self.rigor.is_certified()
    }

    /// `omega * (x - a)`, the bound on `|F(x) - Phi_n(x)|` at `x`.
    pub fn error_bound_at(&self, x: f64) -> Result<f64> {
        let (a, b) = self.interval;
        if !(a <= x && x <= b) {
            return Err(Error::OutOfDomain { x, a, b });
        }
        Ok(self.omega * (x - a))
    }
}

impl fmt::Display for ConvergenceCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "level {} omega {:e} bound {:e} tolerance {:e} {} [{}]",
            self.level,
            self.omega,
            self.error_bound,
            self.tolerance,
            if self.met { "met" } else { "not met" },
            if self.is_certified() { "certified" } else { "heuristic" },
        )
    }
}

pub fn error_bound_at(cert: &ConvergenceCertificate, x: f64) -> Result<f64> {
    cert.error_bound_at(x)
}

/// One row of a convergence table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelRow {
    pub level: u32,
    pub omega: f64,
    pub error_bound: f64,
    /// `Phi_n(b)`.
    pub value: f64,
    pub met: bool,
}

struct LevelScan {
    omega: f64,
    integral: f64,
    knot_values: Option<Vec<f64>>,
    evaluations: u64,
}

/// One pass over every member of `p`: oscillation, streamed `Phi_n(b)` and,
/// optionally, the knot values needed to materialize `phi_n`.
fn scan_level<F: RealFunction + ?Sized>(
    f: &F,
    p: &DyadicPartition,
    cfg: &EngineConfig,
    keep_knots: bool,
) -> Result<LevelScan> {
    let k = cfg.samples_per_interval;
    let mut omega = 0.0f64;
    let mut primitive = StreamingPrimitive::new();
    let mut knots = keep_knots.then(|| Vec::with_capacity(p.len() + 1));

    for i in 0..p.len() {
        let m = scan_member(f, p, k, i)?;
        let (lo, hi) = p.member(i);
        omega = omega.max(m.range.spread() + cfg.rigor.inflation(lo, hi, k));
        primitive.push(lo, hi, m.left, m.right);
        if let Some(values) = knots.as_mut() {
            values.push(m.left);
            if i + 1 == p.len() {
                values.push(m.right);
            }
        }
    }

    Ok(LevelScan {
        omega,
        integral: primitive.value(),
        knot_values: knots,
        evaluations: (p.len() * (k + 1)) as u64,
    })
}

struct Walk {
    partition: DyadicPartition,
    scan: LevelScan,
    certificate: ConvergenceCertificate,
}

fn walk<F: RealFunction + ?Sized>(f: &F, a: f64, b: f64, cfg: &EngineConfig, keep_knots: bool) -> Result<Walk> {
    cfg.validate()?;
    let mut evaluations = 0u64;
    let mut last = None;
    for level in cfg.levels() {
        let partition = DyadicPartition::build_capped(a, b, level, cfg.max_level)?;
        let scan = scan_level(f, &partition, cfg, keep_knots)?;
        evaluations += scan.evaluations;
        let certificate = ConvergenceCertificate::new((a, b), level, scan.omega, cfg, evaluations);
        let done = certificate.met;
        last = Some(Walk {
            partition,
            scan,
            certificate,
        });
        if done {
            break;
        }
    }
    // cfg.levels() is never empty after validation
    Ok(last.expect("at least one level"))
}

/// Builds `Phi_n` at the first level whose bound meets `cfg.tolerance`, or at
/// the cap (with `met = false`).
pub fn construct_antiderivative<F: RealFunction + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    cfg: &EngineConfig,
) -> Result<(PiecewiseQuadratic, ConvergenceCertificate)> {
    let Walk {
        partition,
        scan,
        certificate,
    } = walk(f, a, b, cfg, true)?;
    let values = scan.knot_values.expect("knot values requested");
    let pl = PiecewiseLinear::from_values(&partition, values)?;
    Ok((PiecewiseQuadratic::integrate(&pl), certificate))
}

/// `Phi_n(b)` at the stopping level, computed without storing segments.
pub fn definite_integral<F: RealFunction + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    cfg: &EngineConfig,
) -> Result<(f64, ConvergenceCertificate)> {
    let w = walk(f, a, b, cfg, false)?;
    Ok((w.scan.integral, w.certificate))
}

/// One row per level from 1 through `cfg.fixed_level` (or `cfg.max_level`),
/// ignoring the stopping rule.
pub fn convergence_table<F: RealFunction + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    cfg: &EngineConfig,
) -> Result<Vec<LevelRow>> {
    cfg.validate()?;
    let last = cfg.fixed_level.unwrap_or(cfg.max_level);
    (1..=last)
        .map(|level| {
            let partition = DyadicPartition::build_capped(a, b, level, cfg.max_level)?;
            let scan = scan_level(f, &partition, cfg, false)?;
            let cert = ConvergenceCertificate::new((a, b), level, scan.omega, cfg, scan.evaluations);
            Ok(LevelRow {
                level,
                omega: cert.omega,
                error_bound: cert.error_bound,
                value: scan.integral,
                met: cert.met,
            })
        })
        .collect()
}
