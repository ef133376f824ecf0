//! The stitched piecewise-quadratic antiderivative of a chord function.
//!
//! On member `[a_i, a_{i+1}]` the antiderivative is
//! `A_i x^2 + B_i x + C_i` with `A_i = m_i / 2`, `B_i = b_i` and
//! `C_i = Phi(a_i) - A_i a_i^2 - B_i a_i`, where `Phi(a_0) = 0` and each
//! `Phi(a_{i+1}) = Phi(a_i) + (a_{i+1} - a_i) (d_i + d_{i+1}) / 2`.
//! The running values `Phi(a_i)` are accumulated with compensated summation.

use crate::error::{Error, Result};
use crate::function::{sample, RealFunction};
use crate::interpolant::PiecewiseLinear;
use crate::partition::DyadicPartition;
use crate::summation::NeumaierSum;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticSegment {
    /// `A_i`, coefficient of `x^2`.
    pub a2: f64,
    /// `B_i`, coefficient of `x`.
    pub a1: f64,
    /// `C_i`, the stitched constant.
    pub a0: f64,
    /// `Phi(a_i)`, the antiderivative at the member's left knot.
    pub value_at_lo: f64,
    /// `phi(a_i)`, the slope at the member's left knot.
    pub slope_at_lo: f64,
}

impl QuadraticSegment {
    /// Evaluates the raw `a2 x^2 + a1 x + a0` form.
    pub fn eval_raw(&self, x: f64) -> f64 {
        (self.a2 * x + self.a1) * x + self.a0
    }

    /// Raw slope `2 a2 x + a1`.
    pub fn slope_raw(&self, x: f64) -> f64 {
        2.0 * self.a2 * x + self.a1
    }

    /// Centered evaluation around the left knot `lo`.
    pub fn eval_centered(&self, lo: f64, x: f64) -> f64 {
        let t = x - lo;
        self.value_at_lo + t * (self.slope_at_lo + self.a2 * t)
    }

    pub fn slope_centered(&self, lo: f64, x: f64) -> f64 {
        self.slope_at_lo + 2.0 * self.a2 * (x - lo)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseQuadratic {
    partition: DyadicPartition,
    segments: Vec<QuadraticSegment>,
}

impl PiecewiseQuadratic {
    /// Integrates `pl` member by member, left to right, with `Phi(a) = 0`.
    pub fn integrate(pl: &PiecewiseLinear) -> Self {
        let partition = *pl.partition();
        let values = pl.values();
        let mut running = NeumaierSum::new();
        let segments = pl
            .segments()
            .iter()
            .enumerate()
            .map(|(i, chord)| {
                let (lo, hi) = partition.member(i);
                let value_at_lo = running.value();
                let a2 = 0.5 * chord.slope;
                let a1 = chord.intercept;
                let seg = QuadraticSegment {
                    a2,
                    a1,
                    a0: value_at_lo - a2 * lo * lo - a1 * lo,
                    value_at_lo,
                    slope_at_lo: values[i],
                };
                running.add(trapezoid(lo, hi, values[i], values[i + 1]));
                seg
            })
            .collect();
        Self {
            partition,
            segments,
        }
    }

    /// Reassembles an antiderivative from stored segments, e.g. after import.
    pub fn from_parts(partition: DyadicPartition, segments: Vec<QuadraticSegment>) -> Result<Self> {
        if segments.len() != partition.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} segments for level {}, got {}",
                partition.len(),
                partition.level(),
                segments.len()
            )));
        }
        Ok(Self {
            partition,
            segments,
        })
    }

    pub fn partition(&self) -> &DyadicPartition {
        &self.partition
    }

    pub fn segments(&self) -> &[QuadraticSegment] {
        &self.segments
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let i = self.partition.locate(x)?;
        Ok(self.segments[i].eval_centered(self.partition.knot(i), x))
    }

    /// `Phi'(x)`; both one-sided slopes agree at interior knots.
    pub fn derivative_at(&self, x: f64) -> Result<f64> {
        let i = self.partition.locate(x)?;
        Ok(self.segments[i].slope_centered(self.partition.knot(i), x))
    }

    /// `Phi(b)`, the integral of the chord function over `[a, b]`.
    pub fn total(&self) -> f64 {
        let last = self.partition.len() - 1;
        let (lo, hi) = self.partition.member(last);
        self.segments[last].eval_centered(lo, hi)
    }
}

/// Exact integral of the chord through `(lo, left)` and `(hi, right)`.
pub(crate) fn trapezoid(lo: f64, hi: f64, left: f64, right: f64) -> f64 {
    0.5 * (hi - lo) * (left + right)
}

/// Left-to-right fold of `Phi(a_i)` that keeps only the running value.
#[derive(Debug, Clone, Copy, Default)]
pub struct StreamingPrimitive {
    running: NeumaierSum,
}

impl StreamingPrimitive {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds member `[lo, hi]` with chord endpoint values `left`, `right`.
    pub fn push(&mut self, lo: f64, hi: f64, left: f64, right: f64) {
        self.running.add(trapezoid(lo, hi, left, right));
    }

    pub fn merge(&mut self, other: &StreamingPrimitive) {
        self.running.merge(&other.running);
    }

    pub fn value(&self) -> f64 {
        self.running.value()
    }
}

/// `Phi(b)` without materializing segments: one pass over the knots.
pub fn integrate_streaming<F: RealFunction + ?Sized>(f: &F, partition: &DyadicPartition) -> Result<f64> {
    let mut acc = StreamingPrimitive::new();
    let mut lo = partition.knot(0);
    let mut left = sample(f, lo)?;
    for i in 1..=partition.len() {
        let hi = partition.knot(i);
        let right = sample(f, hi)?;
        acc.push(lo, hi, left, right);
        lo = hi;
        left = right;
    }
    Ok(acc.value())
}
