//! Continuous piecewise-linear interpolation on a dyadic partition.

use crate::error::{Error, Result};
use crate::function::{sample, RealFunction};
use crate::partition::DyadicPartition;

/// One chord `phi(x) = slope * x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearSegment {
    pub slope: f64,
    pub intercept: f64,
}

/// The chord function through `(knot_i, value_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear {
    partition: DyadicPartition,
    values: Vec<f64>,
    segments: Vec<LinearSegment>,
}

impl PiecewiseLinear {
    /// Interpolates `f` at every knot of `partition`.
    pub fn interpolate<F: RealFunction + ?Sized>(f: &F, partition: &DyadicPartition) -> Result<Self> {
        let values = partition
            .knots()
            .map(|x| sample(f, x))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_values(partition, values)
    }

    /// Builds the interpolant from explicit knot values.
    pub fn from_values(partition: &DyadicPartition, values: Vec<f64>) -> Result<Self> {
        if values.len() != partition.len() + 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} knot values, got {}",
                partition.len() + 1,
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "knot value {i} is not finite"
            )));
        }
        // Slopes come from knot differences; intercepts follow from the left knot.
        let segments = (0..partition.len())
            .map(|i| {
                let (lo, hi) = partition.member(i);
                let slope = (values[i + 1] - values[i]) / (hi - lo);
                LinearSegment {
                    slope,
                    intercept: values[i] - slope * lo,
                }
            })
            .collect();
        Ok(Self {
            partition: *partition,
            values,
            segments,
        })
    }

    pub fn partition(&self) -> &DyadicPartition {
        &self.partition
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn segments(&self) -> &[LinearSegment] {
        &self.segments
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let i = self.partition.locate(x)?;
        Ok(self.eval_segment(i, x))
    }

    /// Evaluates chord `i` at `x` in the centered form
    /// `value_i + slope_i * (x - knot_i)`, clamped to the chord's value range
    /// so rounding can never push it past either endpoint value.
    pub fn eval_segment(&self, i: usize, x: f64) -> f64 {
        let lo = self.partition.knot(i);
        let (left, right) = (self.values[i], self.values[i + 1]);
        let v = left + self.segments[i].slope * (x - lo);
        v.clamp(left.min(right), left.max(right))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Expression;

    fn close(a: f64, b: f64, scale: f64) -> bool {
        (a - b).abs() <= 1e-9 * (1.0 + scale.abs())
    }

    #[test]
    fn constant_function() {
        let p = DyadicPartition::build(-1.0, 3.0, 4).unwrap();
        let pl = PiecewiseLinear::interpolate(&|_x: f64| 2.5, &p).unwrap();
        for s in pl.segments() {
            assert_eq!(s.slope, 0.0);
            assert_eq!(s.intercept, 2.5);
        }
    }

    #[test]
    fn square_on_two_members() {
        let p = DyadicPartition::build(0.0, 1.0, 2).unwrap();
        let f = Expression::parse("x^2").unwrap();
        let pl = PiecewiseLinear::interpolate(&f, &p).unwrap();
        assert_eq!(pl.values(), [0.0, 0.25, 1.0]);
        assert_eq!(
            pl.segments(),
            [
                LinearSegment { slope: 0.5, intercept: 0.0 },
                LinearSegment { slope: 1.5, intercept: -0.5 },
            ]
        );
        assert_eq!(pl.eval(0.25).unwrap(), 0.125);
        assert_eq!(pl.eval(0.5).unwrap(), 0.25);
        assert_eq!(pl.eval_segment(0, 0.5), pl.eval_segment(1, 0.5));
    }

    #[test]
    fn identity_reproduces_itself() {
        let p = DyadicPartition::build(0.0, 1.0, 6).unwrap();
        let pl = PiecewiseLinear::interpolate(&|x: f64| x, &p).unwrap();
        for s in pl.segments() {
            assert_eq!(s.slope, 1.0);
            assert_eq!(s.intercept, 0.0);
        }
    }

    #[test]
    fn chord_invariants_hold() {
        let p = DyadicPartition::build(-2.0, 5.0, 9).unwrap();
        let f = |x: f64| (3.0 * x).sin() + 0.2 * x * x;
        let pl = PiecewiseLinear::interpolate(&f, &p).unwrap();
        let d = pl.values();
        for (i, s) in pl.segments().iter().enumerate() {
            let (lo, hi) = p.member(i);
            assert!(close(s.slope * lo + s.intercept, d[i], d[i]));
            assert!(close(s.slope * hi + s.intercept, d[i + 1], d[i + 1]));
            if let Some(next) = pl.segments().get(i + 1) {
                assert!(close(s.slope * hi + s.intercept, next.slope * hi + next.intercept, d[i + 1]));
            }
            assert_eq!(pl.eval(lo).unwrap(), d[i]);
        }
    }

    #[test]
    fn errors() {
        let p = DyadicPartition::build(-1.0, 1.0, 2).unwrap();
        let f = Expression::parse("log(x)").unwrap();
        match PiecewiseLinear::interpolate(&f, &p).unwrap_err() {
            Error::Domain(e) => assert_eq!(e.at, Some(-1.0)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            PiecewiseLinear::from_values(&p, vec![0.0, 1.0]),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            PiecewiseLinear::from_values(&p, vec![0.0, f64::NAN, 1.0]),
            Err(Error::InvalidArgument(_))
        ));
        let pl = PiecewiseLinear::from_values(&p, vec![0.0, 1.0, 0.0]).unwrap();
        assert!(matches!(pl.eval(1.5), Err(Error::OutOfDomain { .. })));
    }
}
