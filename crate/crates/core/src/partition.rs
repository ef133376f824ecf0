//! Regular dyadic partitions of a closed interval.
//!
//! Level `n` splits `[a, b]` into `2^(n-1)` equal members. Knots are never
//! stored or accumulated: knot `i` is always recomputed as
//! `a + (i / N) * (b - a)`, so a knot of level `n` is bit-identical to the
//! corresponding knot of every finer level.

use crate::error::{Error, Result};

/// Largest level the library will ever build (`2^29` members).
pub const MAX_SUPPORTED_LEVEL: u32 = 30;
/// Default level cap (about 8.4M members).
pub const DEFAULT_MAX_LEVEL: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DyadicPartition {
    a: f64,
    b: f64,
    level: u32,
    max_level: u32,
}

impl DyadicPartition {
    pub fn build(a: f64, b: f64, level: u32) -> Result<Self> {
        Self::build_capped(a, b, level, DEFAULT_MAX_LEVEL)
    }

    pub fn build_capped(a: f64, b: f64, level: u32, max_level: u32) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidInterval { a, b });
        }
        if max_level == 0 || max_level > MAX_SUPPORTED_LEVEL {
            return Err(Error::LevelOutOfRange {
                level: max_level,
                max: MAX_SUPPORTED_LEVEL,
            });
        }
        if level == 0 || level > max_level {
            return Err(Error::LevelOutOfRange {
                level,
                max: max_level,
            });
        }
        let p = Self {
            a,
            b,
            level,
            max_level,
        };
        // Knots must stay strictly increasing after rounding.
        let scale = a.abs().max(b.abs());
        if (b - a) / p.len() as f64 <= 4.0 * f64::EPSILON * scale {
            return Err(Error::LevelOutOfRange {
                level,
                max: level - 1,
            });
        }
        Ok(p)
    }

    pub fn refine(&self) -> Result<Self> {
        if self.level >= self.max_level {
            return Err(Error::LevelOutOfRange {
                level: self.level + 1,
                max: self.max_level,
            });
        }
        Self::build_capped(self.a, self.b, self.level + 1, self.max_level)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn max_level(&self) -> u32 {
        self.max_level
    }

    /// Number of members, `2^(level-1)`.
    pub fn len(&self) -> usize {
        1usize << (self.level - 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    /// Knot `i` for `0 <= i <= len()`. The last knot is `b` exactly.
    pub fn knot(&self, i: usize) -> f64 {
        grid_point(self.a, self.b, i, self.len())
    }

    pub fn knots(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.len() + 1).map(|i| self.knot(i))
    }

    /// Endpoints of member `i`.
    pub fn member(&self, i: usize) -> (f64, f64) {
        (self.knot(i), self.knot(i + 1))
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }

    /// Index of the member containing `x`, using `[x_i, x_{i+1})` with the
    /// last member closed.
    pub fn locate(&self, x: f64) -> Result<usize> {
        if !self.contains(x) {
            return Err(Error::OutOfDomain {
                x,
                a: self.a,
                b: self.b,
            });
        }
        let n = self.len();
        let guess = ((x - self.a) / self.width() * n as f64).floor();
        let mut i = if guess <= 0.0 {
            0
        } else {
            (guess as usize).min(n - 1)
        };
        // The arithmetic guess can be off by one near knots.
        while i > 0 && x < self.knot(i) {
            i -= 1;
        }
        while i + 1 < n && x >= self.knot(i + 1) {
            i += 1;
        }
        Ok(i)
    }
}

/// `a + (j / m) * (b - a)` with `j = m` pinned to `b`.
///
/// Scaling `j` and `m` by the same power of two leaves the quotient's
/// rounding unchanged, which makes every dyadic grid nest bit-exactly.
pub(crate) fn grid_point(a: f64, b: f64, j: usize, m: usize) -> f64 {
    if j >= m {
        b
    } else {
        a + (j as f64 / m as f64) * (b - a)
    }
}
