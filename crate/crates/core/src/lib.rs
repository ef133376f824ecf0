//! Constructive antiderivatives of continuous functions.
//!
//! A continuous `f` on `[a, b]` is interpolated by chords on the regular
//! dyadic partition with `2^(n-1)` members; the chord function is integrated
//! exactly into a continuous piecewise quadratic `Phi_n` with `Phi_n(a) = 0`.
//! The total oscillation `Omega_n` of `f` on the partition bounds
//! `|f - phi_n|`, so `Omega_n (b - a)` bounds `|F - Phi_n|` uniformly, and
//! levels are refined until that bound meets a tolerance.
//!
//! ```
//! use primitive_forge::{construct_antiderivative, EngineConfig, Expression, Rigor};
//!
//! let f = Expression::parse("x^2").unwrap();
//! let cfg = EngineConfig::with_tolerance(1e-3).rigor(Rigor::Lipschitz(2.0));
//! let (phi, cert) = construct_antiderivative(&f, 0.0, 1.0, &cfg).unwrap();
//! assert!(cert.met);
//! assert!((phi.eval(1.0).unwrap() - 1.0 / 3.0).abs() <= cert.error_bound);
//! ```

pub mod antiderivative;
pub mod cli;
pub mod engine;
pub mod error;
pub mod expr;
pub mod function;
pub mod interpolant;
pub mod oscillation;
pub mod partition;
pub mod summation;

pub use antiderivative::{integrate_streaming, PiecewiseQuadratic, QuadraticSegment, StreamingPrimitive};
pub use engine::{
    construct_antiderivative, convergence_table, definite_integral, error_bound_at, ConvergenceCertificate,
    EngineConfig, LevelRow,
};
pub use error::{DomainError, DomainKind, Error, Result};
pub use expr::{Expression, ParseError};
pub use function::RealFunction;
pub use interpolant::{LinearSegment, PiecewiseLinear};
pub use oscillation::{interval_oscillation, total_oscillation, OscillationReport, Rigor};
pub use partition::DyadicPartition;
