use crate::error::{DomainError, DomainKind};
use crate::expr::Expression;

/// Pointwise access to the integrand.
///
/// Implemented for parsed [`Expression`]s and for any `Fn(f64) -> f64`.
/// Implementations must be pure: the same `x` always yields the same bits.
pub trait RealFunction {
    fn eval(&self, x: f64) -> Result<f64, DomainError>;
}

impl RealFunction for Expression {
    fn eval(&self, x: f64) -> Result<f64, DomainError> {
        self.evaluate(x)
    }
}

impl<F> RealFunction for F
where
    F: Fn(f64) -> f64,
{
    fn eval(&self, x: f64) -> Result<f64, DomainError> {
        Ok(self(x))
    }
}

/// Evaluates `f` at `x`, rejecting non-finite output and tagging any error
/// with the sample point.
pub fn sample<F: RealFunction + ?Sized>(f: &F, x: f64) -> Result<f64, DomainError> {
    match f.eval(x) {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(_) => Err(DomainError::new(DomainKind::NonFinite).at(x)),
        Err(e) => Err(DomainError { at: Some(x), ..e }),
    }
}
