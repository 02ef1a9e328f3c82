//! Guarded rounding of floating-point character arithmetic to integers.
//!
//! Every quantity that the algebra says is an integer (multiplicities, inner
//! products, character degrees) passes through [`round_to_integer`]. A value
//! farther than [`INTEGRALITY_TOLERANCE`] from an integer is a hard error, and
//! the largest deviation seen on the current thread is recorded so that a
//! verification job can report how close it came to the guard.

use std::cell::Cell;

use num_complex::Complex64;
use thiserror::Error;

pub const INTEGRALITY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Error, PartialEq)]
#[error("{what} = {re:.9}{im:+.9}i is not within {INTEGRALITY_TOLERANCE:e} of an integer")]
pub struct NonIntegralError {
    pub what: String,
    pub re: f64,
    pub im: f64,
}

thread_local! {
    static MAX_DEVIATION: Cell<f64> = const { Cell::new(0.0) };
    static ROUNDINGS: Cell<u64> = const { Cell::new(0) };
}

/// Rounds `z` to the nearest integer, failing if it is not close to one.
/// `what` is only evaluated on failure.
pub fn round_to_integer(z: Complex64, what: impl FnOnce() -> String) -> Result<i64, NonIntegralError> {
    let nearest = z.re.round();
    let (dr, di) = ((z.re - nearest).abs(), z.im.abs());
    // f64::max drops NaN, which would let a NaN character value pass
    let deviation = if dr.is_nan() || di.is_nan() { f64::NAN } else { dr.max(di) };
    MAX_DEVIATION.with(|m| {
        if !m.get().is_nan() && !(deviation <= m.get()) {
            m.set(deviation);
        }
    });
    ROUNDINGS.with(|r| r.set(r.get() + 1));
    if deviation <= INTEGRALITY_TOLERANCE {
        Ok(nearest as i64)
    } else {
        Err(NonIntegralError { what: what(), re: z.re, im: z.im })
    }
}

pub fn round_real(x: f64, what: impl FnOnce() -> String) -> Result<i64, NonIntegralError> {
    round_to_integer(Complex64::new(x, 0.0), what)
}

/// Largest rounding deviation on this thread since the last reset. NaN
/// deviations are recorded as NaN.
pub fn max_deviation() -> f64 {
    MAX_DEVIATION.with(Cell::get)
}

pub fn rounding_count() -> u64 {
    ROUNDINGS.with(Cell::get)
}

pub fn reset_deviation_tracking() {
    MAX_DEVIATION.with(|m| m.set(0.0));
    ROUNDINGS.with(|r| r.set(0));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounds_and_tracks() {
        reset_deviation_tracking();
        assert_eq!(round_real(2.0000001, || "x".into()), Ok(2));
        assert_eq!(round_to_integer(Complex64::new(-3.0, 1e-9), || "y".into()), Ok(-3));
        assert!(max_deviation() > 9e-8 && max_deviation() < 2e-7);
        assert_eq!(rounding_count(), 2);
        let err = round_real(0.5, || "half".into()).unwrap_err();
        assert_eq!(err.what, "half");
        assert!(round_to_integer(Complex64::new(1.0, 1e-3), || "z".into()).is_err());
        assert!(round_real(f64::NAN, || "nan".into()).is_err());
        assert!(max_deviation().is_nan());
    }
}
