//! Bracketed bisection for monotone scalar functions.

use crate::error::{Error, Result};

/// Most bracket doublings tried before giving up.
pub const MAX_DOUBLINGS: u32 = 64;

/// Finds `x` in `[lo, hi]` with `f(x) = 0` for a nondecreasing `f` with
/// `f(lo) <= 0 <= f(hi)`. Stops once the bracket is narrower than `x_tol`
/// or cannot be split further in floating point.
pub fn bisect_nondecreasing(
    mut f: impl FnMut(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    x_tol: f64,
) -> f64 {
    debug_assert!(lo <= hi);
    while hi - lo > x_tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v == 0.0 {
            return mid;
        }
        if v < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Expands `[start - width, start + width]` by doubling `width` until a
/// nonincreasing `f` changes sign across it.
pub fn bracket_nonincreasing(
    mut f: impl FnMut(f64) -> f64,
    start: f64,
    mut width: f64,
) -> Result<(f64, f64)> {
    for _ in 0..=MAX_DOUBLINGS {
        let (lo, hi) = (start - width, start + width);
        if f(lo) >= 0.0 && f(hi) <= 0.0 {
            return Ok((lo, hi));
        }
        width *= 2.0;
    }
    Err(Error::BracketNotFound {
        doublings: MAX_DOUBLINGS,
    })
}
