//! Bisection helpers for threshold location.

/// Root of a continuous function with a sign change on [lo, hi],
/// bisected until the bracket is narrower than `tol`.
///
/// Returns `None` if `f(lo)` and `f(hi)` have the same strict sign.
/// Exact zeros at either end are returned directly.
pub fn bisect_sign<F: FnMut(f64) -> f64>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> Option<f64> {
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid);
        if fmid == 0.0 {
            return Some(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Boundary of a boolean predicate that flips exactly once on [lo, hi].
///
/// The caller guarantees `pred(lo) != pred(hi)`; the returned point is
/// within `tol` of the flip.
pub fn bisect_predicate<F: FnMut(f64) -> bool>(
    mut pred: F,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> f64 {
    let at_lo = pred(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if pred(mid) == at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
