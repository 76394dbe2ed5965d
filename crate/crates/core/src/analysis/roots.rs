/// Bisection for a sign change of `f` on `[lo, hi]`; returns the midpoint of
/// the final bracket. The endpoints must have opposite signs.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, iterations: usize) -> f64
where
    F: Fn(f64) -> f64,
{
    let lo_negative = f(lo) < 0.0;
    for _ in 0..iterations {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if (f(mid) < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
