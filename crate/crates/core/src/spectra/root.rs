//! Bracketed root refinement for monotone residuals.

use crate::error::Result;
use crate::Real;

/// One residual evaluation. When `exact` is false the value is only an upper
/// bound on the true residual; callers only hand those out when negative.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Eval<T> {
    pub value: T,
    pub exact: bool,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Refined<T> {
    pub root: T,
    pub residual: T,
    pub lo: T,
    pub hi: T,
    pub iterations: usize,
    pub converged: bool,
}

/// Illinois false position with bisection fallback on `[lo, hi]`, where
/// `f(lo) < 0 < f(hi)` and `f` is increasing. Stops once the bracket is
/// narrower than `rel_tol * hi`.
pub(crate) fn refine<T, F>(
    mut f: F,
    mut lo: T,
    mut f_lo: Eval<T>,
    mut hi: T,
    mut f_hi: Eval<T>,
    rel_tol: T,
    max_iter: usize,
) -> Result<Refined<T>>
where
    T: Real,
    F: FnMut(T) -> Result<Eval<T>>,
{
    let two = T::lit(2.0);
    let mut side = 0i8;
    let mut force_bisect = false;
    let mut widths = [hi - lo; 2];
    let mut iterations = 0;
    let mut converged = false;

    while iterations < max_iter {
        let width = hi - lo;
        if width <= rel_tol * hi.abs() {
            converged = true;
            break;
        }
        let mid = lo + width / two;
        let secant_ok = !force_bisect && f_lo.exact && f_hi.exact && f_hi.value > f_lo.value;
        let mut c = if secant_ok {
            (lo * f_hi.value - hi * f_lo.value) / (f_hi.value - f_lo.value)
        } else {
            mid
        };
        if !(c > lo && c < hi) {
            c = mid;
        }
        if !(c > lo && c < hi) {
            // no representable point left inside the bracket
            converged = true;
            break;
        }
        iterations += 1;
        let fc = f(c)?;
        if fc.exact && fc.value == T::zero() {
            return Ok(Refined {
                root: c,
                residual: fc.value,
                lo: c,
                hi: c,
                iterations,
                converged: true,
            });
        }
        if fc.value < T::zero() {
            lo = c;
            f_lo = fc;
            if side == -1 {
                f_hi.value = f_hi.value / two;
            }
            side = -1;
        } else {
            debug_assert!(fc.exact, "uncertified evaluations must be negative");
            hi = c;
            f_hi = fc;
            if side == 1 {
                f_lo.value = f_lo.value / two;
            }
            side = 1;
        }
        // require the bracket to at least halve every two steps
        let new_width = hi - lo;
        force_bisect = new_width > widths[0] / two;
        widths = [widths[1], new_width];
    }

    let (root, residual) = match (f_lo.exact, f_hi.exact) {
        (true, true) if f_lo.value.abs() < f_hi.value.abs() => (lo, f_lo.value),
        (true, false) => (lo, f_lo.value),
        _ => (hi, f_hi.value),
    };
    Ok(Refined {
        root,
        residual,
        lo,
        hi,
        iterations,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(value: f64) -> Result<Eval<f64>> {
        Ok(Eval { value, exact: true })
    }

    #[test]
    fn finds_cubic_root() {
        let f = |x: f64| exact(x * x * x - 2.0);
        let r = refine(f, 0.0, f(0.0).unwrap(), 2.0, f(2.0).unwrap(), 1e-14, 200).unwrap();
        assert!(r.converged);
        assert!((r.root - 2f64.cbrt()).abs() < 1e-13);
        assert!(r.iterations < 40, "{}", r.iterations);
    }

    #[test]
    fn stiff_residual_still_converges() {
        // nearly flat then steep: plain false position stalls on this
        let f = |x: f64| exact((20.0 * (x - 0.9)).exp() - 1.0);
        let r = refine(f, 0.0, f(0.0).unwrap(), 1.0, f(1.0).unwrap(), 1e-13, 200).unwrap();
        assert!((r.root - 0.9).abs() < 1e-12);
    }

    #[test]
    fn tiny_root_relative_accuracy() {
        let target = 3.7e-14;
        let f = |x: f64| exact(x - target * (1.0 - 0.1 * x));
        let r = refine(f, 0.0, f(0.0).unwrap(), 1.0, f(1.0).unwrap(), 1e-13, 300).unwrap();
        let truth = target / (1.0 + 0.1 * target);
        assert!(((r.root - truth) / truth).abs() < 1e-12);
    }

    #[test]
    fn uses_bound_only_evaluations_for_sign() {
        // below 0.5 only an upper bound is available
        let f = |x: f64| {
            Ok(Eval {
                value: if x < 0.5 { -1.0 } else { x - 0.75 },
                exact: x >= 0.5,
            })
        };
        let r = refine(f, 0.0, f(0.0).unwrap(), 1.0, f(1.0).unwrap(), 1e-14, 200).unwrap();
        assert!((r.root - 0.75).abs() < 1e-13);
    }
}
