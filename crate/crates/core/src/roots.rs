//! Bracketed root finding: bisection safeguarding Newton steps.

use crate::error::RootError;
use crate::scalar::Real;

/// Stopping rule for [`solve_bracketed`].
#[derive(Debug, Clone, Copy)]
pub struct RootOptions<F> {
    /// Stop once the bracket is narrower than `tol * max(1, |x|)`.
    pub tol: F,
    pub max_iter: usize,
}

impl<F: Real> Default for RootOptions<F> {
    fn default() -> Self {
        Self {
            tol: F::ROOT_TOL,
            max_iter: 200,
        }
    }
}

/// Finds a root of `f` in `[lo, hi]`.
///
/// `f` returns the value and, optionally, the derivative. A Newton step is
/// taken whenever it stays strictly inside the current bracket and shrinks the
/// residual bracket by at least half; otherwise the bracket is bisected. The
/// endpoints must straddle a sign change (a zero at either end is accepted).
pub fn solve_bracketed<F, Fun>(
    mut f: Fun,
    lo: F,
    hi: F,
    opts: RootOptions<F>,
) -> Result<F, RootError>
where
    F: Real,
    Fun: FnMut(F) -> (F, Option<F>),
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let (fa, _) = f(a);
    let (fb, _) = f(b);
    if fa.is_nan() || fb.is_nan() {
        return Err(RootError::NotANumber {
            x: if fa.is_nan() { a } else { b }.to_f64_lossy(),
        });
    }
    if fa == F::zero() {
        return Ok(a);
    }
    if fb == F::zero() {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(RootError::NoBracket {
            lo: a.to_f64_lossy(),
            hi: b.to_f64_lossy(),
            flo: fa.to_f64_lossy(),
            fhi: fb.to_f64_lossy(),
        });
    }
    let a_negative = fa < F::zero();
    let half = F::lit(0.5);
    let mut x = a + (b - a) * half;
    for _ in 0..opts.max_iter {
        let (fx, dfx) = f(x);
        if fx.is_nan() {
            return Err(RootError::NotANumber {
                x: x.to_f64_lossy(),
            });
        }
        if fx == F::zero() {
            return Ok(x);
        }
        if (fx < F::zero()) == a_negative {
            a = x;
        } else {
            b = x;
        }
        let width = b - a;
        if width <= opts.tol * F::one().max(x.abs()) {
            return Ok(a + width * half);
        }
        let newton = dfx
            .filter(|d| d.is_finite() && *d != F::zero())
            .map(|d| x - fx / d)
            .filter(|xn| *xn > a && *xn < b);
        x = match newton {
            Some(xn) if (xn - x).abs() < width * half => xn,
            _ => a + width * half,
        };
    }
    Err(RootError::NotConverged {
        iterations: opts.max_iter,
        width: (b - a).to_f64_lossy(),
    })
}
