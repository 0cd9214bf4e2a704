//! Composite Simpson rule refined by interval halving.

use crate::{Error, Result};

/// Maximum number of halvings before giving up.
pub const MAX_LEVELS: usize = 20;
/// Halvings performed before convergence is tested.
const MIN_LEVELS: usize = 3;

/// `∫_a^b f` by composite Simpson, doubling the panel count until two
/// successive estimates differ by less than `rel_tol` relative.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let eval = |x: f64| {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::EvaluationFailure { at: x })
        }
    };
    let ends = eval(a)? + eval(b)?;
    let mut n = 2usize;
    let mut h = (b - a) / n as f64;
    let mut odd = eval(a + h)?;
    let mut even = 0.0;
    let mut estimate = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
    for level in 1..=MAX_LEVELS {
        even += odd;
        n *= 2;
        h = (b - a) / n as f64;
        odd = 0.0;
        for k in 0..n / 2 {
            odd += eval(a + (2 * k + 1) as f64 * h)?;
        }
        let next = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
        let change = (next - estimate).abs();
        estimate = next;
        if level >= MIN_LEVELS && change <= rel_tol * next.abs() {
            return Ok(estimate);
        }
        if level >= MIN_LEVELS && next == 0.0 && change == 0.0 {
            return Ok(0.0);
        }
    }
    Err(Error::QuadratureFailure { levels: MAX_LEVELS })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_and_exponentials() {
        let v = simpson(|x| x * x * x - x, 0.0, 2.0, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
        let e = simpson(f64::exp, 0.0, 1.0, 1e-10).unwrap();
        assert!((e - (std::f64::consts::E - 1.0)).abs() < 1e-9);
    }

    #[test]
    fn non_finite_integrand_fails() {
        assert!(matches!(simpson(|x| 1.0 / x, 0.0, 1.0, 1e-8), Err(Error::EvaluationFailure { .. })));
    }

    #[test]
    fn refinement_limit() {
        // rapidly oscillating integrand never settles at this tolerance
        let r = simpson(|x| (1e7 * x).sin() + 1e-3, 0.0, 1.0, 1e-15);
        assert!(matches!(r, Err(Error::QuadratureFailure { .. })));
    }
}
