//! The logarithmic integral Li and its inverse.

use crate::error::{Error, Result};

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Principal-value logarithmic integral, via
/// Li(x) = γ + log log x + Σ_{n ≥ 1} (log x)^n / (n · n!).
///
/// The series is truncated once a term drops below 1e-15 of the partial sum.
pub fn li(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 1.0 {
        return Err(Error::Domain(format!("li requires x > 1, got {x}")));
    }
    let l = x.ln();
    let mut sum = EULER_GAMMA + l.ln();
    let mut power = 1.0f64; // (log x)^n / n!
    for n in 1..=400u32 {
        power *= l / n as f64;
        let term = power / n as f64;
        sum += term;
        if term.abs() < 1e-15 * sum.abs().max(1.0) {
            break;
        }
    }
    Ok(sum)
}

/// Inverse of [`li`]: the y > 1 with li(y) = n, to ~1e-12 relative.
///
/// Safeguarded Newton iteration with derivative 1/log y; the initial guess
/// n log n is bracketed and each step falls back to bisection when Newton
/// leaves the bracket.
pub fn li_inv(n: f64) -> Result<f64> {
    if n.is_nan() || n <= 0.0 {
        return Err(Error::Domain(format!("li_inv requires n > 0, got {n}")));
    }
    // Bracket the root. li is increasing on (μ, ∞) with li(μ) = 0 at
    // μ ≈ 1.451; grow the upper end until it encloses the preimage.
    let mut lo = 1.000_001f64;
    let mut hi = (n * n.ln().max(2.0)).max(4.0);
    while li(hi)? < n {
        hi *= 2.0;
    }
    let mut y = hi.min((n * n.ln().max(1.0)).max(2.0));
    for _ in 0..200 {
        let f = li(y)? - n;
        if f.abs() <= 1e-14 * n.abs().max(1.0) {
            break;
        }
        if f > 0.0 {
            hi = y;
        } else {
            lo = y;
        }
        let next = y - f * y.ln();
        let next = if next > lo && next < hi {
            next
        } else {
            0.5 * (lo + hi)
        };
        if (next - y).abs() <= 1e-14 * y.abs() {
            y = next;
            break;
        }
        y = next;
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Quadrature oracle for the principal value on [0, 2]:
    /// Li(2) = ∫₀² (1/ln t − 1/(t−1)) dt, since PV ∫₀² dt/(t−1) = 0 by
    /// symmetry. The integrand is continuous but has unbounded derivatives
    /// at t = 0, so this oracle is only good to ~1e-6.
    fn li2_quadrature() -> f64 {
        let g = |t: f64| -> f64 {
            if t == 0.0 {
                1.0
            } else if (t - 1.0).abs() < 1e-6 {
                // Laurent expansion of 1/ln t at t = 1.
                let u = t - 1.0;
                0.5 - u / 12.0 + u * u / 24.0
            } else {
                1.0 / t.ln() - 1.0 / (t - 1.0)
            }
        };
        let n = 400_000;
        let h = 2.0 / n as f64;
        let mut s = g(0.0) + g(2.0);
        for i in 1..n {
            let t = i as f64 * h;
            s += g(t) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * h / 3.0
    }

    /// Smooth quadrature for Li(x) − Li(2) = ∫₂ˣ dt/ln t.
    fn li_diff_quadrature(x: f64) -> f64 {
        let n = 200_000;
        let h = (x - 2.0) / n as f64;
        let g = |t: f64| 1.0 / t.ln();
        let mut s = g(2.0) + g(x);
        for i in 1..n {
            let t = 2.0 + i as f64 * h;
            s += g(t) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * h / 3.0
    }

    #[test]
    fn series_vs_quadrature() {
        // Principal-value piece up to 2, then the smooth tail.
        let s2 = li(2.0).unwrap();
        assert!((s2 - li2_quadrature()).abs() < 1e-6);
        for &x in &[std::f64::consts::E, 10.0, 100.0, 1000.0] {
            let d = li(x).unwrap() - s2;
            let q = li_diff_quadrature(x);
            assert!(
                (d - q).abs() < 1e-9,
                "x={x}: series diff {d} vs quadrature {q}"
            );
        }
    }

    #[test]
    fn known_values() {
        // Frozen from the quadrature oracle above.
        assert!((li(2.0).unwrap() - 1.045163780117493).abs() < 1e-12);
        // li(e) has log x = 1: γ + Σ 1/(n·n!) = Ei(1).
        assert!((li(std::f64::consts::E).unwrap() - 1.895117816355937).abs() < 1e-12);
    }

    #[test]
    fn inverse_round_trips() {
        for &x in &[10.0f64, 1e3, 1e6] {
            let n = li(x).unwrap();
            let y = li_inv(n).unwrap();
            assert!((y - x).abs() < 1e-9 * x, "x={x} got {y}");
        }
        let y = li_inv(li(100.0).unwrap()).unwrap();
        assert!((y - 100.0).abs() < 1e-6);
    }

    #[test]
    fn inverse_small_argument() {
        // Bisection oracle for li(y) = 2.
        let (mut lo, mut hi) = (1.5f64, 10.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if li(mid).unwrap() < 2.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let y = li_inv(2.0).unwrap();
        assert!((y - lo).abs() < 1e-9 * lo, "newton {y} vs bisection {lo}");
    }

    #[test]
    fn asymptotic_ratio_recorded() {
        // Li⁻¹(n) ~ n log n; at n = 10^6 the ratio is finite and modest.
        let n = 1e6;
        let ratio = li_inv(n).unwrap() / (n * n.ln());
        assert!(ratio > 1.0 && ratio < 1.3, "ratio {ratio}");
    }

    #[test]
    fn domain_errors() {
        assert!(li(1.0).is_err());
        assert!(li(0.5).is_err());
        assert!(li_inv(0.0).is_err());
    }
}
