//! Special functions on the positive real axis.
//!
//! Sine and cosine integrals are evaluated with their Maclaurin series for
//! `x <= SERIES_CUTOFF` and, above it, through the continued fraction for
//! `e^{ix} E₁(ix) = g(x) − i f(x)`, which yields the auxiliary functions
//! `f`, `g` directly and keeps full relative accuracy for large arguments.
//! K₀ uses the log-plus-series form for `x <= 2` and Steed's continued
//! fraction for the exponentially scaled value above.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{domain, Result};

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Switch point between the Maclaurin series and the continued fraction.
pub const SERIES_CUTOFF: f64 = 4.0;

/// Switch point for K₀.
pub const K0_CUTOFF: f64 = 2.0;

const MAX_ITER: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecFunResult {
    pub value: f64,
    pub est_abs_error: f64,
}

/// Auxiliary functions of the sine and cosine integrals,
///
/// `Si(x) = π/2 − f(x) cos x − g(x) sin x`,
/// `Ci(x) = f(x) sin x − g(x) cos x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Auxiliary {
    pub f: f64,
    pub g: f64,
    pub est_abs_error: f64,
}

fn check_arg(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        domain(format!("{name}: argument must be finite and > 0, got {x}"))
    }
}

/// Si and Ci from their power series. Returns (si, ci, error bound).
fn si_ci_series(x: f64) -> (f64, f64, f64) {
    let x2 = x * x;
    // Si = Σ (−1)^n x^{2n+1} / ((2n+1)(2n+1)!)
    // Ci = γ + ln x + Σ_{n≥1} (−1)^n x^{2n} / (2n (2n)!)
    let mut si = 0.0;
    let mut ci_sum = 0.0;
    let mut term = x; // x^{2n+1}/(2n+1)! with sign
    let mut largest = x.abs();
    let mut last;
    let mut n = 0usize;
    loop {
        let k = 2 * n + 1;
        let si_term = term / k as f64;
        si += si_term;
        // even-power term for Ci: x^{2n+2}/(2n+2)! = term * x / (2n+2)
        let even = -term * x / (k as f64 + 1.0);
        let ci_term = even / (k as f64 + 1.0);
        ci_sum += ci_term;
        largest = largest.max(si_term.abs()).max(ci_term.abs());
        last = si_term.abs().max(ci_term.abs());
        if last <= f64::EPSILON * 1e-3 * si.abs().max(ci_sum.abs()).max(1e-300) {
            break;
        }
        term = -term * x2 / ((k as f64 + 1.0) * (k as f64 + 2.0));
        n += 1;
        if n > MAX_ITER {
            break;
        }
    }
    let ci = EULER_GAMMA + x.ln() + ci_sum;
    let err = last + 4.0 * f64::EPSILON * (largest + x.ln().abs() + EULER_GAMMA);
    (si, ci, err)
}

/// Modified Lentz evaluation of `e^{ix} E₁(ix)` for x > 0.
fn e1_imag_scaled(x: f64) -> (Complex64, f64) {
    let tiny = 1e-300;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = Complex64::new(1.0, 0.0) / b;
    let mut h = d;
    let mut delta_last = 1.0;
    for i in 1..MAX_ITER {
        let a = -((i * i) as f64);
        b += 2.0;
        d = Complex64::new(1.0, 0.0) / (d * a + b);
        c = b + c.inv() * a;
        let del = c * d;
        h *= del;
        delta_last = (del - 1.0).norm();
        if delta_last < f64::EPSILON {
            break;
        }
    }
    let err = h.norm() * (delta_last + 8.0 * f64::EPSILON);
    (h, err)
}

/// Auxiliary functions f(x), g(x).
pub fn auxiliary(x: f64) -> Result<Auxiliary> {
    check_arg("auxiliary", x)?;
    if x <= SERIES_CUTOFF {
        let (si, ci, err) = si_ci_series(x);
        let (s, c) = x.sin_cos();
        let rest = FRAC_PI_2 - si;
        Ok(Auxiliary {
            f: ci * s + rest * c,
            g: -ci * c + rest * s,
            est_abs_error: 2.0 * err,
        })
    } else {
        let (h, err) = e1_imag_scaled(x);
        Ok(Auxiliary {
            f: -h.im,
            g: h.re,
            est_abs_error: err,
        })
    }
}

/// Sine integral Si(x) = ∫₀ˣ sin t / t dt.
pub fn si(x: f64) -> Result<SpecFunResult> {
    check_arg("si", x)?;
    if x <= SERIES_CUTOFF {
        let (si, _, err) = si_ci_series(x);
        Ok(SpecFunResult {
            value: si,
            est_abs_error: err,
        })
    } else {
        let aux = auxiliary(x)?;
        let (s, c) = x.sin_cos();
        Ok(SpecFunResult {
            value: FRAC_PI_2 - aux.f * c - aux.g * s,
            est_abs_error: aux.est_abs_error + f64::EPSILON * FRAC_PI_2,
        })
    }
}

/// Cosine integral Ci(x) = γ + ln x + ∫₀ˣ (cos t − 1)/t dt.
pub fn ci(x: f64) -> Result<SpecFunResult> {
    check_arg("ci", x)?;
    if x <= SERIES_CUTOFF {
        let (_, ci, err) = si_ci_series(x);
        Ok(SpecFunResult {
            value: ci,
            est_abs_error: err,
        })
    } else {
        let aux = auxiliary(x)?;
        let (s, c) = x.sin_cos();
        Ok(SpecFunResult {
            value: aux.f * s - aux.g * c,
            est_abs_error: aux.est_abs_error,
        })
    }
}

/// Exponential integral at a positive imaginary argument,
/// `Ei(ix) = Ci(x) + i (Si(x) + π/2)`.
///
/// This is the branch on which the two-level closed form is real and agrees
/// with the imaginary-axis quadrature; see the `potential` tests.
pub fn ei_imag(x: f64) -> Result<Complex64> {
    check_arg("ei_imag", x)?;
    Ok(Complex64::new(ci(x)?.value, si(x)?.value + FRAC_PI_2))
}

fn i0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..MAX_ITER {
        term *= q / ((k * k) as f64);
        sum += term;
        if term < f64::EPSILON * 1e-2 * sum {
            break;
        }
    }
    sum
}

/// Exponentially scaled K₀: returns (e^x K₀(x), abs error of the scaled value).
fn k0_scaled_cf(x: f64) -> (f64, f64) {
    // Steed's method for K_ν at ν = 0 (Temme's CF2).
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    let mut dels = 1.0;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        dels = q * delh;
        s += dels;
        if (dels / s).abs() < f64::EPSILON {
            break;
        }
    }
    let scaled = (PI / (2.0 * x)).sqrt() / s;
    (scaled, scaled * ((dels / s).abs() + 8.0 * f64::EPSILON))
}

/// Modified Bessel function of the second kind, order zero.
pub fn k0(x: f64) -> Result<SpecFunResult> {
    check_arg("k0", x)?;
    if x <= K0_CUTOFF {
        // K₀ = −(ln(x/2) + γ) I₀(x) + Σ_{k≥1} (x²/4)^k H_k / (k!)²
        let q = 0.25 * x * x;
        let mut term = 1.0;
        let mut harmonic = 0.0;
        let mut sum = 0.0;
        let mut last = 0.0;
        for k in 1..MAX_ITER {
            let fk = k as f64;
            term *= q / (fk * fk);
            harmonic += 1.0 / fk;
            last = term * harmonic;
            sum += last;
            if last < f64::EPSILON * 1e-2 * sum {
                break;
            }
        }
        let log_part = -((0.5 * x).ln() + EULER_GAMMA) * i0_series(x);
        let value = log_part + sum;
        Ok(SpecFunResult {
            value,
            est_abs_error: last + 4.0 * f64::EPSILON * (log_part.abs() + sum),
        })
    } else {
        let (scaled, err) = k0_scaled_cf(x);
        let damp = (-x).exp();
        Ok(SpecFunResult {
            value: scaled * damp,
            est_abs_error: err * damp,
        })
    }
}

/// `e^x K₀(x)`, useful where K₀ itself underflows.
pub fn k0_scaled(x: f64) -> Result<f64> {
    check_arg("k0_scaled", x)?;
    if x <= K0_CUTOFF {
        Ok(k0(x)?.value * x.exp())
    } else {
        Ok(k0_scaled_cf(x).0)
    }
}
